#include <vdlax/contour.hpp>

#include <algorithm>
#include <numbers>

namespace vdlax
{

ContourResidue contour_residue(const std::function<cplx(cplx)> &f, cplx center, double radius, int n)
{
    // (1/2 pi i) oint f dx with dx = i w dt, w = radius e^{it}.
    cplx sum{};
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * std::numbers::pi * j / n;
        const cplx w = std::polar(radius, t);
        const cplx v = f(center + w);
        sum += v * w;
        scale = std::max(scale, std::abs(v));
    }
    return {sum / static_cast<double>(n), scale};
}

} // namespace vdlax
