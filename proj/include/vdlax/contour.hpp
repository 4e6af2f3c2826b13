#ifndef VDLAX_CONTOUR_HPP
#define VDLAX_CONTOUR_HPP

#include <vdlax/theta.hpp>

#include <functional>

namespace vdlax
{

struct ContourResidue {
    cplx residue;
    // max |f| on the contour, the local scale for "no pole here" thresholds.
    double scale;
};

// Residue of f at `center` by the n-point trapezoid rule on a circle of the
// given radius. Exponentially accurate when f has no other singularity
// inside, so it serves as an independent oracle for closed-form residues.
ContourResidue contour_residue(const std::function<cplx(cplx)> &f, cplx center, double radius = 1e-3,
                               int n = 64);

} // namespace vdlax

#endif
