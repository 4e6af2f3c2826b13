#include <vdlax/errors.hpp>
#include <vdlax/vandiejen.hpp>

#include <numbers>
#include <string>

namespace vdlax
{

cplx Couplings::gamma_sum() const
{
    cplx s{};
    for (const auto &g : gamma) {
        s += g;
    }
    return s;
}

cplx Couplings::phi2(const ModularParams &mp) const
{
    return -mp.a_plus() + 0.5 * mp.a_minus() + 0.5 * gamma_sum() - phi1;
}

void check_genericity(const ModularParams &mp, const Couplings &c, double margin)
{
    auto gate = [&](cplx v, const std::string &what) {
        if (lattice_distance(mp, v) < margin) {
            throw DegenerateParameters("non-generic couplings: " + what + " lies on the period lattice");
        }
    };
    const cplx phi[2] = {c.phi1, c.phi2(mp)};
    const double am = mp.a_minus(), ap = mp.a_plus();

    gate(2.0 * I * c.gamma[7], "2i gamma_7");
    for (int n = 0; n < 2; ++n) {
        const std::string idx = std::to_string(n + 1);
        gate(I * (phi[n] + c.gamma8), "i phi_" + idx + " + i gamma_8");
        if (c.gamma8 != c.gamma[7]) {
            gate(I * (phi[n] - c.gamma8), "i phi_" + idx + " - i gamma_8");
        }
        gate(I * (phi[n] + 0.5 * am - 0.5 * ap), "i phi_" + idx + " + i a_-/2 - i a_+/2");
    }
    gate(I * (phi[0] - phi[1]), "i (phi_1 - phi_2)");
    gate(I * (phi[0] + phi[1] + am), "i (phi_1 + phi_2 + a_-)");
}

GammaVec tilde_couplings(const ModularParams &mp, const GammaVec &gamma)
{
    GammaVec out = gamma;
    out[7] -= mp.a_minus();
    return out;
}

namespace
{

cplx shift_denominator(const ModularParams &mp, cplx x)
{
    const cplx base = 2.0 * x + I * (0.5 * mp.a_plus());
    return r_plus_nonzero(mp, base) * r_plus_nonzero(mp, base - I * mp.a_minus());
}

} // namespace

cplx shift_V(const ModularParams &mp, const GammaVec &gamma, cplx x)
{
    const cplx den = shift_denominator(mp, x);
    cplx num{1.0, 0.0};
    for (const auto &g : gamma) {
        num *= r_plus(mp, x - I * g - I * (0.5 * mp.a_minus()));
    }
    return num / den;
}

cplx shift_V_tilde(const ModularParams &mp, const GammaVec &gamma, cplx x)
{
    const cplx den = shift_denominator(mp, x);
    cplx num{1.0, 0.0};
    for (int mu = 0; mu < 8; ++mu) {
        const cplx g = mu < 4 ? -gamma[mu] : gamma[mu];
        num *= r_plus(mp, x - I * g - I * (0.5 * mp.a_minus()));
    }
    return num / den;
}

std::array<cplx, 4> vb_pole_locations(const ModularParams &mp)
{
    const cplx base = -I * (0.5 * mp.a_minus());
    const double half_period = std::numbers::pi / (2.0 * mp.r());
    const cplx half_ap = I * (0.5 * mp.a_plus());
    return {base, base + half_period, base + half_ap, base + half_ap + half_period};
}

std::array<cplx, 4> vb_residues(const ModularParams &mp, const GammaVec &gamma)
{
    const cplx eta = eta_const(mp);
    const double r = mp.r(), ap = mp.a_plus();
    const double half_period = std::numbers::pi / (2.0 * r);
    cplx sum{};
    for (const auto &g : gamma) {
        sum += g;
    }
    const cplx outer = std::exp(-2.0 * r * ap - r * sum);

    std::array<cplx, 4> rho{eta, eta, eta * outer, eta * outer};
    for (const auto &g : gamma) {
        rho[0] *= r_plus(mp, I * g);
        rho[1] *= r_plus(mp, I * g + half_period);
        rho[2] *= r_plus(mp, I * g + I * (0.5 * ap));
        rho[3] *= r_plus(mp, I * g + I * (0.5 * ap) + half_period);
    }
    return rho;
}

cplx vb(const ModularParams &mp, const GammaVec &gamma, cplx x)
{
    const auto poles = vb_pole_locations(mp);
    const auto rho = vb_residues(mp, gamma);
    cplx v{};
    for (int n = 0; n < 4; ++n) {
        v += rho[n] * (r_plus_logderiv(mp, x - poles[n]) - r_plus_logderiv(mp, x + poles[n]));
    }
    return v;
}

cplx apply_A_plus(const ModularParams &mp, const GammaVec &gamma, const AnalyticFn &f, cplx x)
{
    const cplx shift = I * mp.a_minus();
    return shift_V(mp, gamma, x) * f(x - shift) + shift_V(mp, gamma, -x) * f(x + shift) + vb(mp, gamma, x) * f(x);
}

cplx gauge_ratio_Gmu(const ModularParams &mp, cplx gamma_mu, cplx x, Shift dir)
{
    const cplx h = I * (0.5 * mp.a_minus());
    const cplx g = I * gamma_mu;
    if (dir == Shift::minus) {
        return r_plus(mp, x - g - h) / r_plus_nonzero(mp, x + g - h);
    }
    return r_plus(mp, x + g + h) / r_plus_nonzero(mp, x - g + h);
}

cplx gauge_g(const ModularParams &mp, cplx x)
{
    const cplx h = I * (0.5 * mp.a_minus());
    return r_minus(mp, x - h) * r_minus(mp, x + h);
}

} // namespace vdlax
