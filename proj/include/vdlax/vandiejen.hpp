#ifndef VDLAX_VANDIEJEN_HPP
#define VDLAX_VANDIEJEN_HPP

#include <vdlax/theta.hpp>

#include <array>
#include <functional>

namespace vdlax
{

using GammaVec = std::array<cplx, 8>;

// The eight couplings gamma_0..gamma_7, the auxiliary gamma_8 of the Lax
// parameter lambda, and the free variable phi_1.
struct Couplings {
    GammaVec gamma{};
    cplx gamma8{};
    cplx phi1{};

    cplx gamma_sum() const;

    // phi_2 fixed by phi_1 + phi_2 = -a_+ + a_-/2 + (1/2) sum gamma.
    cplx phi2(const ModularParams &mp) const;
};

// Margin (distance to the period lattice) used by check_genericity.
inline constexpr double genericity_margin = 1e-4;

// Throws DegenerateParameters naming the first violated condition among
//   2i gamma_7, i phi_n + i gamma_8, i phi_n - i gamma_8 (only if gamma_8 != gamma_7),
//   i phi_n + i a_-/2 - i a_+/2, i (phi_1 - phi_2), i (phi_1 + phi_2 + a_-)
// lying within `margin` of the lattice.
void check_genericity(const ModularParams &mp, const Couplings &c, double margin = genericity_margin);

// gamma with gamma_7 -> gamma_7 - a_-.
GammaVec tilde_couplings(const ModularParams &mp, const GammaVec &gamma);

// V(gamma; x) = prod_mu R_+(x - i gamma_mu - i a_-/2)
//               / [R_+(2x + i a_+/2) R_+(2x + i a_+/2 - i a_-)].
cplx shift_V(const ModularParams &mp, const GammaVec &gamma, cplx x);

// V with the signs of gamma_0..gamma_3 flipped in the numerator.
cplx shift_V_tilde(const ModularParams &mp, const GammaVec &gamma, cplx x);

// Pole locations x_0..x_3 of V_b: -i a_-/2 + {0, pi/2r, i a_+/2, i a_+/2 + pi/2r}.
std::array<cplx, 4> vb_pole_locations(const ModularParams &mp);

// Closed-form residues rho_0..rho_3 of V_b at x_0..x_3.
std::array<cplx, 4> vb_residues(const ModularParams &mp, const GammaVec &gamma);

// The additive potential, normalized with additive constant zero:
// V_b(x) = sum_n rho_n (psi(x - x_n) - psi(x + x_n)).
cplx vb(const ModularParams &mp, const GammaVec &gamma, cplx x);

using AnalyticFn = std::function<cplx(cplx)>;

// (A_+ f)(x) = V(x) f(x - i a_-) + V(-x) f(x + i a_-) + V_b(x) f(x).
cplx apply_A_plus(const ModularParams &mp, const GammaVec &gamma, const AnalyticFn &f, cplx x);

enum class Shift { minus, plus };

// Multiplier produced by conjugating exp(-+ i a_- d/dx) with
// G_mu(x) = G(x + i gamma_mu) / G(x - i gamma_mu):
//   minus: R_+(x - i g - i a_-/2) / R_+(x + i g - i a_-/2)
//   plus:  R_+(x + i g + i a_-/2) / R_+(x - i g + i a_-/2)
cplx gauge_ratio_Gmu(const ModularParams &mp, cplx gamma_mu, cplx x, Shift dir);

// g(x) = R_-(x - i a_-/2) R_-(x + i a_-/2); g(x -+ i a_-)/g(x) = q^{-1} e^{+-4irx}.
cplx gauge_g(const ModularParams &mp, cplx x);

} // namespace vdlax

#endif
