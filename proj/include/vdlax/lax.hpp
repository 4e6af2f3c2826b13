#ifndef VDLAX_LAX_HPP
#define VDLAX_LAX_HPP

#include <vdlax/theta.hpp>
#include <vdlax/vandiejen.hpp>

#include <array>
#include <functional>
#include <vector>

namespace vdlax
{

// Constants of the Lax equation W_-(z) y(z/q) + W_+(z) y(qz) - R(z) y(z) = 0
// after the specialization k = p q^2, lambda = q exp(-2r gamma_8).
struct LaxParams {
    std::array<cplx, 4> a{};
    std::array<cplx, 4> b{};
    cplx k{};
    cplx lambda{};
    cplx nu{};
    cplx ell{};
    cplx xi1{};
    cplx xi2{};
    cplx phi2{};
    cplx C{1.0, 0.0};
};

// a_j = q e^{-2r gamma_{j-1}}, b_j = q e^{-2r gamma_{j+3}}, k = p q^2,
// lambda = q nu, nu = e^{-2r gamma_8}, ell = e^{2r a_+ - 5r a_-} prod e^{-r gamma_mu},
// xi_1 = q e^{-2r phi_1}, xi_2 = ell / xi_1.
// Throws DegenerateParameters if C = 0, the couplings are not generic, or a
// consistency invariant fails.
LaxParams derive_lax_params(const ModularParams &mp, const Couplings &c, cplx C = {1.0, 0.0});

// Relative residuals of k^2 ell^2 = q prod a_j b_j, xi_1 xi_2 = ell and
// exp(-2r(phi_1+phi_2)) = exp(2r a_+ - r a_-) prod exp(-r gamma_mu).
struct LaxInvariantResiduals {
    double kell;
    double xiell;
    double phis;
};
LaxInvariantResiduals lax_invariants(const ModularParams &mp, const Couplings &c, const LaxParams &lp);

cplx A_fn(const ModularParams &mp, const LaxParams &lp, cplx z);
cplx B_fn(const ModularParams &mp, const LaxParams &lp, cplx z);
cplx U_fn(const ModularParams &mp, const LaxParams &lp, cplx z);
// F(z) = C z [z/lambda][k/(z lambda)]
cplx F_fn(const ModularParams &mp, const LaxParams &lp, cplx z);
// G(z) = z [z/xi_1][z/xi_2]
cplx G_fn(const ModularParams &mp, const LaxParams &lp, cplx z);

cplx W_minus(const ModularParams &mp, const LaxParams &lp, cplx z);
cplx W_plus(const ModularParams &mp, const LaxParams &lp, cplx z);

// P(z) = C p^{-1} q^{-1} z^3 [z/lambda][k/(q z lambda)][k/z^2][k/(q z^2)][k/(q^2 z^2)]
cplx P_of_z(const ModularParams &mp, const LaxParams &lp, cplx z);

// The additive form of P at z = exp(2ir(x + ia)).
cplx D_of_x(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

// Interpolation data of the evolution requirement, n = 1 or 2.
cplx c_n(const ModularParams &mp, const Couplings &c, const LaxParams &lp, int n);

// alpha_n = phi_n + a_-/2 - a_+/2.
cplx alpha_n(const ModularParams &mp, const Couplings &c, int n);

// The even elliptic interpolant
//   E(x) = c_1 E(alpha_2; x) / R_+(i alpha_1 +- i(alpha_2 + a_+/2))
//        + c_2 E(alpha_1; x) / R_+(i alpha_2 +- i(alpha_1 + a_+/2)),
// with E(d; x) = R_+(x +- i(d + a_+/2)) / R_+(x +- i a_+/2).
cplx script_E(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

// script_E(x) R_+(x +- i a_+/2), with the double pole at the origin cancelled
// analytically. This is the replacement for Cbar R_+(x +- i(gamma8bar - a_-/2)).
cplx script_E_theta(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

// Extra additive summand V_e via the substitution route.
cplx V_e(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

// V_e assembled from the explicit coefficients d_n (requires gamma_8 = gamma_7).
cplx V_e_explicit(const ModularParams &mp, const Couplings &c, cplx x);

// d_n coefficients of the explicit V_e form (requires gamma_8 = gamma_7).
cplx d_n(const ModularParams &mp, const Couplings &c, int n);

// The plane-wave summand E(x) of Z.
cplx E_term(const ModularParams &mp, const Couplings &c, cplx x);

// Z(x) = E(x) + E(-x) + V_e(x).
cplx Z_fn(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

enum class RMode { s_sum, eliminated };

// The holomorphic coefficient R(z) of the Lax equation.
cplx R_of_z(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx z, RMode mode);

// Z through the Lax side: -R(z)/D(x) at z = exp(2ir(x + ia)).
cplx Z_from_W(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x,
              RMode mode = RMode::s_sum);

// W(x) = R(exp(2ir(x + ia))).
cplx W_of_x(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x,
            RMode mode = RMode::s_sum);

using ZFn = std::function<cplx(cplx)>;

// W_-(z) y(z/q) + W_+(z) y(qz) - R(z) y(z).
cplx lax_residual(const ModularParams &mp, const Couplings &c, const LaxParams &lp, const ZFn &y, cplx z,
                  RMode mode = RMode::s_sum);

// Candidate pole orbits of the S-sum intermediates of W(x), one
// representative each: +-i alpha_1, +-i alpha_2 (zeros of G(z), G(k/qz))
// and the origin (double pole of script_E).
std::vector<cplx> w_candidate_poles(const ModularParams &mp, const Couplings &c);

// Z with script_E replaced by script_E + eps * E(d; x): for eps != 0 the
// interpolation conditions fail and Z acquires poles at +-i alpha_n.
cplx Z_perturbed(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x, double eps,
                 cplx d);

} // namespace vdlax

#endif
