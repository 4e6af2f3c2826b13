#include <doctest.h>

#include <vdlax/contour.hpp>
#include <vdlax/correspondence.hpp>
#include <vdlax/errors.hpp>
#include <vdlax/lax.hpp>

using namespace vdlax;

namespace
{

const CorrespondenceConfig cfg = default_config();
const ModularParams &mp = cfg.mp;
const Couplings &cp = cfg.couplings;

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST_CASE("derived Lax constants satisfy their invariants")
{
    const auto lp = derive_lax_params(mp, cp);
    const auto inv = lax_invariants(mp, cp, lp);
    CHECK(inv.kell < 1e-12);
    CHECK(inv.xiell < 1e-12);
    CHECK(inv.phis < 1e-12);
    CHECK(std::abs(lp.k - mp.p() * mp.q() * mp.q()) < 1e-16);
    CHECK(std::abs(lp.xi1 * lp.xi2 - lp.ell) < 1e-14 * std::abs(lp.ell));
}

TEST_CASE("derive_lax_params rejects C = 0 and degenerate couplings")
{
    CHECK_THROWS_AS(derive_lax_params(mp, cp, 0.0), DegenerateParameters);
    Couplings bad = cp;
    bad.phi1 = 0.19;
    CHECK_THROWS_AS(derive_lax_params(mp, bad), DegenerateParameters);
}

TEST_CASE("P(z) equals its additive form")
{
    const auto lp = derive_lax_params(mp, cp);
    for (const cplx x : {cplx{0.3, 0.0}, cplx{0.7, 0.1}, cplx{-1.2, 0.3}}) {
        CHECK(rel(D_of_x(mp, cp, lp, x), P_of_z(mp, lp, z_of_x(mp, x))) < 1e-13);
    }
}

TEST_CASE("R(z) agrees between the S-sum and eliminated forms")
{
    const auto lp = derive_lax_params(mp, cp);
    for (const cplx z : {cplx{0.4, 0.3}, cplx{-0.9, 0.2}, cplx{0.2, -1.3}}) {
        CHECK(rel(R_of_z(mp, cp, lp, z, RMode::eliminated), R_of_z(mp, cp, lp, z, RMode::s_sum)) < 1e-11);
    }
}

TEST_CASE("W(x) has no residue at the candidate poles")
{
    const auto lp = derive_lax_params(mp, cp);
    auto w = [&](cplx x) { return W_of_x(mp, cp, lp, x); };
    for (const cplx x0 : w_candidate_poles(mp, cp)) {
        const auto r = contour_residue(w, x0);
        CHECK(std::abs(r.residue) < 1e-10 * r.scale);
    }
}

TEST_CASE("Z from the additive formula equals -R/P and is gauge invariant in C")
{
    const auto lp1 = derive_lax_params(mp, cp);
    const auto lp2 = derive_lax_params(mp, cp, {2.0, 1.0});
    for (const cplx x : {cplx{0.21, 0.0}, cplx{0.83, 0.0}, cplx{1.37, 0.04}}) {
        const cplx z = Z_fn(mp, cp, lp1, x);
        CHECK(rel(Z_from_W(mp, cp, lp1, x), z) < 1e-12);
        CHECK(rel(Z_from_W(mp, cp, lp1, x, RMode::eliminated), z) < 1e-11);
        CHECK(rel(Z_fn(mp, cp, lp2, x), z) < 1e-12);
        CHECK(rel(Z_from_W(mp, cp, lp2, x), z) < 1e-12);
    }
}

TEST_CASE("V_e agrees between the substitution and explicit routes and vanishes at x_s")
{
    const auto lp = derive_lax_params(mp, cp);
    for (const cplx x : {cplx{0.3, 0.0}, cplx{0.9, 0.0}}) {
        CHECK(rel(V_e(mp, cp, lp, x), V_e_explicit(mp, cp, x)) < 1e-12);
    }
    const cplx xs = -I * cp.gamma[7] + I * (0.5 * mp.a_minus()) - I * (0.5 * mp.a_plus());
    CHECK(std::abs(V_e(mp, cp, lp, xs)) < 1e-15);
    CHECK(std::abs(E_term(mp, cp, -xs)) < 1e-15);
}

TEST_CASE("the theta form of script_E interpolates c_n at i alpha_n")
{
    const auto lp = derive_lax_params(mp, cp);
    for (int n = 1; n <= 2; ++n) {
        const cplx x = I * alpha_n(mp, cp, n);
        CHECK(rel(script_E_theta(mp, cp, lp, x), c_n(mp, cp, lp, n)) < 1e-12);
        CHECK(rel(script_E_theta(mp, cp, lp, -x), c_n(mp, cp, lp, n)) < 1e-12);
        const cplx h = I * (0.5 * mp.a_plus());
        CHECK(rel(script_E(mp, cp, lp, x) * r_plus(mp, x + h) * r_plus(mp, x - h), c_n(mp, cp, lp, n)) < 1e-12);
    }
}

TEST_CASE("perturbing script_E introduces poles at i alpha_n")
{
    const auto lp = derive_lax_params(mp, cp);
    const cplx x0 = I * alpha_n(mp, cp, 1);
    const cplx d = 0.5 * (alpha_n(mp, cp, 1) + alpha_n(mp, cp, 2)) + 0.1;
    double last = 0.0;
    for (const double eps : {0.0, 1e-4, 1e-3, 1e-2}) {
        const auto r = contour_residue([&](cplx x) { return Z_perturbed(mp, cp, lp, x, eps, d); }, x0);
        const double res = std::abs(r.residue) / r.scale;
        if (eps == 0.0) {
            CHECK(res < 1e-12);
        } else {
            CHECK(res > last);
        }
        last = res;
    }
}

TEST_CASE("the Lax equation annihilates the gauge-transported eigenfunction relation")
{
    const auto lp = derive_lax_params(mp, cp);
    const auto ex = energy_from_xs(cfg);
    const GammaVec gt = tilde_couplings(mp, cp.gamma);
    const AnalyticFn f = [](cplx u) { return std::exp(2.0 * I * u) + 0.5; };
    const cplx x{0.57, 0.0};
    const cplx lhs = transported_lax_residual(mp, cp, lp, f, x);
    const cplx rhs = apply_A_plus(mp, gt, f, x) - ex.E * f(x);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(ex.E * f(x)));
}
