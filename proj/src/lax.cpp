#include <vdlax/errors.hpp>
#include <vdlax/lax.hpp>

#include <cmath>
#include <string>

namespace vdlax
{

namespace
{

// [w] as a denominator: its zeros are w = p^n, i.e. log(w)/(2ir) on the lattice.
cplx bracket_nonzero(const ModularParams &mp, cplx w, const char *what)
{
    if (w == cplx{0.0, 0.0} || lattice_distance(mp, std::log(w) / (2.0 * I * mp.r())) < pole_radius) {
        throw PoleProximity(std::string(what) + ": theta denominator vanishes");
    }
    return bracket(mp, w);
}

cplx require_nonzero_z(cplx z, const char *what)
{
    if (z == cplx{0.0, 0.0}) {
        throw DomainError(std::string(what) + ": z = 0");
    }
    return z;
}

double rel_residual(cplx lhs, cplx rhs)
{
    return std::abs(lhs - rhs) / std::abs(rhs);
}

// R_+ value that must not vanish for the parameters to be generic.
cplx r_plus_generic(const ModularParams &mp, cplx x, const char *what)
{
    if (r_plus_zero_distance(mp, x) < pole_radius) {
        throw DegenerateParameters(std::string(what) + ": vanishing theta factor");
    }
    return r_plus(mp, x);
}

cplx phi_of(const ModularParams &mp, const Couplings &c, int n)
{
    if (n == 1) {
        return c.phi1;
    }
    if (n == 2) {
        return c.phi2(mp);
    }
    throw DomainError("index n must be 1 or 2");
}

// V_e with the theta replacement st(x) = Cbar R_+(x +- i(gamma8bar - a_-/2)).
cplx V_e_with(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x, cplx st)
{
    const double am = mp.a_minus();
    cplx den{1.0, 0.0};
    for (const cplx phi : {c.phi1, c.phi2(mp)}) {
        const cplx s = I * (phi + 0.5 * am);
        den *= r_plus_nonzero(mp, x + s) * r_plus_nonzero(mp, x - s);
    }
    return lp.C * std::exp(-2.0 * mp.r() * am) * st * r_plus_pm(mp, x, I * (c.gamma8 - 0.5 * am)) / den;
}

} // namespace

LaxParams derive_lax_params(const ModularParams &mp, const Couplings &c, cplx C)
{
    if (C == cplx{0.0, 0.0}) {
        throw DegenerateParameters("gauge constant C must be nonzero");
    }
    check_genericity(mp, c);

    const double r = mp.r(), p = mp.p(), q = mp.q();
    LaxParams lp;
    for (int j = 0; j < 4; ++j) {
        lp.a[j] = q * std::exp(-2.0 * r * c.gamma[j]);
        lp.b[j] = q * std::exp(-2.0 * r * c.gamma[j + 4]);
    }
    lp.k = p * q * q;
    lp.nu = std::exp(-2.0 * r * c.gamma8);
    lp.lambda = q * lp.nu;
    lp.ell = std::exp(2.0 * r * mp.a_plus() - 5.0 * r * mp.a_minus() - r * c.gamma_sum());
    lp.xi1 = q * std::exp(-2.0 * r * c.phi1);
    lp.xi2 = lp.ell / lp.xi1;
    lp.phi2 = c.phi2(mp);
    lp.C = C;

    const auto res = lax_invariants(mp, c, lp);
    if (!(res.kell <= 1e-12 && res.xiell <= 1e-12 && res.phis <= 1e-12)) {
        throw DegenerateParameters("derived Lax parameters violate k^2 l^2 = q prod a_j b_j or xi_1 xi_2 = l");
    }
    return lp;
}

LaxInvariantResiduals lax_invariants(const ModularParams &mp, const Couplings &c, const LaxParams &lp)
{
    const double r = mp.r();
    cplx prod_ab{mp.q(), 0.0};
    for (int j = 0; j < 4; ++j) {
        prod_ab *= lp.a[j] * lp.b[j];
    }
    const cplx lhs_phis = std::exp(-2.0 * r * (c.phi1 + lp.phi2));
    const cplx rhs_phis = std::exp(2.0 * r * mp.a_plus() - r * mp.a_minus() - r * c.gamma_sum());
    return {rel_residual(lp.k * lp.k * lp.ell * lp.ell, prod_ab), rel_residual(lp.xi1 * lp.xi2, lp.ell),
            rel_residual(lhs_phis, rhs_phis)};
}

cplx A_fn(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "A_fn");
    cplx v{1.0, 0.0};
    for (const auto &aj : lp.a) {
        v *= bracket(mp, z / aj);
    }
    return v;
}

cplx B_fn(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "B_fn");
    cplx v{1.0, 0.0};
    for (const auto &bj : lp.b) {
        v *= bracket(mp, z / bj);
    }
    return v;
}

cplx U_fn(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    return A_fn(mp, lp, z) * B_fn(mp, lp, z);
}

cplx F_fn(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "F_fn");
    return lp.C * z * bracket(mp, z / lp.lambda) * bracket(mp, lp.k / (z * lp.lambda));
}

cplx G_fn(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "G_fn");
    return z * bracket(mp, z / lp.xi1) * bracket(mp, z / lp.xi2);
}

namespace
{

cplx G_nonzero(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "G_fn");
    return z * bracket_nonzero(mp, z / lp.xi1, "G_fn") * bracket_nonzero(mp, z / lp.xi2, "G_fn");
}

cplx F_nonzero(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "F_fn");
    return lp.C * z * bracket_nonzero(mp, z / lp.lambda, "F_fn")
           * bracket_nonzero(mp, lp.k / (z * lp.lambda), "F_fn");
}

} // namespace

cplx W_minus(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "W_minus");
    const double q = mp.q();
    return A_fn(mp, lp, lp.k / z) * B_fn(mp, lp, z) * F_fn(mp, lp, q * z) * bracket(mp, lp.k / (q * q * z * z));
}

cplx W_plus(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "W_plus");
    const double q = mp.q();
    return A_fn(mp, lp, q * z) * B_fn(mp, lp, lp.k / (q * z)) * F_fn(mp, lp, z) * bracket(mp, lp.k / (z * z));
}

cplx P_of_z(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    require_nonzero_z(z, "P_of_z");
    const double p = mp.p(), q = mp.q();
    const cplx k = lp.k;
    return lp.C / (p * q) * z * z * z * bracket(mp, z / lp.lambda) * bracket(mp, k / (q * z * lp.lambda))
           * bracket(mp, k / (z * z)) * bracket(mp, k / (q * z * z)) * bracket(mp, k / (q * q * z * z));
}

cplx D_of_x(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x)
{
    const double r = mp.r(), ap = mp.a_plus(), am = mp.a_minus();
    const cplx two_x = 2.0 * x + I * (0.5 * ap);
    return lp.C * std::exp(6.0 * I * r * x - r * ap - r * am) * r_plus_pm(mp, x, I * c.gamma8 + I * (0.5 * am))
           * r_plus(mp, two_x) * r_plus(mp, two_x + I * am) * r_plus(mp, two_x - I * am);
}

cplx alpha_n(const ModularParams &mp, const Couplings &c, int n)
{
    return phi_of(mp, c, n) + 0.5 * mp.a_minus() - 0.5 * mp.a_plus();
}

cplx c_n(const ModularParams &mp, const Couplings &c, const LaxParams &lp, int n)
{
    const double r = mp.r(), ap = mp.a_plus(), am = mp.a_minus();
    const cplx phi = phi_of(mp, c, n);
    const cplx phi2 = c.phi2(mp);
    const cplx base = I * phi - I * (0.5 * ap);

    cplx v = std::exp(8.0 * r * phi - 4.0 * r * ap + 2.0 * r * am) / lp.C
             * r_plus_pm(mp, I * (c.phi1 + phi2) - I * (0.5 * ap) + I * (0.5 * am), I * (0.5 * am));
    const bool cancel = c.gamma8 == c.gamma[7];
    for (int mu = 0; mu < (cancel ? 7 : 8); ++mu) {
        v *= r_plus(mp, base - I * c.gamma[mu]);
    }
    v /= r_plus_generic(mp, base + I * c.gamma8, "c_n");
    if (!cancel) {
        v /= r_plus_generic(mp, base - I * c.gamma8, "c_n");
    }
    return v;
}

namespace
{

// R_+(i alpha_m +- i(alpha_l + a_+/2)), the normalization of the interpolant.
cplx interp_norm(const ModularParams &mp, cplx alpha_m, cplx alpha_l)
{
    const cplx s = I * (alpha_l + 0.5 * mp.a_plus());
    return r_plus_generic(mp, I * alpha_m + s, "script_E") * r_plus_generic(mp, I * alpha_m - s, "script_E");
}

} // namespace

cplx script_E_theta(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x)
{
    const double ap = mp.a_plus();
    const cplx al1 = alpha_n(mp, c, 1), al2 = alpha_n(mp, c, 2);
    return c_n(mp, c, lp, 1) * r_plus_pm(mp, x, I * (al2 + 0.5 * ap)) / interp_norm(mp, al1, al2)
           + c_n(mp, c, lp, 2) * r_plus_pm(mp, x, I * (al1 + 0.5 * ap)) / interp_norm(mp, al2, al1);
}

cplx script_E(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x)
{
    const cplx h = I * (0.5 * mp.a_plus());
    return script_E_theta(mp, c, lp, x) / (r_plus_nonzero(mp, x + h) * r_plus_nonzero(mp, x - h));
}

cplx V_e(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x)
{
    return V_e_with(mp, c, lp, x, script_E_theta(mp, c, lp, x));
}

cplx d_n(const ModularParams &mp, const Couplings &c, int n)
{
    if (c.gamma8 != c.gamma[7]) {
        throw DomainError("d_n: the explicit form requires gamma_8 = gamma_7");
    }
    const double r = mp.r(), ap = mp.a_plus(), am = mp.a_minus();
    const cplx phi = phi_of(mp, c, n);
    const cplx base = I * phi - I * (0.5 * ap);
    cplx v = std::exp(8.0 * r * phi - 4.0 * r * ap)
             * r_plus_pm(mp, 0.5 * I * c.gamma_sum() - 1.5 * I * ap + I * am, I * (0.5 * am));
    for (int mu = 0; mu < 7; ++mu) {
        v *= r_plus(mp, base - I * c.gamma[mu]);
    }
    return v / r_plus_generic(mp, base + I * c.gamma[7], "d_n");
}

cplx V_e_explicit(const ModularParams &mp, const Couplings &c, cplx x)
{
    const double ap = mp.a_plus(), am = mp.a_minus();
    const cplx al1 = alpha_n(mp, c, 1), al2 = alpha_n(mp, c, 2);
    cplx den{1.0, 0.0};
    for (const cplx phi : {c.phi1, c.phi2(mp)}) {
        const cplx s = I * (phi + 0.5 * am);
        den *= r_plus_nonzero(mp, x + s) * r_plus_nonzero(mp, x - s);
    }
    const cplx bracketed = d_n(mp, c, 1) * r_plus_pm(mp, x, I * (al2 + 0.5 * ap)) / interp_norm(mp, al1, al2)
                           + d_n(mp, c, 2) * r_plus_pm(mp, x, I * (al1 + 0.5 * ap)) / interp_norm(mp, al2, al1);
    return r_plus_pm(mp, x, I * (c.gamma[7] - 0.5 * am)) / den * bracketed;
}

cplx E_term(const ModularParams &mp, const Couplings &c, cplx x)
{
    const double r = mp.r(), ap = mp.a_plus(), am = mp.a_minus();
    const cplx h = I * (0.5 * am);
    const cplx two_x = 2.0 * x + I * (0.5 * ap);
    cplx v = -std::exp(-8.0 * I * r * x - 4.0 * r * am) * r_plus(mp, x - I * c.gamma8 + h)
             / (r_plus_nonzero(mp, two_x) * r_plus_nonzero(mp, two_x - I * am));

    // With gamma_8 = gamma_7 the gamma_8 denominator cancels the mu = 7
    // numerator factor exactly.
    const bool cancel = c.gamma8 == c.gamma[7];
    for (int mu = 0; mu < (cancel ? 7 : 8); ++mu) {
        v *= r_plus(mp, x - I * c.gamma[mu] - h);
    }
    if (!cancel) {
        v /= r_plus_nonzero(mp, x - I * c.gamma8 - h);
    }
    for (const cplx phi : {c.phi1, c.phi2(mp)}) {
        v *= r_plus(mp, x + I * phi - h) / r_plus_nonzero(mp, x - I * phi - h);
    }
    return v;
}

cplx Z_fn(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x)
{
    return E_term(mp, c, x) + E_term(mp, c, -x) + V_e(mp, c, lp, x);
}

cplx Z_perturbed(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x, double eps, cplx d)
{
    const cplx st = script_E_theta(mp, c, lp, x) + eps * r_plus_pm(mp, x, I * (d + 0.5 * mp.a_plus()));
    return E_term(mp, c, x) + E_term(mp, c, -x) + V_e_with(mp, c, lp, x, st);
}

namespace
{

cplx R_s_sum(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx z)
{
    const double q = mp.q();
    const cplx k = lp.k;
    const cplx x = x_of_z(mp, z);
    const cplx F_z = F_fn(mp, lp, z), F_qz = F_fn(mp, lp, q * z);
    const cplx G_z = G_nonzero(mp, lp, z), G_kqz = G_nonzero(mp, lp, k / (q * z));
    const cplx kz2 = bracket(mp, k / (z * z));
    const cplx kqz2 = bracket(mp, k / (q * z * z));
    const cplx kq2z2 = bracket(mp, k / (q * q * z * z));
    // Fbar(z) realized through the evolution solution; never materialized
    // as (Cbar, gamma8bar).
    const cplx Fbar = z * script_E_theta(mp, c, lp, x);

    const cplx s1 = U_fn(mp, lp, z) * F_qz * G_fn(mp, lp, k / z) * kq2z2 / G_z;
    const cplx s2 = U_fn(mp, lp, k / (q * z)) * F_z * G_fn(mp, lp, q * z) * kz2 / G_kqz;
    const cplx s3 = -F_z * F_qz * Fbar * kz2 * kqz2 * kq2z2 / (G_z * G_kqz);
    return s1 + s2 + s3;
}

cplx R_eliminated(const ModularParams &mp, const LaxParams &lp, cplx z)
{
    const double q = mp.q();
    const cplx k = lp.k, ell = lp.ell;
    const cplx F_z = F_nonzero(mp, lp, z), F_qz = F_nonzero(mp, lp, q * z);
    const cplx kz2 = bracket(mp, k / (z * z));
    const cplx kqz2 = bracket(mp, k / (q * z * z));
    const cplx kq2z2 = bracket(mp, k / (q * q * z * z));

    const cplx t1 = kz2 * G_fn(mp, lp, q * z) * U_fn(mp, lp, k / (q * z)) / (G_nonzero(mp, lp, k / (q * z)) * F_qz);
    const cplx t2 = kq2z2 * G_fn(mp, lp, k / z) * U_fn(mp, lp, z) / (G_nonzero(mp, lp, z) * F_z);
    cplx t3{};
    for (const cplx xi : {lp.xi1, lp.xi2}) {
        t3 += k * bracket(mp, k / ell) * U_fn(mp, lp, xi)
              / (xi * xi * bracket_nonzero(mp, xi * xi / ell, "R_of_z") * bracket_nonzero(mp, xi / z, "R_of_z")
                 * bracket_nonzero(mp, k / (xi * q * z), "R_of_z") * F_nonzero(mp, lp, xi));
    }
    t3 *= kz2 * kq2z2 * kqz2;
    return (t1 + t2 + t3) * F_z * F_qz;
}

} // namespace

cplx R_of_z(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx z, RMode mode)
{
    require_nonzero_z(z, "R_of_z");
    return mode == RMode::s_sum ? R_s_sum(mp, c, lp, z) : R_eliminated(mp, lp, z);
}

cplx W_of_x(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x, RMode mode)
{
    return R_of_z(mp, c, lp, z_of_x(mp, x), mode);
}

cplx Z_from_W(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x, RMode mode)
{
    const cplx d = D_of_x(mp, c, lp, x);
    if (d == cplx{0.0, 0.0}) {
        throw PoleProximity("Z_from_W: D(x) vanishes");
    }
    return -W_of_x(mp, c, lp, x, mode) / d;
}

cplx lax_residual(const ModularParams &mp, const Couplings &c, const LaxParams &lp, const ZFn &y, cplx z,
                  RMode mode)
{
    const double q = mp.q();
    return W_minus(mp, lp, z) * y(z / q) + W_plus(mp, lp, z) * y(q * z) - R_of_z(mp, c, lp, z, mode) * y(z);
}

std::vector<cplx> w_candidate_poles(const ModularParams &mp, const Couplings &c)
{
    const cplx a1 = I * alpha_n(mp, c, 1), a2 = I * alpha_n(mp, c, 2);
    return {a1, -a1, a2, -a2, cplx{0.0, 0.0}};
}

} // namespace vdlax
