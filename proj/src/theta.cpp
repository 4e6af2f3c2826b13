#include <vdlax/errors.hpp>
#include <vdlax/theta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vdlax
{

namespace
{

void require_finite(cplx v, const char *what)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError(std::string(what) + ": non-finite value");
    }
}

// prod_{m>=0} (1 - A t^m)(1 - B t^m), truncated once the tail
// max(|A|,|B|) t^{M+1} / (1 - t) drops below rel_tol.
cplx theta_pair(cplx A, cplx B, double t, const TruncationPolicy &pol, const char *what)
{
    require_finite(A, what);
    require_finite(B, what);
    const double big = std::max(std::abs(A), std::abs(B));
    cplx v{1.0, 0.0};
    double tm = 1.0;
    for (int m = 0;; ++m) {
        if (m >= pol.max_terms) {
            throw TruncationFailure(std::string(what) + ": product did not converge within max_terms");
        }
        v *= (1.0 - A * tm) * (1.0 - B * tm);
        tm *= t;
        if (big * tm / (1.0 - t) < pol.rel_tol) {
            break;
        }
    }
    require_finite(v, what);
    return v;
}

double reduce(double v, double period)
{
    return v - period * std::round(v / period);
}

} // namespace

void TruncationPolicy::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw ConfigError("truncation.rel_tol must lie in (0, 1)");
    }
    if (max_terms < 8) {
        throw ConfigError("truncation.max_terms must be at least 8");
    }
}

ModularParams::ModularParams(double r, double a_plus, double a_minus, TruncationPolicy policy,
                             ResonanceGate gate)
    : m_r(r), m_a_plus(a_plus), m_a_minus(a_minus), m_policy(policy), m_gate(gate)
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(r) || !positive(a_plus) || !positive(a_minus)) {
        throw ConfigError("modular parameters r, a_plus, a_minus must be positive and finite"
                          " (equivalently 0 < p, q < 1)");
    }
    m_p = std::exp(-2.0 * r * a_plus);
    m_q = std::exp(-2.0 * r * a_minus);
    if (!(m_p > 0.0 && m_p < 1.0 && m_q > 0.0 && m_q < 1.0)) {
        throw ConfigError("nomes p, q must lie in (0, 1)");
    }
    for (int n = 1; n <= gate.n_max; ++n) {
        if (std::abs(a_minus - n * a_plus) <= gate.eps) {
            throw ConfigError("resonant step parameters: a_minus is within " + std::to_string(gate.eps)
                              + " of " + std::to_string(n) + " * a_plus");
        }
    }
    m_policy.validate();
}

ModularParams ModularParams::with_policy(TruncationPolicy policy) const
{
    ModularParams out = *this;
    policy.validate();
    out.m_policy = policy;
    return out;
}

double lattice_distance(const ModularParams &mp, cplx x)
{
    const double re = reduce(x.real(), std::numbers::pi / mp.r());
    const double im = reduce(x.imag(), mp.a_plus());
    return std::hypot(re, im);
}

double r_plus_zero_distance(const ModularParams &mp, cplx x)
{
    return lattice_distance(mp, x - I * (0.5 * mp.a_plus()));
}

cplx r_plus(const ModularParams &mp, cplx x)
{
    const cplx w = std::exp(2.0 * I * mp.r() * x);
    const double h = std::exp(-mp.r() * mp.a_plus());
    return theta_pair(w * h, h / w, mp.p(), mp.policy(), "r_plus");
}

cplx r_minus(const ModularParams &mp, cplx x)
{
    const cplx w = std::exp(2.0 * I * mp.r() * x);
    const double h = std::exp(-mp.r() * mp.a_minus());
    return theta_pair(w * h, h / w, mp.q(), mp.policy(), "r_minus");
}

cplx r_plus_nonzero(const ModularParams &mp, cplx x)
{
    if (r_plus_zero_distance(mp, x) < pole_radius) {
        throw PoleProximity("denominator R_+ vanishes near the evaluation point");
    }
    return r_plus(mp, x);
}

cplx r_plus_pm(const ModularParams &mp, cplx x, cplx y)
{
    return r_plus(mp, x + y) * r_plus(mp, x - y);
}

cplx r_plus_logderiv(const ModularParams &mp, cplx x)
{
    if (lattice_distance(mp, x) < pole_radius) {
        throw PoleProximity("r_plus_logderiv: evaluation point on a lattice pole");
    }
    const auto &pol = mp.policy();
    const double p = mp.p();
    const cplx two_ir = 2.0 * I * mp.r();
    const cplx w = std::exp(two_ir * x);
    const cplx winv = 1.0 / w;
    require_finite(w, "r_plus_logderiv");
    require_finite(winv, "r_plus_logderiv");
    const double big = std::max(std::abs(w), std::abs(winv));

    // log R_+(x + i a_+/2) = sum_m log(1 - w p^{m+1}) + log(1 - p^m / w)
    cplx s{0.0, 0.0};
    double pm = 1.0;
    for (int m = 0;; ++m) {
        if (m >= pol.max_terms) {
            throw TruncationFailure("r_plus_logderiv: series did not converge within max_terms");
        }
        const cplx u = w * (pm * p);
        const cplx v = winv * pm;
        s += -two_ir * u / (1.0 - u) + two_ir * v / (1.0 - v);
        pm *= p;
        if (big * pm / (1.0 - p) < pol.rel_tol) {
            break;
        }
    }
    require_finite(s, "r_plus_logderiv");
    return s;
}

cplx bracket(const ModularParams &mp, cplx z)
{
    if (z == cplx{0.0, 0.0}) {
        throw DomainError("bracket: z = 0");
    }
    return theta_pair(z, mp.p() / z, mp.p(), mp.policy(), "bracket");
}

cplx elliptic_gamma_pq(const ModularParams &mp, cplx z)
{
    if (z == cplx{0.0, 0.0}) {
        throw DomainError("elliptic_gamma_pq: z = 0");
    }
    const auto &pol = mp.policy();
    const double p = mp.p(), q = mp.q();
    const cplx zinv_pq = p * q / z;
    const double big = std::max(std::abs(z), std::abs(zinv_pq));
    const double tail_scale = 1.0 / ((1.0 - p) * (1.0 - q));
    const double near = 2.0 * mp.r() * pole_radius;

    cplx v{1.0, 0.0};
    double pk = 1.0;
    for (int k = 0;; ++k) {
        if (k >= pol.max_terms) {
            throw TruncationFailure("elliptic_gamma_pq: outer product did not converge");
        }
        double t = pk;
        for (int l = 0;; ++l) {
            if (l >= pol.max_terms) {
                throw TruncationFailure("elliptic_gamma_pq: inner product did not converge");
            }
            const cplx den = 1.0 - z * t;
            if (std::abs(den) < near) {
                throw PoleProximity("elliptic_gamma_pq: z on the pole set p^{-k} q^{-l}");
            }
            v *= (1.0 - zinv_pq * t) / den;
            t *= q;
            if (big * t / (1.0 - q) < pol.rel_tol) {
                break;
            }
        }
        pk *= p;
        if (big * pk * tail_scale < pol.rel_tol) {
            break;
        }
    }
    require_finite(v, "elliptic_gamma_pq");
    return v;
}

cplx elliptic_gamma_G(const ModularParams &mp, cplx x)
{
    const auto &pol = mp.policy();
    const double r = mp.r(), ap = mp.a_plus(), am = mp.a_minus();
    const cplx phase = 2.0 * I * r * x;
    const double big = std::exp(std::abs(phase.real()));
    const double near = 2.0 * r * pole_radius;

    // Each factor is evaluated from its own exponent; no powers are
    // accumulated, so this route is independent of elliptic_gamma_pq.
    cplx v{1.0, 0.0};
    for (int m = 0;; ++m) {
        if (m >= pol.max_terms) {
            throw TruncationFailure("elliptic_gamma_G: outer product did not converge");
        }
        const double em = (2 * m + 1) * r * ap;
        for (int n = 0;; ++n) {
            if (n >= pol.max_terms) {
                throw TruncationFailure("elliptic_gamma_G: inner product did not converge");
            }
            const double e = em + (2 * n + 1) * r * am;
            const cplx den = 1.0 - std::exp(-e + phase);
            if (std::abs(den) < near) {
                throw PoleProximity("elliptic_gamma_G: x on the pole set");
            }
            v *= (1.0 - std::exp(-e - phase)) / den;
            if (big * std::exp(-e - 2.0 * r * am) / (1.0 - mp.q()) < pol.rel_tol) {
                break;
            }
        }
        if (big * std::exp(-em - 2.0 * r * ap - r * am) / ((1.0 - mp.p()) * (1.0 - mp.q())) < pol.rel_tol) {
            break;
        }
    }
    require_finite(v, "elliptic_gamma_G");
    return v;
}

cplx rho_const(const ModularParams &mp)
{
    const auto &pol = mp.policy();
    const double p = mp.p();
    double prod = 1.0;
    double pk = p;
    for (int k = 1;; ++k) {
        if (k >= pol.max_terms) {
            throw TruncationFailure("rho_const: product did not converge");
        }
        prod *= (1.0 - pk) * (1.0 - pk);
        pk *= p;
        if (2.0 * pk / (1.0 - p) < pol.rel_tol) {
            break;
        }
    }
    return 1.0 / (2.0 * I * mp.r() * prod);
}

cplx eta_const(const ModularParams &mp)
{
    const cplx arg = I * (mp.a_minus() + 0.5 * mp.a_plus());
    if (r_plus_zero_distance(mp, arg) < pole_radius) {
        throw DegenerateParameters("eta_const: R_+(i a_- + i a_+/2) vanishes");
    }
    return rho_const(mp) / (2.0 * r_plus(mp, arg));
}

cplx z_of_x(const ModularParams &mp, cplx x)
{
    return std::exp(2.0 * I * mp.r() * (x + I * mp.a()));
}

cplx x_of_z(const ModularParams &mp, cplx z)
{
    if (z == cplx{0.0, 0.0}) {
        throw DomainError("x_of_z: z = 0");
    }
    return std::log(z) / (2.0 * I * mp.r()) - I * mp.a();
}

} // namespace vdlax
