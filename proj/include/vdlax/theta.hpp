#ifndef VDLAX_THETA_HPP
#define VDLAX_THETA_HPP

#include <complex>

namespace vdlax
{

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

// Distance (in the additive variable) below which an evaluation point is
// considered to sit on a pole or on a zero of a denominator.
inline constexpr double pole_radius = 1e-6;

struct TruncationPolicy {
    double rel_tol = 1e-16;
    int max_terms = 4000;

    // Throws ConfigError unless 0 < rel_tol < 1 and max_terms >= 8.
    void validate() const;
};

// Parameters of the non-resonance gate |a_- - n a_+| > eps for n = 1..n_max.
struct ResonanceGate {
    double eps = 1e-3;
    int n_max = 8;
};

// Step/period data. r is the inverse period scale: the additive functions are
// pi/r-periodic, and a_+ (resp. a_-) is the imaginary quasi-period of R_+
// (resp. R_-). The nomes are p = exp(-2 r a_+), q = exp(-2 r a_-).
class ModularParams
{
public:
    // Throws ConfigError if r, a_+, a_- are not positive and finite, if
    // a_- is resonant with a_+, or if the policy is invalid.
    ModularParams(double r, double a_plus, double a_minus, TruncationPolicy policy = {},
                  ResonanceGate gate = {});

    double r() const { return m_r; }
    double a_plus() const { return m_a_plus; }
    double a_minus() const { return m_a_minus; }
    double a() const { return 0.5 * (m_a_plus + m_a_minus); }
    double p() const { return m_p; }
    double q() const { return m_q; }
    const TruncationPolicy &policy() const { return m_policy; }
    const ResonanceGate &gate() const { return m_gate; }

    // Same step data with a different truncation policy (used to certify
    // truncation by doubling max_terms).
    ModularParams with_policy(TruncationPolicy policy) const;

private:
    double m_r, m_a_plus, m_a_minus, m_p, m_q;
    TruncationPolicy m_policy;
    ResonanceGate m_gate;
};

// Distance from x to the lattice (pi/r) Z + i a_+ Z.
double lattice_distance(const ModularParams &mp, cplx x);

// Distance from x to the zero set i a_+/2 + lattice of R_+.
double r_plus_zero_distance(const ModularParams &mp, cplx x);

// R_+(x) = prod_{m>=0} [1 - e^{2irx-(2m+1) r a_+}] [1 - e^{-2irx-(2m+1) r a_+}].
cplx r_plus(const ModularParams &mp, cplx x);

// R_-(x): as r_plus with a_+ replaced by a_-.
cplx r_minus(const ModularParams &mp, cplx x);

// R_+ evaluated as a denominator: throws PoleProximity within pole_radius of
// a zero.
cplx r_plus_nonzero(const ModularParams &mp, cplx x);

// R_+(x + y) R_+(x - y).
cplx r_plus_pm(const ModularParams &mp, cplx x, cplx y);

// psi(x) = d/dx log R_+(x + i a_+/2). Simple poles of residue 1 on the
// lattice; psi(x + i a_+) = psi(x) - 2ir.
cplx r_plus_logderiv(const ModularParams &mp, cplx x);

// The multiplicative theta block [z] = prod_{m>=0} (1 - z p^m)(1 - p^{m+1}/z).
cplx bracket(const ModularParams &mp, cplx z);

// Gamma_{p,q}(z) = prod_{k,l>=0} (1 - p^{k+1} q^{l+1}/z) / (1 - z p^k q^l).
cplx elliptic_gamma_pq(const ModularParams &mp, cplx z);

// The additive-variable elliptic gamma function
// G(x) = prod_{m,n>=0} (1 - e^{-(2m+1) r a_+ - (2n+1) r a_- - 2irx})
//                    / (1 - e^{-(2m+1) r a_+ - (2n+1) r a_- + 2irx}).
cplx elliptic_gamma_G(const ModularParams &mp, cplx x);

// rho = lim_{x->0} x / R_+(x + i a_+/2) = 1 / (2ir prod_{k>=1} (1 - p^k)^2).
cplx rho_const(const ModularParams &mp);

// eta = rho / (2 R_+(i a_- + i a_+/2)). Throws DegenerateParameters if that
// R_+ value vanishes.
cplx eta_const(const ModularParams &mp);

// Multiplicative variable z = exp(2ir(x + ia)) for an additive x.
cplx z_of_x(const ModularParams &mp, cplx x);

// Inverse of z_of_x on the principal branch of the logarithm.
cplx x_of_z(const ModularParams &mp, cplx z);

} // namespace vdlax

#endif
