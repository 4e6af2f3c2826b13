#ifndef VDLAX_CORRESPONDENCE_HPP
#define VDLAX_CORRESPONDENCE_HPP

#include <vdlax/lax.hpp>
#include <vdlax/theta.hpp>
#include <vdlax/vandiejen.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vdlax
{

struct GridSpec {
    double x_min = 0.05;
    double x_max = 1.5;
    int n_points = 200;
    double pole_exclusion_radius = 1e-2;

    // Throws ConfigError unless x_min < x_max and n_points >= 16.
    void validate() const;
    std::vector<double> points() const;
};

// Fraction of grid points that may be skipped before a grid check fails.
inline constexpr double max_skipped_fraction = 0.2;

// Default tolerance of every named check. Negative-control rows hold the
// minimum deviation they must exceed.
const std::map<std::string, double> &default_tolerances();

struct CorrespondenceConfig {
    ModularParams mp;
    Couplings couplings; // gamma8 == gamma[7]
    GridSpec grid;
    std::map<std::string, double> tolerances; // overrides of default_tolerances()

    // Throws ConfigError if gamma8 != gamma_7, the grid is invalid, or a
    // tolerance override names an unknown check.
    void validate() const;
    double tolerance(const std::string &name) const;
};

// The parameter set used throughout the acceptance runs.
CorrespondenceConfig default_config();

// Couplings with gamma8 set to gamma_7.
Couplings specialized_couplings(const GammaVec &gamma, cplx phi1);

enum class Comparison { at_most, exceeds };

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Comparison comparison = Comparison::at_most;
    int evaluated = 0;
    int skipped = 0;
    std::string detail;
};

CheckResult make_check(std::string name, double residual, double tolerance,
                       Comparison cmp = Comparison::at_most);

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::optional<cplx> E_extracted;
    std::optional<cplx> E_from_xs;
    std::optional<CorrespondenceConfig> config; // parameter echo
    std::optional<ModularParams> modular;       // echo for kernel-only reports

    bool all_pass() const;
    const CheckResult *find(const std::string &name) const;
};

struct ShiftPair {
    cplx lhs;
    cplx rhs;
};

// (W_-(z)/P(z)) q^{-1} e^{4irx} prod_{mu<4} G-ratio(-) versus V(gamma~; x).
ShiftPair shift_identity_minus(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

// (W_+(z)/P(z)) q^{-1} e^{-4irx} prod_{mu<4} G-ratio(+) versus V(gamma~; -x).
ShiftPair shift_identity_plus(const ModularParams &mp, const Couplings &c, const LaxParams &lp, cplx x);

// Representatives (mod the lattice and sign) of every pole of V_b(gamma~) and Z.
std::vector<cplx> pole_orbits(const ModularParams &mp, const Couplings &c);

// Distance from x to the nearest point of +-orbit + lattice.
double pole_distance(const ModularParams &mp, const std::vector<cplx> &orbits, cplx x);

struct ConstancyResult {
    cplx E_extracted;
    double max_deviation;
    int evaluated;
    int skipped;
};

// Delta(x) = V_b(gamma~; x) - Z(x) over the grid; E = median Delta
// (componentwise), deviation = max |Delta - E| / max(1, |E|).
ConstancyResult additive_constancy(const CorrespondenceConfig &cfg);

struct EnergyFromXs {
    cplx E;
    cplx x_s;
    cplx Z_closed;    // closed form of Z(x_s)
    cplx Z_direct;    // Z_fn(x_s)
    cplx E_term_minus_xs;
    cplx V_e_xs;
};

// E = V_b(gamma~; x_s) - Z(x_s) at x_s = -i gamma_7 + i a_-/2 - i a_+/2.
EnergyFromXs energy_from_xs(const CorrespondenceConfig &cfg);

// Closed form of Z(x_s).
cplx Z_at_xs_closed(const ModularParams &mp, const Couplings &c);

// (1/Phi)(1/P) [Lax operator](Phi f) with Phi = g prod_{mu<4} G_mu, which
// should equal (A_+(gamma~) - E) f.
cplx transported_lax_residual(const ModularParams &mp, const Couplings &c, const LaxParams &lp,
                              const AnalyticFn &f, cplx x);

enum class SweepStatus { pass, fail, degenerate };

struct SweepRow {
    double phi1 = 0.0;
    cplx E{};
    double constancy_residual = 0.0;
    SweepStatus status = SweepStatus::degenerate;
    std::string message;
};

// One full verification per phi_1 value; degenerate rows are recorded and skipped.
std::vector<SweepRow> sweep_phi1(const CorrespondenceConfig &cfg, const std::vector<double> &phi1_values);

// E at phi_1 = target + offset for each offset (the approach sequences
// toward phi_1 = -+gamma_7).
std::vector<SweepRow> approach_sequence(const CorrespondenceConfig &cfg, double target,
                                        const std::vector<double> &offsets);

struct SpecialGammaResult {
    double deviation;
    cplx Z_xs;
    int evaluated;
    int skipped;
};

// gamma_0 = 0, gamma_1 = i pi/2r, gamma_2 = a_+/2, gamma_3 = a_+/2 + i pi/2r,
// with gamma_4..gamma_7 from `rest`: Z(x) should not depend on x. The
// deviation is max |Z(x) - Z(x_s)| / |Z(x_s)|.
// `gamma2_shift` perturbs gamma_2 (negative control).
SpecialGammaResult special_gamma_check(const ModularParams &mp, const std::array<cplx, 4> &rest, cplx phi1,
                                       const GridSpec &grid, double gamma2_shift = 0.0);

// Theta-kernel difference-equation suite over 100 deterministic samples.
VerificationReport selfcheck(const ModularParams &mp, const std::map<std::string, double> &overrides = {});

enum class NegativeControl { none, wrong_k, special_gamma_perturbed };

// Full correspondence pipeline. With a negative control the affected main
// rows are computed on the broken configuration and are expected to fail.
VerificationReport verify(const CorrespondenceConfig &cfg, NegativeControl nc = NegativeControl::none);

// Residue-matching rows only.
VerificationReport residue_checks(const CorrespondenceConfig &cfg);

} // namespace vdlax

#endif
