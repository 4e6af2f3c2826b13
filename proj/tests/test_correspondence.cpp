#include <doctest.h>

#include <vdlax/correspondence.hpp>
#include <vdlax/errors.hpp>

#include <cmath>

using namespace vdlax;

namespace
{

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::abs(b);
}

// Reference values from a 40-digit evaluation of the same formulas.
constexpr double E_reference = 228.385722779102859604597538;
constexpr double Z_xs_reference = -4.68363951413303e-5;
constexpr double Z_special_reference = -5.93329419340357554633e-4;

} // namespace

TEST_CASE("shift identities hold pointwise")
{
    const auto cfg = default_config();
    const auto lp = derive_lax_params(cfg.mp, cfg.couplings);
    for (const double x : {0.13, 0.71, 1.42}) {
        const auto m = shift_identity_minus(cfg.mp, cfg.couplings, lp, x);
        const auto p = shift_identity_plus(cfg.mp, cfg.couplings, lp, x);
        CHECK(rel(m.lhs, m.rhs) < 1e-12);
        CHECK(rel(p.lhs, p.rhs) < 1e-12);
    }
    LaxParams wrong = lp;
    wrong.k = cfg.mp.p() * cfg.mp.q();
    const auto m = shift_identity_minus(cfg.mp, cfg.couplings, wrong, 0.71);
    CHECK(rel(m.lhs, m.rhs) > 1e-2);
}

TEST_CASE("additive constancy recovers E")
{
    const auto res = additive_constancy(default_config());
    CHECK(res.max_deviation < 1e-12);
    CHECK(res.evaluated == 200);
    CHECK(std::abs(res.E_extracted.real() - E_reference) < 1e-12 * E_reference);
    CHECK(std::abs(res.E_extracted.imag()) < 1e-11);
}

TEST_CASE("energy from the special point matches the reference")
{
    const auto ex = energy_from_xs(default_config());
    CHECK(std::abs(ex.Z_closed.real() - Z_xs_reference) < 1e-12 * std::abs(Z_xs_reference));
    CHECK(rel(ex.Z_direct, ex.Z_closed) < 1e-10);
    CHECK(std::abs(ex.E.real() - E_reference) < 1e-12 * E_reference);
}

TEST_CASE("special gamma choice makes Z constant")
{
    const auto cfg = default_config();
    const auto &g = cfg.couplings.gamma;
    const std::array<cplx, 4> rest{g[4], g[5], g[6], g[7]};
    const auto res = special_gamma_check(cfg.mp, rest, cfg.couplings.phi1, cfg.grid);
    CHECK(res.deviation < 1e-8);
    CHECK(std::abs(res.Z_xs.real() - Z_special_reference) < 1e-12 * std::abs(Z_special_reference));
    const auto broken = special_gamma_check(cfg.mp, rest, cfg.couplings.phi1, cfg.grid, 1e-2);
    CHECK(broken.deviation > 1e-3);
}

TEST_CASE("pole orbits are skipped and counted")
{
    auto cfg = default_config();
    cfg.grid.x_min = 1.4;
    cfg.grid.x_max = 1.7; // straddles pi/2r
    const auto res = additive_constancy(cfg);
    CHECK(res.skipped > 0);
    CHECK(res.skipped < 0.2 * cfg.grid.n_points);
    CHECK(res.max_deviation < 1e-10);

    cfg.grid.pole_exclusion_radius = 0.2;
    const auto rep = verify(cfg);
    const auto *row = rep.find("constancy");
    REQUIRE(row != nullptr);
    CHECK_FALSE(row->pass);
    CHECK(row->detail.find("skipped") != std::string::npos);
}

TEST_CASE("the sweep flags degenerate rows")
{
    const auto cfg = default_config();
    const auto rows = sweep_phi1(cfg, {-0.43 + 5e-5, 0.05, 0.2});
    CHECK(rows[0].status == SweepStatus::degenerate);
    CHECK(rows[1].status == SweepStatus::degenerate);
    CHECK(rows[2].status == SweepStatus::pass);
    CHECK(rows[2].constancy_residual < 1e-10);
}

TEST_CASE("approach sequences: pole at -gamma_7, finite limit at +gamma_7")
{
    const auto cfg = default_config();
    const std::vector<double> offsets{5e-2, 2e-2, 1e-2, 3e-3, 1e-3};
    const auto down = approach_sequence(cfg, -0.43, offsets);
    std::vector<double> neg;
    for (const double o : offsets) {
        neg.push_back(-o);
    }
    const auto up = approach_sequence(cfg, 0.43, neg);
    auto increments = [](const std::vector<SweepRow> &rows) {
        std::vector<double> inc;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            inc.push_back(std::abs(rows[k].E - rows[k - 1].E));
        }
        return inc;
    };
    const auto grow = increments(down);
    const auto shrink = increments(up);
    for (std::size_t k = 1; k < grow.size(); ++k) {
        CHECK(grow[k] > grow[k - 1]);
        CHECK(shrink[k] < shrink[k - 1]);
    }
    // A simple pole: increments scale like the change in 1/offset.
    const double s1 = grow[0] / (1.0 / offsets[1] - 1.0 / offsets[0]);
    const double s2 = grow[3] / (1.0 / offsets[4] - 1.0 / offsets[3]);
    CHECK(std::abs(s1 - s2) < 0.1 * s2);
}

TEST_CASE("selfcheck passes at defaults and honours overrides")
{
    const auto cfg = default_config();
    CHECK(selfcheck(cfg.mp).all_pass());
    const auto strict = selfcheck(cfg.mp, {{"ade.r_plus_shift", 1e-20}});
    CHECK_FALSE(strict.all_pass());
    CHECK_FALSE(strict.find("ade.r_plus_shift")->pass);
    CHECK_THROWS_AS(selfcheck(cfg.mp, {{"no.such.check", 1.0}}), ConfigError);
}

TEST_CASE("verify passes at defaults and negative controls fail the right rows")
{
    const auto cfg = default_config();
    const auto rep = verify(cfg);
    CHECK(rep.all_pass());
    REQUIRE(rep.E_extracted.has_value());
    REQUIRE(rep.E_from_xs.has_value());

    const auto wrong = verify(cfg, NegativeControl::wrong_k);
    CHECK_FALSE(wrong.all_pass());
    CHECK_FALSE(wrong.find("shift.minus")->pass);
    CHECK_FALSE(wrong.find("shift.plus")->pass);
    CHECK(wrong.find("constancy")->pass);

    const auto special = verify(cfg, NegativeControl::special_gamma_perturbed);
    CHECK_FALSE(special.find("special_gamma.constancy")->pass);
}

TEST_CASE("configuration validation")
{
    auto cfg = default_config();
    cfg.couplings.gamma8 = 0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = default_config();
    cfg.tolerances["bogus"] = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = default_config();
    cfg.grid.n_points = 3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
