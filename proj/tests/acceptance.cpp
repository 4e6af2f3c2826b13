// One line per acceptance criterion; exit status 0 iff every line passes.

#include <vdlax/correspondence.hpp>
#include <vdlax/report.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace vdlax;

namespace
{

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void line(const std::string &label, bool pass, const std::string &detail)
{
    failures += !pass;
    std::printf("[%s] %-28s %s\n", pass ? "PASS" : "FAIL", label.c_str(), detail.c_str());
}

std::string sci(double v)
{
    return format_number(v, 3);
}

double residual(const VerificationReport &rep, const std::string &name, bool &ok)
{
    const auto *row = rep.find(name);
    if (row == nullptr) {
        ok = false;
        return -1.0;
    }
    ok = ok && row->pass;
    return row->max_residual;
}

void ade_suite()
{
    const auto cfg = default_config();
    Timer t;
    const auto rep = selfcheck(cfg.mp);
    const double secs = t.seconds();
    double worst = 0.0;
    bool ok = secs < 2.0;
    for (const char *name : {"ade.r_plus_shift", "ade.gamma_shift_plus", "ade.gamma_shift_minus", "ade.gamma_q_difference",
                             "ade.bracket_bridge"}) {
        const auto *row = rep.find(name);
        ok = ok && row != nullptr && row->max_residual < 1e-12 && row->evaluated == 100;
        worst = std::max(worst, row ? row->max_residual : 1.0);
    }
    line("difference-equation suite", ok && rep.all_pass(),
         "max residual " + sci(worst) + " over 100 samples, " + sci(secs) + " s");
}

void shift_identities()
{
    auto cfg = default_config();
    cfg.grid.n_points = 50;
    Timer t;
    const auto rep = verify(cfg);
    const double secs = t.seconds();
    bool ok = secs < 5.0;
    const double m = residual(rep, "shift.minus", ok);
    const double p = residual(rep, "shift.plus", ok);
    const double nc = residual(rep, "negative_control.wrong_k", ok);
    ok = ok && m < 1e-9 && p < 1e-9 && nc > 1e-2 && rep.find("shift.minus")->evaluated == 50;
    line("shift identities", ok,
         "minus " + sci(m) + ", plus " + sci(p) + " on 50 points; k = pq deviates by " + sci(nc) + ", " + sci(secs)
             + " s");
}

void residue_data()
{
    const auto rep = residue_checks(default_config());
    bool ok = true;
    const double vb = residual(rep, "residues.vb_contour", ok);
    const double vr = residual(rep, "residues.V_reflected", ok);
    line("residue data", ok && vb < 1e-9 && vr < 1e-9,
         "V_b contour " + sci(vb) + ", V(gamma;-x) with factor " + sci(vr));
}

void headline(const VerificationReport &rep, double secs)
{
    bool ok = secs < 30.0;
    const double dev = residual(rep, "constancy", ok);
    const double im = residual(rep, "E_real", ok);
    const auto *row = rep.find("constancy");
    ok = ok && row != nullptr && row->evaluated == 200 && dev < 1e-8 && im < 1e-9;
    line("headline constancy", ok,
         "deviation " + sci(dev) + " over " + std::to_string(row ? row->evaluated : 0) + " points, E = "
             + format_number(rep.E_extracted ? rep.E_extracted->real() : 0.0, 12) + ", |Im E|/|E| " + sci(im) + ", "
             + sci(secs) + " s");
}

void energy(const VerificationReport &rep)
{
    bool ok = rep.E_extracted && rep.E_from_xs;
    const double d = residual(rep, "energy.cross_check", ok);
    line("eigenvalue cross-check", ok && d < 1e-8, "relative difference " + sci(d));
}

void dual_route(const VerificationReport &rep)
{
    bool ok = true;
    const double r = residual(rep, "R.dual_route", ok);
    const double w = residual(rep, "W.entire", ok);
    line("dual-route R(z)", ok && r < 1e-9 && w < 1e-9,
         "S-sum vs eliminated " + sci(r) + " at 50 points; W residues/scale " + sci(w));
}

void c_gauge(const VerificationReport &rep)
{
    bool ok = true;
    const double g = residual(rep, "Z.C_gauge", ok);
    line("C-gauge invariance", ok && g < 1e-10, "C = 1 vs C = 2+i: " + sci(g));
}

void special_gamma(const VerificationReport &rep)
{
    bool ok = true;
    const double s = residual(rep, "special_gamma.constancy", ok);
    const double n = residual(rep, "negative_control.special_gamma_perturbed", ok);
    line("special-gamma check", ok && s < 1e-8 && n > 1e-3,
         "Z deviation " + sci(s) + "; gamma_2 + 1e-2 gives " + sci(n));
}

void sweep()
{
    const auto cfg = default_config();
    std::vector<double> phis;
    for (int j = 0; j < 33; ++j) {
        phis.push_back(-0.4 + 0.8 * j / 32);
    }
    Timer t;
    const auto rows = sweep_phi1(cfg, phis);
    int pass = 0, fail = 0, degenerate = 0;
    for (const auto &r : rows) {
        pass += r.status == SweepStatus::pass;
        fail += r.status == SweepStatus::fail;
        degenerate += r.status == SweepStatus::degenerate;
    }

    const std::vector<double> offsets{5e-2, 2e-2, 1e-2, 3e-3, 1e-3};
    std::vector<double> below;
    for (const double o : offsets) {
        below.push_back(-o);
    }
    const double g7 = cfg.couplings.gamma[7].real();
    const auto toward_pole = approach_sequence(cfg, -g7, offsets);
    const auto toward_limit = approach_sequence(cfg, g7, below);
    bool blowup = true, limit = true;
    for (std::size_t k = 2; k < offsets.size(); ++k) {
        const double inc = std::abs(toward_pole[k].E - toward_pole[k - 1].E);
        const double prev = std::abs(toward_pole[k - 1].E - toward_pole[k - 2].E);
        blowup = blowup && inc > prev;
        const double linc = std::abs(toward_limit[k].E - toward_limit[k - 1].E);
        const double lprev = std::abs(toward_limit[k - 1].E - toward_limit[k - 2].E);
        limit = limit && linc < lprev;
    }
    for (const auto &r : toward_pole) {
        blowup = blowup && r.status == SweepStatus::pass;
    }
    for (const auto &r : toward_limit) {
        limit = limit && r.status == SweepStatus::pass;
    }
    // Pole strength (Delta E) / (Delta 1/offset) is stable for a simple pole.
    const double s_first = std::abs(toward_pole[1].E - toward_pole[0].E) / (1 / offsets[1] - 1 / offsets[0]);
    const double s_last = std::abs(toward_pole[4].E - toward_pole[3].E) / (1 / offsets[4] - 1 / offsets[3]);
    blowup = blowup && std::abs(s_first - s_last) < 0.1 * s_last;
    const double jump = std::abs(toward_limit[4].E - toward_limit[3].E);

    const bool ok = rows.size() == 33 && fail == 0 && pass + degenerate == 33 && blowup && limit;
    line("phi_1 sweep", ok,
         std::to_string(pass) + " pass, " + std::to_string(degenerate) + " degenerate, " + std::to_string(fail)
             + " fail; pole strength " + sci(s_first) + " -> " + sci(s_last) + " near -gamma_7; last step "
             + sci(jump) + " near +gamma_7, " + sci(t.seconds()) + " s");
}

} // namespace

int main()
{
    ade_suite();
    shift_identities();
    residue_data();
    Timer t;
    const auto rep = verify(default_config());
    const double secs = t.seconds();
    headline(rep, secs);
    energy(rep);
    dual_route(rep);
    c_gauge(rep);
    special_gamma(rep);
    sweep();
    std::printf("%s\n", failures == 0 ? "all acceptance criteria met" : "acceptance criteria FAILED");
    return failures == 0 ? 0 : 1;
}
