#include <vdlax/cli.hpp>
#include <vdlax/config.hpp>
#include <vdlax/errors.hpp>
#include <vdlax/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace vdlax
{

namespace
{

struct Options {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> tolerance_overrides;
    std::string negative_control = "none";
    std::string phi1_range;
};

std::pair<std::string, double> parse_override(const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--tolerance expects NAME=VALUE, got '" + text + "'");
    }
    const std::string name = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    if (!default_tolerances().contains(name)) {
        throw ConfigError("--tolerance: unknown tolerance name '" + name + "'");
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(v) || v < 0.0) {
        throw ConfigError("--tolerance " + name + ": '" + value + "' is not a non-negative number");
    }
    return {name, v};
}

NegativeControl parse_negative_control(const std::string &name)
{
    if (name == "none") {
        return NegativeControl::none;
    }
    if (name == "wrong_k") {
        return NegativeControl::wrong_k;
    }
    if (name == "special_gamma_perturbed") {
        return NegativeControl::special_gamma_perturbed;
    }
    throw ConfigError("--negative-control: unknown control '" + name
                      + "' (expected none, wrong_k or special_gamma_perturbed)");
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        throw ConfigError("cannot write output file '" + path + "'");
    }
}

int emit_report(const VerificationReport &rep, const std::string &command, const Options &opt, std::ostream &out)
{
    if (!opt.out_path.empty()) {
        write_file(opt.out_path, dump_json(report_to_json(rep, command, opt.negative_control)));
    }
    out << report_table(rep);
    return rep.all_pass() ? exit_pass : exit_check_failed;
}

int dispatch(const std::string &command, const Options &opt, std::ostream &out, std::ostream &err)
{
    RunConfig cfg = opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
    for (const auto &text : opt.tolerance_overrides) {
        const auto [name, value] = parse_override(text);
        cfg.correspondence.tolerances[name] = value;
    }
    const NegativeControl nc = parse_negative_control(opt.negative_control);
    if (nc != NegativeControl::none && command != "verify") {
        throw ConfigError("--negative-control only applies to verify");
    }
    if (!opt.phi1_range.empty()) {
        cfg.sweep = parse_sweep_range(opt.phi1_range);
    }
    const auto &cc = cfg.correspondence;

    if (command == "selfcheck") {
        return emit_report(selfcheck(cc.mp, cc.tolerances), command, opt, out);
    }
    if (command == "sweep") {
        const auto rows = sweep_phi1(cc, cfg.sweep.values());
        const std::string csv = sweep_csv(rows);
        int failed = 0, degenerate = 0;
        for (const auto &row : rows) {
            failed += row.status == SweepStatus::fail;
            degenerate += row.status == SweepStatus::degenerate;
        }
        if (opt.out_path.empty()) {
            out << csv;
        } else {
            write_file(opt.out_path, csv);
        }
        err << rows.size() << " rows, " << failed << " failed, " << degenerate << " degenerate (skipped)\n";
        return failed == 0 ? exit_pass : exit_check_failed;
    }

    check_genericity(cc.mp, cc.couplings, genericity_margin);
    if (command == "residues") {
        return emit_report(residue_checks(cc), command, opt, out);
    }
    return emit_report(verify(cc, nc), command, opt, out);
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Numerical verification of the elliptic Lax pair / van Diejen correspondence"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "JSON configuration file");
    app.add_option("--out", opt.out_path, "machine-readable report (CSV for sweep)");
    app.add_option("--tolerance", opt.tolerance_overrides, "override a named tolerance, NAME=VALUE")
        ->take_all()
        ->allow_extra_args(false);
    app.add_option("--negative-control", opt.negative_control, "none, wrong_k or special_gamma_perturbed");

    app.add_subcommand("verify", "run the full correspondence pipeline");
    app.add_subcommand("selfcheck", "run the theta-function difference-equation suite");
    app.add_subcommand("residues", "match residues of V_b, V(gamma;-x) and Z");
    auto *sweep = app.add_subcommand("sweep", "sweep phi_1 and write a CSV");
    sweep->add_option("--phi1", opt.phi1_range, "range a:b:n (default from config)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return dispatch(command, opt, out, err);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const DegenerateParameters &e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
}

} // namespace vdlax
