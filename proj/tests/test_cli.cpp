#include <doctest.h>

#include <vdlax/cli.hpp>
#include <vdlax/config.hpp>
#include <vdlax/errors.hpp>
#include <vdlax/report.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vdlax;
namespace fs = std::filesystem;

namespace
{

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string &name)
{
    return fs::temp_directory_path() / ("vdlax_test_" + name);
}

std::string write_temp(const std::string &name, const std::string &text)
{
    const auto path = temp_file(name);
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("config round trip is idempotent")
{
    const std::string canonical = serialize_config(RunConfig{});
    CHECK(serialize_config(parse_config(canonical)) == canonical);

    const std::string custom = R"({"modular": {"r": 1.1, "a_minus": 0.47},
        "couplings": {"gamma": [0.1, [0.2, 0.01], 0.3, 0.25, 0.33, 0.21, 0.19, 0.4], "phi1": -0.2},
        "tolerances": {"constancy": 1e-7}, "sweep": {"n_points": 5}})";
    const std::string once = serialize_config(parse_config(custom));
    CHECK(serialize_config(parse_config(once)) == once);
    const auto cfg = parse_config(custom);
    CHECK(cfg.correspondence.couplings.gamma[1] == cplx{0.2, 0.01});
    CHECK(cfg.correspondence.couplings.gamma8 == cfg.correspondence.couplings.gamma[7]);
    CHECK(cfg.correspondence.tolerance("constancy") == 1e-7);
}

TEST_CASE("config errors carry a location")
{
    auto message = [](const std::string &text) {
        try {
            parse_config(text);
        } catch (const ConfigError &e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("{\n  \"grid\": {,}\n}").find("line 2") != std::string::npos);
    CHECK(message(R"({"grid": {"xmin": 0.1}})").find("grid.xmin") != std::string::npos);
    CHECK(message(R"({"extra": 1})").find("extra") != std::string::npos);
    CHECK(message(R"({"couplings": {"gamma": [1, 2]}})").find("couplings.gamma") != std::string::npos);
    CHECK(message(R"({"couplings": {"gamma8": 0.2}})").find("gamma8") != std::string::npos);
    CHECK(message(R"({"modular": {"r": "one"}})").find("modular.r") != std::string::npos);
    CHECK(message(R"({"tolerances": {"made.up": 1}})").find("tolerances.made.up") != std::string::npos);
    CHECK(message(R"({"grid": {"n_points": 2.5}})").find("grid.n_points") != std::string::npos);
    CHECK(message(R"({"modular": {"a_plus": -1}})").find("positive") != std::string::npos);
}

TEST_CASE("numbers are written with 17 significant digits")
{
    CHECK(format_number(0.1, 17) == "0.10000000000000001");
    CHECK(format_number(228.385722779102859, 6) == "228.386");
    ordered_json j;
    j["x"] = 0.1;
    j["n"] = 3;
    j["inf"] = std::numeric_limits<double>::infinity();
    const std::string text = dump_json(j);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"inf\"") != std::string::npos);
    CHECK(nlohmann::json::parse(text)["x"].get<double>() == 0.1);
}

TEST_CASE("sweep CSV has a fixed header and marks degenerate rows")
{
    SweepRow ok;
    ok.phi1 = -0.1;
    ok.E = {228.0, 0.0};
    ok.status = SweepStatus::pass;
    SweepRow bad;
    bad.phi1 = 0.05;
    const std::string csv = sweep_csv({ok, bad});
    CHECK(csv.rfind("phi1,E_re,E_im,constancy_residual,pass\n", 0) == 0);
    CHECK(csv.find(",true\n") != std::string::npos);
    CHECK(csv.find(",degenerate\n") != std::string::npos);
}

TEST_CASE("exit codes")
{
    CHECK(run({"selfcheck"}).code == exit_pass);
    CHECK(run({"selfcheck", "--tolerance", "ade.r_plus_shift=1e-20"}).code == exit_check_failed);
    CHECK(run({"selfcheck", "--tolerance", "ade.r_plus_shift"}).code == exit_config_error);
    CHECK(run({"selfcheck", "--tolerance", "nope=1"}).code == exit_config_error);
    CHECK(run({"selfcheck", "--tolerance", "ade.r_plus_shift=abc"}).code == exit_config_error);
    CHECK(run({"verify", "--config", "/nonexistent/config.json"}).code == exit_config_error);
    CHECK(run({"verify", "--config", write_temp("bad.json", "{\"modular\": ")}).code == exit_config_error);
    CHECK(run({"verify", "--negative-control", "nonsense"}).code == exit_config_error);
    CHECK(run({"selfcheck", "--negative-control", "wrong_k"}).code == exit_config_error);
    CHECK(run({}).code == exit_config_error);
    CHECK(run({"frobnicate"}).code == exit_config_error);
    CHECK(run({"--help"}).code == exit_pass);

    const auto degenerate = write_temp("degenerate.json", R"({"couplings": {"phi1": 0.19}})");
    CHECK(run({"verify", "--config", degenerate}).code == exit_config_error);
}

TEST_CASE("verify writes a report with the parameter echo and both energies")
{
    const auto path = temp_file("report.json").string();
    const auto r = run({"verify", "--out", path});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    const auto report = nlohmann::json::parse(slurp(path));
    CHECK(report["all_pass"].get<bool>());
    CHECK(report["results"].contains("E_extracted"));
    CHECK(report["results"].contains("E_from_xs"));
    CHECK(report["parameters"]["modular"]["a_plus"].get<double>() == 0.9);
    CHECK(report["parameters"]["couplings"]["gamma"].size() == 8);
}

TEST_CASE("the wrong-k control exits 1 and names the failing rows")
{
    const auto path = temp_file("wrong_k.json").string();
    const auto r = run({"verify", "--negative-control", "wrong_k", "--out", path});
    CHECK(r.code == exit_check_failed);
    CHECK(r.out.find("shift.minus") != std::string::npos);
    const auto report = nlohmann::json::parse(slurp(path));
    bool found = false;
    for (const auto &row : report["checks"]) {
        if (row["name"] == "shift.minus") {
            found = !row["pass"].get<bool>();
        }
    }
    CHECK(found);
}

TEST_CASE("residues subcommand")
{
    const auto r = run({"residues"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("residues.vb_contour") != std::string::npos);
}

TEST_CASE("sweep output is deterministic")
{
    const auto a = temp_file("sweep_a.csv").string();
    const auto b = temp_file("sweep_b.csv").string();
    CHECK(run({"sweep", "--phi1", "-0.4:0.4:9", "--out", a}).code == exit_pass);
    CHECK(run({"sweep", "--out", b, "--phi1", "-0.4:0.4:9"}).code == exit_pass);
    CHECK(slurp(a) == slurp(b));
    CHECK(run({"sweep", "--phi1", "0.4:-0.4:9"}).code == exit_config_error);
    CHECK(run({"sweep", "--phi1", "1:2"}).code == exit_config_error);
}
