#include <vdlax/config.hpp>
#include <vdlax/errors.hpp>
#include <vdlax/report.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace vdlax
{

namespace
{

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
    throw ConfigError("config field '" + path + "': " + what);
}

const json &object_at(const json &j, const std::string &path, const std::set<std::string> &allowed)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto &item : j.items()) {
        if (!allowed.contains(item.key())) {
            fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
        }
    }
    return j;
}

double number_at(const json &j, const std::string &path)
{
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "must be finite");
    }
    return v;
}

int integer_at(const json &j, const std::string &path)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    const auto v = j.get<long long>();
    if (v < 0 || v > 1'000'000) {
        fail(path, "out of range");
    }
    return static_cast<int>(v);
}

// A complex value is a plain number or a two-element [re, im] array.
cplx complex_at(const json &j, const std::string &path)
{
    if (j.is_array()) {
        if (j.size() != 2) {
            fail(path, "complex values are written as [re, im]");
        }
        return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
    }
    return {number_at(j, path), 0.0};
}

template <typename Fn>
void optional_field(const json &obj, const char *key, const std::string &path, Fn &&apply)
{
    if (auto it = obj.find(key); it != obj.end()) {
        apply(*it, path.empty() ? std::string(key) : path + "." + key);
    }
}

ordered_json complex_json(cplx v)
{
    if (v.imag() == 0.0) {
        return v.real();
    }
    return ordered_json::array({v.real(), v.imag()});
}

} // namespace

void SweepSpec::validate() const
{
    if (!(std::isfinite(phi1_min) && std::isfinite(phi1_max) && phi1_min <= phi1_max)) {
        throw ConfigError("sweep: phi1_min must not exceed phi1_max");
    }
    if (n_points < 1) {
        throw ConfigError("sweep: n_points must be positive");
    }
    if (n_points == 1 && phi1_min != phi1_max) {
        throw ConfigError("sweep: a single point needs phi1_min == phi1_max");
    }
}

std::vector<double> SweepSpec::values() const
{
    if (n_points == 1) {
        return {phi1_min};
    }
    std::vector<double> out;
    for (int j = 0; j < n_points; ++j) {
        out.push_back(phi1_min + (phi1_max - phi1_min) * j / (n_points - 1));
    }
    return out;
}

RunConfig parse_config(const std::string &text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    object_at(root, "", {"modular", "truncation", "resonance", "couplings", "grid", "tolerances", "sweep"});

    const CorrespondenceConfig base = default_config();
    double r = base.mp.r(), ap = base.mp.a_plus(), am = base.mp.a_minus();
    TruncationPolicy policy = base.mp.policy();
    ResonanceGate gate = base.mp.gate();
    Couplings couplings = base.couplings;
    GridSpec grid = base.grid;
    std::map<std::string, double> tolerances;
    SweepSpec sweep;

    optional_field(root, "modular", "", [&](const json &m, const std::string &p) {
        object_at(m, p, {"r", "a_plus", "a_minus"});
        optional_field(m, "r", p, [&](const json &v, const std::string &q) { r = number_at(v, q); });
        optional_field(m, "a_plus", p, [&](const json &v, const std::string &q) { ap = number_at(v, q); });
        optional_field(m, "a_minus", p, [&](const json &v, const std::string &q) { am = number_at(v, q); });
    });
    optional_field(root, "truncation", "", [&](const json &t, const std::string &p) {
        object_at(t, p, {"rel_tol", "max_terms"});
        optional_field(t, "rel_tol", p, [&](const json &v, const std::string &q) { policy.rel_tol = number_at(v, q); });
        optional_field(t, "max_terms", p,
                       [&](const json &v, const std::string &q) { policy.max_terms = integer_at(v, q); });
    });
    optional_field(root, "resonance", "", [&](const json &t, const std::string &p) {
        object_at(t, p, {"eps", "n_max"});
        optional_field(t, "eps", p, [&](const json &v, const std::string &q) { gate.eps = number_at(v, q); });
        optional_field(t, "n_max", p, [&](const json &v, const std::string &q) { gate.n_max = integer_at(v, q); });
    });
    bool gamma8_given = false;
    cplx gamma8{};
    optional_field(root, "couplings", "", [&](const json &c, const std::string &p) {
        object_at(c, p, {"gamma", "gamma8", "phi1"});
        optional_field(c, "gamma", p, [&](const json &g, const std::string &q) {
            if (!g.is_array() || g.size() != 8) {
                fail(q, "expected an array of 8 couplings");
            }
            for (std::size_t mu = 0; mu < 8; ++mu) {
                couplings.gamma[mu] = complex_at(g[mu], q + "[" + std::to_string(mu) + "]");
            }
        });
        optional_field(c, "gamma8", p, [&](const json &v, const std::string &q) {
            gamma8 = complex_at(v, q);
            gamma8_given = true;
        });
        optional_field(c, "phi1", p, [&](const json &v, const std::string &q) { couplings.phi1 = complex_at(v, q); });
    });
    couplings.gamma8 = couplings.gamma[7];
    if (gamma8_given && gamma8 != couplings.gamma[7]) {
        fail("couplings.gamma8", "must equal gamma[7]");
    }
    optional_field(root, "grid", "", [&](const json &g, const std::string &p) {
        object_at(g, p, {"x_min", "x_max", "n_points", "pole_exclusion_radius"});
        optional_field(g, "x_min", p, [&](const json &v, const std::string &q) { grid.x_min = number_at(v, q); });
        optional_field(g, "x_max", p, [&](const json &v, const std::string &q) { grid.x_max = number_at(v, q); });
        optional_field(g, "n_points", p, [&](const json &v, const std::string &q) { grid.n_points = integer_at(v, q); });
        optional_field(g, "pole_exclusion_radius", p,
                       [&](const json &v, const std::string &q) { grid.pole_exclusion_radius = number_at(v, q); });
    });
    optional_field(root, "tolerances", "", [&](const json &t, const std::string &p) {
        if (!t.is_object()) {
            fail(p, "expected an object");
        }
        for (const auto &item : t.items()) {
            const std::string q = p + "." + item.key();
            if (!default_tolerances().contains(item.key())) {
                fail(q, "unknown tolerance name");
            }
            const double v = number_at(item.value(), q);
            if (v < 0.0) {
                fail(q, "must be non-negative");
            }
            tolerances[item.key()] = v;
        }
    });
    optional_field(root, "sweep", "", [&](const json &s, const std::string &p) {
        object_at(s, p, {"phi1_min", "phi1_max", "n_points"});
        optional_field(s, "phi1_min", p, [&](const json &v, const std::string &q) { sweep.phi1_min = number_at(v, q); });
        optional_field(s, "phi1_max", p, [&](const json &v, const std::string &q) { sweep.phi1_max = number_at(v, q); });
        optional_field(s, "n_points", p, [&](const json &v, const std::string &q) { sweep.n_points = integer_at(v, q); });
    });

    policy.validate();
    RunConfig out{CorrespondenceConfig{ModularParams(r, ap, am, policy, gate), couplings, grid, tolerances}, sweep};
    out.correspondence.validate();
    out.sweep.validate();
    return out;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ordered_json config_to_json(const RunConfig &cfg)
{
    const auto &cc = cfg.correspondence;
    ordered_json j;
    j["modular"] = {{"r", cc.mp.r()}, {"a_plus", cc.mp.a_plus()}, {"a_minus", cc.mp.a_minus()}};
    j["truncation"] = {{"rel_tol", cc.mp.policy().rel_tol}, {"max_terms", cc.mp.policy().max_terms}};
    j["resonance"] = {{"eps", cc.mp.gate().eps}, {"n_max", cc.mp.gate().n_max}};
    ordered_json gamma = ordered_json::array();
    for (const cplx g : cc.couplings.gamma) {
        gamma.push_back(complex_json(g));
    }
    j["couplings"] = {{"gamma", gamma}, {"phi1", complex_json(cc.couplings.phi1)}};
    j["grid"] = {{"x_min", cc.grid.x_min},
                 {"x_max", cc.grid.x_max},
                 {"n_points", cc.grid.n_points},
                 {"pole_exclusion_radius", cc.grid.pole_exclusion_radius}};
    ordered_json tol = ordered_json::object();
    for (const auto &[name, value] : cc.tolerances) {
        tol[name] = value;
    }
    j["tolerances"] = tol;
    j["sweep"] = {{"phi1_min", cfg.sweep.phi1_min}, {"phi1_max", cfg.sweep.phi1_max}, {"n_points", cfg.sweep.n_points}};
    return j;
}

std::string serialize_config(const RunConfig &cfg)
{
    return dump_json(config_to_json(cfg));
}

SweepSpec parse_sweep_range(const std::string &spec)
{
    SweepSpec out;
    std::istringstream in(spec);
    char c1 = 0, c2 = 0;
    if (!(in >> out.phi1_min >> c1 >> out.phi1_max >> c2 >> out.n_points) || c1 != ':' || c2 != ':'
        || !(in >> std::ws).eof()) {
        throw ConfigError("sweep range '" + spec + "' is not of the form a:b:n");
    }
    out.validate();
    return out;
}

} // namespace vdlax
