#include <vdlax/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace vdlax
{

std::string format_number(double v, int digits)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

namespace
{

void dump_into(std::ostringstream &out, const ordered_json &j, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close_pad(2 * depth, ' ');
    switch (j.type()) {
    case ordered_json::value_t::object: {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (const auto &item : j.items()) {
            out << (first ? "" : ",\n") << pad << ordered_json(item.key()).dump() << ": ";
            dump_into(out, item.value(), depth + 1);
            first = false;
        }
        out << "\n" << close_pad << "}";
        return;
    }
    case ordered_json::value_t::array: {
        // Short numeric arrays (complex pairs, coupling lists) stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(), [](const ordered_json &e) { return e.is_primitive(); });
        if (j.empty() || flat) {
            out << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out << (i ? ", " : "");
                dump_into(out, j[i], depth + 1);
            }
            out << "]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out << (i ? ",\n" : "") << pad;
            dump_into(out, j[i], depth + 1);
        }
        out << "\n" << close_pad << "]";
        return;
    }
    case ordered_json::value_t::number_float: {
        const double v = j.get<double>();
        std::string s = format_number(v, 17);
        if (!std::isfinite(v)) {
            out << '"' << s << '"';
            return;
        }
        if (s.find_first_of(".eE") == std::string::npos) {
            s += ".0";
        }
        out << s;
        return;
    }
    default:
        out << j.dump();
        return;
    }
}

ordered_json complex_pair(cplx v)
{
    return ordered_json::array({v.real(), v.imag()});
}

} // namespace

std::string dump_json(const ordered_json &j)
{
    std::ostringstream out;
    dump_into(out, j, 0);
    out << "\n";
    return out.str();
}

ordered_json report_to_json(const VerificationReport &rep, const std::string &command,
                            const std::string &negative_control)
{
    ordered_json j;
    j["command"] = command;
    j["negative_control"] = negative_control;
    j["all_pass"] = rep.all_pass();
    if (rep.config) {
        j["parameters"] = config_to_json(RunConfig{*rep.config, SweepSpec{}});
        j["parameters"].erase("sweep");
    } else if (rep.modular) {
        const auto &mp = *rep.modular;
        j["parameters"] = {
            {"modular", {{"r", mp.r()}, {"a_plus", mp.a_plus()}, {"a_minus", mp.a_minus()}}},
            {"truncation", {{"rel_tol", mp.policy().rel_tol}, {"max_terms", mp.policy().max_terms}}},
            {"resonance", {{"eps", mp.gate().eps}, {"n_max", mp.gate().n_max}}},
        };
    }
    ordered_json results = ordered_json::object();
    if (rep.E_extracted) {
        results["E_extracted"] = complex_pair(*rep.E_extracted);
    }
    if (rep.E_from_xs) {
        results["E_from_xs"] = complex_pair(*rep.E_from_xs);
    }
    j["results"] = results;
    ordered_json checks = ordered_json::array();
    for (const auto &c : rep.checks) {
        ordered_json row;
        row["name"] = c.name;
        row["pass"] = c.pass;
        row["comparison"] = c.comparison == Comparison::at_most ? "at_most" : "exceeds";
        row["max_residual"] = c.max_residual;
        row["tolerance"] = c.tolerance;
        row["evaluated"] = c.evaluated;
        row["skipped"] = c.skipped;
        row["detail"] = c.detail;
        checks.push_back(std::move(row));
    }
    j["checks"] = checks;
    return j;
}

std::string report_table(const VerificationReport &rep)
{
    std::size_t width = 5;
    for (const auto &c : rep.checks) {
        width = std::max(width, c.name.size());
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::right << std::setw(13)
        << "residual" << "  " << std::setw(3) << "" << std::setw(13) << "tolerance" << "  " << std::setw(9)
        << "evaluated" << "  " << std::setw(7) << "skipped" << "  result\n";
    for (const auto &c : rep.checks) {
        out << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::right << std::setw(13)
            << format_number(c.max_residual, 6) << "  " << std::setw(3)
            << (c.comparison == Comparison::at_most ? "<=" : ">") << std::setw(13) << format_number(c.tolerance, 6)
            << "  " << std::setw(9) << c.evaluated << "  " << std::setw(7) << c.skipped << "  "
            << (c.pass ? "PASS" : "FAIL");
        if (!c.detail.empty()) {
            out << "  (" << c.detail << ")";
        }
        out << "\n";
    }
    auto show = [&](const char *label, const std::optional<cplx> &v) {
        if (v) {
            out << label << " = " << format_number(v->real(), 6) << (v->imag() < 0 ? " - " : " + ")
                << format_number(std::abs(v->imag()), 6) << "i\n";
        }
    };
    show("E_extracted", rep.E_extracted);
    show("E_from_xs  ", rep.E_from_xs);
    out << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow> &rows)
{
    std::ostringstream out;
    out << "phi1,E_re,E_im,constancy_residual,pass\n";
    for (const auto &row : rows) {
        out << format_number(row.phi1, 17) << ',';
        if (row.status == SweepStatus::degenerate) {
            out << "nan,nan,nan,degenerate\n";
            continue;
        }
        out << format_number(row.E.real(), 17) << ',' << format_number(row.E.imag(), 17) << ','
            << format_number(row.constancy_residual, 17) << ',' << (row.status == SweepStatus::pass ? "true" : "false")
            << '\n';
    }
    return out.str();
}

} // namespace vdlax
