#ifndef VDLAX_CONFIG_HPP
#define VDLAX_CONFIG_HPP

#include <vdlax/correspondence.hpp>

#include <string>

namespace vdlax
{

struct SweepSpec {
    double phi1_min = -0.4;
    double phi1_max = 0.4;
    int n_points = 33;

    void validate() const;
    std::vector<double> values() const;
};

// Everything a run needs. The file format is JSON with the sections
// modular, truncation, resonance, couplings, grid, tolerances and sweep; every
// section is optional and falls back to default_config().
struct RunConfig {
    CorrespondenceConfig correspondence = default_config();
    SweepSpec sweep;
};

// Throws ConfigError with a line/column or field-path diagnostic.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);

// Canonical text form; serialize_config(parse_config(serialize_config(c)))
// is byte-identical to serialize_config(c).
std::string serialize_config(const RunConfig &cfg);

// Parses "a:b:n" into a sweep range.
SweepSpec parse_sweep_range(const std::string &spec);

} // namespace vdlax

#endif
