#ifndef VDLAX_REPORT_HPP
#define VDLAX_REPORT_HPP

#include <vdlax/config.hpp>

#include <json.hpp>

#include <string>

namespace vdlax
{

using ordered_json = nlohmann::ordered_json;

// JSON text with every floating-point number written at 17 significant
// digits; non-finite values become the strings "inf", "-inf" and "nan".
std::string dump_json(const ordered_json &j);

ordered_json config_to_json(const RunConfig &cfg);

ordered_json report_to_json(const VerificationReport &rep, const std::string &command,
                            const std::string &negative_control);

// Aligned table, 6 significant digits.
std::string report_table(const VerificationReport &rep);

// Header phi1,E_re,E_im,constancy_residual,pass; numbers at 17 digits.
std::string sweep_csv(const std::vector<SweepRow> &rows);

std::string format_number(double v, int digits);

} // namespace vdlax

#endif
