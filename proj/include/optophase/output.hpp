#ifndef OPTOPHASE_OUTPUT_HPP
#define OPTOPHASE_OUTPUT_HPP

#include <iosfwd>
#include <string>

#include "optophase/sweep.hpp"

namespace optophase {

inline constexpr int kJsonSchemaVersion = 1;

/// 17 significant digits in scientific notation; NaN as "nan".
std::string format_double(double v);

/// `# key: <json>` metadata lines, one header line, then one line per row.
void write_csv(const SweepResult& r, std::ostream& out);

/// {"schema_version", "meta", "columns", "rows"}; NaN rows entries become null.
nlohmann::ordered_json to_json(const SweepResult& r);
void write_json(const SweepResult& r, std::ostream& out);

/// Inverse of to_json. Throws std::invalid_argument on a malformed document.
SweepResult from_json(const nlohmann::ordered_json& j);
SweepResult read_json(std::istream& in);

}  // namespace optophase

#endif  // OPTOPHASE_OUTPUT_HPP
