#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "relaxlab/functional.hpp"
#include "relaxlab/integrand.hpp"
#include "relaxlab/nonrep.hpp"
#include "relaxlab/oracle.hpp"
#include "relaxlab/pcfn.hpp"
#include "relaxlab/recovery.hpp"

namespace relaxlab::io {

using nlohmann::json;

/// Version tag written as "spec_version" at the top level of every report.
inline constexpr const char* kSchemaVersion = "1.0";

/// Finite values become numbers, +inf becomes the string "inf".
json to_json(const ExtendedReal& x);
/// Accepts numbers and the string "inf"; anything else throws ValidationError at `path`.
ExtendedReal extended_from_json(const json& j, const std::string& path);

/// {"breakpoints":[...], "values":[...]}; errors name the offending field.
PiecewiseConstantFn function_from_json(const json& j);
json to_json(const PiecewiseConstantFn& u);

/// {"zs":[...], "vals":[..., "inf", ...]}
TabulatedIntegrand table_from_json(const json& j);
json to_json(const TabulatedIntegrand& t);

json to_json(const RelaxationResult& r);
json to_json(const OracleResult& r);
json to_json(const KernelFitReport& r);
json to_json(const RecoveryReport& r);

/// Parses a file; malformed JSON throws ValidationError with path "/".
json load_json(const std::filesystem::path& path);

/// 17 significant digits, '.' decimal separator regardless of locale; +inf
/// renders as "inf".
std::string format_number(double x);

}  // namespace relaxlab::io
