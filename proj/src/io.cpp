#include "relaxlab/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

namespace relaxlab::io {

namespace {

json nullable(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

Eigen::VectorXd number_array(const json& j, const char* key) {
  const std::string path = std::string("/") + key;
  if (!j.contains(key)) throw ValidationError(path, "missing field");
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw ValidationError(path, "expected an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ValidationError(path + "/" + std::to_string(i), "expected a number");
    out[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return out;
}

}  // namespace

json to_json(const ExtendedReal& x) { return x.is_infinite() ? json("inf") : json(x.value()); }

ExtendedReal extended_from_json(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedReal::infinity();
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(path, "expected a finite number or \"inf\"");
    return v;
  }
  throw ValidationError(path, "expected a number or \"inf\"");
}

PiecewiseConstantFn function_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("/", "expected an object with breakpoints and values");
  return {number_array(j, "breakpoints"), number_array(j, "values")};
}

json to_json(const PiecewiseConstantFn& u) {
  const auto& b = u.breakpoints();
  const auto& v = u.values();
  return {{"breakpoints", std::vector<double>(b.data(), b.data() + b.size())},
          {"values", std::vector<double>(v.data(), v.data() + v.size())}};
}

TabulatedIntegrand table_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("/", "expected an object with zs and vals");
  const Eigen::VectorXd zs = number_array(j, "zs");
  if (!j.contains("vals")) throw ValidationError("/vals", "missing field");
  const auto& arr = j.at("vals");
  if (!arr.is_array()) throw ValidationError("/vals", "expected an array");
  if (arr.size() != static_cast<std::size_t>(zs.size()))
    throw ValidationError("/vals", "length differs from zs");
  std::vector<ExtendedReal> vals;
  for (std::size_t i = 0; i < arr.size(); ++i) vals.push_back(extended_from_json(arr[i], "/vals/" + std::to_string(i)));
  for (Eigen::Index i = 1; i < zs.size(); ++i)
    if (!(zs[i] > zs[i - 1])) throw ValidationError("/zs/" + std::to_string(i), "grid must be strictly increasing");
  return {std::vector<double>(zs.data(), zs.data() + zs.size()), std::move(vals)};
}

json to_json(const TabulatedIntegrand& t) {
  json vals = json::array();
  for (const auto& v : t.vals()) vals.push_back(to_json(v));
  return {{"zs", t.zs()}, {"vals", vals}};
}

json to_json(const RelaxationResult& r) {
  return {{"feasible", r.feasible},
          {"w_star", nullable(r.w_star)},
          {"z_star", nullable(r.z_star)},
          {"t", nullable(r.t)},
          {"value", to_json(r.value)},
          {"case", std::string(to_string(r.relax_case))}};
}

json to_json(const OracleResult& r) {
  return {{"value", to_json(r.value)},
          {"best_z", nullable(r.best_z)},
          {"best_labels_summary", {{"upper_fraction", nullable(r.upper_fraction)}}},
          {"mode", std::string(to_string(r.mode))}};
}

json to_json(const KernelFitReport& r) {
  json implied = json::array();
  for (const auto& [t, g] : r.implied_g1) implied.push_back({t, g});
  return {{"g0", r.g0},
          {"g1", r.g1},
          {"residual", r.residual},
          {"implied_g1", implied},
          {"spread", r.spread},
          {"certified", r.certifies()}};
}

json to_json(const RecoveryReport& r) {
  return {{"j", r.j}, {"energy", r.energy}, {"target", r.target}, {"moment_errors", r.moment_errors}};
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("/", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("/", std::string("malformed JSON: ") + e.what());
  }
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

}  // namespace relaxlab::io
