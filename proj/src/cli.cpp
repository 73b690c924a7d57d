#include "relaxlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "relaxlab/functional.hpp"
#include "relaxlab/integrand.hpp"
#include "relaxlab/io.hpp"
#include "relaxlab/nonrep.hpp"
#include "relaxlab/recovery.hpp"

namespace relaxlab::cli {

using io::json;

ApproxReport approx_experiment(const PiecewiseConstantFn& u, const std::vector<int>& n_list,
                               const OracleConfig& cfg) {
  const auto closed = relax_closed_form(u);
  if (!closed.feasible) throw std::domain_error("approx: relaxed energy is +inf");
  ApproxReport rep;
  rep.limit = closed.value.value();
  for (int n : n_list) {
    const auto est = oracle_continuous(u, FiniteApprox{n}, cfg);
    rep.rows.push_back({n, est.value.to_double()});
  }
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (i > 0 && rep.rows[i].estimate < rep.rows[i - 1].estimate - kApproxSlack) rep.nondecreasing = false;
    if (!(rep.rows[i].estimate <= rep.limit + kApproxSlack)) rep.bounded = false;
  }
  return rep;
}

namespace {

Integrand parse_integrand(const std::string& spec) {
  if (spec == "triple-well") return TripleWell{};
  if (spec == "envelope") return ConvexEnvelopeTripleWell{};
  if (spec.rfind("fn:", 0) == 0) {
    int n = 0;
    std::istringstream in(spec.substr(3));
    if (!(in >> n) || !in.eof() || n < 1) throw ValidationError("--integrand", "fn:<n> needs a positive integer");
    return FiniteApprox{n};
  }
  throw ValidationError("--integrand", "expected triple-well, envelope or fn:<n>");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  std::istringstream in(text);
  std::string item;
  std::size_t idx = 0;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::istringstream one(item);
    one.imbue(std::locale::classic());
    T v{};
    if (!(one >> v) || !(one >> std::ws).eof())
      throw ValidationError(flag + "/" + std::to_string(idx), "cannot parse '" + item + "'");
    out.push_back(v);
    ++idx;
  }
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RELAXLAB_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 0;
}

void emit(std::ostream& out, json report) {
  report["spec_version"] = io::kSchemaVersion;
  out << report.dump(2) << '\n';
}

struct OracleFlags {
  int grid = 240;
  int windows = 12;
  double zstep = 0.01;
  double delta = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  int restarts = 16;
  int iters = 2000;

  OracleConfig config() const {
    OracleConfig cfg;
    cfg.n = grid;
    cfg.windows = windows;
    cfg.z_grid_step = zstep;
    if (!std::isnan(delta)) cfg.delta = delta;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.iterations = iters;
    return cfg;
  }
};

void add_oracle_flags(CLI::App* sub, OracleFlags& f) {
  sub->add_option("--grid", f.grid, "grid cells n")->capture_default_str();
  sub->add_option("--windows", f.windows, "averaging windows K")->capture_default_str();
  sub->add_option("--zstep", f.zstep, "z grid step")->capture_default_str();
  sub->add_option("--delta", f.delta, "window average tolerance (default 2/n)");
  sub->add_option("--seed", f.seed, "seed (default $RELAXLAB_SEED or 0)");
  sub->add_option("--restarts", f.restarts, "local-search restarts")->capture_default_str();
  sub->add_option("--iters", f.iters, "iterations per restart")->capture_default_str();
}

int cmd_eval(const std::string& input, const std::string& integrand, std::ostream& out) {
  const auto u = io::function_from_json(io::load_json(input));
  const auto f = parse_integrand(integrand);
  json rep;
  rep["integrand"] = integrand;
  rep["value"] = io::to_json(evaluate_F(u, f));
  rep["F0"] = io::to_json(evaluate_F0(u));
  rep["two_value_feasible"] = two_value_feasible(u);
  emit(out, rep);
  return kOk;
}

int cmd_relax(const std::string& input, std::ostream& out) {
  const auto u = io::function_from_json(io::load_json(input));
  emit(out, io::to_json(relax_closed_form(u)));
  return kOk;
}

int cmd_recover(const std::string& input, int j_min, int j_max, int moments, const std::string& format,
                std::ostream& out) {
  const auto u = io::function_from_json(io::load_json(input));
  if (j_min < 1 || j_max < j_min) throw ValidationError("--j-min", "need 1 <= j-min <= j-max");
  if (moments < 0) throw ValidationError("--moments", "must be >= 0");
  const auto relaxed = relax_closed_form(u);
  std::vector<RecoveryReport> rows;
  if (relaxed.feasible) {
    for (long j = j_min; j <= j_max; j *= 2) rows.push_back(recovery_report(u, static_cast<int>(j), moments));
  }
  if (format == "json") {
    json rep;
    rep["value"] = io::to_json(relaxed.value);
    json seq = json::array();
    for (const auto& r : rows) seq.push_back(io::to_json(r));
    rep["sequence"] = relaxed.feasible ? seq : json(nullptr);
    emit(out, rep);
    return kOk;
  }
  out << "j,energy";
  for (int k = 0; k <= moments; ++k) out << ",moment_error_" << k;
  out << '\n';
  if (!relaxed.feasible) {
    out << "# value=inf; no recovery sequence\n";
    return kOk;
  }
  for (const auto& r : rows) {
    out << r.j << ',' << io::format_number(r.energy);
    for (double e : r.moment_errors) out << ',' << io::format_number(e);
    out << '\n';
  }
  return kOk;
}

int cmd_oracle(const std::string& input, const std::string& integrand, const OracleFlags& flags, bool verify,
               std::ostream& out) {
  const auto u = io::function_from_json(io::load_json(input));
  const auto f = parse_integrand(integrand);
  const auto cfg = flags.config();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError("--grid", e.what());
  }
  OracleResult res = std::holds_alternative<TripleWell>(f) ? oracle_two_value(u, cfg) : oracle_continuous(u, f, cfg);
  json rep = io::to_json(res);
  rep["integrand"] = integrand;
  if (verify) {
    const auto check = verify_closed_form(u, cfg);  // ConsistencyError -> exit 2
    rep["check"] = {{"closed", check.closed}, {"oracle", check.oracle}, {"gap", check.gap},
                    {"tolerance", check.tolerance}};
  }
  emit(out, rep);
  return kOk;
}

int cmd_nonrep(const std::string& t_list, const std::string& format, std::ostream& out) {
  const auto ts = parse_list<double>(t_list, "--t-list");
  KernelFitReport rep;
  try {
    rep = nonrep_certificate(ts);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("--t-list", e.what());
  }
  if (format == "csv") {
    out << "t,implied_g1\n";
    for (const auto& [t, g] : rep.implied_g1) out << io::format_number(t) << ',' << io::format_number(g) << '\n';
    return kOk;
  }
  emit(out, io::to_json(rep));
  return kOk;
}

int cmd_approx(const std::string& input, const std::string& n_list, const OracleFlags& flags,
               const std::string& format, std::ostream& out, std::ostream& err) {
  const auto u = io::function_from_json(io::load_json(input));
  const auto ns = parse_list<int>(n_list, "--n-list");
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] < 1) throw ValidationError("--n-list/" + std::to_string(i), "must be >= 1");
  const auto rep = approx_experiment(u, ns, flags.config());
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : rep.rows) rows.push_back({{"n", r.n}, {"estimate", r.estimate}});
    emit(out, {{"rows", rows}, {"limit", rep.limit}, {"nondecreasing", rep.nondecreasing}, {"bounded", rep.bounded}});
  } else {
    out << "n,estimate\n";
    for (const auto& r : rep.rows) out << r.n << ',' << io::format_number(r.estimate) << '\n';
    out << "limit," << io::format_number(rep.limit) << '\n';
  }
  if (!rep.nondecreasing || !rep.bounded) {
    err << "approx: estimates violate monotonicity or the closed-form bound\n";
    return kConsistencyError;
  }
  return kOk;
}

int cmd_convexify(const std::string& input, const std::string& integrand, double zmin, double zmax, int points,
                  std::ostream& out) {
  TabulatedIntegrand table = [&] {
    if (!input.empty()) return io::table_from_json(io::load_json(input));
    if (integrand.empty()) throw ValidationError("--input", "either --input or --integrand is required");
    if (points < 2 || !(zmax > zmin)) throw ValidationError("--points", "need points >= 2 and zmax > zmin");
    std::vector<double> zs;
    for (int i = 0; i < points; ++i) zs.push_back(zmin + (zmax - zmin) * i / (points - 1));
    zs.back() = zmax;
    return tabulate(parse_integrand(integrand), zs);
  }();
  try {
    emit(out, io::to_json(convexify(table)));
  } catch (const std::invalid_argument& e) {
    throw ValidationError("/vals", e.what());
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"relaxlab: relaxation of a triple-well double-integral energy"};
  app.require_subcommand(1);

  std::string input;
  std::string integrand = "triple-well";
  std::string format;
  OracleFlags oflags;
  oflags.seed = default_seed();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate F and F0 on a function");
  eval_cmd->add_option("-i,--input", input, "function JSON")->required();
  eval_cmd->add_option("--integrand", integrand, "triple-well | envelope | fn:<n>")->capture_default_str();

  auto* relax_cmd = app.add_subcommand("relax", "closed-form relaxed energy");
  relax_cmd->add_option("-i,--input", input, "function JSON")->required();

  int j_min = 1;
  int j_max = 1024;
  int moments = 4;
  auto* recover_cmd = app.add_subcommand("recover", "recovery sequence ladder (CSV)");
  recover_cmd->add_option("-i,--input", input, "function JSON")->required();
  recover_cmd->add_option("--j-min", j_min, "smallest cell count")->capture_default_str();
  recover_cmd->add_option("--j-max", j_max, "largest cell count (doubling ladder)")->capture_default_str();
  recover_cmd->add_option("--moments", moments, "highest monomial order K")->capture_default_str();
  recover_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  bool verify = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force envelope estimate");
  oracle_cmd->add_option("-i,--input", input, "function JSON")->required();
  oracle_cmd->add_option("--integrand", integrand, "triple-well | fn:<n>")->capture_default_str();
  oracle_cmd->add_flag("--verify", verify, "compare with the closed form; exit 2 on disagreement");
  add_oracle_flags(oracle_cmd, oflags);

  std::string t_list;
  auto* nonrep_cmd = app.add_subcommand("nonrep", "kernel non-representability certificate");
  nonrep_cmd->add_option("--t-list", t_list, "comma-separated step fractions in (0,1)")->required();
  nonrep_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"csv", "json"}));

  std::string n_list = "1,4,16";
  auto* approx_cmd = app.add_subcommand("approx", "envelopes of finite approximants f_n");
  approx_cmd->add_option("-i,--input", input, "function JSON")->required();
  approx_cmd->add_option("--n-list", n_list, "comma-separated approximant indices")->capture_default_str();
  approx_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  add_oracle_flags(approx_cmd, oflags);

  std::string conv_integrand;
  double zmin = -2.0;
  double zmax = 2.0;
  int points = 401;
  auto* convexify_cmd = app.add_subcommand("convexify", "lower convex envelope of a tabulated integrand");
  convexify_cmd->add_option("-i,--input", input, "table JSON {\"zs\":[...],\"vals\":[...]}");
  convexify_cmd->add_option("--integrand", conv_integrand, "tabulate a built-in integrand instead");
  convexify_cmd->add_option("--zmin", zmin)->capture_default_str();
  convexify_cmd->add_option("--zmax", zmax)->capture_default_str();
  convexify_cmd->add_option("--points", points)->capture_default_str();

  std::vector<const char*> argv{"relaxlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*eval_cmd) return cmd_eval(input, integrand, out);
    if (*relax_cmd) return cmd_relax(input, out);
    if (*recover_cmd) return cmd_recover(input, j_min, j_max, moments, format.empty() ? "csv" : format, out);
    if (*oracle_cmd) return cmd_oracle(input, integrand, oflags, verify, out);
    if (*nonrep_cmd) return cmd_nonrep(t_list, format.empty() ? "json" : format, out);
    if (*approx_cmd) return cmd_approx(input, n_list, oflags, format.empty() ? "csv" : format, out, err);
    if (*convexify_cmd) return cmd_convexify(input, conv_integrand, zmin, zmax, points, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kConsistencyError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kConsistencyError;
  }
  return kInputError;
}

}  // namespace relaxlab::cli
