#include "fracdiff_tools/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "fracdiff/error.hpp"
#include "fracdiff/version.hpp"
#include "fracdiff_tools/selftest.hpp"

namespace fracdiff::cli {

namespace {

namespace dist = distributed_order;
using json = nlohmann::json;
using Cell = std::variant<double, std::string>;

constexpr std::size_t kMaxGridPoints = 1000000;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json diagnostics = json::object();
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + ": '" + std::string(text) + "' is not a finite number");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = text.find(sep, begin);
    parts.push_back(text.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

std::string format_cell(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(cell));
  return buf;
}

json cell_json(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  const double v = std::get<double>(cell);
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

double require(const std::optional<double>& value, std::string_view flag, Command command) {
  if (!value) {
    throw ConfigError(std::string(to_string(command)) + " needs " + std::string(flag));
  }
  return *value;
}

void require_nonnegative_x(const Grid& x, Command command) {
  if (x.start < 0.0) {
    throw ConfigError(std::string(to_string(command)) + ": --x must be non-negative (got start " +
                      format_cell(x.start) + ")");
  }
}

dist::OrderWeight resolve_weight(const RunConfig& config) {
  if (config.weight_spec) return parse_weight(*config.weight_spec, config.normalize_weights);
  if (config.beta) return dist::OrderWeight::single(*config.beta);
  throw ConfigError(std::string(to_string(config.command)) + " needs --weight or --beta");
}

GreenPath parse_single_path(std::string_view text) {
  if (text == "series") return GreenPath::series;
  if (text == "integral") return GreenPath::integral;
  if (text == "fourier" || text == "fourier_oracle") return GreenPath::fourier_oracle;
  if (text == "mellin" || text == "mellin_oracle") return GreenPath::mellin_oracle;
  throw ConfigError("--path: '" + std::string(text) + "' is not one of series, integral, fourier, mellin");
}

Table run_mlf(const RunConfig& config) {
  const MittagLefflerOrder order(require(config.beta, "--beta", config.command));
  require_nonnegative_x(config.x, config.command);
  Table table{{"x", "beta", "value"}, {}, {}};
  for (double x : config.x.points()) {
    table.rows.push_back({x, order.value(), mittag_leffler_neg(order, x)});
  }
  table.diagnostics["function"] = "E_beta(-x)";
  return table;
}

Table run_mwright(const RunConfig& config) {
  const double nu = require(config.nu, "--nu", config.command);
  require_nonnegative_x(config.x, config.command);
  const double crossover = mwright_crossover(nu, config.policy);
  Table table{{"x", "nu", "value", "method"}, {}, {}};
  for (double x : config.x.points()) {
    const char* method = x == 0.0 ? "closed_form" : (x < crossover ? "series" : "contour");
    table.rows.push_back({x, nu, mwright(nu, x, config.policy), std::string(method)});
  }
  table.diagnostics["crossover"] = crossover;
  return table;
}

Table run_green_single(const RunConfig& config) {
  const FractionalOrder order(require(config.beta, "--beta", config.command));
  const GreenPath path = parse_single_path(config.path);
  const std::vector<double> xs = config.x.points();
  Table table{{"x", "t", "u", "path"}, {}, {}};
  for (double t : config.t.points()) {
    const GreenEvaluation eval = single_order::evaluate(order, xs, t, path, config.policy);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      table.rows.push_back({xs[i], t, eval.values[i], std::string(to_string(eval.path))});
    }
  }
  if (path == GreenPath::series && order.value() < 1.0) {
    table.diagnostics["mwright_crossover"] = mwright_crossover(0.5 * order.value(), config.policy);
  }
  return table;
}

Table run_green_dist(const RunConfig& config) {
  const dist::OrderWeight weight = resolve_weight(config);
  const bool series = config.path == "series";
  if (!series && config.path != "integral") {
    throw ConfigError("--path: green-dist accepts integral or series, got '" + config.path + "'");
  }
  Table table{{"x", "t", "u", "path"}, {}, {}};
  for (double t : config.t.points()) {
    for (double x : config.x.points()) {
      const double u = series ? dist::green_series(weight, x, t) : dist::green(weight, x, t, config.policy);
      table.rows.push_back({x, t, u, config.path});
    }
  }
  table.diagnostics["weight"] = weight.describe();
  return table;
}

bool single_atom(const dist::OrderWeight& weight) {
  return weight.uniform_weight() == 0.0 && weight.atoms().size() == 1;
}

Table run_moments(const RunConfig& config) {
  const dist::OrderWeight weight = resolve_weight(config);
  Table table{{"t", "mu2", "method"}, {}, {}};
  for (double t : config.t.points()) {
    if (single_atom(weight)) {
      const double beta = weight.atoms().front().order;
      table.rows.push_back({t, single_order::moment(FractionalOrder(beta), 1, t), std::string("closed_form")});
    } else {
      table.rows.push_back({t, dist::second_moment(weight, t), std::string("talbot")});
    }
  }
  table.diagnostics["weight"] = weight.describe();
  return table;
}

// Leading behaviour of mu_2 for t -> 0 (short) and t -> inf (long).
std::pair<double, std::string> moment_law(const dist::OrderWeight& weight, double t) {
  const auto& atoms = weight.atoms();
  const double w = weight.uniform_weight();
  auto power = [&](const dist::OrderWeight::Atom& a) {
    return 2.0 * std::pow(t, a.order) / (a.weight * std::tgamma(a.order + 1.0));
  };
  if (t >= 1.0) {
    if (w > 0.0) return {2.0 * std::log(t) / w, "logarithmic"};
    return {power(atoms.front()), atoms.front().order == 1.0 ? "normal" : "power_law"};
  }
  if (!atoms.empty() && atoms.back().order == 1.0) return {power(atoms.back()), "normal"};
  if (w > 0.0) return {2.0 * t * std::log(1.0 / t) / w, "logarithmic"};
  return {power(atoms.back()), "power_law"};
}

Table run_asymptotics(const RunConfig& config) {
  if (config.weight_spec) {
    const dist::OrderWeight weight = resolve_weight(config);
    Table table{{"t", "mu2", "mu2_asymptotic", "regime"}, {}, {}};
    for (double t : config.t.points()) {
      const auto [law, regime] = moment_law(weight, t);
      table.rows.push_back({t, dist::second_moment(weight, t), law, regime});
    }
    table.diagnostics["weight"] = weight.describe();
    return table;
  }
  const double beta = require(config.beta, "--beta or --weight", config.command);
  const FractionalOrder order(beta);
  require_nonnegative_x(config.x, config.command);
  const StretchedExponential law = mwright_asymptotic_constants(beta);
  Table table{{"x", "U", "U_asymptotic", "ratio"}, {}, {}};
  for (double x : config.x.points()) {
    const double u = single_order::reduced_green(order, x, config.policy);
    const double a = law(x);
    table.rows.push_back({x, u, a, a > 0.0 ? u / a : std::nan("")});
  }
  table.diagnostics["A"] = law.A;
  table.diagnostics["a"] = law.a;
  table.diagnostics["b"] = law.b;
  table.diagnostics["c"] = law.c;
  return table;
}

json config_json(const RunConfig& config) {
  json j;
  j["command"] = to_string(config.command);
  if (config.beta) j["beta"] = *config.beta;
  if (config.nu) j["nu"] = *config.nu;
  if (config.weight_spec) j["weight"] = *config.weight_spec;
  j["x"] = config.x.describe();
  j["t"] = config.t.describe();
  j["path"] = config.path;
  j["format"] = config.format == Format::csv ? "csv" : "json";
  j["rel_tol"] = config.policy.rel_tol;
  j["max_terms"] = config.policy.max_terms;
  j["cancellation_limit"] = config.policy.cancellation_limit;
  j["normalize"] = config.normalize_weights;
  return j;
}

void emit(const RunConfig& config, const Table& table, std::ostream& out) {
  if (config.format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
      out << '\n';
    }
    return;
  }
  json doc;
  doc["version"] = fracdiff::version();
  doc["config"] = config_json(config);
  doc["results"] = json::array();
  for (const auto& row : table.rows) {
    json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
    doc["results"].push_back(std::move(r));
  }
  doc["diagnostics"] = table.diagnostics;
  doc["diagnostics"]["rows"] = table.rows.size();
  out << doc.dump(2) << '\n';
}

int run_selftest(const RunConfig& config, std::ostream& out) {
  const auto results = selftest::run_all();
  if (config.format == Format::csv) {
    out << selftest::format_report(results);
  } else {
    json doc;
    doc["version"] = fracdiff::version();
    doc["config"] = config_json(config);
    doc["results"] = json::array();
    for (const auto& r : results) {
      doc["results"].push_back({{"name", r.name},
                                {"passed", r.passed},
                                {"measured", r.measured},
                                {"tolerance", r.tolerance},
                                {"detail", r.detail}});
    }
    doc["diagnostics"] = {{"all_passed", selftest::all_passed(results)}};
    out << doc.dump(2) << '\n';
  }
  return selftest::all_passed(results) ? kExitOk : kExitNumerical;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::mlf: return "mlf";
    case Command::mwright: return "mwright";
    case Command::green_single: return "green-single";
    case Command::green_dist: return "green-dist";
    case Command::moments: return "moments";
    case Command::asymptotics: return "asymptotics";
    case Command::selftest: return "selftest";
  }
  return "unknown";
}

Command parse_command(std::string_view text) {
  for (Command c : {Command::mlf, Command::mwright, Command::green_single, Command::green_dist,
                    Command::moments, Command::asymptotics, Command::selftest}) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError("unknown command '" + std::string(text) + "'");
}

std::vector<double> Grid::points() const {
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::string Grid::describe() const {
  if (start == stop) return format_cell(start);
  return format_cell(start) + ":" + format_cell(stop) + ":" + format_cell(step);
}

Grid parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  Grid g;
  if (parts.size() == 1) {
    g.start = g.stop = parse_number(parts[0], "grid");
    return g;
  }
  if (parts.size() != 3) {
    throw ConfigError("grid '" + std::string(text) + "' must be a number or start:stop:step");
  }
  g.start = parse_number(parts[0], "grid start");
  g.stop = parse_number(parts[1], "grid stop");
  g.step = parse_number(parts[2], "grid step");
  if (!(g.step > 0.0)) throw ConfigError("grid '" + std::string(text) + "': step must be positive");
  if (g.stop < g.start) throw ConfigError("grid '" + std::string(text) + "': stop must be >= start");
  if ((g.stop - g.start) / g.step >= static_cast<double>(kMaxGridPoints)) {
    throw ConfigError("grid '" + std::string(text) + "' has too many points");
  }
  return g;
}

dist::OrderWeight parse_weight(std::string_view text, bool normalize) {
  std::vector<dist::OrderWeight::Atom> atoms;
  double uniform = 0.0;
  bool have_uniform = false;
  for (std::string_view item : split(text, ',')) {
    const auto kv = split(trim(item), ':');
    if (kv.size() != 2) {
      throw ConfigError("--weight: item '" + std::string(item) + "' is not beta:weight or uniform:w");
    }
    const double w = parse_number(kv[1], "--weight weight");
    if (trim(kv[0]) == "uniform") {
      if (have_uniform) throw ConfigError("--weight: uniform given twice");
      have_uniform = true;
      uniform = w;
      if (!(w > 0.0)) throw ConfigError("--weight: uniform weight must be positive");
    } else {
      atoms.push_back({parse_number(kv[0], "--weight order"), w});
    }
  }
  try {
    return dist::OrderWeight(std::move(atoms), uniform, normalize);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--weight: ") + e.what());
  }
}

void RunConfig::validate() const {
  for (const Grid* g : {&x, &t}) {
    if (!(g->step > 0.0)) throw ConfigError("grid step must be positive");
    if (g->stop < g->start) throw ConfigError("grid stop must be >= start");
  }
  if (t.start < 0.0) throw ConfigError("--t must be non-negative");
  try {
    policy.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void write_error(std::ostream& err, std::string_view kind, std::string_view message,
                 std::optional<Command> command) {
  json record;
  record["error"] = {{"kind", kind}, {"message", message}};
  if (command) record["error"]["command"] = to_string(*command);
  err << record.dump() << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    if (config.command == Command::selftest) return run_selftest(config, out);
    Table table;
    switch (config.command) {
      case Command::mlf: table = run_mlf(config); break;
      case Command::mwright: table = run_mwright(config); break;
      case Command::green_single: table = run_green_single(config); break;
      case Command::green_dist: table = run_green_dist(config); break;
      case Command::moments: table = run_moments(config); break;
      case Command::asymptotics: table = run_asymptotics(config); break;
      case Command::selftest: break;
    }
    // Everything is computed before anything is printed, so a failure never
    // leaves partial output behind.
    std::ostringstream buffer;
    emit(config, table, buffer);
    out << buffer.str();
    return kExitOk;
  } catch (const ConfigError& e) {
    write_error(err, "config", e.what(), config.command);
    return kExitConfig;
  } catch (const DomainError& e) {
    write_error(err, "domain", e.what(), config.command);
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    write_error(err, "convergence", e.what(), config.command);
    return kExitNumerical;
  } catch (const OverflowError& e) {
    write_error(err, "overflow", e.what(), config.command);
    return kExitNumerical;
  } catch (const std::exception& e) {
    write_error(err, "numerical", e.what(), config.command);
    return kExitNumerical;
  }
}

}  // namespace fracdiff::cli
