#include "kitaev_qfi/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "kitaev_qfi/model.hpp"
#include "kitaev_qfi/parallel.hpp"
#include "kitaev_qfi/qfim.hpp"
#include "kitaev_qfi/scaling.hpp"

namespace kitaev_qfi::cli {

namespace {

constexpr double kDefaultTolerance = 1e-4;
constexpr int kDefaultWindingSteps = 10000;

const std::map<std::string, Command, std::less<>> kCommands = {
    {"point", Command::point},       {"sweep", Command::sweep},
    {"scaling", Command::scaling},   {"verify", Command::verify},
    {"phase", Command::phase},       {"occupancy", Command::occupancy},
};

double parse_double(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(fmt::format("invalid number '{}' in {}", text, what));
  }
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [name, cmd] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

Range Range::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second =
      first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos ||
      text.find(':', second + 1) != std::string_view::npos) {
    throw UsageError(fmt::format("range '{}' must be start:stop:count", text));
  }
  Range r;
  r.start = parse_double(text.substr(0, first), "range start");
  r.stop = parse_double(text.substr(first + 1, second - first - 1),
                        "range stop");
  const double count = parse_double(text.substr(second + 1), "range count");
  if (count != std::floor(count) || count < 2 || count > 1e7) {
    throw UsageError(fmt::format("range '{}' needs an integer count >= 2", text));
  }
  r.count = static_cast<int>(count);
  if (!(r.start < r.stop) || !std::isfinite(r.start) ||
      !std::isfinite(r.stop)) {
    throw UsageError(fmt::format("range '{}' needs start < stop", text));
  }
  return r;
}

std::vector<double> Range::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double width = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? stop : start + i * width);
  }
  return out;
}

std::string Range::to_string() const {
  return fmt::format("{}:{}:{}", format_number(start), format_number(stop),
                     count);
}

void RunConfig::validate() const {
  struct Presence {
    const char* flag;
    bool present;
  };
  const std::vector<Presence> fields = {
      {"--mu", mu.has_value()},
      {"--delta", delta.has_value()},
      {"--mu-range", mu_range.has_value()},
      {"--delta-range", delta_range.has_value()},
      {"--L", sites.has_value()},
      {"--sizes", !sizes.empty()},
      {"--m", repetitions.has_value()},
      {"--quantity", quantity.has_value()},
      {"--h", h.has_value()},
      {"--step", step.has_value()},
      {"--tolerance", tolerance.has_value()},
      {"--steps", winding_steps.has_value()},
  };
  std::vector<std::string_view> allowed;
  const auto need = [&](bool ok, std::string_view message) {
    if (!ok) {
      throw UsageError(
          fmt::format("{}: {}", kitaev_qfi::cli::to_string(command), message));
    }
  };
  const bool one_mu = mu.has_value() != mu_range.has_value();
  const bool one_delta = delta.has_value() != delta_range.has_value();
  const bool one_size = sites.has_value() != !sizes.empty();

  switch (command) {
    case Command::point:
      allowed = {"--mu", "--delta", "--L", "--m"};
      need(mu && delta && sites, "requires --mu, --delta and --L");
      break;
    case Command::sweep:
      allowed = {"--mu", "--delta", "--mu-range", "--delta-range", "--L",
                 "--m"};
      need(one_mu && one_delta && sites,
           "requires one of --mu/--mu-range, one of --delta/--delta-range, "
           "and --L");
      need(mu_range || delta_range, "requires at least one range");
      break;
    case Command::scaling:
      allowed = {"--mu", "--delta", "--sizes", "--quantity"};
      need(mu && delta && !sizes.empty() && quantity,
           "requires --mu, --delta, --sizes and --quantity");
      break;
    case Command::verify:
      allowed = {"--mu", "--delta", "--L", "--h", "--step", "--tolerance"};
      need(mu && delta && sites, "requires --mu, --delta and --L");
      break;
    case Command::phase:
      allowed = {"--mu", "--delta", "--steps"};
      need(mu && delta, "requires --mu and --delta");
      break;
    case Command::occupancy:
      allowed = {"--mu", "--delta", "--delta-range", "--L", "--sizes"};
      need(mu && one_delta && one_size,
           "requires --mu, one of --delta/--delta-range and one of "
           "--L/--sizes");
      break;
  }
  for (const auto& f : fields) {
    if (f.present &&
        std::find(allowed.begin(), allowed.end(), f.flag) == allowed.end()) {
      throw UsageError(fmt::format("{} does not accept {}",
                                   kitaev_qfi::cli::to_string(command),
                                   f.flag));
    }
  }
  if (repetitions && *repetitions < 1) throw UsageError("--m must be >= 1");
  if (h && !(*h > 0.0)) throw UsageError("--h must be positive");
  if (step && !(*step > 0.0)) throw UsageError("--step must be positive");
  if (tolerance && !(*tolerance >= 0.0)) {
    throw UsageError("--tolerance must be non-negative");
  }
  if (winding_steps && *winding_steps < 100) {
    throw UsageError("--steps must be >= 100");
  }
  for (const auto& v : {mu, delta, h, step, tolerance}) {
    if (v && !std::isfinite(*v)) throw UsageError("numeric flags must be finite");
  }
  std::vector<int> all_sizes = sizes;
  if (sites) all_sizes.push_back(*sites);
  for (int L : all_sizes) {
    if (L < 2 || L % 2 != 0) {
      throw UsageError(fmt::format("system size {} must be even and >= 2", L));
    }
  }
}

RunConfig parse_args(int argc, const char* const* argv, std::ostream& out,
                     bool& help_shown) {
  help_shown = false;
  CLI::App app{"Quantum Fisher information of the Kitaev chain ground state",
               "kitaev_qfi"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Flat key=value file mirroring the flags");

  std::string command;
  double mu = 0, delta = 0, h = 0, step = 0, tolerance = 0;
  std::string mu_range, delta_range, quantity, output, format = "csv";
  int sites = 0, repetitions = 1, steps = 0;
  std::vector<int> sizes;

  app.add_option("command", command,
                 "point | sweep | scaling | verify | phase | occupancy")
      ->required()
      ->check(CLI::IsMember({"point", "sweep", "scaling", "verify", "phase",
                             "occupancy"}));
  auto* o_mu = app.add_option("--mu", mu, "On-site potential");
  auto* o_delta = app.add_option("--delta", delta, "Pairing amplitude");
  auto* o_mu_range =
      app.add_option("--mu-range", mu_range, "start:stop:count over mu");
  auto* o_delta_range =
      app.add_option("--delta-range", delta_range, "start:stop:count over delta");
  auto* o_sites = app.add_option("--L", sites, "System size (even)");
  auto* o_sizes = app.add_option("--sizes", sizes, "Comma-separated sizes")
                      ->delimiter(',');
  auto* o_m = app.add_option("--m", repetitions, "Protocol repetitions");
  auto* o_quantity = app.add_option("--quantity", quantity,
                                    "f_mm | f_md_abs | f_dd | g");
  auto* o_h = app.add_option("--h", h, "Finite-difference step");
  auto* o_step = app.add_option("--step", step, "Fidelity step");
  auto* o_tolerance =
      app.add_option("--tolerance", tolerance, "verify: max relative error");
  auto* o_steps = app.add_option("--steps", steps, "phase: integration panels");
  app.add_option("--output", output, "Output file (default: stdout)");
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    help_shown = true;
    return {};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig config;
  config.command = kCommands.find(command)->second;
  if (o_mu->count()) config.mu = mu;
  if (o_delta->count()) config.delta = delta;
  if (o_mu_range->count()) config.mu_range = Range::parse(mu_range);
  if (o_delta_range->count()) config.delta_range = Range::parse(delta_range);
  if (o_sites->count()) config.sites = sites;
  if (o_sizes->count()) config.sizes = sizes;
  if (o_m->count()) config.repetitions = repetitions;
  if (o_quantity->count()) {
    try {
      config.quantity = parse_quantity(quantity);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o_h->count()) config.h = h;
  if (o_step->count()) config.step = step;
  if (o_tolerance->count()) config.tolerance = tolerance;
  if (o_steps->count()) config.winding_steps = steps;
  config.output_path = output;
  config.format = format == "json" ? Format::json : Format::csv;
  return config;
}

namespace {

std::vector<double> values_of(const std::optional<double>& single,
                              const std::optional<Range>& range) {
  if (range) return range->values();
  return {*single};
}

Table point_records(const RunConfig& c) {
  Table t;
  t.columns = {"mu",  "delta", "L", "f_mm", "f_md", "f_dd", "g",
               "multiparam_bound", "singleparam_bound"};
  const auto mus = values_of(c.mu, c.mu_range);
  const auto deltas = values_of(c.delta, c.delta_range);
  const int sites = *c.sites;
  const int m = c.repetitions.value_or(1);
  // mu outer, delta inner.
  t.rows = parallel_map<std::vector<Cell>>(
      mus.size() * deltas.size(), [&](std::size_t i) {
        const ModelParams p{mus[i / deltas.size()], deltas[i % deltas.size()]};
        const auto q = qfim(p, sites);
        const auto multi = multiparam_bound(q, m);
        const double single = q.f_mm > 0.0 && q.f_dd > 0.0
                                  ? singleparam_bound(q, m)
                                  : std::numeric_limits<double>::infinity();
        return std::vector<Cell>{p.mu,   p.delta, static_cast<long long>(sites),
                                 q.f_mm, q.f_md,  q.f_dd,
                                 multi.g, multi.bound, single};
      });
  return t;
}

Table scaling_records(const RunConfig& c) {
  Table t;
  t.columns = {"quantity", "mu",       "delta",         "L",
               "value",    "exponent", "log_prefactor", "r_squared"};
  const ModelParams p{*c.mu, *c.delta};
  const auto fit = scaling_sweep(p, c.sizes, *c.quantity);
  for (const auto& pt : fit.points) {
    t.rows.push_back({std::string(to_string(*c.quantity)), p.mu, p.delta,
                      static_cast<long long>(pt.sites), pt.value, fit.exponent,
                      fit.log_prefactor, fit.r_squared});
  }
  return t;
}

Table verify_records(const RunConfig& c) {
  Table t;
  t.columns = {"mu",           "delta",         "L",
               "h",            "step",          "f_mm_analytic",
               "f_md_analytic", "f_dd_analytic", "f_mm_fd",
               "f_md_fd",      "f_dd_fd",       "f_mm_fidelity",
               "f_dd_fidelity", "berry_term",   "max_rel_error",
               "tolerance",    "passed"};
  const ModelParams p{*c.mu, *c.delta};
  const double h = c.h.value_or(kDefaultFdStep);
  const double step = c.step.value_or(kDefaultFidelityStep);
  const double tolerance = c.tolerance.value_or(kDefaultTolerance);
  const auto r = crosscheck(p, *c.sites, h, step);
  t.rows.push_back({p.mu, p.delta, static_cast<long long>(*c.sites), h, step,
                    r.analytic.f_mm, r.analytic.f_md, r.analytic.f_dd,
                    r.finite_difference.f_mm, r.finite_difference.f_md,
                    r.finite_difference.f_dd, r.fidelity_mm, r.fidelity_dd,
                    r.berry, r.max_rel_error, tolerance,
                    r.max_rel_error <= tolerance});
  return t;
}

Table phase_records(const RunConfig& c) {
  Table t;
  t.columns = {"mu", "delta", "steps", "winding_number"};
  const ModelParams p{*c.mu, *c.delta};
  const int steps = c.winding_steps.value_or(kDefaultWindingSteps);
  const int w = winding_number(p, steps);
  t.rows.push_back({p.mu, p.delta, static_cast<long long>(steps),
                    static_cast<long long>(w)});
  return t;
}

Table occupancy_records(const RunConfig& c) {
  Table t;
  t.columns = {"mu", "delta", "L", "occupation"};
  std::vector<int> sizes = c.sizes;
  if (c.sites) sizes = {*c.sites};
  const auto deltas = values_of(c.delta, c.delta_range);
  // L outer, delta inner.
  t.rows = parallel_map<std::vector<Cell>>(
      sizes.size() * deltas.size(), [&](std::size_t i) {
        const int L = sizes[i / deltas.size()];
        const ModelParams p{*c.mu, deltas[i % deltas.size()]};
        return std::vector<Cell>{p.mu, p.delta, static_cast<long long>(L),
                                 average_occupation(ground_state(p, L))};
      });
  return t;
}

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

std::string json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    return std::isfinite(*d) ? format_number(*d) : "null";
  }
  if (const auto* s = std::get_if<std::string>(&cell)) {
    return nlohmann::json(*s).dump();
  }
  return csv_cell(cell);
}

// Flat config echo in a fixed key order.
std::vector<std::pair<std::string, std::string>> config_fields(
    const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> f;
  const auto str = [](std::string_view s) { return nlohmann::json(s).dump(); };
  f.emplace_back("command", str(to_string(c.command)));
  if (c.mu) f.emplace_back("mu", format_number(*c.mu));
  if (c.delta) f.emplace_back("delta", format_number(*c.delta));
  if (c.mu_range) f.emplace_back("mu_range", str(c.mu_range->to_string()));
  if (c.delta_range) {
    f.emplace_back("delta_range", str(c.delta_range->to_string()));
  }
  if (c.sites) f.emplace_back("L", std::to_string(*c.sites));
  if (!c.sizes.empty()) {
    f.emplace_back("sizes", nlohmann::json(c.sizes).dump());
  }
  if (c.repetitions) f.emplace_back("m", std::to_string(*c.repetitions));
  if (c.quantity) f.emplace_back("quantity", str(to_string(*c.quantity)));
  if (c.h) f.emplace_back("h", format_number(*c.h));
  if (c.step) f.emplace_back("step", format_number(*c.step));
  if (c.tolerance) f.emplace_back("tolerance", format_number(*c.tolerance));
  if (c.winding_steps) {
    f.emplace_back("steps", std::to_string(*c.winding_steps));
  }
  return f;
}

}  // namespace

Table execute(const RunConfig& config) {
  switch (config.command) {
    case Command::point:
    case Command::sweep:
      return point_records(config);
    case Command::scaling:
      return scaling_records(config);
    case Command::verify:
      return verify_records(config);
    case Command::phase:
      return phase_records(config);
    case Command::occupancy:
      return occupancy_records(config);
  }
  return {};
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_cell(row[i]);
    }
    out << '\n';
  }
}

void write_json(const RunConfig& config, const Table& table,
                std::ostream& out) {
  out << "{\n  \"config\": {";
  const auto fields = config_fields(config);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out << (i ? ", " : "") << '"' << fields[i].first
        << "\": " << fields[i].second;
  }
  out << "},\n  \"records\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n    {" : "\n    {");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? ", " : "") << '"' << table.columns[i]
          << "\": " << json_cell(table.rows[r][i]);
    }
    out << '}';
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Table table;
  try {
    config.validate();
    table = execute(config);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ostringstream text;
  if (config.format == Format::json) {
    write_json(config, table, text);
  } else {
    write_csv(table, text);
  }

  if (config.output_path.empty()) {
    out << text.str();
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    file << text.str();
    file.close();
    if (!file) {
      err << "io error: cannot write " << config.output_path << '\n';
      return kIoError;
    }
  }

  if (config.command == Command::verify &&
      !std::get<bool>(table.rows.front().back())) {
    err << "verification failed: max_rel_error "
        << csv_cell(table.rows.front()[14]) << " exceeds tolerance\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  RunConfig config;
  try {
    bool help = false;
    config = parse_args(argc, argv, out, help);
    if (help) return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  return run(config, out, err);
}

}  // namespace kitaev_qfi::cli
