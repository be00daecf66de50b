#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kitaev_qfi/asymptotics.hpp"
#include "kitaev_qfi/oracle.hpp"

namespace kitaev_qfi::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDomainError = 2,
  kVerificationFailure = 3,
  kIoError = 4,
};

/// Bad or inconsistent command-line / config-file input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { point, sweep, scaling, verify, phase, occupancy };
enum class Format { csv, json };

/// Inclusive linear range written as start:stop:count.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  /// Throws UsageError unless the text is start:stop:count with count >= 2
  /// and start < stop.
  static Range parse(std::string_view text);
  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] std::string to_string() const;
};

struct RunConfig {
  Command command = Command::point;
  std::optional<double> mu;
  std::optional<double> delta;
  std::optional<Range> mu_range;
  std::optional<Range> delta_range;
  std::optional<int> sites;
  std::vector<int> sizes;
  std::optional<int> repetitions;
  std::optional<Quantity> quantity;
  std::optional<double> h;
  std::optional<double> step;
  std::optional<double> tolerance;
  std::optional<int> winding_steps;
  std::string output_path;  ///< empty: standard output
  Format format = Format::csv;

  /// Checks that exactly the fields the command needs are present.
  /// Throws UsageError otherwise.
  void validate() const;
};

/// Parses argv (and an optional --config key=value file; flags win).
/// Throws UsageError on malformed input. Sets `help_shown` and returns an
/// empty config when --help was requested.
RunConfig parse_args(int argc, const char* const* argv, std::ostream& out,
                     bool& help_shown);

/// One output record: column name -> value, in column order.
using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Evaluates the command and returns its records. Throws the library
/// exceptions (std::invalid_argument, DomainError) unchanged.
Table execute(const RunConfig& config);

void write_csv(const Table& table, std::ostream& out);
void write_json(const RunConfig& config, const Table& table,
                std::ostream& out);

/// Validates, executes and writes the artifact. Returns the process exit
/// status; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point used by the executable.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

std::string_view to_string(Command c);
std::string format_number(double value);

}  // namespace kitaev_qfi::cli
