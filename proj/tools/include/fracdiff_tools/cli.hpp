#pragma once
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/distributed_order.hpp"
#include "fracdiff/single_order.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::cli {

/// Bad command-line input; maps to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { mlf, mwright, green_single, green_dist, moments, asymptotics, selftest };
enum class Format { csv, json };

std::string_view to_string(Command command);
Command parse_command(std::string_view text);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start + i * step for i = 0 .. floor((stop - start) / step), so the end
  /// point is hit exactly when it lies on the grid.
  std::vector<double> points() const;
  std::string describe() const;
};

/// "start:stop:step" or a single number.
Grid parse_grid(std::string_view text);

/// "beta:weight,...[,uniform:w]".
distributed_order::OrderWeight parse_weight(std::string_view text, bool normalize);

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
  Command command = Command::green_single;
  std::optional<double> beta;  // order for mlf, green-single and asymptotics
  std::optional<double> nu;    // M-function order
  std::optional<std::string> weight_spec;
  Grid x{0.0, 0.0, 1.0};
  Grid t{1.0, 1.0, 1.0};
  std::string path = "series";
  Format format = Format::csv;
  SeriesPolicy policy;
  bool normalize_weights = false;

  /// Throws ConfigError with the offending field named.
  void validate() const;
};

/// Runs one command. Results go to `out`; on failure a single-line JSON error
/// record goes to `err` and the exit status is 2 (configuration) or 3
/// (numerical).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes the machine-readable error record used by run().
void write_error(std::ostream& err, std::string_view kind, std::string_view message,
                 std::optional<Command> command = std::nullopt);

}  // namespace fracdiff::cli
