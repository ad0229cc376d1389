#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockmz/pointsets.hpp"
#include "fockmz/report.hpp"

namespace fockmz::cli {

enum class Command {
  gamma_check,
  family_build,
  mz_report,
  interp_report,
  gabor_crosscheck,
  tail_energy,
  degenerate_scan,
};

std::string_view to_string(Command command);

/// Exit codes of the driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, bad values, unreadable inputs. Maps to kExitUsage.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::gamma_check;

  std::optional<double> alpha;
  std::optional<Mode> mode;
  std::optional<double> tau;
  std::vector<int> degrees;
  std::optional<double> epsilon;
  std::optional<double> rho;
  std::optional<std::string> out;
  std::optional<ReportFormat> format;
  std::optional<double> tol;

  std::optional<double> a;            ///< gamma-check order
  std::optional<double> x;            ///< gamma-check cutoff
  std::optional<std::string> family;  ///< FamilySpec JSON path
};

/// Fills defaults for the command and checks every numeric value against
/// the preconditions of the operation it feeds. Throws UsageError.
RunConfig resolve(RunConfig config);

/// Resolved configuration as compact JSON (written into report headers).
std::string config_json(const RunConfig& resolved);

/// Runs the pipeline for a command: 0 all checks passed, 1 a numeric check
/// failed (any report is still written), 2 usage or configuration error.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fockmz::cli
