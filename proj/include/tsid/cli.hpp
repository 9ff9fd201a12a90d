#ifndef TSID_CLI_HPP
#define TSID_CLI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace tsid {

enum class Command { Simulate, Identify, Predict, Observability, Spectrum, Montecarlo };

std::optional<Command> parse_command(std::string_view name) noexcept;

/// One CLI invocation. `params` holds option values keyed by flag name
/// without dashes ("system", "n", "seed-window", …); boolean flags map to "1".
struct RunSpec {
  Command command = Command::Simulate;
  std::map<std::string, std::string> params;
  std::optional<std::uint64_t> seed;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Executes one command. Artifacts go to params["out"] when given, otherwise
/// to `out`; diagnostics go to `err`. Returns the process exit status.
int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace tsid

#endif  // TSID_CLI_HPP
