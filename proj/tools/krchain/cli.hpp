#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "krchain/ffield.hpp"
#include "krchain/int128.hpp"

namespace krc::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kWorkersEnv = "KRCHAIN_WORKERS";

enum class Command { verify, candidate_check, search, density, exceptional, ff_verify, ff_search };
enum class Ring { integers, polynomial };
enum class Format { table, json, csv };
enum class Level { chain, cyclic, permutation };

/// Bad command line or literal. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help / --version; the message is the text to print. Exit code 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::verify;
  Ring ring = Ring::integers;
  std::uint64_t k = 1;
  /// Integer candidates (ring == integers).
  std::vector<Int> sequence;
  /// Polynomial candidates (ring == polynomial).
  std::vector<FFPoly> poly_sequence;
  std::optional<std::uint64_t> modulus;
  std::optional<FFPoly> poly_modulus;
  std::uint64_t limit = 0;
  std::optional<std::size_t> max_count;
  int max_degree = 0;
  Level require = Level::permutation;
  Format format = Format::table;
  unsigned workers = 1;
  std::size_t cap = kDefaultTermCap;
  bool timing = false;

  /// Echo used in reports. Worker count is left out so that reports do not
  /// depend on it.
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

struct RunReport {
  RunConfig config;
  nlohmann::json result;
  std::optional<double> elapsed_ms;
  std::string version;
  int exit_code = 0;
  /// Human-readable rendering, filled by run().
  std::string table;

  /// Keys are emitted sorted; elapsed_ms only appears when config.timing.
  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
};

/// "1,2,-4" -> {1, 2, -4}. Throws UsageError naming the bad token.
std::vector<Int> parse_int_sequence(std::string_view text);

/// "GF(3)[0,1],GF(3)[1]" -> {t, 1} over F_3. Throws UsageError naming the bad literal.
std::vector<FFPoly> parse_poly_sequence(std::string_view text);

/// Parses arguments (without the program name). Throws UsageError.
RunConfig parse_command_line(const std::vector<std::string>& args);

/// Dispatches to the library. Mathematical outcomes set exit_code 0/1;
/// input errors propagate as krc::Error or UsageError.
RunReport run(const RunConfig& config);

/// Output text for config.format (table, JSON, or CSV).
std::string render(const RunReport& report);

/// Full CLI: parse, run, render. Returns the process exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krc::cli
