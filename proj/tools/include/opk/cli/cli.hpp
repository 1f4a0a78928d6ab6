#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace opk::cli {

using nlohmann::json;

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitObstruction = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Parsed command line. Empty strings and zeros mean "not given". */
struct RunConfig {
  std::string command;
  /// Positional target of `homology` and `character` ("partition").
  std::string target;
  std::string preset;
  std::string presentation_path;
  int arity = 0;
  int max_arity = 0;
  int r = 0;
  std::string ring = "Q";
  long prime = 0;
  std::string format = "json";
  std::string out;
  std::string cache_dir;
  int jobs = 1;
  std::string kind;
  bool dims_only = false;

  /// Throws UsageError on inconsistent settings (ring/prime, arity bounds, command options).
  void validate() const;
  /// Arities the command iterates over, in increasing order.
  std::vector<int> arities() const;
  /// Echo written into the result document.
  json to_json() const;
};

/// Parses argv; throws UsageError. `help` is set when only help text was requested.
RunConfig parse_command_line(int argc, const char* const* argv, std::string* help = nullptr);

/// Runs a validated config. Throws operad::ParseError, operad::QuotientObstruction or UsageError.
json run(const RunConfig& config);

/// Serializes a result document in the requested format.
std::string render(const json& doc, const std::string& format);

/// Error document for a failure; `kind` is "usage", "parse" or "obstruction".
json error_document(const std::string& kind, const std::string& message, const json& extra = json::object());

/// Full program: parse, run, write output, map failures to exit codes.
int main_entry(int argc, const char* const* argv);

}  // namespace opk::cli
