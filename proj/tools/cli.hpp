#ifndef COHTORUS_TOOLS_CLI_HPP_
#define COHTORUS_TOOLS_CLI_HPP_

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohtorus/frames.hpp"
#include "cohtorus/types.hpp"

namespace cohtorus::cli {

enum class Command { Classify, Dual, Gram, FrameScan, ThetaBasis, ThetaGram, Degeneracy, CrossCheck };
enum class Format { Json, Csv };

std::string to_string(Command c);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Classify;
  std::optional<Complex> w1;
  std::optional<Complex> w2;
  std::optional<Complex> tau;
  std::vector<Complex> deletions;
  std::map<std::string, double> tolerances;
  std::map<std::string, long> truncations;
  std::string output_path;  // empty: standard output
  Format format = Format::Json;
  std::optional<RankVerdict> expect;
};

/// Parses command-line arguments (without the program name). A --config file
/// is read first and the command line overrides it. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Parses "re,im".
Complex parse_complex(const std::string& text);

/// Runs the command and writes the report. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors mapped to exit code 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Compact JSON with sorted keys, floats as %.17g and non-finite values as null.
std::string canonical_json(const nlohmann::json& value);

/// "index,eigenvalue" rows with LF endings.
std::string spectrum_csv(const std::vector<double>& eigenvalues);

}  // namespace cohtorus::cli

#endif  // COHTORUS_TOOLS_CLI_HPP_
