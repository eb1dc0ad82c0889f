#pragma once

// Command-line front end: subcommand dispatch, JSON/CSV rendering.

#include "ipoly/diophantine.hpp"
#include "ipoly/intersective.hpp"
#include "ipoly/polycore.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace ipoly::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,      ///< conclusive negative verdict
  kUsage = 2,         ///< usage, parse or precondition error
  kInconclusive = 3,  ///< certification inconclusive
};

nlohmann::json to_json(const PadicRoot& root);
nlohmann::json to_json(const IntersectivityVerdict& verdict);
nlohmann::json to_json(const RdRecord& record);
nlohmann::json to_json(const SearchResult& result);
nlohmann::json to_json(const NiceSystem& system);
nlohmann::json to_json(const IntMatrix& m);

/// Parses a JSON row-major matrix such as "[[1.5, 2], [0, 1]]".
RealMatrix parse_matrix(const std::string& text);
/// Parses a JSON array of numbers.
std::vector<double> parse_reals(const std::string& text);

/// Runs the CLI on args (without the program name). Output goes to out,
/// diagnostics to err. Returns one of the ExitCode values.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipoly::cli
