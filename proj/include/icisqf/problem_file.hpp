#pragma once

#include "icisqf/icis.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace icisqf {

/// Bad problem file: unreadable, malformed JSON, wrong shapes or a polynomial
/// that does not parse.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { icis, elkh };

/// {"variables": [...], "f": [...], "omega": [...], "mode": "icis" | "elkh"}
///
/// In elkh mode "f" must be empty (or absent) and "omega" lists the
/// components of the map germ.
struct ProblemFile {
  std::vector<std::string> variables;
  std::vector<std::string> f;
  std::vector<std::string> omega;
  Mode mode = Mode::icis;

  static ProblemFile from_json(const nlohmann::json& doc);
  static ProblemFile load(const std::string& path);
  nlohmann::json to_json() const;

  /// Parses the polynomials. Throws InputError.
  ProblemInstance instance() const;
};

std::string mode_name(Mode m);

}  // namespace icisqf
