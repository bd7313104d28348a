#include "icisqf/problem_file.hpp"

#include "icisqf/parse.hpp"

#include <fstream>
#include <sstream>

namespace icisqf {

namespace {

std::vector<std::string> string_list(const nlohmann::json& doc, const char* key, bool required) {
  if (!doc.contains(key)) {
    if (required) throw InputError(std::string("problem file: missing \"") + key + "\"");
    return {};
  }
  const auto& v = doc.at(key);
  if (!v.is_array()) throw InputError(std::string("problem file: \"") + key + "\" must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw InputError(std::string("problem file: \"") + key + "\" must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

std::string mode_name(Mode m) { return m == Mode::icis ? "icis" : "elkh"; }

ProblemFile ProblemFile::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("problem file: top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "variables" && key != "f" && key != "omega" && key != "mode") {
      throw InputError("problem file: unknown field \"" + key + "\"");
    }
  }
  ProblemFile p;
  p.variables = string_list(doc, "variables", true);
  p.f = string_list(doc, "f", false);
  p.omega = string_list(doc, "omega", true);
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw InputError("problem file: \"mode\" must be a string");
    const std::string m = doc["mode"].get<std::string>();
    if (m == "icis") {
      p.mode = Mode::icis;
    } else if (m == "elkh") {
      p.mode = Mode::elkh;
    } else {
      throw InputError("problem file: mode must be \"icis\" or \"elkh\", got \"" + m + "\"");
    }
  }
  if (p.variables.empty()) throw InputError("problem file: no variables");
  if (p.omega.size() != p.variables.size()) {
    throw InputError("problem file: \"omega\" needs one entry per variable");
  }
  if (p.mode == Mode::elkh && !p.f.empty()) throw InputError("problem file: elkh mode takes no equations");
  if (p.f.size() >= p.variables.size()) throw InputError("problem file: need fewer equations than variables");
  return p;
}

ProblemFile ProblemFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json ProblemFile::to_json() const {
  return {{"variables", variables}, {"f", f}, {"omega", omega}, {"mode", mode_name(mode)}};
}

ProblemInstance ProblemFile::instance() const {
  try {
    return ProblemInstance::parse(f, omega, variables);
  } catch (const ParseError& e) {
    throw InputError(std::string("polynomial: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace icisqf
