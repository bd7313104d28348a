#pragma once

#include "icisqf/problem_file.hpp"
#include "icisqf/quadforms.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace icisqf {

struct AnalyzeOptions {
  LimitConfig limits;
  std::uint64_t seed = 42;
  /// Rational reconstruction and exact ranks; otherwise SVD ranks only.
  bool exact = true;
  /// Random deformations for the count certification.
  int count_trials = 5;
  /// Random (eta, h) pairs for the class-invariance check.
  int class_trials = 5;
};

struct Check {
  std::string name;
  double tolerance = 0;
  double value = 0;
  bool passed = false;
  std::string detail;
};

struct Report {
  nlohmann::json doc;
  std::vector<Check> checks;

  bool passed() const;
  /// Sorted keys, two-space indent, trailing newline.
  std::string dump() const;
};

/// Runs the whole pipeline on one problem. Throws NotIsolated, CountMismatch,
/// NonConvergent and InputError.
Report analyze(const ProblemFile& problem, const AnalyzeOptions& opts);

/// Report body for a run that stopped on an error.
nlohmann::json error_report(const ProblemFile& problem, const std::string& kind, const std::string& message,
                            const AnalyzeOptions& opts);

/// Entries as "p/q" strings.
nlohmann::json exact_json(const RationalMatrix& m);
nlohmann::json config_json(const AnalyzeOptions& opts);

}  // namespace icisqf
