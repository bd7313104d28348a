#pragma once

#include "icisqf/report.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace icisqf {

struct CorpusEntry {
  std::string name;
  ProblemFile problem;
  /// Expected report values: "nu", "tau_prime", "rank_qa", "rank_qomega",
  /// "signature", and "qomega:<generator label>" for diagonal entries of the
  /// form on differential forms, all as exact strings.
  std::map<std::string, std::string> expect;
  /// Hypersurface with omega = dx_1: also compared against its map germ.
  bool bridge = false;
};

/// The weighted quadric for n = 2, 3, 4, hypersurfaces with omega = dx_1 (the
/// cusp and an A2 surface), a smooth line, a curve in C^3 and two map germs.
std::vector<CorpusEntry> corpus();

/// Weighted quadric: f = sum x_i^2, omega = sum a_i x_i dx_i with a = (1, 2, 4, ...).
ProblemFile weighted_quadric(int n);

struct CorpusRow {
  std::string instance;
  std::string claim;
  std::string expected;
  std::string computed;
  double tolerance = 0;
  bool passed = false;
};

/// Runs every entry and returns one row per check and per expectation.
std::vector<CorpusRow> verify_corpus(const AnalyzeOptions& opts, std::ostream* progress = nullptr);

void print_table(const std::vector<CorpusRow>& rows, std::ostream& out);

}  // namespace icisqf
