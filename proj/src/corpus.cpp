#include "icisqf/corpus.hpp"

#include <iomanip>
#include <sstream>

namespace icisqf {

using nlohmann::json;

ProblemFile weighted_quadric(int n) {
  ProblemFile p;
  std::string f;
  long a = 1;
  for (int i = 1; i <= n; ++i) {
    const std::string x = "x" + std::to_string(i);
    p.variables.push_back(x);
    f += (i > 1 ? " + " : "") + x + "^2";
    p.omega.push_back(std::to_string(a) + "*" + x);
    a *= 2;
  }
  p.f = {f};
  return p;
}

namespace {

/// 2 / prod_{j != i} (a_j - a_i) for a_i = 2^i.
Rational quadric_qomega(int n, int i) {
  Rational prod = 1;
  for (int j = 0; j < n; ++j) {
    if (j != i) prod *= Rational((1L << j) - (1L << i));
  }
  return Rational(2) / prod;
}

CorpusEntry quadric_entry(int n) {
  CorpusEntry e{"quadric_n" + std::to_string(n), weighted_quadric(n), {}, false};
  e.expect["nu"] = std::to_string(2 * n);
  e.expect["tau_prime"] = "1";
  e.expect["rank_qa"] = std::to_string(n + 2);
  e.expect["rank_qomega"] = std::to_string(n);
  for (int i = 0; i < n; ++i) {
    // alpha_i omits dx_i.
    std::string label = "(1)*d";
    bool first = true;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      label += (first ? "" : "^d") + e.problem.variables[static_cast<std::size_t>(j)];
      first = false;
    }
    e.expect["qomega:" + label] = to_string(quadric_qomega(n, i));
  }
  return e;
}

ProblemFile make(std::vector<std::string> vars, std::vector<std::string> f, std::vector<std::string> omega,
                 Mode mode = Mode::icis) {
  return {std::move(vars), std::move(f), std::move(omega), mode};
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(3) << v;
  return ss.str();
}

std::string value_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

/// Looks up an expectation key in a report.
json lookup(const json& doc, const std::string& key) {
  const std::string gram = doc.contains("gram_elkh") ? "gram_elkh" : "gram_qa";
  if (key == "nu" || key == "tau_prime") return doc.value(key, json(nullptr));
  if (key == "rank_qa") return doc[gram]["rank"];
  if (key == "signature") return doc[gram]["signature"];
  if (key == "rank_qomega") return doc["ranks"]["qomega"];
  if (key.rfind("qomega:", 0) == 0) {
    const std::string label = key.substr(7);
    const json& g = doc["gram_qomega"];
    const auto& labels = g["labels"];
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return g["exact"].is_null() ? g["numeric"][i][i] : g["exact"][i][i];
    }
  }
  return nullptr;
}

void bridge_rows(const CorpusEntry& e, const AnalyzeOptions& opts, std::vector<CorpusRow>& rows) {
  const ProblemInstance inst = e.problem.instance();
  const HypersurfaceBridge b = hypersurface_bridge(inst, opts.limits, opts.seed);
  const std::string n = std::to_string(b.n);
  rows.push_back({e.name, "Q^A(p,q) = Q_map((df/dx1)^(n-2) p, q)", "0", format_double(b.max_deviation), 1e-8,
                  b.max_deviation < 1e-8});
  if (b.coincide) {
    rows.push_back({e.name, "n = 2: Q^A and Q_map coincide", "true", *b.coincide ? "true" : "false", 0,
                    *b.coincide});
  }
  rows.push_back({e.name, "rk Q^Omega = rk of multiplication by (df/dx1)^(n-1)",
                  std::to_string(b.rank_power_n_minus_1), std::to_string(b.rank_qomega), 0,
                  b.rank_qomega == b.rank_power_n_minus_1});
  rows.push_back({e.name, "rk Q^Omega = rk of multiplication by (df/dx1)^n", std::to_string(b.rank_power_n),
                  std::to_string(b.rank_qomega), 0, b.rank_qomega == b.rank_power_n});
}

}  // namespace

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (int n = 2; n <= 4; ++n) out.push_back(quadric_entry(n));

  CorpusEntry cusp{"cusp", make({"x", "y"}, {"x^2 - y^3"}, {"1", "0"}), {}, true};
  cusp.expect = {{"nu", "4"}, {"tau_prime", "2"}};
  out.push_back(cusp);

  CorpusEntry a2{"a2_surface", make({"x1", "x2", "x3"}, {"x1^2 + x2^3 + x3^2"}, {"1", "0", "0"}), {}, true};
  a2.expect = {{"nu", "4"}};
  out.push_back(a2);

  CorpusEntry line{"smooth_line", make({"x1", "x2"}, {"x1"}, {"0", "x2"}), {}, false};
  line.expect = {{"nu", "1"}, {"tau_prime", "0"}, {"rank_qa", "1"}, {"rank_qomega", "1"}};
  out.push_back(line);

  CorpusEntry curve{"space_curve",
                    make({"x", "y", "z"}, {"x^2 - y^2", "y^2 - z^2"}, {"x + y", "2*y", "3*z"}), {}, false};
  out.push_back(curve);

  CorpusEntry id{"elkh_identity", make({"x", "y"}, {}, {"x", "y"}, Mode::elkh), {}, false};
  id.expect = {{"nu", "1"}, {"rank_qa", "1"}, {"signature", "1"}};
  out.push_back(id);

  CorpusEntry z3{"elkh_z3", make({"x", "y"}, {}, {"x^3 - 3*x*y^2", "3*x^2*y - y^3"}, Mode::elkh), {}, false};
  z3.expect = {{"nu", "9"}, {"rank_qa", "9"}, {"signature", "3"}};
  out.push_back(z3);
  return out;
}

std::vector<CorpusRow> verify_corpus(const AnalyzeOptions& opts, std::ostream* progress) {
  std::vector<CorpusRow> rows;
  for (const CorpusEntry& e : corpus()) {
    if (progress) *progress << "running " << e.name << "\n" << std::flush;
    try {
      const Report rep = analyze(e.problem, opts);
      for (const Check& c : rep.checks) {
        rows.push_back({e.name, c.name, c.tolerance == 0 ? "true" : "< tol",
                        c.tolerance == 0 ? (c.passed ? "true" : "false") : format_double(c.value), c.tolerance,
                        c.passed});
      }
      for (const auto& [key, want] : e.expect) {
        const std::string got = value_string(lookup(rep.doc, key));
        rows.push_back({e.name, key, want, got, 0, got == want});
      }
      if (e.bridge) bridge_rows(e, opts, rows);
    } catch (const std::exception& ex) {
      rows.push_back({e.name, "pipeline", "completes", ex.what(), 0, false});
    }
  }
  return rows;
}

void print_table(const std::vector<CorpusRow>& rows, std::ostream& out) {
  std::size_t w_inst = 8, w_claim = 5, w_exp = 8, w_got = 8;
  for (const auto& r : rows) {
    w_inst = std::max(w_inst, r.instance.size());
    w_claim = std::max(w_claim, r.claim.size());
    w_exp = std::max(w_exp, r.expected.size());
    w_got = std::max(w_got, r.computed.size());
  }
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                  const std::string& t, const std::string& s) {
    out << std::left << std::setw(static_cast<int>(w_inst)) << a << "  " << std::setw(static_cast<int>(w_claim))
        << b << "  " << std::setw(static_cast<int>(w_exp)) << c << "  " << std::setw(static_cast<int>(w_got)) << d
        << "  " << std::setw(9) << t << "  " << s << "\n";
  };
  line("instance", "claim", "expected", "computed", "tolerance", "status");
  std::size_t failed = 0;
  for (const auto& r : rows) {
    line(r.instance, r.claim, r.expected, r.computed, r.tolerance == 0 ? "exact" : format_double(r.tolerance),
         r.passed ? "PASS" : "FAIL");
    failed += !r.passed;
  }
  out << rows.size() - failed << "/" << rows.size() << " claims hold\n";
}

}  // namespace icisqf
