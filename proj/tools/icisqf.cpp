// icisqf analyze <problem.json> | icisqf verify-corpus
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 the critical point count
// or the circle means did not settle, 3 non-isolated input, 4 bad input.

#include "icisqf/corpus.hpp"
#include "icisqf/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kNumeric = 2, kNotIsolated = 3, kInput = 4 };

struct Flags {
  std::uint64_t seed = 42;
  std::vector<double> radii{1e-2, 5e-3};
  int samples = 64;
  double tol_match = 1e-8;
  long max_den = 1000000;
  bool exact = true;
  int threads = 1;
  std::string out;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd.add_option("--radii", f.radii, "circle radii, decreasing")->delimiter(',')->capture_default_str();
  cmd.add_option("--samples", f.samples, "points per circle")->capture_default_str();
  cmd.add_option("--tol-match", f.tol_match, "agreement tolerance between radii")->capture_default_str();
  cmd.add_option("--max-den", f.max_den, "largest denominator for rational reconstruction")->capture_default_str();
  cmd.add_flag("--exact,!--no-exact", f.exact, "rational reconstruction and exact ranks");
  cmd.add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--out", f.out, "write the report here instead of stdout");
}

icisqf::AnalyzeOptions options(const Flags& f) {
  icisqf::AnalyzeOptions o;
  o.seed = f.seed;
  o.limits.radii = f.radii;
  o.limits.samples = f.samples;
  o.limits.tol_match = f.tol_match;
  o.limits.max_denominator = f.max_den;
  o.limits.solver.threads = f.threads;
  o.exact = f.exact;
  return o;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw icisqf::InputError("cannot write " + path);
  out << text;
}

int run_analyze(const std::string& path, const Flags& flags) {
  using namespace icisqf;
  ProblemFile problem;
  try {
    problem = ProblemFile::load(path);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  const AnalyzeOptions opts = options(flags);
  auto fail = [&](const std::string& kind, const std::string& msg, int code) {
    std::cerr << "error: " << msg << "\n";
    emit(error_report(problem, kind, msg, opts).dump(2) + "\n", flags.out);
    return code;
  };
  try {
    const Report rep = analyze(problem, opts);
    emit(rep.dump(), flags.out);
    for (const Check& c : rep.checks) {
      if (!c.passed) std::cerr << "check failed: " << c.name << " (" << c.value << ")\n";
    }
    return rep.passed() ? kPass : kCheckFailed;
  } catch (const InputError& e) {
    return fail("input", e.what(), kInput);
  } catch (const std::invalid_argument& e) {
    return fail("input", e.what(), kInput);
  } catch (const NotIsolated& e) {
    return fail("not_isolated", e.what(), kNotIsolated);
  } catch (const CountMismatch& e) {
    return fail("count_mismatch",
                std::string(e.what()) + " (found " + std::to_string(e.found()) + ", expected " +
                    std::to_string(e.expected()) + ")",
                kNumeric);
  } catch (const NonConvergent& e) {
    return fail("non_convergent", std::string(e.what()) + " (deviation " + std::to_string(e.deviation()) + ")",
                kNumeric);
  }
}

int run_corpus(const Flags& flags) {
  using namespace icisqf;
  const AnalyzeOptions opts = options(flags);
  try {
    opts.limits.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  const auto rows = verify_corpus(opts, &std::cerr);
  std::ostringstream table;
  print_table(rows, table);
  emit(table.str(), flags.out);
  for (const auto& r : rows) {
    if (!r.passed) return kCheckFailed;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic forms of 1-forms on isolated complete intersection singularities"};
  app.require_subcommand(1);

  Flags analyze_flags, corpus_flags;
  std::string path;
  auto* analyze = app.add_subcommand("analyze", "analyze one problem file and print a JSON report");
  analyze->add_option("file", path, "problem file")->required();
  add_flags(*analyze, analyze_flags);
  auto* verify = app.add_subcommand("verify-corpus", "run the built-in instances and print a claim table");
  add_flags(*verify, corpus_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }
  if (*analyze) return run_analyze(path, analyze_flags);
  return run_corpus(corpus_flags);
}
