#include "icisqf/icis.hpp"

#include "icisqf/parse.hpp"
#include "icisqf/sparse_echelon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace icisqf {

ProblemInstance ProblemInstance::make(std::vector<Poly> f, std::vector<Poly> A,
                                      std::vector<std::string> vars) {
  ProblemInstance inst;
  inst.n = static_cast<int>(A.size());
  inst.k = static_cast<int>(f.size());
  if (inst.n < 1) throw std::invalid_argument("ProblemInstance: no 1-form coefficients");
  if (inst.k >= inst.n) throw std::invalid_argument("ProblemInstance: need k < n");
  for (const Poly& p : f) {
    if (p.nvars() != inst.n) throw std::invalid_argument("ProblemInstance: f has wrong variable count");
    if (p.constant_term() != 0) throw std::invalid_argument("ProblemInstance: f(0) != 0");
  }
  for (const Poly& p : A) {
    if (p.nvars() != inst.n) throw std::invalid_argument("ProblemInstance: omega has wrong variable count");
  }
  if (vars.empty()) vars = default_variable_names(inst.n);
  if (static_cast<int>(vars.size()) != inst.n) {
    throw std::invalid_argument("ProblemInstance: variable list does not match omega");
  }
  inst.f = std::move(f);
  inst.A = std::move(A);
  inst.vars = std::move(vars);
  return inst;
}

ProblemInstance ProblemInstance::parse(const std::vector<std::string>& f,
                                       const std::vector<std::string>& A,
                                       const std::vector<std::string>& vars) {
  std::vector<Poly> fp, ap;
  for (const auto& s : f) fp.push_back(icisqf::parse(s, vars));
  for (const auto& s : A) ap.push_back(icisqf::parse(s, vars));
  return make(std::move(fp), std::move(ap), vars);
}

std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || size > n) return out;
  std::vector<int> s(static_cast<std::size_t>(size));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    int i = size - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

int shuffle_sign(const std::vector<int>& first, const std::vector<int>& second) {
  std::vector<int> all = first;
  all.insert(all.end(), second.begin(), second.end());
  int inversions = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] > all[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<int> complement(int n, const std::vector<int>& subset) {
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if (std::find(subset.begin(), subset.end(), j) == subset.end()) out.push_back(j);
  }
  return out;
}

PolyMatrix jacobian(const std::vector<Poly>& f, int nvars) {
  PolyMatrix m;
  for (const Poly& p : f) {
    std::vector<Poly> row;
    for (int j = 0; j < nvars; ++j) row.push_back(diff(p, j));
    m.push_back(std::move(row));
  }
  return m;
}

Poly jacobian_minor(const ProblemInstance& inst, const std::vector<int>& cols) {
  PolyMatrix m;
  for (const Poly& p : inst.f) {
    std::vector<Poly> row;
    for (int j : cols) row.push_back(diff(p, j));
    m.push_back(std::move(row));
  }
  if (m.empty()) return Poly::constant(inst.n, 1);
  return det(m);
}

Poly form_minor(const ProblemInstance& inst, const std::vector<int>& cols) {
  PolyMatrix m;
  for (const Poly& p : inst.f) {
    std::vector<Poly> row;
    for (int j : cols) row.push_back(diff(p, j));
    m.push_back(std::move(row));
  }
  std::vector<Poly> last;
  for (int j : cols) last.push_back(inst.A[static_cast<std::size_t>(j)]);
  m.push_back(std::move(last));
  return det(m);
}

std::vector<Poly> build_ideal(const ProblemInstance& inst) {
  std::vector<Poly> gens = inst.f;
  for (const auto& cols : subsets(inst.n, inst.k + 1)) gens.push_back(form_minor(inst, cols));
  return gens;
}

QuotientAlgebra local_algebra(const ProblemInstance& inst) {
  return QuotientAlgebra(build_ideal(inst), LocalOrder(inst.n));
}

Colength index_nu(const ProblemInstance& inst) { return local_algebra(inst).colength(); }

std::size_t tau_prime(const ProblemInstance& inst) {
  std::vector<Poly> gens = inst.f;
  for (const auto& cols : subsets(inst.n, inst.k)) gens.push_back(jacobian_minor(inst, cols));
  const Colength c = QuotientAlgebra(gens, LocalOrder(inst.n)).colength();
  if (c.is_infinite()) throw NotIsolated("tau_prime: singular locus of f is not isolated");
  return c.value();
}

namespace {

// Element of the free module with basis dx_S, |S| = n - k.
using ModuleVector = std::map<int, Poly>;

std::vector<ModuleVector> omega_relations(const ProblemInstance& inst) {
  const int degree = inst.n - inst.k;
  const auto top = subsets(inst.n, degree);
  std::map<std::vector<int>, int> index;
  for (std::size_t s = 0; s < top.size(); ++s) index.emplace(top[s], static_cast<int>(s));

  std::vector<ModuleVector> rels;
  for (const Poly& fi : inst.f) {
    for (std::size_t s = 0; s < top.size(); ++s) rels.push_back({{static_cast<int>(s), fi}});
  }

  std::vector<std::vector<Poly>> one_forms = jacobian(inst.f, inst.n);
  one_forms.push_back(inst.A);
  for (const auto& beta : one_forms) {
    for (const auto& T : subsets(inst.n, degree - 1)) {
      ModuleVector v;
      for (int j = 0; j < inst.n; ++j) {
        if (std::find(T.begin(), T.end(), j) != T.end()) continue;
        const Poly& c = beta[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        // dx_j ^ dx_T = (-1)^{#{t in T : t < j}} dx_{T + j}
        const auto below = std::count_if(T.begin(), T.end(), [j](int t) { return t < j; });
        std::vector<int> S = T;
        S.insert(std::upper_bound(S.begin(), S.end(), j), j);
        v.emplace(index.at(S), below % 2 == 0 ? c : -c);
      }
      if (!v.empty()) rels.push_back(std::move(v));
    }
  }
  return rels;
}

std::size_t truncated_module_dim(const ProblemInstance& inst, const std::vector<ModuleVector>& rels,
                                 std::size_t rank, int bound) {
  const auto mons = monomials_below(inst.n, bound);
  std::map<Monomial, int> mon_index;
  for (std::size_t i = 0; i < mons.size(); ++i) mon_index.emplace(mons[i], static_cast<int>(i));
  const int width = static_cast<int>(mons.size());

  SparseEchelon echelon;
  for (const ModuleVector& v : rels) {
    for (const Monomial& a : mons) {
      SparseRow row;
      for (const auto& [s, p] : v) {
        for (const auto& [m, c] : p.terms()) {
          if (m.degree() + a.degree() >= bound) continue;
          row.emplace_back(s * width + mon_index.at(m * a), c);
        }
      }
      if (row.empty()) continue;
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      echelon.insert(std::move(row));
    }
  }
  return rank * mons.size() - echelon.rank();
}

}  // namespace

OmegaDimension omega_module_dim(const ProblemInstance& inst, int max_degree) {
  const auto rels = omega_relations(inst);
  const std::size_t rank = subsets(inst.n, inst.n - inst.k).size();
  std::size_t prev = truncated_module_dim(inst, rels, rank, 1);
  for (int d = 1; d < max_degree; ++d) {
    const std::size_t next = truncated_module_dim(inst, rels, rank, d + 1);
    if (next == prev) return {prev, d};
    prev = next;
  }
  throw Inconclusive("omega_module_dim: no stabilization below degree " + std::to_string(max_degree));
}

}  // namespace icisqf
