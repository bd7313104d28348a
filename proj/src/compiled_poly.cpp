#include "icisqf/compiled_poly.hpp"

#include <algorithm>
#include <map>

namespace icisqf {

CompiledPoly::CompiledPoly(const Poly& p, cd scale) : nvars_(p.nvars()) { add(p, scale); }

void CompiledPoly::add(const Poly& p, cd scale) {
  if (p.nvars() != nvars_) throw std::invalid_argument("CompiledPoly: wrong variable count");
  if (scale == 0.0) return;
  for (const auto& [m, c] : p.terms()) terms_.push_back({scale * to_double(c), m.exponents()});
  normalize();
}

void CompiledPoly::normalize() {
  std::map<std::vector<int>, cd> merged;
  for (const Term& t : terms_) merged[t.exps] += t.coeff;
  terms_.clear();
  for (auto& [e, c] : merged) {
    if (c != 0.0) terms_.push_back({c, e});
  }
}

int CompiledPoly::degree() const {
  int d = -1;
  for (const Term& t : terms_) {
    int s = 0;
    for (int e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

CompiledPoly CompiledPoly::derivative(int var) const {
  CompiledPoly d(nvars_);
  for (const Term& t : terms_) {
    const int e = t.exps[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    Term nt = t;
    nt.coeff *= static_cast<double>(e);
    nt.exps[static_cast<std::size_t>(var)] = e - 1;
    d.terms_.push_back(std::move(nt));
  }
  return d;
}

cd CompiledPoly::evaluate(const std::vector<std::vector<cd>>& powers) const {
  cd sum = 0.0;
  for (const Term& t : terms_) {
    cd v = t.coeff;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] != 0) v *= powers[i][static_cast<std::size_t>(t.exps[i])];
    }
    sum += v;
  }
  return sum;
}

cd CompiledPoly::evaluate(std::span<const cd> z) const {
  if (static_cast<int>(z.size()) != nvars_) throw std::invalid_argument("CompiledPoly: dimension mismatch");
  const int d = std::max(degree(), 0);
  std::vector<std::vector<cd>> powers(z.size(), std::vector<cd>(static_cast<std::size_t>(d) + 1, 1.0));
  for (std::size_t v = 0; v < z.size(); ++v) {
    for (int e = 1; e <= d; ++e) powers[v][static_cast<std::size_t>(e)] = powers[v][static_cast<std::size_t>(e - 1)] * z[v];
  }
  return evaluate(powers);
}

CompiledSystem::CompiledSystem(std::vector<CompiledPoly> equations) : equations_(std::move(equations)) {
  if (equations_.empty()) return;
  nvars_ = equations_.front().nvars();
  for (const auto& e : equations_) {
    if (e.nvars() != nvars_) throw std::invalid_argument("CompiledSystem: mixed variable counts");
    max_degree_ = std::max(max_degree_, e.degree());
  }
  for (const auto& e : equations_) {
    std::vector<CompiledPoly> row;
    for (int j = 0; j < nvars_; ++j) row.push_back(e.derivative(j));
    jacobian_.push_back(std::move(row));
  }
}

std::vector<int> CompiledSystem::degrees() const {
  std::vector<int> d;
  for (const auto& e : equations_) d.push_back(e.degree());
  return d;
}

std::vector<std::vector<cd>> CompiledSystem::power_table(std::span<const cd> z) const {
  if (static_cast<int>(z.size()) != nvars_) throw std::invalid_argument("CompiledSystem: dimension mismatch");
  const auto width = static_cast<std::size_t>(std::max(max_degree_, 0)) + 1;
  std::vector<std::vector<cd>> powers(z.size(), std::vector<cd>(width, 1.0));
  for (std::size_t v = 0; v < z.size(); ++v) {
    for (std::size_t e = 1; e < width; ++e) powers[v][e] = powers[v][e - 1] * z[v];
  }
  return powers;
}

void CompiledSystem::evaluate(std::span<const cd> z, Eigen::VectorXcd& value) const {
  const auto powers = power_table(z);
  value.resize(size());
  for (int i = 0; i < size(); ++i) value(i) = equations_[static_cast<std::size_t>(i)].evaluate(powers);
}

void CompiledSystem::evaluate(std::span<const cd> z, Eigen::VectorXcd& value, Eigen::MatrixXcd& jac) const {
  const auto powers = power_table(z);
  value.resize(size());
  jac.resize(size(), nvars_);
  for (int i = 0; i < size(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    value(i) = equations_[ui].evaluate(powers);
    for (int j = 0; j < nvars_; ++j) jac(i, j) = jacobian_[ui][static_cast<std::size_t>(j)].evaluate(powers);
  }
}

}  // namespace icisqf
