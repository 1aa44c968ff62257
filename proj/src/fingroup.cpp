// Copyright 2026 The covkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "covkit/fingroup.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace covkit {

namespace {

std::string triple(int g, int h, int k) {
  std::ostringstream os;
  os << "(" << g << "," << h << "," << k << ")";
  return os.str();
}

std::string pair_str(int g, int h) {
  std::ostringstream os;
  os << "(" << g << "," << h << ")";
  return os.str();
}

Complex root_of_unity(long k, long n) {
  const long r = ((k % n) + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(n));
}

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup() = default;

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::string name)
    : order_(order), table_(std::move(table)), name_(std::move(name)) {
  if (order_ < 1) throw ValidationError("group order must be positive");
  if (table_.size() != std::size_t(order_) * order_)
    throw ValidationError("multiplication table must have order^2 entries");
  for (int v : table_)
    if (v < 0 || v >= order_) throw ValidationError("multiplication table entry out of range");
  identity_ = -1;
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < order_ && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw ValidationError("multiplication table has no identity element");
  inverse_.assign(order_, -1);
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h)
      if (mul(g, h) == identity_) {
        if (mul(h, g) != identity_)
          throw ValidationError("left and right inverses differ for element " + std::to_string(g));
        inverse_[g] = h;
      }
  for (int g = 0; g < order_; ++g)
    if (inverse_[g] < 0) throw ValidationError("element " + std::to_string(g) + " has no inverse");
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h)
      for (int k = 0; k < order_; ++k)
        if (mul(mul(g, h), k) != mul(g, mul(h, k)))
          throw ValidationError("multiplication is not associative at " + triple(g, h, k));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw DomainError("cyclic group order must be positive");
  std::vector<int> t(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[std::size_t(a) * n + b] = (a + b) % n;
  return FiniteGroup(n, std::move(t), "cyclic " + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw DomainError("dihedral parameter must be positive");
  const int order = 2 * n;
  std::vector<int> t(std::size_t(order) * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const int a = x % n, f = x / n, b = y % n, g = y / n;
      const int k = ((a + (f ? -b : b)) % n + n) % n;
      t[std::size_t(x) * order + y] = k + n * ((f + g) % 2);
    }
  return FiniteGroup(order, std::move(t), "dihedral " + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4) throw DomainError("symmetric group supported for 1 <= n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = int(i);
  const int order = int(perms.size());
  std::vector<int> t(std::size_t(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[std::size_t(a) * order + b] = index.at(c);
    }
  return FiniteGroup(order, std::move(t), "symmetric " + std::to_string(n));
}

FiniteGroup FiniteGroup::heisenberg(int d) {
  if (d < 1) throw DomainError("heisenberg parameter must be positive");
  FiniteGroup g = direct_product(cyclic(d), cyclic(d));
  g.name_ = "heisenberg " + std::to_string(d);
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), order = na * nb;
  std::vector<int> t(std::size_t(order) * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      t[std::size_t(x) * order + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(order, std::move(t), a.name() + " x " + b.name());
}

std::vector<int> FiniteGroup::generated(const std::vector<int>& gens) const {
  std::set<int> members{identity_};
  std::vector<int> frontier{identity_};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int g : gens) {
        const int y = mul(x, g);
        if (members.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {members.begin(), members.end()};
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const {
  std::set<std::vector<int>> found;
  for (int g = 0; g < order_; ++g) found.insert(generated({g}));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<int>> current(found.begin(), found.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<int> gens = current[i];
        gens.insert(gens.end(), current[j].begin(), current[j].end());
        if (found.insert(generated(gens)).second) grew = true;
      }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

// ---------------------------------------------------------------- GroupAction

GroupAction::GroupAction(FiniteGroup group, int set_size, std::vector<int> table)
    : group_(std::move(group)), set_size_(set_size), table_(std::move(table)) {
  if (set_size_ < 0) throw ValidationError("action set size must be nonnegative");
  if (table_.size() != std::size_t(group_.order()) * set_size_)
    throw ValidationError("action table must have order x set_size entries");
  for (int v : table_)
    if (v < 0 || v >= set_size_) throw ValidationError("action table entry out of range");
}

GroupAction GroupAction::trivial(const FiniteGroup& group, int set_size) {
  std::vector<int> t(std::size_t(group.order()) * set_size);
  for (int g = 0; g < group.order(); ++g)
    for (int x = 0; x < set_size; ++x) t[std::size_t(g) * set_size + x] = x;
  return GroupAction(group, set_size, std::move(t));
}

GroupAction GroupAction::regular(const FiniteGroup& group) {
  return GroupAction(group, group.order(), group.table());
}

GroupAction GroupAction::disjoint_union(const GroupAction& a, const GroupAction& b) {
  if (!(a.group() == b.group())) throw DimensionError("disjoint_union: actions of different groups");
  const int n = a.set_size() + b.set_size();
  std::vector<int> t(std::size_t(a.group().order()) * n);
  for (int g = 0; g < a.group().order(); ++g) {
    for (int x = 0; x < a.set_size(); ++x) t[std::size_t(g) * n + x] = a.act(g, x);
    for (int x = 0; x < b.set_size(); ++x)
      t[std::size_t(g) * n + a.set_size() + x] = a.set_size() + b.act(g, x);
  }
  return GroupAction(a.group(), n, std::move(t));
}

Check GroupAction::validate() const {
  Check c{"group action", true, 0.0, ""};
  const int e = group_.identity();
  for (int x = 0; x < set_size_; ++x)
    if (act(e, x) != x) return {"group action", false, 1.0, "identity moves point " + std::to_string(x)};
  for (int g = 0; g < group_.order(); ++g)
    for (int h = 0; h < group_.order(); ++h)
      for (int x = 0; x < set_size_; ++x)
        if (act(group_.mul(g, h), x) != act(g, act(h, x)))
          return {"group action", false, 1.0, "(gh)x != g(hx) at " + triple(g, h, x)};
  return c;
}

// ---------------------------------------------------------------- TwoCocycle

TwoCocycle::TwoCocycle(FiniteGroup group, std::vector<Complex> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != std::size_t(group_.order()) * group_.order())
    throw ValidationError("cocycle table must have order^2 entries");
}

TwoCocycle TwoCocycle::trivial(const FiniteGroup& group) {
  return TwoCocycle(group, std::vector<Complex>(std::size_t(group.order()) * group.order(), 1.0));
}

TwoCocycle TwoCocycle::coboundary(const FiniteGroup& group, const std::vector<Complex>& beta) {
  if (int(beta.size()) != group.order()) throw DimensionError("coboundary: one value per element");
  const int n = group.order();
  std::vector<Complex> v(std::size_t(n) * n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) v[std::size_t(g) * n + h] = beta[group.mul(g, h)] / (beta[g] * beta[h]);
  return TwoCocycle(group, std::move(v));
}

bool TwoCocycle::is_trivial(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [&](Complex z) { return std::abs(z - 1.0) <= tol; });
}

TwoCocycle TwoCocycle::operator*(const TwoCocycle& other) const {
  if (!(group_ == other.group_)) throw DimensionError("cocycle product over different groups");
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * other.values_[i];
  return TwoCocycle(group_, std::move(v));
}

TwoCocycle TwoCocycle::conj() const {
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
  return TwoCocycle(group_, std::move(v));
}

Check TwoCocycle::validate(double tol) const {
  const int n = group_.order(), e = group_.identity();
  double worst = 0;
  for (int g = 0; g < n; ++g) {
    const double r = std::max(std::abs((*this)(e, g) - 1.0), std::abs((*this)(g, e) - 1.0));
    worst = std::max(worst, r);
    if (r > tol) return {"cocycle", false, r, "normalization fails at " + pair_str(g, e)};
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const double r = std::abs(std::abs((*this)(g, h)) - 1.0);
      worst = std::max(worst, r);
      if (r > tol) return {"cocycle", false, r, "value is not unit modulus at " + pair_str(g, h)};
    }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        const Complex lhs = (*this)(g, group_.mul(h, k)) * (*this)(h, k);
        const Complex rhs = (*this)(group_.mul(g, h), k) * (*this)(g, h);
        const double r = std::abs(lhs - rhs);
        worst = std::max(worst, r);
        if (r > tol) return {"cocycle", false, r, "cocycle identity fails at " + triple(g, h, k)};
      }
  return {"cocycle", true, worst, ""};
}

// ---------------------------------------------------------------- MultiplierRep

MultiplierRep::MultiplierRep(TwoCocycle cocycle, std::vector<CMatrix> matrices, bool unitary)
    : cocycle_(std::move(cocycle)), matrices_(std::move(matrices)), unitary_(unitary) {
  if (int(matrices_.size()) != cocycle_.group().order())
    throw DimensionError("representation needs one matrix per group element");
  dim_ = int(matrices_.front().rows());
  for (const auto& m : matrices_)
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError("representation matrices must be square of equal size");
}

MultiplierRep MultiplierRep::from_matrices(const FiniteGroup& group, std::vector<CMatrix> matrices,
                                           bool unitary) {
  if (int(matrices.size()) != group.order())
    throw DimensionError("representation needs one matrix per group element");
  const int n = group.order();
  const Index dim = matrices.front().rows();
  std::vector<CMatrix> inverses(n);
  for (int g = 0; g < n; ++g) {
    if (matrices[g].rows() != dim || matrices[g].cols() != dim)
      throw DimensionError("representation matrices must be square of equal size");
    inverses[g] = unitary ? CMatrix(matrices[g].adjoint()) : CMatrix(matrices[g].inverse());
  }
  std::vector<Complex> v(std::size_t(n) * n, 1.0);
  if (dim > 0)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        v[std::size_t(g) * n + h] =
            (inverses[group.mul(g, h)] * matrices[g] * matrices[h]).trace() / double(dim);
  return MultiplierRep(TwoCocycle(group, std::move(v)), std::move(matrices), unitary);
}

MultiplierRep MultiplierRep::trivial(const FiniteGroup& group, int dim) {
  return MultiplierRep(TwoCocycle::trivial(group),
                       std::vector<CMatrix>(group.order(), CMatrix::Identity(dim, dim)), true);
}

Check MultiplierRep::validate(const Tolerances& tol) const {
  const FiniteGroup& g = group();
  const int n = g.order();
  const CMatrix id = CMatrix::Identity(dim_, dim_);
  double worst = 0;
  {
    const double r = (matrices_[g.identity()] - id).norm();
    if (r > tol.recon_fro) return {"representation", false, r, "U(e) != I"};
  }
  if (unitary_)
    for (int a = 0; a < n; ++a) {
      const double r = unitarity_defect(matrices_[a]);
      worst = std::max(worst, r);
      if (r > tol.unitary_fro)
        return {"representation", false, r, "U(" + std::to_string(a) + ") is not unitary"};
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const CMatrix lhs = matrices_[a] * matrices_[b];
      const double r = (lhs - cocycle_(a, b) * matrices_[g.mul(a, b)]).norm();
      worst = std::max(worst, r);
      if (r > tol.recon_fro * std::max(1.0, lhs.norm()))
        return {"representation", false, r, "U(g)U(h) != sigma(g,h)U(gh) at " + pair_str(a, b)};
    }
  return {"representation", true, worst, ""};
}

MultiplierRep MultiplierRep::restrict(const CMatrix& isometry) const {
  std::vector<CMatrix> m(matrices_.size());
  for (std::size_t g = 0; g < m.size(); ++g) m[g] = isometry.adjoint() * matrices_[g] * isometry;
  return MultiplierRep(cocycle_, std::move(m), unitary_);
}

MultiplierRep MultiplierRep::tensor(const MultiplierRep& other) const {
  std::vector<CMatrix> m(matrices_.size());
  for (std::size_t g = 0; g < m.size(); ++g) m[g] = kron(matrices_[g], other.matrices_[g]);
  return MultiplierRep(cocycle_ * other.cocycle_, std::move(m), unitary_ && other.unitary_);
}

MultiplierRep MultiplierRep::direct_sum(const MultiplierRep& other) const {
  if (!cocycle_.is_trivial(1e-9) || !other.cocycle_.is_trivial(1e-9)) {
    for (std::size_t i = 0; i < cocycle_.values().size(); ++i)
      if (std::abs(cocycle_.values()[i] - other.cocycle_.values()[i]) > 1e-9)
        throw DomainError("direct sum of multiplier representations with different cocycles");
  }
  std::vector<CMatrix> m(matrices_.size());
  for (std::size_t g = 0; g < m.size(); ++g) {
    const CMatrix parts[2] = {matrices_[g], other.matrices_[g]};
    m[g] = covkit::direct_sum(parts);
  }
  return MultiplierRep(cocycle_, std::move(m), unitary_ && other.unitary_);
}

MultiplierRep MultiplierRep::conjugate(const CMatrix& q) const {
  const CMatrix qi = q.inverse();
  std::vector<CMatrix> m(matrices_.size());
  for (std::size_t g = 0; g < m.size(); ++g) m[g] = q * matrices_[g] * qi;
  return MultiplierRep(cocycle_, std::move(m), unitary_ && unitarity_defect(q) < 1e-10);
}

FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& members) {
  const int n = int(members.size());
  std::map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[members[i]] = i;
  std::vector<int> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto it = pos.find(g.mul(members[i], members[j]));
      if (it == pos.end()) throw ValidationError("subset is not closed under multiplication");
      t[std::size_t(i) * n + j] = it->second;
    }
  return FiniteGroup(n, std::move(t), "subgroup of " + g.name());
}

MultiplierRep MultiplierRep::restrict_to_subgroup(const FiniteGroup& subgroup,
                                                  const std::vector<int>& members) const {
  const int n = int(members.size());
  std::vector<Complex> v(std::size_t(n) * n);
  std::vector<CMatrix> m(n);
  for (int i = 0; i < n; ++i) {
    m[i] = matrices_[members[i]];
    for (int j = 0; j < n; ++j) v[std::size_t(i) * n + j] = cocycle_(members[i], members[j]);
  }
  return MultiplierRep(TwoCocycle(subgroup, std::move(v)), std::move(m), unitary_);
}

// ---------------------------------------------------------------- SubgroupData

SubgroupData::SubgroupData(FiniteGroup parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw ValidationError("subgroup members repeat");
  const int n = parent_.order();
  for (int h : members_)
    if (h < 0 || h >= n) throw ValidationError("subgroup member out of range");
  if (!std::binary_search(members_.begin(), members_.end(), parent_.identity()))
    throw ValidationError("subgroup does not contain the identity");
  for (int a : members_) {
    if (!std::binary_search(members_.begin(), members_.end(), parent_.inverse(a)))
      throw ValidationError("subgroup is not closed under inverses");
    for (int b : members_)
      if (!std::binary_search(members_.begin(), members_.end(), parent_.mul(a, b)))
        throw ValidationError("subgroup is not closed under multiplication");
  }
  subgroup_ = subgroup_group(parent_, members_);
  coset_of_.assign(n, -1);
  auto add_coset = [&](int rep) {
    const int idx = int(section_.size());
    section_.push_back(rep);
    for (int h : members_) coset_of_[parent_.mul(rep, h)] = idx;
  };
  add_coset(parent_.identity());
  for (int g = 0; g < n; ++g)
    if (coset_of_[g] < 0) add_coset(g);
  const int m = num_cosets();
  std::vector<int> t(std::size_t(n) * m);
  for (int g = 0; g < n; ++g)
    for (int w = 0; w < m; ++w) t[std::size_t(g) * m + w] = act(g, w);
  action_ = GroupAction(parent_, m, std::move(t));
}

int SubgroupData::subgroup_index(int h) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), h);
  if (it == members_.end() || *it != h) throw DomainError("element is not in the subgroup");
  return int(it - members_.begin());
}

std::vector<int> SubgroupData::alternative_section() const {
  std::vector<int> s(num_cosets(), -1);
  for (int g = 0; g < parent_.order(); ++g) s[coset_of_[g]] = std::max(s[coset_of_[g]], g);
  s[0] = parent_.identity();
  return s;
}

// ---------------------------------------------------------------- regular reps

MultiplierRep regular_rep(const FiniteGroup& group) { return twisted_regular_rep(TwoCocycle::trivial(group)); }

MultiplierRep twisted_regular_rep(const TwoCocycle& cocycle) {
  const FiniteGroup& g = cocycle.group();
  const int n = g.order();
  std::vector<CMatrix> m(n, CMatrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h) m[a](g.mul(a, h), h) = cocycle(a, h);
  return MultiplierRep(cocycle, std::move(m), true);
}

// ---------------------------------------------------------------- Heisenberg

HeisenbergData heisenberg_rep(int d) {
  if (d < 1) throw DomainError("heisenberg_rep: d must be positive");
  FiniteGroup group = FiniteGroup::heisenberg(d);
  CMatrix x = CMatrix::Zero(d, d), z = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x((j - 1 + d) % d, j) = 1;
    z(j, j) = root_of_unity(j, d);
  }
  std::vector<CMatrix> xp(d, CMatrix::Identity(d, d)), zp(d, CMatrix::Identity(d, d));
  for (int k = 1; k < d; ++k) {
    xp[k] = xp[k - 1] * x;
    zp[k] = zp[k - 1] * z;
  }
  const int n = d * d;
  std::vector<CMatrix> w(n);
  std::vector<Complex> sigma(std::size_t(n) * n);
  for (int q = 0; q < d; ++q)
    for (int p = 0; p < d; ++p) {
      w[q * d + p] = xp[q] * zp[p];
      for (int q2 = 0; q2 < d; ++q2)
        for (int p2 = 0; p2 < d; ++p2) sigma[std::size_t(q * d + p) * n + (q2 * d + p2)] = root_of_unity(-long(q2) * p, d);
    }
  TwoCocycle c(group, std::move(sigma));
  return {group, c, MultiplierRep(c, std::move(w), true)};
}

// ---------------------------------------------------------------- central extension

std::vector<int> CentralExtension::center() const {
  std::vector<int> out;
  for (int k = 0; k < phase_order; ++k) out.push_back(group.identity() + k);
  return out;
}

MultiplierRep CentralExtension::lift(const MultiplierRep& rep) const {
  if (rep.group().order() != base_order) throw DimensionError("lift: representation of a different group");
  std::vector<CMatrix> m(group.order());
  for (int x = 0; x < group.order(); ++x) m[x] = root_of_unity(phase(x), phase_order) * rep(base(x));
  return MultiplierRep(TwoCocycle::trivial(group), std::move(m), rep.unitary());
}

CentralExtension central_extension(const TwoCocycle& cocycle, int max_order, double tol) {
  const auto check = cocycle.validate(tol);
  if (!check.ok) throw ValidationError("central_extension: " + check.detail);
  const FiniteGroup& g = cocycle.group();
  const int n = g.order();
  auto order_of = [&](Complex z) -> long {
    const double turns = std::arg(z) / (2 * std::numbers::pi);
    for (long q = 1; q <= max_order; ++q) {
      const double x = turns * double(q);
      if (std::abs(x - std::round(x)) * 2 * std::numbers::pi <= tol * double(q)) return q;
    }
    return -1;
  };
  long m = 1;
  for (Complex z : cocycle.values()) {
    const long q = order_of(z);
    if (q < 0)
      throw DomainError("central_extension: cocycle value is not a root of unity of order <= " +
                        std::to_string(max_order));
    m = std::lcm(m, q);
    if (m > max_order) throw DomainError("central_extension: combined phase order exceeds the limit");
  }
  std::vector<int> c(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Complex z = cocycle(a, b);
      const long k = std::lround(std::arg(z) / (2 * std::numbers::pi) * double(m));
      const long r = ((k % m) + m) % m;
      if (std::abs(root_of_unity(r, m) - z) > 10 * tol)
        throw DomainError("central_extension: inconsistent phase at " + pair_str(a, b));
      c[std::size_t(a) * n + b] = int(r);
    }
  const int mi = int(m), order = n * mi;
  std::vector<int> t(std::size_t(order) * order);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < mi; ++k)
      for (int b = 0; b < n; ++b)
        for (int l = 0; l < mi; ++l)
          t[std::size_t(a * mi + k) * order + (b * mi + l)] =
              g.mul(a, b) * mi + (k + l + c[std::size_t(a) * n + b]) % mi;
  CentralExtension out;
  out.group = FiniteGroup(order, std::move(t), "central extension of " + g.name());
  out.phase_order = mi;
  out.base_order = n;
  return out;
}

}  // namespace covkit
