#ifndef NORMTORUS_GMODULE_HPP
#define NORMTORUS_GMODULE_HPP

#include "normtorus/abelian.hpp"
#include "normtorus/error.hpp"
#include "normtorus/group.hpp"
#include "normtorus/snf.hpp"

#include <fmt/format.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace normtorus {

// Z^k / L with a G-action given by integer matrices A_g on Z^k that satisfy
// A_g A_h = A_{gh} exactly and preserve the relation lattice L.
class GModule {
 public:
  GModule(GroupPtr g, std::size_t num_gens, IntMatrix relations, std::vector<IntMatrix> action, std::string label)
      : group_(std::move(g)), k_(num_gens), relations_(std::move(relations)), action_(std::move(action)),
        label_(std::move(label)) {
    if (relations_.rows() == 0) relations_ = IntMatrix(0, k_);
    if (relations_.cols() != k_) throw ValidationError("relation matrix has the wrong number of columns");
    if (action_.size() != group_->order()) throw ValidationError("one action matrix per group element is required");
    for (const auto& a : action_)
      if (a.rows() != k_ || a.cols() != k_) throw ValidationError("action matrix has the wrong shape");
    build_relation_basis();
    validate();
  }

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] std::size_t num_gens() const noexcept { return k_; }
  [[nodiscard]] const IntMatrix& relations() const noexcept { return relations_; }
  [[nodiscard]] const IntMatrix& action(Elem g) const { return action_.at(g); }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] bool is_lattice() const noexcept { return basis_.cols() == 0; }

  // Basis of the relation lattice as columns (k x r), and the matrices B_g with A_g R = R B_g.
  [[nodiscard]] const IntMatrix& relation_basis() const noexcept { return basis_; }
  [[nodiscard]] const IntMatrix& relation_action(Elem g) const { return relation_action_.at(g); }

  [[nodiscard]] AbelianStructure structure() const { return abelian_invariants(relations_); }

  [[nodiscard]] bool in_relations(const IntVector& v) const {
    if (basis_.cols() == 0) return is_zero(v);
    return solver_->solve(v).has_value();
  }

  // Coefficients c with R c = v for v in the relation lattice.
  [[nodiscard]] IntVector relation_coefficients(const IntVector& v) const {
    auto c = basis_.cols() ? solver_->solve(v) : std::optional<IntVector>(IntVector{});
    if (!c) throw InternalInconsistency("vector is not in the relation lattice");
    return *c;
  }

 private:
  void build_relation_basis() {
    if (relations_.rows() == 0) {
      basis_ = IntMatrix(k_, 0);
      return;
    }
    IntMatrix cols = relations_.transpose();
    Diagonalization d = diagonalize(cols, false, true);
    IntMatrix cv = cols * d.V;
    basis_ = IntMatrix(k_, d.rank);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < d.rank; ++j) basis_(i, j) = cv(i, j);
    solver_ = std::make_shared<LinearSolver>(basis_);
  }

  void validate() {
    const auto& g = *group_;
    const IntMatrix id = IntMatrix::identity(k_);
    if (!(action_[g.identity()] == id)) throw ValidationError(label_ + ": identity does not act trivially");
    auto check = [&](Elem a, Elem b) {
      if (!(action_[a] * action_[b] == action_[g.mul(a, b)]))
        throw ValidationError(fmt::format("{}: action is not a homomorphism at ({}, {})", label_, a, b));
    };
    if (g.order() <= 24) {
      for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b) check(a, b);
    } else {
      std::mt19937 rng(static_cast<unsigned>(g.order() * 31 + k_));
      std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
      for (int t = 0; t < 600; ++t) check(pick(rng), pick(rng));
    }
    relation_action_.clear();
    for (Elem a = 0; a < g.order(); ++a) {
      IntMatrix ar = action_[a] * basis_;
      IntMatrix b(basis_.cols(), basis_.cols());
      for (std::size_t j = 0; j < basis_.cols(); ++j) {
        auto c = solver_->solve(ar.col(j));
        if (!c) throw ValidationError(label_ + ": action does not preserve the relations");
        for (std::size_t i = 0; i < basis_.cols(); ++i) b(i, j) = (*c)[i];
      }
      relation_action_.push_back(std::move(b));
    }
  }

  GroupPtr group_;
  std::size_t k_;
  IntMatrix relations_;
  std::vector<IntMatrix> action_;
  std::string label_;
  IntMatrix basis_;
  std::shared_ptr<LinearSolver> solver_;
  std::vector<IntMatrix> relation_action_;
};

using ModulePtr = std::shared_ptr<const GModule>;

// Homomorphism of G-modules given on generators (target.num_gens x source.num_gens).
struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  IntMatrix matrix;

  // Equivariance and compatibility with relations, exact.
  void validate() const {
    if (source->group() != target->group()) throw ContextMismatch("module map between different groups");
    if (matrix.rows() != target->num_gens() || matrix.cols() != source->num_gens())
      throw ContextMismatch("module map has the wrong shape");
    const auto& g = *source->group();
    for (Elem a = 0; a < g.order(); ++a) {
      IntMatrix diff = target->action(a) * matrix - matrix * source->action(a);
      for (std::size_t j = 0; j < diff.cols(); ++j)
        if (!target->in_relations(diff.col(j))) throw ValidationError("module map is not equivariant");
    }
    const IntMatrix& r = source->relation_basis();
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!target->in_relations(matrix * r.col(j))) throw ValidationError("module map does not respect relations");
  }
};

// (H_L, multiplicity) for each irreducible factor of P.
struct PFactor {
  Subgroup subgroup;
  unsigned multiplicity;
};
using PData = std::vector<PFactor>;

inline ModulePtr permutation_module(const Subgroup& h) {
  const auto& g = h.parent();
  CosetAction ca = coset_action(h);
  const std::size_t m = ca.num_cosets();
  std::vector<IntMatrix> act;
  for (Elem a = 0; a < g->order(); ++a) {
    IntMatrix p(m, m);
    for (std::size_t i = 0; i < m; ++i) p(ca.act[a][i], i) = 1;
    act.push_back(std::move(p));
  }
  return std::make_shared<const GModule>(g, m, IntMatrix(0, m), std::move(act), fmt::format("Z[G/H] (index {})", m));
}

inline IntVector norm_element(const Subgroup& h) { return IntVector(h.index(), Integer(1)); }

inline ModulePtr trivial_module(const GroupPtr& g, const Integer& d) {
  IntMatrix rel(0, 1);
  if (!d.is_zero()) rel.append_row({abs(d)});
  std::vector<IntMatrix> act(g->order(), IntMatrix::identity(1));
  return std::make_shared<const GModule>(g, 1, std::move(rel), std::move(act), d.is_zero() ? "Z" : "Z/" + abs(d).str());
}

// M / Z v for a G-fixed vector v. When M is a lattice and v has a coordinate
// equal to +-1 the quotient is again a lattice, presented by eliminating that
// coordinate; otherwise v is appended as a relation.
inline ModulePtr quotient_by_element(const ModulePtr& m, const IntVector& v, std::string label) {
  const auto& g = m->group();
  for (Elem a = 0; a < g->order(); ++a)
    if (!m->in_relations(m->action(a) * v - v)) throw ValidationError("quotient by an element that is not G-fixed");
  const std::size_t k = m->num_gens();
  std::size_t p = k;
  for (std::size_t i = k; i-- > 0;)
    if (v[i].is_unit()) {
      p = i;
      break;
    }
  if (!m->is_lattice() || p == k) {
    IntMatrix rel = m->relations();
    rel.append_row(v);
    std::vector<IntMatrix> act;
    for (Elem a = 0; a < g->order(); ++a) act.push_back(m->action(a));
    return std::make_shared<const GModule>(g, k, std::move(rel), std::move(act), std::move(label));
  }
  // pi(x)_i = x_i - v_i v_p x_p for i != p, and the section s(y) puts 0 at p
  const Integer vp = v[p];
  IntMatrix pi(k - 1, k), s(k, k - 1);
  for (std::size_t i = 0, r = 0; i < k; ++i) {
    if (i == p) continue;
    pi(r, i) = 1;
    pi(r, p) = -(v[i] * vp);
    s(i, r) = 1;
    ++r;
  }
  std::vector<IntMatrix> act;
  for (Elem a = 0; a < g->order(); ++a) act.push_back(pi * m->action(a) * s);
  return std::make_shared<const GModule>(g, k - 1, IntMatrix(0, k - 1), std::move(act), std::move(label));
}

// Character lattice of the norm-one torus: Z[G/H_K] / Z N'.
inline ModulePtr t_hat(const Subgroup& hk) {
  ModulePtr perm = permutation_module(hk);
  return quotient_by_element(perm, norm_element(hk), "T^");
}

inline ModulePtr direct_sum(const std::vector<ModulePtr>& parts, std::string label) {
  const auto& g = parts.front()->group();
  std::size_t k = 0;
  std::vector<IntMatrix> rels;
  for (const auto& p : parts) {
    k += p->num_gens();
    rels.push_back(p->relations());
  }
  IntMatrix rel = block_diagonal(rels);
  std::vector<IntMatrix> act;
  for (Elem a = 0; a < g->order(); ++a) {
    std::vector<IntMatrix> blocks;
    for (const auto& p : parts) blocks.push_back(p->action(a));
    act.push_back(block_diagonal(blocks));
  }
  return std::make_shared<const GModule>(g, k, std::move(rel), std::move(act), std::move(label));
}

// (Z_P + Z[K/k]) / Z (e_1 N_1 + ... + e_m N_m + N').
inline ModulePtr t_prime_hat(const Subgroup& hk, const PData& p) {
  std::vector<ModulePtr> parts;
  IntVector v;
  for (const auto& f : p) {
    parts.push_back(permutation_module(f.subgroup));
    for (std::size_t i = 0; i < f.subgroup.index(); ++i) v.emplace_back(static_cast<long long>(f.multiplicity));
  }
  parts.push_back(permutation_module(hk));
  for (std::size_t i = 0; i < hk.index(); ++i) v.emplace_back(1);
  return quotient_by_element(direct_sum(parts, "Z_P + Z[K/k]"), v, "T'^");
}

// M (x) Z_P = sum_i M (x) Z[G/H_i], generators (j, c) in j-major order per block.
inline ModulePtr tensor_with_ZP(const ModulePtr& m, const PData& p) {
  const auto& g = m->group();
  std::vector<ModulePtr> blocks;
  const std::string label = m->label() + " (x) Z_P";
  for (const auto& f : p) {
    if (f.subgroup.parent() != g) throw ContextMismatch("factor subgroup from a different group");
    ModulePtr perm = permutation_module(f.subgroup);
    const std::size_t c = perm->num_gens();
    IntMatrix rel = kronecker(m->relation_basis(), IntMatrix::identity(c)).transpose();
    std::vector<IntMatrix> act;
    for (Elem a = 0; a < g->order(); ++a) act.push_back(kronecker(m->action(a), perm->action(a)));
    blocks.push_back(std::make_shared<const GModule>(g, m->num_gens() * c, std::move(rel), std::move(act),
                                                     p.size() == 1 ? label : std::string("block")));
  }
  return blocks.size() == 1 ? blocks.front() : direct_sum(blocks, label);
}

// m -> m (x) (-(e_1 N_1 + ... + e_m N_m)).
inline ModuleMap jp_map(const ModulePtr& m, const PData& p, const ModulePtr& target) {
  const std::size_t k = m->num_gens();
  IntMatrix f(target->num_gens(), k);
  std::size_t offset = 0;
  for (const auto& fac : p) {
    const std::size_t c = fac.subgroup.index();
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t co = 0; co < c; ++co) f(offset + j * c + co, j) = -static_cast<long long>(fac.multiplicity);
    offset += k * c;
  }
  if (offset != target->num_gens()) throw ContextMismatch("jp_map target is not M (x) Z_P");
  return {m, target, std::move(f)};
}

struct RestrictedModule {
  ModulePtr module;
  SubgroupGroup subgroup;
};

inline RestrictedModule restrict_action(const ModulePtr& m, const Subgroup& h) {
  SubgroupGroup sg = subgroup_as_group(h);
  std::vector<IntMatrix> act;
  for (Elem e : sg.embedding) act.push_back(m->action(e));
  auto r = std::make_shared<const GModule>(sg.group, m->num_gens(), m->relations(), std::move(act), m->label());
  return {r, std::move(sg)};
}

}  // namespace normtorus

#endif  // NORMTORUS_GMODULE_HPP
