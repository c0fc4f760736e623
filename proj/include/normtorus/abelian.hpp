#ifndef NORMTORUS_ABELIAN_HPP
#define NORMTORUS_ABELIAN_HPP

#include "normtorus/error.hpp"
#include "normtorus/snf.hpp"

#include <fmt/format.h>

#include <memory>
#include <string>
#include <vector>

namespace normtorus {

// Z/d_1 + ... + Z/d_k + Z^r with 1 < d_1 | d_2 | ... | d_k.
struct AbelianStructure {
  std::vector<Integer> invariants;
  std::size_t free_rank = 0;

  static AbelianStructure trivial() { return {}; }
  static AbelianStructure cyclic(const Integer& n) {
    AbelianStructure a;
    if (n.is_zero()) {
      a.free_rank = 1;
    } else if (abs(n) > Integer(1)) {
      a.invariants.push_back(abs(n));
    }
    return a;
  }

  [[nodiscard]] bool is_trivial() const { return invariants.empty() && free_rank == 0; }
  [[nodiscard]] bool is_finite() const { return free_rank == 0; }

  // Order of the torsion part; equals the group order when finite.
  [[nodiscard]] Integer torsion_order() const {
    Integer n(1);
    for (const auto& d : invariants) n *= d;
    return n;
  }

  [[nodiscard]] std::string str() const {
    if (is_trivial()) return "0";
    std::string out;
    for (const auto& d : invariants) {
      if (!out.empty()) out += " + ";
      out += "Z/" + d.str();
    }
    if (free_rank > 0) {
      if (!out.empty()) out += " + ";
      out += free_rank == 1 ? std::string("Z") : fmt::format("Z^{}", free_rank);
    }
    return out;
  }

  // Invariant factor list, e.g. "[2,4]".
  [[nodiscard]] std::string factors_str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < invariants.size(); ++i) out += (i ? "," : "") + invariants[i].str();
    return out + "]";
  }

  friend bool operator==(const AbelianStructure&, const AbelianStructure&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianStructure& a) { return os << a.str(); }

// Recomputes invariant factors of a direct sum of cyclic groups.
inline AbelianStructure structure_of_cyclic_sum(const std::vector<Integer>& orders) {
  IntVector d;
  std::size_t free = 0;
  for (const auto& o : orders) {
    if (o.is_zero()) {
      ++free;
    } else if (abs(o) > Integer(1)) {
      d.push_back(abs(o));
    }
  }
  AbelianStructure out;
  out.free_rank = free;
  if (d.empty()) return out;
  Diagonalization s = smith_normal_form(IntMatrix::diagonal(d));
  for (const auto& x : s.diagonal)
    if (x > Integer(1)) out.invariants.push_back(x);
  return out;
}

// Cokernel of a dense integer matrix whose columns are relations among its rows.
// Coordinates list the torsion part (reduced mod the invariant factors) first,
// then the free part.
class Cokernel {
 public:
  Cokernel() = default;

  explicit Cokernel(const IntMatrix& relations) : n_(relations.rows()) {
    if (relations.cols() == 0) {
      snf_.rank = 0;
      for (std::size_t i = 0; i < n_; ++i) free_positions_.push_back(i);
      structure_.free_rank = n_;
      return;
    }
    snf_ = smith_normal_form(relations, true, false);
    for (std::size_t i = 0; i < snf_.rank; ++i)
      if (snf_.diagonal[i] > Integer(1)) {
        torsion_positions_.push_back(i);
        structure_.invariants.push_back(snf_.diagonal[i]);
      }
    for (std::size_t i = snf_.rank; i < n_; ++i) free_positions_.push_back(i);
    structure_.free_rank = free_positions_.size();
  }

  [[nodiscard]] const AbelianStructure& structure() const noexcept { return structure_; }
  [[nodiscard]] std::size_t ambient_dimension() const noexcept { return n_; }
  [[nodiscard]] std::size_t num_generators() const noexcept {
    return torsion_positions_.size() + free_positions_.size();
  }

  [[nodiscard]] IntVector coordinates(IntVector z) const {
    snf_.row_ops.apply(z);
    IntVector out;
    out.reserve(num_generators());
    for (std::size_t k = 0; k < torsion_positions_.size(); ++k)
      out.push_back(floor_mod(z[torsion_positions_[k]], structure_.invariants[k]));
    for (std::size_t p : free_positions_) out.push_back(z[p]);
    return out;
  }

  [[nodiscard]] bool contains(const IntVector& z) const { return is_zero(coordinates(z)); }

  // A preimage in Z^n of the j-th generator.
  [[nodiscard]] IntVector lift(std::size_t j) const {
    IntVector e(n_);
    e[j < torsion_positions_.size() ? torsion_positions_[j] : free_positions_[j - torsion_positions_.size()]] = 1;
    snf_.row_ops.apply_inverse(e);
    return e;
  }

  // Order of each generator, 0 for free ones.
  [[nodiscard]] std::vector<Integer> generator_orders() const {
    std::vector<Integer> o = structure_.invariants;
    o.resize(num_generators(), Integer(0));
    return o;
  }

 private:
  std::size_t n_ = 0;
  Diagonalization snf_;
  std::vector<std::size_t> torsion_positions_;
  std::vector<std::size_t> free_positions_;
  AbelianStructure structure_;
};

// Invariant factors of the group with the given relation matrix (rows are relations).
inline AbelianStructure abelian_invariants(const IntMatrix& relations_by_row) {
  if (relations_by_row.rows() == 0) {
    AbelianStructure a;
    a.free_rank = relations_by_row.cols();
    return a;
  }
  return Cokernel(relations_by_row.transpose()).structure();
}

// S / T for lattices T <= S <= Z^n given by generator columns.
class Subquotient {
 public:
  Subquotient(const IntMatrix& s_gens, const IntMatrix& t_gens) : n_(s_gens.rows()) {
    Diagonalization d = diagonalize(s_gens, false, true);
    basis_ = IntMatrix(n_, d.rank);
    IntMatrix sv = s_gens * d.V;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < d.rank; ++j) basis_(i, j) = sv(i, j);
    solver_ = std::make_unique<LinearSolver>(basis_);
    IntMatrix rel(d.rank, t_gens.cols());
    for (std::size_t j = 0; j < t_gens.cols(); ++j) {
      auto c = solver_->solve(t_gens.col(j));
      if (!c) throw InternalInconsistency("subquotient: T is not contained in S");
      for (std::size_t i = 0; i < d.rank; ++i) rel(i, j) = (*c)[i];
    }
    coker_ = Cokernel(rel);
  }

  [[nodiscard]] const AbelianStructure& structure() const noexcept { return coker_.structure(); }
  [[nodiscard]] std::size_t num_generators() const noexcept { return coker_.num_generators(); }
  [[nodiscard]] std::vector<Integer> generator_orders() const { return coker_.generator_orders(); }

  [[nodiscard]] bool in_ambient(const IntVector& x) const { return solver_->solve(x).has_value(); }

  [[nodiscard]] IntVector coordinates(const IntVector& x) const {
    auto c = solver_->solve(x);
    if (!c) throw ContextMismatch("subquotient: element outside the ambient lattice");
    return coker_.coordinates(*c);
  }

  [[nodiscard]] IntVector lift(std::size_t j) const { return basis_ * coker_.lift(j); }

 private:
  std::size_t n_;
  IntMatrix basis_;
  std::unique_ptr<LinearSolver> solver_;
  Cokernel coker_;
};

// Kernel of a homomorphism between direct sums of cyclic groups. phi has one
// column per domain generator, expressed in target coordinates; an order of 0
// marks a free summand.
inline Subquotient hom_kernel(const std::vector<Integer>& domain_orders, const IntMatrix& phi,
                              const std::vector<Integer>& target_orders) {
  const std::size_t s = domain_orders.size();
  const std::size_t t = target_orders.size();
  IntMatrix stacked(t, s + t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < s; ++j) stacked(i, j) = phi(i, j);
    stacked(i, s + i) = target_orders[i];
  }
  IntMatrix k = integer_kernel(stacked);
  IntMatrix proj(s, k.cols());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) proj(i, j) = k(i, j);
  return Subquotient(proj, IntMatrix::diagonal(domain_orders));
}

inline Cokernel hom_cokernel(const IntMatrix& phi, const std::vector<Integer>& target_orders) {
  const std::size_t t = target_orders.size();
  IntMatrix stacked(t, phi.cols() + t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < phi.cols(); ++j) stacked(i, j) = phi(i, j);
    stacked(i, phi.cols() + i) = target_orders[i];
  }
  return Cokernel(stacked);
}

}  // namespace normtorus

#endif  // NORMTORUS_ABELIAN_HPP
