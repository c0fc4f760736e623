#ifndef NORMTORUS_SNF_HPP
#define NORMTORUS_SNF_HPP

#include "normtorus/matrix.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace normtorus {

// Elementary row operation. AddMultiple: row[target] += factor * row[source].
struct ElementaryOp {
  enum class Kind : std::uint8_t { AddMultiple, Swap, Negate };
  Kind kind;
  std::uint32_t target;
  std::uint32_t source;
  Integer factor;
};

// Ordered list of row operations; the product is the left transform U.
class RowOpLog {
 public:
  void add(std::uint32_t t, std::uint32_t s, Integer f) {
    ops_.push_back({ElementaryOp::Kind::AddMultiple, t, s, std::move(f)});
  }
  void swap(std::uint32_t a, std::uint32_t b) { ops_.push_back({ElementaryOp::Kind::Swap, a, b, Integer()}); }
  void negate(std::uint32_t a) { ops_.push_back({ElementaryOp::Kind::Negate, a, a, Integer()}); }

  // z <- U z
  void apply(IntVector& z) const {
    for (const auto& op : ops_) step(z, op, false);
  }

  // z <- U^{-1} z
  void apply_inverse(IntVector& z) const {
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) step(z, *it, true);
  }

  [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }

 private:
  static void step(IntVector& z, const ElementaryOp& op, bool inverse) {
    switch (op.kind) {
      case ElementaryOp::Kind::AddMultiple:
        if (z[op.source].is_zero()) return;
        if (inverse) {
          z[op.target].submul(op.factor, z[op.source]);
        } else {
          z[op.target].addmul(op.factor, z[op.source]);
        }
        return;
      case ElementaryOp::Kind::Swap:
        std::swap(z[op.target], z[op.source]);
        return;
      case ElementaryOp::Kind::Negate:
        z[op.target].negate();
        return;
    }
  }

  std::vector<ElementaryOp> ops_;
};

// U A V = diag(d_0, ..., d_{rank-1}, 0, ...) with positive d_i.
struct Diagonalization {
  IntMatrix reduced;
  std::size_t rank = 0;
  IntVector diagonal;  // length rank
  RowOpLog row_ops;    // recorded when requested
  IntMatrix V;         // explicit column transform when requested, else empty
};

namespace detail {

class Reducer {
 public:
  Reducer(IntMatrix a, bool track_rows, bool track_cols)
      : a_(std::move(a)), track_rows_(track_rows), track_cols_(track_cols) {
    if (track_cols_) v_ = IntMatrix::identity(a_.cols());
  }

  void row_add(std::size_t t, std::size_t s, const Integer& f) {
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (!a_(s, j).is_zero()) a_(t, j).addmul(f, a_(s, j));
    if (track_rows_) log_.add(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(s), f);
  }

  void col_add(std::size_t t, std::size_t s, const Integer& f) {
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (!a_(i, s).is_zero()) a_(i, t).addmul(f, a_(i, s));
    if (track_cols_)
      for (std::size_t i = 0; i < v_.rows(); ++i)
        if (!v_(i, s).is_zero()) v_(i, t).addmul(f, v_(i, s));
  }

  void row_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(x, j), a_(y, j));
    if (track_rows_) log_.swap(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
  }

  void col_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, x), a_(i, y));
    if (track_cols_)
      for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, x), v_(i, y));
  }

  void row_negate(std::size_t x) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(x, j).negate();
    if (track_rows_) log_.negate(static_cast<std::uint32_t>(x));
  }

  // Finds the smallest nonzero entry in the trailing block starting at (t, t).
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t j = t; j < a_.cols(); ++j)
      for (std::size_t i = t; i < a_.rows(); ++i) {
        const Integer& x = a_(i, j);
        if (x.is_zero()) continue;
        if (x.is_unit()) return std::make_pair(i, j);
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = std::make_pair(i, j);
          best_abs = std::move(ax);
        }
      }
    return best;
  }

  // Clears row t and column t against the pivot at (t, t).
  void clear_cross(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t).is_zero()) continue;
        Integer q = nearest_div(a_(i, t), a_(t, t));
        row_add(i, t, -q);
        if (!a_(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j).is_zero()) continue;
        Integer q = nearest_div(a_(t, j), a_(t, t));
        col_add(j, t, -q);
        if (!a_(t, j).is_zero()) clean = false;
      }
      if (clean) break;
      // a remainder is strictly smaller than the pivot: move it to (t, t)
      std::size_t bi = t, bj = t;
      Integer best = abs(a_(t, t));
      for (std::size_t i = t + 1; i < a_.rows(); ++i)
        if (!a_(i, t).is_zero() && abs(a_(i, t)) < best) {
          best = abs(a_(i, t));
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (!a_(t, j).is_zero() && abs(a_(t, j)) < best) {
          best = abs(a_(t, j));
          bi = t;
          bj = j;
        }
      row_swap(t, bi);
      col_swap(t, bj);
    }
    if (a_(t, t).sign() < 0) row_negate(t);
  }

  std::size_t diagonalize() {
    std::size_t t = 0;
    const std::size_t n = std::min(a_.rows(), a_.cols());
    for (; t < n; ++t) {
      auto p = find_pivot(t);
      if (!p) break;
      row_swap(t, p->first);
      col_swap(t, p->second);
      clear_cross(t);
    }
    return t;
  }

  void fix_divisibility(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) {
        if (divides(a_(i, i), a_(j, j))) continue;
        row_add(i, j, Integer(1));
        clear_cross(i);
        if (a_(j, j).sign() < 0) row_negate(j);
      }
  }

  Diagonalization finish(std::size_t rank) {
    Diagonalization out;
    out.rank = rank;
    for (std::size_t i = 0; i < rank; ++i) out.diagonal.push_back(a_(i, i));
    out.reduced = std::move(a_);
    out.row_ops = std::move(log_);
    out.V = std::move(v_);
    return out;
  }

 private:
  IntMatrix a_;
  bool track_rows_;
  bool track_cols_;
  RowOpLog log_;
  IntMatrix v_;
};

}  // namespace detail

// Diagonal form without the divisibility chain.
inline Diagonalization diagonalize(IntMatrix a, bool track_rows = false, bool track_cols = false) {
  detail::Reducer r(std::move(a), track_rows, track_cols);
  const std::size_t rank = r.diagonalize();
  return r.finish(rank);
}

// Smith normal form: diagonal entries satisfy d_0 | d_1 | ... .
inline Diagonalization smith_normal_form(IntMatrix a, bool track_rows = false, bool track_cols = false) {
  detail::Reducer r(std::move(a), track_rows, track_cols);
  const std::size_t rank = r.diagonalize();
  r.fix_divisibility(rank);
  return r.finish(rank);
}

// Columns form a basis of {x : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(n);
  Diagonalization d = diagonalize(a, false, true);
  IntMatrix k(n, n - d.rank);
  for (std::size_t j = d.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - d.rank) = d.V(i, j);
  return k;
}

// Integer solution of A x = b, if any.
class LinearSolver {
 public:
  explicit LinearSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()), d_(diagonalize(a, true, true)) {}

  [[nodiscard]] std::optional<IntVector> solve(IntVector b) const {
    d_.row_ops.apply(b);
    IntVector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < d_.rank) {
        if (!divides(d_.diagonal[i], b[i])) return std::nullopt;
        y[i] = floor_div(b[i], d_.diagonal[i]);
      } else if (!b[i].is_zero()) {
        return std::nullopt;
      }
    }
    return d_.V * y;
  }

  [[nodiscard]] std::size_t rank() const noexcept { return d_.rank; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Diagonalization d_;
};

}  // namespace normtorus

#endif  // NORMTORUS_SNF_HPP
