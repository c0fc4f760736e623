#ifndef NORMTORUS_SPARSE_COKERNEL_HPP
#define NORMTORUS_SPARSE_COKERNEL_HPP

#include "normtorus/abelian.hpp"
#include "normtorus/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

namespace normtorus {

// Cokernel of a large sparse integer matrix, Z^rows / span(columns).
//
// Phase one strikes out unit pivots (a column with an entry +-1 lets its row be
// expressed through the others). The surviving block is diagonalized densely
// with its row operations recorded, and the torsion diagonal is then brought to
// invariant factor form by a small Smith normal form.
class SparseCokernel {
 public:
  SparseCokernel(std::size_t num_rows, std::vector<SparseVector> columns) : rows_(num_rows) {
    eliminate_units(std::move(columns));
    reduce_core();
  }

  [[nodiscard]] const AbelianStructure& structure() const noexcept { return structure_; }
  [[nodiscard]] std::size_t num_rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t unit_pivots() const noexcept { return pivots_.size(); }
  [[nodiscard]] std::size_t core_rows() const noexcept { return core_row_ids_.size(); }
  [[nodiscard]] std::size_t core_cols() const noexcept { return core_cols_; }

  // Vector congruent to z modulo the image, supported off the pivot rows.
  [[nodiscard]] IntVector reduce(IntVector z) const {
    for (const auto& p : pivots_) {
      if (z[p.row].is_zero()) continue;
      Integer f = z[p.row];
      if (p.sign < 0) f.negate();
      for (const auto& [i, v] : p.column) z[i].submul(f, v);
    }
    return z;
  }

  // Coordinates of the class of z in the torsion part, one per invariant factor.
  [[nodiscard]] IntVector torsion_coordinates(const IntVector& z) const {
    IntVector r = reduce(z);
    IntVector core = gather(r);
    core_ops_.apply(core);
    IntVector y(torsion_pos_.size());
    for (std::size_t k = 0; k < torsion_pos_.size(); ++k) y[k] = core[torsion_pos_[k]];
    small_ops_.apply(y);
    IntVector out(structure_.invariants.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = floor_mod(y[small_pos_[k]], structure_.invariants[k]);
    return out;
  }

  // True iff z lies in the column span.
  [[nodiscard]] bool contains(const IntVector& z) const {
    IntVector r = reduce(z);
    std::vector<bool> in_core(rows_, false);
    for (auto id : core_row_ids_) in_core[id] = true;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!in_core[i] && !pivot_row_[i] && !r[i].is_zero()) return false;
    IntVector core = gather(r);
    core_ops_.apply(core);
    for (std::size_t i = core_rank_; i < core.size(); ++i)
      if (!core[i].is_zero()) return false;
    for (std::size_t p : torsion_pos_)
      if (!divides(core_diag_[p], core[p])) return false;
    return true;
  }

  // A vector of Z^rows representing the k-th invariant factor generator.
  [[nodiscard]] IntVector torsion_lift(std::size_t k) const {
    IntVector y(torsion_pos_.size());
    y[small_pos_[k]] = 1;
    small_ops_.apply_inverse(y);
    IntVector core(core_row_ids_.size());
    for (std::size_t j = 0; j < torsion_pos_.size(); ++j) core[torsion_pos_[j]] = y[j];
    core_ops_.apply_inverse(core);
    IntVector out(rows_);
    for (std::size_t j = 0; j < core_row_ids_.size(); ++j) out[core_row_ids_[j]] = core[j];
    return out;
  }

 private:
  struct Pivot {
    std::uint32_t row;
    int sign;
    SparseVector column;
  };

  static const Integer* find_entry(const SparseVector& v, std::uint32_t row) {
    auto it = std::lower_bound(v.begin(), v.end(), row,
                               [](const auto& e, std::uint32_t r) { return e.first < r; });
    return (it != v.end() && it->first == row) ? &it->second : nullptr;
  }

  // a -= f * b, reporting rows that newly appear in a.
  static void sub_scaled(SparseVector& a, const Integer& f, const SparseVector& b,
                         std::vector<std::uint32_t>& fresh) {
    SparseVector out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(std::move(a[i++]));
      } else if (i == a.size() || b[j].first < a[i].first) {
        Integer v = b[j].second * f;
        v.negate();
        fresh.push_back(b[j].first);
        out.emplace_back(b[j].first, std::move(v));
        ++j;
      } else {
        Integer v = std::move(a[i].second);
        v.submul(f, b[j].second);
        if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    a = std::move(out);
  }

  void eliminate_units(std::vector<SparseVector> cols) {
    pivot_row_.assign(rows_, false);
    std::vector<std::vector<std::uint32_t>> occ(rows_);
    std::vector<bool> alive(cols.size(), true);
    for (std::uint32_t c = 0; c < cols.size(); ++c)
      for (const auto& e : cols[c]) occ[e.first].push_back(c);

    using Entry = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::uint32_t c = 0; c < cols.size(); ++c) {
      if (cols[c].empty()) {
        alive[c] = false;
      } else {
        heap.emplace(cols[c].size(), c);
      }
    }

    std::vector<std::uint32_t> fresh;
    while (!heap.empty()) {
      auto [nnz, c] = heap.top();
      heap.pop();
      if (!alive[c] || nnz != cols[c].size()) continue;
      // Markowitz-style choice among the unit entries of this column
      std::uint32_t row = 0;
      std::size_t best = SIZE_MAX;
      int sign = 0;
      for (const auto& [r, v] : cols[c]) {
        if (!v.is_unit()) continue;
        if (occ[r].size() < best) {
          best = occ[r].size();
          row = r;
          sign = v.sign();
        }
      }
      if (sign == 0) continue;

      for (std::uint32_t other : occ[row]) {
        if (other == c || !alive[other]) continue;
        const Integer* a = find_entry(cols[other], row);
        if (!a) continue;
        Integer f = *a;
        if (sign < 0) f.negate();
        fresh.clear();
        sub_scaled(cols[other], f, cols[c], fresh);
        for (auto r : fresh) occ[r].push_back(other);
        if (cols[other].empty()) {
          alive[other] = false;
        } else {
          heap.emplace(cols[other].size(), other);
        }
      }
      occ[row].clear();
      occ[row].shrink_to_fit();
      alive[c] = false;
      pivot_row_[row] = true;
      pivots_.push_back({row, sign, std::move(cols[c])});
      cols[c].clear();
    }

    for (std::uint32_t c = 0; c < cols.size(); ++c)
      if (alive[c] && !cols[c].empty()) remaining_.push_back(std::move(cols[c]));
  }

  [[nodiscard]] IntVector gather(const IntVector& z) const {
    IntVector core(core_row_ids_.size());
    for (std::size_t j = 0; j < core_row_ids_.size(); ++j) core[j] = z[core_row_ids_[j]];
    return core;
  }

  void reduce_core() {
    std::vector<std::int64_t> index(rows_, -1);
    for (const auto& col : remaining_)
      for (const auto& e : col) index[e.first] = 0;
    for (std::uint32_t r = 0; r < rows_; ++r)
      if (index[r] == 0) {
        index[r] = static_cast<std::int64_t>(core_row_ids_.size());
        core_row_ids_.push_back(r);
      }
    core_cols_ = remaining_.size();
    std::size_t free = 0;
    for (std::uint32_t r = 0; r < rows_; ++r)
      if (index[r] < 0 && !pivot_row_[r]) ++free;

    IntMatrix dense(core_row_ids_.size(), remaining_.size());
    for (std::size_t j = 0; j < remaining_.size(); ++j)
      for (const auto& [r, v] : remaining_[j]) dense(static_cast<std::size_t>(index[r]), j) = v;
    remaining_.clear();
    remaining_.shrink_to_fit();

    Diagonalization d = diagonalize(std::move(dense), true, false);
    core_ops_ = std::move(d.row_ops);
    core_rank_ = d.rank;
    core_diag_ = d.diagonal;
    free += core_row_ids_.size() - d.rank;

    IntVector tors;
    for (std::size_t i = 0; i < d.rank; ++i)
      if (d.diagonal[i] > Integer(1)) {
        torsion_pos_.push_back(i);
        tors.push_back(d.diagonal[i]);
      }
    structure_.free_rank = free;
    if (tors.empty()) return;
    Diagonalization s = smith_normal_form(IntMatrix::diagonal(tors), true, false);
    small_ops_ = std::move(s.row_ops);
    for (std::size_t i = 0; i < s.rank; ++i)
      if (s.diagonal[i] > Integer(1)) {
        small_pos_.push_back(i);
        structure_.invariants.push_back(s.diagonal[i]);
      }
  }

  std::size_t rows_;
  std::vector<Pivot> pivots_;
  std::vector<bool> pivot_row_;
  std::vector<SparseVector> remaining_;
  std::vector<std::uint32_t> core_row_ids_;
  std::size_t core_cols_ = 0;
  RowOpLog core_ops_;
  std::size_t core_rank_ = 0;
  IntVector core_diag_;
  std::vector<std::size_t> torsion_pos_;
  RowOpLog small_ops_;
  std::vector<std::size_t> small_pos_;
  AbelianStructure structure_;
};

}  // namespace normtorus

#endif  // NORMTORUS_SPARSE_COKERNEL_HPP
