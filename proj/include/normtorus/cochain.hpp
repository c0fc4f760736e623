#ifndef NORMTORUS_COCHAIN_HPP
#define NORMTORUS_COCHAIN_HPP

#include "normtorus/error.hpp"
#include "normtorus/group.hpp"
#include "normtorus/matrix.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace normtorus {

// Inhomogeneous cochains G^i -> Z^k. A tuple (g_1, ..., g_i) has index
// sum g_s n^(i-s), and the coordinate j of its value sits at index * k + j.
//
// (df)(g_1..g_{i+1}) = g_1 f(g_2..g_{i+1})
//                    + sum_s (-1)^s f(g_1..g_s g_{s+1}..g_{i+1})
//                    + (-1)^(i+1) f(g_1..g_i)

struct Budget {
  std::uint64_t max_entries = 1'000'000;
  std::size_t max_group_order = kMaxGroupOrder;
};

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline void check_budget(const FiniteGroup& g, std::size_t num_gens, unsigned degree, const Budget& budget) {
  if (g.order() > budget.max_group_order)
    throw ComplexityLimitExceeded(fmt::format("group order {} exceeds limit {}", g.order(), budget.max_group_order));
  const std::uint64_t entries = ipow(g.order(), degree + 1) * std::max<std::size_t>(num_gens, 1);
  if (entries > budget.max_entries)
    throw ComplexityLimitExceeded(fmt::format("degree {} cochains over a group of order {} with {} generators need {} entries, limit {}",
                                              degree, g.order(), num_gens, entries, budget.max_entries));
}

using ActionFn = std::function<const IntMatrix&(Elem)>;

inline std::vector<Elem> decode_tuple(std::uint64_t idx, std::size_t n, unsigned len) {
  std::vector<Elem> t(len);
  for (unsigned s = len; s-- > 0;) {
    t[s] = static_cast<Elem>(idx % n);
    idx /= n;
  }
  return t;
}

inline std::uint64_t encode_tuple(const std::vector<Elem>& t, std::size_t n) {
  std::uint64_t idx = 0;
  for (Elem x : t) idx = idx * n + x;
  return idx;
}

namespace detail {

inline SparseVector compress(std::vector<std::pair<std::uint32_t, Integer>>& raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& e : raw) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!e.second.is_zero()) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace detail

// Columns of d: C^i -> C^(i+1), one per basis cochain delta_t (x) e_j. Entries are
// shifted by row_offset and scaled by sign.
inline void append_coboundary_columns(const FiniteGroup& g, const ActionFn& act, std::size_t k, unsigned i,
                                      std::uint32_t row_offset, int sign, std::vector<SparseVector>& out) {
  const std::size_t n = g.order();
  const std::uint64_t tuples = ipow(n, i);
  const std::uint64_t shift = ipow(n, i);  // weight of the leading entry of an (i+1)-tuple
  std::vector<std::pair<std::uint32_t, Integer>> raw;
  for (std::uint64_t t = 0; t < tuples; ++t) {
    const std::vector<Elem> tup = decode_tuple(t, n, i);
    for (std::size_t j = 0; j < k; ++j) {
      raw.clear();
      // g f(t)
      for (Elem x = 0; x < n; ++x) {
        const IntMatrix& a = act(x);
        const std::uint64_t row = (x * shift + t) * k;
        for (std::size_t r = 0; r < k; ++r)
          if (!a(r, j).is_zero()) raw.emplace_back(row_offset + row + r, sign > 0 ? a(r, j) : -a(r, j));
      }
      // f(.. g_s g_{s+1} ..) with g_s g_{s+1} = t_s
      std::vector<Elem> longer(i + 1);
      for (unsigned s = 1; s <= i; ++s) {
        const int sg = (s % 2 == 0 ? 1 : -1) * sign;
        for (Elem h = 0; h < n; ++h) {
          for (unsigned q = 0; q + 1 < s; ++q) longer[q] = tup[q];
          longer[s - 1] = h;
          longer[s] = g.mul(g.inv(h), tup[s - 1]);
          for (unsigned q = s; q < i; ++q) longer[q + 1] = tup[q];
          raw.emplace_back(row_offset + encode_tuple(longer, n) * k + j, Integer(sg));
        }
      }
      // f(g_1..g_i), last argument free
      const int sl = ((i + 1) % 2 == 0 ? 1 : -1) * sign;
      for (Elem x = 0; x < n; ++x) raw.emplace_back(row_offset + (t * n + x) * k + j, Integer(sl));
      out.push_back(detail::compress(raw));
    }
  }
}

// Dense evaluation of d f for a cochain f of degree i.
inline IntVector apply_coboundary(const FiniteGroup& g, const ActionFn& act, std::size_t k, unsigned i,
                                  const IntVector& f) {
  const std::size_t n = g.order();
  const std::uint64_t out_tuples = ipow(n, i + 1);
  IntVector out(out_tuples * k);
  std::vector<Elem> shorter(i);
  for (std::uint64_t t = 0; t < out_tuples; ++t) {
    const std::vector<Elem> tup = decode_tuple(t, n, i + 1);
    Integer* o = &out[t * k];
    // g_1 f(g_2..)
    for (unsigned q = 0; q < i; ++q) shorter[q] = tup[q + 1];
    const std::uint64_t tail = encode_tuple(shorter, n);
    const IntMatrix& a = act(tup[0]);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (!a(r, c).is_zero() && !f[tail * k + c].is_zero()) o[r].addmul(a(r, c), f[tail * k + c]);
    for (unsigned s = 1; s <= i; ++s) {
      for (unsigned q = 0; q + 1 < s; ++q) shorter[q] = tup[q];
      shorter[s - 1] = g.mul(tup[s - 1], tup[s]);
      for (unsigned q = s + 1; q <= i; ++q) shorter[q - 1] = tup[q];
      const std::uint64_t idx = encode_tuple(shorter, n);
      for (std::size_t r = 0; r < k; ++r) {
        if (s % 2 == 0) {
          o[r] += f[idx * k + r];
        } else {
          o[r] -= f[idx * k + r];
        }
      }
    }
    for (unsigned q = 0; q < i; ++q) shorter[q] = tup[q];
    const std::uint64_t head = encode_tuple(shorter, n);
    for (std::size_t r = 0; r < k; ++r) {
      if ((i + 1) % 2 == 0) {
        o[r] += f[head * k + r];
      } else {
        o[r] -= f[head * k + r];
      }
    }
  }
  return out;
}

// Pulls a cochain on the parent group back along an embedding H -> G.
inline IntVector restrict_cochain(const IntVector& f, std::size_t parent_order, const std::vector<Elem>& embedding,
                                  std::size_t k, unsigned i) {
  const std::size_t m = embedding.size();
  const std::uint64_t tuples = ipow(m, i);
  IntVector out(tuples * k);
  std::vector<Elem> parent(i);
  for (std::uint64_t t = 0; t < tuples; ++t) {
    const std::vector<Elem> local = decode_tuple(t, m, i);
    for (unsigned q = 0; q < i; ++q) parent[q] = embedding[local[q]];
    const std::uint64_t p = encode_tuple(parent, parent_order);
    for (std::size_t j = 0; j < k; ++j) out[t * k + j] = f[p * k + j];
  }
  return out;
}

// Applies a matrix pointwise to the values of a cochain.
inline IntVector map_cochain(const IntMatrix& m, const IntVector& f, std::size_t k_in) {
  const std::size_t tuples = f.size() / std::max<std::size_t>(k_in, 1);
  IntVector out(tuples * m.rows());
  IntVector val(k_in);
  for (std::size_t t = 0; t < tuples; ++t) {
    for (std::size_t j = 0; j < k_in; ++j) val[j] = f[t * k_in + j];
    IntVector img = m * val;
    for (std::size_t r = 0; r < m.rows(); ++r) out[t * m.rows() + r] = std::move(img[r]);
  }
  return out;
}

}  // namespace normtorus

#endif  // NORMTORUS_COCHAIN_HPP
