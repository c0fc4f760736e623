#ifndef NORMTORUS_GROUP_HPP
#define NORMTORUS_GROUP_HPP

#include "normtorus/abelian.hpp"
#include "normtorus/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace normtorus {

using Elem = std::uint32_t;

// Finite group stored as a full multiplication table.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<Elem>> table, std::string label, std::vector<std::string> element_labels = {})
      : n_(table.size()), label_(std::move(label)), labels_(std::move(element_labels)) {
    if (n_ == 0) throw BadIdentity("empty multiplication table");
    mul_.resize(n_ * n_);
    for (std::size_t a = 0; a < n_; ++a) {
      if (table[a].size() != n_) throw ElementOutOfRange(fmt::format("row {} has {} entries, expected {}", a, table[a].size(), n_));
      for (std::size_t b = 0; b < n_; ++b) {
        if (table[a][b] >= n_) throw ElementOutOfRange(fmt::format("table entry ({},{}) = {} is out of range", a, b, table[a][b]));
        mul_[a * n_ + b] = table[a][b];
      }
    }
    find_identity();
    find_inverses();
    check_associative();
    if (labels_.empty())
      for (std::size_t i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
    orders_.resize(n_);
    for (Elem a = 0; a < n_; ++a) {
      std::size_t k = 1;
      for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
      orders_[a] = k;
    }
  }

  [[nodiscard]] std::size_t order() const noexcept { return n_; }
  [[nodiscard]] Elem identity() const noexcept { return identity_; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept { return mul_[a * n_ + b]; }
  [[nodiscard]] Elem inv(Elem a) const noexcept { return inv_[a]; }
  [[nodiscard]] std::size_t element_order(Elem a) const noexcept { return orders_[a]; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] const std::string& element_label(Elem a) const { return labels_.at(a); }
  [[nodiscard]] const std::vector<std::string>& element_labels() const noexcept { return labels_; }

  [[nodiscard]] Elem power(Elem a, std::size_t k) const {
    Elem r = identity_;
    for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  [[nodiscard]] Elem conjugate(Elem g, Elem h) const { return mul(mul(g, h), inv(g)); }

  [[nodiscard]] bool is_abelian() const {
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  [[nodiscard]] std::vector<std::vector<Elem>> table() const {
    std::vector<std::vector<Elem>> t(n_, std::vector<Elem>(n_));
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
  }

 private:
  void find_identity() {
    for (Elem e = 0; e < n_; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
      if (ok) {
        identity_ = e;
        return;
      }
    }
    throw BadIdentity("no two-sided identity element in table");
  }

  void find_inverses() {
    inv_.assign(n_, static_cast<Elem>(n_));
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        if (mul(a, b) == identity_ && mul(b, a) == identity_) {
          inv_[a] = b;
          break;
        }
    for (Elem a = 0; a < n_; ++a)
      if (inv_[a] == n_) throw BadIdentity(fmt::format("element {} has no inverse", a));
  }

  void check_associative() const {
    auto bad = [&](Elem a, Elem b, Elem c) { return mul(mul(a, b), c) != mul(a, mul(b, c)); };
    if (n_ <= 64) {
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
          for (Elem c = 0; c < n_; ++c)
            if (bad(a, b, c)) throw NonAssociativeTable(fmt::format("(a*b)*c != a*(b*c) at ({},{},{})", a, b, c));
      return;
    }
    std::mt19937 rng(static_cast<unsigned>(n_));
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n_ - 1));
    for (int t = 0; t < 200000; ++t) {
      Elem a = pick(rng), b = pick(rng), c = pick(rng);
      if (bad(a, b, c)) throw NonAssociativeTable(fmt::format("(a*b)*c != a*(b*c) at ({},{},{})", a, b, c));
    }
  }

  std::size_t n_;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<std::size_t> orders_;
  Elem identity_ = 0;
  std::string label_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Direct product of cyclic and symmetric factors, or an explicit table.
struct GroupFactor {
  enum class Kind { Cyclic, Symmetric } kind;
  unsigned n;
};

struct GroupSpec {
  std::vector<GroupFactor> factors;
  std::vector<std::vector<Elem>> table;  // used when factors is empty

  static GroupSpec cyclic_product(std::initializer_list<unsigned> ns) {
    GroupSpec s;
    for (unsigned n : ns) s.factors.push_back({GroupFactor::Kind::Cyclic, n});
    return s;
  }
  static GroupSpec symmetric(unsigned n) {
    GroupSpec s;
    s.factors.push_back({GroupFactor::Kind::Symmetric, n});
    return s;
  }
  static GroupSpec explicit_table(std::vector<std::vector<Elem>> t) {
    GroupSpec s;
    s.table = std::move(t);
    return s;
  }

  [[nodiscard]] std::string str() const {
    if (factors.empty()) return fmt::format("table {}", table.size());
    std::string out;
    for (const auto& f : factors) {
      if (!out.empty()) out += " x ";
      out += (f.kind == GroupFactor::Kind::Cyclic ? "Z" : "S") + std::to_string(f.n);
    }
    return out;
  }
};

namespace detail {

struct FactorTable {
  std::vector<std::vector<Elem>> mul;
  std::vector<std::string> labels;
};

inline FactorTable cyclic_table(unsigned n) {
  FactorTable f;
  f.mul.assign(n, std::vector<Elem>(n));
  for (unsigned a = 0; a < n; ++a) {
    f.labels.push_back(std::to_string(a));
    for (unsigned b = 0; b < n; ++b) f.mul[a][b] = (a + b) % n;
  }
  return f;
}

// Permutations of {1..n} in lexicographic order; (s t)(i) = s(t(i)).
inline FactorTable symmetric_table(unsigned n) {
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 1u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<unsigned>, Elem> rank;
  for (Elem i = 0; i < perms.size(); ++i) rank[perms[i]] = i;
  FactorTable f;
  f.mul.assign(perms.size(), std::vector<Elem>(perms.size()));
  for (Elem a = 0; a < perms.size(); ++a) {
    std::string lab = "[";
    for (unsigned i = 0; i < n; ++i) lab += (i ? " " : "") + std::to_string(perms[a][i]);
    f.labels.push_back(lab + "]");
    for (Elem b = 0; b < perms.size(); ++b) {
      std::vector<unsigned> c(n);
      for (unsigned i = 0; i < n; ++i) c[i] = perms[a][perms[b][i] - 1];
      f.mul[a][b] = rank.at(c);
    }
  }
  return f;
}

}  // namespace detail

inline constexpr std::size_t kMaxGroupOrder = 120;

inline GroupPtr build_group(const GroupSpec& spec, std::size_t max_order = kMaxGroupOrder) {
  if (spec.factors.empty()) {
    if (spec.table.size() > max_order)
      throw ComplexityLimitExceeded(fmt::format("group order {} exceeds limit {}", spec.table.size(), max_order));
    return std::make_shared<const FiniteGroup>(spec.table, spec.str());
  }
  std::vector<detail::FactorTable> parts;
  std::size_t total = 1;
  for (const auto& f : spec.factors) {
    if (f.n == 0) throw ValidationError("factor of order 0");
    if (f.kind == GroupFactor::Kind::Symmetric && f.n > 5) throw ValidationError("symmetric groups are limited to S_n with n <= 5");
    parts.push_back(f.kind == GroupFactor::Kind::Cyclic ? detail::cyclic_table(f.n) : detail::symmetric_table(f.n));
    total *= parts.back().mul.size();
    if (total > max_order) throw ComplexityLimitExceeded(fmt::format("group order exceeds limit {}", max_order));
  }
  // mixed radix, first factor most significant
  std::vector<std::vector<Elem>> coords(total, std::vector<Elem>(parts.size()));
  for (std::size_t x = 0; x < total; ++x) {
    std::size_t rest = x;
    for (std::size_t k = parts.size(); k-- > 0;) {
      coords[x][k] = static_cast<Elem>(rest % parts[k].mul.size());
      rest /= parts[k].mul.size();
    }
  }
  auto encode = [&](const std::vector<Elem>& c) {
    std::size_t x = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) x = x * parts[k].mul.size() + c[k];
    return static_cast<Elem>(x);
  };
  std::vector<std::vector<Elem>> table(total, std::vector<Elem>(total));
  std::vector<Elem> c(parts.size());
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      for (std::size_t k = 0; k < parts.size(); ++k) c[k] = parts[k].mul[coords[a][k]][coords[b][k]];
      table[a][b] = encode(c);
    }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < total; ++x) {
    if (parts.size() == 1) {
      labels.push_back(parts[0].labels[coords[x][0]]);
      continue;
    }
    std::string lab = "(";
    for (std::size_t k = 0; k < parts.size(); ++k) lab += (k ? "," : "") + parts[k].labels[coords[x][k]];
    labels.push_back(lab + ")");
  }
  return std::make_shared<const FiniteGroup>(std::move(table), spec.str(), std::move(labels));
}

class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Elem> sorted_elements)
      : parent_(std::move(parent)), elements_(std::move(sorted_elements)), member_(parent_->order(), false) {
    for (Elem e : elements_) member_[e] = true;
  }

  [[nodiscard]] const GroupPtr& parent() const noexcept { return parent_; }
  [[nodiscard]] const std::vector<Elem>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::size_t order() const noexcept { return elements_.size(); }
  [[nodiscard]] std::size_t index() const noexcept { return parent_->order() / elements_.size(); }
  [[nodiscard]] bool contains(Elem e) const { return e < member_.size() && member_[e]; }
  [[nodiscard]] bool is_trivial() const noexcept { return elements_.size() == 1; }
  [[nodiscard]] bool is_whole() const noexcept { return elements_.size() == parent_->order(); }

  [[nodiscard]] bool is_subgroup_of(const Subgroup& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](Elem e) { return other.contains(e); });
  }

  [[nodiscard]] std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) out += (i ? ", " : "") + parent_->element_label(elements_[i]);
    return out + "}";
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements_ < b.elements_;
  }

 private:
  GroupPtr parent_;
  std::vector<Elem> elements_;
  std::vector<bool> member_;
};

inline Subgroup subgroup_closure(const GroupPtr& g, const std::vector<Elem>& gens) {
  for (Elem x : gens)
    if (x >= g->order()) throw ElementOutOfRange(fmt::format("element {} not in group of order {}", x, g->order()));
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> elems{g->identity()};
  in[g->identity()] = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Elem s : gens) {
      Elem y = g->mul(elems[i], s);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return Subgroup(g, std::move(elems));
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {g->identity()}); }

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<Elem> all(g->order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(g, std::move(all));
}

inline Subgroup cyclic_subgroup(const GroupPtr& g, Elem x) { return subgroup_closure(g, {x}); }

inline Subgroup conjugate(const Subgroup& h, Elem x) {
  const auto& g = h.parent();
  std::vector<Elem> e;
  for (Elem y : h.elements()) e.push_back(g->conjugate(x, y));
  std::sort(e.begin(), e.end());
  return Subgroup(g, std::move(e));
}

inline bool is_normal(const Subgroup& h) {
  const auto& g = h.parent();
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y : h.elements())
      if (!h.contains(g->conjugate(x, y))) return false;
  return true;
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return subgroup_closure(a.parent(), gens);
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> e;
  for (Elem x : a.elements())
    if (b.contains(x)) e.push_back(x);
  return Subgroup(a.parent(), std::move(e));
}

inline Subgroup normal_closure(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<Elem> gens;
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y : h.elements()) gens.push_back(g->conjugate(x, y));
  return subgroup_closure(g, gens);
}

// Largest normal subgroup contained in h.
inline Subgroup core(const Subgroup& h) {
  const auto& g = h.parent();
  Subgroup c = h;
  for (Elem x = 0; x < g->order(); ++x) c = intersection(c, conjugate(h, x));
  return c;
}

inline Subgroup commutator_subgroup(const GroupPtr& g) {
  std::vector<Elem> gens;
  for (Elem a = 0; a < g->order(); ++a)
    for (Elem b = 0; b < g->order(); ++b) gens.push_back(g->mul(g->mul(a, b), g->mul(g->inv(a), g->inv(b))));
  return subgroup_closure(g, gens);
}

inline Subgroup squares_subgroup(const GroupPtr& g) {
  std::vector<Elem> gens;
  for (Elem a = 0; a < g->order(); ++a) gens.push_back(g->mul(a, a));
  return subgroup_closure(g, gens);
}

inline std::vector<Subgroup> all_cyclic_subgroups(const GroupPtr& g) {
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> out;
  for (Elem x = 0; x < g->order(); ++x) {
    Subgroup c = cyclic_subgroup(g, x);
    if (seen.insert(c.elements()).second) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// One subgroup per conjugacy class of cyclic subgroups. The representative is
// the lexicographically smallest member of its class; classes are sorted by
// (order, elements).
inline std::vector<Subgroup> cyclic_subgroup_reps(const GroupPtr& g) {
  std::vector<Subgroup> all = all_cyclic_subgroups(g);
  std::set<std::vector<Elem>> covered;
  std::vector<Subgroup> reps;
  for (const auto& c : all) {
    if (covered.count(c.elements())) continue;
    for (Elem x = 0; x < g->order(); ++x) covered.insert(conjugate(c, x).elements());
    reps.push_back(c);  // all is sorted, so the first member met is the smallest
  }
  return reps;
}

// Left cosets x H ordered by their least element; action of g by left translation.
struct CosetAction {
  Subgroup subgroup;
  std::vector<Elem> reps;
  std::vector<std::size_t> coset_of;          // element -> coset index
  std::vector<std::vector<std::size_t>> act;  // act[g][i] = index of g x_i H

  [[nodiscard]] std::size_t num_cosets() const noexcept { return reps.size(); }
};

inline CosetAction coset_action(const Subgroup& h) {
  const auto& g = h.parent();
  CosetAction ca{h, {}, std::vector<std::size_t>(g->order(), SIZE_MAX), {}};
  for (Elem x = 0; x < g->order(); ++x) {
    if (ca.coset_of[x] != SIZE_MAX) continue;
    const std::size_t idx = ca.reps.size();
    ca.reps.push_back(x);
    for (Elem y : h.elements()) ca.coset_of[g->mul(x, y)] = idx;
  }
  ca.act.assign(g->order(), std::vector<std::size_t>(ca.reps.size()));
  for (Elem a = 0; a < g->order(); ++a)
    for (std::size_t i = 0; i < ca.reps.size(); ++i) ca.act[a][i] = ca.coset_of[g->mul(a, ca.reps[i])];
  return ca;
}

struct QuotientGroup {
  GroupPtr group;
  std::vector<Elem> image;  // parent element -> quotient element
};

inline QuotientGroup quotient_group(const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("quotient by a subgroup that is not normal");
  const auto& g = n.parent();
  CosetAction ca = coset_action(n);
  const std::size_t m = ca.num_cosets();
  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(g->element_label(ca.reps[i]) + "N");
    for (std::size_t j = 0; j < m; ++j) table[i][j] = static_cast<Elem>(ca.coset_of[g->mul(ca.reps[i], ca.reps[j])]);
  }
  QuotientGroup q;
  q.group = std::make_shared<const FiniteGroup>(std::move(table), g->label() + "/N", std::move(labels));
  for (Elem x = 0; x < g->order(); ++x) q.image.push_back(static_cast<Elem>(ca.coset_of[x]));
  return q;
}

// Standalone group on the elements of h (in sorted order), with the embedding.
struct SubgroupGroup {
  GroupPtr group;
  std::vector<Elem> embedding;  // local index -> parent element
};

inline SubgroupGroup subgroup_as_group(const Subgroup& h) {
  const auto& g = h.parent();
  const auto& e = h.elements();
  std::vector<Elem> local(g->order(), 0);
  for (Elem i = 0; i < e.size(); ++i) local[e[i]] = i;
  std::vector<std::vector<Elem>> table(e.size(), std::vector<Elem>(e.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < e.size(); ++i) {
    labels.push_back(g->element_label(e[i]));
    for (std::size_t j = 0; j < e.size(); ++j) table[i][j] = local[g->mul(e[i], e[j])];
  }
  return {std::make_shared<const FiniteGroup>(std::move(table), g->label() + " subgroup", std::move(labels)), e};
}

// Invariant factors of an abelian group, read off from counts of p-power torsion.
inline AbelianStructure abelian_invariants_of_group(const FiniteGroup& g) {
  if (!g.is_abelian()) throw HypothesisViolated("group is not abelian");
  std::vector<Integer> cyclic_orders;
  std::size_t n = g.order();
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    bool prime = true;
    for (std::size_t q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    // r[k] = log_p #{x : x^(p^k) = e}
    std::vector<std::size_t> r{0};
    std::size_t pk = 1;
    for (;;) {
      pk *= p;
      std::size_t count = 0;
      for (Elem x = 0; x < g.order(); ++x)
        if (g.element_order(x) > 0 && pk % g.element_order(x) == 0) ++count;
      std::size_t lg = 0;
      for (std::size_t c = count; c > 1; c /= p) ++lg;
      r.push_back(lg);
      if (r.back() == r[r.size() - 2]) break;
    }
    for (std::size_t k = 1; k + 1 < r.size(); ++k) {
      const std::size_t at_least_k = r[k] - r[k - 1];
      const std::size_t at_least_k1 = r[k + 1] - r[k];
      Integer pw(1);
      for (std::size_t i = 0; i < k; ++i) pw *= Integer(static_cast<long long>(p));
      for (std::size_t i = 0; i < at_least_k - at_least_k1; ++i) cyclic_orders.push_back(pw);
    }
  }
  return structure_of_cyclic_sum(cyclic_orders);
}

}  // namespace normtorus

#endif  // NORMTORUS_GROUP_HPP
