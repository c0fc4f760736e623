#ifndef NORMTORUS_COHOMOLOGY_HPP
#define NORMTORUS_COHOMOLOGY_HPP

#include "normtorus/abelian.hpp"
#include "normtorus/cochain.hpp"
#include "normtorus/gmodule.hpp"
#include "normtorus/sparse_cokernel.hpp"

#include <memory>
#include <vector>

namespace normtorus {

namespace detail {

class CohomologyImpl {
 public:
  virtual ~CohomologyImpl() = default;
  [[nodiscard]] virtual const AbelianStructure& structure() const = 0;
  // Coordinates of a cocycle, reduced modulo the invariant factors.
  [[nodiscard]] virtual IntVector coordinates(const IntVector& cocycle) const = 0;
  [[nodiscard]] virtual IntVector representative(std::size_t j) const = 0;
};

// Degree >= 1 by the mapping cone of the relation lattice L -> Z^k:
//   cone^m = C^(m+1)(L) + C^m(Z^k),  D(a, b) = (-d a, R a + d b),
// whose cohomology is H^m(G, Z^k / L). Degree m classes are the torsion of
// coker D^(m-1). For a lattice the L part is empty.
class BarImpl final : public CohomologyImpl {
 public:
  BarImpl(const ModulePtr& m, unsigned degree) : m_(m), degree_(degree) {
    const auto& g = *m->group();
    const std::size_t n = g.order();
    const std::size_t k = m->num_gens();
    const std::size_t r = m->relation_basis().cols();
    l_rows_ = ipow(n, degree + 1) * r;
    const std::uint64_t rows = l_rows_ + ipow(n, degree) * k;

    std::vector<SparseVector> cols;
    ActionFn lact = [&](Elem x) -> const IntMatrix& { return m->relation_action(x); };
    ActionFn fact = [&](Elem x) -> const IntMatrix& { return m->action(x); };
    if (r > 0) {
      // columns from C^degree(L): (-d_L col, R col)
      std::vector<SparseVector> lcols;
      append_coboundary_columns(g, lact, r, degree, 0, -1, lcols);
      const IntMatrix& rb = m->relation_basis();
      const std::uint64_t tuples = ipow(n, degree);
      for (std::uint64_t t = 0; t < tuples; ++t)
        for (std::size_t j = 0; j < r; ++j) {
          SparseVector& col = lcols[t * r + j];
          for (std::size_t i = 0; i < k; ++i)
            if (!rb(i, j).is_zero()) col.emplace_back(static_cast<std::uint32_t>(l_rows_ + t * k + i), rb(i, j));
        }
      cols = std::move(lcols);
    }
    append_coboundary_columns(g, fact, k, degree - 1, static_cast<std::uint32_t>(l_rows_), 1, cols);
    engine_ = std::make_unique<SparseCokernel>(rows, std::move(cols));
    structure_.invariants = engine_->structure().invariants;
  }

  [[nodiscard]] const AbelianStructure& structure() const override { return structure_; }

  [[nodiscard]] IntVector coordinates(const IntVector& b) const override {
    return engine_->torsion_coordinates(cone_vector(b));
  }

  [[nodiscard]] IntVector representative(std::size_t j) const override {
    IntVector v = engine_->torsion_lift(j);
    return IntVector(v.begin() + static_cast<std::ptrdiff_t>(l_rows_), v.end());
  }

 private:
  // (a, b) with R a = -d b pointwise; throws unless b is a cocycle modulo L.
  [[nodiscard]] IntVector cone_vector(const IntVector& b) const {
    const auto& g = *m_->group();
    const std::size_t k = m_->num_gens();
    const std::size_t r = m_->relation_basis().cols();
    ActionFn fact = [&](Elem x) -> const IntMatrix& { return m_->action(x); };
    IntVector db = apply_coboundary(g, fact, k, degree_, b);
    IntVector out(l_rows_);
    const std::uint64_t tuples = ipow(g.order(), degree_ + 1);
    IntVector val(k);
    for (std::uint64_t t = 0; t < tuples; ++t) {
      bool zero = true;
      for (std::size_t i = 0; i < k; ++i) {
        val[i] = -db[t * k + i];
        zero = zero && val[i].is_zero();
      }
      if (zero) continue;
      if (r == 0) throw ContextMismatch("cochain is not a cocycle");
      IntVector c;
      try {
        c = m_->relation_coefficients(val);
      } catch (const InternalInconsistency&) {
        throw ContextMismatch("cochain is not a cocycle");
      }
      for (std::size_t j = 0; j < r; ++j) out[t * r + j] = c[j];
    }
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  ModulePtr m_;
  unsigned degree_;
  std::uint64_t l_rows_ = 0;
  std::unique_ptr<SparseCokernel> engine_;
  AbelianStructure structure_;
};

// H^0 = M^G: {x : (A_g - 1) x in L for all g} / L.
class FixedPointImpl final : public CohomologyImpl {
 public:
  explicit FixedPointImpl(const ModulePtr& m) {
    const auto& g = *m->group();
    const std::size_t k = m->num_gens();
    const IntMatrix& rb = m->relation_basis();
    const std::size_t r = rb.cols();
    IntMatrix stacked(g.order() * k, k + g.order() * r);
    for (Elem x = 0; x < g.order(); ++x) {
      const IntMatrix& a = m->action(x);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) stacked(x * k + i, j) = a(i, j) - Integer(i == j ? 1 : 0);
        for (std::size_t j = 0; j < r; ++j) stacked(x * k + i, k + x * r + j) = -rb(i, j);
      }
    }
    IntMatrix ker = integer_kernel(stacked);
    IntMatrix s(k, ker.cols());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < ker.cols(); ++j) s(i, j) = ker(i, j);
    sq_ = std::make_unique<Subquotient>(s, rb);
  }

  [[nodiscard]] const AbelianStructure& structure() const override { return sq_->structure(); }
  [[nodiscard]] IntVector coordinates(const IntVector& x) const override { return sq_->coordinates(x); }
  [[nodiscard]] IntVector representative(std::size_t j) const override { return sq_->lift(j); }

 private:
  std::unique_ptr<Subquotient> sq_;
};

// Cyclic group <s> of order n: H^0 = M^s, H^1 = ker N / (s - 1) M, H^2 = M^s / N M,
// compared with bar cocycles through f -> f(s) and f -> sum_j f(s^j, s).
class TateImpl final : public CohomologyImpl {
 public:
  TateImpl(const ModulePtr& m, unsigned degree, Elem sigma) : m_(m), degree_(degree), sigma_(sigma) {
    const auto& g = *m->group();
    const std::size_t n = g.order();
    const std::size_t k = m->num_gens();
    if (g.element_order(sigma) != n) throw NotCyclic("chosen element does not generate the group");
    const IntMatrix& rb = m->relation_basis();
    const std::size_t r = rb.cols();
    IntMatrix norm(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      const IntMatrix& a = m->action(g.power(sigma, j));
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) norm(x, y) += a(x, y);
    }
    IntMatrix tm = m->action(sigma) - IntMatrix::identity(k);
    const IntMatrix& cond = degree == 1 ? norm : tm;  // x must satisfy cond x in L
    const IntMatrix& image = degree == 1 ? tm : norm;
    IntMatrix stacked(k, k + r);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) stacked(i, j) = cond(i, j);
      for (std::size_t j = 0; j < r; ++j) stacked(i, k + j) = -rb(i, j);
    }
    IntMatrix ker = integer_kernel(stacked);
    IntMatrix s(k, ker.cols());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < ker.cols(); ++j) s(i, j) = ker(i, j);
    IntMatrix t(k, (degree == 0 ? 0 : k) + r);
    for (std::size_t i = 0; i < k; ++i) {
      if (degree != 0)
        for (std::size_t j = 0; j < k; ++j) t(i, j) = image(i, j);
      for (std::size_t j = 0; j < r; ++j) t(i, (degree == 0 ? 0 : k) + j) = rb(i, j);
    }
    sq_ = std::make_unique<Subquotient>(s, t);
  }

  [[nodiscard]] const AbelianStructure& structure() const override { return sq_->structure(); }

  [[nodiscard]] IntVector coordinates(const IntVector& f) const override {
    return sq_->coordinates(compare(f));
  }

  // Value in M of the comparison map applied to a bar cocycle.
  [[nodiscard]] IntVector compare(const IntVector& f) const {
    const auto& g = *m_->group();
    const std::size_t k = m_->num_gens();
    if (degree_ == 0) return f;
    if (degree_ == 1) return IntVector(f.begin() + static_cast<std::ptrdiff_t>(sigma_ * k),
                                       f.begin() + static_cast<std::ptrdiff_t>((sigma_ + 1) * k));
    IntVector out(k);
    for (std::size_t j = 0; j < g.order(); ++j) {
      const std::uint64_t idx = static_cast<std::uint64_t>(g.power(sigma_, j)) * g.order() + sigma_;
      for (std::size_t i = 0; i < k; ++i) out[i] += f[idx * k + i];
    }
    return out;
  }

  [[nodiscard]] IntVector representative(std::size_t j) const override {
    const auto& g = *m_->group();
    const std::size_t n = g.order();
    const std::size_t k = m_->num_gens();
    IntVector a = sq_->lift(j);
    if (degree_ == 0) return a;
    if (degree_ == 1) {
      // f(s^j) = (1 + s + ... + s^(j-1)) a
      IntVector f(n * k), acc(k), term = a;
      for (std::size_t p = 0; p < n; ++p) {
        const Elem x = g.power(sigma_, p);
        for (std::size_t i = 0; i < k; ++i) f[x * k + i] = acc[i];
        acc = acc + term;
        term = m_->action(sigma_) * term;
      }
      return f;
    }
    // f(s^p, s^q) = a when p + q >= n
    IntVector f(n * n * k);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (p + q < n) continue;
        const std::uint64_t idx = static_cast<std::uint64_t>(g.power(sigma_, p)) * n + g.power(sigma_, q);
        for (std::size_t i = 0; i < k; ++i) f[idx * k + i] = a[i];
      }
    return f;
  }

  [[nodiscard]] const Subquotient& subquotient() const { return *sq_; }

 private:
  ModulePtr m_;
  unsigned degree_;
  Elem sigma_;
  std::unique_ptr<Subquotient> sq_;
};

}  // namespace detail

// H^i(G, M) with representative cocycles and a coordinate map on cocycles.
class CohomologyGroup {
 public:
  CohomologyGroup(ModulePtr m, unsigned degree, std::shared_ptr<const detail::CohomologyImpl> impl)
      : m_(std::move(m)), degree_(degree), impl_(std::move(impl)) {}

  [[nodiscard]] const AbelianStructure& structure() const { return impl_->structure(); }
  [[nodiscard]] unsigned degree() const noexcept { return degree_; }
  [[nodiscard]] const ModulePtr& module() const noexcept { return m_; }
  [[nodiscard]] const GroupPtr& group() const noexcept { return m_->group(); }
  [[nodiscard]] std::size_t num_generators() const {
    return structure().invariants.size() + structure().free_rank;
  }
  [[nodiscard]] std::vector<Integer> generator_orders() const {
    std::vector<Integer> o = structure().invariants;
    o.resize(num_generators(), Integer(0));
    return o;
  }

  [[nodiscard]] IntVector coordinates(const IntVector& cocycle) const {
    if (cocycle.size() != cochain_size()) throw ContextMismatch("cochain has the wrong length");
    return impl_->coordinates(cocycle);
  }
  [[nodiscard]] IntVector representative(std::size_t j) const { return impl_->representative(j); }
  [[nodiscard]] std::vector<IntVector> representatives() const {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < num_generators(); ++j) out.push_back(representative(j));
    return out;
  }

  [[nodiscard]] std::size_t cochain_size() const { return ipow(group()->order(), degree_) * m_->num_gens(); }

  // f is a cocycle iff d f lies in C^(i+1)(L).
  [[nodiscard]] bool is_cocycle(const IntVector& f) const {
    ActionFn act = [&](Elem x) -> const IntMatrix& { return m_->action(x); };
    const std::size_t k = m_->num_gens();
    IntVector df = apply_coboundary(*group(), act, k, degree_, f);
    IntVector val(k);
    for (std::size_t t = 0; t * k < df.size(); ++t) {
      for (std::size_t i = 0; i < k; ++i) val[i] = df[t * k + i];
      if (!m_->in_relations(val)) return false;
    }
    return true;
  }

  [[nodiscard]] bool is_zero_class(const IntVector& cocycle) const { return is_zero(coordinates(cocycle)); }

  [[nodiscard]] const detail::CohomologyImpl& impl() const { return *impl_; }

 private:
  ModulePtr m_;
  unsigned degree_;
  std::shared_ptr<const detail::CohomologyImpl> impl_;
};

inline CohomologyGroup cohomology(const ModulePtr& m, unsigned degree, const Budget& budget = {}) {
  if (degree > 3) throw UnsupportedShape("cohomology is implemented in degrees 0..3");
  check_budget(*m->group(), m->num_gens(), degree, budget);
  if (degree == 0) return {m, 0, std::make_shared<detail::FixedPointImpl>(m)};
  return {m, degree, std::make_shared<detail::BarImpl>(m, degree)};
}

// Least element index generating a cyclic group.
inline Elem cyclic_generator(const FiniteGroup& g) {
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) == g.order()) return x;
  throw NotCyclic("group is not cyclic");
}

inline CohomologyGroup cyclic_tate(const ModulePtr& m, unsigned degree) {
  if (degree > 2) throw UnsupportedShape("cyclic_tate covers degrees 0..2");
  const Elem sigma = cyclic_generator(*m->group());
  return {m, degree, std::make_shared<detail::TateImpl>(m, degree, sigma)};
}

// Matrix of the map on coordinates induced by a cochain-level map, one column
// per generator of the source.
template <class CochainMap>
IntMatrix induced_on_coordinates(const CohomologyGroup& source, const CohomologyGroup& target, CochainMap&& f) {
  IntMatrix out(target.num_generators(), source.num_generators());
  for (std::size_t j = 0; j < source.num_generators(); ++j) {
    IntVector c = target.coordinates(f(source.representative(j)));
    for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
  }
  return out;
}

// Restriction to a subgroup: returns H^i(H, M|H) and the coordinate matrix of the map.
struct RestrictionResult {
  CohomologyGroup target;
  IntMatrix matrix;
};

inline RestrictionResult restriction(const CohomologyGroup& classes, const Subgroup& h, const Budget& budget = {}) {
  if (h.parent() != classes.group()) throw ContextMismatch("subgroup of a different group");
  RestrictedModule rm = restrict_action(classes.module(), h);
  const unsigned i = classes.degree();
  const bool cyclic = [&] {
    for (Elem x : h.elements())
      if (classes.group()->element_order(x) == h.order()) return true;
    return false;
  }();
  CohomologyGroup target = (cyclic && i <= 2) ? cyclic_tate(rm.module, i) : cohomology(rm.module, i, budget);
  const std::size_t n = classes.group()->order();
  const std::size_t k = classes.module()->num_gens();
  IntMatrix mat = induced_on_coordinates(classes, target, [&](const IntVector& f) {
    return restrict_cochain(f, n, rm.subgroup.embedding, k, i);
  });
  return {std::move(target), std::move(mat)};
}

inline IntMatrix induced_map(const ModuleMap& f, const CohomologyGroup& source, const CohomologyGroup& target) {
  if (source.module() != f.source || target.module() != f.target || source.degree() != target.degree())
    throw ContextMismatch("induced_map: classes do not match the map");
  return induced_on_coordinates(source, target, [&](const IntVector& c) {
    return map_cochain(f.matrix, c, f.source->num_gens());
  });
}

// Structure of H^i(G, Z) or H^i(G, Z/p) for G = Z/n1 x Z/n2 from the Kunneth formula.
inline AbelianStructure kunneth_oracle(unsigned n1, unsigned n2, unsigned degree, unsigned p = 0) {
  if (degree < 2 || degree > 3) throw UnsupportedShape("oracle covers degrees 2 and 3");
  auto gcd_u = [](unsigned a, unsigned b) {
    while (b) {
      unsigned t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  if (p == 0) {
    // H^*(Z/n, Z) = Z, 0, Z/n, 0, Z/n, ...; degree 2 gives Z/n1 + Z/n2, degree 3 the Tor term
    if (degree == 2) return structure_of_cyclic_sum({Integer(n1), Integer(n2)});
    return structure_of_cyclic_sum({Integer(gcd_u(n1, n2))});
  }
  for (unsigned q = 2; q * q <= p; ++q)
    if (p % q == 0) throw UnsupportedShape("coefficients Z/p need p prime");
  // over the field F_p: dim H^i(Z/n, F_p) = 1 for i = 0 and, for i >= 1, 1 iff p | n
  auto dim = [&](unsigned n, unsigned i) -> unsigned { return i == 0 ? 1u : (n % p == 0 ? 1u : 0u); };
  unsigned total = 0;
  for (unsigned a = 0; a <= degree; ++a) total += dim(n1, a) * dim(n2, degree - a);
  return structure_of_cyclic_sum(std::vector<Integer>(total, Integer(p)));
}

// Compares H^i(G, M (x) Z[G/H]) with H^i(H, M|H).
inline bool shapiro_check(const ModulePtr& m, const Subgroup& h, unsigned degree, const Budget& budget = {}) {
  ModulePtr induced = tensor_with_ZP(m, PData{{h, 1}});
  RestrictedModule rm = restrict_action(m, h);
  return cohomology(induced, degree, budget).structure() == cohomology(rm.module, degree, budget).structure();
}

}  // namespace normtorus

#endif  // NORMTORUS_COHOMOLOGY_HPP
