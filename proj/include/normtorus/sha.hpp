#ifndef NORMTORUS_SHA_HPP
#define NORMTORUS_SHA_HPP

#include "normtorus/cohomology.hpp"

#include <optional>
#include <vector>

namespace normtorus {

// Subgroup of H^i(G, M) of classes that vanish on every cyclic subgroup.
struct ShaGroup {
  AbelianStructure structure;
  CohomologyGroup ambient;
  std::vector<IntVector> generators;  // ambient coordinates, one per invariant factor
  std::vector<IntVector> reps;        // cocycles

  [[nodiscard]] bool is_trivial() const { return structure.is_trivial(); }
};

// Cocycle with the given coordinates in the generators of h.
inline IntVector combine(const CohomologyGroup& h, const IntVector& coords) {
  IntVector f(h.cochain_size());
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (!coords[j].is_zero()) axpy(f, coords[j], h.representative(j));
  return f;
}

inline IntVector reduce_coordinates(IntVector x, const std::vector<Integer>& orders) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!orders[j].is_zero()) x[j] = floor_mod(x[j], orders[j]);
  return x;
}

namespace detail {

inline ShaGroup sha_from_kernel(const CohomologyGroup& h, const Subquotient& k, const std::vector<Integer>& domain_orders) {
  ShaGroup s{k.structure(), h, {}, {}};
  for (std::size_t j = 0; j < k.structure().invariants.size(); ++j) {
    IntVector x = reduce_coordinates(k.lift(j), domain_orders);
    s.reps.push_back(combine(h, x));
    s.generators.push_back(std::move(x));
  }
  return s;
}

}  // namespace detail

// Common kernel of restriction to one representative of each conjugacy class
// of nontrivial cyclic subgroups.
inline ShaGroup sha_omega_of(const CohomologyGroup& h, const Budget& budget = {}) {
  const auto& g = h.group();
  std::vector<IntMatrix> blocks;
  std::vector<Integer> target_orders;
  std::size_t rows = 0;
  if (!h.structure().is_trivial()) {
    for (const auto& c : cyclic_subgroup_reps(g)) {
      if (c.is_trivial()) continue;
      RestrictionResult r = restriction(h, c, budget);
      for (const auto& o : r.target.generator_orders()) target_orders.push_back(o);
      rows += r.matrix.rows();
      blocks.push_back(std::move(r.matrix));
    }
  }
  IntMatrix phi(rows, h.num_generators());
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) phi(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  const auto orders = h.generator_orders();
  Subquotient k = hom_kernel(orders, phi, target_orders);
  return detail::sha_from_kernel(h, k, orders);
}

inline ShaGroup sha_omega(const ModulePtr& m, unsigned degree, const Budget& budget = {}) {
  if (degree < 1 || degree > 2) throw UnsupportedShape("sha_omega is defined here for degrees 1 and 2");
  return sha_omega_of(cohomology(m, degree, budget), budget);
}

// True iff the class of f restricts to zero on the subgroup c.
inline bool restricts_to_zero(const CohomologyGroup& h, const IntVector& f, const Subgroup& c, const Budget& budget = {}) {
  RestrictedModule rm = restrict_action(h.module(), c);
  IntVector rf = restrict_cochain(f, h.group()->order(), rm.subgroup.embedding, h.module()->num_gens(), h.degree());
  const bool cyclic = [&] {
    for (Elem x : c.elements())
      if (h.group()->element_order(x) == c.order()) return true;
    return false;
  }();
  CohomologyGroup target = cyclic && h.degree() <= 2 ? cyclic_tate(rm.module, h.degree())
                                                      : cohomology(rm.module, h.degree(), budget);
  return target.is_zero_class(rf);
}

// Kernel of a map out of a sha group, expressed back in ambient coordinates.
inline ShaGroup sha_subgroup_kernel(const ShaGroup& s, const IntMatrix& phi, const std::vector<Integer>& target_orders) {
  const auto& inv = s.structure.invariants;
  Subquotient k = hom_kernel(inv, phi, target_orders);
  ShaGroup out{k.structure(), s.ambient, {}, {}};
  const auto ambient_orders = s.ambient.generator_orders();
  for (std::size_t j = 0; j < k.structure().invariants.size(); ++j) {
    IntVector y = k.lift(j);
    IntVector x(s.ambient.num_generators());
    for (std::size_t l = 0; l < y.size(); ++l)
      if (!y[l].is_zero()) axpy(x, y[l], s.generators[l]);
    x = reduce_coordinates(std::move(x), ambient_orders);
    out.reps.push_back(combine(s.ambient, x));
    out.generators.push_back(std::move(x));
  }
  return out;
}

struct ShaP {
  ShaGroup sha;    // Sha^2_omega(T^)
  ShaGroup sha_p;  // kernel of j_P* on it
  bool target_computed = false;
};

// Sha^2_omega(T^)_P = Ker[j_P*: Sha^2_omega(T^) -> H^2(G, T^ (x) Z_P)].
inline ShaP sha2_omega_P(const Subgroup& hk, const PData& p, const Budget& budget = {}) {
  ModulePtr t = t_hat(hk);
  ShaGroup s = sha_omega(t, 2, budget);
  if (s.is_trivial()) return {s, s, false};
  ModulePtr tp = tensor_with_ZP(t, p);
  ModuleMap jp = jp_map(t, p, tp);
  CohomologyGroup h2 = cohomology(tp, 2, budget);
  IntMatrix phi(h2.num_generators(), s.structure.invariants.size());
  for (std::size_t j = 0; j < s.reps.size(); ++j) {
    IntVector c = h2.coordinates(map_cochain(jp.matrix, s.reps[j], t->num_gens()));
    for (std::size_t i = 0; i < c.size(); ++i) phi(i, j) = c[i];
  }
  ShaGroup k = sha_subgroup_kernel(s, phi, h2.generator_orders());
  return {std::move(s), std::move(k), true};
}

// H^1(G, T^ (x) Z_P) / j_P* H^1(G, T^).
inline AbelianStructure h1_defect(const Subgroup& hk, const PData& p, const Budget& budget = {}) {
  ModulePtr t = t_hat(hk);
  ModulePtr tp = tensor_with_ZP(t, p);
  ModuleMap jp = jp_map(t, p, tp);
  CohomologyGroup src = cohomology(t, 1, budget);
  CohomologyGroup dst = cohomology(tp, 1, budget);
  IntMatrix phi = induced_map(jp, src, dst);
  return hom_cokernel(phi, dst.generator_orders()).structure();
}

}  // namespace normtorus

#endif  // NORMTORUS_SHA_HPP
