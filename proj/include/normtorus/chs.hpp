#ifndef NORMTORUS_CHS_HPP
#define NORMTORUS_CHS_HPP

#include "normtorus/citations.hpp"
#include "normtorus/sha.hpp"

#include <fmt/format.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace normtorus {

// Galois data of (K/k, P): G = Gal(E/k), H_K = Gal(E/K) and one (H_L, e) per
// irreducible factor of P.
struct Scenario {
  std::string id;
  GroupPtr group;
  Subgroup hk;
  PData factors;
  std::map<std::string, std::string> annotations;
  std::vector<std::string> notices;

  void validate() const {
    if (factors.empty()) throw ValidationError("scenario needs at least one factor");
    if (hk.parent() != group) throw ValidationError("H_K is not a subgroup of the scenario group");
    for (const auto& f : factors) {
      if (f.subgroup.parent() != group) throw ValidationError("factor subgroup of a different group");
      if (f.multiplicity < 1) throw ValidationError("factor multiplicity must be at least 1");
    }
  }
};

struct BSReport {
  AbelianStructure left;   // H^1(T^ (x) Z_P) / j_P* H^1(T^)
  AbelianStructure right;  // Sha^2_omega(T^)_P
  Integer middle_order;
  std::optional<AbelianStructure> middle_structure;
  std::vector<std::string> notes;
};

enum class Claim { UnramifiedQuotientZero, EqualXGuaranteed, TwoTorsionBoundOnly, StructureKnown, Inconclusive };

inline std::string_view claim_name(Claim c) {
  switch (c) {
    case Claim::UnramifiedQuotientZero: return "UnramifiedQuotientZero";
    case Claim::EqualXGuaranteed: return "EqualXGuaranteed";
    case Claim::TwoTorsionBoundOnly: return "TwoTorsionBoundOnly";
    case Claim::StructureKnown: return "StructureKnown";
    case Claim::Inconclusive: return "Inconclusive";
  }
  return "";
}

struct Reason {
  std::string id;
  bool holds;
  Cite cite;
};

struct Verdict {
  Claim claim = Claim::Inconclusive;
  std::optional<AbelianStructure> structure;
  std::vector<Reason> reasons;
  std::vector<std::string> checks;  // cross-validations that ran
};

inline bool quotient_is_abelian(const Subgroup& n) {
  return is_normal(n) && quotient_group(n).group->is_abelian();
}

inline BSReport bs_sequence(const Scenario& s, const Budget& budget = {}) {
  s.validate();
  BSReport r;
  r.left = h1_defect(s.hk, s.factors, budget);
  ShaP sp = sha2_omega_P(s.hk, s.factors, budget);
  r.right = sp.sha_p.structure;
  r.middle_order = r.left.torsion_order() * r.right.torsion_order();
  if (r.left.is_trivial()) {
    r.middle_structure = r.right;
  } else if (r.right.is_trivial()) {
    r.middle_structure = r.left;
  } else {
    r.notes.push_back("middle term: extension class not determined, order only");
  }
  if (s.factors.size() == 1 && quotient_is_abelian(s.hk)) {
    if (!r.left.is_trivial())
      throw InternalInconsistency(fmt::format("left end {} nonzero for abelian K/k and irreducible P", r.left.str()));
    r.notes.push_back(fmt::format("left end vanishes for abelian K/k with one factor [{}]", citation(Cite::AbelA)));
  }
  if (!sp.target_computed) r.notes.push_back("Sha^2_omega(T^) is trivial, so its P-part is");
  return r;
}

// L_i cap K^cl = k for some factor of multiplicity 1, i.e. <H_L, core(H_K)> = G.
// j_P restricted to factor i is e_i times restriction, so e_i = 1 is needed.
inline Verdict br1_verdict(const Scenario& s, const Budget& budget = {}) {
  s.validate();
  Verdict v;
  const Subgroup c = core(s.hk);
  bool any = false;
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    const bool disjoint = join(s.factors[i].subgroup, c).is_whole();
    const bool holds = disjoint && s.factors[i].multiplicity == 1;
    any = any || holds;
    v.reasons.push_back({fmt::format("br1.factor{}", i + 1), holds, Cite::Br1});
    if (disjoint && !holds) v.reasons.push_back({fmt::format("br1.factor{}.multiplicity-1", i + 1), false, Cite::Br1});
  }
  if (!any) {
    v.claim = Claim::Inconclusive;
    return v;
  }
  ShaP sp = sha2_omega_P(s.hk, s.factors, budget);
  if (!sp.sha_p.is_trivial())
    throw InternalInconsistency(fmt::format("join condition holds but Sha^2_omega(T^)_P = {}", sp.sha_p.structure.str()));
  v.checks.push_back("sha2_omega_P = 0");
  v.reasons.push_back({"sha-vanishing", true, Cite::LemmaSha});
  AbelianStructure left = h1_defect(s.hk, s.factors, budget);
  if (s.factors.size() == 1) {
    if (!left.is_trivial())
      throw InternalInconsistency(fmt::format("join condition holds but h1_defect = {}", left.str()));
    v.checks.push_back("h1_defect = 0");
    v.claim = Claim::UnramifiedQuotientZero;
    return v;
  }
  // several factors: only the Sha end is covered; the left end is whatever was computed
  v.checks.push_back(fmt::format("h1_defect = {}", left.str()));
  if (left.is_trivial()) {
    v.claim = Claim::UnramifiedQuotientZero;
  } else {
    v.claim = Claim::StructureKnown;
    v.structure = left;
  }
  return v;
}

// Sha^2_omega(T^'), which vanishes when K/k is cyclic or the join condition holds.
inline Verdict sha_t_prime_verdict(const Scenario& s, const Budget& budget = {}) {
  s.validate();
  Verdict v;
  const bool cyclic = is_normal(s.hk) && [&] {
    auto q = quotient_group(s.hk).group;
    return q->is_abelian() && abelian_invariants_of_group(*q).invariants.size() <= 1;
  }();
  // the vanishing statement is for N_L(x) N_K(y) = 1: one factor, multiplicity 1
  const bool one_field = s.factors.size() == 1 && s.factors[0].multiplicity == 1;
  const bool join_ok = join(s.factors[0].subgroup, core(s.hk)).is_whole();
  v.reasons.push_back({"sha-t.one-field", one_field, Cite::ShaT});
  v.reasons.push_back({"sha-t.cyclic", cyclic, Cite::ShaT});
  v.reasons.push_back({"sha-t.join", join_ok, Cite::ShaT});
  AbelianStructure sha = sha_omega(t_prime_hat(s.hk, s.factors), 2, budget).structure;
  v.checks.push_back(fmt::format("Sha^2_omega(T^') = {}", sha.str()));
  if (one_field && (cyclic || join_ok) && !sha.is_trivial())
    throw InternalInconsistency(fmt::format("Sha^2_omega(T^') = {} where it must vanish", sha.str()));
  v.claim = Claim::StructureKnown;
  v.structure = sha;
  return v;
}

struct EqualXMask {
  bool c1 = true, c2 = true, c3 = true, c4 = true, c5 = true;
};

inline unsigned two_adic(const Integer& n) {
  unsigned v = 0;
  Integer m = abs(n);
  if (m.is_zero()) return 0;
  while (floor_mod(m, Integer(2)).is_zero()) {
    m = floor_div(m, Integer(2));
    ++v;
  }
  return v;
}

// Group-theoretic hypotheses (b)(1)-(5); condition (4) is read as: the image of
// multiplication by 2^(s-1) on G/H_K has odd order.
inline Verdict equal_x_conditions(const Scenario& s, EqualXMask mask = {}) {
  s.validate();
  if (s.factors.size() != 1) throw HypothesisViolated("equal-X needs an irreducible P (one factor)");
  if (!is_normal(s.hk)) throw HypothesisViolated("equal-X needs K/k Galois (H_K normal)");
  auto q = quotient_group(s.hk).group;
  if (!q->is_abelian()) throw HypothesisViolated("equal-X needs K/k abelian");
  const auto& g = s.group;
  const Subgroup& hl = s.factors[0].subgroup;
  const AbelianStructure a = abelian_invariants_of_group(*q);
  unsigned even_factors = 0, e2 = 0;
  for (const auto& d : a.invariants) {
    const unsigned t = two_adic(d);
    if (t > 0) ++even_factors;
    e2 = std::max(e2, t);
  }
  const Subgroup j = join(hl, s.hk);
  const bool c1 = even_factors <= 1;
  const bool c2 = j.index() % 2 == 1;
  const bool c3 = (j.order() / hl.order()) % 2 == 0;
  const unsigned v = two_adic(Integer(static_cast<long long>(hl.index())));
  const bool c4 = v >= std::max(1u, e2 + 1);
  // largest elementary abelian 2-quotient of G in which H_L dies
  Subgroup n = join(join(normal_closure(hl), commutator_subgroup(g)), squares_subgroup(g));
  const bool c5 = n.index() >= 8;
  Verdict out;
  auto add = [&](bool enabled, const char* id, bool holds, Cite c) {
    if (enabled) out.reasons.push_back({id, holds, c});
  };
  add(mask.c1, "equal-x.1", c1, Cite::EqualXCond1);
  add(mask.c2, "equal-x.2", c2, Cite::EqualXCond2);
  add(mask.c3, "equal-x.3", c3, Cite::EqualXCond3);
  add(mask.c4, "equal-x.4", c4, Cite::EqualXCond4);
  add(mask.c5, "equal-x.5", c5, Cite::EqualXCond5);
  bool any = false;
  for (const auto& r : out.reasons) any = any || r.holds;
  out.claim = any ? Claim::EqualXGuaranteed : Claim::TwoTorsionBoundOnly;
  if (!any) out.reasons.push_back({"equal-x.a", true, Cite::EqualX});
  return out;
}

struct PropQ1 {
  AbelianStructure computed;
  AbelianStructure paper_refined;
};

inline PropQ1 prop_q1(unsigned n, const Budget& budget = {}, unsigned cap = 4) {
  if (n < 2) throw ValidationError("prop-q1 needs n >= 2");
  if (n > cap) throw ComplexityLimitExceeded(fmt::format("prop-q1 with n = {} exceeds the cap {}", n, cap));
  auto g = build_group(GroupSpec::cyclic_product({n, n}), budget.max_group_order);
  PropQ1 r;
  r.computed = sha_omega(t_hat(trivial_subgroup(g)), 2, budget).structure;
  r.paper_refined = structure_of_cyclic_sum({Integer(n % 2 ? n : n / 2)});
  return r;
}

// Sha^2_omega((Z/n)^2, Z/d) for n | d.
inline AbelianStructure brauer_split(unsigned n, unsigned d, const Budget& budget = {}) {
  if (n == 0 || d == 0 || d % n != 0) throw HypothesisViolated(fmt::format("brauer-split needs n | d, got n = {}, d = {}", n, d));
  auto g = build_group(GroupSpec::cyclic_product({n, n}), budget.max_group_order);
  return sha_omega(trivial_module(g, Integer(d)), 2, budget).structure;
}

}  // namespace normtorus

#endif  // NORMTORUS_CHS_HPP
