#ifndef NORMTORUS_COMMANDS_HPP
#define NORMTORUS_COMMANDS_HPP

// Command dispatch: a Request names a command, its parameters and optionally a
// scenario; run() turns it into a Report.

#include "normtorus/hash.hpp"
#include "normtorus/hilbert.hpp"
#include "normtorus/report.hpp"
#include "normtorus/scenario_io.hpp"

#include <filesystem>
#include <functional>

namespace normtorus {

struct Request {
  std::string command;
  std::optional<LoadedScenario> scenario;
  std::vector<std::pair<std::string, std::string>> params;  // in the order the command documents them
  Budget budget;
  std::string scenario_dir;  // selftest only

  [[nodiscard]] std::string param(const std::string& key, const std::string& fallback = "") const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return fallback;
  }
  [[nodiscard]] std::vector<std::string> all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : params)
      if (k == key) out.push_back(v);
    return out;
  }

  // everything the result depends on
  [[nodiscard]] std::string canonical() const {
    std::string s = "command " + command + "\n";
    for (const auto& [k, v] : params) s += "param " + k + " " + v + "\n";
    s += fmt::format("budget {} {}\n", budget.max_entries, budget.max_group_order);
    if (scenario) s += "scenario\n" + scenario->text;
    return s;
  }
};

inline const std::vector<std::string>& scenario_commands() {
  static const std::vector<std::string> c{"sha2-omega", "sha2-omega-p", "h1-defect", "bs", "br1", "equal-x"};
  return c;
}

inline const std::vector<std::string>& all_commands() {
  static const std::vector<std::string> c{"sha2-omega", "sha2-omega-p", "h1-defect", "bs",        "br1",      "equal-x",
                                          "prop-q1",    "brauer-split", "hilbert",   "multinorm", "fiber-scan", "selftest"};
  return c;
}

inline Rational parse_rational(const std::string& s) {
  auto num = [&](std::string_view t) {
    long long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || p != t.data() + t.size()) throw ValidationError(fmt::format("'{}' is not a rational number", s));
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational::of(num(s));
  const long long d = num(std::string_view(s).substr(slash + 1));
  if (d == 0) throw ValidationError(fmt::format("'{}' has a zero denominator", s));
  return Rational::of(num(std::string_view(s).substr(0, slash)), d);
}

inline Place parse_place(const std::string& s) {
  if (s == "inf" || s == "real" || s == "R") return Place::real();
  const auto v = detail::parse_uint(s);
  if (!v || !detail::is_prime(*v)) throw ValidationError(fmt::format("place '{}' is neither 'inf' nor a prime", s));
  return Place::prime(*v);
}

inline unsigned parse_positive(const std::string& key, const std::string& s) {
  const auto v = detail::parse_uint(s);
  if (!v || *v == 0 || *v > 1000) throw ValidationError(fmt::format("--{} expects a positive integer, got '{}'", key, s));
  return static_cast<unsigned>(*v);
}

// "c0,c1,...", ascending degree
inline Polynomial parse_polynomial(const std::string& s) {
  Polynomial p;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    const Rational c = parse_rational(s.substr(start, comma - start));
    if (c.den != 1) throw ValidationError(fmt::format("polynomial '{}' must have integer coefficients", s));
    p.coeffs.push_back(c.num);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
  if (p.coeffs.size() == 1 && p.coeffs[0] == 0) throw ValidationError("zero polynomial");
  return p;
}

namespace detail {

inline void header(Report& r, const Request& q) {
  r.add("engine", std::string(kEngineVersion));
  r.add("command", q.command);
  if (q.scenario) {
    const Scenario& s = q.scenario->scenario;
    r.add("scenario.id", s.id);
    r.add("scenario.hash", sha256_hex(q.scenario->text));
    r.add("scenario.group", fmt::format("{} order={}", s.group->label(), s.group->order()));
    r.add("scenario.subgroup_K", fmt::format("order={} {}", s.hk.order(), s.hk.str()));
    for (std::size_t i = 0; i < s.factors.size(); ++i)
      r.add("scenario.factor", fmt::format("{} e={} order={} {}", i + 1, s.factors[i].multiplicity, s.factors[i].subgroup.order(),
                                           s.factors[i].subgroup.str()));
    for (const auto& n : s.notices) r.add("scenario.notice", n);
    for (const auto& [k, v] : s.annotations) r.add("scenario.annotation", k + " " + v);
  }
  for (const auto& [k, v] : q.params) r.add("param." + k, v);
  r.add("budget.max-entries", std::to_string(q.budget.max_entries));
  r.add("budget.max-group-order", std::to_string(q.budget.max_group_order));
}

inline void cite(Report& r, Cite c) { r.add("cite", fmt::format("\"{}\"", citation(c))); }

inline void assumption_h3(Report& r) {
  r.add("assumption", "H^3(k, kbar*) = 0, so Br(X)/Br_vert(X) is identified with Sha^2_omega(T^)_P");
}

inline const Scenario& need_scenario(const Request& q) {
  if (!q.scenario) throw ValidationError(fmt::format("'{}' needs --scenario", q.command));
  return q.scenario->scenario;
}

inline bool is_cyclic_group(const GroupPtr& g) {
  for (Elem x = 0; x < g->order(); ++x)
    if (g->element_order(x) == g->order()) return true;
  return false;
}

inline void run_scenario_command(Report& r, const Request& q) {
  const Scenario& s = need_scenario(q);
  const Budget& b = q.budget;
  if (q.command == "sha2-omega") {
    r.add("result.sha2_omega", sha_omega(t_hat(s.hk), 2, b).structure);
    cite(r, Cite::ChsSequence);
  } else if (q.command == "sha2-omega-p") {
    ShaP sp = sha2_omega_P(s.hk, s.factors, b);
    r.add("result.sha2_omega", sp.sha.structure);
    r.add("result.sha2_omega_p", sp.sha_p.structure);
    if (!sp.target_computed) r.add("note", "Sha^2_omega(T^) is trivial, so its P-part is");
    assumption_h3(r);
    cite(r, Cite::ChsSequence);
  } else if (q.command == "h1-defect") {
    r.add("result.h1_defect", h1_defect(s.hk, s.factors, b));
    if (s.factors.size() == 1 && quotient_is_abelian(s.hk)) r.add_reason({"abel.a", true, Cite::AbelA});
    cite(r, Cite::ChsSequence);
  } else if (q.command == "bs") {
    BSReport bs = bs_sequence(s, b);
    r.add("result.left", bs.left);
    r.add("result.right", bs.right);
    r.add("result.middle_order", bs.middle_order.str());
    r.add("result.middle_structure", bs.middle_structure ? serialize(*bs.middle_structure) : std::string("unknown"));
    for (const auto& n : bs.notes) r.add("note", n);
    if (is_cyclic_group(s.group)) r.add_reason({"abel.d", bs.left.is_trivial() && bs.right.is_trivial(), Cite::AbelD});
    assumption_h3(r);
    cite(r, Cite::ChsSequence);
  } else if (q.command == "br1") {
    r.add_verdict(br1_verdict(s, b));
  } else if (q.command == "equal-x") {
    Verdict v = equal_x_conditions(s);
    r.add_verdict(v);
    if (v.claim == Claim::TwoTorsionBoundOnly) r.add("note", "only the 2-torsion bound on Br(X)/Br(X^c) applies; no further decision is attempted");
  }
}

inline void run_prop_q1(Report& r, const Request& q) {
  const unsigned n = parse_positive("n", q.param("n"));
  const unsigned cap = parse_positive("cap", q.param("cap", "4"));
  PropQ1 p = prop_q1(n, q.budget, cap);
  r.add("result.computed", p.computed);
  r.add("annotation.paper_refined", p.paper_refined);
  r.add("annotation.source", "valuation argument, not recomputed");
  Verdict v;
  v.claim = Claim::StructureKnown;
  v.structure = p.computed;
  v.reasons.push_back({"prop-q1.computed", true, Cite::PropQ1});
  const AbelianStructure k = kunneth_oracle(n, n, 3);
  if (k != p.computed) throw InternalInconsistency(fmt::format("Sha^2_omega(T^) = {} but H^3((Z/n)^2, Z) = {}", p.computed.str(), k.str()));
  v.checks.push_back(fmt::format("equals H^3((Z/{})^2, Z) = {}", n, k.str()));
  r.add_verdict(v);
}

inline void run_brauer_split(Report& r, const Request& q) {
  const unsigned n = parse_positive("n", q.param("n"));
  const unsigned d = parse_positive("d", q.param("d"));
  AbelianStructure a = brauer_split(n, d, q.budget);
  r.add("result.brauer_split", a);
  Verdict v;
  v.claim = Claim::StructureKnown;
  v.structure = a;
  v.reasons.push_back({"brauer-split.n-divides-d", true, Cite::BrauerSplit});
  if (n == d && detail::is_prime(n)) v.reasons.push_back({"q2.prime", true, Cite::CorQ2});
  r.add_verdict(v);
}

inline void run_hilbert(Report& r, const Request& q) {
  const Rational a = parse_rational(q.param("a")), b = parse_rational(q.param("b"));
  if (const std::string pl = q.param("place"); !pl.empty()) {
    const Place v = parse_place(pl);
    r.add("result.symbol", std::to_string(hilbert_symbol(a, b, v)));
    r.add("result.invariant", local_invariant({a, b}, v).str());
  } else {
    for (const auto& [v, inv] : invariant_profile({a, b})) r.add("result.invariant", v.str() + " " + inv.str());
    r.add_reason({"reciprocity", true, Cite::Reciprocity});
  }
  cite(r, Cite::Reciprocity);
}

inline void run_multinorm(Report& r, const Request& q) {
  const Rational a = parse_rational(q.param("a")), b = parse_rational(q.param("b")), c = parse_rational(q.param("c"));
  std::set<Place> places;
  if (const std::string pl = q.param("place"); !pl.empty())
    places.insert(parse_place(pl));
  else
    places = bad_places({a, b, c});
  bool all = true;
  for (Place v : places) {
    const bool ok = multinorm_local_solvable(a, b, c, v);
    all = all && ok;
    r.add("result.local", v.str() + (ok ? " solvable" : " not-solvable"));
  }
  r.add("result.all_listed_places", all ? "solvable" : "not-solvable");
  cite(r, Cite::Rational2);
}

inline void run_fiber_scan(Report& r, const Request& q) {
  const Rational a = parse_rational(q.param("a")), b = parse_rational(q.param("b"));
  std::vector<Polynomial> factors;
  for (const auto& f : q.all("factor")) factors.push_back(parse_polynomial(f));
  if (factors.empty()) throw ValidationError("fiber-scan needs at least one --factor");
  std::vector<Rational> lambdas;
  for (const auto& l : q.all("lambda")) lambdas.push_back(parse_rational(l));
  if (const std::string range = q.param("range"); !range.empty()) {
    const auto dots = range.find("..");
    if (dots == std::string::npos) throw ValidationError(fmt::format("range '{}' must look like lo..hi", range));
    const Rational lo = parse_rational(range.substr(0, dots)), hi = parse_rational(range.substr(dots + 2));
    if (lo.den != 1 || hi.den != 1 || hi.num < lo.num || hi.num - lo.num > 10000)
      throw ValidationError(fmt::format("range '{}' must be an integer range of at most 10000 steps", range));
    for (long long t = lo.num; t <= hi.num; ++t) lambdas.push_back(Rational::of(t));
  }
  if (lambdas.empty()) throw ValidationError("fiber-scan needs --lambda values or --range");
  FiberScan scan = fiber_scan(a, b, factors, lambdas);
  for (const auto& f : scan.fibers) {
    const std::string l = f.lambda.str();
    r.add("fiber", fmt::format("{} P={} els={}", l, f.value.str(), f.everywhere_locally_solvable ? "yes" : "no"));
    for (const auto& [v, ok] : f.local) r.add("fiber.local", fmt::format("{} {} {}", l, v.str(), ok ? "yes" : "no"));
    for (std::size_t i = 0; i < f.profiles.size(); ++i) {
      std::string prof;
      for (const auto& [v, inv] : f.profiles[i])
        if (inv.half) prof += (prof.empty() ? "" : " ") + v.str() + "=1/2";
      r.add("fiber.profile", fmt::format("{} factor{} {}", l, i + 1, prof.empty() ? "all-0" : prof));
    }
  }
  for (const auto& s : scan.skipped) r.add("skipped", s.str() + " P=0");
  r.add("note", "local data only; no global existence claim");
  cite(r, Cite::Rational2);
}

}  // namespace detail

// The fixed regression corpus; scenario files come from dir.
inline void run_selftest(Report& r, const std::string& dir, const Budget& budget) {
  unsigned passed = 0, failed = 0;
  auto check = [&](const std::string& id, const std::string& expected, const std::function<std::string()>& got, Cite c) {
    std::string value;
    try {
      value = got();
    } catch (const Error& e) {
      value = std::string("error ") + e.name();
    }
    const bool ok = value == expected;
    (ok ? passed : failed)++;
    r.add("check", fmt::format("{} {} expected={} got={} \"{}\"", id, ok ? "PASS" : "FAIL", expected, value, citation(c)));
  };
  auto scen = [&](const std::string& name) { return load_scenario((std::filesystem::path(dir) / (name + ".scn")).string(), budget.max_group_order).scenario; };
  auto group = [](std::initializer_list<unsigned> ns) { return build_group(GroupSpec::cyclic_product(ns)); };

  for (unsigned p : {2u, 3u, 5u}) {
    check(fmt::format("p-finite.{}", p), p == 2 ? "[]" : fmt::format("[{}]", p),
          [&] { return serialize(sha_omega(trivial_module(group({p, p}), Integer(p)), 2, budget).structure); }, Cite::PFinite);
  }
  for (unsigned n : {2u, 3u}) {
    check(fmt::format("prop-q1.computed.{}", n), fmt::format("[{}]", n), [&] { return serialize(prop_q1(n, budget).computed); }, Cite::PropQ1);
    check(fmt::format("prop-q1.kunneth.{}", n), fmt::format("[{}]", n), [&] { return serialize(kunneth_oracle(n, n, 3)); }, Cite::PropQ1);
    check(fmt::format("prop-q1.refined.{}", n), n % 2 ? fmt::format("[{}]", n) : "[]", [&] { return serialize(prop_q1(n, budget).paper_refined); },
          Cite::PropQ1);
  }
  check("bs.prop-q1-n3", "[] [3]", [&] {
    BSReport b = bs_sequence(scen("prop-q1-n3"), budget);
    return serialize(b.left) + " " + serialize(b.right);
  }, Cite::ChsSequence);
  check("bs.cyclic-z4", "[] []", [&] {
    BSReport b = bs_sequence(scen("bs-cyclic-z4"), budget);
    return serialize(b.left) + " " + serialize(b.right);
  }, Cite::AbelD);
  for (const char* name : {"br1-product", "br1-split", "br1-s3xz2", "br1-z6"})
    check(fmt::format("br1.{}", name), "UnramifiedQuotientZero", [&] { return std::string(claim_name(br1_verdict(scen(name), budget).claim)); },
          Cite::Br1);
  check("remark.sha-p-nonzero", "nonzero", [&] {
    const Scenario s = scen("remark-z2cubed");
    return sha2_omega_P(s.hk, s.factors, budget).sha_p.is_trivial() ? std::string("zero") : std::string("nonzero");
  }, Cite::CompactOmegaRemark);
  check("remark.br1-inconclusive", "Inconclusive", [&] { return std::string(claim_name(br1_verdict(scen("remark-z2cubed"), budget).claim)); },
        Cite::Br1);
  for (const char* name : {"equal-x-z4", "equal-x-z2pow4", "equal-x-z6x6"})
    check(fmt::format("equal-x.{}", name), "EqualXGuaranteed", [&] { return std::string(claim_name(equal_x_conditions(scen(name)).claim)); },
          Cite::EqualX);
  check("equal-x.prop-q1-n2", "TwoTorsionBoundOnly", [&] { return std::string(claim_name(equal_x_conditions(scen("prop-q1-n2")).claim)); },
        Cite::EqualX);
  check("sha-t.cyclic-z6", "[]", [&] { return serialize(*sha_t_prime_verdict(scen("sha-t-cyclic-z6"), budget).structure); }, Cite::ShaT);
  check("brauer-split.2.2", "[]", [&] { return serialize(brauer_split(2, 2, budget)); }, Cite::CorQ2);
  check("brauer-split.3.3", "[3]", [&] { return serialize(brauer_split(3, 3, budget)); }, Cite::CorQ2);
  check("brauer-split.5.5", "[5]", [&] { return serialize(brauer_split(5, 5, budget)); }, Cite::PFinite);
  check("hilbert.1.7", "+1", [&] {
    for (Place v : bad_places({Rational::of(7)}))
      if (hilbert_symbol(Rational::of(1), Rational::of(7), v) != 1) return std::string("-1");
    return std::string("+1");
  }, Cite::Reciprocity);
  check("hilbert.-1.-1.inf", "-1", [&] { return std::to_string(hilbert_symbol(Rational::of(-1), Rational::of(-1), Place::real())); },
        Cite::Reciprocity);
  check("hilbert.3.2.3", "-1", [&] { return std::to_string(hilbert_symbol(Rational::of(3), Rational::of(2), Place::prime(3))); },
        Cite::Reciprocity);
  check("hilbert.profile.-1.-1", "inf,2", [&] {
    std::string s;
    for (const auto& [v, inv] : invariant_profile({Rational::of(-1), Rational::of(-1)}))
      if (inv.half) s += (s.empty() ? "" : ",") + v.str();
    return s;
  }, Cite::Reciprocity);
  r.add("summary", fmt::format("checks={} passed={} failed={}", passed + failed, passed, failed));
  r.ok = failed == 0;
}

// Builds the report; failures propagate as normtorus::Error.
inline Report run(const Request& q) {
  if (std::find(all_commands().begin(), all_commands().end(), q.command) == all_commands().end())
    throw ValidationError(fmt::format("unknown command '{}'", q.command));
  Report r;
  detail::header(r, q);
  if (std::find(scenario_commands().begin(), scenario_commands().end(), q.command) != scenario_commands().end())
    detail::run_scenario_command(r, q);
  else if (q.command == "prop-q1")
    detail::run_prop_q1(r, q);
  else if (q.command == "brauer-split")
    detail::run_brauer_split(r, q);
  else if (q.command == "hilbert")
    detail::run_hilbert(r, q);
  else if (q.command == "multinorm")
    detail::run_multinorm(r, q);
  else if (q.command == "fiber-scan")
    detail::run_fiber_scan(r, q);
  else if (q.command == "selftest")
    run_selftest(r, q.scenario_dir, q.budget);
  return r;
}

}  // namespace normtorus

#endif  // NORMTORUS_COMMANDS_HPP
