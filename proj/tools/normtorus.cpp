#include "normtorus/cache.hpp"
#include "normtorus/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#ifndef NORMTORUS_SCENARIO_DIR
#define NORMTORUS_SCENARIO_DIR "scenarios"
#endif

using namespace normtorus;

namespace {

struct Options {
  std::string scenario, cache_dir, machine_out, scenario_dir = NORMTORUS_SCENARIO_DIR;
  std::uint64_t budget_entries = Budget{}.max_entries;
  std::size_t budget_group_order = Budget{}.max_group_order;
  bool no_cache = false;
  // command parameters
  std::string n, d, cap = "4", a, b, c, place, range;
  std::vector<std::string> factors, lambdas;
};

int execute(const std::string& command, const Options& o) {
  Request q;
  q.command = command;
  q.budget.max_entries = o.budget_entries;
  q.budget.max_group_order = o.budget_group_order;
  const auto& sc = scenario_commands();
  const bool wants_scenario = std::find(sc.begin(), sc.end(), command) != sc.end();
  if (wants_scenario) {
    if (o.scenario.empty()) throw ValidationError(fmt::format("'{}' needs --scenario <path>", command));
    q.scenario = load_scenario(o.scenario, q.budget.max_group_order);
  } else if (!o.scenario.empty()) {
    throw ValidationError(fmt::format("'{}' does not take --scenario", command));
  }
  auto add = [&](const char* k, const std::string& v) {
    if (!v.empty()) q.params.emplace_back(k, v);
  };
  if (command == "prop-q1") {
    add("n", o.n);
    add("cap", o.cap);
  } else if (command == "brauer-split") {
    add("n", o.n);
    add("d", o.d);
  } else if (command == "hilbert" || command == "multinorm" || command == "fiber-scan") {
    add("a", o.a);
    add("b", o.b);
    if (command == "multinorm") add("c", o.c);
    if (command != "fiber-scan") add("place", o.place);
    for (const auto& f : o.factors) add("factor", f);
    for (const auto& l : o.lambdas) add("lambda", l);
    add("range", o.range);
  } else if (command == "selftest") {
    q.scenario_dir = o.scenario_dir;
  }

  std::string cache_dir = o.cache_dir;
  if (cache_dir.empty())
    if (const char* env = std::getenv(kCacheDirEnv)) cache_dir = env;
  const bool use_cache = !o.no_cache && !cache_dir.empty() && command != "selftest";

  const auto t0 = std::chrono::steady_clock::now();
  std::optional<Report> report;
  std::optional<ReportCache> cache;
  std::string key;
  bool cached = false;
  if (use_cache) {
    cache.emplace(cache_dir);
    key = ReportCache::key_for(q.canonical());
    report = cache->lookup(key);
    cached = report.has_value();
  }
  if (!report) {
    report = run(q);
    if (cache && report->ok) cache->store(key, *report);
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  const std::string machine = report->machine();
  if (o.machine_out == "-") {
    std::cout << machine;
  } else {
    std::vector<std::string> meta{fmt::format("cached: {}", cached ? "yes" : "no"), fmt::format("elapsed: {} ms", ms)};
    std::cout << report->human(meta);
    if (!o.machine_out.empty()) {
      std::ofstream f(o.machine_out, std::ios::binary | std::ios::trunc);
      f << machine;
      if (!f) throw ValidationError(fmt::format("cannot write '{}'", o.machine_out));
    }
  }
  return report->ok ? 0 : static_cast<int>(ErrorKind::Inconsistency);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normtorus: Galois-cohomological invariants of norm-form varieties N(x) = P(t), and Hilbert symbols over Q"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--scenario", o.scenario, "scenario file (version 1 format)");
  app.add_option("--budget-entries", o.budget_entries, "largest cochain matrix (entries) the bar resolution may build");
  app.add_option("--budget-group-order", o.budget_group_order, "largest group order accepted");
  app.add_option("--cache-dir", o.cache_dir, std::string("report cache directory (default: $") + kCacheDirEnv + ", unset = no cache)");
  app.add_option("--machine-out", o.machine_out, "write the machine report to this file ('-' prints it instead of the human form)");
  app.add_flag("--no-cache", o.no_cache, "neither read nor write the cache");

  std::map<std::string, CLI::App*> subs;
  subs["sha2-omega"] = app.add_subcommand("sha2-omega", "Sha^2_omega(G, T^)");
  subs["sha2-omega-p"] = app.add_subcommand("sha2-omega-p", "Sha^2_omega(T^) and its P-part");
  subs["h1-defect"] = app.add_subcommand("h1-defect", "H^1(T^ (x) Z_P) / j_P* H^1(T^)");
  subs["bs"] = app.add_subcommand("bs", "both ends and the middle order of the Brauer group sequence");
  subs["br1"] = app.add_subcommand("br1", "verdict from the linear disjointness condition <H_L, core(H_K)> = G");
  subs["equal-x"] = app.add_subcommand("equal-x", "group-theoretic conditions for Br(X) = Br(X^c)");
  auto* pq = subs["prop-q1"] = app.add_subcommand("prop-q1", "(Z/n)^2 example: computed Sha^2_omega(T^) and the refined value");
  pq->add_option("--n", o.n, "n >= 2")->required();
  pq->add_option("--cap", o.cap, "largest n attempted (default 4)");
  auto* bsp = subs["brauer-split"] = app.add_subcommand("brauer-split", "Sha^2_omega((Z/n)^2, Z/d) for n | d");
  bsp->add_option("--n", o.n)->required();
  bsp->add_option("--d", o.d)->required();
  auto* hs = subs["hilbert"] = app.add_subcommand("hilbert", "Hilbert symbol (a, b) at one place, or the invariant profile");
  auto* mn = subs["multinorm"] = app.add_subcommand("multinorm", "local solvability of (x1^2-a x2^2)(y1^2-b y2^2)(z1^2-ab z2^2) = c");
  auto* fs = subs["fiber-scan"] = app.add_subcommand("fiber-scan", "local data of the fibers t = lambda");
  for (auto* s : {hs, mn, fs}) {
    s->add_option("--a", o.a, "rational, e.g. -3 or 5/2")->required()->allow_extra_args(false);
    s->add_option("--b", o.b)->required();
  }
  hs->add_option("--place", o.place, "'inf' or a prime");
  mn->add_option("--c", o.c)->required();
  mn->add_option("--place", o.place, "'inf' or a prime; default: every place where a, b or c is not a unit");
  fs->add_option("--factor", o.factors, "irreducible factor of P as ascending coefficients c0,c1,...")->required();
  fs->add_option("--lambda", o.lambdas, "rational lambda (repeatable)");
  fs->add_option("--range", o.range, "integer lambdas lo..hi");
  auto* st = subs["selftest"] = app.add_subcommand("selftest", "run the built-in regression corpus");
  st->add_option("--scenario-dir", o.scenario_dir, "directory holding the scenario library");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::Input);
  }
  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;
  try {
    return execute(command, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::Inconsistency);
  }
}
