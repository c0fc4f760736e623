#ifndef NORMTORUS_SCENARIO_IO_HPP
#define NORMTORUS_SCENARIO_IO_HPP

// Scenario files, format version 1. Grammar in docs/scenario-format.md.

#include "normtorus/chs.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace normtorus {

inline constexpr int kScenarioFormatVersion = 1;

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::optional<unsigned long> parse_uint(std::string_view s) {
  unsigned long v = 0;
  if (s.empty()) return std::nullopt;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

class ElementReader {
 public:
  ElementReader(const GroupPtr& g, const GroupSpec& spec) : g_(g), spec_(spec) {}

  Elem read(const std::string& tok, std::size_t line) const {
    if (spec_.factors.empty()) {
      auto v = parse_uint(tok);
      if (!v || *v >= g_->order()) throw ParseError(line, fmt::format("'{}' is not an element index below {}", tok, g_->order()));
      return static_cast<Elem>(*v);
    }
    std::vector<std::string> parts;
    if (spec_.factors.size() == 1) {
      parts.push_back(tok);
    } else {
      if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
        throw ParseError(line, fmt::format("'{}': expected a tuple like (1,0) with {} coordinates", tok, spec_.factors.size()));
      std::string body = tok.substr(1, tok.size() - 2);
      std::size_t start = 0;
      for (;;) {
        std::size_t comma = body.find(',', start);
        parts.push_back(body.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (parts.size() != spec_.factors.size())
        throw ParseError(line, fmt::format("'{}' has {} coordinates, the group has {} factors", tok, parts.size(), spec_.factors.size()));
    }
    std::size_t x = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto& f = spec_.factors[k];
      std::size_t size = 0, c = 0;
      if (f.kind == GroupFactor::Kind::Cyclic) {
        size = f.n;
        auto v = parse_uint(parts[k]);
        if (!v || *v >= f.n) throw ParseError(line, fmt::format("coordinate '{}' is not a residue mod {}", parts[k], f.n));
        c = *v;
      } else {
        c = permutation_rank(parts[k], f.n, line);
        size = 1;
        for (unsigned i = 2; i <= f.n; ++i) size *= i;
      }
      x = x * size + c;
    }
    return static_cast<Elem>(x);
  }

 private:
  // one-line notation, e.g. 231 for 1->2, 2->3, 3->1; rank in lexicographic order
  static std::size_t permutation_rank(const std::string& s, unsigned n, std::size_t line) {
    if (s.size() != n) throw ParseError(line, fmt::format("'{}' is not a permutation of 1..{} in one-line notation", s, n));
    std::vector<unsigned> p;
    for (char ch : s) {
      const unsigned d = static_cast<unsigned>(ch - '0');
      if (ch < '1' || d > n || std::find(p.begin(), p.end(), d) != p.end())
        throw ParseError(line, fmt::format("'{}' is not a permutation of 1..{} in one-line notation", s, n));
      p.push_back(d);
    }
    std::size_t rank = 0;
    for (unsigned i = 0; i < n; ++i) {
      std::size_t smaller = 0;
      for (unsigned j = i + 1; j < n; ++j) smaller += p[j] < p[i];
      std::size_t f = 1;
      for (unsigned k = 2; k < n - i; ++k) f *= k;
      rank += smaller * f;
    }
    return rank;
  }

  GroupPtr g_;
  GroupSpec spec_;
};

}  // namespace detail

inline Scenario parse_scenario(const std::string& text, std::size_t max_group_order = kMaxGroupOrder) {
  struct Pending {
    std::size_t line;
    std::vector<std::string> toks;
  };
  std::optional<int> version;
  std::optional<std::string> id;
  std::optional<GroupSpec> spec;
  std::size_t group_line = 0, table_size = 0;
  std::vector<std::vector<Elem>> rows;
  std::optional<Pending> hk_decl;
  std::vector<std::pair<Pending, unsigned>> factor_decls;
  std::map<std::string, std::string> annotations;

  std::istringstream in(text);
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto toks = detail::split_ws(raw);
    if (toks.empty()) continue;
    const std::string key = toks[0];
    toks.erase(toks.begin());
    if (!version && key != "version") throw ParseError(ln, "the first statement must be 'version'");
    if (key == "version") {
      if (version) throw ParseError(ln, "duplicate 'version'");
      if (toks.size() != 1 || toks[0] != std::to_string(kScenarioFormatVersion))
        throw ParseError(ln, fmt::format("unsupported version, expected 'version {}'", kScenarioFormatVersion));
      version = kScenarioFormatVersion;
    } else if (key == "id") {
      if (id) throw ParseError(ln, "duplicate 'id'");
      if (toks.size() != 1) throw ParseError(ln, "'id' takes one name");
      id = toks[0];
    } else if (key == "group") {
      if (spec) throw ParseError(ln, "duplicate 'group'");
      if (toks.empty()) throw ParseError(ln, "'group' needs factors such as Z3 S3, or 'table <n>'");
      GroupSpec s;
      if (toks[0] == "table") {
        auto n = toks.size() == 2 ? detail::parse_uint(toks[1]) : std::nullopt;
        if (!n || *n == 0) throw ParseError(ln, "'group table' needs a positive order");
        if (*n > max_group_order) throw ComplexityLimitExceeded(fmt::format("group order {} exceeds limit {}", *n, max_group_order));
        table_size = *n;
      } else {
        for (const auto& t : toks) {
          const unsigned long n = detail::parse_uint(std::string_view(t).substr(1)).value_or(0);
          if ((t[0] != 'Z' && t[0] != 'S') || n == 0 || n > max_group_order)
            throw ParseError(ln, fmt::format("bad group factor '{}', expected Z<n> or S<n>", t));
          s.factors.push_back({t[0] == 'Z' ? GroupFactor::Kind::Cyclic : GroupFactor::Kind::Symmetric, static_cast<unsigned>(n)});
        }
      }
      spec = s;
      group_line = ln;
    } else if (key == "row") {
      if (!spec || table_size == 0) throw ParseError(ln, "'row' outside a 'group table' block");
      if (rows.size() == table_size) throw ParseError(ln, "too many table rows");
      if (toks.size() != table_size) throw ParseError(ln, fmt::format("row has {} entries, expected {}", toks.size(), table_size));
      std::vector<Elem> r;
      for (const auto& t : toks) {
        auto v = detail::parse_uint(t);
        if (!v || *v >= table_size) throw ParseError(ln, fmt::format("table entry '{}' out of range", t));
        r.push_back(static_cast<Elem>(*v));
      }
      rows.push_back(std::move(r));
    } else if (key == "subgroup_K") {
      if (hk_decl) throw ParseError(ln, "duplicate 'subgroup_K'");
      hk_decl = Pending{ln, toks};
    } else if (key == "factor") {
      auto e = toks.empty() ? std::nullopt : detail::parse_uint(toks[0]);
      if (!e) throw ParseError(ln, "'factor' starts with a multiplicity");
      toks.erase(toks.begin());
      factor_decls.push_back({Pending{ln, toks}, static_cast<unsigned>(*e)});
    } else if (key == "annotation") {
      if (toks.size() < 2) throw ParseError(ln, "'annotation' takes a key and text");
      std::string value;
      for (std::size_t i = 1; i < toks.size(); ++i) value += (i > 1 ? " " : "") + toks[i];
      if (!annotations.emplace(toks[0], value).second) throw ParseError(ln, fmt::format("duplicate annotation '{}'", toks[0]));
    } else {
      throw ParseError(ln, fmt::format("unknown key '{}'", key));
    }
  }
  if (!version) throw ParseError(ln, "missing 'version'");
  if (!id) throw ParseError(ln, "missing 'id'");
  if (!spec) throw ParseError(ln, "missing 'group'");
  if (!hk_decl) throw ParseError(ln, "missing 'subgroup_K'");
  if (factor_decls.empty()) throw ParseError(ln, "at least one 'factor' is required");
  if (table_size != 0) {
    if (rows.size() != table_size) throw ParseError(ln, fmt::format("group table has {} rows, expected {}", rows.size(), table_size));
    spec->table = rows;
  }

  GroupPtr g;
  try {
    g = build_group(*spec, max_group_order);
  } catch (const ComplexityLimitExceeded&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(group_line, e.what());
  }
  detail::ElementReader reader(g, *spec);
  std::vector<std::string> notices;
  auto subgroup = [&](const Pending& p, const std::string& what) {
    if (p.toks.size() == 1 && p.toks[0] == "whole") return whole_group(g);
    std::set<Elem> listed{g->identity()};
    std::vector<Elem> gens;
    for (const auto& t : p.toks) {
      gens.push_back(reader.read(t, p.line));
      listed.insert(gens.back());
    }
    Subgroup h = subgroup_closure(g, gens);
    if (h.order() != listed.size())
      notices.push_back(fmt::format("line {}: {} generators closed to a subgroup of order {}", p.line, what, h.order()));
    return h;
  };
  Scenario s{*id, g, subgroup(*hk_decl, "subgroup_K"), {}, std::move(annotations), {}};
  for (std::size_t i = 0; i < factor_decls.size(); ++i) {
    const auto& [p, e] = factor_decls[i];
    if (e < 1) throw ValidationError(fmt::format("line {}: factor multiplicity must be at least 1", p.line));
    s.factors.push_back({subgroup(p, fmt::format("factor {}", i + 1)), e});
  }
  s.notices = std::move(notices);
  s.validate();
  return s;
}

struct LoadedScenario {
  Scenario scenario;
  std::string text;
  std::string path;
};

inline LoadedScenario load_scenario(const std::string& path, std::size_t max_group_order = kMaxGroupOrder) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError(fmt::format("cannot read scenario file '{}'", path));
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();
  return {parse_scenario(text, max_group_order), text, path};
}

}  // namespace normtorus

#endif  // NORMTORUS_SCENARIO_IO_HPP
