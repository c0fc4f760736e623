#ifndef NORMTORUS_REPORT_HPP
#define NORMTORUS_REPORT_HPP

// Reports. The machine form is one "key value" pair per line between a schema
// header and "end"; keys carry no spaces, values no newlines. Commands emit keys
// in a fixed order, so equal inputs give equal bytes.

#include "normtorus/abelian.hpp"
#include "normtorus/chs.hpp"
#include "normtorus/citations.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace normtorus {

inline constexpr std::string_view kEngineVersion = "1.0.0";
inline constexpr std::string_view kReportSchema = "normtorus-report/1";

// "[2,4]" for finite groups, "[2,4];free=1" when there is a free part
inline std::string serialize(const AbelianStructure& a) {
  std::string s = a.factors_str();
  if (a.free_rank > 0) s += fmt::format(";free={}", a.free_rank);
  return s;
}

inline std::string display_of_serialized(const std::string& v) {
  if (v.empty() || v.front() != '[') return v;
  const auto close = v.find(']');
  if (close == std::string::npos) return v;
  AbelianStructure a;
  std::string body = v.substr(1, close - 1);
  std::size_t start = 0;
  while (!body.empty()) {
    const auto comma = body.find(',', start);
    a.invariants.emplace_back(std::stoll(body.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (auto f = v.find(";free=", close); f != std::string::npos) a.free_rank = std::stoul(v.substr(f + 6));
  return a.str();
}

struct Report {
  std::vector<std::pair<std::string, std::string>> fields;
  bool ok = true;  // false when a self-check failed; such reports are printed but not cached

  void add(std::string key, std::string value) {
    std::replace(value.begin(), value.end(), '\n', ' ');
    fields.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, const AbelianStructure& a) { add(std::move(key), serialize(a)); }
  void add_reason(const Reason& r) {
    add("reason", fmt::format("{} {} \"{}\"", r.id, r.holds ? "holds" : "fails", citation(r.cite)));
  }
  void add_verdict(const Verdict& v) {
    add("verdict.claim", std::string(claim_name(v.claim)));
    if (v.structure) add("verdict.structure", *v.structure);
    for (const auto& r : v.reasons) add_reason(r);
    for (const auto& c : v.checks) add("check", c);
  }

  [[nodiscard]] std::string machine() const {
    std::string out = fmt::format("schema {}\n", kReportSchema);
    for (const auto& [k, v] : fields) out += v.empty() ? k + "\n" : k + " " + v + "\n";
    return out + "end\n";
  }

  // metadata lines (cache state, timing) are passed separately and never enter the machine form
  [[nodiscard]] std::string human(const std::vector<std::string>& metadata = {}) const {
    std::size_t width = 0;
    for (const auto& [k, v] : fields) width = std::max(width, k.size());
    std::string out;
    for (const auto& [k, v] : fields) {
      std::string shown = display_of_serialized(v);
      if (shown != v) shown += "   " + v;
      out += fmt::format("{:<{}}  {}\n", k, width, shown);
    }
    for (const auto& m : metadata) out += "# " + m + "\n";
    return out;
  }

  static Report parse_machine(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != fmt::format("schema {}", kReportSchema))
      throw CorruptCacheEntry("missing or unknown report schema line");
    Report r;
    bool ended = false;
    while (std::getline(in, line)) {
      if (line == "end") {
        ended = true;
        break;
      }
      const auto sp = line.find(' ');
      if (sp == 0 || line.empty()) throw CorruptCacheEntry("malformed report line");
      r.fields.emplace_back(line.substr(0, sp), sp == std::string::npos ? "" : line.substr(sp + 1));
    }
    if (!ended) throw CorruptCacheEntry("report is truncated");
    if (std::string rest; std::getline(in, rest)) throw CorruptCacheEntry("trailing data after 'end'");
    return r;
  }

  [[nodiscard]] std::vector<std::string> values(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : fields)
      if (k == key) out.push_back(v);
    return out;
  }
  [[nodiscard]] std::string value(const std::string& key) const {
    auto v = values(key);
    return v.empty() ? std::string() : v.front();
  }
};

}  // namespace normtorus

#endif  // NORMTORUS_REPORT_HPP
