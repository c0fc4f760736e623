#ifndef NORMTORUS_HILBERT_HPP
#define NORMTORUS_HILBERT_HPP

#include "normtorus/error.hpp"
#include "normtorus/integer.hpp"

#include <fmt/format.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace normtorus {

inline constexpr long long kMaxHilbertMagnitude = 1'000'000'000'000LL;

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long n, long long d = 1) {
    if (d == 0) throw ValidationError("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
  }

  [[nodiscard]] bool is_zero() const noexcept { return num == 0; }
  [[nodiscard]] std::string str() const { return den == 1 ? std::to_string(num) : fmt::format("{}/{}", num, den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// The real place is p = 0.
struct Place {
  std::uint64_t p = 0;

  static Place real() { return {0}; }
  static Place prime(std::uint64_t q) { return {q}; }
  [[nodiscard]] bool is_real() const noexcept { return p == 0; }
  [[nodiscard]] std::string str() const { return is_real() ? "inf" : std::to_string(p); }
  friend auto operator<=>(const Place&, const Place&) = default;
};

namespace detail {

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// deterministic for n < 3.3e24 with these bases
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t magnitude(long long x) {
  const std::uint64_t m = x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1 : static_cast<std::uint64_t>(x);
  if (m > static_cast<std::uint64_t>(kMaxHilbertMagnitude))
    throw UnsupportedMagnitude(fmt::format("{} exceeds the factorization limit 1e12", x));
  return m;
}

// Legendre symbol (u/p) for p an odd prime not dividing u.
inline int legendre(long long u, std::uint64_t p) {
  const long long r = ((u % static_cast<long long>(p)) + static_cast<long long>(p)) % static_cast<long long>(p);
  return powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

// x = p^v * u with p not dividing u
inline unsigned split_valuation(long long& x, std::uint64_t p) {
  unsigned v = 0;
  while (x % static_cast<long long>(p) == 0) {
    x /= static_cast<long long>(p);
    ++v;
  }
  return v;
}

inline int hilbert_integers(long long a, long long b, Place v) {
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const std::uint64_t p = v.p;
  const unsigned al = split_valuation(a, p);
  const unsigned be = split_valuation(b, p);
  if (p == 2) {
    auto eps = [](long long u) { return static_cast<unsigned>(((u % 4) + 4) % 4 == 3); };
    auto omega = [](long long u) {
      const long long r = ((u % 8) + 8) % 8;
      return static_cast<unsigned>(r == 3 || r == 5);
    };
    const unsigned e = eps(a) * eps(b) + al * omega(b) + be * omega(a);
    return e % 2 ? -1 : 1;
  }
  int s = ((al * be) % 2 == 1 && p % 4 == 3) ? -1 : 1;
  if (be % 2) s *= legendre(a, p);
  if (al % 2) s *= legendre(b, p);
  return s;
}

}  // namespace detail

// Distinct prime factors, trial division with a primality shortcut on the cofactor.
inline std::vector<std::uint64_t> prime_factors(long long x) {
  std::uint64_t n = detail::magnitude(x);
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (detail::is_prime(n)) break;
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a.is_zero() || b.is_zero()) throw ZeroArgument("Hilbert symbol of zero");
  if (!v.is_real() && !detail::is_prime(v.p)) throw ValidationError(fmt::format("{} is not prime", v.p));
  detail::magnitude(a.num);
  detail::magnitude(a.den);
  detail::magnitude(b.num);
  detail::magnitude(b.den);
  // a = a.num * a.den modulo squares; use bimultiplicativity to stay in 64 bits
  return detail::hilbert_integers(a.num, b.num, v) * detail::hilbert_integers(a.num, b.den, v) *
         detail::hilbert_integers(a.den, b.num, v) * detail::hilbert_integers(a.den, b.den, v);
}

struct QuaternionClass {
  Rational a;
  Rational b;
};

struct LocalInvariant {
  bool half = false;
  [[nodiscard]] std::string str() const { return half ? "1/2" : "0"; }
  friend bool operator==(const LocalInvariant&, const LocalInvariant&) = default;
};

inline LocalInvariant local_invariant(const QuaternionClass& q, Place v) { return {hilbert_symbol(q.a, q.b, v) == -1}; }

// Places where (a, b) can be ramified: inf, 2 and the primes in a and b.
inline std::set<Place> bad_places(const std::vector<Rational>& xs) {
  std::set<Place> out{Place::real(), Place::prime(2)};
  for (const auto& x : xs)
    for (long long part : {x.num, x.den})
      for (auto q : prime_factors(part)) out.insert(Place::prime(q));
  return out;
}

inline std::map<Place, LocalInvariant> invariant_profile(const QuaternionClass& q) {
  if (q.a.is_zero() || q.b.is_zero()) throw ZeroArgument("quaternion class with a zero entry");
  std::map<Place, LocalInvariant> out;
  unsigned halves = 0;
  for (Place v : bad_places({q.a, q.b})) {
    out[v] = local_invariant(q, v);
    halves += out[v].half;
  }
  if (halves % 2) throw ReciprocityViolation(fmt::format("local invariants of ({}, {}) do not sum to 0", q.a.str(), q.b.str()));
  return out;
}

// Square classes of Q_v^*: real {1, -1}; odd p {1, u, p, up}; p = 2 {+-1, +-2, +-5, +-10}.
inline std::vector<long long> square_class_reps(Place v) {
  if (v.is_real()) return {1, -1};
  if (v.p == 2) return {1, -1, 2, -2, 5, -5, 10, -10};
  long long u = 2;
  while (detail::legendre(u, v.p) == 1) ++u;
  const long long p = static_cast<long long>(v.p);
  return {1, u, p, u * p};
}

// Bit code of the square class of x in Q_v^*/(Q_v^*)^2; products are XOR.
inline unsigned square_class_code(const Rational& x, Place v) {
  if (x.is_zero()) throw ZeroArgument("square class of zero");
  if (v.is_real()) return x.num < 0 ? 1u : 0u;
  auto code_int = [&](long long n) -> unsigned {
    const unsigned val = detail::split_valuation(n, v.p);
    if (v.p == 2) {
      const long long r = ((n % 8) + 8) % 8;  // unit = (-1)^s 5^t
      const unsigned s = (r == 3 || r == 7) ? 1u : 0u;
      const unsigned t = (r == 3 || r == 5) ? 1u : 0u;
      return (val % 2) | (s << 1) | (t << 2);
    }
    return (val % 2) | (detail::legendre(n, v.p) == -1 ? 2u : 0u);
  };
  return code_int(x.num) ^ code_int(x.den);
}

// Is c in N_a N_b N_ab inside the local square-class group?
inline bool multinorm_local_solvable(const Rational& a, const Rational& b, const Rational& c, Place v) {
  if (a.is_zero() || b.is_zero() || c.is_zero()) throw ZeroArgument("multinorm with a zero argument");
  const auto reps = square_class_reps(v);
  std::set<unsigned> reachable{0};
  for (const Rational* f : {&a, &b}) {
    std::set<unsigned> next;
    for (long long r : reps)
      if (hilbert_symbol(*f, Rational::of(r), v) == 1)
        for (unsigned s : reachable) next.insert(s ^ square_class_code(Rational::of(r), v));
    reachable = std::move(next);
  }
  // N_ab: classes r with (a, r)(b, r) = 1
  std::set<unsigned> next;
  for (long long r : reps)
    if (hilbert_symbol(a, Rational::of(r), v) * hilbert_symbol(b, Rational::of(r), v) == 1)
      for (unsigned s : reachable) next.insert(s ^ square_class_code(Rational::of(r), v));
  return next.count(square_class_code(c, v)) > 0;
}

struct Polynomial {
  std::vector<long long> coeffs;  // ascending degree

  [[nodiscard]] Rational eval(const Rational& t) const {
    // sum c_i n^i d^(deg - i) / d^deg
    const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    Integer num(0), den(1), n(t.num), d(t.den);
    for (std::size_t i = 0; i < deg; ++i) den *= d;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Integer term(coeffs[i]);
      for (std::size_t j = 0; j < i; ++j) term *= n;
      for (std::size_t j = i; j < deg; ++j) term *= d;
      num += term;
    }
    const Integer g = gcd(num, den);
    if (!g.is_zero() && !g.is_unit()) {
      num = floor_div(num, g);
      den = floor_div(den, g);
    }
    auto small = [](const Integer& x) {
      if (!x.is_small() || abs(x) > Integer(kMaxHilbertMagnitude))
        throw UnsupportedMagnitude(fmt::format("polynomial value {} exceeds 1e12", x.str()));
      return x.to_int64();
    };
    return Rational::of(small(num), small(den));
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] == 0) continue;
      const long long c = coeffs[i];
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const long long m = c < 0 ? -c : c;
      if (i == 0 || m != 1) out += std::to_string(m);
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }
};

struct FiberReport {
  Rational lambda;
  Rational value;  // P(lambda)
  std::vector<std::pair<Place, bool>> local;
  std::vector<std::map<Place, LocalInvariant>> profiles;  // (p_i(lambda), b) per factor
  bool everywhere_locally_solvable = true;
};

struct FiberScan {
  std::vector<FiberReport> fibers;
  std::vector<Rational> skipped;  // P(lambda) = 0
};

// (x1^2 - a x2^2)(y1^2 - b y2^2)(z1^2 - ab z2^2) = P(lambda), P the product of the factors.
inline FiberScan fiber_scan(const Rational& a, const Rational& b, const std::vector<Polynomial>& factors,
                            const std::vector<Rational>& lambdas) {
  if (a.is_zero() || b.is_zero()) throw ZeroArgument("fiber scan with a = 0 or b = 0");
  FiberScan out;
  for (const auto& t : lambdas) {
    std::vector<Rational> values;
    bool zero = false;
    for (const auto& f : factors) {
      values.push_back(f.eval(t));
      zero = zero || values.back().is_zero();
    }
    if (zero) {
      out.skipped.push_back(t);
      continue;
    }
    FiberReport r{t, Rational::of(1), {}, {}, true};
    Integer num(1), den(1);
    for (const auto& v : values) {
      num *= Integer(v.num);
      den *= Integer(v.den);
    }
    const Integer g = gcd(num, den);
    if (!g.is_unit()) {
      num = floor_div(num, g);
      den = floor_div(den, g);
    }
    if (!num.is_small() || abs(num) > Integer(kMaxHilbertMagnitude) || !den.is_small() ||
        abs(den) > Integer(kMaxHilbertMagnitude))
      throw UnsupportedMagnitude(fmt::format("P({}) exceeds 1e12", t.str()));
    r.value = Rational::of(num.to_int64(), den.to_int64());
    std::vector<Rational> all{a, b, r.value};
    for (Place v : bad_places(all)) {
      const bool ok = multinorm_local_solvable(a, b, r.value, v);
      r.local.emplace_back(v, ok);
      r.everywhere_locally_solvable = r.everywhere_locally_solvable && ok;
    }
    for (const auto& v : values) r.profiles.push_back(invariant_profile({v, b}));
    out.fibers.push_back(std::move(r));
  }
  return out;
}

}  // namespace normtorus

#endif  // NORMTORUS_HILBERT_HPP
