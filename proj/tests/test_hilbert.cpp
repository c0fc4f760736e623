#include "hilbert_oracle.hpp"
#include "normtorus/hilbert.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace normtorus;
using namespace normtorus::testing;

namespace {

const std::vector<std::uint64_t> kSmallPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

std::vector<Place> places() {
  std::vector<Place> out{Place::real()};
  for (auto p : kSmallPrimes) out.push_back(Place::prime(p));
  return out;
}

Rational q(long long n, long long d = 1) { return Rational::of(n, d); }

}  // namespace

TEST(HilbertSymbol, Examples) {
  for (Place v : places()) EXPECT_EQ(hilbert_symbol(q(1), q(7), v), 1);
  EXPECT_EQ(hilbert_symbol(q(-1), q(-1), Place::real()), -1);
  EXPECT_EQ(hilbert_symbol(q(3), q(2), Place::prime(3)), -1);
  EXPECT_EQ(brute_hilbert(3, 2, 3), -1);
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> pick(-200, 200);
  for (int t = 0; t < 40; ++t) {
    long long a = pick(rng);
    if (a == 0) continue;
    for (Place v : places()) EXPECT_EQ(hilbert_symbol(q(a), q(-a), v), 1) << a << " at " << v.str();
  }
  EXPECT_THROW(hilbert_symbol(q(0), q(2), Place::real()), ZeroArgument);
  EXPECT_THROW(hilbert_symbol(q(3), q(2), Place::prime(9)), ValidationError);
}

TEST(HilbertSymbol, RationalArguments) {
  // (a/d^2, b) = (a, b) and (a/d, b) = (ad, b)
  for (Place v : places()) {
    EXPECT_EQ(hilbert_symbol(q(3, 4), q(2), v), hilbert_symbol(q(3), q(2), v));
    EXPECT_EQ(hilbert_symbol(q(3, 5), q(-7, 2), v), hilbert_symbol(q(15), q(-14), v));
  }
}

TEST(HilbertSymbol, SymmetricAndBimultiplicative) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long long> pick(-500, 500);
  for (int t = 0; t < 300; ++t) {
    long long a = pick(rng), b = pick(rng), c = pick(rng);
    if (!a || !b || !c) continue;
    for (Place v : places()) {
      EXPECT_EQ(hilbert_symbol(q(a), q(b), v), hilbert_symbol(q(b), q(a), v));
      EXPECT_EQ(hilbert_symbol(q(a * c), q(b), v), hilbert_symbol(q(a), q(b), v) * hilbert_symbol(q(c), q(b), v));
    }
  }
}

TEST(HilbertSymbol, MatchesBruteForceSmallRange) {
  for (long long a = -12; a <= 12; ++a)
    for (long long b = -12; b <= 12; ++b) {
      if (!a || !b) continue;
      EXPECT_EQ(hilbert_symbol(q(a), q(b), Place::real()), brute_hilbert(a, b, 0));
      for (auto p : kSmallPrimes)
        ASSERT_EQ(hilbert_symbol(q(a), q(b), Place::prime(p)), brute_hilbert(a, b, static_cast<long long>(p)))
            << a << " " << b << " at " << p;
    }
}

TEST(LocalInvariant, Recoding) {
  EXPECT_EQ(local_invariant({q(1), q(5)}, Place::prime(5)).str(), "0");
  EXPECT_EQ(local_invariant({q(-1), q(-1)}, Place::real()).str(), "1/2");
  EXPECT_EQ(local_invariant({q(3), q(2)}, Place::prime(3)).str(), "1/2");
}

TEST(InvariantProfile, Examples) {
  for (const auto& [v, inv] : invariant_profile({q(1), q(-7)})) EXPECT_FALSE(inv.half) << v.str();
  auto prof = invariant_profile({q(-1), q(-1)});
  for (const auto& [v, inv] : prof) EXPECT_EQ(inv.half, v.is_real() || v.p == 2) << v.str();
  EXPECT_TRUE(prof.count(Place::real()));
  EXPECT_TRUE(prof.count(Place::prime(2)));
}

TEST(InvariantProfile, ReciprocityAndBruteForce) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long long> pick(-50, 50);
  for (int t = 0; t < 50;) {
    long long a = pick(rng), b = pick(rng);
    if (!a || !b) continue;
    ++t;
    auto prof = invariant_profile({q(a), q(b)});
    unsigned halves = 0;
    for (const auto& [v, inv] : prof) {
      halves += inv.half;
      EXPECT_EQ(inv.half, brute_hilbert(a, b, static_cast<long long>(v.p)) == -1);
    }
    EXPECT_EQ(halves % 2, 0u);
    // places outside the support really are unramified
    for (auto p : kSmallPrimes)
      if (!prof.count(Place::prime(p))) {
        EXPECT_EQ(brute_hilbert(a, b, static_cast<long long>(p)), 1);
      }
  }
}

TEST(PrimeFactors, Examples) {
  EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(prime_factors(-1), (std::vector<std::uint64_t>{}));
  EXPECT_EQ(prime_factors(999999999989LL), (std::vector<std::uint64_t>{999999999989ULL}));
  EXPECT_EQ(prime_factors(1000000000000LL), (std::vector<std::uint64_t>{2, 5}));
  EXPECT_THROW(prime_factors(1000000000001LL), UnsupportedMagnitude);
}

TEST(Multinorm, Examples) {
  for (Place v : places())
    for (long long c : {-3, 2, 5, 6, 7, 10})
      EXPECT_TRUE(multinorm_local_solvable(q(1), q(3), q(c), v));
  // c = x^2 - a y^2 with x = 2, y = 1, a = 3: c = 1; and with x = 1, y = 1: c = -2
  for (Place v : places()) EXPECT_TRUE(multinorm_local_solvable(q(3), q(5), q(-2), v));
  EXPECT_EQ(multinorm_local_solvable(q(3), q(5), q(2), Place::prime(7)), brute_multinorm(3, 5, 2, 7));
  EXPECT_THROW(multinorm_local_solvable(q(3), q(5), q(0), Place::prime(7)), ZeroArgument);
}

TEST(Multinorm, MatchesBruteForce) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<long long> pick(-30, 30);
  for (int t = 0; t < 200;) {
    long long a = pick(rng), b = pick(rng), c = pick(rng);
    if (!a || !b || !c) continue;
    ++t;
    for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL})
      EXPECT_EQ(multinorm_local_solvable(q(a), q(b), q(c), Place{static_cast<std::uint64_t>(p)}), brute_multinorm(a, b, c, p))
          << a << " " << b << " " << c << " at " << p;
  }
}

TEST(Multinorm, BruteForceNeverFindsALocalObstruction) {
  for (long long a : {-7, -3, -1, 2, 3, 6, 10})
    for (long long b : {-5, -2, 5, 7, 14})
      for (long long c : {-6, -1, 3, 11})
        for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL}) EXPECT_TRUE(brute_multinorm(a, b, c, p)) << a << b << c << p;
}

TEST(Multinorm, TrueWhenOneOfABAbIsASquare) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long long> pick(-60, 60);
  for (int t = 0; t < 400;) {
    long long a = pick(rng), b = pick(rng), c = pick(rng);
    if (!a || !b || !c) continue;
    ++t;
    for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
      if (!(is_local_square(a, p) || is_local_square(b, p) || is_local_square(a * b, p))) continue;
      EXPECT_TRUE(multinorm_local_solvable(q(a), q(b), q(c), Place{static_cast<std::uint64_t>(p)}));
    }
  }
}

TEST(FiberScan, Examples) {
  std::vector<Rational> lambdas;
  for (long long n = -6; n <= 6; ++n) lambdas.push_back(q(n));
  Polynomial p{{-2, 0, 1}};  // t^2 - 2
  FiberScan all = fiber_scan(q(1), q(3), {p}, lambdas);
  for (const auto& f : all.fibers) EXPECT_TRUE(f.everywhere_locally_solvable) << f.lambda.str();

  Polynomial t{{0, 1}};
  FiberScan one = fiber_scan(q(-1), q(-1), {t}, {q(-1)});
  ASSERT_EQ(one.fibers.size(), 1u);
  ASSERT_EQ(one.fibers[0].local.front().first, Place::real());
  // ab = 1: N_ab is everything
  EXPECT_TRUE(one.fibers[0].local.front().second);
  EXPECT_TRUE(one.fibers[0].everywhere_locally_solvable);

  FiberScan skip = fiber_scan(q(2), q(3), {t}, {q(0), q(1)});
  EXPECT_EQ(skip.skipped.size(), 1u);
  EXPECT_EQ(skip.fibers.size(), 1u);
}

TEST(FiberScan, StableUnderSquareRescaling) {
  Polynomial t{{0, 3}};  // 3t
  std::vector<Rational> base, scaled;
  for (long long n = 1; n <= 12; ++n) {
    base.push_back(q(n));
    base.push_back(q(-n, 5));
  }
  for (const auto& l : base) scaled.push_back(q(l.num * 49, l.den));
  FiberScan a = fiber_scan(q(-1), q(5), {t}, base);
  FiberScan b = fiber_scan(q(-1), q(5), {t}, scaled);
  ASSERT_EQ(a.fibers.size(), b.fibers.size());
  for (std::size_t i = 0; i < a.fibers.size(); ++i) {
    EXPECT_EQ(a.fibers[i].everywhere_locally_solvable, b.fibers[i].everywhere_locally_solvable);
    for (const auto& [v, ok] : a.fibers[i].local)
      for (const auto& [w, ok2] : b.fibers[i].local)
        if (v == w) {
          EXPECT_EQ(ok, ok2) << v.str();
        }
  }
}

TEST(Polynomial, EvalAndPrint) {
  Polynomial p{{-2, 0, 1}};
  EXPECT_EQ(p.eval(q(3)), q(7));
  EXPECT_EQ(p.eval(q(1, 2)), q(-7, 4));
  EXPECT_EQ(p.str(), "t^2 - 2");
  EXPECT_EQ((Polynomial{{0, -1}}).str(), "-t");
}
