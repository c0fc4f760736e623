#ifndef NORMTORUS_INTEGER_HPP
#define NORMTORUS_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace normtorus {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer with an int64 fast path. big_ is set iff the value does not
// fit in 64 bits, so every value has one representation.
class Integer {
 public:
  Integer() noexcept = default;

  template <std::integral T>
  Integer(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_unsigned_v<T> && sizeof(T) >= sizeof(std::int64_t)) {
      if (v > static_cast<T>(std::numeric_limits<std::int64_t>::max())) {
        big_ = std::make_unique<BigInt>(v);
        return;
      }
    }
    small_ = static_cast<std::int64_t>(v);
  }

  explicit Integer(const BigInt& v) { assign(v); }

  Integer(const Integer& o)
      : small_(o.small_), big_(o.big_ ? std::make_unique<BigInt>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;

  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<BigInt>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && small_ == 1; }
  [[nodiscard]] bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }

  [[nodiscard]] int sign() const noexcept {
    if (big_) return big_->sign();
    return (small_ > 0) - (small_ < 0);
  }

  [[nodiscard]] BigInt to_big() const { return big_ ? *big_ : BigInt(small_); }

  [[nodiscard]] std::int64_t to_int64() const {
    if (big_) throw std::overflow_error("integer does not fit in 64 bits");
    return small_;
  }

  [[nodiscard]] std::string str() const { return big_ ? big_->str() : std::to_string(small_); }

  Integer& operator+=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
    } else {
      assign(to_big() + o.to_big());
    }
    return *this;
  }

  Integer& operator-=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
    } else {
      assign(to_big() - o.to_big());
    }
    return *this;
  }

  Integer& operator*=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
    } else {
      assign(to_big() * o.to_big());
    }
    return *this;
  }

  /// this -= q * b, the inner step of every elimination loop.
  void submul(const Integer& q, const Integer& b) {
    std::int64_t p, r;
    if (!big_ && !q.big_ && !b.big_ && !__builtin_mul_overflow(q.small_, b.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
    assign(to_big() - q.to_big() * b.to_big());
  }

  void addmul(const Integer& q, const Integer& b) {
    std::int64_t p, r;
    if (!big_ && !q.big_ && !b.big_ && !__builtin_mul_overflow(q.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
    assign(to_big() + q.to_big() * b.to_big());
  }

  void negate() {
    if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) {
      small_ = -small_;
    } else {
      assign(-to_big());
    }
  }

  friend Integer operator-(Integer a) {
    a.negate();
    return a;
  }
  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }

  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    const BigInt x = a.to_big();
    const BigInt y = b.to_big();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

  /// Quotient rounded toward negative infinity. Throws on division by zero.
  friend Integer floor_div(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_ &&
        !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
      std::int64_t q = a.small_ / b.small_;
      if ((a.small_ % b.small_ != 0) && ((a.small_ < 0) != (b.small_ < 0))) --q;
      return Integer(q);
    }
    const BigInt x = a.to_big();
    const BigInt y = b.to_big();
    BigInt q = x / y;
    if (q * y != x && ((x < 0) != (y < 0))) --q;
    return Integer(q);
  }

  /// Remainder with the sign of the divisor (non-negative for b > 0).
  friend Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r = a;
    r.submul(floor_div(a, b), b);
    return r;
  }

  /// Quotient rounded to the nearest integer, used to keep elimination entries small.
  friend Integer nearest_div(const Integer& a, const Integer& b) {
    Integer q = floor_div(a, b);
    Integer r = a;
    r.submul(q, b);
    Integer twice = r + r;
    Integer absb = b.sign() < 0 ? -b : b;
    if (b.sign() > 0 ? twice > absb : -twice > absb) q += Integer(1);
    return q;
  }

  friend Integer abs(Integer a) {
    if (a.sign() < 0) a.negate();
    return a;
  }

  friend Integer gcd(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) {
      // unsigned arithmetic handles INT64_MIN
      auto x = static_cast<std::uint64_t>(a.small_ < 0 ? -static_cast<__int128>(a.small_) : a.small_);
      auto y = static_cast<std::uint64_t>(b.small_ < 0 ? -static_cast<__int128>(b.small_) : b.small_);
      while (y != 0) {
        const std::uint64_t t = x % y;
        x = y;
        y = t;
      }
      return Integer(x);
    }
    return Integer(boost::multiprecision::gcd(a.to_big(), b.to_big()));
  }

  friend Integer lcm(const Integer& a, const Integer& b) {
    if (a.is_zero() || b.is_zero()) return Integer(0);
    return abs(floor_div(a, gcd(a, b)) * b);
  }

  friend bool divides(const Integer& d, const Integer& a) {
    if (d.is_zero()) return a.is_zero();
    return floor_mod(a, d).is_zero();
  }

 private:
  void assign(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
      small_ = static_cast<std::int64_t>(v);
      big_.reset();
    } else {
      small_ = 0;
      if (big_) {
        *big_ = v;
      } else {
        big_ = std::make_unique<BigInt>(v);
      }
    }
  }

  std::int64_t small_ = 0;
  std::unique_ptr<BigInt> big_;
};

}  // namespace normtorus

#endif  // NORMTORUS_INTEGER_HPP
