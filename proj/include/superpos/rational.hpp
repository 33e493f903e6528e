#pragma once

// Exact rational numbers.
//
// Values whose numerator and denominator fit in 63 bits are kept inline and
// combined through 128-bit intermediates; anything larger is promoted to a
// boost::multiprecision rational and demoted again as soon as it fits. The
// representation is canonical in both cases (denominator > 0, lowest terms),
// so equality is field-wise.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superpos {

using Integer = boost::multiprecision::cpp_int;

class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;

  Rational() noexcept = default;

  template <std::signed_integral T>
  Rational(T v) {  // NOLINT(google-explicit-constructor)
    if (static_cast<std::int64_t>(v) == kMin) {
      promote(Big(static_cast<std::int64_t>(v)));
    } else {
      num_ = static_cast<std::int64_t>(v);
    }
  }

  template <std::unsigned_integral T>
  Rational(T v) {  // NOLINT(google-explicit-constructor)
    if (static_cast<std::uint64_t>(v) > static_cast<std::uint64_t>(kMax)) {
      promote(Big(static_cast<std::uint64_t>(v)));
    } else {
      num_ = static_cast<std::int64_t>(v);
    }
  }

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(num, den);
  }

  explicit Rational(const Integer& v) { *this = from_big(Big(v)); }
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    // older Boost rejects a negative denominator here
    *this = from_big(den < 0 ? Big(-num, -den) : Big(num, den));
  }
  explicit Rational(const Big& v) { *this = from_big(v); }

  // Accepts "p" or "p/q" with an optional leading '-', q >= 1, no whitespace.
  static std::optional<Rational> parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '-') {
      negative = true;
      pos = 1;
    }
    const auto slash = text.find('/', pos);
    const auto num_text = text.substr(pos, slash == std::string_view::npos
                                               ? std::string_view::npos
                                               : slash - pos);
    if (!all_digits(num_text)) return std::nullopt;
    Integer num{std::string(num_text)};
    Integer den = 1;
    if (slash != std::string_view::npos) {
      const auto den_text = text.substr(slash + 1);
      if (!all_digits(den_text) || den_text[0] == '0') return std::nullopt;
      den = Integer(std::string(den_text));
    }
    if (negative) num = -num;
    return Rational(num, den);
  }

  [[nodiscard]] bool is_big() const noexcept { return big_ != nullptr; }
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const noexcept { return !big_ && den_ == 1; }

  [[nodiscard]] int sign() const noexcept {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
  }

  [[nodiscard]] Integer numerator() const {
    return big_ ? Integer(boost::multiprecision::numerator(*big_)) : Integer(num_);
  }
  [[nodiscard]] Integer denominator() const {
    return big_ ? Integer(boost::multiprecision::denominator(*big_)) : Integer(den_);
  }

  // Raw fields of an inline value; meaningless when is_big().
  [[nodiscard]] std::int64_t inline_numerator() const noexcept { return num_; }
  [[nodiscard]] std::int64_t inline_denominator() const noexcept { return den_; }

  [[nodiscard]] Big to_big() const { return big_ ? *big_ : Big(num_, den_); }

  [[nodiscard]] std::string str() const {
    if (big_) {
      auto s = boost::multiprecision::numerator(*big_).str();
      const auto& d = boost::multiprecision::denominator(*big_);
      if (d != 1) s += "/" + d.str();
      return s;
    }
    auto s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator-(const Rational& a) {
    if (a.big_) return from_big(-*a.big_);
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from_wide(Wide(a.num_) + b.num_, 1);
      return from_wide(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
    }
    return from_big(a.to_big() + b.to_big());
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from_wide(Wide(a.num_) - b.num_, 1);
      return from_wide(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
    }
    return from_big(a.to_big() - b.to_big());
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return {};
      if (a.den_ == 1 && b.den_ == 1) return from_wide(Wide(a.num_) * b.num_, 1);
      // Cross-cancel first; the result is then already in lowest terms.
      const auto g1 = gcd64(abs64(a.num_), b.den_);
      const auto g2 = gcd64(abs64(b.num_), a.den_);
      return from_reduced(Wide(a.num_ / g1) * (b.num_ / g2),
                          Wide(a.den_ / g2) * (b.den_ / g1));
    }
    return from_big(a.to_big() * b.to_big());
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return a * b.reciprocal();
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // a promoted value never fits inline
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const Wide lhs = Wide(a.num_) * b.den_;
      const Wide rhs = Wide(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    const auto x = a.to_big();
    const auto y = b.to_big();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Wide = __int128;
  using UWide = unsigned __int128;

  static constexpr std::int64_t kMax = INT64_MAX;
  static constexpr std::int64_t kMin = INT64_MIN;

  static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  }

  static std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

  static std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(
        gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
  }

  static UWide gcd128(UWide a, UWide b) {
    while (b != 0) {
      if ((a >> 64) == 0 && (b >> 64) == 0) {
        return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      }
      const auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
      const auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static bool fits(Wide v) { return v >= -Wide(kMax) && v <= Wide(kMax); }

  static Integer to_integer(Wide v) {
    const bool negative = v < 0;
    const UWide mag = negative ? UWide(-(v + 1)) + 1 : UWide(v);
    Integer r = Integer(static_cast<std::uint64_t>(mag >> 64));
    r <<= 64;
    r += static_cast<std::uint64_t>(mag);
    return negative ? Integer(-r) : r;
  }

  // n / d with d > 0 and gcd(|n|, d) = 1.
  static Rational from_reduced(Wide n, Wide d) {
    if (fits(n) && d <= Wide(kMax)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    Rational r;
    r.promote(Big(to_integer(n), to_integer(d)));
    return r;
  }

  static Rational from_wide(Wide n, Wide d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return {};
    if (d != 1) {
      const UWide g = gcd128(n < 0 ? UWide(-n) : UWide(n), UWide(d));
      if (g != 1) {
        n /= Wide(g);
        d /= Wide(g);
      }
    }
    return from_reduced(n, d);
  }

  static Rational from_big(const Big& b) {
    const auto& n = boost::multiprecision::numerator(b);
    const auto& d = boost::multiprecision::denominator(b);
    if (n >= -kMax && n <= kMax && d <= kMax) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    Rational r;
    r.promote(b);
    return r;
  }

  [[nodiscard]] Rational reciprocal() const {
    if (big_) return from_big(Big(1) / *big_);
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = abs64(num_);
    return r;
  }

  void promote(const Big& b) {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const Big>(b);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

}  // namespace superpos
