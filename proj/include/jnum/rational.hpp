#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace jnum {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. The denominator is always positive and
// gcd(|num|, den) == 1 after every operation.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(implicit)
  Rational(BigInt num, BigInt den);

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  BigInt floor() const;
  BigInt ceil() const;
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  // "p/q" in lowest terms, or "p" when the denominator is 1.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

// Checked narrowing; throws std::overflow_error when out of range.
std::int64_t to_int64(const BigInt& v);

}  // namespace jnum

template <>
struct std::hash<jnum::Rational> {
  std::size_t operator()(const jnum::Rational& r) const noexcept;
};
