#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace symdyn {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact element a + b*sqrt(d) of a real quadratic field (d >= 0 square-free
// or d == 0 for plain rationals).
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a, Rational b, long d);
  static QuadraticNumber rational(Rational a) { return {std::move(a), 0, 0}; }

  // "golden", "7/4", "1.8", "quad:p,q,D,r" meaning (p + q*sqrt(D)) / r.
  static QuadraticNumber parse(std::string_view text);

  int sign() const;
  double to_double() const;
  BigInt floor() const;
  std::string str() const;

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d() const { return d_; }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() == 0;
  }

 private:
  void normalize();
  long common_d(const QuadraticNumber& other) const;

  Rational a_ = 0;
  Rational b_ = 0;
  long d_ = 0;
};

}  // namespace symdyn
