#include "symdyn/quadratic.hpp"

#include "symdyn/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace symdyn {

namespace {

long square_free_part(long d, BigInt& factor_out) {
  factor_out = 1;
  if (d <= 1) return d;
  long rest = d;
  for (long p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      factor_out *= p;
    }
  }
  return rest;
}

Rational parse_rational(std::string_view s) {
  std::string t(s);
  if (t.empty()) throw DomainError("empty number");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + t + "'");
    return Rational(num, den);
  }
  bool neg = false;
  std::size_t pos = 0;
  if (t[0] == '-' || t[0] == '+') {
    neg = t[0] == '-';
    pos = 1;
  }
  BigInt num = 0;
  BigInt den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; pos < t.size(); ++pos) {
    char c = t[pos];
    if (c == '.') {
      if (seen_dot) throw DomainError("malformed decimal '" + t + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    } else {
      throw DomainError("malformed decimal '" + t + "'");
    }
  }
  if (!seen_digit) throw DomainError("malformed decimal '" + t + "'");
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, long d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 0) throw DomainError("negative radicand");
  normalize();
}

void QuadraticNumber::normalize() {
  BigInt f;
  long sf = square_free_part(d_, f);
  if (sf != d_) {
    b_ *= Rational(f);
    d_ = sf;
  }
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
  if (d_ == 0) b_ = 0;
  if (b_ == 0) d_ = 0;
}

long QuadraticNumber::common_d(const QuadraticNumber& other) const {
  if (d_ == 0) return other.d_;
  if (other.d_ == 0 || other.d_ == d_) return d_;
  throw DomainError("arithmetic across different quadratic fields");
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, x.common_d(y)};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, x.common_d(y)};
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  long d = x.common_d(y);
  return {x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d};
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  long d = x.common_d(y);
  Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
  if (norm == 0) throw DomainError("division by zero");
  QuadraticNumber conj(y.a_ / norm, -y.b_ / norm, d);
  return x * conj;
}

int QuadraticNumber::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 d
  Rational diff = a_ * a_ - b_ * b_ * d_;
  return diff.sign() * sa;
}

double QuadraticNumber::to_double() const {
  double a = a_.convert_to<double>();
  double b = b_.convert_to<double>();
  return a + b * std::sqrt(static_cast<double>(d_));
}

BigInt QuadraticNumber::floor() const {
  BigInt k(static_cast<long long>(std::floor(to_double())));
  auto as_q = [](const BigInt& v) { return QuadraticNumber::rational(Rational(v)); };
  while ((*this - as_q(k)).sign() < 0) --k;
  while ((*this - as_q(k + 1)).sign() >= 0) ++k;
  return k;
}

std::string QuadraticNumber::str() const {
  std::ostringstream os;
  os << a_;
  if (d_ != 0) os << " + " << b_ << "*sqrt(" << d_ << ")";
  return os.str();
}

QuadraticNumber QuadraticNumber::parse(std::string_view text) {
  if (text == "golden") return {Rational(1, 2), Rational(1, 2), 5};
  if (text.rfind("quad:", 0) == 0) {
    std::string body(text.substr(5));
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4) throw DomainError("expected quad:p,q,D,r");
    Rational p = parse_rational(parts[0]);
    Rational q = parse_rational(parts[1]);
    Rational dr = parse_rational(parts[2]);
    Rational r = parse_rational(parts[3]);
    if (denominator(dr) != 1 || dr < 0) throw DomainError("radicand must be a non-negative integer");
    if (r == 0) throw DomainError("zero denominator");
    return {p / r, q / r, numerator(dr).convert_to<long>()};
  }
  return rational(parse_rational(text));
}

}  // namespace symdyn
