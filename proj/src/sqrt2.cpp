#include "coset/sqrt2.hpp"

#include <cmath>
#include <stdexcept>

namespace coset {

QSqrt2 QSqrt2::sqrt_pow2(long e) {
  // sqrt(2^e) = 2^(e/2) for even e, 2^((e-1)/2) * sqrt2 for odd e.
  auto pow2 = [](long p) -> Rational {
    using boost::multiprecision::cpp_int;
    if (p >= 0) return Rational(cpp_int(1) << p);
    return Rational(1, cpp_int(1) << (-p));
  };
  if (e % 2 == 0) return QSqrt2(pow2(e / 2));
  return QSqrt2(0, pow2((e - 1) / 2));  // (e-1) even, division exact
}

QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) {
  // Multiply by the conjugate: 1/(a+b sqrt2) = (a - b sqrt2)/(a^2 - 2 b^2).
  const Rational denom = y.a_ * y.a_ - 2 * y.b_ * y.b_;
  if (denom == 0) {
    if (y.a_ == 0 && y.b_ == 0) throw std::domain_error("QSqrt2: division by zero");
    throw std::domain_error("QSqrt2: degenerate divisor");  // impossible: sqrt2 irrational
  }
  const QSqrt2 num = x * QSqrt2(y.a_, -y.b_);
  return QSqrt2(num.a_ / denom, num.b_ / denom);
}

int QSqrt2::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Signs differ: |a| vs |b| sqrt2, i.e. a^2 vs 2 b^2 with the sign of the
  // larger magnitude winning.
  const Rational a2 = a_ * a_;
  const Rational b2 = 2 * b_ * b_;
  if (a2 == b2) return 0;  // unreachable for nonzero b: sqrt2 is irrational
  return a2 > b2 ? sa : sb;
}

double QSqrt2::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(2.0);
}

std::string QSqrt2::str() const {
  std::string s = a_.str();
  if (b_ != 0) {
    s += (b_.sign() < 0 ? " - " : " + ");
    Rational absb = b_ < 0 ? Rational(-b_) : b_;
    s += absb.str() + "*sqrt(2)";
  }
  return s;
}

}  // namespace coset
