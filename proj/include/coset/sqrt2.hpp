#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace coset {

using Rational = boost::multiprecision::cpp_rational;

// Element a + b*sqrt(2) of the quadratic field Q(sqrt 2), with exact rational
// coefficients. Comparisons are exact; conversion to double happens only at
// reporting boundaries.
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  static QSqrt2 sqrt2() { return QSqrt2(0, 1); }

  // sqrt(2^e) for any integer e: rational for even e, rational*sqrt2 for odd.
  static QSqrt2 sqrt_pow2(long e);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  QSqrt2 operator-() const { return QSqrt2(-a_, -b_); }
  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) {
    return QSqrt2(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) {
    return QSqrt2(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return QSqrt2(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y);

  // Sign of a + b*sqrt2, decided exactly: when a and b disagree in sign the
  // comparison reduces to a^2 vs 2 b^2.
  int sign() const;

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() <= 0; }
  friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() > 0; }
  friend bool operator>=(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() >= 0; }

  double to_double() const;
  std::string str() const;

 private:
  Rational a_ = 0;
  Rational b_ = 0;
};

}  // namespace coset
