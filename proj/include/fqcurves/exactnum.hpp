#pragma once

// Exact arithmetic over Q and Q(sqrt q).

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqcurves/error.hpp"

namespace fqc {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

inline std::string_view sign_name(Sign s) {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Integer and rational helpers

inline Sign sign_of(const Integer& v) {
  return v < 0 ? Sign::Negative : (v > 0 ? Sign::Positive : Sign::Zero);
}

inline Sign sign_of(const Rational& v) {
  return v < 0 ? Sign::Negative : (v > 0 ? Sign::Positive : Sign::Zero);
}

/// Floor division for b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline Integer floor(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline Integer ceil(const Rational& r) { return -floor(Rational(-r)); }

/// Floor of the square root of a nonnegative integer.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::NegativeRadicand, "isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

inline Integer ceil_sqrt(const Integer& n) {
  Integer s = isqrt(n);
  return s * s == n ? s : s + 1;
}

inline std::optional<Integer> exact_isqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer s = isqrt(n);
  if (s * s == n) return s;
  return std::nullopt;
}

inline bool is_perfect_square(const Integer& n) { return exact_isqrt(n).has_value(); }

/// Nonnegative square root of a rational, when it is rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  auto n = exact_isqrt(boost::multiprecision::numerator(r));
  if (!n) return std::nullopt;
  auto d = exact_isqrt(boost::multiprecision::denominator(r));
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

inline Integer ipow(const Integer& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// ---------------------------------------------------------------------------
// SurdValue: a + b*sqrt(q)

/// Exact element a + b*sqrt(q) of Q(sqrt q).
///
/// For square q the irrational part is folded into `a`, so b == 0 whenever
/// sqrt(q) is rational. Values whose b is zero are radicand-agnostic and
/// combine with any other radicand; two values with nonzero b must share it.
class SurdValue {
 public:
  SurdValue() = default;

  SurdValue(Integer radicand, Rational a, Rational b = 0)
      : radicand_(std::move(radicand)), a_(std::move(a)), b_(std::move(b)) {
    if (radicand_ <= 0) throw Error(ErrorCode::InvalidArgument, "radicand must be positive");
    fold();
  }

  // Implicit on purpose: rationals embed into every Q(sqrt q).
  SurdValue(const Rational& a) : a_(a) {}  // NOLINT
  SurdValue(const Integer& a) : a_(a) {}   // NOLINT
  SurdValue(long long a) : a_(a) {}        // NOLINT
  SurdValue(int a) : a_(a) {}              // NOLINT

  static SurdValue sqrt_of(const Integer& q) { return SurdValue(q, 0, 1); }

  /// sqrt(q)^k, which lies in Q(sqrt q) for every k >= 0.
  static SurdValue sqrt_power(const Integer& q, unsigned k) {
    Integer half = ipow(q, k / 2);
    if (k % 2 == 0) return SurdValue(q, Rational(half), 0);
    return SurdValue(q, 0, Rational(half));
  }

  const Integer& radicand() const { return radicand_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_rational() const { return b_ == 0; }

  Sign sign() const {
    const Sign sa = sign_of(a_);
    const Sign sb = sign_of(b_);
    if (sb == Sign::Zero) return sa;
    if (sa == Sign::Zero || sa == sb) return sb;
    // Opposite signs: compare a^2 with b^2 q.
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * Rational(radicand_);
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return Sign::Zero;
  }

  SurdValue conjugate() const { return SurdValue(radicand_, a_, -b_, Raw{}); }

  /// a^2 - q b^2.
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(radicand_); }

  SurdValue operator-() const { return SurdValue(radicand_, -a_, -b_, Raw{}); }

  friend SurdValue operator+(const SurdValue& x, const SurdValue& y) {
    return SurdValue(join(x, y), x.a_ + y.a_, x.b_ + y.b_, Raw{});
  }
  friend SurdValue operator-(const SurdValue& x, const SurdValue& y) {
    return SurdValue(join(x, y), x.a_ - y.a_, x.b_ - y.b_, Raw{});
  }
  friend SurdValue operator*(const SurdValue& x, const SurdValue& y) {
    Integer q = join(x, y);
    return SurdValue(q, x.a_ * y.a_ + x.b_ * y.b_ * Rational(q), x.a_ * y.b_ + x.b_ * y.a_, Raw{});
  }
  friend SurdValue operator/(const SurdValue& x, const SurdValue& y) {
    Integer q = join(x, y);
    const Rational n = y.a_ * y.a_ - y.b_ * y.b_ * Rational(q);
    if (n == 0) throw Error(ErrorCode::DivisionByZero, "division by zero in Q(sqrt q)");
    const Rational ra = (x.a_ * y.a_ - x.b_ * y.b_ * Rational(q)) / n;
    const Rational rb = (x.b_ * y.a_ - x.a_ * y.b_) / n;
    return SurdValue(q, ra, rb, Raw{});
  }
  SurdValue& operator+=(const SurdValue& y) { return *this = *this + y; }
  SurdValue& operator-=(const SurdValue& y) { return *this = *this - y; }
  SurdValue& operator*=(const SurdValue& y) { return *this = *this * y; }
  SurdValue& operator/=(const SurdValue& y) { return *this = *this / y; }

  friend bool operator==(const SurdValue& x, const SurdValue& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    return x.b_ == 0 || x.radicand_ == y.radicand_;
  }

  friend std::strong_ordering operator<=>(const SurdValue& x, const SurdValue& y) {
    switch ((x - y).sign()) {
      case Sign::Negative: return std::strong_ordering::less;
      case Sign::Zero: return std::strong_ordering::equal;
      case Sign::Positive: return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  double to_double() const {
    return a_.convert_to<double>() +
           b_.convert_to<double>() * std::sqrt(radicand_.convert_to<double>());
  }

  std::string str() const {
    std::ostringstream os;
    if (b_ == 0) {
      os << a_;
    } else if (a_ == 0) {
      os << b_ << "*sqrt(" << radicand_ << ")";
    } else {
      os << a_ << (b_ < 0 ? " - " : " + ") << abs(b_) << "*sqrt(" << radicand_ << ")";
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const SurdValue& v) { return os << v.str(); }

 private:
  struct Raw {};
  SurdValue(Integer q, Rational a, Rational b, Raw)
      : radicand_(std::move(q)), a_(std::move(a)), b_(std::move(b)) {}

  static Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

  static Integer join(const SurdValue& x, const SurdValue& y) {
    if (x.b_ != 0 && y.b_ != 0 && x.radicand_ != y.radicand_) {
      throw Error(ErrorCode::RadicandMismatch, "sqrt(" + x.radicand_.str() + ") vs sqrt(" +
                                                   y.radicand_.str() + ")");
    }
    if (x.b_ != 0) return x.radicand_;
    if (y.b_ != 0) return y.radicand_;
    return x.radicand_ != 1 ? x.radicand_ : y.radicand_;
  }

  void fold() {
    if (b_ == 0) return;
    if (auto r = exact_isqrt(radicand_)) {
      a_ += b_ * Rational(*r);
      b_ = 0;
    }
  }

  Integer radicand_ = 1;
  Rational a_ = 0;
  Rational b_ = 0;
};

inline Sign surd_sign(const SurdValue& v) { return v.sign(); }

/// Square root inside Q(sqrt q), when the argument is a perfect square there.
inline std::optional<SurdValue> exact_sqrt(const SurdValue& v) {
  if (v.sign() == Sign::Negative) {
    throw Error(ErrorCode::NegativeRadicand, "sqrt of negative value " + v.str());
  }
  const Integer& q = v.radicand();
  if (v.is_rational()) {
    if (auto s = exact_sqrt(v.a())) return SurdValue(*s);
    // a = q s^2  =>  sqrt(a) = s sqrt(q)
    if (auto s = exact_sqrt(Rational(v.a() / Rational(q)))) return SurdValue(q, 0, *s);
    return std::nullopt;
  }
  // (c + d sqrt q)^2 = c^2 + q d^2 + 2cd sqrt q
  auto disc = exact_sqrt(v.norm());
  if (!disc) return std::nullopt;
  for (const Rational& c2 : {Rational((v.a() + *disc) / 2), Rational((v.a() - *disc) / 2)}) {
    auto c = exact_sqrt(c2);
    if (!c || *c == 0) continue;
    SurdValue root(q, *c, v.b() / (2 * *c));
    if (root.sign() == Sign::Negative) root = -root;
    if (root * root == v) return root;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certified integer truncations

enum class Rounding { Floor, Ceil };

/// An integer truncation of a real bound, tagged with how it was certified.
struct CertifiedInt {
  enum class Mode { Exact, Interval };

  Integer value;
  Rounding direction = Rounding::Floor;
  Mode mode = Mode::Exact;
  unsigned precision_bits = 0;  // working precision of the deciding enclosure

  bool exact() const { return mode == Mode::Exact; }
};

inline CertifiedInt surd_floor(const SurdValue& v) {
  // Rational bracket: |b sqrt q| <= |b| (isqrt(q) + 1).
  const Rational slack = (v.b() < 0 ? Rational(-v.b()) : v.b()) * Rational(isqrt(v.radicand()) + 1);
  Integer lo = floor(Rational(v.a() - slack));
  Integer hi = ceil(Rational(v.a() + slack)) + 1;
  // Invariant: lo <= v < hi.
  while (hi - lo > 1) {
    Integer mid = floor_div(lo + hi, 2);
    if ((v - SurdValue(mid)).sign() == Sign::Negative) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return CertifiedInt{lo, Rounding::Floor, CertifiedInt::Mode::Exact, 0};
}

inline CertifiedInt surd_ceil(const SurdValue& v) {
  CertifiedInt f = surd_floor(-v);
  return CertifiedInt{-f.value, Rounding::Ceil, CertifiedInt::Mode::Exact, 0};
}

inline CertifiedInt surd_truncate(const SurdValue& v, Rounding dir) {
  return dir == Rounding::Floor ? surd_floor(v) : surd_ceil(v);
}

}  // namespace fqc
