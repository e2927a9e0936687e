#pragma once

// Closed expression algebra over Q(sqrt q) with square roots, evaluated
// either exactly (when the value stays in Q(sqrt q)) or by outward-rounded
// dyadic interval arithmetic with precision doubling.

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "fqcurves/error.hpp"
#include "fqcurves/exactnum.hpp"

namespace fqc {

inline constexpr unsigned kInitialPrecisionBits = 128;
inline constexpr unsigned kDefaultMaxPrecisionBits = 4096;

/// Closed dyadic interval [lo, hi] produced at `bits` bits of precision.
struct Enclosure {
  Rational lo;
  Rational hi;
  unsigned bits = 0;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

class Expr {
 public:
  enum class Op { Const, Add, Sub, Mul, Div, Neg, Sqrt };

  Expr() : Expr(SurdValue(0)) {}
  Expr(const SurdValue& v) : node_(std::make_shared<Node>(Node{Op::Const, v, nullptr, nullptr})) {}  // NOLINT
  Expr(const Rational& v) : Expr(SurdValue(v)) {}  // NOLINT
  Expr(const Integer& v) : Expr(SurdValue(v)) {}   // NOLINT
  Expr(long long v) : Expr(SurdValue(v)) {}        // NOLINT
  Expr(int v) : Expr(SurdValue(v)) {}              // NOLINT

  static Expr sqrt_q(const Integer& q) { return Expr(SurdValue::sqrt_of(q)); }

  Op op() const { return node_->op; }

  friend Expr operator+(const Expr& x, const Expr& y) { return Expr(Op::Add, x, y); }
  friend Expr operator-(const Expr& x, const Expr& y) { return Expr(Op::Sub, x, y); }
  friend Expr operator*(const Expr& x, const Expr& y) { return Expr(Op::Mul, x, y); }
  friend Expr operator/(const Expr& x, const Expr& y) { return Expr(Op::Div, x, y); }
  Expr operator-() const { return Expr(Op::Neg, *this, Expr()); }
  friend Expr sqrt(const Expr& x) { return Expr(Op::Sqrt, x, Expr()); }

  /// Value as a + b sqrt(q) when every square root in the tree resolves
  /// exactly; nullopt otherwise.
  std::optional<SurdValue> exact() const { return exact_of(*node_); }

  /// Outward-rounded enclosure at `bits` bits; nullopt when a divisor
  /// enclosure straddles zero at this precision.
  std::optional<Enclosure> enclose(unsigned bits) const {
    auto r = enclose_of(*node_, bits);
    if (r) r->bits = bits;
    return r;
  }

  /// Midpoint of a 64-bit enclosure (display only).
  double approx() const {
    if (auto v = exact()) return v->to_double();
    for (unsigned bits = 64; bits <= kDefaultMaxPrecisionBits; bits *= 2) {
      if (auto e = enclose(bits)) return to_double(Rational((e->lo + e->hi) / 2));
    }
    throw Error(ErrorCode::PrecisionExhausted, "cannot approximate " + str());
  }

  std::string str() const {
    std::ostringstream os;
    print(os, *node_);
    return os.str();
  }

 private:
  struct Node {
    Op op;
    SurdValue value;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Expr(Op op, const Expr& x, const Expr& y)
      : node_(std::make_shared<Node>(Node{op, SurdValue(0), x.node_, y.node_})) {}

  static std::optional<SurdValue> exact_of(const Node& n) {
    if (n.op == Op::Const) return n.value;
    auto l = exact_of(*n.lhs);
    if (!l) return std::nullopt;
    switch (n.op) {
      case Op::Neg: return -*l;
      case Op::Sqrt: return exact_sqrt(*l);
      default: break;
    }
    auto r = exact_of(*n.rhs);
    if (!r) return std::nullopt;
    switch (n.op) {
      case Op::Add: return *l + *r;
      case Op::Sub: return *l - *r;
      case Op::Mul: return *l * *r;
      case Op::Div: return *l / *r;
      default: return std::nullopt;
    }
  }

  static Integer scale(unsigned bits) { return Integer(1) << bits; }

  static Rational round_down(const Rational& x, unsigned bits) {
    const Integer s = scale(bits);
    return Rational(floor(Rational(x * s)), s);
  }
  static Rational round_up(const Rational& x, unsigned bits) {
    const Integer s = scale(bits);
    return Rational(ceil(Rational(x * s)), s);
  }

  static Enclosure outward(const Rational& lo, const Rational& hi, unsigned bits) {
    return Enclosure{round_down(lo, bits), round_up(hi, bits), bits};
  }

  static Enclosure sqrt_enclosure(const Rational& lo, const Rational& hi, unsigned bits) {
    if (hi < 0) {
      throw Error(ErrorCode::NegativeRadicand, "radicand enclosure [" + to_string(lo) + ", " +
                                                   to_string(hi) + "] is negative");
    }
    const Integer s = scale(bits);
    const Integer s2 = s * s;
    const Rational lo0 = lo < 0 ? Rational(0) : lo;
    Integer l = isqrt(floor(Rational(lo0 * s2)));
    Integer h = ceil_sqrt(ceil(Rational(hi * s2)));
    return Enclosure{Rational(l, s), Rational(h, s), bits};
  }

  static Enclosure const_enclosure(const SurdValue& v, unsigned bits) {
    if (v.is_rational()) return outward(v.a(), v.a(), bits);
    Enclosure r = sqrt_enclosure(Rational(v.radicand()), Rational(v.radicand()), bits);
    Rational p1 = v.b() * r.lo;
    Rational p2 = v.b() * r.hi;
    if (p1 > p2) std::swap(p1, p2);
    return outward(v.a() + p1, v.a() + p2, bits);
  }

  static std::optional<Enclosure> enclose_of(const Node& n, unsigned bits) {
    if (n.op == Op::Const) return const_enclosure(n.value, bits);
    auto l = enclose_of(*n.lhs, bits);
    if (!l) return std::nullopt;
    if (n.op == Op::Neg) return Enclosure{-l->hi, -l->lo, bits};
    if (n.op == Op::Sqrt) return sqrt_enclosure(l->lo, l->hi, bits);
    auto r = enclose_of(*n.rhs, bits);
    if (!r) return std::nullopt;
    switch (n.op) {
      case Op::Add: return outward(l->lo + r->lo, l->hi + r->hi, bits);
      case Op::Sub: return outward(l->lo - r->hi, l->hi - r->lo, bits);
      case Op::Mul: return mul(*l, *r, bits);
      case Op::Div: {
        if (r->lo <= 0 && r->hi >= 0) return std::nullopt;
        Enclosure inv{Rational(1 / r->hi), Rational(1 / r->lo), bits};
        return mul(*l, inv, bits);
      }
      default: return std::nullopt;
    }
  }

  static Enclosure mul(const Enclosure& x, const Enclosure& y, unsigned bits) {
    const Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return outward(*std::min_element(c, c + 4), *std::max_element(c, c + 4), bits);
  }

  static void print(std::ostream& os, const Node& n) {
    switch (n.op) {
      case Op::Const: os << "(" << n.value << ")"; return;
      case Op::Neg: os << "-"; print(os, *n.lhs); return;
      case Op::Sqrt: os << "sqrt"; print_paren(os, *n.lhs); return;
      default: break;
    }
    const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? " * " : " / ";
    os << "(";
    print(os, *n.lhs);
    os << sym;
    print(os, *n.rhs);
    os << ")";
  }

  static void print_paren(std::ostream& os, const Node& n) {
    if (n.op == Op::Const) {
      print(os, n);
    } else {
      os << "(";
      print(os, n);
      os << ")";
    }
  }

  std::shared_ptr<const Node> node_;
};

/// Pure interval path: refine until the enclosure pins down a unique floor
/// (or ceiling). Exact integers can never be separated this way and end in
/// PrecisionExhausted.
inline CertifiedInt enclosure_truncate(const Expr& e, Rounding dir,
                                       unsigned max_bits = kDefaultMaxPrecisionBits) {
  for (unsigned bits = std::min(kInitialPrecisionBits, max_bits); bits <= max_bits; bits *= 2) {
    auto enc = e.enclose(bits);
    if (enc) {
      Integer a = dir == Rounding::Floor ? floor(enc->lo) : ceil(enc->lo);
      Integer b = dir == Rounding::Floor ? floor(enc->hi) : ceil(enc->hi);
      if (a == b) return CertifiedInt{a, dir, CertifiedInt::Mode::Interval, bits};
    }
    if (bits > max_bits / 2) break;
  }
  throw Error(ErrorCode::PrecisionExhausted,
              "value of " + e.str() + " not separated from an integer within " +
                  std::to_string(max_bits) + " bits");
}

/// Certified floor or ceiling: exact path when the expression simplifies to
/// a + b sqrt(q), interval path otherwise.
inline CertifiedInt interval_floor(const Expr& e, Rounding dir = Rounding::Floor,
                                   unsigned max_bits = kDefaultMaxPrecisionBits) {
  if (auto v = e.exact()) return surd_truncate(*v, dir);
  return enclosure_truncate(e, dir, max_bits);
}

/// Certified sign; a nonzero value that only the interval path can see is
/// separated from zero by refinement.
inline Sign certified_sign(const Expr& e, unsigned max_bits = kDefaultMaxPrecisionBits) {
  if (auto v = e.exact()) return v->sign();
  for (unsigned bits = std::min(kInitialPrecisionBits, max_bits); bits <= max_bits; bits *= 2) {
    if (auto enc = e.enclose(bits)) {
      if (enc->lo > 0) return Sign::Positive;
      if (enc->hi < 0) return Sign::Negative;
    }
    if (bits > max_bits / 2) break;
  }
  throw Error(ErrorCode::PrecisionExhausted, "sign of " + e.str() + " undecided");
}

/// Certified three-way comparison.
inline Sign compare(const Expr& x, const Expr& y, unsigned max_bits = kDefaultMaxPrecisionBits) {
  return certified_sign(x - y, max_bits);
}

}  // namespace fqc
