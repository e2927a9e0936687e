#pragma once

// Membership of normalized point-count tuples (x_1..x_n) in the cube
// [-1,1]^n, the PSD Toeplitz Gram region and the arithmetic half-spaces
// h_i <= 0; plus the planar boundary curves used by the order-2/3 bounds.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fqcurves/error.hpp"
#include "fqcurves/exactnum.hpp"
#include "fqcurves/expr.hpp"

namespace fqc {

inline constexpr std::size_t kMaxGramOrder = 6;

/// Unit-diagonal symmetric Toeplitz matrix with first row (1, x_1, ..., x_n).
struct GramSpec {
  std::vector<SurdValue> x;

  std::size_t order() const { return x.size(); }
  std::size_t size() const { return x.size() + 1; }

  /// Entry (i, j), 1-based.
  SurdValue entry(std::size_t i, std::size_t j) const {
    if (i == j) return SurdValue(1);
    return x[(i > j ? i - j : j - i) - 1];
  }
};

/// Determinant of the submatrix on rows/columns `index` (1-based), by
/// Bareiss elimination with row pivoting.
inline SurdValue principal_minor(const GramSpec& spec, const std::vector<std::size_t>& index) {
  if (index.empty()) throw Error(ErrorCode::InvalidArgument, "empty index set");
  const std::size_t m = index.size();
  std::vector<std::vector<SurdValue>> a(m, std::vector<SurdValue>(m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (index[r] < 1 || index[r] > spec.size() || index[c] < 1 || index[c] > spec.size()) {
        throw Error(ErrorCode::InvalidArgument, "minor index out of range");
      }
      a[r][c] = spec.entry(index[r], index[c]);
    }
  }
  SurdValue prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k].sign() == Sign::Zero) {
      std::size_t p = k + 1;
      while (p < m && a[p][k].sign() == Sign::Zero) ++p;
      if (p == m) return SurdValue(0);
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = SurdValue(0);
    }
    prev = a[k][k];
  }
  return negate ? -a[m - 1][m - 1] : a[m - 1][m - 1];
}

struct RegionVerdict {
  bool in_cube = true;
  bool in_psd = true;
  bool in_arith = true;
  std::vector<std::string> failing_constraints;

  bool member() const { return in_cube && in_psd && in_arith; }
};

/// h_i(x_1, x_i) = x_i - x_1 / s^(i-1) - s/(2g) (s^(i-1) - 1/s^(i-1)), s = sqrt q.
inline SurdValue arithmetic_constraint(std::uint64_t q, unsigned g, unsigned i, const SurdValue& x1,
                                       const SurdValue& xi) {
  if (g == 0) throw Error(ErrorCode::GenusZero, "h_i needs g >= 1");
  if (i < 2) throw Error(ErrorCode::InvalidArgument, "h_i is defined for i >= 2");
  const SurdValue s = SurdValue::sqrt_of(Integer(q));
  const SurdValue p = SurdValue::sqrt_power(Integer(q), i - 1);
  return xi - x1 / p - s / SurdValue(Integer(2 * g)) * (p - 1 / p);
}

inline std::string minor_id(const std::vector<std::size_t>& index) {
  std::string s = "minor{";
  for (std::size_t k = 0; k < index.size(); ++k) s += (k ? "," : "") + std::to_string(index[k]);
  return s + "}";
}

/// Exact membership test; boundary points (zero minors, h_i = 0) are inside.
inline RegionVerdict in_region(std::uint64_t q, unsigned g, const std::vector<SurdValue>& x) {
  if (g == 0) throw Error(ErrorCode::GenusZero, "region needs g >= 1");
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty tuple");
  if (x.size() > kMaxGramOrder) {
    throw Error(ErrorCode::OrderTooLarge, "n=" + std::to_string(x.size()) + " exceeds " + std::to_string(kMaxGramOrder));
  }
  RegionVerdict v;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::string id = "cube.x" + std::to_string(i + 1);
    if (x[i] < SurdValue(-1)) {
      v.in_cube = false;
      v.failing_constraints.push_back(id + ".lo");
    }
    if (x[i] > SurdValue(1)) {
      v.in_cube = false;
      v.failing_constraints.push_back(id + ".hi");
    }
  }
  const GramSpec spec{x};
  const std::size_t dim = spec.size();
  for (std::uint32_t mask = 1; mask < (1U << dim); ++mask) {
    std::vector<std::size_t> index;
    for (std::size_t k = 0; k < dim; ++k) {
      if (mask & (1U << k)) index.push_back(k + 1);
    }
    if (principal_minor(spec, index).sign() == Sign::Negative) {
      v.in_psd = false;
      v.failing_constraints.push_back(minor_id(index));
    }
  }
  for (unsigned i = 2; i <= x.size(); ++i) {
    if (arithmetic_constraint(q, g, i, x[0], x[i - 1]).sign() == Sign::Positive) {
      v.in_arith = false;
      v.failing_constraints.push_back("h" + std::to_string(i));
    }
  }
  return v;
}

/// Lower boundary of the order-2 PSD region: x_2 >= 2 x_1^2 - 1.
inline SurdValue x2_floor_order2(const SurdValue& x1) {
  if (x1 < SurdValue(-1) || x1 > SurdValue(1)) {
    throw Error(ErrorCode::OutOfCube, "x1=" + x1.str() + " outside [-1, 1]");
  }
  return 2 * x1 * x1 - 1;
}

/// Lower branch of the order-3 hyperbola through (-1, 1):
/// x_2 >= -x_1 - sqrt(x_1^2/q + (1/q + 1 + c) x_1 + 1 + c), c = (q^2 - 1)/(2 g sqrt q).
inline Expr x2_floor_order3(std::uint64_t q, unsigned g, const SurdValue& x1) {
  if (g == 0) throw Error(ErrorCode::GenusZero, "order-3 boundary needs g >= 1");
  const Integer Q(q);
  const SurdValue c = SurdValue(Q * Q - 1) / (SurdValue(Integer(2 * g)) * SurdValue::sqrt_of(Q));
  const SurdValue inv_q = SurdValue(Rational(1, Q));
  const SurdValue radicand = x1 * x1 * inv_q + (inv_q + 1 + c) * x1 + 1 + c;
  if (radicand.sign() == Sign::Negative) {
    throw Error(ErrorCode::NegativeRadicand, "order-3 boundary radicand " + radicand.str() + " < 0");
  }
  return Expr(-x1) - sqrt(Expr(radicand));
}

/// B_2 = g sqrt(q) (x_1 - sqrt(q) x_2) + (q^2 - q)/2.
inline SurdValue b2_from_x(std::uint64_t q, unsigned g, const SurdValue& x1, const SurdValue& x2) {
  const Integer Q(q);
  const SurdValue s = SurdValue::sqrt_of(Q);
  return SurdValue(Integer(g)) * s * (x1 - s * x2) + SurdValue(Rational(Q * Q - Q, 2));
}

inline Expr b2_from_x(std::uint64_t q, unsigned g, const SurdValue& x1, const Expr& x2) {
  const Integer Q(q);
  const SurdValue s = SurdValue::sqrt_of(Q);
  return Expr(SurdValue(Integer(g)) * s) * (Expr(x1) - Expr(s) * x2) + Expr(Rational(Q * Q - Q, 2));
}

}  // namespace fqc
