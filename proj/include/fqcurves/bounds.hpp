#pragma once

// Closed-form bounds on the number of degree-2 closed points B2 and on the
// number of rational points N1, kept exact and truncated with certification.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fqcurves/catalog.hpp"
#include "fqcurves/error.hpp"
#include "fqcurves/exactnum.hpp"
#include "fqcurves/expr.hpp"
#include "fqcurves/gf.hpp"

namespace fqc {

enum class BoundKind { UpperOnB2, LowerOnB2, UpperOnN1 };

inline std::string_view kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::UpperOnB2: return "UpperOnB2";
    case BoundKind::LowerOnB2: return "LowerOnB2";
    case BoundKind::UpperOnN1: return "UpperOnN1";
  }
  return "?";
}

struct BoundResult {
  Expr exact;
  CertifiedInt truncated;
  BoundKind kind = BoundKind::UpperOnB2;
  std::optional<Expr> threshold;  // genus from which the bound is asserted
  bool valid = true;              // g >= threshold
  bool positive = false;          // exact value > 0

  const Integer& value() const { return truncated.value; }
};

namespace detail {

inline PrimePower require_prime_power(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  return *pp;
}

inline void require_genus(unsigned g) {
  if (g == 0) throw Error(ErrorCode::GenusZero, "bound needs g >= 1");
}

inline BoundResult finish(Expr e, BoundKind kind, std::optional<Expr> threshold, unsigned g, unsigned max_bits) {
  BoundResult r;
  r.kind = kind;
  r.truncated = interval_floor(e, kind == BoundKind::LowerOnB2 ? Rounding::Ceil : Rounding::Floor, max_bits);
  r.positive = certified_sign(e, max_bits) == Sign::Positive;
  if (threshold) r.valid = compare(Expr(static_cast<long long>(g)), *threshold, max_bits) != Sign::Negative;
  r.threshold = std::move(threshold);
  r.exact = std::move(e);
  return r;
}

inline SurdValue sq(std::uint64_t q) { return SurdValue::sqrt_of(Integer(q)); }

}  // namespace detail

/// sqrt(q)(sqrt(q) - 1)/2: Ihara's bound improves on Weil's below this genus.
inline Expr genus_threshold_2(std::uint64_t q) {
  return Expr((SurdValue(Integer(q)) - detail::sq(q)) / 2);
}

/// sqrt(q)(q - 1)/sqrt(2), written as sqrt(q (q-1)^2 / 2).
inline Expr genus_threshold_3(std::uint64_t q) {
  const Integer qm1 = Integer(q) - 1;
  return sqrt(Expr(Rational(Integer(q) * qm1 * qm1, 2)));
}

/// (q^2 - q)/2 + g (q + sqrt q).
inline BoundResult m_prime(std::uint64_t q, unsigned g, unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  const Integer Q(q);
  SurdValue v = SurdValue(Rational(Q * Q - Q, 2)) + SurdValue(Integer(g)) * (SurdValue(Q) + detail::sq(q));
  return detail::finish(Expr(v), BoundKind::UpperOnB2, std::nullopt, g, max_bits);
}

/// (q^2 + 1 + 2gq - (N1 - q - 1)^2 / g - N1) / 2, for a smooth curve with N1 points.
inline BoundResult b2_upper_second(std::uint64_t q, unsigned g, std::uint64_t n1,
                                   unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  detail::require_genus(g);
  const Integer Q(q);
  const Integer N(n1);
  const Integer d = N - Q - 1;
  Rational v = Rational(Q * Q + 1 + 2 * Integer(g) * Q - N) - Rational(d * d, Integer(g));
  return detail::finish(Expr(Rational(v / 2)), BoundKind::UpperOnB2, std::nullopt, g, max_bits);
}

inline BoundResult m_double_prime(std::uint64_t q, unsigned g, const NqCatalog& catalog,
                                  unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_genus(g);
  return b2_upper_second(q, g, catalog.exact(q, g), max_bits);
}

/// Order-3 bound: sqrt(N1^2/4 + alpha N1 + beta) - (1 + sqrt q) N1 / 2
/// + (q^2 + 1 + sqrt(q)(q + 1)) / 2, asserted for g >= sqrt(q)(q-1)/sqrt 2.
inline BoundResult b2_upper_third(std::uint64_t q, unsigned g, std::uint64_t n1,
                                  unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  detail::require_genus(g);
  const Integer Q(q);
  const SurdValue s = detail::sq(q);
  const SurdValue G{Integer(g)};
  const SurdValue N{Integer(n1)};
  const SurdValue alpha = -((SurdValue(2 * Q) * s + 2 * s) * G + SurdValue(Q * Q * Q + Q + 2)) / 4;
  const SurdValue beta = (SurdValue(4 * Q * Q) * G * G + 2 * s * SurdValue(Q * Q * Q + Q * Q + Q + 1) * G +
                          SurdValue(Q * Q * Q * Q + Q * Q * Q + Q + 1)) /
                         4;
  const SurdValue radicand = N * N / 4 + alpha * N + beta;
  if (radicand.sign() == Sign::Negative) {
    throw Error(ErrorCode::NegativeRadicand, "order-3 radicand " + radicand.str() + " < 0");
  }
  const SurdValue linear = -(1 + s) * N / 2 + (SurdValue(Q * Q + 1) + s * SurdValue(Q + 1)) / 2;
  Expr e = sqrt(Expr(radicand)) + Expr(linear);
  return detail::finish(std::move(e), BoundKind::UpperOnB2, genus_threshold_3(q), g, max_bits);
}

inline BoundResult m_triple_prime(std::uint64_t q, unsigned g, const NqCatalog& catalog,
                                  unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_genus(g);
  const auto n1 = catalog.exact(q, g);
  BoundResult r = b2_upper_third(q, g, n1, max_bits);
  if (!r.valid) {
    throw Error(ErrorCode::BelowValidityThreshold, "g=" + std::to_string(g) + " below " + r.threshold->str() +
                                                       " for q=" + std::to_string(q));
  }
  return r;
}

/// The smaller of the second-order bound and, where asserted, the third-order one.
inline BoundResult b2_upper_best(std::uint64_t q, unsigned g, const NqCatalog& catalog,
                                 unsigned max_bits = kDefaultMaxPrecisionBits) {
  BoundResult second = m_double_prime(q, g, catalog, max_bits);
  BoundResult third = b2_upper_third(q, g, catalog.exact(q, g), max_bits);
  if (third.valid && third.value() < second.value()) return third;
  return second;
}

/// (q^2 - q)/2 - g (q + sqrt q), rounded up; positive exactly when g < g2.
inline BoundResult b2_lower(std::uint64_t q, unsigned g, unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  const Integer Q(q);
  SurdValue v = SurdValue(Rational(Q * Q - Q, 2)) - SurdValue(Integer(g)) * (SurdValue(Q) + detail::sq(q));
  return detail::finish(Expr(v), BoundKind::LowerOnB2, std::nullopt, g, max_bits);
}

/// q + 1 + 2 g sqrt q.
inline BoundResult weil_upper(std::uint64_t q, unsigned g, unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  SurdValue v = SurdValue(Integer(q) + 1) + SurdValue(Integer(2 * g)) * detail::sq(q);
  return detail::finish(Expr(v), BoundKind::UpperOnN1, std::nullopt, g, max_bits);
}

/// Ihara: q + 1 + (sqrt((8q + 1) g^2 + 4 q (q - 1) g) - g) / 2, asserted for g >= g2.
inline BoundResult ihara_upper(std::uint64_t q, unsigned g, unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  const Integer Q(q);
  const Integer G(g);
  const Integer rad = (8 * Q + 1) * G * G + 4 * Q * (Q - 1) * G;
  Expr e = Expr(Q + 1) + (sqrt(Expr(rad)) - Expr(G)) / Expr(2);
  return detail::finish(std::move(e), BoundKind::UpperOnN1, genus_threshold_2(q), g, max_bits);
}

/// Minimum over the order-3 region of the largest N1, asserted for g >= g3.
/// With t = sqrt q: q + 1 + (sqrt(R) - g (q + 1) - S) / (t + 2), where
///   R = (5q^2 + 8qt + 2q + 1) g^2
///     + (3q^3 t + 2q^3 - q^2 t - 3qt - 2q + t) g
///     + q^5/4 - q^4 t - q^4 + q^3 t + 3q^3/2 + q^2 t - q^2 - qt + q/4,
///   S = q^2 t/2 - q^2 - qt + q + t/2.
inline BoundResult weil3_upper(std::uint64_t q, unsigned g, unsigned max_bits = kDefaultMaxPrecisionBits) {
  detail::require_prime_power(q);
  const SurdValue t = detail::sq(q);
  const SurdValue Q{Integer(q)};
  const SurdValue G{Integer(g)};
  const SurdValue q2 = Q * Q;
  const SurdValue q3 = q2 * Q;
  const SurdValue q4 = q3 * Q;
  const SurdValue q5 = q4 * Q;
  const SurdValue c2 = 5 * q2 + 8 * Q * t + 2 * Q + 1;
  const SurdValue c1 = 3 * q3 * t + 2 * q3 - q2 * t - 3 * Q * t - 2 * Q + t;
  const SurdValue c0 = q5 / 4 - q4 * t - q4 + q3 * t + 3 * q3 / 2 + q2 * t - q2 - Q * t + Q / 4;
  const SurdValue R = c2 * G * G + c1 * G + c0;
  const SurdValue S = q2 * t / 2 - q2 - Q * t + Q + t / 2;
  Expr e = Expr(Q + 1) + (sqrt(Expr(R)) - Expr(G * (Q + 1) + S)) / Expr(t + 2);
  return detail::finish(std::move(e), BoundKind::UpperOnN1, genus_threshold_3(q), g, max_bits);
}

}  // namespace fqc
