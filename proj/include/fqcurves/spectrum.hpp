#pragma once

// Exact values of N_q(g, pi), existence of delta-optimal curves, and the
// (g, pi) spectrum of maximal curves over square q.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fqcurves/bounds.hpp"
#include "fqcurves/catalog.hpp"
#include "fqcurves/error.hpp"
#include "fqcurves/exactnum.hpp"
#include "fqcurves/gf.hpp"

namespace fqc {

// ---------------------------------------------------------------------------
// Genus 1 data

/// N_q(1) and the largest pi for which N_q(1, pi) = N_q(1) + pi - 1.
struct GenusOneData {
  bool divisible_case = false;  // p | [2 sqrt q], q not square, q != p
  Integer n1;
  Integer pi_top;
};

inline GenusOneData genus_one_data(std::uint64_t q) {
  const PrimePower pp = detail::require_prime_power(q);
  const Integer Q(q);
  const Integer m = isqrt(4 * Q);
  GenusOneData d;
  d.divisible_case = m % pp.p == 0 && pp.e % 2 == 1 && pp.e > 1;
  if (!d.divisible_case) {
    d.n1 = Q + 1 + m;
    d.pi_top = 1 + (Q * Q + Q - m * (m + 1)) / 2;
  } else {
    d.n1 = Q + m;
    d.pi_top = 1 + (Q * Q + Q + m * (1 - m)) / 2;
  }
  return d;
}

// ---------------------------------------------------------------------------
// delta-optimal curves: N_q(g, pi) = N_q(g) + pi - g

enum class Answer { Yes, No, Unknown };

inline std::string_view answer_name(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Unknown: return "Unknown";
  }
  return "?";
}

struct DeltaVerdict {
  Answer answer = Answer::Unknown;
  std::string reason;
};

/// Closed points of degree 2 on a smooth maximal curve of genus g over square q:
/// (q^2 + (2g - 1) q - 2 g sqrt(q) (2 sqrt(q) + 1)) / 2.
inline Integer maximal_closed_points(std::uint64_t q, unsigned g) {
  const auto s = exact_isqrt(Integer(q));
  if (!s) throw Error(ErrorCode::NotSquare, std::to_string(q) + " is not a square");
  const Integer Q(q);
  const Integer G(g);
  return (Q * Q + (2 * G - 1) * Q - 2 * G * *s * (2 * *s + 1)) / 2;
}

/// True when the catalog pins N_q(g) at q + 1 + 2g sqrt(q) (square q only).
inline bool catalog_says_maximal(std::uint64_t q, unsigned g, const NqCatalog& catalog) {
  const auto s = exact_isqrt(Integer(q));
  const auto rec = catalog.find(q, g);
  return s && rec && rec->exact() && Integer(rec->lo) == Integer(q) + 1 + 2 * Integer(g) * *s;
}

/// Largest pi - g for which delta-optimal curves are proven to exist: 0
/// (smooth curves), the lower bound on B2, or the exact closed-point count
/// when optimal curves are maximal.
inline Integer delta_proven_defect(std::uint64_t q, unsigned g, const NqCatalog& catalog) {
  Integer best = 0;
  const BoundResult lower = b2_lower(q, g);
  if (lower.value() > best) best = lower.value();
  if (g >= 1 && catalog_says_maximal(q, g, catalog)) {
    const Integer b2 = maximal_closed_points(q, g);
    if (b2 > best) best = b2;
  }
  return best;
}

inline DeltaVerdict delta_optimal_exists(std::uint64_t q, unsigned g, std::uint64_t pi, const NqCatalog& catalog) {
  detail::require_prime_power(q);
  if (pi < g) throw Error(ErrorCode::InvalidArgument, "pi < g");
  const Integer Q(q);
  const Integer defect = Integer(pi) - g;
  auto yes_no = [](bool yes, const char* why) { return DeltaVerdict{yes ? Answer::Yes : Answer::No, why}; };
  if (g == 0) return yes_no(defect <= (Q * Q - Q) / 2, "GenusZeroRange");
  if (g == 1) return yes_no(Integer(pi) <= genus_one_data(q).pi_top, "GenusOneRange");
  if (defect == 0) return {Answer::Yes, "Smooth"};
  if (defect <= b2_lower(q, g).value()) return {Answer::Yes, "LowerBound"};
  if (catalog_says_maximal(q, g, catalog)) return yes_no(defect <= maximal_closed_points(q, g), "MaximalClosedPoints");
  const auto rec = catalog.find(q, g);
  if (!rec || !rec->exact()) return {Answer::Unknown, "CatalogMiss"};
  if (defect > m_double_prime(q, g, catalog).value()) return {Answer::No, "SecondOrder"};
  const BoundResult third = b2_upper_third(q, g, rec->lo);
  if (third.valid && defect > third.value()) return {Answer::No, "ThirdOrder"};
  return {Answer::Unknown, "Gap"};
}

// ---------------------------------------------------------------------------
// N_q(g, pi)

struct NqGPi {
  enum class Kind { Exact, Range, Unknown };
  Kind kind = Kind::Unknown;
  Integer lo;
  Integer hi;
  std::string reason;

  bool exact() const { return kind == Kind::Exact; }
};

namespace detail {

inline NqGPi nq_range(Integer lo, Integer hi, std::string reason) {
  if (lo == hi) return {NqGPi::Kind::Exact, lo, hi, std::move(reason)};
  return {NqGPi::Kind::Range, std::move(lo), std::move(hi), std::move(reason)};
}

}  // namespace detail

/// Largest number of rational points on a curve of geometric genus g and
/// arithmetic genus pi, exact where provable, else a range.
inline NqGPi nq_g_pi(std::uint64_t q, unsigned g, std::uint64_t pi, const NqCatalog& catalog) {
  detail::require_prime_power(q);
  if (pi < g) throw Error(ErrorCode::InvalidArgument, "pi < g");
  if (q == 2 && g == 2 && pi == 3) return {NqGPi::Kind::Exact, 6, 6, "fixed"};
  if (q == 2 && g == 3 && pi == 4) return {NqGPi::Kind::Exact, 7, 7, "fixed"};
  if (q == 4 && g == 4 && pi == 5) return {NqGPi::Kind::Exact, 14, 14, "fixed"};

  const Integer Q(q);
  const Integer P(pi);
  const Integer G(g);
  if (g == 0) {
    const Integer top = (Q * Q - Q) / 2;
    if (P <= top) return {NqGPi::Kind::Exact, Q + 1 + P, Q + 1 + P, "GenusZeroRange"};
    // monotone in pi, strictly below q + 1 + pi past the range
    return detail::nq_range(Q + 1 + top, Q + P, "GenusZeroMonotone");
  }
  if (g == 1) {
    const GenusOneData d = genus_one_data(q);
    if (P <= d.pi_top) return {NqGPi::Kind::Exact, d.n1 + P - 1, d.n1 + P - 1, "GenusOneRange"};
    return detail::nq_range(d.n1 + d.pi_top - 1, d.n1 + P - 2, "GenusOneMonotone");
  }

  const auto rec = catalog.find(q, g);
  if (!rec) return {NqGPi::Kind::Unknown, 0, 0, "CatalogMiss"};
  const Integer defect = P - G;
  if (!rec->exact()) {
    return detail::nq_range(Integer(rec->lo), Integer(rec->hi) + defect, "Sandwich");
  }
  const Integer n(rec->lo);
  const DeltaVerdict dv = delta_optimal_exists(q, g, pi, catalog);
  if (dv.answer == Answer::Yes) return {NqGPi::Kind::Exact, n + defect, n + defect, "DeltaOptimal:" + dv.reason};
  const Integer lo = n + delta_proven_defect(q, g, catalog);
  Integer hi = n + defect;
  if (dv.answer == Answer::No) hi -= 1;
  return detail::nq_range(lo, hi, dv.answer == Answer::No ? "NotDeltaOptimal:" + dv.reason : "Sandwich");
}

// ---------------------------------------------------------------------------
// Maximal curves over square q

struct SpectrumThresholds {
  Integer sqrt_q;
  Integer g1;  // sqrt(q)(sqrt(q) - 1)/2, the Hermitian genus
  Integer g2;  // floor((sqrt(q) - 1)^2 / 4)
  Integer g3;  // floor((q - sqrt(q) + 4) / 6)
};

inline Integer require_square_root(std::uint64_t q) {
  detail::require_prime_power(q);
  auto s = exact_isqrt(Integer(q));
  if (!s) throw Error(ErrorCode::NotSquare, std::to_string(q) + " is not a square");
  return *s;
}

inline SpectrumThresholds spectrum_thresholds(std::uint64_t q) {
  const Integer s = require_square_root(q);
  const Integer Q(q);
  return {s, s * (s - 1) / 2, (s - 1) * (s - 1) / 4, (Q - s + 4) / 6};
}

/// Largest arithmetic genus of a maximal curve of geometric genus g; both
/// closed forms are evaluated and must agree.
inline Integer maximal_pi_max(std::uint64_t q, unsigned g) {
  const Integer s = require_square_root(q);
  const Integer Q(q);
  const Integer G(g);
  const Integer linear = (1 - Q - s) * G + (Q * Q - Q) / 2;
  const Integer direct = G + maximal_closed_points(q, g);
  if (linear != direct) throw Error(ErrorCode::InvalidArgument, "pi_max forms disagree");
  return linear;
}

enum class SpectrumStatus { InSpectrum, Excluded, Unknown };
enum class SpectrumReason {
  GenusGap,
  PiAboveMax,
  NormalizationNotMaximal,
  ProvenFamily,
  HermitianPoint,
  RationalRange,
  CatalogMiss,
  IffBoundHolds,
};

inline std::string_view status_name(SpectrumStatus s) {
  switch (s) {
    case SpectrumStatus::InSpectrum: return "InSpectrum";
    case SpectrumStatus::Excluded: return "Excluded";
    case SpectrumStatus::Unknown: return "Unknown";
  }
  return "?";
}

inline std::string_view reason_name(SpectrumReason r) {
  switch (r) {
    case SpectrumReason::GenusGap: return "GenusGap";
    case SpectrumReason::PiAboveMax: return "PiAboveMax";
    case SpectrumReason::NormalizationNotMaximal: return "NormalizationNotMaximal";
    case SpectrumReason::ProvenFamily: return "ProvenFamily";
    case SpectrumReason::HermitianPoint: return "HermitianPoint";
    case SpectrumReason::RationalRange: return "RationalRange";
    case SpectrumReason::CatalogMiss: return "CatalogMiss";
    case SpectrumReason::IffBoundHolds: return "IffBoundHolds";
  }
  return "?";
}

inline std::optional<SpectrumStatus> parse_status(std::string_view s) {
  for (auto v : {SpectrumStatus::InSpectrum, SpectrumStatus::Excluded, SpectrumStatus::Unknown}) {
    if (status_name(v) == s) return v;
  }
  return std::nullopt;
}

inline std::optional<SpectrumReason> parse_reason(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(SpectrumReason::IffBoundHolds); ++k) {
    auto v = static_cast<SpectrumReason>(k);
    if (reason_name(v) == s) return v;
  }
  return std::nullopt;
}

struct SpectrumVerdict {
  SpectrumStatus status = SpectrumStatus::Unknown;
  SpectrumReason reason = SpectrumReason::CatalogMiss;
  Integer pi_max;

  friend bool operator==(const SpectrumVerdict&, const SpectrumVerdict&) = default;
};

/// Whether a maximal curve of geometric genus g and arithmetic genus pi
/// exists over F_q (q square). Structural reasons are checked before the
/// catalog so verdicts do not move when catalog data changes.
inline SpectrumVerdict classify_maximal(std::uint64_t q, unsigned g, std::uint64_t pi, const NqCatalog& catalog) {
  const SpectrumThresholds t = spectrum_thresholds(q);
  if (pi < g) throw Error(ErrorCode::InvalidArgument, "pi < g");
  const Integer G(g);
  const Integer P(pi);
  const Integer Q(q);
  SpectrumVerdict v;
  v.pi_max = maximal_pi_max(q, g);
  auto verdict = [&](SpectrumStatus s, SpectrumReason r) {
    v.status = s;
    v.reason = r;
    return v;
  };
  if (P > v.pi_max) return verdict(SpectrumStatus::Excluded, SpectrumReason::PiAboveMax);
  if (G > t.g1 || (G > t.g2 && G < t.g1)) return verdict(SpectrumStatus::Excluded, SpectrumReason::GenusGap);
  if (G == t.g1) return verdict(SpectrumStatus::InSpectrum, SpectrumReason::HermitianPoint);
  if (g == 0) return verdict(SpectrumStatus::InSpectrum, SpectrumReason::RationalRange);
  if (G == t.g2 || G == t.g3) return verdict(SpectrumStatus::InSpectrum, SpectrumReason::ProvenFamily);

  const Integer maximal = Q + 1 + 2 * G * t.sqrt_q;
  if (auto rec = catalog.find(q, g)) {
    if (Integer(rec->lo) == maximal) return verdict(SpectrumStatus::InSpectrum, SpectrumReason::IffBoundHolds);
    if (Integer(rec->hi) < maximal) {
      return verdict(SpectrumStatus::Excluded, SpectrumReason::NormalizationNotMaximal);
    }
  }
  return verdict(SpectrumStatus::Unknown, SpectrumReason::CatalogMiss);
}

struct SpectrumPoint {
  unsigned g = 0;
  std::uint64_t pi = 0;
  SpectrumVerdict verdict;
};

/// Every lattice point of the triangle g >= 0, pi >= g, pi <= pi_max(g),
/// classified; ordered by g then pi.
inline std::vector<SpectrumPoint> enumerate_spectrum(std::uint64_t q, const NqCatalog& catalog) {
  const SpectrumThresholds t = spectrum_thresholds(q);
  std::vector<SpectrumPoint> out;
  const auto g_max = t.g1.convert_to<unsigned>();
  for (unsigned g = 0; g <= g_max; ++g) {
    const Integer top = maximal_pi_max(q, g);
    for (Integer pi = g; pi <= top; ++pi) {
      const auto p = pi.convert_to<std::uint64_t>();
      out.push_back({g, p, classify_maximal(q, g, p, catalog)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zeta functions of maximal curves

/// Z(T) = numerator(T) / ((1 - T)(1 - qT)).
struct ZetaFunction {
  std::uint64_t q = 0;
  unsigned g = 0;
  std::uint64_t pi = 0;
  std::vector<Integer> numerator;  // coefficient of T^k at index k

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < numerator.size(); ++k) {
      const Integer& c = numerator[k];
      if (c == 0) continue;
      std::string mag = (c < 0 ? Integer(-c) : c).str();
      std::string mono = k == 0 ? "" : k == 1 ? "T" : "T^" + std::to_string(k);
      std::string term = k == 0 ? mag : (mag == "1" ? mono : mag + "*" + mono);
      if (out.empty()) {
        out = (c < 0 ? "-" : "") + term;
      } else {
        out += (c < 0 ? " - " : " + ") + term;
      }
    }
    return out.empty() ? "0" : out;
  }
};

inline std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// (q T^2 + [2 sqrt q] T + 1)^g (1 + T)^(pi - g) over (1 - T)(1 - qT).
inline ZetaFunction zeta_maximal(std::uint64_t q, unsigned g, std::uint64_t pi) {
  detail::require_prime_power(q);
  if (pi < g) throw Error(ErrorCode::InvalidArgument, "pi < g");
  const Integer m = surd_floor(SurdValue(2) * SurdValue::sqrt_of(Integer(q))).value;
  ZetaFunction z{q, g, pi, {Integer(1)}};
  const std::vector<Integer> quad{Integer(1), m, Integer(q)};
  const std::vector<Integer> lin{Integer(1), Integer(1)};
  for (unsigned k = 0; k < g; ++k) z.numerator = poly_mul(z.numerator, quad);
  for (std::uint64_t k = g; k < pi; ++k) z.numerator = poly_mul(z.numerator, lin);
  return z;
}

/// N_1..N_n from T d/dT log Z = sum N_i T^i, by exact power-series division.
inline std::vector<Integer> zeta_counts(const ZetaFunction& z, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto& p = z.numerator;
  if (p.empty() || p[0] != 1) throw Error(ErrorCode::InvalidArgument, "numerator must have constant term 1");
  auto coeff = [&](std::size_t k) { return k < p.size() ? p[k] : Integer(0); };
  std::vector<Integer> d(n);  // P'/P = sum d_k T^k
  for (std::size_t k = 0; k < n; ++k) {
    Integer v = Integer(k + 1) * coeff(k + 1);
    for (std::size_t j = 1; j <= k; ++j) v -= coeff(j) * d[k - j];
    d[k] = v;
  }
  std::vector<Integer> out(n);
  Integer qi = 1;
  for (unsigned i = 1; i <= n; ++i) {
    qi *= z.q;
    out[i - 1] = d[i - 1] + 1 + qi;
  }
  return out;
}

}  // namespace fqc
