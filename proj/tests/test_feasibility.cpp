#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fqcurves/bounds.hpp"
#include "fqcurves/curves.hpp"
#include "fqcurves/feasibility.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace fqc;
using testing_support::code_of;

namespace {

SurdValue s2(Rational a, Rational b) { return SurdValue(Integer(2), a, b); }

std::vector<std::vector<SurdValue>> submatrix(const GramSpec& spec, const std::vector<std::size_t>& idx) {
  std::vector<std::vector<SurdValue>> a;
  for (auto r : idx) {
    std::vector<SurdValue> row;
    for (auto c : idx) row.push_back(spec.entry(r, c));
    a.push_back(row);
  }
  return a;
}

/// Random tuple from a positive mixture of cosines at rational angles, which
/// makes the Toeplitz matrix PSD; cos(k t) by the Chebyshev recursion.
std::vector<Rational> cosine_mixture(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(1, 9);
  const int parts = 1 + static_cast<int>(rng() % 3);
  std::vector<Rational> x(n, Rational(0));
  Rational total = 0;
  std::vector<Rational> weights;
  for (int j = 0; j < parts; ++j) weights.push_back(d(rng)), total += weights.back();
  for (int j = 0; j < parts; ++j) {
    const int a = d(rng), b = d(rng);
    const Rational c(a * a - b * b, a * a + b * b);
    Rational prev = 1, cur = c;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += weights[j] / total * cur;
      const Rational next = 2 * c * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return x;
}

std::vector<Rational> uniform_tuple(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-12, 12);
  std::vector<Rational> x;
  for (std::size_t k = 0; k < n; ++k) x.emplace_back(num(rng), 12);
  return x;
}

std::vector<SurdValue> to_surds(const std::vector<Rational>& x) { return {x.begin(), x.end()}; }

}  // namespace

TEST(PrincipalMinor, Examples) {
  EXPECT_EQ(principal_minor(GramSpec{{SurdValue(0)}}, {1, 2}), SurdValue(1));
  EXPECT_EQ(principal_minor(GramSpec{{SurdValue(Rational(1, 3))}}, {1, 2}), SurdValue(Rational(8, 9)));
  EXPECT_EQ(principal_minor(GramSpec{{SurdValue(-1), SurdValue(1)}}, {1, 2, 3}), SurdValue(0));
  EXPECT_EQ(principal_minor(GramSpec{{SurdValue(-1), SurdValue(1), SurdValue(-1)}}, {1, 2, 3, 4}), SurdValue(0));
  // 1 + 2 x1^2 x2 - x2^2 - 2 x1^2 at (1/2, 1/3)
  EXPECT_EQ(principal_minor(GramSpec{{SurdValue(Rational(1, 2)), SurdValue(Rational(1, 3))}}, {1, 2, 3}),
            SurdValue(Rational(1) + Rational(1, 6) - Rational(1, 9) - Rational(1, 2)));
  EXPECT_EQ(code_of([] { principal_minor(GramSpec{{SurdValue(0)}}, {1, 3}); }), ErrorCode::InvalidArgument);
}

TEST(PrincipalMinor, AgreesWithLaplaceOnRationalTuples) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4;
    const GramSpec spec{to_surds(t % 2 ? uniform_tuple(rng, n) : cosine_mixture(rng, n))};
    for (std::uint32_t mask = 1; mask < (1U << spec.size()); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < spec.size(); ++k) {
        if (mask & (1U << k)) idx.push_back(k + 1);
      }
      EXPECT_EQ(principal_minor(spec, idx), oracle::laplace_det(submatrix(spec, idx)));
    }
  }
}

TEST(PrincipalMinor, AgreesWithLaplaceOnSurdTuples) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-6, 6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4;
    GramSpec spec;
    for (std::size_t k = 0; k < n; ++k) spec.x.push_back(s2(Rational(num(rng), 7), Rational(num(rng), 11)));
    std::vector<std::size_t> full;
    for (std::size_t k = 1; k <= spec.size(); ++k) full.push_back(k);
    EXPECT_EQ(principal_minor(spec, full), oracle::laplace_det(submatrix(spec, full)));
  }
}

TEST(PsdMinors, MatchDecompositionOracleOn500Tuples) {
  std::mt19937_64 rng(99);
  int psd = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 4;
    const auto x = t % 2 ? uniform_tuple(rng, n) : cosine_mixture(rng, n);
    const bool want = oracle::ldl_psd(oracle::toeplitz(x));
    EXPECT_EQ(in_region(2, 1, to_surds(x)).in_psd, want) << t;
    psd += want;
  }
  EXPECT_GT(psd, 250);  // both branches exercised
  EXPECT_LT(psd, 500);
}

TEST(InRegion, Examples) {
  const RegionVerdict herm = in_region(4, 1, {SurdValue(-1), SurdValue(1), SurdValue(-1)});
  EXPECT_TRUE(herm.member());
  EXPECT_EQ(arithmetic_constraint(4, 1, 2, SurdValue(-1), SurdValue(1)), SurdValue(0));

  const RegionVerdict out = in_region(2, 1, {SurdValue(2)});
  EXPECT_FALSE(out.member());
  EXPECT_FALSE(out.in_cube);
  EXPECT_EQ(out.failing_constraints.front(), "cube.x1.hi");

  const RegionVerdict h2 = in_region(2, 1, {SurdValue(0), SurdValue(1)});
  EXPECT_FALSE(h2.member());
  EXPECT_TRUE(h2.in_psd);
  EXPECT_EQ(h2.failing_constraints, std::vector<std::string>{"h2"});
  EXPECT_EQ(arithmetic_constraint(2, 1, 2, SurdValue(0), SurdValue(1)), SurdValue(Rational(1, 2)));

  const RegionVerdict neg = in_region(9, 3, {SurdValue(Rational(1, 2)), SurdValue(-1)});
  EXPECT_FALSE(neg.in_psd);
  EXPECT_NE(std::find(neg.failing_constraints.begin(), neg.failing_constraints.end(), "minor{1,2,3}"),
            neg.failing_constraints.end());
}

TEST(InRegion, Errors) {
  EXPECT_EQ(code_of([] { in_region(2, 0, {SurdValue(0)}); }), ErrorCode::GenusZero);
  EXPECT_EQ(code_of([] { in_region(2, 1, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { in_region(2, 1, std::vector<SurdValue>(7, SurdValue(0))); }), ErrorCode::OrderTooLarge);
}

TEST(InRegion, FixturesAtOrderThree) {
  for (const auto& fx : load_fixtures(FQC_DATA_DIR "/fixtures.tsv")) {
    if (fx.genus == 0) continue;
    const PlaneCurve c = parse_curve(fx.polynomial, make_field(fx.q));
    const CountProfile prof{fx.q.q, fx.genus, {count_points(c, 1), count_points(c, 2), count_points(c, 3)}, true};
    const auto x = x_coordinates(prof);
    const RegionVerdict v = in_region(fx.q.q, fx.genus, x);
    EXPECT_TRUE(v.member()) << fx.label << " " << (v.failing_constraints.empty() ? "" : v.failing_constraints[0]);
    const auto b2 = b2_from_counts(prof.counts[0], prof.counts[1]);
    EXPECT_EQ(b2_from_x(fx.q.q, fx.genus, x[0], x[1]), SurdValue(Integer(b2))) << fx.label;
  }
}

TEST(Boundaries, OrderTwo) {
  EXPECT_EQ(x2_floor_order2(SurdValue(0)), SurdValue(-1));
  EXPECT_EQ(x2_floor_order2(SurdValue(1)), SurdValue(1));
  EXPECT_EQ(x2_floor_order2(SurdValue(-1)), SurdValue(1));
  EXPECT_EQ(x2_floor_order2(SurdValue(Rational(1, 2))), SurdValue(Rational(-1, 2)));
  EXPECT_EQ(code_of([] { x2_floor_order2(SurdValue(Rational(3, 2))); }), ErrorCode::OutOfCube);
}

TEST(Boundaries, OrderThree) {
  for (std::uint64_t q : {2, 3, 4, 9}) {
    for (unsigned g : {1U, 3U, 10U}) {
      EXPECT_EQ(x2_floor_order3(q, g, SurdValue(-1)).exact(), std::optional<SurdValue>(SurdValue(1))) << q << "," << g;
    }
  }
  EXPECT_NEAR(x2_floor_order3(4, 6, SurdValue(0)).approx(), -std::sqrt(1.625), 1e-12);
  EXPECT_EQ(code_of([] { x2_floor_order3(2, 0, SurdValue(0)); }), ErrorCode::GenusZero);
}

TEST(B2FromX, Examples) {
  EXPECT_EQ(b2_from_x(4, 1, SurdValue(-1), SurdValue(1)), SurdValue(0));
  EXPECT_EQ(b2_from_x(7, 3, SurdValue(0), SurdValue(0)), SurdValue(21));
  EXPECT_EQ(b2_from_x(2, 1, SurdValue(0), SurdValue(-1)), SurdValue(3));
}

TEST(Substitution, OrderTwoBoundaryGivesSecondOrderBound) {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    for (unsigned g : {1U, 2U, 4U}) {
      const SurdValue s = SurdValue::sqrt_of(Integer(q));
      for (std::uint64_t n = q; n <= q + 2 + g; ++n) {
        const SurdValue x1 = (SurdValue(Integer(q) + 1) - SurdValue(Integer(n))) / (SurdValue(Integer(2 * g)) * s);
        if (x1 < SurdValue(-1) || x1 > SurdValue(1)) continue;
        const SurdValue via_x = b2_from_x(q, g, x1, x2_floor_order2(x1));
        EXPECT_EQ(std::optional<SurdValue>(via_x), b2_upper_second(q, g, n).exact.exact()) << q << "," << g << "," << n;
      }
    }
  }
}

TEST(Substitution, OrderThreeBoundaryGivesThirdOrderBound) {
  for (std::uint64_t q : {2, 3, 4}) {
    for (unsigned g : {4U, 6U, 20U}) {
      const SurdValue s = SurdValue::sqrt_of(Integer(q));
      for (std::uint64_t n = q; n <= q + 6; ++n) {
        const SurdValue x1 = (SurdValue(Integer(q) + 1) - SurdValue(Integer(n))) / (SurdValue(Integer(2 * g)) * s);
        const Expr via_x = b2_from_x(q, g, x1, x2_floor_order3(q, g, x1));
        const BoundResult direct = b2_upper_third(q, g, n);
        EXPECT_NEAR(via_x.approx(), direct.exact.approx(), 1e-9) << q << "," << g << "," << n;
        EXPECT_EQ(interval_floor(via_x).value, direct.value()) << q << "," << g << "," << n;
      }
    }
  }
}
