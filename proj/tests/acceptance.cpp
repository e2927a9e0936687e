// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fqcurves/bounds.hpp"
#include "fqcurves/curves.hpp"
#include "fqcurves/feasibility.hpp"
#include "fqcurves/spectrum.hpp"
#include "oracle.hpp"

using namespace fqc;

namespace {

// Value tolerance is zero everywhere: every comparison below is exact.
constexpr double kTableSeconds = 1.0;
constexpr double kNqSeconds = 1.0;
constexpr double kKeystoneSeconds = 30.0;
constexpr double kZetaSeconds = 5.0;
constexpr double kSpectrumSeconds = 5.0;
constexpr double kPropertySeconds = 30.0;

struct Tally {
  int checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

std::string cell(std::uint64_t q, unsigned g) { return "(" + std::to_string(q) + "," + std::to_string(g) + ")"; }

NqCatalog reference_catalog() {
  NqCatalog c = NqCatalog::embedded();
  c.load_file(FQC_DATA_DIR "/nq_reference.tsv");
  return c;
}

using Table = std::map<std::uint64_t, std::map<unsigned, long long>>;

void table_reproduction(Tally& t) {
  const NqCatalog cat = reference_catalog();
  const Table first = {{2, {{2, 7}, {3, 11}, {4, 14}, {5, 18}, {6, 21}}},
                       {3, {{2, 12}, {3, 17}, {4, 21}, {5, 26}, {6, 31}}},
                       {4, {{2, 18}, {3, 24}, {4, 30}, {5, 36}, {6, 42}}}};
  const Table second = {{2, {{2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 5}}},
                        {3, {{2, 3}, {3, 3}, {4, 3}, {5, 5}, {6, 7}}},
                        {4, {{2, 5}, {3, 0}, {4, 4}, {5, 5}, {6, 3}}}};
  const Table third = {{2, {{2, 0}, {3, 0}, {4, 1}, {5, 1}, {6, 1}}},
                       {3, {{3, 2}, {4, 1}, {5, 2}, {6, 3}}},
                       {4, {{5, 4}, {6, 1}}}};
  const Table combined = {{2, {{2, 0}, {3, 0}, {4, 1}, {5, 1}, {6, 1}}},
                          {3, {{2, 3}, {3, 2}, {4, 1}, {5, 2}, {6, 3}}},
                          {4, {{2, 5}, {3, 0}, {4, 4}, {5, 4}, {6, 1}}}};
  const Table lower = {{7, {{2, 2}}},           {8, {{2, 7}}},
                       {9, {{2, 12}}},          {11, {{2, 27}, {3, 13}}},
                       {13, {{2, 45}, {3, 29}, {4, 12}}}, {16, {{2, 80}, {3, 60}, {4, 40}, {5, 20}}}};

  for (const auto& [q, row] : first) {
    for (const auto& [g, v] : row) t.expect(m_prime(q, g).value() == v, "M' " + cell(q, g));
  }
  for (const auto& [q, row] : second) {
    for (const auto& [g, v] : row) t.expect(m_double_prime(q, g, cat).value() == v, "M'' " + cell(q, g));
  }
  for (const auto& [q, row] : third) {
    for (unsigned g = 2; g <= 6; ++g) {
      auto it = row.find(g);
      try {
        const Integer v = m_triple_prime(q, g, cat).value();
        t.expect(it != row.end() && v == it->second, "M''' " + cell(q, g));
      } catch (const Error& e) {
        t.expect(it == row.end() && e.code() == ErrorCode::BelowValidityThreshold, "M''' empty " + cell(q, g));
      }
    }
  }
  for (const auto& [q, row] : combined) {
    for (const auto& [g, v] : row) t.expect(b2_upper_best(q, g, cat).value() == v, "best " + cell(q, g));
  }
  for (const auto& [q, row] : lower) {
    for (unsigned g = 2; g <= 5; ++g) {
      const BoundResult r = b2_lower(q, g);
      auto it = row.find(g);
      t.expect(it == row.end() ? !r.positive : (r.positive && r.value() == it->second), "lower " + cell(q, g));
    }
  }
}

void exact_nq(Tally& t) {
  const NqCatalog cat = reference_catalog();
  auto exact_is = [&](std::uint64_t q, unsigned g, std::uint64_t pi, const Integer& want) {
    const NqGPi v = nq_g_pi(q, g, pi, cat);
    t.expect(v.exact() && v.lo == want, "N_" + std::to_string(q) + "(" + std::to_string(g) + "," + std::to_string(pi) + ")");
  };
  exact_is(2, 2, 3, 6);
  exact_is(2, 3, 4, 7);
  exact_is(4, 4, 5, 14);
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const std::uint64_t top = (q * q - q) / 2;
    for (std::uint64_t pi = 0; pi <= top; ++pi) exact_is(q, 0, pi, Integer(q + 1 + pi));
    const NqGPi past = nq_g_pi(q, 0, top + 1, cat);
    t.expect(past.hi < Integer(q + 2 + top), "N_q(0,pi) past range " + std::to_string(q));
  }
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const Integer m = isqrt(Integer(4 * q));
    const PrimePower pp = *prime_power(q);
    const bool first_branch = m % pp.p != 0 || pp.e % 2 == 0 || pp.e == 1;
    const Integer top = first_branch ? 1 + (Integer(q * q + q) - m * (m + 1)) / 2 : 1 + (Integer(q * q + q) + m * (1 - m)) / 2;
    const Integer base = first_branch ? Integer(q) + m : Integer(q) + m - 1;
    for (Integer pi = 1; pi <= top; ++pi) exact_is(q, 1, pi.convert_to<std::uint64_t>(), base + pi);
    const NqGPi past = nq_g_pi(q, 1, (top + 1).convert_to<std::uint64_t>(), cat);
    t.expect(past.hi < base + top + 1, "N_q(1,pi) past range " + std::to_string(q));
  }
}

oracle::IntForm int_form(const PlaneCurve& c) {
  oracle::IntForm f;
  for (const auto& term : c.terms()) f[term.exps] = static_cast<long long>(term.coeff);
  return f;
}

void keystone(Tally& t) {
  const NqCatalog cat = reference_catalog();
  const auto fixtures = load_fixtures(FQC_DATA_DIR "/fixtures.tsv");
  bool extra_f3 = false;
  for (const auto& fx : fixtures) {
    const FieldPtr f = make_field(fx.q);
    const PlaneCurve c = parse_curve(fx.polynomial, f);
    bool prime_coeffs = true;
    for (const auto& term : c.terms()) prime_coeffs = prime_coeffs && term.coeff < fx.q.p;
    std::vector<std::uint64_t> n;
    for (unsigned i = 1; i <= 3; ++i) {
      n.push_back(count_points(c, i));
      const std::uint64_t field_size = static_cast<std::uint64_t>(std::pow(double(fx.q.q), i));
      if (prime_coeffs && field_size <= 81) {
        const auto want = oracle::count_projective(int_form(c), static_cast<int>(fx.q.p), static_cast<int>(fx.q.e * i));
        t.expect(n.back() == want, fx.label + " N" + std::to_string(i) + " vs oracle");
      }
    }
    if (fx.q.q == 3 && fx.genus >= 1) extra_f3 = true;
    if (fx.genus == 0) {
      std::uint64_t qi = 1;
      for (unsigned i = 0; i < 3; ++i) t.expect(n[i] == (qi *= fx.q.q) + 1, fx.label + " line counts");
      continue;
    }
    const CountProfile prof{fx.q.q, fx.genus, n, true};
    prof.validate();
    const auto x = x_coordinates(prof);
    t.expect(in_region(fx.q.q, fx.genus, x).member(), fx.label + " region n=3");
    const Integer b2(b2_from_counts(n[0], n[1]));
    t.expect(b2_from_x(fx.q.q, fx.genus, x[0], x[1]) == SurdValue(b2), fx.label + " b2_from_x");
    const Integer n1(n[0]);
    t.expect(n1 <= weil_upper(fx.q.q, fx.genus).value(), fx.label + " weil");
    if (auto r = ihara_upper(fx.q.q, fx.genus); r.valid) t.expect(n1 <= r.value(), fx.label + " ihara");
    if (auto r = weil3_upper(fx.q.q, fx.genus); r.valid) t.expect(n1 <= r.value(), fx.label + " weil3");
    t.expect(b2 <= m_prime(fx.q.q, fx.genus).value(), fx.label + " M'");
    t.expect(b2 <= b2_upper_second(fx.q.q, fx.genus, n[0]).value(), fx.label + " second order");
    if (auto r = b2_upper_third(fx.q.q, fx.genus, n[0]); r.valid) t.expect(b2 <= r.value(), fx.label + " third order");
    if (auto r = b2_lower(fx.q.q, fx.genus); r.positive) t.expect(b2 >= r.value(), fx.label + " lower");
    if (auto rec = cat.find(fx.q.q, fx.genus)) t.expect(n[0] <= rec->hi, fx.label + " N_q(g)");
  }
  t.expect(fixtures.size() >= 4 && extra_f3, "fixture set covers a smooth curve over F_3");
}

void zeta_consistency(Tally& t) {
  std::mt19937_64 rng(20240601);
  const std::vector<std::uint64_t> qs{4, 9, 16, 25};
  for (int k = 0; k < 50; ++k) {
    const std::uint64_t q = qs[rng() % qs.size()];
    const unsigned g = static_cast<unsigned>(rng() % 6);
    const std::uint64_t pi = g + rng() % 11;
    const Integer s = *exact_isqrt(Integer(q));
    const auto n = zeta_counts(zeta_maximal(q, g, pi), 2);
    t.expect(n[0] == Integer(q + 1) + g * 2 * s + Integer(pi - g), "N1 " + cell(q, g) + " pi=" + std::to_string(pi));
    if (pi == g) {
      const Integer want = (Integer(q * q) + (2 * Integer(g) - 1) * q - 2 * Integer(g) * s * (2 * s + 1)) / 2;
      t.expect((n[1] - n[0]) / 2 == want, "B2 " + cell(q, g));
    }
  }
}

void spectrum(Tally& t) {
  const NqCatalog cat = reference_catalog();
  std::set<std::pair<unsigned, std::uint64_t>> in4, want4{{1, 1}};
  for (std::uint64_t pi = 0; pi <= 6; ++pi) want4.insert({0, pi});
  for (const auto& p : enumerate_spectrum(4, cat)) {
    t.expect(p.verdict.status != SpectrumStatus::Unknown, "q=4 no Unknown");
    if (p.verdict.status == SpectrumStatus::InSpectrum) in4.insert({p.g, p.pi});
  }
  t.expect(in4 == want4, "q=4 InSpectrum set");
  bool hermitian9 = false;
  for (const auto& p : enumerate_spectrum(9, cat)) {
    if (p.g == 2) {
      t.expect(p.verdict.status == SpectrumStatus::Excluded && p.verdict.reason == SpectrumReason::GenusGap,
               "q=9 (2," + std::to_string(p.pi) + ")");
    }
    if (p.g == 3 && p.pi == 3) hermitian9 = p.verdict.status == SpectrumStatus::InSpectrum;
  }
  t.expect(hermitian9, "q=9 (3,3)");
  for (std::uint64_t q = 4; q <= 49; ++q) {
    if (!prime_power(q) || !exact_isqrt(Integer(q))) continue;
    const auto th = spectrum_thresholds(q);
    for (unsigned g = 0; Integer(g) <= th.g1; ++g) {
      const Integer s = th.sqrt_q;
      const Integer linear = (1 - Integer(q) - s) * g + Integer(q * q - q) / 2;
      const Integer direct = g + maximal_closed_points(q, g);
      t.expect(linear == direct && maximal_pi_max(q, g) == linear, "pi_max " + cell(q, g));
    }
  }
}

std::vector<Rational> random_gram_tuple(std::mt19937_64& rng, std::size_t n, bool mixture) {
  std::uniform_int_distribution<int> d(1, 9);
  std::vector<Rational> x(n, Rational(0));
  if (!mixture) {
    std::uniform_int_distribution<int> num(-12, 12);
    for (auto& v : x) v = Rational(num(rng), 12);
    return x;
  }
  const int parts = 1 + static_cast<int>(rng() % 3);
  for (int j = 0; j < parts; ++j) {
    const int a = d(rng), b = d(rng);
    const Rational c(a * a - b * b, a * a + b * b);
    Rational prev = 1, cur = c;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += cur / parts;
      const Rational next = 2 * c * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return x;
}

void properties(Tally& t) {
  std::mt19937_64 rng(4242);
  for (int k = 0; k < 500; ++k) {
    const auto x = random_gram_tuple(rng, 1 + k % 4, k % 2 == 0);
    const std::vector<SurdValue> xs(x.begin(), x.end());
    t.expect(in_region(2, 1, xs).in_psd == oracle::ldl_psd(oracle::toeplitz(x)), "psd tuple " + std::to_string(k));
  }
  for (std::uint64_t q = 2; q <= 16; ++q) {
    if (!prime_power(q)) continue;
    for (unsigned g = 1; g <= 10; ++g) {
      const Integer first = m_prime(q, g).value();
      const Integer r = weil_radius_floor(q, g);
      for (Integer n = std::max(Integer(0), Integer(q) + 1 - r); n <= Integer(q) + 1 + r; ++n) {
        t.expect(b2_upper_second(q, g, n.convert_to<std::uint64_t>()).value() <= first, "M''<=M' " + cell(q, g));
      }
    }
  }
  std::uniform_int_distribution<int> d(-1000, 1000);
  std::uniform_int_distribution<int> den(1, 50);
  for (int k = 0; k < 1000; ++k) {
    const SurdValue v(Integer(2 + k % 47), Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
    const Rounding dir = k % 2 ? Rounding::Floor : Rounding::Ceil;
    t.expect(interval_floor(Expr(v), dir).value == surd_truncate(v, dir).value, "floor " + v.str());
  }
}

bool criterion(const std::string& id, const std::string& title, double limit, const std::function<void(Tally&)>& body) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit;
  const bool ok = t.failures.empty() && in_time;
  std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << title << "  checks=" << t.checks << "  time=" << std::fixed
            << std::setprecision(3) << secs << "s (limit " << limit << "s)\n";
  for (const auto& f : t.failures) std::cout << "       " << f << "\n";
  if (!in_time) std::cout << "       over time limit\n";
  return ok;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= criterion("AC1", "bound tables reproduce exactly", kTableSeconds, table_reproduction);
  ok &= criterion("AC2", "exact N_q(g,pi) values", kNqSeconds, exact_nq);
  ok &= criterion("AC3", "point counts, region and bounds on fixtures", kKeystoneSeconds, keystone);
  ok &= criterion("AC4", "zeta counts of maximal curves", kZetaSeconds, zeta_consistency);
  ok &= criterion("AC5", "maximal spectrum enumeration", kSpectrumSeconds, spectrum);
  ok &= criterion("AC6", "property suites", kPropertySeconds, properties);
  std::cout << (ok ? "ALL PASS" : "SOME CRITERIA FAILED") << "\n";
  return ok ? 0 : 1;
}
