#pragma once

// Projective plane curves over F_q: parsing, brute-force point counts over
// F_{q^i}, and the derived closed-point / normalized-coordinate data.

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fqcurves/error.hpp"
#include "fqcurves/exactnum.hpp"
#include "fqcurves/gf.hpp"

namespace fqc {

using Exponents = std::array<unsigned, 3>;  // powers of x, y, z

struct Term {
  Exponents exps{};
  Field::Code coeff = 0;
};

class PlaneCurve {
 public:
  /// Collects like terms, drops zeros and checks homogeneity.
  PlaneCurve(FieldPtr field, const std::vector<Term>& terms) : field_(std::move(field)) {
    std::map<Exponents, Field::Code, std::greater<>> acc;
    for (const auto& t : terms) {
      auto& c = acc[t.exps];
      c = field_->add(c, t.coeff);
    }
    for (const auto& [e, c] : acc) {
      if (c != 0) terms_.push_back({e, c});
    }
    if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "curve polynomial is zero");
    degree_ = total(terms_.front().exps);
    for (const auto& t : terms_) {
      if (total(t.exps) != degree_) {
        throw Error(ErrorCode::NotHomogeneous, "terms of degree " + std::to_string(degree_) + " and " +
                                                   std::to_string(total(t.exps)));
      }
    }
    if (degree_ == 0) throw Error(ErrorCode::NotHomogeneous, "constant polynomial");
  }

  const FieldPtr& field() const { return field_; }
  unsigned degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Value of the form at (x:y:z) in an extension `ext` of the curve's field.
  Field::Code evaluate(const Field& ext, Field::Code x, Field::Code y, Field::Code z) const {
    Field::Code s = 0;
    for (const auto& t : terms_) {
      Field::Code v = ext.mul(t.coeff, ext.pow(x, t.exps[0]));
      v = ext.mul(v, ext.pow(y, t.exps[1]));
      v = ext.mul(v, ext.pow(z, t.exps[2]));
      s = ext.add(s, v);
    }
    return s;
  }

  /// Same curve with every coefficient multiplied by `c` (nonzero).
  PlaneCurve scaled(Field::Code c) const {
    if (c == 0) throw Error(ErrorCode::ZeroPolynomial, "scaling by zero");
    std::vector<Term> t = terms_;
    for (auto& term : t) term.coeff = field_->mul(term.coeff, c);
    return PlaneCurve(field_, t);
  }

  std::string str() const {
    std::string out;
    static constexpr char kVars[3] = {'x', 'y', 'z'};
    for (const auto& t : terms_) {
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (t.exps[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += kVars[v];
        if (t.exps[v] > 1) mono += "^" + std::to_string(t.exps[v]);
      }
      std::string coef = field_->format(t.coeff);
      if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
      std::string term = t.coeff == 1 ? mono : coef + "*" + mono;
      out += (out.empty() ? "" : " + ") + term;
    }
    return out;
  }

 private:
  static unsigned total(const Exponents& e) { return e[0] + e[1] + e[2]; }

  FieldPtr field_;
  unsigned degree_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

/// Recursive-descent parser for polynomials in x, y, z with integer
/// coefficients and the field generator t (the class of the variable of the
/// defining modulus of F_q over F_p).
class CurveParser {
 public:
  using Poly = std::map<Exponents, Field::Code>;

  CurveParser(std::string_view text, const Field& field) : s_(text), f_(field) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  static constexpr unsigned kMaxExponent = 4096;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 'y' || c == 'z' || c == 't';
  }

  Poly expr() {
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Poly acc = term();
    if (negate) acc = scale(acc, f_.neg(1));
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = add(acc, term());
      } else if (peek('-')) {
        ++pos_;
        acc = add(acc, scale(term(), f_.neg(1)));
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = mul(acc, power());
      } else if (starts_primary()) {
        acc = mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = primary();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    unsigned e = number();
    Poly r{{Exponents{0, 0, 0}, 1}};
    for (unsigned k = 0; k < e; ++k) r = mul(r, base);
    return r;
  }

  unsigned number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    unsigned long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_++] - '0');
      if (v > kMaxExponent * 1000ULL) fail("number too large");
    }
    return static_cast<unsigned>(v);
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const unsigned n = number();
      return constant(f_.from_integer(n));
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    ++pos_;
    switch (c) {
      case 'x': return Poly{{Exponents{1, 0, 0}, 1}};
      case 'y': return Poly{{Exponents{0, 1, 0}, 1}};
      case 'z': return Poly{{Exponents{0, 0, 1}, 1}};
      case 't':
        if (f_.is_prime_field()) fail("'t' is undefined over the prime field " + f_.name());
        return constant(f_.from_coeffs({0, 1}));
      default: --pos_; fail("unexpected '" + std::string(1, c) + "'");
    }
  }

  static Poly constant(Field::Code c) { return c == 0 ? Poly{} : Poly{{Exponents{0, 0, 0}, c}}; }

  Poly add(Poly a, const Poly& b) const {
    for (const auto& [e, c] : b) {
      auto& slot = a[e];
      slot = f_.add(slot, c);
      if (slot == 0) a.erase(e);
    }
    return a;
  }

  Poly scale(const Poly& a, Field::Code c) const {
    Poly r;
    for (const auto& [e, v] : a) {
      Field::Code w = f_.mul(v, c);
      if (w) r[e] = w;
    }
    return r;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly r;
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) {
        Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        if (e[0] + e[1] + e[2] > kMaxExponent) fail("degree too large");
        auto& slot = r[e];
        slot = f_.add(slot, f_.mul(ca, cb));
        if (slot == 0) r.erase(e);
      }
    }
    return r;
  }

  std::string_view s_;
  const Field& f_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "x^3 + y^2*z + y*z^2" style homogeneous forms over `field`.
inline PlaneCurve parse_curve(std::string_view text, const FieldPtr& field) {
  auto poly = detail::CurveParser(text, *field).parse();
  std::vector<Term> terms;
  for (const auto& [e, c] : poly) terms.push_back({e, c});
  return PlaneCurve(field, terms);
}

/// Number of points of the plane model over F_{q^i}: affine chart (x:y:1),
/// then (x:1:0), then (1:0:0).
inline std::uint64_t count_points(const PlaneCurve& curve, unsigned i, std::uint64_t limit = kDefaultFieldLimit) {
  const FieldPtr ext = make_extension(curve.field(), i, limit);
  const Field& f = *ext;
  const auto n = static_cast<Field::Code>(f.size());
  std::uint64_t count = 0;
  for (Field::Code x = 0; x < n; ++x) {
    for (Field::Code y = 0; y < n; ++y) {
      if (curve.evaluate(f, x, y, 1) == 0) ++count;
    }
  }
  for (Field::Code x = 0; x < n; ++x) {
    if (curve.evaluate(f, x, 1, 0) == 0) ++count;
  }
  if (curve.evaluate(f, 1, 0, 0) == 0) ++count;
  return count;
}

/// Closed points of degree 2 of a smooth curve: (N2 - N1) / 2.
inline std::uint64_t b2_from_counts(std::uint64_t n1, std::uint64_t n2) {
  if (n2 < n1) {
    throw Error(ErrorCode::NegativeDifference,
                "N2=" + std::to_string(n2) + " < N1=" + std::to_string(n1) + " (non-smooth model or counting bug)");
  }
  if ((n2 - n1) % 2 != 0) {
    throw Error(ErrorCode::OddDifference, "N2-N1=" + std::to_string(n2 - n1) + " is odd");
  }
  return (n2 - n1) / 2;
}

/// Point counts N_1..N_n of a curve of (externally supplied) genus g.
struct CountProfile {
  std::uint64_t q = 0;
  unsigned g = 0;
  std::vector<std::uint64_t> counts;
  bool smooth = true;

  /// Weil window on every N_i, and N2 >= N1 with even difference when smooth.
  void validate() const {
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const auto i = static_cast<unsigned>(k + 1);
      const SurdValue defect = SurdValue(Integer(counts[k])) - SurdValue(ipow(Integer(q), i) + 1);
      const SurdValue radius = SurdValue(Integer(2 * g)) * SurdValue::sqrt_power(Integer(q), i);
      if (defect > radius || defect < -radius) {
        throw Error(ErrorCode::WeilWindowViolation, "N_" + std::to_string(i) + "=" + std::to_string(counts[k]) +
                                                        " outside q^i+1 +- 2g sqrt(q^i)");
      }
    }
    if (smooth && counts.size() >= 2) b2_from_counts(counts[0], counts[1]);
  }
};

/// x_i = (q^i + 1 - N_i) / (2 g sqrt(q^i)), exactly in Q(sqrt q).
inline std::vector<SurdValue> x_coordinates(const CountProfile& profile) {
  if (profile.g == 0) throw Error(ErrorCode::GenusZero, "x-coordinates need g >= 1");
  std::vector<SurdValue> xs;
  const Integer q(profile.q);
  for (std::size_t k = 0; k < profile.counts.size(); ++k) {
    const auto i = static_cast<unsigned>(k + 1);
    const SurdValue num = SurdValue(ipow(q, i) + 1 - Integer(profile.counts[k]));
    const SurdValue den = SurdValue(Integer(2 * profile.g)) * SurdValue::sqrt_power(q, i);
    xs.push_back(num / den);
  }
  return xs;
}

// ---------------------------------------------------------------------------
// Fixture files: q<TAB>genus<TAB>polynomial<TAB>label, '#' comments.

struct CurveFixture {
  std::string q_text;
  PrimePower q;
  unsigned genus = 0;
  std::string polynomial;
  std::string label;
  std::size_t line = 0;
};

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

inline std::vector<CurveFixture> parse_fixtures(std::istream& in) {
  std::vector<CurveFixture> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 4) {
      throw Error(ErrorCode::ParseError, "fixture line " + std::to_string(lineno) + ": expected 4 tab-separated fields");
    }
    CurveFixture fx;
    fx.line = lineno;
    fx.q_text = cols[0];
    try {
      fx.q = parse_prime_power(cols[0]);
      std::size_t used = 0;
      const unsigned long g = std::stoul(cols[1], &used);
      if (used != cols[1].size()) throw std::invalid_argument("trailing characters");
      fx.genus = static_cast<unsigned>(g);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "fixture line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "fixture line " + std::to_string(lineno) + ": bad genus '" + cols[1] + "'");
    }
    fx.polynomial = cols[2];
    fx.label = cols[3];
    out.push_back(std::move(fx));
  }
  return out;
}

inline std::vector<CurveFixture> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open fixture file " + path);
  return parse_fixtures(in);
}

}  // namespace fqc
