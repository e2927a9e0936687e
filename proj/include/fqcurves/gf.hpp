#pragma once

// Small finite fields F_q, q = p^e, and towers F_{q^i} over them.
//
// Elements are encoded as integers: an element sum_k c_k t^k of
// B[t]/(m(t)) has code sum_k code(c_k) |B|^k. Addition is digit-wise mod p
// on that code, multiplication goes through discrete log/exp tables built
// once per field. The embedding of a subfield of the tower is the identity
// on codes.

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fqcurves/error.hpp"

namespace fqc {

inline constexpr std::uint64_t kDefaultFieldLimit = std::uint64_t{1} << 20;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  std::uint64_t q = 0;
};

inline std::optional<PrimePower> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  PrimePower pp{f[0], 0, q};
  for (std::uint64_t r = q; r > 1; r /= f[0]) ++pp.e;
  return pp;
}

/// Parses "16" or "2^4".
inline PrimePower parse_prime_power(std::string_view text) {
  auto parse_uint = [&](std::string_view s) -> std::uint64_t {
    if (s.empty() || s.size() > 18) throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };
  std::uint64_t q = 0;
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    const std::uint64_t base = parse_uint(text.substr(0, caret));
    const std::uint64_t exp = parse_uint(text.substr(caret + 1));
    q = 1;
    for (std::uint64_t k = 0; k < exp; ++k) {
      if (q > (std::uint64_t{1} << 62) / (base ? base : 1)) throw Error(ErrorCode::TooLarge, std::string(text));
      q *= base;
    }
  } else {
    q = parse_uint(text);
  }
  auto pp = prime_power(q);
  if (!pp) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  return *pp;
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(std::uint64_t p, unsigned e, std::uint64_t limit = kDefaultFieldLimit);
FieldPtr make_extension(const FieldPtr& base, unsigned degree, std::uint64_t limit = kDefaultFieldLimit);

class Field {
 public:
  using Code = std::uint32_t;
  using Poly = std::vector<Code>;  // coefficients over the base, low degree first

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t size() const { return size_; }
  /// Degree over the prime field.
  unsigned prime_degree() const { return prime_degree_; }
  /// Degree over the immediate base (1 for a prime field).
  unsigned degree() const { return degree_; }
  const FieldPtr& base() const { return base_; }
  bool is_prime_field() const { return base_ == nullptr; }
  /// Monic defining polynomial over the base (x for a prime field).
  const Poly& modulus() const { return modulus_; }
  Code generator() const { return generator_; }

  static constexpr Code zero() { return 0; }
  static constexpr Code one() { return 1; }

  Code add(Code a, Code b) const {
    if (p_ == 2) return a ^ b;
    Code r = 0;
    Code m = 1;
    while (a || b) {
      r += static_cast<Code>(((a % p_) + (b % p_)) % p_) * m;
      a /= static_cast<Code>(p_);
      b /= static_cast<Code>(p_);
      m *= static_cast<Code>(p_);
    }
    return r;
  }

  Code neg(Code a) const {
    if (p_ == 2) return a;
    Code r = 0;
    Code m = 1;
    while (a) {
      r += static_cast<Code>((p_ - a % p_) % p_) * m;
      a /= static_cast<Code>(p_);
      m *= static_cast<Code>(p_);
    }
    return r;
  }

  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t k = std::uint64_t{log_[a]} + log_[b];
    if (k >= size_ - 1) k -= size_ - 1;
    return exp_[k];
  }

  Code inv(Code a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + name());
    const std::uint64_t order = size_ - 1;
    return exp_[(order - log_[a]) % order];
  }

  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  Code pow(Code a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t order = size_ - 1;
    return exp_[(std::uint64_t{log_[a]} * (e % order)) % order];
  }

  /// Coordinates over the immediate base.
  Poly coeffs(Code a) const {
    Poly out(degree_);
    const std::uint64_t b = base_size();
    for (unsigned k = 0; k < degree_; ++k) {
      out[k] = static_cast<Code>(a % b);
      a = static_cast<Code>(a / b);
    }
    return out;
  }

  Code from_coeffs(const Poly& c) const {
    std::uint64_t code = 0;
    std::uint64_t m = 1;
    for (unsigned k = 0; k < degree_ && k < c.size(); ++k) {
      code += c[k] * m;
      m *= base_size();
    }
    return static_cast<Code>(code);
  }

  /// Integer n mapped through Z -> F_p -> this field.
  Code from_integer(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Code>(r);
  }

  /// True if `sub` is this field or lies below it in the tower.
  bool contains(const Field& sub) const {
    for (const Field* f = this; f != nullptr; f = f->base_.get()) {
      if (f == &sub || f->same_as(sub)) return true;
    }
    return false;
  }

  /// Structural equality: same characteristic and the same chain of moduli.
  bool same_as(const Field& other) const {
    if (this == &other) return true;
    if (p_ != other.p_ || size_ != other.size_ || modulus_ != other.modulus_) return false;
    if (!base_ || !other.base_) return !base_ && !other.base_;
    return base_->same_as(*other.base_);
  }

  /// Subfield F_{sub} -> this field; the identity on codes.
  Code embed(const Field& sub, Code a) const {
    if (!contains(sub)) throw Error(ErrorCode::FieldMismatch, sub.name() + " is not a subfield of " + name());
    return a;
  }

  std::string name() const { return "F_" + std::to_string(size_); }

  std::string format(Code a) const {
    if (is_prime_field()) return std::to_string(a);
    auto c = coeffs(a);
    std::string out;
    for (unsigned k = degree_; k-- > 0;) {
      if (c[k] == 0) continue;
      std::string coef = base_->format(c[k]);
      if (!base_->is_prime_field() && coef.find('+') != std::string::npos) coef = "(" + coef + ")";
      std::string term;
      if (k == 0) {
        term = coef;
      } else {
        term = (c[k] == 1 ? "" : coef + "*") + var_name() + (k > 1 ? "^" + std::to_string(k) : "");
      }
      out += (out.empty() ? "" : "+") + term;
    }
    return out.empty() ? "0" : out;
  }

  std::string modulus_str() const {
    std::string out;
    for (std::size_t k = modulus_.size(); k-- > 0;) {
      if (modulus_[k] == 0) continue;
      std::string coef = base_ ? base_->format(modulus_[k]) : std::to_string(modulus_[k]);
      std::string mono = k == 0 ? "" : (k == 1 ? std::string("x") : "x^" + std::to_string(k));
      std::string term = k == 0 ? coef : (modulus_[k] == 1 ? mono : coef + "*" + mono);
      out += (out.empty() ? "" : "+") + term;
    }
    return out;
  }

  // Construction goes through make_field / make_extension.
  struct Key {
   private:
    Key() = default;
    friend FieldPtr make_field(std::uint64_t, unsigned, std::uint64_t);
    friend FieldPtr make_extension(const FieldPtr&, unsigned, std::uint64_t);
  };

  Field(Key, std::uint64_t p) : p_(p), size_(p), prime_degree_(1), degree_(1), modulus_{0, 1} {
    build_tables();
  }

  Field(Key, FieldPtr base, unsigned degree, std::uint64_t size)
      : p_(base->p_),
        size_(size),
        prime_degree_(base->prime_degree_ * degree),
        degree_(degree),
        base_(std::move(base)) {
    modulus_ = find_modulus();
    build_tables();
  }

 private:
  std::uint64_t base_size() const { return base_ ? base_->size_ : p_; }

  std::string var_name() const {
    // One letter per tower level: t over the prime field, then u, v, ...
    unsigned depth = 0;
    for (const Field* f = base_.get(); f && f->base_; f = f->base_.get()) ++depth;
    return std::string(1, static_cast<char>('t' + depth));
  }

  // --- polynomial arithmetic over the base, used only during construction

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Poly poly_mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = base_->add(r[i + j], base_->mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  Poly poly_mod(Poly a, const Poly& m) const {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Code lead_inv = base_->inv(m.back());
    while (a.size() > dm) {
      const Code c = base_->mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t k = 0; k <= dm; ++k) a[shift + k] = base_->sub(a[shift + k], base_->mul(c, m[k]));
      trim(a);
    }
    return a;
  }

  Poly poly_powmod(Poly b, std::uint64_t e, const Poly& m) const {
    Poly r{1};
    b = poly_mod(b, m);
    while (e) {
      if (e & 1) r = poly_mod(poly_mul(r, b), m);
      b = poly_mod(poly_mul(b, b), m);
      e >>= 1;
    }
    return r;
  }

  Poly poly_gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = poly_mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  /// No factor of degree <= deg/2  <=>  gcd(m, x^{|B|^k} - x) = 1 for k <= deg/2.
  bool irreducible(const Poly& m) const {
    const unsigned d = static_cast<unsigned>(m.size() - 1);
    if (d <= 1) return d == 1;
    if (m[0] == 0) return false;
    Poly h{0, 1};
    for (unsigned k = 1; k <= d / 2; ++k) {
      h = poly_powmod(h, base_->size_, m);
      Poly diff = h;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = base_->sub(diff[1], 1);
      trim(diff);
      if (diff.empty()) return false;
      if (poly_gcd(m, diff).size() > 1) return false;
    }
    return true;
  }

  /// Lexicographically smallest monic irreducible of degree `degree_`, the
  /// highest non-leading coefficient being most significant.
  Poly find_modulus() const {
    if (degree_ == 1) return Poly{0, 1};
    std::uint64_t count = 1;
    for (unsigned k = 0; k < degree_; ++k) count *= base_->size_;
    for (std::uint64_t cand = 0; cand < count; ++cand) {
      Poly m(degree_ + 1, 0);
      std::uint64_t c = cand;
      for (unsigned k = 0; k < degree_; ++k) {
        m[k] = static_cast<Code>(c % base_->size_);
        c /= base_->size_;
      }
      m[degree_] = 1;
      if (irreducible(m)) return m;
    }
    throw Error(ErrorCode::InvalidArgument, "no irreducible polynomial found");
  }

  Code slow_mul(Code a, Code b) const {
    if (!base_) return static_cast<Code>((std::uint64_t{a} * b) % p_);
    Poly r = poly_mod(poly_mul(coeffs_slow(a), coeffs_slow(b)), modulus_);
    return from_coeffs(r);
  }

  Poly coeffs_slow(Code a) const {
    Poly c = coeffs(a);
    trim(c);
    return c;
  }

  Code slow_pow(Code a, std::uint64_t e) const {
    Code r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    const std::uint64_t order = size_ - 1;
    const auto primes = prime_factors(order);
    generator_ = 1;
    for (Code cand = 1; cand < size_; ++cand) {
      bool primitive = true;
      for (auto r : primes) {
        if (slow_pow(cand, order / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator_ = cand;
        break;
      }
    }
    exp_.assign(order, 0);
    log_.assign(size_, 0);
    Code x = 1;
    for (std::uint64_t k = 0; k < order; ++k) {
      exp_[k] = x;
      log_[x] = static_cast<Code>(k);
      x = slow_mul(x, generator_);
    }
  }

  std::uint64_t p_;
  std::uint64_t size_;
  unsigned prime_degree_;
  unsigned degree_;
  FieldPtr base_;
  Poly modulus_;
  Code generator_ = 1;
  std::vector<Code> exp_;
  std::vector<Code> log_;
};

inline FieldPtr make_field(std::uint64_t p, unsigned e, std::uint64_t limit) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "field degree must be positive");
  std::uint64_t size = 1;
  for (unsigned k = 0; k < e; ++k) {
    size *= p;
    if (size > limit) {
      throw Error(ErrorCode::TooLarge, std::to_string(p) + "^" + std::to_string(e) + " exceeds limit " +
                                           std::to_string(limit));
    }
  }
  auto prime = std::make_shared<const Field>(Field::Key{}, p);
  if (e == 1) return prime;
  return std::make_shared<const Field>(Field::Key{}, prime, e, size);
}

inline FieldPtr make_extension(const FieldPtr& base, unsigned degree, std::uint64_t limit) {
  if (!base) throw Error(ErrorCode::InvalidArgument, "null base field");
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
  if (degree == 1) return base;
  std::uint64_t size = 1;
  for (unsigned k = 0; k < degree; ++k) {
    size *= base->size();
    if (size > limit) {
      throw Error(ErrorCode::TooLarge, base->name() + "^" + std::to_string(degree) + " exceeds limit " +
                                           std::to_string(limit));
    }
  }
  return std::make_shared<const Field>(Field::Key{}, base, degree, size);
}

inline FieldPtr make_field(const PrimePower& pp, std::uint64_t limit = kDefaultFieldLimit) {
  return make_field(pp.p, pp.e, limit);
}

/// Field element: a code together with the field it lives in.
class FieldElem {
 public:
  using Code = Field::Code;

  FieldElem(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "null field");
    if (code_ >= field_->size()) throw Error(ErrorCode::InvalidArgument, "code out of range for " + field_->name());
  }

  const FieldPtr& field() const { return field_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  std::vector<Code> coeffs() const { return field_->coeffs(code_); }

  FieldElem pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }
  FieldElem inv() const { return {field_, field_->inv(code_)}; }

  FieldElem operator-() const { return {field_, field_->neg(code_)}; }

  friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
    auto [f, a, b] = common(x, y);
    return {f, f->add(a, b)};
  }
  friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
    auto [f, a, b] = common(x, y);
    return {f, f->sub(a, b)};
  }
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
    auto [f, a, b] = common(x, y);
    return {f, f->mul(a, b)};
  }
  friend FieldElem operator/(const FieldElem& x, const FieldElem& y) {
    auto [f, a, b] = common(x, y);
    return {f, f->div(a, b)};
  }
  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    auto [f, a, b] = common(x, y);
    return a == b;
  }

  /// Image of this element in a larger field of the same tower.
  FieldElem embed_into(const FieldPtr& ext) const { return {ext, ext->embed(*field_, code_)}; }

  std::string str() const { return field_->format(code_); }

 private:
  struct Common {
    FieldPtr field;
    Code a;
    Code b;
  };

  static Common common(const FieldElem& x, const FieldElem& y) {
    if (x.field_ == y.field_ || x.field_->same_as(*y.field_)) return {x.field_, x.code_, y.code_};
    if (x.field_->contains(*y.field_)) return {x.field_, x.code_, y.code_};
    if (y.field_->contains(*x.field_)) return {y.field_, x.code_, y.code_};
    throw Error(ErrorCode::FieldMismatch, x.field_->name() + " vs " + y.field_->name());
  }

  FieldPtr field_;
  Code code_;
};

/// Every element once, in increasing code order (lexicographic in the
/// coefficients, highest coefficient most significant).
inline std::vector<FieldElem> enumerate(const FieldPtr& field) {
  std::vector<FieldElem> out;
  out.reserve(field->size());
  for (std::uint64_t c = 0; c < field->size(); ++c) out.emplace_back(field, static_cast<Field::Code>(c));
  return out;
}

}  // namespace fqc
