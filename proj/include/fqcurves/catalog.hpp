#pragma once

// N_q(g): the largest number of rational points on a smooth curve of genus g
// over F_q, as exact values or [lo, hi] ranges with a source note.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqcurves/curves.hpp"
#include "fqcurves/error.hpp"
#include "fqcurves/exactnum.hpp"
#include "fqcurves/gf.hpp"

namespace fqc {

struct NqRecord {
  std::uint64_t q = 0;
  unsigned g = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::string source;

  bool exact() const { return lo == hi; }
};

/// floor(2 g sqrt q) and g floor(2 sqrt q), the two integer Weil radii.
inline Integer weil_radius_floor(std::uint64_t q, unsigned g) {
  return isqrt(Integer(4) * g * g * q);
}
inline Integer serre_radius(std::uint64_t q, unsigned g) { return Integer(g) * isqrt(Integer(4) * q); }

class NqCatalog {
 public:
  NqCatalog() = default;

  /// Values fixed by the bound tables themselves.
  static NqCatalog embedded() {
    NqCatalog c;
    c.insert({2, 2, 6, 6, "embedded"});
    c.insert({2, 3, 7, 7, "embedded"});
    c.insert({4, 3, 14, 14, "embedded"});
    return c;
  }

  /// Adds a record, intersecting with any existing range for (q, g).
  void insert(NqRecord r) {
    if (!prime_power(r.q)) throw Error(ErrorCode::NotPrimePower, std::to_string(r.q) + " is not a prime power");
    if (r.lo > r.hi) {
      throw Error(ErrorCode::ParseError, "N_" + std::to_string(r.q) + "(" + std::to_string(r.g) + "): lo > hi");
    }
    const Integer base = Integer(r.q) + 1;
    if (Integer(r.lo) < base - weil_radius_floor(r.q, r.g) || Integer(r.hi) > base + serre_radius(r.q, r.g)) {
      throw Error(ErrorCode::WeilWindowViolation, "N_" + std::to_string(r.q) + "(" + std::to_string(r.g) + ") in [" +
                                                      std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                                                      "] leaves the Weil window");
    }
    auto key = std::make_pair(r.q, r.g);
    auto it = records_.find(key);
    if (it == records_.end()) {
      records_.emplace(key, std::move(r));
      return;
    }
    NqRecord& old = it->second;
    const auto lo = std::max(old.lo, r.lo);
    const auto hi = std::min(old.hi, r.hi);
    if (lo > hi) {
      throw Error(ErrorCode::CatalogConflict, "N_" + std::to_string(r.q) + "(" + std::to_string(r.g) + "): [" +
                                                  std::to_string(old.lo) + ", " + std::to_string(old.hi) + "] (" +
                                                  old.source + ") vs [" + std::to_string(r.lo) + ", " +
                                                  std::to_string(r.hi) + "] (" + r.source + ")");
    }
    if (lo != old.lo || hi != old.hi) old.source += "; " + r.source;
    old.lo = lo;
    old.hi = hi;
  }

  /// Reads `q<TAB>g<TAB>lo<TAB>hi<TAB>source` rows; '#' starts a comment line.
  void load(std::istream& in, const std::string& origin = "<stream>") {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto where = origin + ":" + std::to_string(lineno);
      auto cols = split_tabs(line);
      if (cols.size() != 5) throw Error(ErrorCode::ParseError, where + ": expected 5 tab-separated fields");
      NqRecord r;
      try {
        r.q = parse_prime_power(cols[0]).q;
        r.g = static_cast<unsigned>(parse_uint(cols[1]));
        r.lo = parse_uint(cols[2]);
        r.hi = parse_uint(cols[3]);
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
      }
      r.source = cols[4];
      try {
        insert(std::move(r));
      } catch (const Error& e) {
        throw Error(e.code(), where + ": " + e.what());
      }
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open catalog " + path);
    load(in, path);
  }

  std::optional<NqRecord> find(std::uint64_t q, unsigned g) const {
    auto it = records_.find({q, g});
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  /// Exact N_q(g) or CatalogMiss.
  std::uint64_t exact(std::uint64_t q, unsigned g) const {
    auto r = find(q, g);
    if (!r) throw Error(ErrorCode::CatalogMiss, "no N_q(g) entry for q=" + std::to_string(q) + ", g=" + std::to_string(g));
    if (!r->exact()) {
      throw Error(ErrorCode::CatalogMiss, "N_" + std::to_string(q) + "(" + std::to_string(g) + ") only known in [" +
                                              std::to_string(r->lo) + ", " + std::to_string(r->hi) + "]");
    }
    return r->lo;
  }

  std::vector<NqRecord> records() const {
    std::vector<NqRecord> out;
    for (const auto& [k, r] : records_) out.push_back(r);
    return out;
  }

  std::size_t size() const { return records_.size(); }

 private:
  static std::uint64_t parse_uint(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || s[0] == '-') throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
    return v;
  }

  std::map<std::pair<std::uint64_t, unsigned>, NqRecord> records_;
};

}  // namespace fqc
