#pragma once

// Command-line front end. `run` is the whole program; main() only forwards
// argv and the standard streams so tests can drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fqcurves/bounds.hpp"
#include "fqcurves/catalog.hpp"
#include "fqcurves/curves.hpp"
#include "fqcurves/feasibility.hpp"
#include "fqcurves/gf.hpp"
#include "fqcurves/spectrum.hpp"

namespace fqc::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Raised by `verify` when a counted curve breaks a proven inequality.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// argument parsing helpers

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::vector<PrimePower> parse_q_list(const std::string& s) {
  std::vector<PrimePower> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_prime_power(item));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty --q list");
  return out;
}

inline unsigned parse_unsigned(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
    throw Error(ErrorCode::InvalidArgument, "bad non-negative integer '" + s + "'");
  }
  return static_cast<unsigned>(std::stoul(s));
}

/// "a..b", "a" or "a,b,c".
inline std::vector<unsigned> parse_g_range(const std::string& s) {
  std::vector<unsigned> out;
  for (const auto& item : split(s, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_unsigned(item));
      continue;
    }
    const unsigned a = parse_unsigned(item.substr(0, dots));
    const unsigned b = parse_unsigned(item.substr(dots + 2));
    if (a > b) throw Error(ErrorCode::InvalidArgument, "empty range '" + item + "'");
    for (unsigned g = a; g <= b; ++g) out.push_back(g);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty --g list");
  return out;
}

inline std::string q_label(const PrimePower& pp) {
  return pp.e == 1 ? std::to_string(pp.p) : std::to_string(pp.p) + "^" + std::to_string(pp.e);
}

// ---------------------------------------------------------------------------
// grids

struct Cell {
  std::string text;  // empty: no value
  bool numeric = false;
};

struct Grid {
  std::string id;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

inline const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids{"m_prime", "m_double_prime", "m_triple_prime",
                                            "best_upper", "lower", "weil_orders"};
  return ids;
}

inline Cell number_cell(const Integer& v) { return {v.str(), true}; }

/// One bound table over the (q, g) grid; empty cells where the bound is not
/// asserted (below its genus threshold, or non-positive lower bound).
inline Grid build_table(const std::string& id, const std::vector<PrimePower>& qs, const std::vector<unsigned>& gs,
                        const NqCatalog& catalog, unsigned max_bits) {
  Grid grid{id, {}, {}};
  if (id == "weil_orders") {
    grid.header = {"q", "g", "weil", "ihara", "weil3"};
    for (const auto& pp : qs) {
      for (unsigned g : gs) {
        const auto w = weil_upper(pp.q, g, max_bits);
        const auto i = ihara_upper(pp.q, g, max_bits);
        const auto w3 = weil3_upper(pp.q, g, max_bits);
        grid.rows.push_back({{q_label(pp), false},
                             {std::to_string(g), true},
                             number_cell(w.value()),
                             i.valid ? number_cell(i.value()) : Cell{},
                             w3.valid ? number_cell(w3.value()) : Cell{}});
      }
    }
    return grid;
  }
  grid.header.push_back("q");
  for (unsigned g : gs) grid.header.push_back("g=" + std::to_string(g));
  for (const auto& pp : qs) {
    std::vector<Cell> row{{q_label(pp), false}};
    for (unsigned g : gs) {
      const std::uint64_t q = pp.q;
      if (id == "m_prime") {
        row.push_back(number_cell(m_prime(q, g, max_bits).value()));
      } else if (id == "m_double_prime") {
        row.push_back(number_cell(m_double_prime(q, g, catalog, max_bits).value()));
      } else if (id == "m_triple_prime") {
        const auto r = b2_upper_third(q, g, catalog.exact(q, g), max_bits);
        row.push_back(r.valid ? number_cell(r.value()) : Cell{});
      } else if (id == "best_upper") {
        row.push_back(number_cell(b2_upper_best(q, g, catalog, max_bits).value()));
      } else if (id == "lower") {
        const auto r = b2_lower(q, g, max_bits);
        row.push_back(r.positive ? number_cell(r.value()) : Cell{});
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown table '" + id + "'");
      }
    }
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

inline void render_tsv(const Grid& grid, std::ostream& os) {
  for (std::size_t k = 0; k < grid.header.size(); ++k) os << (k ? "\t" : "") << grid.header[k];
  os << "\n";
  for (const auto& row : grid.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "\t" : "") << row[k].text;
    os << "\n";
  }
}

inline void render_text(const Grid& grid, std::ostream& os) {
  std::vector<std::size_t> width(grid.header.size(), 0);
  for (std::size_t k = 0; k < grid.header.size(); ++k) width[k] = grid.header[k].size();
  for (const auto& row : grid.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].text.size());
  }
  auto line = [&](auto text_of) {
    std::string out;
    for (std::size_t k = 0; k < width.size(); ++k) {
      std::ostringstream cell;
      if (k == 0) {
        cell << std::left << std::setw(static_cast<int>(width[k])) << text_of(k);
      } else {
        cell << "  " << std::right << std::setw(static_cast<int>(width[k])) << text_of(k);
      }
      out += cell.str();
    }
    out.erase(out.find_last_not_of(' ') + 1);
    os << out << "\n";
  };
  line([&](std::size_t k) { return grid.header[k]; });
  for (const auto& row : grid.rows) line([&](std::size_t k) { return row[k].text; });
}

inline json grid_to_json(const Grid& grid) {
  json rows = json::array();
  for (const auto& row : grid.rows) {
    json r = json::array();
    for (const auto& c : row) {
      if (c.text.empty()) {
        r.push_back(nullptr);
      } else if (c.numeric) {
        r.push_back(std::stoll(c.text));
      } else {
        r.push_back(c.text);
      }
    }
    rows.push_back(std::move(r));
  }
  return json{{"table", grid.id}, {"columns", grid.header}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// classify report

struct ClassifyReport {
  std::uint64_t q = 0;
  unsigned g = 0;
  std::uint64_t pi = 0;
  NqGPi nq;
  DeltaVerdict delta;
  std::optional<SpectrumVerdict> maximal;
  std::string maximal_error;  // set when q is not a square
};

inline std::string_view nq_kind_name(NqGPi::Kind k) {
  switch (k) {
    case NqGPi::Kind::Exact: return "Exact";
    case NqGPi::Kind::Range: return "Range";
    case NqGPi::Kind::Unknown: return "Unknown";
  }
  return "?";
}

inline json to_json(const ClassifyReport& r) {
  json nq{{"kind", nq_kind_name(r.nq.kind)}};
  if (r.nq.kind != NqGPi::Kind::Unknown) {
    nq["lo"] = r.nq.lo.convert_to<long long>();
    nq["hi"] = r.nq.hi.convert_to<long long>();
  }
  nq["reason"] = r.nq.reason;
  json out{{"q", r.q}, {"g", r.g}, {"pi", r.pi}, {"nq_g_pi", nq}};
  out["delta_optimal"] = json{{"answer", answer_name(r.delta.answer)}, {"reason", r.delta.reason}};
  if (r.maximal) {
    out["maximal"] = json{{"status", status_name(r.maximal->status)},
                          {"reason", reason_name(r.maximal->reason)},
                          {"pi_max", r.maximal->pi_max.convert_to<long long>()}};
  } else {
    out["maximal"] = json{{"error", r.maximal_error}};
  }
  return out;
}

inline ClassifyReport classify_from_json(const json& j) {
  auto bad = [](const std::string& what) { return Error(ErrorCode::ParseError, "classify report: " + what); };
  ClassifyReport r;
  r.q = j.at("q").get<std::uint64_t>();
  r.g = j.at("g").get<unsigned>();
  r.pi = j.at("pi").get<std::uint64_t>();
  const auto& nq = j.at("nq_g_pi");
  const auto kind = nq.at("kind").get<std::string>();
  if (kind == "Exact") {
    r.nq.kind = NqGPi::Kind::Exact;
  } else if (kind == "Range") {
    r.nq.kind = NqGPi::Kind::Range;
  } else if (kind == "Unknown") {
    r.nq.kind = NqGPi::Kind::Unknown;
  } else {
    throw bad("kind '" + kind + "'");
  }
  if (r.nq.kind != NqGPi::Kind::Unknown) {
    r.nq.lo = nq.at("lo").get<long long>();
    r.nq.hi = nq.at("hi").get<long long>();
  }
  r.nq.reason = nq.at("reason").get<std::string>();
  const auto& d = j.at("delta_optimal");
  const auto ans = d.at("answer").get<std::string>();
  if (ans == "Yes") {
    r.delta.answer = Answer::Yes;
  } else if (ans == "No") {
    r.delta.answer = Answer::No;
  } else if (ans == "Unknown") {
    r.delta.answer = Answer::Unknown;
  } else {
    throw bad("answer '" + ans + "'");
  }
  r.delta.reason = d.at("reason").get<std::string>();
  const auto& m = j.at("maximal");
  if (m.contains("error")) {
    r.maximal_error = m.at("error").get<std::string>();
  } else {
    SpectrumVerdict v;
    auto st = parse_status(m.at("status").get<std::string>());
    auto re = parse_reason(m.at("reason").get<std::string>());
    if (!st || !re) throw bad("status/reason");
    v.status = *st;
    v.reason = *re;
    v.pi_max = m.at("pi_max").get<long long>();
    r.maximal = v;
  }
  return r;
}

inline std::string nq_text(const NqGPi& nq) {
  switch (nq.kind) {
    case NqGPi::Kind::Exact: return nq.lo.str() + " (exact, " + nq.reason + ")";
    case NqGPi::Kind::Range: return "[" + nq.lo.str() + ", " + nq.hi.str() + "] (" + nq.reason + ")";
    case NqGPi::Kind::Unknown: return "unknown (" + nq.reason + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct FixtureReport {
  CurveFixture fixture;
  std::string curve;
  std::vector<std::uint64_t> counts;
  std::optional<std::uint64_t> b2;
  std::vector<SurdValue> x;
  std::optional<RegionVerdict> region;
  std::vector<Check> checks;

  const Check* first_failure() const {
    for (const auto& c : checks) {
      if (!c.ok) return &c;
    }
    return nullptr;
  }
};

inline FixtureReport verify_fixture(const CurveFixture& fx, const NqCatalog& catalog, unsigned n, unsigned max_bits) {
  FixtureReport rep;
  rep.fixture = fx;
  const auto field = make_field(fx.q);
  const PlaneCurve curve = parse_curve(fx.polynomial, field);
  rep.curve = curve.str();
  for (unsigned i = 1; i <= n; ++i) rep.counts.push_back(count_points(curve, i));
  const std::uint64_t q = fx.q.q;
  const unsigned g = fx.genus;
  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const CountProfile profile{q, g, rep.counts, true};
  try {
    profile.validate();
    check("weil_window", true);
    check("smooth_counts", true);
  } catch (const Error& e) {
    check(e.code() == ErrorCode::WeilWindowViolation ? "weil_window" : "smooth_counts", false, e.what());
    return rep;
  }
  const Integer N1(rep.counts[0]);
  if (n >= 2) rep.b2 = b2_from_counts(rep.counts[0], rep.counts[1]);

  if (g == 0) {
    bool all = true;
    std::string detail;
    Integer qi = 1;
    for (unsigned i = 1; i <= n; ++i) {
      qi *= q;
      if (Integer(rep.counts[i - 1]) != qi + 1) {
        all = false;
        detail = "N_" + std::to_string(i) + "=" + std::to_string(rep.counts[i - 1]) + " != q^i+1";
      }
    }
    check("genus0_counts", all, detail);
    return rep;
  }

  const auto w = weil_upper(q, g, max_bits);
  check("N1<=weil", N1 <= w.value(), "weil=" + w.value().str());
  if (const auto ih = ihara_upper(q, g, max_bits); ih.valid) {
    check("N1<=ihara", N1 <= ih.value(), "ihara=" + ih.value().str());
  }
  if (const auto w3 = weil3_upper(q, g, max_bits); w3.valid) {
    check("N1<=weil3", N1 <= w3.value(), "weil3=" + w3.value().str());
  }
  if (auto rec = catalog.find(q, g)) {
    check("N1<=N_q(g)", N1 <= Integer(rec->hi), "N_q(g)<=" + std::to_string(rec->hi));
  }

  rep.x = x_coordinates(profile);
  rep.region = in_region(q, g, rep.x);
  std::string failing;
  for (const auto& f : rep.region->failing_constraints) failing += (failing.empty() ? "" : ",") + f;
  check("region", rep.region->member(), failing);

  if (rep.b2) {
    const Integer B2(*rep.b2);
    if (rep.x.size() >= 2) {
      const SurdValue from_x = b2_from_x(q, g, rep.x[0], rep.x[1]);
      check("b2_from_x", from_x == SurdValue(B2), "got " + from_x.str());
    }
    const auto lo = b2_lower(q, g, max_bits);
    check("B2>=lower", B2 >= lo.value(), "lower=" + lo.value().str());
    const auto up2 = b2_upper_second(q, g, rep.counts[0], max_bits);
    check("B2<=second_order", B2 <= up2.value(), "bound=" + up2.value().str());
    try {
      const auto up3 = b2_upper_third(q, g, rep.counts[0], max_bits);
      if (up3.valid) check("B2<=third_order", B2 <= up3.value(), "bound=" + up3.value().str());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NegativeRadicand) throw;
      check("B2<=third_order", false, e.what());
    }
  }
  return rep;
}

inline std::string x_text(const std::vector<SurdValue>& xs) {
  std::string s = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + xs[k].str();
  return s + ")";
}

inline json fixture_json(const FixtureReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  json x = json::array();
  for (const auto& v : r.x) x.push_back(v.str());
  json out{{"label", r.fixture.label}, {"q", r.fixture.q.q}, {"genus", r.fixture.genus},
           {"curve", r.curve},         {"counts", r.counts}};
  out["b2"] = r.b2 ? json(*r.b2) : json(nullptr);
  out["x"] = x;
  out["region_member"] = r.region ? json(r.region->member()) : json(nullptr);
  out["checks"] = checks;
  return out;
}

// ---------------------------------------------------------------------------
// spectrum output

inline void write_spectrum_tsv(const std::vector<SpectrumPoint>& pts, std::ostream& os) {
  os << "g\tpi\tstatus\treason\tpi_max\n";
  for (const auto& p : pts) {
    os << p.g << "\t" << p.pi << "\t" << status_name(p.verdict.status) << "\t" << reason_name(p.verdict.reason)
       << "\t" << p.verdict.pi_max << "\n";
  }
}

/// gnuplot data: triangle O, A, B (closed), two blank lines, then `g pi status`.
inline void write_spectrum_plot(std::uint64_t q, const std::vector<SpectrumPoint>& pts, std::ostream& os) {
  const auto t = spectrum_thresholds(q);
  const Integer a = Integer(q) * (Integer(q) - 1) / 2;
  os << "# triangle O A B\n";
  os << "0 0 O\n0 " << a << " A\n" << t.g1 << " " << t.g1 << " B\n0 0 O\n\n\n";
  os << "# g pi status\n";
  for (const auto& p : pts) os << p.g << " " << p.pi << " " << status_name(p.verdict.status) << "\n";
}

// ---------------------------------------------------------------------------
// entry point

struct Options {
  std::vector<std::string> catalogs;
  std::string format;
  unsigned precision_bits = kDefaultMaxPrecisionBits;
};

inline NqCatalog load_catalog(const Options& opt) {
  NqCatalog c = NqCatalog::embedded();
  for (const auto& path : opt.catalogs) c.load_file(path);
  return c;
}

inline void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported --format '" + f + "' for this command");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bounds, spectra and point counts for curves over finite fields", "fqcurves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--catalog", opt.catalogs, "N_q(g) TSV file(s) added to the embedded seed");
  app.add_option("--format", opt.format, "text, tsv or json");
  app.add_option("--precision-bits", opt.precision_bits, "cap on interval refinement")
      ->check(CLI::Range(64U, 1U << 20));

  std::string table_id, q_text, g_text, fixtures, curve_text, output_path, plot_path;
  unsigned g = 0;
  unsigned n = 3;
  std::uint64_t pi = 0;

  auto* table = app.add_subcommand("table", "print one of the B2 / N1 bound tables");
  table->add_option("id", table_id, "table id")->required()->check(CLI::IsMember(table_ids()));
  table->add_option("--q", q_text, "q list, e.g. 2,3,2^2")->required();
  table->add_option("--g", g_text, "genus range, e.g. 2..6")->required();

  auto* classify = app.add_subcommand("classify", "N_q(g,pi), delta-optimality and maximal spectrum for one triple");
  classify->add_option("--q", q_text)->required();
  classify->add_option("--g", g)->required();
  classify->add_option("--pi", pi)->required();

  auto* verify = app.add_subcommand("verify", "count fixture curves and check them against every bound");
  verify->add_option("fixtures", fixtures, "fixture TSV")->required();
  verify->add_option("--n", n, "extension degrees to count")->check(CLI::Range(1U, 6U));

  auto* spectrum = app.add_subcommand("spectrum", "classify the (g, pi) triangle of maximal curves");
  spectrum->add_option("--q", q_text)->required();
  spectrum->add_option("--output", output_path, "write the TSV here instead of stdout");
  spectrum->add_option("--plot", plot_path, "also write gnuplot points");

  auto* zeta = app.add_subcommand("zeta", "zeta function of a maximal curve and its point counts");
  zeta->add_option("--q", q_text)->required();
  zeta->add_option("--g", g)->required();
  zeta->add_option("--pi", pi)->required();
  zeta->add_option("--n", n, "number of counts")->check(CLI::Range(1U, 64U));

  auto* count = app.add_subcommand("count", "brute-force point counts of a plane curve");
  count->add_option("--q", q_text)->required();
  count->add_option("--curve", curve_text, "homogeneous polynomial in x, y, z")->required();
  count->add_option("--n", n, "extension degrees to count")->check(CLI::Range(1U, 6U));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fqcurves: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const NqCatalog catalog = load_catalog(opt);

    if (table->parsed()) {
      const std::string fmt = opt.format.empty() ? "text" : opt.format;
      require_format(fmt, {"text", "tsv", "json"});
      const Grid grid = build_table(table_id, parse_q_list(q_text), parse_g_range(g_text), catalog, opt.precision_bits);
      if (fmt == "tsv") {
        render_tsv(grid, out);
      } else if (fmt == "json") {
        out << grid_to_json(grid).dump(2) << "\n";
      } else {
        render_text(grid, out);
      }
      return kExitOk;
    }

    if (classify->parsed()) {
      const std::string fmt = opt.format.empty() ? "text" : opt.format;
      require_format(fmt, {"text", "json"});
      const std::uint64_t q = parse_prime_power(q_text).q;
      ClassifyReport r{q, g, pi, nq_g_pi(q, g, pi, catalog), delta_optimal_exists(q, g, pi, catalog), {}, {}};
      try {
        r.maximal = classify_maximal(q, g, pi, catalog);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotSquare) throw;
        r.maximal_error = e.what();
      }
      if (fmt == "json") {
        out << to_json(r).dump(2) << "\n";
      } else {
        out << "q=" << q << " g=" << g << " pi=" << pi << "\n";
        out << "N_q(g,pi): " << nq_text(r.nq) << "\n";
        out << "delta-optimal: " << answer_name(r.delta.answer) << " (" << r.delta.reason << ")\n";
        if (r.maximal) {
          out << "maximal: " << status_name(r.maximal->status) << " (" << reason_name(r.maximal->reason)
              << "), pi_max=" << r.maximal->pi_max << "\n";
        } else {
          out << "maximal: n/a (" << r.maximal_error << ")\n";
        }
      }
      if (!r.maximal) {
        err << "fqcurves: " << r.maximal_error << "\n";
        return kExitUsage;
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const std::string fmt = opt.format.empty() ? "text" : opt.format;
      require_format(fmt, {"text", "json"});
      json all = json::array();
      const Check* failure = nullptr;
      std::string failed_label;
      std::vector<FixtureReport> reports;
      for (const auto& fx : load_fixtures(fixtures)) reports.push_back(verify_fixture(fx, catalog, n, opt.precision_bits));
      for (const auto& r : reports) {
        if (fmt == "json") {
          all.push_back(fixture_json(r));
        } else {
          out << r.fixture.label << "  q=" << q_label(r.fixture.q) << " g=" << r.fixture.genus << "  " << r.curve << "\n";
          out << "  N =";
          for (auto c : r.counts) out << " " << c;
          if (r.b2) out << "  B2 = " << *r.b2;
          out << "\n";
          if (!r.x.empty()) {
            out << "  x = " << x_text(r.x) << "  region: " << (r.region->member() ? "member" : "NOT member") << "\n";
          }
          for (const auto& c : r.checks) {
            out << "  " << (c.ok ? "ok   " : "FAIL ") << c.name;
            if (!c.detail.empty()) out << "  (" << c.detail << ")";
            out << "\n";
          }
        }
        if (!failure && r.first_failure()) {
          failure = r.first_failure();
          failed_label = r.fixture.label;
        }
      }
      if (fmt == "json") out << all.dump(2) << "\n";
      if (failure) {
        err << "fqcurves: invariant '" << failure->name << "' failed for " << failed_label;
        if (!failure->detail.empty()) err << ": " << failure->detail;
        err << "\n";
        return kExitInvariant;
      }
      return kExitOk;
    }

    if (spectrum->parsed()) {
      const std::string fmt = opt.format.empty() ? "tsv" : opt.format;
      require_format(fmt, {"text", "tsv", "json"});
      const std::uint64_t q = parse_prime_power(q_text).q;
      const auto pts = enumerate_spectrum(q, catalog);
      std::ofstream file;
      if (!output_path.empty()) {
        file.open(output_path);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + output_path);
      }
      std::ostream& dest = output_path.empty() ? out : file;
      if (fmt == "tsv") {
        write_spectrum_tsv(pts, dest);
      } else if (fmt == "json") {
        json arr = json::array();
        for (const auto& p : pts) {
          arr.push_back(json{{"g", p.g},
                             {"pi", p.pi},
                             {"status", status_name(p.verdict.status)},
                             {"reason", reason_name(p.verdict.reason)},
                             {"pi_max", p.verdict.pi_max.convert_to<long long>()}});
        }
        dest << json{{"q", q}, {"points", arr}}.dump(2) << "\n";
      } else {
        std::map<std::string, int> tally;
        for (const auto& p : pts) {
          ++tally[std::string(status_name(p.verdict.status)) + "/" + std::string(reason_name(p.verdict.reason))];
        }
        const auto t = spectrum_thresholds(q);
        dest << "q=" << q << "  g'=" << t.g1 << " g''=" << t.g2 << " g'''=" << t.g3 << "  points=" << pts.size()
             << "\n";
        for (const auto& [k, v] : tally) dest << "  " << k << ": " << v << "\n";
        dest << "InSpectrum:";
        for (const auto& p : pts) {
          if (p.verdict.status == SpectrumStatus::InSpectrum) dest << " (" << p.g << "," << p.pi << ")";
        }
        dest << "\n";
      }
      if (!plot_path.empty()) {
        std::ofstream plot(plot_path);
        if (!plot) throw Error(ErrorCode::InvalidArgument, "cannot write " + plot_path);
        write_spectrum_plot(q, pts, plot);
      }
      return kExitOk;
    }

    if (zeta->parsed()) {
      const std::string fmt = opt.format.empty() ? "text" : opt.format;
      require_format(fmt, {"text", "json"});
      const std::uint64_t q = parse_prime_power(q_text).q;
      const ZetaFunction z = zeta_maximal(q, g, pi);
      const auto counts = zeta_counts(z, n);
      if (fmt == "json") {
        json num = json::array();
        for (const auto& c : z.numerator) num.push_back(c.convert_to<long long>());
        json cs = json::array();
        for (const auto& c : counts) cs.push_back(c.str());
        out << json{{"q", q}, {"g", g}, {"pi", pi}, {"numerator", num}, {"counts", cs}}.dump(2) << "\n";
      } else {
        out << "Z(T) = (" << z.str() << ") / ((1 - T)(1 - " << q << "T))\n";
        for (unsigned i = 1; i <= n; ++i) out << "N_" << i << " = " << counts[i - 1] << "\n";
      }
      return kExitOk;
    }

    if (count->parsed()) {
      const std::string fmt = opt.format.empty() ? "text" : opt.format;
      require_format(fmt, {"text", "json"});
      const PrimePower pp = parse_prime_power(q_text);
      const PlaneCurve curve = parse_curve(curve_text, make_field(pp));
      std::vector<std::uint64_t> counts;
      for (unsigned i = 1; i <= n; ++i) counts.push_back(count_points(curve, i));
      std::optional<std::uint64_t> b2;
      if (n >= 2 && counts[1] >= counts[0] && (counts[1] - counts[0]) % 2 == 0) {
        b2 = b2_from_counts(counts[0], counts[1]);
      }
      if (fmt == "json") {
        out << json{{"q", pp.q}, {"curve", curve.str()}, {"degree", curve.degree()}, {"counts", counts},
                    {"b2", b2 ? json(*b2) : json(nullptr)}}
                   .dump(2)
            << "\n";
      } else {
        out << curve.str() << " over " << curve.field()->name() << " (degree " << curve.degree() << ")\n";
        for (unsigned i = 1; i <= n; ++i) out << "N_" << i << " = " << counts[i - 1] << "\n";
        if (b2) out << "B2 = " << *b2 << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "fqcurves: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fqcurves: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fqc::cli
