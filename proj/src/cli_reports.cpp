#include "bcstat/cli_reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcstat/census.hpp"
#include "bcstat/douglass.hpp"
#include "bcstat/finite_field.hpp"
#include "bcstat/numutil.hpp"
#include "bcstat/os_cohomology.hpp"
#include "bcstat/poly_stats.hpp"
#include "bcstat/signed_perm.hpp"
#include "bcstat/trace_identity.hpp"

namespace bcstat {

namespace {

std::string approx12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string range_string(const IntRange& r) {
  if (r.lo == r.hi) return std::to_string(r.lo);
  return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

bool range_empty(const IntRange& r) { return r.hi < r.lo; }

// Odd prime powers carry the quadratic character; type A admits p = 2 too.
std::vector<long> field_sizes(const IntRange& q, bool odd_only, const std::string& what) {
  std::vector<long> out;
  for (long v = q.lo; v <= q.hi; ++v) {
    try {
      long p = prime_power_split(v).first;
      if (odd_only && p == 2) continue;
      out.push_back(v);
    } catch (const std::invalid_argument&) {
    }
  }
  if (out.empty())
    throw std::invalid_argument(what + ": no admissible field sizes in q = " + range_string(q));
  return out;
}

// Soft guard: enumeration touches every monic polynomial once.
void enumeration_guard(const std::string& what, int n, long q, bool force) {
  double cost = std::pow(static_cast<double>(q), n);
  if (cost > 1e7 && !force)
    throw std::invalid_argument(what + ": q^n = " + approx12(cost) + " at q=" +
                                std::to_string(q) + ", n=" + std::to_string(n) +
                                " exceeds the 10^7 enumeration guard (roughly " +
                                approx12(cost / 3e5) + " seconds of scanning); "
                                "pass --force to accept the cost");
}

double forced_budget(int n, long q) {
  return std::max(kScanBudget, 2.0 * std::pow(static_cast<double>(q), n) + 16.0);
}

OsAlgebra& bc_algebra(std::map<int, OsAlgebra>& cache, int n) {
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, OsAlgebra(build_bc_arrangement(n))).first;
  return it->second;
}

// Straightening-engine route to <P, H^d>: class sums against the character.
Rat os_route_inner(OsAlgebra& os, const CharPolynomial& P, int n, int d) {
  std::map<DoublePartition, Int> chi = os.character(d, GroupMode::TypeBC);
  Rat total = 0;
  for (const auto& cls : conjugacy_classes(n))
    total += Rat(cls.size) * eval_char_poly(P, cls.type) * Rat(chi.at(cls.type));
  return Rat(total / Rat(bn_order(n)));
}

void append_identity_row(std::vector<ReportRow>& rows, const IdentityCheck& check,
                         const std::string& rhs_source) {
  ReportRow row;
  row["n"] = std::to_string(check.n);
  row["q"] = std::to_string(check.q);
  row["statistic"] = check.statistic;
  row["lhs"] = rat_string(check.lhs);
  row["lhs_source"] = "enumeration";
  row["rhs"] = rat_string(check.rhs);
  row["rhs_source"] = rhs_source;
  row["source"] = rhs_source;
  std::string terms;
  for (const Rat& t : check.rhs_terms) {
    if (!terms.empty()) terms += ' ';
    terms += rat_string(t);
  }
  row["terms"] = terms;
  row["pass"] = bool_str(check.pass);
  if (!check.pass) row["diff"] = check.diff_report;
  rows.push_back(std::move(row));
}

IdentityCheck single_source_check(const CharPolynomial& P, int n, long q, RhsSource source,
                                  int workers, double budget) {
  auto [p, r] = prime_power_split(q);
  Field F(p, r);
  IdentityCheck check;
  check.n = n;
  check.q = q;
  check.statistic = P.to_string();
  check.lhs = statistic_sum(F, P, n, QrRoute::Norm, workers, budget).sum;
  check.rhs_terms = rhs_contributions(P, n, q, source, workers);
  check.source = source;
  check.rhs = 0;
  for (const Rat& t : check.rhs_terms) check.rhs += t;
  check.pass = (check.lhs == check.rhs);
  if (!check.pass) {
    std::map<DoublePartition, Int> histogram;
    for_each_y(F, n, [&](const FieldPoly& f) {
      ++histogram[signed_cycle_type(F, f).to_double_partition()];
    }, budget);
    check.diff_report = format_identity_diff(check.lhs, check.rhs, check.rhs_terms, histogram, P);
  }
  return check;
}

void check_source_name(const std::string& source) {
  if (source != "os" && source != "douglass" && source != "both")
    throw std::invalid_argument("source must be one of os, douglass, both");
}

void run_verify_trace(const RunConfig& c, Report& rep) {
  check_source_name(c.source);
  CharPolynomial P = parse_char_poly(c.statistic, GroupMode::TypeBC);
  int n_cap = (c.source == "os") ? 5 : 6;
  if (c.n.lo < 1 || c.n.hi > n_cap)
    throw std::invalid_argument("verify-trace: n must stay within 1.." + std::to_string(n_cap) +
                                " for source " + c.source +
                                " (larger ranks outgrow the cohomology engines)");
  for (long q : field_sizes(c.q, /*odd_only=*/true, "verify-trace"))
    for (int n = static_cast<int>(c.n.lo); n <= static_cast<int>(c.n.hi); ++n) {
      enumeration_guard("verify-trace", n, q, c.force);
      if (c.source == "both") {
        IdentityCheck check = verify_identity(P, n, q, c.workers);
        append_identity_row(rep.results, check,
                            check.cross_checked ? "os+douglass" : to_string(check.source));
      } else {
        RhsSource src = (c.source == "os") ? RhsSource::Os : RhsSource::Douglass;
        IdentityCheck check = single_source_check(P, n, q, src, c.workers, forced_budget(n, q));
        append_identity_row(rep.results, check, to_string(src));
      }
    }
}

void run_verify_trace_a(const RunConfig& c, Report& rep) {
  CharPolynomial P = parse_char_poly(c.statistic, GroupMode::TypeA);
  if (c.n.lo < 1 || c.n.hi > 6)
    throw std::invalid_argument("verify-trace-a: n must stay within 1..6");
  for (long q : field_sizes(c.q, /*odd_only=*/false, "verify-trace-a"))
    for (int n = static_cast<int>(c.n.lo); n <= static_cast<int>(c.n.hi); ++n) {
      enumeration_guard("verify-trace-a", n, q, c.force);
      IdentityCheck check = verify_identity_a(P, n, q, c.workers);
      append_identity_row(rep.results, check, "os");
    }
}

void run_point_count(const RunConfig& c, Report& rep) {
  if (c.n.lo < 1)
    throw std::invalid_argument("point-count: n must be at least 1");
  for (long q : field_sizes(c.q, /*odd_only=*/true, "point-count"))
    for (int n = static_cast<int>(c.n.lo); n <= static_cast<int>(c.n.hi); ++n) {
      enumeration_guard("point-count", n, q, c.force);
      auto [p, r] = prime_power_split(q);
      Field F(p, r);
      Int counted = count_y(F, n, forced_budget(n, q));
      Int formula = point_count_formula(n, q);
      ReportRow row;
      row["n"] = std::to_string(n);
      row["q"] = std::to_string(q);
      row["count"] = counted.get_str();
      row["count_source"] = "enumeration";
      row["formula"] = formula.get_str();
      row["formula_source"] = "closed-form";
      row["pass"] = bool_str(counted == formula);
      rep.results.push_back(std::move(row));
    }
}

void run_inner_product(const RunConfig& c, Report& rep) {
  check_source_name(c.source);
  CharPolynomial P = parse_char_poly(c.statistic, GroupMode::TypeBC);
  int n_cap = (c.source == "os") ? 6 : 8;
  if (c.n.lo < 1 || c.n.hi > n_cap)
    throw std::invalid_argument("inner-product: n must stay within 1.." + std::to_string(n_cap) +
                                " for source " + c.source +
                                " (the degree-8 restriction grid already streams about 25 "
                                "million subgroup members)");
  IntRange d = range_empty(c.d) ? IntRange{0, 8} : c.d;
  if (d.lo < 0 || d.hi > 8)
    throw std::invalid_argument("inner-product: d must stay within 0..8");

  std::map<int, OsAlgebra> cache;
  for (int n = static_cast<int>(c.n.lo); n <= static_cast<int>(c.n.hi); ++n) {
    int d_hi = std::min(static_cast<int>(d.hi), n);
    std::vector<int> degrees;
    for (int k = static_cast<int>(d.lo); k <= d_hi; ++k) degrees.push_back(k);

    std::map<int, Rat> douglass_values;
    if (c.source != "os") {
      // Independent per degree; batches bounded by the worker hint.
      for (std::size_t at = 0; at < degrees.size();
           at += static_cast<std::size_t>(std::max(1, c.workers))) {
        std::vector<std::pair<int, std::future<Rat>>> batch;
        for (std::size_t j = at;
             j < std::min(degrees.size(), at + static_cast<std::size_t>(std::max(1, c.workers)));
             ++j)
          batch.emplace_back(degrees[j], std::async(std::launch::async, [&P, n, k = degrees[j]] {
                               return inner_product_via_frobenius(P, n, k);
                             }));
        for (auto& [k, fut] : batch) douglass_values.emplace(k, fut.get());
      }
    }
    for (int k : degrees) {
      ReportRow row;
      row["d"] = std::to_string(k);
      row["n"] = std::to_string(n);
      bool ran_os = (c.source != "douglass") && n <= 6;
      bool ran_douglass = (c.source != "os");
      Rat value;
      if (ran_douglass) value = douglass_values.at(k);
      if (ran_os) {
        Rat os_value = os_route_inner(bc_algebra(cache, n), P, n, k);
        if (ran_douglass) {
          row["pass"] = bool_str(os_value == value);
          if (os_value != value) row["os_value"] = rat_string(os_value);
        } else {
          value = os_value;
        }
      }
      row["value"] = rat_string(value);
      row["source"] = ran_os && ran_douglass ? "os+douglass" : (ran_os ? "os" : "douglass");
      rep.results.push_back(std::move(row));
    }
  }
}

void run_limit(const RunConfig& c, Report& rep) {
  CharPolynomial P = parse_char_poly(c.statistic, GroupMode::TypeBC);
  if (c.d_max < 0 || c.d_max > 200)
    throw std::invalid_argument("limit: dmax must stay within 0..200");
  for (long q : field_sizes(c.q, /*odd_only=*/true, "limit")) {
    SeriesReport series = limit_series(P, q, c.d_max);
    for (std::size_t i = 0; i < series.terms.size(); ++i) {
      const StableInner& term = series.terms[i];
      ReportRow row;
      row["d"] = std::to_string(term.d);
      row["q"] = std::to_string(q);
      row["inner"] = rat_string(term.value);
      row["partial_sum"] = rat_string(series.partial_sums[i]);
      row["partial_approx"] = approx12(series.partial_sums[i].get_d());
      row["source"] = term.from_formula ? "closed-form" : "douglass";
      rep.results.push_back(std::move(row));
    }
    ReportRow summary;
    summary["q"] = std::to_string(q);
    summary["statistic"] = series.statistic;
    if (series.limit_closed_form) {
      // Exact truncation bound: |limit - partial_D| <= sum_{d>D} |v_d|/q^d
      // with |v_d| <= 2|c0| + 2|a+b| d for the affine statistics, summed in
      // closed form. Holding at every depth, it ties the computed terms to
      // the closed-form limit; the 1e-9 tolerance applies once D >= 40.
      Indeterminate x1{1, false}, y1{1, true};
      Rat c0_abs = Rat(abs(P.constant_coefficient()));
      Rat slope_abs = Rat(abs(P.linear_coefficient(x1) + P.linear_coefficient(y1)));
      int depth = series.d_max;
      Int q_pow = int_pow(Int(q), static_cast<unsigned long>(depth));
      Int geo_den = q_pow * (q - 1);
      Int ramp_den = geo_den * (q - 1);
      Int ramp_num = Int((depth + 1) * q - depth);
      Rat geo(Int(1), geo_den);
      geo.canonicalize();
      Rat ramp(ramp_num, ramp_den);
      ramp.canonicalize();
      Rat tail = Rat(2) * c0_abs * geo + Rat(2) * slope_abs * ramp;
      const Rat& err = series.abs_error.back();
      bool ok = (err <= tail) && (series.d_max < 40 || err <= Rat(1, 1000000000));
      summary["limit"] = rat_string(*series.limit_closed_form);
      summary["source"] = "closed-form";
      summary["abs_error"] = rat_string(err);
      summary["tail_bound"] = rat_string(tail);
      summary["pass"] = bool_str(ok);
    } else {
      summary["limit"] = "";
      summary["source"] = "douglass";
      summary["note"] = "no closed form for this statistic; series truncated at d=" +
                        std::to_string(series.d_max);
      summary["pass"] = "true";
    }
    rep.results.push_back(std::move(summary));
  }
}

void run_expected_value(const RunConfig& c, Report& rep) {
  CharPolynomial P = parse_char_poly(c.statistic, GroupMode::TypeBC);
  for (long q : field_sizes(c.q, /*odd_only=*/true, "expected-value")) {
    Rat value = expected_value_limit(P, q);
    ReportRow row;
    row["q"] = std::to_string(q);
    row["statistic"] = P.to_string();
    row["value"] = rat_string(value);
    row["source"] = "closed-form";
    row["pass"] = "true";
    rep.results.push_back(std::move(row));
  }
}

void run_census(const RunConfig&, Report& rep) {
  rep.fixtures["growth_reference"] = approx12(kGrowthReference);
  auto push_table = [&rep](const CensusTable& table, const GrowthReport* growth) {
    for (std::size_t i = 0; i < table.counts.size(); ++i) {
      int index = table.origin + static_cast<int>(i);
      ReportRow row;
      row["kind"] = to_string(table.kind);
      row["index"] = std::to_string(index);
      row["count"] = table.counts[i].get_str();
      row["source"] = "enumeration";
      if (growth != nullptr)
        for (const GrowthRow& g : growth->rows)
          if (g.index == index) row["root"] = approx12(g.root);
      rep.results.push_back(std::move(row));
    }
  };
  push_table(census_table(CensusKind::RootedTreesByVertices, 16), nullptr);
  CensusTable leafed = census_table(CensusKind::LeafRootedForestsByEdges, 12);
  GrowthReport growth = growth_report(leafed);
  push_table(leafed, &growth);
  push_table(census_table(CensusKind::ForestsByEdges, 12), nullptr);
  push_table(census_table(CensusKind::GraphsNoIsolatedByEdges, 6), nullptr);
}

void run_character_table(const RunConfig& c, Report& rep) {
  check_source_name(c.source);
  int n_cap = (c.source == "douglass") ? 5 : 6;
  if (c.n.lo < 1 || c.n.hi > n_cap)
    throw std::invalid_argument("character-table: n must stay within 1.." +
                                std::to_string(n_cap) + " for source " + c.source +
                                " (the induction oracle averages over all of B_n)");
  std::map<int, OsAlgebra> cache;
  for (int n = static_cast<int>(c.n.lo); n <= static_cast<int>(c.n.hi); ++n) {
    IntRange d = range_empty(c.d) ? IntRange{0, n} : c.d;
    if (d.lo < 0 || d.hi > n)
      d.hi = std::min(d.hi, static_cast<long>(n));
    for (int k = static_cast<int>(std::max(0L, d.lo)); k <= static_cast<int>(d.hi); ++k) {
      bool ran_os = (c.source != "douglass");
      bool ran_douglass = (c.source != "os") && n <= 5;
      std::map<DoublePartition, Int> os_chi, ind_chi;
      if (ran_os) os_chi = bc_algebra(cache, n).character(k, GroupMode::TypeBC);
      if (ran_douglass) ind_chi = induced_character_sum(n, k);
      const auto& keys = ran_os ? os_chi : ind_chi;
      std::string source =
          ran_os && ran_douglass ? "os+douglass" : (ran_os ? "os" : "douglass");
      for (const auto& [type, value] : keys) {
        ReportRow row;
        row["n"] = std::to_string(n);
        row["d"] = std::to_string(k);
        row["class"] = type.to_string();
        row["value"] = (ran_os ? value : ind_chi.at(type)).get_str();
        row["source"] = source;
        if (ran_os && ran_douglass) {
          bool same = (ind_chi.at(type) == value);
          row["pass"] = bool_str(same);
          if (!same) row["induced_value"] = ind_chi.at(type).get_str();
        }
        rep.results.push_back(std::move(row));
      }
    }
  }
}

const std::map<std::string, std::vector<std::string>>& csv_headers() {
  static const std::map<std::string, std::vector<std::string>> headers = {
      {"verify-trace", {"n", "q", "statistic", "lhs", "rhs", "source", "pass"}},
      {"verify-trace-a", {"n", "q", "statistic", "lhs", "rhs", "source", "pass"}},
      {"point-count",
       {"n", "q", "count", "count_source", "formula", "formula_source", "pass"}},
      {"inner-product", {"d", "n", "value", "source"}},
      {"limit",
       {"d", "q", "inner", "partial_sum", "partial_approx", "source", "limit", "abs_error",
        "pass"}},
      {"expected-value", {"q", "statistic", "value", "source", "pass"}},
      {"census", {"kind", "index", "count", "root", "source"}},
      {"character-table", {"n", "d", "class", "value", "source", "pass"}},
  };
  return headers;
}

std::string csv_quote(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string sanitized(const std::string& v) {
  std::string out = v;
  std::replace(out.begin(), out.end(), '\n', '|');
  return out;
}

std::map<std::string, std::string> config_echo(const RunConfig& c) {
  return {
      {"subcommand", c.subcommand},
      {"n", range_string(c.n)},
      {"q", range_string(c.q)},
      {"d", range_empty(c.d) ? std::string("default") : range_string(c.d)},
      {"statistic", c.statistic},
      {"source", c.source},
      {"format", to_string(c.format)},
      {"output", c.output_path.empty() ? std::string("-") : c.output_path},
      {"workers", std::to_string(c.workers)},
      {"force", bool_str(c.force)},
      {"timing", bool_str(c.timing)},
      {"d_max", std::to_string(c.d_max)},
  };
}

}  // namespace

IntRange parse_range(const std::string& text, const std::string& what) {
  auto parse_long = [&](const std::string& part) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != part.size())
      throw std::invalid_argument(what + ": expected an integer or a..b range, got '" + text +
                                  "'");
    return v;
  };
  IntRange r;
  std::size_t sep = text.find("..");
  if (sep == std::string::npos) {
    r.lo = r.hi = parse_long(text);
  } else {
    r.lo = parse_long(text.substr(0, sep));
    r.hi = parse_long(text.substr(sep + 2));
  }
  if (r.hi < r.lo)
    throw std::invalid_argument(what + ": empty range '" + text + "'");
  return r;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("format must be one of text, json, csv");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  throw std::logic_error("unknown output format");
}

Report run_report(const RunConfig& config) {
  Report rep;
  rep.config = config;
  auto start = std::chrono::steady_clock::now();
  if (config.workers < 1) throw std::invalid_argument("workers must be at least 1");

  if (config.subcommand == "verify-trace")
    run_verify_trace(config, rep);
  else if (config.subcommand == "verify-trace-a")
    run_verify_trace_a(config, rep);
  else if (config.subcommand == "point-count")
    run_point_count(config, rep);
  else if (config.subcommand == "inner-product")
    run_inner_product(config, rep);
  else if (config.subcommand == "limit")
    run_limit(config, rep);
  else if (config.subcommand == "expected-value")
    run_expected_value(config, rep);
  else if (config.subcommand == "census")
    run_census(config, rep);
  else if (config.subcommand == "character-table")
    run_character_table(config, rep);
  else
    throw std::invalid_argument("unknown subcommand: " + config.subcommand);

  rep.pass = true;
  for (const ReportRow& row : rep.results) {
    auto it = row.find("pass");
    if (it != row.end() && it->second != "true") rep.pass = false;
  }
  if (config.timing) {
    auto elapsed = std::chrono::steady_clock::now() - start;
    rep.timing_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  return rep;
}

std::string render(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      nlohmann::json j;
      j["config"] = config_echo(report.config);
      j["config"]["fixtures"] = report.fixtures;
      j["results"] = report.results;
      j["pass"] = report.pass;
      j["timing_ms"] = report.timing_ms;
      return j.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      auto it = csv_headers().find(report.config.subcommand);
      if (it == csv_headers().end())
        throw std::invalid_argument("no csv layout for subcommand " + report.config.subcommand);
      std::string out;
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        if (i > 0) out += ',';
        out += it->second[i];
      }
      out += '\n';
      for (const ReportRow& row : report.results) {
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          if (i > 0) out += ',';
          auto field = row.find(it->second[i]);
          if (field != row.end()) out += csv_quote(field->second);
        }
        out += '\n';
      }
      return out;
    }
    case OutputFormat::Text: {
      std::string out = "subcommand: " + report.config.subcommand + "\n";
      out += "config:";
      for (const auto& [k, v] : config_echo(report.config))
        if (k != "subcommand") out += " " + k + "=" + sanitized(v);
      out += "\n";
      for (const auto& [k, v] : report.fixtures) out += "fixture: " + k + "=" + v + "\n";
      for (const ReportRow& row : report.results) {
        out += "result:";
        for (const auto& [k, v] : row) out += " " + k + "=" + sanitized(v);
        out += "\n";
      }
      out += "pass: " + bool_str(report.pass) + "\n";
      out += "timing_ms: " + std::to_string(report.timing_ms) + "\n";
      return out;
    }
  }
  throw std::logic_error("unknown output format");
}

void emit(const Report& report, OutputFormat format, const std::string& path) {
  std::string payload = render(report, format);
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output path: " + path);
  file << payload;
  file.flush();
  if (!file) throw std::runtime_error("write failed for output path: " + path);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"exact verification of signed point counts against arrangement cohomology"};
  app.require_subcommand(1);

  struct SubVars {
    std::string n = "1..3";
    std::string q = "3";
    std::string d;
    std::string statistic = "1";
    std::string source = "both";
    std::string format = "text";
    std::string output;
    int workers = 1;
    bool force = false;
    bool timing = false;
    int d_max = 40;
  };
  std::map<std::string, SubVars> vars;

  auto add_common = [](CLI::App* sub, SubVars& v) {
    sub->add_option("--format", v.format, "output format: text, json, csv")
        ->capture_default_str();
    sub->add_option("--output,-o", v.output, "output path (default stdout)");
    sub->add_option("--workers", v.workers, "parallelism hint; never changes results")
        ->capture_default_str();
    sub->add_flag("--force", v.force, "lift the enumeration-size guard");
    sub->add_flag("--timing", v.timing, "report wall time (off keeps reruns byte-stable)");
  };

  {
    SubVars& v = vars["verify-trace"];
    CLI::App* sub = app.add_subcommand(
        "verify-trace", "enumerate the signed-count side and match the cohomology side");
    sub->add_option("--n", v.n, "rank or range a..b")->capture_default_str();
    sub->add_option("--q", v.q, "odd prime power or range")->capture_default_str();
    sub->add_option("--P", v.statistic, "statistic in X<k>, Y<k>")->capture_default_str();
    sub->add_option("--source", v.source, "cohomology engine: os, douglass, both")
        ->capture_default_str();
    add_common(sub, v);
  }
  {
    SubVars& v = vars["verify-trace-a"];
    v.q = "2..3";
    CLI::App* sub = app.add_subcommand(
        "verify-trace-a", "unsigned variant against the braid arrangement");
    sub->add_option("--n", v.n, "rank or range a..b")->capture_default_str();
    sub->add_option("--q", v.q, "prime power or range")->capture_default_str();
    sub->add_option("--P", v.statistic, "statistic in X<k>")->capture_default_str();
    add_common(sub, v);
  }
  {
    SubVars& v = vars["point-count"];
    v.n = "1..6";
    CLI::App* sub = app.add_subcommand(
        "point-count", "count the squarefree locus and match the alternating closed form");
    sub->add_option("--n", v.n, "degree or range a..b")->capture_default_str();
    sub->add_option("--q", v.q, "odd prime power or range")->capture_default_str();
    add_common(sub, v);
  }
  {
    SubVars& v = vars["inner-product"];
    v.n = "1..8";
    v.d = "0..8";
    CLI::App* sub = app.add_subcommand(
        "inner-product", "grid of <P, H^d> inner products (the stable-table layout)");
    sub->add_option("--P", v.statistic, "statistic in X<k>, Y<k>")->capture_default_str();
    sub->add_option("--n", v.n, "rank or range a..b")->capture_default_str();
    sub->add_option("--d", v.d, "degree or range a..b")->capture_default_str();
    sub->add_option("--source", v.source, "cohomology engine: os, douglass, both")
        ->capture_default_str();
    add_common(sub, v);
  }
  {
    SubVars& v = vars["limit"];
    CLI::App* sub = app.add_subcommand(
        "limit", "partial sums of the stable series sum_d <P, H^d>/(-q)^d");
    sub->add_option("--P", v.statistic, "statistic in X<k>, Y<k>")->capture_default_str();
    sub->add_option("--q", v.q, "odd prime power or range")->capture_default_str();
    sub->add_option("--dmax", v.d_max, "series truncation depth")->capture_default_str();
    add_common(sub, v);
  }
  {
    SubVars& v = vars["expected-value"];
    CLI::App* sub = app.add_subcommand(
        "expected-value", "closed-form limiting expectation of the statistic");
    sub->add_option("--P", v.statistic, "statistic in X<k>, Y<k>")->capture_default_str();
    sub->add_option("--q", v.q, "odd prime power or range")->capture_default_str();
    add_common(sub, v);
  }
  {
    SubVars& v = vars["census"];
    CLI::App* sub = app.add_subcommand(
        "census", "tree, forest, and graph count tables with growth diagnostics");
    add_common(sub, v);
  }
  {
    SubVars& v = vars["character-table"];
    v.n = "1..4";
    CLI::App* sub = app.add_subcommand(
        "character-table", "per-class characters of each graded cohomology piece");
    sub->add_option("--n", v.n, "rank or range a..b")->capture_default_str();
    sub->add_option("--d", v.d, "degree or range a..b (default 0..n)");
    sub->add_option("--source", v.source, "character engine: os, douglass, both")
        ->capture_default_str();
    add_common(sub, v);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const SubVars& v = vars.at(sub->get_name());
    RunConfig config;
    config.subcommand = sub->get_name();
    config.n = parse_range(v.n, "--n");
    config.q = parse_range(v.q, "--q");
    config.d = v.d.empty() ? IntRange{0, -1} : parse_range(v.d, "--d");
    config.statistic = v.statistic;
    config.source = v.source;
    config.format = parse_format(v.format);
    config.output_path = v.output;
    config.workers = v.workers;
    config.force = v.force;
    config.timing = v.timing;
    config.d_max = v.d_max;

    Report report = run_report(config);
    emit(report, config.format, config.output_path);
    return report.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bcstat
