#pragma once

// Request handling behind the `repvar` command-line tool: every command maps
// to a canonical JSON document (schema 1); CSV output is a flattening of the
// same document. Results may be cached on disk as canonical JSON.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "repvar/algebra/json.hpp"
#include "repvar/exterior.hpp"
#include "repvar/locimage.hpp"
#include "repvar/numeric/oracle.hpp"
#include "repvar/surfaces.hpp"

namespace repvar::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"betti", "bigraded", "equivariant", "localization-image",
                                                 "cup-table", "orbit", "verify", "numeric-check"};
  return names;
}

enum class Format { Json, Csv };

struct Request {
  std::string command;
  unsigned n = 0;
  TargetKind target = TargetKind::CentralPlus;
  std::optional<unsigned> degree_bound;
  std::uint64_t seed = 0;
  Format format = Format::Json;
  bool use_cache = true;
  unsigned n_max = 8;
  std::string check = "all";
  std::optional<std::size_t> samples;
  bool allow_large = false;
  std::optional<std::filesystem::path> cache_dir;
};

struct Outcome {
  int exit_code = kExitOk;
  nlohmann::json document;
};

// ---------------------------------------------------------------------------
// Encoding helpers

inline nlohmann::json integer_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

/// Dense integer coefficient list of a polynomial with integer coefficients.
inline nlohmann::json dense_integer_json(const RatPoly& p) {
  auto out = nlohmann::json::array();
  for (const auto& c : dense_coeffs(p)) {
    if (boost::multiprecision::denominator(c) != 1) throw ConsistencyError("expected integer coefficients");
    out.push_back(integer_json(boost::multiprecision::numerator(c)));
  }
  if (out.empty()) out.push_back(0);
  return out;
}

inline nlohmann::json series_json(const RatFn& f, unsigned degree) {
  auto out = nlohmann::json::array();
  for (const auto& c : series_expand(f, degree)) {
    if (boost::multiprecision::denominator(c) != 1) {
      out.push_back(numerator_string(c) + "/" + denominator_string(c));
    } else {
      out.push_back(integer_json(boost::multiprecision::numerator(c)));
    }
  }
  return out;
}

namespace detail {

inline void flatten(const nlohmann::json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(path, "");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), rows);
  } else if (j.is_string()) {
    rows.emplace_back(path, j.get<std::string>());
  } else {
    rows.emplace_back(path, j.dump());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

/// Flattens a JSON document to "path,value" rows.
inline std::string to_csv(const nlohmann::json& doc) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(doc, "", rows);
  std::string out = "path,value\n";
  for (const auto& [p, v] : rows) out += detail::csv_field(p) + "," + detail::csv_field(v) + "\n";
  return out;
}

inline std::string render(const nlohmann::json& doc, Format f) {
  return f == Format::Json ? doc.dump(2) + "\n" : to_csv(doc);
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline SurfaceTarget target_of(const Request& r) { return {r.target, r.n}; }

inline void require_central(const Request& r) {
  if (r.target == TargetKind::Generic)
    throw UsageError(r.command + " is defined for central targets (plus, minus) only");
}

inline EnumerationLimits limits_of(const Request& r) { return {kDefaultEnumerationCap, r.allow_large}; }

inline nlohmann::json header(const Request& r) {
  const auto t = target_of(r);
  nlohmann::json j = {{"schema", kSchemaVersion}, {"command", r.command}, {"n", r.n},
                      {"target", std::string(to_string(r.target))}, {"variety", describe(t)}};
  if (t.is_central()) j["kind"] = std::string(to_string(t.variety()));
  return j;
}

inline nlohmann::json betti(const Request& r) {
  const auto t = target_of(r);
  const auto p = poincare(t);
  auto j = header(r);
  j["poincare"] = dense_integer_json(p.total);
  j["poincare_exact"] = poly_to_json(p.total);
  j["plus_sector"] = dense_integer_json(p.plus);
  j["minus_sector"] = dense_integer_json(p.minus);
  j["total_dimension"] = integer_json(boost::multiprecision::numerator(evaluate(p.total, 1)));
  j["euler_characteristic"] = integer_json(euler_characteristic(t));
  if (t.is_central()) j["has_two_torsion"] = has_two_torsion(t);
  return j;
}

inline nlohmann::json bigraded(const Request& r) {
  require_central(r);
  const auto t = target_of(r);
  const auto pxy = bigraded_poincare(t);
  const auto from_basis = bigraded_generating_function(ordinary_basis(t.n, t.variety(), limits_of(r)));
  const auto specialized = total_degree_specialization(pxy);
  if (!(from_basis == pxy) || !(specialized == poincare(t).total))
    throw ConsistencyError("bigraded Poincare polynomial disagrees with the ordinary basis");
  auto j = header(r);
  j["p_xy"] = poly_to_json(pxy);
  j["p_xy_text"] = to_string(pxy);
  j["specialization_rule"] = "x^k y^(2l) -> t^(k+2l)";
  j["specialized"] = dense_integer_json(specialized);
  return j;
}

inline nlohmann::json equivariant(const Request& r) {
  const auto t = target_of(r);
  const unsigned deg = r.degree_bound.value_or(kDefaultSeriesDegree);
  const auto eq = equivariant_poincare(t);
  const auto gxt = gxt_equivariant_series(t);
  auto j = header(r);
  j["degree_bound"] = deg;
  j["t_series"] = ratfn_to_json(eq.t_series);
  j["t_series_coefficients"] = series_json(eq.t_series, deg);
  j["g_series"] = ratfn_to_json(eq.g_series);
  j["g_series_coefficients"] = series_json(eq.g_series, deg);
  j["gxt_series"] = ratfn_to_json(gxt);
  j["gxt_series_coefficients"] = series_json(gxt, deg);
  return j;
}

inline nlohmann::json localization_image(const Request& r) {
  require_central(r);
  const auto t = target_of(r);
  const unsigned deg = r.degree_bound.value_or(default_factorization_degree(t.n));
  auto j = header(r);
  j["degree_bound"] = deg;
  for (Sector s : {Sector::Plus, Sector::Minus}) {
    const ImageSpec spec{t.n, t.variety(), s};
    nlohmann::json sj;
    if (s == Sector::Plus) {
      sj["predicate"] = "k <= l";
    } else {
      sj["predicate"] = t.variety() == Variety::Regular ? "k + l >= n" : "k + l >= n + 1";
    }
    sj["hilbert_series"] = ratfn_to_json(image_hilbert_series(spec));
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& e : image_basis(spec, deg, limits_of(r)))
      basis.push_back({{"subset", mask_indices(e.subset)}, {"c1_power", e.c1_power}});
    sj["basis"] = basis;
    j[std::string(to_string(s))] = sj;
  }
  return j;
}

inline nlohmann::json cup(const Request& r) {
  require_central(r);
  const auto t = target_of(r);
  auto j = header(r);
  j.update(to_json(cup_table(t.n, t.variety(), limits_of(r))));
  j["target"] = std::string(to_string(r.target));
  return j;
}

inline nlohmann::json orbit(const Request& r) {
  const auto t = target_of(r);
  const unsigned deg = r.degree_bound.value_or(kDefaultSeriesDegree);
  const auto o = orbit_poincare(t);
  auto j = header(r);
  j["poincare"] = dense_integer_json(o.poincare);
  j["poincare_exact"] = poly_to_json(o.poincare);
  j["pair_series"] = ratfn_to_json(o.pair_series);
  j["pair_series_coefficients"] = series_json(o.pair_series, deg);
  j["pair_trivial_cup_product"] = true;
  j["reduced_cup_trivial"] = o.reduced_cup_trivial;
  return j;
}

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Runs the symbolic consistency suite for all n <= n_max.
inline std::vector<CheckResult> verify_checks(unsigned n_max) {
  std::vector<CheckResult> out;
  const auto rec = recursion_verify(std::max(1U, n_max));
  out.push_back({"recursion", rec.pass, rec.first_failure.value_or("")});
  for (unsigned n = 1; n <= n_max; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto f = factorization_check(n, v);
      out.push_back({"factorization n=" + std::to_string(n) + " " + std::string(to_string(v)), f.pass,
                     f.first_discrepancy.value_or("")});
    }
  for (unsigned n = 0; n <= n_max; ++n) {
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto target = central_target(v, n);
      RatFn sum;
      bool closed_ok = true;
      for (Sector s : {Sector::Plus, Sector::Minus}) {
        const ImageSpec spec{n, v, s};
        sum = sum + image_hilbert_series(spec);
        closed_ok = closed_ok && image_hilbert_series(spec) == image_hilbert_closed_form(spec);
      }
      out.push_back({"image-hilbert n=" + std::to_string(n) + " " + std::string(to_string(v)),
                     closed_ok && sum == equivariant_poincare(target).t_series, ""});
      const auto basis = ordinary_basis(n, v);
      out.push_back({"bigraded n=" + std::to_string(n) + " " + std::string(to_string(v)),
                     basis.size() == (std::size_t{2} << n) &&
                         bigraded_generating_function(basis) == bigraded_poincare(target) &&
                         total_degree_specialization(bigraded_poincare(target)) == poincare(target).total,
                     ""});
    }
    for (TargetKind k : {TargetKind::CentralPlus, TargetKind::CentralMinus, TargetKind::Generic}) {
      const SurfaceTarget target{k, n};
      const std::string label = " n=" + std::to_string(n) + " " + std::string(to_string(k));
      out.push_back({"weyl" + label, gxt_equivariant_series(target) == weyl_invariant_series(target), ""});
      try {
        orbit_poincare(target);
        out.push_back({"orbit" + label, true, ""});
      } catch (const ConsistencyError& e) {
        out.push_back({"orbit" + label, false, e.what()});
      }
    }
    const auto pr = variety_poincare(n, Variety::Regular).total;
    out.push_back({"duality n=" + std::to_string(n), poly_reciprocal(pr, 3 * n) == pr, ""});
  }
  return out;
}

inline Outcome verify(const Request& r) {
  Outcome o;
  o.document = {{"schema", kSchemaVersion}, {"command", r.command}, {"n_max", r.n_max}};
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& c : verify_checks(r.n_max)) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
  }
  o.document["checks"] = checks;
  o.document["pass"] = all;
  o.exit_code = all ? kExitOk : kExitInconsistent;
  return o;
}

inline Outcome numeric_check(const Request& r) {
  using namespace repvar::numeric;
  const std::vector<std::string> known = {"singular-rank", "x1r-chart", "sqrt-fiber", "box-equivariance",
                                          "sample-dimension"};
  if (r.check != "all" && std::find(known.begin(), known.end(), r.check) == known.end())
    throw UsageError("unknown numeric check '" + r.check + "'");
  auto want = [&](const std::string& name) { return r.check == "all" || r.check == name; };
  std::vector<NumericReport> reports;
  if (want("singular-rank")) reports.push_back(singular_rank_check(4, r.samples.value_or(10000), r.seed));
  if (want("x1r-chart")) reports.push_back(x1r_chart_check(r.samples.value_or(10000), r.seed));
  if (want("sqrt-fiber")) reports.push_back(sqrt_fiber_check(r.samples.value_or(100000), r.seed));
  if (want("box-equivariance")) reports.push_back(box_equivariance_check(4, r.samples.value_or(10000), r.seed));
  if (want("sample-dimension"))
    reports.push_back(sample_dimension_check(target_of(r), r.samples.value_or(1000), r.seed));
  Outcome o;
  o.document = {{"schema", kSchemaVersion}, {"command", r.command}, {"seed", r.seed}};
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& rep : reports) {
    arr.push_back(to_json(rep));
    all = all && rep.pass;
  }
  o.document["reports"] = arr;
  o.document["pass"] = all;
  o.exit_code = all ? kExitOk : kExitInconsistent;
  return o;
}

inline Outcome dispatch(const Request& r) {
  if (r.command == "betti") return {kExitOk, betti(r)};
  if (r.command == "bigraded") return {kExitOk, bigraded(r)};
  if (r.command == "equivariant") return {kExitOk, equivariant(r)};
  if (r.command == "localization-image") return {kExitOk, localization_image(r)};
  if (r.command == "cup-table") return {kExitOk, cup(r)};
  if (r.command == "orbit") return {kExitOk, orbit(r)};
  if (r.command == "verify") return verify(r);
  if (r.command == "numeric-check") return numeric_check(r);
  throw UsageError("unknown command '" + r.command + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cache

inline std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("REPVAR_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "repvar";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "repvar";
  return std::filesystem::temp_directory_path() / "repvar-cache";
}

/// Key over every field that affects the document (format excluded: the
/// cache stores JSON and CSV is derived from it).
inline std::string cache_key(const Request& r) {
  std::ostringstream os;
  os << "v" << kSchemaVersion << "_" << r.command << "_n" << r.n << "_" << to_string(r.target) << "_d"
     << (r.degree_bound ? std::to_string(*r.degree_bound) : std::string("default")) << "_s" << r.seed << "_m"
     << r.n_max << "_" << r.check << "_k" << (r.samples ? std::to_string(*r.samples) : std::string("default"))
     << (r.allow_large ? "_large" : "");
  return os.str();
}

inline std::optional<nlohmann::json> cache_load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

/// Writes to a temporary file in the same directory, then renames.
inline void cache_store(const std::filesystem::path& file, const nlohmann::json& doc) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;
  std::random_device rd;
  const auto tmp = file.parent_path() / (file.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << doc.dump();
    if (!out) return;
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

// ---------------------------------------------------------------------------

/// Executes a request. Returns the exit code: 0 success, 1 a consistency
/// check failed, 2 a usage error. The rendered document (or error message)
/// is written to `out` / `err`.
inline int run(const Request& r, std::ostream& out, std::ostream& err) {
  const bool cacheable = r.use_cache && r.command != "verify" && r.command != "numeric-check";
  std::filesystem::path cache_file;
  if (cacheable) {
    cache_file = r.cache_dir.value_or(default_cache_dir()) / (cache_key(r) + ".json");
    if (auto hit = cache_load(cache_file)) {
      out << render(*hit, r.format);
      return kExitOk;
    }
  }
  Outcome o;
  try {
    o = detail::dispatch(r);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInconsistent;
  }
  if (cacheable && o.exit_code == kExitOk) cache_store(cache_file, o.document);
  out << render(o.document, r.format);
  return o.exit_code;
}

}  // namespace repvar::cli
