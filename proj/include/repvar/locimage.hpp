#pragma once

// Image of the localization map H_T(X) -> H_T(X^T) for X = X_n^r, X_n^s,
// described per sector as a set of admissible bidegrees (k, 2l), and the
// ordinary cohomology H(X) = im / c_1 im with its cup product.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "repvar/algebra/json.hpp"
#include "repvar/exterior.hpp"

namespace repvar {

/// One sector of the localization image of X_n^r or X_n^s:
///   Plus:            k <= l
///   Minus, regular:  k + l >= n
///   Minus, singular: k + l >= n + 1
struct ImageSpec {
  unsigned n = 0;
  Variety variety = Variety::Regular;
  Sector sector = Sector::Plus;

  /// Smallest admissible c_1-power for exterior degree k; the predicate is
  /// l >= min_c1_power(k).
  unsigned min_c1_power(unsigned k) const {
    if (sector == Sector::Plus) return k;
    const unsigned threshold = n + (variety == Variety::Singular ? 1 : 0);
    return threshold > k ? threshold - k : 0;
  }

  bool admits(unsigned k, unsigned l) const { return k <= n && l >= min_c1_power(k); }
};

/// a_S (x) c_1^l in one sector.
struct ImageElement {
  Mask subset = 0;
  unsigned c1_power = 0;

  unsigned total_degree() const { return popcount(subset) + 2 * c1_power; }
  friend auto operator<=>(const ImageElement&, const ImageElement&) = default;
};

/// Canonical order: subsets colexicographically (ascending bitmask), then c_1-power.
inline void sort_canonical(std::vector<ImageElement>& v) {
  std::sort(v.begin(), v.end());
}

/// All admissible a_S c_1^l with |S| + 2l <= max_total_degree, canonical order.
inline std::vector<ImageElement> image_basis(const ImageSpec& spec, unsigned max_total_degree,
                                             const EnumerationLimits& limits = {}) {
  check_enumeration(spec.n, limits);
  std::vector<ImageElement> out;
  for (Mask s = 0;; ++s) {
    const unsigned k = popcount(s);
    for (unsigned l = spec.min_c1_power(k); k + 2 * l <= max_total_degree; ++l)
      out.push_back({s, l});
    if (s == full_mask(spec.n)) break;
  }
  return out;
}

/// Sum over admissible (k, l) of C(n, k) t^(k+2l), as a rational function.
inline RatFn image_hilbert_series(const ImageSpec& spec) {
  RatPoly numerator;
  for (unsigned k = 0; k <= spec.n; ++k)
    numerator.add_term(k + 2 * spec.min_c1_power(k), Rat(binomial(spec.n, k)));
  return {numerator, RatPoly{{0, 1}, {2, -1}}};
}

/// Closed forms: (1+t^3)^n, (t+t^2)^n and t^2 (t+t^2)^n over 1 - t^2.
inline RatFn image_hilbert_closed_form(const ImageSpec& spec) {
  RatPoly num;
  if (spec.sector == Sector::Plus) {
    num = RatPoly{{0, 1}, {3, 1}}.pow(spec.n);
  } else {
    num = RatPoly{{1, 1}, {2, 1}}.pow(spec.n);
    if (spec.variety == Variety::Singular) num *= poly_term(2);
  }
  return {num, RatPoly{{0, 1}, {2, -1}}};
}

// ---------------------------------------------------------------------------
// Kunneth combination over H(BT)

/// A localization image, upward closed in l in every sector (closed under
/// multiplication by c_1), so each sector is determined by the minimal
/// c_1-power of every subset. Generators are numbered as in the fixed-point
/// identification (g_0 h_0, g_1..g_m, h_1..h_n): the first factor's come first.
struct ImageModule {
  unsigned generators = 0;
  std::string description;
  std::function<unsigned(Sector, Mask)> min_c1_power;

  bool contains(Sector s, Mask subset, unsigned l) const { return l >= min_c1_power(s, subset); }
};

inline ImageModule image_module(unsigned n, Variety v) {
  ImageModule m;
  m.generators = n;
  m.description = "X_" + std::to_string(n) + (v == Variety::Regular ? "^r" : "^s");
  m.min_c1_power = [n, v](Sector s, Mask subset) {
    return ImageSpec{n, v, s}.min_c1_power(popcount(subset));
  };
  return m;
}

/// Image of the diagonal Z_2 quotient of a product: in each sector it is the
/// tensor product over Q[c_1] of the same sector of both factors, so
/// a_(S u T) c_1^l is present iff l >= l_min(S) + l_min(T).
inline ImageModule kunneth_combine(const ImageModule& a, const ImageModule& b) {
  ImageModule m;
  m.generators = a.generators + b.generators;
  m.description = a.description + " x_Z2 " + b.description;
  const unsigned shift = a.generators;
  const Mask low = full_mask(a.generators);
  m.min_c1_power = [a, b, shift, low](Sector s, Mask subset) {
    return a.min_c1_power(s, subset & low) + b.min_c1_power(s, subset >> shift);
  };
  return m;
}

/// Elements of one sector of a module up to a total degree, canonical order.
inline std::vector<ImageElement> enumerate_module(const ImageModule& m, Sector s, unsigned max_total_degree,
                                                  const EnumerationLimits& limits = {}) {
  check_enumeration(m.generators, limits);
  std::vector<ImageElement> out;
  for (Mask subset = 0;; ++subset) {
    const unsigned k = popcount(subset);
    for (unsigned l = m.min_c1_power(s, subset); k + 2 * l <= max_total_degree; ++l)
      out.push_back({subset, l});
    if (subset == full_mask(m.generators)) break;
  }
  return out;
}

/// Span of all products x (x) y of basis elements of the two factors, read in
/// the combined generator numbering (monomials span, so the span is a set).
inline std::vector<ImageElement> product_span(const std::vector<ImageElement>& a, unsigned a_generators,
                                              const std::vector<ImageElement>& b, unsigned max_total_degree) {
  std::set<ImageElement> seen;
  for (const auto& x : a)
    for (const auto& y : b) {
      ImageElement z{x.subset | (y.subset << a_generators), x.c1_power + y.c1_power};
      if (z.total_degree() <= max_total_degree) seen.insert(z);
    }
  return {seen.begin(), seen.end()};
}

/// Hilbert series of one sector of a module.
inline RatFn module_hilbert_series(const ImageModule& m, Sector s) {
  RatPoly numerator;
  for (Mask subset = 0;; ++subset) {
    numerator.add_term(popcount(subset) + 2 * m.min_c1_power(s, subset), 1);
    if (subset == full_mask(m.generators)) break;
  }
  return {numerator, RatPoly{{0, 1}, {2, -1}}};
}

struct FactorizationReport {
  unsigned n = 0;
  Variety variety = Variety::Regular;
  unsigned degree_bound = 0;
  std::size_t elements_checked = 0;
  bool pass = true;
  std::optional<std::string> first_discrepancy;
};

inline unsigned default_factorization_degree(unsigned n) { return 2 * n + 6; }

namespace detail {

inline std::string format_element(Sector s, const ImageElement& e) {
  std::string out = std::string(to_string(s)) + " a_{";
  bool first = true;
  for (unsigned i : mask_indices(e.subset)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "} c1^" + std::to_string(e.c1_power);
}

inline std::optional<std::string> first_difference(Sector s, const std::vector<ImageElement>& expected,
                                                   const std::vector<ImageElement>& got,
                                                   const std::string& label) {
  std::vector<ImageElement> missing, extra;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(), std::back_inserter(extra));
  if (!missing.empty()) return label + ": missing " + format_element(s, missing.front());
  if (!extra.empty()) return label + ": unexpected " + format_element(s, extra.front());
  return std::nullopt;
}

}  // namespace detail

/// Checks the factorizations
///   X_n^r ~ X_{n-1}^r x_Z2 X_1^r ~ X_1^r x_Z2 ... x_Z2 X_1^r
///   X_n^s ~ X_n^r x_Z2 X_0^s ~ X_1^r x_Z2 ... x_Z2 X_1^r x_Z2 X_0^s
/// at the level of localization images: element by element up to the degree
/// bound (by product enumeration and by the combined predicate), and
/// symbolically by Hilbert series.
inline FactorizationReport factorization_check(unsigned n, Variety variety,
                                               std::optional<unsigned> degree_bound = std::nullopt,
                                               const EnumerationLimits& limits = {}) {
  if (n < 1) throw UsageError("factorization_check requires n >= 1");
  check_enumeration(n, limits);
  FactorizationReport report;
  report.n = n;
  report.variety = variety;
  report.degree_bound = degree_bound.value_or(default_factorization_degree(n));
  const unsigned bound = report.degree_bound;

  std::vector<std::pair<ImageModule, ImageModule>> routes;  // (left, right) factors
  ImageModule iterated = image_module(1, Variety::Regular);
  for (unsigned i = 1; i < n; ++i) iterated = kunneth_combine(iterated, image_module(1, Variety::Regular));
  if (variety == Variety::Regular) {
    routes.emplace_back(image_module(n - 1, Variety::Regular), image_module(1, Variety::Regular));
  } else {
    routes.emplace_back(image_module(n, Variety::Regular), image_module(0, Variety::Singular));
    routes.emplace_back(iterated, image_module(0, Variety::Singular));
  }

  for (Sector s : {Sector::Plus, Sector::Minus}) {
    const ImageSpec spec{n, variety, s};
    const auto expected = image_basis(spec, bound, limits);
    std::vector<std::pair<std::string, std::vector<ImageElement>>> candidates;
    for (const auto& [left, right] : routes) {
      const auto combined = kunneth_combine(left, right);
      candidates.emplace_back(combined.description + " (products)",
                              product_span(enumerate_module(left, s, bound, limits), left.generators,
                                           enumerate_module(right, s, bound, limits), bound));
      candidates.emplace_back(combined.description + " (predicate)",
                              enumerate_module(combined, s, bound, limits));
      if (!(module_hilbert_series(combined, s) == image_hilbert_series(spec)) && report.pass) {
        report.pass = false;
        report.first_discrepancy = combined.description + ": Hilbert series differs in sector " +
                                   std::string(to_string(s));
      }
    }
    if (variety == Variety::Regular) {
      candidates.emplace_back(iterated.description + " (predicate)", enumerate_module(iterated, s, bound, limits));
    }
    for (const auto& [label, got] : candidates) {
      report.elements_checked += got.size();
      if (!report.pass) continue;
      if (auto diff = detail::first_difference(s, expected, got, label)) {
        report.pass = false;
        report.first_discrepancy = diff;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Ordinary cohomology H(X) = im(i*) / c_1 im(i*)

/// Class of H(X) represented by a_S c_1^(l_min) in its sector.
struct OrdClass {
  Sector sector = Sector::Plus;
  Mask subset = 0;
  unsigned c1_power = 0;

  unsigned exterior_degree() const { return popcount(subset); }
  unsigned degree() const { return exterior_degree() + 2 * c1_power; }
  /// Bidegree (k, 2l).
  std::pair<unsigned, unsigned> bidegree() const { return {exterior_degree(), 2 * c1_power}; }
  friend bool operator==(const OrdClass&, const OrdClass&) = default;
};

/// Basis of H(X_n^r) or H(X_n^s): every subset in both sectors at its minimal
/// c_1-power. Order: Plus sector then Minus, subsets colexicographically.
inline std::vector<OrdClass> ordinary_basis(unsigned n, Variety v, const EnumerationLimits& limits = {}) {
  check_enumeration(n, limits);
  std::vector<OrdClass> out;
  for (Sector s : {Sector::Plus, Sector::Minus}) {
    const ImageSpec spec{n, v, s};
    for (Mask m = 0;; ++m) {
      out.push_back({s, m, spec.min_c1_power(popcount(m))});
      if (m == full_mask(n)) break;
    }
  }
  return out;
}

/// Sum over the basis of x^k y^(2l).
inline RatPoly2 bigraded_generating_function(const std::vector<OrdClass>& basis) {
  RatPoly2 p;
  for (const auto& c : basis) {
    const auto [k, m] = c.bidegree();
    p.add_term({k, m}, 1);
  }
  return p;
}

struct CupTerm {
  OrdClass cls;
  Rat coeff;
};

/// Product of two classes of H(X): multiply representatives in
/// H(X^T) (x) H(BT); the result is zero if it lies in c_1 im(i*), i.e. its
/// c_1-power exceeds the minimum for its sector and exterior degree.
inline std::optional<CupTerm> cup_product(const OrdClass& a, const OrdClass& b, unsigned n, Variety v) {
  auto prod = bigraded_mul({a.sector, {a.subset, 1}, a.c1_power, 1}, {b.sector, {b.subset, 1}, b.c1_power, 1});
  if (!prod) return std::nullopt;
  const ImageSpec spec{n, v, prod->sector};
  const unsigned k = prod->exterior_degree();
  const unsigned lmin = spec.min_c1_power(k);
  if (prod->c1_power < lmin)
    throw ConsistencyError("product left the localization image");
  if (prod->c1_power > lmin) return std::nullopt;
  return CupTerm{{prod->sector, prod->mono.subset, prod->c1_power}, prod->coeff * prod->mono.sign};
}

struct CupEntry {
  std::size_t i, j, k;
  Rat coeff;
};

struct CupTable {
  unsigned n = 0;
  Variety variety = Variety::Regular;
  std::vector<OrdClass> basis;
  std::vector<CupEntry> entries;  // basis[i] * basis[j] = coeff * basis[k]
};

inline CupTable cup_table(unsigned n, Variety v, const EnumerationLimits& limits = {}) {
  CupTable t;
  t.n = n;
  t.variety = v;
  t.basis = ordinary_basis(n, v, limits);
  // Basis index of (sector, subset): Plus block then Minus block.
  const std::size_t half = t.basis.size() / 2;
  auto index_of = [half](const OrdClass& c) {
    return (c.sector == Sector::Plus ? 0 : half) + static_cast<std::size_t>(c.subset);
  };
  for (std::size_t i = 0; i < t.basis.size(); ++i)
    for (std::size_t j = 0; j < t.basis.size(); ++j)
      if (auto r = cup_product(t.basis[i], t.basis[j], n, v)) {
        const std::size_t k = index_of(r->cls);
        if (!(t.basis[k] == r->cls)) throw ConsistencyError("cup product is not a basis class");
        t.entries.push_back({i, j, k, r->coeff});
      }
  return t;
}

inline nlohmann::json to_json(const OrdClass& c) {
  return {{"sector", std::string(to_string(c.sector))},
          {"subset", mask_indices(c.subset)},
          {"c1_power", c.c1_power},
          {"bidegree", {c.bidegree().first, c.bidegree().second}},
          {"degree", c.degree()}};
}

inline nlohmann::json to_json(const CupTable& t) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& c : t.basis) basis.push_back(to_json(c));
  nlohmann::json table = nlohmann::json::array();
  for (const auto& e : t.entries)
    table.push_back({e.i, e.j, e.k, numerator_string(e.coeff)});
  return {{"n", t.n}, {"variety", std::string(to_string(t.variety))}, {"basis", basis}, {"table", table}};
}

}  // namespace repvar
