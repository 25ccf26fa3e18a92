#pragma once

// Exterior algebra Lambda[a_1..a_n] with |a_i| = 1, the fixed-point module
// Q[Z_2] (x) Lambda split into its two deck-transformation eigenspaces
// (sectors), and the equivariant extension by H(BT) = Q[c_1].

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "repvar/algebra/rational_function.hpp"
#include "repvar/target.hpp"

namespace repvar {

using Mask = std::uint64_t;

inline constexpr unsigned kMaxGenerators = 63;
/// Default bound on n for anything that enumerates all 2^n subsets.
inline constexpr unsigned kDefaultEnumerationCap = 16;

/// An enumeration would exceed the configured size cap.
class ResourceLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct EnumerationLimits {
  unsigned cap = kDefaultEnumerationCap;
  bool allow_large = false;
};

inline void check_enumeration(unsigned n, const EnumerationLimits& limits = {}) {
  if (n > kMaxGenerators) throw ResourceLimit("n = " + std::to_string(n) + " exceeds 63 generators");
  if (n > limits.cap && !limits.allow_large)
    throw ResourceLimit("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                        std::to_string(limits.cap) + "; pass an explicit override");
}

inline Mask full_mask(unsigned n) { return n == 0 ? 0 : (~Mask{0} >> (64 - n)); }

inline unsigned popcount(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

/// Sorted 1-based generator indices of a subset.
inline std::vector<unsigned> mask_indices(Mask m) {
  std::vector<unsigned> out;
  for (unsigned i = 0; m; ++i, m >>= 1)
    if (m & 1U) out.push_back(i + 1);
  return out;
}

/// Koszul sign of a_S * a_T for disjoint S, T: (-1)^(number of pairs
/// s in S, t in T with s > t).
inline int koszul_sign(Mask s, Mask t) {
  unsigned inversions = 0;
  for (Mask rest = t; rest; rest &= rest - 1) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(rest));
    const Mask above = j >= 63 ? 0 : (~Mask{0} << (j + 1));
    inversions += popcount(s & above);
  }
  return (inversions % 2) ? -1 : 1;
}

/// Signed exterior monomial +-a_S.
struct ExtMono {
  Mask subset = 0;
  int sign = 1;

  unsigned degree() const { return popcount(subset); }
  friend bool operator==(const ExtMono&, const ExtMono&) = default;
};

inline ExtMono generator(unsigned i) { return {Mask{1} << (i - 1), 1}; }

/// Product in Lambda; empty when the subsets overlap.
inline std::optional<ExtMono> ext_mul(const ExtMono& a, const ExtMono& b) {
  if (a.subset & b.subset) return std::nullopt;
  return ExtMono{a.subset | b.subset, a.sign * b.sign * koszul_sign(a.subset, b.subset)};
}

enum class Sector { Plus, Minus };

inline Sector operator*(Sector a, Sector b) { return a == b ? Sector::Plus : Sector::Minus; }

inline std::string_view to_string(Sector s) { return s == Sector::Plus ? "plus" : "minus"; }

inline Sector parse_sector(std::string_view s) {
  if (s == "plus") return Sector::Plus;
  if (s == "minus") return Sector::Minus;
  throw UsageError("unknown sector '" + std::string(s) + "'");
}

/// coefficient * (sector, a_S (x) c_1^l) in H(X^T) (x) H(BT); bidegree (|S|, 2l).
struct BigradedClass {
  Sector sector = Sector::Plus;
  ExtMono mono;
  unsigned c1_power = 0;
  Rat coeff = 1;

  unsigned exterior_degree() const { return mono.degree(); }
  unsigned total_degree() const { return mono.degree() + 2 * c1_power; }
  friend bool operator==(const BigradedClass&, const BigradedClass&) = default;
};

inline std::optional<BigradedClass> bigraded_mul(const BigradedClass& a, const BigradedClass& b) {
  auto mono = ext_mul(a.mono, b.mono);
  if (!mono || a.coeff == 0 || b.coeff == 0) return std::nullopt;
  return BigradedClass{a.sector * b.sector, *mono, a.c1_power + b.c1_power, a.coeff * b.coeff};
}

inline nlohmann::json to_json(const BigradedClass& c) {
  Rat coeff = c.coeff * c.mono.sign;
  return {{"sector", std::string(to_string(c.sector))},
          {"subset", mask_indices(c.mono.subset)},
          {"c1_power", c.c1_power},
          {"coeff", {numerator_string(coeff), denominator_string(coeff)}}};
}

inline BigradedClass bigraded_from_json(const nlohmann::json& j) {
  BigradedClass c;
  c.sector = parse_sector(j.at("sector").get<std::string>());
  for (unsigned i : j.at("subset").get<std::vector<unsigned>>()) {
    if (i == 0 || i > kMaxGenerators) throw UsageError("generator index out of range");
    c.mono.subset |= Mask{1} << (i - 1);
  }
  c.c1_power = j.at("c1_power").get<unsigned>();
  c.coeff = rat_from_strings(j.at("coeff").at(0).get<std::string>(), j.at("coeff").at(1).get<std::string>());
  return c;
}

/// (1+t)^n: one sector of the fixed-point set T^n x Z_2.
inline RatPoly sector_fixed_point_poincare(unsigned n) {
  return RatPoly{{0, 1}, {1, 1}}.pow(n);
}

/// P_t(X_n^T) = 2(1+t)^n.
inline RatPoly fixed_point_poincare(unsigned n) { return sector_fixed_point_poincare(n) * Rat(2); }

namespace detail {

/// Concrete Weyl-group action on a basis (component, a_S, c_1^l) of
/// H(X^T) (x) H(BT). The nontrivial element permutes components and acts on
/// each torus by inversion: a_i -> -a_i, c_1 -> -c_1.
struct WeylModel {
  std::vector<unsigned> component_image;
};

inline WeylModel weyl_model(const SurfaceTarget& target) {
  switch (target.kind) {
    case TargetKind::CentralPlus:  // both components preserved
      return {{0, 1}};
    case TargetKind::CentralMinus:  // components interchanged
      return {{1, 0}};
    case TargetKind::Generic: {
      // (X_n^r)^T x {N, S}; W swaps the poles of G/T and acts on (X_n^r)^T
      // like the central case it belongs to.
      const bool swaps = target.n % 2 == 1;
      std::vector<unsigned> image(4);
      for (unsigned c = 0; c < 2; ++c)
        for (unsigned pole = 0; pole < 2; ++pole)
          image[2 * c + pole] = 2 * (swaps ? 1 - c : c) + (1 - pole);
      return {image};
    }
  }
  return {};
}

/// Whether basis element (component, S, l) contributes an invariant: orbits of
/// size two contribute once (from their smaller member); fixed elements
/// contribute iff the action sign is +1.
inline bool contributes_invariant(const WeylModel& w, unsigned component, unsigned k, unsigned l) {
  const unsigned image = w.component_image[component];
  if (image != component) return component < image;
  return (k + l) % 2 == 0;
}

}  // namespace detail

/// Dimensions of (H(X^T) (x) H(BT))^W in degrees 0..n_max, by direct
/// enumeration of the monomial basis.
inline std::vector<BigInt> weyl_invariant_counts(const SurfaceTarget& target, unsigned n_max,
                                                 const EnumerationLimits& limits = {}) {
  check_enumeration(target.n, limits);
  const auto w = detail::weyl_model(target);
  std::vector<BigInt> counts(n_max + 1, 0);
  for (unsigned c = 0; c < w.component_image.size(); ++c)
    for (Mask s = 0; s <= full_mask(target.n); ++s) {
      const unsigned k = popcount(s);
      for (unsigned l = 0; k + 2 * l <= n_max; ++l)
        if (detail::contributes_invariant(w, c, k, l)) counts[k + 2 * l] += 1;
      if (s == full_mask(target.n)) break;
    }
  return counts;
}

/// Hilbert series of (H(X^T) (x) H(BT))^W. The action depends on l only
/// through its parity, so the c_1 direction sums to 1/(1 - t^4) per residue.
inline RatFn weyl_invariant_series(const SurfaceTarget& target, const EnumerationLimits& limits = {}) {
  check_enumeration(target.n, limits);
  const auto w = detail::weyl_model(target);
  RatPoly numerator;
  for (unsigned c = 0; c < w.component_image.size(); ++c)
    for (Mask s = 0;; ++s) {
      const unsigned k = popcount(s);
      for (unsigned r = 0; r < 2; ++r)
        if (detail::contributes_invariant(w, c, k, r)) numerator.add_term(k + 2 * r, 1);
      if (s == full_mask(target.n)) break;
    }
  return {numerator, RatPoly{{0, 1}, {4, -1}}};
}

}  // namespace repvar
