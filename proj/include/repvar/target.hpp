#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace repvar {

/// Bad request: invalid target/command combination, out-of-range argument.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem-level cross-check failed. Never expected; indicates a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The two central fibres of the squaring-product map: the smooth fibre over
/// (-1)^n and the singular fibre over (-1)^(n+1).
enum class Variety { Regular, Singular };

inline std::string_view to_string(Variety v) {
  return v == Variety::Regular ? "regular" : "singular";
}

/// Which conjugacy class the product of squares is constrained to.
enum class TargetKind { CentralPlus, CentralMinus, Generic };

inline std::string_view to_string(TargetKind k) {
  switch (k) {
    case TargetKind::CentralPlus: return "plus";
    case TargetKind::CentralMinus: return "minus";
    case TargetKind::Generic: return "generic";
  }
  return "?";
}

inline TargetKind parse_target_kind(std::string_view s) {
  if (s == "plus") return TargetKind::CentralPlus;
  if (s == "minus") return TargetKind::CentralMinus;
  if (s == "generic") return TargetKind::Generic;
  throw UsageError("unknown target '" + std::string(s) + "' (expected plus, minus or generic)");
}

/// The variety X_n(C) of tuples (g_0..g_n) in SU(2)^(n+1) whose product of
/// squares lies in C. This is the only place where (C, n) is translated to
/// regular/singular.
struct SurfaceTarget {
  TargetKind kind = TargetKind::CentralPlus;
  unsigned n = 0;

  bool is_central() const { return kind != TargetKind::Generic; }

  /// +1 or -1 for central targets.
  int central_sign() const {
    if (!is_central()) throw UsageError("generic target has no central value");
    return kind == TargetKind::CentralPlus ? 1 : -1;
  }

  /// Regular iff the central value equals (-1)^n. Generic targets are
  /// G/T x X_n^r, so they report the regular factor.
  Variety variety() const {
    if (!is_central()) return Variety::Regular;
    const int regular_sign = (n % 2 == 0) ? 1 : -1;
    return central_sign() == regular_sign ? Variety::Regular : Variety::Singular;
  }

  friend bool operator==(const SurfaceTarget&, const SurfaceTarget&) = default;
};

/// The central target realizing the given variety for this n.
inline SurfaceTarget central_target(Variety v, unsigned n) {
  const bool plus_is_regular = n % 2 == 0;
  const bool want_plus = (v == Variety::Regular) == plus_is_regular;
  return {want_plus ? TargetKind::CentralPlus : TargetKind::CentralMinus, n};
}

inline std::string describe(const SurfaceTarget& s) {
  std::string out = "X_" + std::to_string(s.n) + "(" + std::string(to_string(s.kind)) + ")";
  if (s.is_central()) out += " = X_" + std::to_string(s.n) + "^" + (s.variety() == Variety::Regular ? "r" : "s");
  return out;
}

}  // namespace repvar
