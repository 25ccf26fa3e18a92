#pragma once

// Floating-point checks of the geometry of X_n(C) inside SU(2)^(n+1): the
// product-of-squares map, its differential, square roots in SU(2), the
// S^2 x S^1 chart of X_1^r and a fibre-solving sampler.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "repvar/numeric/quat.hpp"
#include "repvar/target.hpp"

namespace repvar::numeric {

inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kRankThreshold = 1e-6;

using Rng = std::mt19937_64;

/// (g_0, ..., g_n) in SU(2)^(n+1).
struct TuplePoint {
  std::vector<UnitQuat> entries;

  unsigned n() const { return static_cast<unsigned>(entries.size()) - 1; }
};

/// g_0^2 g_1^2 ... g_n^2, multiplied left to right.
inline UnitQuat box(const TuplePoint& p) {
  UnitQuat acc;
  for (const auto& g : p.entries) acc = acc * (g * g);
  return acc;
}

inline TuplePoint conjugate_by(const UnitQuat& g, const TuplePoint& p) {
  TuplePoint out;
  for (const auto& h : p.entries) out.entries.push_back(conjugate_by(g, h));
  return out;
}

/// The Z_2 action: negate g_0.
inline TuplePoint flip_zeroth(TuplePoint p) {
  p.entries.at(0) = -p.entries.at(0);
  return p;
}

/// Differential of box in right-invariant trivialization, a 3 x 3(n+1)
/// matrix whose k-th block is Ad_(g_0^2...g_(k-1)^2) (Id + Ad_(g_k)).
inline Eigen::MatrixXd box_differential(const TuplePoint& p) {
  const auto cols = static_cast<Eigen::Index>(3 * p.entries.size());
  Eigen::MatrixXd d(3, cols);
  UnitQuat prefix;
  for (std::size_t k = 0; k < p.entries.size(); ++k) {
    const auto& g = p.entries[k];
    d.block<3, 3>(0, static_cast<Eigen::Index>(3 * k)) =
        adjoint(prefix) * (Eigen::Matrix3d::Identity() + adjoint(g));
    prefix = prefix * (g * g);
  }
  return d;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
}

inline int numerical_rank(const Eigen::MatrixXd& m, double tol = kRankThreshold) {
  const auto sv = singular_values(m);
  return static_cast<int>((sv.array() > tol).count());
}

inline int box_differential_rank(const TuplePoint& p, double tol = kRankThreshold) {
  return numerical_rank(box_differential(p), tol);
}

/// Square roots of g: two antipodal points, or (g = -1) the 2-sphere of unit
/// imaginary quaternions.
struct TwoPoints {
  UnitQuat root;  // the other root is -root
};
struct TwoSphere {
  /// The root on the sphere in direction u (a unit imaginary quaternion).
  static UnitQuat at(const Eigen::Vector3d& u) { return exp_axis(u.normalized(), M_PI / 2); }
};
using SqrtFiber = std::variant<TwoPoints, TwoSphere>;

inline SqrtFiber sqrt_fiber(const UnitQuat& g, double tol) {
  if (distance(g, UnitQuat::minus_identity()) <= tol) return TwoSphere{};
  const Eigen::Vector3d v = g.imag();
  const double s = v.norm();
  const double theta = std::atan2(s, g.w);  // g = exp(theta u), theta in [0, pi)
  if (s == 0.0) return TwoPoints{UnitQuat::identity()};
  return TwoPoints{exp_axis(v / s, theta / 2)};
}

/// Distance from the maximal torus, maximised over the entries: the size of
/// the j and k components.
inline double fixed_point_residual(const TuplePoint& p) {
  double r = 0;
  for (const auto& g : p.entries) r = std::max(r, std::hypot(g.y, g.z));
  return r;
}

/// F(X, t) = (exp(tX), exp((pi/2 - t) X)): the chart S^2 x S^1 -> X_1^r.
inline TuplePoint x1r_chart(const Eigen::Vector3d& axis, double t) {
  return {{exp_axis(axis, t), exp_axis(axis, M_PI / 2 - t)}};
}

/// Outcome of a numeric check, as emitted by the command-line tool.
struct NumericReport {
  std::string check_name;
  std::size_t samples = 0;
  double max_residual = 0;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();
};

inline nlohmann::json to_json(const NumericReport& r) {
  return {{"check_name", r.check_name},
          {"samples", r.samples},
          {"max_residual", r.max_residual},
          {"pass", r.pass},
          {"details", r.details}};
}

namespace detail {

inline double tuple_distance(const TuplePoint& a, const TuplePoint& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const double d = distance(a.entries[i], b.entries[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

inline TuplePoint random_tuple(unsigned n, Rng& rng) {
  TuplePoint p;
  for (unsigned i = 0; i <= n; ++i) p.entries.push_back(haar_random(rng));
  return p;
}

}  // namespace detail

/// Rank of the differential is 3 at random points away from the singular
/// value (-1)^(n+1), and drops at (J, ..., J) with J^2 = -1. Also reports
/// the gap between the smallest singular value seen at regular points and
/// the largest third singular value at the singular example.
inline NumericReport singular_rank_check(unsigned n_max, std::size_t samples, std::uint64_t seed) {
  NumericReport r;
  r.check_name = "singular-rank";
  Rng rng(seed);
  double min_regular_sv = INFINITY;
  std::size_t regular_points = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const unsigned n = static_cast<unsigned>(s % (n_max + 1));
    const auto p = detail::random_tuple(n, rng);
    const UnitQuat singular_value = (n % 2 == 0) ? UnitQuat::minus_identity() : UnitQuat::identity();
    if (distance(box(p), singular_value) < 1e-8) continue;
    ++regular_points;
    const auto sv = singular_values(box_differential(p));
    min_regular_sv = std::min(min_regular_sv, sv(2));
    if (sv(2) <= kRankThreshold) r.pass = false;
  }
  double max_singular_sv = 0;
  for (unsigned n = 0; n <= n_max; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      const Eigen::Vector3d axis = random_unit_vector(rng);
      const UnitQuat j = exp_axis(axis, M_PI / 2);
      TuplePoint p{std::vector<UnitQuat>(n + 1, j)};
      const auto sv = singular_values(box_differential(p));
      max_singular_sv = std::max(max_singular_sv, sv(2));
      if (sv(2) > kRankThreshold) r.pass = false;
    }
  }
  const double gap = min_regular_sv / std::max(max_singular_sv, 1e-300);
  if (gap < 1e4) r.pass = false;
  r.samples = regular_points;
  r.max_residual = max_singular_sv;
  r.details = {{"n_max", n_max},
               {"min_regular_singular_value", min_regular_sv},
               {"max_singular_point_singular_value", max_singular_sv},
               {"gap", gap}};
  return r;
}

/// The chart F lands on X_1^r, is equivariant under conjugation, and is
/// injective with a bi-Lipschitz lower bound on sampled pairs.
inline NumericReport x1r_chart_check(std::size_t samples, std::uint64_t seed) {
  NumericReport r;
  r.check_name = "x1r-chart";
  r.samples = samples;
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  std::vector<std::pair<Eigen::Vector3d, double>> inputs;
  std::vector<TuplePoint> outputs;
  double relation = 0, equivariance = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Eigen::Vector3d axis = random_unit_vector(rng);
    const double t = angle(rng);
    const auto p = x1r_chart(axis, t);
    relation = std::max(relation, distance(box(p), UnitQuat::minus_identity()));
    const UnitQuat g = haar_random(rng);
    const Eigen::Vector3d rotated = adjoint(g) * axis;
    equivariance = std::max(equivariance, detail::tuple_distance(x1r_chart(rotated, t), conjugate_by(g, p)));
    inputs.emplace_back(axis, t);
    outputs.push_back(p);
  }
  // Output distance over input distance on S^2 x S^1 (chordal metrics).
  const std::size_t pairs_from = std::min<std::size_t>(samples, 1500);
  double min_ratio = INFINITY;
  for (std::size_t i = 0; i < pairs_from; ++i)
    for (std::size_t j = i + 1; j < pairs_from; ++j) {
      const double dx = (inputs[i].first - inputs[j].first).squaredNorm();
      const double dt = 2 - 2 * std::cos(inputs[i].second - inputs[j].second);
      const double din = std::sqrt(dx + dt);
      if (din == 0) continue;
      min_ratio = std::min(min_ratio, detail::tuple_distance(outputs[i], outputs[j]) / din);
    }
  r.max_residual = std::max(relation, equivariance);
  r.pass = relation <= kResidualTolerance && equivariance <= kResidualTolerance && min_ratio >= 0.5;
  r.details = {{"relation_residual", relation},
               {"equivariance_residual", equivariance},
               {"min_distance_ratio", min_ratio}};
  return r;
}

/// Random g, including points within 1e-6 of -1, square back within tolerance.
inline NumericReport sqrt_fiber_check(std::size_t samples, std::uint64_t seed, double tol = 1e-12) {
  NumericReport r;
  r.check_name = "sqrt-fiber";
  r.samples = samples;
  Rng rng(seed);
  double worst = 0;
  std::size_t spheres = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    UnitQuat g = haar_random(rng);
    if (s % 10 == 1) {
      // near the pole -1
      const Eigen::Vector3d u = random_unit_vector(rng);
      g = exp_axis(u, M_PI - 1e-6 * static_cast<double>(s % 7));
    }
    const auto fiber = sqrt_fiber(g, tol);
    if (const auto* pts = std::get_if<TwoPoints>(&fiber)) {
      worst = std::max(worst, distance(pts->root * pts->root, g));
      const UnitQuat other = -pts->root;
      worst = std::max(worst, distance(other * other, g));
    } else {
      ++spheres;
      const UnitQuat h = TwoSphere::at(random_unit_vector(rng));
      worst = std::max(worst, distance(h * h, g));
    }
  }
  r.max_residual = worst;
  r.pass = worst <= 1e-9;
  r.details = {{"sphere_fibres", spheres}};
  return r;
}

/// box(g p g^-1) = g box(p) g^-1 and box(flip(p)) = box(p).
inline NumericReport box_equivariance_check(unsigned n_max, std::size_t samples, std::uint64_t seed) {
  NumericReport r;
  r.check_name = "box-equivariance";
  r.samples = samples;
  Rng rng(seed);
  double worst = 0;
  bool flip_exact = true;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto p = detail::random_tuple(static_cast<unsigned>(s % (n_max + 1)), rng);
    const UnitQuat g = haar_random(rng);
    worst = std::max(worst, distance(box(conjugate_by(g, p)), conjugate_by(g, box(p))));
    if (!(box(flip_zeroth(p)) == box(p))) flip_exact = false;
  }
  r.max_residual = worst;
  r.pass = worst <= 1e-12 && flip_exact;
  r.details = {{"flip_exact", flip_exact}};
  return r;
}

struct VarietySample {
  std::vector<TuplePoint> points;
  std::map<unsigned, std::size_t> dimension_histogram;
  double max_residual = 0;
};

/// Fixed representative of a generic conjugacy class: exp((pi/3) i).
inline UnitQuat generic_class_representative() { return exp_axis({1, 0, 0}, M_PI / 3); }

/// Samples X_n(C) by drawing g_1..g_n from Haar measure and solving
/// g_0^2 = c (g_1^2...g_n^2)^-1 through sqrt_fiber; estimates the local
/// dimension from the rank of the differential composed with the normal
/// projection of C at c.
inline VarietySample sample_variety(const SurfaceTarget& target, std::size_t count, std::uint64_t seed,
                                    double tol = 1e-12) {
  VarietySample out;
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  const UnitQuat c = target.is_central()
                         ? (target.central_sign() > 0 ? UnitQuat::identity() : UnitQuat::minus_identity())
                         : generic_class_representative();
  for (std::size_t s = 0; s < count; ++s) {
    TuplePoint p;
    p.entries.resize(target.n + 1);
    UnitQuat rest;
    for (unsigned i = 1; i <= target.n; ++i) {
      p.entries[i] = haar_random(rng);
      rest = rest * (p.entries[i] * p.entries[i]);
    }
    const UnitQuat g0_squared = c * rest.inverse();
    const auto fiber = sqrt_fiber(g0_squared, tol);
    if (const auto* pts = std::get_if<TwoPoints>(&fiber)) {
      p.entries[0] = coin(rng) ? pts->root : -pts->root;
    } else {
      p.entries[0] = TwoSphere::at(random_unit_vector(rng));
    }
    out.max_residual = std::max(out.max_residual, distance(box(p), c));

    Eigen::MatrixXd d = box_differential(p);
    if (!target.is_central()) d = Eigen::MatrixXd(c.imag().normalized().transpose() * d);
    const unsigned dim = 3 * (target.n + 1) - static_cast<unsigned>(numerical_rank(d));
    ++out.dimension_histogram[dim];
    out.points.push_back(std::move(p));
  }
  return out;
}

inline NumericReport sample_dimension_check(const SurfaceTarget& target, std::size_t count, std::uint64_t seed) {
  NumericReport r;
  r.check_name = "sample-dimension";
  r.samples = count;
  const auto sample = sample_variety(target, count, seed);
  r.max_residual = sample.max_residual;
  unsigned expected = 3 * target.n;
  if (!target.is_central()) expected += 2;
  if (target.is_central() && target.n == 0) expected = target.variety() == Variety::Regular ? 0 : 2;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [dim, k] : sample.dimension_histogram) hist[std::to_string(dim)] = k;
  // Singular varieties have a measure-zero singular locus; random samples
  // should all be smooth points.
  r.pass = sample.max_residual <= kResidualTolerance && sample.dimension_histogram.size() == 1 &&
           sample.dimension_histogram.begin()->first == expected;
  r.details = {{"target", describe(target)}, {"expected_dimension", expected}, {"dimension_histogram", hist}};
  return r;
}

}  // namespace repvar::numeric
