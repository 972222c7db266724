#pragma once

#include "recip/group_model.hpp"

#include <chrono>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace recip {

/// Ball radius carried as an exact bound on cosh d; lengths are derived only at the boundary.
struct Radius {
  Rational cosh_bound;

  /// Radius L; cosh L is rounded once to the nearest double and then used exactly.
  static Radius from_length(double L);
  /// Radius arccosh(X / 2), the largest dihedral length whose translation has trace <= X.
  static Radius from_trace(const Rational& X);

  double length() const { return length_from_cosh(cosh_bound.convert_to<double>()); }
};

/// One point of an orbit inside a ball, with a group element reaching it.
template <class Scalar>
struct OrbitPoint {
  Point<Scalar> point;
  Moebius<Scalar> witness;
  Scalar cosh_dist;

  double length() const { return length_from_cosh(to_double(cosh_dist)); }
};

enum class OrbitStrategy {
  Auto,          ///< modular fast path when available, otherwise frontier search
  Frontier,      ///< best-first search over group elements
  ReducedWords,  ///< free products of involutions: walk reduced words without element hashing
  /// integral free products of involutions: modular orbit ball filtered by a ping-pong walk
  ModularFilter,
};

std::string_view to_string(OrbitStrategy s);

/// Counters filled by an enumeration when OrbitOptions::stats is set.
struct OrbitStats {
  std::size_t explored = 0;   ///< group elements visited
  std::size_t near_ties = 0;  ///< floating-mode points within 5% of a grid-cell boundary
  double slack = 0.0;         ///< slack actually used by the search
};

struct OrbitOptions {
  OrbitStrategy strategy = OrbitStrategy::Auto;
  /// Extra search radius beyond the ball; negative selects 2x the largest generator displacement.
  double slack = -1.0;
  std::size_t max_points = 50'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  int threads = 1;
  OrbitStats* stats = nullptr;
};

/// Orbit points of p inside the (punctured) ball around q, sorted by (cosh_dist, x, y).
///
/// Distinct points are distinct entries. Throws BudgetExceeded instead of truncating.
template <class Scalar>
std::vector<OrbitPoint<Scalar>> orbit_ball(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                           const Point<Scalar>& q, const Radius& radius, bool punctured,
                                           const OrbitOptions& options = {});

template <class Scalar>
std::vector<OrbitPoint<Scalar>> orbit_ball(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                           const Point<Scalar>& q, double L, bool punctured,
                                           const OrbitOptions& options = {}) {
  return orbit_ball(spec, p, q, Radius::from_length(L), punctured, options);
}

/// PSL(2,Z) orbit of i in B(i, R) by direct enumeration of coprime bottom rows.
std::vector<OrbitPoint<Rational>> modular_orbit_of_i(const Radius& radius, bool punctured,
                                                     const OrbitOptions& options = {});

/// Order of the stabilizer of p, found among words of length <= word_bound.
template <class Scalar>
int stabilizer_order(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, int word_bound = 8);

struct DelsarteResult {
  std::size_t count = 0;
  double predicted = 0.0;
  double ratio = 0.0;
};

/// Orbit count in B(q, R) against vol(B(q,R)) / (|Stab(p)| covolume).
template <class Scalar>
DelsarteResult delsarte_ratio(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, const Point<Scalar>& q,
                              double R, const OrbitOptions& options = {});

/// (L, count) samples, strictly increasing in L.
using CountCurve = std::vector<std::pair<double, std::size_t>>;

/// Cumulative counts of `lengths` at each radius in `radii` (sorted ascending).
CountCurve count_curve(std::vector<double> lengths, const std::vector<double>& radii);

/// Least-squares slope of log(count) against L over samples with L in [lo, hi].
double critical_exponent_estimate(const CountCurve& curve, double lo, double hi);

/// True when orbit_ball can use ModularFilter for this spec and these centers.
template <class Scalar>
bool modular_filter_applies(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, const Point<Scalar>& q);

/// Default search slack: twice the largest generator displacement at p or q.
template <class Scalar>
double default_slack(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, const Point<Scalar>& q);

}  // namespace recip
