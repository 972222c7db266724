#pragma once

#include "recip/orbit_engine.hpp"

#include <string>
#include <utility>
#include <vector>

namespace recip {

/// Canonical representative of the group orbit of an unordered pair of involution fixed points.
///
/// The pair (p_i, z) determines the dihedral group <sigma_i, sigma_z>; two such groups are
/// conjugate iff their pairs lie in one orbit, so the minimum over that orbit is a complete key.
template <class Scalar>
struct PairRep {
  std::size_t cls = 0;
  PointKey<Scalar> point;

  bool operator==(const PairRep&) const = default;
  bool operator<(const PairRep& o) const { return cls < o.cls || (cls == o.cls && point < o.point); }
  std::string str() const;
};

/// A conjugacy class of infinite dihedral subgroups.
template <class Scalar>
struct DihedralClass {
  std::string key;        ///< unique per class; the R/L word (with #n when shared) for integral groups
  std::string rl;         ///< canonical unoriented R/L word of t_D; empty for non-integral groups
  Scalar cosh_length;     ///< cosh l(D) = cosh d(p_sigma, gamma p_sigmabar)
  double length = 0.0;    ///< l(D)
  Scalar trace;           ///< |tr t_D| = 2 cosh l(D)
  bool maximal = false;
  std::size_t sigma_idx = 0;
  std::size_t sigmabar_idx = 0;
  Moebius<Scalar> gamma;  ///< witness: D = <sigma, gamma sigmabar gamma^-1>
  int fiber_count = 0;    ///< preimages seen under the pair parametrization
  PairRep<Scalar> pair_rep;

  /// t_D = sigma * gamma sigmabar gamma^-1 for the stored witness.
  Moebius<Scalar> translation(const GroupSpec<Scalar>& spec) const;
  /// gamma p_sigmabar, the far endpoint of the witness segment.
  Point<Scalar> far_point(const GroupSpec<Scalar>& spec) const;
};

template <class Scalar>
struct Census {
  Radius radius;
  std::vector<DihedralClass<Scalar>> classes;  ///< sorted by (cosh_length, key)
  std::size_t raw_preimages = 0;               ///< sum over pairs of |orbit in punctured ball|
  std::vector<std::size_t> pair_counts;        ///< row-major over (sigma, sigmabar)
  double lower = 0.0;                          ///< sum of pair counts / (N(sigma) + N(sigmabar))
  bool approximate = false;                    ///< floating mode: classes deduped within tolerance
  std::size_t near_ties = 0;
  std::size_t maximal_count() const;
};

template <class Scalar>
Census<Scalar> census(const GroupSpec<Scalar>& spec, const Radius& radius, const OrbitOptions& options = {});

template <class Scalar>
Census<Scalar> census(const GroupSpec<Scalar>& spec, double L, const OrbitOptions& options = {}) {
  if (!(L > 0.0)) throw DomainError("census length must be positive");
  return census(spec, Radius::from_length(L), options);
}

/// Pair representative of the dihedral group generated by the involutions at p_cls and z.
/// `stab` lists the stabilizer of each class fixed point.
template <class Scalar>
PairRep<Scalar> pair_representative(const GroupSpec<Scalar>& spec,
                                    const std::vector<std::vector<Moebius<Scalar>>>& stab, std::size_t i,
                                    std::size_t j, const Moebius<Scalar>& gamma);

/// PSL(2,Z) pair representative of <sigma_p, sigma_z> for two points of the orbit of i.
PairRep<Rational> modular_pair_representative(const Point<Rational>& p, const Point<Rational>& z);

template <class Scalar>
bool is_maximal(const DihedralClass<Scalar>& cls) {
  return cls.maximal;
}

/// Dihedral subgroups of a maximal class up to length L: (m l0, 1) for odd m, (m l0, 2) for even m.
std::vector<std::pair<double, int>> expand_maximal(double maximal_length, double L);

template <class Scalar>
std::vector<std::pair<double, int>> expand_maximal(const DihedralClass<Scalar>& cls, double L) {
  if (!cls.maximal) throw DomainError("expand_maximal needs a maximal class");
  return expand_maximal(cls.length, L);
}

/// Number of subgroup classes of index at most k in an infinite dihedral group: floor(3k/2).
inline long subgroup_classes_up_to_index(long k) { return 3 * k / 2; }

struct CensusBounds {
  double lower = 0.0;
  std::size_t upper = 0;
  double maximal_upper = 0.0;
};

template <class Scalar>
CensusBounds census_bounds(const Census<Scalar>& c);

template <class Scalar>
CensusBounds census_bounds(const GroupSpec<Scalar>& spec, double L, const OrbitOptions& options = {});

/// Classes (or maximal classes only) with |tr t_D| <= X.
template <class Scalar>
std::size_t count_by_trace(const GroupSpec<Scalar>& spec, const Rational& X, bool primitive_only,
                           const OrbitOptions& options = {});

struct ConstantC {
  Rational square_form;     ///< (1/4) (sum 1/N)^2
  Rational double_sum_form;  ///< (1/2) sum_{s,t} 1 / (N(t) (N(s) + N(t)))
  double square_value = 0.0;
  double double_sum_value = 0.0;  ///< both forms summed in floating point
  std::optional<Rational> slope;  ///< C / |chi|, when chi is known
};

/// Both forms of the counting constant; throws Error if they disagree.
ConstantC constant_C(const std::vector<int>& normalizer_orders, const std::optional<Rational>& euler_char);

template <class Scalar>
ConstantC constant_C(const GroupSpec<Scalar>& spec);

/// Shortest dihedral length of the census (infinity when empty).
template <class Scalar>
double shortest_length(const Census<Scalar>& c);

/// Lower bound on maximal classes: n(L) - 3L / (2 eps0) n(L/2).
double maximal_lower_bound(std::size_t count_L, std::size_t count_half, double L, double eps0);

}  // namespace recip
