#include "recip/census.hpp"

#include "recip/fundamental_domain.hpp"
#include "recip/rl_word.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace recip {

template <class Scalar>
std::string PairRep<Scalar>::str() const {
  std::ostringstream os;
  if constexpr (is_exact_v<Scalar>) {
    os << cls << ':' << point.x.str() << ',' << point.y.str();
  } else {
    os << cls << ':' << point.x << ',' << point.y;
  }
  return os.str();
}

template <class Scalar>
Moebius<Scalar> DihedralClass<Scalar>::translation(const GroupSpec<Scalar>& spec) const {
  const auto& s = spec.involution_classes.at(sigma_idx).rep;
  const auto& sb = spec.involution_classes.at(sigmabar_idx).rep;
  return s * conjugate(gamma, sb);
}

template <class Scalar>
Point<Scalar> DihedralClass<Scalar>::far_point(const GroupSpec<Scalar>& spec) const {
  return apply(gamma, spec.involution_classes.at(sigmabar_idx).fixed_point);
}

template <class Scalar>
std::size_t Census<Scalar>::maximal_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const auto& c) { return c.maximal; }));
}

template <class Scalar>
PairRep<Scalar> pair_representative(const GroupSpec<Scalar>& spec,
                                    const std::vector<std::vector<Moebius<Scalar>>>& stab, std::size_t i,
                                    std::size_t j, const Moebius<Scalar>& gamma) {
  const Point<Scalar> z = apply(gamma, spec.involution_classes[j].fixed_point);
  const Point<Scalar> back = apply(invert(gamma), spec.involution_classes[i].fixed_point);
  PairRep<Scalar> best{i, point_key(z)};
  for (const auto& n : stab[i]) best = std::min(best, PairRep<Scalar>{i, point_key(apply(n, z))});
  for (const auto& n : stab[j]) best = std::min(best, PairRep<Scalar>{j, point_key(apply(n, back))});
  return best;
}

PairRep<Rational> modular_pair_representative(const Point<Rational>& p, const Point<Rational>& z) {
  const Moebius<Rational> S = modular_S();
  const auto rp = reduce_fd(p);
  const auto rz = reduce_fd(z);
  const Point<Rational> i(0, 1);
  if (!(rp.point == i) || !(rz.point == i)) throw DomainError("points are not in the modular orbit of i");
  const Point<Rational> a = apply(rp.gamma, z);
  const Point<Rational> b = apply(rz.gamma, p);
  PairRep<Rational> best{0, point_key(a)};
  for (const auto& w : {apply(S, a), b, apply(S, b)}) best = std::min(best, PairRep<Rational>{0, point_key(w)});
  return best;
}

namespace {

// Direction of the geodesic ray from c through z; points on one ray share the key.
template <class Scalar>
struct RayKey {
  std::int64_t side;
  Scalar center;
  bool operator<(const RayKey& o) const { return side < o.side || (side == o.side && center < o.center); }
};

RayKey<Rational> ray_key(const Point<Rational>& c, const Point<Rational>& z) {
  // Affine frame with c at i; the geodesic through i and (X, Y) is vertical or a circle centered
  // on the real axis at (X^2 + Y^2 - 1) / 2X, left by the ray on the side of sign(X).
  const Rational X = (z.x() - c.x()) / c.y();
  const Rational Y = z.y() / c.y();
  if (X.sign() == 0) return {Y > 1 ? 2 : -2, Rational(0)};
  return {X.sign(), (X * X + Y * Y - 1) / (2 * X)};
}

RayKey<double> ray_key(const Point<double>& c, const Point<double>& z) {
  return {grid_index(GeodesicArc(c, z).at(0.0).angle), 0.0};
}

}  // namespace

template <class Scalar>
Census<Scalar> census(const GroupSpec<Scalar>& spec, const Radius& radius, const OrbitOptions& options) {
  using T = ScalarTraits<Scalar>;
  const std::size_t n = spec.involution_classes.size();
  if (n == 0) throw ValidationError("involutions", "at least one involution class is required");
  Census<Scalar> out;
  out.radius = radius;
  out.approximate = !is_exact_v<Scalar>;

  std::vector<std::vector<Moebius<Scalar>>> stab(n);
  for (std::size_t k = 0; k < n; ++k) stab[k] = normalizer_elements(spec, k);

  OrbitStats stats;
  OrbitOptions orbit_options = options;
  orbit_options.stats = &stats;
  std::vector<std::vector<OrbitPoint<Scalar>>> orbits(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      orbits[i * n + j] = orbit_ball(spec, spec.involution_classes[j].fixed_point,
                                     spec.involution_classes[i].fixed_point, radius, true, orbit_options);
    }
  }
  if (options.stats) {
    options.stats->explored += stats.explored;
    options.stats->near_ties += stats.near_ties;
    options.stats->slack = stats.slack;
  }
  out.near_ties = stats.near_ties;

  // Nearest involution fixed point along every ray leaving p_i.
  std::vector<std::map<RayKey<Scalar>, Scalar>> nearest(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = spec.involution_classes[i].fixed_point;
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& op : orbits[i * n + j]) {
        auto [it, fresh] = nearest[i].emplace(ray_key(c, op.point), op.cosh_dist);
        if (!fresh && op.cosh_dist < it->second) it->second = op.cosh_dist;
      }
    }
  }

  std::map<PairRep<Scalar>, std::size_t> index;
  out.pair_counts.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = spec.involution_classes[i].fixed_point;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& orbit = orbits[i * n + j];
      out.pair_counts[i * n + j] = orbit.size();
      out.raw_preimages += orbit.size();
      out.lower += static_cast<double>(orbit.size()) /
                   (spec.involution_classes[i].normalizer_order + spec.involution_classes[j].normalizer_order);
      for (const auto& op : orbit) {
        const PairRep<Scalar> rep = pair_representative(spec, stab, i, j, op.witness);
        auto [it, fresh] = index.emplace(rep, out.classes.size());
        if (!fresh) {
          ++out.classes[it->second].fiber_count;
          continue;
        }
        DihedralClass<Scalar> cls;
        cls.cosh_length = op.cosh_dist;
        cls.length = op.length();
        cls.trace = Scalar(2) * op.cosh_dist;
        cls.sigma_idx = i;
        cls.sigmabar_idx = j;
        cls.gamma = op.witness;
        cls.fiber_count = 1;
        cls.pair_rep = rep;
        const Scalar& closest = nearest[i].at(ray_key(c, op.point));
        cls.maximal = !T::less(closest, op.cosh_dist);
        out.classes.push_back(std::move(cls));
      }
    }
  }

  bool integral = false;
  if constexpr (is_exact_v<Scalar>) integral = is_integral(spec);
  if (integral) {
    if constexpr (is_exact_v<Scalar>) {
      std::map<std::string, std::vector<std::size_t>> by_word;
      for (std::size_t k = 0; k < out.classes.size(); ++k) {
        auto& cls = out.classes[k];
        cls.rl = canonical_unoriented(rl_word(cls.translation(spec)));
        by_word[cls.rl].push_back(k);
      }
      for (auto& [word, members] : by_word) {
        if (members.size() == 1) {
          out.classes[members[0]].key = word;
          continue;
        }
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return out.classes[a].pair_rep < out.classes[b].pair_rep; });
        for (std::size_t r = 0; r < members.size(); ++r) out.classes[members[r]].key = word + "#" + std::to_string(r);
      }
    }
  } else {
    for (auto& cls : out.classes) cls.key = cls.pair_rep.str();
  }

  std::sort(out.classes.begin(), out.classes.end(), [](const auto& a, const auto& b) {
    if (a.cosh_length != b.cosh_length) return a.cosh_length < b.cosh_length;
    return a.key < b.key;
  });
  return out;
}

std::vector<std::pair<double, int>> expand_maximal(double maximal_length, double L) {
  if (!(maximal_length > 0.0)) throw DomainError("maximal length must be positive");
  std::vector<std::pair<double, int>> out;
  // tolerate rounding in m * l0 against L
  for (long m = 1; m * maximal_length <= L * (1.0 + 1e-12) + 1e-12; ++m)
    out.emplace_back(m * maximal_length, m % 2 == 1 ? 1 : 2);
  return out;
}

template <class Scalar>
CensusBounds census_bounds(const Census<Scalar>& c) {
  return {c.lower, c.raw_preimages, c.lower};
}

template <class Scalar>
CensusBounds census_bounds(const GroupSpec<Scalar>& spec, double L, const OrbitOptions& options) {
  return census_bounds(census(spec, L, options));
}

template <class Scalar>
std::size_t count_by_trace(const GroupSpec<Scalar>& spec, const Rational& X, bool primitive_only,
                           const OrbitOptions& options) {
  if (!(X > 2)) throw DomainError("trace bound must exceed 2");
  const auto c = census(spec, Radius::from_trace(X), options);
  std::size_t count = 0;
  for (const auto& cls : c.classes) {
    if (primitive_only && !cls.maximal) continue;
    bool within = false;
    if constexpr (is_exact_v<Scalar>) {
      within = cls.trace <= X;
    } else {
      within = ScalarTraits<double>::less_equal(cls.trace, X.convert_to<double>());
    }
    if (within) ++count;
  }
  return count;
}

ConstantC constant_C(const std::vector<int>& normalizer_orders, const std::optional<Rational>& euler_char) {
  if (normalizer_orders.empty()) throw DomainError("constant needs at least one involution class");
  for (int N : normalizer_orders)
    if (N <= 0) throw DomainError("normalizer orders must be positive");
  ConstantC out;
  Rational inverse_sum = 0, double_sum = 0;
  double inverse_sum_f = 0.0, double_sum_f = 0.0;
  for (int s : normalizer_orders) {
    inverse_sum += Rational(1, s);
    inverse_sum_f += 1.0 / s;
    for (int t : normalizer_orders) {
      double_sum += Rational(1, t * (s + t));
      double_sum_f += 1.0 / (static_cast<double>(t) * (s + t));
    }
  }
  out.square_form = inverse_sum * inverse_sum / 4;
  out.double_sum_form = double_sum / 2;
  out.square_value = inverse_sum_f * inverse_sum_f / 4.0;
  out.double_sum_value = double_sum_f / 2.0;
  if (out.square_form != out.double_sum_form || std::abs(out.square_value - out.double_sum_value) > 1e-12)
    throw Error("the two forms of the counting constant disagree");
  if (euler_char) {
    if (euler_char->sign() >= 0) throw DomainError("Euler characteristic must be negative");
    out.slope = out.square_form / (-*euler_char);
  }
  return out;
}

template <class Scalar>
ConstantC constant_C(const GroupSpec<Scalar>& spec) {
  std::vector<int> orders;
  for (const auto& c : spec.involution_classes) orders.push_back(c.normalizer_order);
  return constant_C(orders, spec.euler_char);
}

template <class Scalar>
double shortest_length(const Census<Scalar>& c) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cls : c.classes) best = std::min(best, cls.length);
  return best;
}

double maximal_lower_bound(std::size_t count_L, std::size_t count_half, double L, double eps0) {
  if (!(eps0 > 0.0)) throw DomainError("shortest length must be positive");
  return static_cast<double>(count_L) - 3.0 * L / (2.0 * eps0) * static_cast<double>(count_half);
}

#define RECIP_INSTANTIATE(S)                                                                               \
  template struct PairRep<S>;                                                                             \
  template struct DihedralClass<S>;                                                                       \
  template struct Census<S>;                                                                              \
  template PairRep<S> pair_representative(const GroupSpec<S>&, const std::vector<std::vector<Moebius<S>>>&, \
                                          std::size_t, std::size_t, const Moebius<S>&);                   \
  template Census<S> census(const GroupSpec<S>&, const Radius&, const OrbitOptions&);                     \
  template CensusBounds census_bounds(const Census<S>&);                                                  \
  template CensusBounds census_bounds(const GroupSpec<S>&, double, const OrbitOptions&);                  \
  template std::size_t count_by_trace(const GroupSpec<S>&, const Rational&, bool, const OrbitOptions&);   \
  template ConstantC constant_C(const GroupSpec<S>&);                                                     \
  template double shortest_length(const Census<S>&);

RECIP_INSTANTIATE(Rational)
RECIP_INSTANTIATE(double)

}  // namespace recip
