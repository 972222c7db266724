#include "recip/orbit_engine.hpp"

#include "recip/fundamental_domain.hpp"
#include "recip/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace recip {

using i128 = __int128;

std::string_view to_string(OrbitStrategy s) {
  switch (s) {
    case OrbitStrategy::Auto: return "auto";
    case OrbitStrategy::Frontier: return "frontier";
    case OrbitStrategy::ReducedWords: return "reduced-words";
    case OrbitStrategy::ModularFilter: return "modular-filter";
  }
  return "?";
}

Radius Radius::from_length(double L) {
  if (!(L >= 0.0)) throw DomainError("radius must be nonnegative");
  const double c = std::cosh(L);
  if (!std::isfinite(c)) throw DomainError("radius too large");
  return {Rational(c)};
}

Radius Radius::from_trace(const Rational& X) {
  if (X < 2) throw DomainError("trace bound must be at least 2");
  return {X / 2};
}

namespace {

void check_deadline(const OrbitOptions& options) {
  if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
    throw BudgetExceeded("time budget exceeded during orbit enumeration");
}

[[noreturn]] void point_budget(std::size_t cap) {
  throw BudgetExceeded("orbit enumeration exceeded the budget of " + std::to_string(cap) + " points");
}

// s*x + t*y = gcd(x, y) for x, y >= 0
std::int64_t ext_gcd(std::int64_t x, std::int64_t y, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    const std::int64_t q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  s = s0;
  t = t0;
  return x;
}

i128 isqrt(i128 n) {
  if (n <= 0) return 0;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

struct RawPoint {
  std::int64_t a, b, c, d;
  std::int64_t norm;  // a^2 + b^2 + c^2 + d^2 = 2 cosh d(i, g i)
  std::int64_t s() const { return c * c + d * d; }
  std::int64_t xnum() const { return a * c + b * d; }
};

bool raw_less(const RawPoint& u, const RawPoint& v) {
  if (u.norm != v.norm) return u.norm < v.norm;
  const i128 lhs = static_cast<i128>(u.xnum()) * v.s();
  const i128 rhs = static_cast<i128>(v.xnum()) * u.s();
  if (lhs != rhs) return lhs < rhs;
  return u.s() > v.s();  // y = 1/s
}

template <class Scalar>
bool within(const Scalar& cd, const Radius& radius) {
  if constexpr (is_exact_v<Scalar>) {
    return cd <= radius.cosh_bound;
  } else {
    return ScalarTraits<double>::less_equal(cd, radius.cosh_bound.convert_to<double>());
  }
}

template <class Scalar>
bool is_center(const Scalar& cd) {
  return ScalarTraits<Scalar>::equal(cd, Scalar(1));
}

template <class Scalar>
void sort_points(std::vector<OrbitPoint<Scalar>>& pts) {
  std::sort(pts.begin(), pts.end(), [](const OrbitPoint<Scalar>& u, const OrbitPoint<Scalar>& v) {
    if (u.cosh_dist != v.cosh_dist) return u.cosh_dist < v.cosh_dist;
    if (u.point.x() != v.point.x()) return u.point.x() < v.point.x();
    return u.point.y() < v.point.y();
  });
}

template <class Scalar>
void note_ties(std::vector<OrbitPoint<Scalar>>& pts, const OrbitOptions& options) {
  if (!options.stats) return;
  if constexpr (!is_exact_v<Scalar>) {
    std::size_t ties = 0;
    for (const auto& op : pts)
      if (grid_margin(op.point.x()) < 0.05 || grid_margin(op.point.y()) < 0.05) ++ties;
    options.stats->near_ties += ties;
  }
}

// Best-first search over group elements, ordered by the displacement of p from q.
template <class Scalar>
std::vector<OrbitPoint<Scalar>> frontier_search(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                                const Point<Scalar>& q, const Radius& radius, bool punctured,
                                                const OrbitOptions& options, double slack) {
  const auto gens = spec.symmetric_generators();
  const double prune = std::cosh(radius.length() + slack) * (1.0 + 1e-9);
  std::vector<Moebius<Scalar>> elements{Moebius<Scalar>::identity()};
  std::unordered_set<ElementKey<Scalar>, ElementKeyHash> seen{element_key(elements[0])};
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  open.emplace(to_double(cosh_dist(q, p)), 0);

  std::vector<OrbitPoint<Scalar>> out;
  std::unordered_set<PointKey<Scalar>, PointKeyHash> points;
  std::size_t steps = 0;
  while (!open.empty()) {
    const std::size_t idx = open.top().second;
    open.pop();
    if ((++steps & 1023) == 0) check_deadline(options);
    const Moebius<Scalar> g = elements[idx];
    const Point<Scalar> z = apply(g, p);
    Scalar cd = cosh_dist(q, z);
    if (within(cd, radius) && !(punctured && is_center(cd)) && points.insert(point_key(z)).second)
      out.push_back({z, g, std::move(cd)});
    for (const auto& s : gens) {
      Moebius<Scalar> h = g * s;
      if (!seen.insert(element_key(h)).second) continue;
      const double hd = to_double(cosh_dist(q, apply(h, p)));
      if (hd > prune) continue;
      if (elements.size() >= options.max_points) point_budget(options.max_points);
      elements.push_back(std::move(h));
      open.emplace(hd, elements.size() - 1);
    }
  }
  if (options.stats) options.stats->explored += elements.size();
  return out;
}

// Depth-first walk over reduced words s1 s2 ... sn (s_i != s_{i+1}) in involution generators.
template <class Scalar>
std::vector<OrbitPoint<Scalar>> reduced_word_search(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                                    const Point<Scalar>& q, const Radius& radius,
                                                    bool punctured, const OrbitOptions& options, double slack) {
  for (const auto& g : spec.generators)
    if (!is_involution(g)) throw DomainError("reduced-word search needs involution generators");
  const auto& gens = spec.generators;
  const double prune = std::cosh(radius.length() + slack) * (1.0 + 1e-9);

  struct Node {
    Moebius<Scalar> g;
    int last;
  };
  std::vector<Node> stack{{Moebius<Scalar>::identity(), -1}};
  std::vector<OrbitPoint<Scalar>> out;
  std::unordered_set<PointKey<Scalar>, PointKeyHash> points;
  std::size_t visited = 0;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++visited > options.max_points) point_budget(options.max_points);
    if ((visited & 1023) == 0) check_deadline(options);
    const Point<Scalar> z = apply(node.g, p);
    Scalar cd = cosh_dist(q, z);
    if (within(cd, radius) && !(punctured && is_center(cd)) && points.insert(point_key(z)).second)
      out.push_back({z, node.g, std::move(cd)});
    for (int i = static_cast<int>(gens.size()) - 1; i >= 0; --i) {
      if (i == node.last) continue;
      Moebius<Scalar> h = node.g * gens[i];
      if (to_double(cosh_dist(q, apply(h, p))) > prune) continue;
      stack.push_back({std::move(h), i});
    }
  }
  if (options.stats) options.stats->explored += visited;
  return out;
}

bool in_modular_orbit_of_i(const Point<Rational>& p) {
  const auto r = reduce_fd(p);
  return r.point.x() == 0 && r.point.y() == 1;
}

struct Mat {
  std::int64_t a, b, c, d;
};

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw DomainError("integer overflow in orbit filter");
  return static_cast<std::int64_t>(v);
}

Mat mul(const Mat& x, const Mat& y) {
  return {narrow(static_cast<i128>(x.a) * y.a + static_cast<i128>(x.b) * y.c),
          narrow(static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.d),
          narrow(static_cast<i128>(x.c) * y.a + static_cast<i128>(x.d) * y.c),
          narrow(static_cast<i128>(x.c) * y.b + static_cast<i128>(x.d) * y.d)};
}

Mat inv(const Mat& x) { return {x.d, -x.b, -x.c, x.a}; }

Mat to_mat(const Moebius<Rational>& g) {
  return {to_int64(g.a()), to_int64(g.b()), to_int64(g.c()), to_int64(g.d())};
}

Moebius<Rational> to_moebius(const Mat& m) { return Moebius<Rational>(m.a, m.b, m.c, m.d); }

// Position of M i relative to the isometric circle |c z - a| = 1 of the involution s: -1 inside, 0 on, 1 outside.
int circle_side(const Mat& s, const Mat& m) {
  const i128 u = static_cast<i128>(s.c) * m.a - static_cast<i128>(s.a) * m.c;
  const i128 v = static_cast<i128>(s.c) * m.b - static_cast<i128>(s.a) * m.d;
  const i128 lhs = u * u + v * v;
  const i128 rhs = static_cast<i128>(m.c) * m.c + static_cast<i128>(m.d) * m.d;
  return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

bool same_point(const Mat& x, const Mat& y) {
  const i128 sx = static_cast<i128>(x.c) * x.c + static_cast<i128>(x.d) * x.d;
  const i128 sy = static_cast<i128>(y.c) * y.c + static_cast<i128>(y.d) * y.d;
  if (sx != sy) return false;
  return static_cast<i128>(x.a) * x.c + static_cast<i128>(x.b) * x.d ==
         static_cast<i128>(y.a) * y.c + static_cast<i128>(y.b) * y.d;
}

// Ping-pong walk: apply a generator while the point lies strictly inside its isometric circle.
// Returns the word W with W M i in the closed exterior of every circle.
Mat pingpong_walk(const std::vector<Mat>& gens, Mat& m) {
  Mat w{1, 0, 0, 1};
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& s : gens) {
      if (circle_side(s, m) < 0) {
        m = mul(s, m);
        w = mul(s, w);
        moved = true;
        break;
      }
    }
  }
  return w;
}

std::vector<RawPoint> modular_raw(const Radius& radius, bool punctured, const OrbitOptions& options);

// Modular orbit ball around q filtered down to the orbit of p under a ping-pong group.
std::vector<OrbitPoint<Rational>> modular_filter(const GroupSpec<Rational>& spec, const Point<Rational>& p,
                                                 const Point<Rational>& q, const Radius& radius,
                                                 bool punctured, const OrbitOptions& options) {
  const Mat to_q = to_mat(invert(reduce_fd(q).gamma));
  std::vector<Mat> gens;
  for (const auto& g : spec.generators) gens.push_back(to_mat(g));
  Mat home = to_mat(invert(reduce_fd(p).gamma));  // home i = p
  const Mat home_word = pingpong_walk(gens, home);

  const auto ball = modular_raw(radius, punctured, options);
  constexpr std::size_t kChunk = 4096;
  std::vector<std::vector<OrbitPoint<Rational>>> slots(ball.size() / kChunk + 1);
  parallel_for(slots.size(), options.threads, [&](std::size_t slot) {
    const std::size_t lo = slot * kChunk, hi = std::min(ball.size(), lo + kChunk);
    for (std::size_t k = lo; k < hi; ++k) {
      const RawPoint& e = ball[k];
      const Mat z = mul(to_q, Mat{e.a, e.b, e.c, e.d});
      Mat m = z;
      const Mat word = pingpong_walk(gens, m);
      std::optional<Mat> hop;
      if (same_point(m, home)) {
        hop = Mat{1, 0, 0, 1};
      } else {
        for (const auto& s : gens) {
          if (circle_side(s, m) == 0 && same_point(mul(s, m), home)) {
            hop = s;
            break;
          }
        }
      }
      if (!hop) continue;
      // word z i = hop home_word p
      const Mat witness = mul(mul(inv(word), *hop), home_word);
      const i128 s2 = static_cast<i128>(z.c) * z.c + static_cast<i128>(z.d) * z.d;
      const i128 xn = static_cast<i128>(z.a) * z.c + static_cast<i128>(z.b) * z.d;
      slots[slot].push_back({Point<Rational>(Rational(narrow(xn), narrow(s2)), Rational(1, narrow(s2))),
                             to_moebius(witness), Rational(e.norm, 2)});
    }
  });
  std::vector<OrbitPoint<Rational>> out;
  for (auto& s : slots) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

std::vector<RawPoint> modular_raw(const Radius& radius, bool punctured, const OrbitOptions& options) {
  // Norm bound a^2+b^2+c^2+d^2 <= 2 cosh R, integral on the left.
  const Rational two_cosh = 2 * radius.cosh_bound;
  const BigInt big_bound = numerator(two_cosh) / denominator(two_cosh);
  if (big_bound > BigInt(4'000'000'000'000LL)) point_budget(options.max_points);
  const std::int64_t B = big_bound.convert_to<std::int64_t>();
  if (B < 2) return {};
  if (1.5 * static_cast<double>(B) > 2.0 * static_cast<double>(options.max_points))
    point_budget(options.max_points);

  constexpr std::size_t kShards = 64;
  std::vector<std::vector<RawPoint>> shards(kShards);
  std::atomic<std::size_t> total{0};
  parallel_for(kShards, options.threads, [&](std::size_t shard) {
    auto& mine = shards[shard];
    for (std::int64_t c = static_cast<std::int64_t>(shard == 0 ? kShards : shard); c * c < B;
         c += static_cast<std::int64_t>(kShards)) {
      check_deadline(options);
      for (std::int64_t d = 0; c * c + d * d < B; ++d) {
        std::int64_t u, v;
        if (ext_gcd(d, c, u, v) != 1) continue;
        // u d + v c = 1, so (a0, b0) = (u, -v) has a0 d - b0 c = 1.
        const std::int64_t a0 = u, b0 = -v;
        const std::int64_t s = c * c + d * d;
        const i128 A = static_cast<i128>(a0) * c + static_cast<i128>(b0) * d;
        // norm(t) = ((s t + A)^2 + 1) / s + s, so norm <= B iff (s t + A)^2 <= s (B - s) - 1.
        const i128 K = static_cast<i128>(s) * (B - s) - 1;
        if (K < 0) continue;
        const i128 r = isqrt(K);
        const i128 t_lo = ceil_div(-A - r, s), t_hi = floor_div(-A + r, s);
        for (i128 t = t_lo; t <= t_hi; ++t) {
          const std::int64_t a = static_cast<std::int64_t>(a0 + t * c);
          const std::int64_t b = static_cast<std::int64_t>(b0 + t * d);
          const std::int64_t norm = a * a + b * b + s;
          if (punctured && norm == 2) continue;
          mine.push_back({a, b, c, d, norm});
        }
      }
      if (total.fetch_add(0) + mine.size() > options.max_points) point_budget(options.max_points);
    }
    if (total.fetch_add(mine.size()) + mine.size() > options.max_points) point_budget(options.max_points);
  });

  std::vector<RawPoint> raw;
  raw.reserve(total.load());
  for (auto& s : shards) raw.insert(raw.end(), s.begin(), s.end());
  std::sort(raw.begin(), raw.end(), raw_less);
  return raw;
}

}  // namespace

std::vector<OrbitPoint<Rational>> modular_orbit_of_i(const Radius& radius, bool punctured,
                                                     const OrbitOptions& options) {
  const auto raw = modular_raw(radius, punctured, options);
  std::vector<OrbitPoint<Rational>> out;
  out.reserve(raw.size());
  for (const auto& e : raw) {
    const std::int64_t s = e.s();
    out.push_back({Point<Rational>(Rational(e.xnum(), s), Rational(1, s)), Moebius<Rational>(e.a, e.b, e.c, e.d),
                   Rational(e.norm, 2)});
  }
  if (options.stats) options.stats->explored += out.size();
  return out;
}

template <class Scalar>
bool modular_filter_applies(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, const Point<Scalar>& q) {
  if constexpr (!is_exact_v<Scalar>) {
    return false;
  } else {
    if (!spec.free_product_of_involutions || !is_integral(spec) || spec.generators.empty()) return false;
    for (const auto& g : spec.generators)
      if (!is_involution(g)) return false;
    // isometric disks must have pairwise disjoint interiors
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      for (std::size_t j = i + 1; j < spec.generators.size(); ++j) {
        const auto& g = spec.generators[i];
        const auto& h = spec.generators[j];
        const Rational gap = g.a() / g.c() - h.a() / h.c();
        const Rational reach = 1 / abs_value(g.c()) + 1 / abs_value(h.c());
        if (gap * gap < reach * reach) return false;
      }
    }
    return in_modular_orbit_of_i(p) && in_modular_orbit_of_i(q);
  }
}

template <class Scalar>
double default_slack(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, const Point<Scalar>& q) {
  double worst = 0.0;
  for (const auto& s : spec.symmetric_generators()) {
    worst = std::max(worst, dist(p, apply(s, p)).length);
    worst = std::max(worst, dist(q, apply(s, q)).length);
  }
  return 2.0 * worst;
}

template <class Scalar>
std::vector<OrbitPoint<Scalar>> orbit_ball(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                           const Point<Scalar>& q, const Radius& radius, bool punctured,
                                           const OrbitOptions& options) {
  OrbitStrategy strategy = options.strategy;
  if constexpr (is_exact_v<Scalar>) {
    if (strategy == OrbitStrategy::Auto && is_full_modular(spec) && in_modular_orbit_of_i(p) &&
        in_modular_orbit_of_i(q)) {
      // B(q, R) = g B(i, R) with q = g i, and p = h i.
      const Moebius<Scalar> g = invert(reduce_fd(q).gamma);
      const Moebius<Scalar> h_inv = reduce_fd(p).gamma;
      auto pts = modular_orbit_of_i(radius, punctured, options);
      if (!(g == Moebius<Scalar>::identity() && h_inv == Moebius<Scalar>::identity())) {
        for (auto& op : pts) {
          op.point = apply(g, op.point);
          op.witness = g * op.witness * h_inv;
        }
        sort_points(pts);
      }
      return pts;
    }
    if (strategy == OrbitStrategy::Auto && modular_filter_applies(spec, p, q))
      strategy = OrbitStrategy::ModularFilter;
    if (strategy == OrbitStrategy::ModularFilter) {
      if (!modular_filter_applies(spec, p, q))
        throw DomainError("modular filter needs an integral ping-pong group and centers in the orbit of i");
      auto pts = modular_filter(spec, p, q, radius, punctured, options);
      sort_points(pts);
      return pts;
    }
  } else {
    if (strategy == OrbitStrategy::ModularFilter) throw DomainError("modular filter needs exact mode");
  }
  if (strategy == OrbitStrategy::Auto)
    strategy = spec.free_product_of_involutions ? OrbitStrategy::ReducedWords : OrbitStrategy::Frontier;
  const double slack = options.slack >= 0.0 ? options.slack : default_slack(spec, p, q);
  if (options.stats) options.stats->slack = slack;
  auto pts = strategy == OrbitStrategy::ReducedWords
                 ? reduced_word_search(spec, p, q, radius, punctured, options, slack)
                 : frontier_search(spec, p, q, radius, punctured, options, slack);
  sort_points(pts);
  note_ties(pts, options);
  return pts;
}

template <class Scalar>
int stabilizer_order(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, int word_bound) {
  return static_cast<int>(stabilizer_elements(spec, p, word_bound).size());
}

template <class Scalar>
DelsarteResult delsarte_ratio(const GroupSpec<Scalar>& spec, const Point<Scalar>& p, const Point<Scalar>& q,
                              double R, const OrbitOptions& options) {
  if (!(R > 0.0)) throw DomainError("Delsarte radius must be positive");
  if (!spec.is_lattice() && !spec.covolume) throw DomainError("Delsarte prediction needs a lattice");
  DelsarteResult out;
  out.count = orbit_ball(spec, p, q, R, false, options).size();
  out.predicted = ball_volume(R) / (stabilizer_order(spec, p) * spec.covolume_value());
  out.ratio = static_cast<double>(out.count) / out.predicted;
  return out;
}

CountCurve count_curve(std::vector<double> lengths, const std::vector<double>& radii) {
  std::sort(lengths.begin(), lengths.end());
  CountCurve out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("count curve radii must increase strictly");
    const auto n = std::upper_bound(lengths.begin(), lengths.end(), radii[i]) - lengths.begin();
    out.emplace_back(radii[i], static_cast<std::size_t>(n));
  }
  return out;
}

double critical_exponent_estimate(const CountCurve& curve, double lo, double hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [L, n] : curve) {
    if (L < lo || L > hi) continue;
    if (n == 0) throw InsufficientData("count curve has an empty sample inside the window");
    pts.emplace_back(L, std::log(static_cast<double>(n)));
  }
  if (pts.size() < 3) throw InsufficientData("need at least 3 samples inside the window");
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx <= 0) throw InsufficientData("window samples share one radius");
  return sxy / sxx;
}

#define RECIP_INSTANTIATE(S)                                                                               \
  template std::vector<OrbitPoint<S>> orbit_ball(const GroupSpec<S>&, const Point<S>&, const Point<S>&,  \
                                                 const Radius&, bool, const OrbitOptions&);               \
  template int stabilizer_order(const GroupSpec<S>&, const Point<S>&, int);                               \
  template DelsarteResult delsarte_ratio(const GroupSpec<S>&, const Point<S>&, const Point<S>&, double,   \
                                         const OrbitOptions&);                                            \
  template double default_slack(const GroupSpec<S>&, const Point<S>&, const Point<S>&);                   \
  template bool modular_filter_applies(const GroupSpec<S>&, const Point<S>&, const Point<S>&);

RECIP_INSTANTIATE(Rational)
RECIP_INSTANTIATE(double)

}  // namespace recip
