#include "recip/lowlying.hpp"

#include "recip/fundamental_domain.hpp"
#include "recip/rl_word.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace recip {

GroupSpec<Rational> build_gamma_k(int k) {
  if (k < 0) throw DomainError("k must be nonnegative");
  GroupSpec<Rational> spec;
  spec.name = "gamma_" + std::to_string(k);
  for (long a = -k; a <= k; ++a) {
    // eta^a S eta^-a = [[2a, -4a^2 - 1], [1, -2a]]
    const Moebius<Rational> s(2 * a, -4 * a * a - 1, 1, -2 * a);
    spec.generators.push_back(s);
    spec.involution_classes.emplace_back(s, 2);
  }
  spec.free_product_of_involutions = true;
  return spec;
}

double reduced_height(const Point<Rational>& p, const Point<Rational>& q, double step) {
  if (!(step > 0.0)) throw DomainError("height step must be positive");
  const GeodesicArc arc(to_floating(p), to_floating(q));
  const long n = std::max(1L, static_cast<long>(std::ceil(arc.length() / step)));
  double best = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double s = arc.length() * static_cast<double>(i) / static_cast<double>(n);
    best = std::max(best, reduce_fd(arc.at(s).point).point.y());
  }
  return best;
}

CountCurve gamma_k_curve(int k, double lo, double hi, double step, const OrbitOptions& options) {
  if (!(hi > 0.0) || !(step > 0.0) || hi < lo) throw DomainError("bad curve range");
  const auto spec = build_gamma_k(k);
  const Point<Rational> i(0, 1);
  const auto pts = orbit_ball(spec, i, i, hi, true, options);
  std::vector<double> lengths;
  lengths.reserve(pts.size());
  for (const auto& op : pts) lengths.push_back(op.length());
  std::vector<double> radii;
  for (double r = std::max(lo, step); r <= hi + 1e-9; r += step) radii.push_back(std::min(r, hi));
  return count_curve(std::move(lengths), radii);
}

namespace {

std::pair<double, double> fit_window(double L, const LowLyingOptions& options) {
  return options.window ? *options.window : std::make_pair(std::max(0.0, L - 4.0), L);
}

}  // namespace

LowLyingReport lowlying_census(int k, double L, const LowLyingOptions& options) {
  if (k < 1) throw DomainError("low-lying census needs k >= 1");
  if (!(L > 0.0)) throw DomainError("low-lying census needs L > 0");
  const auto spec = build_gamma_k(k);
  const auto c = census(spec, L, options.orbit);

  LowLyingReport r;
  r.k = k;
  r.L = L;
  r.gamma_k_class_count = c.classes.size();
  std::map<std::string, std::string> modular;
  for (const auto& cls : c.classes) {
    const auto& p = spec.involution_classes[cls.sigma_idx].fixed_point;
    const auto z = cls.far_point(spec);
    modular.emplace(modular_pair_representative(p, z).str(), cls.rl);
    r.height_bound = std::max(r.height_bound, reduced_height(p, z, options.height_step));
  }
  r.class_count = modular.size();
  for (const auto& [key, word] : modular) {
    r.modular_keys.push_back(key);
    r.rl_words.push_back(word);
  }

  const auto [lo, hi] = fit_window(L, options);
  r.curve = gamma_k_curve(k, lo, L, options.curve_step, options.orbit);
  r.orbit_points = r.curve.empty() ? 0 : r.curve.back().second;
  try {
    r.delta_hat = critical_exponent_estimate(r.curve, lo, hi);
  } catch (const InsufficientData&) {
    r.delta_hat.reset();
  }
  return r;
}

std::vector<std::pair<int, double>> delta_curve(const std::vector<int>& ks, double L_max,
                                                const LowLyingOptions& options) {
  std::vector<std::pair<int, double>> out;
  const auto [lo, hi] = fit_window(L_max, options);
  for (int k : ks) {
    if (k < 1) throw DomainError("delta curve needs k >= 1");
    const auto curve = gamma_k_curve(k, lo, L_max, options.curve_step, options.orbit);
    out.emplace_back(k, critical_exponent_estimate(curve, lo, hi));
  }
  return out;
}

}  // namespace recip
