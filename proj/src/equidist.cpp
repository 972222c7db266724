#include "recip/equidist.hpp"

#include "recip/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace recip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 32;

double corner_u() { return 2.0 / std::sqrt(3.0); }

// integral over [a, b] of max(0, min(hi, g(x)) - lo) with g(x) = 1 / sqrt(1 - x^2), |x| < 1
double strip_integral(double a, double b, double lo, double hi) {
  std::vector<double> cuts{a, b};
  for (double u : {lo, hi}) {
    if (u > 1.0) {
      const double r = std::sqrt(1.0 - 1.0 / (u * u));
      for (double c : {-r, r})
        if (c > a && c < b) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double l = cuts[k], r = cuts[k + 1];
    if (r <= l) continue;
    const double g = 1.0 / std::sqrt(1.0 - 0.25 * (l + r) * (l + r));
    if (g <= lo) continue;
    if (g >= hi) {
      total += (hi - lo) * (r - l);
    } else {
      total += std::asin(r) - std::asin(l) - lo * (r - l);
    }
  }
  return total;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char x1 = 0, x2 = 0;
  std::istringstream is(text);
  if (!(is >> g.nx >> x1 >> g.ny >> x2 >> g.na) || x1 != 'x' || x2 != 'x' || !is.eof())
    throw ValidationError("bins", "expected NXxNYxNA, got '" + text + "'");
  if (g.nx < 1 || g.ny < 1 || g.na < 1) throw ValidationError("bins", "bin counts must be positive");
  return g;
}

double cell_area(double x_lo, double x_hi, double y_lo, double y_hi) {
  // dx dy / y^2 = dx du with u = 1/y; the domain is u <= 1 / sqrt(1 - x^2).
  return strip_integral(x_lo, x_hi, 1.0 / y_hi, 1.0 / y_lo);
}

Histogram3D Histogram3D::empty(const GridSpec& grid) {
  if (grid.nx < 1 || grid.ny < 1 || grid.na < 1) throw DomainError("grid needs positive bin counts");
  if (!(grid.y_max > 1.0)) throw DomainError("cusp height must exceed 1");
  Histogram3D h;
  h.grid = grid;
  const double u0 = corner_u(), u1 = 1.0 / grid.y_max;
  const double area = kPi / 3.0;
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double x_lo = -0.5 + static_cast<double>(ix) / grid.nx;
    const double x_hi = -0.5 + static_cast<double>(ix + 1) / grid.nx;
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double u_hi = u0 - (u0 - u1) * iy / grid.ny;
      const double u_lo = u0 - (u0 - u1) * (iy + 1) / grid.ny;
      const double cell = strip_integral(x_lo, x_hi, u_lo, u_hi);
      for (int ia = 0; ia < grid.na; ++ia) {
        h.bins.push_back({x_lo, x_hi, 1.0 / u_hi, 1.0 / u_lo, 2.0 * kPi * ia / grid.na,
                          2.0 * kPi * (ia + 1) / grid.na, cell / area / grid.na, 0.0, false});
      }
    }
  }
  h.bins.push_back({-0.5, 0.5, grid.y_max, INFINITY, 0.0, 2.0 * kPi, u1 / area, 0.0, true});
  return h;
}

void Histogram3D::deposit(const Point<double>& z, double angle, double weight) {
  const auto r = reduce_fd(z);
  const double y = r.point.y();
  total_mass += weight;
  if (y > grid.y_max) {
    bins.back().mass += weight;
    return;
  }
  const double a = pushforward_angle(r.gamma, z, angle);
  const double u0 = corner_u(), u1 = 1.0 / grid.y_max;
  const auto clamp = [](double v, int n) { return std::clamp(static_cast<int>(std::floor(v)), 0, n - 1); };
  const int ix = clamp((r.point.x() + 0.5) * grid.nx, grid.nx);
  const int iy = clamp((u0 - 1.0 / y) / (u0 - u1) * grid.ny, grid.ny);
  const int ia = clamp(a / (2.0 * kPi) * grid.na, grid.na);
  bins[(static_cast<std::size_t>(ix) * grid.ny + iy) * grid.na + ia].mass += weight;
}

void Histogram3D::merge(const Histogram3D& other) {
  if (other.bins.size() != bins.size()) throw DomainError("histogram grids differ");
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k].mass += other.bins[k].mass;
  total_mass += other.total_mass;
}

double Histogram3D::mass_sum() const {
  double s = 0.0;
  for (const auto& b : bins) s += b.mass;
  return s;
}

Orientation parse_orientation(const std::string& text) {
  if (text == "forward") return Orientation::Forward;
  if (text == "reverse") return Orientation::Reverse;
  if (text == "symmetric") return Orientation::Symmetric;
  throw ValidationError("orientation", "expected forward, reverse or symmetric");
}

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::Forward: return "forward";
    case Orientation::Reverse: return "reverse";
    case Orientation::Symmetric: return "symmetric";
  }
  return "?";
}

double deposit_segment(Histogram3D& h, const Point<double>& p, const Point<double>& q, double step,
                       double weight) {
  if (!(step > 0.0)) throw DomainError("step must be positive");
  const GeodesicArc arc(p, q);
  const long n = std::max(1L, std::lround(arc.length() / step));
  const double ds = arc.length() / static_cast<double>(n);
  for (long k = 0; k < n; ++k) {
    const auto s = arc.at((static_cast<double>(k) + 0.5) * ds);
    h.deposit(s.point, s.angle, weight * ds);
  }
  return weight * arc.length();
}

namespace {

struct Segment {
  Point<double> from, to;
};

Histogram3D accumulate(const std::vector<Segment>& segs, const EquidistOptions& options) {
  if (!(options.step > 0.0) || options.step > 0.1) throw DomainError("step must lie in (0, 0.1]");
  const std::size_t chunks = (segs.size() + kChunk - 1) / kChunk;
  std::vector<Histogram3D> parts(chunks, Histogram3D::empty(options.grid));
  parallel_for(chunks, options.orbit.threads, [&](std::size_t c) {
    for (std::size_t k = c * kChunk; k < std::min(segs.size(), (c + 1) * kChunk); ++k) {
      const auto& s = segs[k];
      switch (options.orientation) {
        case Orientation::Forward: deposit_segment(parts[c], s.from, s.to, options.step); break;
        case Orientation::Reverse: deposit_segment(parts[c], s.to, s.from, options.step); break;
        case Orientation::Symmetric:
          deposit_segment(parts[c], s.from, s.to, options.step, 0.5);
          deposit_segment(parts[c], s.to, s.from, options.step, 0.5);
          break;
      }
    }
  });
  Histogram3D h = Histogram3D::empty(options.grid);
  for (const auto& p : parts) h.merge(p);
  return h;
}

}  // namespace

Histogram3D mu_L_histogram(double L, const EquidistOptions& options) {
  if (!(L > 0.0)) throw DomainError("L must be positive");
  const auto spec = modular_group();
  const auto c = census(spec, L, options.orbit);
  std::vector<Segment> segs;
  segs.reserve(c.classes.size());
  for (const auto& cls : c.classes) {
    const auto& s = spec.involution_classes[cls.sigma_idx];
    const auto& sb = spec.involution_classes[cls.sigmabar_idx];
    const Point<Rational> end = apply(conjugate(cls.gamma, sb.rep), s.fixed_point);
    segs.push_back({to_floating(s.fixed_point), to_floating(end)});
  }
  return accumulate(segs, options);
}

Histogram3D segment_histogram(const Point<Rational>& x, const Point<Rational>& y, double L,
                              const EquidistOptions& options) {
  if (!(L > 0.0)) throw DomainError("L must be positive");
  const auto spec = modular_group();
  const auto pts = orbit_ball(spec, x, y, L, true, options.orbit);
  std::vector<Segment> segs;
  segs.reserve(pts.size());
  for (const auto& op : pts) segs.push_back({to_floating(y), to_floating(op.point)});
  return accumulate(segs, options);
}

double discrepancy(const Histogram3D& h) {
  if (!(h.total_mass > 0.0)) throw DomainError("discrepancy of an empty histogram");
  double tv = 0.0;
  for (const auto& b : h.bins) tv += std::abs(b.mass / h.total_mass - b.ref_mass);
  return 0.5 * tv;
}

}  // namespace recip
