#pragma once

#include "recip/census.hpp"
#include "recip/fundamental_domain.hpp"

#include <string>
#include <vector>

namespace recip {

/// nx x ny x na cells over the modular fundamental domain and the circle of directions.
/// Rows are uniform in 1/y between the corner height sqrt(3)/2 and y_max; above y_max sits one cusp bin.
struct GridSpec {
  int nx = 12;
  int ny = 12;
  int na = 8;
  double y_max = 10.0;
};

/// Parses "NXxNYxNA", e.g. "12x12x8".
GridSpec parse_grid(const std::string& text);

struct Bin3D {
  double x_lo, x_hi, y_lo, y_hi, ang_lo, ang_hi;
  double ref_mass;  ///< Liouville probability of the cell
  double mass = 0.0;
  bool cusp = false;
};

struct Histogram3D {
  GridSpec grid;
  std::vector<Bin3D> bins;  ///< row-major (x, y, angle); the cusp bin is last
  double total_mass = 0.0;

  static Histogram3D empty(const GridSpec& grid);

  /// Reduces (z, angle) into the fundamental domain and adds `weight` to its cell.
  void deposit(const Point<double>& z, double angle, double weight);
  void merge(const Histogram3D& other);
  double mass_sum() const;
};

/// Hyperbolic area of {x in [x_lo, x_hi], y in [y_lo, y_hi]} inside the fundamental domain.
double cell_area(double x_lo, double x_hi, double y_lo, double y_hi);

enum class Orientation { Forward, Reverse, Symmetric };

Orientation parse_orientation(const std::string& text);
std::string to_string(Orientation o);

struct EquidistOptions {
  GridSpec grid;
  double step = 0.02;
  Orientation orientation = Orientation::Forward;
  OrbitOptions orbit;
};

/// Mass deposited along the segment p -> q with the midpoint rule; returns the deposited mass.
double deposit_segment(Histogram3D& h, const Point<double>& p, const Point<double>& q, double step,
                       double weight = 1.0);

/// mu_L for PSL(2,Z): every census class contributes its lifted segment p_sigma -> (gamma sigmabar gamma^-1) p_sigma.
Histogram3D mu_L_histogram(double L, const EquidistOptions& options = {});

/// Arc measure from y to every orbit point of x in B*(y, L).
Histogram3D segment_histogram(const Point<Rational>& x, const Point<Rational>& y, double L,
                              const EquidistOptions& options = {});

/// Total variation against the Liouville reference: (1/2) sum |mass / total - ref|.
double discrepancy(const Histogram3D& h);

}  // namespace recip
