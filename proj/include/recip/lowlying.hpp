#pragma once

#include "recip/census.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace recip {

/// Gamma_k = < eta^a S eta^-a : a = -k..k >, eta(z) = z + 2: a free product of 2k+1 involutions.
GroupSpec<Rational> build_gamma_k(int k);

struct LowLyingOptions {
  OrbitOptions orbit;
  double height_step = 0.05;  ///< arc-length step of the axis samples
  /// Fit window for delta_hat; default [L - 4, L].
  std::optional<std::pair<double, double>> window;
  double curve_step = 0.25;
};

struct LowLyingReport {
  int k = 0;
  double L = 0.0;
  std::size_t class_count = 0;          ///< distinct PSL(2,Z) classes of the Gamma_k dihedral groups
  std::size_t gamma_k_class_count = 0;  ///< classes up to conjugacy inside Gamma_k
  double height_bound = 0.0;            ///< max Im of reduced axis samples over all classes
  std::optional<double> delta_hat;      ///< empty when the window has too few samples
  std::size_t orbit_points = 0;         ///< |Gamma_k i  in B*(i, L)|
  CountCurve curve;
  std::vector<std::string> modular_keys;  ///< sorted PSL(2,Z) pair keys, one per class_count
  std::vector<std::string> rl_words;      ///< canonical R/L words of those classes, same order
};

/// Largest imaginary part of the fundamental-domain reductions of points along [p, q] at the given step.
double reduced_height(const Point<Rational>& p, const Point<Rational>& q, double step);

LowLyingReport lowlying_census(int k, double L, const LowLyingOptions& options = {});

/// Orbit counts of Gamma_k i at radii spaced `step` over [lo, hi].
CountCurve gamma_k_curve(int k, double lo, double hi, double step, const OrbitOptions& options = {});

/// delta_hat per k, fitted over [L_max - 4, L_max].
std::vector<std::pair<int, double>> delta_curve(const std::vector<int>& ks, double L_max,
                                                const LowLyingOptions& options = {});

}  // namespace recip
