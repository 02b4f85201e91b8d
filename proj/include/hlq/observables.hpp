#pragma once

// Physical quantities and phase-space pictures extracted from density matrices.
// Quadratures follow X = (b + b^dag)/2, Y = (b - b^dag)/(2i), so the vacuum
// variance is 1/4.

#include <span>
#include <vector>

#include "hlq/fock.hpp"

namespace hlq {

struct TrajectoryRecord {
  int step = 0;
  double t = 0.0;
  double p00 = 1.0;
  double mean_n = 0.0;
  double purity = 1.0;
  Complex mean_b{};
  double var_x = 0.25;
  double var_y = 0.25;
};

double ground_population(const ComplexMatrix& rho);
double mean_photon(const ComplexMatrix& rho);
double purity(const ComplexMatrix& rho);

struct QuadratureVariances {
  double var_x = 0.0;
  double var_y = 0.0;
};
QuadratureVariances quadrature_variances(const ComplexMatrix& rho);

/// First moment <b>, used as the centre of the phase-space distribution.
Complex trajectory_point(const ComplexMatrix& rho);

/// <gamma| rho |gamma> with the truncated coherent vector.
double fidelity_coherent(const ComplexMatrix& rho, Complex gamma);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Population held by the top `levels` Fock states.
double top_population(const ComplexMatrix& rho, int levels = 2);

TrajectoryRecord make_record(int step, double t, const ComplexMatrix& rho);

struct PhaseSpaceExtent {
  double x_min = -5.0;
  double x_max = 5.0;
  double y_min = -5.0;
  double y_max = 5.0;
  int n_x = 201;
  int n_y = 201;
};

/// Q(x, y) sampled on a rectangular grid, stored row by row (y outer, x inner).
struct HusimiGrid {
  PhaseSpaceExtent extent;
  std::vector<double> values;
  /// Discrete sum times cell area; close to 1 when the grid covers the state.
  double normalization = 0.0;

  double x(int ix) const;
  double y(int iy) const;
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * extent.n_x + ix]; }
  double cell_area() const;
};

HusimiGrid husimi_grid(const ComplexMatrix& rho, const PhaseSpaceExtent& extent = {});

/// Algebraic least-squares circle through a set of phase-space points.
struct CircleFit {
  Complex center{};
  double radius = 0.0;
  /// max |dist(point, center) / radius - 1| over the input points.
  double max_relative_deviation = 0.0;
};
CircleFit fit_circle(std::span<const Complex> points);

}  // namespace hlq
