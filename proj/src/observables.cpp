#include "hlq/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hlq/error.hpp"

namespace hlq {

double ground_population(const ComplexMatrix& rho) { return rho(0, 0).real(); }

double mean_photon(const ComplexMatrix& rho) {
  double n = 0.0;
  for (Eigen::Index k = 1; k < rho.rows(); ++k) n += static_cast<double>(k) * rho(k, k).real();
  return n;
}

double purity(const ComplexMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

namespace {

// Tr(rho b^p) for p = 1, 2.
Complex lowering_moment(const ComplexMatrix& rho, int power) {
  Complex acc{};
  for (Eigen::Index n = power; n < rho.rows(); ++n) {
    double amp = 1.0;
    for (int q = 0; q < power; ++q) amp *= std::sqrt(static_cast<double>(n - q));
    acc += amp * rho(n, n - power);
  }
  return acc;
}

}  // namespace

QuadratureVariances quadrature_variances(const ComplexMatrix& rho) {
  const Complex b = lowering_moment(rho, 1);
  const Complex b2 = lowering_moment(rho, 2);
  const double n = mean_photon(rho);
  // X^2 = (b^2 + b^dag^2 + 2n + 1)/4 and Y^2 = (-b^2 - b^dag^2 + 2n + 1)/4.
  const double x2 = (2.0 * b2.real() + 2.0 * n + 1.0) / 4.0;
  const double y2 = (-2.0 * b2.real() + 2.0 * n + 1.0) / 4.0;
  return {x2 - b.real() * b.real(), y2 - b.imag() * b.imag()};
}

Complex trajectory_point(const ComplexMatrix& rho) { return lowering_moment(rho, 1); }

double fidelity_coherent(const ComplexMatrix& rho, Complex gamma) {
  const ComplexVector c = coherent_vector(gamma, static_cast<int>(rho.rows()));
  return (c.adjoint() * rho * c)(0, 0).real();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidDimension, "trace distance of mismatched matrices");
  }
  const ComplexMatrix diff = a - b;
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

double top_population(const ComplexMatrix& rho, int levels) {
  double p = 0.0;
  const Eigen::Index d = rho.rows();
  for (Eigen::Index k = std::max<Eigen::Index>(0, d - levels); k < d; ++k) p += rho(k, k).real();
  return p;
}

TrajectoryRecord make_record(int step, double t, const ComplexMatrix& rho) {
  const QuadratureVariances v = quadrature_variances(rho);
  return {step, t, ground_population(rho), mean_photon(rho), purity(rho),
          trajectory_point(rho), v.var_x, v.var_y};
}

double HusimiGrid::x(int ix) const {
  if (extent.n_x == 1) return extent.x_min;
  return extent.x_min + (extent.x_max - extent.x_min) * ix / (extent.n_x - 1);
}

double HusimiGrid::y(int iy) const {
  if (extent.n_y == 1) return extent.y_min;
  return extent.y_min + (extent.y_max - extent.y_min) * iy / (extent.n_y - 1);
}

double HusimiGrid::cell_area() const {
  const double dx = extent.n_x > 1 ? (extent.x_max - extent.x_min) / (extent.n_x - 1) : 0.0;
  const double dy = extent.n_y > 1 ? (extent.y_max - extent.y_min) / (extent.n_y - 1) : 0.0;
  return dx * dy;
}

HusimiGrid husimi_grid(const ComplexMatrix& rho, const PhaseSpaceExtent& extent) {
  if (extent.n_x < 1 || extent.n_y < 1 || !(extent.x_max >= extent.x_min) ||
      !(extent.y_max >= extent.y_min)) {
    throw Error(ErrorKind::ValidationError, "invalid phase-space extent");
  }
  HusimiGrid grid;
  grid.extent = extent;
  grid.values.resize(static_cast<std::size_t>(extent.n_x) * extent.n_y);
  const int d = static_cast<int>(rho.rows());
  double sum = 0.0;
  for (int iy = 0; iy < extent.n_y; ++iy) {
    for (int ix = 0; ix < extent.n_x; ++ix) {
      const ComplexVector c = coherent_vector({grid.x(ix), grid.y(iy)}, d);
      const double q = (c.adjoint() * rho * c)(0, 0).real() / std::numbers::pi;
      grid.values[static_cast<std::size_t>(iy) * extent.n_x + ix] = q;
      sum += q;
    }
  }
  grid.normalization = sum * grid.cell_area();
  return grid;
}

CircleFit fit_circle(std::span<const Complex> points) {
  if (points.size() < 3) {
    throw Error(ErrorKind::ValidationError, "circle fit needs at least three points");
  }
  // x^2 + y^2 + D x + E y + F = 0 in the least-squares sense.
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex p = points[static_cast<std::size_t>(i)];
    a(i, 0) = p.real();
    a(i, 1) = p.imag();
    a(i, 2) = 1.0;
    rhs(i) = -std::norm(p);
  }
  const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(rhs);
  CircleFit fit;
  fit.center = {-0.5 * coef(0), -0.5 * coef(1)};
  fit.radius = std::sqrt(std::max(0.0, std::norm(fit.center) - coef(2)));
  for (const Complex& p : points) {
    fit.max_relative_deviation =
        std::max(fit.max_relative_deviation, std::abs(std::abs(p - fit.center) / fit.radius - 1.0));
  }
  return fit;
}

}  // namespace hlq
