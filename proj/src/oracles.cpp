#include "hlq/oracles.hpp"

#include <cmath>
#include <string>

#include "hlq/error.hpp"

namespace hlq {

double ground_state_probability(double eps_eff, double omega, double t, Model model) {
  const double c = model == Model::TwoBoson ? 2.0 : 1.0;
  if (omega == 0.0) return std::exp(-c * eps_eff * eps_eff * t * t);
  const double s = std::sin(0.5 * omega * t);
  return std::exp(-c * 4.0 * eps_eff * eps_eff * s * s / (omega * omega));
}

Complex greens_function(double t, double omega) {
  if (t < 0.0) return 0.0;
  const double theta = t == 0.0 ? 0.5 : 1.0;
  return -kI * theta * std::polar(1.0, -omega * t);
}

Complex greens_double_integral(double eps_eff, double omega, double t, int resolution) {
  if (resolution < 100) {
    throw Error(ErrorKind::ValidationError,
                "quadrature resolution must be >= 100, got " + std::to_string(resolution));
  }
  const int n = resolution;
  const double h = t / (n - 1);
  auto weight = [&](int i) { return (i == 0 || i == n - 1) ? 0.5 * h : h; };
  // G(t_i - t_j) = -i e^{-i w t_i} e^{i w t_j} for j < i, half that for j = i,
  // so the double sum collapses onto a running prefix sum over j.
  Complex prefix{};
  Complex total{};
  for (int i = 0; i < n; ++i) {
    const double ti = i * h;
    const double wi = weight(i);
    const Complex forward = std::polar(1.0, omega * ti);
    total += wi * std::conj(forward) * (prefix + 0.5 * wi * forward);
    prefix += wi * forward;
  }
  return -kI * eps_eff * eps_eff * total;
}

double greens_quadrature_probability(double eps_eff, double omega, double t, int resolution) {
  return std::exp(2.0 * greens_double_integral(eps_eff, omega, t, resolution).imag());
}

}  // namespace hlq
