#pragma once

// Analytic ground-state survival probabilities of the driven oscillator.

#include "hlq/fock.hpp"

namespace hlq {

/// exp[-c eps^2 4 sin^2(omega T / 2) / omega^2] with c = 2 for the two-boson
/// model and c = 1 otherwise. At omega = 0 returns the limit exp(-c eps^2 T^2).
double ground_state_probability(double eps_eff, double omega, double t,
                                Model model = Model::Linear);

/// G(t) = -i exp(-i omega t) theta(t), with theta(0) = 1/2.
Complex greens_function(double t, double omega);

/// B(T) = int_0^T int_0^T eps G(t - t') eps dt dt' by the tensor-product
/// trapezoidal rule on `resolution` points per axis.
Complex greens_double_integral(double eps_eff, double omega, double t, int resolution);

/// |exp(-i B(T))|^2 = exp(2 Im B(T)) with B from greens_double_integral.
double greens_quadrature_probability(double eps_eff, double omega, double t, int resolution);

}  // namespace hlq
