#pragma once

// Truncated Fock-space linear algebra: bosonic operators, the two-state
// spin embedding, the partial trace over the spin and short-step propagators.
//
// Composite (spin x field) indices are spin-major: k = s*d + n, with s = 0 the
// upper spin state and s = 1 the lower one.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace hlq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class Model { Linear, TwoBoson, Intensity };

Model parse_model(std::string_view name);
std::string_view to_string(Model model);

/// Number of quanta removed by the model's lowering operator (b: 1, b^2: 2,
/// b sqrt(n): 1).
int quanta_lowered(Model model);

ComplexMatrix annihilation_matrix(int dim);
ComplexMatrix number_matrix(int dim);

/// Time-independent part R0 of the model operator R(t).
ComplexMatrix model_operator(Model model, int dim);

/// |phi><phi| for phi = alpha|up> + beta|down>.
ComplexMatrix spin_projector(Complex alpha, Complex beta);

ComplexMatrix tensor_embed(const ComplexMatrix& spin, const ComplexMatrix& field);
ComplexMatrix partial_trace_spin(const ComplexMatrix& composite);

/// exp(-i H dt) through a Hermitian eigendecomposition.
ComplexMatrix hermitian_propagator(const ComplexMatrix& hamiltonian, double dt);

/// Truncated coherent state amplitudes exp(-|g|^2/2) g^n / sqrt(n!), n < dim.
ComplexVector coherent_vector(Complex gamma, int dim);

// Diagnostics shared by the engines, observables and tests.
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& u);
double min_eigenvalue(const ComplexMatrix& hermitian);
Complex trace(const ComplexMatrix& m);

}  // namespace hlq
