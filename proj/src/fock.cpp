#include "hlq/fock.hpp"

#include <cmath>
#include <string>

#include "hlq/error.hpp"

namespace hlq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::InvalidPreparation: return "invalid-preparation";
    case ErrorKind::InvalidHamiltonian: return "invalid-hamiltonian";
    case ErrorKind::InvalidCoherence: return "invalid-coherence";
    case ErrorKind::TruncationOverflow: return "truncation-overflow";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::ValidationError: return "validation-error";
    case ErrorKind::IoError: return "io-error";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "linear") return Model::Linear;
  if (name == "two-boson") return Model::TwoBoson;
  if (name == "intensity") return Model::Intensity;
  throw Error(ErrorKind::InvalidModel, "unknown model '" + std::string(name) + "'");
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Linear: return "linear";
    case Model::TwoBoson: return "two-boson";
    case Model::Intensity: return "intensity";
  }
  return "unknown";
}

int quanta_lowered(Model model) { return model == Model::TwoBoson ? 2 : 1; }

namespace {

void require_dim(int dim) {
  if (dim < 1) {
    throw Error(ErrorKind::InvalidDimension,
                "truncation dimension must be >= 1, got " + std::to_string(dim));
  }
}

}  // namespace

ComplexMatrix annihilation_matrix(int dim) {
  require_dim(dim);
  ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

ComplexMatrix number_matrix(int dim) {
  require_dim(dim);
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

ComplexMatrix model_operator(Model model, int dim) {
  const ComplexMatrix b = annihilation_matrix(dim);
  switch (model) {
    case Model::Linear:
      return b;
    case Model::TwoBoson:
      return b * b;
    case Model::Intensity: {
      ComplexMatrix sqrt_n = ComplexMatrix::Zero(dim, dim);
      for (int k = 0; k < dim; ++k) sqrt_n(k, k) = std::sqrt(static_cast<double>(k));
      return b * sqrt_n;
    }
  }
  throw Error(ErrorKind::InvalidModel, "unknown model");
}

ComplexMatrix spin_projector(Complex alpha, Complex beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidPreparation,
                "spin preparation is not normalized: |alpha|^2 + |beta|^2 = " +
                    std::to_string(norm));
  }
  Eigen::Vector2cd phi(alpha, beta);
  return phi * phi.adjoint();
}

ComplexMatrix tensor_embed(const ComplexMatrix& spin, const ComplexMatrix& field) {
  if (spin.rows() != 2 || spin.cols() != 2 || field.rows() != field.cols()) {
    throw Error(ErrorKind::InvalidDimension, "tensor_embed expects 2x2 spin and square field");
  }
  const Eigen::Index d = field.rows();
  ComplexMatrix out(2 * d, 2 * d);
  for (int s = 0; s < 2; ++s) {
    for (int r = 0; r < 2; ++r) out.block(s * d, r * d, d, d) = spin(s, r) * field;
  }
  return out;
}

ComplexMatrix partial_trace_spin(const ComplexMatrix& composite) {
  if (composite.rows() != composite.cols() || composite.rows() % 2 != 0 ||
      composite.rows() == 0) {
    throw Error(ErrorKind::InvalidDimension,
                "partial trace needs a square matrix of even dimension, got " +
                    std::to_string(composite.rows()) + "x" + std::to_string(composite.cols()));
  }
  const Eigen::Index d = composite.rows() / 2;
  return composite.topLeftCorner(d, d) + composite.bottomRightCorner(d, d);
}

ComplexMatrix hermitian_propagator(const ComplexMatrix& hamiltonian, double dt) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw Error(ErrorKind::InvalidHamiltonian, "hamiltonian must be square");
  }
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if (!hamiltonian.allFinite() || hermiticity_error(hamiltonian) > 1e-12 * scale) {
    throw Error(ErrorKind::InvalidHamiltonian, "hamiltonian is not Hermitian");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const ComplexVector phases =
      (-kI * dt * eig.eigenvalues().cast<Complex>()).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

ComplexVector coherent_vector(Complex gamma, int dim) {
  require_dim(dim);
  ComplexVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(gamma));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * gamma / std::sqrt(static_cast<double>(n));
  return c;
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  const ComplexMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Complex trace(const ComplexMatrix& m) { return m.trace(); }

}  // namespace hlq
