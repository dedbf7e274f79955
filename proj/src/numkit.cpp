#include "vbe/numkit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vbe {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double spectral_norm(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("spectral_norm: matrix is not square");
  }
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const ComplexMatrix b = a / scale;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b.adjoint() * b,
                                                 Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return scale * std::sqrt(std::max(top, 0.0));
}

ComplexMatrix matrix_exp_antihermitian(const ComplexMatrix& g, double tol) {
  if (g.rows() != g.cols()) {
    throw std::invalid_argument("matrix_exp_antihermitian: matrix is not square");
  }
  if ((g + g.adjoint()).norm() > tol) {
    throw std::invalid_argument("matrix_exp_antihermitian: input is not anti-hermitian");
  }
  // g = -i h with h = i g hermitian, so exp(g) = V exp(-i lambda) V^dagger.
  const ComplexMatrix h = Complex(0.0, 1.0) * g;
  const ComplexMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k)));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix r = a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
  return r.norm() <= tol;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol;
}

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

int exact_log2(std::size_t x) {
  if (!is_power_of_two(x)) {
    throw std::invalid_argument("dimension " + std::to_string(x) + " is not a power of two");
  }
  int k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

ComplexMatrix pauli_matrix(char letter) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (letter) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
  return m;
}

}  // namespace vbe
