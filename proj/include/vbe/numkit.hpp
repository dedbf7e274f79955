#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace vbe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-10;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

// Largest singular value. Throws std::invalid_argument for non-square input.
double spectral_norm(const ComplexMatrix& a);

// exp(g) for anti-hermitian g, computed from the eigensystem of i*g.
ComplexMatrix matrix_exp_antihermitian(const ComplexMatrix& g,
                                       double tol = kDefaultTolerance);

bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTolerance);
bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTolerance);
bool all_finite(const ComplexMatrix& a);

bool is_power_of_two(std::size_t x);
// log2 of a power of two; throws std::invalid_argument otherwise.
int exact_log2(std::size_t x);

ComplexMatrix pauli_matrix(char letter);

}  // namespace vbe
