#pragma once

#include <span>

#include "vbe/circuit.hpp"
#include "vbe/numkit.hpp"

namespace vbe {

inline constexpr double kDefaultDelta = 1e-2;

struct TargetSpec {
  ComplexMatrix matrix;
  double alpha = 1.0;
  double delta = kDefaultDelta;

  int system_qubits() const;
  ComplexMatrix scaled() const { return matrix / alpha; }
};

// alpha = ||a||_2 + delta. Requires a square power-of-two matrix.
TargetSpec subnormalize(const ComplexMatrix& a, double delta = kDefaultDelta);

// Top-left 2^n block of a 2^(n+m) unitary (ancillas are the leading qubits).
ComplexMatrix extract_block(const ComplexMatrix& u, int ancillas);

double cost(const TargetSpec& t, const Circuit& c, std::span<const double> theta);
// Gradient of the squared cost.
RealVector cost_gradient(const TargetSpec& t, const Circuit& c, std::span<const double> theta);

// Squared cost and its gradient from one forward and one backward sweep over
// the 2^N x 2^n slice of the circuit that acts on the ancilla-zero inputs.
class CostFunction {
 public:
  CostFunction(const TargetSpec& t, const Circuit& c);

  const Circuit& circuit() const { return circuit_; }
  int dimension() const { return circuit_.param_count; }

  double value(std::span<const double> theta) const;
  double value_and_gradient(std::span<const double> theta, RealVector& grad) const;
  ComplexMatrix block(std::span<const double> theta) const;

 private:
  ComplexMatrix forward(std::span<const double> theta) const;

  Circuit circuit_;
  ComplexMatrix scaled_target_;
  Eigen::Index sys_dim_ = 1;
};

}  // namespace vbe
