#include "vbe/encode.hpp"

#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace vbe {

int TargetSpec::system_qubits() const { return exact_log2(static_cast<std::size_t>(matrix.rows())); }

TargetSpec subnormalize(const ComplexMatrix& a, double delta) {
  if (a.rows() != a.cols()) throw std::invalid_argument("subnormalize: matrix is not square");
  if (!is_power_of_two(static_cast<std::size_t>(a.rows()))) {
    throw std::invalid_argument("subnormalize: dimension " + std::to_string(a.rows()) +
                                " is not a power of two (zero_pad first)");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("subnormalize: delta must be positive");
  if (!a.allFinite()) throw std::invalid_argument("subnormalize: matrix has non-finite entries");
  TargetSpec t;
  t.matrix = a;
  t.delta = delta;
  t.alpha = spectral_norm(a) + delta;
  return t;
}

ComplexMatrix extract_block(const ComplexMatrix& u, int ancillas) {
  if (u.rows() != u.cols()) throw std::invalid_argument("extract_block: matrix is not square");
  const int total = exact_log2(static_cast<std::size_t>(u.rows()));
  if (ancillas < 0 || ancillas >= total) {
    throw std::invalid_argument("extract_block: ancilla count must be below the qubit count");
  }
  const Eigen::Index d = Eigen::Index{1} << (total - ancillas);
  return u.topLeftCorner(d, d);
}

namespace {

void check_dims(const TargetSpec& t, const Circuit& c) {
  if (t.system_qubits() != c.system_qubits()) {
    throw std::invalid_argument("target acts on " + std::to_string(t.system_qubits()) +
                                " qubits but the circuit block has " + std::to_string(c.system_qubits()));
  }
}

}  // namespace

CostFunction::CostFunction(const TargetSpec& t, const Circuit& c) : circuit_(c) {
  check_dims(t, c);
  scaled_target_ = t.scaled();
  sys_dim_ = scaled_target_.rows();
}

ComplexMatrix CostFunction::forward(std::span<const double> theta) const {
  if (theta.size() != static_cast<std::size_t>(circuit_.param_count)) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
  const Eigen::Index dim = Eigen::Index{1} << circuit_.num_qubits;
  ComplexMatrix s = ComplexMatrix::Identity(dim, sys_dim_);
  detail::LocalOp op;
  for (const auto& g : circuit_.gates) {
    detail::build_local_op(g, circuit_.num_qubits, theta, false, op);
    detail::apply_local(s, op, op.mat);
  }
  return s;
}

ComplexMatrix CostFunction::block(std::span<const double> theta) const {
  return forward(theta).topRows(sys_dim_);
}

double CostFunction::value(std::span<const double> theta) const {
  return (scaled_target_ - block(theta)).squaredNorm();
}

double CostFunction::value_and_gradient(std::span<const double> theta, RealVector& grad) const {
  if (theta.size() != static_cast<std::size_t>(circuit_.param_count)) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
  const Eigen::Index dim = Eigen::Index{1} << circuit_.num_qubits;
  const std::size_t ngates = circuit_.gates.size();
  std::vector<detail::LocalOp> ops(ngates);
  ComplexMatrix s = ComplexMatrix::Identity(dim, sys_dim_);
  for (std::size_t k = 0; k < ngates; ++k) {
    detail::build_local_op(circuit_.gates[k], circuit_.num_qubits, theta, true, ops[k]);
    detail::apply_local(s, ops[k], ops[k].mat);
  }
  const ComplexMatrix delta = scaled_target_ - s.topRows(sys_dim_);
  const double f = delta.squaredNorm();

  // Backward sweep: s_{k-1} = G_k^dagger s_k, omega_{k-1} = G_k^dagger omega_k,
  // and dA/dtheta contributes <omega_k, dG_k s_{k-1}>.
  ComplexMatrix omega = ComplexMatrix::Zero(dim, sys_dim_);
  omega.topRows(sys_dim_) = delta;
  grad.setZero(circuit_.param_count);
  for (std::size_t k = ngates; k-- > 0;) {
    const auto& op = ops[k];
    detail::apply_local(s, op, op.mat_adj);
    for (const auto& [slot, d] : op.derivs) {
      grad(slot) += -2.0 * detail::local_inner(omega, s, op, d).real();
    }
    detail::apply_local(omega, op, op.mat_adj);
  }
  return f;
}

double cost(const TargetSpec& t, const Circuit& c, std::span<const double> theta) {
  check_dims(t, c);
  const ComplexMatrix u = evaluate(c, theta);
  return frobenius_norm(t.scaled() - extract_block(u, c.num_ancillas));
}

RealVector cost_gradient(const TargetSpec& t, const Circuit& c, std::span<const double> theta) {
  RealVector g;
  CostFunction(t, c).value_and_gradient(theta, g);
  return g;
}

}  // namespace vbe
