#include <cmath>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace vbe {

namespace detail {

namespace {

double angle_value(const Angle& a, std::span<const double> theta) {
  return a.is_param() ? theta[static_cast<std::size_t>(a.slot)] : a.value;
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix r_derivative(int which, double t, double p, double l) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  const Complex el = std::exp(Complex(0, l)), ep = std::exp(Complex(0, p));
  const Complex epl = std::exp(Complex(0, p + l));
  const Complex i(0, 1);
  switch (which) {
    case 0: return mat2(-0.5 * s, -0.5 * el * c, 0.5 * ep * c, -0.5 * epl * s);
    case 1: return mat2(0.0, 0.0, i * ep * s, i * epl * c);
    default: return mat2(0.0, -i * el * s, 0.0, i * epl * c);
  }
}

}  // namespace

void build_local_op(const Gate& g, int num_qubits, std::span<const double> theta,
                    bool with_derivs, LocalOp& op) {
  auto bit = [num_qubits](int q) { return std::uint64_t{1} << (num_qubits - 1 - q); };
  std::vector<int> targets;
  std::uint64_t ctrl = 0;
  for (int q : g.controls) ctrl |= bit(q);
  const Complex i(0, 1);
  op.derivs.clear();

  switch (g.kind) {
    case GateKind::GeneralR:
    case GateKind::ControlledR: {
      const double t = angle_value(g.angles[0], theta);
      const double p = angle_value(g.angles[1], theta);
      const double l = angle_value(g.angles[2], theta);
      op.mat = single_qubit_R(t, p, l);
      if (with_derivs) {
        for (int k = 0; k < 3; ++k) {
          if (g.angles[k].is_param()) op.derivs.emplace_back(g.angles[k].slot, r_derivative(k, t, p, l));
        }
      }
      if (g.kind == GateKind::ControlledR) {
        ctrl |= bit(g.qubits[0]);
        targets = {g.qubits[1]};
      } else {
        targets = {g.qubits[0]};
      }
      break;
    }
    case GateKind::RyOnly: {
      const double t = angle_value(g.angles[0], theta);
      op.mat = single_qubit_R(t, 0, 0);
      if (with_derivs && g.angles[0].is_param()) op.derivs.emplace_back(g.angles[0].slot, r_derivative(0, t, 0, 0));
      targets = {g.qubits[0]};
      break;
    }
    case GateKind::Rx: {
      const double t = angle_value(g.angles[0], theta);
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      op.mat = mat2(c, -i * s, -i * s, c);
      if (with_derivs && g.angles[0].is_param()) {
        op.derivs.emplace_back(g.angles[0].slot, mat2(-0.5 * s, -0.5 * i * c, -0.5 * i * c, -0.5 * s));
      }
      targets = {g.qubits[0]};
      break;
    }
    case GateKind::Rz: {
      const double t = angle_value(g.angles[0], theta);
      const Complex em = std::exp(Complex(0, -t / 2)), ep = std::exp(Complex(0, t / 2));
      op.mat = mat2(em, 0.0, 0.0, ep);
      if (with_derivs && g.angles[0].is_param()) {
        op.derivs.emplace_back(g.angles[0].slot, mat2(-0.5 * i * em, 0.0, 0.0, 0.5 * i * ep));
      }
      targets = {g.qubits[0]};
      break;
    }
    case GateKind::Hadamard: {
      const double r = 1.0 / std::sqrt(2.0);
      op.mat = mat2(r, r, r, -r);
      targets = {g.qubits[0]};
      break;
    }
    case GateKind::CNOT:
      op.mat = mat2(0.0, 1.0, 1.0, 0.0);
      ctrl |= bit(g.qubits[0]);
      targets = {g.qubits[1]};
      break;
    case GateKind::CZ:
    case GateKind::CCZ:
    case GateKind::NCZ:
      op.mat = mat2(1.0, 0.0, 0.0, -1.0);
      for (std::size_t k = 0; k + 1 < g.qubits.size(); ++k) ctrl |= bit(g.qubits[k]);
      targets = {g.qubits.back()};
      break;
    case GateKind::PauliGadget:
    case GateKind::ControlledPauliGadget: {
      const double t = angle_value(g.angles[0], theta);
      op.mat = g.generator->unitary(t);
      if (with_derivs && g.angles[0].is_param()) op.derivs.emplace_back(g.angles[0].slot, g.generator->derivative(t));
      if (g.kind == GateKind::ControlledPauliGadget) {
        ctrl |= bit(g.qubits[0]);
        targets.assign(g.qubits.begin() + 1, g.qubits.end());
      } else {
        targets = g.qubits;
      }
      break;
    }
  }

  if (g.adjoint) {
    op.mat.adjointInPlace();
    for (auto& [slot, d] : op.derivs) d.adjointInPlace();
  }
  op.mat_adj = op.mat.adjoint();
  op.ctrl_mask = ctrl;
  const std::size_t k = targets.size();
  op.target_bits.resize(k);
  for (std::size_t j = 0; j < k; ++j) op.target_bits[j] = bit(targets[j]);
  op.offsets.assign(std::size_t{1} << k, 0);
  for (std::size_t a = 0; a < op.offsets.size(); ++a) {
    std::uint64_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (a & (std::size_t{1} << (k - 1 - j))) off |= op.target_bits[j];
    }
    op.offsets[a] = static_cast<Eigen::Index>(off);
  }
}

void apply_local(ComplexMatrix& m, const LocalOp& op, const ComplexMatrix& mat) {
  const Eigen::Index rows = m.rows();
  const std::uint64_t ctrl = op.ctrl_mask;
  if (op.target_bits.size() == 1) {
    const std::uint64_t tb = op.target_bits[0];
    const Complex a = mat(0, 0), b = mat(0, 1), c = mat(1, 0), d = mat(1, 1);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      Complex* v = m.col(col).data();
      for (Eigen::Index r = 0; r < rows; ++r) {
        const auto ur = static_cast<std::uint64_t>(r);
        if ((ur & tb) || (ur & ctrl) != ctrl) continue;
        const Eigen::Index r1 = r | static_cast<Eigen::Index>(tb);
        const Complex x0 = v[r], x1 = v[r1];
        v[r] = a * x0 + b * x1;
        v[r1] = c * x0 + d * x1;
      }
    }
    return;
  }
  std::uint64_t tmask = 0;
  for (auto b : op.target_bits) tmask |= b;
  const Eigen::Index k = static_cast<Eigen::Index>(op.offsets.size());
  Eigen::VectorXcd in(k), out(k);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Complex* v = m.col(col).data();
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto ur = static_cast<std::uint64_t>(r);
      if ((ur & tmask) || (ur & ctrl) != ctrl) continue;
      for (Eigen::Index a = 0; a < k; ++a) in(a) = v[r + op.offsets[a]];
      out.noalias() = mat * in;
      for (Eigen::Index a = 0; a < k; ++a) v[r + op.offsets[a]] = out(a);
    }
  }
}

Complex local_inner(const ComplexMatrix& omega, const ComplexMatrix& s, const LocalOp& op,
                    const ComplexMatrix& d) {
  const Eigen::Index rows = s.rows();
  const std::uint64_t ctrl = op.ctrl_mask;
  Complex acc = 0.0;
  if (op.target_bits.size() == 1) {
    const std::uint64_t tb = op.target_bits[0];
    const Complex a = d(0, 0), b = d(0, 1), c = d(1, 0), e = d(1, 1);
    for (Eigen::Index col = 0; col < s.cols(); ++col) {
      const Complex* o = omega.col(col).data();
      const Complex* v = s.col(col).data();
      for (Eigen::Index r = 0; r < rows; ++r) {
        const auto ur = static_cast<std::uint64_t>(r);
        if ((ur & tb) || (ur & ctrl) != ctrl) continue;
        const Eigen::Index r1 = r | static_cast<Eigen::Index>(tb);
        acc += std::conj(o[r]) * (a * v[r] + b * v[r1]) + std::conj(o[r1]) * (c * v[r] + e * v[r1]);
      }
    }
    return acc;
  }
  std::uint64_t tmask = 0;
  for (auto b : op.target_bits) tmask |= b;
  const Eigen::Index k = static_cast<Eigen::Index>(op.offsets.size());
  Eigen::VectorXcd in(k), ov(k);
  for (Eigen::Index col = 0; col < s.cols(); ++col) {
    const Complex* o = omega.col(col).data();
    const Complex* v = s.col(col).data();
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto ur = static_cast<std::uint64_t>(r);
      if ((ur & tmask) || (ur & ctrl) != ctrl) continue;
      for (Eigen::Index a = 0; a < k; ++a) {
        in(a) = v[r + op.offsets[a]];
        ov(a) = o[r + op.offsets[a]];
      }
      acc += ov.dot(d * in);
    }
  }
  return acc;
}

}  // namespace detail

namespace {

void check_theta(const Circuit& c, std::span<const double> theta) {
  if (theta.size() != static_cast<std::size_t>(c.param_count)) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) +
                                ", circuit expects " + std::to_string(c.param_count));
  }
}

}  // namespace

ComplexMatrix evaluate(const Circuit& c, std::span<const double> theta) {
  check_theta(c, theta);
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  detail::LocalOp op;
  for (const auto& g : c.gates) {
    detail::build_local_op(g, c.num_qubits, theta, false, op);
    detail::apply_local(u, op, op.mat);
  }
  return u;
}

CircuitGradients evaluate_with_gradients(const Circuit& c, std::span<const double> theta) {
  check_theta(c, theta);
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits;
  CircuitGradients out;
  out.derivatives.assign(static_cast<std::size_t>(c.param_count), ComplexMatrix::Zero(dim, dim));

  // prefix[k] = G_k ... G_1; dU = U prefix[k]^dagger dG_k prefix[k-1].
  std::vector<ComplexMatrix> prefix;
  prefix.reserve(c.gates.size() + 1);
  prefix.push_back(ComplexMatrix::Identity(dim, dim));
  std::vector<detail::LocalOp> ops(c.gates.size());
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    detail::build_local_op(c.gates[k], c.num_qubits, theta, true, ops[k]);
    ComplexMatrix next = prefix.back();
    detail::apply_local(next, ops[k], ops[k].mat);
    prefix.push_back(std::move(next));
  }
  out.unitary = prefix.back();
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const auto& op = ops[k];
    for (const auto& [slot, d] : op.derivs) {
      // Derivative acts as d on the control subspace and vanishes elsewhere.
      ComplexMatrix dg = prefix[k];
      detail::apply_local(dg, op, d);
      for (Eigen::Index r = 0; r < dim; ++r) {
        if ((static_cast<std::uint64_t>(r) & op.ctrl_mask) != op.ctrl_mask) dg.row(r).setZero();
      }
      out.derivatives[static_cast<std::size_t>(slot)] += out.unitary * prefix[k + 1].adjoint() * dg;
    }
  }
  return out;
}

}  // namespace vbe
