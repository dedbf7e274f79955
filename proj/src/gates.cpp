#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "vbe/circuit.hpp"

namespace vbe {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::GeneralR: return "GeneralR";
    case GateKind::RyOnly: return "RyOnly";
    case GateKind::Rx: return "Rx";
    case GateKind::Rz: return "Rz";
    case GateKind::Hadamard: return "Hadamard";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CCZ: return "CCZ";
    case GateKind::NCZ: return "NCZ";
    case GateKind::ControlledR: return "ControlledR";
    case GateKind::PauliGadget: return "PauliGadget";
    case GateKind::ControlledPauliGadget: return "ControlledPauliGadget";
  }
  return "?";
}

GadgetGenerator::GadgetGenerator(PauliSum g) : g_(std::move(g)) {
  if (g_.num_qubits() > kMaxDenseQubits) {
    throw std::invalid_argument("gadget generator acts on too many qubits");
  }
  for (const auto& [p, c] : g_.terms()) {
    if (std::abs(c.real()) > 1e-12) {
      throw std::invalid_argument("gadget generator is not anti-hermitian: " + pauli_sum_literal(g_));
    }
  }
  commuting_ = pairwise_commuting(g_);
  if (!commuting_) {
    const ComplexMatrix h = Complex(0.0, 1.0) * to_dense(g_);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    eigenvectors_ = es.eigenvectors();
    eigenvalues_ = es.eigenvalues();
  }
}

ComplexMatrix GadgetGenerator::unitary(double theta) const {
  const Eigen::Index dim = Eigen::Index{1} << g_.num_qubits();
  if (commuting_) {
    // exp(theta * i r P) = cos(theta r) I + i sin(theta r) P for each string.
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    ComplexMatrix pm(dim, dim);
    for (const auto& [p, c] : g_.terms()) {
      const double a = theta * c.imag();
      pm = m;
      apply_string(p, pm);
      m = std::cos(a) * m + Complex(0.0, std::sin(a)) * pm;
    }
    return m;
  }
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::exp(Complex(0.0, -theta * eigenvalues_(k)));
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexMatrix GadgetGenerator::derivative(double theta) const {
  const ComplexMatrix u = unitary(theta);
  ComplexMatrix out = ComplexMatrix::Zero(u.rows(), u.cols());
  ComplexMatrix pu(u.rows(), u.cols());
  for (const auto& [p, c] : g_.terms()) {
    pu = u;
    apply_string(p, pu);
    out += c * pu;
  }
  return out;
}

int Gate::angle_count() const {
  switch (kind) {
    case GateKind::GeneralR:
    case GateKind::ControlledR: return 3;
    case GateKind::RyOnly:
    case GateKind::Rx:
    case GateKind::Rz:
    case GateKind::PauliGadget:
    case GateKind::ControlledPauliGadget: return 1;
    default: return 0;
  }
}

std::vector<int> Gate::slots() const {
  std::vector<int> out;
  for (int k = 0; k < angle_count(); ++k) {
    if (angles[k].is_param()) out.push_back(angles[k].slot);
  }
  return out;
}

ComplexMatrix single_qubit_R(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m(0, 0) = c;
  m(0, 1) = -std::exp(Complex(0.0, lambda)) * s;
  m(1, 0) = std::exp(Complex(0.0, phi)) * s;
  m(1, 1) = std::exp(Complex(0.0, phi + lambda)) * c;
  return m;
}

ComplexMatrix pauli_gadget_unitary(const PauliSum& g, double theta) {
  return GadgetGenerator(g).unitary(theta);
}

int GateCostModel::controlled_pauli(int controls) const {
  if (controls <= 0) return 0;
  if (controls == 1) return 1;
  if (controls == 2) return two_control_pauli;
  return multi_control_slope * (controls - 1);
}

int GateCostModel::controlled_rotation_cost(int controls) const {
  if (controls <= 0) return 0;
  if (controls == 1) return controlled_rotation;
  return 2 * controlled_pauli(controls);
}

int GateCostModel::gate_cost(const Gate& g) const {
  const int extra = static_cast<int>(g.controls.size());
  switch (g.kind) {
    case GateKind::GeneralR:
    case GateKind::RyOnly:
    case GateKind::Rx:
    case GateKind::Rz: return controlled_rotation_cost(extra);
    case GateKind::Hadamard: return controlled_pauli(extra);
    case GateKind::CNOT:
    case GateKind::CZ: return controlled_pauli(1 + extra);
    case GateKind::CCZ: return controlled_pauli(2 + extra);
    case GateKind::NCZ: return controlled_pauli(static_cast<int>(g.qubits.size()) - 1 + extra);
    case GateKind::ControlledR: return controlled_rotation_cost(1 + extra);
    case GateKind::PauliGadget:
    case GateKind::ControlledPauliGadget: {
      const int ctrl = extra + (g.kind == GateKind::ControlledPauliGadget ? 1 : 0);
      int total = 0;
      for (const auto& [p, c] : g.generator->sum().terms()) {
        const int w = p.weight();
        if (w == 0) {
          // Global phase; with controls it becomes a phase rotation on them.
          total += ctrl <= 1 ? 0 : controlled_rotation_cost(ctrl - 1);
        } else {
          total += 2 * (w - 1) + controlled_rotation_cost(ctrl);
        }
      }
      return total;
    }
  }
  return 0;
}

std::string dump_circuit(const Circuit& c) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "circuit qubits=" << c.num_qubits << " ancillas=" << c.num_ancillas
     << " params=" << c.param_count << '\n';
  for (const auto& g : c.gates) {
    os << gate_kind_name(g.kind) << (g.adjoint ? "^dag" : "") << " q=";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) os << (i ? "," : "") << g.qubits[i];
    if (!g.controls.empty()) {
      os << " c=";
      for (std::size_t i = 0; i < g.controls.size(); ++i) os << (i ? "," : "") << g.controls[i];
    }
    if (g.angle_count() > 0) {
      os << " p=";
      for (int k = 0; k < g.angle_count(); ++k) {
        if (k) os << ',';
        if (g.angles[k].is_param()) {
          os << g.angles[k].slot;
        } else {
          os << '=' << g.angles[k].value;
        }
      }
    }
    if (g.generator) os << " g=" << pauli_sum_literal(g.generator->sum());
    os << '\n';
  }
  return os.str();
}

}  // namespace vbe
