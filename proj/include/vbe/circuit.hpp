#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vbe/numkit.hpp"
#include "vbe/pauli.hpp"

namespace vbe {

enum class GateKind {
  GeneralR,
  RyOnly,
  Rx,
  Rz,
  Hadamard,
  CNOT,
  CZ,
  CCZ,
  NCZ,
  ControlledR,
  PauliGadget,
  ControlledPauliGadget,
};

const char* gate_kind_name(GateKind kind);

// Anti-hermitian generator G of a gadget exp(theta G), with the data needed to
// exponentiate it repeatedly.
class GadgetGenerator {
 public:
  explicit GadgetGenerator(PauliSum g);

  const PauliSum& sum() const { return g_; }
  int num_qubits() const { return g_.num_qubits(); }
  bool commuting() const { return commuting_; }

  ComplexMatrix unitary(double theta) const;
  // d/dtheta exp(theta G) = G exp(theta G)
  ComplexMatrix derivative(double theta) const;

 private:
  PauliSum g_;
  bool commuting_ = false;
  ComplexMatrix eigenvectors_;
  RealVector eigenvalues_;  // of the hermitian matrix i*G
};

// An angle is either a parameter slot or a fixed value.
struct Angle {
  int slot = -1;
  double value = 0.0;

  static Angle param(int s) { return {s, 0.0}; }
  static Angle fixed(double v) { return {-1, v}; }
  bool is_param() const { return slot >= 0; }
};

struct Gate {
  GateKind kind = GateKind::Hadamard;
  // CNOT, ControlledR: {control, target}. CZ, CCZ, NCZ: all participating
  // qubits. PauliGadget: the system qubits in string order.
  // ControlledPauliGadget: {control, system qubits...}.
  std::vector<int> qubits;
  // Additional controls attached by controlled().
  std::vector<int> controls;
  // GeneralR and ControlledR use (theta, phi, lambda); single-angle kinds use
  // angles[0]; fixed gates use none.
  std::array<Angle, 3> angles{};
  std::shared_ptr<const GadgetGenerator> generator;
  bool adjoint = false;

  int angle_count() const;
  std::vector<int> slots() const;
};

struct Circuit {
  int num_qubits = 0;
  int num_ancillas = 0;
  int param_count = 0;
  std::vector<Gate> gates;

  // Bookkeeping used by resource estimates.
  int layers = 0;
  int appended_params = 0;
  // Gate index range [first, last) of V in hermitized circuits.
  std::optional<std::pair<std::size_t, std::size_t>> mirror_center;

  int system_qubits() const { return num_qubits - num_ancillas; }
  // Throws std::invalid_argument if any structural invariant fails.
  void validate() const;
};

enum class Restriction { Complex, Real };
enum class VChoice { AllHadamard, AncillaHadamard };

struct GenericFamily {
  int block = 2;
};

struct GqspFamily {
  std::vector<PauliSum> generators;
  // Optional fixed layer sequence (indices into generators), length == layers.
  std::vector<int> sequence;
  std::string label;
};

struct AnsatzSpec {
  std::variant<GenericFamily, GqspFamily> family = GenericFamily{};
  int layers = 1;
  Restriction restriction = Restriction::Complex;
  bool hermitian = false;
  int ancillas = 1;
  int system_qubits = 1;

  bool is_gqsp() const { return std::holds_alternative<GqspFamily>(family); }
  int total_qubits() const { return system_qubits + ancillas; }
  void validate() const;
};

ComplexMatrix single_qubit_R(double theta, double phi, double lambda);
ComplexMatrix pauli_gadget_unitary(const PauliSum& g, double theta);

inline constexpr int kNumGenericBlocks = 16;

Circuit build_generic_ansatz(const AnsatzSpec& spec);
Circuit build_gqsp_ansatz(const std::vector<PauliSum>& sequence, int n);
// Dispatches on the family; for GQSP uses spec's sequence, or the supplied one.
Circuit build_ansatz(const AnsatzSpec& spec, std::span<const int> sequence = {});
Circuit hermitize(const Circuit& c, VChoice v);
Circuit controlled(const Circuit& c);

// Number of qubits spanned by one entangler of the block (2, 3 or N).
int block_entangler_width(int block, int total_qubits);

ComplexMatrix evaluate(const Circuit& c, std::span<const double> theta);

struct CircuitGradients {
  ComplexMatrix unitary;
  std::vector<ComplexMatrix> derivatives;  // one per parameter slot
};
CircuitGradients evaluate_with_gradients(const Circuit& c, std::span<const double> theta);

// Pricing of non-local gates in CNOT equivalents.
struct GateCostModel {
  std::string name = "default";
  int two_control_pauli = 6;     // CCZ / Toffoli
  int multi_control_slope = 16;  // c >= 3 controls: slope * (c - 1)
  int controlled_rotation = 2;   // single-control rotation

  int controlled_pauli(int controls) const;
  int controlled_rotation_cost(int controls) const;
  int gate_cost(const Gate& g) const;
};

int count_parameters(const Circuit& c);
int count_nonlocal_gates(const Circuit& c, const GateCostModel& model = {});
// Multi-qubit gates counted natively: CNOT, CZ, CCZ and NCZ count one, a
// controlled rotation counts two, gadgets are priced by the default model.
int count_native_entanglers(const Circuit& c);

std::string dump_circuit(const Circuit& c);

}  // namespace vbe
