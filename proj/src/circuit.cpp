#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "vbe/circuit.hpp"

namespace vbe {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw std::invalid_argument(msg); }

std::size_t expected_qubit_count(const Gate& g, int num_qubits) {
  switch (g.kind) {
    case GateKind::GeneralR:
    case GateKind::RyOnly:
    case GateKind::Rx:
    case GateKind::Rz:
    case GateKind::Hadamard: return 1;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::ControlledR: return 2;
    case GateKind::CCZ: return 3;
    case GateKind::NCZ: return g.qubits.size() >= 2 ? g.qubits.size() : 2;
    case GateKind::PauliGadget:
      return g.generator ? static_cast<std::size_t>(g.generator->num_qubits()) : 0;
    case GateKind::ControlledPauliGadget:
      return g.generator ? static_cast<std::size_t>(g.generator->num_qubits()) + 1 : 0;
  }
  (void)num_qubits;
  return 0;
}

}  // namespace

void Circuit::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits + 3) invalid("circuit: unsupported qubit count");
  if (num_ancillas < 0 || num_ancillas > num_qubits) invalid("circuit: bad ancilla count");
  std::vector<int> uses(static_cast<std::size_t>(param_count), 0);
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const Gate& g = gates[k];
    const std::string where = "gate " + std::to_string(k) + " (" + gate_kind_name(g.kind) + ")";
    if ((g.kind == GateKind::PauliGadget || g.kind == GateKind::ControlledPauliGadget) && !g.generator) {
      invalid(where + ": gadget without generator");
    }
    if (g.qubits.size() != expected_qubit_count(g, num_qubits)) invalid(where + ": wrong number of qubits");
    std::set<int> seen;
    for (int q : g.qubits) {
      if (q < 0 || q >= num_qubits) invalid(where + ": qubit index out of range");
      if (!seen.insert(q).second) invalid(where + ": repeated qubit");
    }
    for (int q : g.controls) {
      if (q < 0 || q >= num_qubits) invalid(where + ": control index out of range");
      if (!seen.insert(q).second) invalid(where + ": repeated qubit");
    }
    for (int s : g.slots()) {
      if (s >= param_count) invalid(where + ": parameter slot out of range");
      ++uses[static_cast<std::size_t>(s)];
    }
  }
  const int allowed = mirror_center ? 2 : 1;
  for (std::size_t s = 0; s < uses.size(); ++s) {
    if (uses[s] != allowed) {
      invalid("circuit: parameter slot " + std::to_string(s) + " referenced " + std::to_string(uses[s]) +
              " times, expected " + std::to_string(allowed));
    }
  }
}

void AnsatzSpec::validate() const {
  if (layers < 0) invalid("ansatz: negative layer count");
  if (system_qubits < 1) invalid("ansatz: need at least one system qubit");
  if (ancillas < 1) invalid("ansatz: need at least one ancilla");
  if (const auto* gen = std::get_if<GenericFamily>(&family)) {
    if (gen->block < 0 || gen->block >= kNumGenericBlocks) {
      invalid("ansatz: unknown block id " + std::to_string(gen->block));
    }
  } else {
    const auto& g = std::get<GqspFamily>(family);
    if (ancillas != 1) invalid("ansatz: GQSP family requires exactly one ancilla");
    if (g.generators.empty()) invalid("ansatz: GQSP family without generators");
    for (const auto& p : g.generators) {
      if (p.num_qubits() != system_qubits) invalid("ansatz: generator width differs from system size");
    }
    if (!g.sequence.empty()) {
      if (static_cast<int>(g.sequence.size()) != layers) invalid("ansatz: sequence length differs from layers");
      for (int idx : g.sequence) {
        if (idx < 0 || idx >= static_cast<int>(g.generators.size())) invalid("ansatz: sequence index out of range");
      }
    }
  }
}

Circuit build_gqsp_ansatz(const std::vector<PauliSum>& sequence, int n) {
  if (n < 1) invalid("build_gqsp_ansatz: need at least one system qubit");
  Circuit c;
  c.num_qubits = n + 1;
  c.num_ancillas = 1;
  c.layers = static_cast<int>(sequence.size());
  std::vector<int> system(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) system[static_cast<std::size_t>(q)] = q + 1;

  Gate r0;
  r0.kind = GateKind::GeneralR;
  r0.qubits = {0};
  r0.angles = {Angle::param(0), Angle::param(1), Angle::param(2)};
  c.gates.push_back(r0);
  int slot = 3;
  c.appended_params = 3;
  for (const auto& g : sequence) {
    if (g.num_qubits() != n) {
      invalid("build_gqsp_ansatz: generator acts on " + std::to_string(g.num_qubits()) +
              " qubits, expected " + std::to_string(n));
    }
    Gate cp;
    cp.kind = GateKind::ControlledPauliGadget;
    cp.qubits = {0};
    cp.qubits.insert(cp.qubits.end(), system.begin(), system.end());
    cp.generator = std::make_shared<GadgetGenerator>(g);
    cp.angles[0] = Angle::param(slot++);
    c.gates.push_back(cp);
    Gate r;
    r.kind = GateKind::GeneralR;
    r.qubits = {0};
    r.angles = {Angle::param(slot), Angle::param(slot + 1), Angle::fixed(0.0)};
    slot += 2;
    c.gates.push_back(r);
  }
  c.param_count = slot;
  return c;
}

Circuit build_ansatz(const AnsatzSpec& spec, std::span<const int> sequence) {
  spec.validate();
  Circuit c;
  if (const auto* g = std::get_if<GqspFamily>(&spec.family)) {
    std::vector<int> seq(sequence.begin(), sequence.end());
    if (seq.empty()) seq = g->sequence;
    if (static_cast<int>(seq.size()) != spec.layers) {
      invalid("build_ansatz: GQSP family needs a generator sequence of length " + std::to_string(spec.layers));
    }
    std::vector<PauliSum> gens;
    for (int idx : seq) {
      if (idx < 0 || idx >= static_cast<int>(g->generators.size())) invalid("build_ansatz: sequence index out of range");
      gens.push_back(g->generators[static_cast<std::size_t>(idx)]);
    }
    c = build_gqsp_ansatz(gens, spec.system_qubits);
    if (spec.hermitian) c = hermitize(c, VChoice::AncillaHadamard);
  } else {
    c = build_generic_ansatz(spec);
    if (spec.hermitian) c = hermitize(c, VChoice::AllHadamard);
  }
  return c;
}

Circuit hermitize(const Circuit& c, VChoice v) {
  Circuit out = c;
  out.gates.clear();
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    g.adjoint = !g.adjoint;
    out.gates.push_back(g);
  }
  const std::size_t first = out.gates.size();
  const int vq = v == VChoice::AllHadamard ? c.num_qubits : std::max(c.num_ancillas, 1);
  for (int q = 0; q < vq; ++q) {
    Gate h;
    h.kind = GateKind::Hadamard;
    h.qubits = {q};
    out.gates.push_back(h);
  }
  out.mirror_center = std::make_pair(first, out.gates.size());
  out.gates.insert(out.gates.end(), c.gates.begin(), c.gates.end());
  return out;
}

Circuit controlled(const Circuit& c) {
  Circuit out = c;
  out.num_qubits = c.num_qubits + 1;
  for (std::size_t k = 0; k < out.gates.size(); ++k) {
    Gate& g = out.gates[k];
    for (int& q : g.qubits) ++q;
    for (int& q : g.controls) ++q;
    const bool attach = !c.mirror_center || (k >= c.mirror_center->first && k < c.mirror_center->second);
    if (attach) g.controls.insert(g.controls.begin(), 0);
  }
  return out;
}

int count_parameters(const Circuit& c) { return c.param_count; }

int count_nonlocal_gates(const Circuit& c, const GateCostModel& model) {
  int total = 0;
  for (const auto& g : c.gates) total += model.gate_cost(g);
  return total;
}

int count_native_entanglers(const Circuit& c) {
  const GateCostModel model;
  int total = 0;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::CNOT:
      case GateKind::CZ:
      case GateKind::CCZ:
      case GateKind::NCZ: total += 1; break;
      case GateKind::ControlledR: total += 2; break;
      default: total += model.gate_cost(g); break;
    }
  }
  return total;
}

}  // namespace vbe
