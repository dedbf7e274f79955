#include <stdexcept>
#include <string>
#include <vector>

#include "vbe/circuit.hpp"

namespace vbe {

namespace {

// Entangling primitives of the generic block catalog.
enum class Primitive { RCN, RCNr, RCZ, CR, RCCZ, RnCZ, CNOT, CZ };

// Single-qubit layer placed at the start of a block for the bare-entangler
// blocks: general rotations, or Rx then Ry.
enum class Prefix { None, R, Rxy };

struct Placement {
  Primitive prim;
  std::vector<int> wires;  // two-qubit primitives: {upper, lower}
  bool reversed = false;   // control on the lower wire
};

struct BlockLayout {
  Prefix prefix = Prefix::None;
  std::vector<Placement> placements;
};

void chain_down(BlockLayout& b, Primitive p, int n) {
  for (int i = n - 2; i >= 0; --i) b.placements.push_back({p, {i, i + 1}});
}

void chain_up(BlockLayout& b, Primitive p, int n) {
  for (int i = 0; i + 1 < n; ++i) b.placements.push_back({p, {i, i + 1}});
}

void brick(BlockLayout& b, Primitive p, int n) {
  for (int i = 0; i + 1 < n; i += 2) b.placements.push_back({p, {i, i + 1}});
  for (int i = 1; i + 1 < n; i += 2) b.placements.push_back({p, {i, i + 1}});
}

BlockLayout block_layout(int id, int n) {
  BlockLayout b;
  switch (id) {
    case 0:
      b.prefix = Prefix::R;
      break;
    case 1:
      b.prefix = Prefix::R;
      for (int i = n - 2; i >= 0; --i) b.placements.push_back({Primitive::CNOT, {i, i + 1}});
      break;
    case 2:
      chain_down(b, Primitive::RCN, n);
      break;
    case 3:
      brick(b, Primitive::RCN, n);
      break;
    case 4:
      b.prefix = Prefix::Rxy;
      for (int i = n - 2; i >= 0; --i) b.placements.push_back({Primitive::CZ, {i, i + 1}});
      break;
    case 5:
      chain_down(b, Primitive::RCZ, n);
      break;
    case 6:
      chain_down(b, Primitive::CR, n);
      if (n >= 3) b.placements.push_back({Primitive::CR, {0, n - 1}, true});
      break;
    case 7:
      b.prefix = Prefix::R;
      for (int i = 0; i + 1 < n; ++i) b.placements.push_back({Primitive::CNOT, {i, i + 1}});
      if (n >= 3) b.placements.push_back({Primitive::CNOT, {0, n - 1}, true});
      break;
    case 8:
      chain_up(b, Primitive::RCN, n);
      if (n >= 3) b.placements.push_back({Primitive::RCN, {0, n - 1}, true});
      break;
    case 9:
      for (int k = 1; k < n; ++k) b.placements.push_back({Primitive::RCNr, {0, k}});
      break;
    case 10:
      for (int k = 1; k < n; ++k) b.placements.push_back({Primitive::RCNr, {0, k}, true});
      break;
    case 11:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) b.placements.push_back({Primitive::RCN, {i, j}});
      }
      break;
    case 12:
      if (n < 3) throw std::invalid_argument("block 12 needs at least 3 qubits");
      for (int i = 0; i + 2 < n; ++i) b.placements.push_back({Primitive::RCCZ, {i, i + 1, i + 2}});
      break;
    case 13: {
      std::vector<int> all;
      for (int q = 0; q < n; ++q) all.push_back(q);
      b.placements.push_back({Primitive::RnCZ, all});
      break;
    }
    case 14:
      b.placements.push_back({Primitive::RCNr, {0, 1}, true});
      for (int k = 2; k < n; ++k) b.placements.push_back({Primitive::RCNr, {1, k}});
      break;
    case 15:
      brick(b, Primitive::RCN, n);
      if (n >= 3) b.placements.push_back({Primitive::RCN, {0, n - 1}, true});
      break;
    default:
      throw std::invalid_argument("unknown block id " + std::to_string(id));
  }
  return b;
}

class Builder {
 public:
  Builder(int n, bool real) : real_(real) { c_.num_qubits = n; }

  void general(int q) {
    if (real_) {
      single(GateKind::RyOnly, q);
      return;
    }
    Gate g;
    g.kind = GateKind::GeneralR;
    g.qubits = {q};
    g.angles = {Angle::param(next()), Angle::param(next()), Angle::param(next())};
    c_.gates.push_back(g);
  }

  // Rx and Rz are dropped under the real restriction.
  void single(GateKind kind, int q) {
    if (real_ && (kind == GateKind::Rx || kind == GateKind::Rz)) return;
    Gate g;
    g.kind = kind;
    g.qubits = {q};
    g.angles[0] = Angle::param(next());
    c_.gates.push_back(g);
  }

  void fixed(GateKind kind, std::vector<int> qubits) {
    Gate g;
    g.kind = kind;
    g.qubits = std::move(qubits);
    c_.gates.push_back(g);
  }

  void controlled_rotation(int control, int target) {
    Gate g;
    g.kind = GateKind::ControlledR;
    g.qubits = {control, target};
    if (real_) {
      g.angles = {Angle::param(next()), Angle::fixed(0.0), Angle::fixed(0.0)};
    } else {
      g.angles = {Angle::param(next()), Angle::param(next()), Angle::param(next())};
    }
    c_.gates.push_back(g);
  }

  void place(const Placement& p) {
    const auto& w = p.wires;
    switch (p.prim) {
      case Primitive::RCN:
      case Primitive::RCNr:
      case Primitive::RCZ: {
        const int up = w[0], lo = w[1];
        if (p.prim == Primitive::RCN) {
          single(GateKind::RyOnly, up);
          single(GateKind::Rx, up);
          single(GateKind::RyOnly, lo);
          single(GateKind::Rz, lo);
        } else if (p.prim == Primitive::RCNr) {
          single(GateKind::Rz, up);
          single(GateKind::RyOnly, up);
          single(GateKind::Rx, lo);
          single(GateKind::RyOnly, lo);
        } else {
          for (int q : {up, lo}) {
            single(GateKind::Rx, q);
            single(GateKind::RyOnly, q);
          }
        }
        if (p.prim == Primitive::RCZ) {
          fixed(GateKind::CZ, {up, lo});
        } else {
          fixed(GateKind::CNOT, p.reversed ? std::vector<int>{lo, up} : std::vector<int>{up, lo});
        }
        break;
      }
      case Primitive::CR: {
        const int ctrl = p.reversed ? w[1] : w[0];
        const int tgt = p.reversed ? w[0] : w[1];
        general(ctrl);
        controlled_rotation(ctrl, tgt);
        break;
      }
      case Primitive::RCCZ:
      case Primitive::RnCZ:
        for (int q : w) {
          single(GateKind::Rx, q);
          single(GateKind::RyOnly, q);
        }
        fixed(w.size() == 2 ? GateKind::CZ : (w.size() == 3 && p.prim == Primitive::RCCZ ? GateKind::CCZ : GateKind::NCZ), w);
        break;
      case Primitive::CNOT:
        fixed(GateKind::CNOT, p.reversed ? std::vector<int>{w[1], w[0]} : w);
        break;
      case Primitive::CZ:
        fixed(GateKind::CZ, w);
        break;
    }
  }

  int next() { return c_.param_count++; }
  Circuit& circuit() { return c_; }

 private:
  bool real_;
  Circuit c_;
};

}  // namespace

int block_entangler_width(int block, int total_qubits) {
  if (block == 12) return 3;
  if (block == 13) return total_qubits;
  return 2;
}

Circuit build_generic_ansatz(const AnsatzSpec& spec) {
  spec.validate();
  const auto* fam = std::get_if<GenericFamily>(&spec.family);
  if (!fam) throw std::invalid_argument("build_generic_ansatz: not a generic block family");
  const int n = spec.total_qubits();
  if (n < 2) throw std::invalid_argument("build_generic_ansatz: need at least 2 qubits");
  const BlockLayout layout = block_layout(fam->block, n);
  Builder b(n, spec.restriction == Restriction::Real);
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int q = 0; q < n; ++q) {
      if (layout.prefix == Prefix::R) {
        b.general(q);
      } else if (layout.prefix == Prefix::Rxy) {
        b.single(GateKind::Rx, q);
        b.single(GateKind::RyOnly, q);
      }
    }
    for (const auto& p : layout.placements) b.place(p);
  }
  const int before = b.circuit().param_count;
  for (int q = 0; q < n; ++q) b.general(q);
  Circuit c = std::move(b.circuit());
  c.num_ancillas = spec.ancillas;
  c.layers = spec.layers;
  c.appended_params = c.param_count - before;
  return c;
}

}  // namespace vbe
