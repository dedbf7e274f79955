#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vbe/circuit.hpp"

namespace vbe::detail {

// A gate reduced to a matrix on its target qubits, conditioned on the control
// bits being set. targets[0] is the most significant local index bit.
struct LocalOp {
  std::vector<std::uint64_t> target_bits;
  std::uint64_t ctrl_mask = 0;
  std::vector<Eigen::Index> offsets;  // row offset for each local index
  ComplexMatrix mat;
  ComplexMatrix mat_adj;
  // (slot, derivative matrix) for each parameterized angle.
  std::vector<std::pair<int, ComplexMatrix>> derivs;
};

// Fills op for gate g at theta. Derivatives are filled when with_derivs.
void build_local_op(const Gate& g, int num_qubits, std::span<const double> theta,
                    bool with_derivs, LocalOp& op);

// m <- (local mat on the control subspace) m, rows indexed over num_qubits.
void apply_local(ComplexMatrix& m, const LocalOp& op, const ComplexMatrix& mat);

// sum over columns of <omega, D s> restricted to the control subspace.
Complex local_inner(const ComplexMatrix& omega, const ComplexMatrix& s, const LocalOp& op,
                    const ComplexMatrix& d);

}  // namespace vbe::detail
