#pragma once

#include <cstdint>
#include <string>

#include "vbe/circuit.hpp"
#include "vbe/pauli.hpp"
#include "vbe/symmetry.hpp"
#include "vbe/targets.hpp"

namespace vbe {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

struct BoundQuery {
  int n = 1;
  int total_qubits = 2;
  Field field = Field::Complex;
  Structure structure = Structure::Arbitrary;
  Rational a{4};
};

std::int64_t free_parameter_bound(int n, Field field, Structure structure);

// ceil((2 * 4^n - 3(n+1)) / 4): CNOTs for a complex matrix with one ancilla.
std::int64_t tlb_cnot(int n);

// ceil((N_p - k N) / a) with k = 3 for complex and 1 for real circuits.
std::int64_t nonlocal_gate_bound(const BoundQuery& q);

// Parameters outside the appended single-qubit layer per native multi-qubit
// gate (see count_native_entanglers). Hermitized circuits count both halves.
Rational a_ratio(const Circuit& c);

// Parameters of one layer divided by native gates of one layer, for a generic
// block on N qubits.
Rational block_a_ratio(int block, int total_qubits, Restriction r = Restriction::Complex);

// Jacobian rank gained per added layer divided by native gates per layer, at a
// random parameter point of the generic block. Equals block_a_ratio when no
// parameter of the new layer is redundant.
double effective_block_a_ratio(int block, int total_qubits, int layers, std::uint64_t seed);

// One parameter per six two-qubit gates per bond string of a generator:
// 1/(6(n-1)), 1/(6n), 1/(3n(n-1)) for Z2xz, Cn and Sn.
Rational symmetric_a_ratio(SymmetryKind kind, int n);

// ceil((N_p - appended) / (a * nlg)), never negative. appended is the
// parameter count of the final single-qubit layer (3N complex, N real).
int threshold_layers_generic(std::int64_t n_p, std::int64_t appended, Rational a, int nlg_per_layer);

struct GenericThreshold {
  int layers = 0;
  std::int64_t free_params = 0;
  int appended = 0;
  Rational a;
  int nlg_per_layer = 0;
};

// Threshold layer count of a generic block for a 2^n target. Hermitized
// circuits use the a-ratio and gate count of one half.
GenericThreshold generic_threshold(int block, int n, int ancillas, Restriction r, bool hermitian);

enum class SymmetricThresholdMode { LiteralFormula, ParamInversion };
const char* threshold_mode_name(SymmetricThresholdMode m);

// LiteralFormula: ceil(q dimB / 3 - 3). ParamInversion: least M with
// 3M + 3 >= q dimB.
int threshold_layers_symmetric(std::int64_t dim_b, int q, SymmetricThresholdMode mode);

struct LcuEstimate {
  int ancillas = 0;
  int term_count = 0;
  std::int64_t prepare_cnots = 0;
  std::int64_t select_cnots = 0;
  std::int64_t cnot_count = 0;
  bool prepare_counted_twice = true;
  std::string model;
};

LcuEstimate lcu_estimate(const PauliSum& h, const GateCostModel& model = {});

}  // namespace vbe
