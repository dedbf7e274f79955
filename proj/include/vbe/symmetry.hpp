#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vbe/numkit.hpp"
#include "vbe/pauli.hpp"

namespace vbe {

enum class SymmetryKind { Z2, Z2xz, Cn, Sn };

const char* symmetry_name(SymmetryKind k);
SymmetryKind parse_symmetry(std::string_view s);

// Z2: X^n. Z2xz: qubit reversal. Cn: one-site cyclic shift (qubit q -> q+1).
// Sn: the n-1 adjacent SWAPs.
std::vector<ComplexMatrix> symmetry_matrix(SymmetryKind kind, int n);

// ||HS - SH||_F
double check_invariance(const ComplexMatrix& h, const ComplexMatrix& s);

struct GeneratorSet {
  int n = 0;
  std::vector<PauliSum> generators;
  std::string label;
};

// Anti-hermitian generators built from the Heisenberg terms, grouped so that
// each generator is invariant under the symmetry.
GeneratorSet heisenberg_generator_set(SymmetryKind kind, int n);

struct ClosureOptions {
  // 0 means the default cap: 4^n - 1 for the Lie basis, 4^n for the algebra.
  std::size_t cap = 0;
};

class ClosureCapExceeded : public std::runtime_error {
 public:
  ClosureCapExceeded(const std::string& what, std::size_t dim_l, std::size_t dim_b)
      : std::runtime_error(what), dim_l_(dim_l), dim_b_(dim_b) {}
  std::size_t dim_l() const { return dim_l_; }
  std::size_t dim_b() const { return dim_b_; }

 private:
  std::size_t dim_l_, dim_b_;
};

// Basis of the Lie algebra generated by the set. Every basis element is
// bracketed with every generator until the span stops growing.
std::vector<PauliSum> lie_closure(const GeneratorSet& g, const ClosureOptions& opts = {});

// Basis of the unital associative algebra generated by l: starts from {I} and
// l and multiplies on the left by the multipliers (l itself when empty) until
// the span stops growing.
std::vector<PauliSum> associative_closure(const std::vector<PauliSum>& l,
                                          const std::vector<PauliSum>& multipliers = {},
                                          const ClosureOptions& opts = {});

struct ClosureBasis {
  std::vector<PauliSum> lie;
  std::vector<PauliSum> algebra;
  std::size_t dim_l() const { return lie.size(); }
  std::size_t dim_b() const { return algebra.size(); }
};

ClosureBasis compute_closure(const GeneratorSet& g, const ClosureOptions& opts = {});

struct Expressibility {
  bool expressible = false;
  double residual = 0.0;  // Frobenius norm of the part of m outside span(b)
};

Expressibility expressible(const ComplexMatrix& m, const std::vector<PauliSum>& b);

// max over elements and symmetries of ||S B S^dagger - B||_F
double symmetric_invariance_check(const std::vector<PauliSum>& b, const std::vector<ComplexMatrix>& syms);

struct SequenceOptions {
  int power_cap = 8;
  std::size_t product_cap = 1'000'000;
};

// Span of all products T_M ... T_1 with T_i drawn from the power basis
// {I, G_i, G_i^2, ...} of the i-th generator. Spans are reduced to a basis
// after every factor; product_cap bounds the number of products formed.
std::vector<PauliSum> expressibility_by_sequence(const std::vector<PauliSum>& generators,
                                                 const SequenceOptions& opts = {});

// Complex span of string-indexed coefficient vectors with an orthonormal
// companion basis, used for membership tests.
class PauliSpan {
 public:
  explicit PauliSpan(int n);

  int num_qubits() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Eigen::VectorXcd>& elements() const { return elements_; }

  // Adds v if it extends the span; returns whether it did. v counts as zero
  // when its norm is at most kRankTolerance * scale, where scale bounds the
  // magnitude of the computation that produced it.
  bool try_add(const Eigen::VectorXcd& v, double scale = 0.0);
  bool contains(const Eigen::VectorXcd& v) const;
  // Norm of the component of v orthogonal to the span.
  double residual(const Eigen::VectorXcd& v) const;

  Eigen::VectorXcd to_vector(const PauliSum& s) const;
  PauliSum to_sum(const Eigen::VectorXcd& v) const;

 private:
  Eigen::VectorXcd orthogonal_part(const Eigen::VectorXcd& v) const;

  int n_;
  std::vector<Eigen::VectorXcd> elements_;
  std::vector<Eigen::VectorXcd> ortho_;
};

}  // namespace vbe
