#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vbe/numkit.hpp"

namespace vbe {

inline constexpr double kPruneTolerance = 1e-13;
inline constexpr double kRankTolerance = 1e-9;
inline constexpr int kMaxPauliQubits = 32;
inline constexpr int kMaxDenseQubits = 9;

// Symplectic Pauli string. Qubit q occupies bit (n-1-q) of both masks, so the
// masks read as the computational-basis index with qubit 0 most significant.
// The operator is i^{popcount(x & z)} X^x Z^z, i.e. Y = iXZ sitewise.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n);
  PauliString(int n, std::uint64_t x, std::uint64_t z);

  static PauliString parse(std::string_view letters);
  static PauliString single(int n, int qubit, char letter);

  int num_qubits() const { return n_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }

  char letter(int qubit) const;
  int weight() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  bool commutes_with(const PauliString& other) const;
  std::string str() const;

  // Dense index (x << n) | z, used by coefficient-vector closures.
  std::uint64_t index() const { return (x_ << n_) | z_; }
  static PauliString from_index(int n, std::uint64_t index);

  // Lexicographic on letters with I < X < Y < Z, qubit 0 first.
  std::strong_ordering operator<=>(const PauliString& other) const;
  bool operator==(const PauliString& other) const = default;

 private:
  std::uint64_t sort_key() const;

  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PhasedString {
  Complex phase;
  PauliString string;
};

// p*q = phase * r, phase in {1, i, -1, -i}.
PhasedString mul_strings(const PauliString& p, const PauliString& q);

class PauliSum {
 public:
  using TermMap = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}
  PauliSum(const PauliString& s, Complex c);

  static PauliSum identity(int n, Complex c = 1.0);

  int num_qubits() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Complex coefficient(const PauliString& s) const;

  void add_term(const PauliString& s, Complex c);
  void prune(double tol = kPruneTolerance);

  // sqrt of the sum of squared coefficient magnitudes.
  double norm() const;
  PauliSum adjoint() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex c);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
  friend PauliSum operator*(Complex c, PauliSum a) { return a *= c; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  bool operator==(const PauliSum& other) const = default;

 private:
  void check_width(int n) const;

  int n_ = 0;
  TermMap terms_;
};

PauliSum commutator(const PauliSum& a, const PauliSum& b);

ComplexMatrix to_dense(const PauliString& s);
ComplexMatrix to_dense(const PauliSum& s);
// Pauli decomposition of a 2^n square matrix.
PauliSum from_dense(const ComplexMatrix& m);

// True iff candidate lies outside the complex span of basis.
bool rank_extend(const std::vector<PauliSum>& basis, const PauliSum& candidate);

bool pairwise_commuting(const PauliSum& s);

// Applies the string to every column of a 2^n-row matrix in place.
void apply_string(const PauliString& s, ComplexMatrix& m);

// Text format: one term per line, "<re> <im> <letters>". Blank lines and lines
// starting with '#' are skipped. parse_pauli_sums splits sums on lines "---".
PauliSum parse_pauli_sum(std::string_view text);
std::vector<PauliSum> parse_pauli_sums(std::string_view text);
std::string format_pauli_sum(const PauliSum& s);
// Compact single-line form, e.g. "1i*ZZI + 1i*IZZ".
std::string pauli_sum_literal(const PauliSum& s);

std::ostream& operator<<(std::ostream& os, const PauliString& s);
std::ostream& operator<<(std::ostream& os, const PauliSum& s);

}  // namespace vbe
