#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vbe/numkit.hpp"
#include "vbe/pauli.hpp"
#include "vbe/symmetry.hpp"

namespace vbe {

enum class Lattice { Chain, Ring, Complete };

const char* lattice_name(Lattice l);
Lattice parse_lattice(const std::string& s);

struct HeisenbergParams {
  int n = 2;
  double jx = 1.0, jy = 1.0, jz = 1.0;
  double h = 0.0;
  bool periodic = false;
  // Complete couples every pair; otherwise periodic selects Chain or Ring.
  bool all_to_all = false;
  // Optional per-bond (Jx, Jy, Jz) and per-site fields overriding the uniform
  // values; bonds are listed in the order of heisenberg_bonds().
  std::vector<std::array<double, 3>> bond_couplings;
  std::vector<double> site_fields;

  Lattice lattice() const;
};

std::vector<std::pair<int, int>> heisenberg_bonds(int n, Lattice lattice);

// sum over bonds of Jx XX + Jy YY + Jz ZZ, plus h sum X.
PauliSum heisenberg_pauli(const HeisenbergParams& p);
ComplexMatrix heisenberg(const HeisenbergParams& p);

// Random couplings for a symmetric target: one (Jx, Jy, Jz, h) tuple shared by
// all bonds (Cn, Sn); for Z2xz each mirror pair of bonds and sites draws its own
// values. Uniform in [-1, 1].
HeisenbergParams random_symmetric_heisenberg(SymmetryKind kind, int n, std::uint64_t seed);

enum class Field { Complex, Real };
enum class Structure { Arbitrary, Hermitian, Unitary };

const char* field_name(Field f);
const char* structure_name(Structure s);

// Entries uniform in [-1, 1] (plus i * uniform for Complex); Hermitian
// structure symmetrizes with (M + M^dagger)/2.
ComplexMatrix random_matrix(int n, Field field, Structure structure, std::uint64_t seed);

ComplexMatrix random_span_sample(const std::vector<PauliSum>& b, bool hermitian, std::uint64_t seed);

// Smallest power-of-two square embedding with the input in the top-left.
ComplexMatrix zero_pad(const ComplexMatrix& a);

// CSV: one matrix row per line, entries "re,im" separated by commas.
ComplexMatrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const ComplexMatrix& m);
// Binary: uint32 rows, uint32 cols, then row-major (re, im) float64 pairs,
// all little-endian.
ComplexMatrix read_matrix_binary(std::istream& in);
void write_matrix_binary(std::ostream& out, const ComplexMatrix& m);
// Picks the format from the extension (.csv or .bin).
ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const ComplexMatrix& m);

}  // namespace vbe
