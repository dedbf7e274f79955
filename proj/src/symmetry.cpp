#include "vbe/symmetry.hpp"

#include <string>

namespace vbe {

const char* symmetry_name(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::Z2: return "Z2";
    case SymmetryKind::Z2xz: return "Z2xz";
    case SymmetryKind::Cn: return "Cn";
    case SymmetryKind::Sn: return "Sn";
  }
  return "?";
}

SymmetryKind parse_symmetry(std::string_view s) {
  if (s == "Z2") return SymmetryKind::Z2;
  if (s == "Z2xz") return SymmetryKind::Z2xz;
  if (s == "Cn") return SymmetryKind::Cn;
  if (s == "Sn") return SymmetryKind::Sn;
  throw std::invalid_argument("unknown symmetry '" + std::string(s) + "' (expected Z2, Z2xz, Cn or Sn)");
}

namespace {

// Matrix of the basis permutation that moves qubit q to position perm[q].
ComplexMatrix qubit_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::Index out = 0;
    for (int q = 0; q < n; ++q) {
      if (b & (Eigen::Index{1} << (n - 1 - q))) out |= Eigen::Index{1} << (n - 1 - perm[static_cast<std::size_t>(q)]);
    }
    m(out, b) = 1.0;
  }
  return m;
}

PauliSum two_site(int n, int i, int j, char a) {
  std::string s(static_cast<std::size_t>(n), 'I');
  s[static_cast<std::size_t>(i)] = a;
  s[static_cast<std::size_t>(j)] = a;
  return PauliSum(PauliString::parse(s), 1.0);
}

PauliSum one_site(int n, int i, char a) { return PauliSum(PauliString::single(n, i, a), 1.0); }

}  // namespace

std::vector<ComplexMatrix> symmetry_matrix(SymmetryKind kind, int n) {
  if (n < 2) throw std::invalid_argument("symmetry_matrix: need n >= 2");
  if (n > kMaxDenseQubits) throw std::invalid_argument("symmetry_matrix: too many qubits");
  std::vector<int> perm(static_cast<std::size_t>(n));
  switch (kind) {
    case SymmetryKind::Z2: return {to_dense(PauliString::parse(std::string(static_cast<std::size_t>(n), 'X')))};
    case SymmetryKind::Z2xz:
      for (int q = 0; q < n; ++q) perm[static_cast<std::size_t>(q)] = n - 1 - q;
      return {qubit_permutation(perm)};
    case SymmetryKind::Cn:
      for (int q = 0; q < n; ++q) perm[static_cast<std::size_t>(q)] = (q + 1) % n;
      return {qubit_permutation(perm)};
    case SymmetryKind::Sn: {
      std::vector<ComplexMatrix> out;
      for (int q = 0; q + 1 < n; ++q) {
        for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
        std::swap(perm[static_cast<std::size_t>(q)], perm[static_cast<std::size_t>(q + 1)]);
        out.push_back(qubit_permutation(perm));
      }
      return out;
    }
  }
  throw std::invalid_argument("symmetry_matrix: unsupported kind");
}

double check_invariance(const ComplexMatrix& h, const ComplexMatrix& s) {
  if (h.rows() != s.rows() || h.cols() != s.cols() || h.rows() != h.cols()) {
    throw std::invalid_argument("check_invariance: dimension mismatch");
  }
  return (h * s - s * h).norm();
}

GeneratorSet heisenberg_generator_set(SymmetryKind kind, int n) {
  if (n < 2) throw std::invalid_argument("heisenberg_generator_set: need n >= 2");
  GeneratorSet gs;
  gs.n = n;
  gs.label = std::string(symmetry_name(kind)) + ":n=" + std::to_string(n);
  const Complex i(0.0, 1.0);
  const char types[3] = {'X', 'Y', 'Z'};
  switch (kind) {
    case SymmetryKind::Z2xz:
      for (char a : types) {
        // Bond b = (b, b+1) mirrors to n-2-b.
        for (int b = 0; b <= (n - 2) / 2; ++b) {
          const int mirror = n - 2 - b;
          PauliSum s = two_site(n, b, b + 1, a);
          if (mirror != b) s += two_site(n, mirror, mirror + 1, a);
          gs.generators.push_back(i * s);
        }
      }
      for (int q = 0; q <= (n - 1) / 2; ++q) {
        const int mirror = n - 1 - q;
        PauliSum s = one_site(n, q, 'X');
        if (mirror != q) s += one_site(n, mirror, 'X');
        gs.generators.push_back(i * s);
      }
      break;
    case SymmetryKind::Cn:
      for (char a : types) {
        PauliSum s(n);
        for (int b = 0; b + 1 < n; ++b) s += two_site(n, b, b + 1, a);
        if (n > 2) s += two_site(n, 0, n - 1, a);
        gs.generators.push_back(i * s);
      }
      break;
    case SymmetryKind::Sn:
      for (char a : types) {
        PauliSum s(n);
        for (int p = 0; p < n; ++p) {
          for (int q = p + 1; q < n; ++q) s += two_site(n, p, q, a);
        }
        gs.generators.push_back(i * s);
      }
      break;
    case SymmetryKind::Z2:
      throw std::invalid_argument("heisenberg_generator_set: Z2 alone is not a supported generator family");
  }
  if (kind != SymmetryKind::Z2xz) {
    PauliSum s(n);
    for (int q = 0; q < n; ++q) s += one_site(n, q, 'X');
    gs.generators.push_back(i * s);
  }
  return gs;
}

double symmetric_invariance_check(const std::vector<PauliSum>& b, const std::vector<ComplexMatrix>& syms) {
  double worst = 0.0;
  for (const auto& e : b) {
    const ComplexMatrix m = to_dense(e);
    for (const auto& s : syms) {
      if (s.rows() != m.rows()) throw std::invalid_argument("symmetric_invariance_check: dimension mismatch");
      worst = std::max(worst, (s * m * s.adjoint() - m).norm());
    }
  }
  return worst;
}

}  // namespace vbe
