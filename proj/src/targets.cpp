#include "vbe/targets.hpp"

#include <stdexcept>

#include "vbe/rng.hpp"

namespace vbe {

const char* lattice_name(Lattice l) {
  switch (l) {
    case Lattice::Chain: return "chain";
    case Lattice::Ring: return "ring";
    case Lattice::Complete: return "complete";
  }
  return "?";
}

Lattice parse_lattice(const std::string& s) {
  if (s == "chain") return Lattice::Chain;
  if (s == "ring") return Lattice::Ring;
  if (s == "complete") return Lattice::Complete;
  throw std::invalid_argument("unknown lattice '" + s + "' (expected chain, ring or complete)");
}

Lattice HeisenbergParams::lattice() const {
  if (all_to_all) return Lattice::Complete;
  return periodic ? Lattice::Ring : Lattice::Chain;
}

std::vector<std::pair<int, int>> heisenberg_bonds(int n, Lattice lattice) {
  std::vector<std::pair<int, int>> bonds;
  if (lattice == Lattice::Complete) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) bonds.emplace_back(i, j);
    }
    return bonds;
  }
  for (int i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
  if (lattice == Lattice::Ring && n > 2) bonds.emplace_back(n - 1, 0);
  return bonds;
}

PauliSum heisenberg_pauli(const HeisenbergParams& p) {
  if (p.n < 2) throw std::invalid_argument("heisenberg: need n >= 2");
  const auto bonds = heisenberg_bonds(p.n, p.lattice());
  if (!p.bond_couplings.empty() && p.bond_couplings.size() != bonds.size()) {
    throw std::invalid_argument("heisenberg: expected " + std::to_string(bonds.size()) + " bond couplings");
  }
  if (!p.site_fields.empty() && static_cast<int>(p.site_fields.size()) != p.n) {
    throw std::invalid_argument("heisenberg: expected one field per site");
  }
  PauliSum h(p.n);
  const char types[3] = {'X', 'Y', 'Z'};
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const std::array<double, 3> j = p.bond_couplings.empty() ? std::array<double, 3>{p.jx, p.jy, p.jz}
                                                             : p.bond_couplings[b];
    for (int t = 0; t < 3; ++t) {
      std::string s(static_cast<std::size_t>(p.n), 'I');
      s[static_cast<std::size_t>(bonds[b].first)] = types[t];
      s[static_cast<std::size_t>(bonds[b].second)] = types[t];
      h.add_term(PauliString::parse(s), j[static_cast<std::size_t>(t)]);
    }
  }
  for (int q = 0; q < p.n; ++q) {
    const double field = p.site_fields.empty() ? p.h : p.site_fields[static_cast<std::size_t>(q)];
    h.add_term(PauliString::single(p.n, q, 'X'), field);
  }
  return h;
}

ComplexMatrix heisenberg(const HeisenbergParams& p) { return to_dense(heisenberg_pauli(p)); }

HeisenbergParams random_symmetric_heisenberg(SymmetryKind kind, int n, std::uint64_t seed) {
  CounterRng rng(seed, streams::kTarget);
  HeisenbergParams p;
  p.n = n;
  p.jx = rng.uniform(-1, 1);
  p.jy = rng.uniform(-1, 1);
  p.jz = rng.uniform(-1, 1);
  p.h = rng.uniform(-1, 1);
  switch (kind) {
    case SymmetryKind::Z2:
    case SymmetryKind::Z2xz:
      break;
    case SymmetryKind::Cn:
      p.periodic = true;
      break;
    case SymmetryKind::Sn:
      p.all_to_all = true;
      break;
  }
  if (kind == SymmetryKind::Z2xz) {
    const auto bonds = heisenberg_bonds(n, Lattice::Chain);
    p.bond_couplings.assign(bonds.size(), {});
    for (int b = 0; b <= (n - 2) / 2; ++b) {
      const std::array<double, 3> j = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      p.bond_couplings[static_cast<std::size_t>(b)] = j;
      p.bond_couplings[static_cast<std::size_t>(n - 2 - b)] = j;
    }
    p.site_fields.assign(static_cast<std::size_t>(n), 0.0);
    for (int q = 0; q <= (n - 1) / 2; ++q) {
      const double f = rng.uniform(-1, 1);
      p.site_fields[static_cast<std::size_t>(q)] = f;
      p.site_fields[static_cast<std::size_t>(n - 1 - q)] = f;
    }
  }
  return p;
}

const char* field_name(Field f) { return f == Field::Complex ? "complex" : "real"; }

const char* structure_name(Structure s) {
  switch (s) {
    case Structure::Arbitrary: return "arbitrary";
    case Structure::Hermitian: return "hermitian";
    case Structure::Unitary: return "unitary";
  }
  return "?";
}

ComplexMatrix random_matrix(int n, Field field, Structure structure, std::uint64_t seed) {
  if (n < 0 || n > kMaxDenseQubits) throw std::invalid_argument("random_matrix: unsupported size");
  CounterRng rng(seed, streams::kTarget + 1);
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double re = rng.uniform(-1, 1);
      const double im = field == Field::Complex ? rng.uniform(-1, 1) : 0.0;
      m(r, c) = Complex(re, im);
    }
  }
  switch (structure) {
    case Structure::Arbitrary:
      break;
    case Structure::Hermitian:
      m = (0.5 * (m + m.adjoint())).eval();
      break;
    case Structure::Unitary: {
      // Q factor with the phases of R's diagonal removed.
      Eigen::HouseholderQR<ComplexMatrix> qr(m);
      ComplexMatrix q = qr.householderQ();
      const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (Eigen::Index k = 0; k < dim; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0) q.col(k) *= r(k, k) / a;
      }
      m = q;
      break;
    }
  }
  return m;
}

ComplexMatrix random_span_sample(const std::vector<PauliSum>& b, bool hermitian, std::uint64_t seed) {
  if (b.empty()) throw std::invalid_argument("random_span_sample: empty basis");
  CounterRng rng(seed, streams::kTarget + 2);
  PauliSum s(b.front().num_qubits());
  for (const auto& e : b) s += e * Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  ComplexMatrix m = to_dense(s);
  if (hermitian) m = (0.5 * (m + m.adjoint())).eval();
  return m;
}

ComplexMatrix zero_pad(const ComplexMatrix& a) {
  std::size_t dim = 1;
  const auto need = static_cast<std::size_t>(std::max<Eigen::Index>({a.rows(), a.cols(), 1}));
  while (dim < need) dim <<= 1;
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

}  // namespace vbe
