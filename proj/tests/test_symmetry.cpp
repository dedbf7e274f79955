#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "vbe/optimize.hpp"
#include "vbe/symmetry.hpp"
#include "vbe/targets.hpp"

using namespace vbe;

namespace {

const Complex kI(0, 1);

PauliSum term(const char* s, Complex c = kI) { return PauliSum(PauliString::parse(s), c); }

int dense_span_dim(const std::vector<ComplexMatrix>& ms) {
  if (ms.empty()) return 0;
  ComplexMatrix a(ms.front().size(), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k) {
    a.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXcd>(ms[k].data(), ms[k].size());
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) r += s(k) > 1e-9 * s(0);
  return r;
}

// Brute-force Lie closure on dense matrices: all pairwise commutators of the
// current spanning set until the rank stops growing.
int dense_lie_dim(const std::vector<PauliSum>& gens) {
  std::vector<ComplexMatrix> span;
  for (const auto& g : gens) span.push_back(to_dense(g));
  int dim = dense_span_dim(span);
  for (;;) {
    std::vector<ComplexMatrix> grown = span;
    for (std::size_t a = 0; a < span.size(); ++a) {
      for (std::size_t b = a + 1; b < span.size(); ++b) {
        const ComplexMatrix c = span[a] * span[b] - span[b] * span[a];
        if (c.norm() < 1e-12) continue;
        grown.push_back(c);
        if (dense_span_dim(grown) == static_cast<int>(grown.size())) continue;
        grown.pop_back();
      }
    }
    const int next = dense_span_dim(grown);
    if (next == dim) return dim;
    span = grown;
    dim = next;
  }
}

}  // namespace

TEST_CASE("symmetry matrices") {
  CHECK((symmetry_matrix(SymmetryKind::Z2, 2).front() - to_dense(PauliString::parse("XX"))).norm() == 0.0);

  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  CHECK((symmetry_matrix(SymmetryKind::Cn, 2).front() - swap).norm() == 0.0);

  // Reversal on three qubits maps |abc> to |cba>.
  const ComplexMatrix r = symmetry_matrix(SymmetryKind::Z2xz, 3).front();
  for (int b = 0; b < 8; ++b) {
    const int rev = ((b & 1) << 2) | (b & 2) | ((b >> 2) & 1);
    CHECK(r(rev, b) == Complex(1.0));
  }

  // Cyclic shift moves qubit q to q+1: |abc> -> |cab>.
  const ComplexMatrix c = symmetry_matrix(SymmetryKind::Cn, 3).front();
  CHECK(c(0b110, 0b101) == Complex(1.0));
  CHECK(c(0b001, 0b100) == Complex(0.0));
  CHECK(c(0b010, 0b100) == Complex(1.0));

  CHECK(symmetry_matrix(SymmetryKind::Sn, 4).size() == 3);
  CHECK_THROWS_AS(symmetry_matrix(SymmetryKind::Sn, 1), std::invalid_argument);
  CHECK(parse_symmetry("Z2xz") == SymmetryKind::Z2xz);
  CHECK_THROWS_AS(parse_symmetry("D4"), std::invalid_argument);
}

TEST_CASE("check_invariance") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    HeisenbergParams p;
    p.n = 4;
    p.jx = u(rng);
    p.jy = u(rng);
    p.jz = u(rng);
    p.h = u(rng);
    CHECK(check_invariance(heisenberg(p), symmetry_matrix(SymmetryKind::Z2, 4).front()) <= 1e-12);
    CHECK(check_invariance(heisenberg(p), symmetry_matrix(SymmetryKind::Cn, 4).front()) > 0.1);
    p.periodic = true;
    CHECK(check_invariance(heisenberg(p), symmetry_matrix(SymmetryKind::Cn, 4).front()) <= 1e-12);
  }
  for (auto k : {SymmetryKind::Z2, SymmetryKind::Z2xz, SymmetryKind::Cn, SymmetryKind::Sn}) {
    for (const auto& s : symmetry_matrix(k, 3)) CHECK(check_invariance(ComplexMatrix::Identity(8, 8), s) == 0.0);
  }
  CHECK_THROWS_AS(check_invariance(ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(8, 8)), std::invalid_argument);
}

TEST_CASE("generator sets for four qubits") {
  const GeneratorSet sn = heisenberg_generator_set(SymmetryKind::Sn, 4);
  REQUIRE(sn.generators.size() == 4);
  PauliSum zz(4);
  for (const char* s : {"ZZII", "IZZI", "IIZZ", "ZIIZ", "IZIZ", "ZIZI"}) zz += term(s);
  CHECK(sn.generators[2] == zz);

  const GeneratorSet cn = heisenberg_generator_set(SymmetryKind::Cn, 4);
  REQUIRE(cn.generators.size() == 4);
  PauliSum xx(4);
  for (const char* s : {"XXII", "IXXI", "IIXX", "XIIX"}) xx += term(s);
  CHECK(cn.generators[0] == xx);

  const GeneratorSet z = heisenberg_generator_set(SymmetryKind::Z2xz, 4);
  CHECK(z.generators.size() == 8);
  CHECK(z.generators[0] == term("XXII") + term("IIXX"));
  CHECK(z.generators[1] == term("IXXI"));
  CHECK(z.generators[6] == term("XIII") + term("IIIX"));
  CHECK(z.generators[7] == term("IXII") + term("IIXI"));

  CHECK_THROWS_AS(heisenberg_generator_set(SymmetryKind::Sn, 1), std::invalid_argument);
  CHECK_THROWS_AS(heisenberg_generator_set(SymmetryKind::Z2, 3), std::invalid_argument);
}

TEST_CASE("generators are anti-hermitian and respect their symmetry") {
  for (auto k : {SymmetryKind::Z2xz, SymmetryKind::Cn, SymmetryKind::Sn}) {
    for (int n = 2; n <= 5; ++n) {
      const GeneratorSet g = heisenberg_generator_set(k, n);
      INFO(g.label);
      CHECK(symmetric_invariance_check(g.generators, symmetry_matrix(k, n)) <= 1e-12);
      for (const auto& e : g.generators) CHECK((e + e.adjoint()).empty());
    }
  }
}

TEST_CASE("small closures") {
  GeneratorSet g{1, {term("Z"), term("X")}, "zx"};
  const auto l = lie_closure(g);
  CHECK(l.size() == 3);
  CHECK(dense_lie_dim(g.generators) == 3);
  const auto b = associative_closure(l);
  CHECK(b.size() == 4);

  GeneratorSet single{2, {term("ZZ")}, "zz"};
  CHECK(lie_closure(single).size() == 1);

  ClosureOptions tight;
  tight.cap = 2;
  CHECK_THROWS_AS(lie_closure(g, tight), ClosureCapExceeded);
}

TEST_CASE("closure dimensions reproduce the symmetric table") {
  struct Row {
    SymmetryKind kind;
    int n;
    std::size_t dim_b;
  };
  const Row rows[] = {{SymmetryKind::Z2xz, 2, 6}, {SymmetryKind::Z2xz, 3, 20}, {SymmetryKind::Z2xz, 4, 72},
                      {SymmetryKind::Cn, 2, 6},   {SymmetryKind::Cn, 3, 10},   {SymmetryKind::Cn, 4, 28},
                      {SymmetryKind::Sn, 2, 6},   {SymmetryKind::Sn, 3, 10},   {SymmetryKind::Sn, 4, 19},
                      {SymmetryKind::Sn, 5, 28},  {SymmetryKind::Sn, 6, 44}};
  for (const auto& r : rows) {
    const GeneratorSet g = heisenberg_generator_set(r.kind, r.n);
    const ClosureBasis b = compute_closure(g);
    INFO(g.label);
    CHECK(b.dim_b() == r.dim_b);
    CHECK(b.dim_l() <= b.dim_b());
    if (r.n <= 4) CHECK(symmetric_invariance_check(b.algebra, symmetry_matrix(r.kind, r.n)) <= 1e-12);
  }
}

TEST_CASE("Lie closure agrees with dense brute force for n <= 3") {
  for (auto k : {SymmetryKind::Z2xz, SymmetryKind::Cn, SymmetryKind::Sn}) {
    for (int n = 2; n <= 3; ++n) {
      const GeneratorSet g = heisenberg_generator_set(k, n);
      const auto l = lie_closure(g);
      INFO(g.label);
      CHECK(static_cast<int>(l.size()) == dense_lie_dim(g.generators));
      // Every bracket of basis elements stays in the span.
      std::vector<ComplexMatrix> dense;
      for (const auto& e : l) dense.push_back(to_dense(e));
      const int base = dense_span_dim(dense);
      for (std::size_t a = 0; a < l.size(); ++a) {
        for (std::size_t b = a + 1; b < l.size(); ++b) {
          auto with = dense;
          with.push_back(dense[a] * dense[b] - dense[b] * dense[a]);
          CHECK(dense_span_dim(with) == base);
        }
      }
    }
  }
}

TEST_CASE("closure basis invariants") {
  const GeneratorSet g = heisenberg_generator_set(SymmetryKind::Cn, 3);
  const ClosureBasis b = compute_closure(g);
  std::vector<PauliSum> acc;
  for (const auto& e : b.lie) {
    CHECK(rank_extend(acc, e));
    acc.push_back(e);
  }
  for (const auto& e : b.lie) CHECK(expressible(to_dense(e), b.algebra).expressible);
  CHECK(b.algebra.front() == PauliSum::identity(3));
}

TEST_CASE("expressibility") {
  const GeneratorSet sn = heisenberg_generator_set(SymmetryKind::Sn, 4);
  const ClosureBasis b = compute_closure(sn);
  CHECK(expressible(ComplexMatrix::Identity(16, 16), b.algebra).expressible);

  const GeneratorSet cn = heisenberg_generator_set(SymmetryKind::Cn, 4);
  const ClosureBasis bc = compute_closure(cn);
  HeisenbergParams p = random_symmetric_heisenberg(SymmetryKind::Cn, 4, 17);
  CHECK(expressible(heisenberg(p), bc.algebra).expressible);

  const ComplexMatrix r = random_matrix(4, Field::Complex, Structure::Hermitian, 3);
  const Expressibility e = expressible(r, b.algebra);
  CHECK_FALSE(e.expressible);
  CHECK(e.residual > 0.5 * r.norm());

  CHECK_THROWS_AS(expressible(ComplexMatrix::Identity(8, 8), b.algebra), std::invalid_argument);
}

TEST_CASE("symmetric invariance negative control") {
  const GeneratorSet z = heisenberg_generator_set(SymmetryKind::Z2xz, 4);
  auto b = compute_closure(z).algebra;
  const auto syms = symmetry_matrix(SymmetryKind::Z2xz, 4);
  CHECK(symmetric_invariance_check(b, syms) <= 1e-12);
  b[3] += term("XIII", 1.0);
  CHECK(symmetric_invariance_check(b, syms) > 0.1);
}

TEST_CASE("GQSP blocks lie in the span of the closure") {
  std::mt19937_64 rng(19);
  for (auto k : {SymmetryKind::Z2xz, SymmetryKind::Cn, SymmetryKind::Sn}) {
    const GeneratorSet g = heisenberg_generator_set(k, 3);
    const ClosureBasis b = compute_closure(g);
    const auto seq_idx = random_sequence(static_cast<int>(g.generators.size()), 9, 4, 0);
    std::vector<PauliSum> seq;
    for (int i : seq_idx) seq.push_back(g.generators[static_cast<std::size_t>(i)]);
    const Circuit c = build_gqsp_ansatz(seq, 3);
    for (int trial = 0; trial < 3; ++trial) {
      const RealVector th = test::random_angles(rng, c.param_count);
      const ComplexMatrix f = extract_block(evaluate(c, test::view(th)), 1);
      const Expressibility e = expressible(f, b.algebra);
      CHECK(e.residual <= 1e-9 * f.norm());
    }
  }
}

TEST_CASE("expressibility by sequence") {
  CHECK(expressibility_by_sequence({term("Z")}).size() == 2);

  const PauliSum g = term("ZZ");
  const auto seq = expressibility_by_sequence({g, g});
  const auto assoc = associative_closure({g});
  CHECK(seq.size() == assoc.size());
  for (const auto& e : seq) CHECK(expressible(to_dense(e), assoc).expressible);

  for (auto k : {SymmetryKind::Z2xz, SymmetryKind::Cn, SymmetryKind::Sn}) {
    const GeneratorSet gs = heisenberg_generator_set(k, 3);
    const ClosureBasis b = compute_closure(gs);
    const auto s = expressibility_by_sequence(gs.generators);
    INFO(gs.label);
    CHECK(s.size() <= b.dim_b());
    for (const auto& e : s) CHECK(expressible(to_dense(e), b.algebra).expressible);
  }

  SequenceOptions tiny;
  tiny.product_cap = 3;
  const GeneratorSet sn = heisenberg_generator_set(SymmetryKind::Sn, 3);
  CHECK_THROWS_AS(expressibility_by_sequence(sn.generators, tiny), std::invalid_argument);
}

TEST_CASE("span membership") {
  PauliSpan span(2);
  const auto v = span.to_vector(term("XX") + term("ZZ"));
  CHECK(span.try_add(v));
  CHECK_FALSE(span.try_add(2.0 * v));
  CHECK(span.contains(Complex(0, 3) * v));
  CHECK_FALSE(span.contains(span.to_vector(term("XX"))));
  CHECK(span.residual(span.to_vector(term("XX"))) == doctest::Approx(std::sqrt(0.5)));
  // Roundoff-sized vectors do not count as new directions.
  Eigen::VectorXcd noise = Eigen::VectorXcd::Zero(16);
  noise(7) = 1e-16;
  CHECK_FALSE(span.try_add(noise, 1.0));
  CHECK(span.try_add(noise));
}
