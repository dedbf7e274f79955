#include <bit>
#include <cmath>
#include <deque>
#include <string>
#include <utility>

#include "vbe/symmetry.hpp"

namespace vbe {

namespace {

struct Term {
  std::uint64_t index;
  Complex coeff;
};

using Sparse = std::vector<Term>;

Complex i_pow(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

Sparse sparse_of(const Eigen::VectorXcd& v) {
  Sparse out;
  const double tol = kPruneTolerance * v.norm();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > tol) out.push_back({static_cast<std::uint64_t>(k), v(k)});
  }
  return out;
}

// out += a * b on string-indexed coefficient vectors.
void accumulate_product(int n, const Sparse& a, const Sparse& b, Complex scale, Eigen::VectorXcd& out) {
  const std::uint64_t zmask = (std::uint64_t{1} << n) - 1;
  for (const auto& ta : a) {
    const std::uint64_t xa = ta.index >> n, za = ta.index & zmask;
    const int ya = std::popcount(xa & za);
    for (const auto& tb : b) {
      const std::uint64_t xb = tb.index >> n, zb = tb.index & zmask;
      const std::uint64_t x = xa ^ xb, z = za ^ zb;
      const int k = ya + std::popcount(xb & zb) - std::popcount(x & z) + 2 * std::popcount(za & xb);
      out((x << n) | z) += scale * i_pow(k) * ta.coeff * tb.coeff;
    }
  }
}

// Bounds the coefficient norm of any product with this factor.
double l1(const Sparse& a) {
  double s = 0.0;
  for (const auto& t : a) s += std::abs(t.coeff);
  return s;
}

Eigen::VectorXcd product(int n, const Sparse& a, const Sparse& b) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n));
  accumulate_product(n, a, b, 1.0, out);
  return out;
}

Eigen::VectorXcd bracket(int n, const Sparse& a, const Sparse& b) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n));
  accumulate_product(n, a, b, 1.0, out);
  accumulate_product(n, b, a, -1.0, out);
  return out;
}

std::size_t full_dim(int n) { return std::size_t{1} << (2 * n); }

void check_width(int n, const PauliSum& s, const char* what) {
  if (s.num_qubits() != n) throw std::invalid_argument(std::string(what) + ": qubit count mismatch");
}

}  // namespace

PauliSpan::PauliSpan(int n) : n_(n) {
  if (n < 1 || n > kMaxDenseQubits) throw std::invalid_argument("PauliSpan: unsupported qubit count");
}

Eigen::VectorXcd PauliSpan::to_vector(const PauliSum& s) const {
  check_width(n_, s, "PauliSpan");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full_dim(n_)));
  for (const auto& [p, c] : s.terms()) v(static_cast<Eigen::Index>(p.index())) = c;
  return v;
}

PauliSum PauliSpan::to_sum(const Eigen::VectorXcd& v) const {
  PauliSum s(n_);
  const double tol = kPruneTolerance * std::max(1.0, v.norm());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > tol) s.add_term(PauliString::from_index(n_, static_cast<std::uint64_t>(k)), v(k));
  }
  return s;
}

Eigen::VectorXcd PauliSpan::orthogonal_part(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd r = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : ortho_) r -= q * q.dot(r);
  }
  return r;
}

double PauliSpan::residual(const Eigen::VectorXcd& v) const { return orthogonal_part(v).norm(); }

bool PauliSpan::contains(const Eigen::VectorXcd& v) const {
  const double vn = v.norm();
  return vn == 0.0 || residual(v) <= kRankTolerance * vn;
}

bool PauliSpan::try_add(const Eigen::VectorXcd& v, double scale) {
  const double vn = v.norm();
  if (vn == 0.0 || vn <= kRankTolerance * scale) return false;
  const Eigen::VectorXcd r = orthogonal_part(v);
  const double rn = r.norm();
  if (rn <= kRankTolerance * vn) return false;
  elements_.push_back(v / vn);
  ortho_.push_back(r / rn);
  return true;
}

std::vector<PauliSum> lie_closure(const GeneratorSet& g, const ClosureOptions& opts) {
  const int n = g.n;
  PauliSpan span(n);
  const std::size_t cap = opts.cap ? opts.cap : full_dim(n) - 1;
  std::vector<Sparse> gens;
  for (const auto& s : g.generators) gens.push_back(sparse_of(span.to_vector(s)));

  std::deque<std::size_t> queue;
  auto add = [&](const Eigen::VectorXcd& v, double scale) {
    if (!span.try_add(v, scale)) return;
    if (span.size() > cap) {
      throw ClosureCapExceeded("lie_closure: basis exceeds cap " + std::to_string(cap), span.size(), 0);
    }
    queue.push_back(span.size() - 1);
  };
  for (const auto& s : g.generators) add(span.to_vector(s), 0.0);
  while (!queue.empty()) {
    const Sparse x = sparse_of(span.elements()[queue.front()]);
    queue.pop_front();
    for (const auto& gen : gens) add(bracket(n, x, gen), 2 * l1(x) * l1(gen));
  }
  std::vector<PauliSum> out;
  for (const auto& e : span.elements()) out.push_back(span.to_sum(e));
  return out;
}

std::vector<PauliSum> associative_closure(const std::vector<PauliSum>& l, const std::vector<PauliSum>& multipliers,
                                          const ClosureOptions& opts) {
  const auto& mult = multipliers.empty() ? l : multipliers;
  int n = 0;
  if (!l.empty()) n = l.front().num_qubits();
  else if (!mult.empty()) n = mult.front().num_qubits();
  else throw std::invalid_argument("associative_closure: empty input");
  PauliSpan span(n);
  const std::size_t cap = opts.cap ? opts.cap : full_dim(n);
  std::vector<Sparse> ms;
  for (const auto& s : mult) ms.push_back(sparse_of(span.to_vector(s)));

  std::deque<std::size_t> queue;
  auto add = [&](const Eigen::VectorXcd& v, double scale) {
    if (!span.try_add(v, scale)) return;
    if (span.size() > cap) {
      throw ClosureCapExceeded("associative_closure: basis exceeds cap " + std::to_string(cap), l.size(),
                               span.size());
    }
    queue.push_back(span.size() - 1);
  };
  add(span.to_vector(PauliSum::identity(n)), 0.0);
  for (const auto& s : l) add(span.to_vector(s), 0.0);
  while (!queue.empty()) {
    const Sparse x = sparse_of(span.elements()[queue.front()]);
    queue.pop_front();
    for (const auto& m : ms) add(product(n, m, x), l1(m) * l1(x));
  }
  std::vector<PauliSum> out;
  for (const auto& e : span.elements()) out.push_back(span.to_sum(e));
  return out;
}

ClosureBasis compute_closure(const GeneratorSet& g, const ClosureOptions& opts) {
  ClosureBasis b;
  b.lie = lie_closure(g, opts);
  try {
    b.algebra = associative_closure(b.lie, g.generators, opts);
  } catch (const ClosureCapExceeded& e) {
    throw ClosureCapExceeded(e.what(), b.lie.size(), e.dim_b());
  }
  return b;
}

Expressibility expressible(const ComplexMatrix& m, const std::vector<PauliSum>& b) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expressible: matrix is not square");
  const int n = exact_log2(static_cast<std::size_t>(m.rows()));
  PauliSpan span(n);
  for (const auto& e : b) {
    check_width(n, e, "expressible");
    span.try_add(span.to_vector(e));
  }
  // Pauli strings are orthogonal with Tr(P^dagger Q) = 2^n delta, so the
  // coefficient-space residual scales to the Frobenius residual by 2^{n/2}.
  const Eigen::VectorXcd c = span.to_vector(from_dense(m));
  Expressibility out;
  out.residual = span.residual(c) * std::sqrt(static_cast<double>(m.rows()));
  out.expressible = out.residual <= kRankTolerance * m.norm();
  return out;
}

std::vector<PauliSum> expressibility_by_sequence(const std::vector<PauliSum>& generators, const SequenceOptions& opts) {
  if (generators.empty()) throw std::invalid_argument("expressibility_by_sequence: empty sequence");
  const int n = generators.front().num_qubits();
  std::size_t products = 0;
  auto count = [&](std::size_t k) {
    products += k;
    if (products > opts.product_cap) {
      throw std::invalid_argument("expressibility_by_sequence: product count exceeds cap " +
                                  std::to_string(opts.product_cap));
    }
  };

  PauliSpan acc(n);
  acc.try_add(acc.to_vector(PauliSum::identity(n)));
  for (const auto& g : generators) {
    check_width(n, g, "expressibility_by_sequence");
    // Power basis {I, G, G^2, ...} until saturation or the cap.
    PauliSpan powers(n);
    Eigen::VectorXcd p = powers.to_vector(PauliSum::identity(n));
    powers.try_add(p);
    const Sparse gs = sparse_of(powers.to_vector(g));
    for (int k = 1; k <= opts.power_cap; ++k) {
      const Sparse ps = sparse_of(p);
      p = product(n, gs, ps);
      count(1);
      if (!powers.try_add(p, l1(gs) * l1(ps))) break;
    }
    PauliSpan next(n);
    for (const auto& t : powers.elements()) {
      const Sparse ts = sparse_of(t);
      for (const auto& s : acc.elements()) {
        count(1);
        const Sparse ss = sparse_of(s);
        next.try_add(product(n, ts, ss), l1(ts) * l1(ss));
      }
    }
    acc = std::move(next);
  }
  std::vector<PauliSum> out;
  for (const auto& e : acc.elements()) out.push_back(acc.to_sum(e));
  return out;
}

}  // namespace vbe
