#include "vbe/resources.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vbe/encode.hpp"
#include "vbe/optimize.hpp"

namespace vbe {

namespace {

std::int64_t pow4(int n) { return std::int64_t{1} << (2 * n); }
std::int64_t pow2(int n) { return std::int64_t{1} << n; }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: non-positive divisor");
  if (a <= 0) return -((-a) / b);
  return (a + b - 1) / b;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t free_parameter_bound(int n, Field field, Structure structure) {
  if (n < 0 || n > 30) throw std::invalid_argument("free_parameter_bound: unsupported n");
  const bool cx = field == Field::Complex;
  switch (structure) {
    case Structure::Arbitrary: return cx ? 2 * pow4(n) : pow4(n);
    case Structure::Hermitian: return cx ? pow4(n) : pow2(n) * (pow2(n) + 1) / 2;
    case Structure::Unitary: return cx ? pow4(n) - 1 : pow2(n) * (pow2(n) - 1) / 2 - 1;
  }
  throw std::invalid_argument("free_parameter_bound: unknown structure");
}

std::int64_t tlb_cnot(int n) { return ceil_div(2 * pow4(n) - 3 * (n + 1), 4); }

std::int64_t nonlocal_gate_bound(const BoundQuery& q) {
  if (q.a.num <= 0) throw std::invalid_argument("nonlocal_gate_bound: a must be positive");
  if (q.structure == Structure::Unitary) throw std::invalid_argument("nonlocal_gate_bound: unsupported structure");
  const std::int64_t np = free_parameter_bound(q.n, q.field, q.structure);
  const std::int64_t k = q.field == Field::Complex ? 3 : 1;
  // (np - kN) / (num/den) = (np - kN) den / num
  return ceil_div((np - k * q.total_qubits) * q.a.den, q.a.num);
}

Rational a_ratio(const Circuit& c) {
  const int gates = count_native_entanglers(c);
  if (gates == 0) throw std::invalid_argument("a_ratio: circuit has no entangling gates");
  return Rational(c.param_count - c.appended_params, gates);
}

Rational block_a_ratio(int block, int total_qubits, Restriction r) {
  AnsatzSpec spec;
  spec.family = GenericFamily{block};
  spec.layers = 1;
  spec.restriction = r;
  spec.ancillas = 1;
  spec.system_qubits = total_qubits - 1;
  return a_ratio(build_generic_ansatz(spec));
}

double effective_block_a_ratio(int block, int total_qubits, int layers, std::uint64_t seed) {
  auto jacobian_rank = [&](int m) {
    AnsatzSpec spec;
    spec.family = GenericFamily{block};
    spec.layers = m;
    spec.ancillas = 1;
    spec.system_qubits = total_qubits - 1;
    const Circuit c = build_generic_ansatz(spec);
    const RealVector theta = random_start(c.param_count, seed, m);
    const auto grads = evaluate_with_gradients(c, std::span<const double>(theta.data(), static_cast<std::size_t>(theta.size())));
    const Eigen::Index d = grads.unitary.size();
    Eigen::MatrixXd j(2 * d, c.param_count);
    for (int k = 0; k < c.param_count; ++k) {
      const auto& du = grads.derivatives[static_cast<std::size_t>(k)];
      for (Eigen::Index e = 0; e < d; ++e) {
        j(e, k) = du(e).real();
        j(d + e, k) = du(e).imag();
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) > 1e-9 * s(0)) ++rank;
    }
    return rank;
  };
  AnsatzSpec one;
  one.family = GenericFamily{block};
  one.layers = 1;
  one.ancillas = 1;
  one.system_qubits = total_qubits - 1;
  const Circuit c1 = build_generic_ansatz(one);
  const int gates = count_native_entanglers(c1);
  if (gates == 0) throw std::invalid_argument("effective_block_a_ratio: block has no entangling gates");
  return static_cast<double>(jacobian_rank(layers + 1) - jacobian_rank(layers)) / gates;
}

Rational symmetric_a_ratio(SymmetryKind kind, int n) {
  switch (kind) {
    case SymmetryKind::Z2xz: return Rational(1, 6 * static_cast<std::int64_t>(n - 1));
    case SymmetryKind::Cn: return Rational(1, 6 * static_cast<std::int64_t>(n));
    case SymmetryKind::Sn: return Rational(1, 3 * static_cast<std::int64_t>(n) * (n - 1));
    case SymmetryKind::Z2: break;
  }
  throw std::invalid_argument("symmetric_a_ratio: unsupported symmetry");
}

int threshold_layers_generic(std::int64_t n_p, std::int64_t appended, Rational a, int nlg_per_layer) {
  if (a.num <= 0 || nlg_per_layer <= 0) throw std::invalid_argument("threshold_layers_generic: non-positive input");
  // (n_p - appended) / (a nlg) with a = num/den
  const std::int64_t m = ceil_div((n_p - appended) * a.den, a.num * nlg_per_layer);
  return static_cast<int>(std::max<std::int64_t>(m, 0));
}

GenericThreshold generic_threshold(int block, int n, int ancillas, Restriction r, bool hermitian) {
  AnsatzSpec spec;
  spec.family = GenericFamily{block};
  spec.layers = 1;
  spec.restriction = r;
  spec.ancillas = ancillas;
  spec.system_qubits = n;
  const Circuit one = build_generic_ansatz(spec);
  GenericThreshold g;
  g.free_params = free_parameter_bound(n, r == Restriction::Real ? Field::Real : Field::Complex,
                                       hermitian ? Structure::Hermitian : Structure::Arbitrary);
  g.appended = one.appended_params;
  g.a = a_ratio(one);
  g.nlg_per_layer = count_native_entanglers(one);
  g.layers = threshold_layers_generic(g.free_params, g.appended, g.a, g.nlg_per_layer);
  return g;
}

const char* threshold_mode_name(SymmetricThresholdMode m) {
  return m == SymmetricThresholdMode::LiteralFormula ? "literal_formula" : "param_inversion";
}

int threshold_layers_symmetric(std::int64_t dim_b, int q, SymmetricThresholdMode mode) {
  if (dim_b < 1 || (q != 1 && q != 2)) throw std::invalid_argument("threshold_layers_symmetric: bad input");
  const std::int64_t qd = q * dim_b;
  if (mode == SymmetricThresholdMode::LiteralFormula) {
    // ceil(qd/3 - 3) = ceil((qd - 9)/3)
    return static_cast<int>(ceil_div(qd - 9, 3));
  }
  return static_cast<int>(std::max<std::int64_t>(ceil_div(qd - 3, 3), 0));
}

LcuEstimate lcu_estimate(const PauliSum& h, const GateCostModel& model) {
  LcuEstimate e;
  e.model = model.name;
  for (const auto& [p, c] : h.terms()) {
    if (std::abs(c.imag()) > 1e-12) throw std::invalid_argument("lcu_estimate: complex coefficient on " + p.str());
  }
  e.term_count = static_cast<int>(h.size());
  if (e.term_count == 0) return e;
  int m = 0;
  while ((1 << m) < e.term_count) ++m;
  e.ancillas = m;
  e.prepare_cnots = m == 0 ? 0 : 2 * ((std::int64_t{1} << m) - 2);
  for (const auto& [p, c] : h.terms()) {
    const int w = p.weight();
    if (w == 0) continue;
    e.select_cnots += 2 * (w - 1) + model.controlled_pauli(m);
  }
  e.cnot_count = e.prepare_cnots + e.select_cnots;
  return e;
}

}  // namespace vbe
