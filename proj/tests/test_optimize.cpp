#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "test_support.hpp"
#include "vbe/optimize.hpp"
#include "vbe/symmetry.hpp"
#include "vbe/targets.hpp"

using namespace vbe;

namespace {

AnsatzSpec generic(int block, int n, int layers, bool hermitian = false) {
  AnsatzSpec s;
  s.family = GenericFamily{block};
  s.layers = layers;
  s.hermitian = hermitian;
  s.system_qubits = n;
  return s;
}

}  // namespace

TEST_CASE("BFGS minimizes a convex quadratic") {
  Eigen::MatrixXd a(3, 3);
  a << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
  const Eigen::VectorXd b = Eigen::Vector3d(1, -2, 0.5);
  const Objective f = [&](const RealVector& x, RealVector& g) {
    g = a * x - b;
    return 0.5 * x.dot(a * x) - b.dot(x);
  };
  const BfgsResult r = bfgs_minimize(f, RealVector::Zero(3));
  CHECK(r.converged);
  CHECK(r.reason == StopReason::GradientSmall);
  CHECK((r.x - a.ldlt().solve(b)).norm() < 1e-6);
  CHECK(r.iterations <= 10);
}

TEST_CASE("BFGS solves Rosenbrock") {
  const Objective f = [](const RealVector& x, RealVector& g) {
    g.resize(2);
    g(0) = -2 * (1 - x(0)) - 400 * x(0) * (x(1) - x(0) * x(0));
    g(1) = 200 * (x(1) - x(0) * x(0));
    return (1 - x(0)) * (1 - x(0)) + 100 * (x(1) - x(0) * x(0)) * (x(1) - x(0) * x(0));
  };
  BfgsOptions o;
  o.grad_tol = 1e-8;
  o.record_trace = true;
  const BfgsResult r = bfgs_minimize(f, RealVector::Constant(2, -1.2), o);
  CHECK(r.converged);
  CHECK(std::abs(r.x(0) - 1) < 1e-6);
  CHECK(std::abs(r.x(1) - 1) < 1e-6);
  REQUIRE(r.trace.size() >= 2);
  for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].value <= r.trace[k - 1].value);
}

TEST_CASE("BFGS stop reasons") {
  const Objective quad = [](const RealVector& x, RealVector& g) {
    g = 2 * x;
    return x.squaredNorm();
  };
  BfgsOptions o;
  o.f_target = 1e-4;
  const BfgsResult target = bfgs_minimize(quad, RealVector::Constant(4, 1.0), o);
  CHECK(target.reason == StopReason::TargetReached);
  CHECK(target.f <= 1e-4);

  BfgsOptions cap;
  cap.max_iterations = 0;
  const BfgsResult capped = bfgs_minimize(quad, RealVector::Constant(4, 1.0), cap);
  CHECK(capped.reason == StopReason::IterationCap);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 0);

  // A linear function has no minimum: the line search cannot satisfy curvature.
  const Objective linear = [](const RealVector& x, RealVector& g) {
    g = RealVector::Constant(x.size(), -1.0);
    return -x.sum();
  };
  BfgsOptions lo;
  lo.max_iterations = 50;
  const BfgsResult lin = bfgs_minimize(linear, RealVector::Zero(2), lo);
  CHECK_FALSE(lin.converged);
  CHECK(lin.reason != StopReason::GradientSmall);
}

TEST_CASE("random starts and sequences") {
  const RealVector a = random_start(50, 7, 0), b = random_start(50, 7, 0), c = random_start(50, 7, 1);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.maxCoeff() < std::numbers::pi);
  CHECK(a.minCoeff() >= -std::numbers::pi);

  const auto seq = random_sequence(4, 14, 3, 0);
  CHECK(seq.size() == 14);
  for (std::size_t start = 0; start + 4 <= seq.size(); start += 4) {
    const std::set<int> cycle(seq.begin() + static_cast<long>(start), seq.begin() + static_cast<long>(start) + 4);
    CHECK(cycle.size() == 4);
  }
  CHECK(seq == random_sequence(4, 14, 3, 0));
  CHECK(seq != random_sequence(4, 14, 3, 1));
  CHECK(random_sequence(3, 0, 1, 0).empty());
  CHECK_THROWS_AS(random_sequence(0, 3, 1, 0), std::invalid_argument);
}

TEST_CASE("options validation") {
  OptimizeOptions o;
  CHECK_NOTHROW(o.validate());
  o.restarts = 0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o.restarts = 1;
  o.epsilon_exact = 0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}

TEST_CASE("encoding a random 2x2 matrix converges and reports consistently") {
  const TargetSpec t = subnormalize(random_matrix(1, Field::Complex, Structure::Arbitrary, 4));
  OptimizeOptions o;
  o.restarts = 3;
  o.seed = 12;
  o.record_trace = true;
  const EncodeReport r = multistart_encode(t, generic(2, 1, 2), o);
  CHECK(r.converged);
  CHECK(r.stationary);
  CHECK(r.epsilon <= 1e-10);
  CHECK(r.param_count == 14);
  CHECK(r.nonlocal_gates == 2);
  CHECK(r.layers == 2);
  CHECK(r.best_restart >= 0);
  CHECK(r.best_restart < 3);
  REQUIRE_FALSE(r.trace.empty());
  CHECK(r.trace.back().value == doctest::Approx(r.epsilon).epsilon(1e-6));

  const Circuit c = build_ansatz(generic(2, 1, 2));
  CHECK(cost(t, c, test::view(r.theta)) == doctest::Approx(r.epsilon).epsilon(1e-3));

  std::ostringstream csv;
  write_trace_csv(csv, r.trace);
  CHECK(csv.str().rfind("iteration,epsilon,grad_norm\n", 0) == 0);
}

TEST_CASE("results are reproducible and independent of the job count") {
  const TargetSpec t = subnormalize(random_matrix(2, Field::Complex, Structure::Arbitrary, 9));
  OptimizeOptions o;
  o.restarts = 4;
  o.seed = 99;
  o.max_iterations = 200;
  const EncodeReport a = multistart_encode(t, generic(2, 2, 3), o);
  const EncodeReport b = multistart_encode(t, generic(2, 2, 3), o);
  o.jobs = 4;
  const EncodeReport c = multistart_encode(t, generic(2, 2, 3), o);
  CHECK(a.epsilon == b.epsilon);
  CHECK(a.theta == b.theta);
  CHECK(a.epsilon == c.epsilon);
  CHECK(a.theta == c.theta);
  CHECK(a.best_restart == c.best_restart);
}

TEST_CASE("starting at an exact encoding stops immediately") {
  const Circuit c = build_ansatz(generic(2, 1, 1));
  const RealVector theta = random_start(c.param_count, 1, 0);
  TargetSpec t;
  t.matrix = extract_block(evaluate(c, test::view(theta)), 1);
  t.alpha = 1.0;
  const EncodeReport r = encode_once(t, c, theta, OptimizeOptions{});
  CHECK(r.iterations == 0);
  CHECK(r.converged);
  CHECK(r.reason == StopReason::TargetReached);
}

TEST_CASE("too few layers plateau without converging") {
  const TargetSpec t = subnormalize(random_matrix(2, Field::Complex, Structure::Arbitrary, 2));
  OptimizeOptions o;
  o.restarts = 2;
  const EncodeReport r = multistart_encode(t, generic(2, 2, 1), o);
  CHECK_FALSE(r.converged);
  CHECK(r.epsilon > 1e-3);
}

TEST_CASE("GQSP multistart draws a sequence when none is fixed") {
  const GeneratorSet gs = heisenberg_generator_set(SymmetryKind::Sn, 2);
  AnsatzSpec s;
  s.family = GqspFamily{gs.generators, {}, gs.label};
  s.layers = 5;
  s.system_qubits = 2;
  const HeisenbergParams p = random_symmetric_heisenberg(SymmetryKind::Sn, 2, 1);
  OptimizeOptions o;
  o.restarts = 3;
  const EncodeReport r = multistart_encode(subnormalize(heisenberg(p)), s, o);
  CHECK(r.sequence.size() == 5);
  CHECK(r.param_count == 18);
}

TEST_CASE("layer threshold search on a 2x2 target") {
  // Block 2 on two qubits: 4 params per layer plus 6 appended. A complex 2x2
  // block has 8 free parameters, so one layer already suffices.
  const TargetSpec t = subnormalize(random_matrix(1, Field::Complex, Structure::Arbitrary, 6));
  OptimizeOptions o;
  o.restarts = 3;
  LayerSearchOptions ls;
  ls.estimate = 3;
  ls.max_layers = 6;
  const LayerSearchResult r = layer_threshold_search(t, generic(2, 1, 1), o, ls);
  REQUIRE(r.threshold.has_value());
  CHECK_FALSE(r.partial);
  CHECK(*r.threshold <= 2);
  CHECK(r.trials.front().layers == 4);
  CHECK_FALSE(r.trials.back().success);
  CHECK(r.trials.back().layers == *r.threshold - 1);
}

TEST_CASE("layer search reports a partial result when the budget is exhausted") {
  const TargetSpec t = subnormalize(random_matrix(2, Field::Complex, Structure::Arbitrary, 3));
  OptimizeOptions o;
  o.restarts = 1;
  o.max_iterations = 50;
  LayerSearchOptions ls;
  ls.estimate = 1;
  ls.max_layers = 2;
  const LayerSearchResult r = layer_threshold_search(t, generic(0, 2, 1), o, ls);
  CHECK_FALSE(r.threshold.has_value());
  CHECK(r.partial);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("greedy generator search never loses accuracy") {
  const GeneratorSet gs = heisenberg_generator_set(SymmetryKind::Cn, 2);
  const HeisenbergParams p = random_symmetric_heisenberg(SymmetryKind::Cn, 2, 5);
  OptimizeOptions o;
  o.restarts = 2;
  GreedyOptions g;
  g.max_depth = 6;
  const GreedyResult r = greedy_generator_search(subnormalize(heisenberg(p)), gs.generators, true, o, g);
  REQUIRE(r.epsilon_by_depth.size() == r.sequence.size() + 1);
  for (std::size_t d = 1; d < r.epsilon_by_depth.size(); ++d) {
    CHECK(r.epsilon_by_depth[d] <= r.epsilon_by_depth[d - 1] + 1e-9);
  }
  CHECK(r.report.sequence == r.sequence);
  CHECK(r.report.converged);
}

TEST_CASE("appending an identity layer to a converged GQSP circuit keeps it exact") {
  const GeneratorSet gs = heisenberg_generator_set(SymmetryKind::Sn, 2);
  AnsatzSpec s;
  s.family = GqspFamily{gs.generators, {0, 1, 2, 3, 0, 1}, gs.label};
  s.layers = 6;
  s.system_qubits = 2;
  const TargetSpec t = subnormalize(heisenberg(random_symmetric_heisenberg(SymmetryKind::Sn, 2, 8)));
  OptimizeOptions o;
  o.restarts = 4;
  const EncodeReport r = multistart_encode(t, s, o);
  REQUIRE(r.converged);
  for (int g = 0; g < static_cast<int>(gs.generators.size()); ++g) {
    std::vector<PauliSum> seq;
    for (int k : r.sequence) seq.push_back(gs.generators[static_cast<std::size_t>(k)]);
    seq.push_back(gs.generators[static_cast<std::size_t>(g)]);
    const Circuit c = build_gqsp_ansatz(seq, 2);
    RealVector theta = RealVector::Zero(c.param_count);
    theta.head(r.theta.size()) = r.theta;
    CHECK(cost(t, c, test::view(theta)) <= o.epsilon_exact);
  }
}
