#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vbe/circuit.hpp"
#include "vbe/encode.hpp"

namespace vbe {

// f(x) returning the value and writing the gradient into g.
using Objective = std::function<double(const RealVector& x, RealVector& g)>;

enum class StopReason { TargetReached, GradientSmall, IterationCap, LineSearchFailed };
const char* stop_reason_name(StopReason r);

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
};

struct BfgsOptions {
  double grad_tol = 1e-5;
  // When set the gradient test is ||g|| <= 2 sqrt(f) grad_tol, which is the
  // chain-rule image of ||grad sqrt(f)|| <= grad_tol.
  bool grad_tol_relative_to_sqrt = false;
  double f_target = -std::numeric_limits<double>::infinity();
  int max_iterations = 3000;
  double c1 = 1e-4;
  double c2 = 0.9;
  bool record_trace = false;
};

struct BfgsResult {
  RealVector x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  StopReason reason = StopReason::IterationCap;
  std::vector<TracePoint> trace;
};

BfgsResult bfgs_minimize(const Objective& f, const RealVector& x0, const BfgsOptions& opts = {});

struct OptimizeOptions {
  double grad_norm_tol = 1e-5;
  int max_iterations = 3000;
  double epsilon_exact = 1e-10;
  int restarts = 10;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool record_trace = false;

  void validate() const;
};

struct EncodeReport {
  double epsilon = std::numeric_limits<double>::infinity();
  RealVector theta;
  int iterations = 0;
  // epsilon <= epsilon_exact.
  bool converged = false;
  // The gradient criterion fired (includes converged runs).
  bool stationary = false;
  StopReason reason = StopReason::IterationCap;
  int param_count = 0;
  int nonlocal_gates = 0;
  int layers = 0;
  double wall_time = 0.0;
  int best_restart = -1;
  std::vector<int> sequence;
  std::vector<TracePoint> trace;
};

// One optimization from theta0.
EncodeReport encode_once(const TargetSpec& t, const Circuit& c, const RealVector& theta0,
                         const OptimizeOptions& opts);

// Uniform random start in [-pi, pi)^d from stream restart of seed.
RealVector random_start(int dimension, std::uint64_t seed, int restart);

// Best of opts.restarts runs. GQSP families without a fixed sequence draw one
// with random_sequence(seed).
EncodeReport multistart_encode(const TargetSpec& t, const AnsatzSpec& spec, const OptimizeOptions& opts);

// Random layering: consecutive shuffles of the generator indices, truncated to
// length layers, so each generator appears once per |G| layers.
std::vector<int> random_sequence(int num_generators, int layers, std::uint64_t seed, std::uint64_t stream);

struct LayerSearchOptions {
  int estimate = 1;
  double start_factor = 1.05;
  int max_layers = 200;
  int min_layers = 0;
  int sequences = 10;
  int inits = 5;
};

struct LayerTrial {
  int layers = 0;
  bool success = false;
  EncodeReport best;
};

struct LayerSearchResult {
  std::optional<int> threshold;
  bool partial = false;
  std::string note;
  std::vector<LayerTrial> trials;  // in the order visited
};

LayerSearchResult layer_threshold_search(const TargetSpec& t, const AnsatzSpec& family,
                                         const OptimizeOptions& opts, const LayerSearchOptions& search);

struct GreedyOptions {
  int max_depth = 30;
};

struct GreedyResult {
  std::vector<int> sequence;
  EncodeReport report;
  std::vector<double> epsilon_by_depth;  // index d: best epsilon with d layers
};

GreedyResult greedy_generator_search(const TargetSpec& t, const std::vector<PauliSum>& generators,
                                     bool hermitian, const OptimizeOptions& opts,
                                     const GreedyOptions& greedy = {});

void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace);

}  // namespace vbe
