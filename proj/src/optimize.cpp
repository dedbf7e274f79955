#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "vbe/optimize.hpp"
#include "vbe/rng.hpp"

namespace vbe {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs fn(i) for i in [0, count) on up to jobs threads.
template <class Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int nthreads = std::min(jobs, count);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

bool better(const EncodeReport& a, const EncodeReport& b) {
  if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
  return a.best_restart < b.best_restart;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return CounterRng::mix(CounterRng::mix(seed ^ CounterRng::mix(a + 0x51ed27a1ULL)) ^ (b * 0x9e3779b97f4a7c15ULL));
}

}  // namespace

void OptimizeOptions::validate() const {
  if (!(grad_norm_tol > 0) || !(epsilon_exact > 0)) throw std::invalid_argument("tolerances must be positive");
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be non-negative");
}

RealVector random_start(int dimension, std::uint64_t seed, int restart) {
  CounterRng rng(seed, streams::kRestart + static_cast<std::uint64_t>(restart));
  RealVector x(dimension);
  for (int k = 0; k < dimension; ++k) x(k) = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return x;
}

std::vector<int> random_sequence(int num_generators, int layers, std::uint64_t seed, std::uint64_t stream) {
  if (num_generators < 1) throw std::invalid_argument("random_sequence: no generators");
  CounterRng rng(seed, streams::kSequence + stream);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(layers));
  std::vector<int> perm(static_cast<std::size_t>(num_generators));
  while (static_cast<int>(out.size()) < layers) {
    for (int k = 0; k < num_generators; ++k) perm[static_cast<std::size_t>(k)] = k;
    for (int k = num_generators - 1; k > 0; --k) {
      const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k + 1)));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(j)]);
    }
    for (int k = 0; k < num_generators && static_cast<int>(out.size()) < layers; ++k) {
      out.push_back(perm[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

EncodeReport encode_once(const TargetSpec& t, const Circuit& c, const RealVector& theta0,
                         const OptimizeOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const CostFunction cf(t, c);
  BfgsOptions bo;
  bo.grad_tol = opts.grad_norm_tol;
  bo.grad_tol_relative_to_sqrt = true;
  bo.f_target = opts.epsilon_exact * opts.epsilon_exact;
  bo.max_iterations = opts.max_iterations;
  bo.record_trace = opts.record_trace;
  const Objective obj = [&cf](const RealVector& x, RealVector& g) {
    return cf.value_and_gradient(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), g);
  };
  BfgsResult r = bfgs_minimize(obj, theta0, bo);

  EncodeReport rep;
  rep.epsilon = std::sqrt(std::max(r.f, 0.0));
  rep.theta = std::move(r.x);
  rep.iterations = r.iterations;
  rep.converged = rep.epsilon <= opts.epsilon_exact;
  rep.stationary = r.converged;
  rep.reason = r.reason;
  rep.param_count = count_parameters(c);
  rep.nonlocal_gates = count_nonlocal_gates(c);
  rep.layers = c.layers;
  rep.best_restart = 0;
  for (auto& tp : r.trace) tp.value = std::sqrt(std::max(tp.value, 0.0));
  rep.trace = std::move(r.trace);
  rep.wall_time = seconds_since(t0);
  return rep;
}

EncodeReport multistart_encode(const TargetSpec& t, const AnsatzSpec& spec, const OptimizeOptions& opts) {
  opts.validate();
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> sequence;
  if (const auto* g = std::get_if<GqspFamily>(&spec.family)) {
    sequence = g->sequence.empty()
                   ? random_sequence(static_cast<int>(g->generators.size()), spec.layers, opts.seed, 0)
                   : g->sequence;
  }
  const Circuit c = build_ansatz(spec, sequence);
  std::vector<EncodeReport> runs(static_cast<std::size_t>(opts.restarts));
  parallel_for(opts.restarts, opts.jobs, [&](int r) {
    EncodeReport rep = encode_once(t, c, random_start(c.param_count, opts.seed, r), opts);
    rep.best_restart = r;
    runs[static_cast<std::size_t>(r)] = std::move(rep);
  });
  EncodeReport best = runs.front();
  for (const auto& r : runs) {
    if (better(r, best)) best = r;
  }
  best.sequence = sequence;
  best.wall_time = seconds_since(t0);
  return best;
}

LayerSearchResult layer_threshold_search(const TargetSpec& t, const AnsatzSpec& family,
                                         const OptimizeOptions& opts, const LayerSearchOptions& search) {
  opts.validate();
  LayerSearchResult out;
  const auto* gq = std::get_if<GqspFamily>(&family.family);
  const int sequences = gq && gq->sequence.empty() ? std::max(search.sequences, 1) : 1;
  const int inits = gq ? std::max(search.inits, 1) : opts.restarts;

  auto trial = [&](int m) {
    LayerTrial tr;
    tr.layers = m;
    AnsatzSpec spec = family;
    spec.layers = m;
    for (int s = 0; s < sequences && !tr.success; ++s) {
      std::vector<int> seq;
      if (gq) {
        seq = gq->sequence.empty()
                  ? random_sequence(static_cast<int>(gq->generators.size()), m, opts.seed,
                                    (static_cast<std::uint64_t>(m) << 16) + static_cast<std::uint64_t>(s))
                  : gq->sequence;
        std::get<GqspFamily>(spec.family).sequence = seq;
      }
      const Circuit c = build_ansatz(spec);
      const std::uint64_t seed = derive_seed(opts.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(s));
      std::vector<EncodeReport> runs(static_cast<std::size_t>(inits));
      std::atomic<bool> found{false};
      parallel_for(inits, opts.jobs, [&](int i) {
        if (found) return;
        EncodeReport rep = encode_once(t, c, random_start(c.param_count, seed, i), opts);
        rep.best_restart = s * inits + i;
        rep.sequence = seq;
        if (rep.converged) found = true;
        runs[static_cast<std::size_t>(i)] = std::move(rep);
      });
      for (auto& r : runs) {
        if (r.theta.size() == 0) continue;
        if (!tr.best.theta.size() || better(r, tr.best)) tr.best = r;
      }
      tr.success = tr.best.converged;
    }
    out.trials.push_back(tr);
    return tr.success;
  };

  const int start = std::max(search.min_layers,
                             static_cast<int>(std::ceil(search.start_factor * search.estimate - 1e-12)));
  if (start > search.max_layers) {
    out.partial = true;
    out.note = "start layer " + std::to_string(start) + " exceeds budget " + std::to_string(search.max_layers);
    return out;
  }
  if (trial(start)) {
    int m = start;
    while (m - 1 >= search.min_layers && trial(m - 1)) --m;
    out.threshold = m;
  } else {
    for (int m = start + 1; m <= search.max_layers; ++m) {
      if (trial(m)) {
        out.threshold = m;
        break;
      }
    }
    if (!out.threshold) {
      out.partial = true;
      out.note = "no exact encoding up to " + std::to_string(search.max_layers) + " layers";
    }
  }
  return out;
}

GreedyResult greedy_generator_search(const TargetSpec& t, const std::vector<PauliSum>& generators,
                                     bool hermitian, const OptimizeOptions& opts, const GreedyOptions& greedy) {
  opts.validate();
  if (generators.empty()) throw std::invalid_argument("greedy_generator_search: no generators");
  const int n = t.system_qubits();
  auto make = [&](const std::vector<int>& seq) {
    std::vector<PauliSum> gens;
    for (int i : seq) gens.push_back(generators[static_cast<std::size_t>(i)]);
    Circuit c = build_gqsp_ansatz(gens, n);
    return hermitian ? hermitize(c, VChoice::AncillaHadamard) : c;
  };

  GreedyResult res;
  {
    const Circuit c = make({});
    EncodeReport best;
    for (int r = 0; r < opts.restarts; ++r) {
      EncodeReport rep = encode_once(t, c, random_start(c.param_count, opts.seed, r), opts);
      rep.best_restart = r;
      if (r == 0 || better(rep, best)) best = rep;
    }
    res.report = best;
    res.epsilon_by_depth.push_back(best.epsilon);
  }
  while (!res.report.converged && static_cast<int>(res.sequence.size()) < greedy.max_depth) {
    EncodeReport best_child;
    int best_gen = -1;
    for (int gi = 0; gi < static_cast<int>(generators.size()); ++gi) {
      std::vector<int> seq = res.sequence;
      seq.push_back(gi);
      const Circuit c = make(seq);
      RealVector theta0 = RealVector::Zero(c.param_count);
      theta0.head(res.report.theta.size()) = res.report.theta;
      EncodeReport rep = encode_once(t, c, theta0, opts);
      if (!rep.converged) {
        // The identity layer is a saddle point: with the new ancilla rotation at
        // identity the new gadget angle has no first-order effect.
        const Eigen::Index fresh = c.param_count - res.report.theta.size();
        RealVector kicked = theta0;
        kicked.tail(fresh) += 1e-2 * random_start(static_cast<int>(fresh), opts.seed, static_cast<int>(seq.size()));
        EncodeReport alt = encode_once(t, c, kicked, opts);
        if (alt.epsilon < rep.epsilon) rep = std::move(alt);
      }
      if (best_gen < 0 || rep.epsilon < best_child.epsilon) {
        best_child = rep;
        best_gen = gi;
      }
    }
    res.sequence.push_back(best_gen);
    best_child.sequence = res.sequence;
    res.report = best_child;
    res.epsilon_by_depth.push_back(best_child.epsilon);
  }
  res.report.sequence = res.sequence;
  return res;
}

void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace) {
  os << "iteration,epsilon,grad_norm\n";
  os.precision(17);
  for (const auto& p : trace) os << p.iteration << ',' << p.value << ',' << p.grad_norm << '\n';
}

}  // namespace vbe
