#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "vbe/targets.hpp"

namespace vbe::cli {

namespace {

struct OptimizerArgs {
  std::uint64_t seed = 0;
  int restarts = 10;
  double tol_exact = 1e-10;
  double tol_grad = 1e-5;
  int max_iter = 3000;
  double delta = kDefaultDelta;
  int jobs = 1;

  OptimizeOptions options() const {
    OptimizeOptions o;
    o.seed = seed;
    o.restarts = restarts;
    o.epsilon_exact = tol_exact;
    o.grad_norm_tol = tol_grad;
    o.max_iterations = max_iter;
    o.jobs = jobs;
    try {
      o.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!(delta > 0.0)) throw ConfigError("--delta must be positive");
    return o;
  }

  void to_json(Json& j) const {
    j["seed"] = seed;
    j["restarts"] = restarts;
    j["tol_exact"] = tol_exact;
    j["tol_grad"] = tol_grad;
    j["max_iter"] = max_iter;
    j["delta"] = delta;
    j["jobs"] = jobs;
  }
};

struct EncodeArgs {
  std::string target;
  std::string ansatz = "block:2";
  int layers = 1;
  // Unset follows the target: hermitian targets get the hermitian ansatz.
  std::optional<bool> hermitian;
  bool real = false;
  int ancillas = 1;
  OptimizerArgs opt;
  std::string trace;
  std::string out;

  Json to_json() const {
    Json j;
    j["target"] = target;
    j["ansatz"] = ansatz;
    j["layers"] = layers;
    j["hermitian"] = hermitian ? Json(*hermitian) : Json("auto");
    j["real"] = real;
    j["ancillas"] = ancillas;
    opt.to_json(j);
    j["trace"] = trace;
    j["out"] = out;
    return j;
  }
};

struct SweepArgs {
  EncodeArgs base;
  int from = 1;
  int to = 1;
};

struct ClosureArgs {
  std::string sym;
  int n = 0;
  std::string gens;
  std::string target;
  std::size_t cap = 0;
  std::uint64_t seed = 0;
  std::string basis_out;
  std::string out;

  Json to_json() const {
    Json j;
    j["sym"] = sym;
    j["n"] = n;
    j["gens"] = gens;
    j["target"] = target;
    j["cap"] = cap;
    j["seed"] = seed;
    j["basis_out"] = basis_out;
    j["out"] = out;
    return j;
  }
};

struct BenchArgs {
  std::string table;
  int max_n = 0;
  BenchOptions opts;
  std::string out;
};

struct ResourceArgs {
  int n = 2;
  std::string field = "complex";
  std::string structure = "arbitrary";
  int ancillas = 1;
  std::string ansatz = "block:2";
  bool csv = false;
};

// Writes to --out when given, otherwise to the command's stdout.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  write(f);
}

void emit_json(const std::string& path, std::ostream& out, const Json& j) {
  emit(path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

Json report_json(const EncodeReport& r) {
  Json j;
  j["epsilon"] = r.epsilon;
  j["converged"] = r.converged;
  j["stationary"] = r.stationary;
  j["stop_reason"] = stop_reason_name(r.reason);
  j["iterations"] = r.iterations;
  j["param_count"] = r.param_count;
  j["nonlocal_gates"] = r.nonlocal_gates;
  j["layers"] = r.layers;
  j["best_restart"] = r.best_restart;
  j["sequence"] = r.sequence;
  j["wall_time"] = r.wall_time;
  j["theta"] = std::vector<double>(r.theta.data(), r.theta.data() + r.theta.size());
  return j;
}

struct Prepared {
  ResolvedTarget target;
  ResolvedAnsatz ansatz;
  TargetSpec spec;
  OptimizeOptions options;
};

Prepared prepare(const EncodeArgs& a, int layers) {
  Prepared p;
  p.options = a.opt.options();
  const SpecString as = parse_ansatz_spec(a.ansatz);
  p.target = resolve_target(a.target, a.opt.seed, ansatz_symmetry(as));
  p.ansatz = resolve_ansatz(as, p.target.n, layers, a.hermitian.value_or(p.target.hermitian), a.real, a.ancillas);
  p.spec = subnormalize(p.target.matrix, a.opt.delta);
  return p;
}

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  Prepared p = prepare(a, a.layers);
  p.options.record_trace = !a.trace.empty();
  const EncodeReport r = multistart_encode(p.spec, p.ansatz.spec, p.options);
  Json j;
  j["command"] = "encode";
  j["target"] = p.target.description;
  j["ansatz"] = p.ansatz.description;
  j["alpha"] = p.spec.alpha;
  j["delta"] = p.spec.delta;
  j["notes"] = p.target.notes;
  j.update(report_json(r));
  j["resolved_config"] = a.to_json();
  if (!a.trace.empty()) {
    std::ofstream f(a.trace);
    if (!f) throw ConfigError("cannot write '" + a.trace + "'");
    write_trace_csv(f, r.trace);
  }
  emit_json(a.out, out, j);
  return r.converged ? kExitOk : kExitDomain;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  // Resolve once up front so configuration errors surface before any work.
  Prepared p = prepare(a.base, std::max(a.from, 1));
  bool any = a.from > a.to;
  std::ostringstream csv;
  csv << "M,epsilon,iterations,params,nlg\n" << std::setprecision(6);
  for (int m = a.from; m <= a.to; ++m) {
    AnsatzSpec spec = p.ansatz.spec;
    spec.layers = m;
    if (auto* g = std::get_if<GqspFamily>(&spec.family)) g->sequence.clear();
    const EncodeReport r = multistart_encode(p.spec, spec, p.options);
    any = any || r.converged;
    csv << m << ',' << r.epsilon << ',' << r.iterations << ',' << r.param_count << ',' << r.nonlocal_gates << '\n';
  }
  emit(a.base.out, out, [&](std::ostream& os) { os << csv.str(); });
  return any ? kExitOk : kExitDomain;
}

int cmd_closure(const ClosureArgs& a, std::ostream& out) {
  if (a.sym.empty() == a.gens.empty()) throw ConfigError("closure: give exactly one of --sym or --gens");
  GeneratorSet gs;
  std::optional<SymmetryKind> kind;
  if (!a.sym.empty()) {
    if (a.n < 1) throw ConfigError("closure: --sym needs --n");
    try {
      kind = parse_symmetry(a.sym);
      gs = heisenberg_generator_set(*kind, a.n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    gs.generators = load_generators(a.gens);
    if (gs.generators.empty()) throw ConfigError("closure: empty generator file");
    gs.n = gs.generators.front().num_qubits();
    gs.label = a.gens;
    if (a.n && a.n != gs.n) throw ConfigError("closure: --n does not match the generator file");
  }
  std::optional<ResolvedTarget> target;
  if (!a.target.empty()) {
    target = resolve_target(a.target, a.seed, kind);
    if (target->n != gs.n) throw ConfigError("closure: target and generators act on different qubit counts");
  }

  Json j;
  j["command"] = "closure";
  j["generators"] = gs.label;
  j["n"] = gs.n;
  ClosureOptions co;
  co.cap = a.cap;
  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const ClosureBasis b = compute_closure(gs, co);
    j["dim_l"] = b.dim_l();
    j["dim_b"] = b.dim_b();
    if (target) {
      const Expressibility e = expressible(target->matrix, b.algebra);
      j["target"] = target->description;
      j["expressible"] = e.expressible;
      j["residual"] = e.residual;
    }
    if (!a.basis_out.empty()) {
      std::ofstream f(a.basis_out);
      if (!f) throw ConfigError("cannot write '" + a.basis_out + "'");
      for (std::size_t k = 0; k < b.algebra.size(); ++k) {
        if (k) f << "---\n";
        f << format_pauli_sum(b.algebra[k]);
      }
    }
  } catch (const ClosureCapExceeded& e) {
    j["error"] = e.what();
    j["partial"] = true;
    j["dim_l"] = e.dim_l();
    j["dim_b"] = e.dim_b();
    code = kExitDomain;
  }
  j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  j["resolved_config"] = a.to_json();
  emit_json(a.out, out, j);
  return code;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchOptions o = a.opts;
  if (a.max_n > 0) o.max_n = a.max_n;
  if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");
  const auto cells = bench_table(a.table, o, err);
  emit(a.out, out, [&](std::ostream& os) { write_bench_csv(os, a.table, cells); });
  for (const auto& c : cells) {
    if (!c.pass) return kExitDomain;
  }
  return kExitOk;
}

int cmd_resources(const ResourceArgs& a, std::ostream& out) {
  if (a.n < 1 || a.n > 30) throw ConfigError("resources: --n out of range");
  if (a.field != "complex" && a.field != "real") throw ConfigError("resources: --field must be complex or real");
  if (a.structure != "arbitrary" && a.structure != "hermitian") {
    throw ConfigError("resources: --structure must be arbitrary or hermitian");
  }
  const Field field = a.field == "real" ? Field::Real : Field::Complex;
  const Structure st = a.structure == "hermitian" ? Structure::Hermitian : Structure::Arbitrary;
  const SpecString as = parse_ansatz_spec(a.ansatz);
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("free_params", std::to_string(free_parameter_bound(a.n, field, st)));
  rows.emplace_back("tlb_cnot_complex_arbitrary", std::to_string(tlb_cnot(a.n)));
  if (as.kind == "block") {
    const int block = std::stoi(as.flags.front());
    const Restriction r = field == Field::Real ? Restriction::Real : Restriction::Complex;
    const bool herm = st == Structure::Hermitian;
    const GenericThreshold g = generic_threshold(block, a.n, a.ancillas, r, herm);
    BoundQuery q{a.n, a.n + a.ancillas, field, st, g.a};
    rows.emplace_back("a_ratio", g.a.str());
    rows.emplace_back("nonlocal_gate_bound", std::to_string(nonlocal_gate_bound(q)));
    rows.emplace_back("threshold_layers", std::to_string(g.layers));
    AnsatzSpec s;
    s.family = GenericFamily{block};
    s.layers = g.layers;
    s.restriction = r;
    s.hermitian = herm;
    s.ancillas = a.ancillas;
    s.system_qubits = a.n;
    const Circuit c = build_ansatz(s);
    rows.emplace_back("params_at_threshold", std::to_string(c.param_count));
    rows.emplace_back("nonlocal_gates_at_threshold", std::to_string(count_nonlocal_gates(c)));
  } else {
    const auto kind = ansatz_symmetry(as);
    if (!kind) throw ConfigError("resources: gqsp ansatz needs sym=");
    const ClosureBasis b = compute_closure(heisenberg_generator_set(*kind, a.n));
    const int q = st == Structure::Hermitian ? 1 : 2;
    rows.emplace_back("a_ratio", symmetric_a_ratio(*kind, a.n).str());
    rows.emplace_back("dim_l", std::to_string(b.dim_l()));
    rows.emplace_back("dim_b", std::to_string(b.dim_b()));
    for (auto mode : {SymmetricThresholdMode::ParamInversion, SymmetricThresholdMode::LiteralFormula}) {
      rows.emplace_back(std::string("threshold_layers_") + threshold_mode_name(mode),
                        std::to_string(threshold_layers_symmetric(static_cast<std::int64_t>(b.dim_b()), q, mode)));
    }
  }
  if (a.csv) {
    out << "quantity,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
  } else {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(w) + 2) << k << v << '\n';
  }
  return kExitOk;
}

void add_optimizer_flags(CLI::App* sub, OptimizerArgs& o) {
  sub->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  sub->add_option("--restarts", o.restarts, "Random restarts")->capture_default_str();
  sub->add_option("--tol-exact", o.tol_exact, "Epsilon counted as exact")->capture_default_str();
  sub->add_option("--tol-grad", o.tol_grad, "Gradient norm stopping tolerance")->capture_default_str();
  sub->add_option("--max-iter", o.max_iter, "BFGS iteration cap")->capture_default_str();
  sub->add_option("--delta", o.delta, "Subnormalization margin")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
}

void add_encode_flags(CLI::App* sub, EncodeArgs& e) {
  sub->add_option("--target", e.target, "heisenberg:..., symheis:..., random:..., span:... or file:PATH")->required();
  sub->add_option("--ansatz", e.ansatz, "block:K or gqsp:sym=S|gens=PATH[,seq=i.j.k]")->capture_default_str();
  sub->add_flag("--hermitian,!--no-hermitian", e.hermitian,
                "Hermitian ansatz U V U^dagger (default: when the target is hermitian)");
  sub->add_flag("--real", e.real, "Real-valued gates only");
  sub->add_option("--ancillas", e.ancillas, "Block-encoding ancillas")->capture_default_str();
  add_optimizer_flags(sub, e.opt);
  sub->add_option("--out", e.out, "Output file (default stdout)");
}

}  // namespace

SymmetricRun symmetric_protocol(SymmetryKind kind, int n, std::uint64_t seed, int jobs) {
  SymmetricRun r;
  const GeneratorSet gs = heisenberg_generator_set(kind, n);
  r.dim_b = compute_closure(gs).dim_b();
  r.estimate = threshold_layers_symmetric(static_cast<std::int64_t>(r.dim_b), 1, SymmetricThresholdMode::ParamInversion);
  AnsatzSpec spec;
  spec.family = GqspFamily{gs.generators, {}, gs.label};
  spec.hermitian = true;
  spec.system_qubits = n;
  OptimizeOptions o;
  o.seed = seed;
  o.jobs = jobs;
  LayerSearchOptions ls;
  ls.estimate = std::max(r.estimate, 1);
  const TargetSpec t = subnormalize(heisenberg(random_symmetric_heisenberg(kind, n, seed)));
  r.search = layer_threshold_search(t, spec, o, ls);
  r.threshold = r.search.threshold;
  if (r.threshold) {
    for (const auto& tr : r.search.trials) {
      if (tr.layers == *r.threshold) {
        r.params = tr.best.param_count;
        r.nonlocal_gates = tr.best.nonlocal_gates;
      }
    }
  }
  return r;
}

LcuComparison lcu_compare(SymmetryKind kind, int n, std::uint64_t seed, int jobs) {
  LcuComparison c;
  c.symmetry = symmetry_name(kind);
  const SymmetricRun run = symmetric_protocol(kind, n, seed, jobs);
  if (!run.threshold) throw std::runtime_error("lcu_compare: no exact encoding found for " + c.symmetry);
  c.layers = *run.threshold;
  c.vbe_gates = run.nonlocal_gates;
  c.lcu = lcu_estimate(heisenberg_pauli(random_symmetric_heisenberg(kind, n, seed)));
  c.ratio = static_cast<double>(c.lcu.cnot_count) / c.vbe_gates;
  return c;
}

namespace {

std::string row_name(SymmetryKind k, int n) { return std::string(symmetry_name(k)) + " n=" + std::to_string(n); }

BenchCell int_cell(std::string row, std::string quantity, std::int64_t computed, std::optional<std::int64_t> pinned,
                   bool pass_without_pin = true) {
  BenchCell c{std::move(row), std::move(quantity), std::to_string(computed), "", pass_without_pin};
  if (pinned) {
    c.pinned = std::to_string(*pinned);
    c.pass = computed == *pinned;
  }
  return c;
}

// Reference values: dimension D of B, random-layering threshold and circuit
// parameter count at the threshold.
struct SymRef {
  int d, m, np;
};
const std::map<SymmetryKind, std::map<int, SymRef>>& symmetric_reference() {
  static const std::map<SymmetryKind, std::map<int, SymRef>> ref = {
      {SymmetryKind::Z2xz, {{2, {6, 2, 9}}, {3, {20, 7, 24}}, {4, {72, 24, 75}}}},
      {SymmetryKind::Cn, {{2, {6, 2, 9}}, {3, {10, 4, 15}}, {4, {28, 9, 30}}, {5, {68, 23, 72}}}},
      {SymmetryKind::Sn,
       {{2, {6, 2, 9}},
        {3, {10, 4, 15}},
        {4, {19, 6, 21}},
        {5, {28, 9, 30}},
        {6, {44, 15, 48}},
        {7, {60, 20, 63}},
        {8, {85, 28, 87}}}},
  };
  return ref;
}

bool optimization_is_heavy(SymmetryKind k, int n) { return n >= 5 || (n >= 4 && k != SymmetryKind::Sn); }

std::vector<BenchCell> free_params_table(int max_n) {
  struct Class {
    const char* name;
    Restriction r;
    bool hermitian;
    std::int64_t bound4, params4, cnots4, nlg_bound4;
  };
  const Class classes[] = {{"complex_arbitrary", Restriction::Complex, false, 512, 527, 128, 125},
                           {"real_arbitrary", Restriction::Real, false, 256, 261, 128, 126},
                           {"complex_hermitian", Restriction::Complex, true, 256, 271, 128, 61},
                           {"real_hermitian", Restriction::Real, true, 136, 141, 136, 66}};
  std::vector<BenchCell> cells;
  for (int n = 1; n <= max_n; ++n) {
    const auto pin = [&](std::int64_t v) { return n == 4 ? std::optional<std::int64_t>(v) : std::nullopt; };
    for (const Class& c : classes) {
      const std::string row = std::string(c.name) + " n=" + std::to_string(n);
      const Field f = c.r == Restriction::Real ? Field::Real : Field::Complex;
      const Structure st = c.hermitian ? Structure::Hermitian : Structure::Arbitrary;
      const GenericThreshold g = generic_threshold(2, n, 1, c.r, c.hermitian);
      AnsatzSpec s;
      s.family = GenericFamily{2};
      s.layers = g.layers;
      s.restriction = c.r;
      s.hermitian = c.hermitian;
      s.system_qubits = n;
      const Circuit circ = build_ansatz(s);
      const std::int64_t bound = free_parameter_bound(n, f, st);
      cells.push_back(int_cell(row, "free_params", bound, pin(c.bound4)));
      cells.push_back(int_cell(row, "threshold_layers", g.layers, std::nullopt));
      cells.push_back(int_cell(row, "circuit_params", circ.param_count, pin(c.params4), circ.param_count >= bound));
      cells.push_back(int_cell(row, "cnot_count", count_nonlocal_gates(circ), pin(c.cnots4)));
      const BoundQuery q{n, n + 1, f, st, g.a};
      cells.push_back(int_cell(row, "nonlocal_gate_bound", nonlocal_gate_bound(q), pin(c.nlg_bound4)));
    }
  }
  return cells;
}

std::vector<BenchCell> bdim_table(int max_n, std::ostream& log) {
  std::vector<BenchCell> cells;
  for (const auto& [kind, rows] : symmetric_reference()) {
    for (const auto& [n, ref] : rows) {
      if (n > max_n) {
        log << "bdim-table: " << row_name(kind, n) << " above --max-n, skipped\n";
        continue;
      }
      const auto t0 = std::chrono::steady_clock::now();
      const ClosureBasis b = compute_closure(heisenberg_generator_set(kind, n));
      const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      log << "bdim-table: " << row_name(kind, n) << " in " << std::fixed << std::setprecision(2) << sec << " s\n";
      log.unsetf(std::ios::floatfield);
      cells.push_back(int_cell(row_name(kind, n), "dim_l", static_cast<std::int64_t>(b.dim_l()), std::nullopt));
      cells.push_back(int_cell(row_name(kind, n), "dim_b", static_cast<std::int64_t>(b.dim_b()), ref.d));
    }
  }
  return cells;
}

std::vector<BenchCell> gqsp_table(const BenchOptions& o, int max_n, std::ostream& log) {
  std::vector<BenchCell> cells;
  for (const auto& [kind, rows] : symmetric_reference()) {
    for (const auto& [n, ref] : rows) {
      if (n > max_n) continue;
      if (optimization_is_heavy(kind, n) && !o.heavy) {
        log << "gqsp-table: " << row_name(kind, n) << " needs --heavy, skipped\n";
        continue;
      }
      const SymmetricRun r = symmetric_protocol(kind, n, o.seed, o.jobs);
      const std::string row = row_name(kind, n);
      cells.push_back(int_cell(row, "D", static_cast<std::int64_t>(r.dim_b), ref.d));
      cells.push_back(int_cell(row, "M_thres", r.threshold.value_or(-1), ref.m));
      cells.push_back(int_cell(row, "N_pc", r.threshold ? r.params : -1, ref.np));
    }
  }
  return cells;
}

std::vector<BenchCell> lcu_table(const BenchOptions& o, std::ostream& log) {
  std::vector<BenchCell> cells;
  for (SymmetryKind k : {SymmetryKind::Z2xz, SymmetryKind::Cn, SymmetryKind::Sn}) {
    if (optimization_is_heavy(k, o.n) && !o.heavy) {
      log << "lcu-compare: " << row_name(k, o.n) << " needs --heavy, skipped\n";
      continue;
    }
    const LcuComparison c = lcu_compare(k, o.n, o.seed, o.jobs);
    const std::string row = row_name(k, o.n);
    cells.push_back(int_cell(row, "vbe_layers", c.layers, std::nullopt));
    cells.push_back(int_cell(row, "vbe_2q_gates", c.vbe_gates, std::nullopt));
    cells.push_back(int_cell(row, "lcu_terms", c.lcu.term_count, std::nullopt));
    cells.push_back(int_cell(row, "lcu_ancillas", c.lcu.ancillas, std::nullopt));
    cells.push_back(int_cell(row, "lcu_2q_gates", c.lcu.cnot_count, std::nullopt));
    std::ostringstream ratio;
    ratio << std::setprecision(4) << c.ratio;
    cells.push_back({row, "lcu_over_vbe", ratio.str(), ">=10", c.ratio >= 10.0});
    cells.push_back({row, "lcu_model", c.lcu.model + (c.lcu.prepare_counted_twice ? "/prepare_twice" : "/prepare_once"),
                     "", true});
  }
  return cells;
}

}  // namespace

std::vector<BenchCell> bench_table(const std::string& table, const BenchOptions& o, std::ostream& log) {
  if (table == "free-params") return free_params_table(o.max_n.value_or(4));
  if (table == "bdim-table") return bdim_table(o.max_n.value_or(4), log);
  if (table == "gqsp-table") return gqsp_table(o, o.max_n.value_or(3), log);
  if (table == "lcu-compare") return lcu_table(o, log);
  throw ConfigError("unknown bench table '" + table + "'");
}

void write_bench_csv(std::ostream& out, const std::string& table, const std::vector<BenchCell>& cells) {
  out << "table,row,quantity,computed,pinned,pass\n";
  for (const auto& c : cells) {
    out << table << ',' << c.row << ',' << c.quantity << ',' << c.computed << ',' << c.pinned << ','
        << (c.pass ? "true" : "false") << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational block-encoding toolkit", "vbe"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config; flags on the command line take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Optimize one encoding and print a JSON report");
  add_encode_flags(encode, enc);
  encode->add_option("--layers", enc.layers, "Layer count M")->capture_default_str();
  encode->add_option("--trace", enc.trace, "CSV file for the best run's optimizer trace");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Encode over a layer range and print CSV");
  add_encode_flags(sweep, sw.base);
  sweep->add_option("--from", sw.from, "First layer count")->capture_default_str();
  sweep->add_option("--to", sw.to, "Last layer count (empty range when below --from)")->capture_default_str();

  ClosureArgs cl;
  auto* closure = app.add_subcommand("closure", "Lie and associative closure dimensions");
  closure->add_option("--sym", cl.sym, "Z2xz, Cn or Sn generator set");
  closure->add_option("--n", cl.n, "System qubits for --sym");
  closure->add_option("--gens", cl.gens, "Generator file (Pauli-sum text, sums separated by ---)");
  closure->add_option("--target", cl.target, "Target to test for expressibility");
  closure->add_option("--cap", cl.cap, "Basis size cap (0 = 4^n)");
  closure->add_option("--seed", cl.seed, "Seed for random targets");
  closure->add_option("--basis-out", cl.basis_out, "Write the basis of B to this file");
  closure->add_option("--out", cl.out, "Output file (default stdout)");

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Reproduce a reference table with pass flags");
  bench->add_option("table", bn.table, "free-params | gqsp-table | bdim-table | lcu-compare")->required();
  bench->add_option("--max-n", bn.max_n, "Largest system size");
  bench->add_option("--n", bn.opts.n, "System size for lcu-compare")->capture_default_str();
  bench->add_flag("--heavy", bn.opts.heavy, "Include long-running cells");
  bench->add_option("--seed", bn.opts.seed, "Seed")->capture_default_str();
  bench->add_option("--jobs", bn.opts.jobs, "Worker threads")->capture_default_str();
  bench->add_option("--out", bn.out, "Output file (default stdout)");

  ResourceArgs rs;
  auto* resources = app.add_subcommand("resources", "Bound table for one query");
  resources->add_option("--n", rs.n, "System qubits")->capture_default_str();
  resources->add_option("--field", rs.field, "complex or real")->capture_default_str();
  resources->add_option("--structure", rs.structure, "arbitrary or hermitian")->capture_default_str();
  resources->add_option("--ancillas", rs.ancillas, "Block-encoding ancillas")->capture_default_str();
  resources->add_option("--ansatz", rs.ansatz, "block:K or gqsp:sym=S")->capture_default_str();
  resources->add_flag("--csv", rs.csv, "CSV instead of aligned text");

  for (auto* sub : {encode, sweep, closure, bench, resources}) sub->allow_config_extras(CLI::config_extras_mode::error);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) return cmd_encode(enc, out);
    if (*sweep) return cmd_sweep(sw, out);
    if (*closure) return cmd_closure(cl, out);
    if (*bench) return cmd_bench(bn, out, err);
    if (*resources) return cmd_resources(rs, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace vbe::cli
