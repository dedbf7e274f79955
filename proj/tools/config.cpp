#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vbe/targets.hpp"

namespace vbe::cli {

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("bad value '" + text + "' for " + key);
  return v;
}

Field field_of(const SpecString& s) {
  const bool real = s.has_flag("real"), complex = s.has_flag("complex");
  if (real && complex) throw ConfigError("target '" + s.raw + "': both real and complex");
  return real ? Field::Real : Field::Complex;
}

Structure structure_of(const SpecString& s) {
  int count = 0;
  Structure out = Structure::Arbitrary;
  for (auto [name, st] : {std::pair{"arbitrary", Structure::Arbitrary}, std::pair{"hermitian", Structure::Hermitian},
                          std::pair{"unitary", Structure::Unitary}}) {
    if (s.has_flag(name)) {
      out = st;
      ++count;
    }
  }
  if (count > 1) throw ConfigError("target '" + s.raw + "': conflicting structure flags");
  return out;
}

SymmetryKind symmetry_of(const SpecString& s) {
  const auto v = s.get("sym");
  if (!v) throw ConfigError("'" + s.raw + "': missing sym=");
  try {
    return parse_symmetry(*v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int qubits_of(const SpecString& s) {
  const int n = s.get_int("n");
  if (n < 1 || n > kMaxDenseQubits) throw ConfigError("'" + s.raw + "': n out of range");
  return n;
}

}  // namespace

SpecString SpecString::parse(const std::string& s) {
  SpecString out;
  out.raw = s;
  const auto colon = s.find(':');
  out.kind = s.substr(0, colon);
  if (out.kind.empty()) throw ConfigError("empty spec");
  if (colon == std::string::npos) return out;
  std::stringstream ss(s.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      out.flags.push_back(item);
    } else if (!out.values.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
      throw ConfigError("'" + s + "': duplicate key " + item.substr(0, eq));
    }
  }
  return out;
}

bool SpecString::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::optional<std::string> SpecString::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

int SpecString::get_int(const std::string& key, std::optional<int> fallback) const {
  const auto v = get(key);
  if (!v) {
    if (!fallback) throw ConfigError("'" + raw + "': missing " + key + "=");
    return *fallback;
  }
  return parse_number<int>(key, *v);
}

double SpecString::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? parse_number<double>(key, *v) : fallback;
}

std::uint64_t SpecString::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

void SpecString::restrict_to(const std::vector<std::string>& keys, const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : values) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("'" + raw + "': unknown key " + k);
  }
  for (const auto& f : flags) {
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
      throw ConfigError("'" + raw + "': unknown flag " + f);
    }
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ResolvedTarget resolve_target(const std::string& text, std::uint64_t seed, std::optional<SymmetryKind> lattice_hint) {
  ResolvedTarget t;
  Json d;
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    ComplexMatrix m;
    try {
      m = load_matrix(path);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    d["kind"] = "file";
    d["path"] = path;
    d["rows"] = m.rows();
    d["cols"] = m.cols();
    const ComplexMatrix padded = zero_pad(m);
    if (padded.rows() != m.rows() || padded.cols() != m.cols()) {
      t.notes.push_back("zero padded " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " to " +
                        std::to_string(padded.rows()) + "x" + std::to_string(padded.cols()));
    }
    t.matrix = padded;
    t.hermitian = is_hermitian(padded, 1e-12);
    t.n = exact_log2(static_cast<std::size_t>(padded.rows()));
    t.description = d;
    return t;
  }

  const SpecString s = SpecString::parse(text);
  d["kind"] = s.kind;
  if (s.kind == "heisenberg") {
    s.restrict_to({"n", "jx", "jy", "jz", "h", "lattice", "seed"}, {"periodic"});
    const int n = qubits_of(s);
    if (n < 2) throw ConfigError("heisenberg target needs n >= 2");
    Lattice lat = Lattice::Chain;
    if (const auto l = s.get("lattice")) {
      try {
        lat = parse_lattice(*l);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (s.has_flag("periodic")) {
      lat = Lattice::Ring;
    } else if (lattice_hint == SymmetryKind::Cn) {
      lat = Lattice::Ring;
    } else if (lattice_hint == SymmetryKind::Sn) {
      lat = Lattice::Complete;
    }
    if (s.has_flag("periodic") && lat != Lattice::Ring) throw ConfigError("'" + text + "': periodic conflicts with lattice");
    HeisenbergParams p;
    const bool explicit_couplings = s.get("jx") || s.get("jy") || s.get("jz") || s.get("h");
    if (explicit_couplings) {
      if (s.get("seed")) throw ConfigError("'" + text + "': seed= only applies to random couplings");
      p.n = n;
      p.jx = s.get_double("jx", 1.0);
      p.jy = s.get_double("jy", 1.0);
      p.jz = s.get_double("jz", 1.0);
      p.h = s.get_double("h", 0.0);
      p.periodic = lat == Lattice::Ring;
      p.all_to_all = lat == Lattice::Complete;
      d["jx"] = p.jx;
      d["jy"] = p.jy;
      d["jz"] = p.jz;
      d["h"] = p.h;
    } else {
      // Random couplings with the symmetry of the lattice.
      const SymmetryKind k = lat == Lattice::Ring ? SymmetryKind::Cn
                             : lat == Lattice::Complete ? SymmetryKind::Sn
                                                        : SymmetryKind::Z2xz;
      const std::uint64_t sd = s.get_u64("seed", seed);
      p = random_symmetric_heisenberg(k, n, sd);
      d["couplings"] = "random";
      d["seed"] = sd;
    }
    t.matrix = heisenberg(p);
    t.n = n;
    t.hermitian = true;
    d["n"] = n;
    d["lattice"] = lattice_name(lat);
  } else if (s.kind == "symheis") {
    s.restrict_to({"n", "sym", "seed"}, {});
    const SymmetryKind k = symmetry_of(s);
    const int n = qubits_of(s);
    const std::uint64_t sd = s.get_u64("seed", seed);
    HeisenbergParams p;
    try {
      p = random_symmetric_heisenberg(k, n, sd);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    t.matrix = heisenberg(p);
    t.n = n;
    t.hermitian = true;
    d["n"] = n;
    d["sym"] = symmetry_name(k);
    d["seed"] = sd;
    d["lattice"] = lattice_name(p.lattice());
  } else if (s.kind == "random") {
    s.restrict_to({"n", "seed"}, {"complex", "real", "arbitrary", "hermitian", "unitary"});
    const int n = qubits_of(s);
    const Field f = field_of(s);
    const Structure st = structure_of(s);
    const std::uint64_t sd = s.get_u64("seed", seed);
    t.matrix = random_matrix(n, f, st, sd);
    t.n = n;
    t.hermitian = st == Structure::Hermitian;
    d["n"] = n;
    d["field"] = field_name(f);
    d["structure"] = structure_name(st);
    d["seed"] = sd;
  } else if (s.kind == "span") {
    s.restrict_to({"n", "sym", "seed"}, {"hermitian"});
    const SymmetryKind k = symmetry_of(s);
    const int n = qubits_of(s);
    const std::uint64_t sd = s.get_u64("seed", seed);
    const ClosureBasis b = compute_closure(heisenberg_generator_set(k, n));
    t.matrix = random_span_sample(b.algebra, s.has_flag("hermitian"), sd);
    t.n = n;
    t.hermitian = s.has_flag("hermitian");
    d["n"] = n;
    d["sym"] = symmetry_name(k);
    d["hermitian"] = t.hermitian;
    d["seed"] = sd;
    d["dim_b"] = b.dim_b();
  } else {
    throw ConfigError("unknown target kind '" + s.kind + "'");
  }
  t.description = d;
  return t;
}

SpecString parse_ansatz_spec(const std::string& text) {
  const SpecString s = SpecString::parse(text);
  if (s.kind == "block") {
    if (s.values.size() || s.flags.size() != 1) throw ConfigError("ansatz '" + text + "': expected block:K");
  } else if (s.kind == "gqsp") {
    s.restrict_to({"sym", "gens", "seq"}, {});
    if (s.get("sym").has_value() == s.get("gens").has_value()) {
      throw ConfigError("ansatz '" + text + "': give exactly one of sym= or gens=");
    }
    if (s.get("sym")) symmetry_of(s);
  } else {
    throw ConfigError("unknown ansatz kind '" + s.kind + "'");
  }
  return s;
}

std::optional<SymmetryKind> ansatz_symmetry(const SpecString& s) {
  if (s.kind == "gqsp" && s.get("sym")) return symmetry_of(s);
  return std::nullopt;
}

std::vector<PauliSum> load_generators(const std::string& path) {
  try {
    return parse_pauli_sums(read_text_file(path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("generator file '" + path + "': " + e.what());
  }
}

ResolvedAnsatz resolve_ansatz(const SpecString& s, int system_qubits, int layers, bool hermitian, bool real,
                              int ancillas) {
  ResolvedAnsatz a;
  Json d;
  d["kind"] = s.kind;
  a.spec.layers = layers;
  a.spec.hermitian = hermitian;
  a.spec.restriction = real ? Restriction::Real : Restriction::Complex;
  a.spec.ancillas = ancillas;
  a.spec.system_qubits = system_qubits;
  if (s.kind == "block") {
    const int block = parse_number<int>("block", s.flags.front());
    a.spec.family = GenericFamily{block};
    d["block"] = block;
  } else {
    GqspFamily g;
    if (const auto sym = s.get("sym")) {
      const SymmetryKind k = symmetry_of(s);
      GeneratorSet gs;
      try {
        gs = heisenberg_generator_set(k, system_qubits);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      g.generators = gs.generators;
      g.label = gs.label;
      a.symmetry = k;
      d["sym"] = symmetry_name(k);
    } else {
      g.generators = load_generators(*s.get("gens"));
      g.label = *s.get("gens");
      d["gens"] = g.label;
    }
    if (const auto seq = s.get("seq")) {
      std::stringstream ss(*seq);
      std::string item;
      while (std::getline(ss, item, '.')) g.sequence.push_back(parse_number<int>("seq", item));
      d["seq"] = g.sequence;
    }
    d["generators"] = g.generators.size();
    a.spec.family = std::move(g);
  }
  try {
    a.spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  d["layers"] = layers;
  d["hermitian"] = hermitian;
  d["real"] = real;
  d["ancillas"] = ancillas;
  a.description = d;
  return a;
}

}  // namespace vbe::cli
