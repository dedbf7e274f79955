#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbe/circuit.hpp"
#include "vbe/encode.hpp"
#include "vbe/symmetry.hpp"

namespace vbe::cli {

using Json = nlohmann::ordered_json;

// Malformed flags, specs or config files; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "kind:key=value,flag,..." split into the kind, keyed values and bare flags.
struct SpecString {
  std::string kind;
  std::map<std::string, std::string> values;
  std::vector<std::string> flags;
  std::string raw;

  static SpecString parse(const std::string& s);
  bool has_flag(const std::string& f) const;
  std::optional<std::string> get(const std::string& key) const;
  int get_int(const std::string& key, std::optional<int> fallback = std::nullopt) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  // Throws unless every key and flag is in the allowed lists.
  void restrict_to(const std::vector<std::string>& keys, const std::vector<std::string>& flags) const;
};

struct ResolvedTarget {
  ComplexMatrix matrix;
  int n = 0;
  bool hermitian = false;
  std::vector<std::string> notes;
  Json description;
};

// Targets:
//   heisenberg:n=4[,jx=1,jy=1,jz=1,h=0][,lattice=chain|ring|complete][,periodic][,seed=S]
//     without couplings: random symmetric couplings as in symheis
//   symheis:sym=Sn,n=4[,seed=S]      random symmetric Heisenberg couplings
//   random:n=2,complex|real,arbitrary|hermitian|unitary[,seed=S]
//   span:sym=Sn,n=3[,hermitian][,seed=S]   random element of span(B)
//   file:path.csv|path.bin          zero padded to a power of two
// Without lattice= or periodic the lattice follows the symmetry hint.
ResolvedTarget resolve_target(const std::string& spec, std::uint64_t seed,
                              std::optional<SymmetryKind> lattice_hint = std::nullopt);

struct ResolvedAnsatz {
  AnsatzSpec spec;
  std::optional<SymmetryKind> symmetry;
  Json description;
};

// Ansatzes: block:K, gqsp:sym=Sn[,seq=0.1.2], gqsp:gens=path[,seq=...].
// Generator files use the Pauli-sum text format with sums separated by "---".
SpecString parse_ansatz_spec(const std::string& spec);
std::optional<SymmetryKind> ansatz_symmetry(const SpecString& s);
ResolvedAnsatz resolve_ansatz(const SpecString& s, int system_qubits, int layers, bool hermitian, bool real,
                              int ancillas);

std::vector<PauliSum> load_generators(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace vbe::cli
