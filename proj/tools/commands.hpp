#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vbe/optimize.hpp"
#include "vbe/resources.hpp"
#include "vbe/symmetry.hpp"

namespace vbe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Parses args (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Random-layering threshold search for a hermitian GQSP ansatz on a random
// symmetric Heisenberg target, started from the ParamInversion estimate.
struct SymmetricRun {
  std::size_t dim_b = 0;
  int estimate = 0;
  std::optional<int> threshold;
  int params = 0;
  int nonlocal_gates = 0;
  LayerSearchResult search;
};
SymmetricRun symmetric_protocol(SymmetryKind kind, int n, std::uint64_t seed, int jobs);

struct LcuComparison {
  std::string symmetry;
  int layers = 0;
  int vbe_gates = 0;
  LcuEstimate lcu;
  double ratio = 0.0;
};
LcuComparison lcu_compare(SymmetryKind kind, int n, std::uint64_t seed, int jobs);

struct BenchCell {
  std::string row;
  std::string quantity;
  std::string computed;
  std::string pinned;  // empty when there is no reference value
  bool pass = true;
};

struct BenchOptions {
  std::optional<int> max_n;
  int n = 4;
  bool heavy = false;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Tables: free-params, gqsp-table, bdim-table, lcu-compare. Progress notes go
// to log.
std::vector<BenchCell> bench_table(const std::string& table, const BenchOptions& opts, std::ostream& log);
void write_bench_csv(std::ostream& out, const std::string& table, const std::vector<BenchCell>& cells);

}  // namespace vbe::cli
