#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlab/io.hpp"

namespace xlab {

// Batch experiment description. Scalar parameters drive a single run; if any
// of k/eps/t/gamma/b is a grid (JSON array), the run becomes a sweep with one
// CSV row per cell of the cartesian product, in order k -> eps -> t -> gamma
// -> b. An explicitly empty grid produces a header-only CSV.
struct ExperimentConfig {
  std::string command;
  std::string graph;    // family spec or file path
  std::string fn_path;  // MatrixFn JSON file, or
  std::string gen;      // "seed:n:d" generator spec (for gt-verify: seed:k:d)
  std::optional<std::vector<long long>> k;
  std::optional<std::vector<double>> eps;
  std::optional<std::vector<double>> t;
  std::optional<std::vector<double>> gamma;
  std::optional<std::vector<double>> b;
  std::optional<long long> trials;
  int nodes = 128;
  std::uint64_t seed = 1;
  double norm_cap = 2.0;  // gt-verify tuple norm bound
  std::string bits;       // sample: explicit seed bits
  bool lower_tail = false;
  std::string out;  // report basename; empty = stdout only
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 usage/IO, 2 mathematical assertion failed
  std::string csv;    // header + row(s)
  Json report;        // full machine-readable report
};

// Executes one configuration (all grid parameters must be scalar).
RunResult run_experiment(const ExperimentConfig& cfg);

// Grid sweep; cells capped at 1e4, failures recorded per row.
RunResult run_sweep(const ExperimentConfig& cfg);

bool is_sweep_config(const ExperimentConfig& cfg);

// Dispatches run vs sweep, writes <out>.json / <out>.csv when requested,
// prints the CSV to stdout, and maps exceptions to exit codes.
int execute(const ExperimentConfig& cfg);

// k matrices of dimension d with ||H_j|| <= norm_cap, for GT campaigns.
std::vector<HermitianMatrix> random_hermitian_tuple(std::uint64_t seed, int k, int d,
                                                    double norm_cap);

}  // namespace xlab
