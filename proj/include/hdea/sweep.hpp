#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hdea/engines.hpp"
#include "hdea/stats.hpp"

namespace hdea {

inline constexpr const char* kVersionString = "nkbench 0.1.0";

// One full comparative experiment: for every (n,k,p) cell, generate
// `landscapes_per_cell` landscapes and run every algorithm
// `runs_per_landscape` times on each. Defaults give 10 x 10 = 100 runs
// per cell of 20,000 generations, n in {50,100}, k up to 15, p = 30.
struct SweepConfig {
  std::vector<int> n_values{50, 100};
  std::vector<int> k_values{0, 2, 4, 6, 8, 10, 15};
  std::vector<int> p_values{30};
  int landscapes_per_cell = 10;
  int runs_per_landscape = 10;
  long generations = 20000;
  std::vector<Algorithm> algorithms{Algorithm::EA, Algorithm::HDEA};
  uint64_t master_seed = 3;
};

// Flat JSON object with exactly the SweepConfig field names; unknown keys
// are errors, missing keys keep their defaults.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

// Throws with a full report if any cell is invalid (k >= n, empty lists,
// nonpositive counts, duplicate algorithms).
void validate_sweep_config(const SweepConfig& cfg);

// Stable avalanche hash of the run coordinates. algorithm_id 0 is
// reserved for draws shared across algorithms: landscape seeds use
// (run_idx = 0, algorithm_id = 0) and initial-population seeds use
// algorithm_id = 0, so EA/HDEA/H2P see identical landscapes and identical
// start populations and differ only in variation randomness.
uint64_t derive_seed(uint64_t master_seed, uint64_t n, uint64_t k,
                     uint64_t landscape_idx, uint64_t run_idx,
                     uint64_t algorithm_id);

inline constexpr uint64_t kAlgorithmNone = 0;
uint64_t algorithm_seed_id(Algorithm a);  // EA=1, HDEA=2, H2P=3

// One run's result row; matches the raw CSV schema.
struct RunRow {
  int n = 0;
  int k = 0;
  int p = 0;
  Algorithm algorithm = Algorithm::EA;
  int landscape_idx = 0;
  int run_idx = 0;
  uint64_t landscape_seed = 0;
  uint64_t run_seed = 0;  // variation seed
  double final_best = 0.0;
  double final_mean = 0.0;
  long evaluations = 0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<RunRow> rows;  // canonical order: n,k,p,landscape,run,algorithm
  std::string config_hash;
  std::string version;
  double wall_seconds = 0.0;
};

std::string sweep_config_hash(const SweepConfig& cfg);

// Runs the whole sweep. Landscapes are generated once per (cell,
// landscape_idx) and shared by every run; independent runs execute on a
// worker pool (threads = 0 picks the hardware count) and results land in
// preassigned slots, so output is identical for any thread count.
SweepResult run_sweep(const SweepConfig& cfg, int threads = 0);

}  // namespace hdea
