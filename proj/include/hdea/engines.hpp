#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdea/genetics.hpp"
#include "hdea/landscape.hpp"

namespace hdea {

enum class Algorithm { EA, HDEA, H2P };

std::string to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view s);

struct RunConfig {
  int n = 0;
  int k = 0;
  int p = 0;
  long generations = 0;
  Algorithm algorithm = Algorithm::EA;
  uint64_t seed = 0;                  // drives variation
  std::optional<uint64_t> init_seed;  // drives the initial population; `seed` when unset
};

struct RunRecord {
  std::vector<double> best_history;  // length generations+1; [0] is post-init
  double final_best = 0.0;
  std::vector<Genome> final_population;
  std::vector<double> final_fitnesses;
  long evaluations = 0;
};

// Funnel for fitness evaluations so the p + generations budget is auditable.
class CountingEvaluator {
 public:
  explicit CountingEvaluator(const Landscape& ls) : ls_(&ls) {}
  double operator()(const Genome& g) {
    ++count_;
    return ls_->evaluate(g);
  }
  long count() const { return count_; }

 private:
  const Landscape* ls_;
  long count_ = 0;
};

// One steady-state cycle each. Every step performs exactly one fitness
// evaluation and replaces exactly one population slot.

// Two binary tournaments over haploid fitnesses, one-point crossover, one
// child kept at random, point-mutated, evaluated, inserted over the worst.
void ea_step(Population& pop, CountingEvaluator& eval, Rng& rng);

// Temporary diploids (each member paired with a random other member,
// fitnesses averaged from cache), tournaments over the diploid fitnesses,
// meiosis on both chosen parents, one gamete drawn from each, one of the
// two kept at random, mutated, evaluated, inserted over the member whose
// diploid scored worst this cycle.
void hdea_step(Population& pop, CountingEvaluator& eval, Rng& rng);

// Control: temporary haploid pool of size 2P (all members plus P picks
// with replacement, fitnesses kept as-is), tournaments over the pool, then
// the same crossover/mutation tail as ea_step.
void h2p_step(Population& pop, CountingEvaluator& eval, Rng& rng);

// partner[i] uniform over the other p-1 indices, drawn independently per
// member; exposed so tests can replay the pairing.
std::vector<int> pair_partners(int p, Rng& rng);

// Initialize p random genomes, evaluate them, then apply the configured
// step `generations` times, recording the population best after each.
// Deterministic given (cfg, ls).
RunRecord run(const RunConfig& cfg, const Landscape& ls);

}  // namespace hdea
