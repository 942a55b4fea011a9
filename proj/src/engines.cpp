#include "hdea/engines.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdea {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::EA: return "EA";
    case Algorithm::HDEA: return "HDEA";
    case Algorithm::H2P: return "H2P";
  }
  throw std::logic_error("unknown algorithm");
}

std::optional<Algorithm> algorithm_from_string(std::string_view s) {
  if (s == "EA") return Algorithm::EA;
  if (s == "HDEA") return Algorithm::HDEA;
  if (s == "H2P") return Algorithm::H2P;
  return std::nullopt;
}

namespace {

// Shared tail of every step: cross the two parents, keep one child at
// random, mutate, evaluate once, insert over the worst member.
void breed_and_replace(Population& pop, int parent_a, int parent_b,
                       CountingEvaluator& eval, Rng& rng) {
  auto [c1, c2] =
      one_point_crossover(pop.members[parent_a], pop.members[parent_b], rng);
  Genome& chosen = rng.next_bool() ? c1 : c2;
  Genome child = point_mutate(chosen, rng);
  const double f = eval(child);
  replace_worst(pop, std::move(child), f);
}

}  // namespace

void ea_step(Population& pop, CountingEvaluator& eval, Rng& rng) {
  const int pa = binary_tournament(pop.fitnesses, rng);
  const int pb = binary_tournament(pop.fitnesses, rng);
  breed_and_replace(pop, pa, pb, eval, rng);
}

std::vector<int> pair_partners(int p, Rng& rng) {
  if (p < 2) throw std::invalid_argument("pair_partners: need p >= 2");
  std::vector<int> partner(p);
  for (int i = 0; i < p; ++i) {
    int j = static_cast<int>(rng.below(p - 1));
    if (j >= i) ++j;  // never self
    partner[i] = j;
  }
  return partner;
}

void hdea_step(Population& pop, CountingEvaluator& eval, Rng& rng) {
  const int p = pop.size();
  // temporary diploids: member i paired with a random other member,
  // scored by averaging the cached fitnesses (no re-evaluation)
  const std::vector<int> partner = pair_partners(p, rng);
  std::vector<double> diploid_fitness(p);
  for (int i = 0; i < p; ++i)
    diploid_fitness[i] = 0.5 * (pop.fitnesses[i] + pop.fitnesses[partner[i]]);

  const int pa = binary_tournament(diploid_fitness, rng);
  const int pb = binary_tournament(diploid_fitness, rng);

  const Diploid da(pop.members[pa], pop.fitnesses[pa],
                   pop.members[partner[pa]], pop.fitnesses[partner[pa]]);
  const Diploid db(pop.members[pb], pop.fitnesses[pb],
                   pop.members[partner[pb]], pop.fitnesses[partner[pb]]);

  const auto gametes_a = meiosis(da, rng);
  const Genome& ga = draw_gamete(gametes_a, rng);
  const auto gametes_b = meiosis(db, rng);
  const Genome& gb = draw_gamete(gametes_b, rng);

  const Genome& fused = rng.next_bool() ? ga : gb;
  Genome child = point_mutate(fused, rng);
  const double f = eval(child);

  // While the temporary diploid population exists, every fitness decision
  // in the cycle sees the averaged values: the member replaced is the one
  // whose diploid scored worst this cycle (ties: lowest index), not the
  // worst raw haploid. The offspring enters with its own evaluated
  // fitness. Replacing the raw worst instead collapses the smoothing and
  // with it the whole advantage on rugged landscapes.
  const size_t slot =
      std::min_element(diploid_fitness.begin(), diploid_fitness.end()) -
      diploid_fitness.begin();
  pop.members[slot] = std::move(child);
  pop.fitnesses[slot] = f;
}

void h2p_step(Population& pop, CountingEvaluator& eval, Rng& rng) {
  const int p = pop.size();
  // pool of 2P: every member once, plus P uniform picks with replacement;
  // entries keep their own haploid fitness
  std::vector<int> pool(2 * p);
  std::vector<double> pool_fitness(2 * p);
  for (int i = 0; i < p; ++i) {
    pool[i] = i;
    pool_fitness[i] = pop.fitnesses[i];
  }
  for (int i = 0; i < p; ++i) {
    const int j = static_cast<int>(rng.below(p));
    pool[p + i] = j;
    pool_fitness[p + i] = pop.fitnesses[j];
  }
  const int ta = binary_tournament(pool_fitness, rng);
  const int tb = binary_tournament(pool_fitness, rng);
  breed_and_replace(pop, pool[ta], pool[tb], eval, rng);
}

RunRecord run(const RunConfig& cfg, const Landscape& ls) {
  if (cfg.p < 2)
    throw std::invalid_argument("run: population size must be >= 2");
  if (cfg.generations < 0)
    throw std::invalid_argument("run: generations must be >= 0");
  if (cfg.n != ls.n() || cfg.k != ls.k())
    throw std::invalid_argument("run: config (n,k) does not match the landscape");

  Rng rng_init(cfg.init_seed.value_or(cfg.seed), kStreamInit);
  Rng rng(cfg.seed, kStreamVariation);
  CountingEvaluator eval(ls);

  Population pop;
  pop.members.reserve(cfg.p);
  pop.fitnesses.reserve(cfg.p);
  for (int i = 0; i < cfg.p; ++i) {
    pop.members.push_back(random_genome(cfg.n, rng_init));
    pop.fitnesses.push_back(eval(pop.members.back()));
  }

  void (*step)(Population&, CountingEvaluator&, Rng&) = nullptr;
  switch (cfg.algorithm) {
    case Algorithm::EA: step = ea_step; break;
    case Algorithm::HDEA: step = hdea_step; break;
    case Algorithm::H2P: step = h2p_step; break;
  }

  RunRecord rec;
  rec.best_history.reserve(cfg.generations + 1);
  auto best = [&] {
    return *std::max_element(pop.fitnesses.begin(), pop.fitnesses.end());
  };
  rec.best_history.push_back(best());
  for (long g = 0; g < cfg.generations; ++g) {
    step(pop, eval, rng);
    rec.best_history.push_back(best());
  }
  rec.final_best = rec.best_history.back();
  rec.final_population = std::move(pop.members);
  rec.final_fitnesses = std::move(pop.fitnesses);
  rec.evaluations = eval.count();
  return rec;
}

}  // namespace hdea
