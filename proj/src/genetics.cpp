#include "hdea/genetics.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdea {

Diploid::Diploid(Genome a, double fitness_a, Genome b, double fitness_b)
    : first(std::move(a)), second(std::move(b)),
      fitness(0.5 * (fitness_a + fitness_b)) {
  if (first.size() != second.size())
    throw std::invalid_argument("diploid: genome lengths differ");
}

Genome random_genome(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_genome: n must be >= 1");
  Genome g(n);
  for (auto& allele : g) allele = rng.next_bool() ? 1 : 0;
  return g;
}

std::pair<Genome, Genome> one_point_crossover(const Genome& a,
                                              const Genome& b, Rng& rng) {
  const size_t n = a.size();
  if (b.size() != n)
    throw std::invalid_argument("one_point_crossover: genome lengths differ");
  if (n < 2)
    throw std::invalid_argument("one_point_crossover: genomes must have length >= 2");
  const size_t cut = 1 + rng.below(n - 1);
  Genome c1(a.begin(), a.begin() + cut);
  c1.insert(c1.end(), b.begin() + cut, b.end());
  Genome c2(b.begin(), b.begin() + cut);
  c2.insert(c2.end(), a.begin() + cut, a.end());
  return {std::move(c1), std::move(c2)};
}

Genome point_mutate(const Genome& g, Rng& rng) {
  if (g.empty()) throw std::invalid_argument("point_mutate: empty genome");
  Genome out = g;
  const size_t locus = rng.below(out.size());
  out[locus] ^= 1;
  return out;
}

int binary_tournament(std::span<const double> fitnesses, Rng& rng) {
  const size_t p = fitnesses.size();
  if (p < 2)
    throw std::invalid_argument("binary_tournament: need at least 2 entries");
  const size_t i = rng.below(p);
  size_t j = rng.below(p - 1);
  if (j >= i) ++j;  // distinct candidates
  if (fitnesses[i] > fitnesses[j]) return static_cast<int>(i);
  if (fitnesses[j] > fitnesses[i]) return static_cast<int>(j);
  return static_cast<int>(rng.next_bool() ? i : j);
}

void replace_worst(Population& pop, Genome child, double child_fitness) {
  const auto worst =
      std::min_element(pop.fitnesses.begin(), pop.fitnesses.end());
  const size_t slot = worst - pop.fitnesses.begin();
  pop.members[slot] = std::move(child);
  pop.fitnesses[slot] = child_fitness;
}

std::array<Genome, 4> meiosis(const Diploid& d, Rng& rng) {
  auto [r1, r2] = one_point_crossover(d.first, d.second, rng);
  return {d.first, d.second, std::move(r1), std::move(r2)};
}

const Genome& draw_gamete(const std::array<Genome, 4>& gametes, Rng& rng) {
  return gametes[rng.below(4)];
}

}  // namespace hdea
