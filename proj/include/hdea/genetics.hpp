#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "hdea/landscape.hpp"
#include "hdea/rng.hpp"

namespace hdea {

// Two haploid genomes scored as one unit: fitness is the arithmetic mean
// of the constituents' cached fitnesses, never a fresh evaluation.
struct Diploid {
  Genome first;
  Genome second;
  double fitness;

  Diploid(Genome a, double fitness_a, Genome b, double fitness_b);
};

// P genomes with fitnesses cached at insertion time.
struct Population {
  std::vector<Genome> members;
  std::vector<double> fitnesses;

  int size() const { return static_cast<int>(members.size()); }
};

// Each allele independently 0 or 1 with probability 1/2.
Genome random_genome(int n, Rng& rng);

// Cut point uniform in {1,...,n-1}; returns the complementary pair
// (a[0:c]+b[c:], b[0:c]+a[c:]).
std::pair<Genome, Genome> one_point_crossover(const Genome& a,
                                              const Genome& b, Rng& rng);

// Copy of g with exactly one uniformly chosen locus flipped.
Genome point_mutate(const Genome& g, Rng& rng);

// Two distinct candidates drawn uniformly; the strictly fitter one wins,
// exact ties decided by a fair coin.
int binary_tournament(std::span<const double> fitnesses, Rng& rng);

// Unconditionally overwrite the lowest-fitness member (ties: lowest
// index) with child.
void replace_worst(Population& pop, Genome child, double child_fitness);

// Two-step meiosis: both genomes are copied and one copy of each is
// crossed over with a single shared cut. Gametes are {first, second,
// recombinant1, recombinant2}.
std::array<Genome, 4> meiosis(const Diploid& d, Rng& rng);

// Uniform choice among the four gametes.
const Genome& draw_gamete(const std::array<Genome, 4>& gametes, Rng& rng);

}  // namespace hdea
