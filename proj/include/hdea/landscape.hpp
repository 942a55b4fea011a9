#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdea/rng.hpp"

namespace hdea {

// A haploid individual: one allele (0/1) per gene.
using Genome = std::vector<uint8_t>;

// An NK fitness function over length-n binary genomes. Gene i contributes
// a table value indexed by its own allele (most significant bit) followed
// by the alleles at links(i) in stored order; total fitness is the sum of
// the n contributions divided by n. Immutable once constructed, so
// concurrent read-only evaluation is safe.
class Landscape {
 public:
  Landscape(int n, int k, std::vector<std::vector<int>> links,
            std::vector<std::vector<double>> tables, uint64_t seed);

  int n() const { return n_; }
  int k() const { return k_; }
  uint64_t seed() const { return seed_; }
  int table_size() const { return 1 << (k_ + 1); }

  std::span<const int> links(int gene) const {
    return {links_.data() + static_cast<size_t>(gene) * k_,
            static_cast<size_t>(k_)};
  }
  std::span<const double> table(int gene) const {
    return {tables_.data() + static_cast<size_t>(gene) * table_size(),
            static_cast<size_t>(table_size())};
  }

  double evaluate(const Genome& g) const;

  // Gene i's table value under g (not divided by n).
  double gene_contribution(const Genome& g, int gene) const;

 private:
  int n_;
  int k_;
  std::vector<int> links_;      // n rows of k indices, flattened
  std::vector<double> tables_;  // n rows of 2^(k+1) entries, flattened
  uint64_t seed_;
};

// Random landscape: per gene, k distinct link targets drawn uniformly from
// the other n-1 genes and 2^(k+1) table entries uniform in [0,1). Pure
// function of (n, k, seed).
Landscape generate_landscape(int n, int k, uint64_t seed);

// Line-oriented text format:
//   NK <n> <k> <seed>
// then per gene one line of k link indices (blank when k = 0) followed by
// one line of 2^(k+1) values. Values are written with 17 significant
// digits so a round trip is bit-exact.
void save_landscape(const Landscape& ls, std::ostream& out);
Landscape load_landscape(std::istream& in);
void save_landscape_file(const Landscape& ls, const std::string& path);
Landscape load_landscape_file(const std::string& path);

// Exhaustive maximum over all 2^n genomes; refuses n > 24. Ties resolve
// to the lexicographically smallest genome.
std::pair<Genome, double> brute_force_optimum(const Landscape& ls);

// (1/n) * sum_i max(table entries of gene i); the global optimum when
// k = 0. Refuses k != 0.
double separable_optimum(const Landscape& ls);

}  // namespace hdea
