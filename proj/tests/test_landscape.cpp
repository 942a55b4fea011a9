#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hdea/landscape.hpp"

using namespace hdea;

namespace {

Landscape two_gene_example() {
  // gene 0 depends on gene 1 and vice versa; tables from a worked example
  return Landscape(2, 1, {{1}, {0}},
                   {{0.1, 0.2, 0.3, 0.4}, {0.5, 0.6, 0.7, 0.8}}, 0);
}

}  // namespace

TEST_CASE("generate: table and link shapes") {
  const Landscape a = generate_landscape(3, 1, 42);
  CHECK(a.n() == 3);
  CHECK(a.k() == 1);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.table(i).size() == 4);
    CHECK(a.links(i).size() == 1);
  }

  const Landscape b = generate_landscape(5, 0, 42);
  for (int i = 0; i < 5; ++i) {
    CHECK(b.table(i).size() == 2);
    CHECK(b.links(i).empty());
  }
}

TEST_CASE("generate: deterministic in (n,k,seed)") {
  const Landscape a = generate_landscape(50, 15, 987654321);
  const Landscape b = generate_landscape(50, 15, 987654321);
  for (int i = 0; i < 50; ++i) {
    REQUIRE(std::equal(a.links(i).begin(), a.links(i).end(), b.links(i).begin()));
    REQUIRE(std::equal(a.table(i).begin(), a.table(i).end(), b.table(i).begin()));
  }
  const Landscape c = generate_landscape(50, 15, 987654322);
  bool any_diff = false;
  for (int i = 0; i < 50 && !any_diff; ++i)
    any_diff = !std::equal(a.table(i).begin(), a.table(i).end(), c.table(i).begin());
  CHECK(any_diff);
}

TEST_CASE("generate: link and entry invariants") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    const Landscape ls = generate_landscape(20, 7, seed);
    for (int i = 0; i < ls.n(); ++i) {
      auto links = ls.links(i);
      std::set<int> seen(links.begin(), links.end());
      CHECK(seen.size() == links.size());  // distinct
      CHECK(seen.count(i) == 0);           // never self
      for (int t : links) {
        CHECK(t >= 0);
        CHECK(t < ls.n());
      }
      for (double e : ls.table(i)) {
        CHECK(e >= 0.0);
        CHECK(e < 1.0);
      }
    }
  }
}

TEST_CASE("generate: rejects bad parameters") {
  CHECK_THROWS_AS(generate_landscape(0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_landscape(5, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_landscape(5, -1, 1), std::invalid_argument);
}

TEST_CASE("evaluate: worked two-gene example") {
  const Landscape ls = two_gene_example();
  // g=[1,0]: gene 0 sees own=1, link=0 -> index 2 -> 0.3;
  //          gene 1 sees own=0, link=1 -> index 1 -> 0.6
  CHECK(ls.evaluate({1, 0}) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(ls.evaluate({0, 0}) == doctest::Approx(0.30).epsilon(1e-15));
  CHECK(ls.evaluate({0, 1}) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(ls.evaluate({1, 1}) == doctest::Approx(0.60).epsilon(1e-15));
}

TEST_CASE("evaluate: k=0 is the per-gene mean") {
  const Landscape ls = generate_landscape(10, 0, 5);
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Genome g(10);
    for (auto& a : g) a = rng.next_bool();
    double expect = 0.0;
    for (int i = 0; i < 10; ++i) expect += ls.table(i)[g[i]];
    expect /= 10;
    CHECK(ls.evaluate(g) == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("evaluate: fitness stays in [0,1)") {
  Rng rng(11);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const Landscape ls = generate_landscape(17, 4, seed);
    for (int trial = 0; trial < 200; ++trial) {
      Genome g(17);
      for (auto& a : g) a = rng.next_bool();
      const double f = ls.evaluate(g);
      CHECK(f >= 0.0);
      CHECK(f < 1.0);
    }
  }
}

TEST_CASE("evaluate: genome length must match") {
  const Landscape ls = generate_landscape(6, 2, 1);
  CHECK_THROWS_AS(ls.evaluate(Genome(5, 0)), std::invalid_argument);
  CHECK_THROWS_AS(ls.evaluate(Genome(7, 0)), std::invalid_argument);
}

TEST_CASE("gene_contribution: only the gene's neighborhood matters") {
  const Landscape ls = generate_landscape(16, 3, 99);
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Genome g(16);
    for (auto& a : g) a = rng.next_bool();
    const int gene = static_cast<int>(rng.below(16));
    const double before = ls.gene_contribution(g, gene);

    // flip a locus outside {gene} + links(gene)
    std::set<int> hood(ls.links(gene).begin(), ls.links(gene).end());
    hood.insert(gene);
    int flip = static_cast<int>(rng.below(16));
    while (hood.count(flip)) flip = static_cast<int>(rng.below(16));
    g[flip] ^= 1;
    CHECK(ls.gene_contribution(g, gene) == before);
  }
}

TEST_CASE("evaluate: k=0 single-flip delta equals table difference over n") {
  const Landscape ls = generate_landscape(12, 0, 21);
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    Genome g(12);
    for (auto& a : g) a = rng.next_bool();
    const int i = static_cast<int>(rng.below(12));
    Genome g2 = g;
    g2[i] ^= 1;
    const double delta = ls.evaluate(g2) - ls.evaluate(g);
    const double expect = (ls.table(i)[g2[i]] - ls.table(i)[g[i]]) / 12.0;
    CHECK(delta == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("save/load: bit-exact round trip") {
  const Landscape ls = generate_landscape(50, 4, 20260810);
  std::stringstream buf;
  save_landscape(ls, buf);
  const Landscape back = load_landscape(buf);
  CHECK(back.n() == ls.n());
  CHECK(back.k() == ls.k());
  CHECK(back.seed() == ls.seed());
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    Genome g(50);
    for (auto& a : g) a = rng.next_bool();
    CHECK(back.evaluate(g) == ls.evaluate(g));
  }
}

TEST_CASE("save/load: k=0 uses blank link lines") {
  const Landscape ls = generate_landscape(3, 0, 7);
  std::stringstream buf;
  save_landscape(ls, buf);
  const Landscape back = load_landscape(buf);
  CHECK(back.table(2)[1] == ls.table(2)[1]);
}

TEST_CASE("load: rejects malformed input with the offending line") {
  auto load_str = [](const std::string& s) {
    std::istringstream in(s);
    return load_landscape(in);
  };

  SUBCASE("bad header") {
    CHECK_THROWS_WITH_AS(load_str("XX 2 1 0\n"),
                         doctest::Contains("line 1"), std::runtime_error);
  }
  SUBCASE("truncated file") {
    CHECK_THROWS_WITH_AS(load_str("NK 2 1 0\n1\n0.1 0.2 0.3 0.4\n"),
                         doctest::Contains("line 4"), std::runtime_error);
  }
  SUBCASE("entry out of range") {
    CHECK_THROWS_WITH_AS(
        load_str("NK 2 1 0\n1\n0.1 0.2 1.5 0.4\n0\n0.5 0.6 0.7 0.8\n"),
        doctest::Contains("line 3"), std::runtime_error);
  }
  SUBCASE("wrong table size") {
    CHECK_THROWS_WITH_AS(load_str("NK 2 1 0\n1\n0.1 0.2\n0\n0.5 0.6 0.7 0.8\n"),
                         doctest::Contains("line 3"), std::runtime_error);
  }
  SUBCASE("self link") {
    CHECK_THROWS_WITH_AS(
        load_str("NK 2 1 0\n0\n0.1 0.2 0.3 0.4\n0\n0.5 0.6 0.7 0.8\n"),
        doctest::Contains("line 2"), std::runtime_error);
  }
  SUBCASE("k >= n") {
    CHECK_THROWS_AS(load_str("NK 2 2 0\n"), std::runtime_error);
  }
  SUBCASE("garbage where a number belongs") {
    CHECK_THROWS_WITH_AS(
        load_str("NK 2 1 0\n1\n0.1 0.2 zap 0.4\n0\n0.5 0.6 0.7 0.8\n"),
        doctest::Contains("line 3"), std::runtime_error);
  }
}

TEST_CASE("brute force: exhaustive two-gene example") {
  const auto [genome, fitness] = brute_force_optimum(two_gene_example());
  CHECK(genome == Genome{1, 1});
  CHECK(fitness == doctest::Approx(0.60).epsilon(1e-15));
}

TEST_CASE("brute force: separable case picks per-gene argmax") {
  const Landscape ls = generate_landscape(8, 0, 77);
  const auto [genome, fitness] = brute_force_optimum(ls);
  CHECK(fitness == separable_optimum(ls));
  for (int i = 0; i < 8; ++i)
    CHECK(ls.table(i)[genome[i]] >= ls.table(i)[genome[i] ^ 1]);
}

TEST_CASE("brute force: agrees with an independent enumeration at n<=12") {
  for (uint64_t seed : {10ull, 11ull}) {
    const Landscape ls = generate_landscape(11, 3, seed);
    // second enumeration: different genome <-> integer convention (g[0] is
    // the least significant bit) and contributions summed via
    // gene_contribution instead of evaluate
    double best = -1.0;
    Genome best_g;
    for (uint32_t u = 0; u < (1u << 11); ++u) {
      Genome g(11);
      for (int j = 0; j < 11; ++j) g[j] = (u >> j) & 1;
      double f = 0.0;
      for (int i = 0; i < 11; ++i) f += ls.gene_contribution(g, i);
      f /= 11;
      if (f > best || (f == best && g < best_g)) {
        best = f;
        best_g = g;
      }
    }
    const auto [genome, fitness] = brute_force_optimum(ls);
    CHECK(fitness == best);
    CHECK(genome == best_g);
  }
}

TEST_CASE("brute force: dominates random sampling") {
  const Landscape ls = generate_landscape(14, 5, 5150);
  const double opt = brute_force_optimum(ls).second;
  Rng rng(8);
  for (int trial = 0; trial < 10000; ++trial) {
    Genome g(14);
    for (auto& a : g) a = rng.next_bool();
    CHECK(opt >= ls.evaluate(g));
  }
}

TEST_CASE("brute force: ties break to the lexicographically smallest genome") {
  // constant landscape: every genome scores the same
  const Landscape ls(2, 0, {{}, {}}, {{0.5, 0.5}, {0.3, 0.3}}, 0);
  const auto [genome, fitness] = brute_force_optimum(ls);
  CHECK(genome == Genome{0, 0});
  CHECK(fitness == doctest::Approx(0.4));
}

TEST_CASE("brute force: refuses n > 24") {
  const Landscape ls = generate_landscape(25, 0, 1);
  CHECK_THROWS_AS(brute_force_optimum(ls), std::invalid_argument);
}

TEST_CASE("separable_optimum: defined only for k=0") {
  CHECK_THROWS_AS(separable_optimum(generate_landscape(5, 1, 1)),
                  std::invalid_argument);
}
