#include "hdea/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hdea {

namespace {

std::string describe(const char* what, int gene) {
  std::ostringstream os;
  os << what << " (gene " << gene << ")";
  return os.str();
}

}  // namespace

Landscape::Landscape(int n, int k, std::vector<std::vector<int>> links,
                     std::vector<std::vector<double>> tables, uint64_t seed)
    : n_(n), k_(k), seed_(seed) {
  if (n < 1) throw std::invalid_argument("landscape: n must be >= 1");
  if (k < 0 || k > n - 1)
    throw std::invalid_argument("landscape: k must satisfy 0 <= k <= n-1");
  if (static_cast<int>(links.size()) != n)
    throw std::invalid_argument("landscape: links must have n rows");
  if (static_cast<int>(tables.size()) != n)
    throw std::invalid_argument("landscape: tables must have n rows");

  const size_t row = static_cast<size_t>(1) << (k + 1);
  links_.reserve(static_cast<size_t>(n) * k);
  tables_.reserve(static_cast<size_t>(n) * row);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(links[i].size()) != k)
      throw std::invalid_argument(describe("landscape: link row must have k entries", i));
    std::unordered_set<int> seen;
    for (int target : links[i]) {
      if (target < 0 || target >= n)
        throw std::invalid_argument(describe("landscape: link index out of range", i));
      if (target == i)
        throw std::invalid_argument(describe("landscape: gene linked to itself", i));
      if (!seen.insert(target).second)
        throw std::invalid_argument(describe("landscape: duplicate link index", i));
    }
    if (tables[i].size() != row)
      throw std::invalid_argument(describe("landscape: table row must have 2^(k+1) entries", i));
    for (double e : tables[i]) {
      if (!(e >= 0.0 && e < 1.0))
        throw std::invalid_argument(describe("landscape: table entry outside [0,1)", i));
    }
    links_.insert(links_.end(), links[i].begin(), links[i].end());
    tables_.insert(tables_.end(), tables[i].begin(), tables[i].end());
  }
}

double Landscape::evaluate(const Genome& g) const {
  if (static_cast<int>(g.size()) != n_)
    throw std::invalid_argument("evaluate: genome length does not match landscape n");
  const size_t row = static_cast<size_t>(1) << (k_ + 1);
  double sum = 0.0;
  size_t li = 0;
  size_t ti = 0;
  for (int i = 0; i < n_; ++i) {
    uint32_t idx = g[i];  // own allele ends up most significant
    for (int j = 0; j < k_; ++j) idx = (idx << 1) | g[links_[li + j]];
    sum += tables_[ti + idx];
    li += k_;
    ti += row;
  }
  return sum / n_;
}

double Landscape::gene_contribution(const Genome& g, int gene) const {
  if (static_cast<int>(g.size()) != n_)
    throw std::invalid_argument("gene_contribution: genome length does not match landscape n");
  if (gene < 0 || gene >= n_)
    throw std::invalid_argument("gene_contribution: gene index out of range");
  uint32_t idx = g[gene];
  const size_t li = static_cast<size_t>(gene) * k_;
  for (int j = 0; j < k_; ++j) idx = (idx << 1) | g[links_[li + j]];
  return tables_[static_cast<size_t>(gene) * (1u << (k_ + 1)) + idx];
}

Landscape generate_landscape(int n, int k, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_landscape: n must be >= 1");
  if (k < 0 || k > n - 1)
    throw std::invalid_argument("generate_landscape: k must satisfy 0 <= k <= n-1");

  Rng rng(seed, kStreamLandscape);
  std::vector<std::vector<int>> links(n);
  std::vector<std::vector<double>> tables(n);
  const size_t row = static_cast<size_t>(1) << (k + 1);

  std::vector<int> others(n - 1);
  for (int i = 0; i < n; ++i) {
    // the other n-1 genes; partial Fisher-Yates picks k without replacement
    int w = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) others[w++] = j;
    links[i].resize(k);
    for (int j = 0; j < k; ++j) {
      const size_t pick = j + rng.below(static_cast<uint64_t>(n - 1 - j));
      std::swap(others[j], others[pick]);
      links[i][j] = others[j];
    }
    tables[i].resize(row);
    for (double& e : tables[i]) e = rng.next_double();
  }
  return Landscape(n, k, std::move(links), std::move(tables), seed);
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "landscape parse error: line " << line << ": " << msg;
  throw std::runtime_error(os.str());
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

void save_landscape(const Landscape& ls, std::ostream& out) {
  out << "NK " << ls.n() << ' ' << ls.k() << ' ' << ls.seed() << '\n';
  char buf[32];
  for (int i = 0; i < ls.n(); ++i) {
    auto links = ls.links(i);
    for (size_t j = 0; j < links.size(); ++j) {
      if (j) out << ' ';
      out << links[j];
    }
    out << '\n';
    auto table = ls.table(i);
    for (size_t j = 0; j < table.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", table[j]);
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Landscape load_landscape(std::istream& in) {
  int lineno = 0;
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) parse_fail(lineno + 1, std::string("unexpected end of file, expected ") + what);
    ++lineno;
  };

  next_line("header 'NK <n> <k> <seed>'");
  auto header = tokenize(line);
  if (header.size() != 4 || header[0] != "NK")
    parse_fail(lineno, "expected header 'NK <n> <k> <seed>'");
  int n = 0, k = 0;
  uint64_t seed = 0;
  try {
    n = std::stoi(header[1]);
    k = std::stoi(header[2]);
    seed = std::stoull(header[3]);
  } catch (const std::exception&) {
    parse_fail(lineno, "malformed header field");
  }
  if (n < 1) parse_fail(lineno, "n must be >= 1");
  if (k < 0 || k > n - 1) parse_fail(lineno, "k must satisfy 0 <= k <= n-1");
  if (k > 30) parse_fail(lineno, "k too large to represent a table");

  const size_t row = static_cast<size_t>(1) << (k + 1);
  std::vector<std::vector<int>> links(n);
  std::vector<std::vector<double>> tables(n);
  for (int i = 0; i < n; ++i) {
    next_line("link indices");
    auto link_toks = tokenize(line);
    if (static_cast<int>(link_toks.size()) != k)
      parse_fail(lineno, "expected exactly " + std::to_string(k) + " link indices");
    links[i].reserve(k);
    for (const auto& tok : link_toks) {
      int v = 0;
      try {
        size_t pos = 0;
        v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        parse_fail(lineno, "malformed link index '" + tok + "'");
      }
      if (v < 0 || v >= n) parse_fail(lineno, "link index out of range");
      if (v == i) parse_fail(lineno, "gene linked to itself");
      links[i].push_back(v);
    }

    next_line("table entries");
    auto table_toks = tokenize(line);
    if (table_toks.size() != row)
      parse_fail(lineno, "expected exactly " + std::to_string(row) + " table entries");
    tables[i].reserve(row);
    for (const auto& tok : table_toks) {
      double v = 0.0;
      try {
        size_t pos = 0;
        v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        parse_fail(lineno, "malformed table entry '" + tok + "'");
      }
      if (!(v >= 0.0 && v < 1.0)) parse_fail(lineno, "table entry outside [0,1)");
      tables[i].push_back(v);
    }
  }
  // constructor re-checks invariants (distinct links etc.)
  try {
    return Landscape(n, k, std::move(links), std::move(tables), seed);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("landscape parse error: ") + e.what());
  }
}

void save_landscape_file(const Landscape& ls, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_landscape(ls, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

Landscape load_landscape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  try {
    return load_landscape(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::pair<Genome, double> brute_force_optimum(const Landscape& ls) {
  const int n = ls.n();
  if (n > 24)
    throw std::invalid_argument(
        "brute_force_optimum: n = " + std::to_string(n) +
        " exceeds the exhaustive-search cap of 24");
  const uint64_t total = uint64_t(1) << n;
  Genome g(n, 0);
  Genome best_genome = g;
  double best = ls.evaluate(g);
  for (uint64_t u = 1; u < total; ++u) {
    // g[0] as the most significant bit makes increasing u lexicographic
    // order, so keeping strict improvements resolves ties to the
    // lexicographically smallest genome.
    for (int j = 0; j < n; ++j) g[j] = (u >> (n - 1 - j)) & 1;
    const double f = ls.evaluate(g);
    if (f > best) {
      best = f;
      best_genome = g;
    }
  }
  return {std::move(best_genome), best};
}

double separable_optimum(const Landscape& ls) {
  if (ls.k() != 0)
    throw std::invalid_argument("separable_optimum: defined only for k = 0");
  double sum = 0.0;
  for (int i = 0; i < ls.n(); ++i) {
    auto t = ls.table(i);
    sum += std::max(t[0], t[1]);
  }
  return sum / ls.n();
}

}  // namespace hdea
