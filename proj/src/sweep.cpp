#include "hdea/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace hdea {

using nlohmann::json;

uint64_t derive_seed(uint64_t master_seed, uint64_t n, uint64_t k,
                     uint64_t landscape_idx, uint64_t run_idx,
                     uint64_t algorithm_id) {
  uint64_t h = mix64(master_seed);
  h = mix64(h ^ n);
  h = mix64(h ^ k);
  h = mix64(h ^ landscape_idx);
  h = mix64(h ^ run_idx);
  h = mix64(h ^ algorithm_id);
  return h;
}

uint64_t algorithm_seed_id(Algorithm a) {
  switch (a) {
    case Algorithm::EA: return 1;
    case Algorithm::HDEA: return 2;
    case Algorithm::H2P: return 3;
  }
  throw std::logic_error("unknown algorithm");
}

namespace {

std::vector<int> int_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw std::runtime_error("config: '" + key + "' must be a list of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw std::runtime_error("config: '" + key + "' must contain only integers");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("config: top level must be an object");

  SweepConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_values") {
      cfg.n_values = int_list(value, key);
    } else if (key == "k_values") {
      cfg.k_values = int_list(value, key);
    } else if (key == "p_values") {
      cfg.p_values = int_list(value, key);
    } else if (key == "landscapes_per_cell") {
      if (!value.is_number_integer()) throw std::runtime_error("config: 'landscapes_per_cell' must be an integer");
      cfg.landscapes_per_cell = value.get<int>();
    } else if (key == "runs_per_landscape") {
      if (!value.is_number_integer()) throw std::runtime_error("config: 'runs_per_landscape' must be an integer");
      cfg.runs_per_landscape = value.get<int>();
    } else if (key == "generations") {
      if (!value.is_number_integer()) throw std::runtime_error("config: 'generations' must be an integer");
      cfg.generations = value.get<long>();
    } else if (key == "algorithms") {
      if (!value.is_array()) throw std::runtime_error("config: 'algorithms' must be a list of names");
      cfg.algorithms.clear();
      for (const auto& e : value) {
        if (!e.is_string()) throw std::runtime_error("config: 'algorithms' must contain strings");
        auto a = algorithm_from_string(e.get<std::string>());
        if (!a) throw std::runtime_error("config: unknown algorithm '" + e.get<std::string>() + "'");
        cfg.algorithms.push_back(*a);
      }
    } else if (key == "master_seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer())
        throw std::runtime_error("config: 'master_seed' must be an integer");
      cfg.master_seed = value.get<uint64_t>();
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  validate_sweep_config(cfg);
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return parse_sweep_config(in);
}

void validate_sweep_config(const SweepConfig& cfg) {
  std::ostringstream problems;
  auto complain = [&](const std::string& msg) { problems << "  - " << msg << '\n'; };

  if (cfg.n_values.empty()) complain("n_values is empty");
  if (cfg.k_values.empty()) complain("k_values is empty");
  if (cfg.p_values.empty()) complain("p_values is empty");
  if (cfg.algorithms.empty()) complain("algorithms is empty");
  for (int n : cfg.n_values)
    if (n < 1) complain("n must be >= 1, got " + std::to_string(n));
  for (int k : cfg.k_values)
    if (k < 0) complain("k must be >= 0, got " + std::to_string(k));
  for (int p : cfg.p_values)
    if (p < 2) complain("p must be >= 2, got " + std::to_string(p));
  for (int n : cfg.n_values)
    for (int k : cfg.k_values)
      if (k > n - 1)
        complain("cell (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                 ") is invalid: k must be <= n-1");
  if (cfg.landscapes_per_cell < 1) complain("landscapes_per_cell must be >= 1");
  if (cfg.runs_per_landscape < 1) complain("runs_per_landscape must be >= 1");
  if (cfg.generations < 0) complain("generations must be >= 0");
  auto algos = cfg.algorithms;
  std::sort(algos.begin(), algos.end());
  if (std::adjacent_find(algos.begin(), algos.end()) != algos.end())
    complain("algorithms contains duplicates");

  const std::string report = problems.str();
  if (!report.empty())
    throw std::invalid_argument("invalid sweep config:\n" + report);
}

std::string sweep_config_hash(const SweepConfig& cfg) {
  uint64_t h = mix64(cfg.master_seed);
  auto fold = [&h](uint64_t v) { h = mix64(h ^ v); };
  for (int n : cfg.n_values) fold(static_cast<uint64_t>(n));
  fold(0xA1);  // list separators
  for (int k : cfg.k_values) fold(static_cast<uint64_t>(k));
  fold(0xA2);
  for (int p : cfg.p_values) fold(static_cast<uint64_t>(p));
  fold(0xA3);
  fold(static_cast<uint64_t>(cfg.landscapes_per_cell));
  fold(static_cast<uint64_t>(cfg.runs_per_landscape));
  fold(static_cast<uint64_t>(cfg.generations));
  for (Algorithm a : cfg.algorithms) fold(algorithm_seed_id(a));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SweepResult run_sweep(const SweepConfig& cfg, int threads) {
  validate_sweep_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  // canonical cell order: numerically sorted, duplicates dropped
  auto sorted_unique = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const std::vector<int> ns = sorted_unique(cfg.n_values);
  const std::vector<int> ks = sorted_unique(cfg.k_values);
  const std::vector<int> ps = sorted_unique(cfg.p_values);
  std::vector<Algorithm> algos = cfg.algorithms;
  std::sort(algos.begin(), algos.end());

  SweepResult result;
  result.config = cfg;
  result.config_hash = sweep_config_hash(cfg);
  result.version = kVersionString;

  for (int n : ns) {
    for (int k : ks) {
      for (int p : ps) {
        for (int l = 0; l < cfg.landscapes_per_cell; ++l) {
          const uint64_t ls_seed =
              derive_seed(cfg.master_seed, n, k, l, 0, kAlgorithmNone);
          const Landscape ls = generate_landscape(n, k, ls_seed);

          // all runs on this landscape, in canonical row order
          struct Task {
            int run_idx;
            Algorithm algorithm;
          };
          std::vector<Task> tasks;
          tasks.reserve(static_cast<size_t>(cfg.runs_per_landscape) * algos.size());
          for (int r = 0; r < cfg.runs_per_landscape; ++r)
            for (Algorithm a : algos) tasks.push_back({r, a});

          std::vector<RunRow> batch(tasks.size());
          std::atomic<size_t> next{0};
          auto worker = [&] {
            for (;;) {
              const size_t t = next.fetch_add(1);
              if (t >= tasks.size()) return;
              const Task& task = tasks[t];
              RunConfig rc;
              rc.n = n;
              rc.k = k;
              rc.p = p;
              rc.generations = cfg.generations;
              rc.algorithm = task.algorithm;
              rc.init_seed =
                  derive_seed(cfg.master_seed, n, k, l, task.run_idx, kAlgorithmNone);
              rc.seed = derive_seed(cfg.master_seed, n, k, l, task.run_idx,
                                    algorithm_seed_id(task.algorithm));
              const RunRecord rec = run(rc, ls);

              RunRow row;
              row.n = n;
              row.k = k;
              row.p = p;
              row.algorithm = task.algorithm;
              row.landscape_idx = l;
              row.run_idx = task.run_idx;
              row.landscape_seed = ls_seed;
              row.run_seed = rc.seed;
              row.final_best = rec.final_best;
              row.final_mean = summarize(rec.final_fitnesses).mean;
              row.evaluations = rec.evaluations;
              batch[t] = row;
            }
          };

          std::vector<std::thread> pool;
          const int nworkers = std::min<int>(threads, static_cast<int>(tasks.size()));
          pool.reserve(nworkers > 0 ? nworkers - 1 : 0);
          for (int w = 1; w < nworkers; ++w) pool.emplace_back(worker);
          worker();
          for (auto& th : pool) th.join();

          result.rows.insert(result.rows.end(), batch.begin(), batch.end());
        }
      }
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

}  // namespace hdea
