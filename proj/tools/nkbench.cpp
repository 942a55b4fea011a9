// nkbench: generate NK landscapes, run EA/HDEA/H2P sweeps, summarize and
// test results. See README.md for the full workflow.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdea/report.hpp"
#include "hdea/sweep.hpp"

namespace fs = std::filesystem;
using namespace hdea;

namespace {

int cmd_gen(int n, int k, int count, uint64_t seed, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (int l = 0; l < count; ++l) {
    const uint64_t ls_seed = derive_seed(seed, n, k, l, 0, kAlgorithmNone);
    const Landscape ls = generate_landscape(n, k, ls_seed);
    const std::string path =
        (fs::path(out_dir) / ("nk_n" + std::to_string(n) + "_k" + std::to_string(k) +
                              "_l" + std::to_string(l) + ".nk"))
            .string();
    save_landscape_file(ls, path);
    std::cout << path << " (seed " << ls_seed << ")\n";
  }
  return 0;
}

std::vector<std::string> provenance_lines(const SweepResult& res, int threads) {
  std::vector<std::string> lines;
  lines.push_back(std::string("generated by ") + res.version);
  lines.push_back("config_hash: " + res.config_hash);
  lines.push_back("master_seed: " + std::to_string(res.config.master_seed));
  {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "wall_seconds: " << res.wall_seconds << " (threads: " << threads << ")";
    lines.push_back(os.str());
  }
  lines.push_back("significance decisions use Welch's unpaired two-tailed "
                  "t-test at alpha=0.05; paired_diff is informational");
  return lines;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            bool seed_given, uint64_t seed, int threads,
            const std::vector<std::string>& formats) {
  SweepConfig cfg =
      config_path.empty() ? SweepConfig{} : load_sweep_config(config_path);
  if (seed_given) cfg.master_seed = seed;
  validate_sweep_config(cfg);

  const SweepResult res = run_sweep(cfg, threads);
  const auto cells = summarize_cells(res.rows);

  fs::create_directories(out_dir);
  write_results_csv_file((fs::path(out_dir) / "results.csv").string(), res.rows);
  write_summary_table_file((fs::path(out_dir) / "summary.txt").string(), cells,
                           provenance_lines(res, threads));
  write_summary_csv_file((fs::path(out_dir) / "summary.csv").string(), cells);
  {
    std::ostringstream os;
    write_ttests_csv(os, cells);
    write_file_atomic((fs::path(out_dir) / "ttests.csv").string(), os.str());
  }
  for (const auto& f : formats) {
    if (f == "plot") write_plots(out_dir, cells);
    // csv and table are always written
  }
  std::cout << format_summary_table(cells);
  std::cerr << "wrote " << out_dir << "/results.csv (" << res.rows.size()
            << " rows) in " << std::fixed << res.wall_seconds << "s\n";
  return 0;
}

int cmd_report(const std::string& csv_path, const std::string& out_dir,
               const std::vector<std::string>& formats) {
  auto rows = load_results_csv_file(csv_path);
  if (rows.empty()) throw std::runtime_error(csv_path + ": no data rows");
  const auto cells = summarize_cells(std::move(rows));

  bool any_files = false;
  for (const auto& f : formats) {
    if (f == "table") {
      write_summary_table_file((fs::path(out_dir) / "summary.txt").string(),
                               cells, {std::string("generated by ") + kVersionString,
                                       "source: " + csv_path});
      any_files = true;
    } else if (f == "csv") {
      write_summary_csv_file((fs::path(out_dir) / "summary.csv").string(), cells);
      std::ostringstream os;
      write_ttests_csv(os, cells);
      write_file_atomic((fs::path(out_dir) / "ttests.csv").string(), os.str());
      any_files = true;
    } else if (f == "plot") {
      write_plots(out_dir, cells);
      any_files = true;
    }
  }
  if (any_files) std::cerr << "report written to " << out_dir << "\n";
  std::cout << format_summary_table(cells);
  return 0;
}

int cmd_ttest(const std::string& csv_path, int n, int k, int p,
              const std::string& algo_a, const std::string& algo_b) {
  const auto a = algorithm_from_string(algo_a);
  const auto b = algorithm_from_string(algo_b);
  if (!a) throw std::runtime_error("unknown algorithm '" + algo_a + "'");
  if (!b) throw std::runtime_error("unknown algorithm '" + algo_b + "'");

  std::vector<double> sa, sb;
  for (const RunRow& r : load_results_csv_file(csv_path)) {
    if (r.n != n || r.k != k || r.p != p) continue;
    if (r.algorithm == *a) sa.push_back(r.final_best);
    if (r.algorithm == *b) sb.push_back(r.final_best);
  }
  auto describe_cell = [&](const std::string& name, size_t count) {
    std::ostringstream os;
    os << name << " at (n=" << n << ", k=" << k << ", p=" << p << "): "
       << count << " runs";
    return os.str();
  };
  if (sa.size() < 2 || sb.size() < 2)
    throw std::runtime_error("need at least 2 runs per cell; found " +
                             describe_cell(algo_a, sa.size()) + ", " +
                             describe_cell(algo_b, sb.size()));

  const SampleSummary suma = summarize(sa);
  const SampleSummary sumb = summarize(sb);
  const TTestResult t = welch_t_test(sa, sb);
  std::printf("cell n=%d k=%d p=%d\n", n, k, p);
  std::printf("%-6s count=%-4ld mean=%.9g min=%.9g max=%.9g\n",
              algo_a.c_str(), suma.count, suma.mean, suma.min, suma.max);
  std::printf("%-6s count=%-4ld mean=%.9g min=%.9g max=%.9g\n",
              algo_b.c_str(), sumb.count, sumb.mean, sumb.min, sumb.max);
  std::printf("Welch two-tailed: t=%.6g df=%.6g p=%.6g\n", t.t_statistic,
              t.degrees_of_freedom, t.p_value);
  if (t.significant_at_05)
    std::printf("verdict: %s > %s (p<0.05)\n",
                (t.t_statistic > 0 ? algo_a : algo_b).c_str(),
                (t.t_statistic > 0 ? algo_b : algo_a).c_str());
  else
    std::printf("verdict: no significant difference\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NK-landscape benchmark harness for steady-state EA, "
               "haploid-diploid EA, and the 2P-pool control"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate landscape files");
  int gen_n = 50, gen_k = 4, gen_count = 10;
  uint64_t gen_seed = 1;
  std::string gen_out = ".";
  gen->add_option("--n", gen_n, "gene count")->check(CLI::PositiveNumber);
  gen->add_option("--k", gen_k, "epistasis degree")->check(CLI::NonNegativeNumber);
  gen->add_option("--count", gen_count, "number of landscapes")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out", gen_out, "output directory");

  // run
  auto* runcmd = app.add_subcommand("run", "execute a sweep from a config file");
  std::string run_config, run_out = "results";
  uint64_t run_seed = 0;
  int run_threads = 0;
  std::vector<std::string> run_formats;
  runcmd->add_option("--config", run_config, "sweep config (flat JSON)")
      ->check(CLI::ExistingFile);
  runcmd->add_option("--out", run_out, "output directory");
  auto* run_seed_opt = runcmd->add_option("--seed", run_seed, "override master_seed");
  runcmd->add_option("--threads", run_threads, "worker threads (0 = hardware)");
  runcmd->add_option("--format", run_formats, "extra outputs: csv|table|plot")
      ->check(CLI::IsMember({"csv", "table", "plot"}));

  // report
  auto* report = app.add_subcommand("report", "summaries and plots from a results CSV");
  std::string rep_csv, rep_out = "report";
  std::vector<std::string> rep_formats{"table"};
  report->add_option("csv", rep_csv, "results.csv from a run")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--out", rep_out, "output directory");
  report->add_option("--format", rep_formats, "outputs: csv|table|plot")
      ->check(CLI::IsMember({"csv", "table", "plot"}));

  // ttest
  auto* ttest = app.add_subcommand("ttest", "Welch test between two CSV cells");
  std::string tt_csv, tt_a = "EA", tt_b = "HDEA";
  int tt_n = 0, tt_k = 0, tt_p = 0;
  ttest->add_option("csv", tt_csv, "results.csv")->required()->check(CLI::ExistingFile);
  ttest->add_option("--n", tt_n, "cell n")->required();
  ttest->add_option("--k", tt_k, "cell k")->required();
  ttest->add_option("--p", tt_p, "cell p")->required();
  ttest->add_option("--a", tt_a, "first algorithm");
  ttest->add_option("--b", tt_b, "second algorithm");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_n, gen_k, gen_count, gen_seed, gen_out);
    if (*runcmd)
      return cmd_run(run_config, run_out, run_seed_opt->count() > 0, run_seed,
                     run_threads, run_formats);
    if (*report) return cmd_report(rep_csv, rep_out, rep_formats);
    if (*ttest) return cmd_ttest(tt_csv, tt_n, tt_k, tt_p, tt_a, tt_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
