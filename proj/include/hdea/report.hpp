#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hdea/stats.hpp"
#include "hdea/sweep.hpp"

namespace hdea {

// Raw per-run CSV. Columns:
//   n,k,p,algorithm,landscape_idx,run_idx,landscape_seed,run_seed,
//   final_best,final_mean,evaluations
// Doubles carry 17 significant digits so reload is bit-exact.
void write_results_csv(std::ostream& out, const std::vector<RunRow>& rows);
void write_results_csv_file(const std::string& path,
                            const std::vector<RunRow>& rows);
std::vector<RunRow> load_results_csv(std::istream& in);
std::vector<RunRow> load_results_csv_file(const std::string& path);

void sort_canonical(std::vector<RunRow>& rows);

struct AlgorithmSummary {
  Algorithm algorithm = Algorithm::EA;
  SampleSummary final_best;  // over the cell's runs
};

struct PairVerdict {
  Algorithm a = Algorithm::EA;
  Algorithm b = Algorithm::EA;
  TTestResult test;            // welch(a_sample, b_sample)
  double mean_paired_diff = 0.0;  // mean over matched (landscape,run) of a-b
  std::string verdict;         // e.g. "HDEA > EA (p<0.05)"
};

struct CellSummary {
  int n = 0;
  int k = 0;
  int p = 0;
  std::vector<AlgorithmSummary> algorithms;
  std::vector<PairVerdict> pairs;  // every algorithm pair present
};

// Group rows by cell, summarize final_best per algorithm, and run Welch's
// test for every algorithm pair. Rows may arrive in any order.
std::vector<CellSummary> summarize_cells(std::vector<RunRow> rows);

// Fixed-width table: one mean/min/max row per (cell, algorithm), then the
// pairwise significance block. Stable content, no timestamps.
std::string format_summary_table(const std::vector<CellSummary>& cells);

// Same content as the table, machine-readable (stats block and pairwise
// test block as separate CSVs).
void write_summary_csv(std::ostream& out,
                       const std::vector<CellSummary>& cells);
void write_ttests_csv(std::ostream& out,
                      const std::vector<CellSummary>& cells);

// `header_lines` are emitted first as '#' comments (provenance).
void write_summary_table_file(const std::string& path,
                              const std::vector<CellSummary>& cells,
                              const std::vector<std::string>& header_lines);
void write_summary_csv_file(const std::string& path,
                            const std::vector<CellSummary>& cells);

// One self-contained SVG per (n,p): mean final fitness vs k with min/max
// whiskers, one series per algorithm. Returns the paths written.
std::vector<std::string> write_plots(const std::string& out_dir,
                                     const std::vector<CellSummary>& cells);

// Writes via a temp file and renames, so failures leave nothing behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hdea
