#include "hdea/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hdea {

namespace {

constexpr const char* kCsvHeader =
    "n,k,p,algorithm,landscape_idx,run_idx,landscape_seed,run_seed,"
    "final_best,final_mean,evaluations";

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

auto row_key(const RunRow& r) {
  return std::tuple(r.n, r.k, r.p, r.landscape_idx, r.run_idx,
                    static_cast<int>(r.algorithm));
}

}  // namespace

void sort_canonical(std::vector<RunRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const RunRow& a, const RunRow& b) { return row_key(a) < row_key(b); });
}

void write_results_csv(std::ostream& out, const std::vector<RunRow>& rows) {
  out << kCsvHeader << '\n';
  for (const RunRow& r : rows) {
    out << r.n << ',' << r.k << ',' << r.p << ',' << to_string(r.algorithm)
        << ',' << r.landscape_idx << ',' << r.run_idx << ','
        << r.landscape_seed << ',' << r.run_seed << ','
        << fmt("%.17g", r.final_best) << ',' << fmt("%.17g", r.final_mean)
        << ',' << r.evaluations << '\n';
  }
}

void write_results_csv_file(const std::string& path,
                            const std::vector<RunRow>& rows) {
  std::ostringstream os;
  write_results_csv(os, rows);
  write_file_atomic(path, os.str());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void csv_fail(int line, const std::string& msg) {
  throw std::runtime_error("results csv: line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_num(const std::string& tok, int line, const char* what);

template <>
long parse_num<long>(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    csv_fail(line, std::string("malformed ") + what + " '" + tok + "'");
  }
}

template <>
uint64_t parse_num<uint64_t>(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    uint64_t v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    csv_fail(line, std::string("malformed ") + what + " '" + tok + "'");
  }
}

template <>
double parse_num<double>(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    csv_fail(line, std::string("malformed ") + what + " '" + tok + "'");
  }
}

}  // namespace

std::vector<RunRow> load_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) csv_fail(1, "missing header");
  if (line != kCsvHeader) csv_fail(1, "unexpected header");
  std::vector<RunRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto toks = split_csv_line(line);
    if (toks.size() != 11) csv_fail(lineno, "expected 11 columns");
    RunRow r;
    r.n = static_cast<int>(parse_num<long>(toks[0], lineno, "n"));
    r.k = static_cast<int>(parse_num<long>(toks[1], lineno, "k"));
    r.p = static_cast<int>(parse_num<long>(toks[2], lineno, "p"));
    auto a = algorithm_from_string(toks[3]);
    if (!a) csv_fail(lineno, "unknown algorithm '" + toks[3] + "'");
    r.algorithm = *a;
    r.landscape_idx = static_cast<int>(parse_num<long>(toks[4], lineno, "landscape_idx"));
    r.run_idx = static_cast<int>(parse_num<long>(toks[5], lineno, "run_idx"));
    r.landscape_seed = parse_num<uint64_t>(toks[6], lineno, "landscape_seed");
    r.run_seed = parse_num<uint64_t>(toks[7], lineno, "run_seed");
    r.final_best = parse_num<double>(toks[8], lineno, "final_best");
    r.final_mean = parse_num<double>(toks[9], lineno, "final_mean");
    r.evaluations = parse_num<long>(toks[10], lineno, "evaluations");
    rows.push_back(r);
  }
  return rows;
}

std::vector<RunRow> load_results_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  try {
    return load_results_csv(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<CellSummary> summarize_cells(std::vector<RunRow> rows) {
  sort_canonical(rows);
  std::vector<CellSummary> cells;

  size_t i = 0;
  while (i < rows.size()) {
    const auto cell_of = [](const RunRow& r) { return std::tuple(r.n, r.k, r.p); };
    const auto cell_id = cell_of(rows[i]);
    size_t j = i;
    while (j < rows.size() && cell_of(rows[j]) == cell_id) ++j;

    CellSummary cell;
    cell.n = rows[i].n;
    cell.k = rows[i].k;
    cell.p = rows[i].p;

    // per-algorithm samples, in canonical (landscape, run) order
    std::map<Algorithm, std::vector<double>> samples;
    std::map<Algorithm, std::map<std::pair<int, int>, double>> by_run;
    for (size_t t = i; t < j; ++t) {
      samples[rows[t].algorithm].push_back(rows[t].final_best);
      by_run[rows[t].algorithm][{rows[t].landscape_idx, rows[t].run_idx}] =
          rows[t].final_best;
    }
    for (const auto& [algo, xs] : samples)
      cell.algorithms.push_back({algo, summarize(xs)});

    for (auto a = samples.begin(); a != samples.end(); ++a) {
      for (auto b = std::next(a); b != samples.end(); ++b) {
        PairVerdict pv;
        pv.a = a->first;
        pv.b = b->first;
        if (a->second.size() >= 2 && b->second.size() >= 2) {
          pv.test = welch_t_test(a->second, b->second);
        } else {
          pv.test.p_value = std::nan("");
          pv.test.t_statistic = std::nan("");
          pv.test.degrees_of_freedom = std::nan("");
        }

        // paired view over matched (landscape, run) coordinates
        double diff_sum = 0.0;
        long diff_count = 0;
        for (const auto& [key, va] : by_run[pv.a]) {
          auto it = by_run[pv.b].find(key);
          if (it != by_run[pv.b].end()) {
            diff_sum += va - it->second;
            ++diff_count;
          }
        }
        pv.mean_paired_diff = diff_count ? diff_sum / diff_count : std::nan("");

        if (!(pv.test.p_value < 0.05)) {
          pv.verdict = "no significant difference";
        } else if (pv.test.t_statistic > 0) {
          pv.verdict = to_string(pv.a) + " > " + to_string(pv.b) + " (p<0.05)";
        } else {
          pv.verdict = to_string(pv.b) + " > " + to_string(pv.a) + " (p<0.05)";
        }
        cell.pairs.push_back(std::move(pv));
      }
    }
    cells.push_back(std::move(cell));
    i = j;
  }
  return cells;
}

std::string format_summary_table(const std::vector<CellSummary>& cells) {
  std::ostringstream os;
  os << "cell summary (final best fitness per run)\n";
  os << fmt("%-5s %-4s %-4s %-10s %-6s %-12s %-12s %-12s\n", "n", "k", "p",
            "algorithm", "runs", "mean", "min", "max");
  for (const auto& c : cells) {
    for (const auto& a : c.algorithms) {
      os << fmt("%-5d %-4d %-4d ", c.n, c.k, c.p)
         << fmt("%-10s %-6ld ", to_string(a.algorithm).c_str(), a.final_best.count)
         << fmt("%-12.9g %-12.9g %-12.9g\n", a.final_best.mean,
                a.final_best.min, a.final_best.max);
    }
  }
  os << '\n';
  os << "pairwise significance (Welch two-tailed t-test, unpaired, alpha=0.05)\n";
  os << fmt("%-5s %-4s %-4s %-14s %-11s %-10s %-12s %-13s %s\n", "n", "k", "p",
            "pair", "t", "df", "p_value", "paired_diff", "verdict");
  for (const auto& c : cells) {
    for (const auto& pv : c.pairs) {
      const std::string pair = to_string(pv.a) + " vs " + to_string(pv.b);
      os << fmt("%-5d %-4d %-4d ", c.n, c.k, c.p)
         << fmt("%-14s ", pair.c_str())
         << fmt("%-11.5g %-10.5g %-12.5g %-13.5g ", pv.test.t_statistic,
                pv.test.degrees_of_freedom, pv.test.p_value,
                pv.mean_paired_diff)
         << pv.verdict << '\n';
    }
  }
  return os.str();
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << "n,k,p,algorithm,count,mean,min,max,variance\n";
  for (const auto& c : cells)
    for (const auto& a : c.algorithms)
      out << c.n << ',' << c.k << ',' << c.p << ',' << to_string(a.algorithm)
          << ',' << a.final_best.count << ',' << fmt("%.17g", a.final_best.mean)
          << ',' << fmt("%.17g", a.final_best.min) << ','
          << fmt("%.17g", a.final_best.max) << ','
          << fmt("%.17g", a.final_best.variance) << '\n';
}

void write_ttests_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << "n,k,p,algorithm_a,algorithm_b,t,df,p_value,significant_at_05,"
         "paired_mean_diff,verdict\n";
  for (const auto& c : cells)
    for (const auto& pv : c.pairs)
      out << c.n << ',' << c.k << ',' << c.p << ',' << to_string(pv.a) << ','
          << to_string(pv.b) << ',' << fmt("%.17g", pv.test.t_statistic) << ','
          << fmt("%.17g", pv.test.degrees_of_freedom) << ','
          << fmt("%.17g", pv.test.p_value) << ','
          << (pv.test.significant_at_05 ? 1 : 0) << ','
          << fmt("%.17g", pv.mean_paired_diff) << ',' << pv.verdict << '\n';
}

void write_summary_table_file(const std::string& path,
                              const std::vector<CellSummary>& cells,
                              const std::vector<std::string>& header_lines) {
  std::ostringstream os;
  for (const auto& h : header_lines) os << "# " << h << '\n';
  if (!header_lines.empty()) os << '\n';
  os << format_summary_table(cells);
  write_file_atomic(path, os.str());
}

void write_summary_csv_file(const std::string& path,
                            const std::vector<CellSummary>& cells) {
  std::ostringstream os;
  write_summary_csv(os, cells);
  write_file_atomic(path, os.str());
}

namespace {

struct PlotSeries {
  Algorithm algorithm;
  std::vector<double> k;  // x
  std::vector<double> mean, min, max;
};

const char* series_color(Algorithm a) {
  switch (a) {
    case Algorithm::EA: return "#1f77b4";
    case Algorithm::HDEA: return "#d62728";
    case Algorithm::H2P: return "#2ca02c";
  }
  return "#333333";
}

}  // namespace

std::vector<std::string> write_plots(const std::string& out_dir,
                                     const std::vector<CellSummary>& cells) {
  // group cells by (n, p); x axis is k
  std::map<std::pair<int, int>, std::map<Algorithm, PlotSeries>> groups;
  for (const auto& c : cells) {
    for (const auto& a : c.algorithms) {
      PlotSeries& s = groups[{c.n, c.p}][a.algorithm];
      s.algorithm = a.algorithm;
      s.k.push_back(c.k);
      s.mean.push_back(a.final_best.mean);
      s.min.push_back(a.final_best.min);
      s.max.push_back(a.final_best.max);
    }
  }

  std::vector<std::string> written;
  for (const auto& [np, series_map] : groups) {
    const auto [n, p] = np;
    const double width = 640, height = 440;
    const double left = 62, right = width - 20, top = 34, bottom = height - 46;

    double kmin = 1e300, kmax = -1e300, fmin = 1e300, fmax = -1e300;
    for (const auto& [algo, s] : series_map) {
      for (size_t i = 0; i < s.k.size(); ++i) {
        kmin = std::min(kmin, s.k[i]);
        kmax = std::max(kmax, s.k[i]);
        fmin = std::min(fmin, s.min[i]);
        fmax = std::max(fmax, s.max[i]);
      }
    }
    if (kmax == kmin) kmax = kmin + 1;
    const double fpad = std::max(0.01, (fmax - fmin) * 0.08);
    fmin -= fpad;
    fmax += fpad;

    auto sx = [&](double k) { return left + (k - kmin) / (kmax - kmin) * (right - left); };
    auto sy = [&](double f) { return bottom - (f - fmin) / (fmax - fmin) * (bottom - top); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" ",
               width, height)
        << fmt("viewBox=\"0 0 %g %g\">\n", width, height);
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (width / 2) << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">"
        << "final best fitness vs K (N=" << n << ", P=" << p << ")</text>\n";

    // axes
    svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
               left, bottom, right, bottom);
    svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
               left, bottom, left, top);

    // y ticks
    for (int t = 0; t <= 5; ++t) {
      const double f = fmin + (fmax - fmin) * t / 5.0;
      const double y = sy(f);
      svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                 left - 4, y, left, y);
      svg << fmt("<text x=\"%g\" y=\"%g\" text-anchor=\"end\" "
                 "font-family=\"sans-serif\" font-size=\"11\">%.3f</text>\n",
                 left - 7, y + 4, f);
    }
    // x ticks at the observed k values
    std::set<double> kticks;
    for (const auto& [algo, s] : series_map) kticks.insert(s.k.begin(), s.k.end());
    for (double k : kticks) {
      const double x = sx(k);
      svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                 x, bottom, x, bottom + 4);
      svg << fmt("<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                 x, bottom + 17, k);
    }
    svg << fmt("<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"12\">K</text>\n",
               (left + right) / 2, height - 10);
    svg << fmt("<text x=\"16\" y=\"%g\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"12\" "
               "transform=\"rotate(-90 16 %g)\">final best fitness</text>\n",
               (top + bottom) / 2, (top + bottom) / 2);

    // series: mean polyline plus min/max whiskers, staggered a few px so
    // whiskers at the same k stay readable
    int series_idx = 0;
    for (const auto& [algo, s] : series_map) {
      const double dx = (series_idx - (static_cast<int>(series_map.size()) - 1) / 2.0) * 5.0;
      const char* color = series_color(algo);
      std::ostringstream pts;
      for (size_t i = 0; i < s.k.size(); ++i)
        pts << sx(s.k[i]) + dx << ',' << sy(s.mean[i]) << ' ';
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
      for (size_t i = 0; i < s.k.size(); ++i) {
        const double x = sx(s.k[i]) + dx;
        svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\"/>\n",
                   x, sy(s.min[i]), x, sy(s.max[i]), color);
        svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\"/>\n",
                   x - 3, sy(s.min[i]), x + 3, sy(s.min[i]), color);
        svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\"/>\n",
                   x - 3, sy(s.max[i]), x + 3, sy(s.max[i]), color);
        svg << fmt("<circle cx=\"%g\" cy=\"%g\" r=\"2.5\" fill=\"%s\"/>\n",
                   x, sy(s.mean[i]), color);
      }
      // legend
      const double ly = top + 16 + 16 * series_idx;
      svg << fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
                 "stroke-width=\"1.5\"/>\n",
                 left + 10, ly - 4, left + 34, ly - 4, color);
      svg << fmt("<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" "
                 "font-size=\"12\">%s</text>\n",
                 left + 40, ly, to_string(algo).c_str());
      ++series_idx;
    }
    svg << "</svg>\n";

    const std::string path =
        (std::filesystem::path(out_dir) /
         ("plot_n" + std::to_string(n) + "_p" + std::to_string(p) + ".svg"))
            .string();
    write_file_atomic(path, svg.str());
    written.push_back(path);
  }
  return written;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ec2;
    fs::remove(tmp, ec2);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path +
                             ": " + ec.message());
  }
}

}  // namespace hdea
