#pragma once

#include <span>

namespace hdea {

struct SampleSummary {
  long count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double variance = 0.0;  // unbiased; 0 when count == 1
};

SampleSummary summarize(std::span<const double> xs);

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;  // Welch-Satterthwaite
  double p_value = 1.0;             // two-tailed
  bool significant_at_05 = false;
};

// Welch's unpaired two-sample t-test, two-tailed. Both samples need at
// least 2 entries. Zero variance on both sides: equal means give t=0,
// p=1; unequal means give p=0.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

// I_x(a,b) via the continued-fraction expansion; |error| < 1e-12 over the
// parameter ranges used here.
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

}  // namespace hdea
