#pragma once

#include <span>

namespace podseg {

inline constexpr double kSignificanceLevel = 0.05;

// Starred in reports iff p < 0.05.
inline bool is_significant(double p_value) { return p_value < kSignificanceLevel; }

// Regularised incomplete beta I_x(a, b) via a continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value of Student's t with df degrees of freedom.
double student_t_two_sided(double t, double df);

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;
  bool significant() const { return is_significant(p_value); }
};

// Sample Pearson correlation with a t-test p-value on n - 2 degrees of
// freedom. Needs n >= 3 and non-constant series (DegenerateVariance).
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace podseg
