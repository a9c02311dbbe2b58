#ifndef IRIS_AGING_STATS_HPP
#define IRIS_AGING_STATS_HPP

namespace iris_aging {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularizedIncompleteBeta(double a, double b, double x);

/// Two-sided Student-t tail probability P(|T_df| >= |t|).
double studentTSf(double t, double df);

}  // namespace iris_aging

#endif
