#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entrolab/analytic.hpp"
#include "entrolab/pmf.hpp"

namespace entrolab {

// A bound value together with the summands it was assembled from and the
// preconditions that were checked on the way. `value` always equals the
// formula applied to `terms`.
struct BoundBreakdown {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> terms;
  std::vector<std::pair<std::string, bool>> preconditions;
};

// High-probability radius for the l1 distance between the sampled
// distribution and the empirical one:
//   (2/sqrt(n)) sum_j sqrt(emp(j))  +  6 sqrt(log(2/delta) / (2n)).
// Everything on the right is computable from the sample.
BoundBreakdown ckw_l1_radius(const EmpiricalMeasure& emp, double delta);

// Entropy difference bound for distributions on d symbols at distance t:
// t log(d/t), valid for t <= 1/2.
double ct_bound(double t, std::int64_t d);

struct DimfreeBound {
  double tight;
  double loose;  // tight <= loose; loose splits the 1/alpha root termwise
};

// Dimension-free entropy continuity: for alpha > 1 and sup-distance < 1/2,
//   |H(mu) - H(nu)| <= l1^{1-1/alpha} (2 alpha^alpha + H_a(mu) + H_a(nu))^{1/alpha}.
// The sup-distance hypothesis is the caller's responsibility.
DimfreeBound dimfree_bound(double l1, double h_mu, double h_nu, double alpha);

// Expected-l1 bound 2 sum_{mass < 1/n} mass + n^{-1/2} sum_{mass >= 1/n} sqrt(mass).
double lambda_n(const Pmf& dist, std::int64_t n);
double lambda_n(const AnalyticDistribution& dist, std::int64_t n);

// Bound on E|H(mu) - H(empirical)|:
//   (alpha^alpha/e + 2 alpha^alpha + 2 H_alpha(mu))^{1/alpha} * lambda_n^{1-1/alpha}.
double expected_gap_bound(const Pmf& dist, std::int64_t n, double alpha);
double expected_gap_bound(const AnalyticDistribution& dist, std::int64_t n,
                          double alpha);

// (d+D)/n + min(C log(d+D)/sqrt(n), log(n)/sqrt(n)), C > 1.
double wy_bound(std::int64_t d, std::int64_t big_d, std::int64_t n, double c);

struct AlphaOptimum {
  double alpha_star;
  double value;
};

// Minimizes over alpha in (1, 64] the expected-gap objective with the
// moment term replaced as follows: when support_bound K >= 1, by the
// K-symbol maximal-moment envelope 2 max{alpha, log K}^alpha + 2(alpha/e)^alpha;
// when support_bound == 0, by 2 H_alpha(dist) itself (infinite-support
// families). Coarse log grid, then golden-section refinement.
AlphaOptimum our_rate_bound(const Pmf& dist, std::int64_t support_bound,
                            std::int64_t n);
AlphaOptimum our_rate_bound(const AnalyticDistribution& dist,
                            std::int64_t support_bound, std::int64_t n);

// lambda_n(dist) log(support_size / lambda_n(dist)); requires
// lambda_n < support_size.
double ct_rate_bound(const Pmf& dist, std::int64_t support_size,
                     std::int64_t n);
double ct_rate_bound(const AnalyticDistribution& dist,
                     std::int64_t support_size, std::int64_t n);

struct SandwichResult {
  double eps_star;
  double deficit;
};

// Bias bound for the plug-in estimate:
//   H(mu) >= E H(empirical) >= H(mu) - deficit,
//   deficit = min over the grid of [ entropy of masses below eps
//                                    + log(1 + 1/(eps n)) ].
SandwichResult sandwich_lower_bound(const Pmf& dist, std::int64_t n,
                                    const std::vector<double>& epsilon_grid);
SandwichResult sandwich_lower_bound(const AnalyticDistribution& dist,
                                    std::int64_t n,
                                    const std::vector<double>& epsilon_grid);

// log(n)/sqrt(n) + min over the grid of [ (log(1/eps))^{1-alpha} h
//                                         + log(1 + 1/(eps n)) ].
double plug_in_risk_bound(double h, double alpha, std::int64_t n,
                          const std::vector<double>& epsilon_grid);

// {2^-1, ..., 2^-60}, the default grid for the two bounds above.
std::vector<double> default_epsilon_grid();

// (1 + log n)/sqrt(n) + 2^{alpha-1} h / (log n)^{alpha-1}, n >= 2.
double minimax_upper(double h, double alpha, std::int64_t n);

struct MinimaxLower {
  double h;      // 3^alpha (log n)^alpha, the moment level of the hard pair
  double bound;  // h / (4 * 3^alpha (log n)^{alpha-1}) = log(n)/4
};

MinimaxLower minimax_lower_value(double alpha, std::int64_t n);

// The adversarial pair showing that no empirical functional can estimate
// entropy over an unbounded moment class: a point mass mu0 and a two-level
// mun that is statistically indistinguishable from it (KL <= 1/n) yet has
// entropy at least h/2.
struct NoEmpPair {
  std::int64_t n;
  double h;
  double a_n;    // (1 - 1/(2n)) log(1 - 1/(2n))
  double log_s;  // log of the light-block size
  std::int64_t s;
  TwoLevel mu0;  // point mass on the heavy symbol
  TwoLevel mun;
  double kl;           // KL(mu0 || mun)
  double entropy_mun;  // in [h/2, h]
  double risk_floor;   // h / (4e)
};

NoEmpPair no_emp_construction(double h, std::int64_t n);

// Exact probability that m draws uniform on [k] are all distinct:
// prod_{i=0}^{m-1} (1 - i/k). Zero when m > k.
double birthday_no_collision(std::int64_t m, std::int64_t k);

}  // namespace entrolab
