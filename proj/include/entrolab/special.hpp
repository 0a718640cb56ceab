#pragma once

#include <cstdint>

namespace entrolab {

// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt, a > 0,
// x >= 0. Series expansion below the ridge x < a+1, continued fraction above.
double upper_incomplete_gamma(double a, double x);

// log of the above; usable where Gamma(a, x) itself would overflow
// (a up to ~300 is exercised by the zeta moment tails).
double log_upper_incomplete_gamma(double a, double x);

// sum_{k > k0} k^{-q} (q log k + c)^alpha for q > 1, c >= 0, alpha >= 0.
// This is the engine behind every zeta-family series: with c = log zeta(q)
// it gives zeta(q) * H_alpha, with c = 0 and alpha = 1 it gives
// q * sum k^{-q} log k (the mean log needed for KL).
//
// Explicit head sum plus a midpoint-rule tail integral (an upper incomplete
// gamma after substitution). The head reaches past the point where the
// summand turns decreasing and convex, then extends, doubling, until either
// the monotone-sandwich bound f(M)/2 or the telescoped midpoint residual
// (|f'| + f'')/24 at the cut certifies the substitution error below 1e-9
// (absolute, or relative once the sum exceeds 1). If the convex regime lies
// more than 2^21 terms past k0 (large alpha, or q near 1), the head is cut
// at 8192 terms; the midpoint rule then runs through the peak of the
// summand, which is accurate in practice but not certified.
double zeta_log_moment_tail(double q, double c, double alpha,
                            std::int64_t k0);

inline double zeta_log_moment(double q, double c, double alpha) {
  return zeta_log_moment_tail(q, c, alpha, 0);
}

}  // namespace entrolab
