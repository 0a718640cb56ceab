#pragma once

#include <string>
#include <utility>

#include "entrolab/analytic.hpp"
#include "entrolab/pmf.hpp"

namespace entrolab {

// Moment orders accepted by the public operations. The cap keeps alpha^alpha
// comfortably inside double range; nothing downstream needs more.
inline constexpr double kMaxAlpha = 64.0;

struct MomentProfile {
  double alpha;
  double value;
};

// phi(z) = z log^alpha(1/z) with phi(0) = phi(1) = 0; z outside [0,1] or
// alpha outside (0, 64] rejected.
double phi_alpha(double z, double alpha);

// Location and value of the maximum of phi_alpha on [0,1]:
// (e^{-alpha}, e^{-alpha} alpha^alpha).
std::pair<double, double> phi_alpha_max(double alpha);

// H_alpha = sum of phi_alpha over the masses; alpha in [1, 64].
MomentProfile h_alpha(const Pmf& dist, double alpha);
MomentProfile h_alpha(const AnalyticDistribution& dist, double alpha);
MomentProfile h_alpha(const EmpiricalMeasure& emp, double alpha);

// Proposition-style envelope for max { H_alpha(mu) : mu on K symbols }:
// lower = max{log K, alpha/e}^alpha,
// upper = max{log K, alpha}^alpha + (alpha/e)^alpha.
std::pair<double, double> max_alpha_entropy_bounds(std::int64_t k,
                                                   double alpha);

struct MaxAlphaEntropy {
  Pmf maximizer;
  double value;
  std::string note;  // search diagnostics (tie handling, bracket)
};

// Maximizes H_alpha over distributions on K symbols. The maximizer is known
// to be either uniform or one heavy mass v with the rest spread evenly, so
// the search is one-dimensional in v (coarse scan + golden section), then
// compared against the uniform candidate.
MaxAlphaEntropy max_alpha_entropy_exact(std::int64_t k, double alpha);

}  // namespace entrolab
