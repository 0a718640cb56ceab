#include "entrolab/moments.hpp"

#include <cmath>
#include <sstream>

#include "entrolab/errors.hpp"
#include "entrolab/golden.hpp"

namespace entrolab {

namespace {

void check_alpha(double alpha, double lo) {
  if (!std::isfinite(alpha) || !(alpha >= lo) || alpha > kMaxAlpha) {
    std::ostringstream msg;
    msg << "alpha must lie in [" << lo << ", " << kMaxAlpha << "], got "
        << alpha;
    throw ValidationError(msg.str());
  }
}

}  // namespace

double phi_alpha(double z, double alpha) {
  if (!(alpha > 0.0) || alpha > kMaxAlpha) {
    throw ValidationError("phi_alpha: need alpha in (0, 64]");
  }
  if (!(z >= 0.0) || z > 1.0) {
    throw ValidationError("phi_alpha: need z in [0, 1]");
  }
  if (z == 0.0 || z == 1.0) return 0.0;
  return z * std::pow(-std::log(z), alpha);
}

std::pair<double, double> phi_alpha_max(double alpha) {
  if (!(alpha > 0.0) || alpha > kMaxAlpha) {
    throw ValidationError("phi_alpha_max: need alpha in (0, 64]");
  }
  double argmax = std::exp(-alpha);
  return {argmax, argmax * std::pow(alpha, alpha)};
}

MomentProfile h_alpha(const Pmf& dist, double alpha) {
  check_alpha(alpha, 1.0);
  return {alpha, dist.information_moment(alpha)};
}

MomentProfile h_alpha(const AnalyticDistribution& dist, double alpha) {
  check_alpha(alpha, 1.0);
  return {alpha, information_moment(dist, alpha)};
}

MomentProfile h_alpha(const EmpiricalMeasure& emp, double alpha) {
  check_alpha(alpha, 1.0);
  return {alpha, emp.information_moment(alpha)};
}

std::pair<double, double> max_alpha_entropy_bounds(std::int64_t k,
                                                   double alpha) {
  if (k < 2) throw ValidationError("max_alpha_entropy_bounds: need K >= 2");
  check_alpha(alpha, 1.0);
  double log_k = std::log(static_cast<double>(k));
  double lower = std::pow(std::max(log_k, alpha / std::exp(1.0)), alpha);
  double upper = std::pow(std::max(log_k, alpha), alpha) +
                 std::pow(alpha / std::exp(1.0), alpha);
  return {lower, upper};
}

namespace {

// H_alpha of (v, (1-v)/(K-1), ..., (1-v)/(K-1))
double heavy_light_moment(double v, std::int64_t k, double alpha) {
  double light = (1.0 - v) / static_cast<double>(k - 1);
  double h = 0.0;
  if (v > 0.0) h += v * std::pow(std::fabs(std::log(v)), alpha);
  if (light > 0.0) {
    h += (1.0 - v) * std::pow(std::fabs(std::log(light)), alpha);
  }
  return h;
}

}  // namespace

MaxAlphaEntropy max_alpha_entropy_exact(std::int64_t k, double alpha) {
  if (k < 2) throw ValidationError("max_alpha_entropy_exact: need K >= 2");
  check_alpha(alpha, 1.0);

  double log_k = std::log(static_cast<double>(k));
  double uniform_value = std::pow(log_k, alpha);

  // The maximizer is uniform or has a single heavy mass v with the rest
  // spread evenly; v can be restricted to [e^{-(alpha-1)}, 1).
  double lo = std::exp(-(alpha - 1.0));
  double hi = 1.0 - 1e-12;

  double best_v = -1.0;
  double best = -1.0;
  if (lo < hi) {
    // coarse scan first: the objective is smooth but not provably unimodal
    constexpr int kScan = 512;
    int best_i = 0;
    for (int i = 0; i <= kScan; ++i) {
      double v = lo + (hi - lo) * i / kScan;
      double val = heavy_light_moment(v, k, alpha);
      if (!std::isfinite(val)) {
        std::ostringstream msg;
        msg << "max_alpha_entropy_exact: objective not finite at v = " << v
            << " (K = " << k << ", alpha = " << alpha << ")";
        throw NumericError(msg.str());
      }
      if (val > best) {
        best = val;
        best_i = i;
      }
    }
    double bl = lo + (hi - lo) * std::max(best_i - 1, 0) / kScan;
    double bh = lo + (hi - lo) * std::min(best_i + 1, kScan) / kScan;
    best_v = golden_min(
        [&](double v) { return -heavy_light_moment(v, k, alpha); }, bl, bh,
        1e-10);
    best = std::max(best, heavy_light_moment(best_v, k, alpha));
  }

  std::ostringstream note;
  if (best_v >= 0.0 && best > uniform_value + 1e-12) {
    note << "heavy-light maximizer, v = " << best_v
         << "; uniform candidate = " << uniform_value;
    std::vector<double> masses(static_cast<std::size_t>(k),
                               (1.0 - best_v) / static_cast<double>(k - 1));
    masses[0] = best_v;
    return {Pmf(std::move(masses)), require_finite(best, "max entropy"),
            note.str()};
  }
  if (best_v >= 0.0 && best > uniform_value - 1e-12) {
    note << "heavy-light candidate ties the uniform within 1e-12; "
            "returning the uniform";
  } else {
    note << "uniform maximizer; best heavy-light candidate = " << best;
  }
  return {Pmf::uniform(static_cast<std::size_t>(k)),
          require_finite(uniform_value, "max entropy"), note.str()};
}

}  // namespace entrolab
