#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "entrolab/pmf.hpp"
#include "entrolab/rng.hpp"

namespace entrolab {

// Power law over {1, 2, ...}: mass(k) = k^{-q} / zeta(q), q > 1.
//
// Entropy and the information moments are infinite series; they are computed
// by an explicit head sum plus a midpoint-rule tail integral (see special.cpp
// for the error control). Sampling is inverse-CDF: binary search over a
// lazily grown table of partial sums, falling back to analytic inversion of
// the tail integral for draws beyond the table cap.
class Zeta {
 public:
  explicit Zeta(double q);

  double q() const { return q_; }
  double norm() const { return norm_; }  // zeta(q)

  double mass(std::int64_t k) const;
  double entropy() const;
  double information_moment(double alpha) const;

  // Entropy contributed by symbols with mass < eps, i.e. the tail of the
  // entropy series past the last symbol with mass >= eps.
  double entropy_below(double eps) const;

  std::int64_t sample(UnitRng& rng) const;

  // Largest symbol with mass >= eps (0 when even symbol 1 is below eps).
  std::int64_t last_symbol_with_mass_at_least(double eps) const;

 private:
  double q_;
  double norm_;
  mutable std::vector<double> cdf_;  // cdf_[k-1] = P(X <= k), grown on demand

  void grow_cdf(std::size_t target) const;
};

// One heavy atom of mass `heavy` plus `light_count` atoms of mass
// `light_mass` each. The light block can be enormous (it arises with
// light_count ~ e^{2nh}), so the support is never materialized; entropy and
// the moments are closed forms in (heavy, light_count, light_mass).
// Symbol convention: 0 is the heavy atom, 1..light_count the light ones.
class TwoLevel {
 public:
  TwoLevel(double heavy, std::int64_t light_count, double light_mass);

  double heavy() const { return heavy_; }
  std::int64_t light_count() const { return count_; }
  double light_mass() const { return light_; }

  double mass(std::int64_t symbol) const;
  double entropy() const;
  double information_moment(double alpha) const;
  double entropy_below(double eps) const;

  std::int64_t sample(UnitRng& rng) const;

 private:
  double heavy_;
  std::int64_t count_;
  double light_;
};

// p spread evenly over symbols 1..d, 1-p spread evenly over d+1..d+D.
class MixtureOfUniforms {
 public:
  MixtureOfUniforms(std::int64_t d, std::int64_t D, double p);

  std::int64_t d() const { return d_; }
  std::int64_t D() const { return big_d_; }
  double p() const { return p_; }

  double mass(std::int64_t symbol) const;
  double entropy() const;
  double information_moment(double alpha) const;
  double entropy_below(double eps) const;

  std::int64_t sample(UnitRng& rng) const;

 private:
  std::int64_t d_, big_d_;
  double p_;
};

using AnalyticDistribution = std::variant<Zeta, TwoLevel, MixtureOfUniforms>;

double mass(const AnalyticDistribution& dist, std::int64_t symbol);
double entropy(const AnalyticDistribution& dist);
double information_moment(const AnalyticDistribution& dist, double alpha);
double entropy_below(const AnalyticDistribution& dist, double eps);

inline double entropy(const Pmf& dist) { return dist.entropy(); }
inline double information_moment(const Pmf& dist, double alpha) {
  return dist.information_moment(alpha);
}

// KL(p || q) between members of the same family, in closed form. Mixed
// families are rejected; so are supports that cannot nest.
double kl_divergence(const AnalyticDistribution& p,
                     const AnalyticDistribution& q);

std::vector<std::int64_t> sample(const AnalyticDistribution& dist,
                                 std::int64_t n, std::uint64_t seed);
std::vector<std::int64_t> sample(const Pmf& dist, std::int64_t n,
                                 std::uint64_t seed);

// Exact distances between an analytic distribution and an empirical one,
// using the fact that the empirical support is finite: the off-support part
// of the analytic mass contributes 1 - (analytic mass on the support).
double l1_distance(const AnalyticDistribution& dist,
                   const EmpiricalMeasure& emp);
double linf_distance(const AnalyticDistribution& dist,
                     const EmpiricalMeasure& emp);

}  // namespace entrolab
