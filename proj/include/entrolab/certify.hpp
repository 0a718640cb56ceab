#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entrolab/bounds.hpp"
#include "entrolab/pmf.hpp"

namespace entrolab {

// Entropy of the empirical masses (the plug-in estimate), in nats.
double plug_in_entropy(const EmpiricalMeasure& emp);

struct EntropyCertificate {
  double estimate;
  double radius;
  double alpha;
  double h;      // assumed bound on H_alpha of the sampled distribution
  double delta;
  std::int64_t n;
  BoundBreakdown breakdown;
  // (alpha, radius) of every candidate tried, when a grid search produced
  // this certificate; empty otherwise.
  std::vector<std::pair<double, double>> candidates;
};

// Assembles the fully empirical confidence radius
//   radius = (2 alpha^alpha + h + H_alpha(emp))^{1/alpha} * r_1^{1-1/alpha},
//   r_1 = (2/sqrt(n)) sum_j sqrt(emp(j)) + 6 sqrt(log(4/delta) / (2n)),
// valid with probability 1-delta whenever the sample really comes from a
// distribution with H_alpha <= h. Requires n >= 2 log(4/delta) and
// alpha in (1, 64]; h is the caller's assumption, never inferred from data.
EntropyCertificate certificate(const EmpiricalMeasure& emp, double alpha,
                               double h, double delta);

// Evaluates certificate() on every alpha in the grid, with h supplied per
// alpha, and returns the one with the smallest radius (candidates recorded).
EntropyCertificate certificate_best_alpha(
    const EmpiricalMeasure& emp, const std::function<double(double)>& h_of_alpha,
    double delta, const std::vector<double>& alpha_grid);

// Reads a sample file ("samples": one integer per line) or a count file
// ("counts": symbol<TAB>count lines). Malformed lines are reported with
// their line number.
EmpiricalMeasure ingest(const std::string& path, const std::string& format);

// One-line JSON with keys estimate, radius, alpha, h, delta, n, terms,
// preconditions (and candidates after a grid search). No trailing newline.
std::string certificate_json(const EntropyCertificate& cert);

}  // namespace entrolab
