#include "entrolab/certify.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "entrolab/errors.hpp"
#include "entrolab/format.hpp"
#include "entrolab/moments.hpp"

namespace entrolab {

double plug_in_entropy(const EmpiricalMeasure& emp) { return emp.entropy(); }

EntropyCertificate certificate(const EmpiricalMeasure& emp, double alpha,
                               double h, double delta) {
  if (!std::isfinite(alpha) || !(alpha > 1.0) || alpha > kMaxAlpha) {
    throw ValidationError("certificate: alpha must lie in (1, 64]");
  }
  if (!std::isfinite(h) || !(h >= 0.0)) {
    throw ValidationError("certificate: need a finite moment bound h >= 0");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ValidationError("certificate: need delta in (0, 1)");
  }
  double n = static_cast<double>(emp.n());
  double need = 2.0 * std::log(4.0 / delta);
  if (n < need) {
    std::ostringstream msg;
    msg << "certificate: n = " << emp.n()
        << " is below 2 log(4/delta) = " << need << "; need n >= "
        << static_cast<std::int64_t>(std::ceil(need));
    throw ValidationError(msg.str());
  }

  double root_mass = 2.0 / std::sqrt(n) * emp.sum_sqrt();
  double confidence = 6.0 * std::sqrt(std::log(4.0 / delta) / (2.0 * n));
  double l1 = root_mass + confidence;
  double moment = emp.information_moment(alpha);
  double factor =
      std::pow(2.0 * std::pow(alpha, alpha) + h + moment, 1.0 / alpha);
  double radius = require_finite(factor * std::pow(l1, 1.0 - 1.0 / alpha),
                                 "certificate radius");

  EntropyCertificate cert;
  cert.estimate = emp.entropy();
  cert.radius = radius;
  cert.alpha = alpha;
  cert.h = h;
  cert.delta = delta;
  cert.n = emp.n();
  cert.breakdown.name = "entropy_certificate_radius";
  cert.breakdown.value = radius;
  cert.breakdown.terms = {{"root_mass_term", root_mass},
                          {"confidence_term", confidence},
                          {"l1_radius", l1},
                          {"empirical_moment", moment},
                          {"moment_factor", factor}};
  cert.breakdown.preconditions = {{"n >= 2 log(4/delta)", true},
                                  {"alpha in (1, 64]", true}};
  return cert;
}

EntropyCertificate certificate_best_alpha(
    const EmpiricalMeasure& emp,
    const std::function<double(double)>& h_of_alpha, double delta,
    const std::vector<double>& alpha_grid) {
  if (alpha_grid.empty()) {
    throw ValidationError("certificate grid search: empty alpha grid");
  }
  EntropyCertificate best;
  std::vector<std::pair<double, double>> tried;
  bool have = false;
  for (double alpha : alpha_grid) {
    EntropyCertificate c = certificate(emp, alpha, h_of_alpha(alpha), delta);
    tried.emplace_back(alpha, c.radius);
    if (!have || c.radius < best.radius) {
      best = std::move(c);
      have = true;
    }
  }
  best.candidates = std::move(tried);
  return best;
}

EmpiricalMeasure ingest(const std::string& path, const std::string& format) {
  if (format != "samples" && format != "counts") {
    throw ValidationError("ingest: unknown format \"" + format +
                          "\" (expected samples or counts)");
  }
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open");
  try {
    if (format == "samples") {
      return EmpiricalMeasure::from_samples(read_samples(in));
    }
    return read_counts(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string certificate_json(const EntropyCertificate& cert) {
  std::ostringstream out;
  out << "{\"estimate\":" << format_g17(cert.estimate)
      << ",\"radius\":" << format_g17(cert.radius)
      << ",\"alpha\":" << format_g17(cert.alpha)
      << ",\"h\":" << format_g17(cert.h)
      << ",\"delta\":" << format_g17(cert.delta) << ",\"n\":" << cert.n
      << ",\"terms\":[";
  bool first = true;
  for (const auto& [label, value] : cert.breakdown.terms) {
    if (!first) out << ',';
    first = false;
    out << "[\"" << label << "\"," << format_g17(value) << ']';
  }
  out << "],\"preconditions\":[";
  first = true;
  for (const auto& [label, ok] : cert.breakdown.preconditions) {
    if (!first) out << ',';
    first = false;
    out << "[\"" << label << "\"," << (ok ? "true" : "false") << ']';
  }
  out << ']';
  if (!cert.candidates.empty()) {
    out << ",\"candidates\":[";
    first = true;
    for (const auto& [alpha, radius] : cert.candidates) {
      if (!first) out << ',';
      first = false;
      out << '[' << format_g17(alpha) << ',' << format_g17(radius) << ']';
    }
    out << ']';
  }
  out << '}';
  return out.str();
}

}  // namespace entrolab
