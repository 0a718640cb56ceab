#include "entrolab/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "entrolab/errors.hpp"

namespace entrolab {

namespace {

constexpr double kNormTol = 1e-9;

double mass_at(const Pmf& p, std::size_t i) {
  return i < p.size() ? p[i] : 0.0;
}

}  // namespace

Pmf::Pmf(std::vector<double> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw ValidationError("pmf: no masses");
  double sum = 0.0;
  for (double m : masses_) {
    if (!std::isfinite(m) || m < 0.0) {
      throw ValidationError("pmf: masses must be finite and nonnegative");
    }
    sum += m;
  }
  if (std::fabs(sum - 1.0) > kNormTol) {
    throw ValidationError("pmf: masses sum to " + std::to_string(sum) +
                          ", outside the 1e-9 tolerance (not renormalizing)");
  }
}

Pmf Pmf::uniform(std::size_t k) {
  if (k == 0) throw ValidationError("pmf: uniform needs k >= 1");
  return Pmf(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

double Pmf::entropy() const {
  double h = 0.0;
  for (double m : masses_) {
    if (m > 0.0) h -= m * std::log(m);
  }
  return require_finite(h, "entropy");
}

double Pmf::information_moment(double alpha) const {
  double h = 0.0;
  for (double m : masses_) {
    if (m > 0.0) h += m * std::pow(std::fabs(std::log(m)), alpha);
  }
  return require_finite(h, "information moment");
}

Pmf Pmf::sorted_desc() const {
  std::vector<double> v = masses_;
  std::sort(v.begin(), v.end(), std::greater<double>());
  return Pmf(std::move(v));
}

double l1_distance(const Pmf& a, const Pmf& b) {
  std::size_t k = std::max(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    d += std::fabs(mass_at(a, i) - mass_at(b, i));
  }
  return d;
}

double linf_distance(const Pmf& a, const Pmf& b) {
  std::size_t k = std::max(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    d = std::max(d, std::fabs(mass_at(a, i) - mass_at(b, i)));
  }
  return d;
}

double tv_distance(const Pmf& a, const Pmf& b) {
  return 0.5 * l1_distance(a, b);
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  std::size_t k = std::max(p.size(), q.size());
  double d = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double pi = mass_at(p, i);
    if (pi == 0.0) continue;
    double qi = mass_at(q, i);
    if (qi == 0.0) {
      throw ValidationError(
          "kl divergence: p has mass outside the support of q (divergence "
          "is infinite)");
    }
    d += pi * std::log(pi / qi);
  }
  return require_finite(d, "kl divergence");
}

double lp_norm(const std::vector<double>& xi, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : xi) m = std::max(m, std::fabs(x));
    return m;
  }
  if (!(p >= 1.0)) throw ValidationError("lp norm: need p >= 1 or p = inf");
  double s = 0.0;
  for (double x : xi) s += std::pow(std::fabs(x), p);
  return require_finite(std::pow(s, 1.0 / p), "lp norm");
}

EmpiricalMeasure::EmpiricalMeasure(std::map<std::int64_t, std::int64_t> counts,
                                   std::int64_t n)
    : counts_(std::move(counts)), n_(n) {
  if (n_ < 1) throw ValidationError("empirical measure: need n >= 1");
  std::int64_t total = 0;
  for (const auto& [sym, cnt] : counts_) {
    (void)sym;
    if (cnt <= 0) {
      throw ValidationError("empirical measure: counts must be positive");
    }
    total += cnt;
  }
  if (total != n_) {
    throw ValidationError("empirical measure: counts sum to " +
                          std::to_string(total) + ", expected n = " +
                          std::to_string(n_));
  }
}

EmpiricalMeasure EmpiricalMeasure::from_samples(
    const std::vector<std::int64_t>& xs) {
  if (xs.empty()) throw ValidationError("empirical measure: empty sample");
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t x : xs) ++counts[x];
  return EmpiricalMeasure(std::move(counts),
                          static_cast<std::int64_t>(xs.size()));
}

double EmpiricalMeasure::entropy() const {
  // log(c/n) as log c - log n keeps the masses exact rationals
  double h = 0.0;
  double log_n = std::log(static_cast<double>(n_));
  for (const auto& [sym, cnt] : counts_) {
    (void)sym;
    double m = static_cast<double>(cnt) / static_cast<double>(n_);
    h += m * (log_n - std::log(static_cast<double>(cnt)));
  }
  return require_finite(h, "plug-in entropy");
}

double EmpiricalMeasure::information_moment(double alpha) const {
  double h = 0.0;
  double log_n = std::log(static_cast<double>(n_));
  for (const auto& [sym, cnt] : counts_) {
    (void)sym;
    double m = static_cast<double>(cnt) / static_cast<double>(n_);
    double nl = log_n - std::log(static_cast<double>(cnt));  // |log m|, >= 0
    h += m * std::pow(nl, alpha);
  }
  return require_finite(h, "information moment");
}

double EmpiricalMeasure::sum_sqrt() const {
  double s = 0.0;
  for (const auto& [sym, cnt] : counts_) {
    (void)sym;
    s += std::sqrt(static_cast<double>(cnt) / static_cast<double>(n_));
  }
  return s;
}

namespace {

std::int64_t parse_int(const std::string& tok, std::size_t line_no,
                       const char* what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size()) {
    throw ValidationError(std::string("line ") + std::to_string(line_no) +
                          ": expected " + what + ", got \"" + tok + "\"");
  }
  return v;
}

}  // namespace

std::vector<std::int64_t> read_samples(std::istream& in) {
  std::vector<std::int64_t> xs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    xs.push_back(parse_int(line, line_no, "a decimal integer"));
  }
  if (xs.empty()) throw ValidationError("sample file: no samples");
  return xs;
}

EmpiricalMeasure read_counts(std::istream& in) {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected symbol<TAB>count");
    }
    std::int64_t sym = parse_int(line.substr(0, tab), line_no, "a symbol");
    std::int64_t cnt =
        parse_int(line.substr(tab + 1), line_no, "a count");
    if (cnt < 0) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": negative count");
    }
    if (cnt == 0) continue;
    if (counts.count(sym)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": duplicate symbol " + std::to_string(sym));
    }
    counts[sym] = cnt;
    n += cnt;
  }
  if (n == 0) throw ValidationError("count file: no counts");
  return EmpiricalMeasure(std::move(counts), n);
}

void write_counts(const EmpiricalMeasure& emp, std::ostream& out) {
  for (const auto& [sym, cnt] : emp.counts()) {
    out << sym << '\t' << cnt << '\n';
  }
}

}  // namespace entrolab
