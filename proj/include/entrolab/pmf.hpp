#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace entrolab {

// A finitely supported probability vector, indexed 0..size()-1. Construction
// validates: every mass finite and nonnegative, total within 1e-9 of 1.
// Masses are stored as given (no renormalization).
class Pmf {
 public:
  explicit Pmf(std::vector<double> masses);

  static Pmf uniform(std::size_t k);

  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }

  // Shannon entropy in nats, with 0 log(1/0) = 0.
  double entropy() const;

  // H_alpha = sum over positive masses of m * |log m|^alpha.
  double information_moment(double alpha) const;

  // Same support, masses sorted in decreasing order.
  Pmf sorted_desc() const;

 private:
  std::vector<double> masses_;
};

// Distances treat vectors of different lengths as zero-padded on the right.
double l1_distance(const Pmf& a, const Pmf& b);
double linf_distance(const Pmf& a, const Pmf& b);

// half the l1 distance
double tv_distance(const Pmf& a, const Pmf& b);

// KL(p || q) in nats. Vectors of different lengths are compared as if the
// shorter were zero-padded. Throws ValidationError when p puts mass where
// q has none (the divergence is infinite).
double kl_divergence(const Pmf& p, const Pmf& q);

// (sum_i |xi_i|^p)^{1/p}; pass p = infinity for the sup norm. p < 1 rejected.
double lp_norm(const std::vector<double>& xi, double p);

// Observed counts over integer symbols. n is the sample size; the counts
// must be positive and sum to n.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(std::map<std::int64_t, std::int64_t> counts,
                   std::int64_t n);

  static EmpiricalMeasure from_samples(const std::vector<std::int64_t>& xs);

  std::int64_t n() const { return n_; }
  const std::map<std::int64_t, std::int64_t>& counts() const {
    return counts_;
  }

  // Plug-in entropy of the empirical measure, masses taken as exact
  // rationals count/n.
  double entropy() const;

  double information_moment(double alpha) const;

  // sum over observed symbols of sqrt(count/n)
  double sum_sqrt() const;

 private:
  std::map<std::int64_t, std::int64_t> counts_;
  std::int64_t n_;
};

// One decimal integer per line; blank lines ignored.
std::vector<std::int64_t> read_samples(std::istream& in);

// Lines of the form "symbol<TAB>count".
EmpiricalMeasure read_counts(std::istream& in);

// Inverse of read_counts; symbols in increasing order.
void write_counts(const EmpiricalMeasure& emp, std::ostream& out);

}  // namespace entrolab
