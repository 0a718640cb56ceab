#include "entrolab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entrolab/errors.hpp"
#include "entrolab/special.hpp"

namespace entrolab {

namespace {

constexpr double kNormTol = 1e-9;

// one summand of H_alpha, with the 0 log 0 convention
double moment_term(double m, double alpha) {
  if (m <= 0.0) return 0.0;
  return m * std::pow(std::fabs(std::log(m)), alpha);
}

double entropy_term(double m) {
  if (m <= 0.0) return 0.0;
  return -m * std::log(m);
}

}  // namespace

// ---------------------------------------------------------------- Zeta ----

Zeta::Zeta(double q) : q_(q) {
  if (!std::isfinite(q) || !(q > 1.0)) {
    throw ValidationError("zeta: need exponent q > 1");
  }
  norm_ = require_finite(std::riemann_zeta(q), "zeta normalizer");
}

double Zeta::mass(std::int64_t k) const {
  if (k < 1) return 0.0;
  return std::exp(-q_ * std::log(static_cast<double>(k))) / norm_;
}

double Zeta::entropy() const {
  return zeta_log_moment(q_, std::log(norm_), 1.0) / norm_;
}

double Zeta::information_moment(double alpha) const {
  return zeta_log_moment(q_, std::log(norm_), alpha) / norm_;
}

std::int64_t Zeta::last_symbol_with_mass_at_least(double eps) const {
  if (!(eps > 0.0)) throw ValidationError("zeta: need eps > 0");
  if (mass(1) < eps) return 0;
  // mass(k) >= eps  <=>  k <= (1/(norm eps))^{1/q}
  double x = std::exp(-(std::log(norm_) + std::log(eps)) / q_);
  if (x > 4.0e18) {
    throw NumericError("zeta: threshold symbol exceeds the integer range");
  }
  std::int64_t j = static_cast<std::int64_t>(x);
  while (mass(j + 1) >= eps) ++j;
  while (j > 1 && mass(j) < eps) --j;
  return j;
}

double Zeta::entropy_below(double eps) const {
  std::int64_t j = last_symbol_with_mass_at_least(eps);
  if (j == 0) return entropy();
  return zeta_log_moment_tail(q_, std::log(norm_), 1.0, j) / norm_;
}

void Zeta::grow_cdf(std::size_t target) const {
  std::size_t old = cdf_.size();
  cdf_.resize(target);
  long double acc = old == 0 ? 0.0L : static_cast<long double>(cdf_[old - 1]);
  for (std::size_t k = old + 1; k <= target; ++k) {
    acc += static_cast<long double>(mass(static_cast<std::int64_t>(k)));
    cdf_[k - 1] = static_cast<double>(acc);
  }
}

std::int64_t Zeta::sample(UnitRng& rng) const {
  constexpr std::size_t kCap = std::size_t{1} << 21;
  double u = rng.next();
  if (cdf_.empty()) grow_cdf(1024);
  while (u > cdf_.back() && cdf_.size() < kCap) {
    grow_cdf(std::min(kCap, cdf_.size() * 2));
  }
  if (u <= cdf_.back()) {
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
  }
  // Far tail, beyond the table: invert the midpoint integral approximation
  // of the tail mass, sum_{j>k} mass(j) ~ (k+1/2)^{1-q} / ((q-1) norm).
  double log_tail = std::log1p(-u);  // log(1 - u)
  double x =
      std::exp((log_tail + std::log(q_ - 1.0) + std::log(norm_)) / (1.0 - q_));
  if (!(x < 9.0e18)) {
    throw NumericError("zeta sample: tail draw exceeds the integer range");
  }
  std::int64_t k = static_cast<std::int64_t>(std::llround(x - 0.5));
  std::int64_t floor_k = static_cast<std::int64_t>(cdf_.size()) + 1;
  return std::max(k, floor_k);
}

// ------------------------------------------------------------ TwoLevel ----

TwoLevel::TwoLevel(double heavy, std::int64_t light_count, double light_mass)
    : heavy_(heavy), count_(light_count), light_(light_mass) {
  if (!std::isfinite(heavy) || heavy < 0.0 || heavy > 1.0) {
    throw ValidationError("two-level: heavy mass must be in [0,1]");
  }
  if (light_count < 1) {
    throw ValidationError("two-level: need light_count >= 1");
  }
  if (!std::isfinite(light_mass) || light_mass < 0.0 || light_mass > 1.0) {
    throw ValidationError("two-level: light mass must be in [0,1]");
  }
  double total = heavy_ + static_cast<double>(count_) * light_;
  if (std::fabs(total - 1.0) > kNormTol) {
    throw ValidationError("two-level: masses sum to " + std::to_string(total) +
                          ", outside the 1e-9 tolerance");
  }
}

double TwoLevel::mass(std::int64_t symbol) const {
  if (symbol == 0) return heavy_;
  if (symbol >= 1 && symbol <= count_) return light_;
  return 0.0;
}

double TwoLevel::entropy() const {
  double light_total = static_cast<double>(count_) * light_;
  return require_finite(entropy_term(heavy_) +
                            (light_ > 0.0 ? -light_total * std::log(light_) : 0.0),
                        "two-level entropy");
}

double TwoLevel::information_moment(double alpha) const {
  double light_total = static_cast<double>(count_) * light_;
  double h = moment_term(heavy_, alpha);
  if (light_ > 0.0) {
    h += light_total * std::pow(std::fabs(std::log(light_)), alpha);
  }
  return require_finite(h, "two-level information moment");
}

double TwoLevel::entropy_below(double eps) const {
  double h = 0.0;
  if (heavy_ < eps) h += entropy_term(heavy_);
  if (light_ > 0.0 && light_ < eps) {
    h += -static_cast<double>(count_) * light_ * std::log(light_);
  }
  return h;
}

std::int64_t TwoLevel::sample(UnitRng& rng) const {
  if (rng.next() < heavy_) return 0;
  double u = rng.next();
  std::int64_t k =
      1 + static_cast<std::int64_t>(u * static_cast<double>(count_));
  return std::min(k, count_);
}

// --------------------------------------------------- MixtureOfUniforms ----

MixtureOfUniforms::MixtureOfUniforms(std::int64_t d, std::int64_t D, double p)
    : d_(d), big_d_(D), p_(p) {
  if (d < 1 || D < 1) {
    throw ValidationError("mixture: need d >= 1 and D >= 1");
  }
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ValidationError("mixture: p must be a probability");
  }
}

double MixtureOfUniforms::mass(std::int64_t symbol) const {
  if (symbol >= 1 && symbol <= d_) return p_ / static_cast<double>(d_);
  if (symbol > d_ && symbol <= d_ + big_d_) {
    return (1.0 - p_) / static_cast<double>(big_d_);
  }
  return 0.0;
}

double MixtureOfUniforms::entropy() const {
  double head = p_ / static_cast<double>(d_);
  double tail = (1.0 - p_) / static_cast<double>(big_d_);
  return require_finite(
      (head > 0.0 ? -p_ * std::log(head) : 0.0) +
          (tail > 0.0 ? -(1.0 - p_) * std::log(tail) : 0.0),
      "mixture entropy");
}

double MixtureOfUniforms::information_moment(double alpha) const {
  double head = p_ / static_cast<double>(d_);
  double tail = (1.0 - p_) / static_cast<double>(big_d_);
  double h = 0.0;
  if (head > 0.0) h += p_ * std::pow(std::fabs(std::log(head)), alpha);
  if (tail > 0.0) h += (1.0 - p_) * std::pow(std::fabs(std::log(tail)), alpha);
  return require_finite(h, "mixture information moment");
}

double MixtureOfUniforms::entropy_below(double eps) const {
  double head = p_ / static_cast<double>(d_);
  double tail = (1.0 - p_) / static_cast<double>(big_d_);
  double h = 0.0;
  if (head > 0.0 && head < eps) h += -p_ * std::log(head);
  if (tail > 0.0 && tail < eps) h += -(1.0 - p_) * std::log(tail);
  return h;
}

std::int64_t MixtureOfUniforms::sample(UnitRng& rng) const {
  if (rng.next() < p_) {
    std::int64_t k =
        1 + static_cast<std::int64_t>(rng.next() * static_cast<double>(d_));
    return std::min(k, d_);
  }
  std::int64_t k =
      1 + static_cast<std::int64_t>(rng.next() * static_cast<double>(big_d_));
  return d_ + std::min(k, big_d_);
}

// ------------------------------------------------------------ dispatch ----

double mass(const AnalyticDistribution& dist, std::int64_t symbol) {
  return std::visit([symbol](const auto& d) { return d.mass(symbol); }, dist);
}

double entropy(const AnalyticDistribution& dist) {
  return std::visit([](const auto& d) { return d.entropy(); }, dist);
}

double information_moment(const AnalyticDistribution& dist, double alpha) {
  return std::visit(
      [alpha](const auto& d) { return d.information_moment(alpha); }, dist);
}

double entropy_below(const AnalyticDistribution& dist, double eps) {
  return std::visit([eps](const auto& d) { return d.entropy_below(eps); },
                    dist);
}

namespace {

double kl_zeta(const Zeta& p, const Zeta& q) {
  // E_p[log k] via the alpha=1 series with c=0
  double mean_log = zeta_log_moment(p.q(), 0.0, 1.0) / (p.q() * p.norm());
  double kl = (q.q() - p.q()) * mean_log + std::log(q.norm() / p.norm());
  return std::max(kl, 0.0);
}

double kl_two_level(const TwoLevel& p, const TwoLevel& q) {
  double kl = 0.0;
  if (p.heavy() > 0.0) {
    if (q.heavy() == 0.0) {
      throw ValidationError(
          "kl divergence: p has mass outside the support of q (divergence "
          "is infinite)");
    }
    kl += p.heavy() * std::log(p.heavy() / q.heavy());
  }
  double light_total = static_cast<double>(p.light_count()) * p.light_mass();
  if (light_total > 0.0) {
    if (q.light_mass() == 0.0 || p.light_count() > q.light_count()) {
      throw ValidationError(
          "kl divergence: p has mass outside the support of q (divergence "
          "is infinite)");
    }
    kl += light_total * std::log(p.light_mass() / q.light_mass());
  }
  return require_finite(kl, "kl divergence");
}

double kl_mixture(const MixtureOfUniforms& p, const MixtureOfUniforms& q) {
  if (p.d() != q.d() || p.D() != q.D()) {
    throw ValidationError(
        "kl divergence: mixtures must share the same block sizes");
  }
  double kl = 0.0;
  if (p.p() > 0.0) {
    if (q.p() == 0.0) {
      throw ValidationError(
          "kl divergence: p has mass outside the support of q (divergence "
          "is infinite)");
    }
    kl += p.p() * std::log(p.p() / q.p());
  }
  if (p.p() < 1.0) {
    if (q.p() == 1.0) {
      throw ValidationError(
          "kl divergence: p has mass outside the support of q (divergence "
          "is infinite)");
    }
    kl += (1.0 - p.p()) * std::log((1.0 - p.p()) / (1.0 - q.p()));
  }
  return require_finite(std::max(kl, 0.0), "kl divergence");
}

}  // namespace

double kl_divergence(const AnalyticDistribution& p,
                     const AnalyticDistribution& q) {
  if (const auto* zp = std::get_if<Zeta>(&p)) {
    if (const auto* zq = std::get_if<Zeta>(&q)) return kl_zeta(*zp, *zq);
  } else if (const auto* tp = std::get_if<TwoLevel>(&p)) {
    if (const auto* tq = std::get_if<TwoLevel>(&q)) {
      return kl_two_level(*tp, *tq);
    }
  } else if (const auto* mp = std::get_if<MixtureOfUniforms>(&p)) {
    if (const auto* mq = std::get_if<MixtureOfUniforms>(&q)) {
      return kl_mixture(*mp, *mq);
    }
  }
  throw ValidationError(
      "kl divergence: analytic distributions must be from the same family");
}

std::vector<std::int64_t> sample(const AnalyticDistribution& dist,
                                 std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample: need n >= 1");
  UnitRng rng(seed);
  std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) {
    x = std::visit([&rng](const auto& d) { return d.sample(rng); }, dist);
  }
  return xs;
}

std::vector<std::int64_t> sample(const Pmf& dist, std::int64_t n,
                                 std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample: need n >= 1");
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);
  UnitRng rng(seed);
  std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), rng.next());
    x = static_cast<std::int64_t>(it - cdf.begin()) + 1;  // symbols 1-based
  }
  return xs;
}

double l1_distance(const AnalyticDistribution& dist,
                   const EmpiricalMeasure& emp) {
  double on_support = 0.0;
  double covered = 0.0;
  double n = static_cast<double>(emp.n());
  for (const auto& [sym, cnt] : emp.counts()) {
    double m = mass(dist, sym);
    on_support += std::fabs(static_cast<double>(cnt) / n - m);
    covered += m;
  }
  return on_support + std::max(0.0, 1.0 - covered);
}

double linf_distance(const AnalyticDistribution& dist,
                     const EmpiricalMeasure& emp) {
  double worst = 0.0;
  double n = static_cast<double>(emp.n());
  for (const auto& [sym, cnt] : emp.counts()) {
    worst = std::max(
        worst, std::fabs(static_cast<double>(cnt) / n - mass(dist, sym)));
  }
  // largest mass among unobserved symbols
  if (const auto* z = std::get_if<Zeta>(&dist)) {
    for (std::int64_t k = 1;; ++k) {
      double m = z->mass(k);
      if (m <= worst) break;
      if (!emp.counts().count(k)) {
        worst = std::max(worst, m);
        break;
      }
    }
  } else if (const auto* t = std::get_if<TwoLevel>(&dist)) {
    if (!emp.counts().count(0)) worst = std::max(worst, t->heavy());
    std::int64_t observed_light = 0;
    for (const auto& [sym, cnt] : emp.counts()) {
      (void)cnt;
      if (sym >= 1 && sym <= t->light_count()) ++observed_light;
    }
    if (observed_light < t->light_count()) {
      worst = std::max(worst, t->light_mass());
    }
  } else if (const auto* mx = std::get_if<MixtureOfUniforms>(&dist)) {
    std::int64_t in_head = 0, in_tail = 0;
    for (const auto& [sym, cnt] : emp.counts()) {
      (void)cnt;
      if (sym >= 1 && sym <= mx->d()) ++in_head;
      else if (sym > mx->d() && sym <= mx->d() + mx->D()) ++in_tail;
    }
    if (in_head < mx->d()) worst = std::max(worst, mx->mass(1));
    if (in_tail < mx->D()) worst = std::max(worst, mx->mass(mx->d() + 1));
  }
  return worst;
}

}  // namespace entrolab
