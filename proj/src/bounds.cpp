#include "entrolab/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "entrolab/errors.hpp"
#include "entrolab/golden.hpp"
#include "entrolab/moments.hpp"

namespace entrolab {

namespace {

void check_n(std::int64_t n, std::int64_t lo) {
  if (n < lo) {
    throw ValidationError("need n >= " + std::to_string(lo) + ", got " +
                          std::to_string(n));
  }
}

void check_alpha_open(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 1.0) || alpha > kMaxAlpha) {
    throw ValidationError("alpha must lie in (1, 64], got " +
                          std::to_string(alpha));
  }
}

}  // namespace

BoundBreakdown ckw_l1_radius(const EmpiricalMeasure& emp, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ValidationError("ckw_l1_radius: need delta in (0, 1)");
  }
  double n = static_cast<double>(emp.n());
  double root_mass = 2.0 / std::sqrt(n) * emp.sum_sqrt();
  double confidence = 6.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * n));
  BoundBreakdown b;
  b.name = "empirical_l1_radius";
  b.value = require_finite(root_mass + confidence, "l1 radius");
  b.terms = {{"root_mass_term", root_mass}, {"confidence_term", confidence}};
  b.preconditions = {{"delta_in_(0,1)", true}};
  return b;
}

double ct_bound(double t, std::int64_t d) {
  if (d < 2) throw ValidationError("ct_bound: need d >= 2");
  if (!(t >= 0.0) || t > 0.5) {
    throw ValidationError("ct_bound: needs distance in [0, 1/2]");
  }
  if (t == 0.0) return 0.0;
  return require_finite(t * std::log(static_cast<double>(d) / t), "ct bound");
}

DimfreeBound dimfree_bound(double l1, double h_mu, double h_nu, double alpha) {
  check_alpha_open(alpha);
  if (!(l1 >= 0.0) || !(h_mu >= 0.0) || !(h_nu >= 0.0)) {
    throw ValidationError("dimfree_bound: distance and moments must be >= 0");
  }
  if (l1 == 0.0) return {0.0, 0.0};
  double root = 1.0 / alpha;
  double dist_pow = std::pow(l1, 1.0 - root);
  double aa = std::pow(alpha, alpha);
  double tight = dist_pow * std::pow(2.0 * aa + h_mu + h_nu, root);
  double loose =
      dist_pow * (2.0 * alpha + std::pow(h_mu, root) + std::pow(h_nu, root));
  return {require_finite(tight, "dimfree bound"),
          require_finite(loose, "dimfree bound")};
}

double lambda_n(const Pmf& dist, std::int64_t n) {
  check_n(n, 1);
  double thr = 1.0 / static_cast<double>(n);
  double small = 0.0, root = 0.0;
  for (double m : dist.masses()) {
    if (m < thr) small += m;
    else root += std::sqrt(m);
  }
  return 2.0 * small + root / std::sqrt(static_cast<double>(n));
}

namespace {

double lambda_n_zeta(const Zeta& z, std::int64_t n) {
  double thr = 1.0 / static_cast<double>(n);
  std::int64_t j = z.last_symbol_with_mass_at_least(thr);
  if (j > (std::int64_t{1} << 26)) {
    throw NumericError("lambda_n: zeta head too large to sum explicitly");
  }
  double head_mass = 0.0, root = 0.0;
  for (std::int64_t k = 1; k <= j; ++k) {
    double m = z.mass(k);
    head_mass += m;
    root += std::sqrt(m);
  }
  return 2.0 * std::max(0.0, 1.0 - head_mass) +
         root / std::sqrt(static_cast<double>(n));
}

double lambda_n_two_level(const TwoLevel& t, std::int64_t n) {
  double thr = 1.0 / static_cast<double>(n);
  double rn = std::sqrt(static_cast<double>(n));
  double v = 0.0;
  if (t.heavy() > 0.0) {
    v += t.heavy() >= thr ? std::sqrt(t.heavy()) / rn : 2.0 * t.heavy();
  }
  double light_total = static_cast<double>(t.light_count()) * t.light_mass();
  if (light_total > 0.0) {
    v += t.light_mass() >= thr
             ? static_cast<double>(t.light_count()) *
                   std::sqrt(t.light_mass()) / rn
             : 2.0 * light_total;
  }
  return v;
}

double lambda_n_mixture(const MixtureOfUniforms& m, std::int64_t n) {
  double thr = 1.0 / static_cast<double>(n);
  double rn = std::sqrt(static_cast<double>(n));
  double head = m.p() / static_cast<double>(m.d());
  double tail = (1.0 - m.p()) / static_cast<double>(m.D());
  double v = 0.0;
  if (head > 0.0) {
    v += head >= thr ? static_cast<double>(m.d()) * std::sqrt(head) / rn
                     : 2.0 * m.p();
  }
  if (tail > 0.0) {
    v += tail >= thr ? static_cast<double>(m.D()) * std::sqrt(tail) / rn
                     : 2.0 * (1.0 - m.p());
  }
  return v;
}

}  // namespace

double lambda_n(const AnalyticDistribution& dist, std::int64_t n) {
  check_n(n, 1);
  if (const auto* z = std::get_if<Zeta>(&dist)) return lambda_n_zeta(*z, n);
  if (const auto* t = std::get_if<TwoLevel>(&dist)) {
    return lambda_n_two_level(*t, n);
  }
  return lambda_n_mixture(std::get<MixtureOfUniforms>(dist), n);
}

namespace {

double expected_gap_from(double h_a, double lam, double alpha) {
  double aa = std::pow(alpha, alpha);
  double base = aa / std::numbers::e + 2.0 * aa + 2.0 * h_a;
  return require_finite(
      std::pow(base, 1.0 / alpha) * std::pow(lam, 1.0 - 1.0 / alpha),
      "expected gap bound");
}

}  // namespace

double expected_gap_bound(const Pmf& dist, std::int64_t n, double alpha) {
  check_alpha_open(alpha);
  return expected_gap_from(dist.information_moment(alpha),
                           lambda_n(dist, n), alpha);
}

double expected_gap_bound(const AnalyticDistribution& dist, std::int64_t n,
                          double alpha) {
  check_alpha_open(alpha);
  return expected_gap_from(information_moment(dist, alpha),
                           lambda_n(dist, n), alpha);
}

double wy_bound(std::int64_t d, std::int64_t big_d, std::int64_t n, double c) {
  if (d < 1 || big_d < 1) throw ValidationError("wy_bound: need d, D >= 1");
  check_n(n, 1);
  if (!(c > 1.0)) throw ValidationError("wy_bound: need C > 1");
  double nn = static_cast<double>(n);
  double support = static_cast<double>(d + big_d);
  double logs = std::min(c * std::log(support), std::log(nn));
  return require_finite(support / nn + logs / std::sqrt(nn), "wy bound");
}

namespace {

// moment part of the rate objective at a given alpha
double our_rate_base(double alpha, std::int64_t support_bound, double h_a) {
  double aa = std::pow(alpha, alpha);
  double base = aa / std::numbers::e + 2.0 * aa;
  if (support_bound >= 1) {
    double log_k = std::log(static_cast<double>(support_bound));
    base += 2.0 * std::pow(std::max(alpha, log_k), alpha) +
            2.0 * std::pow(alpha / std::numbers::e, alpha);
  } else {
    base += 2.0 * h_a;
  }
  return base;
}

template <typename MomentFn>
AlphaOptimum our_rate_search(MomentFn h_of_alpha, std::int64_t support_bound,
                             double lam) {
  auto objective = [&](double alpha) {
    double h_a = support_bound >= 1 ? 0.0 : h_of_alpha(alpha);
    return std::pow(our_rate_base(alpha, support_bound, h_a), 1.0 / alpha) *
           std::pow(lam, 1.0 - 1.0 / alpha);
  };

  // 128-point log grid on (1, 64], then golden section in the best bracket;
  // the objective is smooth in alpha but not provably unimodal.
  constexpr int kGrid = 128;
  double best = std::numeric_limits<double>::infinity();
  int best_i = 1;
  for (int i = 1; i <= kGrid; ++i) {
    double alpha = std::pow(64.0, static_cast<double>(i) / kGrid);
    double v = objective(alpha);
    if (!std::isfinite(v)) {
      throw NumericError("our_rate_bound: objective not finite at alpha = " +
                         std::to_string(alpha));
    }
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  double lo = std::max(std::pow(64.0, (best_i - 1.0) / kGrid), 1.0 + 1e-9);
  double hi = std::pow(64.0, std::min(best_i + 1, kGrid) / double{kGrid});
  double alpha_star = golden_min(objective, lo, hi, 1e-6);
  double refined = objective(alpha_star);
  if (refined > best) {
    alpha_star = std::pow(64.0, static_cast<double>(best_i) / kGrid);
    refined = best;
  }
  return {alpha_star, require_finite(refined, "our_rate_bound")};
}

}  // namespace

AlphaOptimum our_rate_bound(const Pmf& dist, std::int64_t support_bound,
                            std::int64_t n) {
  check_n(n, 1);
  if (support_bound < 0) {
    throw ValidationError("our_rate_bound: need support bound >= 0");
  }
  double lam = lambda_n(dist, n);
  return our_rate_search(
      [&](double alpha) { return dist.information_moment(alpha); },
      support_bound, lam);
}

AlphaOptimum our_rate_bound(const AnalyticDistribution& dist,
                            std::int64_t support_bound, std::int64_t n) {
  check_n(n, 1);
  if (support_bound < 0) {
    throw ValidationError("our_rate_bound: need support bound >= 0");
  }
  double lam = lambda_n(dist, n);
  return our_rate_search(
      [&](double alpha) { return information_moment(dist, alpha); },
      support_bound, lam);
}

namespace {

double ct_rate_from(double lam, std::int64_t support_size) {
  if (support_size < 2) {
    throw ValidationError("ct_rate_bound: need support size >= 2");
  }
  double k = static_cast<double>(support_size);
  if (!(lam < k)) {
    throw ValidationError(
        "ct_rate_bound: expected-l1 bound reaches the support size "
        "(degenerate regime)");
  }
  if (lam == 0.0) return 0.0;
  return require_finite(lam * std::log(k / lam), "ct rate bound");
}

}  // namespace

double ct_rate_bound(const Pmf& dist, std::int64_t support_size,
                     std::int64_t n) {
  return ct_rate_from(lambda_n(dist, n), support_size);
}

double ct_rate_bound(const AnalyticDistribution& dist,
                     std::int64_t support_size, std::int64_t n) {
  return ct_rate_from(lambda_n(dist, n), support_size);
}

namespace {

template <typename EntropyBelowFn>
SandwichResult sandwich_search(EntropyBelowFn entropy_below_eps,
                               std::int64_t n,
                               const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("sandwich: empty epsilon grid");
  double nn = static_cast<double>(n);
  SandwichResult best{0.0, std::numeric_limits<double>::infinity()};
  for (double eps : grid) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
      throw ValidationError("sandwich: epsilon grid points must be in (0,1)");
    }
    double v = entropy_below_eps(eps) + std::log1p(1.0 / (eps * nn));
    if (v < best.deficit) best = {eps, v};
  }
  require_finite(best.deficit, "sandwich deficit");
  return best;
}

}  // namespace

SandwichResult sandwich_lower_bound(const Pmf& dist, std::int64_t n,
                                    const std::vector<double>& epsilon_grid) {
  check_n(n, 1);
  return sandwich_search(
      [&](double eps) {
        double h = 0.0;
        for (double m : dist.masses()) {
          if (m > 0.0 && m < eps) h -= m * std::log(m);
        }
        return h;
      },
      n, epsilon_grid);
}

SandwichResult sandwich_lower_bound(const AnalyticDistribution& dist,
                                    std::int64_t n,
                                    const std::vector<double>& epsilon_grid) {
  check_n(n, 1);
  return sandwich_search(
      [&](double eps) { return entropy_below(dist, eps); }, n, epsilon_grid);
}

double plug_in_risk_bound(double h, double alpha, std::int64_t n,
                          const std::vector<double>& epsilon_grid) {
  if (!(h >= 0.0)) throw ValidationError("plug_in_risk_bound: need h >= 0");
  if (!std::isfinite(alpha) || !(alpha >= 1.0) || alpha > kMaxAlpha) {
    throw ValidationError("plug_in_risk_bound: need alpha in [1, 64]");
  }
  check_n(n, 1);
  if (epsilon_grid.empty()) {
    throw ValidationError("plug_in_risk_bound: empty epsilon grid");
  }
  double nn = static_cast<double>(n);
  double best = std::numeric_limits<double>::infinity();
  for (double eps : epsilon_grid) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
      throw ValidationError(
          "plug_in_risk_bound: epsilon grid points must be in (0,1); "
          "log(1/eps) would break the exponent");
    }
    double v = std::pow(std::log(1.0 / eps), 1.0 - alpha) * h +
               std::log1p(1.0 / (eps * nn));
    best = std::min(best, v);
  }
  return require_finite(std::log(nn) / std::sqrt(nn) + best,
                        "plug-in risk bound");
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid(60);
  for (int k = 1; k <= 60; ++k) grid[k - 1] = std::ldexp(1.0, -k);
  return grid;
}

double minimax_upper(double h, double alpha, std::int64_t n) {
  if (!(h >= 0.0)) throw ValidationError("minimax_upper: need h >= 0");
  check_alpha_open(alpha);
  check_n(n, 2);
  double nn = static_cast<double>(n);
  double log_n = std::log(nn);
  return require_finite((1.0 + log_n) / std::sqrt(nn) +
                            std::pow(2.0, alpha - 1.0) * h /
                                std::pow(log_n, alpha - 1.0),
                        "minimax upper");
}

MinimaxLower minimax_lower_value(double alpha, std::int64_t n) {
  if (!(alpha > 0.0) || alpha > kMaxAlpha) {
    throw ValidationError("minimax_lower_value: need alpha in (0, 64]");
  }
  check_n(n, 2);
  double log_n = std::log(static_cast<double>(n));
  double h = std::pow(3.0 * log_n, alpha);
  return {require_finite(h, "minimax lower"), log_n / 4.0};
}

NoEmpPair no_emp_construction(double h, std::int64_t n) {
  if (!(h > 0.0)) throw ValidationError("no_emp_construction: need h > 0");
  check_n(n, 1);

  long double two_n = 2.0L * static_cast<long double>(n);
  long double log_heavy = std::log1p(-1.0L / two_n);
  double heavy = static_cast<double>(1.0L - 1.0L / two_n);
  double a_n = static_cast<double>((1.0L - 1.0L / two_n) * log_heavy);

  // floor((1/2n) e^{2n(h + a_n)}), with 2n a_n = (2n - 1) log(1 - 1/2n);
  // extended precision keeps the integer exact at the permitted scale
  long double log_s_ld = two_n * static_cast<long double>(h) +
                         (two_n - 1.0L) * log_heavy - std::log(two_n);
  double log_s = static_cast<double>(log_s_ld);
  if (log_s_ld > 60.0L * std::numbers::ln2_v<long double>) {
    std::ostringstream msg;
    msg << "no_emp_construction: light-block size exceeds 2^60 and is not "
           "materialized as an integer; log S = "
        << log_s;
    throw ValidationError(msg.str());
  }
  auto s = static_cast<std::int64_t>(std::floor(std::exp(log_s_ld)));
  if (s < 2) {
    std::ostringstream msg;
    msg << "no_emp_construction: degenerate light block (S = " << s
        << "); h = " << h << " is too small for n = " << n;
    throw ValidationError(msg.str());
  }

  TwoLevel mu0(1.0, s, 0.0);
  TwoLevel mun(heavy, s, (1.0 - heavy) / static_cast<double>(s));
  double kl = kl_divergence(AnalyticDistribution(mu0),
                            AnalyticDistribution(mun));
  double ent = mun.entropy();
  if (kl > 1.0 / static_cast<double>(n) || ent < h / 2.0 || ent > h) {
    std::ostringstream msg;
    msg << "no_emp_construction: invariants failed (KL = " << kl
        << ", entropy = " << ent << ", h = " << h << ", n = " << n << ")";
    throw NumericError(msg.str());
  }
  return {n,  h,   a_n, log_s, s, mu0, mun, kl, ent,
          h / (4.0 * std::numbers::e)};
}

double birthday_no_collision(std::int64_t m, std::int64_t k) {
  if (m < 1 || k < 1) {
    throw ValidationError("birthday_no_collision: need m, k >= 1");
  }
  if (m > k) return 0.0;
  double p = 1.0;
  for (std::int64_t i = 0; i < m; ++i) {
    p *= 1.0 - static_cast<double>(i) / static_cast<double>(k);
  }
  return p;
}

}  // namespace entrolab
