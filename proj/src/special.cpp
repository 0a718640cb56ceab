#include "entrolab/special.hpp"

#include <cmath>
#include <cstdint>

#include "entrolab/errors.hpp"

namespace entrolab {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// series for the regularized lower gamma P(a, x); converges fast for x < a+1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NumericError("incomplete gamma: series did not converge");
}

// log Gamma(a, x) by Lentz's continued fraction; wants x >= a+1
double log_gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return -x + a * std::log(x) + std::log(h);
    }
  }
  throw NumericError("incomplete gamma: continued fraction did not converge");
}

}  // namespace

double log_upper_incomplete_gamma(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw ValidationError("incomplete gamma: need a > 0 and x >= 0");
  }
  if (x == 0.0) return std::lgamma(a);
  if (x < a + 1.0) {
    double p = gamma_p_series(a, x);
    return std::lgamma(a) + std::log1p(-p);
  }
  return log_gamma_q_cf(a, x);
}

double upper_incomplete_gamma(double a, double x) {
  return require_finite(std::exp(log_upper_incomplete_gamma(a, x)),
                        "incomplete gamma");
}

namespace {

// One term of the series: f(x) = x^{-q} (q log x + c)^alpha.
double series_term(double q, double c, double alpha, double x) {
  double u = q * std::log(x) + c;
  if (u == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
  if (u < 0.0) throw NumericError("zeta series: negative log weight");
  return std::exp(-q * std::log(x) + alpha * std::log(u));
}

// int_Y^inf x^{-q} (q log x + c)^alpha dx. Substituting u = q log x + c
// turns it into an upper incomplete gamma:
//   (1/q) e^{c(q-1)/q} Gamma(alpha+1, sV) / s^{alpha+1},
// with s = (q-1)/q and V = q log Y + c. Assembled in log space because the
// pieces overflow long before the result does.
double tail_integral(double q, double c, double alpha, double y) {
  double s = (q - 1.0) / q;
  double v = q * std::log(y) + c;
  double log_val = -std::log(q) + s * c +
                   log_upper_incomplete_gamma(alpha + 1.0, s * v) -
                   (alpha + 1.0) * std::log(s);
  return require_finite(std::exp(log_val), "zeta series tail");
}

// Estimate of the midpoint-rule residual left after cutting the head at x.
// Per cell the rule is off by f''(xi)/24, and on the convex decreasing side
// those errors telescope into |f'(x)|/24 plus one leading f'' cell:
//   f'(x)  = q x^{-q-1} u^{alpha-1} (alpha - u)
//   f''(x) = q x^{-q-2} u^{alpha-2} ((q+1)u^2 - alpha(2q+1)u + q alpha(alpha-1))
double midpoint_residual(double q, double c, double alpha, double x) {
  double lx = std::log(x);
  double u = q * lx + c;
  double fp = q * std::exp(-(q + 1.0) * lx + (alpha - 1.0) * std::log(u)) *
              std::fabs(alpha - u);
  double g = (q + 1.0) * u * u - alpha * (2.0 * q + 1.0) * u +
             q * alpha * (alpha - 1.0);
  double fpp = q * std::exp(-(q + 2.0) * lx + (alpha - 2.0) * std::log(u)) *
               std::fabs(g);
  return (fp + fpp) / 24.0;
}

}  // namespace

double zeta_log_moment_tail(double q, double c, double alpha,
                            std::int64_t k0) {
  if (!(q > 1.0)) throw ValidationError("zeta series: need q > 1");
  if (!(c >= 0.0) || !(alpha >= 0.0)) {
    throw ValidationError("zeta series: need c >= 0 and alpha >= 0");
  }

  constexpr std::int64_t kBudget = std::int64_t{1} << 21;
  constexpr double kTol = 1e-9;

  // The head has to reach past the largest root of the f'' polynomial, so
  // that the cut lands where f is decreasing (u > alpha) and convex; a
  // couple of units of slack keeps the residual estimate conservative.
  double b = alpha * (2.0 * q + 1.0);
  double disc = b * b - 4.0 * q * (q + 1.0) * alpha * (alpha - 1.0);
  double u_star = disc > 0.0 ? (b + std::sqrt(disc)) / (2.0 * (q + 1.0)) : 0.0;
  double margin_u = std::max(alpha, u_star) + std::sqrt(alpha) + 2.0;
  double margin_x = std::exp(std::max((margin_u - c) / q, 0.0));
  bool sandwich_ok = margin_x <= static_cast<double>(k0 + kBudget);

  std::int64_t m;
  if (sandwich_ok) {
    m = std::max(k0 + 64, static_cast<std::int64_t>(std::ceil(margin_x)));
  } else {
    m = k0 + 8192;
  }

  double head = 0.0;
  double comp = 0.0;  // Kahan carry
  for (std::int64_t k = k0 + 1; k <= m; ++k) {
    double t = series_term(q, c, alpha, static_cast<double>(k));
    double y = t - comp;
    double upd = head + y;
    comp = (upd - head) - y;
    head = upd;
  }

  double total = head + tail_integral(q, c, alpha, m + 0.5);
  if (!sandwich_ok) return require_finite(total, "zeta series");

  while (m - k0 < kBudget) {
    double scale = std::max(1.0, std::fabs(total));
    double err = 0.5 * series_term(q, c, alpha, static_cast<double>(m));
    if (err <= kTol * scale) break;
    // the sandwich bound is very loose when the integral carries most of the
    // mass; the telescoped discretization residual settles much earlier
    if (midpoint_residual(q, c, alpha, m + 0.5) <= 1e-11 * scale) break;
    std::int64_t next = std::min(k0 + kBudget, 2 * m);
    for (std::int64_t k = m + 1; k <= next; ++k) {
      double t = series_term(q, c, alpha, static_cast<double>(k));
      double y = t - comp;
      double upd = head + y;
      comp = (upd - head) - y;
      head = upd;
    }
    m = next;
    total = head + tail_integral(q, c, alpha, m + 0.5);
  }
  return require_finite(total, "zeta series");
}

}  // namespace entrolab
