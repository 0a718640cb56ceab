#pragma once

#include <cmath>
#include <functional>

namespace entrolab {

// Golden-section minimization on [lo, hi], assuming f unimodal there.
// Returns the abscissa of the minimum to within tol.
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace entrolab
