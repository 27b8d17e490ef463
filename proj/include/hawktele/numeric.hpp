#ifndef HAWKTELE_NUMERIC_HPP
#define HAWKTELE_NUMERIC_HPP

#include <cmath>
#include <cstddef>

#include "hawktele/error.hpp"

namespace hawktele::numeric {

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
///
/// Stops once the bracket is narrower than `tol`. Ties keep the left
/// sub-bracket, so on a flat plateau the search drifts toward `lo`.
template <typename Real, typename F>
Real golden_section_maximize(F&& f, Real lo, Real hi, Real tol, std::size_t max_iter = 500) {
  if (!(lo <= hi) || !(tol > Real(0))) throw InvalidArgument("golden_section_maximize: bad bracket");
  const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real c = hi - inv_phi * (hi - lo);
  Real d = lo + inv_phi * (hi - lo);
  Real fc = f(c);
  Real fd = f(d);
  for (std::size_t i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return (lo + hi) / Real(2);
}

namespace detail {

template <typename F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = (a + b) / 2.0;
  const double lm = (a + m) / 2.0;
  const double rm = (m + b) / 2.0;
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance `tol`.
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-12, int max_depth = 40) {
  // Split once up front so symmetric integrands cannot fool the first error estimate.
  const double m = (a + b) / 2.0;
  auto half = [&](double lo, double hi) {
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f((lo + hi) / 2.0);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / 2.0, max_depth);
  };
  return half(a, m) + half(m, b);
}

}  // namespace hawktele::numeric

#endif  // HAWKTELE_NUMERIC_HPP
