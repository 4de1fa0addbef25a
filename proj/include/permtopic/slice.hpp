#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "permtopic/types.hpp"

namespace permtopic {

struct SliceOptions {
  double width = 0.5;
  int max_doublings = 20;
  // Support is the half-open interval (lower, upper].
  double lower = 1e-8;
  double upper = 50.0;
};

namespace detail {

template <typename LogDensity>
double bounded_log_density(const LogDensity& log_density, const SliceOptions& opts, double x) {
  if (!(x > opts.lower) || x > opts.upper) return -std::numeric_limits<double>::infinity();
  return log_density(x);
}

// Neal's acceptance test for the doubling procedure: rejects points whose
// doubling sequence would not have produced the current interval.
template <typename LogDensity>
bool doubling_accepts(const LogDensity& log_density, const SliceOptions& opts, double x0,
                      double x1, double level, double left, double right) {
  bool differ = false;
  while (right - left > 1.1 * opts.width) {
    const double mid = 0.5 * (left + right);
    if ((x0 < mid && x1 >= mid) || (x0 >= mid && x1 < mid)) differ = true;
    if (x1 < mid) {
      right = mid;
    } else {
      left = mid;
    }
    if (differ && level >= bounded_log_density(log_density, opts, left) &&
        level >= bounded_log_density(log_density, opts, right)) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// One univariate slice-sampling update (doubling + shrinkage) starting at
/// `x0`, which must lie inside the support with finite log density.
template <typename LogDensity>
double slice_sample_step(const LogDensity& log_density, double x0, Rng& rng,
                         const SliceOptions& opts = {}) {
  const double f0 = detail::bounded_log_density(log_density, opts, x0);
  if (!std::isfinite(f0)) throw std::domain_error("slice_sample_step: start point has zero density");

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double level = f0 - expo(rng);

  double left = x0 - opts.width * unif(rng);
  double right = left + opts.width;
  auto f = [&](double x) { return detail::bounded_log_density(log_density, opts, x); };

  for (int k = opts.max_doublings; k > 0 && (level < f(left) || level < f(right)); --k) {
    if (unif(rng) < 0.5) {
      left -= right - left;
    } else {
      right += right - left;
    }
  }

  double lo = left;
  double hi = right;
  for (;;) {
    const double x1 = lo + unif(rng) * (hi - lo);
    if (level < f(x1) && detail::doubling_accepts(log_density, opts, x0, x1, level, left, right)) {
      return x1;
    }
    if (x1 < x0) {
      lo = x1;
    } else {
      hi = x1;
    }
  }
}

}  // namespace permtopic
