#pragma once

// Scalar-generic algebra of the relaxed triple-well energy. Three routes to the
// same minimum: the quadratic in the lower well z, the symmetric form in
// w = z + 1/2, and the mean-centred form 2w^2 + 1/2.

#include "relaxlab/numerics.hpp"

namespace relaxlab::closed_form {

/// Limit energy of a two-valued sequence with upper-value fraction t.
template <typename Scalar>
Scalar two_value_energy(Scalar t) {
  return t * t + (Scalar(1) - t) * (Scalar(1) - t);
}

/// (m - z)^2 + (m - z - 1)^2
template <typename Scalar>
Scalar energy_in_z(Scalar mean, Scalar z) {
  const Scalar a = mean - z;
  return a * a + (a - Scalar(1)) * (a - Scalar(1));
}

/// 2m^2 - 4wm + 2w^2 + 1/2 for the uncentred w = z + 1/2.
template <typename Scalar>
Scalar energy_in_w(Scalar mean, Scalar w) {
  return Scalar(2) * mean * mean - Scalar(4) * w * mean + Scalar(2) * w * w + Scalar(1) / Scalar(2);
}

/// 2w^2 + 1/2 for the centred w (mean shifted to zero).
template <typename Scalar>
Scalar energy_centered(Scalar w) {
  return Scalar(2) * w * w + Scalar(1) / Scalar(2);
}

/// Feasible interval of the centred w: [sup - m - 1/2, inf - m + 1/2].
template <typename Scalar>
struct Interval {
  Scalar lo;
  Scalar hi;
};

template <typename Scalar>
Interval<Scalar> centered_w_bounds(Scalar ess_inf, Scalar ess_sup, Scalar mean) {
  const Scalar half = Scalar(1) / Scalar(2);
  return {ess_sup - mean - half, ess_inf - mean + half};
}

/// Minimum of 2w^2 + 1/2 over the centred interval, by projection of 0.
/// Returns the minimiser; caller must ensure lo <= hi.
template <typename Scalar>
Scalar centered_minimizer(Scalar ess_inf, Scalar ess_sup, Scalar mean) {
  const auto b = centered_w_bounds(ess_inf, ess_sup, mean);
  return clamp(Scalar(0), b.lo, b.hi);
}

}  // namespace relaxlab::closed_form
