#pragma once

#include "sphrelu/activation.hpp"
#include "sphrelu/polynomials.hpp"

namespace sphrelu {

// Canonical smooth step: 1 on (-inf,1], 0 on [2,inf), C-infinity in between,
// built from s(u) = exp(-1/u).
double smooth_step(double x);

// Dyadic cutoff zeta(t) = smooth_step(t) - smooth_step(2t).
//   supp(zeta) in [1/2,2], zeta >= 0, zeta(t)+zeta(2t) = 1 on [1/2,1],
//   sum_q zeta(2^-q m) = 1 for every integer m >= 1 (telescoping).
double zeta(double t);

// Finite-difference derivative of zeta, order 1 or 2.
double zeta_derivative(double t, int order);

// min of zeta over [3/5, 5/3], measured on a fine grid (the positivity
// constant consumed by the dominance certificates).
double zeta_core_minimum();

// sum_{q=0}^{q_max} zeta(2^-q m).  Throws if q_max is too small to cover
// the dyadic levels of m.
double partition_check(int m, int q_max);

// Block symbol phi_q(t) = zeta(2t + I_k/2^q) * xi(2^{q+1} t + I_k),
// defined as 0 whenever the xi argument is <= k.
double phi_eval(int q, SphereDim dim, ActivationOrder order, double t);

}  // namespace sphrelu
