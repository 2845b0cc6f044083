#pragma once

#include "buhmann/kernels.hpp"

namespace buhmann {

/// Matheron's Montee operator: I(k)(x) = int_x^support s k(s) ds.
double montee(const RadialKernel& k, double x, const Tolerance& tol = default_tolerance());

/// n-fold Montee evaluated in one pass through the repeated-integral formula
///   I^n(k)(x) = int_x^R ((s^2 - x^2) / 2)^(n-1) / (n-1)! s k(s) ds.
double montee_power(const RadialKernel& k, int n, double x,
                    const Tolerance& tol = default_tolerance());

/// I^n k as a kernel with the same support.
RadialKernel montee_k(const RadialKernel& k, int n);

double difference_eval(const DiffParams& d, double x, const Tolerance& tol = default_tolerance());

}  // namespace buhmann
