#pragma once

#include <functional>
#include <span>

#include "buhmann/specfn.hpp"

namespace buhmann::quad {

/// Integrand that also receives the distances to both endpoints, computed
/// without cancellation. Used for algebraic endpoint singularities such as
/// (1 - s)^(mu - 1) or (s - x)^(nu - 1).
using EndpointIntegrand = std::function<double(double x, double from_a, double to_b)>;

/// Double-exponential quadrature on [a, b]; robust to integrable endpoint
/// singularities. Throws evaluation_error if the requested accuracy is missed.
Integral tanh_sinh(const EndpointIntegrand& f, double a, double b, double rel_tol);

Integral tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol);

/// Adaptive Gauss-Kronrod (61 points) for smooth integrands.
Integral gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol);

/// Sum of tanh-sinh panels over [a, b] split at `breaks` (ignored when outside
/// (a, b)) and, when `period` > 0, at multiples of `period`. Used for
/// oscillatory Bessel integrands and kernels with interior kinks. An error
/// below `abs_tol` is accepted even when the relative target is missed.
Integral panels(const EndpointIntegrand& f, double a, double b, std::span<const double> breaks,
                double period, double rel_tol, double abs_tol = 0.0);

}  // namespace buhmann::quad
