#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "buhmann/kernels.hpp"

namespace buhmann {

/// Differentiability order at the origin: C^order, or C^infinity.
struct SmoothOrder {
  int order = 0;
  bool infinite = false;

  [[nodiscard]] std::string str() const;
  /// True when the orders match, with Infinite matching any order >= `cap`.
  [[nodiscard]] bool agrees_with(const SmoothOrder& other, int cap) const;
  friend bool operator==(const SmoothOrder&, const SmoothOrder&) = default;
};

/// Predicted order of f_{mu,nu,eps,b1,b2} at the origin for integer nu >= 1
/// and b1 != b2:
///   eps != 2nu-1                -> 2nu - 2
///   eps == 2nu-1, mu not 1 or 2 -> 2nu
///   eps == 2nu-1, mu in {1, 2}  -> infinite (even polynomial near 0)
/// Throws std::domain_error for non-integer nu.
SmoothOrder predict_order(double mu, double nu, double eps);

/// One derivative order of the central-difference study.
struct OrderDiagnostic {
  int n = 0;
  /// n-th derivative estimates at h = q/16, q/32, q/64.
  double estimate[3] = {0.0, 0.0, 0.0};
  /// Rounding noise of the estimate at the smallest step.
  double noise = 0.0;
  bool converged = true;
};

struct OrderEstimate {
  SmoothOrder order;
  /// Set when rounding noise of the kernel evaluation was too large to
  /// resolve the highest orders; `order` is then a lower bound.
  bool resolution_limited = false;
  bool extended_precision = false;
  std::vector<OrderDiagnostic> details;
};

/// Estimates the smoothness of the even extension k(|x|) at 0 from central
/// differences of orders 1..max_order at steps q/16, q/32, q/64. An order
/// whose estimates diverge as h shrinks marks the first derivative that fails
/// to exist. Uses 50-digit evaluation when the kernel has an elementary form.
OrderEstimate estimate_order(const RadialKernel& k, double q, int max_order = 8);

/// One-sided derivative h^(2nu+1)_{mu,nu}(+0) = -(-4)^(nu-1) (nu-1)! nu! (mu-1)(mu-2).
double h_deriv_at_zero(double mu, int nu);

struct PolynomialFit {
  /// Coefficients c_j of sum_j c_j x^(2j).
  Eigen::VectorXd coefficients;
  double max_residual = 0.0;
};

/// Least-squares fit of k on [0, q] by an even polynomial of degree <= `degree`.
PolynomialFit fit_even_polynomial(const RadialKernel& k, double q, int degree, int samples = 200);

struct SmoothnessReport {
  DiffParams params;
  double q = 0.0;
  /// Empty when nu is not an integer (outside the prediction's scope).
  std::optional<SmoothOrder> predicted;
  std::optional<OrderEstimate> estimated;
  /// Degree bound mu + 2nu - 2 of the even polynomial, in the infinite case.
  std::optional<int> polynomial_degree;
};

SmoothnessReport smoothness_report(const DiffParams& d, bool estimate, int max_order = 8);

}  // namespace buhmann
