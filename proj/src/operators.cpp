#include "buhmann/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "buhmann/quadrature.hpp"

namespace buhmann {

double montee(const RadialKernel& k, double x, const Tolerance& tol) {
  return montee_power(k, 1, x, tol);
}

double montee_power(const RadialKernel& k, int n, double x, const Tolerance& tol) {
  if (n < 1) throw std::invalid_argument("montee: order must be positive");
  x = std::abs(x);
  const double support = k.support();
  if (x >= support) return 0.0;
  const double norm = std::pow(0.5, n - 1) / std::tgamma(static_cast<double>(n));
  auto integrand = [&](double s, double from_x, double) {
    const double weight = n == 1 ? 1.0 : std::pow(from_x * (s + x), n - 1);
    return weight * s * kernel_eval(k, s);
  };
  const auto breaks = k.breakpoints();
  // Near the support edge the kernel inputs carry rounding error of order
  // eps * support, which bounds the attainable accuracy in absolute terms.
  const double floor = 1e-14 * std::abs(kernel_eval(k, 0.0)) * std::pow(support, 2 * n);
  const Integral r =
      quad::panels(integrand, x, support, breaks, 0.0, std::max(tol.rel, 1e-15), floor);
  return norm * r.value;
}

RadialKernel montee_k(const RadialKernel& k, int n) {
  if (n < 1) throw std::invalid_argument("montee_k: order must be positive");
  return RadialKernel::custom([k, n](double x) { return montee_power(k, n, x); }, k.support(),
                              "montee^" + std::to_string(n) + "(" + k.name() + ")");
}

double difference_eval(const DiffParams& d, double x, const Tolerance& tol) {
  d.validate();
  if (d.degenerate()) return 0.0;
  x = std::abs(x);
  return std::pow(d.beta2, d.eps) * h_eval(d.mu, d.nu, x / d.beta2, tol) -
         std::pow(d.beta1, d.eps) * h_eval(d.mu, d.nu, x / d.beta1, tol);
}

}  // namespace buhmann
