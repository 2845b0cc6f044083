#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "buhmann/specfn.hpp"

namespace buhmann {

/// Parameters (delta, mu, nu, alpha) of the Buhmann function
///   phi(x) = int_{|x|}^1 (s^2 - x^2)^(nu-1) (1 - s^delta)^(mu-1) s^(alpha-2nu+1) ds,  |x| < 1
/// and phi(x) = 0 for |x| >= 1.
struct BuhmannParams {
  double delta = 1.0;
  double mu = 1.0;
  double nu = 1.0;
  double alpha = 1.0;

  void validate() const;
  /// Continuity on the whole line needs mu + nu - 1 > 0.
  [[nodiscard]] bool continuous() const { return mu + nu - 1.0 > 0.0; }
};

/// f(x) = beta2^eps h_{mu,nu}(x / beta2) - beta1^eps h_{mu,nu}(x / beta1).
struct DiffParams {
  double mu = 1.0;
  double nu = 1.0;
  double eps = 1.0;
  double beta1 = 0.75;
  double beta2 = 1.0;

  void validate() const;
  [[nodiscard]] double support() const;
  [[nodiscard]] bool degenerate() const { return beta1 == beta2; }
};

class RadialKernel;

namespace family {

struct Buhmann {
  BuhmannParams params;
};
struct H {
  double mu;
  double nu;
};
/// Wendland function normalized to 1 at the origin.
struct Wendland {
  double mu;
  int k;
};
struct Askey {
  double mu;
};
struct Difference {
  DiffParams params;
};
/// inner(x / beta); support scales with beta.
struct Scaled {
  std::shared_ptr<const RadialKernel> inner;
  double beta;
};
struct Custom {
  std::function<double(double)> fn;
  double support;
  std::string label;
};

}  // namespace family

/// Compactly supported radial function on [0, inf). Immutable; cheap to copy.
class RadialKernel {
 public:
  using Family = std::variant<family::Buhmann, family::H, family::Wendland, family::Askey,
                              family::Difference, family::Scaled, family::Custom>;

  static RadialKernel buhmann(const BuhmannParams& p);
  static RadialKernel h(double mu, double nu);
  static RadialKernel wendland(double mu, int k);
  static RadialKernel askey(double mu);
  static RadialKernel difference(const DiffParams& d);
  static RadialKernel scaled(RadialKernel inner, double beta);
  static RadialKernel custom(std::function<double(double)> fn, double support,
                             std::string label = "custom");

  [[nodiscard]] const Family& family() const { return family_; }
  [[nodiscard]] double support() const;
  /// Radii in (0, support) where the kernel may have a kink.
  [[nodiscard]] std::vector<double> breakpoints() const;
  [[nodiscard]] std::string name() const;

  double operator()(double x) const;

 private:
  explicit RadialKernel(Family f) : family_(std::move(f)) {}
  Family family_;
};

double buhmann_eval(const BuhmannParams& p, double x, const Tolerance& tol = default_tolerance());

/// Zastavnyi function h_{mu,nu}. For integer nu the defining integral is
/// evaluated term by term in Beta functions; otherwise by quadrature.
double h_eval(double mu, double nu, double x, const Tolerance& tol = default_tolerance());

/// h_{mu,nu} through the fixed-endpoint integral
///   (1-x)^(mu+nu-1) int_0^1 t^(mu-1) (1-t)^(nu-1) (1-t+(1+t)x)^(nu-1) dt
/// by quadrature, for any nu > 0.
double h_eval_quadrature(double mu, double nu, double x, const Tolerance& tol = default_tolerance());

/// h_{mu,nu}(0) = B(mu, 2nu - 1) for nu > 1/2.
double h_at_zero(double mu, double nu);

/// Wendland function psi_{mu,k} normalized so that psi(0) = 1:
///   k = 0: (1-x)^mu
///   k = 1: (1-x)^(mu+1) (1 + (mu+1) x)
///   k = 2: (1-x)^(mu+2) (1 + (mu+2) x + ((mu+2)^2 - 1) x^2 / 3)
/// Higher k are computed from the k-fold Montee of the Askey function.
double wendland_eval(double mu, int k, double x, const Tolerance& tol = default_tolerance());

/// The unnormalized Montee image I^k (1-x)^mu_+; equals
/// wendland_eval(mu, k, x) * wendland_montee_scale(mu, k).
double wendland_montee_eval(double mu, int k, double x, const Tolerance& tol = default_tolerance());

/// I^k (1-x)^mu_+ at the origin: B(2k, mu+1) / (2^(k-1) (k-1)!), and 1 for k = 0.
double wendland_montee_scale(double mu, int k);

double askey_eval(double mu, double x);

double kernel_eval(const RadialKernel& k, double x);

}  // namespace buhmann
