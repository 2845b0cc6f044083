#include "buhmann/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "buhmann/closed_forms.hpp"
#include "buhmann/operators.hpp"
#include "buhmann/quadrature.hpp"

namespace buhmann {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double quad_rel(const Tolerance& tol) { return std::max(tol.rel, 1e-15); }

// Adds e * log(base) unless the exponent vanishes, so 0^0 factors stay 1.
void add_power(double& log_sum, double base, double e) {
  if (e != 0.0) log_sum += e * std::log(base);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

void BuhmannParams::validate() const {
  require_positive(delta, "buhmann: delta");
  require_positive(mu, "buhmann: mu");
  require_positive(nu, "buhmann: nu");
  require_positive(alpha, "buhmann: alpha");
}

void DiffParams::validate() const {
  require_positive(mu, "diff: mu");
  if (!(nu > 0.5) || !std::isfinite(nu)) throw std::invalid_argument("diff: nu must exceed 1/2");
  if (!(mu + nu > 1.0)) throw std::invalid_argument("diff: mu + nu must exceed 1");
  if (!std::isfinite(eps)) throw std::invalid_argument("diff: eps must be finite");
  require_positive(beta1, "diff: b1");
  require_positive(beta2, "diff: b2");
}

double DiffParams::support() const { return std::max(beta1, beta2); }

RadialKernel RadialKernel::buhmann(const BuhmannParams& p) {
  p.validate();
  return RadialKernel(family::Buhmann{p});
}

RadialKernel RadialKernel::h(double mu, double nu) {
  require_positive(mu, "h: mu");
  require_positive(nu, "h: nu");
  return RadialKernel(family::H{mu, nu});
}

RadialKernel RadialKernel::wendland(double mu, int k) {
  require_positive(mu, "wendland: mu");
  if (k < 0) throw std::invalid_argument("wendland: k must be non-negative");
  return RadialKernel(family::Wendland{mu, k});
}

RadialKernel RadialKernel::askey(double mu) {
  require_positive(mu, "askey: mu");
  return RadialKernel(family::Askey{mu});
}

RadialKernel RadialKernel::difference(const DiffParams& d) {
  d.validate();
  return RadialKernel(family::Difference{d});
}

RadialKernel RadialKernel::scaled(RadialKernel inner, double beta) {
  require_positive(beta, "scaled: beta");
  return RadialKernel(
      family::Scaled{std::make_shared<const RadialKernel>(std::move(inner)), beta});
}

RadialKernel RadialKernel::custom(std::function<double(double)> fn, double support,
                                  std::string label) {
  require_positive(support, "custom: support");
  if (!fn) throw std::invalid_argument("custom: empty function");
  return RadialKernel(family::Custom{std::move(fn), support, std::move(label)});
}

double RadialKernel::support() const {
  return std::visit(overloaded{
                        [](const family::Difference& f) { return f.params.support(); },
                        [](const family::Scaled& f) { return f.beta * f.inner->support(); },
                        [](const family::Custom& f) { return f.support; },
                        [](const auto&) { return 1.0; },
                    },
                    family_);
}

std::vector<double> RadialKernel::breakpoints() const {
  return std::visit(overloaded{
                        [](const family::Difference& f) {
                          return std::vector<double>{std::min(f.params.beta1, f.params.beta2)};
                        },
                        [](const family::Scaled& f) {
                          auto b = f.inner->breakpoints();
                          for (double& v : b) v *= f.beta;
                          return b;
                        },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    family_);
}

std::string RadialKernel::name() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const family::Buhmann& f) {
                   os << "buhmann(" << f.params.delta << "," << f.params.mu << ","
                      << f.params.nu << "," << f.params.alpha << ")";
                 },
                 [&](const family::H& f) { os << "h(" << f.mu << "," << f.nu << ")"; },
                 [&](const family::Wendland& f) { os << "wendland(" << f.mu << "," << f.k << ")"; },
                 [&](const family::Askey& f) { os << "askey(" << f.mu << ")"; },
                 [&](const family::Difference& f) {
                   const auto& d = f.params;
                   os << "diff(" << d.mu << "," << d.nu << "," << d.eps << "," << d.beta1 << ","
                      << d.beta2 << ")";
                 },
                 [&](const family::Scaled& f) {
                   os << f.inner->name() << "@" << f.beta;
                 },
                 [&](const family::Custom& f) { os << f.label; },
             },
             family_);
  return os.str();
}

double RadialKernel::operator()(double x) const { return kernel_eval(*this, x); }

double buhmann_eval(const BuhmannParams& p, double x, const Tolerance& tol) {
  p.validate();
  x = std::abs(x);
  if (x >= 1.0) return 0.0;
  const double nu_e = p.nu - 1.0;
  const double mu_e = p.mu - 1.0;
  const double s_e = p.alpha - 2.0 * p.nu + 1.0;
  // Integrate over v in [0, 1] with s = x + w v, so narrow intervals near the
  // support edge keep full relative accuracy. Singular factors are formed from
  // the exact endpoint distances: s^2 - x^2 = (s - x)(s + x) and
  // 1 - s^delta = -expm1(delta log1p(-(1 - s))).
  const double w = 1.0 - x;
  auto integrand = [&](double v, double from_zero, double to_one) {
    const double from_x = w * from_zero;
    const double to_end = w * to_one;
    const double s = v < 0.5 ? x + from_x : 1.0 - to_end;
    double log_sum = 0.0;
    add_power(log_sum, from_x, nu_e);
    add_power(log_sum, s + x, nu_e);
    add_power(log_sum, -std::expm1(p.delta * std::log1p(-to_end)), mu_e);
    add_power(log_sum, s, s_e);
    return std::exp(log_sum);
  };
  return w * quad::tanh_sinh(integrand, 0.0, 1.0, quad_rel(tol)).value;
}

double h_eval_quadrature(double mu, double nu, double x, const Tolerance& tol) {
  require_positive(mu, "h: mu");
  require_positive(nu, "h: nu");
  x = std::abs(x);
  if (x >= 1.0) return 0.0;
  auto integrand = [&](double t, double from_zero, double to_one) {
    double log_sum = 0.0;
    add_power(log_sum, from_zero, mu - 1.0);
    add_power(log_sum, to_one, nu - 1.0);
    add_power(log_sum, to_one + (1.0 + t) * x, nu - 1.0);
    return std::exp(log_sum);
  };
  const double integral = quad::tanh_sinh(integrand, 0.0, 1.0, quad_rel(tol)).value;
  return std::pow(1.0 - x, mu + nu - 1.0) * integral;
}

double h_eval(double mu, double nu, double x, const Tolerance& tol) {
  require_positive(mu, "h: mu");
  require_positive(nu, "h: nu");
  x = std::abs(x);
  if (x >= 1.0) return 0.0;
  if (closed::integer_nu(nu)) return closed::h_integer_nu<double>(mu, static_cast<int>(nu), x);
  return h_eval_quadrature(mu, nu, x, tol);
}

double h_at_zero(double mu, double nu) {
  if (!(nu > 0.5)) throw std::domain_error("h_at_zero: h is unbounded at 0 for nu <= 1/2");
  return beta_fn(mu, 2.0 * nu - 1.0);
}

double wendland_montee_scale(double mu, int k) {
  require_positive(mu, "wendland: mu");
  if (k < 0) throw std::invalid_argument("wendland: k must be non-negative");
  if (k == 0) return 1.0;
  return beta_fn(2.0 * k, mu + 1.0) / (std::pow(2.0, k - 1) * std::tgamma(static_cast<double>(k)));
}

double wendland_montee_eval(double mu, int k, double x, const Tolerance& tol) {
  x = std::abs(x);
  if (x >= 1.0) return 0.0;
  if (k <= 2) return wendland_eval(mu, k, x, tol) * wendland_montee_scale(mu, k);
  return montee_power(RadialKernel::askey(mu), k, x, tol);
}

double wendland_eval(double mu, int k, double x, const Tolerance& tol) {
  require_positive(mu, "wendland: mu");
  if (k < 0) throw std::invalid_argument("wendland: k must be non-negative");
  x = std::abs(x);
  if (x >= 1.0) return 0.0;
  if (k <= 2) return closed::wendland_012<double>(mu, k, x);
  return montee_power(RadialKernel::askey(mu), k, x, tol) / wendland_montee_scale(mu, k);
}

double askey_eval(double mu, double x) {
  require_positive(mu, "askey: mu");
  return closed::askey<double>(mu, std::abs(x));
}

double kernel_eval(const RadialKernel& k, double x) {
  x = std::abs(x);
  if (x >= k.support()) return 0.0;
  return std::visit(overloaded{
                        [&](const family::Buhmann& f) { return buhmann_eval(f.params, x); },
                        [&](const family::H& f) { return h_eval(f.mu, f.nu, x); },
                        [&](const family::Wendland& f) { return wendland_eval(f.mu, f.k, x); },
                        [&](const family::Askey& f) { return askey_eval(f.mu, x); },
                        [&](const family::Difference& f) { return difference_eval(f.params, x); },
                        [&](const family::Scaled& f) { return kernel_eval(*f.inner, x / f.beta); },
                        [&](const family::Custom& f) { return f.fn(x); },
                    },
                    k.family());
}

}  // namespace buhmann
