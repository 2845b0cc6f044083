#include "buhmann/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "buhmann/quadrature.hpp"

namespace buhmann {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// prod G(num_i) / prod G(den_j), in log space once any argument is large.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  bool small = true;
  for (double v : num) small = small && v < 150.0;
  for (double v : den) small = small && v < 150.0;
  if (small) {
    double r = 1.0;
    for (double v : num) r *= std::tgamma(v);
    for (double v : den) r /= std::tgamma(v);
    return r;
  }
  double lr = 0.0;
  for (double v : num) lr += std::lgamma(v);
  for (double v : den) lr -= std::lgamma(v);
  return std::exp(lr);
}

void check_h_spectral_args(int m, double mu, double nu) {
  if (m < 1) throw std::invalid_argument("spectral: dimension m must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("spectral: mu must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("spectral: nu must be positive");
  if (!(2.0 * nu - 1.0 + m > 0.0)) throw std::invalid_argument("spectral: 2nu - 1 + m must be positive");
}

double oscillation_period(double t, double radius) {
  return t * radius > std::numbers::pi ? std::numbers::pi / t : 0.0;
}

double quad_rel(const Tolerance& tol) { return std::max(tol.rel, 1e-13); }

}  // namespace

const char* to_string(SpectralBackend b) {
  switch (b) {
    case SpectralBackend::Quadrature:
      return "quad";
    case SpectralBackend::ClosedForm1F2:
      return "closed";
    case SpectralBackend::Auto:
      return "auto";
  }
  return "?";
}

SpectralConstants spectral_constants(int m, double mu, double nu) {
  check_h_spectral_args(m, mu, nu);
  const double half_m = 0.5 * m;
  const double scale = std::pow(2.0, -half_m);
  SpectralConstants c;
  c.D = scale * gamma_ratio({nu, mu, m - 1.0 + 2.0 * nu}, {half_m + nu, mu + m - 1.0 + 2.0 * nu});
  c.C = scale * gamma_ratio({nu, mu, m - 1.0 + 2.0 * nu}, {half_m + nu});
  return c;
}

Integral I_integral(double delta, double mu, double nu, double alpha, double t,
                    const Tolerance& tol) {
  if (!(delta > 0.0) || !(mu > 0.0)) throw std::invalid_argument("I_integral: delta, mu must be positive");
  if (!(alpha > -1.0)) throw std::invalid_argument("I_integral: alpha must exceed -1");
  if (!(nu > -0.5)) throw std::invalid_argument("I_integral: nu must exceed -1/2");
  if (!(t >= 0.0)) throw std::invalid_argument("I_integral: t must be non-negative");
  const double lambda = nu - 0.5;
  if (t == 0.0) {
    return {beta_fn((alpha + 1.0) / delta, mu) / delta * j_norm(lambda, 0.0, tol), 0.0};
  }
  auto integrand = [&](double x, double from_zero, double to_one) {
    double log_w = 0.0;
    if (mu != 1.0) log_w += (mu - 1.0) * std::log(-std::expm1(delta * std::log1p(-to_one)));
    if (alpha != 0.0) log_w += alpha * std::log(from_zero);
    return std::exp(log_w) * j_norm(lambda, t * x, tol);
  };
  return quad::panels(integrand, 0.0, 1.0, {}, oscillation_period(t, 1.0), quad_rel(tol));
}

Integral hankel_quadrature(const RadialKernel& k, int m, double t, const Tolerance& tol) {
  if (m < 1) throw std::invalid_argument("hankel_quadrature: dimension m must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("hankel_quadrature: t must be non-negative");
  const double radius = k.support();
  const double lambda = 0.5 * m - 1.0;
  auto integrand = [&](double u, double, double) {
    const double power = m == 1 ? 1.0 : std::pow(u, m - 1);
    return kernel_eval(k, u) * power * j_norm(lambda, t * u, tol);
  };
  const auto breaks = k.breakpoints();
  return quad::panels(integrand, 0.0, radius, breaks, oscillation_period(t, radius),
                      quad_rel(tol));
}

Integral hankel_buhmann(const BuhmannParams& p, int m, double t, const Tolerance& tol) {
  p.validate();
  if (m < 1) throw std::invalid_argument("hankel_buhmann: dimension m must be positive");
  const double factor = std::pow(2.0, p.nu - 1.0) * std::tgamma(p.nu);
  Integral r = I_integral(p.delta, p.mu, 0.5 * (m - 1) + p.nu, m - 1 + p.alpha, t, tol);
  return {factor * r.value, factor * r.error};
}

SpectralValue hankel_h_closed(int m, double mu, double nu, double t, const Tolerance& tol) {
  check_h_spectral_args(m, mu, nu);
  if (!(t >= 0.0)) throw std::invalid_argument("hankel_h_closed: t must be non-negative");
  const double a = 0.5 * (m - 1) + nu;
  const double D = spectral_constants(m, mu, nu).D;
  try {
    const SeriesResult s = hyp1f2_checked(a, a + 0.5 * mu, a + 0.5 * (mu + 1.0), -0.25 * t * t, tol);
    return {D * s.value, std::abs(D) * s.error, SpectralBackend::ClosedForm1F2, false};
  } catch (const evaluation_error&) {
    const Integral q = hankel_quadrature(RadialKernel::h(mu, nu), m, t, tol);
    return {q.value, q.error, SpectralBackend::Quadrature, true};
  }
}

double laplace_identity_rhs(int m, double mu, double nu, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("laplace_identity_rhs: x must be positive");
  const double C = spectral_constants(m, mu, nu).C;
  return C / (std::pow(x, mu) * std::pow(1.0 + x * x, 0.5 * (m - 1) + nu));
}

std::optional<std::vector<HTerm>> h_decomposition(const RadialKernel& k) {
  using Terms = std::optional<std::vector<HTerm>>;
  return std::visit(
      overloaded{
          [](const family::H& f) -> Terms { return std::vector<HTerm>{{1.0, f.mu, f.nu, 1.0}}; },
          [](const family::Askey& f) -> Terms {
            // (1-x)^mu = mu h_{mu,1}(x)
            return std::vector<HTerm>{{f.mu, f.mu, 1.0, 1.0}};
          },
          [](const family::Wendland& f) -> Terms {
            // I^k (1-x)^mu = mu / (2^k k!) h_{mu,k+1}, then normalize at the origin.
            const double montee_coef = f.mu / (std::pow(2.0, f.k) * std::tgamma(f.k + 1.0));
            return std::vector<HTerm>{
                {montee_coef / wendland_montee_scale(f.mu, f.k), f.mu, f.k + 1.0, 1.0}};
          },
          [](const family::Buhmann& f) -> Terms {
            const auto& p = f.params;
            if (p.delta != 1.0 || p.alpha != 2.0 * p.nu - 1.0) return std::nullopt;
            return std::vector<HTerm>{{1.0, p.mu, p.nu, 1.0}};
          },
          [](const family::Difference& f) -> Terms {
            const auto& d = f.params;
            if (d.degenerate()) return std::vector<HTerm>{};
            return std::vector<HTerm>{{std::pow(d.beta2, d.eps), d.mu, d.nu, d.beta2},
                                      {-std::pow(d.beta1, d.eps), d.mu, d.nu, d.beta1}};
          },
          [](const family::Scaled& f) -> Terms {
            auto inner = h_decomposition(*f.inner);
            if (!inner) return std::nullopt;
            for (auto& term : *inner) term.beta *= f.beta;
            return inner;
          },
          [](const family::Custom&) -> Terms { return std::nullopt; },
      },
      k.family());
}

SpectralDensity::SpectralDensity(RadialKernel kernel, int m, SpectralBackend backend,
                                 Tolerance tol)
    : kernel_(std::move(kernel)), m_(m), backend_(backend), tol_(tol) {
  if (m < 1) throw std::invalid_argument("SpectralDensity: dimension m must be positive");
  terms_ = h_decomposition(kernel_);
  if (backend_ == SpectralBackend::Auto) {
    backend_ = terms_ ? SpectralBackend::ClosedForm1F2 : SpectralBackend::Quadrature;
  }
  if (backend_ == SpectralBackend::ClosedForm1F2) {
    if (!terms_) throw std::invalid_argument("SpectralDensity: no 1F2 closed form for " + kernel_.name());
    for (const auto& term : *terms_) check_h_spectral_args(m_, term.mu, term.nu);
  }
}

bool SpectralDensity::closed_form_available(const RadialKernel& k) {
  return h_decomposition(k).has_value();
}

SpectralValue SpectralDensity::operator()(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("SpectralDensity: t must be non-negative");
  if (backend_ == SpectralBackend::Quadrature) {
    const Integral q = hankel_quadrature(kernel_, m_, t, tol_);
    return {q.value, q.error, SpectralBackend::Quadrature, false};
  }
  SpectralValue out;
  out.backend = SpectralBackend::ClosedForm1F2;
  for (const auto& term : *terms_) {
    const double scale = term.coef * std::pow(term.beta, m_);
    const SpectralValue v = hankel_h_closed(m_, term.mu, term.nu, term.beta * t, tol_);
    out.value += scale * v.value;
    out.error += std::abs(scale) * v.error;
    out.fell_back = out.fell_back || v.fell_back;
  }
  return out;
}

std::vector<SpectralValue> SpectralDensity::evaluate(const std::vector<double>& t_grid) const {
  std::vector<SpectralValue> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back((*this)(t));
  return out;
}

SpectralValue fourier_transform_1d(const RadialKernel& k, double t, const Tolerance& tol) {
  SpectralValue v = SpectralDensity(k, 1, SpectralBackend::Auto, tol)(t);
  const double s = std::sqrt(2.0 * std::numbers::pi);
  v.value *= s;
  v.error *= s;
  return v;
}

}  // namespace buhmann
