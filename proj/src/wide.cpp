#include "buhmann/wide.hpp"

#include <cmath>

#include "buhmann/closed_forms.hpp"

namespace buhmann {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::optional<wide_real> h_wide(double mu, double nu, const wide_real& x) {
  if (!closed::integer_nu(nu)) return std::nullopt;
  if (x >= 1) return wide_real(0);
  return closed::h_integer_nu<wide_real>(wide_real(mu), static_cast<int>(nu), x);
}

}  // namespace

std::optional<wide_real> kernel_eval_wide(const RadialKernel& k, const wide_real& x_in) {
  const wide_real x = boost::multiprecision::abs(x_in);
  return std::visit(
      overloaded{
          [&](const family::Buhmann& f) -> std::optional<wide_real> {
            const auto& p = f.params;
            if (p.delta != 1.0 || p.alpha != 2.0 * p.nu - 1.0) return std::nullopt;
            return h_wide(p.mu, p.nu, x);
          },
          [&](const family::H& f) { return h_wide(f.mu, f.nu, x); },
          [&](const family::Wendland& f) -> std::optional<wide_real> {
            if (f.k > 2) return std::nullopt;
            return closed::wendland_012<wide_real>(wide_real(f.mu), f.k, x);
          },
          [&](const family::Askey& f) -> std::optional<wide_real> {
            return closed::askey<wide_real>(wide_real(f.mu), x);
          },
          [&](const family::Difference& f) -> std::optional<wide_real> {
            const auto& d = f.params;
            if (d.degenerate()) return wide_real(0);
            const wide_real b1(d.beta1);
            const wide_real b2(d.beta2);
            auto h2 = h_wide(d.mu, d.nu, x / b2);
            auto h1 = h_wide(d.mu, d.nu, x / b1);
            if (!h1 || !h2) return std::nullopt;
            const wide_real eps(d.eps);
            return pow(b2, eps) * *h2 - pow(b1, eps) * *h1;
          },
          [&](const family::Scaled& f) -> std::optional<wide_real> {
            return kernel_eval_wide(*f.inner, x / wide_real(f.beta));
          },
          [&](const family::Custom&) -> std::optional<wide_real> { return std::nullopt; },
      },
      k.family());
}

bool has_wide_form(const RadialKernel& k) {
  return kernel_eval_wide(k, wide_real(0)).has_value();
}

}  // namespace buhmann
