#include "buhmann/kernel_spec.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace buhmann {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Fields {
 public:
  Fields(std::map<std::string, std::string> raw, std::string family)
      : raw_(std::move(raw)), family_(std::move(family)) {}

  double real(const std::string& key) {
    const auto it = raw_.find(key);
    if (it == raw_.end()) throw kernel_spec_error(key, "missing for family '" + family_ + "'");
    used_.insert(key);
    return parse(key, it->second);
  }

  double real_or(const std::string& key, double fallback) {
    return raw_.count(key) ? real(key) : fallback;
  }

  int integer(const std::string& key) {
    const double v = real(key);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw kernel_spec_error(key, "must be an integer");
    return static_cast<int>(v);
  }

  void reject_unused() const {
    for (const auto& [key, value] : raw_) {
      if (!used_.count(key)) throw kernel_spec_error(key, "unknown parameter for family '" + family_ + "'");
    }
  }

 private:
  static double parse(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw kernel_spec_error(key, "not a finite number: '" + text + "'");
    }
    return v;
  }

  std::map<std::string, std::string> raw_;
  std::string family_;
  std::set<std::string> used_;
};

// Rethrows argument errors from kernel validation against the spec field.
template <class F>
RadialKernel validated(const std::string& field, F&& build) {
  try {
    return build();
  } catch (const kernel_spec_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw kernel_spec_error(field, e.what());
  } catch (const std::domain_error& e) {
    throw kernel_spec_error(field, e.what());
  }
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

}  // namespace

RadialKernel parse_kernel_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = trim(text.substr(0, colon));
  std::map<std::string, std::string> raw;
  if (colon != std::string::npos) {
    std::size_t pos = colon + 1;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      const std::string item = trim(text.substr(pos, comma - pos));
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw kernel_spec_error(item, "expected key=value");
      const std::string key = trim(item.substr(0, eq));
      if (!raw.emplace(key, trim(item.substr(eq + 1))).second) throw kernel_spec_error(key, "given twice");
      pos = comma + 1;
    }
  }
  Fields f(std::move(raw), family);

  RadialKernel k = validated(family, [&]() -> RadialKernel {
    if (family == "buhmann") {
      BuhmannParams p;
      p.delta = f.real("delta");
      p.mu = f.real("mu");
      p.nu = f.real("nu");
      p.alpha = f.real("alpha");
      return RadialKernel::buhmann(p);
    }
    if (family == "h") {
      const double mu = f.real("mu");
      return RadialKernel::h(mu, f.real("nu"));
    }
    if (family == "wendland") {
      const double mu = f.real("mu");
      return RadialKernel::wendland(mu, f.integer("k"));
    }
    if (family == "askey") return RadialKernel::askey(f.real("mu"));
    if (family == "diff") {
      DiffParams d;
      d.mu = f.real("mu");
      d.nu = f.real("nu");
      d.eps = f.real("eps");
      d.beta1 = f.real_or("b1", d.beta1);
      d.beta2 = f.real_or("b2", d.beta2);
      return RadialKernel::difference(d);
    }
    throw kernel_spec_error(family.empty() ? "family" : family,
                            "unknown family (expected buhmann, h, wendland, askey, diff)");
  });
  const double beta = f.real_or("beta", 1.0);
  f.reject_unused();
  if (beta == 1.0) return k;
  if (!(beta > 0.0)) throw kernel_spec_error("beta", "must be positive");
  return RadialKernel::scaled(std::move(k), beta);
}

std::string format_kernel_spec(const RadialKernel& k) {
  return std::visit(
      overloaded{
          [](const family::Buhmann& f) {
            const auto& p = f.params;
            return "buhmann:delta=" + num(p.delta) + ",mu=" + num(p.mu) + ",nu=" + num(p.nu) +
                   ",alpha=" + num(p.alpha);
          },
          [](const family::H& f) { return "h:mu=" + num(f.mu) + ",nu=" + num(f.nu); },
          [](const family::Wendland& f) { return "wendland:mu=" + num(f.mu) + ",k=" + std::to_string(f.k); },
          [](const family::Askey& f) { return "askey:mu=" + num(f.mu); },
          [](const family::Difference& f) {
            const auto& d = f.params;
            return "diff:mu=" + num(d.mu) + ",nu=" + num(d.nu) + ",eps=" + num(d.eps) +
                   ",b1=" + num(d.beta1) + ",b2=" + num(d.beta2);
          },
          [](const family::Scaled& f) {
            if (std::holds_alternative<family::Scaled>(f.inner->family())) {
              throw std::invalid_argument("format_kernel_spec: nested scaling has no textual form");
            }
            return format_kernel_spec(*f.inner) + ",beta=" + num(f.beta);
          },
          [](const family::Custom& f) -> std::string {
            throw std::invalid_argument("format_kernel_spec: custom kernel '" + f.label + "' has no textual form");
          },
      },
      k.family());
}

}  // namespace buhmann
