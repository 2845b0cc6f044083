#pragma once

#include <stdexcept>
#include <string>

#include "buhmann/kernels.hpp"

namespace buhmann {

/// Parse failure; `field()` names the offending family or parameter.
class kernel_spec_error : public std::invalid_argument {
 public:
  kernel_spec_error(const std::string& field, const std::string& what)
      : std::invalid_argument("kernel spec: " + field + ": " + what), field_(field) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Parses `family:key=value,...`:
///   buhmann:delta=1,mu=2,nu=1,alpha=1
///   h:mu=2,nu=1
///   wendland:mu=3,k=1
///   askey:mu=2
///   diff:mu=4.5,nu=1,eps=1,b1=0.75,b2=1   (b1, b2 default to 0.75 and 1)
/// Any family accepts beta=<s> to rescale the kernel to k(x / s).
RadialKernel parse_kernel_spec(const std::string& text);

/// Inverse of parse_kernel_spec, printing reals with 17 significant digits.
/// Throws std::invalid_argument for custom kernels.
std::string format_kernel_spec(const RadialKernel& k);

}  // namespace buhmann
