#pragma once

#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "buhmann/kernels.hpp"

namespace buhmann {

/// 50-digit float for high-order finite differences, where double rounding
/// noise (~2^n eps / h^n) would swamp the signal.
using wide_real = boost::multiprecision::cpp_bin_float_50;

/// Kernel value in extended precision, available for the families with an
/// elementary form: Askey, Wendland k <= 2, H and Difference with integer nu,
/// Buhmann reducing to H, and scalings of these. nullopt otherwise.
std::optional<wide_real> kernel_eval_wide(const RadialKernel& k, const wide_real& x);

/// Whether kernel_eval_wide succeeds for this kernel.
bool has_wide_form(const RadialKernel& k);

}  // namespace buhmann
