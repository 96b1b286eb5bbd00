#pragma once

#include <cmath>
#include <complex>
#include <string_view>

namespace detlab {

using cplx = std::complex<double>;

inline constexpr cplx imag_unit{0.0, 1.0};

enum class Boundary { dirichlet, neumann };

std::string_view to_string(Boundary bc) noexcept;

inline bool is_finite(cplx v) noexcept {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Throws NonFiniteError naming `where` if v has a NaN or Inf component.
cplx ensure_finite(cplx v, std::string_view where);

// Value stored as mantissa * exp(log_scale). Used for solutions that grow
// or decay by hundreds of orders of magnitude over the domain.
struct ScaledValue {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  cplx value() const { return mantissa * std::exp(log_scale); }
};

}  // namespace detlab
