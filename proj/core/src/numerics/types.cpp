#include "detlab/numerics/types.hpp"

#include <string>

#include "detlab/numerics/errors.hpp"

namespace detlab {

std::string_view to_string(Boundary bc) noexcept {
  return bc == Boundary::dirichlet ? "dirichlet" : "neumann";
}

cplx ensure_finite(cplx v, std::string_view where) {
  if (!is_finite(v)) throw NonFiniteError(std::string(where) + ": non-finite value");
  return v;
}

}  // namespace detlab
