#include "detlab/numerics/identity.hpp"

#include <algorithm>
#include <cmath>

#include "detlab/numerics/errors.hpp"

namespace detlab {

void finalize_report(IdentityReport& report, double tolerance, bool healthy) {
  double diff = 0.0, scale = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < report.sides.size(); ++i) {
    finite = finite && is_finite(report.sides[i].value);
    scale = std::max(scale, std::abs(report.sides[i].value));
    for (std::size_t j = i + 1; j < report.sides.size(); ++j)
      diff = std::max(diff, std::abs(report.sides[i].value - report.sides[j].value));
  }
  report.abs_residual = diff;
  report.rel_residual = diff / std::max(scale, 1e-300);
  report.tolerance = tolerance;
  report.converged = healthy && finite && report.rel_residual <= tolerance;
}

IdentityReport commuted_det_identity_check(const ComplexMatrix& a, const ComplexMatrix& b, double tolerance) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw ParameterError("commuted_det_identity_check: A must be N x M and B M x N");
  ComplexMatrix ab = a * b;
  ComplexMatrix ba = b * a;
  ComplexMatrix left = ComplexMatrix::identity(ab.rows()) - ab;
  ComplexMatrix right = ComplexMatrix::identity(ba.rows()) - ba;
  IdentityReport rep;
  rep.name = "commuted_determinant";
  rep.sides = {{"det_I_minus_AB", det_lu(left), "lu"}, {"det_I_minus_BA", det_lu(right), "lu"}};
  finalize_report(rep, tolerance);
  return rep;
}

}  // namespace detlab
