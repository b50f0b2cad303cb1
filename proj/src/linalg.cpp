#include "quadric/linalg.hpp"

#include <vector>

#include "quadric/error.hpp"

namespace quadric {

Operator orthonormalize(const Operator& seed, double drop_tol) {
  std::vector<Vector> kept;
  for (Eigen::Index j = 0; j < seed.cols(); ++j) {
    Vector v = seed.col(j);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : kept) v -= u.dot(v) * u;
    const double norm = v.norm();
    if (norm > drop_tol) kept.push_back(v / norm);
  }
  Operator out(seed.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j)
    out.col(static_cast<Eigen::Index>(j)) = kept[j];
  return out;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::not_unit: return "not-unit";
    case ErrorKind::not_self_adjoint: return "not-self-adjoint";
    case ErrorKind::not_tangent: return "not-tangent";
    case ErrorKind::hopf_required: return "hopf-required";
    case ErrorKind::invalid_radius: return "invalid-radius";
    case ErrorKind::vanishing_reeb_curvature: return "vanishing-reeb-curvature";
    case ErrorKind::invalid_input: return "invalid-input";
  }
  return "unknown";
}

}  // namespace quadric
