#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace quadric {

/// Coordinates with respect to the basis (Z_1..Z_m, JZ_1..JZ_m).
using Vector = Eigen::VectorXd;
/// Linear operator on the ambient tangent space, column j = image of e_j.
using Operator = Eigen::MatrixXd;

inline double inner(const Vector& x, const Vector& y) { return x.dot(y); }

inline double max_abs(const Operator& op) {
  return op.size() == 0 ? 0.0 : op.cwiseAbs().maxCoeff();
}

inline double asymmetry(const Operator& op) {
  return max_abs(op - op.transpose());
}

/// Orthogonal projector onto the complement of a unit vector.
inline Operator complement_projector(const Vector& unit) {
  return Operator::Identity(unit.size(), unit.size()) - unit * unit.transpose();
}

/// Gram-Schmidt over `seed` columns, keeping those whose residual norm
/// exceeds `drop_tol`. Deterministic in the column order.
Operator orthonormalize(const Operator& seed, double drop_tol = 1e-8);

/// Matrix of `op` in the orthonormal frame `basis`: basis^T op basis.
inline Operator restrict_to(const Operator& op, const Operator& basis) {
  return basis.transpose() * op * basis;
}

}  // namespace quadric
