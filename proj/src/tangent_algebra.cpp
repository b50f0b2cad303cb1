#include "quadric/tangent_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quadric/error.hpp"

namespace quadric {

TangentModel::TangentModel(int m) : m_(m) {
  if (m < 1 || m > kMaxComplexDimension) {
    std::ostringstream msg;
    msg << "complex dimension m = " << m << " outside [1, " << kMaxComplexDimension
        << "]";
    throw GeometryError(ErrorKind::invalid_dimension, msg.str());
  }
  const int n = 2 * m;
  j_ = Operator::Zero(n, n);
  a_ = Operator::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    j_(m + i, i) = 1.0;   // Z_i -> JZ_i
    j_(i, m + i) = -1.0;  // JZ_i -> -Z_i
    a_(i, i) = 1.0;
    a_(m + i, m + i) = -1.0;
  }
  ja_ = j_ * a_;
}

Vector TangentModel::Z(int i) const { return Vector::Unit(dim(), i - 1); }
Vector TangentModel::JZ(int i) const { return Vector::Unit(dim(), m_ + i - 1); }

TangentModel build_tangent_model(int m) { return TangentModel(m); }

Operator rotate_conjugation(const TangentModel& model, double theta) {
  return std::cos(theta) * model.A() + std::sin(theta) * model.JA();
}

const char* to_string(SingularType type) {
  switch (type) {
    case SingularType::principal: return "principal";
    case SingularType::isotropic: return "isotropic";
    case SingularType::generic: return "generic";
  }
  return "unknown";
}

void require_unit(const Vector& v, const char* name, const char* symbol) {
  const double norm = v.norm();
  if (!(std::abs(norm - 1.0) <= kUnitTol)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << name << " not unit (|" << (symbol ? symbol : name) << "| = " << norm << ")";
    throw GeometryError(ErrorKind::not_unit, msg.str());
  }
}

CanonicalAngle canonical_angle(const TangentModel& model, const Vector& u) {
  return canonical_angle(model, model.A(), u);
}

CanonicalAngle canonical_angle(const TangentModel& model, const Operator& conjugation,
                               const Vector& u) {
  require_unit(u, "U");
  const Vector cu = conjugation * u;
  const Vector jcu = model.J() * cu;
  const double theta = std::atan2(inner(jcu, u), inner(cu, u));
  const Vector best = std::cos(theta) * cu + std::sin(theta) * jcu;
  const double half_gap = 0.5 * (best - u).norm();
  CanonicalAngle out;
  out.t = std::asin(std::min(1.0, half_gap));
  if (out.t < kSingularAngleTol)
    out.type = SingularType::principal;
  else if (std::abs(out.t - std::numbers::pi / 4) < kSingularAngleTol)
    out.type = SingularType::isotropic;
  return out;
}

Vector ambient_curvature(const TangentModel& model, const Vector& x, const Vector& y,
                         const Vector& z) {
  const Operator& J = model.J();
  const Operator& A = model.A();
  const Vector jx = J * x, jy = J * y;
  const Vector ax = A * x, ay = A * y;
  const Vector jax = J * ax, jay = J * ay;
  return inner(y, z) * x - inner(x, z) * y + inner(jy, z) * jx - inner(jx, z) * jy -
         2.0 * inner(jx, y) * (J * z) + inner(ay, z) * ax - inner(ax, z) * ay +
         inner(jay, z) * jax - inner(jax, z) * jay;
}

Operator ambient_jacobi(const TangentModel& model, const Vector& u) {
  require_unit(u, "U");
  const int n = model.dim();
  Operator out(n, n);
  for (int j = 0; j < n; ++j)
    out.col(j) = ambient_curvature(model, Vector::Unit(n, j), u, u);
  return out;
}

}  // namespace quadric
