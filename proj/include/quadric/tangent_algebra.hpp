#pragma once

// Linear model of the tangent space T_[z]Q^m: metric g (identity Gram
// matrix), Kähler structure J and a distinguished real structure A in the
// ordered orthonormal basis (Z_1..Z_m, JZ_1..JZ_m).

#include <string>

#include "quadric/linalg.hpp"
#include "quadric/spectrum.hpp"

namespace quadric {

inline constexpr int kMaxComplexDimension = 64;
/// Radians; below this the canonical angle is treated as 0 or pi/4.
inline constexpr double kSingularAngleTol = 1e-8;
inline constexpr double kUnitTol = 1e-10;

class TangentModel {
 public:
  /// Throws GeometryError(invalid_dimension) unless 1 <= m <= 64.
  explicit TangentModel(int m);

  int m() const { return m_; }
  int dim() const { return 2 * m_; }
  const Operator& J() const { return j_; }
  const Operator& A() const { return a_; }
  /// J∘A, the conjugation at angle pi/2.
  const Operator& JA() const { return ja_; }

  /// Basis vectors Z_i and JZ_i, 1-based as in the usual notation.
  Vector Z(int i) const;
  Vector JZ(int i) const;

 private:
  int m_;
  Operator j_;
  Operator a_;
  Operator ja_;
};

TangentModel build_tangent_model(int m);

/// A_theta = cos(theta) A + sin(theta) JA.
Operator rotate_conjugation(const TangentModel& model, double theta);

enum class SingularType { principal, isotropic, generic };

const char* to_string(SingularType type);

struct CanonicalAngle {
  double t = 0.0;  // in [0, pi/4]
  SingularType type = SingularType::generic;
};

/// t with U = cos(t) Z_1 + sin(t) JZ_2 for a suitable conjugation in the
/// circle family. Computed as asin(|A_* U - U| / 2), where A_* maximizes
/// g(A_theta U, U); this equals (1/2) arccos(sqrt(g(AU,U)^2 + g(JAU,U)^2))
/// but stays well conditioned near t = 0.
CanonicalAngle canonical_angle(const TangentModel& model, const Vector& u);
/// Same, measured against an explicit member of the conjugation family.
CanonicalAngle canonical_angle(const TangentModel& model, const Operator& conjugation,
                               const Vector& u);

/// The nine-term curvature tensor of the quadric, R(X,Y)Z.
Vector ambient_curvature(const TangentModel& model, const Vector& x, const Vector& y,
                         const Vector& z);

/// Jacobi operator Y -> R(Y,U)U. Throws not_unit for |U| != 1.
Operator ambient_jacobi(const TangentModel& model, const Vector& u);

/// Throws GeometryError(not_unit) when | |v| - 1 | > kUnitTol.
void require_unit(const Vector& v, const char* name, const char* symbol = nullptr);

}  // namespace quadric
