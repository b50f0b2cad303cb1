#pragma once

// Pointwise data of a real hypersurface M in Q^m and the induced-structure
// calculus: Gauss, Codazzi, Ricci, the structure Jacobi operator and its
// covariant derivatives. Every operator is stored as an ambient matrix that
// annihilates the unit normal N, so phi, B and S compose directly.

#include <optional>

#include "quadric/linalg.hpp"
#include "quadric/parallel.hpp"
#include "quadric/tangent_algebra.hpp"

namespace quadric {

inline constexpr double kIdentityTol = 1e-11;
inline constexpr double kConstructionTol = 1e-13;
inline constexpr double kHopfTol = 1e-10;

/// Tangential part of the fixed conjugation A along M.
struct ConjugationSplit {
  Operator B;        // AX = BX + rho(X) N
  Vector rho;        // rho(X) = g(AX, N), as a tangent covector
  Vector Axi;        // always tangent
  Vector AN_t;       // tangential part of AN
  double gAxixi = 0.0;  // g(A xi, xi) = -g(AN, N)
};

struct HypersurfaceData {
  TangentModel model{1};
  Vector N;
  /// Conjugation adapted to N: g(AN, JN) = 0 and g(AN, N) = cos(2t) >= 0.
  Operator A;
  Vector xi;  // -JN; also the covector eta
  Operator projector;  // Id - N N^T
  Operator phi;
  Operator S;
  double alpha = 0.0;
  double q_xi = 0.0;
  Vector dalpha;  // X -> X(alpha), tangent covector
  ConjugationSplit split;
  /// Orthonormal tangent frame, column 0 is xi.
  Operator tangent_basis;
  bool hopf = false;
  double hopf_defect = 0.0;  // |S xi - alpha xi|
  /// Set when the supplied S did not annihilate N and was projected.
  bool shape_projected = false;

  int m() const { return model.m(); }
  int dim() const { return model.dim(); }
  double eta(const Vector& x) const { return inner(x, xi); }
  double trace_S() const { return S.trace(); }

  HypersurfaceData with_q_xi(double q) const;
  HypersurfaceData with_dalpha(const Vector& covector) const;
};

struct InduceOptions {
  std::optional<double> q_xi;      // default 2 alpha
  std::optional<Vector> dalpha;    // default: closed Hopf form with xi(alpha) = 0
  double hopf_tol = kHopfTol;
};

/// Throws not_unit for |N| != 1 and not_self_adjoint for asymmetric S.
/// An S with S N != 0 is replaced by P S P and flagged.
HypersurfaceData induce_from_normal(const TangentModel& model, const Vector& N,
                                    const Operator& S, const InduceOptions& options = {});

/// Throws not_tangent when |g(X, N)| exceeds 1e-10 * max(1, |X|).
void require_tangent(const HypersurfaceData& h, const Vector& x, const char* name);
/// Throws hopf_required unless h.hopf.
void require_hopf(const HypersurfaceData& h, const char* operation);

/// Builds the ambient operator whose column j is f(P e_j).
template <class F>
Operator tangent_operator(const HypersurfaceData& h, F&& f,
                          Execution exec = Execution::serial) {
  const int n = h.dim();
  Operator out(n, n);
  for_each_index(exec, static_cast<std::size_t>(n), [&](std::size_t j) {
    const auto col = static_cast<Eigen::Index>(j);
    out.col(col) = f(Vector(h.projector.col(col)));
  });
  return out;
}

/// R(X,Y)Z from the Gauss equation written with B, rho and phi.
Vector induced_curvature(const HypersurfaceData& h, const Vector& x, const Vector& y,
                         const Vector& z);

/// (2m-1)X - 3 eta(X) xi + g(A xi, xi) BX - g(AX, N) phi A xi
///   + g(AX, xi) A xi + hSX - S^2 X.
Vector ricci(const HypersurfaceData& h, const Vector& x);

/// (nabla_X S)Y - (nabla_Y S)X as a tangent vector.
Vector codazzi_rhs(const HypersurfaceData& h, const Vector& x, const Vector& y);

/// (nabla_xi S)Y = (nabla_Y S)xi + codazzi_rhs(xi, Y), with
/// (nabla_Y S)xi = (Y alpha) xi + alpha phi S Y - S phi S Y. Hopf only.
Vector nabla_S_at_xi(const HypersurfaceData& h, const Vector& y);
Operator nabla_S_at_xi_operator(const HypersurfaceData& h,
                                Execution exec = Execution::serial);

/// Tangential part of nabla_X(A xi).
Vector nabla_Axi(const HypersurfaceData& h, const Vector& x, double q_x);

/// R_xi as an ambient operator annihilating N.
Operator structure_jacobi(const HypersurfaceData& h);

/// Y -> (nabla_X R_xi)Y, ambient-valued. `nabla_s_x` is (nabla_X S),
/// `q_x` the gauge scalar q(X), `dalpha_x` = X(alpha). Requires Hopf data.
Operator cov_deriv_structure_jacobi(const HypersurfaceData& h, const Vector& x,
                                    double q_x, const Operator& nabla_s_x,
                                    double dalpha_x,
                                    Execution exec = Execution::serial);

/// The specialized closed form of (nabla_xi R_xi)Y for Hopf data.
Vector reeb_parallel_display(const HypersurfaceData& h, const Operator& nabla_s_xi,
                             const Vector& y);

/// (nabla_xi R_xi) with q = h.q_xi, nabla_xi S from Codazzi, xi(alpha) from h.
Operator reeb_derivative_operator(const HypersurfaceData& h,
                                  Execution exec = Execution::serial);

/// max_i |(nabla_xi R_xi) Y_i| over h.tangent_basis.
double reeb_parallel_residual(const HypersurfaceData& h,
                              Execution exec = Execution::serial);

/// max_i |(phi S - S phi) Y_i| over h.tangent_basis.
double isometric_flow_defect(const HypersurfaceData& h);

/// Matrix of the ten-term Hopf identity over h.tangent_basis.
Operator hopf_identity_form(const HypersurfaceData& h);
double hopf_identity_residual(const HypersurfaceData& h);

/// max_X |X alpha - (xi alpha) eta(X) - 2 g(A xi, xi) g(X, AN)|.
double alpha_gradient_residual(const HypersurfaceData& h);

/// Largest |v|-norm over the tangent frame of op applied to it.
double max_column_norm(const Operator& op, const Operator& basis);

}  // namespace quadric
