#pragma once

// Random inputs and independent oracles shared by the test binaries.

#include <cmath>
#include <random>
#include <vector>

#include "quadric/hypersurface.hpp"
#include "quadric/linalg.hpp"
#include "quadric/tangent_algebra.hpp"

namespace quadric::testing {

inline Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

inline Vector random_unit(int n, std::mt19937_64& rng) {
  return random_vector(n, rng).normalized();
}

inline Operator random_symmetric(int n, std::mt19937_64& rng) {
  Operator a(n, n);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return 0.5 * (a + a.transpose());
}

/// diag(O, O) for O in O(m) times the phase cos(psi) + sin(psi) J. Commutes
/// with J and moves A inside its circle family, so canonical angles are
/// preserved.
inline Operator random_unitary_symmetry(const TangentModel& model, std::mt19937_64& rng) {
  const int m = model.m();
  Operator seed(m, m);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) seed(i, j) = gauss(rng);
  const Operator o = orthonormalize(seed);
  Operator block = Operator::Zero(2 * m, 2 * m);
  block.topLeftCorner(m, m) = o;
  block.bottomRightCorner(m, m) = o;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const double psi = angle(rng);
  const Operator phase =
      std::cos(psi) * Operator::Identity(2 * m, 2 * m) + std::sin(psi) * model.J();
  return phase * block;
}

/// Unit vector with canonical angle t.
inline Vector vector_at_angle(const TangentModel& model, double t, std::mt19937_64& rng) {
  const Vector base = std::cos(t) * model.Z(1) + std::sin(t) * model.JZ(2);
  return random_unitary_symmetry(model, rng) * base;
}

/// Hopf data: N at canonical angle t, S xi = alpha xi, S random and
/// self-adjoint on the orthogonal complement of {xi, N}.
inline HypersurfaceData random_hopf(const TangentModel& model, double t, double alpha,
                                    std::mt19937_64& rng) {
  const Vector N = vector_at_angle(model, t, rng);
  const Vector xi = -(model.J() * N);
  const int n = model.dim();
  const Operator P = Operator::Identity(n, n) - N * N.transpose() - xi * xi.transpose();
  const Operator S = P * random_symmetric(n, rng) * P + alpha * xi * xi.transpose();
  return induce_from_normal(model, N, S);
}

/// Eigenvalues of a symmetric matrix by Sylvester inertia bisection: the
/// number of eigenvalues below x is the number of negative pivots in the
/// LDL^T factorization of (a - x I).
inline int count_below(const Operator& a, double x) {
  const int n = static_cast<int>(a.rows());
  Operator m = a - x * Operator::Identity(n, n);
  int negative = 0;
  for (int k = 0; k < n; ++k) {
    double d = m(k, k);
    if (d == 0.0) d = 1e-300;
    if (d < 0) ++negative;
    for (int i = k + 1; i < n; ++i) {
      const double l = m(i, k) / d;
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return negative;
}

inline std::vector<double> bisection_eigenvalues(const Operator& a, double tol = 1e-13) {
  const int n = static_cast<int>(a.rows());
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, a.row(i).cwiseAbs().sum());
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    double lo = -bound - 1.0, hi = bound + 1.0;
    while (hi - lo > tol * std::max(1.0, bound)) {
      const double mid = 0.5 * (lo + hi);
      (count_below(a, mid) > k ? hi : lo) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

/// Gauss equation through projection of the ambient curvature.
inline Vector gauss_curvature(const HypersurfaceData& h, const Vector& x, const Vector& y,
                              const Vector& z) {
  return h.projector * ambient_curvature(h.model, x, y, z) +
         inner(h.S * y, z) * (h.S * x) - inner(h.S * x, z) * (h.S * y);
}

/// Sum_i R(X, e_i) e_i over an orthonormal tangent frame.
inline Vector ricci_contraction(const HypersurfaceData& h, const Vector& x) {
  Vector out = Vector::Zero(h.dim());
  for (Eigen::Index i = 0; i < h.tangent_basis.cols(); ++i) {
    const Vector e = h.tangent_basis.col(i);
    out += gauss_curvature(h, x, e, e);
  }
  return out;
}

/// (nabla_X B)Y from the derivative of the conjugation along M, ambient valued.
inline Vector nabla_B(const HypersurfaceData& h, const Vector& x, double q, const Vector& y) {
  const Operator& A = h.A;
  const Vector sx = h.S * x;
  const Vector an = A * h.N;
  const double c = h.split.gAxixi;
  return q * (h.model.J() * (A * y)) + inner(sx, y) * an - q * inner(A * y, h.xi) * h.N +
         inner(sx, y) * c * h.N + inner(A * y, h.N) * sx;
}

/// (nabla_X R_xi)Y by the product rule applied term by term to
/// R_xi Y = Y - eta(Y) xi + c BY - g(A xi, Y) A xi - g(phi A xi, Y) phi A xi
///          + alpha S Y - alpha^2 eta(Y) xi.
inline Vector cov_deriv_first_form(const HypersurfaceData& h, const Vector& x, double q,
                                   const Operator& nabla_s, double dalpha_x, const Vector& y) {
  const double alpha = h.alpha;
  const double c = h.split.gAxixi;
  const Vector& axi = h.split.Axi;
  const Vector phi_axi = h.phi * axi;
  const Vector sx = h.S * x;
  const Vector nabla_xi = h.phi * sx;
  const double nabla_eta_y = inner(nabla_xi, y);
  auto nabla_phi = [&](const Vector& v) { return Vector(h.eta(v) * sx - inner(sx, v) * h.xi); };
  const Vector nabla_axi = nabla_Axi(h, x, q);
  const Vector nabla_phi_axi = nabla_phi(axi) + h.phi * nabla_axi;
  const double dc = inner(nabla_axi, h.xi) + inner(axi, nabla_xi);

  Vector out = -(1.0 + alpha * alpha) * (nabla_eta_y * h.xi + h.eta(y) * nabla_xi);
  out += dc * (h.split.B * y) + c * nabla_B(h, x, q, y);
  out -= inner(nabla_axi, y) * axi + inner(axi, y) * nabla_axi;
  out -= inner(nabla_phi_axi, y) * phi_axi + inner(phi_axi, y) * nabla_phi_axi;
  out += dalpha_x * (h.S * y) + alpha * (nabla_s * y);
  out -= 2.0 * alpha * dalpha_x * h.eta(y) * h.xi;
  return out;
}

}  // namespace quadric::testing
