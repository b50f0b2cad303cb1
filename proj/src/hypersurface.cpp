#include "quadric/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadric/error.hpp"

namespace quadric {

HypersurfaceData HypersurfaceData::with_q_xi(double q) const {
  HypersurfaceData out = *this;
  out.q_xi = q;
  return out;
}

HypersurfaceData HypersurfaceData::with_dalpha(const Vector& covector) const {
  HypersurfaceData out = *this;
  out.dalpha = projector * covector;
  return out;
}

HypersurfaceData induce_from_normal(const TangentModel& model, const Vector& N,
                                    const Operator& S, const InduceOptions& options) {
  const int n = model.dim();
  if (N.size() != n || S.rows() != n || S.cols() != n) {
    std::ostringstream msg;
    msg << "expected vectors of length " << n << " and a " << n << "x" << n
        << " shape operator";
    throw GeometryError(ErrorKind::invalid_dimension, msg.str());
  }
  require_unit(N, "normal", "N");
  const double asym = asymmetry(S);
  if (asym > 1e-10 * std::max(1.0, max_abs(S))) {
    std::ostringstream msg;
    msg << "shape operator is not self-adjoint (asymmetry defect " << asym << ")";
    throw GeometryError(ErrorKind::not_self_adjoint, msg.str());
  }

  HypersurfaceData h;
  h.model = model;
  h.N = N;
  h.projector = complement_projector(N);
  const Operator& P = h.projector;
  const Operator sym = 0.5 * (S + S.transpose());
  h.shape_projected =
      (sym * N).norm() > kConstructionTol * std::max(1.0, max_abs(sym));
  h.S = P * sym * P;
  h.xi = -(model.J() * N);
  h.phi = P * model.J() * P;
  h.alpha = inner(h.S * h.xi, h.xi);
  h.hopf_defect = (h.S * h.xi - h.alpha * h.xi).norm();
  h.hopf = h.hopf_defect < options.hopf_tol;

  // The member of the conjugation family maximizing g(A N, N); for it
  // g(A N, J N) = 0, so A xi is tangent. Isotropic normals keep the model's A.
  const double ga = inner(model.A() * N, N), gja = inner(model.JA() * N, N);
  h.A = std::hypot(ga, gja) < kConstructionTol ? model.A()
                                               : rotate_conjugation(model, std::atan2(gja, ga));

  ConjugationSplit& c = h.split;
  c.B = P * h.A * P;
  c.AN_t = P * (h.A * N);
  c.rho = c.AN_t;
  c.Axi = h.A * h.xi;
  c.gAxixi = inner(c.Axi, h.xi);

  h.q_xi = options.q_xi.value_or(2.0 * h.alpha);
  h.dalpha = options.dalpha ? Vector(P * *options.dalpha)
                            : Vector(2.0 * c.gAxixi * c.AN_t);

  Operator seed(n, n + 1);
  seed.col(0) = h.xi;
  seed.rightCols(n) = P;
  h.tangent_basis = orthonormalize(seed);
  return h;
}

void require_tangent(const HypersurfaceData& h, const Vector& x, const char* name) {
  const double normal = inner(x, h.N);
  if (std::abs(normal) > 1e-10 * std::max(1.0, x.norm())) {
    std::ostringstream msg;
    msg << name << " is not tangent (g(" << name << ", N) = " << normal << ")";
    throw GeometryError(ErrorKind::not_tangent, msg.str());
  }
}

void require_hopf(const HypersurfaceData& h, const char* operation) {
  if (!h.hopf) {
    std::ostringstream msg;
    msg << operation << " requires Hopf data (|S xi - alpha xi| = " << h.hopf_defect
        << ")";
    throw GeometryError(ErrorKind::hopf_required, msg.str());
  }
}

Vector induced_curvature(const HypersurfaceData& h, const Vector& x, const Vector& y,
                         const Vector& z) {
  require_tangent(h, x, "X");
  require_tangent(h, y, "Y");
  require_tangent(h, z, "Z");
  const Operator& J = h.model.J();
  const Operator& A = h.A;
  const Operator& B = h.split.B;
  const Operator& phi = h.phi;
  const Vector& xi = h.xi;
  const double jyz = inner(J * y, z), jxz = inner(J * x, z), jxy = inner(J * x, y);
  const double jayz = inner(J * (A * y), z), jaxz = inner(J * (A * x), z);
  const double rho_x = inner(h.split.rho, x), rho_y = inner(h.split.rho, y);
  const Vector bx = B * x, by = B * y;
  const Vector sx = h.S * x, sy = h.S * y;
  return inner(y, z) * x - inner(x, z) * y + jyz * (phi * x) - jxz * (phi * y) -
         2.0 * jxy * (phi * z) + inner(A * y, z) * bx - inner(A * x, z) * by +
         jayz * (phi * bx) - jayz * rho_x * xi - jaxz * (phi * by) +
         jaxz * rho_y * xi + inner(sy, z) * sx - inner(sx, z) * sy;
}

Vector ricci(const HypersurfaceData& h, const Vector& x) {
  require_tangent(h, x, "X");
  const Operator& A = h.A;
  const ConjugationSplit& c = h.split;
  const Vector ax = A * x;
  const Vector sx = h.S * x;
  const double m = h.m();
  return (2.0 * m - 1.0) * x - 3.0 * h.eta(x) * h.xi + c.gAxixi * (c.B * x) -
         inner(ax, h.N) * (h.phi * c.Axi) + inner(ax, h.xi) * c.Axi +
         h.trace_S() * sx - h.S * sx;
}

Vector codazzi_rhs(const HypersurfaceData& h, const Vector& x, const Vector& y) {
  require_tangent(h, x, "X");
  require_tangent(h, y, "Y");
  const Operator& A = h.A;
  const Operator& B = h.split.B;
  const Operator& phi = h.phi;
  const Vector ax = A * x, ay = A * y;
  const double rho_x = inner(h.split.rho, x), rho_y = inner(h.split.rho, y);
  const double eta_ax = h.eta(ax), eta_ay = h.eta(ay);
  return h.eta(x) * (phi * y) - h.eta(y) * (phi * x) -
         2.0 * inner(phi * x, y) * h.xi + inner(ax, h.N) * (B * y) -
         inner(ay, h.N) * (B * x) + eta_ax * (phi * (B * y)) - eta_ax * rho_y * h.xi -
         eta_ay * (phi * (B * x)) + eta_ay * rho_x * h.xi;
}

Vector nabla_S_at_xi(const HypersurfaceData& h, const Vector& y) {
  require_hopf(h, "nabla_S_at_xi");
  require_tangent(h, y, "Y");
  const Vector sy = h.S * y;
  const Vector nabla_y_s_xi = inner(h.dalpha, y) * h.xi + h.alpha * (h.phi * sy) -
                              h.S * (h.phi * sy);
  return nabla_y_s_xi + codazzi_rhs(h, h.xi, y);
}

Operator nabla_S_at_xi_operator(const HypersurfaceData& h, Execution exec) {
  require_hopf(h, "nabla_S_at_xi");
  return tangent_operator(h, [&](const Vector& y) { return nabla_S_at_xi(h, y); },
                          exec);
}

Vector nabla_Axi(const HypersurfaceData& h, const Vector& x, double q_x) {
  require_tangent(h, x, "X");
  const Vector phi_axi = h.phi * h.split.Axi;
  const Vector sx = h.S * x;
  return q_x * phi_axi + h.split.B * (h.phi * sx) - inner(sx, h.xi) * phi_axi;
}

Operator structure_jacobi(const HypersurfaceData& h) {
  const ConjugationSplit& c = h.split;
  const Vector phi_axi = h.phi * c.Axi;
  const Operator xixi = h.xi * h.xi.transpose();
  const int n = h.dim();
  const Operator full = Operator::Identity(n, n) - xixi + c.gAxixi * c.B -
                        c.Axi * c.Axi.transpose() - phi_axi * phi_axi.transpose() +
                        h.alpha * h.S - h.alpha * h.alpha * xixi;
  return full * h.projector;
}

namespace {

// The expanded display of (nabla_X R_xi)Y, one Y at a time.
struct CovDerivTerms {
  const HypersurfaceData& h;
  Vector x;
  double q;
  const Operator& nabla_s;
  double dalpha_x;

  // Y-independent pieces.
  Vector sx, phi_sx, b_phi_sx, phi_b_phi_sx, an, phi_axi;
  double c, qa;

  CovDerivTerms(const HypersurfaceData& data, const Vector& xv, double qx,
                const Operator& ns, double da)
      : h(data), x(xv), q(qx), nabla_s(ns), dalpha_x(da) {
    sx = h.S * x;
    phi_sx = h.phi * sx;
    b_phi_sx = h.split.B * phi_sx;
    phi_b_phi_sx = h.phi * b_phi_sx;
    an = h.A * h.N;
    phi_axi = h.phi * h.split.Axi;
    c = h.split.gAxixi;
    qa = q - h.alpha * h.eta(x);
  }

  Vector operator()(const Vector& y) const {
    const Operator& J = h.model.J();
    const Operator& A = h.A;
    const Vector& xi = h.xi;
    const Vector& axi = h.split.Axi;
    const Vector& N = h.N;
    const double alpha = h.alpha;
    const Vector by = h.split.B * y;
    const Vector sy = h.S * y;
    const double eta_y = h.eta(y);
    const double g_sx_y = inner(sx, y);
    const double g_y_phisx = inner(y, phi_sx);
    const double g_axi_y = inner(axi, y);
    const double g_phiaxi_y = inner(phi_axi, y);
    const double g_sx_axi = inner(sx, axi);

    Vector out = -g_y_phisx * xi - eta_y * phi_sx + inner(b_phi_sx, xi) * by +
                 inner(axi, phi_sx) * by;
    out += c * (q * (J * (A * y)) + g_sx_y * an - q * inner(A * y, xi) * N);
    out += c * (g_sx_y * c * N + inner(an, y) * sx);
    out -= (qa * g_phiaxi_y + inner(b_phi_sx, y)) * axi;
    out -= g_axi_y * (qa * phi_axi + b_phi_sx);
    out -= (c * g_sx_y - g_sx_axi * eta_y) * phi_axi;
    out += qa * g_axi_y * phi_axi;
    out -= (qa * c * eta_y - inner(b_phi_sx, h.phi * y)) * phi_axi;
    out -= g_phiaxi_y * (h.eta(axi) * sx - g_sx_axi * xi);
    out += g_phiaxi_y * (qa * axi - c * qa * xi - phi_b_phi_sx);
    out += dalpha_x * sy + alpha * (nabla_s * y) - 2.0 * alpha * dalpha_x * eta_y * xi -
           alpha * alpha * g_y_phisx * xi - alpha * alpha * eta_y * phi_sx;
    return out;
  }
};

}  // namespace

Operator cov_deriv_structure_jacobi(const HypersurfaceData& h, const Vector& x,
                                    double q_x, const Operator& nabla_s_x,
                                    double dalpha_x, Execution exec) {
  require_hopf(h, "cov_deriv_structure_jacobi");
  require_tangent(h, x, "X");
  const double asym = asymmetry(nabla_s_x);
  if (asym > 1e-8 * std::max(1.0, max_abs(nabla_s_x))) {
    std::ostringstream msg;
    msg << "nabla_X S is not self-adjoint (asymmetry defect " << asym << ")";
    throw GeometryError(ErrorKind::not_self_adjoint, msg.str());
  }
  const CovDerivTerms terms(h, x, q_x, nabla_s_x, dalpha_x);
  return tangent_operator(h, terms, exec);
}

Vector reeb_parallel_display(const HypersurfaceData& h, const Operator& nabla_s_xi,
                             const Vector& y) {
  require_hopf(h, "reeb_parallel_display");
  const Operator& J = h.model.J();
  const Operator& A = h.A;
  const double c = h.split.gAxixi;
  const double q = h.q_xi;
  const double alpha = h.alpha;
  const double xi_alpha = inner(h.dalpha, h.xi);
  const double eta_y = h.eta(y);
  const Vector an = A * h.N;
  const Vector phi_axi = h.phi * h.split.Axi;
  Vector out = c * (q * (J * (A * y)) + alpha * eta_y * an -
                    q * inner(A * y, h.xi) * h.N);
  out += c * (alpha * eta_y * c * h.N + alpha * inner(an, y) * h.xi);
  out -= (q - alpha) * c * eta_y * phi_axi;
  out -= inner(phi_axi, y) * c * (q - alpha) * h.xi;
  out += xi_alpha * (h.S * y) + alpha * (nabla_s_xi * y) -
         2.0 * alpha * xi_alpha * eta_y * h.xi;
  return out;
}

Operator reeb_derivative_operator(const HypersurfaceData& h, Execution exec) {
  require_hopf(h, "reeb_parallel_residual");
  const Operator nabla_s = nabla_S_at_xi_operator(h, exec);
  return cov_deriv_structure_jacobi(h, h.xi, h.q_xi, nabla_s, inner(h.dalpha, h.xi),
                                    exec);
}

double max_column_norm(const Operator& op, const Operator& basis) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < basis.cols(); ++i)
    best = std::max(best, (op * basis.col(i)).norm());
  return best;
}

double reeb_parallel_residual(const HypersurfaceData& h, Execution exec) {
  return max_column_norm(reeb_derivative_operator(h, exec), h.tangent_basis);
}

double isometric_flow_defect(const HypersurfaceData& h) {
  return max_column_norm(h.phi * h.S - h.S * h.phi, h.tangent_basis);
}

Operator hopf_identity_form(const HypersurfaceData& h) {
  require_hopf(h, "hopf_identity_residual");
  const Operator& E = h.tangent_basis;
  const Operator& S = h.S;
  const Operator& phi = h.phi;
  const Operator core =
      2.0 * S * phi * S - h.alpha * (phi * S + S * phi) - 2.0 * phi;
  // Bilinear form F(X, Y) stored as F(row X, column Y) = X^T M Y.
  Operator form = E.transpose() * core.transpose() * E;
  const Vector an = E.transpose() * (h.A * h.N);
  const Vector axi = E.transpose() * h.split.Axi;
  const Vector j_axi = E.transpose() * (h.model.J().transpose() * h.split.Axi);
  const Vector eta = E.transpose() * h.xi;
  const double c = inner(h.xi, h.split.Axi);
  form += an * axi.transpose() - axi * an.transpose();
  form += -axi * j_axi.transpose() + j_axi * axi.transpose();
  form += -2.0 * c * an * eta.transpose() + 2.0 * c * eta * an.transpose();
  return form;
}

double hopf_identity_residual(const HypersurfaceData& h) {
  return max_abs(hopf_identity_form(h));
}

double alpha_gradient_residual(const HypersurfaceData& h) {
  const Operator& E = h.tangent_basis;
  const double xi_alpha = inner(h.dalpha, h.xi);
  const Vector an = h.A * h.N;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < E.cols(); ++i) {
    const Vector x = E.col(i);
    const double defect = inner(h.dalpha, x) - xi_alpha * h.eta(x) -
                          2.0 * h.split.gAxixi * inner(x, an);
    worst = std::max(worst, std::abs(defect));
  }
  return worst;
}

}  // namespace quadric
