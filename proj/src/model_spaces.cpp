#include "quadric/model_spaces.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "quadric/error.hpp"

namespace quadric {
namespace {

constexpr double kPi = std::numbers::pi;

Operator span_projector(const Operator& columns) {
  return columns * columns.transpose();
}

std::vector<EigenCluster> merge_template(std::vector<EigenCluster> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const EigenCluster& a, const EigenCluster& b) { return a.value < b.value; });
  std::vector<EigenCluster> merged;
  for (const auto& e : entries) {
    if (e.multiplicity == 0) continue;
    if (!merged.empty() && std::abs(merged.back().value - e.value) <= 1e-12)
      merged.back().multiplicity += e.multiplicity;
    else
      merged.push_back(e);
  }
  return merged;
}

void check_tube_invariants(const TubeModel& t) {
  const HypersurfaceData& h = t.h;
  const Operator& A = h.A;
  const auto angle = canonical_angle(h.model, h.N);
  const double s_axi = (h.S * h.split.Axi).norm();
  const double s_an = (h.S * (A * h.N)).norm();
  const double commutator = max_abs(h.S * h.phi - h.phi * h.S);
  if (angle.type != SingularType::isotropic || !h.hopf || s_axi > 1e-12 ||
      s_an > 1e-12 || commutator > 1e-12) {
    std::ostringstream msg;
    msg << "tube construction violated its invariants (|S A xi| = " << s_axi
        << ", |S A N| = " << s_an << ", |S phi - phi S| = " << commutator << ")";
    throw std::logic_error(msg.str());
  }
}

}  // namespace

TubeModel build_tube(int k, double r, const TubeOptions& options) {
  if (k < 2 || 2 * k > kMaxComplexDimension) {
    std::ostringstream msg;
    msg << "tube requires 2 <= k <= " << kMaxComplexDimension / 2 << ", got k = " << k;
    throw GeometryError(ErrorKind::invalid_dimension, msg.str());
  }
  if (!(r > 0.0 && r < kPi / 2)) {
    std::ostringstream msg;
    msg << "radius r = " << r << " outside (0, pi/2)";
    throw GeometryError(ErrorKind::invalid_radius, msg.str());
  }
  if (options.non_vanishing && std::abs(r - kPi / 4) <= 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "radius r = " << r
        << " is the excluded value pi/4 (alpha = 0); admissible radii are "
           "(0, pi/4) U (pi/4, pi/2)";
    throw GeometryError(ErrorKind::invalid_radius, msg.str());
  }

  const TangentModel model(2 * k);
  const int n = model.dim();
  const double root_half = std::sqrt(0.5);
  const Vector N = root_half * (model.Z(1) + model.JZ(2));
  const Vector xi = root_half * (model.Z(2) - model.JZ(1));
  const double alpha = 2.0 / std::tan(2.0 * r);

  TubeModel tube;
  tube.k = k;
  tube.r = r;
  tube.variant = options.variant;
  tube.w1.resize(n, 2 * k - 2);
  tube.w2.resize(n, 2 * k - 2);
  for (int i = 0; i < k - 1; ++i) {
    if (options.variant == TubeVariant::a_invariant) {
      tube.w1.col(2 * i) = model.Z(3 + i);
      tube.w1.col(2 * i + 1) = model.JZ(3 + i);
      tube.w2.col(2 * i) = model.Z(k + 2 + i);
      tube.w2.col(2 * i + 1) = model.JZ(k + 2 + i);
    } else {
      const int a = 3 + i;
      const int b = k + 2 + i;
      tube.w1.col(2 * i) = root_half * (model.Z(a) + model.JZ(b));
      tube.w1.col(2 * i + 1) = root_half * (model.JZ(a) - model.Z(b));
      tube.w2.col(2 * i) = root_half * (model.Z(a) - model.JZ(b));
      tube.w2.col(2 * i + 1) = root_half * (model.JZ(a) + model.Z(b));
    }
  }
  const Operator S = alpha * xi * xi.transpose() - std::tan(r) * span_projector(tube.w1) +
                     (1.0 / std::tan(r)) * span_projector(tube.w2);
  tube.h = induce_from_normal(model, N, S);
  check_tube_invariants(tube);
  return tube;
}

std::vector<EigenCluster> tube_shape_template(int k, double r) {
  const auto mult = static_cast<std::size_t>(2 * k - 2);
  return merge_template({{2.0 / std::tan(2.0 * r), 1},
                         {0.0, 2},
                         {-std::tan(r), mult},
                         {1.0 / std::tan(r), mult}});
}

std::vector<EigenCluster> tube_structure_jacobi_template(int k, double r) {
  const auto mult = static_cast<std::size_t>(2 * k - 2);
  const double t = std::tan(r);
  return merge_template({{0.0, 3}, {t * t, mult}, {1.0 / (t * t), mult}});
}

SpectrumReport tangent_spectrum(const HypersurfaceData& h, const Operator& op,
                                double tol) {
  return sym_eigen(restrict_to(op, h.tangent_basis), tol);
}

SpectrumReport tube_structure_jacobi_spectrum(const TubeModel& tube, double tol) {
  return tangent_spectrum(tube.h, structure_jacobi(tube.h), tol);
}

double paired_curvature(double alpha, double lambda) {
  return (alpha * lambda + 2.0) / (2.0 * lambda - alpha);
}

RadiusGrid radius_grid(double lo, double hi, int count) {
  RadiusGrid grid;
  for (int i = 0; i < count; ++i) {
    const double r = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    if (std::abs(r - kPi / 4) < kQuarterPiWindow)
      grid.skipped.push_back(r);
    else
      grid.radii.push_back(r);
  }
  return grid;
}

RadiusGrid default_radius_grid() { return radius_grid(0.05, kPi / 2 - 0.05, 20); }

HypersurfaceData perturbed_isotropic(int k, double r, std::mt19937_64& rng) {
  TubeModel tube = build_tube(k, r);
  const TangentModel& model = tube.h.model;
  const int m = model.m();
  const int d = m - 2;  // complex dimension of the invariant subspace
  const double alpha = tube.alpha();

  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = {gauss(rng), gauss(rng)};
  const Eigen::MatrixXcd unitary = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();

  std::uniform_real_distribution<double> curvature(-3.0, 3.0);
  const Vector& xi = tube.h.xi;
  Operator S = alpha * xi * xi.transpose();
  for (int j = 0; j < d; ++j) {
    Vector v = Vector::Zero(model.dim());
    for (int i = 0; i < d; ++i) {
      v += unitary(i, j).real() * model.Z(3 + i) + unitary(i, j).imag() * model.JZ(3 + i);
    }
    double lambda = curvature(rng);
    while (std::abs(2.0 * lambda - alpha) < 0.2) lambda = curvature(rng);
    const Vector jv = model.J() * v;
    S += lambda * v * v.transpose() +
         paired_curvature(alpha, lambda) * jv * jv.transpose();
  }
  return induce_from_normal(model, tube.h.N, S);
}

PrincipalCandidate build_principal_candidate(int m, double alpha,
                                             const std::vector<double>& spectrum_on_c) {
  if (alpha == 0.0)
    throw GeometryError(ErrorKind::vanishing_reeb_curvature,
                        "principal candidates require non-vanishing Reeb curvature");
  const TangentModel model(m);
  const auto d = static_cast<std::size_t>(2 * m - 2);
  if (spectrum_on_c.size() != d) {
    std::ostringstream msg;
    msg << "expected " << d << " curvatures on C, got " << spectrum_on_c.size();
    throw GeometryError(ErrorKind::invalid_dimension, msg.str());
  }
  PrincipalCandidate c;
  c.m = m;
  c.alpha = alpha;
  c.frame.resize(model.dim(), static_cast<Eigen::Index>(d));
  for (int j = 2; j <= m; ++j) {
    c.frame.col(j - 2) = model.Z(j);
    c.frame.col(m - 1 + j - 2) = model.JZ(j);
  }
  const Vector N = model.Z(1);
  const Vector xi = -(model.J() * N);
  Operator S = alpha * xi * xi.transpose();
  for (std::size_t i = 0; i < d; ++i) {
    const Vector f = c.frame.col(static_cast<Eigen::Index>(i));
    S += spectrum_on_c[i] * f * f.transpose();
  }
  c.h = induce_from_normal(model, N, S);
  c.conjugation_block = restrict_to(c.h.A, c.frame);
  return c;
}

std::vector<double> lemma_pairing_spectrum(double alpha, const std::vector<double>& lambdas) {
  std::vector<double> out(lambdas);
  for (double lambda : lambdas) out.push_back(paired_curvature(alpha, lambda));
  return out;
}

std::vector<double> reeb_parallel_principal_spectrum(int m, double alpha) {
  // 2c^2 + (12/alpha - 2 alpha) c - 8 = 0; the discriminant is always positive.
  const double b = 12.0 / alpha - 2.0 * alpha;
  const double c = (-b + std::sqrt(b * b + 64.0)) / 4.0;
  const double a = c + 6.0 / alpha;
  std::vector<double> out(static_cast<std::size_t>(m - 1), a);
  out.insert(out.end(), static_cast<std::size_t>(m - 1), c);
  return out;
}

PrincipalCandidate impose_identity_conjugation(PrincipalCandidate candidate) {
  const auto d = candidate.frame.cols();
  candidate.conjugation_block = Operator::Identity(d, d);
  candidate.a_identity_imposed = true;
  return candidate;
}

}  // namespace quadric
