#include "quadric/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace quadric {
namespace {

Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

std::mt19937_64 stream(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
  return std::mt19937_64(seq);
}

void add_spectrum_checks(CheckReport& report, const std::string& name,
                         const SpectrumReport& got,
                         const std::vector<EigenCluster>& expected, double tol) {
  report.expect_below(name + ".eigenvalues",
                      relative_spectrum_distance(got.eigenvalues, expected), tol);
  report.expect_below(name + ".multiplicities",
                      clusters_match(got.clusters, expected, tol) ? 0.0 : 1.0, 0.5);
}

}  // namespace

double relative_spectrum_distance(const std::vector<double>& sorted,
                                  const std::vector<EigenCluster>& expected) {
  std::vector<double> flat;
  for (const auto& c : expected) flat.insert(flat.end(), c.multiplicity, c.value);
  std::sort(flat.begin(), flat.end());
  if (flat.size() != sorted.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i)
    worst = std::max(worst, std::abs(flat[i] - sorted[i]) / std::max(1.0, std::abs(flat[i])));
  return worst;
}

CheckReport ambient_suite(int m, double tol, std::uint64_t seed, int instances,
                          Execution exec) {
  const TangentModel model(m);
  const int n = model.dim();
  const Operator I = Operator::Identity(n, n);
  const Operator& J = model.J();
  const Operator& A = model.A();

  CheckReport report;
  report.command = "verify ambient";
  report.seed = seed;
  report.params["m"] = m;
  report.params["tol"] = tol;
  report.params["instances"] = instances;

  report.expect_below("J_squared_plus_identity", max_abs(J * J + I), 1e-12);
  report.expect_below("A_squared_minus_identity", max_abs(A * A - I), 1e-12);
  report.expect_below("AJ_plus_JA", max_abs(A * J + J * A), 1e-12);
  report.expect_below("A_self_adjoint", asymmetry(A), 1e-12);
  report.expect_below("J_isometry", max_abs(J.transpose() * J - I), 1e-12);
  report.expect_below("A_isometry", max_abs(A.transpose() * A - I), 1e-12);
  report.expect_below("trace_A", std::abs(A.trace()), 1e-12);

  double family = 0.0;
  for (int i = 0; i < 16; ++i) {
    const Operator a = rotate_conjugation(model, 2.0 * std::numbers::pi * i / 16);
    family = std::max({family, max_abs(a * a - I), max_abs(a * J + J * a)});
  }
  report.expect_below("conjugation_family", family, 1e-14);

  struct Sample {
    double bianchi = 0, skew = 0, jacobi_sym = 0, jacobi_kills = 0, angle_invariance = 0;
  };
  const auto samples = map_indices<Sample>(
      exec, static_cast<std::size_t>(instances), [&](std::size_t i) {
        auto rng = stream(seed, i);
        const Vector x = random_vector(n, rng), y = random_vector(n, rng);
        const Vector z = random_vector(n, rng), w = random_vector(n, rng);
        Vector u = random_vector(n, rng);
        u.normalize();
        Sample s;
        s.bianchi = (ambient_curvature(model, x, y, z) + ambient_curvature(model, y, z, x) +
                     ambient_curvature(model, z, x, y))
                        .cwiseAbs()
                        .maxCoeff();
        s.skew = std::abs(inner(ambient_curvature(model, x, y, z), w) +
                          inner(ambient_curvature(model, x, y, w), z));
        const Operator ru = ambient_jacobi(model, u);
        s.jacobi_sym = asymmetry(ru);
        s.jacobi_kills = (ru * u).norm();
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        const double theta = angle(rng);
        s.angle_invariance =
            std::abs(canonical_angle(model, u).t -
                     canonical_angle(model, rotate_conjugation(model, theta), u).t);
        return s;
      });
  auto worst = [&](double Sample::*field) {
    double w = 0.0;
    for (const auto& s : samples) w = std::max(w, s.*field);
    return w;
  };
  report.expect_below("first_bianchi", worst(&Sample::bianchi), 1e-12);
  report.expect_below("curvature_skew", worst(&Sample::skew), 1e-12);
  report.expect_below("jacobi_self_adjoint", worst(&Sample::jacobi_sym), 1e-12);
  report.expect_below("jacobi_annihilates_U", worst(&Sample::jacobi_kills), 1e-12);
  report.expect_below("canonical_angle_conjugation_invariance",
                      worst(&Sample::angle_invariance), 1e-10);

  const auto mm = static_cast<std::size_t>(m);
  const Vector principal = model.Z(1);
  const SpectrumReport ps = sym_eigen(ambient_jacobi(model, principal));
  add_spectrum_checks(report, "principal_spectrum", ps, {{0.0, mm}, {2.0, mm}}, tol);
  report.expect_below("principal_trace",
                      std::abs(ambient_jacobi(model, principal).trace() - 2.0 * m), 1e-12);
  report.expect_below("principal_angle", canonical_angle(model, principal).t, kSingularAngleTol);
  if (m >= 2) {
    const Vector iso = std::sqrt(0.5) * (model.Z(1) + model.JZ(2));
    const Operator ri = ambient_jacobi(model, iso);
    std::vector<EigenCluster> expected{{0.0, 3}};
    if (m > 2) expected.push_back({1.0, 2 * mm - 4});
    expected.push_back({4.0, 1});
    add_spectrum_checks(report, "isotropic_spectrum", sym_eigen(ri), expected, tol);
    report.expect_below("isotropic_trace", std::abs(ri.trace() - 2.0 * m), 1e-12);
    report.expect_below("isotropic_angle",
                        std::abs(canonical_angle(model, iso).t - std::numbers::pi / 4),
                        kSingularAngleTol);
  }
  return report;
}

CheckReport tube_suite(const TubeModel& tube, double spectrum_tol) {
  const HypersurfaceData& h = tube.h;
  const Operator& A = h.A;
  const double r = tube.r;
  const double alpha = h.alpha;

  CheckReport report;
  report.command = "verify tube";
  report.params["k"] = tube.k;
  report.params["r"] = r;
  report.params["variant"] =
      tube.variant == TubeVariant::a_invariant ? "a-invariant" : "a-swapped";

  const auto angle = canonical_angle(h.model, h.N);
  report.expect_below("normal_isotropic", std::abs(angle.t - std::numbers::pi / 4),
                      kSingularAngleTol);
  report.expect_below("isotropic_products",
                      std::max({std::abs(h.split.gAxixi),
                                std::abs(inner(h.split.Axi, h.N)),
                                std::abs(inner(A * h.N, h.N))}),
                      1e-13);
  report.expect_below("hopf", h.hopf_defect, 1e-12);
  report.expect_below("reeb_curvature",
                      std::abs(alpha - 2.0 / std::tan(2.0 * r)) /
                          std::max(1.0, std::abs(alpha)),
                      1e-12);
  add_spectrum_checks(report, "shape_spectrum", tangent_spectrum(h, h.S),
                      tube_shape_template(tube.k, r), spectrum_tol);
  report.expect_below("hopf_identity", hopf_identity_residual(h), 1e-11);
  report.expect_below("alpha_gradient", alpha_gradient_residual(h), 1e-12);
  report.expect_below("S_A_xi", (h.S * h.split.Axi).norm(), 1e-12);
  report.expect_below("S_A_N", (h.S * (A * h.N)).norm(), 1e-12);
  report.expect_below("isometric_reeb_flow", max_abs(h.S * h.phi - h.phi * h.S), 1e-12);
  report.expect_below("nabla_xi_S", max_column_norm(nabla_S_at_xi_operator(h), h.tangent_basis),
                      1e-11);
  report.expect_below("reeb_parallel", reeb_parallel_residual(h), 1e-11);

  const double cot = 1.0 / std::tan(r), tan = std::tan(r);
  report.expect_below("pairing_fixes_cot",
                      std::abs(paired_curvature(alpha, cot) - cot) / std::max(1.0, cot), 1e-12);
  report.expect_below("pairing_fixes_minus_tan",
                      std::abs(paired_curvature(alpha, -tan) + tan) / std::max(1.0, tan), 1e-12);
  report.expect_above("pairing_nondegenerate",
                      std::min(std::abs(2.0 * cot - alpha), std::abs(-2.0 * tan - alpha)),
                      1e-12);

  const Operator rxi = structure_jacobi(h);
  report.expect_below("structure_jacobi_self_adjoint", asymmetry(rxi), 1e-12);
  report.expect_below("structure_jacobi_annihilates_xi", (rxi * h.xi).norm(), 1e-12);
  add_spectrum_checks(report, "structure_jacobi_spectrum", tube_structure_jacobi_spectrum(tube),
                      tube_structure_jacobi_template(tube.k, r), spectrum_tol);
  return report;
}

TubeScan scan_tube(int k, const RadiusGrid& grid, double spectrum_tol,
                   const TubeOptions& options, Execution exec) {
  TubeScan scan;
  scan.grid = grid;
  scan.points = map_indices<CheckReport>(exec, grid.radii.size(), [&](std::size_t i) {
    return tube_suite(build_tube(k, grid.radii[i], options), spectrum_tol);
  });

  CheckReport& report = scan.report;
  report.command = "scan tube";
  report.params["k"] = k;
  report.params["points"] = grid.radii.size();
  report.params["skipped"] = grid.skipped;
  if (!scan.points.empty()) {
    // Same check list at every radius; keep the worst.
    report.checks = scan.points.front().checks;
    for (const auto& point : scan.points) {
      for (std::size_t c = 0; c < point.checks.size(); ++c) {
        Check& agg = report.checks[c];
        const Check& cur = point.checks[c];
        agg.residual = agg.lower_bound ? std::min(agg.residual, cur.residual)
                                       : std::max(agg.residual, cur.residual);
        agg.pass = agg.pass && cur.pass;
      }
    }
  }
  Json failures = Json::array();
  for (std::size_t i = 0; i < scan.points.size(); ++i)
    if (!scan.points[i].all_passed()) failures.push_back(grid.radii[i]);
  report.result["radii"] = grid.radii;
  report.result["failing_radii"] = std::move(failures);
  return scan;
}

}  // namespace quadric
