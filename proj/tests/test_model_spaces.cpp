#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "quadric/error.hpp"
#include "quadric/model_spaces.hpp"
#include "quadric/suites.hpp"
#include "support.hpp"

using namespace quadric;
using namespace quadric::testing;

TEST_CASE("tube principal curvatures from the explicit eigenvectors") {
  for (int k : {2, 3, 4}) {
    for (double r : {0.1, 0.5, 1.0, 1.4}) {
      const TubeModel tube = build_tube(k, r);
      const HypersurfaceData& h = tube.h;
      const double alpha = 2.0 / std::tan(2.0 * r);
      CHECK(h.alpha == doctest::Approx(alpha).epsilon(1e-14));
      CHECK((h.S * h.xi - alpha * h.xi).norm() < 1e-13);
      const Vector an = h.model.A() * h.N;
      CHECK((h.S * an).norm() < 1e-13);
      CHECK((h.S * h.split.Axi).norm() < 1e-13);
      for (int j = 0; j < tube.w1.cols(); ++j) {
        const Vector v = tube.w1.col(j);
        CHECK((h.S * v + std::tan(r) * v).norm() < 1e-12);
      }
      for (int j = 0; j < tube.w2.cols(); ++j) {
        const Vector v = tube.w2.col(j);
        CHECK((h.S * v - v / std::tan(r)).norm() < 1e-12);
      }
      CHECK(tube.w1.cols() == 2 * k - 2);
      CHECK(tube.w2.cols() == 2 * k - 2);
    }
  }
}

TEST_CASE("tube spectrum matches the inertia oracle and the template") {
  const TubeModel tube = build_tube(3, 0.45);
  const Operator restricted = restrict_to(tube.h.S, tube.h.tangent_basis);
  const auto oracle = bisection_eigenvalues(restricted);
  const SpectrumReport s = tangent_spectrum(tube.h, tube.h.S);
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK(s.eigenvalues[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
  CHECK(clusters_match(s.clusters, tube_shape_template(3, 0.45), 1e-10));
}

TEST_CASE("structure Jacobi spectrum of the tube") {
  for (int k : {2, 3, 4}) {
    for (double r : {0.2, 0.7, 1.3}) {
      const TubeModel tube = build_tube(k, r);
      const auto s = tube_structure_jacobi_spectrum(tube);
      const double t2 = std::pow(std::tan(r), 2);
      const auto kk = static_cast<std::size_t>(2 * k - 2);
      std::vector<EigenCluster> expected{{0.0, 3}, {t2, kk}, {1.0 / t2, kk}};
      std::sort(expected.begin(), expected.end(),
                [](auto& a, auto& b) { return a.value < b.value; });
      CHECK(clusters_match(s.clusters, expected, 1e-10));
    }
  }
}

TEST_CASE("both tube variants satisfy the identities") {
  for (auto variant : {TubeVariant::a_invariant, TubeVariant::a_swapped}) {
    TubeOptions opt;
    opt.variant = variant;
    for (double r : {0.3, 1.2}) {
      const CheckReport report = tube_suite(build_tube(3, r, opt));
      for (const auto& c : report.checks) {
        INFO(c.name, " residual ", c.residual);
        CHECK(c.pass);
      }
    }
  }
  TubeOptions swapped;
  swapped.variant = TubeVariant::a_swapped;
  const TubeModel t = build_tube(2, 0.5, swapped);
  // A exchanges W_1 and W_2.
  const Operator aw1 = t.h.model.A() * t.w1;
  CHECK(max_abs(t.w2 * (t.w2.transpose() * aw1) - aw1) < 1e-13);
}

TEST_CASE("tube radius validation") {
  CHECK_THROWS_AS(build_tube(2, 0.0), GeometryError);
  CHECK_THROWS_AS(build_tube(2, std::numbers::pi / 2), GeometryError);
  CHECK_THROWS_AS(build_tube(1, 0.5), GeometryError);
  try {
    build_tube(2, std::numbers::pi / 4);
    FAIL("expected throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::invalid_radius);
    CHECK(std::string(e.what()).find("0.785398") != std::string::npos);
  }
  TubeOptions allow;
  allow.non_vanishing = false;
  const TubeModel t = build_tube(2, std::numbers::pi / 4, allow);
  CHECK(std::abs(t.alpha()) < 1e-15);
}

TEST_CASE("pairing map") {
  for (double r : {0.2, 0.6, 1.1}) {
    const double alpha = 2.0 / std::tan(2.0 * r);
    CHECK(paired_curvature(alpha, 1.0 / std::tan(r)) == doctest::Approx(1.0 / std::tan(r)));
    CHECK(paired_curvature(alpha, -std::tan(r)) == doctest::Approx(-std::tan(r)));
    // Involution.
    CHECK(paired_curvature(alpha, paired_curvature(alpha, 0.37)) == doctest::Approx(0.37));
  }
}

TEST_CASE("radius grids skip the pi/4 window") {
  const RadiusGrid g = radius_grid(0.1, 1.5, 30);
  CHECK(g.radii.size() + g.skipped.size() == 30);
  CHECK(g.skipped.size() == 1);
  for (double r : g.radii) CHECK(std::abs(r - std::numbers::pi / 4) >= kQuarterPiWindow);
  const RadiusGrid d = default_radius_grid();
  CHECK(d.radii.size() + d.skipped.size() == 20);
  CHECK(d.radii.front() == doctest::Approx(0.05));
  CHECK(d.radii.back() == doctest::Approx(std::numbers::pi / 2 - 0.05));
}

TEST_CASE("perturbed isotropic data") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const HypersurfaceData h = perturbed_isotropic(2 + i % 3, 0.2 + 0.13 * i, rng);
    CHECK(canonical_angle(h.model, h.N).type == SingularType::isotropic);
    CHECK(h.hopf);
    CHECK(hopf_identity_residual(h) < 1e-10 * std::max(1.0, max_abs(h.S) * max_abs(h.S)));
    CHECK((h.S * h.split.Axi).norm() < 1e-12);
    CHECK((h.S * (h.model.A() * h.N)).norm() < 1e-12);
    CHECK(isometric_flow_defect(h) > 1e-6);
  }
}

TEST_CASE("principal candidate") {
  const PrincipalCandidate c = build_principal_candidate(3, 1.5, {1, 2, 3, 4});
  CHECK(canonical_angle(c.h.model, c.h.N).type == SingularType::principal);
  CHECK(c.h.hopf);
  CHECK(c.h.alpha == doctest::Approx(1.5));
  CHECK(c.frame.cols() == 4);
  CHECK(max_abs(c.frame.transpose() * c.frame - Operator::Identity(4, 4)) < 1e-15);
  CHECK_THROWS_AS(build_principal_candidate(3, 0.0, {1, 2, 3, 4}), GeometryError);
}

TEST_CASE("pairing spectrum satisfies the Hopf identity for principal normals") {
  const double alpha = 0.8;
  const auto spectrum = lemma_pairing_spectrum(alpha, {0.3, -2.0});
  const PrincipalCandidate c = build_principal_candidate(3, alpha, spectrum);
  CHECK(hopf_identity_residual(c.h) < 1e-12);
}

TEST_CASE("Reeb-parallel principal candidate is pointwise Reeb parallel") {
  for (double alpha : {-2.0, 0.5, 1.0, 3.0}) {
    const PrincipalCandidate c =
        build_principal_candidate(4, alpha, reeb_parallel_principal_spectrum(4, alpha));
    CHECK(hopf_identity_residual(c.h) < 1e-10);
    CHECK(reeb_parallel_residual(c.h) < 1e-10);
  }
}
