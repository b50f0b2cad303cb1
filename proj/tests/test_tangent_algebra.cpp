#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "quadric/error.hpp"
#include "quadric/tangent_algebra.hpp"
#include "support.hpp"

using namespace quadric;
using namespace quadric::testing;

namespace {

// max over a fine theta grid, refined by golden-section search, of
// g(A_theta U, U); the canonical angle is half the arccos of the maximum.
double angle_by_search(const TangentModel& model, const Vector& u) {
  auto f = [&](double th) { return inner(rotate_conjugation(model, th) * u, u); };
  int best = 0;
  const int grid = 720;
  for (int i = 1; i < grid; ++i)
    if (f(2 * std::numbers::pi * i / grid) > f(2 * std::numbers::pi * best / grid)) best = i;
  double lo = 2 * std::numbers::pi * (best - 1) / grid, hi = 2 * std::numbers::pi * (best + 1) / grid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    (f(a) > f(b) ? hi : lo) = (f(a) > f(b) ? b : a);
  }
  return 0.5 * std::acos(std::clamp(f(0.5 * (lo + hi)), -1.0, 1.0));
}

}  // namespace

TEST_CASE("tangent model structure") {
  for (int m = 1; m <= 8; ++m) {
    const TangentModel model(m);
    const int n = 2 * m;
    const Operator I = Operator::Identity(n, n);
    CHECK(max_abs(model.J() * model.J() + I) == 0.0);
    CHECK(max_abs(model.A() * model.A() - I) == 0.0);
    CHECK(max_abs(model.A() * model.J() + model.J() * model.A()) == 0.0);
    CHECK(model.A().trace() == 0.0);
    CHECK(max_abs(model.JA() - model.J() * model.A()) == 0.0);
    for (int i = 1; i <= m; ++i) {
      CHECK((model.A() * model.Z(i) - model.Z(i)).norm() == 0.0);
      CHECK((model.A() * model.JZ(i) + model.JZ(i)).norm() == 0.0);
      CHECK((model.J() * model.Z(i) - model.JZ(i)).norm() == 0.0);
    }
  }
}

TEST_CASE("dimension bounds") {
  CHECK_THROWS_AS(TangentModel(0), GeometryError);
  CHECK_THROWS_AS(TangentModel(65), GeometryError);
  CHECK_NOTHROW(TangentModel(64));
}

TEST_CASE("conjugation family") {
  const TangentModel model(3);
  const Operator I = Operator::Identity(6, 6);
  for (double th : {0.3, 1.0, 2.5, 4.0}) {
    const Operator a = rotate_conjugation(model, th);
    CHECK(max_abs(a * a - I) < 1e-15);
    CHECK(max_abs(a * model.J() + model.J() * a) < 1e-15);
    CHECK(asymmetry(a) < 1e-15);
  }
  CHECK(max_abs(rotate_conjugation(model, std::numbers::pi / 2) - model.JA()) < 1e-15);
}

TEST_CASE("canonical angle agrees with a direct search over the conjugation family") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const TangentModel model(3 + trial % 4);
    const Vector u = random_unit(model.dim(), rng);
    CHECK(canonical_angle(model, u).t == doctest::Approx(angle_by_search(model, u)).epsilon(1e-7));
  }
}

TEST_CASE("canonical angle recovers constructed angles and singular types") {
  std::mt19937_64 rng(4);
  const TangentModel model(4);
  for (double t : {0.0, 0.1, 0.4, 0.7, std::numbers::pi / 4}) {
    const Vector u = vector_at_angle(model, t, rng);
    const CanonicalAngle got = canonical_angle(model, u);
    CHECK(got.t == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(canonical_angle(model, vector_at_angle(model, 0.0, rng)).type == SingularType::principal);
  CHECK(canonical_angle(model, vector_at_angle(model, std::numbers::pi / 4, rng)).type ==
        SingularType::isotropic);
  CHECK(canonical_angle(model, vector_at_angle(model, 0.3, rng)).type == SingularType::generic);
  // Near-principal vectors keep full relative accuracy.
  CHECK(canonical_angle(model, vector_at_angle(model, 1e-7, rng)).t ==
        doctest::Approx(1e-7).epsilon(1e-6));
}

TEST_CASE("ambient curvature symmetries") {
  std::mt19937_64 rng(8);
  for (int m = 3; m <= 6; ++m) {
    const TangentModel model(m);
    for (int i = 0; i < 20; ++i) {
      const Vector x = random_vector(2 * m, rng), y = random_vector(2 * m, rng);
      const Vector z = random_vector(2 * m, rng), w = random_vector(2 * m, rng);
      auto R = [&](const Vector& a, const Vector& b, const Vector& c) {
        return ambient_curvature(model, a, b, c);
      };
      CHECK((R(x, y, z) + R(y, x, z)).norm() < 1e-12);
      CHECK((R(x, y, z) + R(y, z, x) + R(z, x, y)).norm() < 1e-12);
      CHECK(std::abs(inner(R(x, y, z), w) - inner(R(z, w, x), y)) < 1e-11);
      CHECK(std::abs(inner(R(x, y, z), w) + inner(R(x, y, w), z)) < 1e-11);
      // Kähler: R(X,Y) commutes with J.
      CHECK((R(x, y, model.J() * z) - model.J() * R(x, y, z)).norm() < 1e-12);
    }
  }
}

TEST_CASE("sectional curvature lies in [0, 4]") {
  std::mt19937_64 rng(12);
  const TangentModel model(4);
  for (int i = 0; i < 200; ++i) {
    Vector x = random_unit(8, rng);
    Vector y = random_vector(8, rng);
    y = (y - inner(x, y) * x).normalized();
    const double k = inner(ambient_curvature(model, y, x, x), y);
    CHECK(k >= -1e-12);
    CHECK(k <= 4.0 + 1e-12);
  }
}

TEST_CASE("singular Jacobi spectra") {
  for (int m = 3; m <= 8; ++m) {
    const TangentModel model(m);
    const auto mm = static_cast<std::size_t>(m);
    const auto principal = sym_eigen(ambient_jacobi(model, model.Z(1)));
    CHECK(clusters_match(principal.clusters, {{0.0, mm}, {2.0, mm}}, 1e-10));
    const Vector iso = std::sqrt(0.5) * (model.Z(1) + model.JZ(2));
    const auto isotropic = sym_eigen(ambient_jacobi(model, iso));
    CHECK(clusters_match(isotropic.clusters, {{0.0, 3}, {1.0, 2 * mm - 4}, {4.0, 1}}, 1e-10));
  }
}

TEST_CASE("singular Jacobi spectra are invariant under the symmetry group") {
  std::mt19937_64 rng(13);
  const TangentModel model(5);
  for (int i = 0; i < 10; ++i) {
    const auto p = sym_eigen(ambient_jacobi(model, vector_at_angle(model, 0.0, rng)));
    CHECK(clusters_match(p.clusters, {{0.0, 5}, {2.0, 5}}, 1e-10));
    const auto q =
        sym_eigen(ambient_jacobi(model, vector_at_angle(model, std::numbers::pi / 4, rng)));
    CHECK(clusters_match(q.clusters, {{0.0, 3}, {1.0, 6}, {4.0, 1}}, 1e-10));
  }
}

TEST_CASE("Jacobi operator eigenvalues match inertia bisection for generic U") {
  std::mt19937_64 rng(14);
  const TangentModel model(4);
  const Operator r = ambient_jacobi(model, random_unit(8, rng));
  const auto oracle = bisection_eigenvalues(r);
  const auto got = sym_eigen(r).eigenvalues;
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
}

TEST_CASE("Jacobi operator requires a unit vector") {
  const TangentModel model(3);
  try {
    ambient_jacobi(model, 2.0 * model.Z(1));
    FAIL("expected throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::not_unit);
    CHECK(std::string(e.what()).find("|U| = 2") != std::string::npos);
  }
}
