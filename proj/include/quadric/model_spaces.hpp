#pragma once

// Model hypersurfaces realized as pointwise data: the tube T_A of radius r
// around a totally geodesic CP^k in Q^{2k}, Hopf data with isotropic normal
// obtained by perturbing the tube spectrum, and A-principal Hopf candidates.

#include <cstdint>
#include <random>
#include <vector>

#include "quadric/hypersurface.hpp"
#include "quadric/spectrum.hpp"

namespace quadric {

/// Half-width of the window around pi/4 that grids skip.
inline constexpr double kQuarterPiWindow = 0.01;

enum class TubeVariant {
  a_invariant,  // W_1 = C{Z_3..Z_{k+1}}, W_2 = C{Z_{k+2}..Z_{2k}}
  a_swapped,    // A W_1 = W_2
};

struct TubeOptions {
  bool non_vanishing = true;  // reject r = pi/4 (alpha = 0)
  TubeVariant variant = TubeVariant::a_invariant;
};

struct TubeModel {
  int k = 0;
  double r = 0.0;
  TubeVariant variant = TubeVariant::a_invariant;
  HypersurfaceData h;
  Operator w1;  // orthonormal columns spanning W_1
  Operator w2;
  double alpha() const { return h.alpha; }
};

/// Throws invalid_dimension for k < 2 (or 2k > 64) and invalid_radius for
/// r outside (0, pi/2) or r = pi/4 while non_vanishing is set.
TubeModel build_tube(int k, double r, const TubeOptions& options = {});

/// Principal curvatures on TM: {2cot(2r) (1), 0 (2), -tan r (2k-2), cot r (2k-2)},
/// merged and sorted.
std::vector<EigenCluster> tube_shape_template(int k, double r);
/// {0 (3), tan^2 r (2k-2), cot^2 r (2k-2)}, merged and sorted.
std::vector<EigenCluster> tube_structure_jacobi_template(int k, double r);

/// Spectrum of R_xi restricted to TM.
SpectrumReport tube_structure_jacobi_spectrum(const TubeModel& tube, double tol = 1e-12);

/// Spectrum of S (or any operator) restricted to TM.
SpectrumReport tangent_spectrum(const HypersurfaceData& h, const Operator& op,
                                double tol = 1e-12);

/// (alpha lambda + 2) / (2 lambda - alpha): the curvature paired with lambda
/// on phi X under the Hopf identity.
double paired_curvature(double alpha, double lambda);

/// `count` uniform radii in [lo, hi], minus |r - pi/4| < kQuarterPiWindow.
struct RadiusGrid {
  std::vector<double> radii;
  std::vector<double> skipped;
};
RadiusGrid radius_grid(double lo, double hi, int count);
/// 20 points in (0.05, pi/2 - 0.05).
RadiusGrid default_radius_grid();

/// Isotropic Hopf data with the tube's normal, alpha = 2cot(2r) and
/// S A xi = S A N = 0, whose curvatures on the invariant subspace come in
/// random pairs (lambda, paired_curvature(lambda)) over a random unitary
/// frame. The Hopf identity holds; S phi != phi S unless every lambda is a
/// fixed point of the pairing.
HypersurfaceData perturbed_isotropic(int k, double r, std::mt19937_64& rng);

struct PrincipalCandidate {
  int m = 0;
  double alpha = 0.0;
  HypersurfaceData h;
  /// Conjugation block used by the derived-equation chain, on C. Defaults
  /// to the model's A restricted to C.
  Operator conjugation_block;
  Operator frame;  // orthonormal basis of C, 2m x (2m-2)
  bool a_identity_imposed = false;
};

/// N = Z_1, xi = -JZ_1, S xi = alpha xi, and S|C diagonal in the frame
/// (Z_2..Z_m, JZ_2..JZ_m) with the given 2m-2 eigenvalues.
/// Throws vanishing_reeb_curvature for alpha = 0.
PrincipalCandidate build_principal_candidate(int m, double alpha,
                                             const std::vector<double>& spectrum_on_c);

/// Eigenvalue list pairing lambda_j on Z_{j+1} with paired_curvature on JZ_{j+1}.
std::vector<double> lemma_pairing_spectrum(double alpha, const std::vector<double>& lambdas);

/// Per complex line (Z_j, JZ_j): curvatures (a, c) with a - c = 6/alpha and
/// 2ac - alpha(a + c) - 2 = 0, so the pointwise Reeb-parallel equations hold.
std::vector<double> reeb_parallel_principal_spectrum(int m, double alpha);

/// Replaces the conjugation block by the identity on C.
PrincipalCandidate impose_identity_conjugation(PrincipalCandidate candidate);

}  // namespace quadric
