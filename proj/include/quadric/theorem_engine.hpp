#pragma once

// Derived-equation chain for A-principal normals, the pointwise
// nonexistence certificate, and classification of Reeb-parallel data.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "quadric/model_spaces.hpp"
#include "quadric/report.hpp"

namespace quadric {

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

enum class ChainVerdict { consistent, contradiction };

struct ChainReport {
  // In chain order:
  //   reeb_parallel            (nabla_xi R_xi)Y = 0, rearranged
  //   reeb_shape_derivative    (nabla_xi S)Y = 2 phi A Y
  //   codazzi_reduction        alpha phi S Y - S phi S Y + phi Y = 3 phi A Y
  //   hopf_principal           2 S phi S Y = alpha (S phi + phi S) Y + 2 phi Y
  //   commutator               alpha (phi S - S phi) Y = 6 phi A Y
  //   phi_conjugate_quadratic  alpha^2 phi S phi X = -2 alpha S^2 X + alpha^2 S X
  //                              + 2 alpha X + 12 S X
  //   quadratic                3 alpha A X + alpha S^2 X - alpha^2 S X - alpha X - 6 S X = 0
  //   conjugated_quadratic     3 alpha X + alpha S^2 X - alpha^2 S X - alpha A X - 6 S X = 0
  //   shape_conjugation        A S Y = S Y - 2 alpha eta(Y) xi
  std::vector<NamedResidual> residuals;
  double conjugation_defect = 0.0;  // |A|C - Id|_F
  double trace_on_c = 0.0;          // trace(A|C)
  double required_trace = 0.0;      // trace(A) - g(A xi, xi) - g(A N, N)
  ChainVerdict verdict = ChainVerdict::consistent;
  std::string reason;

  double residual(const std::string& name) const;
};

/// Evaluates every chain equation as max_i |E Y_i| over the frame of C
/// (the shape-conjugation relation over all of TM). The conjugation used is
/// the candidate's block on C extended by A xi = -xi, AN = N.
ChainReport principal_chain_residuals(const PrincipalCandidate& candidate,
                                      double tol = 1e-10);

/// A applied to the quadratic relation, with A S rewritten through the
/// shape-conjugation relation, minus the conjugated relation. Vanishes
/// identically on C for Hopf data.
double conjugation_step_residual(const PrincipalCandidate& candidate);

struct QuadraticPairSolution {
  Operator conjugation;   // unique solution for A|C, in the canonical frame of C
  Operator shape_term;    // alpha S^2 - (alpha^2 + 6) S on C
  int rank_deficiency = 0;
  double defect = 0.0;    // |A - Id|_F
};

/// Solves the pair {quadratic, conjugated_quadratic} as a linear system in
/// the unknowns (A|C, alpha S^2 - (alpha^2 + 6) S) expressed in `frame`
/// (orthonormal d x d). Entries decouple into 2x2 systems of determinant
/// 4 alpha.
QuadraticPairSolution solve_quadratic_pair(int m, double alpha, const Operator& frame,
                                           Execution exec = Execution::serial);

/// Certificate that the chain is infeasible for A-principal normals:
/// for every alpha the pair forces A|C = Id, so trace(A|C) = 2m - 2 while
/// the structure requires 0. Throws for m < 3 or alpha = 0.
CheckReport principal_nonexistence_certificate(int m, const std::vector<double>& alphas,
                                               std::uint64_t seed,
                                               Execution exec = Execution::serial);

/// Nonzero alphas drawn uniformly from +-[0.1, 5].
std::vector<double> sample_alphas(std::size_t count, std::uint64_t seed);

enum class Verdict { nonexistent, tube, outside_hypotheses };

const char* to_string(Verdict verdict);

struct ClassificationResult {
  SingularType type = SingularType::generic;
  double canonical_t = 0.0;
  bool hopf = false;
  double alpha = 0.0;
  double hopf_identity_residual = std::numeric_limits<double>::quiet_NaN();
  double reeb_residual = std::numeric_limits<double>::quiet_NaN();  // NaN if not reached
  Verdict verdict = Verdict::outside_hypotheses;
  int k = 0;
  double r = 0.0;
  std::string reason;

  /// "tube k=2 r=0.600000", "nonexistent: ..." or "outside hypotheses: ...".
  std::string describe() const;
};

ClassificationResult classify(const HypersurfaceData& h, double tol = 1e-9);

/// r in (0, pi/2) with 2 cot(2r) = alpha.
double radius_from_reeb_curvature(double alpha);

}  // namespace quadric
