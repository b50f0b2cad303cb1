#pragma once

// Residual suites behind the verify/scan commands.

#include <cstdint>

#include "quadric/model_spaces.hpp"
#include "quadric/report.hpp"

namespace quadric {

/// Structure of the tangent model, curvature symmetries over `instances`
/// random inputs, and both singular Jacobi spectra (eigenvalues to `tol`,
/// multiplicities exact).
CheckReport ambient_suite(int m, double tol, std::uint64_t seed, int instances = 100,
                          Execution exec = Execution::serial);

/// Per-radius tube identities: spectra, Hopf identity, S A xi = S A N = 0,
/// S phi = phi S, nabla_xi S = 0, Reeb parallel R_xi and the curvature pairing.
CheckReport tube_suite(const TubeModel& tube, double spectrum_tol = 1e-10);

struct TubeScan {
  CheckReport report;  // worst residual per check over all radii
  RadiusGrid grid;
  std::vector<CheckReport> points;
};

TubeScan scan_tube(int k, const RadiusGrid& grid, double spectrum_tol = 1e-10,
                   const TubeOptions& options = {}, Execution exec = Execution::serial);

/// Relative deviation of a sorted spectrum from a template (inf when the
/// total multiplicity differs).
double relative_spectrum_distance(const std::vector<double>& sorted,
                                  const std::vector<EigenCluster>& expected);

}  // namespace quadric
