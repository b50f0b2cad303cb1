#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quadric/linalg.hpp"
#include "quadric/parallel.hpp"

namespace quadric {

struct EigenCluster {
  double value = 0.0;  // mean of the clustered eigenvalues
  std::size_t multiplicity = 0;
};

/// Eigen-decomposition of a self-adjoint operator.
struct SpectrumReport {
  std::vector<double> eigenvalues;     // ascending
  std::vector<EigenCluster> clusters;  // ascending, width 10 * tol
  Operator eigenvectors;               // orthonormal columns, same order
  double reconstruction_residual = 0.0;  // max |op - Q diag Q^T|
  double asymmetry = 0.0;                // measured on the input
  int sweeps = 0;
  bool converged = false;
  double tol = 0.0;

  std::string describe() const;  // "{0 (3), 1 (4), 4 (1)}"
};

struct JacobiOptions {
  double tol = 1e-12;
  int max_sweeps = 100;
  Execution exec = Execution::serial;
};

struct JacobiResult {
  Vector eigenvalues;  // unsorted, diagonal of the rotated matrix
  Operator eigenvectors;
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic-by-row Jacobi. Reference implementation.
JacobiResult jacobi_cyclic(const Operator& sym, double tol, int max_sweeps);

/// Round-robin (tournament) ordering: each step rotates n/2 disjoint pairs,
/// whose row and column updates run in parallel under Execution::parallel.
JacobiResult jacobi_round_robin(const Operator& sym, double tol, int max_sweeps,
                                Execution exec);

/// Groups ascending eigenvalues whose gap to the cluster's first member is
/// at most `width`.
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& sorted,
                                              double width);

/// Throws GeometryError(not_self_adjoint) if the asymmetry of `op` exceeds
/// tol * max(1, max|op|).
SpectrumReport sym_eigen(const Operator& op, double tol = 1e-12);
SpectrumReport sym_eigen(const Operator& op, const JacobiOptions& options);

/// True when both cluster lists have equal length, equal multiplicities and
/// values agreeing to rel_tol * max(1, |expected|).
bool clusters_match(const std::vector<EigenCluster>& got,
                    const std::vector<EigenCluster>& expected, double rel_tol);

/// Largest |got_i - expected_i| after expanding both lists by multiplicity;
/// +inf if the total multiplicities differ.
double spectrum_distance(const std::vector<double>& sorted_got,
                         const std::vector<EigenCluster>& expected);

}  // namespace quadric
