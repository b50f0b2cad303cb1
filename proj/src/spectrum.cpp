#include "quadric/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "quadric/error.hpp"

namespace quadric {
namespace {

double off_diagonal_norm(const Operator& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

struct Rotation {
  double c = 1.0;
  double s = 0.0;
  bool active = false;
};

// Classical Jacobi angle annihilating a(p,q).
Rotation rotation_for(const Operator& a, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return {};
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, true};
}

// a <- G^T a G, v <- v G for the plane rotation in (p, q).
void rotate_rows(Operator& a, Eigen::Index p, Eigen::Index q, Rotation r) {
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const double x = a(p, k);
    const double y = a(q, k);
    a(p, k) = r.c * x - r.s * y;
    a(q, k) = r.s * x + r.c * y;
  }
}

void rotate_cols(Operator& a, Eigen::Index p, Eigen::Index q, Rotation r) {
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const double x = a(k, p);
    const double y = a(k, q);
    a(k, p) = r.c * x - r.s * y;
    a(k, q) = r.s * x + r.c * y;
  }
}

double convergence_threshold(const Operator& a, double tol) {
  return tol * std::max(1.0, a.norm());
}

}  // namespace

JacobiResult jacobi_cyclic(const Operator& sym, double tol, int max_sweeps) {
  const Eigen::Index n = sym.rows();
  Operator a = sym;
  Operator v = Operator::Identity(n, n);
  JacobiResult out;
  const double threshold = convergence_threshold(a, tol);
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) {
      out.converged = true;
      out.sweeps = sweep;
      break;
    }
    if (sweep == max_sweeps) {
      out.sweeps = sweep;
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Rotation r = rotation_for(a, p, q);
        if (!r.active) continue;
        rotate_cols(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = a(q, p) = 0.0;
        rotate_cols(v, p, q, r);
      }
    }
  }
  out.eigenvalues = a.diagonal();
  out.eigenvectors = std::move(v);
  return out;
}

JacobiResult jacobi_round_robin(const Operator& sym, double tol, int max_sweeps,
                                Execution exec) {
  const Eigen::Index n = sym.rows();
  // Pad to an even player count; index n is a dummy "bye".
  const Eigen::Index players = n + (n % 2);
  std::vector<Eigen::Index> ring(static_cast<std::size_t>(players));
  std::iota(ring.begin(), ring.end(), Eigen::Index{0});

  Operator a = sym;
  Operator v = Operator::Identity(n, n);
  JacobiResult out;
  const double threshold = convergence_threshold(a, tol);
  const std::size_t half = static_cast<std::size_t>(players / 2);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs(half);
  std::vector<Rotation> rotations(half);

  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) {
      out.converged = true;
      out.sweeps = sweep;
      break;
    }
    if (sweep == max_sweeps) {
      out.sweeps = sweep;
      break;
    }
    for (Eigen::Index round = 0; round + 1 < players; ++round) {
      for (std::size_t i = 0; i < half; ++i) {
        const Eigen::Index x = ring[i];
        const Eigen::Index y = ring[ring.size() - 1 - i];
        pairs[i] = {std::min(x, y), std::max(x, y)};
      }
      // Angles depend only on each pair's own 2x2 block, which no other
      // rotation of this round touches.
      for (std::size_t i = 0; i < half; ++i) {
        const auto [p, q] = pairs[i];
        rotations[i] = q < n ? rotation_for(a, p, q) : Rotation{};
      }
      for_each_index(exec, half, [&](std::size_t i) {
        if (rotations[i].active)
          rotate_rows(a, pairs[i].first, pairs[i].second, rotations[i]);
      });
      for_each_index(exec, half, [&](std::size_t i) {
        if (!rotations[i].active) return;
        const auto [p, q] = pairs[i];
        rotate_cols(a, p, q, rotations[i]);
        rotate_cols(v, p, q, rotations[i]);
      });
      for (std::size_t i = 0; i < half; ++i) {
        if (!rotations[i].active) continue;
        const auto [p, q] = pairs[i];
        a(p, q) = a(q, p) = 0.0;
      }
      // Circle method: fix ring[0], rotate the rest by one.
      std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
    }
  }
  out.eigenvalues = a.diagonal();
  out.eigenvectors = std::move(v);
  return out;
}

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& sorted,
                                              double width) {
  std::vector<EigenCluster> clusters;
  std::size_t start = 0;
  while (start < sorted.size()) {
    std::size_t end = start + 1;
    while (end < sorted.size() && sorted[end] - sorted[start] <= width) ++end;
    double sum = 0.0;
    for (std::size_t i = start; i < end; ++i) sum += sorted[i];
    clusters.push_back({sum / static_cast<double>(end - start), end - start});
    start = end;
  }
  return clusters;
}

SpectrumReport sym_eigen(const Operator& op, double tol) {
  return sym_eigen(op, JacobiOptions{tol, 100, Execution::serial});
}

SpectrumReport sym_eigen(const Operator& op, const JacobiOptions& options) {
  if (op.rows() != op.cols())
    throw GeometryError(ErrorKind::invalid_dimension, "operator is not square");
  SpectrumReport report;
  report.tol = options.tol;
  report.asymmetry = asymmetry(op);
  const double scale = std::max(1.0, max_abs(op));
  if (report.asymmetry > options.tol * scale) {
    std::ostringstream msg;
    msg << "operator is not self-adjoint (asymmetry defect " << report.asymmetry
        << ")";
    throw GeometryError(ErrorKind::not_self_adjoint, msg.str());
  }
  const Operator sym = 0.5 * (op + op.transpose());
  const JacobiResult raw =
      options.exec == Execution::serial
          ? jacobi_cyclic(sym, options.tol, options.max_sweeps)
          : jacobi_round_robin(sym, options.tol, options.max_sweeps, options.exec);

  const auto n = static_cast<std::size_t>(sym.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return raw.eigenvalues[static_cast<Eigen::Index>(i)] <
           raw.eigenvalues[static_cast<Eigen::Index>(j)];
  });
  report.eigenvalues.resize(n);
  report.eigenvectors.resize(sym.rows(), sym.cols());
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    report.eigenvalues[k] = raw.eigenvalues[src];
    report.eigenvectors.col(static_cast<Eigen::Index>(k)) = raw.eigenvectors.col(src);
  }
  report.clusters = cluster_eigenvalues(report.eigenvalues, 10.0 * options.tol);
  report.sweeps = raw.sweeps;
  report.converged = raw.converged;

  Vector lambda(sym.rows());
  for (std::size_t k = 0; k < n; ++k)
    lambda[static_cast<Eigen::Index>(k)] = report.eigenvalues[k];
  const Operator rebuilt =
      report.eigenvectors * lambda.asDiagonal() * report.eigenvectors.transpose();
  report.reconstruction_residual = max_abs(sym - rebuilt);
  return report;
}

bool clusters_match(const std::vector<EigenCluster>& got,
                    const std::vector<EigenCluster>& expected, double rel_tol) {
  if (got.size() != expected.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].multiplicity != expected[i].multiplicity) return false;
    const double scale = std::max(1.0, std::abs(expected[i].value));
    if (std::abs(got[i].value - expected[i].value) > rel_tol * scale) return false;
  }
  return true;
}

double spectrum_distance(const std::vector<double>& sorted_got,
                         const std::vector<EigenCluster>& expected) {
  std::vector<double> flat;
  for (const auto& c : expected) flat.insert(flat.end(), c.multiplicity, c.value);
  std::sort(flat.begin(), flat.end());
  if (flat.size() != sorted_got.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i)
    worst = std::max(worst, std::abs(flat[i] - sorted_got[i]));
  return worst;
}

std::string SpectrumReport::describe() const {
  std::ostringstream out;
  out.precision(10);
  out << '{';
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (i) out << ", ";
    const double v = std::abs(clusters[i].value) < 10.0 * tol ? 0.0 : clusters[i].value;
    out << v << " (" << clusters[i].multiplicity << ')';
  }
  out << '}';
  return out.str();
}

}  // namespace quadric
