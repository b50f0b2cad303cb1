#include "quadric/theorem_engine.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "quadric/error.hpp"

namespace quadric {
namespace {

Operator chain_conjugation(const PrincipalCandidate& c) {
  const HypersurfaceData& h = c.h;
  return c.frame * c.conjugation_block * c.frame.transpose() - h.xi * h.xi.transpose() +
         h.N * h.N.transpose();
}

Operator random_orthogonal(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Operator z(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) z(i, j) = gauss(rng);
  return Eigen::HouseholderQR<Operator>(z).householderQ();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double ChainReport::residual(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r.value;
  throw std::out_of_range("no chain residual named " + name);
}

ChainReport principal_chain_residuals(const PrincipalCandidate& candidate, double tol) {
  if (candidate.alpha == 0.0)
    throw GeometryError(ErrorKind::vanishing_reeb_curvature,
                        "chain evaluation requires alpha != 0");
  const HypersurfaceData& h = candidate.h;
  const Operator& F = candidate.frame;
  const Operator& S = h.S;
  const Operator& phi = h.phi;
  const Operator& J = h.model.J();
  const double a = h.alpha;
  const double q = h.q_xi;
  const double xi_alpha = inner(h.dalpha, h.xi);
  const int n = h.dim();
  const Operator I = Operator::Identity(n, n);
  const Operator A = chain_conjugation(candidate);
  const Operator nabla_s = nabla_S_at_xi_operator(h);
  const Operator xixi = h.xi * h.xi.transpose();
  const Operator S2 = S * S;

  ChainReport report;
  auto add = [&](const char* name, const Operator& op) {
    report.residuals.push_back({name, max_column_norm(op, F)});
  };
  add("reeb_parallel", -q * J * A - q * h.N * h.xi.transpose() + xi_alpha * S +
                           a * nabla_s - 2.0 * a * xi_alpha * xixi);
  add("reeb_shape_derivative", nabla_s - 2.0 * phi * A);
  add("codazzi_reduction", a * phi * S - S * phi * S + phi - 3.0 * phi * A);
  add("hopf_principal", 2.0 * S * phi * S - a * (S * phi + phi * S) - 2.0 * phi);
  add("commutator", a * (phi * S - S * phi) - 6.0 * phi * A);
  add("phi_conjugate_quadratic",
      a * a * phi * S * phi + 2.0 * a * S2 - a * a * S - 2.0 * a * I - 12.0 * S);
  add("quadratic", 3.0 * a * A + a * S2 - a * a * S - a * I - 6.0 * S);
  add("conjugated_quadratic", 3.0 * a * I + a * S2 - a * a * S - a * A - 6.0 * S);
  report.residuals.push_back(
      {"shape_conjugation",
       max_column_norm(A * S - S + 2.0 * a * xixi, h.tangent_basis)});

  const Eigen::Index d = F.cols();
  report.conjugation_defect =
      (candidate.conjugation_block - Operator::Identity(d, d)).norm();
  report.trace_on_c = candidate.conjugation_block.trace();
  const Operator& true_a = h.A;
  report.required_trace = true_a.trace() - inner(true_a * h.xi, h.xi) -
                          inner(true_a * h.N, h.N);

  const double scale = std::pow(std::max(1.0, max_abs(S)), 2);
  const bool pair_holds = report.residual("quadratic") < tol * scale &&
                          report.residual("conjugated_quadratic") < tol * scale;
  const double gap = std::abs(report.trace_on_c - report.required_trace);
  const NamedResidual* broken = nullptr;
  if (report.residual("reeb_parallel") < tol * scale) {
    for (const auto& r : report.residuals)
      if (r.value >= tol * scale) {
        broken = &r;
        break;
      }
  }
  if (broken) {
    report.verdict = ChainVerdict::contradiction;
    std::ostringstream msg;
    msg << "reeb_parallel holds but its consequence " << broken->name
        << " fails (residual " << broken->value << ")";
    report.reason = msg.str();
  } else if (pair_holds && gap > 0.5) {
    report.verdict = ChainVerdict::contradiction;
    std::ostringstream msg;
    msg << "the quadratic pair forces A|C = Id with trace " << report.trace_on_c
        << ", but trace(A|C) must equal " << report.required_trace;
    report.reason = msg.str();
  } else {
    report.verdict = ChainVerdict::consistent;
    report.reason = pair_holds ? "trace of A|C agrees with the structure"
                               : "quadratic pair not satisfied; chain does not close";
  }
  return report;
}

double conjugation_step_residual(const PrincipalCandidate& candidate) {
  const HypersurfaceData& h = candidate.h;
  const Operator& S = h.S;
  const double a = h.alpha;
  const int n = h.dim();
  const Operator I = Operator::Identity(n, n);
  const Operator A = chain_conjugation(candidate);
  // A S rewritten as S - 2 alpha xi eta.
  const Operator as = S - 2.0 * a * h.xi * h.xi.transpose();
  const Operator conjugated = 3.0 * a * A * A + a * as * S - a * a * as - a * A - 6.0 * as;
  const Operator target = 3.0 * a * I + a * S * S - a * a * S - a * A - 6.0 * S;
  return max_column_norm(conjugated - target, candidate.frame);
}

QuadraticPairSolution solve_quadratic_pair(int m, double alpha, const Operator& frame,
                                           Execution exec) {
  const Eigen::Index d = 2 * m - 2;
  if (frame.rows() != d || frame.cols() != d)
    throw GeometryError(ErrorKind::invalid_dimension, "frame must be (2m-2) x (2m-2)");
  // Rows: quadratic, conjugated. Columns: unknown A_ij, unknown K_ij.
  Eigen::Matrix2d system;
  system << 3.0 * alpha, 1.0, -alpha, 1.0;
  const Eigen::FullPivLU<Eigen::Matrix2d> lu(system);

  // In an orthonormal frame the identity stays the identity, so the
  // right-hand side is diagonal.
  Operator a_frame(d, d), k_frame(d, d);
  for_each_index(exec, static_cast<std::size_t>(d * d), [&](std::size_t idx) {
    const auto i = static_cast<Eigen::Index>(idx) % d;
    const auto j = static_cast<Eigen::Index>(idx) / d;
    const double delta = i == j ? 1.0 : 0.0;
    const Eigen::Vector2d rhs(alpha * delta, -3.0 * alpha * delta);
    const Eigen::Vector2d x = lu.solve(rhs);
    a_frame(i, j) = x[0];
    k_frame(i, j) = x[1];
  });

  QuadraticPairSolution out;
  out.rank_deficiency = 2 - static_cast<int>(lu.rank());
  out.conjugation = frame * a_frame * frame.transpose();
  out.shape_term = frame * k_frame * frame.transpose();
  out.defect = (out.conjugation - Operator::Identity(d, d)).norm();
  return out;
}

std::vector<double> sample_alphas(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.1, 5.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> out(count);
  for (auto& a : out) {
    const double v = magnitude(rng);
    a = sign(rng) ? v : -v;
  }
  return out;
}

namespace {

struct SampleOutcome {
  double alpha = 0.0;
  int rank_deficiency = 0;
  double defect = 0.0;
  double trace = 0.0;
  double required_trace = 0.0;
  double pair_residual = 0.0;
  double true_block_violation = 0.0;
  double conjugation_step = 0.0;
  bool contradiction = false;
};

SampleOutcome certify_sample(int m, double alpha, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  const Eigen::Index d = 2 * m - 2;
  const Operator frame = random_orthogonal(d, rng);
  const QuadraticPairSolution sol = solve_quadratic_pair(m, alpha, frame);

  // alpha s^2 - (alpha^2 + 6) s + 2 alpha = 0 realizes the solved shape term.
  const double b = alpha * alpha + 6.0;
  const double s = (b + std::sqrt(b * b - 8.0 * alpha * alpha)) / (2.0 * alpha);
  PrincipalCandidate candidate = impose_identity_conjugation(
      build_principal_candidate(m, alpha, std::vector<double>(static_cast<std::size_t>(d), s)));
  candidate.conjugation_block = sol.conjugation;
  const ChainReport chain = principal_chain_residuals(candidate);

  const PrincipalCandidate structural =
      build_principal_candidate(m, alpha, std::vector<double>(static_cast<std::size_t>(d), s));
  const Operator violation = 3.0 * alpha * structural.conjugation_block + sol.shape_term -
                             alpha * Operator::Identity(d, d);

  SampleOutcome out;
  out.alpha = alpha;
  out.rank_deficiency = sol.rank_deficiency;
  out.defect = sol.defect;
  out.trace = sol.conjugation.trace();
  out.required_trace = chain.required_trace;
  out.pair_residual =
      std::max(chain.residual("quadratic"), chain.residual("conjugated_quadratic"));
  out.true_block_violation = violation.norm();
  out.conjugation_step = conjugation_step_residual(structural);
  out.contradiction = chain.verdict == ChainVerdict::contradiction &&
                      sol.rank_deficiency == 0 && sol.defect < 1e-10;
  return out;
}

}  // namespace

CheckReport principal_nonexistence_certificate(int m, const std::vector<double>& alphas,
                                               std::uint64_t seed, Execution exec) {
  if (m < 3 || m > kMaxComplexDimension) {
    std::ostringstream msg;
    msg << "the nonexistence certificate needs 3 <= m <= " << kMaxComplexDimension
        << ", got m = " << m;
    throw GeometryError(ErrorKind::invalid_dimension, msg.str());
  }
  for (double a : alphas)
    if (a == 0.0)
      throw GeometryError(ErrorKind::vanishing_reeb_curvature,
                          "alpha samples must be nonzero");

  const auto outcomes = map_indices<SampleOutcome>(exec, alphas.size(), [&](std::size_t i) {
    return certify_sample(m, alphas[i], seed, i);
  });

  CheckReport report;
  report.command = "nonexistence";
  report.seed = seed;
  report.params["m"] = m;
  report.params["samples"] = alphas.size();
  const TangentModel model(m);
  report.expect_below("trace_A_full", std::abs(model.A().trace()), 1e-12);

  Json samples = Json::array();
  bool all = !alphas.empty();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SampleOutcome& o = outcomes[i];
    char prefix[32];
    std::snprintf(prefix, sizeof prefix, "sample[%02zu].", i);
    const std::string p = prefix;
    report.expect_below(p + "unique_solution", o.rank_deficiency, 0.5);
    report.expect_below(p + "conjugation_defect", o.defect, 1e-10);
    report.expect_below(p + "trace_on_c", std::abs(o.trace - (2.0 * m - 2.0)), 1e-10);
    report.expect_below(p + "pair_solvable", o.pair_residual, 1e-10);
    report.expect_below(p + "conjugation_step", o.conjugation_step, 1e-12);
    report.expect_above(p + "structural_conjugation_excluded", o.true_block_violation, 1e-6);
    report.expect_above(p + "trace_conflict", std::abs(o.trace - o.required_trace), 0.5);
    all = all && o.contradiction;
    Json entry;
    entry["alpha"] = o.alpha;
    entry["trace_on_c"] = o.trace;
    entry["required_trace"] = o.required_trace;
    entry["conjugation_defect"] = o.defect;
    entry["verdict"] = o.contradiction ? "contradiction" : "consistent";
    samples.push_back(std::move(entry));
  }
  report.result["samples"] = std::move(samples);
  report.result["certificate"] = all ? "contradiction in every sample" : "incomplete";
  return report;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::nonexistent: return "nonexistent";
    case Verdict::tube: return "tube";
    case Verdict::outside_hypotheses: return "outside-hypotheses";
  }
  return "unknown";
}

std::string ClassificationResult::describe() const {
  switch (verdict) {
    case Verdict::tube:
      return "tube k=" + std::to_string(k) + " r=" + fixed(r, 6);
    case Verdict::nonexistent:
      return "nonexistent: " + reason;
    case Verdict::outside_hypotheses:
      return "outside hypotheses: " + reason;
  }
  return reason;
}

double radius_from_reeb_curvature(double alpha) {
  return 0.5 * std::atan2(2.0, alpha);
}

ClassificationResult classify(const HypersurfaceData& h, double tol) {
  ClassificationResult out;
  const CanonicalAngle angle = canonical_angle(h.model, h.N);
  out.type = angle.type;
  out.canonical_t = angle.t;
  out.hopf = h.hopf;
  out.alpha = h.alpha;
  auto outside = [&](std::string reason) {
    out.verdict = Verdict::outside_hypotheses;
    out.reason = std::move(reason);
    return out;
  };

  if (!h.hopf) {
    std::ostringstream msg;
    msg << "not Hopf (|S xi - alpha xi| = " << h.hopf_defect << ")";
    return outside(msg.str());
  }
  if (std::abs(h.alpha) < tol) return outside("vanishing geodesic Reeb flow");
  out.hopf_identity_residual = hopf_identity_residual(h);
  const double s_scale = std::max(1.0, max_abs(h.S));
  if (out.hopf_identity_residual > tol * s_scale * s_scale) {
    std::ostringstream msg;
    msg << "Hopf identity violated (residual " << out.hopf_identity_residual << ")";
    return outside(msg.str());
  }
  if (angle.type == SingularType::generic) {
    std::ostringstream msg;
    msg << "normal is not singular (t = " << angle.t << ")";
    return outside(msg.str());
  }
  out.reeb_residual = reeb_parallel_residual(h);
  if (out.reeb_residual > tol * s_scale * s_scale) {
    std::ostringstream msg;
    msg << "structure Jacobi operator is not Reeb parallel (residual "
        << out.reeb_residual << ")";
    return outside(msg.str());
  }
  if (angle.type == SingularType::principal) {
    out.verdict = Verdict::nonexistent;
    out.reason =
        "A-principal normal with Reeb parallel structure Jacobi operator and "
        "alpha != 0 cannot occur on a real hypersurface";
    return out;
  }
  if (h.m() % 2 != 0) return outside("isotropic Reeb-parallel data with odd m");
  const int k = h.m() / 2;
  const double r = radius_from_reeb_curvature(h.alpha);
  const SpectrumReport spectrum = tangent_spectrum(h, h.S);
  if (!clusters_match(spectrum.clusters, tube_shape_template(k, r), 1e-8)) {
    return outside("principal curvatures " + spectrum.describe() +
                   " do not match the tube template");
  }
  out.verdict = Verdict::tube;
  out.k = k;
  out.r = r;
  out.reason = "isotropic normal, Reeb parallel, spectrum matches the tube template";
  return out;
}

}  // namespace quadric
