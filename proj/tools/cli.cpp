#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "quadric/error.hpp"
#include "quadric/suites.hpp"
#include "quadric/theorem_engine.hpp"

namespace quadric::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  int m = 4;
  int k = 2;
  double r = 0.6;
  double r_min = 0.05;
  double r_max = std::numbers::pi / 2 - 0.05;
  int steps = 20;
  std::optional<double> tol;
  std::size_t alpha_samples = 25;
  std::vector<double> alphas;
  std::uint64_t seed = kDefaultSeed;
  std::string json_path;
  bool non_vanishing = true;
  std::string variant = "a-invariant";
  std::string input;
  std::string spectrum_kind = "principal";
  std::string op = "shape";
  bool serial = false;
  bool quiet = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int emit(const CheckReport& report, int code) {
    const std::string text = dump(report);
    if (opt.json_path.empty()) {
      out_ << text;
    } else {
      std::ofstream file(opt.json_path, std::ios::binary);
      if (!file) {
        err_ << "error: cannot write " << opt.json_path << "\n";
        return kExitUsage;
      }
      file << text;
    }
    if (!opt.quiet)
      err_ << report.command << ": " << report.passed() << "/" << report.checks.size()
           << " checks passed\n";
    for (const auto& c : report.checks)
      if (!c.pass && !opt.quiet)
        err_ << "  FAIL " << c.name << " residual=" << c.residual << " tol=" << c.tol << "\n";
    return code;
  }

  int emit(const CheckReport& report) {
    return emit(report, report.all_passed() ? kExitOk : kExitFailed);
  }

  Execution exec() const { return opt.serial ? Execution::serial : Execution::parallel; }

  void check_m(int m) {
    if (m < 1 || m > kMaxComplexDimension)
      throw GeometryError(ErrorKind::invalid_dimension,
                          "m must be in [1, " + std::to_string(kMaxComplexDimension) +
                              "], got " + std::to_string(m));
    if (m < 3) err_ << "warning: the classification results assume m >= 3 (got m = " << m << ")\n";
  }

  TubeOptions tube_options() const {
    TubeOptions t;
    t.non_vanishing = opt.non_vanishing;
    t.variant = opt.variant == "a-swapped" ? TubeVariant::a_swapped : TubeVariant::a_invariant;
    return t;
  }

  int verify_ambient() {
    check_m(opt.m);
    return emit(ambient_suite(opt.m, opt.tol.value_or(1e-10), opt.seed, 100, exec()));
  }

  int verify_tube() {
    const TubeModel tube = build_tube(opt.k, opt.r, tube_options());
    CheckReport report = tube_suite(tube, opt.tol.value_or(1e-10));
    report.seed = opt.seed;
    report.params["non_vanishing"] = opt.non_vanishing;
    report.result["alpha"] = tube.alpha();
    return emit(report);
  }

  int scan() {
    const RadiusGrid grid = radius_grid(opt.r_min, opt.r_max, opt.steps);
    TubeScan result =
        scan_tube(opt.k, grid, opt.tol.value_or(1e-10), tube_options(), exec());
    result.report.seed = opt.seed;
    result.report.params["r_min"] = opt.r_min;
    result.report.params["r_max"] = opt.r_max;
    result.report.params["steps"] = opt.steps;
    if (!grid.skipped.empty() && !opt.quiet) {
      err_ << "skipped " << grid.skipped.size() << " radius point(s) within "
           << kQuarterPiWindow << " of pi/4:";
      for (double r : grid.skipped) err_ << " " << r;
      err_ << "\n";
    }
    return emit(result.report);
  }

  int nonexistence() {
    check_m(opt.m);
    const auto alphas =
        opt.alphas.empty() ? sample_alphas(opt.alpha_samples, opt.seed) : opt.alphas;
    for (double a : alphas)
      if (a == 0.0)
        throw GeometryError(ErrorKind::vanishing_reeb_curvature,
                            "alpha samples must be non-zero");
    return emit(principal_nonexistence_certificate(opt.m, alphas, opt.seed, exec()));
  }

  static std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot read " + path);
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  }

  int classify_file() {
    const double tol = opt.tol.value_or(1e-9);
    const HypersurfaceData h = hypersurface_from_json_text(read_file(opt.input));
    const ClassificationResult c = classify(h, tol);

    CheckReport report;
    report.command = "classify";
    report.seed = opt.seed;
    report.params["input"] = opt.input;
    report.params["tol"] = tol;
    report.params["m"] = h.m();
    report.result["verdict"] = to_string(c.verdict);
    report.result["description"] = c.describe();
    report.result["type"] = to_string(c.type);
    report.result["canonical_angle"] = c.canonical_t;
    report.result["hopf_identity_residual"] = c.hopf_identity_residual;
    report.result["alpha"] = c.alpha;
    report.result["reeb_parallel_residual"] = c.reeb_residual;
    if (c.verdict == Verdict::tube) {
      report.result["k"] = c.k;
      report.result["r"] = c.r;
    }
    report.result["reason"] = c.reason;
    report.expect_below("hopf", h.hopf_defect, kHopfTol);
    if (std::isfinite(c.reeb_residual))
      report.expect_below("reeb_parallel", c.reeb_residual, tol);

    if (!opt.quiet) {
      err_ << c.describe() << "\n";
      if (c.verdict == Verdict::outside_hypotheses) err_ << "reason: " << c.reason << "\n";
    }
    return emit(report, c.verdict == Verdict::outside_hypotheses ? kExitFailed : kExitOk);
  }

  int spectrum(const std::string& source) {
    const double tol = opt.tol.value_or(1e-12);
    CheckReport report;
    report.command = "spectrum " + source;
    report.seed = opt.seed;
    report.params["tol"] = tol;
    SpectrumReport s;
    if (source == "ambient") {
      check_m(opt.m);
      const TangentModel model(opt.m);
      if (opt.spectrum_kind == "isotropic" && opt.m < 2)
        throw GeometryError(ErrorKind::invalid_dimension, "isotropic vectors need m >= 2");
      const Vector u = opt.spectrum_kind == "isotropic"
                           ? Vector(std::sqrt(0.5) * (model.Z(1) + model.JZ(2)))
                           : model.Z(1);
      report.params["m"] = opt.m;
      report.params["kind"] = opt.spectrum_kind;
      s = sym_eigen(ambient_jacobi(model, u), JacobiOptions{tol, 100, exec()});
    } else {
      HypersurfaceData h;
      if (source == "tube") {
        h = build_tube(opt.k, opt.r, tube_options()).h;
        report.params["k"] = opt.k;
        report.params["r"] = opt.r;
      } else {
        h = hypersurface_from_json_text(read_file(opt.input));
        report.params["input"] = opt.input;
      }
      report.params["operator"] = opt.op;
      const Operator op = opt.op == "structure-jacobi" ? structure_jacobi(h) : h.S;
      s = tangent_spectrum(h, op, tol);
    }
    report.expect_below("reconstruction", s.reconstruction_residual, 1e3 * tol);
    report.expect_below("converged", s.converged ? 0.0 : 1.0, 0.5);
    Json clusters = Json::array();
    for (const auto& c : s.clusters)
      clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    report.result["eigenvalues"] = s.eigenvalues;
    report.result["clusters"] = std::move(clusters);
    report.result["sweeps"] = s.sweeps;
    if (!opt.quiet) err_ << s.describe() << "\n";
    return emit(report);
  }

  int export_tube() {
    const TubeModel tube = build_tube(opt.k, opt.r, tube_options());
    Json doc = hypersurface_to_json(tube.h);
    const std::string text = doc.dump(2) + "\n";
    if (opt.json_path.empty()) {
      out_ << text;
    } else {
      std::ofstream file(opt.json_path, std::ios::binary);
      if (!file) {
        err_ << "error: cannot write " << opt.json_path << "\n";
        return kExitUsage;
      }
      file << text;
    }
    return kExitOk;
  }

  Options opt;

 private:
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  Options& o = runner.opt;

  CLI::App app{"Verification engine for real hypersurfaces in the complex quadric",
               "quadric-verify"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "Tolerance (command-specific default)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    cmd->add_option("--json", o.json_path, "Write the JSON report to this path");
    cmd->add_flag("--serial", o.serial, "Use the serial reference kernels");
    cmd->add_flag("--quiet,-q", o.quiet, "Suppress the stderr summary");
  };
  auto add_tube = [&](CLI::App* cmd, bool single_radius) {
    cmd->add_option("--k", o.k, "Tube over CP^k in Q^{2k}")->capture_default_str();
    if (single_radius) cmd->add_option("--r", o.r, "Tube radius")->capture_default_str();
    cmd->add_flag("--non-vanishing,!--no-non-vanishing", o.non_vanishing,
                  "Reject r = pi/4 (vanishing Reeb curvature)")
        ->capture_default_str();
    cmd->add_option("--variant", o.variant, "Position of W_1, W_2 relative to A")
        ->check(CLI::IsMember({"a-invariant", "a-swapped"}))
        ->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  auto* verify_ambient = verify->add_subcommand("ambient", "Tangent-model invariants and spectra");
  verify_ambient->add_option("--m", o.m, "Complex dimension")->capture_default_str();
  add_common(verify_ambient);
  auto* verify_tube = verify->add_subcommand("tube", "Identities of the tube at one radius");
  add_tube(verify_tube, true);
  add_common(verify_tube);

  auto* scan = app.add_subcommand("scan", "Run a suite over a parameter grid");
  scan->require_subcommand(1);
  auto* scan_tube_cmd = scan->add_subcommand("tube", "Tube suite over a radius grid");
  add_tube(scan_tube_cmd, false);
  scan_tube_cmd->add_option("--r-min", o.r_min)->capture_default_str();
  scan_tube_cmd->add_option("--r-max", o.r_max)->capture_default_str();
  scan_tube_cmd->add_option("--steps", o.steps)->check(CLI::PositiveNumber)->capture_default_str();
  add_common(scan_tube_cmd);

  auto* nonexistence =
      app.add_subcommand("nonexistence", "Certificate against Reeb-parallel principal Hopf data");
  nonexistence->add_option("--m", o.m, "Complex dimension")->capture_default_str();
  nonexistence->add_option("--alpha-samples", o.alpha_samples, "Number of random alpha values")
      ->capture_default_str();
  nonexistence->add_option("--alpha", o.alphas, "Explicit alpha values (overrides sampling)");
  add_common(nonexistence);

  auto* classify_cmd = app.add_subcommand("classify", "Classify serialized hypersurface data");
  classify_cmd->add_option("input,--input", o.input, "HypersurfaceData JSON file")->required();
  add_common(classify_cmd);

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues with multiplicities");
  spectrum->require_subcommand(1);
  auto* spectrum_ambient = spectrum->add_subcommand("ambient", "Jacobi operator of Q^m");
  spectrum_ambient->add_option("--m", o.m)->capture_default_str();
  spectrum_ambient->add_option("--kind", o.spectrum_kind)
      ->check(CLI::IsMember({"principal", "isotropic"}))
      ->capture_default_str();
  add_common(spectrum_ambient);
  auto* spectrum_tube = spectrum->add_subcommand("tube", "Operator on the tube");
  add_tube(spectrum_tube, true);
  auto* spectrum_file = spectrum->add_subcommand("file", "Operator on serialized data");
  spectrum_file->add_option("input,--input", o.input)->required();
  for (auto* cmd : {spectrum_tube, spectrum_file}) {
    cmd->add_option("--operator", o.op)
        ->check(CLI::IsMember({"shape", "structure-jacobi"}))
        ->capture_default_str();
    if (cmd == spectrum_file) add_common(cmd);
  }
  add_common(spectrum_tube);

  auto* export_cmd = app.add_subcommand("export", "Write model data as HypersurfaceData JSON");
  export_cmd->require_subcommand(1);
  auto* export_tube = export_cmd->add_subcommand("tube", "Tube data at one radius");
  add_tube(export_tube, true);
  export_tube->add_option("--json", o.json_path, "Output path (default stdout)");

  std::vector<const char*> argv{"quadric-verify"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (verify_ambient->parsed()) return runner.verify_ambient();
    if (verify_tube->parsed()) return runner.verify_tube();
    if (scan_tube_cmd->parsed()) return runner.scan();
    if (nonexistence->parsed()) return runner.nonexistence();
    if (classify_cmd->parsed()) return runner.classify_file();
    if (spectrum_ambient->parsed()) return runner.spectrum("ambient");
    if (spectrum_tube->parsed()) return runner.spectrum("tube");
    if (spectrum_file->parsed()) return runner.spectrum("file");
    if (export_tube->parsed()) return runner.export_tube();
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace quadric::cli
