#include "waring7/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "waring7/decomposer.hpp"
#include "waring7/errors.hpp"
#include "waring7/experiments.hpp"
#include "waring7/json_io.hpp"

namespace waring7 {

namespace {

struct Options {
  bool pretty = false;
  std::optional<double> tol;

  std::string form_path;
  std::string dec_path;
  std::string frame_path;
  std::string out_path;
  std::string terms_path;
  std::string line_path;
  std::string conic_path;
  std::string kind = "random";
  std::uint64_t seed = 0;
  int trials = 20;
  int frames = 20;
  bool check = false;
};

// Failure of the procedure itself (exit 1), as opposed to bad input (exit 2).
struct ProcedureFailure {
  Json reason;
};

HomogeneousForm read_quartic(const std::string& path) {
  const HomogeneousForm f = form_from_json(read_json_file(path));
  if (f.side() != Side::Primal || f.nvars() != 3 || f.degree() != 4) {
    throw Error(ErrorKind::Parse, path + ": expected a ternary primal quartic");
  }
  return f;
}

HomogeneousForm read_form_of(const std::string& path, int degree) {
  const HomogeneousForm f = form_from_json(read_json_file(path));
  if (f.side() != Side::Primal || f.nvars() != 3 || f.degree() != degree) {
    throw Error(ErrorKind::Parse, path + ": expected a ternary primal form of degree " + std::to_string(degree));
  }
  return f;
}

Frame read_frame(const Options& o) {
  const Eigen::Matrix3cd rows =
      o.frame_path.empty() ? random_frame_matrix(o.seed, 0) : frame_from_json(read_json_file(o.frame_path));
  try {
    return make_frame(rows);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateFrame) throw;
    throw Error(ErrorKind::Parse, std::string("frame: ") + e.what());
  }
}

void emit(std::ostream& out, const Options& o, const Json& j) {
  const std::string text = dump_json(j, o.pretty);
  if (o.out_path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) throw Error(ErrorKind::Parse, "cannot write " + o.out_path);
  file << text << '\n';
}

int cmd_decompose(const Options& o, const Tolerances& tol, std::ostream& out) {
  const HomogeneousForm f = read_quartic(o.form_path);
  const Frame frame = read_frame(o);
  const SevenResult r = decompose_seven(f, frame, tol);
  if (!r.ok()) throw ProcedureFailure{{{"failure", failure_to_json(*r.failure)}}};
  emit(out, o, decomposition_to_json(*r.decomposition, r.provenance));
  return kExitOk;
}

int cmd_chain(const Options& o, const Tolerances& tol, std::ostream& out) {
  const HomogeneousForm f = read_quartic(o.form_path);
  const Frame frame = read_frame(o);
  const SevenResult r = decompose_seven(f, frame, tol);
  if (!r.six.chain) {
    Json reason = r.failure ? failure_to_json(*r.failure) : Json(nullptr);
    throw ProcedureFailure{{{"failure", std::move(reason)}}};
  }
  emit(out, o, chain_to_json(*r.six.chain));
  return kExitOk;
}

int cmd_verify(const Options& o, const Tolerances& tol, std::ostream& out) {
  const HomogeneousForm f = read_quartic(o.form_path);
  const Decomposition dec = decomposition_from_json(read_json_file(o.dec_path));
  if (dec.degree != f.degree()) throw Error(ErrorKind::Parse, "decomposition degree does not match the form");
  const double r = verify(f, dec);
  const bool pass = r <= tol.verify;
  emit(out, o, {{"residual", r}, {"tolerance", tol.verify}, {"pass", pass}});
  return pass ? kExitOk : kExitFailure;
}

int cmd_probe(const Options& o, const Tolerances& tol, std::ostream& out) {
  if (o.trials < 1) throw Error(ErrorKind::Parse, "--trials must be positive");
  const HomogeneousForm f = read_quartic(o.form_path);
  emit(out, o, probe_report_to_json(probe_frames(f, o.trials, o.seed, tol)));
  return kExitOk;
}

int cmd_experiments(const Options& o, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  if (o.frames < 1) throw Error(ErrorKind::Parse, "--frames must be positive");
  const ExperimentReport report = experiment_special_cases(o.seed, o.frames, tol);
  emit(out, o, experiment_report_to_json(report));
  if (o.check && !report.all_passed) {
    for (const auto& c : report.cases) {
      if (!c.passed) err << "check failed: " << c.name << " (" << c.observed << "/" << c.eligible << ")\n";
    }
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  GeneratorSpec spec;
  spec.kind = generator_kind_from_string(o.kind);
  spec.seed = o.seed;
  if (!o.terms_path.empty()) spec.terms = decomposition_from_json(read_json_file(o.terms_path)).terms;
  if (!o.line_path.empty()) spec.line = read_form_of(o.line_path, 1);
  if (!o.conic_path.empty()) spec.conic = read_form_of(o.conic_path, 2);
  try {
    emit(out, o, form_to_json(generate(spec)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, e.what());
  }
  return kExitOk;
}

}  // namespace

Tolerances resolve_tolerances(std::optional<double> flag, const char* env_value) {
  Tolerances tol;
  if (flag) {
    if (!(*flag > 0.0) || !std::isfinite(*flag)) throw Error(ErrorKind::Parse, "--tol must be positive");
    tol.verify = *flag;
  } else if (env_value != nullptr && *env_value != '\0') {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(env_value, &end);
    if (errno != 0 || end == env_value || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::Parse, std::string("WARING7_TOL is not a positive number: ") + env_value);
    }
    tol.verify = v;
  }
  return tol;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seven-term Waring decompositions of ternary quartics", "waring7"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Indent JSON output");
  app.add_option("--tol", o.tol, "Verification tolerance (overrides WARING7_TOL)");

  auto* decompose = app.add_subcommand("decompose", "Decompose a quartic into seven fourth powers");
  decompose->add_option("form", o.form_path, "Form JSON")->required();
  decompose->add_option("--frame", o.frame_path, "Frame JSON (random from --seed otherwise)");
  decompose->add_option("--seed", o.seed, "Seed for the random frame");

  auto* chain = app.add_subcommand("chain", "Print the θ-chain built for a quartic and frame");
  chain->add_option("form", o.form_path, "Form JSON")->required();
  chain->add_option("--frame", o.frame_path, "Frame JSON (random from --seed otherwise)");
  chain->add_option("--seed", o.seed, "Seed for the random frame");

  auto* verify_cmd = app.add_subcommand("verify", "Check a decomposition against a form");
  verify_cmd->add_option("form", o.form_path, "Form JSON")->required();
  verify_cmd->add_option("decomposition", o.dec_path, "Decomposition JSON")->required();

  auto* probe = app.add_subcommand("probe", "Run the decomposition over seeded random frames");
  probe->add_option("form", o.form_path, "Form JSON")->required();
  probe->add_option("--trials", o.trials, "Number of frames");
  probe->add_option("--seed", o.seed, "Seed");

  auto* experiments = app.add_subcommand("experiments", "Special-case experiments");
  experiments->add_flag("--check", o.check, "Exit 1 if a claim is not observed");
  experiments->add_option("--seed", o.seed, "Seed");
  experiments->add_option("--frames", o.frames, "Frames per case");

  auto* generate_cmd = app.add_subcommand("generate", "Generate a test quartic");
  generate_cmd
      ->add_option("--kind", o.kind,
                   "pure-power | rank-two | rank-three | double-line-conic | random | explicit-terms")
      ->required();
  generate_cmd->add_option("--seed", o.seed, "Seed");
  generate_cmd->add_option("--terms", o.terms_path, "Decomposition JSON for explicit-terms");
  generate_cmd->add_option("--line", o.line_path, "Line form JSON for double-line-conic");
  generate_cmd->add_option("--conic", o.conic_path, "Conic form JSON for double-line-conic");

  for (auto* sub : {decompose, chain, verify_cmd, probe, experiments, generate_cmd}) {
    sub->add_flag("--pretty", o.pretty, "Indent JSON output");
    sub->add_option("--tol", o.tol, "Verification tolerance (overrides WARING7_TOL)");
    sub->add_option("--out", o.out_path, "Write the JSON result here instead of stdout");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    const int code = app.exit(e, out, sink);
    err << sink.str();
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    const Tolerances tol = resolve_tolerances(o.tol, std::getenv("WARING7_TOL"));
    if (*decompose) return cmd_decompose(o, tol, out);
    if (*chain) return cmd_chain(o, tol, out);
    if (*verify_cmd) return cmd_verify(o, tol, out);
    if (*probe) return cmd_probe(o, tol, out);
    if (*experiments) return cmd_experiments(o, tol, out, err);
    return cmd_generate(o, out);
  } catch (const ProcedureFailure& f) {
    err << f.reason.dump() << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::Parse ? kExitMalformed : kExitFailure;
    err << Json{{"error", std::string(to_string(e.kind()))}, {"detail", e.what()}}.dump() << '\n';
    return code;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace waring7
