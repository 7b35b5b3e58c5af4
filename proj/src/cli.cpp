#include "unital/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>

#include "unital/channels.hpp"
#include "unital/errors.hpp"
#include "unital/harness.hpp"
#include "unital/json_io.hpp"
#include "unital/quantumness.hpp"
#include "unital/states.hpp"

namespace unital::cli {

namespace {

using json_io::Json;
using json_io::to_json;

constexpr const char* kVersion = "1.0.0";

struct Outcome {
  int code;
  Json payload;
};

Json meta() {
  Json m;
  m["tool"] = "unital";
  m["version"] = kVersion;
  return m;
}

std::pair<std::size_t, std::size_t> split_dims(const std::vector<std::size_t>& dims) {
  if (dims.size() != 2 || dims[0] == 0 || dims[1] == 0) {
    throw InvalidArgument("--dims expects two positive integers, e.g. 4,2");
  }
  return {dims[0], dims[1]};
}

Basis parse_basis_option(const std::string& spec, std::size_t dim) {
  if (spec == "computational") return Basis::computational(dim);
  if (spec.rfind("file:", 0) == 0) return json_io::basis_from_json(json_io::read_file(spec.substr(5)));
  throw InvalidArgument("--basis expects 'computational' or 'file:<path>'");
}

Json channel_json(const KrausSet& k, const ChannelReport& report) {
  Json j = to_json(k);
  j["report"] = to_json(report);
  j["completeness_sum"] = to_json(completeness_sum(k));
  j["unitality_sum"] = to_json(unitality_sum(k));
  return j;
}

// --- examples ---------------------------------------------------------------

struct ExamplesArgs {
  std::string name;
};

Outcome cmd_examples(const ExamplesArgs& a) {
  const LabeledState s = fixture(a.name);
  const auto view = system_environment_view(s);
  Json j = to_json(s);
  j["default_partition"] = to_json(s.partition);
  j["system_initial_label"] = view.system_label;
  j["environment_initial_label"] = view.environment_label;
  j["meta"] = meta();
  return {kSuccess, std::move(j)};
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string fixture;
  std::string unitary;
  std::vector<std::size_t> dims;
  std::string sys_state;
  std::string env_state;
  std::string mode = "indexed";
  double diag_tol = 1e-10;
  bool prune = false;
  bool assert_unital = false;
};

Outcome cmd_analyze(const AnalyzeArgs& a, double tol) {
  std::optional<SystemEnvironmentView> view;
  Json input;
  if (!a.fixture.empty()) {
    const auto s = fixture(a.fixture);
    view = system_environment_view(s);
    input["fixture"] = a.fixture;
    input["partition"] = to_json(s.partition);
    input["system_initial_label"] = view->system_label;
    input["environment_initial_label"] = view->environment_label;
  } else {
    if (a.unitary.empty() || a.dims.empty() || a.sys_state.empty() || a.env_state.empty()) {
      throw InvalidArgument("analyze needs --fixture, or all of --unitary --dims --sys-state --env-state");
    }
    const auto [ds, de] = split_dims(a.dims);
    view = SystemEnvironmentView{
        json_io::matrix_from_json(json_io::read_file(a.unitary)),
        ds,
        de,
        json_io::density_from_json(json_io::read_file(a.sys_state)),
        json_io::density_from_json(json_io::read_file(a.env_state)),
        "",
        "",
    };
    input["unitary"] = a.unitary;
    input["sys_state"] = a.sys_state;
    input["env_state"] = a.env_state;
  }
  const KrausMode mode = parse_kraus_mode(a.mode);
  const auto& v = *view;

  KrausSet sys_k = extract_system_kraus(v.unitary, v.dim_s, v.dim_e, v.environment_initial, mode);
  KrausSet env_k = extract_env_kraus(v.unitary, v.dim_s, v.dim_e, v.system_initial, mode);
  if (a.prune) {
    sys_k = sys_k.pruned();
    env_k = env_k.pruned();
  }
  const auto sys_report = channel_report(sys_k, tol);
  const auto env_report = channel_report(env_k, tol);

  const DensityMatrix joint_in(tensor(v.system_initial.matrix(), v.environment_initial.matrix()));
  const DensityMatrix joint_out(v.unitary * joint_in.matrix() * v.unitary.adjoint());
  const std::vector<std::size_t> se_dims{v.dim_s, v.dim_e};
  const std::vector<std::size_t> keep_s{0}, keep_e{1};
  const DensityMatrix sys_out = partial_trace(joint_out, se_dims, keep_s);
  const DensityMatrix env_out = partial_trace(joint_out, se_dims, keep_e);

  auto dilation_defect = [](const KrausSet& k, const ChannelReport& r, const DensityMatrix& in,
                            const DensityMatrix& expected) -> Json {
    if (r.completeness_defect > 1e-8) return nullptr;
    return frobenius_distance(apply_channel(k, in).matrix(), expected.matrix());
  };

  Json j;
  j["input"] = std::move(input);
  j["dims"] = Json::array({v.dim_s, v.dim_e});
  j["mode"] = std::string(to_string(mode));
  j["tolerance"] = tol;
  j["system_channel"] = channel_json(sys_k, sys_report);
  j["environment_channel"] = channel_json(env_k, env_report);
  j["verdicts"] = {
      {"system_unital", sys_report.is_unital},
      {"environment_unital", env_report.is_unital},
      {"consistent", sys_report.is_unital == env_report.is_unital},
  };
  j["dilation_defect"] = {
      {"system", dilation_defect(sys_k, sys_report, v.system_initial, sys_out)},
      {"environment", dilation_defect(env_k, env_report, v.environment_initial, env_out)},
  };
  j["joint_order"] = "system,environment";
  j["states"] = {
      {"joint_out", to_json(joint_out)},
      {"sys_in", to_json(v.system_initial)},
      {"sys_out", to_json(sys_out)},
      {"env_in", to_json(v.environment_initial)},
      {"env_out", to_json(env_out)},
  };
  auto req_of = [&](const DensityMatrix& rho) {
    return to_json(req(rho, Basis::computational(rho.dim()), a.diag_tol));
  };
  j["req_joint_out"] = req_of(joint_out);
  j["req_sys_in"] = req_of(v.system_initial);
  j["req_sys_out"] = req_of(sys_out);
  j["req_env_in"] = req_of(v.environment_initial);
  j["req_env_out"] = req_of(env_out);
  j["meta"] = meta();

  const bool failed = a.assert_unital && !(sys_report.is_unital && env_report.is_unital);
  return {failed ? kVerdictNegative : kSuccess, std::move(j)};
}

// --- extract-kraus ----------------------------------------------------------

struct ExtractArgs {
  std::string unitary;
  std::vector<std::size_t> dims;
  std::string trace = "env";
  std::string state;
  std::string mode = "indexed";
  bool prune = false;
  bool assert_unital = false;
  bool assert_cptp = false;
};

Outcome cmd_extract(const ExtractArgs& a, double tol) {
  const auto [ds, de] = split_dims(a.dims);
  const ComplexMatrix u = json_io::matrix_from_json(json_io::read_file(a.unitary));
  const DensityMatrix co = json_io::density_from_json(json_io::read_file(a.state));
  const KrausMode mode = parse_kraus_mode(a.mode);
  KrausSet k = [&] {
    if (a.trace == "env") return extract_system_kraus(u, ds, de, co, mode);
    if (a.trace == "sys") return extract_env_kraus(u, ds, de, co, mode);
    throw InvalidArgument("--trace expects 'env' or 'sys'");
  }();
  if (a.prune) k = k.pruned();
  const auto report = channel_report(k, tol);
  Json j = to_json(k);
  j["report"] = to_json(report);
  j["meta"] = meta();
  const bool failed = (a.assert_unital && !report.is_unital) || (a.assert_cptp && !report.is_cptp);
  return {failed ? kVerdictNegative : kSuccess, std::move(j)};
}

// --- check-unitality --------------------------------------------------------

struct CheckArgs {
  std::string kraus;
  bool assert_unital = false;
  bool assert_cptp = false;
};

Outcome cmd_check(const CheckArgs& a, double tol) {
  const KrausSet k = json_io::kraus_from_json(json_io::read_file(a.kraus));
  const auto report = channel_report(k, tol);
  Json j = to_json(report);
  j["meta"] = meta();
  const bool failed = (a.assert_unital && !report.is_unital) || (a.assert_cptp && !report.is_cptp);
  return {failed ? kVerdictNegative : kSuccess, std::move(j)};
}

// --- req --------------------------------------------------------------------

struct ReqArgs {
  std::string state;
  std::string basis = "computational";
  double diag_tol = 1e-10;
};

Outcome cmd_req(const ReqArgs& a) {
  const DensityMatrix rho = json_io::density_from_json(json_io::read_file(a.state));
  const Basis basis = parse_basis_option(a.basis, rho.dim());
  Json j = to_json(req(rho, basis, a.diag_tol));
  j["meta"] = meta();
  return {kSuccess, std::move(j)};
}

// --- verify-theorem ---------------------------------------------------------

struct VerifyArgs {
  std::string family = "controlled";
  std::vector<std::size_t> dims{2, 2};
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  std::string env_state = "pure_basis";
  std::string sys_state = "pure_basis";
  std::string fixture = "bell";
  unsigned threads = 0;
  bool records = false;
};

Outcome cmd_verify(const VerifyArgs& a, double tol) {
  TrialConfig config;
  const auto [ds, de] = split_dims(a.dims);
  config.dim_s = ds;
  config.dim_e = de;
  config.family = parse_family(a.family);
  config.seed = a.seed;
  config.env_state_spec = parse_state_spec(a.env_state);
  config.sys_state_spec = parse_state_spec(a.sys_state);
  config.unitality_tol = tol;
  config.fixture = a.fixture;
  if (a.trials == 0) throw InvalidArgument("--trials must be at least 1");
  const auto report = run_campaign(config, a.trials, a.threads);
  Json j = to_json(report, a.records);
  j["meta"] = meta();
  const bool failed = report.mixed_anomaly > 0 || report.failed > 0;
  return {failed ? kVerdictNegative : kSuccess, std::move(j)};
}

void emit(const Json& payload, const std::string& out_path, bool pretty, std::ostream& out) {
  const std::string text = payload.dump(pretty ? 2 : -1) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw InvalidArgument("cannot write '" + out_path + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extract and check the channels a joint unitary induces on system and environment."};
  app.name("unital");
  app.require_subcommand(1);
  app.fallthrough();

  double tol = kDefaultTolerance;
  std::string out_path;
  bool pretty = false;
  app.add_option("--tol", tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the JSON payload to a file instead of stdout");
  app.add_flag("--pretty", pretty, "Indent the JSON payload");

  std::function<Outcome()> action;

  ExamplesArgs ex;
  auto* examples = app.add_subcommand("examples", "Emit a built-in fixture (bell, ghz, w)");
  examples->add_option("name", ex.name)->required();
  examples->callback([&] { action = [&] { return cmd_examples(ex); }; });

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Both channels, verdicts and REQ for one setup");
  analyze->add_option("--fixture", an.fixture);
  analyze->add_option("--unitary", an.unitary);
  analyze->add_option("--dims", an.dims)->delimiter(',');
  analyze->add_option("--sys-state", an.sys_state);
  analyze->add_option("--env-state", an.env_state);
  analyze->add_option("--mode", an.mode);
  analyze->add_option("--diag-tol", an.diag_tol);
  analyze->add_flag("--prune", an.prune);
  analyze->add_flag("--assert-unital", an.assert_unital);
  analyze->callback([&] { action = [&] { return cmd_analyze(an, tol); }; });

  ExtractArgs exk;
  auto* extract = app.add_subcommand("extract-kraus", "Kraus operators of one reduced channel");
  extract->add_option("--unitary", exk.unitary)->required();
  extract->add_option("--dims", exk.dims)->delimiter(',')->required();
  extract->add_option("--trace", exk.trace, "Factor to trace out: env or sys");
  extract->add_option("--state", exk.state, "State of the traced factor")->required();
  extract->add_option("--mode", exk.mode);
  extract->add_flag("--prune", exk.prune);
  extract->add_flag("--assert-unital", exk.assert_unital);
  extract->add_flag("--assert-cptp", exk.assert_cptp);
  extract->callback([&] { action = [&] { return cmd_extract(exk, tol); }; });

  CheckArgs ck;
  auto* check = app.add_subcommand("check-unitality", "Completeness and unitality of a Kraus set");
  check->add_option("--kraus", ck.kraus)->required();
  check->add_flag("--assert-unital", ck.assert_unital);
  check->add_flag("--assert-cptp", ck.assert_cptp);
  check->callback([&] { action = [&] { return cmd_check(ck, tol); }; });

  ReqArgs rq;
  auto* req_cmd = app.add_subcommand("req", "Relative entropy of quantumness of a state");
  req_cmd->add_option("--state", rq.state)->required();
  req_cmd->add_option("--basis", rq.basis, "computational or file:<path>");
  req_cmd->add_option("--diag-tol", rq.diag_tol);
  req_cmd->callback([&] { action = [&] { return cmd_req(rq); }; });

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify-theorem", "Randomized unitality co-occurrence campaign");
  verify->add_option("--family", vf.family, "controlled, haar or paper_fixture");
  verify->add_option("--dims", vf.dims)->delimiter(',');
  verify->add_option("--trials", vf.trials);
  verify->add_option("--seed", vf.seed);
  verify->add_option("--env-state", vf.env_state);
  verify->add_option("--sys-state", vf.sys_state);
  verify->add_option("--fixture", vf.fixture);
  verify->add_option("--threads", vf.threads);
  verify->add_flag("--records", vf.records, "Include every trial record");
  verify->callback([&] { action = [&] { return cmd_verify(vf, tol); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "unital: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const Outcome outcome = action();
    emit(outcome.payload, out_path, pretty, out);
    return outcome.code;
  } catch (const std::exception& e) {
    err << "unital: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace unital::cli
