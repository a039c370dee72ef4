#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unate/errors.hpp"
#include "unate/generators.hpp"
#include "unate/groundtruth.hpp"
#include "unate/harness.hpp"
#include "unate/testers.hpp"
#include "unate/verify.hpp"

namespace {

using nlohmann::json;
using namespace unate;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitUsage = 64;

struct Globals {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write '" + g.out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void require_json(const Globals& g, const char* command) {
  if (g.format != "json") throw UsageError(std::string(command) + " supports --format json only");
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

json parse_json_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("bad ") + what + ": " + e.what());
  }
}

// A function document is a dense table {"n","d","values"} or a family spec.
Instance load_instance(const std::string& input, const std::string& spec, std::uint64_t seed) {
  if (input.empty() == spec.empty()) throw UsageError("give exactly one of --input and --spec");
  const json doc = input.empty() ? parse_json_arg(spec, "--spec") : read_json_file(input);
  if (!doc.contains("family")) {
    Function f = dense_from_json(doc);
    json rec = dense_to_json(f);
    rec["family"] = "dense";
    return {f, rec, std::nullopt};
  }
  Rng rng(seed);
  return instantiate(doc, rng);
}

// "16..1024" doubles from the first to the last value; otherwise a comma list.
std::vector<std::uint32_t> parse_range(const std::string& text) {
  std::vector<std::uint32_t> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const auto lo = std::stoul(text.substr(0, dots));
      const auto hi = std::stoul(text.substr(dots + 2));
      if (lo == 0 || hi < lo) throw UsageError("bad range '" + text + "'");
      for (auto v = lo; v <= hi; v *= 2) out.push_back(static_cast<std::uint32_t>(v));
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty range");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unateness testers, hard instances and exact oracles"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed (required for experiment and verify)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Write output to PATH instead of stdout");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  // test
  auto* test = app.add_subcommand("test", "Run one tester on a function file or family spec");
  std::string tester_name;
  double eps = 0.0;
  std::string input;
  std::string spec;
  std::uint64_t instance_seed = 0;
  std::string level_bound = "sufficient";
  test->add_option("--tester", tester_name, "na-cube | ad-cube | na-grid | ad-grid")->required();
  test->add_option("--eps", eps, "Distance parameter in (0, 1/2)")->required();
  test->add_option("--input", input, "Function JSON file (dense table or family record)");
  test->add_option("--spec", spec, "Inline family spec JSON");
  auto* instance_seed_opt = test->add_option("--instance-seed", instance_seed, "Seed for drawing the instance (default: --seed)");
  test->add_option("--level-bound", level_bound, "sufficient | extended");

  // gen
  auto* gen = app.add_subcommand("gen", "Emit an instance as a parameter record or dense table");
  std::string gen_spec;
  std::string family;
  std::uint32_t gen_n = 2;
  std::uint32_t gen_d = 4;
  double gen_eps = 0.25;
  std::uint32_t gen_j = 1;
  std::uint32_t gen_k = 1;
  std::uint32_t lift_n = 0;
  std::string member = "g";
  bool dense = false;
  gen->add_option("--spec", gen_spec, "Inline family spec JSON (overrides the family flags)");
  gen->add_option("--family", family, "yes | no | glift | bmono | constant")
      ->check(CLI::IsMember({"yes", "no", "glift", "bmono", "constant"}));
  gen->add_option("--n", gen_n, "Side length");
  gen->add_option("--d", gen_d, "Dimension (base dimension for yes/no)");
  gen->add_option("--eps", gen_eps, "glift: distance parameter, rounded down to 1/(2 eps) a power of two");
  gen->add_option("--j", gen_j, "glift: bit index, 1-based");
  gen->add_option("--k", gen_k, "glift: block index, 1-based");
  gen->add_option("--lift-n", lift_n, "yes/no: lift to [n]^d'");
  gen->add_option("--member", member, "glift: g (far) or f (monotone companion)")->check(CLI::IsMember({"g", "f"}));
  gen->add_flag("--dense", dense, "Emit the full value table");

  // exact
  auto* exact = app.add_subcommand("exact", "Ground-truth distance certificate and mu profile");
  std::string exact_input;
  std::string exact_spec;
  std::uint64_t mu_lines = 2000;
  exact->add_option("--input", exact_input, "Function JSON file");
  exact->add_option("--spec", exact_spec, "Inline family spec JSON");
  exact->add_option("--mu-lines", mu_lines, "Sampled lines per dimension when the domain is too large to scan");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment config and print the report");
  std::string config_path;
  experiment->add_option("--config", config_path, "Experiment config JSON")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Query counts across a parameter range");
  std::string sweep_tester;
  double sweep_eps = 0.125;
  std::string n_range = "2";
  std::string d_range = "16..1024";
  std::uint64_t sweep_trials = 1000;
  std::string sweep_family = R"({"family":"constant"})";
  sweep->add_option("--tester", sweep_tester, "Tester id")->required();
  sweep->add_option("--eps", sweep_eps, "Distance parameter");
  sweep->add_option("--n", n_range, "Side lengths: list a,b,c or doubling range a..b");
  sweep->add_option("--d", d_range, "Dimensions: list or doubling range");
  sweep->add_option("--trials", sweep_trials, "Trials per point (adaptive and grid testers)");
  sweep->add_option("--family", sweep_family, "Family spec JSON; n and d are filled in per point");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the property checks and acceptance criteria");
  std::string scope = "quick";
  verify->add_option("--scope", scope, "quick | full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (test->parsed()) {
      require_json(g, "test");
      const TesterId id = tester_from_string(tester_name);
      const Instance inst = load_instance(input, spec, instance_seed_opt->count() ? instance_seed : g.seed);
      CountingOracle oracle(inst.function, Recording::Off);
      Rng rng(g.seed);
      const Verdict v = run_tester(id, oracle, eps, rng, level_bound_from_string(level_bound));
      json doc = to_json(v, g.seed);
      doc["tester"] = std::string(to_string(id));
      doc["eps"] = eps;
      emit(g, doc.dump(2));
      return v.rejected() ? kExitReject : kExitAccept;
    }

    if (gen->parsed()) {
      require_json(g, "gen");
      json request;
      if (!gen_spec.empty()) {
        request = parse_json_arg(gen_spec, "--spec");
      } else {
        if (family.empty()) throw UsageError("gen needs --family or --spec");
        request = {{"family", family}, {"d", gen_d}};
        if (family == "glift") {
          const double admissible = admissible_lift_epsilon(gen_eps);
          if (admissible != gen_eps) {
            std::cerr << "eps " << gen_eps << " rounded down to " << admissible << "\n";
            request["requested_eps"] = gen_eps;
          }
          request.update({{"n", gen_n}, {"eps", admissible}, {"j", gen_j}, {"k", gen_k}, {"member", member}});
        } else if (family == "bmono" || family == "constant") {
          request["n"] = gen_n;
        } else if (lift_n > 0) {
          request["lift_n"] = lift_n;
        }
      }
      Rng rng(g.seed);
      const Instance inst = instantiate(request, rng);
      json doc = dense ? dense_to_json(inst.function) : inst.record;
      doc["seed"] = g.seed;
      if (request.contains("requested_eps")) doc["requested_eps"] = request["requested_eps"];
      emit(g, doc.dump(dense ? -1 : 2));
      return kExitAccept;
    }

    if (exact->parsed()) {
      require_json(g, "exact");
      const Instance inst = load_instance(exact_input, exact_spec, g.seed);
      const Function& f = inst.function;
      const bool no_record = inst.hard && inst.record.value("family", std::string()) == "no" &&
                             !inst.record.contains("lift_n");
      const DistanceCertificate cert = no_record ? no_family_distance_lb(*inst.hard) : certify(f);
      json doc = to_json(cert);
      const bool scan = f.shape().size() <= (Index{1} << 22);
      Rng rng(g.seed);
      const MuProfile mu = scan ? mu_profile(f) : sampled_mu_profile(f, mu_lines, rng);
      const json mu_doc = to_json(mu);
      doc["mu"] = mu_doc["mu"];
      doc["mu_mode"] = mu_doc["mode"];
      doc["mu_estimated"] = !scan;
      if (!scan) doc["mu_lines_per_dimension"] = mu_lines;
      doc["n"] = f.shape().n();
      doc["d"] = f.shape().d();
      emit(g, doc.dump(2));
      return kExitAccept;
    }

    if (experiment->parsed()) {
      if (seed_opt->count() == 0) throw UsageError("experiment requires --seed");
      json doc = read_json_file(config_path);
      doc["seed"] = g.seed;
      ExperimentConfig config = experiment_config_from_json(doc);
      config.jobs = g.jobs;
      const ExperimentReport report = run_experiment(config);
      emit(g, g.format == "csv" ? trials_csv(report) : to_json(report).dump(2));
      return kExitAccept;
    }

    if (sweep->parsed()) {
      SweepConfig config;
      config.tester = tester_from_string(sweep_tester);
      config.eps = sweep_eps;
      config.trials = sweep_trials;
      config.seed = g.seed;
      config.jobs = g.jobs;
      config.generator = parse_json_arg(sweep_family, "--family");
      for (auto n : parse_range(n_range)) {
        for (auto d : parse_range(d_range)) config.points.emplace_back(n, d);
      }
      const auto rows = query_scaling_sweep(config);
      if (g.format == "csv") {
        emit(g, sweep_csv(rows));
      } else {
        json doc = {{"tester", std::string(to_string(config.tester))}, {"eps", config.eps}, {"rows", json::array()}};
        for (const auto& r : rows) doc["rows"].push_back(to_json(r));
        emit(g, doc.dump(2));
      }
      return kExitAccept;
    }

    if (verify->parsed()) {
      require_json(g, "verify");
      if (seed_opt->count() == 0) throw UsageError("verify requires --seed");
      VerifyOptions options;
      options.scope = verify_scope_from_string(scope);
      options.seed = g.seed;
      options.jobs = g.jobs;
      options.on_result = [](const CheckResult& r) {
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.summary << "\n";
      };
      const VerifySummary summary = verify_suite(options);
      emit(g, to_json(summary).dump(2));
      return summary.pass() ? kExitAccept : kExitVerifyFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const unate::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
