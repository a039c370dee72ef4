#include "unate/harness.hpp"

#include <cmath>
#include <sstream>

#include "unate/errors.hpp"
#include "unate/parallel.hpp"

namespace unate {

namespace {

std::uint64_t first_output(Rng rng) { return rng.engine()(); }

void check_open_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("eps must lie in (0, 1/2)");
}

struct PreparedInstance {
  Function function;
  nlohmann::json record;
  std::uint64_t seed = 0;
  std::optional<DistanceCertificate> distance;
};

std::optional<DistanceCertificate> certify_instance(const Instance& inst, const nlohmann::json& spec,
                                                    CertificationMode mode) {
  switch (mode) {
    case CertificationMode::None:
      return std::nullopt;
    case CertificationMode::Exact:
      return dist_unate_exact(inst.function);
    case CertificationMode::LowerBound:
      if (inst.hard && spec.value("family", std::string()) == "no" && !spec.contains("lift_n")) {
        return no_family_distance_lb(*inst.hard);
      }
      return certify(inst.function);
  }
  return std::nullopt;
}

PreparedInstance prepare(const ExperimentConfig& config, std::uint64_t index) {
  const std::uint64_t seed = instance_seed(config.seed, index);
  Rng rng(seed);
  Instance inst = instantiate(config.generator, rng);
  auto distance = certify_instance(inst, config.generator, config.certification);
  Function f = inst.function;
  if (!f.is_dense() && f.shape().size() <= config.materialize_limit) f = f.materialize();
  return {std::move(f), std::move(inst.record), seed, std::move(distance)};
}

TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t t, const PreparedInstance& inst,
                      std::uint64_t instance_index) {
  TrialRecord rec;
  rec.trial = t;
  rec.seed = trial_seed(config.seed, t);
  rec.instance = instance_index;
  rec.instance_seed = inst.seed;
  CountingOracle oracle(inst.function, Recording::Off);
  Rng rng(rec.seed);
  const Verdict v = run_tester(config.tester, oracle, config.eps, rng, config.level_bound);
  rec.decision = v.decision;
  rec.queries = v.queries;
  rec.aborted = v.aborted;
  if (v.rejected()) rec.witness_valid = v.witness && verify_witness(inst.function, *v.witness);
  rec.distance = inst.distance;
  rec.eligible = config.certification != CertificationMode::None && inst.distance &&
                 inst.distance->value.to_double() >= config.threshold;
  return rec;
}

std::string decision_string(Decision d) { return d == Decision::Reject ? "reject" : "accept"; }

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw FormatError("bad rational '" + s + "'");
  }
}

CertificateKind kind_from_string(const std::string& s) {
  if (s == "exact") return CertificateKind::Exact;
  if (s == "lower-bound") return CertificateKind::LowerBound;
  throw FormatError("unknown certificate kind '" + s + "'");
}

CertificateMethod method_from_string(const std::string& s) {
  for (auto m : {CertificateMethod::VertexCover, CertificateMethod::Matching, CertificateMethod::LNS,
                 CertificateMethod::StructuralNoFamily}) {
    if (to_string(m) == s) return m;
  }
  throw FormatError("unknown certificate method '" + s + "'");
}

}  // namespace

std::string tool_version() { return UNATE_VERSION; }

std::string to_string(CertificationMode mode) {
  switch (mode) {
    case CertificationMode::None: return "none";
    case CertificationMode::Exact: return "exact";
    case CertificationMode::LowerBound: return "lower-bound";
  }
  return "?";
}

CertificationMode certification_from_string(const std::string& name) {
  if (name == "none") return CertificationMode::None;
  if (name == "exact") return CertificationMode::Exact;
  if (name == "lower-bound") return CertificationMode::LowerBound;
  throw ParameterError("unknown certification mode '" + name + "'");
}

std::string to_string(LevelBound bound) { return bound == LevelBound::Extended ? "extended" : "sufficient"; }

LevelBound level_bound_from_string(const std::string& name) {
  if (name == "sufficient") return LevelBound::Sufficient;
  if (name == "extended") return LevelBound::Extended;
  throw ParameterError("unknown level bound '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  check_open_epsilon(eps);
  if (certification != CertificationMode::None && !(threshold > 0.0 && threshold <= 1.0)) {
    throw ParameterError("certification threshold must lie in (0, 1]");
  }
  if (jobs < 1) throw ParameterError("jobs must be at least 1");
  if (!generator.is_object() || !generator.contains("family")) {
    throw ParameterError("generator must be a family spec object");
  }
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json doc = {{"tester", std::string(to_string(c.tester))},
                        {"generator", c.generator},
                        {"eps", c.eps},
                        {"trials", c.trials},
                        {"seed", c.seed},
                        {"certification", to_string(c.certification)},
                        {"pool", c.pool},
                        {"materialize_limit", c.materialize_limit},
                        {"level_bound", to_string(c.level_bound)}};
  if (c.certification != CertificationMode::None) doc["threshold"] = c.threshold;
  return doc;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  ExperimentConfig c;
  try {
    c.tester = tester_from_string(doc.at("tester").get<std::string>());
    c.generator = doc.at("generator");
    c.eps = doc.at("eps").get<double>();
    c.trials = doc.value("trials", c.trials);
    c.seed = doc.value("seed", c.seed);
    c.certification = certification_from_string(doc.value("certification", std::string("none")));
    c.threshold = doc.value("threshold", c.threshold);
    c.jobs = doc.value("jobs", c.jobs);
    c.pool = doc.value("pool", c.pool);
    c.materialize_limit = doc.value("materialize_limit", c.materialize_limit);
    c.level_bound = level_bound_from_string(doc.value("level_bound", std::string("sufficient")));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return first_output(Rng::derive(master, trial, 0));
}

std::uint64_t instance_seed(std::uint64_t master, std::uint64_t instance) {
  return first_output(Rng::derive(master, instance, 1));
}

bool operator==(const ExperimentAggregates& a, const ExperimentAggregates& b) {
  return a.trials == b.trials && a.rejections == b.rejections && a.rejection_rate == b.rejection_rate &&
         a.rejection_ci == b.rejection_ci && a.conditional == b.conditional && a.queries == b.queries &&
         a.aborts == b.aborts && a.invalid_witnesses == b.invalid_witnesses;
}

ExperimentAggregates aggregate(const std::vector<TrialRecord>& trials, const ExperimentConfig& config) {
  ExperimentAggregates a;
  a.trials = trials.size();
  std::vector<std::uint64_t> queries;
  queries.reserve(trials.size());
  ConditionalRate cond;
  for (const auto& t : trials) {
    const bool rejected = t.decision == Decision::Reject;
    a.rejections += rejected;
    a.aborts += t.aborted;
    a.invalid_witnesses += rejected && !t.witness_valid.value_or(false);
    queries.push_back(t.queries);
    if (t.eligible) {
      ++cond.eligible;
      cond.rejections += rejected;
    }
  }
  if (a.trials > 0) a.rejection_rate = static_cast<double>(a.rejections) / static_cast<double>(a.trials);
  a.rejection_ci = wilson_interval(a.rejections, a.trials);
  a.queries = summarize_counts(queries);
  if (config.certification != CertificationMode::None) {
    if (cond.eligible > 0) cond.rate = static_cast<double>(cond.rejections) / static_cast<double>(cond.eligible);
    cond.ci = wilson_interval(cond.rejections, cond.eligible);
    a.conditional = cond;
  }
  return a;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.version = tool_version();
  report.trials.resize(config.trials);

  if (config.pool > 0) {
    std::vector<std::optional<PreparedInstance>> pool(config.pool);
    parallel_for(config.pool, config.jobs, [&](std::uint64_t i) { pool[i] = prepare(config, i); });
    parallel_for(config.trials, config.jobs, [&](std::uint64_t t) {
      const std::uint64_t i = t % config.pool;
      report.trials[t] = run_trial(config, t, *pool[i], i);
    });
    for (auto& p : pool) report.instances.push_back(p->record);
  } else {
    parallel_for(config.trials, config.jobs, [&](std::uint64_t t) {
      const PreparedInstance inst = prepare(config, t);
      report.trials[t] = run_trial(config, t, inst, t);
    });
  }
  report.aggregates = aggregate(report.trials, config);
  return report;
}

nlohmann::json to_json(const TrialRecord& r) {
  nlohmann::json doc = {{"trial", r.trial},
                        {"seed", r.seed},
                        {"instance", r.instance},
                        {"instance_seed", r.instance_seed},
                        {"decision", decision_string(r.decision)},
                        {"queries", r.queries},
                        {"aborted", r.aborted},
                        {"eligible", r.eligible}};
  doc["witness_valid"] = r.witness_valid ? nlohmann::json(*r.witness_valid) : nlohmann::json(nullptr);
  if (r.distance) {
    doc["distance"] = to_string(r.distance->value);
    doc["distance_kind"] = to_string(r.distance->kind);
    doc["distance_method"] = to_string(r.distance->method);
  } else {
    doc["distance"] = nullptr;
  }
  return doc;
}

TrialRecord trial_record_from_json(const nlohmann::json& doc) {
  TrialRecord r;
  try {
    r.trial = doc.at("trial").get<std::uint64_t>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.instance = doc.at("instance").get<std::uint64_t>();
    r.instance_seed = doc.at("instance_seed").get<std::uint64_t>();
    const auto decision = doc.at("decision").get<std::string>();
    if (decision != "accept" && decision != "reject") throw FormatError("bad decision '" + decision + "'");
    r.decision = decision == "reject" ? Decision::Reject : Decision::Accept;
    r.queries = doc.at("queries").get<std::uint64_t>();
    r.aborted = doc.at("aborted").get<bool>();
    r.eligible = doc.at("eligible").get<bool>();
    if (!doc.at("witness_valid").is_null()) r.witness_valid = doc.at("witness_valid").get<bool>();
    if (!doc.at("distance").is_null()) {
      DistanceCertificate c;
      c.value = rational_from_string(doc.at("distance").get<std::string>());
      c.kind = kind_from_string(doc.at("distance_kind").get<std::string>());
      c.method = method_from_string(doc.at("distance_method").get<std::string>());
      r.distance = c;
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad trial record: ") + e.what());
  }
  return r;
}

nlohmann::json to_json(const ExperimentAggregates& a) {
  nlohmann::json doc = {{"trials", a.trials},
                        {"rejections", a.rejections},
                        {"rejection_rate", a.rejection_rate},
                        {"rejection_wilson95", to_json(a.rejection_ci)},
                        {"queries", to_json(a.queries)},
                        {"aborts", a.aborts},
                        {"invalid_witnesses", a.invalid_witnesses}};
  if (a.conditional) {
    doc["conditional"] = {{"eligible", a.conditional->eligible},
                          {"rejections", a.conditional->rejections},
                          {"rejection_rate", a.conditional->rate},
                          {"rejection_wilson95", to_json(a.conditional->ci)}};
  } else {
    doc["conditional"] = nullptr;
  }
  return doc;
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : report.trials) trials.push_back(to_json(t));
  nlohmann::json doc = {{"tool", "unatest"},
                        {"version", report.version},
                        {"config", to_json(report.config)},
                        {"aggregates", to_json(report.aggregates)},
                        {"trials", std::move(trials)}};
  if (!report.instances.empty()) doc["instances"] = report.instances;
  return doc;
}

std::string trials_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,seed,instance,instance_seed,decision,queries,aborted,witness_valid,distance,eligible\n";
  for (const auto& t : report.trials) {
    out << t.trial << ',' << t.seed << ',' << t.instance << ',' << t.instance_seed << ','
        << decision_string(t.decision) << ',' << t.queries << ',' << (t.aborted ? 1 : 0) << ','
        << (t.witness_valid ? (*t.witness_valid ? "1" : "0") : "") << ','
        << (t.distance ? to_string(t.distance->value) : "") << ',' << (t.eligible ? 1 : 0) << '\n';
  }
  return out.str();
}

bool audit_report(const nlohmann::json& report) {
  const ExperimentConfig config = experiment_config_from_json(report.at("config"));
  std::vector<TrialRecord> trials;
  for (const auto& row : report.at("trials")) trials.push_back(trial_record_from_json(row));
  for (const auto& t : trials) {
    const bool eligible = config.certification != CertificationMode::None && t.distance &&
                          t.distance->value.to_double() >= config.threshold;
    if (eligible != t.eligible) return false;
  }
  return to_json(aggregate(trials, config)) == report.at("aggregates");
}

// --- sweep ----------------------------------------------------------------------

double growth_model(TesterId tester, std::uint32_t n, std::uint32_t d, double eps) {
  const double de = d / eps;
  const double ln = std::log2(static_cast<double>(n));
  switch (tester) {
    case TesterId::NonadaptiveHypercube: return de * std::log2(de);
    case TesterId::AdaptiveHypercube: return de;
    case TesterId::NonadaptiveHypergrid: return de * (std::log2(de) + ln);
    case TesterId::AdaptiveHypergrid: return de * ln;
  }
  return 0.0;
}

std::uint64_t nonadaptive_hypercube_queries(std::uint32_t d, double eps, LevelBound bound) {
  return 2 * WorkInvestmentSchedule::hypercube(d, eps, bound).total_samples();
}

std::vector<SweepRow> query_scaling_sweep(const SweepConfig& config) {
  check_open_epsilon(config.eps);
  if (config.points.empty()) throw ParameterError("empty sweep range");
  const bool cube = config.tester == TesterId::NonadaptiveHypercube || config.tester == TesterId::AdaptiveHypercube;
  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < config.points.size(); ++p) {
    const auto [n, d] = config.points[p];
    if (n < 2 || d < 1) throw ParameterError("sweep points need n >= 2 and d >= 1");
    if (cube && n != 2) throw ParameterError("hypercube testers need n = 2");
    SweepRow row;
    row.n = n;
    row.d = d;
    row.eps = config.eps;
    if (config.tester == TesterId::NonadaptiveHypercube) {
      row.closed_form = true;
      row.max_queries = nonadaptive_hypercube_queries(d, config.eps, config.level_bound);
      row.mean_queries = static_cast<double>(row.max_queries);
    } else {
      ExperimentConfig ec;
      ec.tester = config.tester;
      ec.eps = config.eps;
      ec.trials = config.trials;
      ec.seed = first_output(Rng::derive(config.seed, p, 2));
      ec.jobs = config.jobs;
      ec.pool = 1;
      ec.level_bound = config.level_bound;
      ec.generator = config.generator;
      const std::string family = config.generator.value("family", std::string());
      if (family == "yes" || family == "no") {
        ec.generator["d"] = d;
        if (n > 2) ec.generator["lift_n"] = n;
      } else {
        ec.generator["n"] = n;
        ec.generator["d"] = d;
      }
      const ExperimentReport rep = run_experiment(ec);
      row.trials = rep.aggregates.trials;
      row.mean_queries = rep.aggregates.queries.mean;
      row.max_queries = rep.aggregates.queries.max;
    }
    row.model = growth_model(config.tester, n, d, config.eps);
    row.ratio = row.model > 0 ? row.mean_queries / row.model : 0.0;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const SweepRow& r) {
  return {{"n", r.n},         {"d", r.d},
          {"eps", r.eps},     {"closed_form", r.closed_form},
          {"trials", r.trials}, {"mean_queries", r.mean_queries},
          {"max_queries", r.max_queries}, {"model", r.model},
          {"ratio", r.ratio}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "n,d,eps,closed_form,trials,mean_queries,max_queries,model,ratio\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.d << ',' << r.eps << ',' << (r.closed_form ? 1 : 0) << ',' << r.trials << ','
        << r.mean_queries << ',' << r.max_queries << ',' << r.model << ',' << r.ratio << '\n';
  }
  return out.str();
}

MuProfile sampled_mu_profile(const Function& f, std::uint64_t lines, Rng& rng) {
  if (lines == 0) throw ParameterError("need at least one sampled line");
  const GridShape& shape = f.shape();
  const std::uint32_t n = shape.n();
  MuProfile p;
  p.mode = MuMode::LineDistance;
  std::vector<Value> line(n);
  for (std::size_t i = 0; i < shape.d(); ++i) {
    const Index stride = shape.stride(i);
    Rational down;
    Rational up;
    for (std::uint64_t s = 0; s < lines; ++s) {
      const Index base = shape.line_base(i, rng.below(shape.line_count()));
      for (Coord t = 0; t < n; ++t) line[t] = f(base + t * stride);
      down += dist_line_monotone(line);
      up += dist_line_antimonotone(line);
    }
    const Rational scale(1, static_cast<std::int64_t>(lines));
    p.alpha.push_back(down * scale);
    p.beta.push_back(up * scale);
    p.mu.push_back(std::min(p.alpha.back(), p.beta.back()));
    p.b_star.push_back(!(p.alpha.back() < p.beta.back()));
  }
  return p;
}

}  // namespace unate
