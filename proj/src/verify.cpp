#include "unate/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "unate/errors.hpp"
#include "unate/generators.hpp"
#include "unate/groundtruth.hpp"
#include "unate/harness.hpp"
#include "unate/parallel.hpp"

namespace unate {

namespace {

using Json = nlohmann::json;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string num(double v) { return fmt("%.4g", v); }

struct Context {
  VerifyScope scope;
  std::uint64_t seed;
  unsigned jobs;

  bool full() const { return scope == VerifyScope::Full; }
  std::uint64_t pick(std::uint64_t quick, std::uint64_t full_size) const { return full() ? full_size : quick; }
  /// Independent master seed per check.
  std::uint64_t seed_for(std::uint64_t tag) const { return trial_seed(seed, 1000 + tag); }
};

Function random_dense(const GridShape& shape, Rng& rng) {
  static constexpr std::uint64_t kRanges[] = {2, 3, 5, 16};
  const std::uint64_t range = kRanges[rng.below(4)];
  std::vector<Value> table(shape.size());
  for (auto& v : table) v = static_cast<Value>(rng.below(range));
  return make_dense(shape, std::move(table));
}

Json experiment_summary(const ExperimentReport& r) {
  Json doc = to_json(r.aggregates);
  doc["tester"] = std::string(to_string(r.config.tester));
  doc["generator"] = r.config.generator;
  doc["eps"] = r.config.eps;
  return doc;
}

ExperimentConfig base_config(const Context& ctx, TesterId tester, Json generator, double eps,
                             std::uint64_t trials, std::uint64_t tag) {
  ExperimentConfig c;
  c.tester = tester;
  c.generator = std::move(generator);
  c.eps = eps;
  c.trials = trials;
  c.seed = ctx.seed_for(tag);
  c.jobs = ctx.jobs;
  return c;
}

Rational mu_sum(const MuProfile& p, const Orientation& b) {
  Rational s;
  for (std::size_t i = 0; i < b.size(); ++i) s += b[i] ? p.beta[i] : p.alpha[i];
  return s;
}

Orientation mask_orientation(std::uint32_t d, std::uint64_t mask) {
  Orientation b(d);
  for (std::uint32_t i = 0; i < d; ++i) b[i] = ((mask >> i) & 1u) != 0;
  return b;
}

// --- criteria ------------------------------------------------------------------

CheckResult criterion_one_sided(const Context& ctx) {
  CheckResult r{"criterion-1", "one-sided error on unate instances", false, "", Json::array(), 0.0};
  struct Case {
    TesterId tester;
    Json generator;
    double eps;
  };
  const std::vector<Case> cases = {
      {TesterId::NonadaptiveHypercube, {{"family", "bmono"}, {"n", 2}, {"d", 16}}, 0.125},
      {TesterId::NonadaptiveHypercube, {{"family", "yes"}, {"d", 16}}, 0.125},
      {TesterId::AdaptiveHypercube, {{"family", "bmono"}, {"n", 2}, {"d", 16}}, 0.125},
      {TesterId::AdaptiveHypercube, {{"family", "yes"}, {"d", 16}}, 0.125},
      {TesterId::NonadaptiveHypergrid, {{"family", "bmono"}, {"n", 8}, {"d", 6}}, 0.25},
      {TesterId::NonadaptiveHypergrid, {{"family", "yes"}, {"d", 4}, {"lift_n", 8}}, 0.25},
      {TesterId::AdaptiveHypergrid, {{"family", "bmono"}, {"n", 8}, {"d", 6}}, 0.125},
      {TesterId::AdaptiveHypergrid, {{"family", "yes"}, {"d", 4}, {"lift_n", 8}}, 0.125},
  };
  // Each tester gets 10^4 trials (full scope), split over its two families.
  const std::uint64_t trials = ctx.pick(250, 5000);
  std::uint64_t total_trials = 0;
  std::uint64_t rejections = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    ExperimentConfig c = base_config(ctx, cases[k].tester, cases[k].generator, cases[k].eps, trials, 10 + k);
    c.pool = ctx.pick(10, 20);
    const ExperimentReport rep = run_experiment(c);
    total_trials += rep.aggregates.trials;
    rejections += rep.aggregates.rejections;
    r.detail.push_back(experiment_summary(rep));
  }
  r.pass = rejections == 0;
  r.summary = std::to_string(rejections) + " rejections in " + std::to_string(total_trials) +
              " trials over 4 testers x {bmono, yes}";
  return r;
}

CheckResult criterion_nonadaptive_soundness(const Context& ctx) {
  CheckResult r{"criterion-2", "nonadaptive hypercube tester rejects certified-far No instances", false, "",
                Json::object(), 0.0};
  ExperimentConfig c = base_config(ctx, TesterId::NonadaptiveHypercube, {{"family", "no"}, {"d", 16}}, 0.125,
                                   ctx.pick(300, 1300), 20);
  c.certification = CertificationMode::LowerBound;
  c.threshold = 0.125;
  const ExperimentReport rep = run_experiment(c);
  const auto& cond = *rep.aggregates.conditional;
  const std::uint64_t min_eligible = ctx.pick(250, 1000);
  r.pass = cond.eligible >= min_eligible && cond.ci.lo >= 0.60 && rep.aggregates.invalid_witnesses == 0;
  r.summary = "conditional rejection " + std::to_string(cond.rejections) + "/" + std::to_string(cond.eligible) +
              ", Wilson95 lower " + fmt("%.4f", cond.ci.lo) + " (need >= 0.60 with >= " +
              std::to_string(min_eligible) + " certified trials)";
  r.detail = experiment_summary(rep);
  return r;
}

// Exact expected query count of the adaptive hypercube tester on a unate
// function: per pass, a dimension costs 2 queries if all its edges are
// constant and 4 otherwise (resampling a non-constant edge with probability p
// takes 2/p queries on average).
double adaptive_cube_expectation(const Function& f, double eps) {
  const Function g = f.materialize();
  const auto table = g.table();
  const std::uint32_t d = f.shape().d();
  double per_pass = 0.0;
  for (std::uint32_t i = 0; i < d; ++i) {
    const Index bit = Index{1} << i;
    bool moving = false;
    for (Index x = 0; x < table.size() && !moving; ++x) moving = !(x & bit) && table[x] != table[x | bit];
    per_pass += moving ? 4.0 : 2.0;
  }
  return per_pass * static_cast<double>(adaptive_repetitions(eps));
}

CheckResult criterion_adaptive_budget(const Context& ctx) {
  CheckResult r{"criterion-3", "adaptive hypercube tester query budget", true, "", Json::array(), 0.0};
  const std::vector<Json> generators = {{{"family", "bmono"}, {"n", 2}, {"d", 16}},
                                        {{"family", "yes"}, {"d", 16}},
                                        {{"family", "no"}, {"d", 16}}};
  const double eps = 0.125;
  // The budget bounds an expectation that the Yes family attains exactly, so
  // the sample mean may sit slightly above it; fail only when it exceeds the
  // budget by more than this many standard errors.
  const double z_fail = 3.0;
  std::string parts;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    ExperimentConfig c = base_config(ctx, TesterId::AdaptiveHypercube, generators[k], eps, ctx.pick(2000, 10000), 30 + k);
    c.pool = 50;
    const ExperimentReport rep = run_experiment(c);
    std::vector<Function> pool;
    for (const auto& rec : rep.instances) {
      Rng unused(0);
      pool.push_back(instantiate(rec, unused).function);
    }
    const std::uint32_t d = pool.front().shape().d();
    const double budget = 40.0 * d / eps;
    const double cap = 240.0 * d / eps;
    const auto& q = rep.aggregates.queries;
    double ss = 0.0;
    for (const auto& t : rep.trials) ss += (static_cast<double>(t.queries) - q.mean) * (static_cast<double>(t.queries) - q.mean);
    const double se = std::sqrt(ss / static_cast<double>(q.count - 1) / static_cast<double>(q.count));
    const double z = se > 0 ? (q.mean - budget) / se : (q.mean > budget ? INFINITY : -INFINITY);
    const bool ok = z <= z_fail && static_cast<double>(q.max) <= cap;
    r.pass = r.pass && ok;
    Json doc = experiment_summary(rep);
    doc["d"] = d;
    doc["mean_budget"] = budget;
    doc["max_budget"] = cap;
    doc["standard_error"] = se;
    doc["z_over_budget"] = z;
    std::string expect;
    if (generators[k]["family"] != "no") {
      // Trial t ran on instance t mod pool.
      std::vector<double> per_instance;
      for (const auto& f : pool) per_instance.push_back(adaptive_cube_expectation(f, eps));
      double expected = 0.0;
      for (const auto& t : rep.trials) expected += per_instance[t.instance];
      expected /= static_cast<double>(rep.trials.size());
      doc["exact_expectation"] = expected;
      expect = " (exact expectation " + num(expected) + ")";
    }
    r.detail.push_back(doc);
    if (!parts.empty()) parts += "; ";
    parts += generators[k]["family"].get<std::string>() + " d=" + std::to_string(d) + ": mean " + num(q.mean) +
             " +- " + fmt("%.2g", se) + " (z " + fmt("%.2f", z) + ")" + expect + " vs " + num(budget) + ", max " + std::to_string(q.max) +
             " <= " + num(cap);
  }
  r.summary = parts;
  return r;
}

CheckResult criterion_far_fraction(const Context& ctx) {
  CheckResult r{"criterion-4", "No-family instances are 1/8-far", false, "", Json::object(), 0.0};
  const std::uint64_t draws = 1000;
  std::vector<char> far(draws);
  const std::uint64_t master = ctx.seed_for(40);
  parallel_for(draws, ctx.jobs, [&](std::uint64_t t) {
    Rng rng(instance_seed(master, t));
    const HardInstanceRecord rec = draw_hard_record(16, rng);
    far[t] = no_family_distance_lb(rec).value >= Rational(1, 8);
  });
  const auto count = static_cast<std::uint64_t>(std::count(far.begin(), far.end(), 1));
  const double fraction = static_cast<double>(count) / draws;
  r.pass = fraction >= 0.85;
  r.summary = "far fraction " + std::to_string(count) + "/" + std::to_string(draws) + " = " + fmt("%.3f", fraction) +
              " (need >= 0.85)";
  r.detail = {{"draws", draws}, {"far", count}, {"fraction", fraction}};
  return r;
}

CheckResult criterion_yes_unate(const Context& ctx) {
  CheckResult r{"criterion-5", "Yes-family instances are unate", true, "", Json::array(), 0.0};
  const std::uint64_t draws = ctx.pick(20, 100);
  std::string parts;
  for (std::uint32_t d : {4u, 8u, 16u}) {
    std::vector<char> ok(draws);
    const std::uint64_t master = ctx.seed_for(50 + d);
    parallel_for(draws, ctx.jobs, [&](std::uint64_t t) {
      Rng rng(instance_seed(master, t));
      ok[t] = is_unate_exact(gen_yes_sample(d, rng).first).unate;
    });
    const auto good = static_cast<std::uint64_t>(std::count(ok.begin(), ok.end(), 1));
    r.pass = r.pass && good == draws;
    r.detail.push_back({{"d", d}, {"draws", draws}, {"unate", good}});
    if (!parts.empty()) parts += ", ";
    parts += "d=" + std::to_string(d) + " " + std::to_string(good) + "/" + std::to_string(draws);
  }
  r.summary = "unate by full edge scan: " + parts;
  return r;
}

struct ReductionTally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double min_ratio = INFINITY;   // sum mu / (eps* / 4) over instances with eps* > 0

  void add(const Rational& sum, const Rational& dist) {
    ++checked;
    if (sum * Rational(4) < dist) ++violations;
    if (dist > Rational(0)) min_ratio = std::min(min_ratio, (sum * Rational(4)).to_double() / dist.to_double());
  }
  Json json() const {
    return {{"checked", checked}, {"violations", violations},
            {"min_ratio", std::isfinite(min_ratio) ? Json(min_ratio) : Json(nullptr)}};
  }
};

// Sum of mu_i at b* against dist_b_monotone_exact(f, b*) / 4.
void check_reduction(const Function& f, MuMode mode, ReductionTally& tally) {
  const MuProfile p = mu_profile(f, mode);
  const DistanceCertificate c = dist_b_monotone_exact(f, p.b_star);
  tally.add(p.total(), c.value);
}

CheckResult criterion_dimension_reduction(const Context& ctx) {
  CheckResult r{"criterion-6", "dimension reduction at b*", false, "", Json::object(), 0.0};
  std::vector<Function> cube;
  std::vector<Function> grid;
  const std::uint64_t per_shape = ctx.pick(25, 100);
  Rng rng(ctx.seed_for(60));
  for (std::uint32_t d = 1; d <= 4; ++d) {
    for (std::uint64_t t = 0; t < per_shape; ++t) cube.push_back(random_dense(GridShape(2, d), rng));
  }
  for (std::uint32_t d = 1; d <= 3; ++d) {
    for (std::uint64_t t = 0; t < per_shape; ++t) grid.push_back(random_dense(GridShape(4, d), rng));
  }
  // Parity functions.
  for (std::uint32_t d = 2; d <= 4; ++d) {
    const GridShape s = GridShape::hypercube(d);
    std::vector<Value> table(s.size());
    for (Index x = 0; x < s.size(); ++x) table[x] = std::popcount(x) & 1;
    cube.push_back(make_dense(s, std::move(table)));
  }
  // Grid lift family, every admissible member.
  for (std::uint32_t d : {1u, 2u}) {
    GridLiftParams p;
    p.n = 4;
    p.d = d;
    p.eps = 0.25;
    for (p.j = 1; p.j <= p.m_prime(); ++p.j) {
      for (p.k = 1; p.k <= p.blocks(); ++p.k) grid.push_back(lb_family_member(p));
    }
    grid.push_back(lb_family_companion(4, d));
  }
  ReductionTally edge;
  ReductionTally line_cube;
  ReductionTally line_grid;
  for (const auto& f : cube) {
    check_reduction(f, MuMode::EdgeFraction, edge);
    check_reduction(f, MuMode::LineDistance, line_cube);
  }
  for (const auto& f : grid) check_reduction(f, MuMode::LineDistance, line_grid);
  r.pass = edge.violations == 0 && line_cube.violations == 0 && line_grid.violations == 0;
  r.summary = "violations: hypercube edge-fraction " + std::to_string(edge.violations) + "/" +
              std::to_string(edge.checked) + ", hypercube line-distance " + std::to_string(line_cube.violations) +
              "/" + std::to_string(line_cube.checked) + ", grid " + std::to_string(line_grid.violations) + "/" +
              std::to_string(line_grid.checked) + "; min 4 sum(mu)/dist " +
              num(std::min({edge.min_ratio, line_cube.min_ratio, line_grid.min_ratio}));
  r.detail = {{"hypercube_edge_fraction", edge.json()},
              {"hypercube_line_distance", line_cube.json()},
              {"hypergrid_line_distance", line_grid.json()}};
  return r;
}

struct TreeTally {
  std::uint64_t lines = 0;
  std::uint64_t far_cases = 0;
  std::uint64_t detection_failures = 0;   // first guarantee
  std::uint64_t dichotomy_failures = 0;   // second guarantee
  double min_detection_ratio = INFINITY;

  void check(std::span<const Value> h) {
    ++lines;
    const TreeProbabilities p = tree_tester_exact(h);
    std::vector<Value> negated(h.size());
    std::transform(h.begin(), h.end(), negated.begin(), std::negate<>());
    const Rational dec_pairs = decreasing_pair_fraction(h);
    const Rational inc_pairs = decreasing_pair_fraction(negated);
    const Rational to_mono = dist_line_monotone(h);
    const Rational to_anti = dist_line_antimonotone(h);
    const Rational twenty_five(25);
    auto one = [&](const Rational& eps, const Rational& detect, const Rational& pairs) {
      if (eps == Rational(0)) return;
      ++far_cases;
      if (detect < eps) ++detection_failures;
      min_detection_ratio = std::min(min_detection_ratio, detect.to_double() / eps.to_double());
      if (p.both * twenty_five < eps && pairs * twenty_five < eps) ++dichotomy_failures;
    };
    one(to_mono, p.down_present(), dec_pairs);
    one(to_anti, p.up_present(), inc_pairs);
  }
  Json json() const {
    return {{"lines", lines},
            {"far_cases", far_cases},
            {"detection_failures", detection_failures},
            {"dichotomy_failures", dichotomy_failures},
            {"min_detection_over_eps", std::isfinite(min_detection_ratio) ? Json(min_detection_ratio) : Json(nullptr)}};
  }
};

CheckResult criterion_tree_tester(const Context& ctx) {
  CheckResult r{"criterion-7", "tree tester detection and dichotomy", false, "", Json::object(), 0.0};
  TreeTally exhaustive;
  const std::uint32_t max_n = ctx.full() ? 8 : 7;
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    for (const auto& h : weak_order_patterns(n)) exhaustive.check(h);
  }
  TreeTally random;
  Rng rng(ctx.seed_for(70));
  const std::uint64_t per_n = ctx.pick(1000, 10000);
  for (std::uint32_t n : {16u, 64u}) {
    for (std::uint64_t t = 0; t < per_n; ++t) {
      static constexpr std::uint64_t kRanges[] = {2, 4, 16, 1u << 20};
      const std::uint64_t range = kRanges[rng.below(4)];
      std::vector<Value> h(n);
      for (auto& v : h) v = static_cast<Value>(rng.below(range));
      random.check(h);
    }
  }
  const std::uint64_t failures = exhaustive.detection_failures + exhaustive.dichotomy_failures +
                                 random.detection_failures + random.dichotomy_failures;
  r.pass = failures == 0;
  r.summary = std::to_string(exhaustive.lines) + " order patterns (n <= " + std::to_string(max_n) + ") and " +
              std::to_string(random.lines) + " random lines (n = 16, 64): detection failures " +
              std::to_string(exhaustive.detection_failures + random.detection_failures) + ", dichotomy failures " +
              std::to_string(exhaustive.dichotomy_failures + random.dichotomy_failures) +
              "; min Pr[detect]/eps " + num(std::min(exhaustive.min_detection_ratio, random.min_detection_ratio));
  r.detail = {{"exhaustive", exhaustive.json()}, {"random", random.json()}};
  return r;
}

CheckResult criterion_grid_family(const Context&) {
  CheckResult r{"criterion-8", "grid lift family is eps-far from unate", true, "", Json::array(), 0.0};
  std::uint64_t members = 0;
  Rational min_dist(1);
  std::uint64_t min_pairs = ~std::uint64_t{0};
  for (std::uint32_t d : {1u, 2u}) {
    GridLiftParams p;
    p.n = 4;
    p.d = d;
    p.eps = 0.25;
    const GridShape shape(p.n, d);
    const Rational eps(1, 4);
    const double needed = p.eps * static_cast<double>(shape.size());
    for (p.j = 1; p.j <= p.m_prime(); ++p.j) {
      for (p.k = 1; p.k <= p.blocks(); ++p.k) {
        ++members;
        const Function g = lb_family_member(p);
        const Rational dist = dist_unate_exact(g).value;
        // Pairs of points whose indices differ in bit j only.
        const std::size_t i = p.dimension();
        const Index bit = Index{1} << (p.j - 1);
        std::uint64_t inc = 0;
        std::uint64_t dec = 0;
        bool aligned = true;
        std::set<Index> used;
        for (Index u = 0; u < shape.size(); ++u) {
          if (u & bit) continue;
          const Index v = u | bit;
          for (std::size_t c = 0; c < d; ++c) aligned = aligned && (c == i || shape.coord(u, c) == shape.coord(v, c));
          aligned = aligned && used.insert(u).second && used.insert(v).second;
          inc += g(u) < g(v);
          dec += g(u) > g(v);
        }
        const bool ok = dist >= eps && aligned && static_cast<double>(inc) >= needed &&
                        static_cast<double>(dec) >= needed;
        r.pass = r.pass && ok;
        min_dist = std::min(min_dist, dist);
        min_pairs = std::min({min_pairs, inc, dec});
        r.detail.push_back({{"d", d}, {"j", p.j}, {"k", p.k}, {"distance", to_string(dist)},
                            {"increasing_pairs", inc}, {"decreasing_pairs", dec}, {"disjoint_i_pairs", aligned},
                            {"pairs_needed", needed}});
      }
    }
  }
  r.summary = std::to_string(members) + " members (n=4, d in {1,2}, eps=1/4): min exact distance " +
              to_string(min_dist) + " (need >= 1/4), min disjoint increasing/decreasing i-pairs " +
              std::to_string(min_pairs);
  return r;
}

CheckResult criterion_cap_bound(const Context& ctx) {
  CheckResult r{"criterion-9", "cap bound |cap_c(V)| <= c(|V| - 1)", false, "", Json::object(), 0.0};
  Rng rng(ctx.seed_for(90));
  const std::uint64_t sets = ctx.pick(2000, 10000);
  std::uint64_t violations = 0;
  double max_fill = 0.0;
  for (std::uint64_t t = 0; t < sets; ++t) {
    const auto alphabet = static_cast<Coord>(2 + rng.below(3));
    const auto dim = static_cast<std::size_t>(1 + rng.below(64));
    const auto size = static_cast<std::size_t>(1 + rng.below(20));
    const auto c = static_cast<std::size_t>(1 + rng.below(8));
    std::set<std::vector<Coord>> distinct;
    for (std::size_t k = 0; k < size; ++k) {
      std::vector<Coord> x(dim);
      for (auto& v : x) v = static_cast<Coord>(rng.below(alphabet));
      distinct.insert(std::move(x));
    }
    std::vector<Point> V;
    for (const auto& x : distinct) V.emplace_back(x);
    const std::size_t bound = c * (V.size() - 1);
    const std::size_t got = cap_set(V, c).size();
    violations += got > bound;
    if (bound > 0) max_fill = std::max(max_fill, static_cast<double>(got) / static_cast<double>(bound));
  }
  r.pass = violations == 0;
  r.summary = std::to_string(violations) + " violations in " + std::to_string(sets) +
              " random sets; max |cap|/(c(|V|-1)) " + fmt("%.3f", max_fill);
  r.detail = {{"sets", sets}, {"violations", violations}, {"max_fill", max_fill}};
  return r;
}

CheckResult criterion_scaling(const Context& ctx) {
  CheckResult r{"criterion-10", "query scaling forms", false, "", Json::object(), 0.0};
  const double eps = 0.125;

  // (a) closed-form nonadaptive hypercube counts.
  SweepConfig cube;
  cube.tester = TesterId::NonadaptiveHypercube;
  cube.eps = eps;
  for (std::uint32_t d = 16; d <= 1024; d *= 2) cube.points.emplace_back(2, d);
  const auto cube_rows = query_scaling_sweep(cube);
  double lo = INFINITY;
  double hi = 0.0;
  Json cube_json = Json::array();
  for (const auto& row : cube_rows) {
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
    cube_json.push_back(to_json(row));
  }
  const double spread = hi / lo;
  const bool cube_ok = spread <= 1.5;

  // (b) adaptive hypergrid on constant functions, d = 4.
  SweepConfig grid;
  grid.tester = TesterId::AdaptiveHypergrid;
  grid.eps = eps;
  grid.trials = ctx.pick(300, 2000);
  grid.seed = ctx.seed_for(100);
  grid.jobs = ctx.jobs;
  for (std::uint32_t n = 2; n <= 64; n *= 2) grid.points.emplace_back(n, 4);
  const auto grid_rows = query_scaling_sweep(grid);
  // Least squares of mean queries against log2 n: q = a + c log2 n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(grid_rows.size());
  for (const auto& row : grid_rows) {
    const double x = std::log2(static_cast<double>(row.n));
    sx += x;
    sy += row.mean_queries;
    sxx += x * x;
    sxy += x * row.mean_queries;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double max_dev = 0.0;
  double ratio_lo = INFINITY;
  double ratio_hi = 0.0;
  Json grid_json = Json::array();
  for (const auto& row : grid_rows) {
    const double x = std::log2(static_cast<double>(row.n));
    const double fit = intercept + slope * x;
    max_dev = std::max(max_dev, std::abs(row.mean_queries - fit) / fit);
    ratio_lo = std::min(ratio_lo, row.ratio);
    ratio_hi = std::max(ratio_hi, row.ratio);
    Json doc = to_json(row);
    doc["fit"] = fit;
    grid_json.push_back(doc);
  }
  const bool grid_ok = slope > 0 && max_dev <= 0.2;
  r.pass = cube_ok && grid_ok;
  r.summary = "na-cube d=16..1024 constant spread " + fmt("%.3f", spread) + " (need <= 1.5); ad-grid n=2..64 mean = " +
              num(intercept) + " + " + num(slope) + " log2 n, max deviation " + fmt("%.1f%%", 100 * max_dev) +
              " (need <= 20%); mean/(d log2 n / eps) spans " + fmt("%.3f", ratio_lo) + ".." + fmt("%.3f", ratio_hi);
  r.detail = {{"nonadaptive_hypercube", {{"rows", cube_json}, {"spread", spread}}},
              {"adaptive_hypergrid",
               {{"rows", grid_json},
                {"intercept", intercept},
                {"slope", slope},
                {"max_relative_deviation", max_dev},
                {"ratio_spread", ratio_hi / ratio_lo}}}};
  return r;
}

// --- properties ----------------------------------------------------------------

CheckResult property_oracle_consistency(const Context& ctx) {
  CheckResult r{"property-oracle-consistency", "exact, matching and line oracles agree", false, "", Json::object(), 0.0};
  Rng rng(ctx.seed_for(200));
  const std::vector<GridShape> shapes = {GridShape(2, 2), GridShape(2, 3), GridShape(2, 4),
                                         GridShape(3, 2), GridShape(4, 2)};
  const std::uint64_t per_shape = ctx.pick(40, 200);
  std::uint64_t checked = 0;
  std::uint64_t zero_mismatch = 0;
  std::uint64_t bound_violations = 0;
  for (const auto& shape : shapes) {
    for (std::uint64_t t = 0; t < per_shape; ++t) {
      const Function f = random_dense(shape, rng);
      const Rational exact = dist_unate_exact(f).value;
      ++checked;
      zero_mismatch += (exact == Rational(0)) != is_unate_exact(f).unate;
      bound_violations += dist_unate_lns_lb(f).value > exact;
      if (shape.is_hypercube()) bound_violations += dist_unate_matching_lb(f).value > exact;
    }
  }
  r.pass = zero_mismatch == 0 && bound_violations == 0;
  r.summary = std::to_string(checked) + " functions: zero-distance/unate mismatches " + std::to_string(zero_mismatch) +
              ", lower bounds above exact " + std::to_string(bound_violations);
  r.detail = {{"checked", checked}, {"zero_mismatch", zero_mismatch}, {"bound_violations", bound_violations}};
  return r;
}

CheckResult property_no_family_bound(const Context& ctx) {
  CheckResult r{"property-no-family-bound", "structural No-family bound is below the exact distance", false, "",
                Json::object(), 0.0};
  const std::uint64_t draws = ctx.pick(10, 40);
  std::vector<char> ok(draws);
  const std::uint64_t master = ctx.seed_for(210);
  parallel_for(draws, ctx.jobs, [&](std::uint64_t t) {
    Rng rng(instance_seed(master, t));
    const auto [f, rec] = gen_no_sample(4, rng);
    ok[t] = no_family_distance_lb(rec).value <= dist_unate_exact(f).value;
  });
  const auto good = static_cast<std::uint64_t>(std::count(ok.begin(), ok.end(), 1));
  r.pass = good == draws;
  r.summary = std::to_string(good) + "/" + std::to_string(draws) + " No instances (d=4) with bound <= exact distance";
  r.detail = {{"draws", draws}, {"ok", good}};
  return r;
}

CheckResult property_reduction_all_orientations(const Context& ctx) {
  CheckResult r{"property-dimension-reduction-all-b", "dimension reduction for every orientation", false, "",
                Json::object(), 0.0};
  Rng rng(ctx.seed_for(220));
  const std::vector<GridShape> shapes = {GridShape(2, 2), GridShape(2, 3), GridShape(3, 2), GridShape(4, 2)};
  const std::uint64_t per_shape = ctx.pick(20, 60);
  ReductionTally tally;
  for (const auto& shape : shapes) {
    for (std::uint64_t t = 0; t < per_shape; ++t) {
      const Function f = random_dense(shape, rng);
      const MuProfile p = mu_profile(f, MuMode::LineDistance);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << shape.d()); ++mask) {
        const Orientation b = mask_orientation(shape.d(), mask);
        tally.add(mu_sum(p, b), dist_b_monotone_exact(f, b).value);
      }
    }
  }
  r.pass = tally.violations == 0;
  r.summary = std::to_string(tally.violations) + " violations over " + std::to_string(tally.checked) +
              " (function, orientation) pairs";
  r.detail = tally.json();
  return r;
}

CheckResult property_report_determinism(const Context& ctx) {
  CheckResult r{"property-report-determinism", "reports are deterministic and self-auditing", false, "",
                Json::object(), 0.0};
  ExperimentConfig c = base_config(ctx, TesterId::AdaptiveHypergrid,
                                   {{"family", "glift"}, {"n", 4}, {"d", 2}, {"eps", 0.25}, {"j", 2}, {"k", 1}}, 0.25,
                                   ctx.pick(200, 1000), 230);
  c.certification = CertificationMode::Exact;
  c.threshold = 0.25;
  c.pool = 1;
  c.jobs = 1;
  const Json serial = to_json(run_experiment(c));
  c.jobs = 3;
  const Json parallel = to_json(run_experiment(c));
  const bool same = serial.dump() == parallel.dump();
  const bool audited = audit_report(serial);
  Json tampered = serial;
  tampered["aggregates"]["rejections"] = serial["aggregates"]["rejections"].get<std::uint64_t>() + 1;
  const bool caught = !audit_report(tampered);
  r.pass = same && audited && caught;
  r.summary = std::string("jobs 1 vs 3 identical: ") + (same ? "yes" : "no") + ", audit: " +
              (audited ? "ok" : "failed") + ", tampered aggregate detected: " + (caught ? "yes" : "no");
  r.detail = {{"identical", same}, {"audit", audited}, {"tamper_detected", caught}};
  return r;
}

CheckResult property_nonadaptive_plans(const Context& ctx) {
  CheckResult r{"property-nonadaptive-plans", "nonadaptive testers query their precomputed plans", true, "",
                Json::array(), 0.0};
  Rng pick(ctx.seed_for(240));
  struct Case {
    TesterId tester;
    GridShape shape;
    double eps;
  };
  const std::vector<Case> cases = {{TesterId::NonadaptiveHypercube, GridShape::hypercube(6), 0.25},
                                   {TesterId::NonadaptiveHypergrid, GridShape(4, 2), 0.45}};
  for (const auto& cs : cases) {
    const std::uint64_t seed = pick.engine()();
    std::vector<std::vector<Index>> transcripts;
    for (int k = 0; k < 2; ++k) {
      CountingOracle o(random_dense(cs.shape, pick));
      Rng rng(seed);
      run_tester(cs.tester, o, cs.eps, rng);
      std::vector<Index> idx;
      for (const auto& e : o.transcript()) idx.push_back(e.index);
      transcripts.push_back(std::move(idx));
    }
    Rng rng(seed);
    const auto plan = cs.tester == TesterId::NonadaptiveHypercube ? nonadaptive_hypercube_plan(cs.shape, cs.eps, rng)
                                                                  : nonadaptive_hypergrid_plan(cs.shape, cs.eps, rng);
    const bool ok = transcripts[0] == plan && transcripts[1] == plan;
    r.pass = r.pass && ok;
    r.detail.push_back({{"tester", std::string(to_string(cs.tester))}, {"queries", plan.size()}, {"match", ok}});
  }
  r.summary = std::string("transcripts on two different functions equal the plan: ") + (r.pass ? "yes" : "no");
  return r;
}

CheckResult property_witness_soundness(const Context& ctx) {
  CheckResult r{"property-witness-soundness", "every rejection carries a re-verifiable witness", true, "",
                Json::array(), 0.0};
  const std::vector<std::pair<TesterId, Json>> cases = {
      {TesterId::NonadaptiveHypercube, {{"family", "no"}, {"d", 4}}},
      {TesterId::AdaptiveHypercube, {{"family", "no"}, {"d", 4}}},
      {TesterId::NonadaptiveHypergrid, {{"family", "glift"}, {"n", 4}, {"d", 2}, {"eps", 0.25}, {"j", 3}, {"k", 2}}},
      {TesterId::AdaptiveHypergrid, {{"family", "glift"}, {"n", 4}, {"d", 2}, {"eps", 0.25}, {"j", 3}, {"k", 2}}}};
  std::uint64_t rejections = 0;
  std::uint64_t invalid = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    ExperimentConfig c = base_config(ctx, cases[k].first, cases[k].second, 0.25, ctx.pick(50, 200), 250 + k);
    c.pool = 10;
    const ExperimentReport rep = run_experiment(c);
    rejections += rep.aggregates.rejections;
    invalid += rep.aggregates.invalid_witnesses;
    r.detail.push_back(experiment_summary(rep));
  }
  r.pass = invalid == 0 && rejections > 0;
  r.summary = std::to_string(invalid) + " invalid witnesses among " + std::to_string(rejections) + " rejections";
  return r;
}

CheckResult property_lift_unate(const Context& ctx) {
  CheckResult r{"property-lift-preserves-unateness", "lifted Yes instances stay unate", false, "", Json::object(),
                0.0};
  Rng rng(ctx.seed_for(260));
  const std::uint64_t draws = ctx.pick(10, 40);
  std::uint64_t good = 0;
  std::uint64_t checked = 0;
  for (std::uint32_t n : {4u, 8u}) {
    for (std::uint64_t t = 0; t < draws; ++t) {
      ++checked;
      good += is_unate_exact(lift_hypercube_to_hypergrid(gen_yes_sample(4, rng).first, n)).unate;
    }
  }
  r.pass = good == checked;
  r.summary = std::to_string(good) + "/" + std::to_string(checked) + " lifted instances (n = 4, 8) unate";
  r.detail = {{"checked", checked}, {"unate", good}};
  return r;
}

// cur[0..pos) is fixed; `top` is one more than the largest value so far and
// `present` counts the distinct values among them.
void enumerate_patterns(std::vector<std::int64_t>& cur, std::size_t pos, std::vector<int>& used, std::size_t top,
                        std::size_t present, std::vector<std::vector<std::int64_t>>& out) {
  const std::size_t n = cur.size();
  if (top - present > n - pos) return;  // gaps below the maximum can no longer be filled
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    cur[pos] = static_cast<std::int64_t>(v);
    const bool fresh = used[v]++ == 0;
    enumerate_patterns(cur, pos + 1, used, std::max(top, v + 1), present + fresh, out);
    --used[v];
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> weak_order_patterns(std::uint32_t n) {
  if (n == 0 || n > 9) throw ParameterError("weak order enumeration supports 1 <= n <= 9");
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur(n);
  std::vector<int> used(n, 0);
  enumerate_patterns(cur, 0, used, 0, 0, out);
  return out;
}

std::string to_string(VerifyScope scope) { return scope == VerifyScope::Full ? "full" : "quick"; }

VerifyScope verify_scope_from_string(const std::string& name) {
  if (name == "quick") return VerifyScope::Quick;
  if (name == "full") return VerifyScope::Full;
  throw ParameterError("unknown scope '" + name + "'");
}

bool VerifySummary::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifySummary verify_suite(const VerifyOptions& options) {
  const Context ctx{options.scope, options.seed, std::max(1u, options.jobs)};
  using Check = CheckResult (*)(const Context&);
  std::vector<Check> checks;
  if (options.properties) {
    checks.insert(checks.end(), {property_oracle_consistency, property_no_family_bound,
                                 property_reduction_all_orientations, property_report_determinism,
                                 property_nonadaptive_plans, property_witness_soundness, property_lift_unate});
  }
  if (options.criteria) {
    checks.insert(checks.end(), {criterion_one_sided, criterion_nonadaptive_soundness, criterion_adaptive_budget,
                                 criterion_far_fraction, criterion_yes_unate, criterion_dimension_reduction,
                                 criterion_tree_tester, criterion_grid_family, criterion_cap_bound,
                                 criterion_scaling});
  }
  VerifySummary summary;
  summary.scope = options.scope;
  summary.seed = options.seed;
  for (Check check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result = check(ctx);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(result);
    summary.checks.push_back(std::move(result));
  }
  return summary;
}

nlohmann::json to_json(const VerifySummary& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    checks.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"summary", c.summary}, {"detail", c.detail}});
  }
  return {{"tool", "unatest"}, {"version", tool_version()}, {"scope", to_string(s.scope)},
          {"seed", s.seed},    {"pass", s.pass()},          {"checks", checks}};
}

}  // namespace unate
