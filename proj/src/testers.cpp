#include "unate/testers.hpp"

#include <cmath>
#include <limits>

#include "unate/tree_tester.hpp"

namespace unate {

namespace {

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("epsilon must lie in (0, 1/2)");
}

void require_hypercube(const GridShape& shape) {
  if (!shape.is_hypercube()) throw ParameterError("this tester needs a hypercube domain (n = 2)");
}

std::pair<Point, Point> points_of(const GridShape& shape, IndexPair p) {
  return {shape.point_at(p.lower), shape.point_at(p.upper)};
}

std::pair<Point, Point> points_of(const GridShape& shape, const LineView& line, LinePair p) {
  return {shape.point_at(line.index(p.first)), shape.point_at(line.index(p.second))};
}

ViolationWitness pair_witness(const GridShape& shape, std::size_t dim, IndexPair inc,
                              IndexPair dec) {
  ViolationWitness w;
  w.dimension = dim;
  w.increasing = points_of(shape, inc);
  w.decreasing = points_of(shape, dec);
  w.kind = shape.is_hypercube() ? WitnessKind::EdgePair : WitnessKind::GeneralPair;
  return w;
}

// First increasing and first decreasing pair seen in a sample group.
struct GroupScan {
  std::optional<IndexPair> increasing;
  std::optional<IndexPair> decreasing;

  void add(IndexPair p, PairClass c) {
    if (c == PairClass::Increasing && !increasing) increasing = p;
    if (c == PairClass::Decreasing && !decreasing) decreasing = p;
  }
  bool violated() const noexcept { return increasing && decreasing; }
};

// Runs the pair phase; returns the first violated group's witness.
std::optional<ViolationWitness> run_pair_phase(CountingOracle& oracle, PairPlan plan, Rng& rng) {
  std::optional<ViolationWitness> witness;
  while (const auto group = plan.next_group(rng)) {
    GroupScan scan;
    for (std::uint64_t k = 0; k < group->size; ++k) {
      const IndexPair p = plan.draw(rng);
      const Value lo = oracle.query_index(p.lower);
      const Value hi = oracle.query_index(p.upper);
      scan.add(p, classify_values(lo, hi));
    }
    if (!witness && scan.violated()) {
      witness = pair_witness(oracle.shape(), group->dimension, *scan.increasing, *scan.decreasing);
    }
  }
  return witness;
}

Verdict finish(const CountingOracle& oracle, std::uint64_t start,
               std::optional<ViolationWitness> witness) {
  Verdict v;
  v.queries = oracle.count() - start;
  if (witness) {
    v.decision = Decision::Reject;
    v.witness = std::move(witness);
  }
  return v;
}

// --- adaptive hypercube ---------------------------------------------------

struct EdgeDraw {
  IndexPair pair;
  PairClass cls;
};

enum class PassStatus { Clean, Rejected, Aborted };

struct PassResult {
  PassStatus status = PassStatus::Clean;
  std::optional<ViolationWitness> witness;
};

// `used` is the running query total of this tester; a draw that would push it
// past `cap` aborts instead.
PassResult hypercube_pass(CountingOracle& oracle, Rng& rng, std::uint64_t start,
                          std::uint64_t cap) {
  const GridShape& shape = oracle.shape();
  auto draw = [&](std::size_t i) -> std::optional<EdgeDraw> {
    if (oracle.count() - start + 2 > cap) return std::nullopt;
    const IndexPair p = sample_edge_index(shape, i, rng);
    const Value lo = oracle.query_index(p.lower);
    const Value hi = oracle.query_index(p.upper);
    return EdgeDraw{p, classify_values(lo, hi)};
  };

  for (std::size_t i = 0; i < shape.d(); ++i) {
    const auto first = draw(i);
    if (!first) return {PassStatus::Aborted, std::nullopt};
    if (first->cls == PairClass::Constant) continue;
    std::optional<EdgeDraw> second;
    do {
      second = draw(i);
      if (!second) return {PassStatus::Aborted, std::nullopt};
    } while (second->cls == PairClass::Constant);
    if (second->cls != first->cls) {
      const bool first_up = first->cls == PairClass::Increasing;
      const IndexPair inc = first_up ? first->pair : second->pair;
      const IndexPair dec = first_up ? second->pair : first->pair;
      return {PassStatus::Rejected, pair_witness(shape, i, inc, dec)};
    }
  }
  return {};
}

// --- adaptive hypergrid ---------------------------------------------------

struct LineDraw {
  LineView line;
  TreeOutcome outcome;
};

PassResult hypergrid_pass(CountingOracle& oracle, Rng& rng, std::uint64_t start,
                          std::uint64_t cap) {
  const GridShape& shape = oracle.shape();
  auto draw = [&](std::size_t i) -> std::optional<LineDraw> {
    const Index line = rng.below(shape.line_count());
    const auto x = static_cast<Coord>(rng.below(shape.n()));
    if (oracle.count() - start + tree_path_length(shape.n(), x) > cap) return std::nullopt;
    LineView view = LineView::along(oracle, i, line);
    return LineDraw{view, tree_tester_at(view, x)};
  };

  for (std::size_t i = 0; i < shape.d(); ++i) {
    const auto first = draw(i);
    if (!first) return {PassStatus::Aborted, std::nullopt};
    if (first->outcome.dir.empty()) continue;
    std::optional<LineDraw> second;
    do {
      second = draw(i);
      if (!second) return {PassStatus::Aborted, std::nullopt};
    } while (second->outcome.dir.empty());
    if ((first->outcome.dir | second->outcome.dir).both()) {
      ViolationWitness w;
      w.dimension = i;
      w.kind = WitnessKind::TreePath;
      const LineDraw& up = first->outcome.dir.up ? *first : *second;
      const LineDraw& down = first->outcome.dir.down ? *first : *second;
      w.increasing = points_of(shape, up.line, *up.outcome.increasing);
      w.decreasing = points_of(shape, down.line, *down.outcome.decreasing);
      return {PassStatus::Rejected, std::move(w)};
    }
  }
  return {};
}

template <class Pass>
Verdict run_adaptive(CountingOracle& oracle, double eps, Rng& rng, std::uint64_t cap, Pass pass) {
  const std::uint64_t start = oracle.count();
  const std::uint64_t reps = adaptive_repetitions(eps);
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    PassResult r = pass(oracle, rng, start, cap);
    if (r.status == PassStatus::Aborted) {
      Verdict v;
      v.queries = oracle.count() - start;
      v.aborted = true;
      return v;
    }
    if (r.status == PassStatus::Rejected) return finish(oracle, start, std::move(r.witness));
  }
  return finish(oracle, start, std::nullopt);
}

bool is_i_pair(const GridShape& shape, std::size_t i, const std::pair<Point, Point>& p) {
  const auto& [x, y] = p;
  if (!shape.contains(x) || !shape.contains(y)) return false;
  for (std::size_t c = 0; c < shape.d(); ++c) {
    if (c == i) {
      if (!(x[c] < y[c])) return false;
    } else if (x[c] != y[c]) {
      return false;
    }
  }
  return true;
}

std::string_view kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::EdgePair:
      return "edge-pair";
    case WitnessKind::GeneralPair:
      return "general-pair";
    case WitnessKind::TreePath:
      return "tree-path";
  }
  return "?";
}

nlohmann::json point_json(const Point& x) {
  auto arr = nlohmann::json::array();
  for (Coord c : x.coords()) arr.push_back(c);
  return arr;
}

}  // namespace

bool verify_witness(const Function& f, const ViolationWitness& w) {
  const GridShape& shape = f.shape();
  if (w.dimension >= shape.d()) return false;
  if (!is_i_pair(shape, w.dimension, w.increasing) || !is_i_pair(shape, w.dimension, w.decreasing)) {
    return false;
  }
  CountingOracle fresh(f);
  return classify_pair(fresh, w.increasing.first, w.increasing.second) == PairClass::Increasing &&
         classify_pair(fresh, w.decreasing.first, w.decreasing.second) == PairClass::Decreasing;
}

std::string_view to_string(TesterId id) {
  switch (id) {
    case TesterId::NonadaptiveHypercube:
      return "na-cube";
    case TesterId::AdaptiveHypercube:
      return "ad-cube";
    case TesterId::NonadaptiveHypergrid:
      return "na-grid";
    case TesterId::AdaptiveHypergrid:
      return "ad-grid";
  }
  return "?";
}

TesterId tester_from_string(std::string_view name) {
  for (TesterId id : {TesterId::NonadaptiveHypercube, TesterId::AdaptiveHypercube,
                      TesterId::NonadaptiveHypergrid, TesterId::AdaptiveHypergrid}) {
    if (to_string(id) == name) return id;
  }
  throw ParameterError("unknown tester '" + std::string(name) +
                       "' (expected na-cube, ad-cube, na-grid or ad-grid)");
}

// --- plans -----------------------------------------------------------------

PairPlan::PairPlan(GridShape shape, WorkInvestmentSchedule schedule, Sampler sampler)
    : shape_(std::move(shape)), schedule_(std::move(schedule)), sampler_(sampler) {
  if (sampler_ == Sampler::Edge) require_hypercube(shape_);
}

std::optional<PairPlan::Group> PairPlan::next_group(Rng& rng) {
  while (level_ <= schedule_.levels() && rep_ == schedule_.repetitions(level_)) {
    ++level_;
    rep_ = 0;
  }
  if (level_ > schedule_.levels()) return std::nullopt;
  ++rep_;
  dimension_ = static_cast<std::size_t>(rng.below(shape_.d()));
  return Group{dimension_, WorkInvestmentSchedule::samples(level_)};
}

IndexPair PairPlan::draw(Rng& rng) const {
  return sampler_ == Sampler::Edge ? sample_edge_index(shape_, dimension_, rng)
                                   : sample_pair_index(shape_, dimension_, rng);
}

TreePlan::TreePlan(GridShape shape, std::uint64_t repetitions)
    : shape_(std::move(shape)), repetitions_(repetitions) {}

std::optional<TreePlan::Probe> TreePlan::next(Rng& rng) {
  if (rep_ == repetitions_) return std::nullopt;
  Probe p;
  p.dimension = dimension_;
  p.line = rng.below(shape_.line_count());
  p.target = static_cast<Coord>(rng.below(shape_.n()));
  if (++dimension_ == shape_.d()) {
    dimension_ = 0;
    ++rep_;
  }
  return p;
}

namespace {

std::uint64_t tree_phase_repetitions(double eps) {
  return static_cast<std::uint64_t>(std::ceil(220.0 / eps));
}

void append_pair_plan(std::vector<Index>& out, PairPlan plan, Rng& rng) {
  while (const auto group = plan.next_group(rng)) {
    for (std::uint64_t k = 0; k < group->size; ++k) {
      const IndexPair p = plan.draw(rng);
      out.push_back(p.lower);
      out.push_back(p.upper);
    }
  }
}

}  // namespace

std::vector<Index> nonadaptive_hypercube_plan(const GridShape& shape, double eps, Rng& rng,
                                              LevelBound bound) {
  require_hypercube(shape);
  std::vector<Index> out;
  append_pair_plan(out,
                   PairPlan(shape, WorkInvestmentSchedule::hypercube(shape.d(), eps, bound),
                            PairPlan::Sampler::Edge),
                   rng);
  return out;
}

std::vector<Index> nonadaptive_hypergrid_plan(const GridShape& shape, double eps, Rng& rng,
                                              LevelBound bound) {
  const auto schedule = WorkInvestmentSchedule::hypergrid(shape.d(), eps, bound);
  std::vector<Index> out;
  TreePlan trees(shape, tree_phase_repetitions(eps));
  while (const auto probe = trees.next(rng)) {
    const Index base = shape.line_base(probe->dimension, probe->line);
    for (Coord t : tree_search_path(shape.n(), probe->target)) {
      out.push_back(base + t * shape.stride(probe->dimension));
    }
  }
  append_pair_plan(out, PairPlan(shape, schedule, PairPlan::Sampler::Pair), rng);
  return out;
}

// --- testers ---------------------------------------------------------------

Verdict nonadaptive_hypercube_test(CountingOracle& oracle, double eps, Rng& rng,
                                   LevelBound bound) {
  check_epsilon(eps);
  require_hypercube(oracle.shape());
  const std::uint64_t start = oracle.count();
  PairPlan plan(oracle.shape(), WorkInvestmentSchedule::hypercube(oracle.shape().d(), eps, bound),
                PairPlan::Sampler::Edge);
  return finish(oracle, start, run_pair_phase(oracle, std::move(plan), rng));
}

Verdict nonadaptive_hypergrid_test(CountingOracle& oracle, double eps, Rng& rng,
                                   LevelBound bound) {
  check_epsilon(eps);
  const GridShape& shape = oracle.shape();
  const auto schedule = WorkInvestmentSchedule::hypergrid(shape.d(), eps, bound);
  const std::uint64_t start = oracle.count();

  std::optional<ViolationWitness> witness;
  TreePlan trees(shape, tree_phase_repetitions(eps));
  while (const auto probe = trees.next(rng)) {
    LineView view = LineView::along(oracle, probe->dimension, probe->line);
    const TreeOutcome out = tree_tester_at(view, probe->target);
    if (!witness && out.dir.both()) {
      ViolationWitness w;
      w.dimension = probe->dimension;
      w.kind = WitnessKind::TreePath;
      w.increasing = points_of(shape, view, *out.increasing);
      w.decreasing = points_of(shape, view, *out.decreasing);
      witness = std::move(w);
    }
  }
  auto pair_witness = run_pair_phase(oracle, PairPlan(shape, schedule, PairPlan::Sampler::Pair), rng);
  if (!witness) witness = std::move(pair_witness);
  return finish(oracle, start, std::move(witness));
}

std::uint64_t adaptive_repetitions(double eps) {
  check_epsilon(eps);
  return static_cast<std::uint64_t>(std::ceil(10.0 / eps));
}

std::uint64_t adaptive_hypercube_cap(std::uint32_t d, double eps) {
  check_epsilon(eps);
  return static_cast<std::uint64_t>(std::floor(240.0 * d / eps));
}

std::uint64_t adaptive_hypergrid_cap(std::uint32_t n, std::uint32_t d, double eps) {
  check_epsilon(eps);
  return static_cast<std::uint64_t>(std::floor(6.0 * 40.0 * d * std::log2(double(n)) / eps));
}

Verdict adaptive_hypercube_test(CountingOracle& oracle, double eps, Rng& rng) {
  check_epsilon(eps);
  require_hypercube(oracle.shape());
  return run_adaptive(oracle, eps, rng, adaptive_hypercube_cap(oracle.shape().d(), eps),
                      hypercube_pass);
}

Verdict adaptive_hypergrid_test(CountingOracle& oracle, double eps, Rng& rng) {
  check_epsilon(eps);
  const GridShape& shape = oracle.shape();
  return run_adaptive(oracle, eps, rng, adaptive_hypergrid_cap(shape.n(), shape.d(), eps),
                      hypergrid_pass);
}

std::optional<ViolationWitness> adaptive_hypercube_pass(CountingOracle& oracle, Rng& rng) {
  require_hypercube(oracle.shape());
  return hypercube_pass(oracle, rng, oracle.count(), kUnlimited).witness;
}

std::optional<ViolationWitness> adaptive_hypergrid_pass(CountingOracle& oracle, Rng& rng) {
  return hypergrid_pass(oracle, rng, oracle.count(), kUnlimited).witness;
}

Verdict run_tester(TesterId id, CountingOracle& oracle, double eps, Rng& rng, LevelBound bound) {
  switch (id) {
    case TesterId::NonadaptiveHypercube:
      return nonadaptive_hypercube_test(oracle, eps, rng, bound);
    case TesterId::AdaptiveHypercube:
      return adaptive_hypercube_test(oracle, eps, rng);
    case TesterId::NonadaptiveHypergrid:
      return nonadaptive_hypergrid_test(oracle, eps, rng, bound);
    case TesterId::AdaptiveHypergrid:
      return adaptive_hypergrid_test(oracle, eps, rng);
  }
  throw ParameterError("unknown tester");
}

nlohmann::json to_json(const ViolationWitness& w) {
  return {
      {"dimension", w.dimension},
      {"kind", kind_name(w.kind)},
      {"increasing", {point_json(w.increasing.first), point_json(w.increasing.second)}},
      {"decreasing", {point_json(w.decreasing.first), point_json(w.decreasing.second)}},
  };
}

nlohmann::json to_json(const Verdict& v, std::uint64_t seed) {
  return {
      {"decision", v.rejected() ? "reject" : "accept"},
      {"queries", v.queries},
      {"aborted", v.aborted},
      {"witness", v.witness ? to_json(*v.witness) : nlohmann::json(nullptr)},
      {"seed", seed},
  };
}

}  // namespace unate
