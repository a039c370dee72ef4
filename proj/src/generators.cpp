#include "unate/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "unate/encoding.hpp"
#include "unate/errors.hpp"

namespace unate {

namespace {

Value pow3(unsigned e) {
  Value v = 1;
  for (unsigned t = 0; t < e; ++t) v *= 3;
  return v;
}

// ---------------------------------------------------------------------------
// b-monotone

struct BMonotoneTables {
  Orientation b;
  std::vector<std::vector<Value>> steps;  // per coordinate, nondecreasing, >= 0
  std::size_t left = 0;                   // interaction coordinates
  std::size_t right = 0;
  std::vector<Value> left_table;
  std::vector<Value> right_table;
};

class BMonotoneRule final : public Evaluator {
 public:
  BMonotoneRule(GridShape shape, BMonotoneTables t) : shape_(std::move(shape)), t_(std::move(t)) {}

  Value at(Index idx) const override {
    const std::uint32_t n = shape_.n();
    Value v = 0;
    Coord yl = 0;
    Coord yr = 0;
    for (std::size_t c = 0; c < shape_.d(); ++c) {
      auto x = static_cast<Coord>(idx % n);
      idx /= n;
      const Coord y = t_.b[c] ? n - 1 - x : x;
      v += t_.steps[c][y];
      if (c == t_.left) yl = y;
      if (c == t_.right) yr = y;
    }
    return v + t_.left_table[yl] * t_.right_table[yr];
  }

  nlohmann::json record() const override {
    nlohmann::json b = nlohmann::json::array();
    for (bool bit : t_.b) b.push_back(bit ? 1 : 0);
    return {{"family", "bmono"},       {"n", shape_.n()},
            {"d", shape_.d()},         {"b", b},
            {"steps", t_.steps},       {"pair", {t_.left, t_.right}},
            {"left", t_.left_table},   {"right", t_.right_table}};
  }

 private:
  GridShape shape_;
  BMonotoneTables t_;
};

std::vector<Value> random_steps(std::uint32_t n, Rng& rng, std::uint64_t max_step) {
  std::vector<Value> table(n);
  Value acc = static_cast<Value>(rng.below(2));
  for (std::uint32_t t = 0; t < n; ++t) {
    if (t > 0) acc += static_cast<Value>(rng.below(max_step + 1));
    table[t] = acc;
  }
  return table;
}

Function b_monotone_from_tables(const GridShape& shape, BMonotoneTables t) {
  if (t.b.size() != shape.d() || t.steps.size() != shape.d()) {
    throw ParameterError("orientation/table size does not match the dimension");
  }
  auto check_table = [&](const std::vector<Value>& table) {
    if (table.size() != shape.n()) throw ParameterError("step table has the wrong length");
    if (table.front() < 0 || !std::is_sorted(table.begin(), table.end())) {
      throw ParameterError("step tables must be nonnegative and nondecreasing");
    }
  };
  for (const auto& table : t.steps) check_table(table);
  check_table(t.left_table);
  check_table(t.right_table);
  if (t.left >= shape.d() || t.right >= shape.d()) throw ParameterError("bad interaction pair");
  return Function(shape, std::make_shared<BMonotoneRule>(shape, std::move(t)));
}

// ---------------------------------------------------------------------------
// hard hypercube families

class HardRule final : public Evaluator {
 public:
  HardRule(HardInstanceRecord record, HardFamily family)
      : record_(std::move(record)), family_(family) {
    const std::uint32_t dp = record_.d_prime();
    std::vector<bool> in_r(dp, false);
    for (auto c : record_.R) in_r[c] = true;
    // Byte-sliced table of the part outside R.
    chunks_ = (dp + 7) / 8;
    base_.assign(static_cast<std::size_t>(chunks_) * 256, 0);
    for (unsigned chunk = 0; chunk < chunks_; ++chunk) {
      for (unsigned byte = 0; byte < 256; ++byte) {
        Value s = 0;
        for (unsigned t = 0; t < 8; ++t) {
          const unsigned c = chunk * 8 + t;
          if (c < dp && ((byte >> t) & 1u) && !in_r[c]) s += pow3(c + 1);
        }
        base_[chunk * 256 + byte] = s;
      }
    }
    action_.resize(record_.m());
    for (std::size_t i = 0; i < record_.m(); ++i) {
      const auto c = record_.r[i];
      const int sign = family_ == HardFamily::Yes ? record_.alpha[c] : record_.beta[i];
      action_[i] = {c, sign * pow3(c + 1)};
    }
  }

  Value at(Index x) const override {
    Value v = 0;
    Index rest = x;
    for (unsigned chunk = 0; chunk < chunks_; ++chunk, rest >>= 8) {
      v += base_[chunk * 256 + (rest & 0xffu)];
    }
    const auto& [c, coef] = action_[record_.subcube_of(x)];
    return ((x >> c) & 1u) ? v + coef : v;
  }

  nlohmann::json record() const override {
    nlohmann::json doc = to_json(record_);
    doc["family"] = family_ == HardFamily::Yes ? "yes" : "no";
    return doc;
  }

 private:
  HardInstanceRecord record_;
  HardFamily family_;
  unsigned chunks_ = 0;
  std::vector<Value> base_;
  std::vector<std::pair<std::uint32_t, Value>> action_;
};

// ---------------------------------------------------------------------------
// hypergrid lower-bound family

class LiftFamilyRule final : public Evaluator {
 public:
  LiftFamilyRule(GridLiftParams p, bool companion) : p_(p), companion_(companion) {}

  Value at(Index idx) const override {
    const auto v = static_cast<Value>(idx);
    if (companion_) return 2 * v;
    const bool bit_j = ((idx >> (p_.j - 1)) & 1u) != 0;
    const bool in_block = (idx >> p_.m_prime()) == Index{p_.k - 1};
    if (bit_j && in_block) return 2 * v - (Value{1} << p_.j) - 1;
    return 2 * v;
  }

  nlohmann::json record() const override {
    return {{"family", "glift"}, {"n", p_.n}, {"d", p_.d}, {"eps", p_.eps},
            {"j", p_.j},         {"k", p_.k}, {"member", companion_ ? "f" : "g"}};
  }

 private:
  GridLiftParams p_;
  bool companion_;
};

class ConstantRule final : public Evaluator {
 public:
  ConstantRule(GridShape shape, Value value) : shape_(std::move(shape)), value_(value) {}

  Value at(Index) const override { return value_; }
  nlohmann::json record() const override {
    return {{"family", "constant"}, {"n", shape_.n()}, {"d", shape_.d()}, {"value", value_}};
  }

 private:
  GridShape shape_;
  Value value_;
};

class PsiLiftRule final : public Evaluator {
 public:
  PsiLiftRule(Function base, GridShape grid) : base_(std::move(base)), grid_(std::move(grid)) {}
  Value at(Index idx) const override { return base_(psi_index(grid_, idx)); }
  nlohmann::json record() const override {
    nlohmann::json inner = base_.record();
    if (inner.is_null()) return nullptr;
    inner["lift_n"] = grid_.n();
    return inner;
  }

 private:
  Function base_;
  GridShape grid_;
};

template <class T>
std::vector<T> get_vector(const nlohmann::json& doc, const char* key) {
  return doc.at(key).get<std::vector<T>>();
}

}  // namespace

// ---------------------------------------------------------------------------

Orientation random_orientation(std::uint32_t d, Rng& rng) {
  Orientation b(d);
  for (std::uint32_t c = 0; c < d; ++c) b[c] = rng.coin();
  return b;
}

Function gen_b_monotone(const GridShape& shape, const Orientation& b, Rng& rng) {
  if (b.size() != shape.d()) throw ParameterError("orientation length must equal d");
  BMonotoneTables t;
  t.b = b;
  for (std::uint32_t c = 0; c < shape.d(); ++c) t.steps.push_back(random_steps(shape.n(), rng, 2));
  t.left = static_cast<std::size_t>(rng.below(shape.d()));
  t.right = static_cast<std::size_t>(rng.below(shape.d()));
  t.left_table = random_steps(shape.n(), rng, 1);
  t.right_table = random_steps(shape.n(), rng, 1);
  return b_monotone_from_tables(shape, std::move(t));
}

// --- hard families ---------------------------------------------------------

std::uint32_t HardInstanceRecord::log_d() const {
  return is_power_of_two(d) ? log2_exact(d) : 0;
}

void HardInstanceRecord::validate() const {
  if (d < 4 || !is_power_of_two(d)) throw ParameterError("d must be a power of two, at least 4");
  if (d_prime() > kMaxHardDimension) {
    throw ParameterError("d' = " + std::to_string(d_prime()) + " exceeds the exact value range (max " +
                         std::to_string(kMaxHardDimension) + ")");
  }
  if (k < 1 || k > log_d() / 2) throw ParameterError("k out of range");
  if (R.size() != (std::size_t{1} << k)) throw ParameterError("|R| must equal 2^k");
  if (!std::is_sorted(R.begin(), R.end()) ||
      std::adjacent_find(R.begin(), R.end()) != R.end() || R.back() >= d) {
    throw ParameterError("R must be a sorted subset of the base dimensions");
  }
  if (r.size() != m() || beta.size() != m() || alpha.size() != d) {
    throw ParameterError("record arrays have the wrong length");
  }
  for (auto ri : r) {
    if (!std::binary_search(R.begin(), R.end(), ri)) throw ParameterError("r_i must lie in R");
  }
  auto is_sign = [](int s) { return s == 1 || s == -1; };
  if (!std::all_of(alpha.begin(), alpha.end(), is_sign) ||
      !std::all_of(beta.begin(), beta.end(), is_sign)) {
    throw ParameterError("alpha and beta entries must be +-1");
  }
}

HardInstanceRecord draw_hard_record(std::uint32_t d, Rng& rng) {
  HardInstanceRecord rec;
  rec.d = d;
  if (d < 4 || !is_power_of_two(d)) throw ParameterError("d must be a power of two, at least 4");
  if (rec.d_prime() > kMaxHardDimension) {
    throw ParameterError("d too large for exact 64-bit values");
  }
  const std::uint32_t k_max = rec.log_d() / 2;
  rec.k = 1 + static_cast<std::uint32_t>(rng.below(k_max));
  std::vector<std::uint32_t> dims(d);
  std::iota(dims.begin(), dims.end(), 0u);
  // Partial Fisher-Yates for a uniform 2^k-subset.
  const std::size_t size = std::size_t{1} << rec.k;
  for (std::size_t t = 0; t < size; ++t) {
    const auto pick = t + static_cast<std::size_t>(rng.below(d - t));
    std::swap(dims[t], dims[pick]);
  }
  rec.R.assign(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(size));
  std::sort(rec.R.begin(), rec.R.end());
  rec.r.resize(rec.m());
  for (auto& ri : rec.r) ri = rec.R[rng.below(size)];
  rec.alpha.resize(d);
  for (auto& a : rec.alpha) a = rng.sign();
  rec.beta.resize(rec.m());
  for (auto& b : rec.beta) b = rng.sign();
  return rec;
}

Function hard_function(const HardInstanceRecord& record, HardFamily family) {
  record.validate();
  return Function(record.shape(), std::make_shared<HardRule>(record, family));
}

std::pair<Function, HardInstanceRecord> gen_yes_sample(std::uint32_t d, Rng& rng) {
  HardInstanceRecord rec = draw_hard_record(d, rng);
  return {hard_function(rec, HardFamily::Yes), std::move(rec)};
}

std::pair<Function, HardInstanceRecord> gen_no_sample(std::uint32_t d, Rng& rng) {
  HardInstanceRecord rec = draw_hard_record(d, rng);
  return {hard_function(rec, HardFamily::No), std::move(rec)};
}

nlohmann::json to_json(const HardInstanceRecord& rec) {
  return {{"d", rec.d}, {"k", rec.k}, {"R", rec.R}, {"r", rec.r}, {"alpha", rec.alpha}, {"beta", rec.beta}};
}

HardInstanceRecord hard_record_from_json(const nlohmann::json& doc) {
  try {
    HardInstanceRecord rec;
    rec.d = doc.at("d").get<std::uint32_t>();
    rec.k = doc.at("k").get<std::uint32_t>();
    rec.R = get_vector<std::uint32_t>(doc, "R");
    rec.r = get_vector<std::uint32_t>(doc, "r");
    rec.alpha = get_vector<int>(doc, "alpha");
    rec.beta = get_vector<int>(doc, "beta");
    rec.validate();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad hard-instance record: ") + e.what());
  }
}

// --- hypergrid family --------------------------------------------------------

std::uint32_t GridLiftParams::ell() const { return is_power_of_two(n) ? log2_exact(n) : 0; }

std::uint32_t GridLiftParams::blocks() const {
  return static_cast<std::uint32_t>(std::llround(1.0 / (2.0 * eps)));
}

std::uint32_t GridLiftParams::m_prime() const { return m() - log2_exact(blocks()); }

void GridLiftParams::validate() const {
  if (n < 2 || !is_power_of_two(n)) throw ParameterError("n must be a power of two");
  if (d < 1) throw ParameterError("d must be positive");
  if (m() > 61) throw ParameterError("d log2 n too large for exact values");
  if (!(eps > 0.0 && eps <= 0.5)) throw ParameterError("eps must lie in (0, 1/2]");
  const double q = 1.0 / (2.0 * eps);
  const auto qi = std::llround(q);
  if (qi < 1 || std::abs(q - static_cast<double>(qi)) > 1e-9 ||
      !is_power_of_two(static_cast<std::uint64_t>(qi))) {
    throw ParameterError("1/(2 eps) must be a power of two");
  }
  if (log2_exact(static_cast<std::uint64_t>(qi)) >= m()) {
    throw ParameterError("eps too small for this grid (m' < 1)");
  }
  if (j < 1 || j > m_prime()) throw ParameterError("j must lie in [1, m']");
  if (k < 1 || k > blocks()) throw ParameterError("k must lie in [1, 1/(2 eps)]");
}

double admissible_lift_epsilon(double eps) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (eps >= 0.5) return 0.5;
  const double t = std::ceil(std::log2(1.0 / (2.0 * eps)) - 1e-12);
  return 1.0 / (2.0 * std::ldexp(1.0, static_cast<int>(t)));
}

Function lb_family_member(const GridLiftParams& params) {
  params.validate();
  return Function(GridShape(params.n, params.d), std::make_shared<LiftFamilyRule>(params, false));
}

Function lb_family_companion(std::uint32_t n, std::uint32_t d) {
  GridLiftParams p;
  p.n = n;
  p.d = d;
  p.eps = 0.5;
  if (n < 2 || !is_power_of_two(n)) throw ParameterError("n must be a power of two");
  return Function(GridShape(n, d), std::make_shared<LiftFamilyRule>(p, true));
}

Function lift_hypercube_to_hypergrid(const Function& f, std::uint32_t n) {
  if (!f.shape().is_hypercube()) throw ParameterError("lift needs a hypercube function");
  if (n < 2 || !is_power_of_two(n)) throw ParameterError("lift needs n a power of two");
  if (n == 2) return f;
  GridShape grid(n, f.shape().d());
  return Function(grid, std::make_shared<PsiLiftRule>(f, grid));
}

// --- cap ---------------------------------------------------------------------

std::vector<std::size_t> cap(const Point& x, const Point& y, std::size_t c) {
  if (x.size() != y.size()) throw ParameterError("cap needs vectors of equal length");
  if (x == y) throw ParameterError("cap needs two distinct vectors");
  std::vector<std::size_t> out;
  for (std::size_t t = x.size(); t-- > 0 && out.size() < c;) {
    if (x[t] != y[t]) out.push_back(t);
  }
  return out;
}

std::set<std::size_t> cap_set(const std::vector<Point>& V, std::size_t c) {
  std::set<std::size_t> out;
  for (std::size_t a = 0; a < V.size(); ++a) {
    for (std::size_t b = a + 1; b < V.size(); ++b) {
      if (V[a] == V[b]) continue;
      for (std::size_t t : cap(V[a], V[b], c)) out.insert(t);
    }
  }
  return out;
}

// --- instantiate -------------------------------------------------------------

Instance instantiate(const nlohmann::json& spec, Rng& rng) {
  try {
    const std::string family = spec.at("family").get<std::string>();
    if (family == "yes" || family == "no") {
      HardInstanceRecord rec = spec.contains("R") ? hard_record_from_json(spec)
                                                  : draw_hard_record(spec.at("d").get<std::uint32_t>(), rng);
      Function f = hard_function(rec, family == "yes" ? HardFamily::Yes : HardFamily::No);
      if (spec.contains("lift_n")) f = lift_hypercube_to_hypergrid(f, spec.at("lift_n").get<std::uint32_t>());
      return {f, f.record(), std::move(rec)};
    }
    if (family == "glift") {
      const auto n = spec.at("n").get<std::uint32_t>();
      const auto d = spec.at("d").get<std::uint32_t>();
      const std::string member = spec.value("member", std::string("g"));
      if (member == "f") {
        Function f = lb_family_companion(n, d);
        nlohmann::json rec = f.record();
        return {f, rec, std::nullopt};
      }
      GridLiftParams p;
      p.n = n;
      p.d = d;
      p.eps = spec.at("eps").get<double>();
      p.j = spec.value("j", 1u);
      p.k = spec.value("k", 1u);
      Function f = lb_family_member(p);
      return {f, f.record(), std::nullopt};
    }
    if (family == "bmono") {
      const GridShape shape(spec.at("n").get<std::uint32_t>(), spec.at("d").get<std::uint32_t>());
      Orientation b;
      if (spec.contains("b")) {
        for (int bit : spec.at("b").get<std::vector<int>>()) b.push_back(bit != 0);
      } else {
        b = random_orientation(shape.d(), rng);
      }
      Function f = [&] {
        if (spec.contains("steps")) {
          BMonotoneTables t;
          t.b = b;
          t.steps = spec.at("steps").get<std::vector<std::vector<Value>>>();
          const auto pair = spec.at("pair").get<std::array<std::size_t, 2>>();
          t.left = pair[0];
          t.right = pair[1];
          t.left_table = get_vector<Value>(spec, "left");
          t.right_table = get_vector<Value>(spec, "right");
          return b_monotone_from_tables(shape, std::move(t));
        }
        return gen_b_monotone(shape, b, rng);
      }();
      return {f, f.record(), std::nullopt};
    }
    if (family == "constant") {
      GridShape shape(spec.at("n").get<std::uint32_t>(), spec.at("d").get<std::uint32_t>());
      Function f(shape, std::make_shared<ConstantRule>(shape, spec.value("value", Value{0})));
      return {f, f.record(), std::nullopt};
    }
    if (family == "dense") {
      Function f = dense_from_json(spec);
      nlohmann::json rec = dense_to_json(f);
      rec["family"] = "dense";
      return {f, rec, std::nullopt};
    }
    throw ParameterError("unknown family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad family spec: ") + e.what());
  }
}

}  // namespace unate
