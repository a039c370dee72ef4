#include "unate/groundtruth.hpp"

#include <algorithm>
#include <functional>

#include "unate/errors.hpp"
#include "unate/matching.hpp"
#include "unate/tree_tester.hpp"
#include "unate/vertex_cover.hpp"

namespace unate {

namespace {

Function dense_within(const Function& f, Index capacity) {
  if (f.shape().size() > capacity) {
    throw CapacityError("domain of " + std::to_string(f.shape().size()) + " points exceeds the scan capacity of " +
                        std::to_string(capacity));
  }
  return f.materialize(capacity);
}

std::int64_t as_int(Index v) { return static_cast<std::int64_t>(v); }

Rational fraction(Index num, Index den) { return Rational(as_int(num), as_int(den)); }

nlohmann::json orientation_json(const Orientation& b) {
  nlohmann::json out = nlohmann::json::array();
  for (bool bit : b) out.push_back(bit ? 1 : 0);
  return out;
}

// x <_b y: every coordinate moves in the direction b allows, and x != y.
bool precedes(const GridShape& shape, Index x, Index y, const Orientation& b) {
  if (x == y) return false;
  for (std::size_t c = 0; c < shape.d(); ++c) {
    const Coord xc = shape.coord(x, c);
    const Coord yc = shape.coord(y, c);
    if (b[c] ? xc < yc : xc > yc) return false;
  }
  return true;
}

Orientation orientation_from_mask(std::uint32_t d, std::uint64_t mask) {
  Orientation b(d);
  for (std::uint32_t c = 0; c < d; ++c) b[c] = ((mask >> c) & 1u) != 0;
  return b;
}

}  // namespace

// --- lines -------------------------------------------------------------------

std::size_t longest_nondecreasing(std::span<const Value> values) {
  std::vector<Value> tails;
  for (Value v : values) {
    auto it = std::upper_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return tails.size();
}

Rational dist_line_monotone(std::span<const Value> values) {
  if (values.empty()) throw ParameterError("empty line");
  const auto n = values.size();
  return fraction(n - longest_nondecreasing(values), n);
}

Rational dist_line_antimonotone(std::span<const Value> values) {
  std::vector<Value> negated(values.size());
  std::transform(values.begin(), values.end(), negated.begin(), std::negate<>());
  return dist_line_monotone(negated);
}

// --- unateness scan ----------------------------------------------------------

UnatenessCheck is_unate_exact(const Function& f, Index capacity) {
  const Function g = dense_within(f, capacity);
  const GridShape& shape = g.shape();
  const auto table = g.table();
  const std::uint32_t n = shape.n();
  for (std::size_t i = 0; i < shape.d(); ++i) {
    const Index stride = shape.stride(i);
    std::optional<Index> inc;
    std::optional<Index> dec;
    for (Index line = 0; line < shape.line_count() && !(inc && dec); ++line) {
      const Index base = shape.line_base(i, line);
      for (Coord t = 0; t + 1 < n; ++t) {
        const Index a = base + t * stride;
        const Value lo = table[a];
        const Value hi = table[a + stride];
        if (lo < hi && !inc) inc = a;
        if (lo > hi && !dec) dec = a;
      }
    }
    if (inc && dec) {
      ViolationWitness w;
      w.dimension = i;
      w.increasing = {shape.point_at(*inc), shape.point_at(*inc + stride)};
      w.decreasing = {shape.point_at(*dec), shape.point_at(*dec + stride)};
      w.kind = shape.is_hypercube() ? WitnessKind::EdgePair : WitnessKind::GeneralPair;
      return {false, std::move(w)};
    }
  }
  return {true, std::nullopt};
}

// --- certificates --------------------------------------------------------------

std::string to_string(CertificateKind kind) {
  return kind == CertificateKind::Exact ? "exact" : "lower-bound";
}

std::string to_string(CertificateMethod method) {
  switch (method) {
    case CertificateMethod::VertexCover: return "vertex-cover";
    case CertificateMethod::Matching: return "matching";
    case CertificateMethod::LNS: return "lns";
    case CertificateMethod::StructuralNoFamily: return "no-family";
  }
  return "?";
}

nlohmann::json to_json(const DistanceCertificate& cert) {
  nlohmann::json doc = {{"distance", cert.value.to_double()},
                        {"distance_exact", to_string(cert.value)},
                        {"kind", to_string(cert.kind)},
                        {"method", to_string(cert.method)}};
  doc["b_star"] = cert.orientation ? orientation_json(*cert.orientation) : nlohmann::json(nullptr);
  if (!cert.witness.empty()) doc["witness"] = cert.witness;
  return doc;
}

// --- vertex cover distance -----------------------------------------------------

DistanceCertificate dist_b_monotone_exact(const Function& f, const Orientation& b) {
  const GridShape& shape = f.shape();
  if (b.size() != shape.d()) throw ParameterError("orientation length must equal d");
  if (shape.size() > kExactPointCapacity) {
    throw CapacityError("exact distance limited to " + std::to_string(kExactPointCapacity) +
                        " points; use dist_unate_matching_lb or dist_unate_lns_lb");
  }
  const auto N = static_cast<std::uint32_t>(shape.size());
  std::vector<Value> values(N);
  for (std::uint32_t x = 0; x < N; ++x) values[x] = f(x);
  std::vector<Edge> edges;
  for (std::uint32_t x = 0; x < N; ++x) {
    for (std::uint32_t y = 0; y < N; ++y) {
      if (values[x] > values[y] && precedes(shape, x, y, b)) edges.emplace_back(x, y);
    }
  }
  const auto cover = min_vertex_cover(N, edges);
  DistanceCertificate cert;
  cert.kind = CertificateKind::Exact;
  cert.method = CertificateMethod::VertexCover;
  cert.value = fraction(cover.size(), N);
  cert.orientation = b;
  cert.witness.assign(cover.begin(), cover.end());
  return cert;
}

DistanceCertificate dist_unate_exact(const Function& f) {
  const GridShape& shape = f.shape();
  if (shape.size() > kExactPointCapacity || shape.d() > 16) {
    throw CapacityError("exact unateness distance limited to " + std::to_string(kExactPointCapacity) +
                        " points; use dist_unate_matching_lb or dist_unate_lns_lb");
  }
  // Per-dimension line distances bound every orientation from below, which
  // lets most orientations be skipped without a cover search.
  const MuProfile lines = mu_profile(f, MuMode::LineDistance);
  std::optional<DistanceCertificate> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << shape.d()); ++mask) {
    const Orientation b = orientation_from_mask(shape.d(), mask);
    Rational bound;
    for (std::size_t i = 0; i < shape.d(); ++i) bound = std::max(bound, b[i] ? lines.beta[i] : lines.alpha[i]);
    if (best && bound >= best->value) continue;
    DistanceCertificate cert = dist_b_monotone_exact(f, b);
    if (!best || cert.value < best->value) best = std::move(cert);
    if (best->value == Rational(0)) break;
  }
  return *best;
}

// --- matching bound ---------------------------------------------------------------

DistanceCertificate dist_unate_matching_lb(const Function& f, unsigned max_mixed, Index capacity) {
  const GridShape& shape = f.shape();
  if (!shape.is_hypercube()) throw ParameterError("matching bound is defined on hypercubes");
  if (shape.d() < 2) {
    // A single edge never violates unateness.
    return {CertificateKind::LowerBound, Rational(0), CertificateMethod::Matching, Orientation{false}, {}};
  }
  const Function g = dense_within(f, capacity);
  const auto table = g.table();
  const std::uint32_t d = shape.d();
  const Index size = shape.size();

  std::vector<std::vector<Index>> inc(d);
  std::vector<std::vector<Index>> dec(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    const Index bit = Index{1} << i;
    for (Index x = 0; x < size; ++x) {
      if (x & bit) continue;
      if (table[x] < table[x | bit]) inc[i].push_back(x);
      if (table[x] > table[x | bit]) dec[i].push_back(x);
    }
  }
  Orientation base(d, false);
  std::vector<std::uint32_t> mixed;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (!inc[i].empty() && !dec[i].empty()) {
      mixed.push_back(i);
    } else {
      base[i] = !inc[i].empty();  // the direction with no violated edges
    }
  }
  if (mixed.size() > max_mixed) {
    throw CapacityError(std::to_string(mixed.size()) + " dimensions carry both edge directions; the matching bound enumerates at most " +
                        std::to_string(max_mixed));
  }

  std::optional<DistanceCertificate> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << mixed.size()); ++mask) {
    Orientation b = base;
    for (std::size_t t = 0; t < mixed.size(); ++t) b[mixed[t]] = ((mask >> t) & 1u) != 0;
    // Even-parity points on the left, odd on the right; x >> 1 is a unique id
    // within each side because bit 0 is fixed by the remaining parity.
    const auto half = static_cast<std::uint32_t>(size / 2);
    BipartiteMatching matching(half, half);
    for (std::uint32_t i : mixed) {
      const Index bit = Index{1} << i;
      for (Index x : b[i] ? inc[i] : dec[i]) {
        const Index y = x | bit;
        const bool x_even = (std::popcount(x) & 1) == 0;
        const Index even = x_even ? x : y;
        const Index odd = x_even ? y : x;
        matching.add_edge(static_cast<std::uint32_t>(even >> 1), static_cast<std::uint32_t>(odd >> 1));
      }
    }
    const auto m = matching.solve();
    if (!best || fraction(m, size) < best->value) {
      DistanceCertificate cert{CertificateKind::LowerBound, fraction(m, size), CertificateMethod::Matching, b, {}};
      for (std::uint32_t u = 0; u < half; ++u) {
        const auto v = matching.mate_of_left(u);
        if (v == BipartiteMatching::kFree) continue;
        // Recover the full indices from the ids and the parity convention.
        const Index hi_u = Index{u} << 1;
        const Index even = (std::popcount(hi_u) & 1) == 0 ? hi_u : hi_u | 1;
        const Index hi_v = Index{v} << 1;
        const Index odd = (std::popcount(hi_v) & 1) == 1 ? hi_v : hi_v | 1;
        cert.witness.push_back(even);
        cert.witness.push_back(odd);
      }
      best = std::move(cert);
    }
  }
  return *best;
}

DistanceCertificate dist_unate_lns_lb(const Function& f, Index capacity) {
  const MuProfile p = mu_profile(f, MuMode::LineDistance, capacity);
  const auto top = std::max_element(p.mu.begin(), p.mu.end());
  return {CertificateKind::LowerBound, *top, CertificateMethod::LNS, p.b_star, {}};
}

DistanceCertificate no_family_distance_lb(const HardInstanceRecord& record) {
  record.validate();
  const Index s = (Index{1} << record.d_prime()) / record.m();
  Index total = 0;
  for (auto r : record.R) {
    Index plus = 0;
    Index minus = 0;
    for (std::size_t i = 0; i < record.m(); ++i) {
      if (record.r[i] != r) continue;
      (record.beta[i] > 0 ? plus : minus) += 1;
    }
    total += (s / 2) * std::min(plus, minus);
  }
  return {CertificateKind::LowerBound, fraction(total, Index{1} << record.d_prime()),
          CertificateMethod::StructuralNoFamily, std::nullopt, {}};
}

// --- mu profile ------------------------------------------------------------------

Rational MuProfile::total() const {
  Rational sum;
  for (const auto& m : mu) sum += m;
  return sum;
}

MuProfile mu_profile(const Function& f, MuMode mode, Index capacity) {
  const GridShape& shape = f.shape();
  if (mode == MuMode::Auto) mode = shape.is_hypercube() ? MuMode::EdgeFraction : MuMode::LineDistance;
  if (mode == MuMode::EdgeFraction && !shape.is_hypercube()) {
    throw ParameterError("edge fractions are defined on hypercubes");
  }
  const Function g = dense_within(f, capacity);
  const auto table = g.table();
  const std::uint32_t n = shape.n();

  MuProfile p;
  p.mode = mode;
  std::vector<Value> line(n);
  std::vector<Value> negated(n);
  for (std::size_t i = 0; i < shape.d(); ++i) {
    const Index stride = shape.stride(i);
    Index down = 0;  // decreasing edges, or points to change toward monotone
    Index up = 0;
    for (Index l = 0; l < shape.line_count(); ++l) {
      const Index base = shape.line_base(i, l);
      for (Coord t = 0; t < n; ++t) line[t] = table[base + t * stride];
      if (mode == MuMode::EdgeFraction) {
        down += line[0] > line[1];
        up += line[0] < line[1];
      } else {
        std::transform(line.begin(), line.end(), negated.begin(), std::negate<>());
        down += n - longest_nondecreasing(line);
        up += n - longest_nondecreasing(negated);
      }
    }
    const Index den = mode == MuMode::EdgeFraction ? shape.line_count() : shape.size();
    p.alpha.push_back(fraction(down, den));
    p.beta.push_back(fraction(up, den));
    p.mu.push_back(std::min(p.alpha.back(), p.beta.back()));
    p.b_star.push_back(!(p.alpha.back() < p.beta.back()));
  }
  return p;
}

nlohmann::json to_json(const MuProfile& p) {
  nlohmann::json mu = nlohmann::json::array();
  nlohmann::json alpha = nlohmann::json::array();
  nlohmann::json beta = nlohmann::json::array();
  for (std::size_t i = 0; i < p.mu.size(); ++i) {
    mu.push_back(p.mu[i].to_double());
    alpha.push_back(p.alpha[i].to_double());
    beta.push_back(p.beta[i].to_double());
  }
  return {{"mode", p.mode == MuMode::EdgeFraction ? "edge-fraction" : "line-distance"},
          {"alpha", alpha},
          {"beta", beta},
          {"mu", mu},
          {"sum_mu", p.total().to_double()},
          {"b_star", orientation_json(p.b_star)}};
}

// --- tree tester -----------------------------------------------------------------

TreeProbabilities tree_tester_exact(std::span<const Value> values) {
  if (values.empty()) throw ParameterError("empty line");
  const auto n = static_cast<std::uint32_t>(values.size());
  Index none = 0;
  Index up = 0;
  Index down = 0;
  Index both = 0;
  for (Coord x = 0; x < n; ++x) {
    const auto path = tree_search_path(n, x);
    std::vector<Value> seen(path.size());
    for (std::size_t k = 0; k < path.size(); ++k) seen[k] = values[path[k]];
    const DirectionSet dir = tree_outcome(path, seen).dir;
    if (dir.both()) {
      ++both;
    } else if (dir.up) {
      ++up;
    } else if (dir.down) {
      ++down;
    } else {
      ++none;
    }
  }
  return {fraction(none, n), fraction(up, n), fraction(down, n), fraction(both, n)};
}

Rational decreasing_pair_fraction(std::span<const Value> values) {
  const Index n = values.size();
  if (n < 2) throw ParameterError("need at least two positions");
  Index count = 0;
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) count += values[u] > values[v];
  }
  return fraction(count, n * (n - 1) / 2);
}

// --- certify --------------------------------------------------------------------

DistanceCertificate certify(const Function& f) {
  const GridShape& shape = f.shape();
  if (shape.size() <= kExactPointCapacity && shape.d() <= 16) return dist_unate_exact(f);
  DistanceCertificate lns = dist_unate_lns_lb(f);
  if (shape.is_hypercube()) {
    try {
      DistanceCertificate m = dist_unate_matching_lb(f);
      if (m.value >= lns.value) return m;
    } catch (const CapacityError&) {
    }
  }
  return lns;
}

}  // namespace unate
