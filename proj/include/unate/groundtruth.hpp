#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "unate/function.hpp"
#include "unate/generators.hpp"
#include "unate/rational.hpp"
#include "unate/testers.hpp"

namespace unate {

// Exact oracles. None of these go through a CountingOracle; they read the
// whole function and are meant for instances small enough to scan.

/// Length of the longest nondecreasing subsequence.
std::size_t longest_nondecreasing(std::span<const Value> values);
/// (n - LNS) / n.
Rational dist_line_monotone(std::span<const Value> values);
/// Same with the longest nonincreasing subsequence.
Rational dist_line_antimonotone(std::span<const Value> values);

struct UnatenessCheck {
  bool unate = true;
  /// Adjacent increasing and decreasing pairs in one dimension when !unate.
  std::optional<ViolationWitness> witness;
};

/// Scans every adjacent pair (d n^d reads after one materialization).
UnatenessCheck is_unate_exact(const Function& f, Index capacity = Function::kMaterializeCapacity);

enum class CertificateKind { Exact, LowerBound };
enum class CertificateMethod { VertexCover, Matching, LNS, StructuralNoFamily };

std::string to_string(CertificateKind kind);
std::string to_string(CertificateMethod method);

struct DistanceCertificate {
  CertificateKind kind = CertificateKind::Exact;
  Rational value;
  CertificateMethod method = CertificateMethod::VertexCover;
  /// Orientation attaining the value, when the method minimizes over one.
  std::optional<Orientation> orientation;
  /// VertexCover: the cover. Matching: matched pairs, flattened.
  std::vector<Index> witness;
};

nlohmann::json to_json(const DistanceCertificate& cert);

/// Largest domain the vertex-cover oracles accept.
inline constexpr Index kExactPointCapacity = 256;

/// Minimum vertex cover of the graph of all b-comparable pairs x <_b y with
/// f(x) > f(y), divided by n^d.
DistanceCertificate dist_b_monotone_exact(const Function& f, const Orientation& b);
/// Minimum of dist_b_monotone_exact over all 2^d orientations.
DistanceCertificate dist_unate_exact(const Function& f);

/// Hypercube only: minimum over orientations of (maximum matching of
/// b-violated edges) / 2^d. Dimensions whose edges only go one way keep their
/// harmless orientation; the rest (at most max_mixed) are enumerated.
DistanceCertificate dist_unate_matching_lb(const Function& f, unsigned max_mixed = 12,
                                           Index capacity = Index{1} << 22);

/// max_i mu_i with line distances: every i-line must be repaired separately.
DistanceCertificate dist_unate_lns_lb(const Function& f, Index capacity = Function::kMaterializeCapacity);

/// Counting bound for a No-family instance: sum over r in R of
/// (s/2) min(|A+_r|, |A-_r|) / 2^(d'), s = 2^(d') / m.
DistanceCertificate no_family_distance_lb(const HardInstanceRecord& record);

/// EdgeFraction: alpha_i / beta_i are fractions of decreasing / increasing
/// i-edges (n = 2 only). LineDistance: averages of per-line distances to
/// monotone / antimonotone. Auto picks EdgeFraction exactly when n = 2.
enum class MuMode { Auto, EdgeFraction, LineDistance };

struct MuProfile {
  MuMode mode = MuMode::Auto;
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::vector<Rational> mu;
  /// b*_i = 0 iff alpha_i < beta_i.
  Orientation b_star;

  Rational total() const;
};

MuProfile mu_profile(const Function& f, MuMode mode = MuMode::Auto,
                     Index capacity = Function::kMaterializeCapacity);
nlohmann::json to_json(const MuProfile& profile);

/// Exact outcome distribution of the tree tester over the uniform target.
struct TreeProbabilities {
  Rational none;
  Rational up;
  Rational down;
  Rational both;

  Rational up_present() const { return up + both; }
  Rational down_present() const { return down + both; }
};

TreeProbabilities tree_tester_exact(std::span<const Value> values);

/// Fraction of the C(n, 2) position pairs u < v with h(u) > h(v).
Rational decreasing_pair_fraction(std::span<const Value> values);

/// Strongest certificate affordable for f: exact on tiny domains, then the
/// matching bound on hypercubes, then the line bound.
DistanceCertificate certify(const Function& f);

}  // namespace unate
