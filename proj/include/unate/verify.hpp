#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace unate {

enum class VerifyScope { Quick, Full };

std::string to_string(VerifyScope scope);
VerifyScope verify_scope_from_string(const std::string& name);

struct CheckResult {
  std::string id;        ///< "criterion-N" or "property-<name>"
  std::string title;
  bool pass = false;
  std::string summary;   ///< one line of measured values
  nlohmann::json detail;
  double seconds = 0.0;  ///< wall time; not serialized
};

struct VerifyOptions {
  VerifyScope scope = VerifyScope::Quick;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool properties = true;
  bool criteria = true;
  /// Called after each check completes.
  std::function<void(const CheckResult&)> on_result;
};

struct VerifySummary {
  VerifyScope scope = VerifyScope::Quick;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
};

/// Runs the property checks and the numbered acceptance criteria. The quick
/// scope shrinks trial counts; the full scope uses the acceptance sizes.
VerifySummary verify_suite(const VerifyOptions& options);

/// Deterministic given (scope, seed): timings are left out.
nlohmann::json to_json(const VerifySummary& summary);

/// All value patterns of a length-n line up to order equivalence: sequences
/// over {0..k-1} using every value, for some k.
std::vector<std::vector<std::int64_t>> weak_order_patterns(std::uint32_t n);

}  // namespace unate
