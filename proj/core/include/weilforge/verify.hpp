#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "weilforge/groebner.hpp"
#include "weilforge/instances.hpp"
#include "weilforge/invariants.hpp"
#include "weilforge/ring.hpp"

namespace weilforge {

enum class HypothesisStatus { Satisfied, NotSatisfied, UndecidableOverBaseField };

enum class Verdict {
  Pass,
  Fail,
  SkippedHypothesisFalse,
  SkippedUndecidable,
  SkippedResourceLimit,
  SkippedNotApplicable,
};

std::string_view to_string(HypothesisStatus s);
std::string_view to_string(Verdict v);

enum class CheckKind {
  /// An identity or bound relating a system to its Weil restriction.
  Statement,
  /// A cross-check between two computation paths of this library.
  Consistency,
};

struct CheckInfo {
  std::string_view id;
  CheckKind kind;
  /// The relation verified, in plain notation.
  std::string_view statement;
  /// What must hold before the relation is expected.
  std::string_view hypothesis;
};

/// Every check the suite knows, sorted by id.
const std::vector<CheckInfo>& check_catalog();
/// Throws UnknownCheckId.
const CheckInfo& find_check(std::string_view id);

struct CheckRecord {
  std::string check_id;
  std::string instance;
  HypothesisStatus hypothesis = HypothesisStatus::Satisfied;
  std::string left;
  std::string right;
  Verdict verdict = Verdict::Pass;
  std::string note;
  double elapsed_ms = 0;
};

struct VerificationReport {
  std::vector<CheckRecord> records;

  bool has_failures() const;
  std::size_t count(Verdict v) const;
  std::vector<const CheckRecord*> select(std::string_view check_id) const;
  /// Timing fields are omitted when `timings` is false so that reports can be
  /// compared byte for byte.
  std::string to_json(bool timings = true) const;
  std::string to_text(bool timings = true) const;
};

/// A named system over an extension field.
struct SuiteInstance {
  std::string name;
  PolySystem system;
};

SuiteInstance instance_from_spec(const InstanceSpec& spec);

struct SuiteOptions {
  /// Check ids to run; empty means all.
  std::vector<std::string> targets;
  /// Instances analysed concurrently.
  unsigned threads = 1;
  GbOptions groebner;
  /// Largest Macaulay degree tried when measuring a solving degree.
  unsigned solving_degree_cap = 24;
  BettiOptions betti;
  /// Point budget for exhaustive solution enumeration.
  std::uint64_t solution_budget = std::uint64_t{1} << 20;
};

/// One record per (check, instance), plus one record for each
/// instance-independent check. Records come sorted by check id, then instance.
VerificationReport run_verification_suite(const std::vector<SuiteInstance>& instances, const SuiteOptions& opts = {});

}  // namespace weilforge
