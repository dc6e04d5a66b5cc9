#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "quasiortho/orthogonality.hpp"

namespace quasiortho {

/// Candidates for one form component: Aut itself, I o Aut, or the affine
/// permutations x -> phi(x) + c.
std::vector<Morphism> component_candidates(const FiniteGroup& g, ComponentKind kind,
                                           const std::vector<Morphism>& auts);

/// Every form of the signature with components drawn from
/// component_candidates; constants range over the group when
/// `with_constants` is set and are the identity otherwise.
std::vector<QuasigroupForm> enumerate_forms(const GroupPtr& g, OperandSignature sig, bool with_constants,
                                            const std::vector<Morphism>& auts);

struct Fixture {
  std::string label;
  GroupPtr group;
};

/// Z2..Z7, Z2xZ2, Z2xZ4, S3, D4 and Q8. Q8 is read from `q8.tbl` in
/// `fixture_dir` when present and built from its literal table otherwise.
std::vector<Fixture> default_fixtures(const std::filesystem::path& fixture_dir);

/// QUASIORTHO_FIXTURE_DIR when set, the bundled data directory otherwise.
std::filesystem::path fixture_directory();

struct Discrepancy {
  CriterionId id;
  std::string group;
  std::size_t a_index = 0;
  std::size_t b_index = 0;
  QuasigroupForm a;
  std::optional<QuasigroupForm> b;
  bool criterion_verdict = false;
  bool bruteforce_verdict = false;
};

struct CrossValidationEntry {
  CriterionId id;
  std::string group;
  std::size_t a_forms = 0;
  std::size_t b_forms = 0;
  std::uint64_t instances = 0;
  std::uint64_t orthogonal = 0;
  std::uint64_t agreements = 0;
  /// At most the first 32 mismatches in form order; the full count is
  /// instances - agreements.
  std::vector<Discrepancy> discrepancies;
  std::uint64_t wall_us = 0;
};

struct CrossValidationReport {
  std::vector<CrossValidationEntry> entries;
  std::uint64_t total_instances() const;
  std::uint64_t total_discrepancies() const;
};

/// Every criterion against brute force over every admissible form pair (or
/// form, for parastrophe criteria) of each fixture. Criteria whose operands
/// need an abelian carrier skip non-abelian fixtures. Work is split over
/// `jobs` threads and merged in form order.
CrossValidationReport cross_validate(const std::vector<Fixture>& fixtures, const std::vector<CriterionId>& ids,
                                     unsigned jobs = 1);

struct CampaignOptions {
  /// Evaluate only this many forms, drawn without replacement.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  QuantifierMode mode = QuantifierMode::ShortCircuit;
  /// Build components from Inn instead of Aut, which lifts the order cap of
  /// the automorphism enumeration.
  bool inner_only = false;
};

struct CampaignRecord {
  std::size_t index = 0;
  QuasigroupForm form;
  OrthogonalityVerdict criterion;
  OrthogonalityVerdict bruteforce;
  std::uint64_t wall_us = 0;
};

struct CampaignReport {
  std::string group;
  FormClass cls = FormClass::Linear;
  ParastropheLabel sigma = ParastropheLabel::s12;
  CriterionId criterion = CriterionId::PAR_LIN12;
  std::size_t total_forms = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::vector<CampaignRecord> records;
  std::size_t orthogonal = 0;
  std::size_t discrepancies = 0;
  /// Set when the class and parastrophe fall under a known S_n
  /// non-orthogonality result; `corollary_holds` then reports whether no
  /// orthogonal instance was found.
  bool corollary_applies = false;
  bool corollary_holds = true;
};

/// Whether S_n (n != 2, 6) forms of the class are never orthogonal to
/// their sigma-parastrophe.
bool sn_corollary_applies(FormClass cls, ParastropheLabel sigma) noexcept;

/// All forms of the class over the group (constants included) checked
/// against their sigma-parastrophe by criterion and by brute force.
CampaignReport parastrophe_campaign(const GroupPtr& g, FormClass cls, ParastropheLabel sigma,
                                    const CampaignOptions& options = {});

/// The same over S_n, n in {3, 4, 5}. S_5 requires sampling; its components
/// come from Inn(S_5), which equals Aut(S_5).
CampaignReport sn_campaign(int n, FormClass cls, ParastropheLabel sigma, CampaignOptions options = {});

}  // namespace quasiortho
