#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "quasiortho/campaign.hpp"

namespace quasiortho::report {

using Json = nlohmann::ordered_json;

/// wall_us fields are written only when `timing` is set, so reports without
/// it are byte-identical across runs.
struct ReportOptions {
  bool timing = false;
};

Json map_json(std::span<const Element> map);
Json form_json(const QuasigroupForm& form);
Json verdict_json(const OrthogonalityVerdict& v);

/// One "verdict" line for a single pair check. Either verdict may be absent.
Json pair_record(const std::string& group, std::optional<CriterionId> criterion, const QuasigroupForm* a,
                 const QuasigroupForm* b, const std::optional<OrthogonalityVerdict>& by_criterion,
                 const OrthogonalityVerdict& bruteforce);

/// "instance" lines in form order followed by one "summary" line.
void write_campaign(std::ostream& out, const CampaignReport& r, const ReportOptions& options = {});

/// One "criterion" line per (group, criterion) entry, each followed by its
/// "discrepancy" lines, then one "total" line.
void write_cross_validation(std::ostream& out, const CrossValidationReport& r, const ReportOptions& options = {});

/// e.g. "216 forms, 0 orthogonal, 0 discrepancies".
std::string campaign_summary(const CampaignReport& r);
std::string cross_validation_summary(const CrossValidationReport& r);

}  // namespace quasiortho::report
