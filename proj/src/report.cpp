#include "quasiortho/report.hpp"

#include <ostream>

namespace quasiortho::report {

namespace {

Json witness_json(const OrthogonalityVerdict& v) {
  if (v.cells) {
    const auto& c = *v.cells;
    return Json{{"cells", Json::array({Json::array({c.x1, c.y1}), Json::array({c.x2, c.y2})})}};
  }
  if (v.map) {
    const auto& m = *v.map;
    Json w;
    w["t"] = m.t ? Json(*m.t) : Json(nullptr);
    w["x1"] = m.x1;
    w["x2"] = m.x2;
    w["not_homomorphism"] = m.not_homomorphism;
    return w;
  }
  return nullptr;
}

}  // namespace

Json map_json(std::span<const Element> map) {
  Json a = Json::array();
  for (auto v : map) a.push_back(v);
  return a;
}

Json form_json(const QuasigroupForm& form) {
  Json j;
  j["class"] = to_string(form.cls);
  j["left"] = map_json(form.left.values());
  j["right"] = map_json(form.right.values());
  j["constant"] = form.constant;
  j["position"] = to_string(form.position);
  j["transposed"] = form.transposed;
  return j;
}

Json verdict_json(const OrthogonalityVerdict& v) {
  Json j;
  j["orthogonal"] = v.orthogonal;
  j["method"] = v.method == Method::BruteForce ? "BruteForce" : "TheoremCriterion";
  j["criterion"] = v.criterion ? Json(to_string(*v.criterion)) : Json(nullptr);
  j["witness"] = witness_json(v);
  return j;
}

Json pair_record(const std::string& group, std::optional<CriterionId> criterion, const QuasigroupForm* a,
                 const QuasigroupForm* b, const std::optional<OrthogonalityVerdict>& by_criterion,
                 const OrthogonalityVerdict& bruteforce) {
  Json j;
  j["type"] = "verdict";
  j["criterion"] = criterion ? Json(to_string(*criterion)) : Json(nullptr);
  j["group"] = group.empty() ? Json(nullptr) : Json(group);
  j["a"] = a ? form_json(*a) : Json(nullptr);
  j["b"] = b ? form_json(*b) : Json(nullptr);
  j["by_criterion"] = by_criterion ? verdict_json(*by_criterion) : Json(nullptr);
  j["bruteforce"] = verdict_json(bruteforce);
  return j;
}

void write_campaign(std::ostream& out, const CampaignReport& r, const ReportOptions& options) {
  for (const auto& rec : r.records) {
    Json j;
    j["type"] = "instance";
    j["criterion"] = to_string(r.criterion);
    j["group"] = r.group;
    j["sigma"] = to_string(r.sigma);
    j["index"] = rec.index;
    j["form"] = form_json(rec.form);
    j["by_criterion"] = verdict_json(rec.criterion);
    j["bruteforce"] = verdict_json(rec.bruteforce);
    j["agree"] = rec.criterion.orthogonal == rec.bruteforce.orthogonal;
    if (options.timing) j["wall_us"] = rec.wall_us;
    out << j.dump() << '\n';
  }
  Json s;
  s["type"] = "summary";
  s["criterion"] = to_string(r.criterion);
  s["group"] = r.group;
  s["class"] = to_string(r.cls);
  s["sigma"] = to_string(r.sigma);
  s["forms"] = r.total_forms;
  s["evaluated"] = r.records.size();
  s["sampled"] = r.sampled;
  s["seed"] = r.sampled ? Json(r.seed) : Json(nullptr);
  s["orthogonal"] = r.orthogonal;
  s["discrepancies"] = r.discrepancies;
  s["corollary_applies"] = r.corollary_applies;
  s["corollary_holds"] = r.corollary_applies ? Json(r.corollary_holds) : Json(nullptr);
  out << s.dump() << '\n';
}

void write_cross_validation(std::ostream& out, const CrossValidationReport& r, const ReportOptions& options) {
  for (const auto& e : r.entries) {
    Json j;
    j["type"] = "criterion";
    j["criterion"] = to_string(e.id);
    j["group"] = e.group;
    j["a_forms"] = e.a_forms;
    j["b_forms"] = e.b_forms;
    j["instances"] = e.instances;
    j["orthogonal"] = e.orthogonal;
    j["agreements"] = e.agreements;
    j["discrepancies"] = e.instances - e.agreements;
    if (options.timing) j["wall_us"] = e.wall_us;
    out << j.dump() << '\n';
    for (const auto& d : e.discrepancies) {
      Json k;
      k["type"] = "discrepancy";
      k["criterion"] = to_string(d.id);
      k["group"] = d.group;
      k["a_index"] = d.a_index;
      k["b_index"] = d.b ? Json(d.b_index) : Json(nullptr);
      k["a"] = form_json(d.a);
      k["b"] = d.b ? form_json(*d.b) : Json(nullptr);
      k["by_criterion"] = d.criterion_verdict;
      k["bruteforce"] = d.bruteforce_verdict;
      out << k.dump() << '\n';
    }
  }
  Json t;
  t["type"] = "total";
  t["entries"] = r.entries.size();
  t["instances"] = r.total_instances();
  t["discrepancies"] = r.total_discrepancies();
  out << t.dump() << '\n';
}

std::string campaign_summary(const CampaignReport& r) {
  std::string s = std::to_string(r.records.size()) + " forms, " + std::to_string(r.orthogonal) + " orthogonal, " +
                  std::to_string(r.discrepancies) + " discrepancies";
  if (r.sampled) s += " (sampled from " + std::to_string(r.total_forms) + ", seed " + std::to_string(r.seed) + ")";
  return s;
}

std::string cross_validation_summary(const CrossValidationReport& r) {
  return std::to_string(r.entries.size()) + " criterion runs, " + std::to_string(r.total_instances()) +
         " instances, " + std::to_string(r.total_discrepancies()) + " discrepancies";
}

}  // namespace quasiortho::report
