#include "quasiortho/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>
#include <unordered_set>

namespace quasiortho {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t micros_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count());
}

constexpr std::size_t kStoredDiscrepancies = 32;

// Forms indexed as ((left * |R|) + right) * constants + c, so huge spaces
// never have to be materialized as a list.
class FormSpace {
 public:
  FormSpace(GroupPtr g, OperandSignature sig, bool with_constants, const std::vector<Morphism>& auts)
      : g_(std::move(g)), sig_(sig) {
    const auto shape = shape_of(sig.cls);
    left_ = component_candidates(*g_, shape.left, auts);
    right_ = component_candidates(*g_, shape.right, auts);
    constants_ = with_constants ? g_->order() : 1;
  }

  std::size_t size() const noexcept { return left_.size() * right_.size() * constants_; }

  QuasigroupForm at(std::size_t i) const {
    const std::size_t c = i % constants_;
    i /= constants_;
    const std::size_t r = i % right_.size();
    const std::size_t l = i / right_.size();
    const Element constant = constants_ == 1 ? g_->identity() : static_cast<Element>(c);
    return make_form(g_, sig_.cls, left_[l], right_[r], constant, ConstantPosition::Right, sig_.transposed);
  }

 private:
  GroupPtr g_;
  OperandSignature sig_;
  std::vector<Morphism> left_;
  std::vector<Morphism> right_;
  std::size_t constants_ = 1;
};

unsigned effective_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

// Runs body(i) for i in [0, count) over `jobs` threads with dynamic chunking.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  jobs = static_cast<unsigned>(std::min<std::size_t>(effective_jobs(jobs), std::max<std::size_t>(count, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count || failed.load()) return;
          body(i, w);
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool needs_abelian(const CriterionInfo& info) {
  return info.a.cls == FormClass::TQuasigroup || info.b.cls == FormClass::TQuasigroup;
}

struct RowResult {
  std::uint64_t orthogonal = 0;
  std::uint64_t agreements = 0;
  struct Miss {
    std::size_t b;
    bool criterion;
    bool bruteforce;
  };
  std::vector<Miss> misses;
};

CrossValidationEntry validate_pair_criterion(const CriterionInfo& info, const Fixture& fx,
                                             const std::vector<Morphism>& auts, unsigned jobs) {
  const FormSpace space_a(fx.group, info.a, !is_one_sided(info.a.cls), auts);
  const FormSpace space_b(fx.group, info.b, !is_one_sided(info.b.cls), auts);
  const std::size_t na = space_a.size(), nb = space_b.size();
  std::vector<QuasigroupForm> fa, fb;
  std::vector<Quasigroup> ta, tb;
  std::vector<PreparedOperand> pa, pb;
  for (std::size_t i = 0; i < na; ++i) {
    fa.push_back(space_a.at(i));
    ta.push_back(materialize(fa.back()));
    pa.push_back(prepare_operand(info.id, Side::A, fa.back()));
  }
  for (std::size_t j = 0; j < nb; ++j) {
    fb.push_back(space_b.at(j));
    tb.push_back(materialize(fb.back()));
    pb.push_back(prepare_operand(info.id, Side::B, fb.back()));
  }

  const unsigned workers = effective_jobs(jobs);
  std::vector<PairChecker> checkers(workers);
  std::vector<std::vector<Element>> scratch(workers);
  std::vector<std::vector<std::uint32_t>> stamps(workers);
  std::vector<RowResult> rows(na);
  const std::size_t n = fx.group->order();

  parallel_for(na, workers, [&](std::size_t i, unsigned w) {
    RowResult& row = rows[i];
    for (std::size_t j = 0; j < nb; ++j) {
      const bool bf = checkers[w].distinct(ta[i].table, tb[j].table, n);
      const bool cr = evaluate_pair(info.id, pa[i], pb[j], QuantifierMode::ShortCircuit, scratch[w], stamps[w])
                          .orthogonal;
      row.orthogonal += bf;
      if (bf == cr) {
        ++row.agreements;
      } else {
        row.misses.push_back({j, cr, bf});
      }
    }
  });

  CrossValidationEntry entry{info.id, fx.label, na, nb, 0, 0, 0, {}};
  entry.instances = static_cast<std::uint64_t>(na) * nb;
  for (std::size_t i = 0; i < na; ++i) {
    entry.orthogonal += rows[i].orthogonal;
    entry.agreements += rows[i].agreements;
    for (const auto& m : rows[i].misses) {
      if (entry.discrepancies.size() >= kStoredDiscrepancies) break;
      entry.discrepancies.push_back({info.id, fx.label, i, m.b, fa[i], fb[m.b], m.criterion, m.bruteforce});
    }
  }
  return entry;
}

CrossValidationEntry validate_parastrophe_criterion(const CriterionInfo& info, const Fixture& fx,
                                                    const std::vector<Morphism>& auts, unsigned jobs) {
  const FormSpace space(fx.group, info.a, true, auts);
  const std::size_t count = space.size();
  struct Outcome {
    bool criterion;
    bool bruteforce;
  };
  std::vector<Outcome> out(count);
  parallel_for(count, jobs, [&](std::size_t i, unsigned) {
    const QuasigroupForm f = space.at(i);
    const Quasigroup q = materialize(f);
    const bool bf = orthogonal_bruteforce(q, parastrophe_table(q, info.sigma)).orthogonal;
    const bool cr = parastrophe_orthogonality(info.id, f).orthogonal;
    out[i] = {cr, bf};
  });

  CrossValidationEntry entry{info.id, fx.label, count, 0, count, 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    entry.orthogonal += out[i].bruteforce;
    if (out[i].criterion == out[i].bruteforce) {
      ++entry.agreements;
    } else if (entry.discrepancies.size() < kStoredDiscrepancies) {
      entry.discrepancies.push_back(
          {info.id, fx.label, i, 0, space.at(i), std::nullopt, out[i].criterion, out[i].bruteforce});
    }
  }
  return entry;
}

// Floyd's algorithm: k distinct indices below n, returned sorted.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::unordered_set<std::size_t> chosen;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> dist(0, j);
    const std::size_t t = dist(rng);
    const std::size_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Morphism> component_candidates(const FiniteGroup& g, ComponentKind kind,
                                           const std::vector<Morphism>& auts) {
  std::vector<Morphism> out;
  const Morphism inv = inversion(g);
  switch (kind) {
    case ComponentKind::Automorphism:
      out = auts;
      break;
    case ComponentKind::AntiAutomorphism:
      for (const auto& a : auts) out.push_back(compose(g, inv, a));
      break;
    case ComponentKind::Permutation:
      for (const auto& a : auts) {
        for (std::size_t c = 0; c < g.order(); ++c) {
          out.push_back(compose(g, right_translation(g, static_cast<Element>(c)), a));
        }
      }
      break;
  }
  return out;
}

std::vector<QuasigroupForm> enumerate_forms(const GroupPtr& g, OperandSignature sig, bool with_constants,
                                            const std::vector<Morphism>& auts) {
  const FormSpace space(g, sig, with_constants, auts);
  std::vector<QuasigroupForm> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

std::filesystem::path fixture_directory() {
  if (const char* env = std::getenv("QUASIORTHO_FIXTURE_DIR"); env != nullptr && *env != '\0') return env;
  return QUASIORTHO_DEFAULT_FIXTURE_DIR;
}

std::vector<Fixture> default_fixtures(const std::filesystem::path& fixture_dir) {
  std::vector<Fixture> out;
  auto add = [&](const std::string& label, FiniteGroup g) {
    out.push_back({label, std::make_shared<const FiniteGroup>(std::move(g))});
  };
  for (std::size_t n = 2; n <= 7; ++n) add("Z" + std::to_string(n), cyclic_group(n));
  add("Z2xZ2", group_from_spec("Z2xZ2"));
  add("Z2xZ4", group_from_spec("Z2xZ4"));
  add("S3", symmetric_group(3));
  add("D4", dihedral_group(4));
  const auto q8_path = fixture_dir / "q8.tbl";
  if (std::ifstream in(q8_path); in) {
    const auto table = read_table(in);
    add("Q8", FiniteGroup::from_cayley_table(table, "Q8"));
  } else {
    add("Q8", quaternion_group());
  }
  return out;
}

std::uint64_t CrossValidationReport::total_instances() const {
  std::uint64_t s = 0;
  for (const auto& e : entries) s += e.instances;
  return s;
}

std::uint64_t CrossValidationReport::total_discrepancies() const {
  std::uint64_t s = 0;
  for (const auto& e : entries) s += e.instances - e.agreements;
  return s;
}

CrossValidationReport cross_validate(const std::vector<Fixture>& fixtures, const std::vector<CriterionId>& ids,
                                     unsigned jobs) {
  CrossValidationReport report;
  for (const auto& fx : fixtures) {
    const auto auts = enumerate_automorphisms(*fx.group);
    for (const auto id : ids) {
      const auto& info = criterion_info(id);
      if (needs_abelian(info) && !fx.group->is_abelian()) continue;
      const auto start = Clock::now();
      report.entries.push_back(info.parastrophe ? validate_parastrophe_criterion(info, fx, auts, jobs)
                                                : validate_pair_criterion(info, fx, auts, jobs));
      report.entries.back().wall_us = micros_since(start);
    }
  }
  return report;
}

bool sn_corollary_applies(FormClass cls, ParastropheLabel sigma) noexcept {
  using S = ParastropheLabel;
  switch (cls) {
    case FormClass::Linear: return sigma == S::s12;
    case FormClass::Alinear: return sigma == S::s12 || sigma == S::s13 || sigma == S::s23;
    case FormClass::LeftLinearRightAlinear: return sigma == S::s132;
    case FormClass::LeftAlinearRightLinear: return sigma == S::s13 || sigma == S::s123;
    default: return false;
  }
}

CampaignReport parastrophe_campaign(const GroupPtr& g, FormClass cls, ParastropheLabel sigma,
                                    const CampaignOptions& options) {
  const auto id = parastrophe_criterion_for(cls, sigma);
  if (!id) {
    throw OrthogonalityError(OrthogonalityError::Code::UnsupportedClass,
                             std::string(to_string(cls)) + " has no parastrophe criterion for sigma " +
                                 std::string(to_string(sigma)));
  }
  if (cls == FormClass::TQuasigroup && !g->is_abelian()) {
    throw FormError(FormError::Code::NonAbelianCarrier, "T-quasigroups need an abelian group");
  }
  const auto auts = options.inner_only ? enumerate_inner_automorphisms(*g) : enumerate_automorphisms(*g);
  const FormSpace space(g, {cls, false}, true, auts);

  CampaignReport report;
  report.group = g->label();
  report.cls = cls;
  report.sigma = sigma;
  report.criterion = *id;
  report.total_forms = space.size();
  report.seed = options.seed;

  std::vector<std::size_t> indices;
  if (options.sample && *options.sample < space.size()) {
    report.sampled = true;
    indices = sample_indices(space.size(), *options.sample, options.seed);
  } else {
    indices.resize(space.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  }

  report.records.resize(indices.size());
  parallel_for(indices.size(), options.jobs, [&](std::size_t k, unsigned) {
    const auto start = Clock::now();
    CampaignRecord& rec = report.records[k];
    rec.index = indices[k];
    rec.form = space.at(indices[k]);
    const Quasigroup q = materialize(rec.form);
    rec.bruteforce = orthogonal_bruteforce(q, parastrophe_table(q, sigma));
    rec.criterion = parastrophe_orthogonality(*id, rec.form, options.mode);
    rec.wall_us = micros_since(start);
  });

  for (const auto& rec : report.records) {
    report.orthogonal += rec.bruteforce.orthogonal;
    report.discrepancies += rec.bruteforce.orthogonal != rec.criterion.orthogonal;
  }
  return report;
}

CampaignReport sn_campaign(int n, FormClass cls, ParastropheLabel sigma, CampaignOptions options) {
  if (n < 3 || n > 5) {
    throw OrthogonalityError(OrthogonalityError::Code::Infeasible,
                             "symmetric campaigns cover S_3, S_4 and S_5 only");
  }
  if (n == 5) {
    if (!options.sample) {
      throw OrthogonalityError(OrthogonalityError::Code::Infeasible,
                               "S_5 has 1728000 forms per class; pass a sample size");
    }
    options.inner_only = true;
  }
  auto g = std::make_shared<const FiniteGroup>(symmetric_group(static_cast<std::size_t>(n)));
  CampaignReport report = parastrophe_campaign(g, cls, sigma, options);
  report.corollary_applies = sn_corollary_applies(cls, sigma);
  report.corollary_holds = !report.corollary_applies || report.orthogonal == 0;
  return report;
}

}  // namespace quasiortho
