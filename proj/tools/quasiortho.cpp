#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quasiortho/report.hpp"

namespace qo = quasiortho;
namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kFalse = 1, kUsage = 2, kDiscrepancy = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupArgs {
  std::string spec;
  std::size_t cyclic = 0;
  std::size_t symmetric = 0;
  std::size_t dihedral = 0;
  bool quaternion = false;
  std::string table;
};

void add_group_options(CLI::App* cmd, GroupArgs& g) {
  auto* grp = cmd->add_option_group("group", "carrier group");
  grp->add_option("--group", g.spec, "label such as Z5, S3, D4, Q8 or Z2xZ4");
  grp->add_option("--cyclic", g.cyclic, "Z_n");
  grp->add_option("--symmetric", g.symmetric, "S_n, n <= 5");
  grp->add_option("--dihedral", g.dihedral, "D_n of order 2n");
  grp->add_flag("--quaternion", g.quaternion, "Q8");
  grp->add_option("--table", g.table, "Cayley-table file");
  grp->require_option(0, 1);
}

bool has_group(const GroupArgs& g) {
  return !g.spec.empty() || g.cyclic || g.symmetric || g.dihedral || g.quaternion || !g.table.empty();
}

fs::path resolve_data_path(const std::string& name) {
  fs::path p(name);
  if (fs::exists(p) || p.is_absolute()) return p;
  fs::path alt = qo::fixture_directory() / p;
  return fs::exists(alt) ? alt : p;
}

qo::TableRows load_rows(const std::string& name) {
  const fs::path p = resolve_data_path(name);
  std::ifstream in(p);
  if (!in) throw UsageError("cannot open " + p.string());
  return qo::read_table(in);
}

qo::GroupPtr build_group(const GroupArgs& g) {
  qo::FiniteGroup out = [&] {
    if (!g.spec.empty()) return qo::group_from_spec(g.spec);
    if (g.cyclic) return qo::cyclic_group(g.cyclic);
    if (g.symmetric) return qo::symmetric_group(g.symmetric);
    if (g.dihedral) return qo::dihedral_group(g.dihedral);
    if (g.quaternion) return qo::quaternion_group();
    if (!g.table.empty()) return qo::FiniteGroup::from_cayley_table(load_rows(g.table), fs::path(g.table).stem());
    throw UsageError("a group is required (--group, --cyclic, --symmetric, --dihedral, --quaternion or --table)");
  }();
  return std::make_shared<const qo::FiniteGroup>(std::move(out));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

long parse_int(const std::string& text, const std::string& what) {
  long v = 0;
  const std::string t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) throw UsageError(what + ": '" + text + "' is not an integer");
  return v;
}

qo::Map parse_map(const std::string& text, const qo::FiniteGroup& g) {
  qo::Map m;
  for (const auto& tok : split(text, ',')) {
    const long v = parse_int(tok, "map entry");
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw UsageError("map entry " + tok + " is out of range");
    m.push_back(static_cast<qo::Element>(v));
  }
  if (m.size() != g.order()) {
    throw UsageError("map has " + std::to_string(m.size()) + " entries, expected " + std::to_string(g.order()));
  }
  return m;
}

// class=linear;left=0,2,4,1,3;right=0,3,1,4,2;c=1;pos=right;transposed=0
qo::QuasigroupForm parse_form(const std::string& text, const qo::GroupPtr& g) {
  std::optional<qo::FormClass> cls;
  std::optional<qo::Map> left, right;
  qo::Element c = g->identity();
  auto pos = qo::ConstantPosition::Right;
  bool transposed = false;
  for (const auto& part : split(text, ';')) {
    if (trim(part).empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("form field '" + part + "' lacks '='");
    const std::string key = trim(part.substr(0, eq));
    const std::string val = trim(part.substr(eq + 1));
    if (key == "class") {
      cls = qo::parse_form_class(val);
      if (!cls) throw UsageError("unknown form class '" + val + "'");
    } else if (key == "left" || key == "L") {
      left = parse_map(val, *g);
    } else if (key == "right" || key == "R") {
      right = parse_map(val, *g);
    } else if (key == "c" || key == "constant") {
      const long v = parse_int(val, "constant");
      if (v < 0 || static_cast<std::size_t>(v) >= g->order()) throw UsageError("constant is out of range");
      c = static_cast<qo::Element>(v);
    } else if (key == "pos" || key == "position") {
      if (val == "middle") {
        pos = qo::ConstantPosition::Middle;
      } else if (val == "right") {
        pos = qo::ConstantPosition::Right;
      } else {
        throw UsageError("position must be 'middle' or 'right'");
      }
    } else if (key == "transposed") {
      transposed = val == "1" || val == "true";
    } else {
      throw UsageError("unknown form field '" + key + "'");
    }
  }
  if (!cls || !left || !right) throw UsageError("a form needs class, left and right");
  return qo::make_form(g, *cls, qo::classify(*g, *left), qo::classify(*g, *right), c, pos, transposed);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

void print_witness(const qo::OrthogonalityVerdict& v) {
  if (v.cells) {
    const auto& c = *v.cells;
    std::cout << "  repeated pair at cells (" << c.x1 << "," << c.y1 << ") and (" << c.x2 << "," << c.y2 << ")\n";
  }
  if (v.map) {
    const auto& m = *v.map;
    std::cout << "  criterion map";
    if (m.t) std::cout << " at t=" << *m.t;
    if (m.not_homomorphism) {
      std::cout << " is not additive on " << m.x1 << ", " << m.x2 << "\n";
    } else {
      std::cout << " sends " << m.x1 << " and " << m.x2 << " to the same image\n";
    }
  }
}

// group -------------------------------------------------------------------

int cmd_group(const GroupArgs& ga, const std::string& output) {
  const auto g = build_group(ga);
  std::ofstream file;
  auto& out = open_output(output, file);
  qo::write_table(out, g->table(), g->order(), {g->label()});
  return kOk;
}

// aut ---------------------------------------------------------------------

int cmd_aut(const GroupArgs& ga, bool anti, bool inner_only) {
  const auto g = build_group(ga);
  std::vector<qo::Morphism> maps;
  std::string what;
  if (inner_only) {
    maps = qo::enumerate_inner_automorphisms(*g);
    what = "inner automorphisms";
  } else if (anti) {
    maps = qo::enumerate_antiautomorphisms(*g);
    what = "anti-automorphisms";
  } else {
    maps = qo::enumerate_automorphisms(*g);
    what = "automorphisms";
  }
  std::cout << "# " << maps.size() << " " << what << " of " << g->label() << "\n";
  for (const auto& m : maps) std::cout << qo::format_map(m.values()) << "\n";
  return kOk;
}

// ortho -------------------------------------------------------------------

struct OrthoArgs {
  std::string a_table, b_table;
  std::string a_form, b_form;
  std::string criterion;
  std::string parastrophe;
  std::string report;
  bool exhaustive = false;
};

int cmd_ortho(const GroupArgs& ga, const OrthoArgs& oa) {
  const auto mode = oa.exhaustive ? qo::QuantifierMode::Exhaustive : qo::QuantifierMode::ShortCircuit;
  std::optional<qo::Quasigroup> qa, qb;
  std::optional<qo::QuasigroupForm> fa, fb;
  std::optional<qo::CriterionId> id;
  std::optional<qo::OrthogonalityVerdict> by_criterion;
  std::string group_label;

  if (!oa.criterion.empty()) {
    id = qo::parse_criterion(oa.criterion);
    if (!id) throw UsageError("unknown criterion '" + oa.criterion + "'");
  }

  if (!oa.a_table.empty() || !oa.b_table.empty()) {
    if (oa.a_table.empty() || oa.b_table.empty() || !oa.a_form.empty() || !oa.b_form.empty()) {
      throw UsageError("give two tables (--a, --b) or forms (--form-a, --form-b), not a mix");
    }
    if (id) throw UsageError("--criterion needs forms, not tables");
    qa = qo::Quasigroup::from_rows(load_rows(oa.a_table));
    qb = qo::Quasigroup::from_rows(load_rows(oa.b_table));
    if (qa->order != qb->order) throw UsageError("tables have different orders");
  } else {
    if (oa.a_form.empty()) throw UsageError("give two tables (--a, --b) or forms (--form-a, --form-b)");
    const auto g = build_group(ga);
    group_label = g->label();
    fa = parse_form(oa.a_form, g);
    qa = qo::materialize(*fa);
    if (!oa.parastrophe.empty()) {
      if (!oa.b_form.empty()) throw UsageError("--parastrophe compares --form-a with its own parastrophe");
      const auto sigma = qo::parse_parastrophe(oa.parastrophe);
      if (!sigma || *sigma == qo::ParastropheLabel::e) throw UsageError("bad parastrophe '" + oa.parastrophe + "'");
      if (!id) {
        id = qo::parastrophe_criterion_for(fa->cls, *sigma);
        if (!id) throw UsageError("no parastrophe criterion for this class");
      }
      if (qo::criterion_info(*id).sigma != *sigma || !qo::criterion_info(*id).parastrophe) {
        throw UsageError("criterion does not match the parastrophe");
      }
      qb = qo::parastrophe_table(*qa, *sigma);
      by_criterion = qo::parastrophe_orthogonality(*id, *fa, mode);
    } else {
      if (oa.b_form.empty()) throw UsageError("--form-b is required");
      fb = parse_form(oa.b_form, g);
      qb = qo::materialize(*fb);
      if (id) {
        if (qo::criterion_info(*id).parastrophe) throw UsageError("parastrophe criteria need --parastrophe");
        by_criterion = qo::orthogonal_by_criterion(*id, *fa, *fb, mode);
      }
    }
  }

  const auto brute = qo::orthogonal_bruteforce(*qa, *qb);
  if (!oa.report.empty()) {
    std::ofstream file;
    auto& out = open_output(oa.report, file);
    out << qo::report::pair_record(group_label, id, fa ? &*fa : nullptr, fb ? &*fb : nullptr, by_criterion, brute)
               .dump()
        << '\n';
  }
  if (by_criterion && by_criterion->orthogonal != brute.orthogonal) {
    std::cout << "discrepancy: criterion " << qo::to_string(*id) << " says "
              << (by_criterion->orthogonal ? "orthogonal" : "not orthogonal") << ", brute force says "
              << (brute.orthogonal ? "orthogonal" : "not orthogonal") << "\n";
    return kDiscrepancy;
  }
  std::cout << (brute.orthogonal ? "orthogonal" : "not orthogonal");
  if (id) std::cout << " (brute force and " << qo::to_string(*id) << ")";
  std::cout << "\n";
  if (!brute.orthogonal) {
    print_witness(brute);
    if (by_criterion) print_witness(*by_criterion);
  }
  return brute.orthogonal ? kOk : kFalse;
}

// campaign ----------------------------------------------------------------

struct CampaignArgs {
  bool cross = false;
  std::string fixtures;
  std::string cls;
  std::string parastrophe;
  std::vector<std::string> criteria;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  std::string output;
  bool summary = false;
  bool timing = false;
  bool exhaustive = false;
};

int cmd_cross_validate(const CampaignArgs& ca) {
  fs::path dir = qo::fixture_directory();
  if (!ca.fixtures.empty() && ca.fixtures != "default") dir = ca.fixtures;
  const auto fixtures = qo::default_fixtures(dir);
  std::vector<qo::CriterionId> ids;
  if (ca.criteria.empty()) {
    for (const auto& info : qo::criterion_catalog()) ids.push_back(info.id);
  } else {
    for (const auto& name : ca.criteria) {
      auto id = qo::parse_criterion(name);
      if (!id) throw UsageError("unknown criterion '" + name + "'");
      ids.push_back(*id);
    }
  }
  const auto r = qo::cross_validate(fixtures, ids, ca.jobs);
  const qo::report::ReportOptions ro{ca.timing};
  if (!ca.output.empty() || !ca.summary) {
    std::ofstream file;
    auto& out = open_output(ca.output, file);
    qo::report::write_cross_validation(out, r, ro);
  }
  if (ca.summary) {
    for (const auto& e : r.entries) {
      std::cout << e.group << " " << qo::to_string(e.id) << ": " << e.instances << " instances, " << e.orthogonal
                << " orthogonal, " << (e.instances - e.agreements) << " discrepancies\n";
    }
    std::cout << qo::report::cross_validation_summary(r) << "\n";
  }
  return r.total_discrepancies() == 0 ? kOk : kDiscrepancy;
}

int cmd_campaign(const GroupArgs& ga, const CampaignArgs& ca) {
  if (ca.cross) {
    if (has_group(ga)) throw UsageError("--cross-validate runs over the fixture set; drop the group option");
    return cmd_cross_validate(ca);
  }
  if (ca.cls.empty() || ca.parastrophe.empty()) throw UsageError("campaign needs --class and --parastrophe");
  const auto cls = qo::parse_form_class(ca.cls);
  if (!cls) throw UsageError("unknown form class '" + ca.cls + "'");
  const auto sigma = qo::parse_parastrophe(ca.parastrophe);
  if (!sigma || *sigma == qo::ParastropheLabel::e) throw UsageError("bad parastrophe '" + ca.parastrophe + "'");

  qo::CampaignOptions opt;
  opt.sample = ca.sample;
  opt.seed = ca.seed;
  opt.jobs = ca.jobs;
  opt.mode = ca.exhaustive ? qo::QuantifierMode::Exhaustive : qo::QuantifierMode::ShortCircuit;
  qo::CampaignReport r;
  if (ga.symmetric) {
    r = qo::sn_campaign(static_cast<int>(ga.symmetric), *cls, *sigma, opt);
  } else {
    r = qo::parastrophe_campaign(build_group(ga), *cls, *sigma, opt);
  }

  const qo::report::ReportOptions ro{ca.timing};
  if (!ca.output.empty() || !ca.summary) {
    std::ofstream file;
    auto& out = open_output(ca.output, file);
    qo::report::write_campaign(out, r, ro);
  }
  if (ca.summary) {
    std::cout << r.group << " " << qo::to_string(r.cls) << " vs (" << qo::to_string(r.sigma)
              << ")-parastrophe, criterion " << qo::to_string(r.criterion) << "\n";
    for (const auto& rec : r.records) {
      if (rec.bruteforce.orthogonal || rec.criterion.orthogonal) {
        std::cout << "  #" << rec.index << " " << qo::describe(rec.form)
                  << (rec.bruteforce.orthogonal == rec.criterion.orthogonal ? "" : "  [discrepancy]") << "\n";
      }
    }
    std::cout << qo::report::campaign_summary(r) << "\n";
    if (r.corollary_applies) {
      std::cout << "corollary: " << (r.corollary_holds ? "holds" : "VIOLATED") << "\n";
    }
  }
  if (r.discrepancies != 0) return kDiscrepancy;
  if (r.corollary_applies && !r.corollary_holds) return kFalse;
  return kOk;
}

// mols --------------------------------------------------------------------

void extend_clique(const std::vector<std::vector<bool>>& adj, std::vector<std::size_t>& cur,
                   std::vector<std::size_t>& best, std::size_t from, std::size_t limit) {
  if (cur.size() > best.size()) best = cur;
  if (best.size() >= limit) return;
  for (std::size_t v = from; v < adj.size(); ++v) {
    if (cur.size() + (adj.size() - v) <= best.size()) return;
    bool ok = true;
    for (auto u : cur) ok = ok && adj[u][v];
    if (!ok) continue;
    cur.push_back(v);
    extend_clique(adj, cur, best, v + 1, limit);
    cur.pop_back();
    if (best.size() >= limit) return;
  }
}

int cmd_mols(const GroupArgs& ga, std::size_t target) {
  const auto g = build_group(ga);
  const auto auts = qo::enumerate_automorphisms(*g);
  const auto forms = qo::enumerate_forms(g, {qo::FormClass::Linear, false}, false, auts);
  std::vector<qo::Quasigroup> tables;
  for (const auto& f : forms) tables.push_back(qo::materialize(f));
  std::vector<std::vector<bool>> adj(forms.size(), std::vector<bool>(forms.size(), false));
  qo::PairChecker pc;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      adj[i][j] = adj[j][i] = pc.distinct(tables[i].table, tables[j].table, g->order());
    }
  }
  const std::size_t limit = target ? target : g->order() - 1;
  std::vector<std::size_t> cur, best;
  extend_clique(adj, cur, best, 0, limit);
  std::cout << best.size() << " mutually orthogonal linear squares over " << g->label() << "\n";
  for (auto i : best) std::cout << "  " << qo::describe(forms[i]) << "\n";
  return target && best.size() < target ? kFalse : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonality of linear and alinear quasigroups over finite groups"};
  app.require_subcommand(1);
  GroupArgs ga;

  std::string group_out;
  auto* group = app.add_subcommand("group", "build or validate a group and write its Cayley table");
  add_group_options(group, ga);
  group->add_option("-o,--output", group_out, "output file (default stdout)");

  bool anti = false, inner_only = false;
  auto* aut = app.add_subcommand("aut", "list automorphisms");
  add_group_options(aut, ga);
  auto* anti_flag = aut->add_flag("--anti", anti, "anti-automorphisms instead");
  aut->add_flag("--inner", inner_only, "inner automorphisms instead")->excludes(anti_flag);

  OrthoArgs oa;
  auto* ortho = app.add_subcommand("ortho", "decide orthogonality of two squares");
  add_group_options(ortho, ga);
  ortho->add_option("--a", oa.a_table, "first Cayley-table file");
  ortho->add_option("--b", oa.b_table, "second Cayley-table file");
  ortho->add_option("--form-a", oa.a_form, "first form, e.g. 'class=linear;left=0,2,4,1,3;right=0,1,2,3,4;c=0'");
  ortho->add_option("--form-b", oa.b_form, "second form");
  ortho->add_option("--criterion", oa.criterion, "criterion id, e.g. LL_LL or PAR_LIN13");
  ortho->add_option("--parastrophe", oa.parastrophe, "compare --form-a with its parastrophe (12, 13, 23, 123, 132)");
  ortho->add_option("--report", oa.report, "write a JSON report line to this file");
  ortho->add_flag("--exhaustive", oa.exhaustive, "evaluate every t of quantified criteria");

  CampaignArgs ca;
  auto* campaign = app.add_subcommand("campaign", "parastrophe campaigns and cross-validation");
  add_group_options(campaign, ga);
  campaign->add_flag("--cross-validate", ca.cross, "every criterion against brute force over the fixture set");
  campaign->add_option("--fixtures", ca.fixtures, "'default' or a fixture directory");
  campaign->add_option("--criterion", ca.criteria, "restrict cross-validation to these criteria");
  campaign->add_option("--class", ca.cls, "form class, e.g. linear, alinear, lin-alin, alin-lin, t");
  campaign->add_option("--parastrophe", ca.parastrophe, "12, 13, 23, 123 or 132");
  campaign->add_option("--sample", ca.sample, "evaluate this many forms drawn at random");
  campaign->add_option("--seed", ca.seed, "sampling seed");
  campaign->add_option("-j,--jobs", ca.jobs, "worker threads (0 = all cores)");
  campaign->add_option("-o,--output", ca.output, "report file (default stdout)");
  campaign->add_flag("--summary", ca.summary, "human readable summary on stdout");
  campaign->add_flag("--timing", ca.timing, "include wall_us in reports");
  campaign->add_flag("--exhaustive", ca.exhaustive, "evaluate every t of quantified criteria");

  std::size_t mols_target = 0;
  auto* mols = app.add_subcommand("mols", "search mutually orthogonal linear squares");
  add_group_options(mols, ga);
  mols->add_option("--count", mols_target, "stop once this many are found (default n - 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*group) return cmd_group(ga, group_out);
    if (*aut) return cmd_aut(ga, anti, inner_only);
    if (*ortho) return cmd_ortho(ga, oa);
    if (*campaign) return cmd_campaign(ga, ca);
    if (*mols) return cmd_mols(ga, mols_target);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
