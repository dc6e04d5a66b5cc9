#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace quasiortho;
using C = CriterionId;
using S = ParastropheLabel;
using E = MorphismExpr;

namespace {

GroupPtr grp(const char* spec) { return std::make_shared<const FiniteGroup>(group_from_spec(spec)); }

Morphism mul(const FiniteGroup& g, std::size_t k) {
  Map m(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) m[x] = static_cast<Element>((k * x) % g.order());
  return classify(g, m);
}

QuasigroupForm lin(const GroupPtr& g, std::size_t a, std::size_t b, Element c = 0,
                   FormClass cls = FormClass::Linear) {
  return make_form(g, cls, mul(*g, a), mul(*g, b), c);
}

bool expr_verdict(C id, const QuasigroupForm& a, const QuasigroupForm& b) {
  const auto& info = criterion_info(id);
  const auto& g = a.g();
  if (info.quantifier == Quantifier::ForAll) {
    for (std::size_t t = 0; t < g.order(); ++t)
      if (!is_permutation_expr(g, criterion_expr(id, a, b, static_cast<Element>(t)))) return false;
    return true;
  }
  const auto e = criterion_expr(id, a, b);
  if (id == C::T_T) return is_permutation_expr(g, e) && oracle::is_hom(g, eval(g, e));
  return is_permutation_expr(g, e);
}

std::vector<QuasigroupForm> operand_forms(const GroupPtr& g, OperandSignature sig, const std::vector<Morphism>& auts) {
  return enumerate_forms(g, sig, !is_one_sided(sig.cls), auts);
}

std::vector<C> pair_ids() {
  std::vector<C> out;
  for (const auto& info : criterion_catalog())
    if (!info.parastrophe) out.push_back(info.id);
  return out;
}

}  // namespace

TEST(BruteForce, Examples) {
  const auto z3 = grp("Z3");
  EXPECT_TRUE(orthogonal_bruteforce(materialize(lin(z3, 1, 1)), materialize(lin(z3, 1, 2))).orthogonal);
  const auto q = materialize(lin(z3, 1, 1));
  const auto v = orthogonal_bruteforce(q, q);
  EXPECT_FALSE(v.orthogonal);
  ASSERT_TRUE(v.cells);
  EXPECT_EQ(v.method, Method::BruteForce);
  const auto& w = *v.cells;
  EXPECT_NE(std::make_pair(w.x1, w.y1), std::make_pair(w.x2, w.y2));
  EXPECT_EQ(q.at(w.x1, w.y1), q.at(w.x2, w.y2));
  EXPECT_EQ(std::make_pair(w.x1, w.y1), std::make_pair(Element{0}, Element{1}));
  EXPECT_EQ(std::make_pair(w.x2, w.y2), std::make_pair(Element{1}, Element{0}));
  const auto z2 = grp("Z2");
  EXPECT_FALSE(orthogonal_bruteforce(materialize(lin(z2, 1, 1)), materialize(lin(z2, 1, 1, 1))).orthogonal);
}

TEST(BruteForce, OrderMismatch) {
  EXPECT_THROW(orthogonal_bruteforce(materialize(lin(grp("Z3"), 1, 1)), materialize(lin(grp("Z4"), 1, 1))),
               OrthogonalityError);
}

TEST(BruteForce, SymmetricAndMatchesOracleWithValidWitness) {
  const auto g = grp("D4");
  const auto auts = enumerate_automorphisms(*g);
  const auto forms = enumerate_forms(g, {FormClass::LeftLinear, false}, false, auts);
  std::mt19937 rng(5);
  for (int k = 0; k < 400; ++k) {
    const auto a = materialize(forms[rng() % forms.size()]);
    const auto b = materialize(forms[rng() % forms.size()]);
    const auto ab = orthogonal_bruteforce(a, b);
    EXPECT_EQ(ab.orthogonal, orthogonal_bruteforce(b, a).orthogonal);
    EXPECT_EQ(ab.orthogonal, oracle::orthogonal(oracle::square(a), oracle::square(b)));
    EXPECT_EQ(ab.cells.has_value(), !ab.orthogonal);
    if (ab.cells) {
      const auto& w = *ab.cells;
      EXPECT_EQ(a.at(w.x1, w.y1), a.at(w.x2, w.y2));
      EXPECT_EQ(b.at(w.x1, w.y1), b.at(w.x2, w.y2));
      EXPECT_LT(std::size_t{w.x1} * 8 + w.y1, std::size_t{w.x2} * 8 + w.y2);
    }
  }
}

TEST(CriterionExpr, LLLLCollapsesToZero) {
  const auto g = grp("Z5");
  const auto a = lin(g, 2, 1, 0, FormClass::LeftLinear), b = lin(g, 1, 3, 0, FormClass::LeftLinear);
  const auto e = criterion_expr(C::LL_LL, a, b);
  EXPECT_EQ(eval(*g, e), (Map{0, 0, 0, 0, 0}));
  EXPECT_FALSE(orthogonal_by_criterion(C::LL_LL, a, b).orthogonal);
}

TEST(CriterionExpr, LLLLExamples) {
  const auto z3 = grp("Z3");
  const auto v = orthogonal_by_criterion(C::LL_LL, lin(z3, 1, 1, 0, FormClass::LeftLinear),
                                         lin(z3, 1, 2, 0, FormClass::LeftLinear));
  EXPECT_TRUE(v.orthogonal);
  EXPECT_EQ(v.method, Method::TheoremCriterion);
  EXPECT_EQ(v.criterion, C::LL_LL);
  const auto z4 = grp("Z4");
  const auto w = orthogonal_by_criterion(C::LL_LL, lin(z4, 1, 1, 0, FormClass::LeftLinear),
                                         lin(z4, 1, 3, 0, FormClass::LeftLinear));
  EXPECT_FALSE(w.orthogonal);
  ASSERT_TRUE(w.map);
  const Map m = eval(*z4, criterion_expr(C::LL_LL, lin(z4, 1, 1, 0, FormClass::LeftLinear),
                                         lin(z4, 1, 3, 0, FormClass::LeftLinear)));
  EXPECT_EQ(m[w.map->x1], m[w.map->x2]);
  EXPECT_NE(w.map->x1, w.map->x2);
}

TEST(CriterionExpr, TTOverZ3) {
  const auto g = grp("Z3");
  const auto a = lin(g, 1, 1, 0, FormClass::TQuasigroup), b = lin(g, 1, 2, 0, FormClass::TQuasigroup);
  EXPECT_EQ(eval(*g, criterion_expr(C::T_T, a, b)), (Map{0, 2, 1}));
  EXPECT_TRUE(orthogonal_by_criterion(C::T_T, a, b).orthogonal);
}

TEST(CriterionExpr, QuantifierArity) {
  const auto g = grp("Z5");
  const auto a = lin(g, 1, 2), b = make_form(g, FormClass::Linear, mul(*g, 1), mul(*g, 3), 0,
                                              ConstantPosition::Right, true);
  EXPECT_THROW(criterion_expr(C::LIN_LIN12, a, b), OrthogonalityError);
  EXPECT_THROW(criterion_expr(C::LIN_LIN, a, lin(g, 1, 3), Element{1}), OrthogonalityError);
}

TEST(CriterionExpr, ClassMismatch) {
  const auto g = grp("S3");
  const auto al = make_form(g, FormClass::Alinear, inversion(*g), inversion(*g));
  EXPECT_THROW(orthogonal_by_criterion(C::LL_LL, al, al), OrthogonalityError);
  EXPECT_THROW(orthogonal_by_criterion(C::T_T, al, al), OrthogonalityError);
}

TEST(CriterionExpr, InnerCollapsesOnAbelianCarrier) {
  const auto g = grp("Z2xZ4");
  const auto auts = enumerate_automorphisms(*g);
  const auto& info = criterion_info(C::LIN_LIN12);
  const auto as = operand_forms(g, info.a, {auts[0], auts[3]});
  const auto bs = operand_forms(g, info.b, {auts[1], auts[6]});
  for (std::size_t i = 0; i < as.size(); i += 5) {
    for (std::size_t j = 0; j < bs.size(); j += 3) {
      const Map base = eval(*g, criterion_expr(C::LIN_LIN12, as[i], bs[j], Element{0}));
      for (Element t = 1; t < 8; ++t) EXPECT_EQ(eval(*g, criterion_expr(C::LIN_LIN12, as[i], bs[j], t)), base);
    }
  }
}

TEST(Criteria, S3TransposedLinearPairsNeverOrthogonal) {
  const auto g = grp("S3");
  const auto auts = enumerate_automorphisms(*g);
  for (auto id : {C::LIN_LIN12, C::ALIN_ALIN12}) {
    const auto& info = criterion_info(id);
    const auto as = operand_forms(g, info.a, auts);
    const auto bs = operand_forms(g, info.b, auts);
    for (std::size_t i = 0; i < as.size(); i += 7) {
      for (const auto& b : bs) {
        const auto v = orthogonal_by_criterion(id, as[i], b);
        ASSERT_FALSE(v.orthogonal);
        ASSERT_TRUE(v.map && v.map->t);
        ASSERT_FALSE(orthogonal_bruteforce(materialize(as[i]), materialize(b)).orthogonal);
      }
    }
  }
}

// Each pair criterion against the set-based oracle and against its own
// expression tree.
class PairCriteria : public ::testing::TestWithParam<const char*> {};

TEST_P(PairCriteria, AgreeWithOracleAndExpression) {
  const auto g = grp(GetParam());
  const auto auts = enumerate_automorphisms(*g);
  std::vector<Element> scratch;
  std::vector<std::uint32_t> stamp;
  for (auto id : pair_ids()) {
    const auto& info = criterion_info(id);
    if (info.a.cls == FormClass::TQuasigroup && !g->is_abelian()) continue;
    const auto as = operand_forms(g, info.a, auts);
    const auto bs = operand_forms(g, info.b, auts);
    std::vector<oracle::Square> sb;
    std::vector<PreparedOperand> pb;
    for (const auto& b : bs) {
      sb.push_back(oracle::square(materialize(b)));
      pb.push_back(prepare_operand(id, Side::B, b));
    }
    const std::size_t step_a = std::max<std::size_t>(1, as.size() / 40);
    const std::size_t step_b = std::max<std::size_t>(1, bs.size() / 40);
    std::size_t positives = 0;
    for (std::size_t i = 0; i < as.size(); i += step_a) {
      const auto sa = oracle::square(materialize(as[i]));
      const auto pa = prepare_operand(id, Side::A, as[i]);
      for (std::size_t j = 0; j < bs.size(); j += step_b) {
        const bool truth = oracle::orthogonal(sa, sb[j]);
        positives += truth;
        ASSERT_EQ(evaluate_pair(id, pa, pb[j], QuantifierMode::ShortCircuit, scratch, stamp).orthogonal, truth)
            << to_string(id) << " " << describe(as[i]) << " | " << describe(bs[j]);
        ASSERT_EQ(expr_verdict(id, as[i], bs[j]), truth) << to_string(id);
        ASSERT_EQ(orthogonal_by_criterion(id, as[i], bs[j]).orthogonal, truth);
      }
    }
    RecordProperty(std::string(to_string(id)), static_cast<int>(positives));
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, PairCriteria, ::testing::Values("Z4", "Z5", "Z2xZ2", "S3", "D4", "Q8"));

TEST(PairCriteria, AlternateStatementsAgree) {
  for (auto spec : {"Z5", "Z6", "S3", "D4", "Q8"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    for (auto [p, q] : {std::pair{C::LL_RA, C::LL_RA_alt}, std::pair{C::LL_RL12, C::LL_RL12_alt}}) {
      const auto& ip = criterion_info(p);
      const auto& iq = criterion_info(q);
      ASSERT_EQ(ip.a.cls, iq.a.cls);
      ASSERT_EQ(ip.b.cls, iq.b.cls);
      const auto as = operand_forms(g, ip.a, auts);
      const auto bs = operand_forms(g, ip.b, auts);
      // Transposing both squares keeps the verdict, which moves the flag to
      // the other operand.
      for (std::size_t i = 0; i < as.size(); i += 3) {
        auto at = as[i];
        at.transposed = !at.transposed;
        for (std::size_t j = 0; j < bs.size(); j += 5) {
          auto bt = bs[j];
          bt.transposed = !bt.transposed;
          const bool direct = orthogonal_by_criterion(p, as[i], bs[j]).orthogonal;
          ASSERT_EQ(direct, orthogonal_by_criterion(q, at, bt).orthogonal) << spec << " " << to_string(p);
          ASSERT_EQ(direct, oracle::orthogonal(oracle::square(materialize(at)), oracle::square(materialize(bt))));
        }
      }
    }
  }
}

// Plain permutation components beyond the affine ones.
TEST(PairCriteria, ArbitraryPermutationComponents) {
  std::mt19937 rng(2024);
  for (auto spec : {"D4", "Q8", "Z2xZ4"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    const std::size_t n = g->order();
    auto random_perm = [&] {
      Map p(n);
      std::iota(p.begin(), p.end(), Element{0});
      std::shuffle(p.begin(), p.end(), rng);
      return classify(*g, p);
    };
    for (auto id : {C::LL_LL, C::RL_RL, C::RA_RA, C::LA_LA, C::LL_RA, C::LL_LA, C::LA_RL, C::LL_RL12,
                    C::LL_RL12_alt, C::LIN_LL12}) {
      const auto& info = criterion_info(id);
      auto make = [&](OperandSignature sig) {
        const auto shape = shape_of(sig.cls);
        auto pick = [&](ComponentKind k) {
          const auto& a = auts[rng() % auts.size()];
          if (k == ComponentKind::Permutation) return random_perm();
          if (k == ComponentKind::AntiAutomorphism) return compose(*g, inversion(*g), a);
          return a;
        };
        const Element c = is_one_sided(sig.cls) ? g->identity() : static_cast<Element>(rng() % n);
        return make_form(g, sig.cls, pick(shape.left), pick(shape.right), c, ConstantPosition::Right, sig.transposed);
      };
      for (int k = 0; k < 300; ++k) {
        const auto a = make(info.a), b = make(info.b);
        ASSERT_EQ(orthogonal_by_criterion(id, a, b).orthogonal,
                  orthogonal_bruteforce(materialize(a), materialize(b)).orthogonal)
            << spec << " " << to_string(id);
      }
    }
  }
}

TEST(PairCriteria, ConstantEliminationInvariance) {
  const auto g = grp("S3");
  const auto auts = enumerate_automorphisms(*g);
  const auto forms = enumerate_forms(g, {FormClass::LeftLinear, false}, true, {auts[1], auts[4]});
  const auto partner = absorb_constant(forms[17]);
  for (const auto& f : forms) {
    const auto stripped = absorb_constant(f);
    EXPECT_EQ(orthogonal_bruteforce(materialize(f), materialize(partner)).orthogonal,
              orthogonal_bruteforce(materialize(stripped), materialize(partner)).orthogonal);
    EXPECT_EQ(orthogonal_by_criterion(C::LL_LL, f, partner).orthogonal,
              orthogonal_by_criterion(C::LL_LL, stripped, partner).orthogonal);
  }
}

TEST(AbelianReductions, QuantifiedVerdictIndependentOfT) {
  for (auto spec : {"Z4", "Z6", "Z2xZ2"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    for (const auto& info : criterion_catalog()) {
      if (info.parastrophe || info.quantifier != Quantifier::ForAll) continue;
      const auto as = operand_forms(g, info.a, auts);
      const auto bs = operand_forms(g, info.b, auts);
      for (std::size_t i = 0; i < as.size(); i += 2) {
        for (std::size_t j = 0; j < bs.size(); j += 3) {
          const auto v = orthogonal_by_criterion(info.id, as[i], bs[j], QuantifierMode::Exhaustive);
          ASSERT_EQ(v.per_t.size(), g->order());
          for (bool b : v.per_t) ASSERT_EQ(b, v.per_t.front()) << info.name;
        }
      }
    }
  }
}

TEST(AbelianReductions, TMatchesLinear) {
  for (auto spec : {"Z5", "Z6", "Z2xZ4"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    const auto ts = enumerate_forms(g, {FormClass::TQuasigroup, false}, true, auts);
    for (std::size_t i = 0; i < ts.size(); i += 3)
      for (std::size_t j = 0; j < ts.size(); j += 7)
        ASSERT_EQ(orthogonal_by_criterion(C::T_T, ts[i], ts[j]).orthogonal,
                  orthogonal_by_criterion(C::LIN_LIN, reclass(ts[i], FormClass::Linear),
                                          reclass(ts[j], FormClass::Linear))
                      .orthogonal);
  }
}

// T-quasigroup against a medial one (commuting components): the criterion
// reduces to alpha delta - beta gamma.
TEST(AbelianReductions, MedialCorollary) {
  for (auto spec : {"Z2xZ2", "Z2xZ4", "Z6", "Z7"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    for (const auto& al : auts)
      for (const auto& be : auts)
        for (const auto& ga : auts)
          for (const auto& de : auts) {
            if (oracle::compose(ga.map(), de.map()) != oracle::compose(de.map(), ga.map())) continue;
            const auto a = make_form(g, FormClass::TQuasigroup, al, be, 1);
            const auto b = make_form(g, FormClass::TQuasigroup, ga, de, 0);
            const Map m = oracle::minus(*g, oracle::compose(al.map(), de.map()), oracle::compose(be.map(), ga.map()));
            ASSERT_EQ(orthogonal_by_criterion(C::T_T, a, b).orthogonal, oracle::bijective(m)) << spec;
          }
  }
}

TEST(Parastrophe, Examples) {
  const auto z5 = grp("Z5");
  const auto f = lin(z5, 1, 1);
  const auto v = parastrophe_orthogonality(f, S::s13, true);
  EXPECT_TRUE(v.orthogonal);
  EXPECT_EQ(v.criterion, C::PAR_LIN13);
  const auto z2 = grp("Z2");
  EXPECT_FALSE(parastrophe_orthogonality(lin(z2, 1, 1), S::s23, true).orthogonal);
  const auto t = lin(z5, 2, 3, 0, FormClass::TQuasigroup);
  const auto w = parastrophe_orthogonality(C::PAR_T12, t);
  EXPECT_FALSE(w.orthogonal);
  ASSERT_TRUE(w.map && w.map->t);
  EXPECT_EQ(*w.map->t, 1);  // the second part, phi + psi, fails
  EXPECT_TRUE(
      parastrophe_orthogonality(C::PAR_T12, lin(z5, 1, 2, 0, FormClass::TQuasigroup), QuantifierMode::Exhaustive)
          .orthogonal);
}

TEST(Parastrophe, Errors) {
  const auto z5 = grp("Z5");
  EXPECT_THROW(parastrophe_orthogonality(lin(z5, 1, 1), S::e), OrthogonalityError);
  EXPECT_THROW(parastrophe_orthogonality(lin(z5, 1, 1, 0, FormClass::LeftLinear), S::s13), Error);
  EXPECT_THROW(parastrophe_orthogonality(C::PAR_ALIN13, lin(grp("S3"), 1, 1)), OrthogonalityError);
}

// Every parastrophe criterion against the set-based oracle.
class ParastropheCriteria : public ::testing::TestWithParam<const char*> {};

TEST_P(ParastropheCriteria, AgreeWithOracle) {
  const auto g = grp(GetParam());
  const auto auts = enumerate_automorphisms(*g);
  for (const auto& info : criterion_catalog()) {
    if (!info.parastrophe) continue;
    if (info.a.cls == FormClass::TQuasigroup && !g->is_abelian()) continue;
    const auto forms = enumerate_forms(g, info.a, true, auts);
    const std::size_t step = std::max<std::size_t>(1, forms.size() / 300);
    for (std::size_t i = 0; i < forms.size(); i += step) {
      const auto sq = oracle::square(materialize(forms[i]));
      const bool truth = oracle::orthogonal(sq, oracle::parastrophe(sq, info.sigma));
      ASSERT_EQ(parastrophe_orthogonality(info.id, forms[i]).orthogonal, truth) << info.name;
      if (info.a.cls != FormClass::TQuasigroup)
        ASSERT_EQ(parastrophe_orthogonality(forms[i], info.sigma, true).orthogonal, truth);
      if (info.quantifier == Quantifier::None) {
        ASSERT_EQ(is_permutation_expr(*g, parastrophe_criterion_expr(info.id, forms[i])), truth);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, ParastropheCriteria,
                         ::testing::Values("Z3", "Z5", "Z6", "Z2xZ2", "S3", "D4", "Q8", "Z2xZ4"));

TEST(Parastrophe, TCorollaryFor12) {
  for (auto spec : {"Z5", "Z7", "Z2xZ4", "Z2xZ2"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    for (const auto& f : enumerate_forms(g, {FormClass::TQuasigroup, false}, true, auts)) {
      const Map pi = oracle::invert(f.left.map()), si = oracle::invert(f.right.map());
      const Map m = oracle::minus(*g, oracle::compose(pi, f.right.map()), oracle::compose(si, f.left.map()));
      const bool aut = oracle::bijective(m) && oracle::is_hom(*g, m);
      ASSERT_EQ(parastrophe_orthogonality(f, S::s12).orthogonal, aut);
    }
  }
}

TEST(Parastrophe, TCasesMatchLinearTheory) {
  for (auto spec : {"Z5", "Z6", "Z7", "Z2xZ4"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    for (const auto& f : enumerate_forms(g, {FormClass::TQuasigroup, false}, true, auts)) {
      const auto lf = reclass(f, FormClass::Linear);
      for (auto s : kNonTrivialParastrophes) {
        const auto t_id = parastrophe_criterion_for(FormClass::TQuasigroup, s);
        const auto l_id = parastrophe_criterion_for(FormClass::Linear, s);
        ASSERT_TRUE(t_id && l_id);
        ASSERT_EQ(parastrophe_orthogonality(*t_id, f).orthogonal, parastrophe_orthogonality(*l_id, lf).orthogonal);
      }
    }
  }
}

TEST(Parastrophe, ConstantFreeLinearReformulation) {
  for (auto spec : {"Z5", "Z7", "Z2xZ4", "S3", "D4", "Q8"}) {
    const auto g = grp(spec);
    const auto auts = enumerate_automorphisms(*g);
    for (const auto& f : enumerate_forms(g, {FormClass::Linear, false}, false, auts)) {
      const Map eps = identity_morphism(*g).map();
      const bool s13 = oracle::bijective(oracle::plus(*g, f.left.map(), eps));
      const bool s123 =
          oracle::bijective(oracle::plus(*g, f.left.map(), oracle::compose(f.right.map(), f.right.map())));
      ASSERT_EQ(parastrophe_orthogonality(f, S::s13).orthogonal, s13) << spec;
      ASSERT_EQ(parastrophe_orthogonality(f, S::s123).orthogonal, s123) << spec;
    }
  }
}

TEST(Catalog, NamesRoundTrip) {
  const auto& cat = criterion_catalog();
  EXPECT_EQ(cat.size(), 40u);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(static_cast<std::size_t>(cat[i].id), i);
    EXPECT_EQ(parse_criterion(cat[i].name), cat[i].id);
    EXPECT_FALSE(cat[i].statement.empty());
  }
  EXPECT_FALSE(parse_criterion("NOPE"));
  EXPECT_EQ(parastrophe_criterion_for(FormClass::Alinear, S::s23), C::PAR_ALIN23);
  EXPECT_FALSE(parastrophe_criterion_for(FormClass::LeftLinear, S::s23));
}
