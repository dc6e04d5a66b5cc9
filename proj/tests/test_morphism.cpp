#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace quasiortho;

namespace {

Map mul(std::size_t n, std::size_t k) {
  Map m(n);
  for (std::size_t x = 0; x < n; ++x) m[x] = static_cast<Element>((k * x) % n);
  return m;
}

std::vector<Map> maps_of(const std::vector<Morphism>& ms) {
  std::vector<Map> out;
  for (const auto& m : ms) out.push_back(m.map());
  return out;
}

std::vector<Map> sorted(std::vector<Map> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Predicates, Z5Multipliers) {
  const auto g = cyclic_group(5);
  EXPECT_TRUE(is_automorphism(g, mul(5, 2)));
  EXPECT_FALSE(is_automorphism(g, mul(5, 0)));
  EXPECT_THROW(is_automorphism(g, Map{0, 1}), MorphismError);
}

TEST(Predicates, ConjugationIsAutomorphism) {
  const auto g = symmetric_group(3);
  for (Element a = 0; a < 6; ++a) EXPECT_TRUE(is_automorphism(g, oracle::conj(g, a)));
}

TEST(Predicates, AntiAutomorphisms) {
  for (auto spec : {"Z6", "S3", "D4", "Q8"}) {
    const auto g = group_from_spec(spec);
    EXPECT_TRUE(is_antiautomorphism(g, oracle::inversion(g))) << spec;
  }
  const auto z7 = cyclic_group(7);
  for (const auto& a : enumerate_automorphisms(z7)) EXPECT_TRUE(is_antiautomorphism(z7, a.map()));
  const auto s3 = symmetric_group(3);
  EXPECT_FALSE(is_antiautomorphism(s3, identity_morphism(s3).map()));
}

TEST(Enumeration, Counts) {
  EXPECT_EQ(enumerate_automorphisms(cyclic_group(5)).size(), 4u);
  EXPECT_EQ(enumerate_automorphisms(group_from_spec("Z2xZ2")).size(), 6u);
  EXPECT_EQ(enumerate_automorphisms(symmetric_group(3)).size(), 6u);
  EXPECT_EQ(enumerate_automorphisms(symmetric_group(4)).size(), 24u);
  EXPECT_EQ(enumerate_automorphisms(dihedral_group(4)).size(), 8u);
  EXPECT_EQ(enumerate_automorphisms(quaternion_group()).size(), 24u);
  EXPECT_EQ(enumerate_automorphisms(group_from_spec("Z2xZ4")).size(), 8u);
  EXPECT_EQ(enumerate_automorphisms(cyclic_group(1)).size(), 1u);
}

TEST(Enumeration, MatchesBruteForceFilter) {
  for (auto spec : {"Z1", "Z2", "Z5", "Z6", "Z7", "Z2xZ2", "S3", "D4", "Q8", "Z2xZ4"}) {
    SCOPED_TRACE(spec);
    const auto g = group_from_spec(spec);
    const auto aut = maps_of(enumerate_automorphisms(g));
    EXPECT_EQ(aut, sorted(aut));
    EXPECT_EQ(aut, oracle::automorphisms(g));
    if (g.order() <= 6) EXPECT_EQ(maps_of(enumerate_antiautomorphisms(g)), oracle::antiautomorphisms(g));
  }
}

TEST(Enumeration, LargerOrdersAreAutomorphisms) {
  for (auto spec : {"S4", "D8", "Z2xZ2xZ2", "Z4xZ4"}) {
    const auto g = group_from_spec(spec);
    const auto aut = enumerate_automorphisms(g);
    std::set<Map> distinct;
    for (const auto& a : aut) {
      EXPECT_TRUE(oracle::bijective(a.map()));
      EXPECT_TRUE(oracle::is_hom(g, a.map()));
      distinct.insert(a.map());
    }
    EXPECT_EQ(distinct.size(), aut.size()) << spec;
  }
  EXPECT_EQ(enumerate_automorphisms(group_from_spec("Z2xZ2xZ2")).size(), 168u);
  EXPECT_EQ(enumerate_automorphisms(group_from_spec("D8")).size(), 32u);
}

TEST(Enumeration, OrderCap) {
  EXPECT_THROW(enumerate_automorphisms(symmetric_group(5)), MorphismError);
  EXPECT_EQ(enumerate_inner_automorphisms(symmetric_group(5)).size(), 120u);
}

TEST(Enumeration, AntiAutomorphismsOfAbelianAndS3) {
  const auto z5 = cyclic_group(5);
  EXPECT_EQ(sorted(maps_of(enumerate_antiautomorphisms(z5))), sorted(maps_of(enumerate_automorphisms(z5))));
  const auto s3 = symmetric_group(3);
  const auto anti = enumerate_antiautomorphisms(s3);
  EXPECT_EQ(anti.size(), 6u);
  for (const auto& a : anti) EXPECT_FALSE(is_automorphism(s3, a.map()));
  EXPECT_EQ(enumerate_antiautomorphisms(cyclic_group(1)).size(), 1u);
}

TEST(Inner, Basics) {
  const auto z6 = cyclic_group(6);
  for (Element a = 0; a < 6; ++a) EXPECT_EQ(inner(z6, a).map(), identity_morphism(z6).map());
  const auto s3 = symmetric_group(3);
  const Element t = 2;  // one-line 102, the transposition (0 1)
  const auto j = inner(s3, t);
  EXPECT_EQ(j(t), t);
  EXPECT_NE(j.map(), identity_morphism(s3).map());
  EXPECT_EQ(compose(s3, j, j).map(), identity_morphism(s3).map());
  EXPECT_TRUE(j.has(Tag::Inner));
  EXPECT_TRUE(j.has(Tag::Automorphism));
  EXPECT_EQ(j.witness(), t);
  EXPECT_EQ(inner(s3, s3.identity()).map(), identity_morphism(s3).map());
}

TEST(Inner, S3InnerEqualsAut) {
  const auto s3 = symmetric_group(3);
  EXPECT_EQ(sorted(maps_of(enumerate_inner_automorphisms(s3))), maps_of(enumerate_automorphisms(s3)));
  const auto q8 = quaternion_group();
  EXPECT_EQ(enumerate_inner_automorphisms(q8).size(), 4u);
}

TEST(Classify, Tags) {
  const auto s3 = symmetric_group(3);
  const auto i = classify(s3, oracle::inversion(s3));
  EXPECT_TRUE(i.has(Tag::Permutation));
  EXPECT_TRUE(i.has(Tag::AntiAutomorphism));
  EXPECT_FALSE(i.has(Tag::Automorphism));
  const auto c = classify(s3, oracle::conj(s3, 4));
  EXPECT_TRUE(c.has(Tag::Inner));
  EXPECT_EQ(c.witness(), 4);
  const auto d4 = dihedral_group(4);
  for (int a = 0; a < 8; ++a) {
    int smallest = a;
    for (int b = 0; b < a; ++b)
      if (oracle::conj(d4, b) == oracle::conj(d4, a)) smallest = std::min(smallest, b);
    EXPECT_EQ(classify(d4, oracle::conj(d4, a)).witness(), smallest);
  }
  const auto z = classify(s3, Map(6, 0));
  EXPECT_EQ(z.tags(), TagSet{});
}

// Items of the anti-automorphism algebra, checked pointwise for every
// automorphism and every conjugating element.
class AntiAlgebra : public ::testing::TestWithParam<const char*> {};

TEST_P(AntiAlgebra, AllNineIdentities) {
  const auto g = group_from_spec(GetParam());
  const auto auts = enumerate_automorphisms(g);
  const auto antis = enumerate_antiautomorphisms(g);
  const Map I = oracle::inversion(g);
  Map eps(g.order());
  std::iota(eps.begin(), eps.end(), Element{0});

  for (const auto& p : antis)
    for (const auto& q : antis) EXPECT_TRUE(oracle::is_hom(g, oracle::compose(p.map(), q.map())));  // 1
  for (const auto& p : antis) {
    for (const auto& a : auts) {
      EXPECT_TRUE(oracle::is_antihom(g, oracle::compose(p.map(), a.map())));  // 2
      EXPECT_TRUE(oracle::is_antihom(g, oracle::compose(a.map(), p.map())));
    }
    EXPECT_TRUE(oracle::is_hom(g, oracle::compose(I, p.map())));  // 3
  }
  EXPECT_EQ(oracle::compose(I, I), eps);
  for (const auto& a : auts) {
    const Map& phi = a.map();
    const Map bar = oracle::compose(I, phi);
    EXPECT_EQ(oracle::compose(I, phi), oracle::compose(phi, I));  // 4
    EXPECT_EQ(oracle::compose(I, bar), oracle::compose(bar, I));  // 5
    const Map phi_inv = oracle::invert(phi);
    EXPECT_EQ(oracle::invert(bar), oracle::compose(I, phi_inv));  // 6
    EXPECT_EQ(oracle::compose(phi_inv, I), oracle::compose(I, phi_inv));
    for (std::size_t x = 0; x < g.order(); ++x) {
      const int ax = static_cast<int>(x);
      const Map ja = oracle::conj(g, ax);
      const Map jpa = oracle::conj(g, phi[x]);
      EXPECT_EQ(oracle::compose(phi, ja), oracle::compose(jpa, phi));  // 7
      EXPECT_EQ(oracle::compose(phi, oracle::invert(ja)), oracle::compose(oracle::invert(jpa), phi));
      EXPECT_EQ(oracle::compose(bar, ja), oracle::compose(jpa, bar));  // 8
      EXPECT_EQ(oracle::compose(I, ja), oracle::compose(ja, I));       // 9
    }
  }
  // Every anti-automorphism is I composed with an automorphism.
  std::set<Map> from_aut;
  for (const auto& a : auts) from_aut.insert(oracle::compose(I, a.map()));
  for (const auto& p : antis) EXPECT_TRUE(from_aut.count(p.map()));
  EXPECT_EQ(from_aut.size(), antis.size());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, AntiAlgebra, ::testing::Values("Z6", "Z2xZ4", "S3", "S4", "D4", "Q8"));

TEST(ComposeInvert, Basics) {
  const auto g = dihedral_group(4);
  const auto auts = enumerate_automorphisms(g);
  for (const auto& a : auts) {
    const auto inv = invert(g, a);
    EXPECT_EQ(compose(g, a, inv).map(), identity_morphism(g).map());
    EXPECT_TRUE(inv.has(Tag::Automorphism));
  }
  const auto t = right_translation(g, 3);
  for (Element x = 0; x < 8; ++x) EXPECT_EQ(t(x), g.op(x, 3));
  EXPECT_EQ(format_map(mul(5, 2)), "0 2 4 1 3");
  EXPECT_EQ((TagSet{Tag::Permutation, Tag::Automorphism}).to_string(), "Permutation|Automorphism");
  EXPECT_EQ(TagSet{}.to_string(), "none");
}
