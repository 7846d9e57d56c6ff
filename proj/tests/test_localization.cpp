#include <gtest/gtest.h>

#include "modspec/localization.hpp"
#include "oracle.hpp"

using namespace modspec;

namespace {

const RingDesc Z = RingDesc::integers();

std::vector<FgModule> corpus_sample() {
  std::vector<FgModule> out;
  for (const auto& fs : std::vector<IntVector>{{}, {2}, {4}, {6}, {12}, {2, 2}, {2, 6}, {3, 9}, {2, 12}, {6, 6}, {36},
                                               {2, 4, 8}, {30}}) {
    out.push_back(from_invariants(Z, fs));
  }
  for (long n : {4L, 6L, 12L, 36L}) {
    const auto r = RingDesc::integers_mod(n);
    out.push_back(from_invariants(r, {n}));
    out.push_back(from_invariants(r, {2, n}));
  }
  return out;
}

std::vector<MultSet> sets_for(const FgModule& m) {
  std::vector<MultSet> out;
  for (long f = 0; f <= 7; ++f) out.push_back(MultSet::powers_of(f));
  for (const auto& p : relevant_primes(m)) out.push_back(MultSet::complement_of_prime(p));
  if (m.ring().kind() == RingDesc::Kind::Integers) out.push_back(MultSet::complement_of_prime(0));
  return out;
}

}  // namespace

TEST(MultSet, Basics) {
  EXPECT_TRUE(MultSet::powers_of(0).degenerate(Z));
  EXPECT_FALSE(MultSet::powers_of(2).degenerate(Z));
  EXPECT_TRUE(MultSet::powers_of(6).degenerate(RingDesc::integers_mod(12)));
  EXPECT_FALSE(MultSet::powers_of(2).degenerate(RingDesc::integers_mod(12)));
  EXPECT_TRUE(MultSet::powers_of(3).meets(Ideal(Z, 9)));
  EXPECT_FALSE(MultSet::powers_of(3).meets(Ideal(Z, 2)));
  EXPECT_TRUE(MultSet::powers_of(7).meets(Ideal(Z, 1)));
  EXPECT_TRUE(MultSet::complement_of_prime(2).meets(Ideal(Z, 3)));
  EXPECT_FALSE(MultSet::complement_of_prime(2).meets(Ideal(Z, 4)));
  EXPECT_EQ(MultSet::powers_of(2).image_mod(Z, 12), (std::vector<std::int64_t>{1, 2, 4, 8}));
}

TEST(Localize, Examples) {
  const auto z12 = localize(from_invariants(Z, {12}), MultSet::powers_of(2));
  EXPECT_EQ(z12.factors(), IntVector{3});
  const auto p5 = FgModule::prufer(5);
  EXPECT_EQ(localize(p5, MultSet::powers_of(3)).special, LocalizedModule::Special::Prufer);
  EXPECT_TRUE(localize(p5, MultSet::powers_of(5)).is_zero());
  EXPECT_EQ(localize(p5, MultSet::complement_of_prime(5)).special, LocalizedModule::Special::Prufer);
  EXPECT_TRUE(localize(p5, MultSet::complement_of_prime(2)).is_zero());
  EXPECT_TRUE(localize(from_invariants(Z, {12}), MultSet::powers_of(0)).is_zero());
  // Free parts survive with the localized ring.
  const auto free = localize(from_invariants(Z, {6}, 2), MultSet::complement_of_prime(3));
  EXPECT_EQ(free.factors(), IntVector{3});
  EXPECT_EQ(free.free_rank(), 2u);
  const auto rational = localize(from_invariants(Z, {6}, 1), MultSet::complement_of_prime(0));
  EXPECT_TRUE(rational.factors().empty());
  EXPECT_EQ(rational.free_rank(), 1u);
}

TEST(LocalizeBruteforce, Examples) {
  EXPECT_EQ(localize_bruteforce(from_invariants(Z, {4}), MultSet::powers_of(3)).factors(), IntVector{4});
  EXPECT_TRUE(localize_bruteforce(from_invariants(Z, {4}), MultSet::powers_of(2)).is_zero());
  EXPECT_TRUE(localize_bruteforce(FgModule::zero(Z), MultSet::powers_of(5)).is_zero());
}

TEST(Localize, MatchesBruteforceOracle) {
  for (const auto& m : corpus_sample()) {
    for (const auto& s : sets_for(m)) {
      const auto a = localize(m, s);
      const auto b = localize_bruteforce(m, s);
      EXPECT_TRUE(localized_iso(a, b)) << a.describe() << " vs " << b.describe();
      // Cardinality divides |M|.
      EXPECT_EQ(*m.cardinality() % *a.carrier.cardinality(), 0);
    }
  }
}

TEST(Localize, IdempotentOnInvariants) {
  for (const auto& m : corpus_sample()) {
    for (const auto& s : sets_for(m)) {
      const auto once = localize(m, s);
      const auto again = localize(from_invariants(m.ring(), once.factors()), s);
      EXPECT_EQ(again.factors(), once.factors());
    }
  }
}

TEST(Localize, FractionsFormTheLocalization) {
  // m/s is onto M_S and constant on classes (m, s) ~ (m', s').
  const auto m = from_invariants(Z, {2, 12});
  const auto ms = localize(m, MultSet::powers_of(3));
  ASSERT_EQ(ms.factors(), (IntVector{2, 4}));
  const ElementIndexer ix(m, 4096);
  const std::vector<long> denominators{1, 3, 9, 27};
  std::set<oracle::Vec> values;
  for (std::int64_t i = 0; i < ix.size(); ++i) {
    for (long s : denominators) {
      const auto v = ms.fraction(ix.element(i), s);
      values.insert(oracle::to_vec(v));
      for (std::int64_t j = 0; j < ix.size(); ++j) {
        for (long t : denominators) {
          // u(t·m − s·m') = 0 for some power u of 3.
          const auto diff = ix.add(ix.scale(i, t), ix.negate(ix.scale(j, s)));
          bool related = false;
          for (long u : denominators) related = related || ix.scale(diff, u) == 0;
          if (related) EXPECT_EQ(ms.fraction(ix.element(j), t), v);
        }
      }
    }
  }
  EXPECT_EQ(static_cast<long>(values.size()), static_cast<long>(*ms.carrier.cardinality()));
  const auto z6 = from_invariants(Z, {6});
  const auto at3 = localize(z6, MultSet::complement_of_prime(3));
  // 1/2 in Z/3 is 2.
  EXPECT_EQ(at3.fraction(ModElement(z6, {1}), 2).coords(), IntVector{2});
  EXPECT_THROW(at3.fraction(ModElement(z6, {1}), 3), Error);
}

TEST(Correspondence, Examples) {
  const auto z6 = from_invariants(Z, {6});
  const auto c = prime_correspondence(z6, MultSet::powers_of(3));
  EXPECT_TRUE(c.ok());
  ASSERT_EQ(c.pairs.size(), 1u);
  EXPECT_EQ(c.pairs[0].prime.sub, scalar_multiple_submodule(2, z6));
  const auto id = prime_correspondence(z6, MultSet::powers_of(1));
  EXPECT_TRUE(id.ok());
  EXPECT_EQ(id.pairs.size(), 2u);
  const auto p = prime_correspondence(FgModule::prufer(3), MultSet::powers_of(2));
  EXPECT_TRUE(p.pairs.empty());
  EXPECT_TRUE(p.ok());
}

TEST(Correspondence, HoldsOnCorpus) {
  for (const auto& m : corpus_sample()) {
    for (const auto& s : sets_for(m)) {
      const auto c = prime_correspondence(m, s);
      EXPECT_TRUE(c.ok()) << m.describe() << " " << s.to_string() << ": "
                          << (c.violations.empty() ? "" : c.violations.front());
      EXPECT_EQ(c.pairs.size(), c.target_size);
    }
  }
}

TEST(Transfer, Examples) {
  const auto z12 = from_invariants(Z, {12});
  const auto r = verify_localization_transfer(z12, {MultSet::powers_of(2)});
  EXPECT_TRUE(r.passed());
  const auto z6 = from_invariants(Z, {6});
  const auto r6 =
      verify_localization_transfer(z6, {MultSet::complement_of_prime(2), MultSet::complement_of_prime(3)});
  EXPECT_TRUE(r6.passed());
  bool local_to_global_applied = false;
  for (const auto& c : r6.clauses) {
    if (c.name == "P-radical at every prime implies P-radical") local_to_global_applied = c.hypothesis && c.conclusion;
  }
  EXPECT_TRUE(local_to_global_applied);
  EXPECT_TRUE(verify_localization_transfer(FgModule::zero(Z), {MultSet::powers_of(2)}).passed());
}

TEST(Transfer, HoldsOnCorpus) {
  for (const auto& m : corpus_sample()) {
    const auto r = verify_localization_transfer(m, sets_for(m));
    for (const auto& c : r.clauses) EXPECT_TRUE(c.passed()) << m.describe() << " " << c.name << " " << c.detail;
  }
  const auto p = verify_localization_transfer(FgModule::prufer(3), {MultSet::powers_of(3), MultSet::powers_of(2)});
  EXPECT_TRUE(p.passed());
}

TEST(ExtendIdeal, Basics) {
  const auto s = MultSet::powers_of(2);
  EXPECT_TRUE(extend_ideal(Ideal(Z, 4), s).is_unit());
  EXPECT_EQ(extend_ideal(Ideal(Z, 12), s).gen(), 3);
  const auto r12 = RingDesc::integers_mod(12);
  EXPECT_TRUE(extend_ideal(Ideal::zero(r12), s).is_zero());
}
