#include <gtest/gtest.h>

#include "modspec/spectrum.hpp"
#include "oracle.hpp"

using namespace modspec;

namespace {

const RingDesc Z = RingDesc::integers();

std::vector<FgModule> small_modules() {
  std::vector<FgModule> out;
  for (const auto& fs : std::vector<IntVector>{{},        {2},       {4},    {6},     {8},     {12},   {2, 2},
                                               {2, 4},    {3, 3},    {2, 6}, {2, 2, 2}, {36},  {2, 12}, {3, 9},
                                               {2, 2, 4}, {6, 6},    {4, 4}, {2, 4, 8}}) {
    out.push_back(from_invariants(Z, fs));
  }
  for (long n : {4L, 6L, 12L, 36L}) {
    const auto r = RingDesc::integers_mod(n);
    for (const auto& fs : std::vector<IntVector>{{2}, {n}, {2, n}}) {
      if (n % 2 == 0) out.push_back(from_invariants(r, fs));
    }
  }
  return out;
}

std::set<std::set<oracle::Vec>> prime_sets(const SpectrumView& v) {
  std::set<std::set<oracle::Vec>> out;
  for (const auto& p : v.all()) out.insert(oracle::elements_of(p.sub));
  return out;
}

}  // namespace

TEST(PrimeTest, Examples) {
  const auto z4 = from_invariants(Z, {4});
  const auto two = scalar_multiple_submodule(2, z4);
  EXPECT_EQ(is_prime_submodule(two, z4), Ideal(Z, 2));
  EXPECT_FALSE(is_prime_submodule(Submodule::zero(z4), z4).has_value());
  EXPECT_FALSE(is_prime_submodule(Submodule::full(z4), z4).has_value());
  EXPECT_THROW(is_prime_submodule(Submodule::zero(from_invariants(Z, {}, 1)), from_invariants(Z, {}, 1)), Error);
}

TEST(Spectrum, Examples) {
  const auto v4 = from_invariants(Z, {2, 2});
  const auto s = spec_enumerate(v4);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.primes(), std::vector<Int>{2});
  EXPECT_TRUE(s.strategies_compared);

  const auto z6 = from_invariants(Z, {6});
  const auto s6 = spec_enumerate(z6);
  ASSERT_EQ(s6.size(), 2u);
  EXPECT_EQ(s6.fibers.at(2)[0].sub, scalar_multiple_submodule(2, z6));
  EXPECT_EQ(s6.fibers.at(3)[0].sub, scalar_multiple_submodule(3, z6));

  EXPECT_EQ(spec_enumerate(FgModule::prufer(3)).size(), 0u);
  EXPECT_EQ(spec_enumerate(FgModule::zero(Z)).size(), 0u);
  EXPECT_THROW(spec_enumerate(from_invariants(Z, {2}, 1)), Error);
}

TEST(Spectrum, MatchesOracleAndStrategiesAgree) {
  for (const auto& m : small_modules()) {
    if (*m.cardinality() > 64) continue;
    const oracle::Group g(m);
    std::set<std::set<oracle::Vec>> expect;
    for (const auto& h : oracle::all_subgroups(g)) {
      if (oracle::is_prime(g, h)) expect.insert(h);
    }
    const auto brute = spec_enumerate(m, SpectrumStrategy::Bruteforce);
    const auto classified = spec_enumerate(m, SpectrumStrategy::Classified);
    EXPECT_EQ(prime_sets(brute), expect) << m.describe();
    EXPECT_EQ(prime_sets(classified), expect) << m.describe();
    for (const auto& [p, fiber] : classified.fibers) {
      EXPECT_FALSE(fiber.empty());
      for (const auto& prime : fiber) {
        EXPECT_EQ(prime.char_ideal.gen(), p);
        EXPECT_EQ(oracle::colon(g, oracle::elements_of(prime.sub)), p);
      }
    }
  }
}

TEST(Spectrum, BothStrategiesOnLargerModules) {
  for (const auto& fs : std::vector<IntVector>{{2, 4, 8}, {2, 6, 6}, {4, 4, 4}, {2, 2, 2, 2}, {3, 3, 3}}) {
    const auto m = from_invariants(Z, fs);
    const auto s = spec_enumerate(m, SpectrumStrategy::Both);
    EXPECT_TRUE(s.strategies_compared) << m.describe();
  }
  // Above the brute-force cap only the classified strategy runs.
  Limits small;
  small.bruteforce_cap = 16;
  const auto big = spec_enumerate(from_invariants(Z, {4, 8}), SpectrumStrategy::Both, small);
  EXPECT_FALSE(big.strategies_compared);
  EXPECT_THROW(spec_enumerate(from_invariants(Z, {4, 8}), SpectrumStrategy::Bruteforce, small), Error);
}

TEST(Variety, Examples) {
  const auto z6 = from_invariants(Z, {6});
  EXPECT_EQ(variety(Submodule::zero(z6), z6).fibers, (std::vector<Int>{2, 3}));
  EXPECT_TRUE(variety(Submodule::full(z6), z6).fibers.empty());
  EXPECT_EQ(variety(scalar_multiple_submodule(2, z6), z6).fibers, std::vector<Int>{2});
}

TEST(BasicOpen, Examples) {
  const auto z6 = from_invariants(Z, {6});
  EXPECT_EQ(basic_open(3, z6).fibers, std::vector<Int>{2});
  EXPECT_EQ(basic_open(1, z6), whole_spectrum(z6));
  const auto r12 = RingDesc::integers_mod(12);
  EXPECT_TRUE(basic_open(6, from_invariants(r12, {12})).empty());
}

TEST(Variety, DependsOnlyOnPrimeRadical) {
  for (const auto& m : small_modules()) {
    if (*m.cardinality() > 64) continue;
    const ElementIndexer ix(m, 4096);
    for (const auto& mask : enumerate_subgroups(ix)) {
      const auto n = ix.submodule_from_mask(mask);
      EXPECT_EQ(variety(n, m), variety(prime_radical(n, m), m)) << m.describe() << " " << n.describe();
    }
  }
}

TEST(Variety, MatchesDefinitionOnPoints) {
  // P ∈ V(N) iff (N:M) ⊆ (P:M), checked prime by prime.
  for (const auto& m : small_modules()) {
    if (*m.cardinality() > 64) continue;
    const auto spec = spec_enumerate(m);
    const ElementIndexer ix(m, 4096);
    for (const auto& mask : enumerate_subgroups(ix)) {
      const auto n = ix.submodule_from_mask(mask);
      const auto v = variety(n, m);
      for (const auto& prime : spec.all()) {
        const bool in_v = colon(n, m).subset_of(prime.char_ideal);
        EXPECT_EQ(in_v, std::binary_search(v.fibers.begin(), v.fibers.end(), prime.char_ideal.gen()));
      }
    }
  }
}

TEST(PrimeRadical, Examples) {
  const auto z4 = from_invariants(Z, {4});
  EXPECT_EQ(prime_radical(Submodule::zero(z4), z4), scalar_multiple_submodule(2, z4));
  EXPECT_TRUE(prime_radical(Submodule::full(z4), z4).is_full());
  const auto p3 = FgModule::prufer(3);
  EXPECT_TRUE(prime_radical(Submodule::zero(p3), p3).is_full());
}

TEST(PrimeRadical, ClosedFormMatchesIntersection) {
  for (const auto& m : small_modules()) {
    if (*m.cardinality() > 64) continue;
    const ElementIndexer ix(m, 4096);
    const auto spec = spec_enumerate(m, SpectrumStrategy::Bruteforce);
    for (const auto& mask : enumerate_subgroups(ix)) {
      const auto n = ix.submodule_from_mask(mask);
      const auto closed = prime_radical(n, m, RadicalMethod::ClosedForm);
      EXPECT_EQ(closed, prime_radical(n, m, RadicalMethod::Bruteforce));
      // Oracle: intersect element sets of primes containing N.
      const auto ns = oracle::elements_of(n);
      std::optional<std::set<oracle::Vec>> meet;
      for (const auto& prime : spec.all()) {
        const auto ps = oracle::elements_of(prime.sub);
        if (!std::includes(ps.begin(), ps.end(), ns.begin(), ns.end())) continue;
        if (!meet) {
          meet = ps;
        } else {
          std::set<oracle::Vec> next;
          std::set_intersection(meet->begin(), meet->end(), ps.begin(), ps.end(), std::inserter(next, next.end()));
          meet = next;
        }
      }
      const auto expect = meet ? *meet : oracle::elements_of(Submodule::full(m));
      EXPECT_EQ(oracle::elements_of(closed), expect);
    }
  }
}

TEST(Pradical, Examples) {
  EXPECT_TRUE(is_pradical(from_invariants(RingDesc::integers_mod(6), {6})).pradical);
  const auto p5 = is_pradical(FgModule::prufer(5));
  EXPECT_FALSE(p5.pradical);
  ASSERT_TRUE(p5.certificate.has_value());
  EXPECT_EQ(p5.certificate->prime.gen(), 5);
  EXPECT_TRUE(p5.certificate->lhs.is_unit());
  EXPECT_EQ(p5.certificate->rhs.gen(), 5);
  EXPECT_TRUE(is_pradical(FgModule::zero(Z)).pradical);
  const auto free = is_pradical(from_invariants(Z, {2}, 1));
  EXPECT_TRUE(free.pradical);
  EXPECT_TRUE(free.symbolic);
}

TEST(Pradical, FiniteModulesArePradicalAndPrimeful) {
  for (const auto& m : small_modules()) {
    EXPECT_TRUE(is_pradical(m).pradical) << m.describe();
    EXPECT_TRUE(natural_map(m).surjective) << m.describe();
  }
}

TEST(NaturalMap, Examples) {
  const auto z6 = natural_map(from_invariants(Z, {6}));
  EXPECT_TRUE(z6.surjective);
  EXPECT_EQ(z6.codomain.size(), 2u);
  for (const auto& [p, image] : z6.image) EXPECT_EQ(image, p.char_ideal);
  const auto p3 = natural_map(FgModule::prufer(3));
  EXPECT_FALSE(p3.surjective);
  EXPECT_TRUE(p3.image.empty());
  EXPECT_TRUE(natural_map(FgModule::zero(Z)).surjective);
}

TEST(Varieties, RadicalVarietyComparisons) {
  // For ideals I, J ⊇ Ann(M) of a P-radical module:
  //   V(IM) ⊆ V(JM) ⇒ √J ⊆ √I, and V(IM) ⊆ V(JM) ⇒ √(IM:M) ⊇ √(JM:M).
  // For radical I: (IM:M) = I iff Ann(M) ⊆ I.
  for (const auto& m : small_modules()) {
    if (m.is_zero()) continue;
    const auto e = m.exponent();
    const auto ann = annihilator(m);
    std::vector<Ideal> ideals;
    for (const auto& d : divisors(e)) ideals.emplace_back(m.ring(), d);
    auto v_subset = [](const ClosedSet& a, const ClosedSet& b) {
      return std::includes(b.fibers.begin(), b.fibers.end(), a.fibers.begin(), a.fibers.end());
    };
    for (const auto& i : ideals) {
      const auto vi = variety(ideal_times_module(i, m), m);
      const auto ci = colon(ideal_times_module(i, m), m);
      for (const auto& j : ideals) {
        const auto vj = variety(ideal_times_module(j, m), m);
        const auto cj = colon(ideal_times_module(j, m), m);
        if (v_subset(vi, vj)) {
          EXPECT_TRUE(ideal_radical(j).subset_of(ideal_radical(i)));
          EXPECT_TRUE(ideal_radical(cj).subset_of(ideal_radical(ci)));
        }
      }
      if (ideal_radical(i) == i) EXPECT_EQ(ci == i, ann.subset_of(i));
    }
  }
}

TEST(Topology, OpenSetsFormATopology) {
  const std::vector<Int> universe{2, 3, 5};
  const auto opens = all_open_sets(universe);
  EXPECT_EQ(opens.size(), 8u);
  for (const auto& a : opens)
    for (const auto& b : opens) {
      EXPECT_TRUE(a.subset_of(open_union(a, b)));
      EXPECT_TRUE(open_intersection(a, b).subset_of(a));
    }
  // Each fiber is a basic open: D(product of the other primes).
  const auto m = from_invariants(Z, {30});
  for (const auto& p : universe) {
    Int others = 1;
    for (const auto& q : universe)
      if (q != p) others *= q;
    EXPECT_EQ(basic_open(others, m).fibers, std::vector<Int>{p});
  }
}
