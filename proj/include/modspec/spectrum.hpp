#pragma once

#include <map>
#include <optional>
#include <vector>

#include "modspec/module.hpp"

namespace modspec {

/// A prime submodule P together with its characteristic prime (P:M).
struct PrimeSubmodule {
  Submodule sub;
  Ideal char_ideal;

  friend bool operator==(const PrimeSubmodule& a, const PrimeSubmodule& b) { return a.sub == b.sub; }
};

enum class SpectrumStrategy { Bruteforce, Classified, Both };

/// Spec(M) grouped into fibers over the relevant primes p | Ann(M). Fibers
/// are keyed by the rational prime and sorted by canonical basis.
struct SpectrumView {
  FgModule parent;
  std::map<Int, std::vector<PrimeSubmodule>> fibers;
  /// True when both strategies ran and agreed.
  bool strategies_compared = false;

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::vector<Int> primes() const;
  [[nodiscard]] std::vector<PrimeSubmodule> all() const;
};

/// Primes p with (p) ⊇ Ann(M): the prime divisors of the annihilator
/// generator. Empty for the zero module. Throws for modules with infinitely
/// many relevant primes (free rank > 0, Prüfer).
std::vector<Int> relevant_primes(const FgModule& m, const Limits& limits = {});

/// Brute-force primality test straight from the definition. Returns (P:M)
/// when P is prime. M must be finite and within the cardinality cap.
std::optional<Ideal> is_prime_submodule(const Submodule& p, const FgModule& m, const Limits& limits = {});

/// All submodules of a finite module as element masks (subgroup closure).
std::vector<std::vector<char>> enumerate_subgroups(const ElementIndexer& indexer);

SpectrumView spec_enumerate(const FgModule& m, SpectrumStrategy strategy = SpectrumStrategy::Both,
                            const Limits& limits = {});

/// Closed set V(N), stored through its defining ideal √(N:M).
struct ClosedSet {
  std::vector<Int> universe;  // relevant primes (all fibers)
  std::vector<Int> fibers;    // sorted subset of universe
  Ideal defining;             // √(N:M)

  friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.fibers == b.fibers; }
};

/// Open set: a union of whole fibers.
struct OpenSet {
  std::vector<Int> universe;
  std::vector<Int> fibers;

  [[nodiscard]] bool contains(const Int& p) const;
  [[nodiscard]] bool subset_of(const OpenSet& other) const;
  [[nodiscard]] bool empty() const noexcept { return fibers.empty(); }

  friend bool operator==(const OpenSet& a, const OpenSet& b) { return a.fibers == b.fibers; }
};

OpenSet complement(const ClosedSet& v);
OpenSet open_union(const OpenSet& a, const OpenSet& b);
OpenSet open_intersection(const OpenSet& a, const OpenSet& b);
/// Every open set of the (finite, fiber-level) spectrum, in a canonical order.
std::vector<OpenSet> all_open_sets(const std::vector<Int>& universe);
/// The full spectrum as an open set.
OpenSet whole_spectrum(const FgModule& m, const Limits& limits = {});

ClosedSet variety(const Submodule& n, const FgModule& m, const Limits& limits = {});
/// D(fM) = Spec(M) \ V(fM).
OpenSet basic_open(const Int& f, const FgModule& m, const Limits& limits = {});

enum class RadicalMethod { Bruteforce, ClosedForm };

/// √[p]N: intersection of the primes containing N, or M if there are none.
Submodule prime_radical(const Submodule& n, const FgModule& m, RadicalMethod method = RadicalMethod::ClosedForm,
                        const Limits& limits = {});

struct PradicalCertificate {
  Ideal prime;  // violating prime ideal 𝒫 ⊇ Ann(M)
  Ideal lhs;    // (√[p](𝒫M) : M)
  Ideal rhs;    // 𝒫
};

struct PradicalResult {
  bool pradical = true;
  bool symbolic = false;  // decided by the free-module rule
  std::vector<Ideal> primes_checked;
  std::optional<PradicalCertificate> certificate;
};

/// Decides the prime radical condition (√[p](𝒫M) : M) = 𝒫 for every prime
/// 𝒫 ⊇ Ann(M).
PradicalResult is_pradical(const FgModule& m, const Limits& limits = {});

struct NaturalMap {
  std::vector<std::pair<PrimeSubmodule, Ideal>> image;  // P ↦ (P:M)
  std::vector<Ideal> codomain;                          // primes ⊇ Ann(M)
  bool surjective = false;
};

NaturalMap natural_map(const FgModule& m, const Limits& limits = {});

}  // namespace modspec
