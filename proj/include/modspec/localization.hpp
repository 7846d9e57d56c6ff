#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modspec/spectrum.hpp"

namespace modspec {

/// Multiplicative set S: the powers of f, or the complement of a prime (p)
/// (p = 0 over Z gives all nonzero integers).
struct MultSet {
  enum class Kind { PowersOf, ComplementOfPrime };
  Kind kind = Kind::PowersOf;
  Int value = 1;

  static MultSet powers_of(const Int& f) { return {Kind::PowersOf, f}; }
  static MultSet complement_of_prime(const Int& p) { return {Kind::ComplementOfPrime, p}; }

  [[nodiscard]] Locus locus() const;
  /// 0 ∈ S in the given ring (f nilpotent or zero).
  [[nodiscard]] bool degenerate(const RingDesc& ring) const;
  /// S ∩ I ≠ ∅.
  [[nodiscard]] bool meets(const Ideal& ideal) const;
  /// Residues of S modulo e > 0, as a sorted list. Multiplicatively closed.
  [[nodiscard]] std::vector<std::int64_t> image_mod(const RingDesc& ring, std::int64_t e) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const MultSet&, const MultSet&) = default;
};

/// M_S. For presented sources the carrier is an FgModule over the localized
/// base ring whose canonical coordinates are the surviving coordinates of M,
/// in order; `source_coordinate[j]` is the coordinate of M that carrier
/// coordinate j comes from.
struct LocalizedModule {
  enum class Special { Standard, Zero, Prufer };

  FgModule source;
  MultSet set;
  RingDesc ring;
  Special special = Special::Standard;
  FgModule carrier;
  std::vector<std::size_t> source_coordinate;

  [[nodiscard]] const IntVector& factors() const { return carrier.factors(); }
  [[nodiscard]] std::size_t free_rank() const { return carrier.free_rank(); }
  [[nodiscard]] bool is_zero() const { return special == Special::Zero; }
  [[nodiscard]] std::string describe() const;

  /// m/s in the carrier. M finite; s must act invertibly on M_S, which holds
  /// for every s ∈ S.
  [[nodiscard]] ModElement fraction(const ModElement& m, const Int& s) const;
  /// m/1.
  [[nodiscard]] ModElement image(const ModElement& m) const { return fraction(m, 1); }
};

LocalizedModule localize(const FgModule& m, const MultSet& s, const Limits& limits = {});

/// Pair-enumeration oracle: classes of (m, s) under u(s'm − sm') = 0,
/// rebuilt into invariant factors by counting torsion.
LocalizedModule localize_bruteforce(const FgModule& m, const MultSet& s, const Limits& limits = {});

/// Isomorphism of localizations as modules over the original ring. Finite
/// parts are compared by invariant factors; free parts Z[1/f]^r, Z_(p)^r,
/// Q^r by rank and the set of inverted primes.
bool localized_iso(const LocalizedModule& a, const LocalizedModule& b);

/// I_S as an ideal of R_S.
Ideal extend_ideal(const Ideal& i, const MultSet& s);

/// Q^c = {m ∈ M : m/1 ∈ Q}.
Submodule contract(const Submodule& q, const LocalizedModule& ms, const Limits& limits = {});
/// P_S, the submodule of M_S generated by the images of P.
Submodule extend_submodule(const Submodule& p, const LocalizedModule& ms);

struct CorrespondencePair {
  PrimeSubmodule prime;      // P with (P:M) ∩ S = ∅
  PrimeSubmodule localized;  // P_S
};

struct PrimeCorrespondence {
  LocalizedModule ms;
  std::vector<CorrespondencePair> pairs;
  std::size_t target_size = 0;  // |Spec(M_S)|
  bool round_trip = true;       // (P_S)^c = P and Q^c extends back to Q
  bool bijective = true;
  bool order_preserving = true;
  bool colon_commutes = true;   // (P:M)_S = (P_S : M_S)
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

PrimeCorrespondence prime_correspondence(const FgModule& m, const MultSet& s, const Limits& limits = {});

struct TransferClause {
  std::string name;
  std::string detail;
  bool hypothesis = false;
  bool conclusion = false;
  [[nodiscard]] bool passed() const { return !hypothesis || conclusion; }
};

struct TransferReport {
  std::vector<TransferClause> clauses;
  [[nodiscard]] bool passed() const;
};

/// Evaluates the localization transfer statements on M: preservation of the
/// P-radical condition under S^{-1} (with its non-degeneracy hypothesis),
/// commutation of localization with the intersection of (P:M) over V(𝒫M),
/// the local-to-global statements at primes and at maximal ideals, and the
/// set-level correspondence of characteristic ideals over V(IM).
TransferReport verify_localization_transfer(const FgModule& m, const std::vector<MultSet>& witnesses,
                                            const Limits& limits = {});

}  // namespace modspec
