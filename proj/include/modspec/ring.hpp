#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "modspec/integer.hpp"

namespace modspec {

/// Which multiplicative set a localized base ring inverts.
struct Locus {
  enum class Kind { PowersOf, ComplementOfPrime };
  Kind kind = Kind::PowersOf;
  Int value = 1;  // f for PowersOf, the prime p (or 0) for ComplementOfPrime

  friend bool operator==(const Locus&, const Locus&) = default;
};

/// Base ring descriptor: Z, Z/n, or a localization Z[1/f], Z_(p), (Z/n)_S.
///
/// Localized rings remember the modulus of the ring they came from
/// (0 for Z). A localization whose multiplicative set contains 0 is the
/// zero ring; its effective modulus is 1.
class RingDesc {
 public:
  enum class Kind { Integers, IntegersMod, IntegersLocalized };

  static RingDesc integers();
  static RingDesc integers_mod(const Int& n);
  static RingDesc localized(const RingDesc& base, const Locus& locus);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// n for Z/n, the source modulus (0 for Z) for localized rings.
  [[nodiscard]] const Int& modulus() const noexcept { return modulus_; }
  [[nodiscard]] const std::optional<Locus>& locus() const noexcept { return locus_; }

  /// Modulus of the ring as a quotient of a localization of Z: 0 for Z-like
  /// domains, n for Z/n, the stripped modulus for (Z/n)_S, 1 for the zero ring.
  [[nodiscard]] Int effective_modulus() const;
  [[nodiscard]] bool is_zero_ring() const { return effective_modulus() == 1; }

  /// True when the rational prime p generates the unit ideal of this ring.
  [[nodiscard]] bool prime_is_unit(const Int& p) const;

  /// Canonical generator of the principal ideal generated by g.
  [[nodiscard]] Int canonical_generator(const Int& g) const;

  /// Canonical residue of a ring element (reduction mod n over Z/n).
  [[nodiscard]] Int reduce(const Int& a) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const RingDesc&, const RingDesc&) = default;

 private:
  Kind kind_ = Kind::Integers;
  Int modulus_ = 0;
  std::optional<Locus> locus_;
};

/// Principal ideal in canonical form. See RingDesc::canonical_generator.
class Ideal {
 public:
  Ideal(RingDesc ring, const Int& generator);

  static Ideal zero(const RingDesc& ring) { return {ring, 0}; }
  static Ideal unit(const RingDesc& ring) { return {ring, 1}; }

  [[nodiscard]] const RingDesc& ring() const noexcept { return ring_; }
  [[nodiscard]] const Int& gen() const noexcept { return gen_; }

  [[nodiscard]] bool is_zero() const { return gen_ == ring_.effective_modulus(); }
  [[nodiscard]] bool is_unit() const { return gen_ == 1; }
  [[nodiscard]] bool contains(const Int& a) const;
  /// this ⊆ other
  [[nodiscard]] bool subset_of(const Ideal& other) const;
  [[nodiscard]] bool is_prime(std::uint64_t bound = Limits{}.factor_bound) const;

  [[nodiscard]] std::string to_string() const { return "(" + modspec::to_string(gen_) + ")"; }

  friend bool operator==(const Ideal&, const Ideal&) = default;

 private:
  RingDesc ring_;
  Int gen_;
};

enum class IdealOp { Sum, Intersect, Product };

Ideal ideal_combine(IdealOp op, const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_intersect(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);

/// √I: product of the distinct primes dividing the generator.
Ideal ideal_radical(const Ideal& ideal, std::uint64_t bound = Limits{}.factor_bound);

/// Smallest n >= 1 with f^n ∈ I, or nullopt when f ∉ √I.
std::optional<unsigned> radical_membership_witness(const Int& f, const Ideal& ideal);

struct BezoutTerm {
  Int r;  // element of ideals[i]
  Int b;  // ring coefficient
};

struct BezoutDecomposition {
  unsigned exponent = 1;
  std::vector<BezoutTerm> terms;
};

/// f^n = Σ r_i b_i with r_i ∈ ideals[i]. Throws NotInRadical when f is not in
/// the radical of the sum of the ideals.
BezoutDecomposition bezout_decompose(const Int& f, const std::vector<Ideal>& ideals);

/// Recomputes f^n - Σ r_i b_i in the ring and checks each r_i ∈ ideals[i].
bool verify_bezout(const Int& f, const std::vector<Ideal>& ideals, const BezoutDecomposition& d);

}  // namespace modspec
