#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modspec/matrix.hpp"
#include "modspec/ring.hpp"

namespace modspec {

/// A finitely generated module over Z, Z/n or a localization of them, held
/// in invariant-factor normal form
///
///     M ≅ R/(e_1) ⊕ … ⊕ R/(e_t) ⊕ R^r,   e_1 | e_2 | … | e_t, e_i non-units,
///
/// or the Prüfer group Z(p^∞) as a special symbolic kind. Canonical
/// coordinates are the t torsion coordinates followed by the r free ones.
///
/// FgModule is an immutable value; copies share their data.
class FgModule {
 public:
  enum class Kind { Presented, Prufer };

  static FgModule prufer(const Int& p);
  static FgModule zero(const RingDesc& ring);

  [[nodiscard]] const RingDesc& ring() const noexcept { return d_->ring; }
  [[nodiscard]] Kind kind() const noexcept { return d_->kind; }
  [[nodiscard]] bool is_prufer() const noexcept { return d_->kind == Kind::Prufer; }
  [[nodiscard]] const Int& prufer_prime() const noexcept { return d_->prufer_prime; }

  [[nodiscard]] const IntVector& factors() const noexcept { return d_->factors; }
  [[nodiscard]] std::size_t free_rank() const noexcept { return d_->free_rank; }
  /// Number of canonical coordinates (t + r).
  [[nodiscard]] std::size_t dimension() const noexcept { return d_->factors.size() + d_->free_rank; }

  [[nodiscard]] bool is_zero() const noexcept { return !is_prufer() && dimension() == 0; }
  [[nodiscard]] bool is_finite() const noexcept { return !is_prufer() && d_->free_rank == 0; }
  /// Π e_i for finite modules, nullopt when infinite.
  [[nodiscard]] std::optional<Int> cardinality() const;
  /// Generator of Ann(M) as an integer: e_t, 1 for the zero module, 0 when infinite.
  [[nodiscard]] Int exponent() const;

  /// Original presentation (k generators, relation columns).
  [[nodiscard]] std::size_t presentation_generators() const noexcept { return d_->generators; }
  [[nodiscard]] const IntMatrix& presentation_relations() const noexcept { return d_->relations; }
  /// Image of a vector of original generator coefficients in canonical coordinates.
  [[nodiscard]] IntVector to_canonical(std::span<const Int> original) const;

  [[nodiscard]] std::string describe() const;

  /// Equality of canonical data (ring, kind, invariant factors, free rank);
  /// the presentation a module was built from is not compared.
  friend bool operator==(const FgModule& a, const FgModule& b);

 private:
  friend FgModule normalize(const RingDesc&, std::size_t, const IntMatrix&);
  struct Data {
    RingDesc ring;
    Kind kind = Kind::Presented;
    Int prufer_prime = 0;
    IntVector factors;
    std::size_t free_rank = 0;
    std::size_t generators = 0;
    IntMatrix relations;
    IntMatrix to_canonical;  // dimension() x generators
  };
  explicit FgModule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Smith normal form of a presentation. `relations` has one row per
/// generator and one column per relation; over Z/n the relations n·e_i are
/// implied.
FgModule normalize(const RingDesc& ring, std::size_t generators, const IntMatrix& relations);
/// Same, with relations given as a list of coefficient vectors.
FgModule normalize(const RingDesc& ring, std::size_t generators, const std::vector<IntVector>& relations);
/// R/(e_1) ⊕ … ⊕ R^r from (not necessarily chained) factors.
FgModule from_invariants(const RingDesc& ring, const IntVector& factors, std::size_t free_rank = 0);

/// An element in canonical coordinates (torsion entries reduced mod e_i).
/// Prüfer elements are fractions a/p^k mod 1 stored as {a, p^k}.
class ModElement {
 public:
  ModElement(FgModule parent, IntVector coords);
  static ModElement zero(const FgModule& parent);
  static ModElement prufer_fraction(const FgModule& parent, const Int& numerator, unsigned k);

  [[nodiscard]] const FgModule& parent() const noexcept { return parent_; }
  [[nodiscard]] const IntVector& coords() const noexcept { return coords_; }
  [[nodiscard]] bool is_zero() const;

  [[nodiscard]] ModElement operator+(const ModElement& other) const;
  [[nodiscard]] ModElement operator-(const ModElement& other) const;
  [[nodiscard]] ModElement scaled(const Int& a) const;

  friend bool operator==(const ModElement& a, const ModElement& b) { return a.coords_ == b.coords_; }

 private:
  FgModule parent_;
  IntVector coords_;
};

/// Submodule N ≤ M stored as the HNF basis of its preimage lattice in
/// Z^dimension (the relation lattice of M is always included). Prüfer
/// parents only admit the symbolic submodules 0 and M.
class Submodule {
 public:
  static Submodule from_rows(const FgModule& parent, const IntMatrix& rows);
  static Submodule zero(const FgModule& parent);
  static Submodule full(const FgModule& parent);

  [[nodiscard]] const FgModule& parent() const noexcept { return parent_; }
  [[nodiscard]] const IntMatrix& basis() const noexcept { return basis_; }
  [[nodiscard]] bool is_full() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool contains(const ModElement& m) const;
  /// other ⊆ this
  [[nodiscard]] bool contains(const Submodule& other) const;
  /// Basis rows as (reduced) elements of the parent.
  [[nodiscard]] std::vector<ModElement> generators() const;
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.symbolic_ == b.symbolic_ && a.basis_ == b.basis_;
  }
  friend auto operator<=>(const Submodule& a, const Submodule& b) {
    if (auto c = a.symbolic_ <=> b.symbolic_; c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  enum class Symbolic { None, Zero, Full };
  Submodule(FgModule parent, IntMatrix basis, Symbolic s)
      : parent_(std::move(parent)), basis_(std::move(basis)), symbolic_(s) {}
  FgModule parent_;
  IntMatrix basis_;
  Symbolic symbolic_ = Symbolic::None;
};

/// Relation lattice of M (rows e_i·u_i) in canonical coordinates.
IntMatrix relation_lattice(const FgModule& m);

Submodule submodule_from_generators(const FgModule& m, const std::vector<ModElement>& gens);
Submodule submodule_sum(const Submodule& a, const Submodule& b);
Submodule submodule_intersection(const Submodule& a, const Submodule& b);

/// M/N as a module over the same ring.
FgModule quotient(const Submodule& n);

/// (N:M) = Ann(M/N).
Ideal colon(const Submodule& n, const FgModule& m);
/// (0:M).
Ideal annihilator(const FgModule& m);

/// fM. For Prüfer modules: M when f != 0, 0 when f == 0.
Submodule scalar_multiple_submodule(const Int& f, const FgModule& m);
/// I·M for a principal ideal I.
Submodule ideal_times_module(const Ideal& i, const FgModule& m);

FgModule direct_sum(const FgModule& a, const FgModule& b);

/// Complete isomorphism invariant for representable modules over one ring.
bool iso_class_equal(const FgModule& a, const FgModule& b);

/// |N| for a submodule of a finite module.
Int submodule_cardinality(const Submodule& n);

/// Dense indexing of the elements of a finite module, with 64-bit
/// arithmetic. Used by every enumeration-based routine.
class ElementIndexer {
 public:
  ElementIndexer(const FgModule& m, std::int64_t cap);

  [[nodiscard]] const FgModule& module() const noexcept { return module_; }
  [[nodiscard]] std::int64_t size() const noexcept { return size_; }
  [[nodiscard]] const std::vector<std::int64_t>& radices() const noexcept { return radices_; }

  [[nodiscard]] std::vector<std::int64_t> coords(std::int64_t index) const;
  [[nodiscard]] std::int64_t index_of(std::span<const std::int64_t> coords) const;
  [[nodiscard]] std::int64_t add(std::int64_t a, std::int64_t b) const;
  [[nodiscard]] std::int64_t negate(std::int64_t a) const;
  [[nodiscard]] std::int64_t scale(std::int64_t a, std::int64_t factor) const;
  [[nodiscard]] std::int64_t unit(std::size_t coordinate) const;

  [[nodiscard]] ModElement element(std::int64_t index) const;
  [[nodiscard]] std::int64_t index(const ModElement& e) const;

  /// Membership mask of a submodule over all element indices.
  [[nodiscard]] std::vector<char> mask(const Submodule& n) const;
  /// Closure of mask ∪ {g} under addition (mask must be a subgroup).
  [[nodiscard]] std::vector<char> extend(std::vector<char> subgroup, std::int64_t g) const;
  /// Canonical submodule whose element set is the given subgroup mask.
  [[nodiscard]] Submodule submodule_from_mask(const std::vector<char>& subgroup) const;

 private:
  FgModule module_;
  std::vector<std::int64_t> radices_;
  std::int64_t size_ = 1;
};

}  // namespace modspec
