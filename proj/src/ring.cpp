#include "modspec/ring.hpp"

#include <algorithm>

namespace modspec {

namespace {

bool divides(const Int& d, const Int& a) { return d == 0 ? a == 0 : a % d == 0; }

}  // namespace

RingDesc RingDesc::integers() { return RingDesc{}; }

RingDesc RingDesc::integers_mod(const Int& n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "Z/n requires n >= 2, got " + modspec::to_string(n));
  RingDesc r;
  r.kind_ = Kind::IntegersMod;
  r.modulus_ = n;
  return r;
}

RingDesc RingDesc::localized(const RingDesc& base, const Locus& locus) {
  if (base.kind_ == Kind::IntegersLocalized) {
    throw Error(ErrorKind::InvalidArgument, "iterated localization descriptors are not supported");
  }
  RingDesc r;
  r.kind_ = Kind::IntegersLocalized;
  r.modulus_ = base.modulus_;
  Locus l = locus;
  if (l.kind == Locus::Kind::PowersOf) {
    l.value = base.reduce(l.value);
  } else if (l.value < 0 || (l.value != 0 && !modspec::is_prime(l.value))) {
    throw Error(ErrorKind::InvalidArgument, "localization needs a prime or 0, got " + modspec::to_string(l.value));
  } else if (base.kind_ == Kind::IntegersMod && (l.value == 0 || base.modulus_ % l.value != 0)) {
    throw Error(ErrorKind::InvalidArgument,
                "(" + modspec::to_string(l.value) + ") is not a prime ideal of " + base.to_string());
  }
  r.locus_ = l;
  return r;
}

Int RingDesc::effective_modulus() const {
  switch (kind_) {
    case Kind::Integers:
      return 0;
    case Kind::IntegersMod:
      return modulus_;
    case Kind::IntegersLocalized:
      break;
  }
  const Locus& l = *locus_;
  if (l.kind == Locus::Kind::PowersOf) {
    if (modulus_ == 0) return l.value == 0 ? Int(1) : Int(0);
    if (floor_mod(l.value, modulus_) == 0) return 1;
    return strip_common_primes(modulus_, l.value);
  }
  if (modulus_ == 0) return 0;
  return primary_part(modulus_, l.value);
}

bool RingDesc::prime_is_unit(const Int& p) const {
  switch (kind_) {
    case Kind::Integers:
      return false;
    case Kind::IntegersMod:
      return modulus_ % p != 0;
    case Kind::IntegersLocalized:
      break;
  }
  const Int m = effective_modulus();
  if (m == 1) return true;
  if (m != 0 && m % p != 0) return true;
  const Locus& l = *locus_;
  if (l.kind == Locus::Kind::PowersOf) return l.value % p == 0;
  return l.value != p;
}

Int RingDesc::canonical_generator(const Int& g) const {
  const Int m = effective_modulus();
  if (m == 1) return 1;
  Int x = modspec::abs(g);
  if (kind_ == Kind::IntegersLocalized && x != 0) {
    const Locus& l = *locus_;
    if (l.kind == Locus::Kind::PowersOf) {
      x = strip_common_primes(x, l.value);
    } else {
      x = l.value == 0 ? Int(1) : primary_part(x, l.value);
    }
  }
  if (m == 0) return x;
  return gcd(x, m);
}

Int RingDesc::reduce(const Int& a) const {
  const Int m = effective_modulus();
  if (m == 0) return a;
  return floor_mod(a, m);
}

std::string RingDesc::to_string() const {
  switch (kind_) {
    case Kind::Integers:
      return "Z";
    case Kind::IntegersMod:
      return "Z/" + modspec::to_string(modulus_);
    case Kind::IntegersLocalized:
      break;
  }
  const std::string base = modulus_ == 0 ? "Z" : "Z/" + modspec::to_string(modulus_);
  const Locus& l = *locus_;
  if (l.kind == Locus::Kind::PowersOf) return base + "[1/" + modspec::to_string(l.value) + "]";
  return base + "_(" + modspec::to_string(l.value) + ")";
}

Ideal::Ideal(RingDesc ring, const Int& generator)
    : ring_(std::move(ring)), gen_(ring_.canonical_generator(generator)) {}

bool Ideal::contains(const Int& a) const { return divides(gen_, ring_.canonical_generator(a)); }

bool Ideal::subset_of(const Ideal& other) const {
  if (!(ring_ == other.ring_)) throw Error(ErrorKind::RingMismatch, "ideals over different rings");
  return divides(other.gen_, gen_);
}

bool Ideal::is_prime(std::uint64_t bound) const {
  if (ring_.is_zero_ring() || gen_ == 1) return false;
  if (gen_ == 0) return true;  // only reachable in domains
  return modspec::is_prime(gen_, bound);
}

Ideal ideal_combine(IdealOp op, const Ideal& a, const Ideal& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorKind::RingMismatch, "ideal_combine: " + a.ring().to_string() + " vs " + b.ring().to_string());
  }
  switch (op) {
    case IdealOp::Sum:
      return {a.ring(), gcd(a.gen(), b.gen())};
    case IdealOp::Intersect:
      return {a.ring(), lcm(a.gen(), b.gen())};
    case IdealOp::Product:
      return {a.ring(), a.gen() * b.gen()};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown ideal operation");
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) { return ideal_combine(IdealOp::Sum, a, b); }
Ideal ideal_intersect(const Ideal& a, const Ideal& b) { return ideal_combine(IdealOp::Intersect, a, b); }
Ideal ideal_product(const Ideal& a, const Ideal& b) { return ideal_combine(IdealOp::Product, a, b); }

Ideal ideal_radical(const Ideal& ideal, std::uint64_t bound) {
  if (ideal.gen() == 0) return ideal;
  return {ideal.ring(), radical_of(ideal.gen(), bound)};
}

std::optional<unsigned> radical_membership_witness(const Int& f, const Ideal& ideal) {
  const RingDesc& ring = ideal.ring();
  const Int m = ring.effective_modulus();
  const Int c = ring.canonical_generator(f);
  if (c == m) return 1U;  // f is zero in the ring
  const Int& g = ideal.gen();
  if (g == 0) return std::nullopt;  // zero ideal of a domain, f != 0
  unsigned n = 1;
  for (const auto& [p, a] : factorize(g)) {
    const unsigned v = valuation(c, p);
    if (v == 0) return std::nullopt;
    n = std::max(n, (a + v - 1) / v);
  }
  return n;
}

BezoutDecomposition bezout_decompose(const Int& f, const std::vector<Ideal>& ideals) {
  if (ideals.empty()) throw Error(ErrorKind::InvalidArgument, "bezout_decompose needs at least one ideal");
  const RingDesc& ring = ideals.front().ring();
  if (ring.kind() == RingDesc::Kind::IntegersLocalized) {
    throw Error(ErrorKind::UnsupportedModule, "bezout_decompose works over Z and Z/n only");
  }
  Ideal total = ideals.front();
  for (std::size_t i = 1; i < ideals.size(); ++i) total = ideal_sum(total, ideals[i]);
  const auto witness = radical_membership_witness(f, total);
  if (!witness) {
    throw Error(ErrorKind::NotInRadical,
                modspec::to_string(f) + " is not in the radical of " + total.to_string());
  }

  // Iterated extended gcd: Σ u_i g_i = acc.
  std::vector<Int> coeffs{1};
  Int acc = ideals.front().gen();
  for (std::size_t i = 1; i < ideals.size(); ++i) {
    const auto eg = extended_gcd(acc, ideals[i].gen());
    for (auto& u : coeffs) u *= eg.x;
    coeffs.push_back(eg.y);
    acc = eg.g;
  }

  BezoutDecomposition out;
  out.exponent = *witness;
  const Int target = ring.reduce(pow(f, out.exponent));
  const Int q = acc == 0 ? Int(0) : target / acc;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    out.terms.push_back({ideals[i].gen(), ring.reduce(coeffs[i] * q)});
  }
  return out;
}

bool verify_bezout(const Int& f, const std::vector<Ideal>& ideals, const BezoutDecomposition& d) {
  if (d.terms.size() != ideals.size() || d.exponent == 0) return false;
  const RingDesc& ring = ideals.front().ring();
  Int sum = 0;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (!ideals[i].contains(d.terms[i].r)) return false;
    sum += d.terms[i].r * d.terms[i].b;
  }
  return ring.reduce(sum - pow(f, d.exponent)) == 0;
}

}  // namespace modspec
