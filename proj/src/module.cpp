#include "modspec/module.hpp"

#include <algorithm>
#include <sstream>

namespace modspec {

namespace {

std::int64_t mod_i64(__int128 a, std::int64_t m) {
  const auto r = static_cast<std::int64_t>(a % m);
  return r < 0 ? r + m : r;
}

void require_presented(const FgModule& m, const char* what) {
  if (m.is_prufer()) throw Error(ErrorKind::UnsupportedModule, std::string(what) + ": Prufer module not supported");
}

}  // namespace

// --- FgModule ---------------------------------------------------------------

FgModule normalize(const RingDesc& ring, std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() != generators) {
    throw Error(ErrorKind::InvalidArgument, "relation matrix must have one row per generator");
  }
  const Int modulus = ring.effective_modulus();
  IntMatrix a(generators, relations.cols() + (modulus > 0 ? generators : 0));
  for (std::size_t i = 0; i < generators; ++i) {
    for (std::size_t j = 0; j < relations.cols(); ++j) a(i, j) = relations(i, j);
    if (modulus > 0) a(i, relations.cols() + i) = modulus;
  }
  const SmithForm snf = smith_normal_form(std::move(a));

  auto data = std::make_shared<FgModule::Data>();
  data->ring = ring;
  data->generators = generators;
  data->relations = relations;
  IntMatrix to_canonical(0, generators);
  std::vector<IntVector> free_rows;
  for (std::size_t i = 0; i < generators; ++i) {
    const Int d = i < snf.diagonal.size() ? snf.diagonal[i] : Int(0);
    if (d == 0) {
      free_rows.push_back(snf.left.row(i));
      continue;
    }
    const Int c = ring.canonical_generator(d);
    if (c == 1) continue;
    data->factors.push_back(c);
    to_canonical.append_row(snf.left.row(i));
  }
  data->free_rank = free_rows.size();
  for (auto& r : free_rows) to_canonical.append_row(std::move(r));
  data->to_canonical = std::move(to_canonical);
  return FgModule(std::move(data));
}

FgModule normalize(const RingDesc& ring, std::size_t generators, const std::vector<IntVector>& relations) {
  IntMatrix cols(generators, relations.size());
  for (std::size_t j = 0; j < relations.size(); ++j) {
    if (relations[j].size() != generators) {
      throw Error(ErrorKind::InvalidArgument, "relation " + std::to_string(j) + " has wrong length");
    }
    for (std::size_t i = 0; i < generators; ++i) cols(i, j) = relations[j][i];
  }
  return normalize(ring, generators, cols);
}

FgModule from_invariants(const RingDesc& ring, const IntVector& factors, std::size_t free_rank) {
  const std::size_t k = factors.size() + free_rank;
  IntMatrix rel(k, factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) rel(i, i) = factors[i];
  return normalize(ring, k, rel);
}

FgModule FgModule::prufer(const Int& p) {
  if (!modspec::is_prime(p)) {
    throw Error(ErrorKind::InvalidArgument, "Prufer group needs a prime, got " + modspec::to_string(p));
  }
  auto data = std::make_shared<Data>();
  data->ring = RingDesc::integers();
  data->kind = Kind::Prufer;
  data->prufer_prime = p;
  return FgModule(std::move(data));
}

FgModule FgModule::zero(const RingDesc& ring) { return normalize(ring, 0, IntMatrix(0, 0)); }

std::optional<Int> FgModule::cardinality() const {
  if (!is_finite()) return std::nullopt;
  Int c = 1;
  for (const auto& e : factors()) c *= e;
  return c;
}

Int FgModule::exponent() const {
  if (!is_finite()) return 0;
  if (factors().empty()) return 1;
  return factors().back();
}

IntVector FgModule::to_canonical(std::span<const Int> original) const {
  require_presented(*this, "to_canonical");
  IntVector v = d_->to_canonical.apply(original);
  for (std::size_t i = 0; i < factors().size(); ++i) v[i] = floor_mod(v[i], factors()[i]);
  return v;
}

std::string FgModule::describe() const {
  std::ostringstream os;
  if (is_prufer()) {
    os << "Z(" << prufer_prime() << "^inf)";
    return os.str();
  }
  if (is_zero()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& e : factors()) {
      os << (first ? "" : " + ") << "R/" << e;
      first = false;
    }
    if (free_rank() > 0) os << (first ? "" : " + ") << "R^" << free_rank();
  }
  os << " over " << ring().to_string();
  return os.str();
}

bool operator==(const FgModule& a, const FgModule& b) {
  if (a.d_ == b.d_) return true;
  return a.ring() == b.ring() && a.kind() == b.kind() && a.prufer_prime() == b.prufer_prime() &&
         a.factors() == b.factors() && a.free_rank() == b.free_rank();
}

// --- ModElement -------------------------------------------------------------

namespace {

void reduce_prufer(const Int& p, IntVector& c) {
  // c = {numerator, p^k}
  c[0] = floor_mod(c[0], c[1]);
  if (c[0] == 0) {
    c[1] = 1;
    return;
  }
  while (c[1] > 1 && c[0] % p == 0) {
    c[0] /= p;
    c[1] /= p;
  }
}

}  // namespace

ModElement::ModElement(FgModule parent, IntVector coords) : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (parent_.is_prufer()) {
    if (coords_.size() != 2 || coords_[1] < 1 || primary_part(coords_[1], parent_.prufer_prime()) != coords_[1]) {
      throw Error(ErrorKind::InvalidArgument, "Prufer element must be {numerator, p^k}");
    }
    reduce_prufer(parent_.prufer_prime(), coords_);
    return;
  }
  if (coords_.size() != parent_.dimension()) {
    throw Error(ErrorKind::InvalidArgument, "element has " + std::to_string(coords_.size()) +
                                                " coordinates, module has " + std::to_string(parent_.dimension()));
  }
  for (std::size_t i = 0; i < parent_.factors().size(); ++i) coords_[i] = floor_mod(coords_[i], parent_.factors()[i]);
}

ModElement ModElement::zero(const FgModule& parent) {
  if (parent.is_prufer()) return {parent, {Int(0), Int(1)}};
  return {parent, IntVector(parent.dimension(), Int(0))};
}

ModElement ModElement::prufer_fraction(const FgModule& parent, const Int& numerator, unsigned k) {
  return {parent, {numerator, pow(parent.prufer_prime(), k)}};
}

bool ModElement::is_zero() const {
  return std::all_of(coords_.begin(), parent_.is_prufer() ? coords_.begin() + 1 : coords_.end(),
                     [](const Int& x) { return x == 0; });
}

ModElement ModElement::operator+(const ModElement& other) const {
  if (!(parent_ == other.parent_)) throw Error(ErrorKind::InvalidArgument, "elements of different modules");
  if (parent_.is_prufer()) {
    const Int den = std::max(coords_[1], other.coords_[1]);
    return {parent_, {coords_[0] * (den / coords_[1]) + other.coords_[0] * (den / other.coords_[1]), den}};
  }
  IntVector c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return {parent_, std::move(c)};
}

ModElement ModElement::operator-(const ModElement& other) const { return *this + other.scaled(-1); }

ModElement ModElement::scaled(const Int& a) const {
  IntVector c = coords_;
  if (parent_.is_prufer()) {
    c[0] *= a;
  } else {
    const Int r = parent_.ring().reduce(a);
    for (auto& x : c) x *= r;
  }
  return {parent_, std::move(c)};
}

// --- Submodule --------------------------------------------------------------

IntMatrix relation_lattice(const FgModule& m) {
  require_presented(m, "relation_lattice");
  IntMatrix rel(0, m.dimension());
  for (std::size_t i = 0; i < m.factors().size(); ++i) {
    IntVector row(m.dimension(), Int(0));
    row[i] = m.factors()[i];
    rel.append_row(std::move(row));
  }
  return rel;
}

Submodule Submodule::from_rows(const FgModule& parent, const IntMatrix& rows) {
  require_presented(parent, "submodule");
  if (rows.cols() != parent.dimension()) throw Error(ErrorKind::InvalidArgument, "generator dimension mismatch");
  return {parent, lattice_sum(rows, relation_lattice(parent)), Symbolic::None};
}

Submodule Submodule::zero(const FgModule& parent) {
  if (parent.is_prufer()) return {parent, IntMatrix(), Symbolic::Zero};
  return {parent, hermite_normal_form(relation_lattice(parent)), Symbolic::None};
}

Submodule Submodule::full(const FgModule& parent) {
  if (parent.is_prufer()) return {parent, IntMatrix(), Symbolic::Full};
  return {parent, IntMatrix::identity(parent.dimension()), Symbolic::None};
}

bool Submodule::is_full() const {
  if (symbolic_ != Symbolic::None) return symbolic_ == Symbolic::Full;
  return basis_ == IntMatrix::identity(parent_.dimension());
}

bool Submodule::is_zero() const {
  if (symbolic_ != Symbolic::None) return symbolic_ == Symbolic::Zero;
  return basis_ == hermite_normal_form(relation_lattice(parent_));
}

bool Submodule::contains(const ModElement& m) const {
  if (symbolic_ != Symbolic::None) return symbolic_ == Symbolic::Full || m.is_zero();
  return lattice_contains(basis_, m.coords());
}

bool Submodule::contains(const Submodule& other) const {
  if (symbolic_ != Symbolic::None || other.symbolic_ != Symbolic::None) {
    return is_full() || other.is_zero();
  }
  return std::all_of(other.basis_.row_list().begin(), other.basis_.row_list().end(),
                     [&](const IntVector& r) { return lattice_contains(basis_, r); });
}

std::vector<ModElement> Submodule::generators() const {
  std::vector<ModElement> out;
  if (symbolic_ != Symbolic::None) return out;
  for (const auto& r : basis_.row_list()) {
    ModElement e(parent_, r);
    if (!e.is_zero()) out.push_back(std::move(e));
  }
  return out;
}

std::string Submodule::describe() const {
  if (symbolic_ == Symbolic::Zero) return "0";
  if (symbolic_ == Symbolic::Full) return "M";
  std::ostringstream os;
  os << "<";
  bool first = true;
  for (const auto& g : generators()) {
    os << (first ? "" : "; ");
    for (std::size_t i = 0; i < g.coords().size(); ++i) os << (i ? "," : "") << g.coords()[i];
    first = false;
  }
  os << ">";
  return os.str();
}

Submodule submodule_from_generators(const FgModule& m, const std::vector<ModElement>& gens) {
  require_presented(m, "submodule_from_generators");
  IntMatrix rows(0, m.dimension());
  for (const auto& g : gens) {
    if (!(g.parent() == m)) throw Error(ErrorKind::InvalidArgument, "generator does not belong to the module");
    rows.append_row(g.coords());
  }
  return Submodule::from_rows(m, rows);
}

Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  if (!(a.parent() == b.parent())) throw Error(ErrorKind::InvalidArgument, "submodules of different modules");
  if (a.parent().is_prufer()) return (a.is_full() || b.is_full()) ? Submodule::full(a.parent()) : a;
  return Submodule::from_rows(a.parent(), lattice_sum(a.basis(), b.basis()));
}

Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
  if (!(a.parent() == b.parent())) throw Error(ErrorKind::InvalidArgument, "submodules of different modules");
  if (a.parent().is_prufer()) return (a.is_full() && b.is_full()) ? a : Submodule::zero(a.parent());
  return Submodule::from_rows(a.parent(), lattice_intersection(a.basis(), b.basis()));
}

FgModule quotient(const Submodule& n) {
  const FgModule& m = n.parent();
  if (m.is_prufer()) return n.is_full() ? FgModule::zero(m.ring()) : m;
  return normalize(m.ring(), m.dimension(), n.basis().transposed());
}

Ideal colon(const Submodule& n, const FgModule& m) {
  if (!(n.parent() == m)) throw Error(ErrorKind::InvalidArgument, "colon: N is not a submodule of M");
  if (m.is_prufer()) return n.is_full() ? Ideal::unit(m.ring()) : Ideal::zero(m.ring());
  return {m.ring(), quotient(n).exponent()};
}

Ideal annihilator(const FgModule& m) {
  if (m.is_prufer()) return Ideal::zero(m.ring());
  return {m.ring(), m.exponent()};
}

Submodule scalar_multiple_submodule(const Int& f, const FgModule& m) {
  const Int r = m.ring().reduce(f);
  if (m.is_prufer()) return r != 0 ? Submodule::full(m) : Submodule::zero(m);
  IntMatrix rows(0, m.dimension());
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    IntVector row(m.dimension(), Int(0));
    row[i] = r;
    rows.append_row(std::move(row));
  }
  return Submodule::from_rows(m, rows);
}

Submodule ideal_times_module(const Ideal& i, const FgModule& m) {
  if (!(i.ring() == m.ring())) throw Error(ErrorKind::RingMismatch, "ideal and module over different rings");
  return scalar_multiple_submodule(i.gen(), m);
}

FgModule direct_sum(const FgModule& a, const FgModule& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "direct_sum over different rings");
  require_presented(a, "direct_sum");
  require_presented(b, "direct_sum");
  // Block presentation on the canonical generators of both summands.
  const std::size_t k = a.dimension() + b.dimension();
  IntMatrix rel(k, a.factors().size() + b.factors().size());
  std::size_t col = 0;
  for (std::size_t i = 0; i < a.factors().size(); ++i) rel(i, col++) = a.factors()[i];
  for (std::size_t i = 0; i < b.factors().size(); ++i) rel(a.dimension() + i, col++) = b.factors()[i];
  return normalize(a.ring(), k, rel);
}

bool iso_class_equal(const FgModule& a, const FgModule& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorKind::RingMismatch, "iso_class_equal: " + a.ring().to_string() + " vs " + b.ring().to_string());
  }
  return a.kind() == b.kind() && a.prufer_prime() == b.prufer_prime() && a.factors() == b.factors() &&
         a.free_rank() == b.free_rank();
}

Int submodule_cardinality(const Submodule& n) {
  const auto total = n.parent().cardinality();
  if (!total) throw Error(ErrorKind::UnsupportedModule, "submodule_cardinality needs a finite module");
  return *total / *quotient(n).cardinality();
}

// --- ElementIndexer ---------------------------------------------------------

ElementIndexer::ElementIndexer(const FgModule& m, std::int64_t cap) : module_(m) {
  if (!m.is_finite()) throw Error(ErrorKind::UnsupportedModule, "cannot enumerate an infinite module");
  const Int card = *m.cardinality();
  if (card > cap) {
    throw Error(ErrorKind::CapExceeded,
                "module of cardinality " + modspec::to_string(card) + " exceeds cap " + std::to_string(cap));
  }
  for (const auto& e : m.factors()) radices_.push_back(to_i64(e));
  size_ = to_i64(card);
}

std::vector<std::int64_t> ElementIndexer::coords(std::int64_t index) const {
  std::vector<std::int64_t> c(radices_.size());
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    c[i] = index % radices_[i];
    index /= radices_[i];
  }
  return c;
}

std::int64_t ElementIndexer::index_of(std::span<const std::int64_t> coords) const {
  std::int64_t idx = 0;
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    idx += mod_i64(coords[i], radices_[i]) * stride;
    stride *= radices_[i];
  }
  return idx;
}

// Digit-wise arithmetic on the mixed-radix index, without decoding into a vector.

std::int64_t ElementIndexer::add(std::int64_t a, std::int64_t b) const {
  std::int64_t idx = 0;
  std::int64_t stride = 1;
  for (const auto r : radices_) {
    std::int64_t d = a % r + b % r;
    if (d >= r) d -= r;
    a /= r;
    b /= r;
    idx += d * stride;
    stride *= r;
  }
  return idx;
}

std::int64_t ElementIndexer::negate(std::int64_t a) const {
  std::int64_t idx = 0;
  std::int64_t stride = 1;
  for (const auto r : radices_) {
    const std::int64_t d = a % r;
    a /= r;
    idx += (d == 0 ? 0 : r - d) * stride;
    stride *= r;
  }
  return idx;
}

std::int64_t ElementIndexer::scale(std::int64_t a, std::int64_t factor) const {
  std::int64_t idx = 0;
  std::int64_t stride = 1;
  for (const auto r : radices_) {
    const std::int64_t d = a % r;
    a /= r;
    const std::int64_t f = mod_i64(factor, r);
    const std::int64_t v = r < (std::int64_t{1} << 31) ? d * f % r
                                                       : static_cast<std::int64_t>(static_cast<__int128>(d) * f % r);
    idx += v * stride;
    stride *= r;
  }
  return idx;
}

std::int64_t ElementIndexer::unit(std::size_t coordinate) const {
  std::vector<std::int64_t> c(radices_.size(), 0);
  c.at(coordinate) = 1;
  return index_of(c);
}

ModElement ElementIndexer::element(std::int64_t index) const {
  const auto c = coords(index);
  return {module_, IntVector(c.begin(), c.end())};
}

std::int64_t ElementIndexer::index(const ModElement& e) const {
  if (!(e.parent() == module_)) throw Error(ErrorKind::InvalidArgument, "element of a different module");
  std::vector<std::int64_t> c;
  for (const auto& x : e.coords()) c.push_back(to_i64(x));
  return index_of(c);
}

std::vector<char> ElementIndexer::extend(std::vector<char> subgroup, std::int64_t g) const {
  std::vector<std::int64_t> members;
  for (std::int64_t i = 0; i < size_; ++i) {
    if (subgroup[static_cast<std::size_t>(i)]) members.push_back(i);
  }
  // Cosets H + k·g until k·g falls into what has been built so far.
  for (std::int64_t kg = g; !subgroup[static_cast<std::size_t>(kg)]; kg = add(kg, g)) {
    for (const auto h : members) subgroup[static_cast<std::size_t>(add(h, kg))] = 1;
  }
  return subgroup;
}

std::vector<char> ElementIndexer::mask(const Submodule& n) const {
  if (!(n.parent() == module_)) throw Error(ErrorKind::InvalidArgument, "submodule of a different module");
  std::vector<char> m(static_cast<std::size_t>(size_), 0);
  m[0] = 1;
  for (const auto& g : n.generators()) m = extend(std::move(m), index(g));
  return m;
}

Submodule ElementIndexer::submodule_from_mask(const std::vector<char>& subgroup) const {
  std::vector<char> span(static_cast<std::size_t>(size_), 0);
  span[0] = 1;
  std::vector<ModElement> gens;
  for (std::int64_t i = 0; i < size_; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (subgroup[u] && !span[u]) {
      gens.push_back(element(i));
      span = extend(std::move(span), i);
    }
  }
  if (span != subgroup) throw Error(ErrorKind::InvalidArgument, "mask is not a subgroup");
  return submodule_from_generators(module_, gens);
}

}  // namespace modspec
