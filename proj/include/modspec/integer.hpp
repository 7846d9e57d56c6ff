#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace modspec {

/// Arbitrary precision signed integer used for every ring element, ideal
/// generator and matrix entry.
using Int = boost::multiprecision::cpp_int;

enum class ErrorKind {
  RingMismatch,
  NotInRadical,
  FactorBound,
  CapExceeded,
  UnsupportedModule,
  InvalidArgument,
  CoverPrecondition,
  Parse,
  Violation,
};

/// Library error. `kind()` lets the CLI map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Resource bounds shared by every enumeration routine.
struct Limits {
  std::int64_t cardinality_cap = 4096;  // element enumeration
  std::int64_t bruteforce_cap = 512;    // subgroup enumeration
  std::uint64_t factor_bound = 10'000'000;

  /// Defaults, with MODSPEC_CARD_CAP applied when set.
  static Limits from_env();
};

Int abs(const Int& a);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Floor division and the matching nonnegative-for-positive-divisor remainder.
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

struct ExtendedGcd {
  Int g;  // gcd(a, b) >= 0
  Int x;  // a*x + b*y == g
  Int y;
};
ExtendedGcd extended_gcd(const Int& a, const Int& b);

Int pow(const Int& base, unsigned exponent);
Int pow_mod(const Int& base, const Int& exponent, const Int& modulus);

/// Inverse of a modulo m, when gcd(a, m) == 1. m >= 1.
std::optional<Int> inverse_mod(const Int& a, const Int& m);

/// Removes from a every prime factor shared with f: the largest divisor of
/// |a| coprime to f. a == 0 stays 0.
Int strip_common_primes(const Int& a, const Int& f);

/// The p-primary part of |a| (largest power of p dividing a). a != 0.
Int primary_part(const Int& a, const Int& p);

/// p-adic valuation of a != 0.
unsigned valuation(const Int& a, const Int& p);

/// Prime factorization of |n| >= 1 by trial division. Throws FactorBound
/// when a cofactor cannot be certified prime within `bound`.
std::map<Int, unsigned> factorize(const Int& n, std::uint64_t bound = Limits{}.factor_bound);

std::vector<Int> prime_divisors(const Int& n, std::uint64_t bound = Limits{}.factor_bound);

/// Product of the distinct primes dividing n; rad(0) = 0, rad(1) = 1.
Int radical_of(const Int& n, std::uint64_t bound = Limits{}.factor_bound);

bool is_prime(const Int& n, std::uint64_t bound = Limits{}.factor_bound);

/// All positive divisors of n >= 1, ascending.
std::vector<Int> divisors(const Int& n, std::uint64_t bound = Limits{}.factor_bound);

/// Narrowing conversion that throws CapExceeded when the value does not fit.
std::int64_t to_i64(const Int& v);

std::string to_string(const Int& v);
Int parse_int(const std::string& text);

}  // namespace modspec
