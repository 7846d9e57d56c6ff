#include "modspec/integer.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace modspec {

Limits Limits::from_env() {
  Limits limits;
  if (const char* cap = std::getenv("MODSPEC_CARD_CAP"); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const long long value = std::strtoll(cap, &end, 10);
    if (end == cap || *end != '\0' || value <= 0) {
      throw Error(ErrorKind::InvalidArgument, "MODSPEC_CARD_CAP must be a positive integer");
    }
    limits.cardinality_cap = value;
  }
  return limits;
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd(const Int& a, const Int& b) {
  Int x = abs(a);
  Int y = abs(b);
  while (y != 0) {
    Int r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  Int q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Int pow(const Int& base, unsigned exponent) {
  Int result = 1;
  Int b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

Int pow_mod(const Int& base, const Int& exponent, const Int& modulus) {
  if (modulus == 1) return 0;
  Int result = 1;
  Int b = floor_mod(base, modulus);
  Int e = exponent;
  while (e > 0) {
    if ((e & 1) != 0) result = (result * b) % modulus;
    e >>= 1;
    b = (b * b) % modulus;
  }
  return result;
}

std::optional<Int> inverse_mod(const Int& a, const Int& m) {
  if (m == 1) return Int(0);
  const auto eg = extended_gcd(floor_mod(a, m), m);
  if (eg.g != 1) return std::nullopt;
  return floor_mod(eg.x, m);
}

Int strip_common_primes(const Int& a, const Int& f) {
  Int x = abs(a);
  if (x == 0 || f == 0) return x;
  for (Int g = gcd(x, f); g > 1; g = gcd(x, g)) {
    while (x % g == 0) x /= g;
  }
  return x;
}

Int primary_part(const Int& a, const Int& p) {
  Int x = abs(a);
  Int part = 1;
  while (x != 0 && x % p == 0) {
    x /= p;
    part *= p;
  }
  return part;
}

unsigned valuation(const Int& a, const Int& p) {
  Int x = abs(a);
  unsigned v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

namespace {

void factor_u64(std::uint64_t n, std::uint64_t bound, std::map<Int, unsigned>& out) {
  for (std::uint64_t p = 2; p <= bound && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[Int(p)];
      n /= p;
    }
  }
  if (n > 1) {
    // Every prime <= min(bound, sqrt(n)) was tried; n is prime iff that covers sqrt(n).
    const bool bound_covers = (bound >= 0xFFFFFFFFULL) || (bound + 1) * (bound + 1) > n;
    if (!bound_covers) {
      throw Error(ErrorKind::FactorBound,
                  "cannot factor " + std::to_string(n) + " within trial-division bound");
    }
    ++out[Int(n)];
  }
}

}  // namespace

std::map<Int, unsigned> factorize(const Int& n, std::uint64_t bound) {
  Int x = abs(n);
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "cannot factor zero");
  std::map<Int, unsigned> out;
  if (x <= std::numeric_limits<std::uint64_t>::max()) {
    factor_u64(static_cast<std::uint64_t>(x), bound, out);
    return out;
  }
  // Large values: strip small primes with big-integer division, then finish
  // in 64 bits if possible.
  for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > x) break;
    while (x % p == 0) {
      ++out[Int(p)];
      x /= p;
    }
    if (x <= std::numeric_limits<std::uint64_t>::max()) {
      factor_u64(static_cast<std::uint64_t>(x), bound, out);
      return out;
    }
  }
  if (x > 1) {
    if (Int(bound + 1) * (bound + 1) <= x) {
      throw Error(ErrorKind::FactorBound, "cannot factor " + to_string(n) + " within trial-division bound");
    }
    ++out[x];
  }
  return out;
}

std::vector<Int> prime_divisors(const Int& n, std::uint64_t bound) {
  std::vector<Int> primes;
  for (const auto& [p, e] : factorize(n, bound)) primes.push_back(p);
  return primes;
}

Int radical_of(const Int& n, std::uint64_t bound) {
  if (n == 0) return 0;
  Int r = 1;
  for (const auto& p : prime_divisors(n, bound)) r *= p;
  return r;
}

bool is_prime(const Int& n, std::uint64_t bound) {
  if (n < 2) return false;
  const auto f = factorize(n, bound);
  return f.size() == 1 && f.begin()->second == 1;
}

std::vector<Int> divisors(const Int& n, std::uint64_t bound) {
  std::vector<Int> out{1};
  for (const auto& [p, e] : factorize(n, bound)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::CapExceeded, "value " + to_string(v) + " exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

std::string to_string(const Int& v) { return v.str(); }

Int parse_int(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error(ErrorKind::Parse, "not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw Error(ErrorKind::Parse, "not an integer: '" + text + "'");
  }
  return Int(text);
}

}  // namespace modspec
