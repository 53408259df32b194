#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weaklat {

// Arbitrary-precision integer. Values used as elements of omega are kept
// non-negative by the types that hold them; signed values appear only for
// shift amounts and sigma classes.
using Nat = boost::multiprecision::cpp_int;

inline bool fits_u64(const Nat& x) {
  return x >= 0 && x <= std::numeric_limits<std::uint64_t>::max();
}

inline std::uint64_t to_u64(const Nat& x) { return x.convert_to<std::uint64_t>(); }

// 0! .. 20!, the factorials that fit in 64 bits.
inline constexpr std::uint64_t kFact64[21] = {
    1ull,
    1ull,
    2ull,
    6ull,
    24ull,
    120ull,
    720ull,
    5040ull,
    40320ull,
    362880ull,
    3628800ull,
    39916800ull,
    479001600ull,
    6227020800ull,
    87178291200ull,
    1307674368000ull,
    20922789888000ull,
    355687428096000ull,
    6402373705728000ull,
    121645100408832000ull,
    2432902008176640000ull};

inline Nat factorial(std::uint64_t n) {
  if (n <= 20) return Nat(kFact64[n]);
  Nat f(kFact64[20]);
  for (std::uint64_t i = 21; i <= n; ++i) f *= i;
  return f;
}

inline Nat gcd(const Nat& a, const Nat& b) { return boost::multiprecision::gcd(a, b); }
inline Nat lcm(const Nat& a, const Nat& b) { return boost::multiprecision::lcm(a, b); }

// Least non-negative residue; the % operator follows the sign of the dividend.
inline Nat mod_floor(const Nat& a, const Nat& m) {
  Nat r = a % m;
  if (r < 0) r += m;
  return r;
}

// Extended Euclid: returns g = gcd(a,b) and x with a*x == g (mod b), a,b > 0.
inline Nat mod_inverse(const Nat& a, const Nat& m) {
  Nat old_r = mod_floor(a, m), r = m;
  Nat old_s = 1, s = 0;
  while (r != 0) {
    Nat q = old_r / r;
    Nat t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("mod_inverse: arguments not coprime");
  return mod_floor(old_s, m);
}

// Least x >= lo with x == a (mod m) and x == b (mod n), if the congruences
// are compatible.
struct CrtSolution {
  bool solvable = false;
  Nat value;    // least non-negative solution
  Nat modulus;  // lcm(m, n)
};

inline CrtSolution crt(const Nat& a, const Nat& m, const Nat& b, const Nat& n) {
  Nat g = gcd(m, n);
  Nat am = mod_floor(a, m), bn = mod_floor(b, n);
  if (mod_floor(am - bn, g) != 0) return {};
  Nat l = m / g * n;
  Nat diff = bn - am;
  Nat t = mod_floor(diff / g * mod_inverse(m / g, n / g), n / g);
  CrtSolution out;
  out.solvable = true;
  out.value = mod_floor(am + m * t, l);
  out.modulus = l;
  return out;
}

// Least value >= lo in the class {value + modulus * i}.
inline Nat class_ceil(const Nat& value, const Nat& modulus, const Nat& lo) {
  if (value >= lo) return value;
  Nat d = lo - value;
  Nat k = (d + modulus - 1) / modulus;
  return value + k * modulus;
}

namespace detail {

inline Nat mulmod(const Nat& a, const Nat& b, const Nat& m) { return a * b % m; }

inline bool miller_rabin_round(const Nat& n, const Nat& a, const Nat& d, unsigned r) {
  Nat x = boost::multiprecision::powm(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool is_prime(const Nat& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Nat d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (!miller_rabin_round(n, Nat(a), d, r)) return false;
  }
  return true;
}

inline Nat pollard_rho(const Nat& n) {
  if (n % 2 == 0) return 2;
  for (Nat c = 1;; ++c) {
    Nat x = 2, y = 2, d = 1;
    auto f = [&](const Nat& v) { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(x >= y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Nat n, std::vector<std::pair<Nat, unsigned>>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    for (auto& pe : out) {
      if (pe.first == n) {
        ++pe.second;
        return;
      }
    }
    out.emplace_back(n, 1u);
    return;
  }
  for (std::uint32_t p = 2; p < 100000u && Nat(p) * p <= n; p == 2 ? p = 3 : p += 2) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(Nat(p), e);
      if (n == 1) return;
      factor_into(std::move(n), out);
      return;
    }
  }
  Nat d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

inline std::vector<std::pair<Nat, unsigned>> factorize(const Nat& n) {
  std::vector<std::pair<Nat, unsigned>> out;
  detail::factor_into(n, out);
  return out;
}

// All divisors of n in ascending order; throws if there are more than cap.
inline std::vector<Nat> divisors_ascending(const Nat& n, std::size_t cap = 4096) {
  auto fac = factorize(n);
  std::vector<Nat> divs{Nat(1)};
  for (const auto& [p, e] : fac) {
    std::size_t sz = divs.size();
    Nat pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) {
        divs.push_back(divs[j] * pk);
        if (divs.size() > cap) throw std::length_error("divisor count exceeds cap");
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline std::string to_string(const Nat& x) { return x.str(); }

}  // namespace weaklat
