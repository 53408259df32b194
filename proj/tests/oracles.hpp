#pragma once

// Brute-force reference implementations used only by the tests. They trade
// all efficiency for obviousness: plain enumeration, no canonical forms, no
// periodicity shortcuts beyond the one soundness horizon argument documented
// at oracle_relate. Frozen expected values in the test files were produced
// by these.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"

namespace weaklat::oracle {

inline bool raw_member(const std::vector<Progression>& progs, const std::vector<Nat>& inc,
                       const std::vector<Nat>& exc, const Nat& x) {
  for (const Nat& e : exc) {
    if (e == x) return false;
  }
  for (const Nat& i : inc) {
    if (i == x) return true;
  }
  for (const Progression& p : progs) {
    if (x >= p.start && (x - p.start) % p.step == 0) return true;
  }
  return false;
}

struct RawSet {
  std::vector<Progression> progs;
  std::vector<Nat> inc, exc;

  bool member(const Nat& x) const { return raw_member(progs, inc, exc, x); }

  static RawSet of(const OmegaSet& s) {
    return RawSet{s.progressions(), s.includes(), s.excludes()};
  }
};

inline std::vector<Nat> members_upto(const RawSet& s, std::uint64_t bound) {
  std::vector<Nat> out;
  for (std::uint64_t x = 0; x <= bound; ++x) {
    if (s.member(Nat(x))) out.push_back(Nat(x));
  }
  return out;
}

// Exact relation oracle. Above H = 1 + (largest start or correction point),
// membership in either set depends only on the residue mod L = lcm of all
// steps, so each of the three regions (left only, right only, both) is
// infinite iff it meets [H, H + L). The finite lists live below H.
struct RelateOracle {
  bool left_minus_right_infinite, right_minus_left_infinite, intersection_infinite;
  std::vector<Nat> left_minus_right, right_minus_left, intersection;
};

inline RelateOracle relate(const RawSet& a, const RawSet& b) {
  Nat h = 1;
  Nat l = 1;
  for (const RawSet* s : {&a, &b}) {
    for (const Progression& p : s->progs) {
      if (p.start + 1 > h) h = p.start + 1;
      l = lcm(l, p.step);
    }
    for (const Nat& x : s->inc) {
      if (x + 1 > h) h = x + 1;
    }
    for (const Nat& x : s->exc) {
      if (x + 1 > h) h = x + 1;
    }
  }
  RelateOracle out{false, false, false, {}, {}, {}};
  for (Nat x = h; x < h + l; ++x) {
    bool ma = a.member(x), mb = b.member(x);
    if (ma && !mb) out.left_minus_right_infinite = true;
    if (mb && !ma) out.right_minus_left_infinite = true;
    if (ma && mb) out.intersection_infinite = true;
  }
  for (Nat x = 0; x < h; ++x) {
    bool ma = a.member(x), mb = b.member(x);
    if (ma && !mb) out.left_minus_right.push_back(x);
    if (mb && !ma) out.right_minus_left.push_back(x);
    if (ma && mb) out.intersection.push_back(x);
  }
  return out;
}

inline SetRelation classify(const RelateOracle& r) {
  if (!r.left_minus_right_infinite && !r.right_minus_left_infinite) return SetRelation::EqualStar;
  if (!r.intersection_infinite) return SetRelation::AlmostDisjoint;
  if (!r.left_minus_right_infinite) return SetRelation::AlmostSubset;
  if (!r.right_minus_left_infinite) return SetRelation::AlmostSuperset;
  return SetRelation::Overlapping;
}

// Factorial block sets, by direct enumeration of centers:
//   points m with n! - n + k <= m <= n! + n - k for some center n in A, n >= k.
inline std::vector<Nat> fact_members_upto(const RawSet& centers, const Nat& level,
                                          std::uint64_t bound) {
  std::vector<Nat> out;
  Nat f = 1;  // n!
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (n >= 2 && f - n > bound) break;
    if (Nat(n) < level) continue;
    if (!centers.member(Nat(n))) continue;
    Nat lo = f - n + level;
    Nat hi = f + n - level;
    for (Nat m = lo; m <= hi && m <= bound; ++m) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool fact_member(const RawSet& centers, const Nat& level, const Nat& m) {
  Nat f = 1;  // n!
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (n >= 2 && f - n > m) break;
    if (Nat(n) < level) continue;
    if (!centers.member(Nat(n))) continue;
    if (m >= f - n + level && m <= f + n - level) return true;
  }
  return false;
}

}  // namespace weaklat::oracle
