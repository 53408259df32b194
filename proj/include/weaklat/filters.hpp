#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"

namespace weaklat {

class NotInfiniteError : public std::invalid_argument {
 public:
  explicit NotInfiniteError(const std::string& what) : std::invalid_argument(what) {}
};

class ImproperBaseError : public std::invalid_argument {
 public:
  explicit ImproperBaseError(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidIndexError : public std::invalid_argument {
 public:
  explicit InvalidIndexError(const std::string& what) : std::invalid_argument(what) {}
};

enum class CardinalTag { Countable };

// ---------------------------------------------------------------------------
// Factorial block sets
//
// For a center set A and level k, the block set gathers the intervals
//   [n! - n + k, n! + n - k]  for n in A with n >= k.
// Intervals of distinct centers >= 4 are pairwise disjoint and ordered;
// centers <= 3 only produce points <= 9, and the center-4 interval starts at
// 20 + k, so any point above 28 lies in the interval of exactly one center.
// ---------------------------------------------------------------------------

// Points above this never collide across distinct centers.
inline constexpr std::uint64_t kLowRegionEnd = 28;

// Largest center whose factorial the library will materialize as a value.
inline constexpr std::uint64_t kMaxMaterializedCenter = 4000;

namespace detail_fact {

inline bool member_u64(std::uint32_t center_mask, std::uint64_t k, std::uint64_t m) {
  // 21! - 21 exceeds 2^64, so only centers <= 20 reach a 64-bit point.
  for (std::uint64_t n = k; n <= 20; ++n) {
    if (!((center_mask >> n) & 1u)) continue;
    std::uint64_t f = kFact64[n];
    if (m >= f - n + k && m <= f + n - k) return true;
  }
  return false;
}

inline bool member_nat(const OmegaSet& centers, const Nat& level, const Nat& m) {
  if (m < 0) return false;
  Nat f = 1;  // n!
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (n >= 2 && f - n > m) return false;
    if (Nat(n) < level) continue;
    if (!centers.contains(Nat(n))) continue;
    if (m >= f - n + level && m <= f + n - level) return true;
  }
}

}  // namespace detail_fact

inline bool fact_member(const OmegaSet& centers, const Nat& level, const Nat& m) {
  if (m < 0) return false;
  if (fits_u64(m) && level >= 0 && fits_u64(level)) {
    return detail_fact::member_u64(centers.small_mask(), to_u64(level), to_u64(m));
  }
  return detail_fact::member_nat(centers, level, m);
}

// Block-set members up to the bound, exact.
inline std::vector<Nat> fact_members_upto(const OmegaSet& centers, const Nat& level,
                                          const Nat& bound) {
  std::vector<Nat> out;
  Nat f = 1;
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (n >= 2 && f - n > bound) break;
    if (Nat(n) < level) continue;
    if (!centers.contains(Nat(n))) continue;
    for (Nat m = f - n + level; m <= f + n - level && m <= bound; ++m) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Element views: an exactly-represented filter element, in the normal form
//   (cofinite tail)  u  (union of clipped factorial block sets)  u  (points).
// All symbolic reasoning about filter elements happens on these.
// ---------------------------------------------------------------------------

struct FactPart {
  OmegaSet centers;
  Nat level;
  Nat min_allowed;  // keep only points >= this

  bool member(const Nat& m) const {
    return m >= min_allowed && fact_member(centers, level, m);
  }
};

struct ElementView {
  std::optional<Nat> cofinite_from;  // {m : m > cofinite_from}
  std::vector<FactPart> facts;
  std::vector<Nat> extras;  // finite, sorted

  bool member(const Nat& m) const {
    if (m < 0) return false;
    if (cofinite_from && m > *cofinite_from) return true;
    if (std::binary_search(extras.begin(), extras.end(), m)) return true;
    for (const FactPart& p : facts) {
      if (p.member(m)) return true;
    }
    return false;
  }

  bool is_empty_below(const Nat& bound) const {
    for (Nat x = 0; x <= bound; ++x) {
      if (member(x)) return false;
    }
    return true;
  }
};

namespace detail_view {

inline constexpr std::uint64_t kScanCap = 1u << 16;

// Least block-set point of one part strictly above x, walking centers with an
// incrementally maintained factorial. Throws if the answer would require
// materializing the factorial of an enormous center.
inline std::optional<Nat> part_first_above(const FactPart& p, const Nat& x) {
  Nat f = 1;
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (n > kMaxMaterializedCenter) {
      if (!p.centers.first_member_above(Nat(n - 1))) return std::nullopt;
      throw BudgetExceededError("block-set point too large to materialize");
    }
    if (Nat(n) < p.level) continue;
    if (!p.centers.contains(Nat(n))) continue;
    Nat hi = f + n - p.level;
    Nat lo = f - n + p.level;
    if (lo < p.min_allowed) lo = p.min_allowed;
    if (lo <= x) lo = x + 1;
    if (lo <= hi) return lo;
    if (p.centers.is_finite() && !p.centers.first_member_above(Nat(n))) return std::nullopt;
  }
}

// Conservative check that n! - n is safely above c, without computing n!.
// Uses n! >= (n/2)^(n/2), so log2(n!) >= (n/2) log2(n/2).
inline bool factorial_dominates(const Nat& n, const Nat& c) {
  if (c < 2) return n >= 4;
  if (n < 4) return false;
  long double nd = n.convert_to<long double>();
  long double log2_fact = (nd / 2) * std::log2(nd / 2);
  unsigned bits_c = boost::multiprecision::msb(boost::multiprecision::abs(c)) + 1;
  return log2_fact > static_cast<long double>(bits_c) + 64;
}

// End of the interval of part p covering m, if any.
inline std::optional<Nat> part_cover_end(const FactPart& p, const Nat& m) {
  if (m < p.min_allowed) return std::nullopt;
  Nat f = 1;
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (n >= 2 && f - n > m) return std::nullopt;
    if (Nat(n) < p.level) continue;
    if (!p.centers.contains(Nat(n))) continue;
    if (m >= f - n + p.level && m <= f + n - p.level) return f + n - p.level;
  }
}

}  // namespace detail_view

inline std::optional<Nat> view_first_member_above(const ElementView& v, const Nat& x) {
  std::optional<Nat> best;
  auto offer = [&](const Nat& c) {
    if (!best || c < *best) best = c;
  };
  if (v.cofinite_from) offer((*v.cofinite_from > x ? *v.cofinite_from : x) + 1);
  auto it = std::upper_bound(v.extras.begin(), v.extras.end(), x);
  if (it != v.extras.end()) offer(*it);
  for (const FactPart& p : v.facts) {
    if (auto c = detail_view::part_first_above(p, x)) offer(*c);
  }
  return best;
}

// Least non-member strictly above x; nullopt when the view is cofinite and
// already covers everything past x.
inline std::optional<Nat> view_first_nonmember_above(const ElementView& v, const Nat& x) {
  if (v.cofinite_from) {
    for (Nat y = x + 1; y <= *v.cofinite_from; ++y) {
      if (!v.member(y)) return y;
    }
    return std::nullopt;
  }
  Nat y = x + 1;
  for (std::uint64_t guard = 0; guard < detail_view::kScanCap; ++guard) {
    if (y < 0) y = 0;
    if (!v.member(y)) return y;
    // jump past everything that covers y
    Nat next = y + 1;
    if (std::binary_search(v.extras.begin(), v.extras.end(), y)) {
      // single point, next already past it
    }
    for (const FactPart& p : v.facts) {
      if (auto end = detail_view::part_cover_end(p, y)) {
        if (*end + 1 > next) next = *end + 1;
      }
    }
    y = next;
  }
  throw BudgetExceededError("non-member scan budget exhausted");
}

inline ElementView view_union(const ElementView& a, const ElementView& b) {
  ElementView out;
  if (a.cofinite_from && b.cofinite_from) {
    out.cofinite_from = *a.cofinite_from < *b.cofinite_from ? *a.cofinite_from : *b.cofinite_from;
  } else if (a.cofinite_from) {
    out.cofinite_from = a.cofinite_from;
  } else if (b.cofinite_from) {
    out.cofinite_from = b.cofinite_from;
  }
  out.facts = a.facts;
  out.facts.insert(out.facts.end(), b.facts.begin(), b.facts.end());
  out.extras = a.extras;
  out.extras.insert(out.extras.end(), b.extras.begin(), b.extras.end());
  std::sort(out.extras.begin(), out.extras.end());
  out.extras.erase(std::unique(out.extras.begin(), out.extras.end()), out.extras.end());
  return out;
}

inline ElementView view_intersect(const ElementView& a, const ElementView& b) {
  ElementView out;
  std::vector<Nat> extras;

  if (a.cofinite_from && b.cofinite_from) {
    out.cofinite_from = *a.cofinite_from > *b.cofinite_from ? *a.cofinite_from : *b.cofinite_from;
  }
  // tail of one side against block parts of the other
  auto tail_vs_facts = [&](const Nat& c, const std::vector<FactPart>& facts) {
    for (const FactPart& p : facts) {
      FactPart q = p;
      if (q.min_allowed <= c) q.min_allowed = c + 1;
      out.facts.push_back(std::move(q));
    }
  };
  if (a.cofinite_from && !b.cofinite_from) tail_vs_facts(*a.cofinite_from, b.facts);
  if (b.cofinite_from && !a.cofinite_from) tail_vs_facts(*b.cofinite_from, a.facts);
  if (a.cofinite_from) {
    for (const Nat& x : b.extras) {
      if (x > *a.cofinite_from) extras.push_back(x);
    }
  }
  if (b.cofinite_from) {
    for (const Nat& x : a.extras) {
      if (x > *b.cofinite_from) extras.push_back(x);
    }
  }
  // block parts against block parts: exact above the low region via center
  // intersection at the max level, plus a pointwise low-region correction
  for (const FactPart& p : a.facts) {
    for (const FactPart& q : b.facts) {
      FactPart r{set_intersection(p.centers, q.centers),
                 p.level > q.level ? p.level : q.level,
                 p.min_allowed > q.min_allowed ? p.min_allowed : q.min_allowed};
      for (Nat x = 0; x <= kLowRegionEnd; ++x) {
        if (p.member(x) && q.member(x) && !r.member(x)) extras.push_back(x);
      }
      if (r.centers.is_infinite()) {
        out.facts.push_back(std::move(r));
      } else {
        // finitely many shared centers: enumerate the surviving points
        for (const Nat& n : r.centers.finite_members()) {
          if (n < r.level) continue;
          if (n > kMaxMaterializedCenter)
            throw BudgetExceededError("block-set point too large to materialize");
          Nat f = factorial(to_u64(n));
          for (Nat x = f - n + r.level; x <= f + n - r.level; ++x) {
            if (x >= r.min_allowed) extras.push_back(x);
          }
        }
      }
    }
  }
  // points against the other side
  for (const Nat& x : a.extras) {
    if (b.member(x)) extras.push_back(x);
  }
  for (const Nat& x : b.extras) {
    if (a.member(x)) extras.push_back(x);
  }
  std::sort(extras.begin(), extras.end());
  extras.erase(std::unique(extras.begin(), extras.end()), extras.end());
  out.extras = std::move(extras);
  return out;
}

struct SubsetCheck {
  bool subset = false;
  std::optional<Nat> witness_point;   // member of the left view missing from the right
  std::optional<Nat> witness_center;  // center of an escaping block when the point is huge
};

struct DisjointCheck {
  bool disjoint = false;
  std::optional<Nat> point;   // a common member, when materializable
  std::optional<Nat> center;  // its block center, when it comes from a block
};

namespace detail_view {

// First point in [lo, hi] not in v, scanning with cover jumps.
inline std::optional<Nat> gap_in_range(const ElementView& v, const Nat& lo, const Nat& hi) {
  Nat y = lo;
  for (std::uint64_t guard = 0; guard < kScanCap && y <= hi; ++guard) {
    if (!v.member(y)) return y;
    Nat next = y + 1;
    for (const FactPart& p : v.facts) {
      if (auto end = part_cover_end(p, y)) {
        if (*end + 1 > next) next = *end + 1;
      }
    }
    if (v.cofinite_from && y > *v.cofinite_from) return std::nullopt;
    y = next;
  }
  if (y <= hi) throw BudgetExceededError("range gap scan budget exhausted");
  return std::nullopt;
}

// Smallest center from which this part's intervals are past every clipping
// threshold in sight (its own min_allowed and the requested floor).
inline std::uint64_t unclipped_center(const FactPart& p, const Nat& also_above) {
  Nat need = p.min_allowed > also_above ? p.min_allowed : also_above;
  Nat f = 1;
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) f *= n;
    if (Nat(n) >= p.level && f - n + p.level >= need && n >= 4) return n;
    if (n > kMaxMaterializedCenter) throw BudgetExceededError("clipping threshold too large");
  }
}

}  // namespace detail_view

// Is every member of a also a member of b? Exact; produces a witness point
// (or at least its block center) when the answer is no.
inline SubsetCheck view_subset(const ElementView& a, const ElementView& b) {
  using namespace detail_view;
  SubsetCheck no;
  no.subset = false;

  for (const Nat& x : a.extras) {
    if (!b.member(x)) {
      no.witness_point = x;
      return no;
    }
  }

  if (a.cofinite_from) {
    if (!b.cofinite_from) {
      // b misses arbitrarily large points
      auto y = view_first_nonmember_above(b, *a.cofinite_from);
      assert(y.has_value());
      no.witness_point = y;
      return no;
    }
    if (*b.cofinite_from > *a.cofinite_from) {
      if (*b.cofinite_from - *a.cofinite_from > Nat(kScanCap))
        throw BudgetExceededError("tail comparison scan budget exhausted");
      for (Nat y = *a.cofinite_from + 1; y <= *b.cofinite_from; ++y) {
        if (!b.member(y)) {
          no.witness_point = y;
          return no;
        }
      }
    }
  }

  for (const FactPart& p : a.facts) {
    if (b.cofinite_from) {
      // only the finitely many part points at or below the tail start matter
      if (*b.cofinite_from > Nat(kScanCap) * 4)
        throw BudgetExceededError("tail comparison scan budget exhausted");
      for (const Nat& m : fact_members_upto(p.centers, p.level, *b.cofinite_from)) {
        if (m >= p.min_allowed && !b.member(m)) {
          no.witness_point = m;
          return no;
        }
      }
      continue;
    }
    // low region pointwise
    for (Nat x = 0; x <= kLowRegionEnd; ++x) {
      if (p.member(x) && !b.member(x)) {
        no.witness_point = x;
        return no;
      }
    }
    // centers from which neither p nor any b-part is clipped
    std::uint64_t nstar = unclipped_center(p, 0);
    for (const FactPart& q : b.facts) {
      std::uint64_t c = unclipped_center(q, 0);
      if (c > nstar) nstar = c;
    }
    // mid region: finitely many centers, each checked pointwise
    {
      Nat f = 1;
      for (std::uint64_t n = 0; n < nstar; ++n) {
        if (n > 0) f *= n;
        if (Nat(n) < p.level || !p.centers.contains(Nat(n))) continue;
        Nat lo = f - n + p.level;
        if (lo < p.min_allowed) lo = p.min_allowed;
        Nat hi = f + n - p.level;
        if (hi > kLowRegionEnd) {  // low part already checked
          Nat from = lo > Nat(kLowRegionEnd) + 1 ? lo : Nat(kLowRegionEnd) + 1;
          if (auto y = gap_in_range(b, from, hi)) {
            no.witness_point = y;
            no.witness_center = Nat(n);
            return no;
          }
        }
      }
    }
    // tail region: a center n >= nstar is covered iff some b-part whose level
    // is <= p's contains it; extras can only plug intervals that are narrower
    // than the extras list
    OmegaSet uncovered = p.centers;
    for (const FactPart& q : b.facts) {
      if (q.level <= p.level) uncovered = set_difference(uncovered, q.centers);
    }
    std::optional<Nat> n0 = uncovered.first_member_above(Nat(nstar) - 1);
    while (n0) {
      // interval width 2(n - level) + 1; extras can cover it only when narrow
      Nat width = (*n0 - p.level) * 2 + 1;
      if (width > Nat(a.extras.size() + b.extras.size() + 1) && *n0 > Nat(kMaxMaterializedCenter)) {
        no.witness_center = *n0;
        return no;
      }
      if (*n0 > Nat(kMaxMaterializedCenter))
        throw BudgetExceededError("block-set point too large to materialize");
      Nat f = factorial(to_u64(*n0));
      Nat lo = f - *n0 + p.level;
      if (lo < p.min_allowed) lo = p.min_allowed;
      if (auto y = gap_in_range(b, lo, f + *n0 - p.level)) {
        no.witness_point = y;
        no.witness_center = *n0;
        return no;
      }
      n0 = uncovered.first_member_above(*n0);
    }
  }
  SubsetCheck yes;
  yes.subset = true;
  return yes;
}

// Do a and b share no member? Exact; reports a common point or center.
inline DisjointCheck view_disjoint(const ElementView& a, const ElementView& b) {
  using namespace detail_view;
  DisjointCheck meet;
  meet.disjoint = false;

  for (const Nat& x : a.extras) {
    if (b.member(x)) {
      meet.point = x;
      return meet;
    }
  }
  for (const Nat& x : b.extras) {
    if (a.member(x)) {
      meet.point = x;
      return meet;
    }
  }
  if (a.cofinite_from && b.cofinite_from) {
    meet.point = (*a.cofinite_from > *b.cofinite_from ? *a.cofinite_from : *b.cofinite_from) + 1;
    return meet;
  }
  auto tail_vs_facts = [&](const Nat& c, const std::vector<FactPart>& facts) -> bool {
    for (const FactPart& p : facts) {
      try {
        if (auto y = part_first_above(p, c)) {
          meet.point = y;
          return true;
        }
      } catch (const BudgetExceededError&) {
        // the walk gave up at an enormous center; a qualifying one, if any,
        // is the first center past both the cap and the part's level
        Nat floor_c = Nat(kMaxMaterializedCenter);
        if (p.level - 1 > floor_c) floor_c = p.level - 1;
        if (auto n = p.centers.first_member_above(floor_c)) {
          Nat need = c > p.min_allowed ? c : p.min_allowed;
          if (!factorial_dominates(*n, need))
            throw BudgetExceededError("cannot compare a block point against a huge threshold");
          meet.center = *n;
          return true;
        }
      }
    }
    return false;
  };
  if (a.cofinite_from && tail_vs_facts(*a.cofinite_from, b.facts)) return meet;
  if (b.cofinite_from && tail_vs_facts(*b.cofinite_from, a.facts)) return meet;

  for (const FactPart& p : a.facts) {
    for (const FactPart& q : b.facts) {
      for (Nat x = 0; x <= kLowRegionEnd; ++x) {
        if (p.member(x) && q.member(x)) {
          meet.point = x;
          return meet;
        }
      }
      Nat maxlevel = p.level > q.level ? p.level : q.level;
      std::uint64_t t0;
      try {
        t0 = unclipped_center(FactPart{p.centers, maxlevel,
                                       p.min_allowed > q.min_allowed ? p.min_allowed : q.min_allowed},
                              0);
      } catch (const BudgetExceededError&) {
        throw;
      }
      OmegaSet shared = set_intersection(p.centers, q.centers);
      std::optional<Nat> n = shared.first_member_above(Nat(t0) - 1);
      if (n) {
        meet.center = *n;
        if (*n <= Nat(kMaxMaterializedCenter)) {
          Nat f = factorial(to_u64(*n));
          Nat lo = f - *n + maxlevel;
          if (lo < p.min_allowed) lo = p.min_allowed;
          if (lo < q.min_allowed) lo = q.min_allowed;
          meet.point = lo;
        }
        return meet;
      }
    }
  }
  DisjointCheck ok;
  ok.disjoint = true;
  return ok;
}

// ---------------------------------------------------------------------------
// Shift-invariant filters
// ---------------------------------------------------------------------------

// Address of one base element of a filter. Leaves carry a level (and, for
// base-family filters, which generator); meet and join nodes pair an address
// per side.
struct BaseIndex {
  Nat level;
  std::size_t generator = 0;
  std::vector<BaseIndex> parts;

  static BaseIndex at(Nat k) {
    BaseIndex i;
    i.level = std::move(k);
    return i;
  }
  static BaseIndex at(std::size_t gen, Nat k) {
    BaseIndex i;
    i.level = std::move(k);
    i.generator = gen;
    return i;
  }
  static BaseIndex pair(BaseIndex a, BaseIndex b) {
    BaseIndex i;
    i.level = 0;
    i.parts.push_back(std::move(a));
    i.parts.push_back(std::move(b));
    return i;
  }

  bool is_leaf() const { return parts.empty(); }

  friend bool operator==(const BaseIndex& a, const BaseIndex& b) {
    return a.level == b.level && a.generator == b.generator && a.parts == b.parts;
  }
  friend bool operator!=(const BaseIndex& a, const BaseIndex& b) { return !(a == b); }

  std::string str() const {
    if (is_leaf()) {
      if (generator == 0) return level.str();
      return "g" + std::to_string(generator) + ":" + level.str();
    }
    return "(" + parts[0].str() + "|" + parts[1].str() + ")";
  }
};

// Copy of an index template with every leaf level replaced.
inline BaseIndex index_at_level(const BaseIndex& shape, const Nat& level) {
  BaseIndex out = shape;
  if (out.is_leaf()) {
    out.level = level;
  } else {
    for (BaseIndex& p : out.parts) p = index_at_level(p, level);
  }
  return out;
}

class SIFilter {
 public:
  enum class Kind { Frechet, Factorial, FilterInduced, Meet, Join };

  static SIFilter frechet() { return SIFilter(Kind::Frechet); }

  static SIFilter factorial(OmegaSet centers) {
    if (!centers.is_infinite()) throw NotInfiniteError("factorial filter needs an infinite center set");
    SIFilter f(Kind::Factorial);
    f.sets_.push_back(std::move(centers));
    f.nf_gens_ = f.sets_;
    f.nf_reps_.push_back(BaseIndex::at(0));
    return f;
  }

  // Closes the base under pairwise intersection and validates it.
  static SIFilter filter_induced(std::vector<OmegaSet> base) {
    if (base.empty()) throw ImproperBaseError("filter base must be non-empty");
    SIFilter f(Kind::FilterInduced);
    f.sets_ = close_directed(std::move(base));
    f.nf_gens_ = f.sets_;
    for (std::size_t i = 0; i < f.sets_.size(); ++i) f.nf_reps_.push_back(BaseIndex::at(i, 0));
    return f;
  }

  static SIFilter meet_of(SIFilter l, SIFilter r) {
    SIFilter f(Kind::Meet);
    f.left_ = std::make_shared<SIFilter>(std::move(l));
    f.right_ = std::make_shared<SIFilter>(std::move(r));
    if (f.left_->is_frechet_equivalent() || f.right_->is_frechet_equivalent()) {
      // the meet collapses to the minimum
    } else {
      for (std::size_t i = 0; i < f.left_->nf_gens_.size(); ++i) {
        for (std::size_t j = 0; j < f.right_->nf_gens_.size(); ++j) {
          f.nf_gens_.push_back(set_union(f.left_->nf_gens_[i], f.right_->nf_gens_[j]));
          f.nf_reps_.push_back(BaseIndex::pair(f.left_->nf_reps_[i], f.right_->nf_reps_[j]));
        }
      }
    }
    return f;
  }

  // Throws ImproperBaseError when the two filters cannot be joined (some
  // element of one meets some element of the other in a finite set).
  static SIFilter join_of(SIFilter l, SIFilter r) {
    SIFilter f(Kind::Join);
    f.left_ = std::make_shared<SIFilter>(std::move(l));
    f.right_ = std::make_shared<SIFilter>(std::move(r));
    const SIFilter& a = *f.left_;
    const SIFilter& b = *f.right_;
    if (a.is_frechet_equivalent()) {
      BaseIndex ashape = base_index_shape(a);
      for (std::size_t j = 0; j < b.nf_gens_.size(); ++j) {
        f.nf_gens_.push_back(b.nf_gens_[j]);
        f.nf_reps_.push_back(BaseIndex::pair(ashape, b.nf_reps_[j]));
      }
    } else if (b.is_frechet_equivalent()) {
      BaseIndex bshape = base_index_shape(b);
      for (std::size_t i = 0; i < a.nf_gens_.size(); ++i) {
        f.nf_gens_.push_back(a.nf_gens_[i]);
        f.nf_reps_.push_back(BaseIndex::pair(a.nf_reps_[i], bshape));
      }
    } else {
      for (std::size_t i = 0; i < a.nf_gens_.size(); ++i) {
        for (std::size_t j = 0; j < b.nf_gens_.size(); ++j) {
          OmegaSet inter = set_intersection(a.nf_gens_[i], b.nf_gens_[j]);
          if (!inter.is_infinite())
            throw ImproperBaseError("join is improper: generator intersection is finite");
          f.properness_.push_back(inter);
          f.nf_gens_.push_back(std::move(inter));
          f.nf_reps_.push_back(BaseIndex::pair(a.nf_reps_[i], b.nf_reps_[j]));
        }
      }
    }
    return f;
  }

  Kind kind() const { return kind_; }

  const OmegaSet& center_set() const {
    if (kind_ != Kind::Factorial) throw std::logic_error("center_set on a non-factorial filter");
    return sets_[0];
  }

  const std::vector<OmegaSet>& base_sets() const {
    if (kind_ != Kind::FilterInduced) throw std::logic_error("base_sets on a non-base-family filter");
    return sets_;
  }

  const SIFilter& left() const { return *left_; }
  const SIFilter& right() const { return *right_; }

  // Pairwise generator intersections recorded when a join was validated.
  const std::vector<OmegaSet>& properness_witnesses() const { return properness_; }

  // Normal form: empty generator list means the filter equals the cofinite
  // (Frechet) filter; otherwise the filter is generated by these block-set
  // families.
  bool is_frechet_equivalent() const { return nf_gens_.empty(); }
  const std::vector<OmegaSet>& generators() const { return nf_gens_; }
  const std::vector<BaseIndex>& generator_reps() const { return nf_reps_; }

  friend bool operator==(const SIFilter& a, const SIFilter& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.sets_ != b.sets_) return false;
    if ((a.left_ == nullptr) != (b.left_ == nullptr)) return false;
    if (a.left_ && (*a.left_ != *b.left_ || *a.right_ != *b.right_)) return false;
    return true;
  }
  friend bool operator!=(const SIFilter& a, const SIFilter& b) { return !(a == b); }

 private:
  explicit SIFilter(Kind k) : kind_(k) {}

  // A structurally valid index for f with every leaf at level 0.
  static BaseIndex base_index_shape(const SIFilter& f) {
    switch (f.kind_) {
      case Kind::Frechet:
      case Kind::Factorial:
      case Kind::FilterInduced:
        return BaseIndex::at(0);
      case Kind::Meet:
      case Kind::Join:
        return BaseIndex::pair(base_index_shape(*f.left_), base_index_shape(*f.right_));
    }
    throw std::logic_error("unknown filter kind");
  }

  static std::vector<OmegaSet> close_directed(std::vector<OmegaSet> base) {
    for (const OmegaSet& s : base) {
      if (!s.is_infinite()) throw NotInfiniteError("filter base sets must be infinite");
    }
    std::vector<OmegaSet> out;
    for (OmegaSet& s : base) {
      bool dup = false;
      for (const OmegaSet& t : out) {
        if (s == t) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(std::move(s));
    }
    auto has_lower = [&](const OmegaSet& target) {
      for (const OmegaSet& s : out) {
        RelateResult r = relate(s, target);
        if (r.left_minus_right && r.left_minus_right->empty()) return true;  // s subset of target
      }
      return false;
    };
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        OmegaSet inter = set_intersection(out[i], out[j]);
        if (!inter.is_infinite())
          throw ImproperBaseError("filter base admits a finite intersection");
        if (!has_lower(inter)) out.push_back(std::move(inter));
        if (out.size() > 64) throw BudgetExceededError("directed closure of the base is too large");
      }
    }
    return out;
  }

  Kind kind_;
  std::vector<OmegaSet> sets_;  // Factorial: {centers}; FilterInduced: closed base
  std::shared_ptr<const SIFilter> left_, right_;
  std::vector<OmegaSet> properness_;
  std::vector<OmegaSet> nf_gens_;
  std::vector<BaseIndex> nf_reps_;
};

// ---------------------------------------------------------------------------
// Base access
// ---------------------------------------------------------------------------

inline void validate_index(const SIFilter& f, const BaseIndex& idx) {
  switch (f.kind()) {
    case SIFilter::Kind::Frechet:
    case SIFilter::Kind::Factorial:
      if (!idx.is_leaf() || idx.generator != 0 || idx.level < 0)
        throw InvalidIndexError("expected a plain level index");
      return;
    case SIFilter::Kind::FilterInduced:
      if (!idx.is_leaf() || idx.level < 0 || idx.generator >= f.base_sets().size())
        throw InvalidIndexError("generator index out of range");
      return;
    case SIFilter::Kind::Meet:
    case SIFilter::Kind::Join:
      if (idx.is_leaf() || idx.parts.size() != 2)
        throw InvalidIndexError("expected an index pair for a composite filter");
      validate_index(f.left(), idx.parts[0]);
      validate_index(f.right(), idx.parts[1]);
      return;
  }
  throw InvalidIndexError("unknown filter kind");
}

namespace detail_filter {

inline bool base_member_unchecked(const SIFilter& f, const BaseIndex& idx, const Nat& m) {
  switch (f.kind()) {
    case SIFilter::Kind::Frechet:
      return m > idx.level;
    case SIFilter::Kind::Factorial:
      return fact_member(f.center_set(), idx.level, m);
    case SIFilter::Kind::FilterInduced:
      return fact_member(f.base_sets()[idx.generator], idx.level, m);
    case SIFilter::Kind::Meet:
      return base_member_unchecked(f.left(), idx.parts[0], m) ||
             base_member_unchecked(f.right(), idx.parts[1], m);
    case SIFilter::Kind::Join:
      return base_member_unchecked(f.left(), idx.parts[0], m) &&
             base_member_unchecked(f.right(), idx.parts[1], m);
  }
  return false;
}

}  // namespace detail_filter

// Is m a member of the base element at idx?
inline bool base_member(const SIFilter& f, const BaseIndex& idx, const Nat& m) {
  validate_index(f, idx);
  return detail_filter::base_member_unchecked(f, idx, m);
}

// Exact symbolic view of the base element at idx.
inline ElementView element_view(const SIFilter& f, const BaseIndex& idx) {
  validate_index(f, idx);
  switch (f.kind()) {
    case SIFilter::Kind::Frechet: {
      ElementView v;
      v.cofinite_from = idx.level;
      return v;
    }
    case SIFilter::Kind::Factorial: {
      ElementView v;
      v.facts.push_back(FactPart{f.center_set(), idx.level, Nat(0)});
      return v;
    }
    case SIFilter::Kind::FilterInduced: {
      ElementView v;
      v.facts.push_back(FactPart{f.base_sets()[idx.generator], idx.level, Nat(0)});
      return v;
    }
    case SIFilter::Kind::Meet:
      return view_union(element_view(f.left(), idx.parts[0]), element_view(f.right(), idx.parts[1]));
    case SIFilter::Kind::Join:
      return view_intersect(element_view(f.left(), idx.parts[0]),
                            element_view(f.right(), idx.parts[1]));
  }
  throw std::logic_error("unknown filter kind");
}

// An index whose base element avoids [0, k] entirely.
inline BaseIndex base_escape_index(const SIFilter& f, const Nat& k) {
  switch (f.kind()) {
    case SIFilter::Kind::Frechet:
      return BaseIndex::at(k);
    case SIFilter::Kind::Factorial:
      // at level k+1 every point is at least (k+1)! > k
      return BaseIndex::at(k + 1);
    case SIFilter::Kind::FilterInduced: {
      // generator 0 at the least level j >= 1 with j! > k; from level 1 on,
      // every block point is at least j!
      Nat f0 = 1;
      Nat j = 1;
      while (f0 <= k) {
        j += 1;
        f0 *= j;
      }
      return BaseIndex::at(0, j);
    }
    case SIFilter::Kind::Meet:
    case SIFilter::Kind::Join:
      return BaseIndex::pair(base_escape_index(f.left(), k), base_escape_index(f.right(), k));
  }
  throw std::logic_error("unknown filter kind");
}

// An index whose base element, shifted by n, lands inside the element at idx:
// n + elem(result) is contained in elem(idx). Works for negative n as well.
inline BaseIndex shift_witness(const SIFilter& f, const BaseIndex& idx, const Nat& n) {
  validate_index(f, idx);
  Nat a = n < 0 ? Nat(-n) : n;
  switch (f.kind()) {
    case SIFilter::Kind::Frechet:
    case SIFilter::Kind::Factorial:
      return BaseIndex::at(idx.level + a);
    case SIFilter::Kind::FilterInduced:
      return BaseIndex::at(idx.generator, idx.level + a);
    case SIFilter::Kind::Meet:
    case SIFilter::Kind::Join:
      return BaseIndex::pair(shift_witness(f.left(), idx.parts[0], n),
                             shift_witness(f.right(), idx.parts[1], n));
  }
  throw std::logic_error("unknown filter kind");
}

inline CardinalTag character(const SIFilter&) { return CardinalTag::Countable; }

// ---------------------------------------------------------------------------
// The order
// ---------------------------------------------------------------------------

enum class Order { Less, Equal, Greater, Incomparable, Unknown };

inline const char* to_string(Order o) {
  switch (o) {
    case Order::Less: return "less";
    case Order::Equal: return "equal";
    case Order::Greater: return "greater";
    case Order::Incomparable: return "incomparable";
    case Order::Unknown: return "unknown";
  }
  return "?";
}

struct IndexPair {
  BaseIndex coarse;
  BaseIndex fine;
};

struct EscapeSample {
  Nat probe_level;
  BaseIndex probe;           // index on the side claimed (falsely) to dominate
  Nat center;                // escaping block center
  std::optional<Nat> point;  // materialized escaping point, when small enough
};

// Evidence that one filter contains the other: for each sampled coarse index,
// the least fine index (level-lexicographic) whose element sits inside it.
struct DominationCert {
  std::vector<IndexPair> pairs;
};

// Evidence that "left <= right" fails: a fixed witness element of the left
// filter, plus, per sampled right-side index, a point of that right element
// escaping the witness.
struct SeparationCert {
  BaseIndex witness;
  std::vector<EscapeSample> escapes;
};

struct DisjointPair {
  BaseIndex left;
  BaseIndex right;
};

struct OrderVerdict {
  Order order = Order::Unknown;
  std::optional<DominationCert> le_cert, ge_cert;
  std::optional<SeparationCert> not_le, not_ge;
  std::optional<DisjointPair> disjoint_pair;
};

namespace detail_filter {

inline constexpr std::size_t kCertLevels = 5;

// f <= g in the refinement order iff every generator family of f is almost
// contained (as center sets) in some generator family of g, reversed: the
// finer filter has smaller center sets.
inline bool nf_leq(const SIFilter& f, const SIFilter& g) {
  if (f.is_frechet_equivalent()) return true;
  if (g.is_frechet_equivalent()) return false;
  for (const OmegaSet& a : f.generators()) {
    bool found = false;
    for (const OmegaSet& b : g.generators()) {
      if (almost_subset(b, a)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Sampled coarse indices for certificates.
inline std::vector<std::pair<Nat, BaseIndex>> sample_indices(const SIFilter& f, const Nat& bound) {
  std::vector<std::pair<Nat, BaseIndex>> out;
  Nat top = bound < Nat(kCertLevels) ? bound : Nat(kCertLevels);
  for (Nat lvl = 0; lvl <= top; ++lvl) {
    if (f.is_frechet_equivalent() && f.kind() == SIFilter::Kind::Frechet) {
      out.emplace_back(lvl, BaseIndex::at(lvl));
    } else if (f.generator_reps().empty()) {
      // frechet-equivalent composite: derive a representative shape
      out.emplace_back(lvl, index_at_level(base_escape_index(f, 0), lvl));
    } else {
      for (const BaseIndex& rep : f.generator_reps()) {
        out.emplace_back(lvl, index_at_level(rep, lvl));
      }
    }
  }
  return out;
}

// Least (level, generator)-lexicographic index of fine whose element sits
// inside the coarse element. Domination must already be known to hold.
inline std::optional<BaseIndex> least_refining_index(const SIFilter& fine,
                                                     const ElementView& coarse_elem,
                                                     const Nat& level_cap) {
  for (Nat lvl = 0; lvl <= level_cap; ++lvl) {
    std::vector<BaseIndex> cands;
    if (fine.generator_reps().empty()) {
      cands.push_back(index_at_level(base_escape_index(fine, 0), lvl));
      if (fine.kind() == SIFilter::Kind::Frechet) cands = {BaseIndex::at(lvl)};
    } else {
      for (const BaseIndex& rep : fine.generator_reps()) cands.push_back(index_at_level(rep, lvl));
    }
    for (const BaseIndex& idx : cands) {
      if (view_subset(element_view(fine, idx), coarse_elem).subset) return idx;
    }
  }
  return std::nullopt;
}

// How deep least_refining_index may need to go: past every finite difference
// of generator center sets, every coarse level in play, and the low region.
inline Nat refine_level_cap(const SIFilter& f, const SIFilter& g, const Nat& bound) {
  Nat cap = Nat(kCertLevels) + kLowRegionEnd + 2;
  if (bound > cap) cap = bound + kLowRegionEnd + 2;
  for (const OmegaSet& a : f.generators()) {
    for (const OmegaSet& b : g.generators()) {
      RelateResult r = relate(b, a);
      if (r.left_minus_right && !r.left_minus_right->empty()) {
        Nat m = r.left_minus_right->back() + 1;
        if (m + Nat(kCertLevels) + kLowRegionEnd + 2 > cap)
          cap = m + Nat(kCertLevels) + kLowRegionEnd + 2;
      }
    }
  }
  return cap;
}

inline DominationCert make_domination_cert(const SIFilter& coarse, const SIFilter& fine,
                                           const Nat& bound) {
  DominationCert cert;
  Nat cap = refine_level_cap(coarse, fine, bound);
  for (auto& [lvl, idx] : sample_indices(coarse, bound)) {
    auto fine_idx = least_refining_index(fine, element_view(coarse, idx), cap);
    assert(fine_idx.has_value());
    if (fine_idx) cert.pairs.push_back(IndexPair{idx, *fine_idx});
  }
  return cert;
}

// Pick a generator of f no generator of g almost-refines, then sample escape
// points: centers in (g-generator minus that f-generator) blocks.
inline std::optional<SeparationCert> make_separation_cert(const SIFilter& f, const SIFilter& g,
                                                          const Nat& bound) {
  if (f.is_frechet_equivalent()) return std::nullopt;  // f <= g always holds then
  std::size_t star = f.generators().size();
  for (std::size_t i = 0; i < f.generators().size(); ++i) {
    bool dominated = false;
    if (!g.is_frechet_equivalent()) {
      for (const OmegaSet& b : g.generators()) {
        if (almost_subset(b, f.generators()[i])) {
          dominated = true;
          break;
        }
      }
    }
    if (!dominated) {
      star = i;
      break;
    }
  }
  if (star == f.generators().size()) return std::nullopt;
  const OmegaSet& astar = f.generators()[star];
  SeparationCert cert;
  cert.witness = index_at_level(f.generator_reps()[star], Nat(0));

  Nat top = bound < Nat(kCertLevels) ? bound : Nat(kCertLevels);
  for (Nat lvl = 0; lvl <= top; ++lvl) {
    std::vector<std::pair<BaseIndex, const OmegaSet*>> probes;
    if (g.is_frechet_equivalent()) {
      BaseIndex idx = g.kind() == SIFilter::Kind::Frechet
                          ? BaseIndex::at(lvl)
                          : index_at_level(base_escape_index(g, 0), lvl);
      probes.emplace_back(idx, nullptr);
    } else {
      for (std::size_t j = 0; j < g.generators().size(); ++j) {
        probes.emplace_back(index_at_level(g.generator_reps()[j], lvl), &g.generators()[j]);
      }
    }
    for (auto& [probe, bgen] : probes) {
      EscapeSample es;
      es.probe_level = lvl;
      es.probe = probe;
      if (bgen == nullptr) {
        // cofinite probe element: any large non-member of the witness works
        ElementView w = element_view(f, cert.witness);
        auto y = view_first_nonmember_above(w, lvl);
        if (!y) continue;
        es.center = *y;
        es.point = *y;
      } else {
        // a center of bgen outside astar, at or above max(lvl, 4); n! sits
        // inside that block at every level <= n and in no other block. The
        // walk stays exact where the canonical difference of far-apart
        // periods would blow the subclass budget.
        Nat floor_c = lvl > Nat(4) ? lvl : Nat(4);
        auto n = first_difference_member_above(*bgen, astar, floor_c - 1);
        if (!n) continue;  // no escape via this generator at this level
        es.center = *n;
        if (*n <= Nat(kMaxMaterializedCenter)) {
          Nat pt = factorial(to_u64(*n));
          bool in_probe = base_member(g, probe, pt);
          bool in_witness = base_member(f, cert.witness, pt);
          if (in_probe && !in_witness) es.point = pt;
        }
      }
      cert.escapes.push_back(std::move(es));
    }
  }
  if (cert.escapes.empty()) return std::nullopt;
  return cert;
}

// Least level at which some pair of base elements of f and g is provably
// disjoint, if the generators admit a finitely-intersecting pair.
inline std::optional<DisjointPair> find_disjoint_pair(const SIFilter& f, const SIFilter& g,
                                                      const Nat& bound) {
  if (f.is_frechet_equivalent() || g.is_frechet_equivalent()) return std::nullopt;
  bool possible = false;
  Nat needed = 0;
  for (const OmegaSet& a : f.generators()) {
    for (const OmegaSet& b : g.generators()) {
      RelateResult r = relate(a, b);
      if (r.intersection) {
        possible = true;
        if (!r.intersection->empty() && r.intersection->back() + 1 > needed)
          needed = r.intersection->back() + 1;
      }
    }
  }
  if (!possible) return std::nullopt;
  Nat cap = needed + kLowRegionEnd + 6;
  if (bound + kLowRegionEnd + 6 > cap) cap = bound + kLowRegionEnd + 6;
  for (Nat lvl = 0; lvl <= cap; ++lvl) {
    for (const BaseIndex& rf : f.generator_reps()) {
      BaseIndex fi = index_at_level(rf, lvl);
      ElementView vf = element_view(f, fi);
      for (const BaseIndex& rg : g.generator_reps()) {
        BaseIndex gi = index_at_level(rg, lvl);
        if (view_disjoint(vf, element_view(g, gi)).disjoint) {
          return DisjointPair{fi, gi};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail_filter

inline OrderVerdict compare_filters(const SIFilter& f, const SIFilter& g, const Nat& bound = 40) {
  using namespace detail_filter;
  OrderVerdict v;
  bool le = nf_leq(f, g);
  bool ge = nf_leq(g, f);
  if (le && ge) {
    v.order = Order::Equal;
    v.le_cert = make_domination_cert(f, g, bound);
    v.ge_cert = make_domination_cert(g, f, bound);
  } else if (le) {
    v.order = Order::Less;
    v.le_cert = make_domination_cert(f, g, bound);
    v.not_ge = make_separation_cert(g, f, bound);
  } else if (ge) {
    v.order = Order::Greater;
    v.ge_cert = make_domination_cert(g, f, bound);
    v.not_le = make_separation_cert(f, g, bound);
  } else {
    v.order = Order::Incomparable;
    v.not_le = make_separation_cert(f, g, bound);
    v.not_ge = make_separation_cert(g, f, bound);
    v.disjoint_pair = find_disjoint_pair(f, g, bound);
  }
  return v;
}

// Meet in the refinement lattice, normalized.
inline SIFilter meet_filters(const SIFilter& f, const SIFilter& g) {
  if (f.is_frechet_equivalent() || g.is_frechet_equivalent()) return SIFilter::frechet();
  if (f == g) return f;
  if (f.kind() == SIFilter::Kind::Factorial && g.kind() == SIFilter::Kind::Factorial) {
    return SIFilter::factorial(set_union(f.center_set(), g.center_set()));
  }
  std::vector<OmegaSet> base;
  for (const OmegaSet& a : f.generators()) {
    for (const OmegaSet& b : g.generators()) {
      base.push_back(set_union(a, b));
    }
  }
  return SIFilter::filter_induced(std::move(base));
}

// Join in the refinement lattice, normalized; nullopt means the join is
// improper (the two filters only share the discrete top).
inline std::optional<SIFilter> join_filters(const SIFilter& f, const SIFilter& g) {
  if (f.is_frechet_equivalent()) return g;
  if (g.is_frechet_equivalent()) return f;
  if (f == g) return f;
  std::vector<OmegaSet> base;
  for (const OmegaSet& a : f.generators()) {
    for (const OmegaSet& b : g.generators()) {
      OmegaSet inter = set_intersection(a, b);
      if (!inter.is_infinite()) return std::nullopt;
      base.push_back(std::move(inter));
    }
  }
  if (f.kind() == SIFilter::Kind::Factorial && g.kind() == SIFilter::Kind::Factorial) {
    return SIFilter::factorial(std::move(base[0]));
  }
  return SIFilter::filter_induced(std::move(base));
}

inline SIFilter from_filter_base(std::vector<OmegaSet> base) {
  return SIFilter::filter_induced(std::move(base));
}

}  // namespace weaklat
