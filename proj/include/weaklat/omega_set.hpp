#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weaklat/nat.hpp"

namespace weaklat {

// Raised when an operation would need to materialize more structure than the
// representation budgets allow (pathological inputs only; every family used
// by the lattice constructions stays far below the caps).
class BudgetExceededError : public std::length_error {
 public:
  explicit BudgetExceededError(const std::string& what) : std::length_error(what) {}
};

// {start + step * i : i >= 0}
struct Progression {
  Nat start;
  Nat step;

  friend bool operator==(const Progression& a, const Progression& b) {
    return a.start == b.start && a.step == b.step;
  }
  friend bool operator!=(const Progression& a, const Progression& b) { return !(a == b); }
};

namespace detail_omega {

inline constexpr std::size_t kMaxDivisors = 4096;
inline constexpr std::size_t kMaxLiveResidues = 1u << 16;
inline constexpr std::uint64_t kMaxSubclasses = 1u << 12;
inline constexpr std::uint64_t kMaxCorrections = 1u << 16;
inline constexpr std::uint64_t kMaxClassPairs = 1u << 16;
inline constexpr long kCoverBudget = 1 << 16;
inline constexpr std::uint64_t kDiffWalkBudget = 1u << 12;

// Pre-canonical data: (union of progressions, union of include points),
// minus the exclude points. Exclusion wins over inclusion.
struct RawParts {
  std::vector<Progression> progs;
  std::vector<Nat> inc;
  std::vector<Nat> exc;

  void normalize_lists() {
    std::sort(inc.begin(), inc.end());
    inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
    std::sort(exc.begin(), exc.end());
    exc.erase(std::unique(exc.begin(), exc.end()), exc.end());
  }

  bool contains(const Nat& x) const {
    if (x < 0) return false;
    if (std::binary_search(exc.begin(), exc.end(), x)) return false;
    if (std::binary_search(inc.begin(), inc.end(), x)) return true;
    for (const Progression& p : progs) {
      if (x >= p.start && (x - p.start) % p.step == 0) return true;
    }
    return false;
  }
};

// Is the whole residue class {x == a (mod m)} contained in the union of the
// progressions' residue classes (starts ignored)?
inline bool class_covered(const Nat& a, const Nat& m, const std::vector<Progression>& progs,
                          long& budget) {
  for (const Progression& p : progs) {
    if (m % p.step == 0 && mod_floor(a - p.start, p.step) == 0) return true;
  }
  const Progression* split = nullptr;
  Nat best_lcm;
  for (const Progression& p : progs) {
    Nat g = gcd(m, p.step);
    if (mod_floor(a - p.start, g) != 0) continue;
    Nat l = lcm(m, p.step);
    if (split == nullptr || l < best_lcm) {
      split = &p;
      best_lcm = l;
    }
  }
  if (split == nullptr) return false;
  Nat big = best_lcm;
  Nat nsub = big / m;
  if (nsub > kMaxSubclasses) throw BudgetExceededError("residue class cover check too wide");
  std::uint64_t n = to_u64(nsub);
  for (std::uint64_t t = 0; t < n; ++t) {
    if (--budget < 0) throw BudgetExceededError("residue class cover budget exhausted");
    Nat rho = mod_floor(a + m * t, big);
    if (mod_floor(rho - split->start, split->step) == 0) continue;
    if (!class_covered(rho, big, progs, budget)) return false;
  }
  return true;
}

inline bool eventually_periodic(const std::vector<Progression>& progs, const Nat& d) {
  long budget = kCoverBudget;
  for (const Progression& p : progs) {
    if (!class_covered(p.start + d, p.step, progs, budget)) return false;
  }
  return true;
}

// #{x == rho (mod step) : lo <= x <= hi}
inline Nat count_in_class(const Nat& rho, const Nat& step, const Nat& lo, const Nat& hi) {
  if (hi < lo) return 0;
  Nat first = class_ceil(mod_floor(rho, step), step, lo);
  if (first > hi) return 0;
  return (hi - first) / step + 1;
}

}  // namespace detail_omega

enum class SetRelation { EqualStar, AlmostDisjoint, AlmostSubset, AlmostSuperset, Overlapping };

inline const char* to_string(SetRelation r) {
  switch (r) {
    case SetRelation::EqualStar: return "equal-star";
    case SetRelation::AlmostDisjoint: return "almost-disjoint";
    case SetRelation::AlmostSubset: return "almost-subset";
    case SetRelation::AlmostSuperset: return "almost-superset";
    case SetRelation::Overlapping: return "overlapping";
  }
  return "?";
}

struct RelateResult {
  SetRelation relation;
  // Present exactly when the corresponding set is finite.
  std::optional<std::vector<Nat>> left_minus_right;
  std::optional<std::vector<Nat>> right_minus_left;
  std::optional<std::vector<Nat>> intersection;
};

// A subset of omega that is eventually periodic: a finite union of arithmetic
// progressions together with finitely many included and excluded points.
//
// The stored form is canonical, so structural equality decides set equality:
//   * period() is the minimal eventual period d;
//   * there is exactly one progression per residue class mod d that meets the
//     set infinitely often, and its step is d;
//   * within such a class the progression either starts at the first member
//     and excludes() lists the finitely many later holes, or starts just
//     after the last hole and includes() lists the finitely many earlier
//     members, whichever correction list is shorter (ties prefer holes);
//   * includes() also carries the members in classes the set meets only
//     finitely often.
//
// Example: {0,2,4,...} \ {6} u {9} canonicalizes to period 2 with the single
// progression 0+2i, excludes {6}, includes {9}.
class OmegaSet {
 public:
  OmegaSet() : period_(1) { finish(); }

  OmegaSet(std::vector<Progression> progs, std::vector<Nat> include, std::vector<Nat> exclude) {
    for (const Progression& p : progs) {
      if (p.step < 1) throw std::invalid_argument("progression step must be at least 1");
      if (p.start < 0) throw std::invalid_argument("progression start must be non-negative");
    }
    for (const Nat& x : include)
      if (x < 0) throw std::invalid_argument("include points must be non-negative");
    for (const Nat& x : exclude)
      if (x < 0) throw std::invalid_argument("exclude points must be non-negative");
    detail_omega::RawParts raw{std::move(progs), std::move(include), std::move(exclude)};
    *this = canonicalize(std::move(raw));
  }

  static OmegaSet empty() { return OmegaSet(); }
  static OmegaSet omega() { return progression(0, 1); }
  static OmegaSet progression(Nat start, Nat step) {
    return OmegaSet({Progression{std::move(start), std::move(step)}}, {}, {});
  }
  static OmegaSet from_points(std::vector<Nat> points) { return OmegaSet({}, std::move(points), {}); }

  bool contains(const Nat& x) const {
    if (x < 0) return false;
    if (fits_u64(x) && to_u64(x) <= 20) return (small_mask_ >> to_u64(x)) & 1u;
    return contains_slow(x);
  }

  bool is_infinite() const { return !progs_.empty(); }
  bool is_finite() const { return progs_.empty(); }
  bool is_empty() const { return progs_.empty() && include_.empty(); }

  // Members of a finite set; throws on infinite sets.
  const std::vector<Nat>& finite_members() const {
    if (is_infinite()) throw std::logic_error("finite_members on an infinite set");
    return include_;
  }

  const Nat& period() const { return period_; }
  const std::vector<Progression>& progressions() const { return progs_; }
  const std::vector<Nat>& includes() const { return include_; }
  const std::vector<Nat>& excludes() const { return exclude_; }

  std::optional<Nat> min_member() const {
    if (is_empty()) return std::nullopt;
    return first_member_above(Nat(-1));
  }

  // Least member strictly above x, if any.
  std::optional<Nat> first_member_above(const Nat& x) const {
    std::optional<Nat> best;
    auto offer = [&](const Nat& c) {
      if (!best || c < *best) best = c;
    };
    auto it = std::upper_bound(include_.begin(), include_.end(), x);
    if (it != include_.end()) offer(*it);
    for (const Progression& p : progs_) {
      Nat c = p.start > x ? p.start : class_ceil(p.start, p.step, x + 1);
      // step over excluded tail points
      while (std::binary_search(exclude_.begin(), exclude_.end(), c)) c += p.step;
      offer(c);
    }
    return best;
  }

  std::vector<Nat> members_upto(const Nat& bound) const {
    std::vector<Nat> out;
    for (const Progression& p : progs_) {
      for (Nat x = p.start; x <= bound; x += p.step) {
        if (!std::binary_search(exclude_.begin(), exclude_.end(), x)) out.push_back(x);
      }
    }
    for (const Nat& x : include_) {
      if (x <= bound) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Translate by n (possibly negative); points shifted below zero are dropped.
  OmegaSet shifted(const Nat& n) const {
    detail_omega::RawParts raw;
    for (const Progression& p : progs_) {
      Nat s = p.start + n;
      if (s < 0) s = mod_floor(s, p.step);
      raw.progs.push_back({s, p.step});
    }
    for (const Nat& x : include_) {
      if (x + n >= 0) raw.inc.push_back(x + n);
    }
    for (const Nat& x : exclude_) {
      if (x + n >= 0) raw.exc.push_back(x + n);
    }
    return canonicalize(std::move(raw));
  }

  // Bit i (i <= 20) is set iff i is a member; fast path for small points.
  std::uint32_t small_mask() const { return small_mask_; }

  friend bool operator==(const OmegaSet& a, const OmegaSet& b) {
    return a.period_ == b.period_ && a.progs_ == b.progs_ && a.include_ == b.include_ &&
           a.exclude_ == b.exclude_;
  }
  friend bool operator!=(const OmegaSet& a, const OmegaSet& b) { return !(a == b); }

  std::string str() const {
    std::string s = "{period " + period_.str() + ";";
    for (const Progression& p : progs_) s += " " + p.start.str() + "+" + p.step.str() + "i";
    if (!include_.empty()) {
      s += " inc";
      for (const Nat& x : include_) s += " " + x.str();
    }
    if (!exclude_.empty()) {
      s += " exc";
      for (const Nat& x : exclude_) s += " " + x.str();
    }
    return s + "}";
  }

  friend std::ostream& operator<<(std::ostream& os, const OmegaSet& s) { return os << s.str(); }

  friend OmegaSet set_union(const OmegaSet& s, const OmegaSet& t);
  friend OmegaSet set_intersection(const OmegaSet& s, const OmegaSet& t);
  friend OmegaSet set_difference(const OmegaSet& s, const OmegaSet& t);
  friend RelateResult relate(const OmegaSet& s, const OmegaSet& t);

 private:
  // --- canonical data ---
  Nat period_;
  std::vector<Progression> progs_;  // sorted by start mod period_, step == period_
  std::vector<Nat> include_;
  std::vector<Nat> exclude_;
  std::uint32_t small_mask_ = 0;

  bool contains_slow(const Nat& x) const {
    if (std::binary_search(exclude_.begin(), exclude_.end(), x)) return false;
    if (std::binary_search(include_.begin(), include_.end(), x)) return true;
    const Progression* p = prog_for_residue(mod_floor(x, period_));
    return p != nullptr && x >= p->start;
  }

  const Progression* prog_for_residue(const Nat& r) const {
    auto it = std::lower_bound(progs_.begin(), progs_.end(), r,
                               [this](const Progression& p, const Nat& key) {
                                 return mod_floor(p.start, period_) < key;
                               });
    if (it == progs_.end() || mod_floor(it->start, period_) != r) return nullptr;
    return &*it;
  }

  void finish() {
    small_mask_ = 0;
    for (std::uint64_t i = 0; i <= 20; ++i) {
      if (contains_slow(Nat(i))) small_mask_ |= (1u << i);
    }
  }

  // One progression of the minimal period within a single live residue
  // class, as produced by canonicalization.
  struct ClassForm {
    Progression prog;
    std::vector<Nat> members;  // include-form corrections
    std::vector<Nat> holes;    // exclude-form corrections
  };

  static ClassForm analyze_class(const Nat& r, const Nat& d, const detail_omega::RawParts& raw);
  static OmegaSet canonicalize(detail_omega::RawParts raw);
};

inline OmegaSet::ClassForm OmegaSet::analyze_class(const Nat& r, const Nat& d,
                                                   const detail_omega::RawParts& raw) {
  using namespace detail_omega;
  // Where each progression meets the class {x == r (mod d)}.
  struct Meet {
    Nat sigma;   // first point of the progression in the class
    Nat lambda;  // joint modulus lcm(step, d)
  };
  std::vector<Meet> meets;
  Nat big = 1;
  for (const Progression& p : raw.progs) {
    CrtSolution c = crt(p.start, p.step, r, d);
    if (!c.solvable) continue;
    meets.push_back({class_ceil(c.value, c.modulus, p.start), c.modulus});
    big = lcm(big, c.modulus);
  }
  assert(!meets.empty());
  Nat nsub_n = big / d;
  if (nsub_n > kMaxSubclasses) throw BudgetExceededError("too many subclasses in one residue class");
  std::uint64_t nsub = to_u64(nsub_n);

  // Earliest coverage point of every subclass {x == rho (mod big)}.
  std::vector<Nat> rhos(nsub), mus(nsub);
  for (std::uint64_t j = 0; j < nsub; ++j) {
    Nat rho = mod_floor(r + d * j, big);
    std::optional<Nat> mu;
    for (const Meet& m : meets) {
      if (mod_floor(rho - m.sigma, m.lambda) != 0) continue;
      Nat s = class_ceil(rho, big, m.sigma);
      if (!mu || s < *mu) mu = s;
    }
    assert(mu.has_value());  // guaranteed once the period check passed
    rhos[j] = rho;
    mus[j] = *mu;
  }

  auto is_inc_member = [&](const Nat& x) {
    return std::binary_search(raw.inc.begin(), raw.inc.end(), x) &&
           !std::binary_search(raw.exc.begin(), raw.exc.end(), x);
  };

  // First member of the class.
  Nat scan = mus[0];
  for (std::uint64_t j = 1; j < nsub; ++j) {
    if (mus[j] < scan) scan = mus[j];
  }
  for (const Nat& x : raw.inc) {
    if (mod_floor(x, d) == mod_floor(r, d) && x < scan) {
      scan = x;
      break;  // inc is sorted, first hit is least
    }
  }
  std::uint64_t guard = 0;
  while (!raw.contains(scan)) {
    scan += d;
    if (++guard > kMaxCorrections) throw BudgetExceededError("class head scan budget exhausted");
  }
  const Nat first = scan;

  // Largest non-member of the class, if any.
  std::optional<Nat> omax;
  auto offer_omax = [&](const Nat& x) {
    if (!omax || x > *omax) omax = x;
  };
  for (std::uint64_t j = 0; j < nsub; ++j) {
    Nat y = mus[j] - big;
    std::uint64_t steps = 0;
    while (y >= 0 && is_inc_member(y)) {
      y -= big;
      if (++steps > kMaxCorrections) throw BudgetExceededError("hole scan budget exhausted");
    }
    if (y >= 0) offer_omax(y);
    for (const Nat& e : raw.exc) {
      if (e >= mus[j] && mod_floor(e - rhos[j], big) == 0) offer_omax(e);
    }
  }

  Nat tail = first;
  if (omax && *omax >= first) tail = *omax + d;

  // Count holes and members strictly between first and tail without
  // enumerating either side.
  Nat holes_n = 0;
  for (std::uint64_t j = 0; j < nsub; ++j) {
    Nat uncov_hi = (mus[j] < tail ? mus[j] : tail) - 1;
    Nat n_u = count_in_class(rhos[j], big, first + 1, uncov_hi);
    Nat inc_mem = 0;
    for (const Nat& x : raw.inc) {
      if (x > first && x <= uncov_hi && mod_floor(x - rhos[j], big) == 0 && is_inc_member(x)) ++inc_mem;
    }
    holes_n += n_u - inc_mem;
    for (const Nat& e : raw.exc) {
      if (e >= mus[j] && e > first && e < tail && mod_floor(e - rhos[j], big) == 0) ++holes_n;
    }
  }
  Nat between = (tail - first) / d;
  if (between > 0) between -= 1;
  Nat members_n = between - holes_n;

  ClassForm out;
  if (holes_n <= members_n) {
    if (holes_n > kMaxCorrections) throw BudgetExceededError("hole list exceeds correction budget");
    out.prog = Progression{first, d};
    for (std::uint64_t j = 0; j < nsub; ++j) {
      Nat lo = class_ceil(rhos[j], big, first + 1);
      for (Nat x = lo; x < tail; x += big) {
        if (x < mus[j]) {
          if (!is_inc_member(x)) out.holes.push_back(x);
        } else if (std::binary_search(raw.exc.begin(), raw.exc.end(), x)) {
          out.holes.push_back(x);
        }
      }
      if (out.holes.size() > kMaxCorrections)
        throw BudgetExceededError("hole list exceeds correction budget");
    }
    std::sort(out.holes.begin(), out.holes.end());
  } else {
    if (members_n > kMaxCorrections) throw BudgetExceededError("member list exceeds correction budget");
    out.prog = Progression{tail, d};
    out.members.push_back(first);
    std::uint64_t emitted = 0;
    for (std::uint64_t j = 0; j < nsub; ++j) {
      Nat lo = class_ceil(rhos[j], big, first + 1);
      for (Nat x = lo; x < tail; x += big) {
        bool member = x >= mus[j] ? !std::binary_search(raw.exc.begin(), raw.exc.end(), x)
                                  : is_inc_member(x);
        if (member) {
          out.members.push_back(x);
          if (++emitted > kMaxCorrections)
            throw BudgetExceededError("member list exceeds correction budget");
        }
      }
    }
    std::sort(out.members.begin(), out.members.end());
  }
  return out;
}

inline OmegaSet OmegaSet::canonicalize(detail_omega::RawParts raw) {
  using namespace detail_omega;
  raw.normalize_lists();

  // Deduplicate and drop progressions subsumed by coarser ones.
  {
    std::sort(raw.progs.begin(), raw.progs.end(), [](const Progression& a, const Progression& b) {
      if (a.step != b.step) return a.step < b.step;
      return a.start < b.start;
    });
    raw.progs.erase(std::unique(raw.progs.begin(), raw.progs.end()), raw.progs.end());
    std::vector<Progression> kept;
    for (const Progression& p : raw.progs) {
      bool subsumed = false;
      for (const Progression& q : kept) {
        if (p.step % q.step == 0 && p.start >= q.start && (p.start - q.start) % q.step == 0) {
          subsumed = true;
          break;
        }
      }
      if (!subsumed) kept.push_back(p);
    }
    raw.progs = std::move(kept);
  }

  OmegaSet out;
  if (raw.progs.empty()) {
    out.period_ = 1;
    for (const Nat& x : raw.inc) {
      if (!std::binary_search(raw.exc.begin(), raw.exc.end(), x)) out.include_.push_back(x);
    }
    out.finish();
    return out;
  }

  Nat big_l = 1;
  for (const Progression& p : raw.progs) big_l = lcm(big_l, p.step);

  Nat d = big_l;
  for (const Nat& cand : divisors_ascending(big_l, kMaxDivisors)) {
    if (cand == big_l) break;  // always valid, nothing smaller worked
    bool ok = false;
    try {
      ok = eventually_periodic(raw.progs, cand);
    } catch (const BudgetExceededError&) {
      ok = false;  // give up on this candidate, a larger divisor will do
    }
    if (ok) {
      d = cand;
      break;
    }
  }

  // Live residues mod d.
  std::vector<Nat> live;
  for (const Progression& p : raw.progs) {
    Nat g = gcd(p.step, d);
    Nat n = d / g;
    if (n > kMaxLiveResidues) throw BudgetExceededError("too many live residue classes");
    Nat base = mod_floor(p.start, g);
    for (Nat t = 0; t < n; ++t) live.push_back(base + g * t);
    if (live.size() > kMaxLiveResidues) throw BudgetExceededError("too many live residue classes");
  }
  std::sort(live.begin(), live.end());
  live.erase(std::unique(live.begin(), live.end()), live.end());

  out.period_ = d;
  for (const Nat& r : live) {
    ClassForm cf = analyze_class(r, d, raw);
    out.progs_.push_back(cf.prog);
    out.include_.insert(out.include_.end(), cf.members.begin(), cf.members.end());
    out.exclude_.insert(out.exclude_.end(), cf.holes.begin(), cf.holes.end());
  }
  // Members in dead classes.
  for (const Nat& x : raw.inc) {
    if (std::binary_search(raw.exc.begin(), raw.exc.end(), x)) continue;
    if (!std::binary_search(live.begin(), live.end(), mod_floor(x, d))) out.include_.push_back(x);
  }
  std::sort(out.include_.begin(), out.include_.end());
  out.include_.erase(std::unique(out.include_.begin(), out.include_.end()), out.include_.end());
  std::sort(out.exclude_.begin(), out.exclude_.end());
  // progs_ got built in live-residue order already
  out.finish();
  return out;
}

inline OmegaSet set_union(const OmegaSet& s, const OmegaSet& t) {
  detail_omega::RawParts raw;
  raw.progs = s.progs_;
  raw.progs.insert(raw.progs.end(), t.progs_.begin(), t.progs_.end());
  raw.inc = s.include_;
  raw.inc.insert(raw.inc.end(), t.include_.begin(), t.include_.end());
  for (const Nat& e : s.exclude_) {
    if (!t.contains(e)) raw.exc.push_back(e);
  }
  for (const Nat& e : t.exclude_) {
    if (!s.contains(e)) raw.exc.push_back(e);
  }
  return OmegaSet::canonicalize(std::move(raw));
}

inline OmegaSet set_intersection(const OmegaSet& s, const OmegaSet& t) {
  using namespace detail_omega;
  RawParts raw;
  const Nat& ds = s.period_;
  const Nat& dt = t.period_;
  Nat big = lcm(ds, dt);
  std::uint64_t pairs = 0;
  for (const Progression& ps : s.progs_) {
    for (const Progression& pt : t.progs_) {
      CrtSolution c = crt(ps.start, ds, pt.start, dt);
      if (!c.solvable) continue;
      if (++pairs > kMaxClassPairs) throw BudgetExceededError("intersection pair budget exhausted");
      Nat ts = class_ceil(c.value, big, ps.start);
      Nat tt = class_ceil(c.value, big, pt.start);
      Nat tail = ts > tt ? ts : tt;
      raw.progs.push_back({tail, big});
      for (const Nat& e : s.exclude_) {
        if (e >= tail && mod_floor(e - c.value, big) == 0) raw.exc.push_back(e);
      }
      for (const Nat& e : t.exclude_) {
        if (e >= tail && mod_floor(e - c.value, big) == 0) raw.exc.push_back(e);
      }
    }
  }
  for (const Nat& p : s.include_) {
    if (t.contains(p)) raw.inc.push_back(p);
  }
  for (const Nat& p : t.include_) {
    if (s.contains(p)) raw.inc.push_back(p);
  }
  return OmegaSet::canonicalize(std::move(raw));
}

inline OmegaSet set_difference(const OmegaSet& s, const OmegaSet& t) {
  using namespace detail_omega;
  RawParts raw;
  for (const Nat& p : s.include_) {
    if (!t.contains(p)) raw.inc.push_back(p);
  }
  const Nat& ds = s.period_;
  const Nat& dt = t.period_;
  Nat g = gcd(ds, dt);
  Nat big = lcm(ds, dt);
  Nat nsub_n = dt / g;
  if (!s.progs_.empty() && nsub_n > kMaxSubclasses)
    throw BudgetExceededError("difference subclass budget exhausted");
  std::uint64_t nsub = s.progs_.empty() ? 0 : to_u64(nsub_n);
  for (const Progression& ps : s.progs_) {
    Nat rs = mod_floor(ps.start, ds);
    for (std::uint64_t j = 0; j < nsub; ++j) {
      Nat rt = mod_floor(rs, g) + g * j;
      CrtSolution c = crt(rs, ds, rt, dt);
      assert(c.solvable);
      Nat ts = class_ceil(c.value, big, ps.start);
      const Progression* pt = t.prog_for_residue(mod_floor(rt, dt));
      if (pt == nullptr) {
        // t meets this subclass at most finitely often
        raw.progs.push_back({ts, big});
        for (const Nat& e : s.exclude_) {
          if (e >= ts && mod_floor(e - c.value, big) == 0) raw.exc.push_back(e);
        }
        for (const Nat& p : t.include_) {
          if (p >= ts && mod_floor(p - c.value, big) == 0) raw.exc.push_back(p);
        }
        continue;
      }
      Nat tt = class_ceil(c.value, big, pt->start);
      std::uint64_t steps = 0;
      for (Nat x = ts; x < tt; x += big) {
        if (++steps > kMaxCorrections) throw BudgetExceededError("difference gap budget exhausted");
        if (s.contains(x) && !t.contains(x)) raw.inc.push_back(x);
      }
      for (const Nat& e : t.exclude_) {
        if (e >= ts && e >= tt && mod_floor(e - c.value, big) == 0 && s.contains(e))
          raw.inc.push_back(e);
      }
    }
  }
  return OmegaSet::canonicalize(std::move(raw));
}

inline RelateResult relate(const OmegaSet& s, const OmegaSet& t) {
  using namespace detail_omega;
  const Nat& ds = s.period_;
  const Nat& dt = t.period_;
  Nat g = gcd(ds, dt);

  std::map<Nat, Nat> live_s, live_t;  // residue mod g -> number of live classes
  for (const Progression& p : s.progs_) ++live_s[mod_floor(p.start, g)];
  for (const Progression& p : t.progs_) ++live_t[mod_floor(p.start, g)];

  auto count_t = [&](const Nat& r) {
    auto it = live_t.find(mod_floor(r, g));
    return it == live_t.end() ? Nat(0) : it->second;
  };
  auto count_s = [&](const Nat& r) {
    auto it = live_s.find(mod_floor(r, g));
    return it == live_s.end() ? Nat(0) : it->second;
  };

  bool smt_inf = false, tms_inf = false, int_inf = false;
  for (const Progression& p : s.progs_) {
    Nat r = mod_floor(p.start, ds);
    Nat c = count_t(r);
    if (c < dt / g) smt_inf = true;
    if (c > 0) int_inf = true;
  }
  for (const Progression& p : t.progs_) {
    if (count_s(mod_floor(p.start, dt)) < ds / g) tms_inf = true;
  }

  // Members of a \ b when that difference is finite.
  auto finite_diff = [&](const OmegaSet& a, const OmegaSet& b) {
    std::vector<Nat> out;
    for (const Nat& p : a.include_) {
      if (!b.contains(p)) out.push_back(p);
    }
    Nat da = a.period_, db = b.period_;
    Nat gg = gcd(da, db);
    Nat bigm = lcm(da, db);
    for (const Progression& pa : a.progs_) {
      Nat ra = mod_floor(pa.start, da);
      Nat nsub_n = db / gg;
      if (nsub_n > kMaxLiveResidues)
        throw BudgetExceededError("difference materialization budget exhausted");
      std::uint64_t nsub = to_u64(nsub_n);
      for (std::uint64_t j = 0; j < nsub; ++j) {
        Nat rb = mod_floor(ra, gg) + gg * j;
        CrtSolution c = crt(ra, da, rb, db);
        assert(c.solvable);
        Nat ta = class_ceil(c.value, bigm, pa.start);
        const Progression* pb = b.prog_for_residue(mod_floor(rb, db));
        // finiteness of a \ b forces every subclass live in b
        assert(pb != nullptr);
        Nat tb = class_ceil(c.value, bigm, pb->start);
        std::uint64_t steps = 0;
        for (Nat x = ta; x < tb; x += bigm) {
          if (++steps > kMaxCorrections)
            throw BudgetExceededError("difference materialization budget exhausted");
          if (a.contains(x) && !b.contains(x)) out.push_back(x);
        }
        for (const Nat& e : b.exclude_) {
          if (e >= ta && e >= tb && mod_floor(e - c.value, bigm) == 0 && a.contains(e))
            out.push_back(e);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  auto finite_inter = [&]() {
    std::vector<Nat> out;
    for (const Nat& p : s.include_) {
      if (t.contains(p)) out.push_back(p);
    }
    for (const Nat& p : t.include_) {
      if (s.contains(p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  RelateResult res;
  if (!smt_inf) res.left_minus_right = finite_diff(s, t);
  if (!tms_inf) res.right_minus_left = finite_diff(t, s);
  if (!int_inf) res.intersection = finite_inter();

  if (!smt_inf && !tms_inf) res.relation = SetRelation::EqualStar;
  else if (!int_inf) res.relation = SetRelation::AlmostDisjoint;
  else if (!smt_inf) res.relation = SetRelation::AlmostSubset;
  else if (!tms_inf) res.relation = SetRelation::AlmostSuperset;
  else res.relation = SetRelation::Overlapping;
  return res;
}

// Is s \ t finite (s almost contained in t)?
inline bool almost_subset(const OmegaSet& s, const OmegaSet& t) {
  SetRelation r = relate(s, t).relation;
  return r == SetRelation::EqualStar || r == SetRelation::AlmostSubset;
}

// First member of s \ t above x, exact. Walks s's members instead of
// canonicalizing the difference: when s \ t is infinite the walk meets an
// uncovered residue class of t within about as many steps as t has live
// classes, even when the canonical difference would split into more
// subclasses than the budget admits. Falls back to the canonical difference
// when the walk stalls, so finite differences still answer exactly.
inline std::optional<Nat> first_difference_member_above(const OmegaSet& s, const OmegaSet& t,
                                                        const Nat& x) {
  Nat cur = x;
  for (std::uint64_t steps = 0; steps < detail_omega::kDiffWalkBudget; ++steps) {
    std::optional<Nat> next = s.first_member_above(cur);
    if (!next) return std::nullopt;
    if (!t.contains(*next)) return next;
    cur = *next;
  }
  return set_difference(s, t).first_member_above(x);
}

// The m residue classes mod m: pairwise almost disjoint, union omega.
inline std::vector<OmegaSet> ad_family(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("ad_family needs m >= 1");
  if (m > detail_omega::kMaxLiveResidues) throw BudgetExceededError("ad_family width exceeds budget");
  std::vector<OmegaSet> out;
  out.reserve(m);
  for (std::uint64_t r = 0; r < m; ++r) out.push_back(OmegaSet::progression(Nat(r), Nat(m)));
  return out;
}

// Multiples of base^1, base^2, ..., base^len: a strictly almost-decreasing chain.
inline std::vector<OmegaSet> tower(std::uint64_t len, const Nat& base = Nat(2)) {
  if (len < 1) throw std::invalid_argument("tower needs length >= 1");
  if (base < 2) throw std::invalid_argument("tower base must be at least 2");
  std::vector<OmegaSet> out;
  out.reserve(len);
  Nat step = 1;
  for (std::uint64_t j = 1; j <= len; ++j) {
    step *= base;
    out.push_back(OmegaSet::progression(Nat(0), step));
  }
  return out;
}

}  // namespace weaklat
