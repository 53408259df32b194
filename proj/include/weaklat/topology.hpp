#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weaklat/bicyclic.hpp"
#include "weaklat/filters.hpp"
#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"

namespace weaklat {

class InvalidParamsError : public std::invalid_argument {
 public:
  explicit InvalidParamsError(const std::string& what) : std::invalid_argument(what) {}
};

class BoundExhaustedError : public std::runtime_error {
 public:
  explicit BoundExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

// One side of a weak topology: either the attached maximum (no clustering
// along those rows or columns) or a shift-invariant filter.
class SifOne {
 public:
  static SifOne top() { return SifOne(); }
  static SifOne filter(SIFilter f) {
    SifOne s;
    s.f_ = std::move(f);
    return s;
  }

  bool is_top() const { return !f_.has_value(); }
  const SIFilter& filter_value() const {
    if (!f_) throw std::logic_error("filter_value on the top element");
    return *f_;
  }

  friend bool operator==(const SifOne& a, const SifOne& b) {
    if (a.is_top() != b.is_top()) return false;
    return a.is_top() || *a.f_ == *b.f_;
  }
  friend bool operator!=(const SifOne& a, const SifOne& b) { return !(a == b); }

 private:
  SifOne() = default;
  std::optional<SIFilter> f_;
};

// A weak topology on the bicyclic monoid with zero: all nonzero points are
// isolated, and the neighborhoods of zero are described by a pair of one-sided
// components. The left component watches rows (it constrains the column entry
// b of points (a,b) in rows a at or below the row cutoff), the right component
// watches columns symmetrically.
class WeakTopology {
 public:
  static WeakTopology from_pair(SifOne l, SifOne r) { return WeakTopology(std::move(l), std::move(r)); }
  static WeakTopology tau_min() { return from_pair(SifOne::top(), SifOne::top()); }
  static WeakTopology tau_L() { return from_pair(SifOne::top(), SifOne::filter(SIFilter::frechet())); }
  static WeakTopology tau_R() { return from_pair(SifOne::filter(SIFilter::frechet()), SifOne::top()); }
  static WeakTopology tau_c() {
    return from_pair(SifOne::filter(SIFilter::frechet()), SifOne::filter(SIFilter::frechet()));
  }

  const SifOne& left() const { return left_; }
  const SifOne& right() const { return right_; }

  friend bool operator==(const WeakTopology& a, const WeakTopology& b) {
    return a.left_ == b.left_ && a.right_ == b.right_;
  }
  friend bool operator!=(const WeakTopology& a, const WeakTopology& b) { return !(a == b); }

 private:
  WeakTopology(SifOne l, SifOne r) : left_(std::move(l)), right_(std::move(r)) {}
  SifOne left_, right_;
};

// Parameters of one basic neighborhood of zero: independent row and column
// cutoffs (the single-cutoff family generates the same filter of
// neighborhoods and this form keeps the membership rule uniform), plus one
// base index per filter component.
struct NbhdParams {
  Nat n, m;
  std::optional<BaseIndex> li, ri;
};

inline void validate_params(const WeakTopology& t, const NbhdParams& p) {
  if (p.n < 0 || p.m < 0) throw InvalidParamsError("cutoffs must be non-negative");
  if (t.left().is_top() != !p.li.has_value())
    throw InvalidParamsError("left index must be present exactly when the left side is a filter");
  if (t.right().is_top() != !p.ri.has_value())
    throw InvalidParamsError("right index must be present exactly when the right side is a filter");
  if (p.li) validate_index(t.left().filter_value(), *p.li);
  if (p.ri) validate_index(t.right().filter_value(), *p.ri);
}

// Membership in the basic neighborhood of zero denoted by p: zero always
// belongs; a nonzero (a,b) belongs iff it passes the row gate (a beyond the
// row cutoff, or b in the left filter's base element) and the column gate
// (symmetrically with a and b exchanged).
inline bool nbhd_member(const WeakTopology& t, const NbhdParams& p, const Element& e) {
  validate_params(t, p);
  if (e.is_zero()) return true;
  const Nat& a = e.a();
  const Nat& b = e.b();
  bool lok = a > p.n ||
             (p.li && detail_filter::base_member_unchecked(t.left().filter_value(), *p.li, b));
  if (!lok) return false;
  return b > p.m ||
         (p.ri && detail_filter::base_member_unchecked(t.right().filter_value(), *p.ri, a));
}

// ---------------------------------------------------------------------------
// The lattice structure, componentwise
// ---------------------------------------------------------------------------

struct SifOneComparison {
  Order order = Order::Unknown;
  std::optional<OrderVerdict> detail;  // present for filter-vs-filter
};

inline SifOneComparison compare_sifone(const SifOne& x, const SifOne& y, const Nat& bound = 40) {
  SifOneComparison c;
  if (x.is_top() && y.is_top()) {
    c.order = Order::Equal;
  } else if (x.is_top()) {
    c.order = Order::Greater;
  } else if (y.is_top()) {
    c.order = Order::Less;
  } else {
    c.detail = compare_filters(x.filter_value(), y.filter_value(), bound);
    c.order = c.detail->order;
  }
  return c;
}

struct TopologyComparison {
  Order order = Order::Unknown;
  SifOneComparison left, right;
};

// Product-order combination of the two component verdicts.
inline Order combine_orders(Order l, Order r) {
  if (l == Order::Incomparable || r == Order::Incomparable) return Order::Incomparable;
  if (l == Order::Unknown || r == Order::Unknown) return Order::Unknown;
  if (l == Order::Equal) return r;
  if (r == Order::Equal) return l;
  if (l == r) return l;
  return Order::Incomparable;  // strict in opposite directions
}

inline TopologyComparison compare_topologies(const WeakTopology& s, const WeakTopology& t,
                                             const Nat& bound = 40) {
  TopologyComparison c;
  c.left = compare_sifone(s.left(), t.left(), bound);
  c.right = compare_sifone(s.right(), t.right(), bound);
  c.order = combine_orders(c.left.order, c.right.order);
  return c;
}

inline SifOne join_sifone(const SifOne& x, const SifOne& y) {
  if (x.is_top() || y.is_top()) return SifOne::top();
  auto j = join_filters(x.filter_value(), y.filter_value());
  if (!j) return SifOne::top();  // improper joins land on the attached maximum
  return SifOne::filter(std::move(*j));
}

inline SifOne meet_sifone(const SifOne& x, const SifOne& y) {
  if (x.is_top()) return y;
  if (y.is_top()) return x;
  return SifOne::filter(meet_filters(x.filter_value(), y.filter_value()));
}

inline WeakTopology join_topologies(const WeakTopology& s, const WeakTopology& t) {
  return WeakTopology::from_pair(join_sifone(s.left(), t.left()), join_sifone(s.right(), t.right()));
}

inline WeakTopology meet_topologies(const WeakTopology& s, const WeakTopology& t) {
  return WeakTopology::from_pair(meet_sifone(s.left(), t.left()), meet_sifone(s.right(), t.right()));
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

enum class TraceSide { Row, Column };

// The trace of a basic neighborhood along one row or column: for a row i the
// set of b with (i,b) in the neighborhood, for a column i the set of a with
// (a,i) in it.
class TraceOracle {
 public:
  TraceOracle(WeakTopology t, TraceSide side, Nat i, NbhdParams p)
      : t_(std::move(t)), side_(side), i_(std::move(i)), p_(std::move(p)) {
    validate_params(t_, p_);
    if (i_ < 0) throw InvalidParamsError("row or column index must be non-negative");
  }

  bool contains(const Nat& x) const {
    if (x < 0) return false;
    Element e = side_ == TraceSide::Row ? Element(i_, x) : Element(x, i_);
    return nbhd_member(t_, p_, e);
  }

  std::vector<Nat> members_upto(const Nat& bound) const {
    std::vector<Nat> out;
    for (Nat x = 0; x <= bound; ++x) {
      if (contains(x)) out.push_back(x);
    }
    return out;
  }

  TraceSide side() const { return side_; }
  const Nat& index() const { return i_; }

 private:
  WeakTopology t_;
  TraceSide side_;
  Nat i_;
  NbhdParams p_;
};

inline TraceOracle filter_trace(const WeakTopology& t, TraceSide side, Nat i, NbhdParams p) {
  return TraceOracle(t, side, std::move(i), std::move(p));
}

// ---------------------------------------------------------------------------
// Set-level refinement evidence
// ---------------------------------------------------------------------------

struct RefinementStep {
  NbhdParams coarse_params;
  NbhdParams fine_params;
  bool verified;  // containment certified via element views and cutoffs
};

struct RefinementFailure {
  NbhdParams coarse_params;       // a basic neighborhood no fine one refines
  NbhdParams fine_params_tried;   // the sampled fine neighborhood
  std::optional<Element> escape;  // a point of the fine one outside the coarse one
};

struct RefinementWitness {
  bool refines = false;
  std::vector<RefinementStep> steps;
  std::optional<RefinementFailure> failure;
};

namespace detail_topo {

// Sampled cutoff values and index levels for the evidence grid.
inline std::vector<Nat> grid_values(const Nat& bound) {
  std::vector<Nat> vs;
  for (Nat v : {Nat(0), Nat(1), Nat(2), bound}) {
    if (v <= bound && (vs.empty() || vs.back() != v)) vs.push_back(v);
  }
  return vs;
}

inline std::vector<BaseIndex> index_samples(const SIFilter& f, const Nat& bound) {
  std::vector<BaseIndex> out;
  Nat top = bound < 2 ? bound : Nat(2);
  for (Nat lvl = 0; lvl <= top; ++lvl) {
    if (f.generator_reps().empty()) {
      out.push_back(index_at_level(base_escape_index(f, 0), lvl));
    } else {
      for (const BaseIndex& rep : f.generator_reps()) out.push_back(index_at_level(rep, lvl));
    }
  }
  return out;
}

// For a filter-against-filter side, the fine index refining the coarse
// element, or nullopt when the fine side cannot get inside it.
inline std::optional<BaseIndex> refining_index(const SIFilter& coarse_f, const SIFilter& fine_f,
                                               const BaseIndex& coarse_idx, const Nat& bound) {
  Nat cap = detail_filter::refine_level_cap(coarse_f, fine_f, bound);
  return detail_filter::least_refining_index(fine_f, element_view(coarse_f, coarse_idx), cap);
}

// A valid level-zero index for a filter side, if the side has one.
inline std::optional<BaseIndex> default_index(const SifOne& s) {
  if (s.is_top()) return std::nullopt;
  return base_escape_index(s.filter_value(), 0);
}

}  // namespace detail_topo

// Evidence that `fine` refines `coarse` at the level of basic neighborhoods:
// for each sampled coarse neighborhood, a fine neighborhood inside it. When
// the refinement fails, reports a coarse neighborhood together with an
// escaping point of a sampled fine neighborhood.
inline RefinementWitness refinement_witness(const WeakTopology& coarse, const WeakTopology& fine,
                                            const Nat& bound = 40) {
  using namespace detail_topo;
  RefinementWitness w;

  // decide each side first
  SifOneComparison lc = compare_sifone(coarse.left(), fine.left(), bound);
  SifOneComparison rc = compare_sifone(coarse.right(), fine.right(), bound);
  bool left_ok = lc.order == Order::Less || lc.order == Order::Equal;
  bool right_ok = rc.order == Order::Less || rc.order == Order::Equal;
  if (lc.order == Order::Unknown || rc.order == Order::Unknown)
    throw BoundExhaustedError("component order undecided");

  if (!left_ok || !right_ok) {
    RefinementFailure fail;
    fail.coarse_params.n = 0;
    fail.coarse_params.m = 0;
    fail.fine_params_tried.n = 0;
    fail.fine_params_tried.m = 0;
    fail.coarse_params.li = default_index(coarse.left());
    fail.coarse_params.ri = default_index(coarse.right());
    fail.fine_params_tried.li = default_index(fine.left());
    fail.fine_params_tried.ri = default_index(fine.right());
    bool on_left = !left_ok;
    const SifOne& cs = on_left ? coarse.left() : coarse.right();
    const SifOne& fs = on_left ? fine.left() : fine.right();
    std::optional<Nat> point;
    if (cs.is_top()) {
      // every fine neighborhood lets some filter point through below the cutoff
      const SIFilter& ff = fs.filter_value();
      BaseIndex probe = *(on_left ? fail.fine_params_tried.li : fail.fine_params_tried.ri);
      try {
        point = view_first_member_above(element_view(ff, probe), Nat(0));
      } catch (const BudgetExceededError&) {
        point = std::nullopt;
      }
    } else {
      // filter against filter: reuse the separation certificate's escapes
      OrderVerdict sep = compare_filters(cs.filter_value(), fs.filter_value(), bound);
      if (sep.not_le) {
        if (on_left) {
          fail.coarse_params.li = sep.not_le->witness;
        } else {
          fail.coarse_params.ri = sep.not_le->witness;
        }
        for (const EscapeSample& es : sep.not_le->escapes) {
          if (es.point) {
            point = es.point;
            if (on_left) {
              fail.fine_params_tried.li = es.probe;
            } else {
              fail.fine_params_tried.ri = es.probe;
            }
            break;
          }
        }
      }
    }
    if (point) {
      fail.escape = on_left ? Element(Nat(0), *point) : Element(*point, Nat(0));
    }
    w.refines = false;
    w.failure = std::move(fail);
    return w;
  }

  // the order holds; build the evidence grid
  w.refines = true;
  std::vector<Nat> cuts = grid_values(bound);
  std::vector<std::optional<BaseIndex>> lis, ris;
  if (coarse.left().is_top()) {
    lis.push_back(std::nullopt);
  } else {
    for (BaseIndex& i : index_samples(coarse.left().filter_value(), bound)) lis.push_back(i);
  }
  if (coarse.right().is_top()) {
    ris.push_back(std::nullopt);
  } else {
    for (BaseIndex& i : index_samples(coarse.right().filter_value(), bound)) ris.push_back(i);
  }
  for (const Nat& n : cuts) {
    for (const Nat& m : cuts) {
      for (const auto& li : lis) {
        for (const auto& ri : ris) {
          if (w.steps.size() >= 64) return w;
          NbhdParams cp{n, m, li, ri};
          NbhdParams fp{n, m, std::nullopt, std::nullopt};
          bool verified = true;
          if (!fine.left().is_top()) {
            if (coarse.left().is_top()) {
              // cannot happen: Top-coarse forces Top-fine when the order holds
              verified = false;
            } else {
              auto fi = detail_topo::refining_index(coarse.left().filter_value(),
                                                    fine.left().filter_value(), *li, bound);
              if (fi) {
                fp.li = *fi;
              } else {
                verified = false;
                fp.li = detail_topo::default_index(fine.left());
              }
            }
          }
          if (!fine.right().is_top()) {
            if (coarse.right().is_top()) {
              verified = false;
            } else {
              auto fi = detail_topo::refining_index(coarse.right().filter_value(),
                                                    fine.right().filter_value(), *ri, bound);
              if (fi) {
                fp.ri = *fi;
              } else {
                verified = false;
                fp.ri = detail_topo::default_index(fine.right());
              }
            }
          }
          w.steps.push_back(RefinementStep{cp, fp, verified});
        }
      }
    }
  }
  return w;
}

// Least base index (level-lexicographic) whose element sits inside both given
// base elements; such an index exists because bases are directed.
inline BaseIndex common_refinement(const SIFilter& f, const BaseIndex& i1, const BaseIndex& i2) {
  ElementView v1 = element_view(f, i1);
  ElementView v2 = element_view(f, i2);
  Nat cap = detail_filter::refine_level_cap(f, f, 40) + 40;
  for (Nat lvl = 0;; ++lvl) {
    if (lvl > cap) throw BoundExhaustedError("no common refinement found in the base");
    std::vector<BaseIndex> cands;
    if (f.generator_reps().empty()) {
      cands.push_back(index_at_level(base_escape_index(f, 0), lvl));
    } else {
      for (const BaseIndex& rep : f.generator_reps()) cands.push_back(index_at_level(rep, lvl));
    }
    for (const BaseIndex& c : cands) {
      ElementView v = element_view(f, c);
      if (view_subset(v, v1).subset && view_subset(v, v2).subset) return c;
    }
  }
}

// Parameters denoting a basic neighborhood inside both given ones; the
// neighborhood family is directed.
inline NbhdParams params_below(const WeakTopology& t, const NbhdParams& p, const NbhdParams& q) {
  validate_params(t, p);
  validate_params(t, q);
  NbhdParams r;
  r.n = p.n > q.n ? p.n : q.n;
  r.m = p.m > q.m ? p.m : q.m;
  if (p.li) r.li = common_refinement(t.left().filter_value(), *p.li, *q.li);
  if (p.ri) r.ri = common_refinement(t.right().filter_value(), *p.ri, *q.ri);
  return r;
}

// The cutoff k for which the denoted neighborhood contains every (a,b) with
// both coordinates above k (with zero, the corner-style basic set).
inline Nat weakness_bound(const WeakTopology& t, const NbhdParams& p) {
  validate_params(t, p);
  return p.n > p.m ? p.n : p.m;
}

}  // namespace weaklat
