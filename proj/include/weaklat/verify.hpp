#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weaklat/bicyclic.hpp"
#include "weaklat/filters.hpp"
#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"
#include "weaklat/topology.hpp"

namespace weaklat {

enum class Verdict { Pass, Fail, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "unknown";
  }
}

// One translate-containment certificate: the witness neighborhood maps into
// the target under the named generator action.
struct ContinuityWitness {
  std::string op;
  NbhdParams target;
  NbhdParams witness;
};

// A neighborhood/point pair; the containing check says which way it counts
// (separation excludes the point, accumulation includes it).
struct ParamPointWitness {
  NbhdParams params;
  Element point;
};

struct Counterexample {
  std::string detail;
  std::optional<std::string> op;
  std::optional<NbhdParams> target;
  std::optional<NbhdParams> witness_tried;
  std::optional<Element> point;
  std::optional<Element> image;
};

struct CheckReport {
  std::string check;
  std::string subject;
  std::vector<std::pair<std::string, std::string>> params;
  Verdict verdict = Verdict::Unknown;
  std::vector<std::string> witnesses;
  std::vector<ContinuityWitness> continuity;
  std::vector<ParamPointWitness> points;
  std::optional<Counterexample> counterexample;
};

inline std::string describe(const SIFilter& f) {
  switch (f.kind()) {
    case SIFilter::Kind::Frechet:
      return "frechet";
    case SIFilter::Kind::Factorial:
      return "factorial(" + f.center_set().str() + ")";
    case SIFilter::Kind::FilterInduced: {
      std::string out = "filter-induced{";
      for (std::size_t i = 0; i < f.base_sets().size(); ++i) {
        if (i) out += ", ";
        out += f.base_sets()[i].str();
      }
      return out + "}";
    }
    case SIFilter::Kind::Meet:
      return "meet(" + describe(f.left()) + ", " + describe(f.right()) + ")";
    default:
      return "join(" + describe(f.left()) + ", " + describe(f.right()) + ")";
  }
}

inline std::string describe(const SifOne& s) {
  return s.is_top() ? std::string("top") : describe(s.filter_value());
}

inline std::string describe(const WeakTopology& t) {
  return "(" + describe(t.left()) + ", " + describe(t.right()) + ")";
}

namespace detail_verify {

// Membership tables for one basic neighborhood over a coordinate box, so the
// translate checks run on plain integers.
struct GateTable {
  std::uint64_t n = 0, m = 0;
  std::vector<char> col, row;  // col[b]: b passes the left filter; row[a]: a passes the right

  bool member(std::uint64_t a, std::uint64_t b) const {
    return (a > n || col[b]) && (b > m || row[a]);
  }
};

inline GateTable gate_table(const WeakTopology& t, const NbhdParams& p, std::uint64_t size) {
  GateTable g;
  g.n = to_u64(p.n);
  g.m = to_u64(p.m);
  g.col.assign(size + 1, 0);
  g.row.assign(size + 1, 0);
  if (p.li) {
    const SIFilter& f = t.left().filter_value();
    for (std::uint64_t x = 0; x <= size; ++x)
      g.col[x] = detail_filter::base_member_unchecked(f, *p.li, Nat(x));
  }
  if (p.ri) {
    const SIFilter& f = t.right().filter_value();
    for (std::uint64_t x = 0; x <= size; ++x)
      g.row[x] = detail_filter::base_member_unchecked(f, *p.ri, Nat(x));
  }
  return g;
}

// The four generator actions on a nonzero (a, b).
inline std::pair<std::uint64_t, std::uint64_t> generator_image(int op, std::uint64_t a,
                                                               std::uint64_t b) {
  switch (op) {
    case 0:  // (0,1) * (a,b)
      return a >= 1 ? std::make_pair(a - 1, b) : std::make_pair(std::uint64_t(0), b + 1);
    case 1:  // (1,0) * (a,b)
      return {a + 1, b};
    case 2:  // (a,b) * (0,1)
      return {a, b + 1};
    default:  // (a,b) * (1,0)
      return b <= 1 ? std::make_pair(a + 1 - b, std::uint64_t(0)) : std::make_pair(a, b - 1);
  }
}

inline const char* op_name(int op) {
  switch (op) {
    case 0: return "(0,1)*U";
    case 1: return "(1,0)*U";
    case 2: return "U*(0,1)";
    default: return "U*(1,0)";
  }
}

// Witness parameters for generator case `op` against target p: cutoff
// arithmetic plus shift witnesses on the filter indices. Left multiplication
// by (0,1) lowers rows (and bumps row 0's column), so the left index needs a
// +1 shift witness and the right one a -1 witness; the other cases permute
// the same pattern. Right multiplication by (1,0) additionally sends columns
// 0 and 1 to column 0, so its left index must avoid {0, 1}.
inline NbhdParams continuity_witness_params(const WeakTopology& t, const NbhdParams& p, int op) {
  NbhdParams q;
  auto lwit = [&](const Nat& s) { return shift_witness(t.left().filter_value(), *p.li, s); };
  auto rwit = [&](const Nat& s) { return shift_witness(t.right().filter_value(), *p.ri, s); };
  switch (op) {
    case 0:
      q.n = p.n + 1;
      q.m = p.m;
      if (p.li) q.li = lwit(1);
      if (p.ri) q.ri = rwit(-1);
      break;
    case 1:
      q.n = p.n;
      q.m = p.m;
      q.li = p.li;
      if (p.ri) q.ri = rwit(1);
      break;
    case 2:
      q.n = p.n;
      q.m = p.m;
      if (p.li) q.li = lwit(1);
      q.ri = p.ri;
      break;
    default:
      q.n = p.n + 1;
      q.m = p.m + 1;
      if (p.li) {
        const SIFilter& f = t.left().filter_value();
        q.li = common_refinement(f, lwit(-1), base_escape_index(f, 1));
      }
      if (p.ri) q.ri = rwit(1);
      break;
  }
  return q;
}

// Sampled target parameters: grid cutoffs crossed with sampled base indices,
// deterministic order, capped.
inline std::vector<NbhdParams> sample_params(const WeakTopology& t, const Nat& depth,
                                             std::size_t cap) {
  std::vector<Nat> cuts = detail_topo::grid_values(depth);
  std::vector<std::optional<BaseIndex>> lis, ris;
  if (t.left().is_top()) {
    lis.push_back(std::nullopt);
  } else {
    for (BaseIndex& i : detail_topo::index_samples(t.left().filter_value(), depth)) lis.push_back(i);
  }
  if (t.right().is_top()) {
    ris.push_back(std::nullopt);
  } else {
    for (BaseIndex& i : detail_topo::index_samples(t.right().filter_value(), depth))
      ris.push_back(i);
  }
  std::vector<NbhdParams> out;
  for (const Nat& n : cuts) {
    for (const Nat& m : cuts) {
      for (const auto& li : lis) {
        for (const auto& ri : ris) {
          if (out.size() >= cap) return out;
          out.push_back(NbhdParams{n, m, li, ri});
        }
      }
    }
  }
  return out;
}

inline std::uint64_t box_cap(const Nat& depth) {
  Nat d = depth < 28 ? Nat(28) : depth;
  return to_u64(d * (depth + 2));
}

}  // namespace detail_verify

// Separate continuity of multiplication at zero: for each generator case and
// each sampled target neighborhood, the constructed witness neighborhood maps
// into the target; verified exhaustively on the coordinate box (the box
// clears every low factorial-interval collision) and symbolically on the
// index containments.
inline CheckReport check_shift_continuity(const WeakTopology& t, const Nat& depth = 10) {
  using namespace detail_verify;
  CheckReport r;
  r.check = "shift-continuity";
  r.subject = describe(t);
  r.params.emplace_back("depth", depth.str());
  if (depth < 0 || depth > 1000) throw std::invalid_argument("depth out of range");
  std::uint64_t cap = box_cap(depth);
  r.params.emplace_back("box", std::to_string(cap));

  for (const NbhdParams& p : sample_params(t, depth, 12)) {
    GateTable target = gate_table(t, p, cap + 2);
    for (int op = 0; op < 4; ++op) {
      NbhdParams q = continuity_witness_params(t, p, op);
      GateTable witness = gate_table(t, q, cap);
      for (std::uint64_t a = 0; a <= cap; ++a) {
        for (std::uint64_t b = 0; b <= cap; ++b) {
          if (!witness.member(a, b)) continue;
          auto [ia, ib] = generator_image(op, a, b);
          if (!target.member(ia, ib)) {
            r.verdict = Verdict::Fail;
            r.counterexample = Counterexample{"witness point escapes the target",
                                              op_name(op),
                                              p,
                                              q,
                                              Element(Nat(a), Nat(b)),
                                              Element(Nat(ia), Nat(ib))};
            return r;
          }
        }
      }
      // symbolic: the witness indices denote subsets of the target's
      if (p.li && !view_subset(element_view(t.left().filter_value(), *q.li),
                               element_view(t.left().filter_value(), *p.li))
                       .subset) {
        r.verdict = Verdict::Fail;
        r.counterexample =
            Counterexample{"left witness index does not refine the target index", op_name(op), p, q,
                           std::nullopt, std::nullopt};
        return r;
      }
      if (p.ri && !view_subset(element_view(t.right().filter_value(), *q.ri),
                               element_view(t.right().filter_value(), *p.ri))
                       .subset) {
        r.verdict = Verdict::Fail;
        r.counterexample =
            Counterexample{"right witness index does not refine the target index", op_name(op), p,
                           q, std::nullopt, std::nullopt};
        return r;
      }
      r.continuity.push_back(ContinuityWitness{op_name(op), p, q});
    }
  }
  r.verdict = Verdict::Pass;
  r.witnesses.push_back(std::to_string(r.continuity.size()) + " translate containments certified");
  return r;
}

// A raw one-sided base of exact factorial points {n! : n >= level}: the
// negative control. It is not shift-stable (j!+1 is never a factorial past
// j = 1), so no candidate witness level survives the translate check.
struct RawFactorialBase {
  Nat min_center = 0;

  bool member(const Nat& level, const Nat& x) const {
    Nat c = level < min_center ? min_center : level;
    Nat f = 1;
    for (Nat n = 1; n <= c; ++n) f *= n;
    while (f < x) {
      c += 1;
      if (c > Nat(4000)) return false;
      f *= c;
    }
    return f == x;
  }
};

inline CheckReport check_shift_continuity(const RawFactorialBase& base, const Nat& depth = 10) {
  CheckReport r;
  r.check = "shift-continuity";
  r.subject = "raw-base{n! : n >= level}";
  r.params.emplace_back("depth", depth.str());
  // the left slot holds the raw base, the right slot is top; row 0 of any
  // candidate neighborhood at level k' contains (0, j!) for every j >= k',
  // and (0,1)*(0, j!) = (0, j!+1) lands outside every target level
  for (Nat lvl = 0; lvl <= depth; ++lvl) {
    Nat j = lvl < 4 ? Nat(4) : lvl;
    Nat pt = 1;
    for (Nat n = 1; n <= j; ++n) pt *= n;
    Nat image = pt + 1;
    if (!base.member(lvl, pt) || base.member(Nat(0), image)) {
      r.verdict = Verdict::Unknown;
      r.witnesses.push_back("candidate level " + lvl.str() + ": escape construction failed");
      return r;
    }
    r.witnesses.push_back("candidate level " + lvl.str() + ": (0," + pt.str() +
                          ") maps to column " + image.str() + ", not in the base at any level");
    if (!r.counterexample) {
      r.counterexample =
          Counterexample{"row-0 image escapes every candidate witness level up to the depth",
                         detail_verify::op_name(0),
                         NbhdParams{0, 0, {}, {}},
                         NbhdParams{1, 0, {}, {}},
                         Element(Nat(0), pt),
                         Element(Nat(0), image)};
    }
  }
  r.verdict = Verdict::Fail;
  return r;
}

// Hausdorff ingredient: zero is separated from every nonzero point in the
// coordinate box by a basic neighborhood built from cutoffs at the
// coordinates and escape indices past them.
inline CheckReport check_hausdorff(const WeakTopology& t, const Nat& point_bound = 20) {
  CheckReport r;
  r.check = "hausdorff";
  r.subject = describe(t);
  r.params.emplace_back("point_bound", point_bound.str());
  for (Nat a = 0; a <= point_bound; ++a) {
    for (Nat b = 0; b <= point_bound; ++b) {
      NbhdParams p{a, b, {}, {}};
      if (!t.left().is_top()) p.li = base_escape_index(t.left().filter_value(), b);
      if (!t.right().is_top()) p.ri = base_escape_index(t.right().filter_value(), a);
      Element e(a, b);
      if (nbhd_member(t, p, e)) {
        r.verdict = Verdict::Fail;
        r.counterexample = Counterexample{"separating neighborhood still contains the point",
                                          std::nullopt, p, std::nullopt, e, std::nullopt};
        return r;
      }
      r.points.push_back(ParamPointWitness{p, e});
    }
  }
  r.verdict = Verdict::Pass;
  r.witnesses.push_back(std::to_string(r.points.size()) + " separations certified");
  return r;
}

// Inversion maps the (n,m,li,ri)-neighborhood pointwise onto the
// (m,n,ri,li)-neighborhood of the transposed topology, so inversion is
// continuous exactly when the two components coincide.
inline CheckReport check_inversion_continuity(const WeakTopology& t, const Nat& depth = 10) {
  CheckReport r;
  r.check = "inversion-continuity";
  r.subject = describe(t);
  r.params.emplace_back("depth", depth.str());
  SifOneComparison cmp = compare_sifone(t.left(), t.right(), depth < 40 ? Nat(40) : depth);
  if (cmp.order == Order::Unknown) {
    r.verdict = Verdict::Unknown;
    return r;
  }
  if (cmp.order == Order::Equal) {
    r.verdict = Verdict::Pass;
    r.witnesses.push_back(t.left().is_top() && t.right().is_top()
                              ? std::string("both components are the attached maximum")
                              : std::string("components certified equal as filters"));
    return r;
  }
  r.verdict = Verdict::Fail;
  const WeakTopology transposed = WeakTopology::from_pair(t.right(), t.left());
  for (const WeakTopology* coarse : {&transposed, &t}) {
    bool coarse_is_transposed = coarse == &transposed;
    const WeakTopology& fine = coarse_is_transposed ? t : transposed;
    RefinementWitness w = refinement_witness(*coarse, fine, depth < 40 ? Nat(40) : depth);
    if (!w.refines && w.failure) {
      r.counterexample = Counterexample{
          coarse_is_transposed
              ? std::string("transposed neighborhood contains no original basic neighborhood")
              : std::string("original neighborhood contains no transposed basic neighborhood"),
          "inversion", w.failure->coarse_params, w.failure->fine_params_tried, w.failure->escape,
          std::nullopt};
      break;
    }
  }
  return r;
}

// Zero accumulates every sigma class: each sampled basic neighborhood meets
// the diagonal a - b = k beyond the bound (both coordinates clear every
// cutoff, so the corner disjuncts apply).
inline CheckReport check_sigma_accumulation(const WeakTopology& t, const Nat& k,
                                            const Nat& bound = 100) {
  CheckReport r;
  r.check = "sigma-accumulation";
  r.subject = describe(t);
  r.params.emplace_back("class", k.str());
  r.params.emplace_back("bound", bound.str());
  Nat absk = k < 0 ? Nat(-k) : k;
  for (const NbhdParams& p : detail_verify::sample_params(t, bound, 12)) {
    Nat c = (p.n > p.m ? p.n : p.m);
    if (bound > c) c = bound;
    c += 1;
    Element e = k >= 0 ? Element(c + absk, c) : Element(c, c + absk);
    if (!nbhd_member(t, p, e) || e.sigma_class() != k) {
      r.verdict = Verdict::Unknown;
      r.witnesses.push_back("diagonal search failed at " + e.str());
      return r;
    }
    r.points.push_back(ParamPointWitness{p, e});
  }
  r.verdict = Verdict::Pass;
  r.witnesses.push_back(std::to_string(r.points.size()) + " class-" + k.str() +
                        " accumulation points found");
  return r;
}

// The translation identities of the deep-row sets A_n = {0} u {(a,b) : a > n}
// and the dual deep-column sets B_n: (i,j)*A_{n+j} in A_n, A_n*(i,j) in A_n,
// A_n*A_n in A_n, and the transposes. Exhaustive below the coordinate cap;
// the tail is forced by the first coordinate of any product with a deep-row
// element staying above n (i + a - j >= a - j > n when a > n + j), spot-checked
// at huge coordinates.
inline CheckReport check_tauL_identities(const Nat& bound = 10) {
  CheckReport r;
  r.check = "translation-identities";
  r.subject = "deep-row sets A_n and deep-column sets B_n";
  r.params.emplace_back("bound", bound.str());
  std::uint64_t nb = to_u64(bound);
  std::uint64_t cap = 2 * nb + 30;
  r.params.emplace_back("box", std::to_string(cap));
  auto in_a = [](const Element& e, std::uint64_t n) { return e.is_zero() || e.a() > Nat(n); };
  auto in_b = [](const Element& e, std::uint64_t n) { return e.is_zero() || e.b() > Nat(n); };
  std::vector<std::uint64_t> sparse = {0, 1, nb, nb + 1, cap / 2, cap};
  std::uint64_t checked = 0;
  auto fail = [&](const std::string& what, const Element& x, const Element& y) {
    r.verdict = Verdict::Fail;
    r.counterexample = Counterexample{what,        std::nullopt, std::nullopt,
                                      std::nullopt, x,            y};
  };

  for (std::uint64_t n = 0; n <= nb; ++n) {
    for (std::uint64_t i = 0; i <= nb; ++i) {
      for (std::uint64_t j = 0; j <= nb; ++j) {
        Element g(i, j);
        for (std::uint64_t a = n + j + 1; a <= cap; ++a) {
          for (std::uint64_t b : sparse) {
            Element x(a, b);
            Element y(b, a);
            ++checked;
            if (!in_a(g * x, n)) {
              fail("(i,j)*A_{n+j} left A_n", g, x);
              return r;
            }
            if (a > n + i && !in_b(y * g, n)) {
              fail("B_{n+i}*(i,j) left B_n", y, g);
              return r;
            }
          }
        }
        for (std::uint64_t a = n + 1; a <= cap; ++a) {
          for (std::uint64_t b : sparse) {
            Element x(a, b);
            Element y(b, a);
            ++checked;
            if (!in_a(x * g, n)) {
              fail("A_n*(i,j) left A_n", x, g);
              return r;
            }
            if (!in_b(g * y, n)) {
              fail("(i,j)*B_n left B_n", g, y);
              return r;
            }
          }
        }
      }
    }
    // products of two deep elements, sparse second coordinates
    for (std::uint64_t a = n + 1; a <= cap; ++a) {
      for (std::uint64_t c = n + 1; c <= cap; c += 3) {
        for (std::uint64_t b : sparse) {
          for (std::uint64_t d : sparse) {
            ++checked;
            if (!in_a(Element(a, b) * Element(c, d), n)) {
              fail("A_n*A_n left A_n", Element(a, b), Element(c, d));
              return r;
            }
            if (!in_b(Element(b, a) * Element(d, c), n)) {
              fail("B_n*B_n left B_n", Element(b, a), Element(d, c));
              return r;
            }
          }
        }
      }
    }
    // zero absorbs into every A_n and B_n
    if (!in_a(Element::zero() * Element(n + 1, 0), n) ||
        !in_b(Element(0, n + 1) * Element::zero(), n)) {
      fail("zero product left the set", Element::zero(), Element::zero());
      return r;
    }
    // tail spot checks far beyond the box
    Nat huge = Nat(1) << 80;
    for (const Nat& off : {Nat(0), Nat(17), Nat(12345)}) {
      Element deep(huge + off, 3);
      if (!in_a(Element(2, 3) * deep, n) || !in_a(deep * Element(5, 1), n) ||
          !in_a(deep * deep, n)) {
        fail("tail spot check left A_n", deep, deep);
        return r;
      }
    }
  }
  r.verdict = Verdict::Pass;
  r.witnesses.push_back(std::to_string(checked) + " product containments checked");
  return r;
}

// ---------------------------------------------------------------------------
// Finite stand-ins for the cardinality results
// ---------------------------------------------------------------------------

enum class AntichainFlavor { Residues, FilterInduced };
enum class ChainFlavor { Tower, FilterChain };

struct AntichainResult {
  std::vector<WeakTopology> topologies;
  std::vector<CheckReport> reports;  // one per unordered pair
};

struct ChainResult {
  std::vector<WeakTopology> topologies;
  std::vector<CheckReport> reports;  // one per consecutive pair
};

inline AntichainResult build_antichain(std::uint64_t m,
                                       AntichainFlavor flavor = AntichainFlavor::Residues) {
  if (m < 1) throw std::invalid_argument("antichain needs m >= 1");
  AntichainResult out;
  std::vector<OmegaSet> sets = ad_family(m);
  for (OmegaSet& s : sets) {
    SIFilter f = flavor == AntichainFlavor::Residues
                     ? SIFilter::factorial(std::move(s))
                     : SIFilter::filter_induced({std::move(s)});
    out.topologies.push_back(
        WeakTopology::from_pair(SifOne::filter(std::move(f)), SifOne::filter(SIFilter::frechet())));
  }
  for (std::size_t i = 0; i < out.topologies.size(); ++i) {
    for (std::size_t j = i + 1; j < out.topologies.size(); ++j) {
      CheckReport r;
      r.check = "antichain-pair";
      r.subject = std::to_string(i) + " vs " + std::to_string(j);
      TopologyComparison c = compare_topologies(out.topologies[i], out.topologies[j]);
      bool ok = c.order == Order::Incomparable && c.left.detail.has_value() &&
                c.left.detail->disjoint_pair.has_value();
      if (ok) {
        // independent disjointness re-check of the certified base elements
        const DisjointPair& dp = *c.left.detail->disjoint_pair;
        const SIFilter& fl = out.topologies[i].left().filter_value();
        const SIFilter& fr = out.topologies[j].left().filter_value();
        DisjointCheck dc = view_disjoint(element_view(fl, dp.left), element_view(fr, dp.right));
        ok = dc.disjoint;
        if (ok) {
          r.witnesses.push_back("disjoint base elements at indices " + dp.left.str() + " / " +
                                dp.right.str());
        }
      }
      r.verdict = ok ? Verdict::Pass : Verdict::Fail;
      if (!ok)
        r.counterexample = Counterexample{"pair not certified incomparable with disjoint bases",
                                          std::nullopt, std::nullopt, std::nullopt,
                                          std::nullopt, std::nullopt};
      out.reports.push_back(std::move(r));
    }
  }
  return out;
}

inline ChainResult build_chain(std::uint64_t m, ChainFlavor flavor = ChainFlavor::Tower) {
  if (m < 1) throw std::invalid_argument("chain needs m >= 1");
  ChainResult out;
  std::vector<OmegaSet> ts = tower(m, 2);
  if (flavor == ChainFlavor::Tower) {
    for (OmegaSet& s : ts) {
      out.topologies.push_back(WeakTopology::from_pair(
          SifOne::filter(SIFilter::factorial(std::move(s))), SifOne::filter(SIFilter::frechet())));
    }
  } else {
    std::vector<OmegaSet> prefix;
    for (OmegaSet& s : ts) {
      prefix.push_back(std::move(s));
      out.topologies.push_back(WeakTopology::from_pair(
          SifOne::filter(from_filter_base(prefix)), SifOne::filter(SIFilter::frechet())));
    }
  }
  for (std::size_t j = 0; j + 1 < out.topologies.size(); ++j) {
    CheckReport r;
    r.check = "chain-step";
    r.subject = std::to_string(j) + " < " + std::to_string(j + 1);
    TopologyComparison c = compare_topologies(out.topologies[j], out.topologies[j + 1]);
    r.verdict = c.order == Order::Less ? Verdict::Pass : Verdict::Fail;
    if (c.order == Order::Less && c.left.detail && c.left.detail->not_ge &&
        !c.left.detail->not_ge->escapes.empty()) {
      r.witnesses.push_back("strictness escape center " +
                            c.left.detail->not_ge->escapes.front().center.str());
    }
    if (r.verdict == Verdict::Fail)
      r.counterexample =
          Counterexample{"consecutive step not strictly increasing", std::nullopt,
                         std::nullopt,   std::nullopt,               std::nullopt, std::nullopt};
    out.reports.push_back(std::move(r));
  }
  return out;
}

}  // namespace weaklat
