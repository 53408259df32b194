// Acceptance gate for the library: eleven end-to-end criteria, one line each.
// Every criterion re-derives its expected answers independently (brute-force
// enumerators, re-checked certificates, seeded random spot checks) instead of
// trusting the code path under test. Exit status 0 iff every line passes.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "weaklat/bicyclic.hpp"
#include "weaklat/filters.hpp"
#include "weaklat/omega_set.hpp"
#include "weaklat/topology.hpp"
#include "weaklat/verify.hpp"

namespace {

using namespace weaklat;

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome pass(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::uint64_t factorial_u64(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Named residue sets reused across criteria.
OmegaSet evens() { return OmegaSet::progression(0, 2); }
OmegaSet odds() { return OmegaSet::progression(1, 2); }
OmegaSet mult3() { return OmegaSet::progression(0, 3); }
OmegaSet mult4() { return OmegaSet::progression(0, 4); }

// ---------------------------------------------------------------------------
// 1. Monoid algebra: associativity, identity/zero laws, inverse axioms, and
//    additivity of the sigma class, all exhaustively on small boxes.
// ---------------------------------------------------------------------------
Outcome criterion_bicyclic() {
  std::vector<Element> box;
  box.push_back(Element::zero());
  for (std::uint64_t a = 0; a <= 6; ++a)
    for (std::uint64_t b = 0; b <= 6; ++b) box.emplace_back(a, b);

  std::uint64_t checks = 0;
  for (const Element& x : box)
    for (const Element& y : box)
      for (const Element& z : box) {
        if ((x * y) * z != x * (y * z))
          return fail("associativity breaks at " + x.str() + ", " + y.str() + ", " + z.str());
        ++checks;
      }

  const Element e = Element::identity();
  const Element zero = Element::zero();
  for (const Element& x : box) {
    if (x * e != x || e * x != x) return fail("identity law breaks at " + x.str());
    if (!(x * zero).is_zero() || !(zero * x).is_zero())
      return fail("zero law breaks at " + x.str());
    const Element xi = x.inverse();
    if (x * xi * x != x || xi * x * xi != xi || xi.inverse() != x)
      return fail("inverse axioms break at " + x.str());
    if (!x.is_zero() && !(x * xi).is_idempotent())
      return fail("x * x^-1 not idempotent at " + x.str());
    checks += 5;
  }

  std::uint64_t sigma_pairs = 0;
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b)
      for (std::uint64_t c = 0; c <= 8; ++c)
        for (std::uint64_t d = 0; d <= 8; ++d) {
          const Element x(a, b), y(c, d);
          if ((x * y).sigma_class() != x.sigma_class() + y.sigma_class())
            return fail("sigma class not additive at " + x.str() + " * " + y.str());
          ++sigma_pairs;
        }

  std::ostringstream d;
  d << checks << " law checks, " << sigma_pairs << " sigma pairs";
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 2. Factorial block membership agrees with a from-scratch interval
//    enumerator on every m <= 10^6, four center sets, levels <= 8.
// ---------------------------------------------------------------------------
Outcome criterion_block_membership() {
  constexpr std::uint64_t kMax = 1000000;
  struct Case {
    const char* name;
    OmegaSet set;
  };
  const std::vector<Case> cases = {
      {"omega", OmegaSet::omega()}, {"evens", evens()}, {"odds", odds()}, {"mult4", mult4()}};

  std::uint64_t compared = 0;
  std::vector<char> inside(kMax + 1);
  for (const Case& c : cases) {
    const SIFilter f = SIFilter::factorial(c.set);
    for (std::uint64_t level = 0; level <= 8; ++level) {
      std::fill(inside.begin(), inside.end(), 0);
      // independent enumerator: blocks [n! - n + k, n! + n - k] over centers
      // n in the set with n >= k; centers beyond 12 start past 10^6
      for (std::uint64_t n = 0; n <= 12; ++n) {
        if (n < level || !c.set.contains(Nat(n))) continue;
        const std::uint64_t f_n = factorial_u64(n);
        const std::uint64_t lo = f_n - n + level;
        const std::uint64_t hi = f_n + n - level;
        for (std::uint64_t m = lo; m <= hi && m <= kMax; ++m) inside[m] = 1;
      }
      const BaseIndex idx = BaseIndex::at(level);
      Nat m(0);
      for (std::uint64_t mv = 0; mv <= kMax; ++mv, ++m) {
        if (base_member(f, idx, m) != static_cast<bool>(inside[mv])) {
          std::ostringstream d;
          d << "disagreement on " << c.name << " at level " << level << ", m = " << mv;
          return fail(d.str());
        }
        ++compared;
      }
    }
  }
  std::ostringstream d;
  d << compared << " membership points compared";
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 3. Shift witnesses really shift: both containments checked pointwise up to
//    10^6 for shifts in [-5, 5]; the radius-zero impostor base fails with a
//    concrete counterexample.
// ---------------------------------------------------------------------------
Outcome criterion_shift_witnesses() {
  constexpr std::uint64_t kMax = 1000000;
  const std::vector<OmegaSet> sets = {OmegaSet::omega(), evens(), odds(), mult4()};
  const BaseIndex idx = BaseIndex::at(2);

  std::uint64_t witnessed = 0;
  for (const OmegaSet& s : sets) {
    const SIFilter f = SIFilter::factorial(s);
    for (int shift = -5; shift <= 5; ++shift) {
      const BaseIndex widx = shift_witness(f, idx, Nat(shift));
      std::uint64_t members = 0;
      Nat m(0);
      for (std::uint64_t mv = 0; mv <= kMax; ++mv, ++m) {
        if (!base_member(f, widx, m)) continue;
        ++members;
        if (!base_member(f, idx, m)) {
          std::ostringstream d;
          d << "witness member " << mv << " escapes the target (shift " << shift << ")";
          return fail(d.str());
        }
        const std::int64_t shifted = static_cast<std::int64_t>(mv) + shift;
        if (shifted >= 0 && !base_member(f, idx, Nat(shifted))) {
          std::ostringstream d;
          d << "shifted member " << shifted << " escapes the target (shift " << shift << ")";
          return fail(d.str());
        }
      }
      if (members == 0) {
        std::ostringstream d;
        d << "vacuous witness for shift " << shift;
        return fail(d.str());
      }
      witnessed += members;
    }
  }

  // the impostor: raw factorial base without the block radius
  const RawFactorialBase raw;
  const CheckReport report = check_shift_continuity(raw, 10);
  if (report.verdict != Verdict::Fail) return fail("impostor base was not rejected");
  if (!report.counterexample || !report.counterexample->point || !report.counterexample->image)
    return fail("impostor rejection carries no concrete counterexample");
  const Element pt = *report.counterexample->point;
  const Element img = *report.counterexample->image;
  bool point_inside = false;
  for (std::uint64_t lvl = 0; lvl <= 10; ++lvl) {
    if (raw.member(Nat(lvl), pt.b())) point_inside = true;
    if (raw.member(Nat(lvl), img.b())) {
      std::ostringstream d;
      d << "claimed escape " << img.str() << " sits inside the raw base at level " << lvl;
      return fail(d.str());
    }
  }
  if (!point_inside) return fail("counterexample point " + pt.str() + " is not in the raw base");

  std::ostringstream d;
  d << witnessed << " witness members verified, impostor counterexample " << pt.str() << " -> "
    << img.str();
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 4. The 64-set almost-disjoint family yields all 2016 incomparability
//    certificates; disjointness of the certified base elements is re-checked
//    here from scratch.
// ---------------------------------------------------------------------------
Outcome criterion_antichain() {
  const AntichainResult res = build_antichain(64);
  if (res.topologies.size() != 64) return fail("expected 64 topologies");
  if (res.reports.size() != 2016) {
    std::ostringstream d;
    d << "expected 2016 pair reports, got " << res.reports.size();
    return fail(d.str());
  }
  for (const CheckReport& r : res.reports)
    if (r.verdict != Verdict::Pass) return fail("pair report failed: " + r.subject);

  std::uint64_t rechecked = 0;
  for (std::size_t i = 0; i < res.topologies.size(); ++i) {
    for (std::size_t j = i + 1; j < res.topologies.size(); ++j) {
      const TopologyComparison cmp = compare_topologies(res.topologies[i], res.topologies[j]);
      if (cmp.order != Order::Incomparable) {
        std::ostringstream d;
        d << "pair (" << i << "," << j << ") compares " << to_string(cmp.order);
        return fail(d.str());
      }
      if (!cmp.left.detail || !cmp.left.detail->disjoint_pair)
        return fail("missing disjointness certificate");
      const DisjointPair& dp = *cmp.left.detail->disjoint_pair;
      const SIFilter& fi = res.topologies[i].left().filter_value();
      const SIFilter& fj = res.topologies[j].left().filter_value();
      if (!view_disjoint(element_view(fi, dp.left), element_view(fj, dp.right)).disjoint) {
        std::ostringstream d;
        d << "certified elements overlap for pair (" << i << "," << j << ")";
        return fail(d.str());
      }
      ++rechecked;
    }
  }
  std::ostringstream d;
  d << rechecked << " disjointness certificates re-checked";
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 5. The 128-step tower chain is strictly increasing; transitivity is spot
//    checked on 100 seeded random non-consecutive pairs.
// ---------------------------------------------------------------------------
Outcome criterion_chain() {
  const ChainResult res = build_chain(128, ChainFlavor::Tower);
  if (res.topologies.size() != 128) return fail("expected 128 topologies");
  if (res.reports.size() != 127) {
    std::ostringstream d;
    d << "expected 127 step reports, got " << res.reports.size();
    return fail(d.str());
  }
  for (const CheckReport& r : res.reports)
    if (r.verdict != Verdict::Pass) return fail("step report failed: " + r.subject);

  std::mt19937 rng(915237);
  std::uniform_int_distribution<std::size_t> pick(0, res.topologies.size() - 1);
  std::uint64_t spots = 0;
  while (spots < 100) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    const TopologyComparison cmp = compare_topologies(res.topologies[i], res.topologies[j]);
    if (cmp.order != Order::Less) {
      std::ostringstream d;
      d << "links " << i << " < " << j << " compare " << to_string(cmp.order);
      return fail(d.str());
    }
    ++spots;
  }
  std::ostringstream d;
  d << "127 strict steps, " << spots << " random pairs transitively ordered";
  return pass(d.str());
}

// The six-component corpus that exercises every comparison branch.
std::vector<WeakTopology> six_component_corpus() {
  const std::vector<SifOne> comps = {
      SifOne::top(),
      SifOne::filter(SIFilter::frechet()),
      SifOne::filter(SIFilter::factorial(OmegaSet::omega())),
      SifOne::filter(SIFilter::factorial(evens())),
      SifOne::filter(SIFilter::factorial(mult4())),
      SifOne::filter(SIFilter::factorial(odds()))};
  std::vector<WeakTopology> out;
  for (const SifOne& l : comps)
    for (const SifOne& r : comps) out.push_back(WeakTopology::from_pair(l, r));
  return out;
}

// ---------------------------------------------------------------------------
// 6. The abstract order agrees with neighborhood-level refinement evidence on
//    every pair from the six-component corpus, with no undecided pair.
// ---------------------------------------------------------------------------
Outcome criterion_order_agreement() {
  const std::vector<WeakTopology> corpus = six_component_corpus();
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      const TopologyComparison cmp = compare_topologies(corpus[i], corpus[j], 40);
      if (cmp.order == Order::Unknown) {
        std::ostringstream d;
        d << "pair (" << i << "," << j << ") undecided";
        return fail(d.str());
      }
      const bool le = cmp.order == Order::Less || cmp.order == Order::Equal;
      const bool ge = cmp.order == Order::Greater || cmp.order == Order::Equal;
      const RefinementWitness up = refinement_witness(corpus[i], corpus[j], 40);
      const RefinementWitness down = refinement_witness(corpus[j], corpus[i], 40);
      if (up.refines != le || down.refines != ge) {
        std::ostringstream d;
        d << "pair (" << i << "," << j << "): order " << to_string(cmp.order)
          << " vs witnesses (" << up.refines << "," << down.refines << ")";
        return fail(d.str());
      }
      ++pairs;
    }
  }
  std::ostringstream d;
  d << pairs << " pairs decided, 100% witness agreement";
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 7. Lattice extremes: every corpus topology sits between the bottom and top
//    elements, and the join/meet of the two one-sided topologies land exactly
//    on them, by computation and by refinement evidence.
// ---------------------------------------------------------------------------
Outcome criterion_extremes() {
  const WeakTopology bottom = WeakTopology::tau_c();
  const WeakTopology top = WeakTopology::tau_min();
  std::uint64_t sandwiched = 0;
  for (const WeakTopology& t : six_component_corpus()) {
    const Order lo = compare_topologies(bottom, t).order;
    const Order hi = compare_topologies(t, top).order;
    if (lo != Order::Less && lo != Order::Equal) return fail("a corpus topology drops below bottom");
    if (hi != Order::Less && hi != Order::Equal) return fail("a corpus topology rises above top");
    ++sandwiched;
  }

  const WeakTopology joined = join_topologies(WeakTopology::tau_L(), WeakTopology::tau_R());
  const WeakTopology met = meet_topologies(WeakTopology::tau_L(), WeakTopology::tau_R());
  if (compare_topologies(joined, top).order != Order::Equal)
    return fail("join of the one-sided topologies is not the top element");
  if (compare_topologies(met, bottom).order != Order::Equal)
    return fail("meet of the one-sided topologies is not the bottom element");
  if (!refinement_witness(joined, top).refines || !refinement_witness(top, joined).refines)
    return fail("join identity lacks two-sided refinement evidence");
  if (!refinement_witness(met, bottom).refines || !refinement_witness(bottom, met).refines)
    return fail("meet identity lacks two-sided refinement evidence");

  std::ostringstream d;
  d << sandwiched << " topologies sandwiched, join/meet identities certified";
  return pass(d.str());
}

// The five-component corpus used by the checker sweeps.
std::vector<SifOne> five_components() {
  return {SifOne::filter(SIFilter::frechet()),
          SifOne::filter(SIFilter::factorial(OmegaSet::omega())),
          SifOne::filter(SIFilter::factorial(evens())),
          SifOne::filter(SIFilter::factorial(mult4())), SifOne::top()};
}

// ---------------------------------------------------------------------------
// 8. Checker sweep: shift continuity at depth 10 and the Hausdorff property
//    at point bound 20 hold on the whole corpus; the one-sided translation
//    identities hold up to 10.
// ---------------------------------------------------------------------------
Outcome criterion_checker_sweep() {
  std::vector<WeakTopology> corpus = {WeakTopology::tau_c(), WeakTopology::tau_L(),
                                      WeakTopology::tau_R(), WeakTopology::tau_min()};
  const std::vector<SifOne> comps = five_components();
  for (const SifOne& l : comps)
    for (const SifOne& r : comps) corpus.push_back(WeakTopology::from_pair(l, r));

  std::uint64_t swept = 0;
  for (const WeakTopology& t : corpus) {
    const CheckReport cont = check_shift_continuity(t, 10);
    if (cont.verdict != Verdict::Pass) return fail("shift continuity failed on " + cont.subject);
    const CheckReport haus = check_hausdorff(t, 20);
    if (haus.verdict != Verdict::Pass) return fail("Hausdorff check failed on " + haus.subject);
    ++swept;
  }
  const CheckReport ids = check_tauL_identities(10);
  if (ids.verdict != Verdict::Pass) return fail("translation identities failed");

  std::ostringstream d;
  d << swept << " topologies swept at depth 10, point bound 20, identities to 10";
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 9. Inversion continuity holds exactly on the symmetric topologies: the
//    verdict matches component equality on all 25 ordered component pairs.
// ---------------------------------------------------------------------------
Outcome criterion_inversion() {
  const std::vector<SifOne> comps = five_components();
  std::uint64_t passes = 0, fails = 0;
  for (const SifOne& l : comps) {
    for (const SifOne& r : comps) {
      const WeakTopology t = WeakTopology::from_pair(l, r);
      const CheckReport rep = check_inversion_continuity(t, 10);
      const bool symmetric = compare_sifone(l, r, 40).order == Order::Equal;
      if (symmetric && rep.verdict != Verdict::Pass)
        return fail("symmetric topology rejected: " + rep.subject);
      if (!symmetric) {
        if (rep.verdict != Verdict::Fail)
          return fail("asymmetric topology accepted: " + rep.subject);
        if (!rep.counterexample) return fail("asymmetric failure lacks a counterexample");
      }
      symmetric ? ++passes : ++fails;
    }
  }
  if (passes != 5 || fails != 20) {
    std::ostringstream d;
    d << "expected 5 symmetric / 20 asymmetric, got " << passes << " / " << fails;
    return fail(d.str());
  }
  return pass("verdict = component equality on all 25 ordered pairs");
}

// ---------------------------------------------------------------------------
// 10. Row traces of one neighborhood dominate each other through shift
//     witnesses: for rows i, j <= 5 the witness index stays at level <= 8 and
//     its members land in both traces after the shift.
// ---------------------------------------------------------------------------
Outcome criterion_trace_domination() {
  const SIFilter f = SIFilter::factorial(OmegaSet::omega());
  const WeakTopology t = WeakTopology::from_pair(SifOne::filter(f), SifOne::top());
  NbhdParams p;
  p.n = 5;
  p.m = 3;
  p.li = BaseIndex::at(3);

  std::uint64_t checked = 0;
  for (std::uint64_t i = 0; i <= 5; ++i) {
    for (std::uint64_t j = 0; j <= 5; ++j) {
      const std::int64_t shift = static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i);
      const BaseIndex widx = shift_witness(f, *p.li, Nat(shift));
      if (!widx.is_leaf() || widx.level > 8) {
        std::ostringstream d;
        d << "witness for rows (" << i << "," << j << ") leaves level 8";
        return fail(d.str());
      }
      const TraceOracle row_i = filter_trace(t, TraceSide::Row, Nat(i), p);
      const TraceOracle row_j = filter_trace(t, TraceSide::Row, Nat(j), p);
      const ElementView wv = element_view(f, widx);
      Nat x = p.m + 6;  // past both cutoffs, so the gates cannot mask a miss
      for (int k = 0; k < 5; ++k) {
        const std::optional<Nat> next = view_first_member_above(wv, x);
        if (!next) return fail("witness element ran out of members");
        x = *next;
        if (!row_i.contains(x)) {
          std::ostringstream d;
          d << "witness member " << x.str() << " misses row " << i;
          return fail(d.str());
        }
        if (!row_j.contains(x + shift)) {
          std::ostringstream d;
          d << "shifted member misses row " << j << " (from " << x.str() << ")";
          return fail(d.str());
        }
        ++checked;
      }
    }
  }
  std::ostringstream d;
  d << "36 ordered row pairs, " << checked << " witness members landed";
  return pass(d.str());
}

// ---------------------------------------------------------------------------
// 11. Lattice operations on factorial filters normalize to the factorial
//     filter of the union (meet) and intersection (join), certified by base
//     containment across all level pairs <= 12; improper joins hit the top
//     sentinel.
// ---------------------------------------------------------------------------
Outcome criterion_factorial_lattice() {
  struct Named {
    const char* name;
    OmegaSet set;
  };
  const std::vector<Named> sets = {{"omega", OmegaSet::omega()},
                                   {"evens", evens()},
                                   {"odds", odds()},
                                   {"mult4", mult4()},
                                   {"mult3", mult3()}};

  // equality via nested containment: at every pair k <= l <= 12 the deeper
  // element of each filter sits inside the shallower element of the other
  const auto mutually_contained = [](const SIFilter& f, const SIFilter& g,
                                     std::uint64_t& count) {
    for (std::uint64_t k = 0; k <= 12; ++k) {
      for (std::uint64_t l = k; l <= 12; ++l) {
        const ElementView fk = element_view(f, BaseIndex::at(k));
        const ElementView fl = element_view(f, BaseIndex::at(l));
        const ElementView gk = element_view(g, BaseIndex::at(k));
        const ElementView gl = element_view(g, BaseIndex::at(l));
        if (!view_subset(fl, gk).subset || !view_subset(gl, fk).subset) return false;
        count += 2;
      }
    }
    return true;
  };

  std::uint64_t containments = 0, proper = 0, improper = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const SIFilter fa = SIFilter::factorial(sets[i].set);
      const SIFilter fb = SIFilter::factorial(sets[j].set);
      const std::string pair_name = std::string(sets[i].name) + "/" + sets[j].name;

      const SIFilter met = meet_filters(fa, fb);
      const SIFilter expect_meet = SIFilter::factorial(set_union(sets[i].set, sets[j].set));
      if (compare_filters(met, expect_meet).order != Order::Equal)
        return fail("meet is not the union filter for " + pair_name);
      if (!mutually_contained(met, expect_meet, containments))
        return fail("meet containment grid fails for " + pair_name);

      const OmegaSet inter = set_intersection(sets[i].set, sets[j].set);
      const std::optional<SIFilter> joined = join_filters(fa, fb);
      if (inter.is_infinite()) {
        if (!joined) return fail("proper join collapsed for " + pair_name);
        const SIFilter expect_join = SIFilter::factorial(inter);
        if (compare_filters(*joined, expect_join).order != Order::Equal)
          return fail("join is not the intersection filter for " + pair_name);
        if (!mutually_contained(*joined, expect_join, containments))
          return fail("join containment grid fails for " + pair_name);
        ++proper;
      } else {
        if (joined) return fail("improper join produced a filter for " + pair_name);
        if (!join_sifone(SifOne::filter(fa), SifOne::filter(fb)).is_top())
          return fail("improper join missed the top sentinel for " + pair_name);
        ++improper;
      }
    }
  }

  std::ostringstream d;
  d << containments << " containments, " << proper << " proper joins, " << improper
    << " improper joins hit top";
  return pass(d.str());
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"bicyclic monoid laws", criterion_bicyclic, 5.0},
      {"factorial block membership", criterion_block_membership, 30.0},
      {"shift witness containments", criterion_shift_witnesses, 60.0},
      {"antichain certificates", criterion_antichain, 10.0},
      {"tower chain strictness", criterion_chain, 60.0},
      {"order vs refinement evidence", criterion_order_agreement, 120.0},
      {"lattice extremes", criterion_extremes, 30.0},
      {"continuity and separation sweep", criterion_checker_sweep, 60.0},
      {"inversion continuity boundary", criterion_inversion, 30.0},
      {"row trace domination", criterion_trace_domination, 10.0},
      {"factorial meet and join laws", criterion_factorial_lattice, 30.0},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = out.ok && in_time;
    all_ok = all_ok && ok;

    std::cout << (ok ? "[PASS] " : "[FAIL] ") << std::setw(2) << (i + 1) << ". " << c.name << ": "
              << out.detail;
    std::cout << " (" << std::fixed << std::setprecision(2) << secs << "s, limit "
              << std::setprecision(0) << c.limit_seconds << "s";
    if (out.ok && !in_time) std::cout << ", over time";
    std::cout << ")" << std::endl;
  }
  return all_ok ? 0 : 1;
}
