#include "weaklat/verify.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "weaklat/bicyclic.hpp"
#include "weaklat/filters.hpp"
#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"
#include "weaklat/topology.hpp"

namespace weaklat {
namespace {

OmegaSet evens() { return OmegaSet::progression(0, 2); }
OmegaSet odds() { return OmegaSet::progression(1, 2); }
OmegaSet mult(std::uint64_t k) { return OmegaSet::progression(0, k); }

SifOne top() { return SifOne::top(); }
SifOne fr() { return SifOne::filter(SIFilter::frechet()); }
SifOne fact(OmegaSet s) { return SifOne::filter(SIFilter::factorial(std::move(s))); }

TEST(Verify, GeneratorImageMatchesMultiplication) {
  Element l01(0, 1), l10(1, 0);
  for (std::uint64_t a = 0; a <= 60; ++a) {
    for (std::uint64_t b = 0; b <= 60; ++b) {
      Element e(a, b);
      Element images[4] = {l01 * e, l10 * e, e * l01, e * l10};
      for (int op = 0; op < 4; ++op) {
        auto [ia, ib] = detail_verify::generator_image(op, a, b);
        EXPECT_EQ(images[op], Element(ia, ib)) << op << " at " << e.str();
      }
    }
  }
}

TEST(Verify, ShiftContinuityPassesOnCorpus) {
  std::vector<WeakTopology> corpus = {
      WeakTopology::tau_min(), WeakTopology::tau_c(), WeakTopology::tau_L(), WeakTopology::tau_R(),
      WeakTopology::from_pair(fact(OmegaSet::omega()), fact(OmegaSet::omega())),
      WeakTopology::from_pair(fact(evens()), fact(mult(4)))};
  for (const WeakTopology& t : corpus) {
    CheckReport r = check_shift_continuity(t, 6);
    EXPECT_EQ(r.verdict, Verdict::Pass) << describe(t);
    EXPECT_FALSE(r.counterexample.has_value());
    ASSERT_FALSE(r.continuity.empty());

    // round-trip: re-verify a few certificates with real multiplication
    Element gens[4] = {Element(0, 1), Element(1, 0), Element(0, 1), Element(1, 0)};
    for (std::size_t w = 0; w < r.continuity.size() && w < 8; ++w) {
      const ContinuityWitness& cw = r.continuity[w];
      int op = cw.op == "(0,1)*U" ? 0 : cw.op == "(1,0)*U" ? 1 : cw.op == "U*(0,1)" ? 2 : 3;
      EXPECT_TRUE(nbhd_member(t, cw.target, Element::zero()));
      for (std::uint64_t a = 0; a <= 40; ++a) {
        for (std::uint64_t b = 0; b <= 40; ++b) {
          Element e(a, b);
          if (!nbhd_member(t, cw.witness, e)) continue;
          Element img = op < 2 ? gens[op] * e : e * gens[op];
          EXPECT_TRUE(nbhd_member(t, cw.target, img)) << cw.op << " at " << e.str();
        }
      }
    }
  }
}

TEST(Verify, RawFactorialBaseMembership) {
  RawFactorialBase base;
  EXPECT_TRUE(base.member(0, 1));
  EXPECT_TRUE(base.member(0, 2));
  EXPECT_TRUE(base.member(0, 24));
  EXPECT_TRUE(base.member(4, 24));
  EXPECT_FALSE(base.member(5, 24));  // 24 = 4! but centers start at 5
  EXPECT_TRUE(base.member(5, 120));
  EXPECT_FALSE(base.member(2, 1));
  EXPECT_FALSE(base.member(0, 25));
  EXPECT_FALSE(base.member(0, 721));
}

TEST(Verify, ShiftContinuityFailsOnRawBase) {
  RawFactorialBase base;
  CheckReport r = check_shift_continuity(base, 10);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_EQ(r.witnesses.size(), 11u);  // one escape per candidate level
  ASSERT_TRUE(r.counterexample.has_value());
  ASSERT_TRUE(r.counterexample->point.has_value());
  ASSERT_TRUE(r.counterexample->image.has_value());
  const Element& pt = *r.counterexample->point;
  const Element& img = *r.counterexample->image;
  EXPECT_EQ(pt, Element(0, 24));
  EXPECT_EQ(img, Element(0, 25));
  // the counterexample re-verifies against the raw membership rule
  EXPECT_TRUE(base.member(0, pt.b()));
  EXPECT_FALSE(base.member(0, img.b()));
}

TEST(Verify, HausdorffPasses) {
  std::vector<WeakTopology> corpus = {WeakTopology::tau_min(), WeakTopology::tau_c(),
                                      WeakTopology::from_pair(fact(evens()), fr())};
  for (const WeakTopology& t : corpus) {
    CheckReport r = check_hausdorff(t, 12);
    EXPECT_EQ(r.verdict, Verdict::Pass) << describe(t);
    EXPECT_EQ(r.points.size(), 169u);
    for (std::size_t i = 0; i < r.points.size(); i += 9) {
      EXPECT_FALSE(nbhd_member(t, r.points[i].params, r.points[i].point));
    }
  }
}

TEST(Verify, InversionContinuityMatchesComponentEquality) {
  std::vector<SifOne> comps = {top(), fr(), fact(OmegaSet::omega()), fact(evens()), fact(mult(4))};
  int passes = 0, fails = 0;
  for (const SifOne& x : comps) {
    for (const SifOne& y : comps) {
      WeakTopology t = WeakTopology::from_pair(x, y);
      CheckReport r = check_inversion_continuity(t);
      bool expect_pass = compare_sifone(x, y).order == Order::Equal;
      EXPECT_EQ(r.verdict, expect_pass ? Verdict::Pass : Verdict::Fail) << describe(t);
      (expect_pass ? passes : fails)++;
      if (r.verdict != Verdict::Fail) continue;
      ASSERT_TRUE(r.counterexample.has_value()) << describe(t);
      const Counterexample& ce = *r.counterexample;
      ASSERT_TRUE(ce.target.has_value());
      ASSERT_TRUE(ce.witness_tried.has_value());
      if (!ce.point) continue;
      WeakTopology transposed = WeakTopology::from_pair(y, x);
      bool coarse_is_transposed = ce.detail.rfind("transposed", 0) == 0;
      const WeakTopology& coarse = coarse_is_transposed ? transposed : t;
      const WeakTopology& fine = coarse_is_transposed ? t : transposed;
      EXPECT_TRUE(nbhd_member(fine, *ce.witness_tried, *ce.point));
      EXPECT_FALSE(nbhd_member(coarse, *ce.target, *ce.point));
    }
  }
  EXPECT_EQ(passes, 5);  // the diagonal
  EXPECT_EQ(fails, 20);
}

TEST(Verify, SigmaAccumulationFrozenPoints) {
  CheckReport r = check_sigma_accumulation(WeakTopology::tau_min(), 2, 100);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  ASSERT_FALSE(r.points.empty());
  EXPECT_EQ(r.points.front().point, Element(103, 101));

  WeakTopology tf = WeakTopology::from_pair(fact(OmegaSet::omega()), top());
  CheckReport rneg = check_sigma_accumulation(tf, -3, 50);
  EXPECT_EQ(rneg.verdict, Verdict::Pass);
  ASSERT_FALSE(rneg.points.empty());
  EXPECT_EQ(rneg.points.front().point, Element(51, 54));

  for (const WeakTopology& t : {WeakTopology::tau_c(), tf}) {
    CheckReport rz = check_sigma_accumulation(t, 0, 30);
    EXPECT_EQ(rz.verdict, Verdict::Pass);
    for (const ParamPointWitness& w : rz.points) {
      EXPECT_TRUE(nbhd_member(t, w.params, w.point));
      EXPECT_EQ(w.point.sigma_class(), 0);
      EXPECT_TRUE(w.point.a() > 30 || w.point.b() > 30);
    }
  }
}

TEST(Verify, TranslationIdentities) {
  CheckReport r = check_tauL_identities(5);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_FALSE(r.counterexample.has_value());

  // the classic instantiation: (2,3) maps row 9 into row 8, deep past 5
  Element p = Element(2, 3) * Element(9, 4);
  EXPECT_EQ(p, Element(8, 4));
  EXPECT_TRUE(p.a() > 5);
}

TEST(Verify, AntichainBuild) {
  AntichainResult res = build_antichain(6);
  EXPECT_EQ(res.topologies.size(), 6u);
  EXPECT_EQ(res.reports.size(), 15u);
  for (const CheckReport& r : res.reports) EXPECT_EQ(r.verdict, Verdict::Pass) << r.subject;
  for (std::size_t i = 0; i < res.topologies.size(); ++i) {
    for (std::size_t j = i + 1; j < res.topologies.size(); ++j) {
      EXPECT_EQ(compare_topologies(res.topologies[i], res.topologies[j]).order,
                Order::Incomparable);
    }
  }

  AntichainResult fi = build_antichain(4, AntichainFlavor::FilterInduced);
  EXPECT_EQ(fi.reports.size(), 6u);
  for (const CheckReport& r : fi.reports) EXPECT_EQ(r.verdict, Verdict::Pass) << r.subject;

  EXPECT_TRUE(build_antichain(1).reports.empty());
  EXPECT_THROW(build_antichain(0), std::invalid_argument);
}

TEST(Verify, ChainBuild) {
  ChainResult res = build_chain(8);
  EXPECT_EQ(res.topologies.size(), 8u);
  EXPECT_EQ(res.reports.size(), 7u);
  for (const CheckReport& r : res.reports) EXPECT_EQ(r.verdict, Verdict::Pass) << r.subject;
  // transitivity under independent re-comparison
  for (std::size_t i = 0; i < res.topologies.size(); ++i) {
    for (std::size_t j = i + 1; j < res.topologies.size(); ++j) {
      EXPECT_EQ(compare_topologies(res.topologies[i], res.topologies[j]).order, Order::Less)
          << i << "," << j;
    }
  }

  ChainResult fc = build_chain(5, ChainFlavor::FilterChain);
  EXPECT_EQ(fc.reports.size(), 4u);
  for (const CheckReport& r : fc.reports) EXPECT_EQ(r.verdict, Verdict::Pass) << r.subject;
  EXPECT_EQ(compare_topologies(fc.topologies.front(), fc.topologies.back()).order, Order::Less);

  EXPECT_EQ(build_chain(1).topologies.size(), 1u);
  EXPECT_TRUE(build_chain(1).reports.empty());
}

TEST(Verify, ReportsAreDeterministic) {
  WeakTopology t = WeakTopology::from_pair(fact(evens()), fr());
  CheckReport a = check_shift_continuity(t, 5);
  CheckReport b = check_shift_continuity(t, 5);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.witnesses, b.witnesses);
  EXPECT_EQ(a.continuity.size(), b.continuity.size());
  CheckReport h1 = check_hausdorff(t, 8);
  CheckReport h2 = check_hausdorff(t, 8);
  EXPECT_EQ(h1.witnesses, h2.witnesses);
  EXPECT_EQ(h1.points.size(), h2.points.size());
}

}  // namespace
}  // namespace weaklat
