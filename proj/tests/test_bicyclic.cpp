#include "weaklat/bicyclic.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace weaklat {
namespace {

Element e(unsigned a, unsigned b) { return Element(Nat(a), Nat(b)); }

TEST(Bicyclic, MultiplicationExamples) {
  EXPECT_EQ(e(2, 3) * e(5, 7), e(4, 7));
  EXPECT_EQ(e(4, 1) * e(0, 2), e(4, 3));
  EXPECT_EQ(e(0, 1) * e(1, 0), e(0, 0));
  EXPECT_EQ(e(1, 0) * e(0, 1), e(1, 1));
}

TEST(Bicyclic, IdentityAndZero) {
  Element id = Element::identity();
  Element z = Element::zero();
  Element x = e(3, 5);
  EXPECT_EQ(id * x, x);
  EXPECT_EQ(x * id, x);
  EXPECT_EQ(z * x, z);
  EXPECT_EQ(x * z, z);
  EXPECT_EQ(z * z, z);
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(x.is_zero());
}

TEST(Bicyclic, AssociativityExhaustiveSmall) {
  std::vector<Element> elems;
  elems.push_back(Element::zero());
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; b <= 3; ++b) elems.push_back(e(a, b));
  for (const Element& x : elems)
    for (const Element& y : elems)
      for (const Element& z : elems) EXPECT_EQ((x * y) * z, x * (y * z));
}

TEST(Bicyclic, Inverse) {
  EXPECT_EQ(e(4, 7).inverse(), e(7, 4));
  EXPECT_EQ(Element::zero().inverse(), Element::zero());
  for (unsigned a = 0; a <= 4; ++a) {
    for (unsigned b = 0; b <= 4; ++b) {
      Element x = e(a, b);
      EXPECT_EQ(x * x.inverse() * x, x);
      EXPECT_EQ(x.inverse() * x * x.inverse(), x.inverse());
    }
  }
}

TEST(Bicyclic, Idempotents) {
  EXPECT_TRUE(Element::zero().is_idempotent());
  EXPECT_TRUE(e(0, 0).is_idempotent());
  EXPECT_TRUE(e(7, 7).is_idempotent());
  EXPECT_FALSE(e(2, 3).is_idempotent());
  for (unsigned a = 0; a <= 5; ++a) {
    for (unsigned b = 0; b <= 5; ++b) {
      Element x = e(a, b);
      EXPECT_EQ(x.is_idempotent(), x * x == x);
    }
  }
}

TEST(Bicyclic, SigmaClass) {
  EXPECT_EQ(e(5, 2).sigma_class(), Nat(3));
  EXPECT_EQ(e(2, 5).sigma_class(), Nat(-3));
  EXPECT_EQ(e(4, 4).sigma_class(), Nat(0));
  EXPECT_THROW(Element::zero().sigma_class(), ZeroHasNoClassError);
}

TEST(Bicyclic, SigmaIsAdditiveOnNonzeroProducts) {
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      for (unsigned c = 0; c <= 4; ++c)
        for (unsigned d = 0; d <= 4; ++d) {
          Element x = e(a, b), y = e(c, d);
          EXPECT_EQ((x * y).sigma_class(), x.sigma_class() + y.sigma_class());
        }
}

TEST(Bicyclic, LargeCoordinates) {
  Nat big = Nat(1) << 100;
  Element x(big, Nat(3));
  Element y(Nat(5), big);
  EXPECT_EQ(x * y, Element(big + 2, big));
  EXPECT_EQ((x * y).sigma_class(), Nat(2));
  EXPECT_EQ(x.inverse(), Element(Nat(3), big));
}

TEST(Bicyclic, CoordinateAccessOnZeroThrows) {
  EXPECT_THROW(Element::zero().a(), std::domain_error);
  EXPECT_THROW(Element::zero().b(), std::domain_error);
  EXPECT_THROW(Element(Nat(-1), Nat(0)), std::invalid_argument);
}

TEST(Bicyclic, Printing) {
  EXPECT_EQ(e(4, 7).str(), "(4,7)");
  EXPECT_EQ(Element::zero().str(), "0");
}

}  // namespace
}  // namespace weaklat
