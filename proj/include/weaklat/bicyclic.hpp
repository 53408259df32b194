#pragma once

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "weaklat/nat.hpp"

namespace weaklat {

// Raised when the sigma class of the absorbing zero is requested.
class ZeroHasNoClassError : public std::domain_error {
 public:
  ZeroHasNoClassError() : std::domain_error("zero has no sigma class") {}
};

// An element of the bicyclic monoid with an adjoined absorbing zero.
//
// Non-zero elements are pairs (a, b) of natural numbers, multiplied by
//
//   (a, b) * (c, d) = (a + c - b, d)   if b <= c
//                     (a, d + b - c)   otherwise
//
// so e.g. (2,3) * (5,7) = (2+5-3, 7) = (4, 7) and (4,1) * (0,2) = (4, 2+1-0)
// = (4, 3). The identity is (0, 0), the absorbing zero annihilates both
// sides, and (a, b) has the inverse (b, a) in the inverse-monoid sense.
// Idempotents are zero and the diagonal pairs (k, k).
//
// The sigma class of (a, b) is the integer a - b; multiplication adds sigma
// classes when neither factor is zero. Zero has no class.
class Element {
 public:
  Element(Nat a, Nat b) : zero_(false), a_(std::move(a)), b_(std::move(b)) {
    if (a_ < 0 || b_ < 0) throw std::invalid_argument("element coordinates must be non-negative");
  }

  static Element zero() { return Element(); }
  static Element identity() { return Element(0, 0); }

  bool is_zero() const { return zero_; }

  const Nat& a() const {
    require_nonzero();
    return a_;
  }
  const Nat& b() const {
    require_nonzero();
    return b_;
  }

  Element inverse() const {
    if (zero_) return *this;
    return Element(b_, a_);
  }

  bool is_idempotent() const { return zero_ || a_ == b_; }

  Nat sigma_class() const {
    if (zero_) throw ZeroHasNoClassError();
    return a_ - b_;
  }

  friend Element operator*(const Element& x, const Element& y) {
    if (x.zero_ || y.zero_) return zero();
    if (x.b_ <= y.a_) return Element(x.a_ + y.a_ - x.b_, y.b_);
    return Element(x.a_, y.b_ + x.b_ - y.a_);
  }

  friend bool operator==(const Element& x, const Element& y) {
    if (x.zero_ != y.zero_) return false;
    return x.zero_ || (x.a_ == y.a_ && x.b_ == y.b_);
  }
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

  std::string str() const {
    if (zero_) return "0";
    return "(" + a_.str() + "," + b_.str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.str(); }

 private:
  Element() : zero_(true), a_(0), b_(0) {}

  void require_nonzero() const {
    if (zero_) throw std::domain_error("zero element has no coordinates");
  }

  bool zero_;
  Nat a_;
  Nat b_;
};

}  // namespace weaklat
