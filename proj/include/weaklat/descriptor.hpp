#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "weaklat/bicyclic.hpp"
#include "weaklat/filters.hpp"
#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"
#include "weaklat/topology.hpp"

namespace weaklat {

// Malformed descriptor text. position() is the byte offset at which reading
// stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Well-formed text denoting an invalid value: a zero-step progression, a
// finite set where an infinite one is required, an improper filter base, or
// a join that normalizes to the attached maximum where only a filter fits.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

using Json = nlohmann::ordered_json;

namespace detail_desc {

// Largest integer emitted as a JSON number; anything bigger becomes a
// decimal string so readers without big integers stay exact.
inline constexpr std::uint64_t kMaxSafeInteger = std::uint64_t{1} << 53;

inline Nat nat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Nat(j.get<std::uint64_t>());
  if (j.is_number_integer()) throw ValidationError(where + ": value must be non-negative");
  if (j.is_number_float()) throw ValidationError(where + ": value must be an exact integer");
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError(where + ": not a decimal natural number: \"" + s + "\"");
    return Nat(s);
  }
  throw ValidationError(where + ": expected a natural number");
}

inline Json nat_to_json(const Nat& x) {
  if (fits_u64(x) && to_u64(x) <= kMaxSafeInteger) return Json(to_u64(x));
  return Json(x.str());
}

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) throw ValidationError(where + ": missing field \"" + name + "\"");
  return *it;
}

inline void reject_unknown_fields(const Json& j, const std::string& where,
                                  std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : allowed) known = known || item.key() == name;
    if (!known) throw ValidationError(where + ": unknown field \"" + item.key() + "\"");
  }
}

inline OmegaSet omega_set_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("omega-set: expected an object");
  reject_unknown_fields(j, "omega-set", {"progressions", "include", "exclude"});
  std::vector<Progression> progs;
  if (auto it = j.find("progressions"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("omega-set: \"progressions\" must be an array");
    for (const Json& pj : *it) {
      if (!pj.is_object()) throw ValidationError("omega-set: each progression must be an object");
      reject_unknown_fields(pj, "progression", {"start", "step"});
      Nat start = nat_from_json(field(pj, "start", "progression"), "progression start");
      Nat step = nat_from_json(field(pj, "step", "progression"), "progression step");
      if (step < 1) throw ValidationError("progression step must be positive");
      progs.push_back(Progression{std::move(start), std::move(step)});
    }
  }
  auto points = [&j](const char* name) {
    std::vector<Nat> out;
    if (auto it = j.find(name); it != j.end()) {
      if (!it->is_array())
        throw ValidationError(std::string("omega-set: \"") + name + "\" must be an array");
      for (const Json& xj : *it) out.push_back(nat_from_json(xj, std::string("omega-set ") + name));
    }
    return out;
  };
  return OmegaSet(std::move(progs), points("include"), points("exclude"));
}

inline Json omega_set_to_json(const OmegaSet& s) {
  Json j = Json::object();
  Json progs = Json::array();
  for (const Progression& p : s.progressions()) {
    Json pj = Json::object();
    pj["start"] = nat_to_json(p.start);
    pj["step"] = nat_to_json(p.step);
    progs.push_back(std::move(pj));
  }
  j["progressions"] = std::move(progs);
  Json inc = Json::array();
  for (const Nat& x : s.includes()) inc.push_back(nat_to_json(x));
  j["include"] = std::move(inc);
  Json exc = Json::array();
  for (const Nat& x : s.excludes()) exc.push_back(nat_to_json(x));
  j["exclude"] = std::move(exc);
  return j;
}

inline SIFilter filter_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("filter: expected an object");
  const Json& kj = field(j, "kind", "filter");
  if (!kj.is_string()) throw ValidationError("filter: \"kind\" must be a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "frechet") {
    reject_unknown_fields(j, "filter(frechet)", {"kind"});
    return SIFilter::frechet();
  }
  if (kind == "factorial") {
    reject_unknown_fields(j, "filter(factorial)", {"kind", "set"});
    OmegaSet centers = omega_set_from_json(field(j, "set", "filter(factorial)"));
    if (!centers.is_infinite())
      throw ValidationError("factorial filter requires an infinite center set");
    return SIFilter::factorial(std::move(centers));
  }
  if (kind == "filter-induced") {
    reject_unknown_fields(j, "filter(filter-induced)", {"kind", "base"});
    const Json& bj = field(j, "base", "filter(filter-induced)");
    if (!bj.is_array() || bj.empty())
      throw ValidationError("filter-induced base must be a non-empty array");
    std::vector<OmegaSet> base;
    for (const Json& sj : bj) {
      OmegaSet s = omega_set_from_json(sj);
      if (!s.is_infinite()) throw ValidationError("filter base sets must be infinite");
      base.push_back(std::move(s));
    }
    try {
      return SIFilter::filter_induced(std::move(base));
    } catch (const ImproperBaseError& e) {
      throw ValidationError(std::string("improper filter base: ") + e.what());
    }
  }
  if (kind == "meet" || kind == "join") {
    reject_unknown_fields(j, "filter(" + kind + ")", {"kind", "left", "right"});
    SIFilter l = filter_from_json(field(j, "left", "filter(" + kind + ")"));
    SIFilter r = filter_from_json(field(j, "right", "filter(" + kind + ")"));
    if (kind == "meet") return SIFilter::meet_of(std::move(l), std::move(r));
    try {
      return SIFilter::join_of(std::move(l), std::move(r));
    } catch (const ImproperBaseError& e) {
      throw ValidationError(std::string("join normalizes to the attached maximum: ") + e.what());
    }
  }
  throw ValidationError("filter: unknown kind \"" + kind + "\"");
}

inline Json filter_to_json(const SIFilter& f) {
  Json j = Json::object();
  switch (f.kind()) {
    case SIFilter::Kind::Frechet:
      j["kind"] = "frechet";
      break;
    case SIFilter::Kind::Factorial:
      j["kind"] = "factorial";
      j["set"] = omega_set_to_json(f.center_set());
      break;
    case SIFilter::Kind::FilterInduced: {
      j["kind"] = "filter-induced";
      Json b = Json::array();
      for (const OmegaSet& s : f.base_sets()) b.push_back(omega_set_to_json(s));
      j["base"] = std::move(b);
      break;
    }
    case SIFilter::Kind::Meet:
    case SIFilter::Kind::Join:
      j["kind"] = f.kind() == SIFilter::Kind::Meet ? "meet" : "join";
      j["left"] = filter_to_json(f.left());
      j["right"] = filter_to_json(f.right());
      break;
  }
  return j;
}

inline SifOne sifone_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("component: expected an object");
  const Json& kj = field(j, "kind", "component");
  if (!kj.is_string()) throw ValidationError("component: \"kind\" must be a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "top") {
    reject_unknown_fields(j, "component(top)", {"kind"});
    return SifOne::top();
  }
  if (kind == "filter") {
    reject_unknown_fields(j, "component(filter)", {"kind", "filter"});
    return SifOne::filter(filter_from_json(field(j, "filter", "component(filter)")));
  }
  throw ValidationError("component: kind must be \"top\" or \"filter\", got \"" + kind + "\"");
}

inline Json sifone_to_json(const SifOne& s) {
  Json j = Json::object();
  if (s.is_top()) {
    j["kind"] = "top";
  } else {
    j["kind"] = "filter";
    j["filter"] = filter_to_json(s.filter_value());
  }
  return j;
}

inline WeakTopology topology_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("topology: expected an object");
  reject_unknown_fields(j, "topology", {"left", "right"});
  return WeakTopology::from_pair(sifone_from_json(field(j, "left", "topology")),
                                 sifone_from_json(field(j, "right", "topology")));
}

inline Json topology_to_json(const WeakTopology& t) {
  Json j = Json::object();
  j["left"] = sifone_to_json(t.left());
  j["right"] = sifone_to_json(t.right());
  return j;
}

inline Json read_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

}  // namespace detail_desc

inline OmegaSet parse_omega_set(const std::string& text) {
  return detail_desc::omega_set_from_json(detail_desc::read_json(text));
}
inline SIFilter parse_filter(const std::string& text) {
  return detail_desc::filter_from_json(detail_desc::read_json(text));
}
inline SifOne parse_sifone(const std::string& text) {
  return detail_desc::sifone_from_json(detail_desc::read_json(text));
}
inline WeakTopology parse_topology(const std::string& text) {
  return detail_desc::topology_from_json(detail_desc::read_json(text));
}

inline std::string print_omega_set(const OmegaSet& s) {
  return detail_desc::omega_set_to_json(s).dump();
}
inline std::string print_filter(const SIFilter& f) { return detail_desc::filter_to_json(f).dump(); }
inline std::string print_sifone(const SifOne& s) { return detail_desc::sifone_to_json(s).dump(); }
inline std::string print_topology(const WeakTopology& t) {
  return detail_desc::topology_to_json(t).dump();
}

// One parsed value of any descriptor shape, dispatched on the top-level keys:
// "left"/"right" is a topology, "kind" of top/filter is a component, any
// other "kind" is a filter, and everything else is an omega-set.
using Descriptor = std::variant<OmegaSet, SIFilter, SifOne, WeakTopology>;

inline Descriptor parse_descriptor(const std::string& text) {
  Json j = detail_desc::read_json(text);
  if (!j.is_object()) throw ValidationError("descriptor: expected an object");
  if (auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("descriptor: \"kind\" must be a string");
    const std::string k = it->get<std::string>();
    if (k == "top" || k == "filter") return detail_desc::sifone_from_json(j);
    return detail_desc::filter_from_json(j);
  }
  if (j.contains("left") || j.contains("right")) return detail_desc::topology_from_json(j);
  return detail_desc::omega_set_from_json(j);
}

inline std::string print_descriptor(const Descriptor& d) {
  struct Printer {
    std::string operator()(const OmegaSet& s) const { return print_omega_set(s); }
    std::string operator()(const SIFilter& f) const { return print_filter(f); }
    std::string operator()(const SifOne& s) const { return print_sifone(s); }
    std::string operator()(const WeakTopology& t) const { return print_topology(t); }
  };
  return std::visit(Printer{}, d);
}

namespace detail_desc {

struct IndexReader {
  const std::string& text;
  std::size_t pos = 0;

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  Nat number() {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a number", pos);
    return Nat(text.substr(start, pos - start));
  }

  BaseIndex index() {
    if (peek() == '(') {
      ++pos;
      BaseIndex a = index();
      expect('|');
      BaseIndex b = index();
      expect(')');
      return BaseIndex::pair(std::move(a), std::move(b));
    }
    if (peek() == 'g') {
      ++pos;
      Nat gen = number();
      expect(':');
      Nat level = number();
      if (!fits_u64(gen)) throw ValidationError("generator number too large");
      return BaseIndex::at(static_cast<std::size_t>(to_u64(gen)), std::move(level));
    }
    return BaseIndex::at(number());
  }
};

}  // namespace detail_desc

// Inverse of BaseIndex::str(): "4", "g2:0", "(1|g1:3)", nested pairs.
inline BaseIndex parse_base_index(const std::string& text) {
  detail_desc::IndexReader r{text};
  BaseIndex idx = r.index();
  if (r.pos != text.size()) throw ParseError("trailing characters after base index", r.pos);
  return idx;
}

// "(a,b)" with optional spaces, or "0" / "zero" for the absorbing element.
inline Element parse_element(const std::string& text) {
  std::size_t lo = 0, hi = text.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
  const std::string body = text.substr(lo, hi - lo);
  if (body == "0" || body == "zero") return Element::zero();
  detail_desc::IndexReader r{body};
  auto skip_ws = [&r] {
    while (std::isspace(static_cast<unsigned char>(r.peek()))) ++r.pos;
  };
  r.expect('(');
  skip_ws();
  Nat a = r.number();
  skip_ws();
  r.expect(',');
  skip_ws();
  Nat b = r.number();
  skip_ws();
  r.expect(')');
  if (r.pos != body.size()) throw ParseError("trailing characters after element", r.pos);
  return Element(std::move(a), std::move(b));
}

}  // namespace weaklat
