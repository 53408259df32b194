#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "weaklat/bicyclic.hpp"
#include "weaklat/descriptor.hpp"
#include "weaklat/filters.hpp"
#include "weaklat/nat.hpp"
#include "weaklat/omega_set.hpp"
#include "weaklat/topology.hpp"
#include "weaklat/verify.hpp"

namespace weaklat {
namespace detail_cli {

// ---------------------------------------------------------------------------
// Input resolution: builtin names, files, inline JSON
// ---------------------------------------------------------------------------

inline std::optional<Descriptor> builtin(const std::string& name) {
  if (name == "tau_min") return Descriptor(WeakTopology::tau_min());
  if (name == "tau_c") return Descriptor(WeakTopology::tau_c());
  if (name == "tau_L") return Descriptor(WeakTopology::tau_L());
  if (name == "tau_R") return Descriptor(WeakTopology::tau_R());
  if (name == "frechet") return Descriptor(SIFilter::frechet());
  if (name == "F_omega") return Descriptor(SIFilter::factorial(OmegaSet::omega()));
  if (name == "F_evens") return Descriptor(SIFilter::factorial(OmegaSet::progression(0, 2)));
  if (name == "F_odds") return Descriptor(SIFilter::factorial(OmegaSet::progression(1, 2)));
  if (name == "F_mult4") return Descriptor(SIFilter::factorial(OmegaSet::progression(0, 4)));
  return std::nullopt;
}

inline Descriptor resolve(const std::string& arg) {
  if (auto b = builtin(arg)) return *b;
  if (!arg.empty() && arg.front() == '{') return parse_descriptor(arg);
  std::ifstream in(arg);
  if (!in) throw ValidationError("\"" + arg + "\" is not a builtin name, a readable file, or inline JSON");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_descriptor(text.str());
}

inline const char* kind_name(const Descriptor& d) {
  if (std::holds_alternative<OmegaSet>(d)) return "omega-set";
  if (std::holds_alternative<SIFilter>(d)) return "filter";
  if (std::holds_alternative<SifOne>(d)) return "component";
  return "topology";
}

inline WeakTopology resolve_topology(const std::string& arg) {
  Descriptor d = resolve(arg);
  if (auto* t = std::get_if<WeakTopology>(&d)) return std::move(*t);
  throw ValidationError("\"" + arg + "\" denotes a " + kind_name(d) + ", not a topology");
}

// Promote a bare filter to a component when ordered against one.
inline void align(Descriptor& x, Descriptor& y) {
  if (std::holds_alternative<SIFilter>(x) && std::holds_alternative<SifOne>(y))
    x = Descriptor(SifOne::filter(std::get<SIFilter>(std::move(x))));
  else if (std::holds_alternative<SifOne>(x) && std::holds_alternative<SIFilter>(y))
    y = Descriptor(SifOne::filter(std::get<SIFilter>(std::move(y))));
}

// "--params n,m,<index per filter side>" with the left index first.
inline NbhdParams parse_params_text(const WeakTopology& t, const std::string& text) {
  std::vector<std::string> tokens;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    const std::size_t lo = tok.find_first_not_of(" \t");
    const std::size_t hi = tok.find_last_not_of(" \t");
    tokens.push_back(lo == std::string::npos ? "" : tok.substr(lo, hi - lo + 1));
  }
  const std::size_t needed = (t.left().is_top() ? 0 : 1) + (t.right().is_top() ? 0 : 1);
  if (tokens.size() != 2 + needed)
    throw InvalidParamsError("--params needs n,m plus " + std::to_string(needed) +
                             " base index(es) for this topology, got " +
                             std::to_string(tokens.size()) + " field(s)");
  auto nat_of = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidParamsError("cutoff must be a decimal natural number, got \"" + s + "\"");
    return Nat(s);
  };
  NbhdParams p;
  p.n = nat_of(tokens[0]);
  p.m = nat_of(tokens[1]);
  std::size_t next = 2;
  if (!t.left().is_top()) p.li = parse_base_index(tokens[next++]);
  if (!t.right().is_top()) p.ri = parse_base_index(tokens[next++]);
  validate_params(t, p);
  return p;
}

// ---------------------------------------------------------------------------
// Result serialization
// ---------------------------------------------------------------------------

using detail_desc::nat_to_json;

inline Json descriptor_to_json(const Descriptor& d) {
  struct V {
    Json operator()(const OmegaSet& s) const { return detail_desc::omega_set_to_json(s); }
    Json operator()(const SIFilter& f) const { return detail_desc::filter_to_json(f); }
    Json operator()(const SifOne& s) const { return detail_desc::sifone_to_json(s); }
    Json operator()(const WeakTopology& t) const { return detail_desc::topology_to_json(t); }
  };
  return std::visit(V{}, d);
}

inline std::string params_str(const NbhdParams& p) {
  std::string s = "{n=" + p.n.str() + ",m=" + p.m.str();
  if (p.li) s += ",li=" + p.li->str();
  if (p.ri) s += ",ri=" + p.ri->str();
  return s + "}";
}

inline Json params_to_json(const NbhdParams& p) {
  Json j = Json::object();
  j["n"] = nat_to_json(p.n);
  j["m"] = nat_to_json(p.m);
  if (p.li) j["li"] = p.li->str();
  if (p.ri) j["ri"] = p.ri->str();
  return j;
}

inline Json domination_to_json(const DominationCert& c) {
  Json arr = Json::array();
  for (const IndexPair& p : c.pairs) {
    Json o = Json::object();
    o["coarse"] = p.coarse.str();
    o["fine"] = p.fine.str();
    arr.push_back(std::move(o));
  }
  return arr;
}

inline Json separation_to_json(const SeparationCert& c) {
  Json o = Json::object();
  o["witness"] = c.witness.str();
  Json esc = Json::array();
  for (const EscapeSample& e : c.escapes) {
    Json s = Json::object();
    s["probe_level"] = nat_to_json(e.probe_level);
    s["probe"] = e.probe.str();
    s["center"] = nat_to_json(e.center);
    if (e.point) s["point"] = nat_to_json(*e.point);
    esc.push_back(std::move(s));
  }
  o["escapes"] = std::move(esc);
  return o;
}

inline Json order_verdict_to_json(const OrderVerdict& v) {
  Json o = Json::object();
  o["order"] = to_string(v.order);
  if (v.le_cert) o["le"] = domination_to_json(*v.le_cert);
  if (v.ge_cert) o["ge"] = domination_to_json(*v.ge_cert);
  if (v.not_le) o["not_le"] = separation_to_json(*v.not_le);
  if (v.not_ge) o["not_ge"] = separation_to_json(*v.not_ge);
  if (v.disjoint_pair) {
    Json d = Json::object();
    d["left"] = v.disjoint_pair->left.str();
    d["right"] = v.disjoint_pair->right.str();
    o["disjoint"] = std::move(d);
  }
  return o;
}

inline Json sifone_cmp_to_json(const SifOneComparison& c) {
  Json o = Json::object();
  o["order"] = to_string(c.order);
  if (c.detail) o["certificate"] = order_verdict_to_json(*c.detail);
  return o;
}

inline Json counterexample_to_json(const Counterexample& c) {
  Json o = Json::object();
  o["detail"] = c.detail;
  if (c.op) o["op"] = *c.op;
  if (c.target) o["target"] = params_to_json(*c.target);
  if (c.witness_tried) o["witness_tried"] = params_to_json(*c.witness_tried);
  if (c.point) o["point"] = c.point->str();
  if (c.image) o["image"] = c.image->str();
  return o;
}

inline Json report_witnesses_json(const CheckReport& r) {
  Json w = Json::array();
  for (const std::string& s : r.witnesses) w.push_back(s);
  for (const ContinuityWitness& c : r.continuity) {
    Json o = Json::object();
    o["op"] = c.op;
    o["target"] = params_to_json(c.target);
    o["witness"] = params_to_json(c.witness);
    w.push_back(std::move(o));
  }
  for (const ParamPointWitness& p : r.points) {
    Json o = Json::object();
    o["params"] = params_to_json(p.params);
    o["point"] = p.point.str();
    w.push_back(std::move(o));
  }
  if (r.counterexample) {
    Json o = Json::object();
    o["counterexample"] = counterexample_to_json(*r.counterexample);
    w.push_back(std::move(o));
  }
  return w;
}

inline Json machine_line(const std::string& check, Json inputs, Json params,
                         const std::string& verdict, Json witnesses) {
  Json j = Json::object();
  j["check"] = check;
  j["inputs"] = std::move(inputs);
  j["params"] = std::move(params);
  j["verdict"] = verdict;
  j["witnesses"] = std::move(witnesses);
  return j;
}

// ---------------------------------------------------------------------------
// Human rendering
// ---------------------------------------------------------------------------

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool machine;
};

inline void emit(const Io& io, const Json& line) { io.out << line.dump() << "\n"; }

inline void human_counterexample(std::ostream& out, const Counterexample& c) {
  out << "  counterexample: " << c.detail << "\n";
  if (c.op) out << "    op: " << *c.op << "\n";
  if (c.target) out << "    target: " << params_str(*c.target) << "\n";
  if (c.witness_tried) out << "    witness tried: " << params_str(*c.witness_tried) << "\n";
  if (c.point) out << "    point: " << c.point->str() << "\n";
  if (c.image) out << "    image: " << c.image->str() << "\n";
}

inline void human_report(std::ostream& out, const CheckReport& r) {
  out << "[" << to_string(r.verdict) << "] " << r.check;
  if (!r.subject.empty()) out << " on " << r.subject;
  if (!r.params.empty()) {
    out << " (";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      if (i) out << ", ";
      out << r.params[i].first << "=" << r.params[i].second;
    }
    out << ")";
  }
  out << "\n";
  const std::size_t cap = 8;
  for (std::size_t i = 0; i < r.witnesses.size() && i < cap; ++i)
    out << "  witness: " << r.witnesses[i] << "\n";
  if (r.witnesses.size() > cap)
    out << "  ... " << r.witnesses.size() - cap << " more witness lines\n";
  for (std::size_t i = 0; i < r.continuity.size() && i < cap; ++i) {
    const ContinuityWitness& c = r.continuity[i];
    out << "  " << c.op << ": target " << params_str(c.target) << " via " << params_str(c.witness)
        << "\n";
  }
  if (r.continuity.size() > cap)
    out << "  ... " << r.continuity.size() - cap << " more translate certificates\n";
  for (std::size_t i = 0; i < r.points.size() && i < cap; ++i)
    out << "  point " << r.points[i].point.str() << " under " << params_str(r.points[i].params)
        << "\n";
  if (r.points.size() > cap) out << "  ... " << r.points.size() - cap << " more point witnesses\n";
  if (r.counterexample) human_counterexample(out, *r.counterexample);
}

inline void human_order_verdict(std::ostream& out, const OrderVerdict& v, std::string indent) {
  auto pairs_line = [&out, &indent](const char* label, const DominationCert& c) {
    out << indent << label << ": " << c.pairs.size() << " containment(s)";
    for (std::size_t i = 0; i < c.pairs.size() && i < 4; ++i)
      out << (i ? ", " : ": ") << c.pairs[i].fine.str() << " inside " << c.pairs[i].coarse.str();
    out << "\n";
  };
  auto sep_line = [&out, &indent](const char* label, const SeparationCert& c) {
    out << indent << label << ": witness index " << c.witness.str() << ", " << c.escapes.size()
        << " escape(s)";
    for (std::size_t i = 0; i < c.escapes.size() && i < 3; ++i) {
      const EscapeSample& e = c.escapes[i];
      out << (i ? "; " : ": ") << "probe " << e.probe.str() << " center " << e.center.str();
      if (e.point) out << " point " << e.point->str();
    }
    out << "\n";
  };
  if (v.le_cert) pairs_line("le", *v.le_cert);
  if (v.ge_cert) pairs_line("ge", *v.ge_cert);
  if (v.not_le) sep_line("not_le", *v.not_le);
  if (v.not_ge) sep_line("not_ge", *v.not_ge);
  if (v.disjoint_pair)
    out << indent << "disjoint base elements at " << v.disjoint_pair->left.str() << " / "
        << v.disjoint_pair->right.str() << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand handlers
// ---------------------------------------------------------------------------

inline int exit_for(const std::vector<CheckReport>& reports) {
  bool unknown = false;
  for (const CheckReport& r : reports) {
    if (r.verdict == Verdict::Fail) return 1;
    unknown = unknown || r.verdict == Verdict::Unknown;
  }
  return unknown ? 3 : 0;
}

inline int cmd_order(const Io& io, const std::string& sa, const std::string& sb, const Nat& bound) {
  Descriptor A = resolve(sa);
  Descriptor B = resolve(sb);
  align(A, B);
  Json inputs = Json::object();
  inputs["left"] = descriptor_to_json(A);
  inputs["right"] = descriptor_to_json(B);
  Json params = Json::object();
  params["bound"] = bound.str();

  if (std::holds_alternative<OmegaSet>(A) && std::holds_alternative<OmegaSet>(B)) {
    RelateResult r = relate(std::get<OmegaSet>(A), std::get<OmegaSet>(B));
    Json w = Json::array();
    auto side = [&w](const char* name, const std::optional<std::vector<Nat>>& xs) {
      if (!xs) return;
      Json o = Json::object();
      Json arr = Json::array();
      for (const Nat& x : *xs) arr.push_back(nat_to_json(x));
      o[name] = std::move(arr);
      w.push_back(std::move(o));
    };
    side("left_minus_right", r.left_minus_right);
    side("right_minus_left", r.right_minus_left);
    side("intersection", r.intersection);
    if (io.machine) {
      emit(io, machine_line("order", std::move(inputs), std::move(params),
                            to_string(r.relation), std::move(w)));
    } else {
      io.out << "order: " << to_string(r.relation) << "\n";
      auto human_side = [&io](const char* name, const std::optional<std::vector<Nat>>& xs) {
        if (!xs) return;
        io.out << "  " << name << " = {";
        for (std::size_t i = 0; i < xs->size(); ++i) io.out << (i ? "," : "") << (*xs)[i].str();
        io.out << "}\n";
      };
      human_side("left \\ right", r.left_minus_right);
      human_side("right \\ left", r.right_minus_left);
      human_side("intersection", r.intersection);
    }
    return 0;
  }

  Order order = Order::Unknown;
  Json w = Json::array();
  std::ostringstream human;
  if (std::holds_alternative<SIFilter>(A) && std::holds_alternative<SIFilter>(B)) {
    OrderVerdict v = compare_filters(std::get<SIFilter>(A), std::get<SIFilter>(B), bound);
    order = v.order;
    w.push_back(order_verdict_to_json(v));
    human_order_verdict(human, v, "  ");
  } else if (std::holds_alternative<SifOne>(A) && std::holds_alternative<SifOne>(B)) {
    SifOneComparison c = compare_sifone(std::get<SifOne>(A), std::get<SifOne>(B), bound);
    order = c.order;
    w.push_back(sifone_cmp_to_json(c));
    if (c.detail) human_order_verdict(human, *c.detail, "  ");
  } else if (std::holds_alternative<WeakTopology>(A) && std::holds_alternative<WeakTopology>(B)) {
    TopologyComparison c =
        compare_topologies(std::get<WeakTopology>(A), std::get<WeakTopology>(B), bound);
    order = c.order;
    Json o = Json::object();
    o["left"] = sifone_cmp_to_json(c.left);
    o["right"] = sifone_cmp_to_json(c.right);
    w.push_back(std::move(o));
    human << "  left component: " << to_string(c.left.order) << "\n";
    if (c.left.detail) human_order_verdict(human, *c.left.detail, "    ");
    human << "  right component: " << to_string(c.right.order) << "\n";
    if (c.right.detail) human_order_verdict(human, *c.right.detail, "    ");
  } else {
    throw ValidationError(std::string("cannot order a ") + kind_name(A) + " against a " +
                          kind_name(B));
  }

  if (io.machine) {
    emit(io, machine_line("order", std::move(inputs), std::move(params), to_string(order),
                          std::move(w)));
  } else {
    io.out << "order: " << to_string(order) << "\n" << human.str();
  }
  return order == Order::Unknown ? 3 : 0;
}

inline int cmd_lattice(const Io& io, bool is_join, const std::string& sa, const std::string& sb) {
  Descriptor A = resolve(sa);
  Descriptor B = resolve(sb);
  align(A, B);
  Json inputs = Json::object();
  inputs["left"] = descriptor_to_json(A);
  inputs["right"] = descriptor_to_json(B);

  Descriptor result = [&]() -> Descriptor {
    if (std::holds_alternative<OmegaSet>(A) && std::holds_alternative<OmegaSet>(B)) {
      const OmegaSet& a = std::get<OmegaSet>(A);
      const OmegaSet& b = std::get<OmegaSet>(B);
      return Descriptor(is_join ? set_union(a, b) : set_intersection(a, b));
    }
    if (std::holds_alternative<SIFilter>(A) && std::holds_alternative<SIFilter>(B)) {
      const SIFilter& a = std::get<SIFilter>(A);
      const SIFilter& b = std::get<SIFilter>(B);
      if (!is_join) return Descriptor(meet_filters(a, b));
      auto j = join_filters(a, b);
      if (!j) return Descriptor(SifOne::top());  // improper join: only the maximum remains
      return Descriptor(std::move(*j));
    }
    if (std::holds_alternative<SifOne>(A) && std::holds_alternative<SifOne>(B)) {
      const SifOne& a = std::get<SifOne>(A);
      const SifOne& b = std::get<SifOne>(B);
      return Descriptor(is_join ? join_sifone(a, b) : meet_sifone(a, b));
    }
    if (std::holds_alternative<WeakTopology>(A) && std::holds_alternative<WeakTopology>(B)) {
      const WeakTopology& a = std::get<WeakTopology>(A);
      const WeakTopology& b = std::get<WeakTopology>(B);
      return Descriptor(is_join ? join_topologies(a, b) : meet_topologies(a, b));
    }
    throw ValidationError(std::string("cannot combine a ") + kind_name(A) + " with a " +
                          kind_name(B));
  }();

  if (io.machine) {
    Json w = Json::array();
    w.push_back(descriptor_to_json(result));
    emit(io, machine_line(is_join ? "join" : "meet", std::move(inputs), Json::object(), "computed",
                          std::move(w)));
  } else {
    io.out << print_descriptor(result) << "\n";
  }
  return 0;
}

inline int cmd_member(const Io& io, const std::string& topo_arg, const std::string& point_arg,
                      const std::string& params_arg) {
  WeakTopology t = resolve_topology(topo_arg);
  Element e = parse_element(point_arg);
  NbhdParams p = parse_params_text(t, params_arg);
  const bool member = nbhd_member(t, p, e);
  if (io.machine) {
    Json inputs = Json::object();
    inputs["topology"] = detail_desc::topology_to_json(t);
    inputs["point"] = e.str();
    emit(io, machine_line("member", std::move(inputs), params_to_json(p),
                          member ? "true" : "false", Json::array()));
  } else {
    io.out << "member: " << (member ? "true" : "false") << "\n";
  }
  return 0;
}

inline int cmd_trace(const Io& io, const std::string& topo_arg, const std::optional<Nat>& row,
                     const std::optional<Nat>& column, const std::string& params_arg,
                     const Nat& upto) {
  if (row.has_value() == column.has_value())
    throw ValidationError("trace needs exactly one of --row or --column");
  WeakTopology t = resolve_topology(topo_arg);
  NbhdParams p = parse_params_text(t, params_arg);
  const TraceSide side = row ? TraceSide::Row : TraceSide::Column;
  const Nat& index = row ? *row : *column;
  TraceOracle oracle = filter_trace(t, side, index, p);
  std::vector<Nat> members = oracle.members_upto(upto);
  const char* side_name = side == TraceSide::Row ? "row" : "column";
  if (io.machine) {
    Json inputs = Json::object();
    inputs["topology"] = detail_desc::topology_to_json(t);
    Json params = params_to_json(p);
    params["side"] = side_name;
    params["index"] = nat_to_json(index);
    params["upto"] = nat_to_json(upto);
    Json w = Json::array();
    for (const Nat& x : members) w.push_back(nat_to_json(x));
    emit(io, machine_line("trace", std::move(inputs), std::move(params), "computed",
                          std::move(w)));
  } else {
    io.out << "trace(" << side_name << " " << index.str() << ", params " << params_str(p)
           << ", upto " << upto.str() << "): {";
    for (std::size_t i = 0; i < members.size(); ++i) io.out << (i ? "," : "") << members[i].str();
    io.out << "}\n";
  }
  return 0;
}

inline int cmd_verify(const Io& io, const std::string& topo_arg, const std::string& suite,
                      const Nat& depth, const Nat& point_bound) {
  WeakTopology t = resolve_topology(topo_arg);
  std::vector<CheckReport> reports;
  const bool all = suite == "all";
  if (all || suite == "continuity") reports.push_back(check_shift_continuity(t, depth));
  if (all || suite == "hausdorff") reports.push_back(check_hausdorff(t, point_bound));
  if (all || suite == "inversion") reports.push_back(check_inversion_continuity(t, depth));
  if (all || suite == "accumulation") {
    for (int k : {-2, -1, 0, 1, 2}) reports.push_back(check_sigma_accumulation(t, k));
  }
  for (const CheckReport& r : reports) {
    if (io.machine) {
      Json inputs = Json::object();
      inputs["topology"] = detail_desc::topology_to_json(t);
      Json params = Json::object();
      for (const auto& [k, v] : r.params) params[k] = v;
      emit(io, machine_line(r.check, std::move(inputs), std::move(params), to_string(r.verdict),
                            report_witnesses_json(r)));
    } else {
      human_report(io.out, r);
    }
  }
  return exit_for(reports);
}

inline int cmd_antichain(const Io& io, std::uint64_t size) {
  AntichainResult res = build_antichain(size);
  for (const CheckReport& r : res.reports) {
    if (io.machine) {
      Json inputs = Json::object();
      inputs["subject"] = r.subject;
      Json params = Json::object();
      for (const auto& [k, v] : r.params) params[k] = v;
      emit(io, machine_line(r.check, std::move(inputs), std::move(params), to_string(r.verdict),
                            report_witnesses_json(r)));
    } else {
      human_report(io.out, r);
    }
  }
  if (!io.machine)
    io.out << "antichain of " << res.topologies.size() << " topologies, " << res.reports.size()
           << " pairwise certificates\n";
  return exit_for(res.reports);
}

inline int cmd_chain(const Io& io, std::uint64_t length, const std::string& flavor) {
  ChainResult res =
      build_chain(length, flavor == "tower" ? ChainFlavor::Tower : ChainFlavor::FilterChain);
  for (const CheckReport& r : res.reports) {
    if (io.machine) {
      Json inputs = Json::object();
      inputs["subject"] = r.subject;
      Json params = Json::object();
      for (const auto& [k, v] : r.params) params[k] = v;
      emit(io, machine_line(r.check, std::move(inputs), std::move(params), to_string(r.verdict),
                            report_witnesses_json(r)));
    } else {
      human_report(io.out, r);
    }
  }
  if (!io.machine)
    io.out << "chain of " << res.topologies.size() << " topologies, " << res.reports.size()
           << " strictness certificates\n";
  return exit_for(res.reports);
}

}  // namespace detail_cli

// Runs one CLI invocation. Reports go to out, diagnostics to err. Returns the
// process exit code: 0 computed or all Pass, 1 some verification Fail,
// 2 invalid input, 3 undecided within bounds.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace detail_cli;
  CLI::App app{"exact lattice of weak shift-continuous topologies on the bicyclic monoid"};
  app.require_subcommand(1);

  std::string format = "human";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "output format: human or machine")
        ->check(CLI::IsMember({"human", "machine"}));
  };

  std::string arg_a, arg_b;
  std::string topo_arg, point_arg, params_arg;
  std::string suite = "all";
  std::string flavor = "tower";
  std::uint64_t bound = 40, depth = 10, point_bound = 20, upto = 100;
  std::uint64_t size = 0, length = 0;
  std::optional<std::uint64_t> row, column;

  const std::string desc_help = "descriptor: builtin name, file path, or inline JSON";
  CLI::App* c_order = app.add_subcommand("order", "compare two descriptors in the refinement order");
  c_order->add_option("A", arg_a, desc_help)->required();
  c_order->add_option("B", arg_b, desc_help)->required();
  c_order->add_option("--bound", bound, "certificate sampling bound (default 40)");
  add_format(c_order);

  CLI::App* c_join = app.add_subcommand("join", "least upper bound of two descriptors");
  c_join->add_option("A", arg_a, desc_help)->required();
  c_join->add_option("B", arg_b, desc_help)->required();
  add_format(c_join);

  CLI::App* c_meet = app.add_subcommand("meet", "greatest lower bound of two descriptors");
  c_meet->add_option("A", arg_a, desc_help)->required();
  c_meet->add_option("B", arg_b, desc_help)->required();
  add_format(c_meet);

  CLI::App* c_member = app.add_subcommand("member", "basic neighborhood membership");
  c_member->add_option("--topology", topo_arg, "topology descriptor")->required();
  c_member->add_option("--point", point_arg, "element, e.g. \"(2,9)\" or \"0\"")->required();
  c_member
      ->add_option("--params", params_arg,
                   "n,m plus one base index per filter side (left first)")
      ->required();
  add_format(c_member);

  CLI::App* c_trace = app.add_subcommand("trace", "row or column trace of a basic neighborhood");
  c_trace->add_option("--topology", topo_arg, "topology descriptor")->required();
  c_trace->add_option("--row", row, "row index");
  c_trace->add_option("--column", column, "column index");
  c_trace
      ->add_option("--params", params_arg, "n,m plus one base index per filter side (left first)")
      ->required();
  c_trace->add_option("--upto", upto, "list members up to this value (default 100)");
  add_format(c_trace);

  CLI::App* c_verify = app.add_subcommand("verify", "run verification checks on a topology");
  c_verify->add_option("--topology", topo_arg, "topology descriptor")->required();
  c_verify->add_option("--suite", suite, "all|continuity|hausdorff|inversion|accumulation")
      ->check(CLI::IsMember({"all", "continuity", "hausdorff", "inversion", "accumulation"}));
  c_verify->add_option("--depth", depth, "target sampling depth (default 10)");
  c_verify->add_option("--point-bound", point_bound, "separation box bound (default 20)");
  add_format(c_verify);

  CLI::App* c_antichain =
      app.add_subcommand("antichain", "pairwise incomparable family with certificates");
  c_antichain->add_option("--size", size, "number of topologies")->required();
  add_format(c_antichain);

  CLI::App* c_chain = app.add_subcommand("chain", "strictly increasing family with certificates");
  c_chain->add_option("--length", length, "number of topologies")->required();
  c_chain->add_option("--flavor", flavor, "tower or filter-chain")
      ->check(CLI::IsMember({"tower", "filter-chain"}));
  add_format(c_chain);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }

  const Io io{out, err, format == "machine"};
  try {
    if (app.got_subcommand(c_order)) return cmd_order(io, arg_a, arg_b, Nat(bound));
    if (app.got_subcommand(c_join)) return cmd_lattice(io, true, arg_a, arg_b);
    if (app.got_subcommand(c_meet)) return cmd_lattice(io, false, arg_a, arg_b);
    if (app.got_subcommand(c_member)) return cmd_member(io, topo_arg, point_arg, params_arg);
    if (app.got_subcommand(c_trace)) {
      std::optional<Nat> r, c;
      if (row) r = Nat(*row);
      if (column) c = Nat(*column);
      return cmd_trace(io, topo_arg, r, c, params_arg, Nat(upto));
    }
    if (app.got_subcommand(c_verify))
      return cmd_verify(io, topo_arg, suite, Nat(depth), Nat(point_bound));
    if (app.got_subcommand(c_antichain)) return cmd_antichain(io, size);
    if (app.got_subcommand(c_chain)) return cmd_chain(io, length, flavor);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const BoundExhaustedError& e) {
    err << "bound exhausted: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace weaklat
