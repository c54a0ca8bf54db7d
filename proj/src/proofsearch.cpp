#include "fab/proofsearch.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fab {

namespace {

Node canonical_node_local(const Node& n) {
  Node out = n;
  for (auto& c : out.children) c = canonical_node_local(c);
  std::stable_sort(out.children.begin(), out.children.end(), node_less);
  return out;
}

// Canonical rendering with port names dropped in favor of input labels.
std::string anonymized_key(const Term& t) {
  std::function<Node(const Node&)> strip = [&](const Node& n) -> Node {
    if (n.kind == Node::Kind::Port) {
      Node p;
      p.kind = Node::Kind::Port;
      p.label = n.input_label();
      return p;
    }
    Node out = n;
    for (auto& c : out.children) c = strip(c);
    return out;
  };
  std::vector<Node> roots;
  for (const auto& r : t.roots()) roots.push_back(canonical_node_local(strip(r)));
  std::stable_sort(roots.begin(), roots.end(), node_less);
  std::string s;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (i) s += "+";
    s += format_node(roots[i]);
  }
  return s.empty() ? "0" : s;
}

// Context of the named port with every other port erased to an e leaf.
std::string exact_context_key(const Term& m, const std::string& port) {
  Term ctx = nabla(m, find_port(m, port));
  std::map<std::string, std::string> chi;
  for (const auto& p : ctx.port_names()) chi[p] = "e";
  Term erased = leaf_completion(ctx, chi);
  return format_term(canonical_form(erased));
}

}  // namespace

CircuitKey ProofTuple::input_key(const std::string& port) const {
  auto labels = m.port_input_labels();
  auto it = labels.find(port);
  if (it == labels.end()) throw TermError("no port named '" + port + "'");
  auto pit = psi.find(port);
  if (pit == psi.end()) throw TermError("port '" + port + "' lacks a target");
  return CircuitKey{it->second, pit->second};
}

bool counters_equiv(const CounterVec& a, const CounterVec& b, TauPi c) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    long long w = it == b.end() ? 0 : it->second;
    if (!cmp_tau_pi(v, w, c)) return false;
  }
  for (const auto& [k, w] : b) {
    if (!a.count(k) && !cmp_tau_pi(0, w, c)) return false;
  }
  return true;
}

CounterVec counters_exact(const ProofTuple& t) {
  CounterVec out;
  auto labels = t.m.port_input_labels();
  for (const auto& [port, label] : labels) {
    auto pit = t.psi.find(port);
    if (pit == t.psi.end()) {
      throw TermError("port '" + port + "' lacks a target");
    }
    CounterKey key{exact_context_key(t.m, port), label, pit->second};
    ++out[key];
  }
  return out;
}

bool star_exact(const ProofTuple& a, const ProofTuple& b, TauPi c) {
  if (anonymized_key(a.m) != anonymized_key(b.m)) return false;
  return counters_equiv(counters_exact(a), counters_exact(b), c);
}

SigTuple make_sig_tuple(const ProofTuple& t,
                        const std::map<std::string, Term>& inserted, int level,
                        SignatureContext& ctx) {
  SigTuple out;
  out.m = t.m;
  out.level = level;
  out.psi = t.psi;
  for (const auto& port : t.m.port_names()) {
    auto it = inserted.find(port);
    if (it == inserted.end()) {
      throw TermError("no inserted forest for port '" + port + "'");
    }
    out.mu[port] = ctx.signature(it->second, level);
  }
  return out;
}

SigTuple make_sig_tuple_uniform(const ProofTuple& t, SigId tag, int level) {
  SigTuple out;
  out.m = t.m;
  out.level = level;
  out.psi = t.psi;
  for (const auto& port : t.m.port_names()) out.mu[port] = tag;
  return out;
}

Term mu_completion(const SigTuple& t) {
  std::map<std::string, std::string> chi;
  for (const auto& [port, sig] : t.mu) chi[port] = "#h" + std::to_string(sig);
  return leaf_completion(t.m, chi);
}

CounterVec counters_signature(const SigTuple& t, SignatureContext& ctx) {
  CounterVec out;
  for (const auto& [port, sig] : t.mu) {
    // completion with this port kept open
    std::map<std::string, std::string> chi;
    for (const auto& [q, s] : t.mu) {
      if (q != port) chi[q] = "#h" + std::to_string(s);
    }
    Term kept = leaf_completion(t.m, chi);
    Term ctxterm = nabla(kept, find_port(kept, port));
    SigId v = ctx.signature(ctxterm, t.level);
    CounterKey key{"s" + std::to_string(v), "s" + std::to_string(sig),
                   t.psi.at(port)};
    ++out[key];
  }
  return out;
}

bool star_signature(const SigTuple& a, const SigTuple& b, TauPi c,
                    SignatureContext& ctx) {
  if (a.level != b.level) throw AlgebraError("star on tuples of mixed levels");
  SigId sa = ctx.signature(mu_completion(a), a.level + 1);
  SigId sb = ctx.signature(mu_completion(b), b.level + 1);
  if (sa != sb) return false;
  return counters_equiv(counters_signature(a, ctx), counters_signature(b, ctx),
                        c);
}

namespace {

std::map<CircuitKey, Term> apply_circuit(const ProofCircuit& M,
                                         const std::map<CircuitKey, Term>& S) {
  std::map<CircuitKey, Term> out;
  for (const auto& [key, tuple] : M.tuples) {
    std::set<std::string> ports;
    for (const auto& p : tuple.m.port_names()) ports.insert(p);
    if (ports.empty()) {
      out[key] = tuple.m;
      continue;
    }
    out[key] = insert_at_ports(tuple.m, ports, [&](const std::string& p) {
      CircuitKey want = tuple.input_key(p);
      auto it = S.find(want);
      if (it == S.end()) {
        throw TermError("no witness for key (" + want.set_name + ", " +
                        want.target + ")");
      }
      return it->second;
    });
  }
  return out;
}

}  // namespace

WitnessSet build_witnesses(const ProofCircuit& M, const SeedFamily& s0, int n,
                           TauPi c) {
  WitnessSet out;
  out.level = n;
  out.c = c;
  out.entries = s0.seeds;
  for (int k = 0; k < n; ++k) out.entries = apply_circuit(M, out.entries);
  return out;
}

VerifyResult verify_witnesses(const WitnessSet& S, const Homomorphism& phi,
                              int n, TauPi c) {
  VerifyResult res;
  SignatureContext ctx(c);
  std::map<std::string, std::vector<std::pair<std::string, const Term*>>> groups;
  for (const auto& [key, term] : S.entries) {
    groups[key.set_name].emplace_back(key.target, &term);
  }
  for (const auto& [set_name, members] : groups) {
    // diagonality onto the named set
    std::set<std::string> want;
    {
      std::stringstream ss(set_name);
      std::string item;
      while (std::getline(ss, item, ',')) want.insert(item);
    }
    std::set<std::string> got;
    for (const auto& [target, term] : members) {
      int image = hom_eval_h(phi, *term);
      if (phi.alg().h.names[image] != target) {
        res.ok = false;
        res.violation = "witness for (" + set_name + ", " + target +
                        ") evaluates to " + phi.alg().h.names[image];
        return res;
      }
      got.insert(target);
    }
    if (got != want) {
      res.ok = false;
      res.violation = "witnesses for set {" + set_name + "} are not diagonal";
      return res;
    }
    for (size_t i = 0; i < members.size(); ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        SigId si = ctx.signature(*members[i].second, n);
        SigId sj = ctx.signature(*members[j].second, n);
        if (si != sj) {
          res.ok = false;
          res.violation = "witnesses (" + set_name + ", " + members[i].first +
                          ") and (" + set_name + ", " + members[j].first +
                          ") differ at level " + std::to_string(n);
          return res;
        }
      }
    }
  }
  return res;
}

VerifyResult rc_verify(const ProofCircuit& M, const SeedFamily& s0,
                       const Homomorphism& phi, int n, TauPi c) {
  VerifyResult res;
  const auto& names = phi.alg().h.names;

  for (const auto& [key, seed] : s0.seeds) {
    int image = hom_eval_h(phi, seed);
    if (names[image] != key.target) {
      res.ok = false;
      res.violation = "seed (" + key.set_name + ", " + key.target +
                      ") evaluates to " + names[image];
      return res;
    }
  }

  // Witness chain; every level must verify.
  std::vector<std::map<CircuitKey, Term>> chain;
  chain.push_back(s0.seeds);
  for (int k = 1; k <= n + 1; ++k) {
    chain.push_back(apply_circuit(M, chain.back()));
    WitnessSet S;
    S.level = k;
    S.c = c;
    S.entries = chain.back();
    VerifyResult vr = verify_witnesses(S, phi, k, c);
    if (!vr.ok) {
      return vr;
    }
  }

  // Tuple-level condition at level n: derived class tags, psi-consistency,
  // equal completions and balanced counters within every set.
  SignatureContext ctx(c);
  std::map<std::string, std::vector<std::pair<std::string, SigTuple>>> groups;
  for (const auto& [key, tuple] : M.tuples) {
    std::map<std::string, Term> inserted;
    for (const auto& port : tuple.m.port_names()) {
      CircuitKey want = tuple.input_key(port);
      auto it = chain[n].find(want);
      if (it == chain[n].end()) {
        res.ok = false;
        res.violation = "tuple (" + key.set_name + ", " + key.target +
                        ") references missing key (" + want.set_name + ", " +
                        want.target + ")";
        return res;
      }
      int image = hom_eval_h(phi, it->second);
      if (names[image] != want.target) {
        res.ok = false;
        res.violation = "inconsistent tuple (" + key.set_name + ", " +
                        key.target + ") at port " + port;
        return res;
      }
      inserted[port] = it->second;
    }
    // psi-completion must evaluate to the output target
    Homomorphism ext = phi;
    std::map<std::string, std::string> chi;
    for (const auto& [port, target] : tuple.psi) {
      chi[port] = "#t" + target;
      ext.leaf_extension["#t" + target] = phi.alg().h.index_of(target);
    }
    int out_image = hom_eval_h(ext, leaf_completion(tuple.m, chi));
    if (names[out_image] != key.target) {
      res.ok = false;
      res.violation = "tuple (" + key.set_name + ", " + key.target +
                      ") evaluates to " + names[out_image];
      return res;
    }
    groups[key.set_name].emplace_back(key.target,
                                      make_sig_tuple(tuple, inserted, n, ctx));
  }
  for (const auto& [set_name, members] : groups) {
    for (size_t i = 0; i < members.size(); ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        if (!star_signature(members[i].second, members[j].second, c, ctx)) {
          res.ok = false;
          res.violation = "tuples (" + set_name + ", " + members[i].first +
                          ") and (" + set_name + ", " + members[j].first +
                          ") violate the counter condition at level " +
                          std::to_string(n);
          return res;
        }
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Circuit search

namespace {

// Canonical multicontext skeletons: every leaf is a port, interior labels
// from the given letters. Indexed by (interior count, port count).
struct SkeletonEnumerator {
  std::vector<Letter> letters;
  int max_interior, max_ports;
  // trees[i][p], forests[i][p]
  std::vector<std::vector<std::vector<Node>>> trees;
  std::vector<std::vector<std::vector<std::vector<Node>>>> forests;

  SkeletonEnumerator(std::vector<Letter> ls, int mi, int mp)
      : letters(std::move(ls)), max_interior(mi), max_ports(mp) {
    trees.assign(mi + 1, {});
    forests.assign(mi + 1, {});
    for (int i = 0; i <= mi; ++i) {
      trees[i].assign(mp + 1, {});
      forests[i].assign(mp + 1, {});
    }
    forests[0][0].push_back({});
    // tree with 0 interior = a single port
    if (mp >= 1) trees[0][1].push_back(Node::port(""));
    for (int i = 0; i <= mi; ++i) {
      for (int p = 0; p <= mp; ++p) {
        if (i == 0 && p == 0) continue;
        build_forests(i, p);
        if (i >= 1) {
          for (const auto& f : forests[i - 1][p]) {
            if (f.empty()) continue;  // interior nodes need children
            for (const auto& a : letters) {
              trees[i][p].push_back(Node::interior(a, f));
            }
          }
          std::sort(trees[i][p].begin(), trees[i][p].end(), node_less);
        }
      }
    }
  }

  void build_forests(int i, int p) {
    // first tree uses (ti, tp), remainder smaller-or-equal trees
    for (int ti = 0; ti <= i; ++ti) {
      for (int tp = 0; tp <= p; ++tp) {
        if (ti + tp == 0) continue;
        for (const auto& t : trees[ti][tp]) {
          for (const auto& rest : forests[i - ti][p - tp]) {
            if (!rest.empty() && node_less(rest.front(), t)) continue;
            std::vector<Node> f;
            f.push_back(t);
            f.insert(f.end(), rest.begin(), rest.end());
            forests[i][p].push_back(std::move(f));
          }
        }
      }
    }
  }
};

// Name the anonymous ports p1..pk in preorder and attach the input label.
Term materialize_skeleton(const std::vector<Node>& roots,
                          const std::string& set_name) {
  int counter = 0;
  std::function<Node(const Node&)> fix = [&](const Node& n) -> Node {
    if (n.kind == Node::Kind::Port) {
      ++counter;
      return Node::port("p" + std::to_string(counter), {set_name});
    }
    Node out = n;
    for (auto& c : out.children) c = fix(c);
    return out;
  };
  std::vector<Node> out;
  for (const auto& r : roots) out.push_back(fix(r));
  return Term(std::move(out));
}

std::string capped_counter_key(const CounterVec& v, TauPi c) {
  std::ostringstream os;
  for (const auto& [k, count] : v) {
    int capped = cap_count(count, c.tau, c.pi);
    if (capped == 0) continue;
    os << k.context_class << '\x02' << k.input << '\x02' << k.target << '='
       << capped << ';';
  }
  return os.str();
}

}  // namespace

SearchCopyResult search_copy(const Homomorphism& phi,
                             const std::vector<int>& J, TauPi c,
                             int node_budget, int width_budget) {
  SearchCopyResult res;
  if (J.size() < 2) return res;  // exhausted: no nonsingleton set

  const auto& names = phi.alg().h.names;
  std::string set_name;
  for (size_t i = 0; i < J.size(); ++i) {
    if (i) set_name += ",";
    set_name += names[J[i]];
  }

  std::vector<Letter> letters;
  for (const auto& [a, act] : phi.letter_action) {
    if (a != "e") letters.push_back(a);
  }
  std::sort(letters.begin(), letters.end());

  Homomorphism ext = phi;
  for (int j : J) ext.leaf_extension["#t" + names[j]] = j;

  SkeletonEnumerator en(letters, node_budget, width_budget);
  for (int i = 0; i <= node_budget; ++i) {
    for (int p = 1; p <= width_budget; ++p) {
      // canonical forests with i interiors and p ports, ordered by shape
      std::vector<std::pair<std::string, const std::vector<Node>*>> shapes;
      for (const auto& f : en.forests[i][p]) {
        std::string key;
        for (const auto& n : f) key += format_node(n) + "+";
        shapes.emplace_back(std::move(key), &f);
      }
      std::sort(shapes.begin(), shapes.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [skey, fptr] : shapes) {
        ++res.skeletons_examined;
        Term m = materialize_skeleton(*fptr, set_name);
        std::vector<std::string> ports = m.port_names();

        // context class of every port, shared across assignments
        std::map<std::string, std::string> vkey;
        for (const auto& q : ports) vkey[q] = exact_context_key(m, q);

        // enumerate target assignments
        std::vector<size_t> pick(ports.size(), 0);
        std::vector<std::string> class_order;
        std::map<std::string, std::map<int, std::map<std::string, std::string>>>
            classes;  // counter class -> j -> first psi
        while (true) {
          ++res.assignments_examined;
          std::map<std::string, std::string> psi;
          std::map<std::string, std::string> chi;
          for (size_t q = 0; q < ports.size(); ++q) {
            const std::string& tname = names[J[pick[q]]];
            psi[ports[q]] = tname;
            chi[ports[q]] = "#t" + tname;
          }
          int image = hom_eval_h(ext, leaf_completion(m, chi));
          bool relevant = false;
          for (int j : J) relevant |= (j == image);
          if (relevant) {
            CounterVec counters;
            for (const auto& q : ports) {
              ++counters[CounterKey{vkey[q], set_name, psi[q]}];
            }
            std::string ckey = capped_counter_key(counters, c);
            auto& slot = classes[ckey];
            if (slot.empty()) class_order.push_back(ckey);
            slot.emplace(image, psi);  // keeps the first assignment
          }
          size_t q = 0;
          for (; q < pick.size(); ++q) {
            if (++pick[q] < J.size()) break;
            pick[q] = 0;
          }
          if (q == pick.size()) break;
        }

        for (const auto& ckey : class_order) {
          const auto& slot = classes[ckey];
          bool covers = true;
          for (int j : J) covers &= slot.count(j) != 0;
          if (!covers) continue;
          for (int j : J) {
            ProofTuple t;
            t.m = m;
            t.psi = slot.at(j);
            res.circuit.tuples[CircuitKey{set_name, names[j]}] = t;
          }
          res.outcome = Ternary::Yes;
          return res;
        }
      }
    }
  }
  res.outcome = Ternary::Exhausted;
  return res;
}

// ---------------------------------------------------------------------------
// Pumped subcircuits

namespace {

struct StackBuilder {
  const std::map<std::string, ProofTuple>& T;
  std::string z_label;
  std::map<std::string, std::map<std::string, std::string>> local_ctx;  // j -> port -> key
  int copies = 0;

  explicit StackBuilder(const std::map<std::string, ProofTuple>& t,
                        std::string z)
      : T(t), z_label(std::move(z)) {
    for (const auto& [j, tuple] : T) {
      for (const auto& port : tuple.m.port_names()) {
        local_ctx[j][port] = exact_context_key(tuple.m, port);
      }
    }
  }

  // One renamed copy of T[j]; returns its roots and registers port data.
  std::vector<Node> make_copy(const std::string& j, int depth, StackTuple& out) {
    const ProofTuple& base = T.at(j);
    ++copies;
    std::string prefix = "c" + std::to_string(copies) + "x";
    auto labels = base.m.port_input_labels();
    std::function<Node(const Node&)> ren = [&](const Node& n) -> Node {
      if (n.kind == Node::Kind::Port) {
        std::string fresh = prefix + n.label;
        out.depth[fresh] = depth;
        out.local_ctx[fresh] = local_ctx.at(j).at(n.label);
        out.psi[fresh] = base.psi.at(n.label);
        out.nu[fresh] = labels.at(n.label);
        return Node::port(fresh, {labels.at(n.label)});
      }
      Node c = n;
      for (auto& ch : c.children) ch = ren(ch);
      return c;
    };
    std::vector<Node> roots;
    for (const auto& r : base.m.roots()) roots.push_back(ren(r));
    return roots;
  }

  StackTuple build(const std::string& j, int levels) {
    StackTuple out;
    out.levels = levels;
    std::vector<Node> roots = make_copy(j, 1, out);
    for (int d = 2; d <= levels; ++d) {
      // replace all current z-ports by e nodes holding the next copies
      std::map<std::string, std::vector<Node>> repl;
      for (const auto& [port, lab] : out.nu) {
        if (lab == z_label && out.depth[port] == d - 1) {
          repl[port] = make_copy(out.psi[port], d, out);
        }
      }
      std::function<Node(const Node&)> subst = [&](const Node& n) -> Node {
        if (n.kind == Node::Kind::Port) {
          auto it = repl.find(n.label);
          if (it != repl.end()) return Node::interior("e", it->second);
          return n;
        }
        Node c = n;
        for (auto& ch : c.children) ch = subst(ch);
        return c;
      };
      for (auto& r : roots) r = subst(r);
      // drop metadata of the consumed ports
      for (const auto& [port, nodes] : repl) {
        out.depth.erase(port);
        out.local_ctx.erase(port);
        out.psi.erase(port);
        out.nu.erase(port);
      }
    }
    out.term = Term(std::move(roots));
    std::vector<Term> base_terms;
    for (const auto& [key, tuple] : T) base_terms.push_back(tuple.m);
    out.symbolic = PumpedTerm::make(base_terms, z_label, levels);
    return out;
  }
};

}  // namespace

CounterVec counters_pumped(const StackTuple& t, TauPi cap_params) {
  CounterVec out;
  for (const auto& [port, d] : t.depth) {
    int h = t.levels - d;
    std::ostringstream cls;
    cls << "d" << cap_count(d, cap_params.tau, cap_params.pi) << "h"
        << cap_count(h, cap_params.tau, cap_params.pi) << "|"
        << t.local_ctx.at(port);
    ++out[CounterKey{cls.str(), t.nu.at(port), t.psi.at(port)}];
  }
  return out;
}

bool star_pumped(const StackTuple& a, const StackTuple& b, TauPi cap_params,
                 TauPi c) {
  if (!pump_equiv(a.symbolic, b.symbolic, cap_params)) return false;
  return counters_equiv(counters_pumped(a, cap_params),
                        counters_pumped(b, cap_params), c);
}

PumpedSubcircuit build_pumped_subcircuit(
    const Homomorphism& phi, const std::map<std::string, ProofTuple>& T,
    const std::string& z_label, int chi, TauPi c) {
  if (c.pi != 1) {
    throw AlgebraError("pumped subcircuit construction needs period 1");
  }
  if (T.empty()) throw AlgebraError("empty tuple family");
  for (const auto& [j, tuple] : T) {
    if (ports_with_label(tuple.m, z_label).empty()) {
      throw AlgebraError("tuple for " + j + " has no pumping ports");
    }
  }

  PumpedSubcircuit out;
  std::vector<std::string> keys;
  for (const auto& [j, tuple] : T) keys.push_back(j);
  out.base_matrix = CounterMatrix::zero(c, static_cast<int>(keys.size()));
  for (size_t i = 0; i < keys.size(); ++i) {
    const ProofTuple& tuple = T.at(keys[i]);
    auto labels = tuple.m.port_input_labels();
    for (const auto& [port, target] : tuple.psi) {
      if (labels.at(port) != z_label) continue;
      for (size_t j = 0; j < keys.size(); ++j) {
        if (keys[j] == target) {
          out.base_matrix.a[i][j] = cap_count(
              static_cast<long long>(out.base_matrix.a[i][j]) + 1, c.tau, c.pi);
        }
      }
    }
  }
  out.omega = idempotent_power(out.base_matrix).omega;
  out.eta = out.omega;
  while (out.eta < c.tau + chi) out.eta += out.omega;

  int levels = chi + 1 + out.eta;
  StackBuilder builder(T, z_label);
  for (const auto& j : keys) out.tuples.emplace(j, builder.build(j, levels));
  return out;
}

}  // namespace fab
