#include "fab/congruence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fab {

namespace {

// Internal leaf label standing for a demoted box inside nested context
// extractions. '#' is outside the letter character set, so it can never
// collide with user labels.
const char* kBoxLetter = "#box";

}  // namespace

bool cmp_tau_pi(long long p, long long q, TauPi c) {
  if (p == q) return true;
  return p >= c.tau && q >= c.tau && (p - q) % c.pi == 0;
}

SignatureContext::SignatureContext(TauPi c) : c_(c) {
  if (c.tau < 0 || c.pi < 1 || c.tau + c.pi < 1) {
    throw AlgebraError("invalid threshold/period parameters");
  }
}

int SignatureContext::intern_term(const Term& canonical) {
  std::string key = format_term(canonical);
  auto [it, fresh] = term_ids_.emplace(std::move(key),
                                       static_cast<int>(term_ids_.size()));
  return it->second;
}

SigId SignatureContext::intern_payload(std::string payload, bool is_context) {
  auto it = payload_ids_.find(payload);
  if (it != payload_ids_.end()) return it->second;
  SigId id = static_cast<SigId>(payloads_.size());
  payload_ids_.emplace(payload, id);
  payloads_.push_back(std::move(payload));
  context_flag_.push_back(is_context);
  return id;
}

bool SignatureContext::is_context_sig(SigId id) const {
  return context_flag_.at(id);
}

std::string SignatureContext::payload_digest(SigId id) const {
  return payloads_.at(id);
}

SigId SignatureContext::signature(const Term& t, int level) {
  if (level < 1) throw AlgebraError("signature level must be >= 1");
  if (!t.port_names().empty()) {
    throw AlgebraError("unextended port '" + t.port_names().front() + "'");
  }
  Term canonical = canonical_form(t);
  int tid = intern_term(canonical);
  Key k{tid, level};
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  SigId id = compute(canonical, level);
  memo_.emplace(k, id);
  return id;
}

namespace {

bool subtree_has_box(const Node& n) {
  if (n.kind == Node::Kind::Box) return true;
  for (const auto& c : n.children) {
    if (subtree_has_box(c)) return true;
  }
  return false;
}

Node demote_boxes(const Node& n) {
  if (n.kind == Node::Kind::Box) return Node::leaf(kBoxLetter);
  Node out = n;
  for (auto& c : out.children) c = demote_boxes(c);
  return out;
}

// Copy with the subtree at path replaced by a box; other boxes demoted to
// the reserved box letter.
Node rebuild_nabla(const Node& n, const std::vector<int>& path, size_t depth) {
  if (depth == path.size()) return Node::box();
  Node out = n;
  for (size_t i = 0; i < out.children.size(); ++i) {
    if (static_cast<int>(i) == path[depth]) {
      out.children[i] = rebuild_nabla(n.children[i], path, depth + 1);
    } else if (subtree_has_box(n.children[i])) {
      out.children[i] = demote_boxes(n.children[i]);
    }
  }
  return out;
}

}  // namespace

SigId SignatureContext::compute(const Term& t, int level) {
  bool is_context = t.has_box();
  std::map<std::string, long long> counts;

  if (level == 1) {
    for (const auto& r : all_nodes(t)) {
      counts[resolve(t, r).label] += 1;
    }
  } else {
    for (const auto& r : all_nodes(t)) {
      const Node& node = resolve(t, r);
      bool trunk = is_context && subtree_has_box(node);

      SigId dsig = signature(delta(t, r), level - 1);

      // Context of the node, with any surviving old box demoted.
      std::vector<Node> roots = t.roots();
      if (r.path.empty()) {
        roots[r.root] = Node::box();
      } else {
        roots[r.root] = rebuild_nabla(t.roots()[r.root], r.path, 0);
      }
      for (size_t i = 0; i < roots.size(); ++i) {
        if (static_cast<int>(i) != r.root && subtree_has_box(roots[i])) {
          roots[i] = demote_boxes(roots[i]);
        }
      }
      SigId nsig = signature(Term(std::move(roots)), level - 1);

      std::ostringstream key;
      key << node.label << '\x01' << (trunk ? 'T' : '-') << '\x01' << dsig
          << ',' << nsig;
      counts[key.str()] += 1;
    }
  }

  std::ostringstream payload;
  payload << (is_context ? "C" : "F") << level << '|';
  for (const auto& [key, count] : counts) {
    payload << key << '=' << cap_count(count, c_.tau, c_.pi) << ';';
  }
  return intern_payload(payload.str(), is_context);
}

bool equiv_n(const Term& s, const Term& t, int n, TauPi c) {
  SignatureContext ctx(c);
  return ctx.signature(s, n) == ctx.signature(t, n);
}

FalsifyResult refinement_falsify(const Homomorphism& phi, int n, TauPi c,
                                 int size_budget) {
  std::vector<Letter> letters;
  for (const auto& [a, act] : phi.letter_action) {
    if (a != "e") letters.push_back(a);
  }
  FalsifyResult res;
  SignatureContext ctx(c);
  std::map<SigId, std::pair<Term, int>> bucket;  // sig -> first member
  for (const Term& f : enumerate_forests(letters, size_budget)) {
    ++res.examined;
    SigId sig = ctx.signature(f, n);
    int image = hom_eval_h(phi, f);
    auto it = bucket.find(sig);
    if (it == bucket.end()) {
      bucket.emplace(sig, std::make_pair(f, image));
      continue;
    }
    if (it->second.second != image) {
      res.found = true;
      res.s = it->second.first;
      res.t = f;
      res.image_s = it->second.second;
      res.image_t = image;
      return res;
    }
  }
  return res;
}

CounterMatrix CounterMatrix::zero(TauPi c, int dim) {
  CounterMatrix m;
  m.c = c;
  m.dim = dim;
  m.a.assign(dim, std::vector<int>(dim, 0));
  return m;
}

CounterMatrix mat_mul(const CounterMatrix& x, const CounterMatrix& y) {
  if (x.dim != y.dim || !(x.c == y.c)) {
    throw AlgebraError("counter matrix dimension or parameter mismatch");
  }
  CounterMatrix out = CounterMatrix::zero(x.c, x.dim);
  for (int i = 0; i < x.dim; ++i) {
    for (int j = 0; j < x.dim; ++j) {
      int acc = 0;
      for (int k = 0; k < x.dim; ++k) {
        int prod = cap_count(static_cast<long long>(x.a[i][k]) * y.a[k][j],
                             x.c.tau, x.c.pi);
        acc = cap_count(static_cast<long long>(acc) + prod, x.c.tau, x.c.pi);
      }
      out.a[i][j] = acc;
    }
  }
  return out;
}

IdempotentPower idempotent_power(const CounterMatrix& m) {
  // Walk the powers until a repeat, then pick the least omega >= threshold
  // divisible by the period.
  std::map<std::vector<std::vector<int>>, int> seen;
  std::vector<CounterMatrix> powers{m};
  seen.emplace(m.a, 1);
  int threshold = 0, period = 0;
  for (int k = 2;; ++k) {
    CounterMatrix next = mat_mul(powers.back(), m);
    auto [it, fresh] = seen.emplace(next.a, k);
    powers.push_back(next);
    if (!fresh) {
      threshold = it->second;
      period = k - it->second;
      break;
    }
  }
  int omega = period;
  while (omega < threshold) omega += period;
  IdempotentPower out;
  out.omega = omega;
  out.power = powers[omega - 1];
  return out;
}

}  // namespace fab
