#include "fab/algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace fab {

int FiniteMonoid::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (names[i] == name) return i;
  }
  throw AlgebraError("unknown element '" + name + "'");
}

std::optional<std::string> FiniteMonoid::check() const {
  int n = size();
  if (static_cast<int>(table.size()) != n) return "table is not total";
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) return "table is not total";
    for (int x : row) {
      if (x < 0 || x >= n) return "table entry out of range";
    }
  }
  if (identity < 0 || identity >= n) return "identity out of range";
  for (int a = 0; a < n; ++a) {
    if (table[identity][a] != a || table[a][identity] != a) {
      return "identity law fails at " + names[a];
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          std::ostringstream os;
          os << "associativity fails at (" << names[a] << ", " << names[b]
             << ", " << names[c] << ")";
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

Transformation identity_transformation(int domain) {
  Transformation f(domain);
  for (int i = 0; i < domain; ++i) f[i] = i;
  return f;
}

Transformation compose(const Transformation& f, const Transformation& g) {
  Transformation out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

std::string TransformationMonoid::key(const Transformation& f) {
  std::string k;
  k.reserve(f.size() * sizeof(int));
  for (int x : f) k.append(reinterpret_cast<const char*>(&x), sizeof(int));
  return k;
}

int TransformationMonoid::find(const Transformation& f) const {
  auto it = index.find(key(f));
  return it == index.end() ? -1 : it->second;
}

int TransformationMonoid::identity_id() const {
  int id = find(identity_transformation(domain));
  if (id < 0) throw AlgebraError("vertical monoid lacks the identity");
  return id;
}

int TransformationMonoid::compose_ids(int f, int g) const {
  int id = find(compose(elems[f], elems[g]));
  if (id < 0) throw AlgebraError("vertical monoid is not closed");
  return id;
}

std::optional<std::string> TransformationMonoid::check_closed() const {
  if (find(identity_transformation(domain)) < 0) {
    return "identity transformation missing";
  }
  for (int f = 0; f < size(); ++f) {
    for (int g = 0; g < size(); ++g) {
      if (find(compose(elems[f], elems[g])) < 0) {
        std::ostringstream os;
        os << "composition of elements " << f << " and " << g
           << " escapes the monoid";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

bool close_transformations(int domain,
                           const std::vector<Transformation>& generators,
                           const std::vector<std::string>& gen_names,
                           size_t max_size, TransformationMonoid& out) {
  out.domain = domain;
  out.elems.clear();
  out.names.clear();
  out.index.clear();
  auto add = [&](const Transformation& f, const std::string& name) -> int {
    std::string k = TransformationMonoid::key(f);
    auto it = out.index.find(k);
    if (it != out.index.end()) return it->second;
    int id = out.size();
    out.index.emplace(std::move(k), id);
    out.elems.push_back(f);
    out.names.push_back(name);
    return id;
  };
  add(identity_transformation(domain), "id");
  for (size_t i = 0; i < generators.size(); ++i) {
    add(generators[i], i < gen_names.size() ? gen_names[i] : "");
  }
  size_t head = 0;
  while (head < out.elems.size()) {
    if (out.elems.size() > max_size) return false;
    Transformation f = out.elems[head];
    size_t count = out.elems.size();
    for (size_t g = 0; g < count; ++g) {
      add(compose(f, out.elems[g]), "");
      add(compose(out.elems[g], f), "");
      if (out.elems.size() > max_size) return false;
    }
    ++head;
  }
  return true;
}

int ForestAlgebra::translation_id(int u, int w) const {
  Transformation f(h.size());
  for (int x = 0; x < h.size(); ++x) f[x] = h.op(h.op(u, x), w);
  return v.find(f);
}

ForestAlgebraPtr make_forest_algebra(FiniteMonoid h,
                                     const std::vector<Transformation>& extra,
                                     const std::vector<std::string>& extra_names,
                                     size_t max_v) {
  auto a = std::make_shared<ForestAlgebra>();
  a->h = std::move(h);
  int n = a->h.size();
  std::vector<Transformation> gens;
  std::vector<std::string> names;
  for (int u = 0; u < n; ++u) {
    for (int w = 0; w < n; ++w) {
      Transformation f(n);
      for (int x = 0; x < n; ++x) f[x] = a->h.op(a->h.op(u, x), w);
      gens.push_back(std::move(f));
      names.push_back("[" + a->h.names[u] + "+eps+" + a->h.names[w] + "]");
    }
  }
  for (size_t i = 0; i < extra.size(); ++i) {
    gens.push_back(extra[i]);
    names.push_back(i < extra_names.size() ? extra_names[i] : "");
  }
  if (!close_transformations(n, gens, names, max_v, a->v)) {
    throw AlgebraError("vertical closure exceeds size budget");
  }
  return a;
}

std::optional<std::string> validate_algebra(const ForestAlgebra& a) {
  if (auto bad = a.h.check()) return "horizontal monoid: " + *bad;
  for (const auto& f : a.v.elems) {
    if (static_cast<int>(f.size()) != a.h.size()) {
      return "vertical element with wrong domain";
    }
  }
  if (auto bad = a.v.check_closed()) return "vertical monoid: " + *bad;
  for (int u = 0; u < a.h.size(); ++u) {
    for (int w = 0; w < a.h.size(); ++w) {
      if (a.translation_id(u, w) < 0) {
        return "missing translation [" + a.h.names[u] + "+eps+" +
               a.h.names[w] + "]";
      }
    }
  }
  return std::nullopt;
}

int Homomorphism::action(const Letter& a) const {
  if (a == "e") {
    auto it = letter_action.find(a);
    if (it != letter_action.end()) return it->second;
    return algebra->v.identity_id();
  }
  auto it = letter_action.find(a);
  if (it == letter_action.end()) {
    throw AlgebraError("no action for letter '" + a + "'");
  }
  return it->second;
}

std::optional<std::string> Homomorphism::check() const {
  auto it = letter_action.find("e");
  if (it != letter_action.end() && it->second != algebra->v.identity_id()) {
    return "the neutral letter does not act as the identity";
  }
  for (const auto& [a, v] : letter_action) {
    if (v < 0 || v >= algebra->v.size()) return "action of '" + a + "' out of range";
  }
  for (const auto& [k, h] : leaf_extension) {
    if (h < 0 || h >= algebra->h.size()) {
      return "leaf extension of '" + k + "' out of range";
    }
  }
  return std::nullopt;
}

namespace {

// Value of a forest or of a context piece during evaluation.
struct EvalValue {
  bool vertical;
  int h;              // when !vertical
  Transformation f;   // when vertical (dense map over H)
};

EvalValue eval_node(const Homomorphism& phi, const Node& n);

EvalValue eval_sequence(const Homomorphism& phi, const std::vector<Node>& seq) {
  const ForestAlgebra& A = phi.alg();
  EvalValue acc{false, A.h.identity, {}};
  for (const auto& n : seq) {
    EvalValue val = eval_node(phi, n);
    if (!acc.vertical && !val.vertical) {
      acc.h = A.h.op(acc.h, val.h);
    } else if (!acc.vertical && val.vertical) {
      int pre = acc.h;
      acc.vertical = true;
      acc.f.resize(A.h.size());
      for (int x = 0; x < A.h.size(); ++x) acc.f[x] = A.h.op(pre, val.f[x]);
    } else if (acc.vertical && !val.vertical) {
      for (int x = 0; x < A.h.size(); ++x) acc.f[x] = A.h.op(acc.f[x], val.h);
    } else {
      throw AlgebraError("evaluation met two box ports");
    }
  }
  return acc;
}

EvalValue eval_node(const Homomorphism& phi, const Node& n) {
  const ForestAlgebra& A = phi.alg();
  switch (n.kind) {
    case Node::Kind::Box: {
      return EvalValue{true, -1, identity_transformation(A.h.size())};
    }
    case Node::Kind::Port: {
      auto it = phi.leaf_extension.find(n.input_label());
      if (it == phi.leaf_extension.end()) {
        throw AlgebraError("unextended port '" + n.label + "'");
      }
      return EvalValue{false, it->second, {}};
    }
    case Node::Kind::Interior: {
      if (n.is_leaf()) {
        // A leaf is either a letter or an extension value.
        auto it = phi.letter_action.find(n.label);
        if (it != phi.letter_action.end() || n.label == "e") {
          const Transformation& act = A.v.elems[phi.action(n.label)];
          return EvalValue{false, act[A.h.identity], {}};
        }
        auto ext = phi.leaf_extension.find(n.label);
        if (ext != phi.leaf_extension.end()) {
          return EvalValue{false, ext->second, {}};
        }
        throw AlgebraError("letter '" + n.label + "' has no action or extension");
      }
      EvalValue inner = eval_sequence(phi, n.children);
      const Transformation& act = A.v.elems[phi.action(n.label)];
      if (!inner.vertical) {
        return EvalValue{false, act[inner.h], {}};
      }
      Transformation f(A.h.size());
      for (int x = 0; x < A.h.size(); ++x) f[x] = act[inner.f[x]];
      return EvalValue{true, -1, std::move(f)};
    }
  }
  throw AlgebraError("unreachable");
}

}  // namespace

HomValue hom_eval(const Homomorphism& phi, const Term& t) {
  EvalValue val = eval_sequence(phi, t.roots());
  HomValue out;
  out.vertical = val.vertical;
  if (val.vertical) {
    int id = phi.alg().v.find(val.f);
    if (id < 0) {
      throw AlgebraError("context image escapes the vertical monoid");
    }
    out.v = id;
  } else {
    out.h = val.h;
  }
  return out;
}

int hom_eval_h(const Homomorphism& phi, const Term& t) {
  HomValue v = hom_eval(phi, t);
  if (v.vertical) throw AlgebraError("expected a forest, got a context");
  return v.h;
}

int cap_count(long long p, int tau, int pi) {
  if (p < tau) return static_cast<int>(p);
  return tau + static_cast<int>((p - tau) % pi);
}

FiniteMonoid counter_monoid(int tau, int pi) {
  if (tau < 0 || pi < 1 || tau + pi < 1) {
    throw AlgebraError("counter monoid needs tau >= 0 and pi >= 1");
  }
  FiniteMonoid m;
  int n = tau + pi;
  for (int i = 0; i < n; ++i) m.names.push_back(std::to_string(i));
  m.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) m.table[a][b] = cap_count(a + b, tau, pi);
  }
  m.identity = 0;
  return m;
}

ForestAlgebraPtr od_algebra(const FiniteMonoid& m) {
  return make_forest_algebra(m, {}, {});
}

QuotientResult syntactic_quotient(const Homomorphism& phi,
                                  const std::vector<int>& F) {
  const ForestAlgebra& A = phi.alg();
  int n = A.h.size();
  std::vector<int> cls(n, 0);
  std::vector<bool> inF(n, false);
  for (int f : F) inF[f] = true;
  for (int i = 0; i < n; ++i) cls[i] = inF[i] ? 1 : 0;

  // Refine until stable: h ~ h' must imply w h ~ w h' for every w in V and
  // u + h ~ u + h', h + u ~ h' + u for every u in H.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next(n);
    for (int h = 0; h < n; ++h) {
      std::vector<int> sig;
      sig.push_back(cls[h]);
      for (const auto& f : A.v.elems) sig.push_back(cls[f[h]]);
      for (int u = 0; u < n; ++u) {
        sig.push_back(cls[A.h.op(u, h)]);
        sig.push_back(cls[A.h.op(h, u)]);
      }
      auto [it, fresh] = sig_to_class.emplace(std::move(sig),
                                              static_cast<int>(sig_to_class.size()));
      next[h] = it->second;
    }
    if (next != cls) {
      changed = true;
      cls = std::move(next);
    }
  }

  int k = *std::max_element(cls.begin(), cls.end()) + 1;
  // Name classes by their least member, deterministic.
  std::vector<int> least(k, -1);
  for (int h = n - 1; h >= 0; --h) least[cls[h]] = h;

  FiniteMonoid qh;
  qh.names.resize(k);
  for (int c = 0; c < k; ++c) qh.names[c] = A.h.names[least[c]];
  qh.table.assign(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      qh.table[a][b] = cls[A.h.op(least[a], least[b])];
    }
  }
  qh.identity = cls[A.h.identity];

  // Induced maps of all V elements (well-defined by the refinement).
  std::vector<Transformation> gens;
  std::vector<std::string> names;
  for (int w = 0; w < A.v.size(); ++w) {
    Transformation f(k);
    for (int c = 0; c < k; ++c) f[c] = cls[A.v.elems[w][least[c]]];
    gens.push_back(std::move(f));
    names.push_back(A.v.names[w]);
  }
  ForestAlgebraPtr q = make_forest_algebra(qh, gens, names);

  QuotientResult res;
  res.algebra = q;
  res.h_class = cls;
  res.hom.algebra = q;
  for (const auto& [a, w] : phi.letter_action) {
    Transformation f(k);
    for (int c = 0; c < k; ++c) f[c] = cls[A.v.elems[w][least[c]]];
    int id = q->v.find(f);
    if (id < 0) throw AlgebraError("quotient action escaped the closure");
    res.hom.letter_action[a] = id;
  }
  for (const auto& [lab, h] : phi.leaf_extension) {
    res.hom.leaf_extension[lab] = cls[h];
  }
  std::set<int> acc;
  for (int f : F) acc.insert(cls[f]);
  res.accepting.assign(acc.begin(), acc.end());
  return res;
}

namespace {

// All submonoids of m containing the identity, as sorted element lists.
// Enumerated as closures of generator subsets, deduplicated, ordered by
// carrier size. Work is charged against budget.
std::vector<std::vector<int>> submonoids(const FiniteMonoid& m,
                                         long long& budget) {
  int n = m.size();
  std::set<std::vector<int>> found;
  std::deque<std::vector<int>> queue;
  auto closure_of = [&](std::vector<int> seed) {
    std::set<int> s(seed.begin(), seed.end());
    s.insert(m.identity);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int a : cur) {
        for (int b : cur) {
          --budget;
          if (s.insert(m.op(a, b)).second) grew = true;
        }
      }
      if (budget < 0) break;
    }
    return std::vector<int>(s.begin(), s.end());
  };
  found.insert(closure_of({}));
  queue.push_back(*found.begin());
  while (!queue.empty() && budget > 0) {
    std::vector<int> base = queue.front();
    queue.pop_front();
    for (int x = 0; x < n; ++x) {
      std::vector<int> seed = base;
      seed.push_back(x);
      auto c = closure_of(std::move(seed));
      if (found.insert(c).second) queue.push_back(c);
      if (budget < 0) break;
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace

DividesResult divides(const ForestAlgebra& g, const ForestAlgebra& h,
                      long long budget) {
  DividesResult res;
  int gn = g.h.size();
  std::vector<std::vector<int>> subs = submonoids(h.h, budget);
  if (budget < 0) return res;  // exhausted

  for (const auto& carrier : subs) {
    if (static_cast<int>(carrier.size()) < gn) continue;
    // V elements stabilizing the carrier, restricted to it.
    std::vector<int> pos(h.h.size(), -1);
    for (size_t i = 0; i < carrier.size(); ++i) pos[carrier[i]] = static_cast<int>(i);
    std::vector<Transformation> stab;          // restricted maps
    for (const auto& f : h.v.elems) {
      bool ok = true;
      Transformation r(carrier.size());
      for (size_t i = 0; i < carrier.size(); ++i) {
        int img = f[carrier[i]];
        if (pos[img] < 0) {
          ok = false;
          break;
        }
        r[i] = pos[img];
      }
      if (ok) stab.push_back(std::move(r));
    }

    // Surjective monoid morphisms carrier -> g.h by backtracking.
    int cn = static_cast<int>(carrier.size());
    std::vector<int> img(cn, -1);
    img[pos[h.h.identity]] = g.h.identity;
    std::function<bool(int)> assign = [&](int i) -> bool {
      if (budget-- < 0) return false;
      if (i == cn) {
        std::vector<bool> hit(gn, false);
        for (int x : img) hit[x] = true;
        for (bool b : hit) {
          if (!b) return false;
        }
        // morphism law on the full table
        for (int a = 0; a < cn; ++a) {
          for (int b = 0; b < cn; ++b) {
            int s = h.h.op(carrier[a], carrier[b]);
            if (pos[s] < 0) return false;  // not closed (cannot happen)
            if (img[pos[s]] != g.h.op(img[a], img[b])) return false;
          }
        }
        // induced vertical elements; g.v must be covered by well-defined ones
        std::set<std::string> covered;
        for (const auto& r : stab) {
          Transformation q(gn, -1);
          bool welldef = true;
          for (int x = 0; x < cn && welldef; ++x) {
            int gx = img[x];
            int gy = img[r[x]];
            if (q[gx] == -1) {
              q[gx] = gy;
            } else if (q[gx] != gy) {
              welldef = false;
            }
          }
          if (!welldef) continue;
          bool total = true;
          for (int x : q) total &= (x >= 0);
          if (total) covered.insert(TransformationMonoid::key(q));
        }
        for (const auto& f : g.v.elems) {
          if (!covered.count(TransformationMonoid::key(f))) return false;
        }
        return true;
      }
      if (img[i] != -1) return assign(i + 1);
      for (int y = 0; y < gn; ++y) {
        img[i] = y;
        bool consistent = true;
        // cheap incremental check against already-assigned entries
        for (int j = 0; j <= i && consistent; ++j) {
          if (img[j] < 0) continue;
          int s1 = h.h.op(carrier[i], carrier[j]);
          int s2 = h.h.op(carrier[j], carrier[i]);
          if (pos[s1] >= 0 && pos[s1] <= i && img[pos[s1]] >= 0 &&
              img[pos[s1]] != g.h.op(y, img[j])) {
            consistent = false;
          }
          if (consistent && pos[s2] >= 0 && pos[s2] <= i && img[pos[s2]] >= 0 &&
              img[pos[s2]] != g.h.op(img[j], y)) {
            consistent = false;
          }
        }
        if (consistent && assign(i + 1)) return true;
        if (budget < 0) return false;
      }
      img[i] = -1;
      return false;
    };
    if (assign(0)) {
      std::ostringstream os;
      os << "carrier {";
      for (size_t i = 0; i < carrier.size(); ++i) {
        if (i) os << ",";
        os << h.h.names[carrier[i]];
      }
      os << "} via ";
      for (int i = 0; i < cn; ++i) {
        if (i) os << " ";
        os << h.h.names[carrier[i]] << "->" << g.h.names[img[i]];
      }
      res.outcome = Ternary::Yes;
      res.witness = os.str();
      return res;
    }
    if (budget < 0) return res;
  }
  res.outcome = Ternary::No;
  return res;
}

std::vector<std::vector<int>> scc(const ForestAlgebra& a) {
  int n = a.h.size();
  // reach[g] = set of wg
  std::vector<std::set<int>> adj(n);
  for (int g = 0; g < n; ++g) {
    for (const auto& f : a.v.elems) adj[g].insert(f[g]);
  }
  // simple reachability closure (n is small)
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int g = 0; g < n; ++g) {
    std::deque<int> q{g};
    reach[g][g] = true;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x]) {
        if (!reach[g][y]) {
          reach[g][y] = true;
          q.push_back(y);
        }
      }
    }
  }
  std::vector<int> comp(n, -1);
  int k = 0;
  for (int g = 0; g < n; ++g) {
    if (comp[g] >= 0) continue;
    comp[g] = k;
    for (int x = g + 1; x < n; ++x) {
      if (reach[g][x] && reach[x][g]) comp[x] = k;
    }
    ++k;
  }
  std::vector<std::vector<int>> out(k);
  for (int g = 0; g < n; ++g) out[comp[g]].push_back(g);
  return out;
}

std::vector<int> accessible(const ForestAlgebra& a, const std::vector<int>& K) {
  std::vector<bool> in(a.h.size(), false);
  for (int k : K) in[k] = true;
  std::vector<int> out;
  for (int g = 0; g < a.h.size(); ++g) {
    for (const auto& f : a.v.elems) {
      if (in[f[g]]) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

std::vector<int> ideal_complement(const ForestAlgebra& a,
                                  const std::vector<int>& K) {
  std::vector<int> acc = accessible(a, K);
  std::vector<bool> in(a.h.size(), false);
  for (int g : acc) in[g] = true;
  std::vector<int> out;
  for (int g = 0; g < a.h.size(); ++g) {
    if (!in[g]) out.push_back(g);
  }
  // closure sanity: an ideal is stable under every element of V
  for (int g : out) {
    for (const auto& f : a.v.elems) {
      if (in[f[g]]) throw AlgebraError("ideal complement not closed");
    }
  }
  return out;
}

ThresholdPeriod elem_threshold_period(const FiniteMonoid& m, int x) {
  std::vector<int> seen_at(m.size(), -1);
  int cur = x;
  int k = 1;
  while (seen_at[cur] < 0) {
    seen_at[cur] = k;
    cur = m.op(cur, x);
    ++k;
  }
  return ThresholdPeriod{seen_at[cur], k - seen_at[cur]};
}

ThresholdPeriod elem_threshold_period(const Transformation& f) {
  std::map<std::string, int> seen_at;
  Transformation cur = f;
  int k = 1;
  while (true) {
    auto [it, fresh] = seen_at.emplace(TransformationMonoid::key(cur), k);
    if (!fresh) return ThresholdPeriod{it->second, k - it->second};
    cur = compose(cur, f);
    ++k;
  }
}

PredicateResult monoid_aperiodic(const TransformationMonoid& m) {
  for (int i = 0; i < m.size(); ++i) {
    ThresholdPeriod tp = elem_threshold_period(m.elems[i]);
    if (tp.period != 1) {
      PredicateResult r;
      r.outcome = Ternary::No;
      r.witness = "element " + std::to_string(i) +
                  (m.names[i].empty() ? "" : " (" + m.names[i] + ")") +
                  " has period " + std::to_string(tp.period);
      return r;
    }
  }
  return PredicateResult{Ternary::Yes, ""};
}

PredicateResult monoid_aperiodic(const FiniteMonoid& m) {
  for (int i = 0; i < m.size(); ++i) {
    ThresholdPeriod tp = elem_threshold_period(m, i);
    if (tp.period != 1) {
      return PredicateResult{Ternary::No, "element " + m.names[i] +
                                              " has period " +
                                              std::to_string(tp.period)};
    }
  }
  return PredicateResult{Ternary::Yes, ""};
}

namespace {

// Maximal subgroup at idempotent e of a transformation monoid, as element
// ids: units of the local monoid e m e.
std::vector<int> maximal_group(const TransformationMonoid& m, int e) {
  std::set<int> local;
  for (int x = 0; x < m.size(); ++x) {
    local.insert(m.compose_ids(m.compose_ids(e, x), e));
  }
  std::vector<int> group;
  for (int x : local) {
    for (int y : local) {
      if (m.compose_ids(x, y) == e && m.compose_ids(y, x) == e) {
        group.push_back(x);
        break;
      }
    }
  }
  return group;
}

// Derived series solvability for a group given by ids within m.
bool group_solvable(const TransformationMonoid& m, std::vector<int> group,
                    int e) {
  for (int depth = 0; depth <= static_cast<int>(group.size()); ++depth) {
    if (group.size() == 1) return true;
    // inverses within the group
    std::map<int, int> inv;
    for (int x : group) {
      for (int y : group) {
        if (m.compose_ids(x, y) == e && m.compose_ids(y, x) == e) {
          inv[x] = y;
          break;
        }
      }
    }
    // commutator subgroup: closure of {x y x^-1 y^-1}
    std::set<int> comm;
    comm.insert(e);
    for (int x : group) {
      for (int y : group) {
        comm.insert(m.compose_ids(m.compose_ids(x, y),
                                  m.compose_ids(inv[x], inv[y])));
      }
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(comm.begin(), comm.end());
      for (int x : cur) {
        for (int y : cur) {
          if (comm.insert(m.compose_ids(x, y)).second) grew = true;
        }
      }
    }
    std::vector<int> next(comm.begin(), comm.end());
    if (next.size() == group.size()) return false;  // stalled, not solvable
    group = std::move(next);
  }
  return group.size() == 1;
}

}  // namespace

PredicateResult monoid_solvable(const TransformationMonoid& m, int tau,
                                int pi) {
  if (tau < 0 || pi < 1) throw AlgebraError("invalid threshold/period");
  for (int e = 0; e < m.size(); ++e) {
    if (m.compose_ids(e, e) != e) continue;
    std::vector<int> group = maximal_group(m, e);
    if (!group_solvable(m, group, e)) {
      PredicateResult r;
      r.outcome = Ternary::No;
      r.witness = "maximal group at idempotent " + std::to_string(e) +
                  " of order " + std::to_string(group.size()) +
                  " is not solvable";
      return r;
    }
  }
  return PredicateResult{Ternary::Yes, ""};
}

}  // namespace fab
