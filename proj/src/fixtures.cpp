#include "fab/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fab {

namespace {

const char* kWedge = "∧";    // conjunction letter
const char* kVee = "∨";      // disjunction letter
const char* kBullet = "•";   // binary-tree letter
const char* kTriangle = "∆"; // triangle letter
const char* kCup = "⋓";      // cup letter
const char* kBot = "⊥";      // bottom leaf

// Small helper for evaluation algebras built from a value universe given
// by strings, an addition function and letter actions.
struct EvalUniverse {
  std::vector<std::string> elems;
  std::map<std::string, int> index;

  int add_elem(const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elems.size());
    elems.push_back(s);
    index.emplace(s, id);
    return id;
  }
  int id(const std::string& s) const { return index.at(s); }
};

Homomorphism finish_eval_algebra(
    EvalUniverse& u, const std::function<int(int, int)>& add, int identity,
    const std::map<Letter, std::function<int(int)>>& letters) {
  FiniteMonoid h;
  h.names = u.elems;
  h.identity = identity;
  int n = static_cast<int>(u.elems.size());
  h.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) h.table[a][b] = add(a, b);
  }
  std::vector<Transformation> acts;
  std::vector<std::string> names;
  std::vector<Letter> sorted_letters;
  for (const auto& [a, fn] : letters) sorted_letters.push_back(a);
  for (const auto& a : sorted_letters) {
    Transformation f(n);
    for (int x = 0; x < n; ++x) f[x] = letters.at(a)(x);
    acts.push_back(std::move(f));
    names.push_back(a);
  }
  ForestAlgebraPtr alg = make_forest_algebra(h, acts, names);
  Homomorphism hom;
  hom.algebra = alg;
  for (size_t i = 0; i < sorted_letters.size(); ++i) {
    int id = alg->v.find(acts[i]);
    hom.letter_action[sorted_letters[i]] = id;
  }
  return hom;
}

// Quotient an evaluation homomorphism and rebase the fixture on it.
Fixture quotient_fixture(const std::string& name, const Alphabet& alphabet,
                         const Homomorphism& eval_hom,
                         const std::vector<int>& accepting_eval) {
  QuotientResult q = syntactic_quotient(eval_hom, accepting_eval);
  Fixture f;
  f.name = name;
  f.alphabet = alphabet;
  f.hom = q.hom;
  f.accepting = q.accepting;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Boolean pairs

Fixture boolean_fixture() {
  // element "ab" is the pair (a, b); first component AND, second OR
  FiniteMonoid h;
  h.names = {"00", "01", "10", "11"};
  auto bit = [](int x) { return std::pair<int, int>{x >> 1, x & 1}; };
  h.table.assign(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      auto [a1, a2] = bit(a);
      auto [b1, b2] = bit(b);
      h.table[a][b] = ((a1 & b1) << 1) | (a2 | b2);
    }
  }
  h.identity = 2;  // "10"

  Transformation conj(4), disj(4);
  for (int x = 0; x < 4; ++x) {
    auto [x1, x2] = bit(x);
    conj[x] = (x1 << 1) | x1;
    disj[x] = (x2 << 1) | x2;
  }
  ForestAlgebraPtr alg = make_forest_algebra(h, {conj, disj}, {kWedge, kVee});

  Fixture f;
  f.name = "boolean";
  f.alphabet = Alphabet({kWedge, kVee});
  f.hom.algebra = alg;
  f.hom.letter_action[kWedge] = alg->v.find(conj);
  f.hom.letter_action[kVee] = alg->v.find(disj);
  f.accepting = {3};
  f.named["zero_hat"] = "00";
  f.named["one_hat"] = "11";
  f.named["identity"] = "10";
  f.named["absorbing"] = "01";
  return f;
}

ProofCircuit fig1_circuit() {
  std::string set_name = "00,11";
  Node m = Node::interior(
      kWedge, {Node::interior(kVee, {Node::port("p1", {set_name}),
                                     Node::port("p2", {set_name})}),
               Node::interior(kVee, {Node::port("p3", {set_name}),
                                     Node::port("p4", {set_name})})});

  ProofCircuit c;
  ProofTuple t0;
  t0.m = Term::tree(m);
  t0.psi = {{"p1", "00"}, {"p2", "00"}, {"p3", "11"}, {"p4", "11"}};
  ProofTuple t1;
  t1.m = Term::tree(m);
  t1.psi = {{"p1", "00"}, {"p2", "11"}, {"p3", "00"}, {"p4", "11"}};
  c.tuples[CircuitKey{set_name, "00"}] = t0;
  c.tuples[CircuitKey{set_name, "11"}] = t1;
  return c;
}

SeedFamily boolean_seeds() {
  Alphabet a({kWedge, kVee});
  SeedFamily s;
  s.seeds[CircuitKey{"00,11", "00"}] = parse_term(kVee, a);
  s.seeds[CircuitKey{"00,11", "11"}] = parse_term(kWedge, a);
  return s;
}

// ---------------------------------------------------------------------------
// Binary trees with all leaves at even depth

Fixture even_depth_fixture() {
  FiniteMonoid h;
  h.names = {"0", "ev", "od", "evev", "odod", "inf"};
  h.identity = 0;
  int n = 6;
  auto idx = [&](const std::string& s) {
    return static_cast<int>(std::find(h.names.begin(), h.names.end(), s) -
                            h.names.begin());
  };
  h.table.assign(n, std::vector<int>(n, idx("inf")));
  for (int a = 0; a < n; ++a) {
    h.table[0][a] = a;
    h.table[a][0] = a;
  }
  h.table[idx("ev")][idx("ev")] = idx("evev");
  h.table[idx("od")][idx("od")] = idx("odod");

  Transformation bullet(n, idx("inf"));
  bullet[idx("0")] = idx("od");
  bullet[idx("evev")] = idx("od");
  bullet[idx("odod")] = idx("ev");

  ForestAlgebraPtr alg = make_forest_algebra(h, {bullet}, {kBullet});
  Fixture f;
  f.name = "even_depth";
  f.alphabet = Alphabet({kBullet});
  f.hom.algebra = alg;
  f.hom.letter_action[kBullet] = alg->v.find(bullet);
  f.accepting = {idx("ev")};
  f.named["even"] = "ev";
  f.named["odd"] = "od";
  f.named["absorbing"] = "inf";
  return f;
}

Term m_family(int d) {
  if (d < 1) throw TermError("m_family needs depth >= 1");
  int counter = 0;
  std::function<Node(int)> build = [&](int depth) -> Node {
    if (depth == 0) {
      ++counter;
      return Node::port("z" + std::to_string(counter), {"z"});
    }
    return Node::interior(kBullet, {build(depth - 1), build(depth - 1)});
  };
  return Term::tree(build(d));
}

// ---------------------------------------------------------------------------
// Duplex formulas

namespace {

struct DuplexUniverse {
  // tree summaries: L0 L1 | n0 n1 u0 u1 sn0 sn1 su0 su1 | X
  std::vector<std::string> summaries = {"L0", "L1", "n0", "n1", "u0",  "u1",
                                        "sn0", "sn1", "su0", "su1", "X"};
  bool is_leaf(const std::string& s) const { return s[0] == 'L'; }
  bool in_u_family(const std::string& s) const {
    return s[0] == 'u' || (s[0] == 's' && s[1] == 'u');
  }
  bool in_n_family(const std::string& s) const {
    return s[0] == 'n' || (s[0] == 's' && s[1] == 'n');
  }
  int val(const std::string& s) const { return s.back() - '0'; }

  // element encodings: "E", "S:<summary>", "M:<sorted multiset>", "F"
  std::string classify(std::vector<std::string> trees) const {
    if (trees.empty()) return "E";
    std::sort(trees.begin(), trees.end());
    if (trees.size() == 1) return "S:" + trees[0];
    for (const auto& t : trees) {
      if (t == "X") return "F";
    }
    bool all_leaves = true, all_u = true, all_n = true;
    for (const auto& t : trees) {
      all_leaves &= is_leaf(t);
      all_u &= in_u_family(t);
      all_n &= in_n_family(t);
    }
    if (all_leaves) {
      if (trees.size() != 2) return "F";
    } else if (all_u || all_n) {
      if (trees.size() > 4) return "F";
      int primary = 0, secondary = 0;  // u vs su (or n vs sn)
      for (const auto& t : trees) {
        if (t[0] == 's') {
          ++secondary;
        } else {
          ++primary;
        }
      }
      if (primary > 2 || secondary > 2) return "F";
      if (trees.size() == 4 && (primary != 2 || secondary != 2)) return "F";
    } else {
      return "F";
    }
    std::string key = "M:";
    for (size_t i = 0; i < trees.size(); ++i) {
      if (i) key += ",";
      key += trees[i];
    }
    return key;
  }

  std::vector<std::string> parts(const std::string& elem) const {
    std::vector<std::string> out;
    if (elem == "E" || elem == "F") return out;
    std::string body = elem.substr(2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  }
};

}  // namespace

Fixture duplex_fixture() {
  DuplexUniverse d;
  EvalUniverse u;
  u.add_elem("E");
  for (const auto& s : d.summaries) u.add_elem("S:" + s);
  // all reachable multiset classes
  std::function<void(std::vector<std::string>, size_t)> gen =
      [&](std::vector<std::string> acc, size_t start) {
        if (!acc.empty()) {
          std::string cls = d.classify(acc);
          if (cls[0] == 'M') u.add_elem(cls);
        }
        if (acc.size() >= 4) return;
        for (size_t i = start; i < d.summaries.size(); ++i) {
          auto next = acc;
          next.push_back(d.summaries[i]);
          if (d.classify(next) == "F") continue;
          gen(next, i);
        }
      };
  gen({}, 0);
  int fid = u.add_elem("F");

  auto add = [&](int a, int b) -> int {
    if (a == fid || b == fid) return fid;
    auto pa = d.parts(u.elems[a]);
    auto pb = d.parts(u.elems[b]);
    pa.insert(pa.end(), pb.begin(), pb.end());
    return u.id(d.classify(pa));
  };

  auto node_val = [&](const std::string& root_tag, bool or_rule, int h) -> std::string {
    // value of a node with the given root over the forest class h
    const std::string& elem = u.elems[h];
    if (elem == "F" || elem == "E") return "X";
    auto ps = d.parts(elem);
    if (ps.size() == 2 && d.is_leaf(ps[0]) && d.is_leaf(ps[1])) {
      int v = or_rule ? (d.val(ps[0]) | d.val(ps[1]))
                      : (d.val(ps[0]) & d.val(ps[1]));
      return root_tag + std::to_string(v);
    }
    if (ps.size() == 4) {
      // the two primary-family sons against the two secondary ones
      bool want_u = !or_rule;  // conjunction roots take u/su sons
      std::vector<int> prim, sec;
      for (const auto& t : ps) {
        bool in_fam = want_u ? d.in_u_family(t) : d.in_n_family(t);
        if (!in_fam) return "X";
        if (t[0] == 's') {
          sec.push_back(d.val(t));
        } else {
          prim.push_back(d.val(t));
        }
      }
      if (prim.size() != 2 || sec.size() != 2) return "X";
      int v1 = or_rule ? (prim[0] | prim[1]) : (prim[0] & prim[1]);
      int v2 = or_rule ? (sec[0] | sec[1]) : (sec[0] & sec[1]);
      if (v1 != v2) return "X";
      return root_tag + std::to_string(v1);
    }
    return "X";
  };

  std::map<Letter, std::function<int(int)>> letters;
  letters["cap"] = [&](int h) { return u.id("S:" + node_val("n", false, h)); };
  letters["cup"] = [&](int h) { return u.id("S:" + node_val("u", true, h)); };
  letters["scap"] = [&](int h) { return u.id("S:" + node_val("sn", false, h)); };
  letters["scup"] = [&](int h) { return u.id("S:" + node_val("su", true, h)); };
  letters["0"] = [&](int h) { return h == 0 ? u.id("S:L0") : u.id("S:X"); };
  letters["1"] = [&](int h) { return h == 0 ? u.id("S:L1") : u.id("S:X"); };

  Homomorphism eval_hom = finish_eval_algebra(u, add, 0, letters);
  QuotientResult q =
      syntactic_quotient(eval_hom, {eval_hom.alg().h.index_of("S:n1")});
  Fixture f;
  f.name = "duplex";
  f.alphabet = Alphabet({"cap", "cup", "scap", "scup", "0", "1"});
  f.hom = q.hom;
  f.accepting = q.accepting;
  auto cls_name = [&](const std::string& eval_elem) {
    return q.algebra->h.names[q.h_class[eval_hom.alg().h.index_of(eval_elem)]];
  };
  f.named["round0"] = cls_name("S:n0");
  f.named["round1"] = cls_name("S:n1");
  f.named["square0"] = cls_name("S:sn0");
  f.named["square1"] = cls_name("S:sn1");
  return f;
}

namespace {

std::string duplex_round_set() {
  Fixture f = duplex_fixture();
  std::vector<std::string> names = {f.named.at("round0"), f.named.at("round1")};
  std::sort(names.begin(), names.end());
  return names[0] + "," + names[1];
}

std::string duplex_square_set() {
  Fixture f = duplex_fixture();
  std::vector<std::string> names = {f.named.at("square0"),
                                    f.named.at("square1")};
  std::sort(names.begin(), names.end());
  return names[0] + "," + names[1];
}

}  // namespace

ProofCircuit duplex_circuit() {
  Fixture f = duplex_fixture();
  std::string jr = duplex_round_set();
  std::string js = duplex_square_set();
  const std::string rname[2] = {f.named.at("round0"), f.named.at("round1")};
  const std::string sname[2] = {f.named.at("square0"), f.named.at("square1")};

  // sons y, y' (cup) and z, z' (scup); four ports under each
  int counter = 0;
  auto son = [&](const std::string& letter, int ba, int bb,
                 ProofTuple& t) -> Node {
    auto port = [&](const std::string& set, const std::string& target) {
      ++counter;
      std::string name = "p" + std::to_string(counter);
      t.psi[name] = target;
      return Node::port(name, {set});
    };
    std::vector<Node> ports;
    ports.push_back(port(jr, rname[ba]));
    ports.push_back(port(jr, rname[bb]));
    ports.push_back(port(js, sname[ba]));
    ports.push_back(port(js, sname[bb]));
    return Node::interior(letter, std::move(ports));
  };

  // value-0 components: sons carry (0,0) under y, z and (1,1) under y', z';
  // value-1 components: every son carries (0,1)
  auto component = [&](const std::string& root, bool one) -> ProofTuple {
    ProofTuple t;
    counter = 0;
    std::vector<Node> sons;
    if (!one) {
      sons.push_back(son("cup", 0, 0, t));
      sons.push_back(son("cup", 1, 1, t));
      sons.push_back(son("scup", 0, 0, t));
      sons.push_back(son("scup", 1, 1, t));
    } else {
      sons.push_back(son("cup", 0, 1, t));
      sons.push_back(son("cup", 0, 1, t));
      sons.push_back(son("scup", 0, 1, t));
      sons.push_back(son("scup", 0, 1, t));
    }
    t.m = Term::tree(Node::interior(root, std::move(sons)));
    return t;
  };

  ProofCircuit c;
  c.tuples[CircuitKey{jr, rname[0]}] = component("cap", false);
  c.tuples[CircuitKey{jr, rname[1]}] = component("cap", true);
  c.tuples[CircuitKey{js, sname[0]}] = component("scap", false);
  c.tuples[CircuitKey{js, sname[1]}] = component("scap", true);
  return c;
}

SeedFamily duplex_seeds() {
  Fixture f = duplex_fixture();
  SeedFamily s;
  s.seeds[CircuitKey{duplex_round_set(), f.named.at("round0")}] =
      parse_term("cap(0+0)", f.alphabet);
  s.seeds[CircuitKey{duplex_round_set(), f.named.at("round1")}] =
      parse_term("cap(1+1)", f.alphabet);
  s.seeds[CircuitKey{duplex_square_set(), f.named.at("square0")}] =
      parse_term("scap(0+0)", f.alphabet);
  s.seeds[CircuitKey{duplex_square_set(), f.named.at("square1")}] =
      parse_term("scap(1+1)", f.alphabet);
  return s;
}

// ---------------------------------------------------------------------------
// Two-table language over {a, b}

Fixture zigzag012_fixture() {
  // tree summaries: L0 L1 L2 | A0 A1 A2 | B0 B1 B2 | X
  std::vector<std::string> summaries = {"L0", "L1", "L2", "A0", "A1",
                                        "A2", "B0", "B1", "B2", "X"};
  auto leafish = [](const std::string& s) { return s[0] == 'L' || s[0] == 'A'; };
  auto is_b = [](const std::string& s) { return s[0] == 'B'; };
  auto val = [](const std::string& s) { return s.back() - '0'; };

  EvalUniverse u;
  u.add_elem("E");
  for (const auto& s : summaries) u.add_elem("S:" + s);
  auto classify = [&](std::vector<std::string> trees) -> std::string {
    if (trees.empty()) return "E";
    std::sort(trees.begin(), trees.end());
    if (trees.size() == 1) return "S:" + trees[0];
    if (trees.size() > 2) return "F";
    bool ok = (leafish(trees[0]) && leafish(trees[1])) ||
              (is_b(trees[0]) && is_b(trees[1]));
    if (!ok) return "F";
    return "P:" + trees[0] + "," + trees[1];
  };
  for (size_t i = 0; i < summaries.size(); ++i) {
    for (size_t j = i; j < summaries.size(); ++j) {
      std::string cls = classify({summaries[i], summaries[j]});
      if (cls[0] == 'P') u.add_elem(cls);
    }
  }
  int fid = u.add_elem("F");

  auto parts = [&](const std::string& elem) -> std::vector<std::string> {
    std::vector<std::string> out;
    if (elem == "E" || elem == "F") return out;
    std::string body = elem.substr(2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  auto add = [&](int a, int b) -> int {
    if (a == fid || b == fid) return fid;
    auto pa = parts(u.elems[a]);
    auto pb = parts(u.elems[b]);
    pa.insert(pa.end(), pb.begin(), pb.end());
    return u.id(classify(pa));
  };

  std::map<Letter, std::function<int(int)>> letters;
  letters["a"] = [&](int h) -> int {
    auto ps = parts(u.elems[h]);
    if (ps.size() == 2 && is_b(ps[0]) && is_b(ps[1])) {
      int v = val(ps[0]), w = val(ps[1]);
      if (v == 0 && w == 0) return u.id("S:A0");
      if (v == 1 && w == 1) return u.id("S:A2");
    }
    return u.id("S:X");
  };
  letters["b"] = [&](int h) -> int {
    auto ps = parts(u.elems[h]);
    if (ps.size() == 2 && leafish(ps[0]) && leafish(ps[1])) {
      int v = val(ps[0]), w = val(ps[1]);
      if (v == 0 && w == 0) return u.id("S:B1");
      if (v == 2 && w == 2) return u.id("S:B0");
    }
    return u.id("S:X");
  };
  letters["0"] = [&](int h) { return h == 0 ? u.id("S:L0") : u.id("S:X"); };
  letters["1"] = [&](int h) { return h == 0 ? u.id("S:L1") : u.id("S:X"); };
  letters["2"] = [&](int h) { return h == 0 ? u.id("S:L2") : u.id("S:X"); };
  letters[kBot] = [&](int h) { return u.id("S:X"); };

  Homomorphism eval_hom = finish_eval_algebra(u, add, 0, letters);
  std::vector<int> acc = {eval_hom.alg().h.index_of("S:L0"),
                          eval_hom.alg().h.index_of("S:A0")};
  QuotientResult q = syntactic_quotient(eval_hom, acc);
  Fixture f;
  f.name = "zigzag012";
  f.alphabet = Alphabet({"a", "b", "0", "1", "2", kBot});
  f.hom = q.hom;
  f.accepting = q.accepting;
  auto cls_name = [&](const std::string& e) {
    return q.algebra->h.names[q.h_class[eval_hom.alg().h.index_of(e)]];
  };
  f.named["t0"] = cls_name("S:L0");
  f.named["t1"] = cls_name("S:L1");
  f.named["t2"] = cls_name("S:L2");
  f.named["absorbing"] = cls_name("F");
  return f;
}

// ---------------------------------------------------------------------------
// Triangle/cup language

Fixture potthoff_fixture() {
  // tree summaries: L0 L1 | D0 D1 | C0 C1 | X
  std::vector<std::string> summaries = {"L0", "L1", "D0", "D1", "C0", "C1", "X"};
  auto zside = [](const std::string& s) { return s[0] == 'L' || s[0] == 'D'; };
  auto is_c = [](const std::string& s) { return s[0] == 'C'; };
  auto val = [](const std::string& s) { return s.back() - '0'; };

  EvalUniverse u;
  u.add_elem("E");
  for (const auto& s : summaries) u.add_elem("S:" + s);
  auto classify = [&](std::vector<std::string> trees) -> std::string {
    if (trees.empty()) return "E";
    std::sort(trees.begin(), trees.end());
    if (trees.size() == 1) return "S:" + trees[0];
    if (trees.size() > 2) return "F";
    bool y_pair = zside(trees[0]) && zside(trees[1]);
    bool z_pair = (zside(trees[0]) && is_c(trees[1])) ||
                  (is_c(trees[0]) && zside(trees[1]));
    if (!y_pair && !z_pair) return "F";
    return "P:" + trees[0] + "," + trees[1];
  };
  for (size_t i = 0; i < summaries.size(); ++i) {
    for (size_t j = i; j < summaries.size(); ++j) {
      std::string cls = classify({summaries[i], summaries[j]});
      if (cls[0] == 'P') u.add_elem(cls);
    }
  }
  int fid = u.add_elem("F");

  auto parts = [&](const std::string& elem) -> std::vector<std::string> {
    std::vector<std::string> out;
    if (elem == "E" || elem == "F") return out;
    std::string body = elem.substr(2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  auto add = [&](int a, int b) -> int {
    if (a == fid || b == fid) return fid;
    auto pa = parts(u.elems[a]);
    auto pb = parts(u.elems[b]);
    pa.insert(pa.end(), pb.begin(), pb.end());
    return u.id(classify(pa));
  };

  std::map<Letter, std::function<int(int)>> letters;
  letters[kTriangle] = [&](int h) -> int {
    auto ps = parts(u.elems[h]);
    if (ps.size() == 2) {
      std::string x, c;
      if (zside(ps[0]) && is_c(ps[1])) {
        x = ps[0];
        c = ps[1];
      } else if (is_c(ps[0]) && zside(ps[1])) {
        x = ps[1];
        c = ps[0];
      }
      if (!x.empty()) {
        int v = val(x), w = val(c);
        if (v == 0 && w == 0) return u.id("S:D1");
        if (v == 1 && w == 1) return u.id("S:D0");
      }
    }
    return u.id("S:X");
  };
  letters[kCup] = [&](int h) -> int {
    auto ps = parts(u.elems[h]);
    if (ps.size() == 2 && zside(ps[0]) && zside(ps[1])) {
      return u.id(val(ps[0]) == val(ps[1]) ? "S:C1" : "S:C0");
    }
    return u.id("S:X");
  };
  letters["0"] = [&](int h) { return h == 0 ? u.id("S:L0") : u.id("S:X"); };
  letters["1"] = [&](int h) { return h == 0 ? u.id("S:L1") : u.id("S:X"); };
  letters[kBot] = [&](int h) { return u.id("S:X"); };

  Homomorphism eval_hom = finish_eval_algebra(u, add, 0, letters);
  std::vector<int> acc = {eval_hom.alg().h.index_of("S:L1"),
                          eval_hom.alg().h.index_of("S:D1")};
  QuotientResult q = syntactic_quotient(eval_hom, acc);
  Fixture f;
  f.name = "potthoff";
  f.alphabet = Alphabet({kTriangle, kCup, "0", "1", kBot});
  f.hom = q.hom;
  f.accepting = q.accepting;
  auto cls_name = [&](const std::string& e) {
    return q.algebra->h.names[q.h_class[eval_hom.alg().h.index_of(e)]];
  };
  f.named["zero_hat"] = cls_name("S:D0");
  f.named["one_hat"] = cls_name("S:D1");
  f.named["absorbing"] = cls_name("F");
  f.named["cup0"] = cls_name("S:C0");
  f.named["cup1"] = cls_name("S:C1");
  return f;
}

PotthoffPair p_family(int theta, int k) {
  if (theta < 1 || theta > 9 || k < 1 || k > 3) {
    throw TermError("p_family supports 1 <= theta <= 9, 1 <= k <= 3");
  }
  Fixture f = potthoff_fixture();
  const std::string zero = f.named.at("zero_hat");
  const std::string one = f.named.at("one_hat");
  std::vector<std::string> setv = {zero, one};
  std::sort(setv.begin(), setv.end());
  std::string set_name = setv[0] + "," + setv[1];

  int counter = 0;

  // One chain p^(1)_t with the parity port patterns, ports prefixed to stay
  // unique under later insertions. Fills psi; alternates the equal-pair
  // pattern between (0,0) and (1,1) across its levels.
  std::function<Node(int, const std::string&,
                     std::map<std::string, std::string>&)>
      chain = [&](int t, const std::string& prefix,
                  std::map<std::string, std::string>& psi) -> Node {
    int q_alt = 0;
    std::function<Node(int)> level = [&](int d) -> Node {
      // z side: next level (wrapped in e, as insertions do) or the final 1
      Node zson = (d == t) ? Node::leaf("1")
                           : Node::interior("e", {level(d + 1)});
      ++counter;
      std::string y0 = prefix + "y" + std::to_string(counter) + "a";
      std::string y1 = prefix + "y" + std::to_string(counter) + "b";
      bool node_is_zero = ((t - d) % 2 == 0);  // value of this node
      if (node_is_zero) {
        // cup value must be 1: equal targets, alternating choice
        std::string both = (q_alt++ % 2 == 0) ? zero : one;
        psi[y0] = both;
        psi[y1] = both;
      } else {
        psi[y0] = zero;
        psi[y1] = one;
      }
      Node cup = Node::interior(
          kCup, {Node::port(y0, {set_name}), Node::port(y1, {set_name})});
      return Node::interior(kTriangle, {zson, cup});
    };
    return level(1);
  };

  // Assembles p^(k): insert value-matched chains at the pumping ports.
  std::function<ProofTuple(int, int)> assemble = [&](int t, int kk) -> ProofTuple {
    ProofTuple out;
    if (kk == 1) {
      std::map<std::string, std::string> psi;
      Node root = chain(t, "c" + std::to_string(++counter) + "x", psi);
      out.m = Term::tree(root);
      out.psi = std::move(psi);
      return out;
    }
    ProofTuple base = assemble(t, kk - 1);
    std::map<std::string, std::vector<Node>> repl;
    ProofTuple next;
    next.psi.clear();
    for (const auto& [port, target] : base.psi) {
      // insert the chain whose value matches the target
      int t_ins = ((t % 2 == 1) == (target == zero)) ? t : t + 1;
      std::map<std::string, std::string> psi_sub;
      Node sub = chain(t_ins, "c" + std::to_string(++counter) + "x", psi_sub);
      repl[port] = {sub};
      for (auto& [p, tgt] : psi_sub) next.psi[p] = tgt;
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
    std::vector<Node> roots;
    for (const auto& r : base.m.roots()) roots.push_back(subst(r));
    next.m = Term(std::move(roots));
    return next;
  };

  PotthoffPair pair;
  pair.theta = theta;
  pair.k = k;
  pair.set_name = set_name;
  pair.low = assemble(theta, k);
  pair.high = assemble(theta + 1, k);

  auto complete = [&](const ProofTuple& t) {
    std::map<std::string, std::string> chi;
    for (const auto& [port, target] : t.psi) {
      chi[port] = (target == zero) ? "0" : "1";
    }
    return leaf_completion(t.m, chi);
  };
  pair.low_completed = complete(pair.low);
  pair.high_completed = complete(pair.high);
  return pair;
}

// ---------------------------------------------------------------------------
// "Some node has exactly one b strictly below it"

Fixture ancestor_one_b_fixture() {
  EvalUniverse u;
  // (capped b count, witness flag)
  for (int f = 0; f <= 1; ++f) {
    for (int c = 0; c <= 2; ++c) {
      u.add_elem("b" + std::to_string(c) + (f ? "w" : ""));
    }
  }
  auto enc = [&](int c, int f) { return f * 3 + c; };
  auto cnt = [](int id) { return id % 3; };
  auto flg = [](int id) { return id / 3; };
  auto add = [&](int a, int b) {
    return enc(std::min(cnt(a) + cnt(b), 2), flg(a) | flg(b));
  };
  std::map<Letter, std::function<int(int)>> letters;
  letters["a"] = [&](int h) { return enc(cnt(h), flg(h) | (cnt(h) == 1)); };
  letters["b"] = [&](int h) {
    return enc(std::min(cnt(h) + 1, 2), flg(h) | (cnt(h) == 1));
  };
  Homomorphism eval_hom = finish_eval_algebra(u, add, 0, letters);
  std::vector<int> acc;
  for (int c = 0; c <= 2; ++c) acc.push_back(enc(c, 1));
  Alphabet alphabet({"a", "b"});
  Fixture f = quotient_fixture("ancestor_one_b", alphabet, eval_hom, acc);
  return f;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "boolean", "duplex", "even_depth", "zigzag012", "potthoff",
      "ancestor_one_b"};
  return names;
}

Fixture fixture_by_name(const std::string& name) {
  if (name == "boolean") return boolean_fixture();
  if (name == "duplex") return duplex_fixture();
  if (name == "even_depth") return even_depth_fixture();
  if (name == "zigzag012") return zigzag012_fixture();
  if (name == "potthoff") return potthoff_fixture();
  if (name == "ancestor_one_b") return ancestor_one_b_fixture();
  throw AlgebraError("unknown fixture '" + name + "'");
}

namespace {

void check_one(const std::string& name, FixtureCheck& out) {
  auto record = [&](const std::string& what, bool ok) {
    out.ok &= ok;
    out.lines.push_back(name + ": " + what + ": " + (ok ? "ok" : "FAIL"));
  };
  Fixture f = fixture_by_name(name);
  record("algebra valid", !validate_algebra(f.alg()).has_value());

  auto image = [&](const std::string& text) {
    return f.alg().h.names[hom_eval_h(f.hom, parse_term(text, f.alphabet))];
  };

  if (name == "boolean") {
    record("conjunction letter maps to 11", image(kWedge) == "11");
    record("disjunction letter maps to 00", image(kVee) == "00");
    std::vector<int> j = {f.alg().h.index_of("00"), f.alg().h.index_of("11")};
    bool one_scc = false;
    for (const auto& comp : scc(f.alg())) {
      std::set<int> s(comp.begin(), comp.end());
      if (s.count(j[0]) && s.count(j[1])) one_scc = true;
    }
    record("00 and 11 mutually accessible", one_scc);
    record("vertical monoid aperiodic",
           monoid_aperiodic(f.alg().v).outcome == Ternary::Yes);
  } else if (name == "even_depth") {
    record("vertical monoid has 19 elements", f.alg().v.size() == 19);
    record("vertical monoid aperiodic",
           monoid_aperiodic(f.alg().v).outcome == Ternary::Yes);
    ThresholdPeriod tp = multivertical_threshold_period(f.hom);
    record("multivertical period 2", tp.period == 2);
    std::string b = kBullet;
    record("sum rules", image(b + "(" + b + "(" + b + "+" + b + ")+" + b +
                              "(" + b + "+" + b + "))") == "ev");
    std::vector<int> ideal =
        ideal_complement(f.alg(), {f.alg().h.index_of("ev")});
    record("absorbing element forms the dead ideal",
           ideal.size() == 1 && f.alg().h.names[ideal[0]] == "inf");
  } else if (name == "duplex") {
    record("round seed 0", image("cap(0+0)") == f.named.at("round0"));
    record("round seed 1", image("cap(1+1)") == f.named.at("round1"));
    record("square seed 0", image("scap(0+0)") == f.named.at("square0"));
    record("square seed 1", image("scap(1+1)") == f.named.at("square1"));
  } else if (name == "zigzag012") {
    record("a-table (0,0)", image("a(b(0+0)+b(0+0))") != f.named.at("absorbing"));
    record("b-table row 1 dead", image("b(1+1)") == f.named.at("absorbing"));
    MultiverticalResult mv = multivertical(f.hom);
    record("vertical confusion on the four-port multicontext",
           mv.outcome == Ternary::Yes &&
               monoid_aperiodic(mv.monoid).outcome == Ternary::No);
  } else if (name == "potthoff") {
    record("ten horizontal elements", f.alg().h.size() == 10);
    std::string tri = kTriangle, cup = kCup;
    record("triangle table (0,0) -> 1",
           image(tri + "(0+" + cup + "(0+1))") == f.named.at("one_hat"));
    record("triangle table (1,1) -> 0",
           image(tri + "(1+" + cup + "(0+0))") == f.named.at("zero_hat"));
    record("cup table (0,1) -> 0",
           image(cup + "(0+1)") == f.named.at("cup0"));
    record("vertical monoid aperiodic",
           monoid_aperiodic(f.alg().v).outcome == Ternary::Yes);
    MultiverticalResult mv = multivertical(f.hom);
    record("multivertical aperiodic",
           mv.outcome == Ternary::Yes &&
               monoid_aperiodic(mv.monoid).outcome == Ternary::Yes);
  }
}

}  // namespace

FixtureCheck check_fixture(const std::string& name) {
  FixtureCheck out;
  if (name == "all") {
    for (const auto& n : fixture_names()) check_one(n, out);
  } else {
    check_one(name, out);
  }
  return out;
}

}  // namespace fab
