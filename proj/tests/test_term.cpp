#include <random>
#include <set>

#include "doctest.h"
#include "fab/term.hpp"

using namespace fab;

namespace {

Alphabet abc() { return Alphabet({"a", "b", "c"}); }

Term T(const std::string& s) { return parse_term(s, abc()); }

std::string fmt(const Term& t) { return format_term(t); }

}  // namespace

TEST_CASE("parse basics") {
  CHECK(fmt(T("a(b+c)")) == "a(b+c)");
  // juxtaposition: a above b, c alone
  CHECK(fmt(T("ab+c")) == "a(b)+c");
  CHECK(fmt(T("?z")) == "?z");
  CHECK(fmt(T("_")) == "_");
  CHECK(fmt(T("e(?z)")) == "e(?z)");
  CHECK(fmt(T("0")) == "0");
  CHECK(T("0").is_empty());
  CHECK(fmt(T("a_")) == "a(_)");
  CHECK(fmt(T("?z:lab:x")) == "?z:lab:x");
  CHECK(T("?z:lab").port_input_labels().at("z") == "lab");
  // a port with no extras uses its own name as input label
  CHECK(T("?z").port_input_labels().at("z") == "z");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(T("d"), TermError);          // unknown letter
  CHECK_THROWS_AS(T("a(?z+?z)"), TermError);   // duplicate port name
  CHECK_THROWS_AS(T("a(_+_)"), TermError);     // two boxes
  CHECK_THROWS_AS(T("a(b"), TermError);        // missing paren
  CHECK_THROWS_AS(T("a)"), TermError);         // trailing input
}

TEST_CASE("multi-letter alphabets use longest match") {
  Alphabet two({"a", "aa"});
  CHECK(fmt(parse_term("aa", two)) == "aa");
  CHECK(fmt(parse_term("a(aa)", two)) == "a(aa)");
  // "0" is a letter when declared
  Alphabet withzero({"0", "a"});
  Term t = parse_term("0", withzero);
  CHECK_FALSE(t.is_empty());
  CHECK(fmt(t) == "0");
}

TEST_CASE("round trip on random canonical forests") {
  std::vector<Term> all = enumerate_forests({"a", "b"}, 6);
  for (const auto& t : all) {
    CHECK(fmt(parse_term(fmt(t), abc())) == fmt(t));
  }
}

TEST_CASE("canonical form sorts siblings and is idempotent") {
  CHECK(fmt(canonical_form(T("a(c+b)"))) == "a(b+c)");
  CHECK(fmt(canonical_form(T("b+a"))) == "a+b");
  CHECK(fmt(canonical_form(T("a(b+c)"))) == "a(b+c)");
  for (const auto& s : {"a(c+b)+b(a+a)", "c+b+a", "a(a(b+a)+c)"}) {
    Term c1 = canonical_form(T(s));
    CHECK(fmt(canonical_form(c1)) == fmt(c1));
  }
}

TEST_CASE("canonical form is invariant under sibling permutations") {
  std::mt19937 rng(7);
  std::vector<Term> all = enumerate_forests({"a", "b"}, 6);
  for (int iter = 0; iter < 200; ++iter) {
    const Term& t = all[rng() % all.size()];
    // random permutation of the roots plus of one interior node's children
    std::vector<Node> roots = t.roots();
    std::shuffle(roots.begin(), roots.end(), rng);
    Term shuffled(roots);
    CHECK(fmt(canonical_form(shuffled)) == fmt(canonical_form(t)));
  }
}

TEST_CASE("delta, delta_plus, nabla") {
  Term t = T("a(b+c)");
  NodeRef root{0, {}};
  NodeRef b{0, {0}};
  CHECK(fmt(delta(t, root)) == "b+c");
  CHECK(fmt(delta_plus(t, b)) == "b");
  CHECK(fmt(nabla(t, b)) == "a(_+c)");
  CHECK_THROWS_AS(delta(t, NodeRef{0, {5}}), TermError);
  CHECK_THROWS_AS(nabla(T("a_"), NodeRef{0, {}}), TermError);
}

TEST_CASE("insert_context") {
  CHECK(fmt(insert_context(T("a_"), T("b"))) == "a(b)");
  CHECK(fmt(insert_context(T("c+_"), T("b"))) == "c+b");
  CHECK(fmt(insert_context(T("a_"), T("b+c"))) == "a(b+c)");
  CHECK_THROWS_AS(insert_context(T("a"), T("b")), TermError);
}

TEST_CASE("insert_context associativity, exhaustive to size 6") {
  std::vector<Term> contexts = enumerate_contexts({"a", "b"}, 4);
  std::vector<Term> forests = enumerate_forests({"a", "b"}, 3);
  for (const auto& p : contexts) {
    for (const auto& q : contexts) {
      for (const auto& t : forests) {
        Term lhs = insert_context(insert_context(p, q), t);
        Term rhs = insert_context(p, insert_context(q, t));
        CHECK(equal_canonical(lhs, rhs));
      }
    }
  }
}

TEST_CASE("nabla/delta_plus reconstruction, exhaustive to size 6") {
  for (const auto& t : enumerate_forests({"a", "b"}, 6)) {
    for (const auto& x : all_nodes(t)) {
      Term rebuilt = insert_context(nabla(t, x), delta_plus(t, x));
      CHECK(equal_canonical(rebuilt, t));
    }
  }
}

TEST_CASE("insert_at_ports") {
  Term m = T("a(?z)");
  Term got = insert_at_ports(m, {"z"}, [&](const std::string&) { return T("b"); });
  CHECK(fmt(got) == "a(e(b))");

  Term m2 = T("a(?y+?z)");
  got = insert_at_ports(m2, {"z"}, [&](const std::string&) { return T("?w"); });
  CHECK(fmt(got) == "a(?y+e(?w))");

  // two copies of the same insert get per-copy numeric suffixes
  Term m3 = T("a(?z1+?z2)");
  got = insert_at_ports(m3, {"z1", "z2"},
                        [&](const std::string&) { return T("a(?u+?v)"); });
  CHECK(fmt(got) == "a(e(a(?u1+?v1))+e(a(?u2+?v2)))");

  CHECK_THROWS_AS(
      insert_at_ports(m, {"nope"}, [&](const std::string&) { return T("b"); }),
      TermError);
}

TEST_CASE("pump") {
  Term chain = T("a(?z)");
  std::vector<Term> out = pump({chain}, std::set<std::string>{"z"}, 3);
  REQUIRE(out.size() == 1);
  CHECK(fmt(out[0]) == "a(e(a(e(a(?z)))))");

  out = pump({chain}, "z", 1);
  REQUIRE(out.size() == 1);
  CHECK(equal_canonical(out[0], chain));
}

TEST_CASE("pump over a two-element base set") {
  // m has two pumping ports, m2 has one; expansion counts follow the
  // definition (oracle: direct enumeration of insertion choices).
  Alphabet a({"a", "b"});
  Term m = parse_term("a(?z1:z+?z2:z)", a);
  Term m2 = parse_term("b(?w:z)", a);
  std::vector<Term> out = pump({m, m2}, "z", 2);
  // choices: into m, 2x2 assignments -> 4 distinct results; into m2: 2
  std::set<std::string> seen;
  for (const auto& t : out) seen.insert(fmt(t));
  CHECK(out.size() == 6);
  CHECK(seen.size() == 6);
}

TEST_CASE("leaf completion") {
  Term m = T("a(?z)");
  CHECK(fmt(leaf_completion(m, {{"z", "h"}})) == "a(h)");
  Term m2 = T("_+?z");
  CHECK(fmt(leaf_completion(m2, {{"z", "k"}})) == "_+k");
  CHECK_THROWS_AS(leaf_completion(m, {}), TermError);
}

TEST_CASE("circuit insert") {
  Alphabet al({"a", "d"});
  SimpleCircuit M;
  M.components["c"] = parse_term("a(?b)", al);
  TermFamily S;
  S["b"] = parse_term("d", al);
  TermFamily got = circuit_insert(M, S);
  CHECK(fmt(got.at("c")) == "a(e(d))");

  TermFamily missing;
  CHECK_THROWS_AS(circuit_insert(M, missing), TermError);
}

TEST_CASE("circuit composition associativity on random instances") {
  std::mt19937 rng(11);
  Alphabet al({"a", "b"});
  auto random_component = [&](int maxports) {
    // small random multicontext over two input keys i, j
    std::vector<std::string> keys = {"i", "j"};
    int ports = 1 + static_cast<int>(rng() % maxports);
    std::vector<Node> children;
    for (int p = 0; p < ports; ++p) {
      children.push_back(
          Node::port("q" + std::to_string(p), {keys[rng() % 2]}));
    }
    std::string letter = rng() % 2 ? "a" : "b";
    return Term::tree(Node::interior(letter, children));
  };
  for (int iter = 0; iter < 100; ++iter) {
    SimpleCircuit M, N;
    TermFamily S;
    for (const std::string key : {"i", "j"}) {
      M.components[key] = random_component(3);
      N.components[key] = random_component(2);
      S[key] = parse_term(rng() % 2 ? "a" : "b(a)", al);
    }
    TermFamily lhs = circuit_insert(M, circuit_insert(N, S));
    TermFamily rhs = circuit_insert(circuit_compose(M, N), S);
    for (const std::string key : {"i", "j"}) {
      CHECK(equal_canonical(lhs.at(key), rhs.at(key)));
    }
  }
}

TEST_CASE("enumerate_forests counts are consistent") {
  std::vector<Term> upto2 = enumerate_forests({"a"}, 2);
  // size 0: empty; size 1: a; size 2: a(a), a+a
  CHECK(upto2.size() == 4);
  std::vector<Term> ctx = enumerate_contexts({"a"}, 2);
  // size 1: _; size 2: a(_), a+_
  CHECK(ctx.size() == 3);
  for (const auto& t : enumerate_forests({"a", "b"}, 5)) {
    CHECK(fmt(canonical_form(t)) == fmt(t));  // enumerated canonically
  }
}
