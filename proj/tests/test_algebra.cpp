#include <random>

#include "doctest.h"
#include "fab/algebra.hpp"
#include "fab/fixtures.hpp"

using namespace fab;

namespace {

FiniteMonoid trivial_monoid() {
  FiniteMonoid m;
  m.names = {"0"};
  m.table = {{0}};
  m.identity = 0;
  return m;
}

FiniteMonoid z2() {
  FiniteMonoid m;
  m.names = {"0", "1"};
  m.table = {{0, 1}, {1, 0}};
  m.identity = 0;
  return m;
}

}  // namespace

TEST_CASE("validate_algebra accepts the bundled algebras") {
  CHECK_FALSE(validate_algebra(boolean_fixture().alg()).has_value());
  CHECK_FALSE(validate_algebra(even_depth_fixture().alg()).has_value());
  CHECK_FALSE(validate_algebra(*od_algebra(trivial_monoid())).has_value());
}

TEST_CASE("validate_algebra names a missing translation") {
  ForestAlgebraPtr ok = od_algebra(counter_monoid(1, 1));
  ForestAlgebra broken = *ok;
  // drop the translation [1+eps+0]
  Transformation missing = broken.v.elems[broken.translation_id(1, 0)];
  TransformationMonoid pruned;
  pruned.domain = broken.v.domain;
  for (const auto& f : broken.v.elems) {
    if (f == missing) continue;
    pruned.index.emplace(TransformationMonoid::key(f), pruned.size());
    pruned.elems.push_back(f);
    pruned.names.push_back("");
  }
  broken.v = pruned;
  auto bad = validate_algebra(broken);
  REQUIRE(bad.has_value());
  CHECK(bad->find("translation") != std::string::npos);
}

TEST_CASE("hom_eval on the neutral letter is the identity") {
  Fixture f = boolean_fixture();
  HomValue v = hom_eval(f.hom, parse_term("e(_)", f.alphabet));
  REQUIRE(v.vertical);
  CHECK(v.v == f.alg().v.identity_id());
}

TEST_CASE("homomorphism laws, exhaustive over small terms") {
  for (const auto& name : {"boolean", "even_depth"}) {
    Fixture f = fixture_by_name(name);
    std::vector<Letter> letters;
    for (const auto& a : f.alphabet.letters()) {
      if (a != "e") letters.push_back(a);
    }
    std::vector<Term> forests = enumerate_forests(letters, 4);
    std::vector<Term> contexts = enumerate_contexts(letters, 4);
    for (const auto& s : contexts) {
      HomValue vs = hom_eval(f.hom, s);
      REQUIRE(vs.vertical);
      for (const auto& t : forests) {
        int ht = hom_eval_h(f.hom, t);
        int composed = f.alg().v.elems[vs.v][ht];
        CHECK(hom_eval_h(f.hom, insert_context(s, t)) == composed);
      }
    }
    for (const auto& s : forests) {
      int hs = hom_eval_h(f.hom, s);
      for (const auto& t : forests) {
        if (s.size() + t.size() > 5) continue;
        int ht = hom_eval_h(f.hom, t);
        CHECK(hom_eval_h(f.hom, hsum(s, t)) == f.alg().h.op(hs, ht));
      }
    }
  }
}

TEST_CASE("counter monoid") {
  FiniteMonoid n11 = counter_monoid(1, 1);
  CHECK(n11.size() == 2);
  CHECK(n11.op(1, 1) == 1);  // saturating OR

  FiniteMonoid z5 = counter_monoid(0, 5);
  CHECK(z5.size() == 5);
  CHECK(z5.op(3, 4) == 2);  // cyclic

  CHECK(cap_count(2 + 5, 2, 1) == 2);
  CHECK_THROWS_AS(counter_monoid(0, 0), AlgebraError);

  // associativity and commutativity, exhaustive for tau+pi <= 8
  for (int tau = 0; tau <= 7; ++tau) {
    for (int pi = 1; tau + pi <= 8; ++pi) {
      FiniteMonoid m = counter_monoid(tau, pi);
      CHECK_FALSE(m.check().has_value());
      for (int a = 0; a < m.size(); ++a) {
        for (int b = 0; b < m.size(); ++b) {
          CHECK(m.op(a, b) == m.op(b, a));
        }
      }
    }
  }
}

TEST_CASE("one-dimensional algebras") {
  ForestAlgebraPtr od = od_algebra(counter_monoid(1, 1));
  CHECK(od->h.size() == 2);
  CHECK(od->v.size() == 2);  // [0+eps] and [1+eps]

  ForestAlgebraPtr triv = od_algebra(trivial_monoid());
  CHECK(triv->h.size() == 1);
  CHECK(triv->v.size() == 1);

  ForestAlgebraPtr odz2 = od_algebra(z2());
  CHECK(odz2->v.size() == 2);
  int swap_id = -1;
  for (int i = 0; i < odz2->v.size(); ++i) {
    if (i != odz2->v.identity_id()) swap_id = i;
  }
  ThresholdPeriod tp = elem_threshold_period(odz2->v.elems[swap_id]);
  CHECK(tp.period == 2);
}

TEST_CASE("syntactic quotient of the Boolean fixture is itself") {
  Fixture f = boolean_fixture();
  QuotientResult q = syntactic_quotient(f.hom, {f.alg().h.index_of("11")});
  CHECK(q.algebra->h.size() == 4);
  CHECK_FALSE(validate_algebra(*q.algebra).has_value());

  // empty accepting set collapses everything
  QuotientResult qe = syntactic_quotient(f.hom, {});
  CHECK(qe.algebra->h.size() == 1);

  // the even-depth algebra is already syntactic: 6 elements
  Fixture ed = even_depth_fixture();
  QuotientResult qed = syntactic_quotient(ed.hom, {ed.alg().h.index_of("ev")});
  CHECK(qed.algebra->h.size() == 6);
}

TEST_CASE("syntactic quotient preserves the language on random forests") {
  std::mt19937 rng(13);
  for (const auto& name : {"boolean", "even_depth"}) {
    Fixture f = fixture_by_name(name);
    QuotientResult q = syntactic_quotient(f.hom, f.accepting);
    CHECK_FALSE(validate_algebra(*q.algebra).has_value());
    std::vector<Letter> letters;
    for (const auto& a : f.alphabet.letters()) {
      if (a != "e") letters.push_back(a);
    }
    std::vector<Term> pool = enumerate_forests(letters, 6);
    std::vector<bool> accept_src(f.alg().h.size(), false);
    for (int a : f.accepting) accept_src[a] = true;
    std::vector<bool> accept_q(q.algebra->h.size(), false);
    for (int a : q.accepting) accept_q[a] = true;
    for (int iter = 0; iter < 100; ++iter) {
      const Term& t = pool[rng() % pool.size()];
      bool in_src = accept_src[hom_eval_h(f.hom, t)];
      bool in_q = accept_q[hom_eval_h(q.hom, t)];
      CHECK(in_src == in_q);
    }
  }
}

TEST_CASE("division") {
  ForestAlgebraPtr n11 = od_algebra(counter_monoid(1, 1));
  ForestAlgebraPtr n21 = od_algebra(counter_monoid(2, 1));
  ForestAlgebraPtr odz2 = od_algebra(z2());
  ForestAlgebraPtr triv = od_algebra(trivial_monoid());

  CHECK(divides(*n11, *n11).outcome == Ternary::Yes);  // reflexive
  DividesResult d = divides(*n11, *n21);
  CHECK(d.outcome == Ternary::Yes);
  CHECK_FALSE(d.witness.empty());
  CHECK(divides(*odz2, *n21).outcome == Ternary::No);

  // transitivity spot check: triv < n11 < n21 and triv < n21
  CHECK(divides(*triv, *n11).outcome == Ternary::Yes);
  CHECK(divides(*triv, *n21).outcome == Ternary::Yes);

  // a tiny budget exhausts
  CHECK(divides(*odz2, *n21, 3).outcome == Ternary::Exhausted);
}

TEST_CASE("accessibility and ideals") {
  Fixture f = boolean_fixture();
  auto comps = scc(f.alg());
  bool found = false;
  for (const auto& comp : comps) {
    std::set<int> s(comp.begin(), comp.end());
    if (s.count(f.alg().h.index_of("00")) && s.count(f.alg().h.index_of("11"))) {
      found = true;
    }
  }
  CHECK(found);

  // K = H: everything reaches it, the ideal is empty
  std::vector<int> all;
  for (int i = 0; i < f.alg().h.size(); ++i) all.push_back(i);
  CHECK(accessible(f.alg(), all).size() == all.size());
  CHECK(ideal_complement(f.alg(), all).empty());

  Fixture ed = even_depth_fixture();
  std::vector<int> ideal = ideal_complement(ed.alg(), {ed.alg().h.index_of("ev")});
  REQUIRE(ideal.size() == 1);
  CHECK(ed.alg().h.names[ideal[0]] == "inf");
}

TEST_CASE("element threshold and period") {
  FiniteMonoid n11 = counter_monoid(1, 1);
  ThresholdPeriod idem = elem_threshold_period(n11, 1);
  CHECK(idem.threshold == 1);
  CHECK(idem.period == 1);

  Transformation cycle = {1, 0};
  ThresholdPeriod tp = elem_threshold_period(cycle);
  CHECK(tp.threshold == 1);
  CHECK(tp.period == 2);

  FiniteMonoid n32 = counter_monoid(3, 2);
  ThresholdPeriod gen = elem_threshold_period(n32, 1);
  CHECK(gen.threshold == 3);
  CHECK(gen.period == 2);
}

TEST_CASE("aperiodicity and solvability") {
  Fixture ed = even_depth_fixture();
  CHECK(monoid_aperiodic(ed.alg().v).outcome == Ternary::Yes);

  ForestAlgebraPtr triv = od_algebra(trivial_monoid());
  CHECK(monoid_aperiodic(triv->v).outcome == Ternary::Yes);
  CHECK(monoid_solvable(triv->v, 1, 1).outcome == Ternary::Yes);

  // a cyclic group is solvable but not aperiodic
  ForestAlgebraPtr odz2 = od_algebra(z2());
  PredicateResult ap = monoid_aperiodic(odz2->v);
  CHECK(ap.outcome == Ternary::No);
  CHECK_FALSE(ap.witness.empty());
  CHECK(monoid_solvable(odz2->v, 1, 1).outcome == Ternary::Yes);

  // the alternating group on five points is not solvable
  Transformation rot = {1, 2, 3, 4, 0};
  Transformation tri = {1, 2, 0, 3, 4};
  TransformationMonoid a5;
  REQUIRE(close_transformations(5, {rot, tri}, {"r", "t"}, 1 << 12, a5));
  CHECK(a5.size() == 60);
  PredicateResult sol = monoid_solvable(a5, 1, 1);
  CHECK(sol.outcome == Ternary::No);
}
