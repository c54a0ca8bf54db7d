// fab/fixtures.hpp — the bundled example algebras, their circuits, seed
// families and term-family builders. The two evaluation-table languages
// (duplex formulas and the triangle/cup language) are realized by finite
// evaluation algebras whose syntactic quotients are the exported algebras.

#ifndef FAB_FIXTURES_HPP
#define FAB_FIXTURES_HPP

#include "fab/algebra.hpp"
#include "fab/proofsearch.hpp"
#include "fab/term.hpp"

namespace fab {

struct Fixture {
  std::string name;
  Alphabet alphabet;
  Homomorphism hom;
  std::vector<int> accepting;
  // Role -> horizontal element name ("zero_hat", "one_hat", ...).
  std::map<std::string, std::string> named;

  const ForestAlgebra& alg() const { return hom.alg(); }
  int named_index(const std::string& role) const {
    return hom.alg().h.index_of(named.at(role));
  }
};

// AND/OR pairs: H = {0,1} x {0,1}; conjunction and disjunction act as
// doubled projections.
Fixture boolean_fixture();
ProofCircuit fig1_circuit();
SeedFamily boolean_seeds();

// Two interleaved copies of the Boolean evaluation with a mismatch bottom.
Fixture duplex_fixture();
ProofCircuit duplex_circuit();
SeedFamily duplex_seeds();

// Binary trees with all leaves at even depth.
Fixture even_depth_fixture();
// Complete binary multicontext of depth d; every leaf position is a port
// labeled "z".
Term m_family(int d);

// Two-table language over {a, b} with leaf values 0/1/2.
Fixture zigzag012_fixture();

// Triangle/cup evaluation language; |H| = 10.
Fixture potthoff_fixture();

struct PotthoffPair {
  ProofTuple low, high;  // exponents theta and theta+1
  int theta = 1, k = 1;
  std::string set_name;
  Term low_completed, high_completed;  // with target values as letter leaves
};

// Chain pairs with the parity port patterns; theta <= 9, k <= 3.
PotthoffPair p_family(int theta, int k);

// Syntactic algebra of "some node has exactly one b strictly below it".
Fixture ancestor_one_b_fixture();

const std::vector<std::string>& fixture_names();
Fixture fixture_by_name(const std::string& name);

struct FixtureCheck {
  bool ok = true;
  std::vector<std::string> lines;
};

// Golden checks of the documented properties of one bundled algebra
// ("all" runs every one).
FixtureCheck check_fixture(const std::string& name);

}  // namespace fab

#endif  // FAB_FIXTURES_HPP
