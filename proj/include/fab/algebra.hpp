// fab/algebra.hpp — finite monoids, transformation monoids, forest algebras,
// homomorphisms and structural predicates.

#ifndef FAB_ALGEBRA_HPP
#define FAB_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fab/term.hpp"

namespace fab {

struct AlgebraError : std::runtime_error {
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

// Horizontal monoid, written additively. Not assumed commutative.
struct FiniteMonoid {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;  // table[a][b] = a + b
  int identity = 0;

  int size() const { return static_cast<int>(names.size()); }
  int op(int a, int b) const { return table[a][b]; }
  int index_of(const std::string& name) const;
  // Empty if the table is a monoid; otherwise a description of the first
  // violated law, naming the offending elements.
  std::optional<std::string> check() const;
};

// Total map of {0..domain-1}; f[i] is the image of i.
using Transformation = std::vector<int>;

Transformation identity_transformation(int domain);
// (f o g)(x) = f(g(x))
Transformation compose(const Transformation& f, const Transformation& g);

// A set of transformations closed under composition, with the identity.
struct TransformationMonoid {
  int domain = 0;
  std::vector<Transformation> elems;
  std::vector<std::string> names;  // parallel to elems; may be empty strings
  std::unordered_map<std::string, int> index;  // packed key -> element id

  static std::string key(const Transformation& f);
  int size() const { return static_cast<int>(elems.size()); }
  int find(const Transformation& f) const;  // -1 if absent
  int identity_id() const;
  int compose_ids(int f, int g) const;
  std::optional<std::string> check_closed() const;
};

// BFS closure of the generators under composition. Returns false (and a
// partial monoid) when the closure exceeds max_size.
bool close_transformations(int domain,
                           const std::vector<Transformation>& generators,
                           const std::vector<std::string>& gen_names,
                           size_t max_size, TransformationMonoid& out);

struct ForestAlgebra {
  FiniteMonoid h;
  TransformationMonoid v;

  int translation_id(int u, int w) const;  // id of x -> u + x + w, -1 if absent
};

using ForestAlgebraPtr = std::shared_ptr<const ForestAlgebra>;

// Builds (H, V) where V is the closure of the translations of H together
// with the given extra generators.
ForestAlgebraPtr make_forest_algebra(FiniteMonoid h,
                                     const std::vector<Transformation>& extra,
                                     const std::vector<std::string>& extra_names,
                                     size_t max_v = 1u << 20);

// ok: nullopt. Otherwise a report naming the first violation.
std::optional<std::string> validate_algebra(const ForestAlgebra& a);

struct Homomorphism {
  ForestAlgebraPtr algebra;
  std::map<Letter, int> letter_action;        // letter -> V element id
  std::map<std::string, int> leaf_extension;  // opaque leaf label -> H element

  const ForestAlgebra& alg() const { return *algebra; }
  int action(const Letter& a) const;
  std::optional<std::string> check() const;  // e must act as the identity
};

// Image of a closed term: an H element for forests, a V element for
// contexts with one box port.
struct HomValue {
  bool vertical = false;
  int h = -1;        // horizontal value when !vertical
  int v = -1;        // V element id when vertical
  bool operator==(const HomValue&) const = default;
};

HomValue hom_eval(const Homomorphism& phi, const Term& t);
// Horizontal image; throws if t is a context.
int hom_eval_h(const Homomorphism& phi, const Term& t);

// Threshold/period counting monoid: {0..tau+pi-1} with capped addition.
FiniteMonoid counter_monoid(int tau, int pi);
// Canonical value of p under the (tau, pi) cap.
int cap_count(long long p, int tau, int pi);

// One-dimensional algebra over M: vertical monoid = all translations.
ForestAlgebraPtr od_algebra(const FiniteMonoid& m);

struct QuotientResult {
  ForestAlgebraPtr algebra;
  std::vector<int> h_class;  // source H index -> quotient H index
  Homomorphism hom;          // letters of the source hom, into the quotient
  std::vector<int> accepting;  // image of F in the quotient
};

// Coarsest forest-algebra congruence saturating F, by partition refinement
// against + and the V action.
QuotientResult syntactic_quotient(const Homomorphism& phi,
                                  const std::vector<int>& F);

enum class Ternary { Yes, No, Exhausted };

struct DividesResult {
  Ternary outcome = Ternary::Exhausted;
  std::string witness;  // subalgebra carrier and morphism when yes
};

// Does g divide h (g is a homomorphic image of a subalgebra of h)?
DividesResult divides(const ForestAlgebra& g, const ForestAlgebra& h,
                      long long budget = 2'000'000);

// Strongly connected components of H under h -> w h, as a partition.
std::vector<std::vector<int>> scc(const ForestAlgebra& a);
// W^{-1}K: all elements from which K is accessible.
std::vector<int> accessible(const ForestAlgebra& a, const std::vector<int>& K);
// Complement of W^{-1}K; closed under the action of V.
std::vector<int> ideal_complement(const ForestAlgebra& a,
                                  const std::vector<int>& K);

struct ThresholdPeriod {
  int threshold = 1;
  int period = 1;
};

ThresholdPeriod elem_threshold_period(const FiniteMonoid& m, int x);
ThresholdPeriod elem_threshold_period(const Transformation& f);

struct PredicateResult {
  Ternary outcome = Ternary::Exhausted;
  std::string witness;
};

PredicateResult monoid_aperiodic(const TransformationMonoid& m);
PredicateResult monoid_aperiodic(const FiniteMonoid& m);
// Every maximal subgroup has a solvable derived series.
PredicateResult monoid_solvable(const TransformationMonoid& m, int tau, int pi);

}  // namespace fab

#endif  // FAB_ALGEBRA_HPP
