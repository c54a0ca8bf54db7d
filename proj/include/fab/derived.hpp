// fab/derived.hpp — algebras derived from a homomorphism: mapping tables
// over port valuations, the multivertical monoid, and the extended algebra
// acting on nonempty subsets of the horizontal carrier.

#ifndef FAB_DERIVED_HPP
#define FAB_DERIVED_HPP

#include <cstdint>
#include <memory>

#include "fab/algebra.hpp"
#include "fab/congruence.hpp"
#include "fab/term.hpp"

namespace fab {

// Total function K^N -> K (forest mode) or K^N -> V (context mode), with
// N the number of input labels. Entries are indexed by mixed-radix
// valuation over the ordered label list.
struct MappingTable {
  std::vector<std::string> labels;  // ordered input labels (size N)
  int carrier = 0;                  // |K|
  bool vertical = false;
  std::vector<int> entries;         // |K|^N values (H indices or V ids)

  bool operator==(const MappingTable&) const = default;
};

// Evaluates m over every valuation of its input labels. Ports of m must
// carry labels from `labels`; the box port, when present, switches the
// table to context mode.
MappingTable mapping_table(const Homomorphism& phi, const Term& m,
                           const std::vector<std::string>& labels,
                           long long budget = 1 << 20);

// Nodes indistinguishable by the algebra of mappings: same label, same
// table of the forest below, same table of the context above.
bool node_equiv(const Homomorphism& phi, const Term& m, const NodeRef& x,
                const Term& m2, const NodeRef& x2,
                const std::vector<std::string>& labels);

struct MultiverticalResult {
  Ternary outcome = Ternary::Exhausted;
  TransformationMonoid monoid;
};

// Transformation monoid generated by the vertical monoid together with the
// n-fold horizontal repetition maps h -> n (*) h.
MultiverticalResult multivertical(const Homomorphism& phi,
                                  size_t max_size = 1 << 18);

// Least (sigma, rho) with f^(sigma+rho) = f^sigma for every element of the
// multivertical monoid.
ThresholdPeriod multivertical_threshold_period(const Homomorphism& phi,
                                               size_t max_size = 1 << 18);

// Nonempty subsets of H as bit masks; requires |H| <= 63.
using HSubset = uint64_t;

HSubset subset_of(const std::vector<int>& elems);
std::vector<int> subset_elems(HSubset s);

// Exact image set of m when every port ranges over its subset and the box
// port, if present, ranges over box_value.
HSubset gpercent_image(const Homomorphism& phi, const Term& m,
                       const std::map<std::string, HSubset>& port_subsets,
                       HSubset box_value = 0);

// Action of a one-box context on the lattice of nonempty subsets. Tables
// are dense up to |H| <= 12 and memoized on demand beyond that.
class ExtendedElement {
 public:
  ExtendedElement(const Homomorphism& phi, Term w,
                  std::map<std::string, HSubset> port_subsets);

  HSubset apply(HSubset f) const;
  int carrier_size() const { return hsize_; }
  bool dense() const { return dense_; }
  // Equality of the full dense tables; requires dense mode.
  bool same_as(const ExtendedElement& other) const;
  // Threshold and period of the element under composition. In lazy mode
  // the orbit is computed on the sub-lattice reachable from the seeds.
  ThresholdPeriod threshold_period(const std::vector<HSubset>& seeds) const;

 private:
  const Homomorphism* phi_;
  Term w_;
  std::map<std::string, HSubset> subsets_;
  int hsize_;
  bool dense_;
  std::vector<HSubset> table_;                    // dense
  mutable std::map<HSubset, HSubset> memo_;       // lazy
};

// A symbolic pumped family: base set M raised to an exponent along the
// ports carrying z_label, with optional nested substitutions per label.
struct PumpedTerm {
  std::vector<Term> base;  // canonical, deduplicated
  std::string z_label;
  int exponent = 1;
  std::map<std::string, std::shared_ptr<PumpedTerm>> nested;

  static PumpedTerm make(std::vector<Term> base, std::string z_label,
                         int exponent);
};

// Equality after capping every exponent with the (sigma, rho) congruence,
// recursively; bases compared up to sibling permutation. Sound on the
// symbolically constructed fragment only.
bool pump_equiv(const PumpedTerm& p, const PumpedTerm& q, TauPi sr);

struct PumpFalsifyResult {
  bool found = false;
  Term s, t;
  int image_s = -1, image_t = -1;
  long long pairs_tested = 0;
};

// Bounded falsification that the pumping equivalence at (sigma, rho)
// refines the congruence of phi: expands pumped pairs with equivalent
// exponents, completes their ports with letter leaves, and compares
// images. Both members of a pair must fit in size_budget nodes.
PumpFalsifyResult pump_refinement_falsify(const Homomorphism& phi,
                                          const std::vector<Term>& base,
                                          const std::string& z_label,
                                          TauPi sr, int size_budget,
                                          const std::vector<Letter>& leaf_letters);

}  // namespace fab

#endif  // FAB_DERIVED_HPP
