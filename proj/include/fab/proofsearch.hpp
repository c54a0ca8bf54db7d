// fab/proofsearch.hpp — circuits of tuples, port counters, the star
// relations between tuples, recursive witness construction and
// verification, circuit search, and the pumped-subcircuit builder.

#ifndef FAB_PROOFSEARCH_HPP
#define FAB_PROOFSEARCH_HPP

#include <map>
#include <string>
#include <vector>

#include "fab/algebra.hpp"
#include "fab/congruence.hpp"
#include "fab/derived.hpp"
#include "fab/term.hpp"

namespace fab {

// Output/input key of a circuit component: a class set name plus a target
// element name.
struct CircuitKey {
  std::string set_name;  // e.g. "00,11"
  std::string target;    // H element name
  auto operator<=>(const CircuitKey&) const = default;
};

// A multicontext with two port labelings: every port's input label names
// the class set, psi assigns the target element (by name).
struct ProofTuple {
  Term m;
  std::map<std::string, std::string> psi;  // port name -> element name

  CircuitKey input_key(const std::string& port) const;
};

struct ProofCircuit {
  std::map<CircuitKey, ProofTuple> tuples;
};

struct SeedFamily {
  std::map<CircuitKey, Term> seeds;
};

struct WitnessSet {
  int level = 0;
  TauPi c;
  std::map<CircuitKey, Term> entries;
};

// Sparse counter keyed by (context class, input, target).
struct CounterKey {
  std::string context_class;
  std::string input;
  std::string target;
  auto operator<=>(const CounterKey&) const = default;
};
using CounterVec = std::map<CounterKey, long long>;

bool counters_equiv(const CounterVec& a, const CounterVec& b, TauPi c);

// Exact mode: the context class of a port is the canonical form of its
// context with the other ports erased to e leaves.
CounterVec counters_exact(const ProofTuple& t);

// Exact-mode star: same multicontext up to sibling permutation (ports
// compared by input label) and equivalent counters.
bool star_exact(const ProofTuple& a, const ProofTuple& b, TauPi c);

// Tuple in signature mode: ports carry level-n class tags.
struct SigTuple {
  Term m;
  int level = 0;                        // n
  std::map<std::string, SigId> mu;      // port name -> level-n class
  std::map<std::string, std::string> psi;
};

// Derives mu from concrete inserted forests (witness-backed tags).
SigTuple make_sig_tuple(const ProofTuple& t,
                        const std::map<std::string, Term>& inserted, int level,
                        SignatureContext& ctx);
// Uniform explicit tag on every port.
SigTuple make_sig_tuple_uniform(const ProofTuple& t, SigId tag, int level);

// Completion of m through the class tags, as a forest over the alphabet
// extended with one opaque letter per class.
Term mu_completion(const SigTuple& t);

CounterVec counters_signature(const SigTuple& t, SignatureContext& ctx);

// Signature-mode star: level-(n+1) equivalence of the completions plus
// equivalent counters.
bool star_signature(const SigTuple& a, const SigTuple& b, TauPi c,
                    SignatureContext& ctx);

struct VerifyResult {
  bool ok = true;
  std::string violation;
};

// S^(n) = M^n . S0, componentwise insertion with the e-relabeling rule.
WitnessSet build_witnesses(const ProofCircuit& M, const SeedFamily& s0, int n,
                           TauPi c);

// Pairwise level-n equivalence within every class set, plus diagonality of
// the images.
VerifyResult verify_witnesses(const WitnessSet& S, const Homomorphism& phi,
                              int n, TauPi c);

// Checks the recursive-construction condition for the circuit at level n:
// witness-backed consistency of every tuple, derived class tags, equal
// completions and balanced counters within every class set, cross-checked
// against verify_witnesses on the built witnesses up to level n+1.
VerifyResult rc_verify(const ProofCircuit& M, const SeedFamily& s0,
                       const Homomorphism& phi, int n, TauPi c);

struct SearchCopyResult {
  Ternary outcome = Ternary::Exhausted;
  ProofCircuit circuit;
  long long skeletons_examined = 0;
  long long assignments_examined = 0;
};

// Searches for a one-multicontext-per-set circuit over J: enumerates
// canonical multicontexts (every leaf a port, interior labels from the
// non-neutral letters) by (interior count, port count, canonical form),
// then target assignments; returns the first circuit whose tuples are
// diagonal and pairwise related by exact-mode star.
SearchCopyResult search_copy(const Homomorphism& phi,
                             const std::vector<int>& J, TauPi c,
                             int node_budget, int width_budget);

// A stack of tuple copies produced by consistent pumping.
struct StackTuple {
  Term term;
  int levels = 0;  // number of copies along the pumped direction
  std::map<std::string, int> depth;              // port -> copy depth (1-based)
  std::map<std::string, std::string> local_ctx;  // port -> in-copy context key
  std::map<std::string, std::string> psi;        // port -> element name
  std::map<std::string, std::string> nu;         // port -> input label
  PumpedTerm symbolic;
};

// Pumped-mode counters: the context class of a port is its capped copy
// depth and height together with its in-copy context.
CounterVec counters_pumped(const StackTuple& t, TauPi cap_params);

bool star_pumped(const StackTuple& a, const StackTuple& b, TauPi cap_params,
                 TauPi c);

struct PumpedSubcircuit {
  std::map<std::string, StackTuple> tuples;  // keyed by target element name
  int omega = 1;
  int eta = 1;
  CounterMatrix base_matrix;
};

// Three-step construction of a pumped subcircuit from a diagonal tuple
// family with pumping ports: pump chi levels, insert one copy of the
// matching tuple, then insert eta-level stacks, with eta the least
// multiple of the counting matrix's idempotent power at least tau + chi.
// Defined for period 1 only.
PumpedSubcircuit build_pumped_subcircuit(
    const Homomorphism& phi, const std::map<std::string, ProofTuple>& T,
    const std::string& z_label, int chi, TauPi c);

}  // namespace fab

#endif  // FAB_PROOFSEARCH_HPP
