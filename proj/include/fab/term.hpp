// fab/term.hpp — forests, contexts and multicontexts.
//
// A Term is an ordered sequence of trees. Leaves may be ports (named
// insertion points carrying an input label) and at most one leaf may be
// the distinguished box port of a context. Terms are immutable values;
// every operation returns a fresh Term.

#ifndef FAB_TERM_HPP
#define FAB_TERM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fab {

struct TermError : std::runtime_error {
  explicit TermError(const std::string& what) : std::runtime_error(what) {}
};

using Letter = std::string;

// Declared alphabet. Always contains the neutral letter "e".
class Alphabet {
 public:
  Alphabet();
  explicit Alphabet(std::vector<Letter> letters);
  static Alphabet infer(const std::string& text);

  bool contains(const Letter& a) const { return set_.count(a) != 0; }
  const std::vector<Letter>& letters() const { return letters_; }
  // Longest declared letter that is a prefix of text[pos..]; empty if none.
  Letter longest_match(const std::string& text, size_t pos) const;

 private:
  std::vector<Letter> letters_;
  std::set<Letter> set_;
};

struct Node {
  enum class Kind : uint8_t { Interior, Port, Box };
  Kind kind = Kind::Interior;
  std::string label;                 // Interior: letter; Port: primary name
  std::vector<std::string> extras;   // Port: additional labels
  std::vector<Node> children;        // Interior only

  static Node interior(Letter a, std::vector<Node> ch = {});
  static Node leaf(Letter a) { return interior(std::move(a)); }
  static Node port(std::string name, std::vector<std::string> extras = {});
  static Node box();

  bool is_leaf() const { return kind == Kind::Interior && children.empty(); }
  // Input label of a port: first extra label if present, else its name.
  const std::string& input_label() const;
};

class Term {
 public:
  Term() = default;
  explicit Term(std::vector<Node> roots);
  static Term empty() { return Term(); }
  static Term tree(Node n);

  const std::vector<Node>& roots() const { return roots_; }
  bool is_empty() const { return roots_.empty(); }
  bool has_box() const;
  int size() const;  // number of nodes, ports and box included

  std::vector<std::string> port_names() const;                 // preorder
  std::map<std::string, std::string> port_input_labels() const;  // name -> label

  // Checks port-name uniqueness and the at-most-one-box invariant.
  void validate() const;

 private:
  std::vector<Node> roots_;
};

// Address of a node: root index plus child indices from that root.
struct NodeRef {
  int root = 0;
  std::vector<int> path;
};

Term parse_term(const std::string& text, const Alphabet& alphabet);
std::string format_term(const Term& t);
std::string format_node(const Node& n);

// Total structural order on nodes: (kind, label, extras, children).
bool node_less(const Node& a, const Node& b);
bool node_equal(const Node& a, const Node& b);

// Siblings sorted recursively; idempotent. Two terms are equal up to
// sibling permutation iff their canonical forms are equal.
Term canonical_form(const Term& t);
bool equal_canonical(const Term& a, const Term& b);

const Node& resolve(const Term& t, const NodeRef& r);
// All non-box nodes of t (ports included), in preorder.
std::vector<NodeRef> all_nodes(const Term& t);
// Refs of interior (non-port) nodes only.
std::vector<NodeRef> interior_nodes(const Term& t);
// Ref of the port with the given name.
NodeRef find_port(const Term& t, const std::string& name);

Term delta(const Term& t, const NodeRef& x);       // forest below x
Term delta_plus(const Term& t, const NodeRef& x);  // subtree rooted at x
Term nabla(const Term& t, const NodeRef& x);       // context of x within t

// Horizontal sum: concatenation of root sequences.
Term hsum(const Term& a, const Term& b);

// Replace the unique box port of s with a copy of t.
Term insert_context(const Term& s, const Term& t);

// Insert chooser(name) at every port of m whose name is in Z; each such
// port becomes an interior node labeled "e" whose children are the roots
// of the inserted term. Port names of inserted copies are freshened with
// a per-copy numeric suffix when needed to keep names unique.
Term insert_at_ports(const Term& m, const std::set<std::string>& Z,
                     const std::function<Term(const std::string&)>& chooser);

// Z-ports selected by input label.
std::set<std::string> ports_with_label(const Term& m, const std::string& label);

// M^(theta,Z): iterated insertion of all choices from M at the ports
// carrying z_label. theta = 1 returns M itself. Results are canonical and
// de-duplicated.
std::vector<Term> pump(const std::vector<Term>& M, const std::string& z_label,
                       int theta);
// Name-set variant; Z must be the full preimage of one input label.
std::vector<Term> pump(const std::vector<Term>& M,
                       const std::set<std::string>& Z, int theta);

// Leaf completion: each port becomes a one-node leaf labeled chi(name).
// The box port, if any, is untouched.
Term leaf_completion(const Term& m,
                     const std::map<std::string, std::string>& chi);

// Family of terms keyed by input label.
using TermFamily = std::map<std::string, Term>;

// Circuit in the plain sense: one component term per output key; every
// port's input label names an input key.
struct SimpleCircuit {
  std::map<std::string, Term> components;
};

// Wholesale insertion M . S with the e-relabeling rule at every port.
TermFamily circuit_insert(const SimpleCircuit& M, const TermFamily& S);
SimpleCircuit circuit_compose(const SimpleCircuit& M, const SimpleCircuit& N);

// All canonical forests over the given letters with at most max_nodes
// nodes, smallest first. Empty forest included.
std::vector<Term> enumerate_forests(const std::vector<Letter>& letters,
                                    int max_nodes);
// Same, but each term carries exactly one box port (contexts).
std::vector<Term> enumerate_contexts(const std::vector<Letter>& letters,
                                     int max_nodes);

}  // namespace fab

#endif  // FAB_TERM_HPP
