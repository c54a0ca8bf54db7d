#include "fab/term.hpp"

#include <algorithm>
#include <sstream>

namespace fab {

namespace {

// Code points allowed in letters and port names, as UTF-8 byte sequences.
const std::vector<std::string>& name_symbols() {
  static const std::vector<std::string> syms = {
      "∧",  // ∧
      "∨",  // ∨
      "⋓",  // ⋓
      "∆",  // ∆
      "•",  // •
      "⊥",  // ⊥
  };
  return syms;
}

bool is_ascii_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9');
}

// Length of the name symbol starting at text[pos], 0 if none.
size_t name_char_len(const std::string& text, size_t pos) {
  if (pos >= text.size()) return 0;
  if (is_ascii_name_char(text[pos])) return 1;
  for (const auto& s : name_symbols()) {
    if (text.compare(pos, s.size(), s) == 0) return s.size();
  }
  return 0;
}

std::string scan_name(const std::string& text, size_t& pos) {
  size_t start = pos;
  while (true) {
    size_t len = name_char_len(text, pos);
    if (len == 0) break;
    pos += len;
  }
  return text.substr(start, pos - start);
}

bool valid_name(const std::string& s) {
  size_t pos = 0;
  while (pos < s.size()) {
    size_t len = name_char_len(s, pos);
    if (len == 0) return false;
    pos += len;
  }
  return !s.empty();
}

}  // namespace

Alphabet::Alphabet() : Alphabet(std::vector<Letter>{}) {}

Alphabet::Alphabet(std::vector<Letter> letters) {
  letters_ = std::move(letters);
  if (std::find(letters_.begin(), letters_.end(), "e") == letters_.end()) {
    letters_.push_back("e");
  }
  for (const auto& a : letters_) {
    if (!valid_name(a)) throw TermError("invalid letter '" + a + "'");
    set_.insert(a);
  }
}

Alphabet Alphabet::infer(const std::string& text) {
  // Collect maximal name runs outside port/box positions, split into
  // single code points (multi-letter juxtaposition is resolved one code
  // point at a time when no alphabet is declared).
  std::set<Letter> seen;
  size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == '?') {  // skip port name and extras
      ++pos;
      scan_name(text, pos);
      while (pos < text.size() && text[pos] == ':') {
        ++pos;
        scan_name(text, pos);
      }
      continue;
    }
    size_t len = name_char_len(text, pos);
    if (len == 0) {
      ++pos;
      continue;
    }
    seen.insert(text.substr(pos, len));
    pos += len;
  }
  seen.erase("0");  // empty-forest literal unless declared explicitly
  return Alphabet(std::vector<Letter>(seen.begin(), seen.end()));
}

Letter Alphabet::longest_match(const std::string& text, size_t pos) const {
  Letter best;
  for (const auto& a : letters_) {
    if (a.size() > best.size() && text.compare(pos, a.size(), a) == 0) {
      best = a;
    }
  }
  return best;
}

Node Node::interior(Letter a, std::vector<Node> ch) {
  Node n;
  n.kind = Kind::Interior;
  n.label = std::move(a);
  n.children = std::move(ch);
  return n;
}

Node Node::port(std::string name, std::vector<std::string> extras) {
  Node n;
  n.kind = Kind::Port;
  n.label = std::move(name);
  n.extras = std::move(extras);
  return n;
}

Node Node::box() {
  Node n;
  n.kind = Kind::Box;
  return n;
}

const std::string& Node::input_label() const {
  if (kind != Kind::Port) throw TermError("input_label on a non-port node");
  return extras.empty() ? label : extras.front();
}

Term::Term(std::vector<Node> roots) : roots_(std::move(roots)) { validate(); }

Term Term::tree(Node n) { return Term(std::vector<Node>{std::move(n)}); }

namespace {

void walk(const Node& n, const std::function<void(const Node&)>& f) {
  f(n);
  for (const auto& c : n.children) walk(c, f);
}

}  // namespace

bool Term::has_box() const {
  bool found = false;
  for (const auto& r : roots_) {
    walk(r, [&](const Node& n) { found |= (n.kind == Node::Kind::Box); });
  }
  return found;
}

int Term::size() const {
  int count = 0;
  for (const auto& r : roots_) {
    walk(r, [&](const Node&) { ++count; });
  }
  return count;
}

std::vector<std::string> Term::port_names() const {
  std::vector<std::string> names;
  for (const auto& r : roots_) {
    walk(r, [&](const Node& n) {
      if (n.kind == Node::Kind::Port) names.push_back(n.label);
    });
  }
  return names;
}

std::map<std::string, std::string> Term::port_input_labels() const {
  std::map<std::string, std::string> out;
  for (const auto& r : roots_) {
    walk(r, [&](const Node& n) {
      if (n.kind == Node::Kind::Port) out[n.label] = n.input_label();
    });
  }
  return out;
}

void Term::validate() const {
  std::set<std::string> names;
  int boxes = 0;
  for (const auto& r : roots_) {
    walk(r, [&](const Node& n) {
      if (n.kind == Node::Kind::Port) {
        if (!names.insert(n.label).second) {
          throw TermError("duplicate port name '" + n.label + "'");
        }
        if (!n.children.empty()) throw TermError("port with children");
      } else if (n.kind == Node::Kind::Box) {
        ++boxes;
        if (!n.children.empty()) throw TermError("box with children");
      }
    });
  }
  if (boxes > 1) throw TermError("more than one box port");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  Term parse() {
    skip_ws();
    std::vector<Node> roots = parse_forest();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    Term t{std::move(roots)};
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "parse error at position " << pos_ << ": " << msg;
    throw TermError(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::vector<Node> parse_forest() {
    skip_ws();
    // "0" denotes the empty forest unless 0 is a declared letter.
    if (peek() == '0' && !alphabet_.contains("0")) {
      size_t save = pos_;
      std::string run = scan_name(text_, pos_);
      if (run == "0") return {};
      pos_ = save;
    }
    std::vector<Node> trees;
    trees.push_back(parse_tree());
    skip_ws();
    while (peek() == '+') {
      ++pos_;
      skip_ws();
      trees.push_back(parse_tree());
      skip_ws();
    }
    return trees;
  }

  Node parse_tree() {
    char c = peek();
    if (c == '?') {
      ++pos_;
      std::string name = scan_name(text_, pos_);
      if (name.empty()) fail("expected port name after '?'");
      std::vector<std::string> extras;
      while (peek() == ':') {
        ++pos_;
        std::string x = scan_name(text_, pos_);
        if (x.empty()) fail("expected label after ':'");
        extras.push_back(x);
      }
      return Node::port(name, extras);
    }
    if (c == '_') {
      ++pos_;
      return Node::box();
    }
    Letter a = alphabet_.longest_match(text_, pos_);
    if (a.empty()) {
      size_t save = pos_;
      std::string run = scan_name(text_, pos_);
      pos_ = save;
      if (run.empty()) fail("expected a tree");
      fail("unknown letter '" + run + "'");
    }
    pos_ += a.size();
    // Parenthesized children, direct juxtaposition, or a leaf.
    char n = peek();
    if (n == '(') {
      ++pos_;
      std::vector<Node> children = parse_forest();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return Node::interior(a, std::move(children));
    }
    if (n == '?' || n == '_' || name_char_len(text_, pos_) != 0) {
      std::vector<Node> child;
      child.push_back(parse_tree());
      return Node::interior(a, std::move(child));
    }
    return Node::leaf(a);
  }

  const std::string& text_;
  const Alphabet& alphabet_;
  size_t pos_ = 0;
};

}  // namespace

Term parse_term(const std::string& text, const Alphabet& alphabet) {
  return Parser(text, alphabet).parse();
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_node(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Box:
      return "_";
    case Node::Kind::Port: {
      std::string s = "?" + n.label;
      for (const auto& x : n.extras) s += ":" + x;
      return s;
    }
    case Node::Kind::Interior: {
      if (n.children.empty()) return n.label;
      std::string s = n.label + "(";
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += "+";
        s += format_node(n.children[i]);
      }
      s += ")";
      return s;
    }
  }
  return "";
}

std::string format_term(const Term& t) {
  if (t.is_empty()) return "0";
  std::string s;
  for (size_t i = 0; i < t.roots().size(); ++i) {
    if (i) s += "+";
    s += format_node(t.roots()[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Canonical form

bool node_less(const Node& a, const Node& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.label != b.label) return a.label < b.label;
  if (a.extras != b.extras) return a.extras < b.extras;
  size_t n = std::min(a.children.size(), b.children.size());
  for (size_t i = 0; i < n; ++i) {
    if (node_less(a.children[i], b.children[i])) return true;
    if (node_less(b.children[i], a.children[i])) return false;
  }
  return a.children.size() < b.children.size();
}

bool node_equal(const Node& a, const Node& b) {
  return !node_less(a, b) && !node_less(b, a);
}

namespace {

Node canonical_node(const Node& n) {
  Node out = n;
  for (auto& c : out.children) c = canonical_node(c);
  std::stable_sort(out.children.begin(), out.children.end(), node_less);
  return out;
}

}  // namespace

Term canonical_form(const Term& t) {
  std::vector<Node> roots;
  roots.reserve(t.roots().size());
  for (const auto& r : t.roots()) roots.push_back(canonical_node(r));
  std::stable_sort(roots.begin(), roots.end(), node_less);
  return Term(std::move(roots));
}

bool equal_canonical(const Term& a, const Term& b) {
  return format_term(canonical_form(a)) == format_term(canonical_form(b));
}

// ---------------------------------------------------------------------------
// Node addressing

const Node& resolve(const Term& t, const NodeRef& r) {
  if (r.root < 0 || r.root >= static_cast<int>(t.roots().size())) {
    throw TermError("node reference outside term");
  }
  const Node* n = &t.roots()[r.root];
  for (int i : r.path) {
    if (i < 0 || i >= static_cast<int>(n->children.size())) {
      throw TermError("node reference outside term");
    }
    n = &n->children[i];
  }
  return *n;
}

namespace {

void collect_refs(const Node& n, NodeRef at, bool interior_only,
                  std::vector<NodeRef>& out) {
  if (n.kind == Node::Kind::Box) return;
  if (!interior_only || n.kind == Node::Kind::Interior) out.push_back(at);
  for (size_t i = 0; i < n.children.size(); ++i) {
    NodeRef c = at;
    c.path.push_back(static_cast<int>(i));
    collect_refs(n.children[i], c, interior_only, out);
  }
}

}  // namespace

std::vector<NodeRef> all_nodes(const Term& t) {
  std::vector<NodeRef> out;
  for (size_t i = 0; i < t.roots().size(); ++i) {
    collect_refs(t.roots()[i], NodeRef{static_cast<int>(i), {}}, false, out);
  }
  return out;
}

std::vector<NodeRef> interior_nodes(const Term& t) {
  std::vector<NodeRef> out;
  for (size_t i = 0; i < t.roots().size(); ++i) {
    collect_refs(t.roots()[i], NodeRef{static_cast<int>(i), {}}, true, out);
  }
  return out;
}

NodeRef find_port(const Term& t, const std::string& name) {
  for (const auto& r : all_nodes(t)) {
    const Node& n = resolve(t, r);
    if (n.kind == Node::Kind::Port && n.label == name) return r;
  }
  throw TermError("no port named '" + name + "'");
}

// ---------------------------------------------------------------------------
// Structural operations

Term delta(const Term& t, const NodeRef& x) {
  return Term(resolve(t, x).children);
}

Term delta_plus(const Term& t, const NodeRef& x) {
  return Term({resolve(t, x)});
}

namespace {

// Copy n, replacing the node at path[depth..] with a box.
Node replace_with_box(const Node& n, const std::vector<int>& path,
                      size_t depth, bool& done) {
  Node out = n;
  if (depth == path.size()) {
    done = true;
    return Node::box();
  }
  int i = path[depth];
  out.children[i] = replace_with_box(n.children[i], path, depth + 1, done);
  return out;
}

}  // namespace

Term nabla(const Term& t, const NodeRef& x) {
  if (t.has_box()) throw TermError("nabla on a term that already has a box");
  resolve(t, x);  // bounds check
  std::vector<Node> roots = t.roots();
  bool done = false;
  if (x.path.empty()) {
    roots[x.root] = Node::box();
  } else {
    roots[x.root] = replace_with_box(t.roots()[x.root], x.path, 0, done);
  }
  return Term(std::move(roots));
}

Term hsum(const Term& a, const Term& b) {
  std::vector<Node> roots = a.roots();
  roots.insert(roots.end(), b.roots().begin(), b.roots().end());
  return Term(std::move(roots));
}

namespace {

// Replaces the box by the roots of t (spliced in place).
bool splice_box(std::vector<Node>& seq, const Term& t) {
  for (size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].kind == Node::Kind::Box) {
      std::vector<Node> out(seq.begin(), seq.begin() + i);
      out.insert(out.end(), t.roots().begin(), t.roots().end());
      out.insert(out.end(), seq.begin() + i + 1, seq.end());
      seq = std::move(out);
      return true;
    }
    if (splice_box(seq[i].children, t)) return true;
  }
  return false;
}

}  // namespace

Term insert_context(const Term& s, const Term& t) {
  if (!s.has_box()) throw TermError("insert_context: no box port");
  std::vector<Node> roots = s.roots();
  splice_box(roots, t);
  return Term(std::move(roots));
}

namespace {

void rename_ports(Node& n, const std::map<std::string, std::string>& ren) {
  if (n.kind == Node::Kind::Port) {
    auto it = ren.find(n.label);
    if (it != ren.end()) n.label = it->second;
  }
  for (auto& c : n.children) rename_ports(c, ren);
}

Node substitute_ports(const Node& n, const std::set<std::string>& Z,
                      const std::map<std::string, Term>& repl) {
  if (n.kind == Node::Kind::Port && Z.count(n.label)) {
    return Node::interior("e", repl.at(n.label).roots());
  }
  Node out = n;
  for (auto& c : out.children) c = substitute_ports(c, Z, repl);
  return out;
}

}  // namespace

Term insert_at_ports(const Term& m, const std::set<std::string>& Z,
                     const std::function<Term(const std::string&)>& chooser) {
  std::vector<std::string> mports = m.port_names();
  std::vector<std::string> hit;
  for (const auto& p : mports) {
    if (Z.count(p)) hit.push_back(p);
  }
  if (hit.empty()) throw TermError("insert_at_ports: empty intersection");

  std::set<std::string> used;  // names surviving from the base term
  for (const auto& p : mports) {
    if (!Z.count(p)) used.insert(p);
  }

  // Prepare one freshened copy per target port.
  std::map<std::string, Term> repl;
  bool need_suffix = hit.size() > 1;
  if (!need_suffix) {
    Term ins = chooser(hit[0]);
    for (const auto& q : ins.port_names()) {
      if (used.count(q)) {
        need_suffix = true;
        break;
      }
    }
    if (!need_suffix) {
      for (const auto& q : ins.port_names()) used.insert(q);
      repl[hit[0]] = std::move(ins);
    }
  }
  if (need_suffix) {
    int copy = 0;
    for (const auto& p : hit) {
      ++copy;
      Term ins = chooser(p);
      std::map<std::string, std::string> ren;
      for (const auto& q : ins.port_names()) {
        int k = copy;
        std::string candidate = q + std::to_string(k);
        while (used.count(candidate)) {
          k += static_cast<int>(hit.size());
          candidate = q + std::to_string(k);
        }
        ren[q] = candidate;
        used.insert(candidate);
      }
      std::vector<Node> roots = ins.roots();
      for (auto& r : roots) rename_ports(r, ren);
      repl[p] = Term(std::move(roots));
    }
  }

  std::vector<Node> roots;
  roots.reserve(m.roots().size());
  for (const auto& r : m.roots()) {
    roots.push_back(substitute_ports(r, std::set<std::string>(hit.begin(), hit.end()), repl));
  }
  return Term(std::move(roots));
}

std::set<std::string> ports_with_label(const Term& m, const std::string& label) {
  std::set<std::string> out;
  for (const auto& [name, lab] : m.port_input_labels()) {
    if (lab == label) out.insert(name);
  }
  return out;
}

namespace {

std::vector<Term> dedupe_canonical(std::vector<Term> in) {
  std::map<std::string, Term> seen;
  for (auto& t : in) {
    Term c = canonical_form(t);
    seen.emplace(format_term(c), std::move(c));
  }
  std::vector<Term> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(std::move(v));
  return out;
}

}  // namespace

std::vector<Term> pump(const std::vector<Term>& M, const std::string& z_label,
                       int theta) {
  if (theta < 1) throw TermError("pump: theta must be >= 1");
  std::vector<Term> current = dedupe_canonical(M);
  for (int step = 1; step < theta; ++step) {
    std::vector<Term> next;
    for (const auto& m1 : current) {
      std::set<std::string> Z = ports_with_label(m1, z_label);
      if (Z.empty()) throw TermError("pump: a term has no port labeled " + z_label);
      // All assignments Z -> M.
      std::vector<std::string> zs(Z.begin(), Z.end());
      std::vector<size_t> pick(zs.size(), 0);
      while (true) {
        std::map<std::string, const Term*> assign;
        for (size_t i = 0; i < zs.size(); ++i) assign[zs[i]] = &M[pick[i]];
        next.push_back(insert_at_ports(
            m1, Z, [&](const std::string& p) { return *assign.at(p); }));
        size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < M.size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
    }
    current = dedupe_canonical(std::move(next));
  }
  return current;
}

std::vector<Term> pump(const std::vector<Term>& M,
                       const std::set<std::string>& Z, int theta) {
  if (M.empty()) throw TermError("pump: empty base set");
  // Z must be the full preimage of one input label.
  std::string label;
  for (const auto& m : M) {
    for (const auto& [name, lab] : m.port_input_labels()) {
      if (Z.count(name)) {
        if (label.empty()) label = lab;
        if (lab != label) throw TermError("pump: Z spans several input labels");
      }
    }
  }
  if (label.empty()) throw TermError("pump: Z matches no port");
  for (const auto& m : M) {
    for (const auto& [name, lab] : m.port_input_labels()) {
      if (lab == label && !Z.count(name)) {
        throw TermError("pump: Z is not the full preimage of label " + label);
      }
    }
  }
  return pump(M, label, theta);
}

Term leaf_completion(const Term& m,
                     const std::map<std::string, std::string>& chi) {
  std::function<Node(const Node&)> go = [&](const Node& n) -> Node {
    if (n.kind == Node::Kind::Port) {
      auto it = chi.find(n.label);
      if (it == chi.end()) {
        throw TermError("leaf_completion: missing assignment for port '" +
                        n.label + "'");
      }
      return Node::leaf(it->second);
    }
    Node out = n;
    for (auto& c : out.children) c = go(c);
    return out;
  };
  std::vector<Node> roots;
  for (const auto& r : m.roots()) roots.push_back(go(r));
  return Term(std::move(roots));
}

TermFamily circuit_insert(const SimpleCircuit& M, const TermFamily& S) {
  TermFamily out;
  for (const auto& [key, comp] : M.components) {
    std::set<std::string> allports;
    for (const auto& p : comp.port_names()) allports.insert(p);
    if (allports.empty()) {
      out[key] = comp;
      continue;
    }
    auto labels = comp.port_input_labels();
    for (const auto& [name, lab] : labels) {
      if (!S.count(lab)) {
        throw TermError("circuit_insert: no entry for input key '" + lab + "'");
      }
    }
    out[key] = insert_at_ports(comp, allports, [&](const std::string& p) {
      return S.at(labels.at(p));
    });
  }
  return out;
}

SimpleCircuit circuit_compose(const SimpleCircuit& M, const SimpleCircuit& N) {
  SimpleCircuit out;
  for (const auto& [key, comp] : M.components) {
    std::set<std::string> allports;
    for (const auto& p : comp.port_names()) allports.insert(p);
    if (allports.empty()) {
      out.components[key] = comp;
      continue;
    }
    auto labels = comp.port_input_labels();
    for (const auto& [name, lab] : labels) {
      if (!N.components.count(lab)) {
        throw TermError("circuit_compose: no component for input key '" + lab +
                        "'");
      }
    }
    out.components[key] = insert_at_ports(comp, allports, [&](const std::string& p) {
      return N.components.at(labels.at(p));
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Enumerator {
  std::vector<Letter> letters;
  // trees[k]: canonical trees with k nodes; forests[k]: canonical forests.
  std::vector<std::vector<Node>> trees;
  std::vector<std::vector<std::vector<Node>>> forests;

  explicit Enumerator(std::vector<Letter> ls, int max_nodes)
      : letters(std::move(ls)) {
    trees.resize(max_nodes + 1);
    forests.resize(max_nodes + 1);
    forests[0].push_back({});
    for (int n = 1; n <= max_nodes; ++n) {
      for (const auto& a : letters) {
        for (const auto& f : forests[n - 1]) {
          trees[n].push_back(Node::interior(a, f));
        }
      }
      std::sort(trees[n].begin(), trees[n].end(), node_less);
      // forests of size n: non-decreasing sequences of trees.
      build_forests(n);
    }
  }

  // Global order on trees: by size then node_less.
  bool tree_le(const Node& a, const Node& b) const {
    return !node_less(b, a);
  }

  void build_forests(int n) {
    // first tree of size s, remainder of size n-s with trees >= first in
    // the structural order (matches canonical_form's sibling order).
    for (int s = 1; s <= n; ++s) {
      for (const auto& t : trees[s]) {
        for (const auto& rest : forests[n - s]) {
          if (!rest.empty() && node_less(rest.front(), t)) continue;
          std::vector<Node> f;
          f.push_back(t);
          f.insert(f.end(), rest.begin(), rest.end());
          forests[n].push_back(std::move(f));
        }
      }
    }
  }
};

}  // namespace

std::vector<Term> enumerate_forests(const std::vector<Letter>& letters,
                                    int max_nodes) {
  Enumerator en(letters, max_nodes);
  std::vector<Term> out;
  for (int n = 0; n <= max_nodes; ++n) {
    for (const auto& f : en.forests[n]) out.push_back(Term(f));
  }
  return out;
}

std::vector<Term> enumerate_contexts(const std::vector<Letter>& letters,
                                     int max_nodes) {
  std::vector<Term> base = enumerate_forests(letters, max_nodes - 1);
  std::map<std::string, Term> seen;
  for (const auto& f : base) {
    // box as an extra root
    {
      std::vector<Node> roots = f.roots();
      roots.push_back(Node::box());
      Term c = canonical_form(Term(std::move(roots)));
      seen.emplace(format_term(c), c);
    }
    // box as an extra child of every interior node
    std::function<void(std::vector<Node>&, std::vector<int>&)> visit =
        [&](std::vector<Node>& roots, std::vector<int>& path) {
          // locate node at path
          Node* n = nullptr;
          if (!path.empty()) {
            n = &roots[path[0]];
            for (size_t i = 1; i < path.size(); ++i) n = &n->children[path[i]];
            if (n->kind == Node::Kind::Interior) {
              n->children.push_back(Node::box());
              Term c = canonical_form(Term(roots));
              seen.emplace(format_term(c), c);
              n->children.pop_back();
            } else {
              return;
            }
          }
          Node* cur = n;
          size_t nchildren = cur ? cur->children.size() : roots.size();
          for (size_t i = 0; i < nchildren; ++i) {
            path.push_back(static_cast<int>(i));
            visit(roots, path);
            path.pop_back();
          }
        };
    std::vector<Node> roots = f.roots();
    std::vector<int> path;
    visit(roots, path);
  }
  std::vector<Term> out;
  for (auto& [k, v] : seen) {
    if (v.size() <= max_nodes) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return format_term(a) < format_term(b);
  });
  return out;
}

}  // namespace fab
