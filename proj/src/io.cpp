#include "fab/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fab {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> clean_lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (!blank) out.push_back(line);
  }
  return out;
}

}  // namespace

Alphabet AlgebraSpec::alphabet() const {
  std::vector<Letter> letters;
  for (const auto& [a, act] : hom.letter_action) {
    if (a != "e") letters.push_back(a);
  }
  return Alphabet(letters);
}

AlgebraSpec parse_algebra_file(const std::string& text) {
  std::vector<std::string> lines = clean_lines(text);
  AlgebraSpec spec;
  FiniteMonoid h;
  std::vector<std::pair<std::string, std::vector<std::string>>> gens;
  std::map<std::string, std::string> letter_gen;
  std::vector<std::string> accepting_names;

  enum class Section { None, Horizontal, Generators, Letters };
  Section section = Section::None;
  std::vector<std::vector<std::string>> add_rows;

  for (const auto& line : lines) {
    std::vector<std::string> toks = tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "name:") {
      if (toks.size() != 2) throw IoError("malformed name line");
      spec.name = toks[1];
      continue;
    }
    if (toks[0] == "horizontal:") {
      section = Section::Horizontal;
      continue;
    }
    if (toks[0] == "vertical-generators:") {
      section = Section::Generators;
      continue;
    }
    if (toks[0] == "letters:") {
      section = Section::Letters;
      continue;
    }
    if (toks[0] == "accepting:") {
      accepting_names.assign(toks.begin() + 1, toks.end());
      continue;
    }
    switch (section) {
      case Section::Horizontal:
        if (toks[0] == "elements:") {
          h.names.assign(toks.begin() + 1, toks.end());
        } else if (toks[0] == "add:") {
          add_rows.emplace_back(toks.begin() + 1, toks.end());
        } else {
          throw IoError("unexpected line in horizontal section: " + line);
        }
        break;
      case Section::Generators: {
        if (toks.size() < 3 || toks[1] != "=") {
          throw IoError("malformed generator line: " + line);
        }
        gens.emplace_back(toks[0],
                          std::vector<std::string>(toks.begin() + 2, toks.end()));
        break;
      }
      case Section::Letters: {
        if (toks.size() != 3 || toks[1] != "=") {
          throw IoError("malformed letter line: " + line);
        }
        letter_gen[toks[0]] = toks[2];
        break;
      }
      case Section::None:
        throw IoError("line outside any section: " + line);
    }
  }

  if (h.names.empty()) throw IoError("no horizontal elements");
  int n = static_cast<int>(h.names.size());
  if (static_cast<int>(add_rows.size()) != n) {
    throw IoError("addition table is not total: expected " +
                  std::to_string(n) + " rows");
  }
  h.table.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(add_rows[i].size()) != n) {
      throw IoError("addition row " + std::to_string(i) + " is not total");
    }
    for (int j = 0; j < n; ++j) h.table[i][j] = h.index_of(add_rows[i][j]);
  }
  // locate the identity
  h.identity = -1;
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      ok &= h.table[i][j] == j && h.table[j][i] == j;
    }
    if (ok) {
      h.identity = i;
      break;
    }
  }
  if (h.identity < 0) throw IoError("addition table has no identity");
  if (auto bad = h.check()) throw IoError("horizontal monoid: " + *bad);

  std::vector<Transformation> acts;
  std::vector<std::string> act_names;
  for (const auto& [gname, images] : gens) {
    if (static_cast<int>(images.size()) != n) {
      throw IoError("generator " + gname + " is not total");
    }
    Transformation f(n);
    for (int i = 0; i < n; ++i) f[i] = h.index_of(images[i]);
    acts.push_back(std::move(f));
    act_names.push_back(gname);
  }
  ForestAlgebraPtr alg = make_forest_algebra(h, acts, act_names);

  spec.hom.algebra = alg;
  for (const auto& [letter, gname] : letter_gen) {
    if (gname == "identity") {
      spec.hom.letter_action[letter] = alg->v.identity_id();
      continue;
    }
    bool found = false;
    for (size_t i = 0; i < act_names.size(); ++i) {
      if (act_names[i] == gname) {
        spec.hom.letter_action[letter] = alg->v.find(acts[i]);
        found = true;
        break;
      }
    }
    if (!found) throw IoError("letter " + letter + " names unknown generator");
  }
  for (const auto& a : accepting_names) {
    spec.accepting.push_back(h.index_of(a));
  }
  std::sort(spec.accepting.begin(), spec.accepting.end());
  return spec;
}

std::string format_algebra_file(const AlgebraSpec& spec) {
  const ForestAlgebra& A = spec.hom.alg();
  std::ostringstream os;
  if (!spec.name.empty()) os << "name: " << spec.name << "\n";
  os << "horizontal:\n";
  os << "elements:";
  for (const auto& nm : A.h.names) os << " " << nm;
  os << "\n";
  for (int i = 0; i < A.h.size(); ++i) {
    os << "add:";
    for (int j = 0; j < A.h.size(); ++j) os << " " << A.h.names[A.h.table[i][j]];
    os << "\n";
  }
  os << "vertical-generators:\n";
  std::vector<std::pair<std::string, int>> gens;
  for (const auto& [letter, act] : spec.hom.letter_action) {
    if (letter == "e") continue;
    gens.emplace_back("g_" + letter, act);
  }
  for (const auto& [gname, act] : gens) {
    os << gname << " =";
    for (int x : A.v.elems[act]) os << " " << A.h.names[x];
    os << "\n";
  }
  os << "letters:\n";
  for (const auto& [letter, act] : spec.hom.letter_action) {
    if (letter == "e") continue;
    os << letter << " = g_" << letter << "\n";
  }
  os << "accepting:";
  for (int a : spec.accepting) os << " " << A.h.names[a];
  os << "\n";
  return os.str();
}

namespace {

// Rewrites the first extra label of every port through the map.
Term remap_port_sets(const Term& t,
                     const std::map<std::string, std::string>& alias) {
  std::function<Node(const Node&)> go = [&](const Node& n) -> Node {
    Node out = n;
    if (n.kind == Node::Kind::Port) {
      if (n.extras.empty()) {
        throw IoError("port '" + n.label + "' lacks a set label");
      }
      auto it = alias.find(n.extras[0]);
      if (it == alias.end()) {
        throw IoError("port '" + n.label + "' references undeclared set '" +
                      n.extras[0] + "'");
      }
      out.extras[0] = it->second;
    }
    for (auto& c : out.children) c = go(c);
    return out;
  };
  std::vector<Node> roots;
  for (const auto& r : t.roots()) roots.push_back(go(r));
  return Term(std::move(roots));
}

std::map<std::string, std::string> parse_set_decls(
    const std::vector<std::string>& lines) {
  std::map<std::string, std::string> alias;
  for (const auto& line : lines) {
    std::vector<std::string> toks = tokens(line);
    if (toks.empty() || toks[0] != "set") continue;
    if (toks.size() < 4 || toks[2] != "=") {
      throw IoError("malformed set declaration: " + line);
    }
    std::vector<std::string> elems(toks.begin() + 3, toks.end());
    std::sort(elems.begin(), elems.end());
    std::string canonical;
    for (size_t i = 0; i < elems.size(); ++i) {
      if (i) canonical += ",";
      canonical += elems[i];
    }
    alias[toks[1]] = canonical;
  }
  return alias;
}

// Emits set declarations for the canonical set names in use.
std::string emit_set_decls(const std::set<std::string>& sets,
                           std::map<std::string, std::string>& alias_of) {
  std::ostringstream os;
  int counter = 0;
  for (const auto& s : sets) {
    std::string alias = "J" + std::to_string(++counter);
    alias_of[s] = alias;
    os << "set " << alias << " =";
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) os << " " << item;
    os << "\n";
  }
  return os.str();
}

Term alias_ports(const Term& t, const std::map<std::string, std::string>& alias_of) {
  std::function<Node(const Node&)> go = [&](const Node& n) -> Node {
    Node out = n;
    if (n.kind == Node::Kind::Port) {
      out.extras = {alias_of.at(n.input_label())};
    }
    for (auto& c : out.children) c = go(c);
    return out;
  };
  std::vector<Node> roots;
  for (const auto& r : t.roots()) roots.push_back(go(r));
  return Term(std::move(roots));
}

}  // namespace

ProofCircuit parse_circuit_file(const std::string& text,
                                const Alphabet& alphabet) {
  std::vector<std::string> lines = clean_lines(text);
  std::map<std::string, std::string> alias = parse_set_decls(lines);
  ProofCircuit out;

  CircuitKey key;
  bool in_tuple = false;
  ProofTuple tuple;
  bool have_term = false;
  auto flush = [&]() {
    if (!in_tuple) return;
    if (!have_term) throw IoError("tuple block without a term");
    out.tuples[key] = tuple;
    tuple = ProofTuple();
    have_term = false;
    in_tuple = false;
  };

  for (const auto& line : lines) {
    std::vector<std::string> toks = tokens(line);
    if (toks.empty() || toks[0] == "set") continue;
    if (toks[0] == "tuple") {
      flush();
      if (toks.size() != 3 || toks[2].back() != ':') {
        throw IoError("malformed tuple header: " + line);
      }
      std::string set_alias = toks[1];
      if (!alias.count(set_alias)) {
        throw IoError("tuple references undeclared set " + set_alias);
      }
      key.set_name = alias.at(set_alias);
      key.target = toks[2].substr(0, toks[2].size() - 1);
      in_tuple = true;
      continue;
    }
    if (toks[0] == "term:") {
      if (!in_tuple) throw IoError("term outside tuple block");
      size_t pos = line.find("term:");
      Term t = parse_term(line.substr(pos + 5), alphabet);
      tuple.m = remap_port_sets(t, alias);
      have_term = true;
      continue;
    }
    if (toks[0] == "psi:") {
      if (!in_tuple) throw IoError("psi outside tuple block");
      for (size_t i = 1; i < toks.size(); ++i) {
        size_t eq = toks[i].find('=');
        if (eq == std::string::npos) {
          throw IoError("malformed psi entry: " + toks[i]);
        }
        tuple.psi[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
      }
      continue;
    }
    throw IoError("unexpected circuit line: " + line);
  }
  flush();
  return out;
}

std::string format_circuit_file(const ProofCircuit& c) {
  std::set<std::string> sets;
  for (const auto& [key, tuple] : c.tuples) sets.insert(key.set_name);
  for (const auto& [key, tuple] : c.tuples) {
    for (const auto& [name, lab] : tuple.m.port_input_labels()) {
      sets.insert(lab);
    }
  }
  std::map<std::string, std::string> alias_of;
  std::ostringstream os;
  os << emit_set_decls(sets, alias_of);
  for (const auto& [key, tuple] : c.tuples) {
    os << "tuple " << alias_of.at(key.set_name) << " " << key.target << ":\n";
    os << "term: " << format_term(alias_ports(tuple.m, alias_of)) << "\n";
    os << "psi:";
    for (const auto& [port, target] : tuple.psi) {
      os << " " << port << "=" << target;
    }
    os << "\n";
  }
  return os.str();
}

SeedFamily parse_seed_file(const std::string& text, const Alphabet& alphabet) {
  std::vector<std::string> lines = clean_lines(text);
  std::map<std::string, std::string> alias = parse_set_decls(lines);
  SeedFamily out;
  for (const auto& line : lines) {
    std::vector<std::string> toks = tokens(line);
    if (toks.empty() || toks[0] == "set") continue;
    if (toks[0] != "seed") throw IoError("unexpected seed line: " + line);
    if (toks.size() < 4 || toks[2].back() != ':') {
      throw IoError("malformed seed header: " + line);
    }
    if (!alias.count(toks[1])) {
      throw IoError("seed references undeclared set " + toks[1]);
    }
    CircuitKey key;
    key.set_name = alias.at(toks[1]);
    key.target = toks[2].substr(0, toks[2].size() - 1);
    size_t pos = line.find(':', line.find("seed"));
    out.seeds[key] = parse_term(line.substr(pos + 1), alphabet);
  }
  return out;
}

std::string format_seed_file(const SeedFamily& s) {
  std::set<std::string> sets;
  for (const auto& [key, term] : s.seeds) sets.insert(key.set_name);
  std::map<std::string, std::string> alias_of;
  std::ostringstream os;
  os << emit_set_decls(sets, alias_of);
  for (const auto& [key, term] : s.seeds) {
    os << "seed " << alias_of.at(key.set_name) << " " << key.target << ": "
       << format_term(term) << "\n";
  }
  return os.str();
}

void Report::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
}

void Report::add(const std::string& key, long long value) {
  fields.emplace_back(key, std::to_string(value));
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  for (const auto& [k, v] : fields) os << k << ": " << v << "\n";
  os << "outcome: " << outcome << "\n";
  return os.str();
}

Report Report::parse(const std::string& text) {
  Report r;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    size_t colon = line.find(": ");
    if (colon == std::string::npos) {
      if (line.back() == ':') {
        colon = line.size() - 1;
      } else {
        throw IoError("malformed report line: " + line);
      }
    }
    std::string key = line.substr(0, colon);
    std::string value =
        colon + 2 <= line.size() ? line.substr(colon + 2) : std::string();
    if (key == "command") {
      r.command = value;
    } else if (key == "outcome") {
      r.outcome = value;
    } else {
      r.fields.emplace_back(key, value);
    }
  }
  return r;
}

int Report::exit_code() const {
  if (outcome == "holds" || outcome == "found") return 0;
  if (outcome == "refuted" || outcome == "violated") return 1;
  if (outcome == "exhausted") return 2;
  return 3;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

}  // namespace fab
