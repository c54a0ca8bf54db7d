// fab/io.hpp — text formats: algebra definitions (.fa), circuits (.fc),
// seed families (.fs), and line-oriented reports.

#ifndef FAB_IO_HPP
#define FAB_IO_HPP

#include <string>
#include <vector>

#include "fab/algebra.hpp"
#include "fab/proofsearch.hpp"
#include "fab/term.hpp"

namespace fab {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct AlgebraSpec {
  std::string name;
  Homomorphism hom;
  std::vector<int> accepting;

  Alphabet alphabet() const;
};

// Line-oriented algebra definition:
//   name: <label>
//   horizontal:
//   elements: <name>...
//   add: <row>...              (one row per element, in element order)
//   vertical-generators:
//   <gen> = <image name>...    (one image per element)
//   letters:
//   <letter> = <gen>|identity
//   accepting: <name>...
// The vertical monoid is the closure of the translations of H together
// with the listed generators. Tables must be total.
AlgebraSpec parse_algebra_file(const std::string& text);
std::string format_algebra_file(const AlgebraSpec& spec);

// Circuit files declare named port sets, then one block per tuple:
//   set <alias> = <element>...
//   tuple <alias> <target>:
//   term: <term syntax, ports labeled ?name:alias>
//   psi: <port>=<element>...
ProofCircuit parse_circuit_file(const std::string& text,
                                const Alphabet& alphabet);
std::string format_circuit_file(const ProofCircuit& c);

// Seed files: set declarations plus "seed <alias> <target>: <term>".
SeedFamily parse_seed_file(const std::string& text, const Alphabet& alphabet);
std::string format_seed_file(const SeedFamily& s);

// Key:value report block; outcome drives the process exit code.
struct Report {
  std::string command;
  std::string outcome;  // found | refuted | holds | violated | exhausted
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, long long value);
  std::string to_text() const;
  static Report parse(const std::string& text);
  int exit_code() const;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fab

#endif  // FAB_IO_HPP
