// fab — command-line front end over the shared C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fab.h"

namespace {

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(FAB_ERR_USAGE);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Terms may be given inline or as a path to a .term file.
std::string term_arg(const std::string& arg) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".term") {
    std::string text = read_file_or_die(arg);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
      text.pop_back();
    }
    return text;
  }
  return arg;
}

struct Algebra {
  fab_algebra* handle = nullptr;
  ~Algebra() { fab_algebra_free(handle); }
};

// "fixture:NAME" or a .fa path.
int open_algebra(const std::string& arg, Algebra& out) {
  char* err = nullptr;
  int rc;
  if (arg.rfind("fixture:", 0) == 0) {
    rc = fab_algebra_fixture(arg.substr(8).c_str(), &out.handle, &err);
  } else {
    rc = fab_algebra_load(arg.c_str(), &out.handle, &err);
  }
  if (rc != FAB_OK) {
    std::cerr << "error: " << (err ? err : "cannot open algebra") << "\n";
    fab_string_free(err);
  }
  return rc;
}

int emit(int rc, char* report, char* err) {
  if (report) {
    std::cout << report;
    fab_string_free(report);
  }
  if (err) {
    std::cerr << "error: " << err << "\n";
    fab_string_free(err);
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite forest algebras: congruences, derived algebras and "
               "recursive proof checks"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed, "seed for randomized helpers (reserved)");

  std::string algebra_arg, out_path;
  int n = 1, tau = 1, pi = 1;
  long long budget = 2'000'000;

  // eval
  auto* eval = app.add_subcommand("eval", "image of a term under an algebra");
  std::string eval_term;
  eval->add_option("--algebra", algebra_arg, "algebra file or fixture:NAME")
      ->required();
  eval->add_option("term", eval_term, "term text or .term file")->required();

  // equiv
  auto* equiv = app.add_subcommand("equiv", "level-n equivalence of two terms");
  std::string equiv_s, equiv_t;
  equiv->add_option("--n", n, "congruence level")->required();
  equiv->add_option("--tau", tau, "counting threshold");
  equiv->add_option("--pi", pi, "counting period");
  equiv->add_option("s", equiv_s)->required();
  equiv->add_option("t", equiv_t)->required();

  // falsify
  auto* falsify = app.add_subcommand(
      "falsify", "search for two equivalent forests with distinct images");
  int size_budget = 8;
  falsify->add_option("--algebra", algebra_arg)->required();
  falsify->add_option("--n", n)->required();
  falsify->add_option("--tau", tau);
  falsify->add_option("--pi", pi);
  falsify->add_option("--budget", size_budget, "maximal forest size");

  // syntactic
  auto* syntactic =
      app.add_subcommand("syntactic", "syntactic quotient of an algebra");
  syntactic->add_option("--algebra", algebra_arg)->required();
  syntactic->add_option("--out", out_path, "write the quotient here");

  // scc
  auto* sccc = app.add_subcommand("scc", "strongly connected components");
  sccc->add_option("--algebra", algebra_arg)->required();

  // divides
  auto* divides = app.add_subcommand("divides", "does the first algebra "
                                                "divide the second");
  std::string host_arg;
  divides->add_option("algebra", algebra_arg)->required();
  divides->add_option("host", host_arg)->required();
  divides->add_option("--budget", budget);

  // multivertical
  auto* multiv = app.add_subcommand(
      "multivertical", "multivertical monoid: size, threshold, period");
  multiv->add_option("--algebra", algebra_arg)->required();

  // extended
  auto* extended = app.add_subcommand(
      "extended", "extended-algebra action of a one-box context");
  std::string element_arg, subsets_path;
  extended->add_option("--algebra", algebra_arg)->required();
  extended->add_option("--element", element_arg, "context term or .term file")
      ->required();
  extended->add_option("--port-subsets", subsets_path,
                       "file of 'label: elem...' lines");

  // rc-verify
  auto* rcv = app.add_subcommand("rc-verify",
                                 "check the recursive-construction condition");
  std::string circuit_path, seeds_path;
  rcv->add_option("circuit", circuit_path)->required();
  rcv->add_option("seeds", seeds_path)->required();
  rcv->add_option("--algebra", algebra_arg)->required();
  rcv->add_option("--n", n)->required();
  rcv->add_option("--tau", tau);
  rcv->add_option("--pi", pi);

  // witnesses
  auto* wit = app.add_subcommand("witnesses",
                                 "build and verify level-n witnesses");
  wit->add_option("circuit", circuit_path)->required();
  wit->add_option("seeds", seeds_path)->required();
  wit->add_option("--algebra", algebra_arg)->required();
  wit->add_option("--n", n)->required();
  wit->add_option("--tau", tau);
  wit->add_option("--pi", pi);

  // search-copy
  auto* search = app.add_subcommand("search-copy",
                                    "search for a one-multicontext circuit");
  std::string set_csv;
  int node_budget = 6, width_budget = 8;
  search->add_option("--algebra", algebra_arg)->required();
  search->add_option("--set", set_csv, "comma-separated element names")
      ->required();
  search->add_option("--tau", tau);
  search->add_option("--pi", pi);
  search->add_option("--budget", node_budget, "interior-node budget");
  search->add_option("--width", width_budget, "port budget");
  search->add_option("--out", out_path, "write the found circuit here");

  // pump-subcircuit
  auto* pumpc = app.add_subcommand("pump-subcircuit",
                                   "three-step pumped subcircuit");
  std::string tuples_path, z_label;
  int chi = 2;
  pumpc->add_option("tuples", tuples_path)->required();
  pumpc->add_option("--algebra", algebra_arg)->required();
  pumpc->add_option("--z-label", z_label)->required();
  pumpc->add_option("--chi", chi)->required();
  pumpc->add_option("--tau", tau);

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "bundled example algebras");
  std::string check_name, export_dir;
  bool list = false;
  fixtures->add_option("--check", check_name, "fixture name or 'all'");
  fixtures->add_option("--export", export_dir, "write .fa files here");
  fixtures->add_flag("--list", list, "list fixture names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : FAB_ERR_USAGE;
  }

  char* report = nullptr;
  char* err = nullptr;

  if (eval->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    return emit(fab_eval(a.handle, term_arg(eval_term).c_str(), &report, &err),
                report, err);
  }
  if (equiv->parsed()) {
    return emit(fab_equiv(term_arg(equiv_s).c_str(), term_arg(equiv_t).c_str(),
                          n, tau, pi, &report, &err),
                report, err);
  }
  if (falsify->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    return emit(fab_falsify(a.handle, n, tau, pi, size_budget, &report, &err),
                report, err);
  }
  if (syntactic->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    char* text = nullptr;
    int rc = fab_syntactic(a.handle, &text, &report, &err);
    if (text) {
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        out << text;
      }
      fab_string_free(text);
    }
    return emit(rc, report, err);
  }
  if (sccc->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    return emit(fab_scc(a.handle, &report, &err), report, err);
  }
  if (divides->parsed()) {
    Algebra g, h;
    if (int rc = open_algebra(algebra_arg, g)) return rc;
    if (int rc = open_algebra(host_arg, h)) return rc;
    return emit(fab_divides(g.handle, h.handle, budget, &report, &err), report,
                err);
  }
  if (multiv->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    return emit(fab_multivertical(a.handle, &report, &err), report, err);
  }
  if (extended->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    std::string subsets;
    if (!subsets_path.empty()) subsets = read_file_or_die(subsets_path);
    return emit(fab_extended(a.handle, term_arg(element_arg).c_str(),
                             subsets.empty() ? nullptr : subsets.c_str(),
                             &report, &err),
                report, err);
  }
  if (rcv->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    std::string circuit = read_file_or_die(circuit_path);
    std::string seeds = read_file_or_die(seeds_path);
    return emit(fab_rc_verify(a.handle, circuit.c_str(), seeds.c_str(), n, tau,
                              pi, &report, &err),
                report, err);
  }
  if (wit->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    std::string circuit = read_file_or_die(circuit_path);
    std::string seeds = read_file_or_die(seeds_path);
    return emit(fab_witnesses(a.handle, circuit.c_str(), seeds.c_str(), n, tau,
                              pi, &report, &err),
                report, err);
  }
  if (search->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    char* circuit = nullptr;
    int rc = fab_search_copy(a.handle, set_csv.c_str(), tau, pi, node_budget,
                             width_budget, &circuit, &report, &err);
    if (circuit) {
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << circuit;
      } else {
        std::cout << circuit;
      }
      fab_string_free(circuit);
    }
    return emit(rc, report, err);
  }
  if (pumpc->parsed()) {
    Algebra a;
    if (int rc = open_algebra(algebra_arg, a)) return rc;
    std::string tuples = read_file_or_die(tuples_path);
    return emit(fab_pump_subcircuit(a.handle, tuples.c_str(), z_label.c_str(),
                                    chi, tau, &report, &err),
                report, err);
  }
  if (fixtures->parsed()) {
    if (list || (check_name.empty() && export_dir.empty())) {
      for (const char* name :
           {"boolean", "duplex", "even_depth", "zigzag012", "potthoff",
            "ancestor_one_b"}) {
        std::cout << name << "\n";
      }
      return 0;
    }
    if (!export_dir.empty()) {
      for (const char* name :
           {"boolean", "duplex", "even_depth", "zigzag012", "potthoff",
            "ancestor_one_b"}) {
        char* text = nullptr;
        int rc = fab_fixture_export(name, &text, &err);
        if (rc != FAB_OK) return emit(rc, nullptr, err);
        std::ofstream out(export_dir + "/" + name + ".fa");
        out << text;
        fab_string_free(text);
      }
      if (check_name.empty()) return 0;
    }
    return emit(fab_fixture_check(check_name.c_str(), &report, &err), report,
                err);
  }
  return FAB_ERR_USAGE;
}
