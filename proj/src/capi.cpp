#include "fab.h"

#include <chrono>
#include <cstring>
#include <sstream>

#include "fab/derived.hpp"
#include "fab/fixtures.hpp"
#include "fab/io.hpp"
#include "fab/proofsearch.hpp"

struct fab_term {
  fab::Term t;
};

struct fab_algebra {
  fab::AlgebraSpec spec;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int finish(char** report_out, fab::Report& report, const Timer& timer) {
  report.add("timing-ms", timer.ms());
  // keep outcome last in the text
  std::string text = report.to_text();
  set_out(report_out, text);
  return report.exit_code();
}

template <typename F>
int guarded(char** err, F&& fn) {
  try {
    return fn();
  } catch (const fab::TermError& e) {
    set_out(err, e.what());
    return FAB_ERR_PARSE;
  } catch (const fab::IoError& e) {
    set_out(err, e.what());
    return FAB_ERR_PARSE;
  } catch (const std::exception& e) {
    set_out(err, e.what());
    return FAB_ERR_EVAL;
  }
}

fab::Alphabet alphabet_from_arg(const char* alphabet, const char* text) {
  if (!alphabet) return fab::Alphabet::infer(text ? text : "");
  std::vector<fab::Letter> letters;
  std::stringstream ss(alphabet);
  std::string item;
  while (ss >> item) letters.push_back(item);
  return fab::Alphabet(letters);
}

}  // namespace

extern "C" {

const char* fab_version(void) { return "0.1.0"; }

void fab_string_free(char* s) { std::free(s); }

int fab_term_parse(const char* text, const char* alphabet, fab_term** out,
                   char** err) {
  if (!text || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    fab::Term t = fab::parse_term(text, alphabet_from_arg(alphabet, text));
    *out = new fab_term{std::move(t)};
    return FAB_OK;
  });
}

int fab_term_format(const fab_term* t, char** out, char** err) {
  if (!t || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    set_out(out, fab::format_term(t->t));
    return FAB_OK;
  });
}

int fab_term_canonical(const fab_term* t, fab_term** out, char** err) {
  if (!t || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    *out = new fab_term{fab::canonical_form(t->t)};
    return FAB_OK;
  });
}

void fab_term_free(fab_term* t) { delete t; }

int fab_algebra_parse(const char* text, fab_algebra** out, char** err) {
  if (!text || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    *out = new fab_algebra{fab::parse_algebra_file(text)};
    return FAB_OK;
  });
}

int fab_algebra_load(const char* path, fab_algebra** out, char** err) {
  if (!path || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    *out = new fab_algebra{fab::parse_algebra_file(fab::read_file(path))};
    return FAB_OK;
  });
}

int fab_algebra_fixture(const char* name, fab_algebra** out, char** err) {
  if (!name || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    fab::Fixture f = fab::fixture_by_name(name);
    fab::AlgebraSpec spec;
    spec.name = f.name;
    spec.hom = f.hom;
    spec.accepting = f.accepting;
    *out = new fab_algebra{std::move(spec)};
    return FAB_OK;
  });
}

int fab_algebra_format(const fab_algebra* a, char** out, char** err) {
  if (!a || !out) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    set_out(out, fab::format_algebra_file(a->spec));
    return FAB_OK;
  });
}

int fab_algebra_validate(const fab_algebra* a, char** report, char** err) {
  if (!a) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::Report r;
    r.command = "validate";
    auto bad = fab::validate_algebra(a->spec.hom.alg());
    if (bad) r.add("violation", *bad);
    r.outcome = bad ? "violated" : "holds";
    return finish(report, r, timer);
  });
}

void fab_algebra_free(fab_algebra* a) { delete a; }

int fab_eval(const fab_algebra* a, const char* term_text, char** report,
             char** err) {
  if (!a || !term_text) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::Term t = fab::parse_term(term_text, a->spec.alphabet());
    fab::HomValue v = fab::hom_eval(a->spec.hom, t);
    fab::Report r;
    r.command = "eval";
    r.add("term", fab::format_term(t));
    if (v.vertical) {
      const auto& alg = a->spec.hom.alg();
      r.add("kind", "context");
      std::string images;
      for (int x = 0; x < alg.h.size(); ++x) {
        if (x) images += " ";
        images += alg.h.names[x] + "->" + alg.h.names[alg.v.elems[v.v][x]];
      }
      r.add("action", images);
    } else {
      r.add("kind", "forest");
      r.add("value", a->spec.hom.alg().h.names[v.h]);
      bool accepted = false;
      for (int f : a->spec.accepting) accepted |= (f == v.h);
      r.add("accepted", accepted ? "yes" : "no");
    }
    r.outcome = "holds";
    return finish(report, r, timer);
  });
}

int fab_equiv(const char* s, const char* t, int n, int tau, int pi,
              char** report, char** err) {
  if (!s || !t) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    std::string joint = std::string(s) + " " + t;
    fab::Alphabet a = fab::Alphabet::infer(joint);
    fab::Term ts = fab::parse_term(s, a);
    fab::Term tt = fab::parse_term(t, a);
    bool eq = fab::equiv_n(ts, tt, n, fab::TauPi{tau, pi});
    fab::Report r;
    r.command = "equiv";
    r.add("n", n);
    r.add("tau", tau);
    r.add("pi", pi);
    r.add("s", fab::format_term(ts));
    r.add("t", fab::format_term(tt));
    r.outcome = eq ? "holds" : "refuted";
    return finish(report, r, timer);
  });
}

int fab_falsify(const fab_algebra* a, int n, int tau, int pi, int size_budget,
                char** report, char** err) {
  if (!a) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::FalsifyResult res =
        fab::refinement_falsify(a->spec.hom, n, fab::TauPi{tau, pi}, size_budget);
    fab::Report r;
    r.command = "falsify";
    r.add("n", n);
    r.add("tau", tau);
    r.add("pi", pi);
    r.add("size-budget", size_budget);
    r.add("examined", res.examined);
    if (res.found) {
      r.add("evidence.s", fab::format_term(res.s));
      r.add("evidence.t", fab::format_term(res.t));
      r.add("evidence.image-s", a->spec.hom.alg().h.names[res.image_s]);
      r.add("evidence.image-t", a->spec.hom.alg().h.names[res.image_t]);
    }
    r.outcome = res.found ? "found" : "exhausted";
    return finish(report, r, timer);
  });
}

int fab_syntactic(const fab_algebra* a, char** algebra_text, char** report,
                  char** err) {
  if (!a) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::QuotientResult q =
        fab::syntactic_quotient(a->spec.hom, a->spec.accepting);
    fab::AlgebraSpec out;
    out.name = a->spec.name.empty() ? "quotient" : a->spec.name + "_syntactic";
    out.hom = q.hom;
    out.accepting = q.accepting;
    set_out(algebra_text, fab::format_algebra_file(out));
    fab::Report r;
    r.command = "syntactic";
    r.add("carrier", static_cast<long long>(q.algebra->h.size()));
    r.add("vertical", static_cast<long long>(q.algebra->v.size()));
    r.outcome = "holds";
    return finish(report, r, timer);
  });
}

int fab_scc(const fab_algebra* a, char** report, char** err) {
  if (!a) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    const auto& alg = a->spec.hom.alg();
    fab::Report r;
    r.command = "scc";
    int i = 0;
    for (const auto& comp : fab::scc(alg)) {
      std::string members;
      for (int x : comp) {
        if (!members.empty()) members += " ";
        members += alg.h.names[x];
      }
      r.add("component." + std::to_string(i++), members);
    }
    r.outcome = "holds";
    return finish(report, r, timer);
  });
}

int fab_divides(const fab_algebra* g, const fab_algebra* h, long long budget,
                char** report, char** err) {
  if (!g || !h) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::DividesResult res =
        fab::divides(g->spec.hom.alg(), h->spec.hom.alg(), budget);
    fab::Report r;
    r.command = "divides";
    if (res.outcome == fab::Ternary::Yes) r.add("witness", res.witness);
    r.outcome = res.outcome == fab::Ternary::Yes        ? "found"
                : res.outcome == fab::Ternary::No       ? "refuted"
                                                        : "exhausted";
    return finish(report, r, timer);
  });
}

int fab_multivertical(const fab_algebra* a, char** report, char** err) {
  if (!a) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::MultiverticalResult mv = fab::multivertical(a->spec.hom);
    fab::Report r;
    r.command = "multivertical";
    if (mv.outcome == fab::Ternary::Exhausted) {
      r.outcome = "exhausted";
      return finish(report, r, timer);
    }
    fab::ThresholdPeriod tp = fab::multivertical_threshold_period(a->spec.hom);
    fab::PredicateResult ap = fab::monoid_aperiodic(mv.monoid);
    r.add("size", static_cast<long long>(mv.monoid.size()));
    r.add("threshold", tp.threshold);
    r.add("period", tp.period);
    r.add("aperiodic", ap.outcome == fab::Ternary::Yes ? "yes" : "no");
    if (ap.outcome == fab::Ternary::No) r.add("witness", ap.witness);
    r.outcome = ap.outcome == fab::Ternary::Yes ? "holds" : "violated";
    return finish(report, r, timer);
  });
}

int fab_extended(const fab_algebra* a, const char* context_term,
                 const char* port_subsets, char** report, char** err) {
  if (!a || !context_term) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    const auto& alg = a->spec.hom.alg();
    fab::Term w = fab::parse_term(context_term, a->spec.alphabet());
    std::map<std::string, fab::HSubset> subsets;
    if (port_subsets) {
      std::stringstream ss(port_subsets);
      std::string line;
      while (std::getline(ss, line)) {
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) {
          throw fab::IoError("malformed subset line: " + line);
        }
        std::string label = line.substr(0, colon);
        while (!label.empty() && label.back() == ' ') label.pop_back();
        std::vector<int> elems;
        std::stringstream es(line.substr(colon + 1));
        std::string e;
        while (es >> e) elems.push_back(alg.h.index_of(e));
        subsets[label] = fab::subset_of(elems);
      }
    }
    fab::ExtendedElement elem(a->spec.hom, w, subsets);
    std::vector<fab::HSubset> seeds;
    for (int x = 0; x < alg.h.size(); ++x) {
      seeds.push_back(fab::HSubset{1} << x);
    }
    fab::ThresholdPeriod tp = elem.threshold_period(seeds);
    fab::Report r;
    r.command = "extended";
    r.add("dense", elem.dense() ? "yes" : "no");
    r.add("threshold", tp.threshold);
    r.add("period", tp.period);
    for (int x = 0; x < alg.h.size(); ++x) {
      fab::HSubset image = elem.apply(fab::HSubset{1} << x);
      std::string s;
      for (int y : fab::subset_elems(image)) {
        if (!s.empty()) s += " ";
        s += alg.h.names[y];
      }
      r.add("image.{" + alg.h.names[x] + "}", s);
    }
    r.outcome = tp.period == 1 ? "holds" : "violated";
    return finish(report, r, timer);
  });
}

int fab_rc_verify(const fab_algebra* a, const char* circuit_text,
                  const char* seeds_text, int n, int tau, int pi,
                  char** report, char** err) {
  if (!a || !circuit_text || !seeds_text) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::Alphabet alphabet = a->spec.alphabet();
    fab::ProofCircuit c = fab::parse_circuit_file(circuit_text, alphabet);
    fab::SeedFamily s = fab::parse_seed_file(seeds_text, alphabet);
    fab::VerifyResult res =
        fab::rc_verify(c, s, a->spec.hom, n, fab::TauPi{tau, pi});
    fab::Report r;
    r.command = "rc-verify";
    r.add("n", n);
    r.add("tau", tau);
    r.add("pi", pi);
    if (!res.ok) r.add("violation", res.violation);
    r.outcome = res.ok ? "holds" : "violated";
    return finish(report, r, timer);
  });
}

int fab_witnesses(const fab_algebra* a, const char* circuit_text,
                  const char* seeds_text, int n, int tau, int pi,
                  char** report, char** err) {
  if (!a || !circuit_text || !seeds_text) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::Alphabet alphabet = a->spec.alphabet();
    fab::ProofCircuit c = fab::parse_circuit_file(circuit_text, alphabet);
    fab::SeedFamily s = fab::parse_seed_file(seeds_text, alphabet);
    fab::TauPi tp{tau, pi};
    fab::WitnessSet w = fab::build_witnesses(c, s, n, tp);
    fab::VerifyResult res = fab::verify_witnesses(w, a->spec.hom, n, tp);
    fab::Report r;
    r.command = "witnesses";
    r.add("n", n);
    r.add("tau", tau);
    r.add("pi", pi);
    for (const auto& [key, term] : w.entries) {
      r.add("witness.(" + key.set_name + ")." + key.target,
            fab::format_term(term));
    }
    if (!res.ok) r.add("violation", res.violation);
    r.outcome = res.ok ? "holds" : "violated";
    return finish(report, r, timer);
  });
}

int fab_search_copy(const fab_algebra* a, const char* set_csv, int tau, int pi,
                    int node_budget, int width_budget, char** circuit_text,
                    char** report, char** err) {
  if (!a || !set_csv) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    const auto& alg = a->spec.hom.alg();
    std::vector<int> J;
    std::stringstream ss(set_csv);
    std::string item;
    while (std::getline(ss, item, ',')) J.push_back(alg.h.index_of(item));
    fab::SearchCopyResult res = fab::search_copy(
        a->spec.hom, J, fab::TauPi{tau, pi}, node_budget, width_budget);
    fab::Report r;
    r.command = "search-copy";
    r.add("tau", tau);
    r.add("pi", pi);
    r.add("node-budget", node_budget);
    r.add("width-budget", width_budget);
    r.add("skeletons", res.skeletons_examined);
    r.add("assignments", res.assignments_examined);
    if (res.outcome == fab::Ternary::Yes) {
      std::string text = fab::format_circuit_file(res.circuit);
      set_out(circuit_text, text);
      for (const auto& [key, tuple] : res.circuit.tuples) {
        r.add("evidence.tuple." + key.target, fab::format_term(tuple.m));
      }
      r.outcome = "found";
    } else {
      r.outcome = "exhausted";
    }
    return finish(report, r, timer);
  });
}

int fab_pump_subcircuit(const fab_algebra* a, const char* tuples_text,
                        const char* z_label, int chi, int tau, char** report,
                        char** err) {
  if (!a || !tuples_text || !z_label) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::Alphabet alphabet = a->spec.alphabet();
    fab::ProofCircuit c = fab::parse_circuit_file(tuples_text, alphabet);
    std::map<std::string, fab::ProofTuple> family;
    for (const auto& [key, tuple] : c.tuples) family[key.target] = tuple;
    fab::TauPi tp{tau, 1};
    fab::PumpedSubcircuit out =
        fab::build_pumped_subcircuit(a->spec.hom, family, z_label, chi, tp);
    // post-condition: pumping-port counters balance across targets
    bool balanced = true;
    fab::TauPi cap{chi, 1};
    std::vector<const fab::StackTuple*> ts;
    for (const auto& [j, st] : out.tuples) ts.push_back(&st);
    for (size_t i = 0; i < ts.size(); ++i) {
      for (size_t j = i + 1; j < ts.size(); ++j) {
        fab::CounterVec a1, b1;
        for (const auto& [k, v] : fab::counters_pumped(*ts[i], cap)) {
          if (k.input == z_label) a1[k] = v;
        }
        for (const auto& [k, v] : fab::counters_pumped(*ts[j], cap)) {
          if (k.input == z_label) b1[k] = v;
        }
        balanced &= fab::counters_equiv(a1, b1, tp);
      }
    }
    fab::Report r;
    r.command = "pump-subcircuit";
    r.add("chi", chi);
    r.add("tau", tau);
    r.add("omega", out.omega);
    r.add("eta", out.eta);
    for (const auto& [j, st] : out.tuples) {
      r.add("levels." + j, st.levels);
      r.add("size." + j, st.term.size());
    }
    r.add("pump-port-counters-balanced", balanced ? "yes" : "no");
    r.outcome = balanced ? "holds" : "violated";
    return finish(report, r, timer);
  });
}

int fab_fixture_check(const char* name, char** report, char** err) {
  if (!name) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    Timer timer;
    fab::FixtureCheck check = fab::check_fixture(name);
    fab::Report r;
    r.command = "fixtures";
    for (size_t i = 0; i < check.lines.size(); ++i) {
      r.add("check." + std::to_string(i), check.lines[i]);
    }
    r.outcome = check.ok ? "holds" : "violated";
    return finish(report, r, timer);
  });
}

int fab_fixture_export(const char* name, char** algebra_text, char** err) {
  if (!name || !algebra_text) {
    set_out(err, "missing argument");
    return FAB_ERR_USAGE;
  }
  return guarded(err, [&]() {
    fab::Fixture f = fab::fixture_by_name(name);
    fab::AlgebraSpec spec;
    spec.name = f.name;
    spec.hom = f.hom;
    spec.accepting = f.accepting;
    set_out(algebra_text, fab::format_algebra_file(spec));
    return FAB_OK;
  });
}

}  // extern "C"
