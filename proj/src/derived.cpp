#include "fab/derived.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fab {

namespace {

long long ipow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

MappingTable mapping_table(const Homomorphism& phi, const Term& m,
                           const std::vector<std::string>& labels,
                           long long budget) {
  const ForestAlgebra& A = phi.alg();
  int k = A.h.size();
  int N = static_cast<int>(labels.size());
  if (ipow(k, N) > budget) throw AlgebraError("mapping table budget exceeded");

  std::map<std::string, int> label_pos;
  for (int i = 0; i < N; ++i) label_pos[labels[i]] = i;
  auto port_labels = m.port_input_labels();
  for (const auto& [name, lab] : port_labels) {
    if (!label_pos.count(lab)) {
      throw AlgebraError("port label '" + lab + "' not among table labels");
    }
  }

  MappingTable out;
  out.labels = labels;
  out.carrier = k;
  out.vertical = m.has_box();
  out.entries.resize(static_cast<size_t>(ipow(k, N)));

  // Reserved leaf labels "#v<i>" stand for the i-th carrier element.
  std::vector<int> xi(N, 0);
  Homomorphism ext = phi;
  for (int i = 0; i < k; ++i) ext.leaf_extension["#v" + std::to_string(i)] = i;
  for (size_t idx = 0; idx < out.entries.size(); ++idx) {
    std::map<std::string, std::string> chi;
    for (const auto& [name, lab] : port_labels) {
      chi[name] = "#v" + std::to_string(xi[label_pos[lab]]);
    }
    HomValue v = hom_eval(ext, leaf_completion(m, chi));
    out.entries[idx] = out.vertical ? v.v : v.h;
    for (int i = 0; i < N; ++i) {
      if (++xi[i] < k) break;
      xi[i] = 0;
    }
  }
  return out;
}

bool node_equiv(const Homomorphism& phi, const Term& m, const NodeRef& x,
                const Term& m2, const NodeRef& x2,
                const std::vector<std::string>& labels) {
  const Node& a = resolve(m, x);
  const Node& b = resolve(m2, x2);
  if (a.kind != b.kind) return false;
  if (a.kind == Node::Kind::Interior && a.label != b.label) return false;
  if (a.kind == Node::Kind::Port && a.input_label() != b.input_label()) {
    return false;
  }
  if (mapping_table(phi, delta(m, x), labels) !=
      mapping_table(phi, delta(m2, x2), labels)) {
    return false;
  }
  return mapping_table(phi, nabla(m, x), labels) ==
         mapping_table(phi, nabla(m2, x2), labels);
}

namespace {

// Bound on the repetition exponents: thresholds max out, periods combine
// by lcm, so every map h -> n (*) h with larger n coincides with one below
// the bound.
int repetition_bound(const FiniteMonoid& h) {
  int max_t = 1;
  long long l = 1;
  for (int x = 0; x < h.size(); ++x) {
    ThresholdPeriod tp = elem_threshold_period(h, x);
    max_t = std::max(max_t, tp.threshold);
    l = std::lcm(l, static_cast<long long>(tp.period));
    if (l > 4096) throw AlgebraError("repetition periods too large");
  }
  return max_t + static_cast<int>(l);
}

Transformation repetition_map(const FiniteMonoid& h, int n) {
  Transformation f(h.size());
  for (int x = 0; x < h.size(); ++x) {
    int acc = h.identity;
    for (int i = 0; i < n; ++i) acc = h.op(acc, x);
    f[x] = acc;
  }
  return f;
}

}  // namespace

MultiverticalResult multivertical(const Homomorphism& phi, size_t max_size) {
  const ForestAlgebra& A = phi.alg();
  std::vector<Transformation> gens = A.v.elems;
  std::vector<std::string> names = A.v.names;
  int bound = repetition_bound(A.h);
  for (int n = 1; n <= bound; ++n) {
    gens.push_back(repetition_map(A.h, n));
    names.push_back("(*" + std::to_string(n) + ")");
  }
  MultiverticalResult res;
  bool ok = close_transformations(A.h.size(), gens, names, max_size, res.monoid);
  res.outcome = ok ? Ternary::Yes : Ternary::Exhausted;
  return res;
}

ThresholdPeriod multivertical_threshold_period(const Homomorphism& phi,
                                               size_t max_size) {
  MultiverticalResult mv = multivertical(phi, max_size);
  if (mv.outcome == Ternary::Exhausted) {
    throw AlgebraError("multivertical closure exceeds size budget");
  }
  int max_t = 1;
  long long l = 1;
  for (const auto& f : mv.monoid.elems) {
    ThresholdPeriod tp = elem_threshold_period(f);
    max_t = std::max(max_t, tp.threshold);
    l = std::lcm(l, static_cast<long long>(tp.period));
  }
  return ThresholdPeriod{max_t, static_cast<int>(l)};
}

HSubset subset_of(const std::vector<int>& elems) {
  HSubset s = 0;
  for (int e : elems) s |= (HSubset{1} << e);
  return s;
}

std::vector<int> subset_elems(HSubset s) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i) {
    if (s & (HSubset{1} << i)) out.push_back(i);
  }
  return out;
}

namespace {

HSubset sum_sets(const FiniteMonoid& h, HSubset a, HSubset b) {
  HSubset out = 0;
  for (int x = 0; x < h.size(); ++x) {
    if (!(a & (HSubset{1} << x))) continue;
    for (int y = 0; y < h.size(); ++y) {
      if (!(b & (HSubset{1} << y))) continue;
      out |= (HSubset{1} << h.op(x, y));
    }
  }
  return out;
}

HSubset apply_pointwise(const Transformation& f, HSubset a) {
  HSubset out = 0;
  for (size_t x = 0; x < f.size(); ++x) {
    if (a & (HSubset{1} << x)) out |= (HSubset{1} << f[x]);
  }
  return out;
}

HSubset gp_node(const Homomorphism& phi, const Node& n,
                const std::map<std::string, HSubset>& subsets, HSubset boxval);

HSubset gp_seq(const Homomorphism& phi, const std::vector<Node>& seq,
               const std::map<std::string, HSubset>& subsets, HSubset boxval) {
  const ForestAlgebra& A = phi.alg();
  HSubset acc = HSubset{1} << A.h.identity;
  for (const auto& n : seq) {
    acc = sum_sets(A.h, acc, gp_node(phi, n, subsets, boxval));
  }
  return acc;
}

HSubset gp_node(const Homomorphism& phi, const Node& n,
                const std::map<std::string, HSubset>& subsets, HSubset boxval) {
  const ForestAlgebra& A = phi.alg();
  switch (n.kind) {
    case Node::Kind::Box:
      if (boxval == 0) throw AlgebraError("box port without a box value");
      return boxval;
    case Node::Kind::Port: {
      auto it = subsets.find(n.label);
      if (it == subsets.end()) it = subsets.find(n.input_label());
      if (it == subsets.end() || it->second == 0) {
        throw AlgebraError("port '" + n.label + "' has no nonempty subset");
      }
      return it->second;
    }
    case Node::Kind::Interior: {
      if (n.is_leaf()) {
        auto ext = phi.leaf_extension.find(n.label);
        if (ext != phi.leaf_extension.end() &&
            !phi.letter_action.count(n.label)) {
          return HSubset{1} << ext->second;
        }
      }
      HSubset inner = gp_seq(phi, n.children, subsets, boxval);
      return apply_pointwise(A.v.elems[phi.action(n.label)], inner);
    }
  }
  throw AlgebraError("unreachable");
}

}  // namespace

HSubset gpercent_image(const Homomorphism& phi, const Term& m,
                       const std::map<std::string, HSubset>& port_subsets,
                       HSubset box_value) {
  if (phi.alg().h.size() > 63) {
    throw AlgebraError("extended algebra requires |H| <= 63");
  }
  return gp_seq(phi, m.roots(), port_subsets, box_value);
}

ExtendedElement::ExtendedElement(const Homomorphism& phi, Term w,
                                 std::map<std::string, HSubset> port_subsets)
    : phi_(&phi),
      w_(std::move(w)),
      subsets_(std::move(port_subsets)),
      hsize_(phi.alg().h.size()) {
  if (!w_.has_box()) throw AlgebraError("extended element needs a box port");
  dense_ = hsize_ <= 12;
  if (dense_) {
    size_t n = size_t{1} << hsize_;
    table_.assign(n, 0);
    for (HSubset f = 1; f < n; ++f) {
      table_[f] = gpercent_image(*phi_, w_, subsets_, f);
    }
  }
}

HSubset ExtendedElement::apply(HSubset f) const {
  if (f == 0) throw AlgebraError("extended element applied to empty subset");
  if (dense_) return table_[f];
  auto it = memo_.find(f);
  if (it != memo_.end()) return it->second;
  HSubset out = gpercent_image(*phi_, w_, subsets_, f);
  memo_.emplace(f, out);
  return out;
}

bool ExtendedElement::same_as(const ExtendedElement& other) const {
  if (!dense_ || !other.dense_) {
    throw AlgebraError("full comparison needs dense tables");
  }
  return hsize_ == other.hsize_ && table_ == other.table_;
}

ThresholdPeriod ExtendedElement::threshold_period(
    const std::vector<HSubset>& seeds) const {
  if (dense_) {
    // threshold/period of the table under self-composition
    std::map<std::vector<HSubset>, int> seen;
    std::vector<HSubset> cur = table_;
    int k = 1;
    while (true) {
      auto [it, fresh] = seen.emplace(cur, k);
      if (!fresh) return ThresholdPeriod{it->second, k - it->second};
      std::vector<HSubset> next(cur.size());
      for (size_t f = 1; f < cur.size(); ++f) next[f] = cur[table_[f]];
      // note: iterate as T^(k+1)(f) = T^k(T(f))
      cur = std::move(next);
      ++k;
    }
  }
  // Lazy: orbit of the seed vector.
  if (seeds.empty()) throw AlgebraError("lazy threshold/period needs seeds");
  std::map<std::vector<HSubset>, int> seen;
  std::vector<HSubset> cur;
  for (HSubset s : seeds) cur.push_back(apply(s));
  int k = 1;
  while (true) {
    auto [it, fresh] = seen.emplace(cur, k);
    if (!fresh) return ThresholdPeriod{it->second, k - it->second};
    for (auto& s : cur) s = apply(s);
    ++k;
  }
}

PumpedTerm PumpedTerm::make(std::vector<Term> base, std::string z_label,
                            int exponent) {
  PumpedTerm p;
  std::map<std::string, Term> seen;
  for (const auto& t : base) {
    Term c = canonical_form(t);
    seen.emplace(format_term(c), c);
  }
  for (auto& [k, v] : seen) p.base.push_back(v);
  p.z_label = std::move(z_label);
  p.exponent = exponent;
  return p;
}

bool pump_equiv(const PumpedTerm& p, const PumpedTerm& q, TauPi sr) {
  if (p.z_label != q.z_label) return false;
  if (p.base.size() != q.base.size()) return false;
  for (size_t i = 0; i < p.base.size(); ++i) {
    if (!equal_canonical(p.base[i], q.base[i])) return false;
  }
  if (cap_count(p.exponent, sr.tau, sr.pi) !=
      cap_count(q.exponent, sr.tau, sr.pi)) {
    return false;
  }
  if (p.nested.size() != q.nested.size()) return false;
  for (const auto& [label, sub] : p.nested) {
    auto it = q.nested.find(label);
    if (it == q.nested.end()) return false;
    if (!pump_equiv(*sub, *it->second, sr)) return false;
  }
  return true;
}

PumpFalsifyResult pump_refinement_falsify(
    const Homomorphism& phi, const std::vector<Term>& base,
    const std::string& z_label, TauPi sr, int size_budget,
    const std::vector<Letter>& leaf_letters) {
  PumpFalsifyResult res;
  // Exponent pairs equivalent under (sigma, rho) but distinct.
  std::vector<std::pair<int, int>> exps;
  int max_theta = size_budget;  // a pumped copy has at least one node
  for (int a = 1; a <= max_theta; ++a) {
    for (int b = a + 1; b <= max_theta; ++b) {
      if (cmp_tau_pi(a, b, sr)) exps.emplace_back(a, b);
    }
  }
  for (const auto& [ta, tb] : exps) {
    std::vector<Term> fam_a = pump(base, z_label, ta);
    std::vector<Term> fam_b = pump(base, z_label, tb);
    for (const Term& ma : fam_a) {
      if (ma.size() > size_budget) continue;
      for (const Term& mb : fam_b) {
        if (mb.size() > size_budget) continue;
        // complete all ports with every choice of leaf letters, one letter
        // per input label
        auto labels_a = ma.port_input_labels();
        auto labels_b = mb.port_input_labels();
        std::set<std::string> labels;
        for (const auto& [n, l] : labels_a) labels.insert(l);
        for (const auto& [n, l] : labels_b) labels.insert(l);
        std::vector<std::string> ls(labels.begin(), labels.end());
        std::vector<size_t> pick(ls.size(), 0);
        while (true) {
          std::map<std::string, std::string> by_label;
          for (size_t i = 0; i < ls.size(); ++i) by_label[ls[i]] = leaf_letters[pick[i]];
          auto complete = [&](const Term& m) {
            std::map<std::string, std::string> chi;
            for (const auto& [name, lab] : m.port_input_labels()) {
              chi[name] = by_label[lab];
            }
            return leaf_completion(m, chi);
          };
          Term sa = complete(ma);
          Term sb = complete(mb);
          ++res.pairs_tested;
          int ia = hom_eval_h(phi, sa);
          int ib = hom_eval_h(phi, sb);
          if (ia != ib) {
            res.found = true;
            res.s = sa;
            res.t = sb;
            res.image_s = ia;
            res.image_t = ib;
            return res;
          }
          size_t i = 0;
          for (; i < pick.size(); ++i) {
            if (++pick[i] < leaf_letters.size()) break;
            pick[i] = 0;
          }
          if (i == pick.size()) break;
        }
      }
    }
  }
  return res;
}

}  // namespace fab
