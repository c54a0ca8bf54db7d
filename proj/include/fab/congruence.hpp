// fab/congruence.hpp — counting congruences on forests and contexts.
//
// The level-n class of a term is computed as an interned signature:
// level 1 counts node labels under the (tau, pi) cap; level n+1 counts,
// for every node, the triple of its label (trunk-marked inside contexts),
// the level-n signature of the forest below it and the level-n signature
// of its context. Signature ids are stable within one SignatureContext.

#ifndef FAB_CONGRUENCE_HPP
#define FAB_CONGRUENCE_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fab/algebra.hpp"
#include "fab/term.hpp"

namespace fab {

struct TauPi {
  int tau = 1;
  int pi = 1;
  bool operator==(const TauPi&) const = default;
};

// p and q agree up to threshold tau and period pi.
bool cmp_tau_pi(long long p, long long q, TauPi c);

using SigId = int;

class SignatureContext {
 public:
  explicit SignatureContext(TauPi c);

  TauPi params() const { return c_; }

  // Level-n signature of a term with no ports and at most one box.
  // Opaque leaf labels (outside any alphabet) are counted like letters.
  SigId signature(const Term& t, int level);

  bool is_context_sig(SigId id) const;
  // Stable digest of the payload (independent of id assignment order).
  std::string payload_digest(SigId id) const;

 private:
  struct Key {
    int term_id;
    int level;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return std::hash<long long>()((static_cast<long long>(k.term_id) << 8) ^
                                    k.level);
    }
  };

  int intern_term(const Term& canonical);
  SigId intern_payload(std::string payload, bool is_context);
  SigId compute(const Term& canonical, int level);

  TauPi c_;
  std::unordered_map<std::string, int> term_ids_;
  std::unordered_map<Key, SigId, KeyHash> memo_;
  std::unordered_map<std::string, SigId> payload_ids_;
  std::vector<std::string> payloads_;
  std::vector<bool> context_flag_;
};

// One-shot equivalence at level n (fresh signature context).
bool equiv_n(const Term& s, const Term& t, int n, TauPi c);

struct FalsifyResult {
  bool found = false;
  Term s, t;
  int image_s = -1, image_t = -1;
  long long examined = 0;
};

// Enumerates forests over the letters of phi by size, buckets them by
// level-n signature and reports the first bucket containing two forests
// with distinct images. Exhaustion is not a proof of refinement.
FalsifyResult refinement_falsify(const Homomorphism& phi, int n, TauPi c,
                                 int size_budget);

// Square matrix over the counting monoid N_{tau,pi}.
struct CounterMatrix {
  TauPi c;
  int dim = 0;
  std::vector<std::vector<int>> a;

  static CounterMatrix zero(TauPi c, int dim);
  bool operator==(const CounterMatrix&) const = default;
};

CounterMatrix mat_mul(const CounterMatrix& x, const CounterMatrix& y);

struct IdempotentPower {
  int omega = 1;
  CounterMatrix power;
};

// Least omega >= 1 with A^(2*omega) == A^omega.
IdempotentPower idempotent_power(const CounterMatrix& m);

}  // namespace fab

#endif  // FAB_CONGRUENCE_HPP
