// henkin-forge :: theory
//
// Theories, signature and theory morphisms, formula translation, morphism
// composition, and the Henkin extension builder (extended signature, witness
// constants, witness axioms, levels).

#ifndef HENKIN_THEORY_HPP_
#define HENKIN_THEORY_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "henkin/syntax.hpp"

namespace henkin {

struct Theory {
  Signature sig;
  std::vector<Formula> axioms;

  void validate() const {
    for (const Formula& f : axioms) {
      validate_formula(f, sig);
      if (!is_sentence(f)) throw Error("axiom is not a sentence: " + pretty(f));
    }
  }
};

inline std::string theory_hash(const Theory& t) {
  std::uint64_t h = fnv1a64("theory");
  for (const auto& [n, a] : t.sig.functions) h = fnv1a64("fn " + n + "/" + std::to_string(a), h);
  for (const auto& [n, a] : t.sig.relations) h = fnv1a64("rel " + n + "/" + std::to_string(a), h);
  for (const Formula& f : t.axioms) h = fnv1a64(serialize(canonicalize(f, t.sig)), h);
  return hex64(h);
}

// ---------------------------------------------------------------------------
// Signature morphisms and translation

// Arity-preserving symbol map, total on the source signature.
struct SignatureMorphism {
  Signature source, target;
  std::map<std::string, std::string> fn_map;
  std::map<std::string, std::string> rel_map;

  static SignatureMorphism identity(const Signature& sig) {
    SignatureMorphism m;
    m.source = m.target = sig;
    for (const auto& [n, a] : sig.functions) m.fn_map[n] = n;
    for (const auto& [n, a] : sig.relations) m.rel_map[n] = n;
    return m;
  }

  const std::string& map_fn(const std::string& n) const {
    auto it = fn_map.find(n);
    if (it == fn_map.end()) throw Error("function '" + n + "' not in morphism domain");
    return it->second;
  }
  const std::string& map_rel(const std::string& n) const {
    auto it = rel_map.find(n);
    if (it == rel_map.end()) throw Error("relation '" + n + "' not in morphism domain");
    return it->second;
  }

  void validate() const {
    for (const auto& [n, a] : source.functions) {
      auto it = fn_map.find(n);
      if (it == fn_map.end()) throw Error("morphism not total: function '" + n + "' unmapped");
      if (!target.has_function(it->second) || target.fn_arity(it->second) != a)
        throw Error("morphism does not preserve arity of '" + n + "'");
    }
    for (const auto& [n, a] : relations_of(source)) {
      auto it = rel_map.find(n);
      if (it == rel_map.end()) throw Error("morphism not total: relation '" + n + "' unmapped");
      if (!target.has_relation(it->second) || target.rel_arity(it->second) != a)
        throw Error("morphism does not preserve arity of '" + n + "'");
    }
  }

  bool is_identity_on(const Signature& sig) const {
    for (const auto& [n, a] : sig.functions) {
      auto it = fn_map.find(n);
      if (it == fn_map.end() || it->second != n) return false;
    }
    for (const auto& [n, a] : sig.relations) {
      auto it = rel_map.find(n);
      if (it == rel_map.end() || it->second != n) return false;
    }
    return true;
  }

 private:
  static const std::map<std::string, int>& relations_of(const Signature& s) {
    return s.relations;
  }
};

inline Term translate_term(const SignatureMorphism& sigma, const Term& t) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(translate_term(sigma, a));
  return Term::app(sigma.map_fn(t.sym()), std::move(args));
}

// Symbol-wise translation; variable structure and depth are unchanged.
inline Formula translate(const SignatureMorphism& sigma, const Formula& f) {
  switch (f.kind()) {
    case Fk::True: case Fk::False: return f;
    case Fk::Eq:
      return Formula::eq(translate_term(sigma, f.lhs()), translate_term(sigma, f.rhs()));
    case Fk::Rel: {
      std::vector<Term> args;
      for (const Term& t : f.terms()) args.push_back(translate_term(sigma, t));
      return Formula::rel(sigma.map_rel(f.sym()), std::move(args));
    }
    case Fk::Not: return Formula::neg(translate(sigma, f.body()));
    case Fk::And: return Formula::conj(translate(sigma, f.child(0)), translate(sigma, f.child(1)));
    case Fk::Or:  return Formula::disj(translate(sigma, f.child(0)), translate(sigma, f.child(1)));
    case Fk::Implies:
      return Formula::implies(translate(sigma, f.child(0)), translate(sigma, f.child(1)));
    case Fk::Forall: return Formula::forall(f.sym(), translate(sigma, f.body()));
    case Fk::Exists: return Formula::exists(f.sym(), translate(sigma, f.body()));
  }
  throw Error("unreachable");
}

inline SignatureMorphism compose(const SignatureMorphism& g, const SignatureMorphism& f) {
  if (f.target != g.source) throw Error("signature morphism endpoints do not match");
  SignatureMorphism out;
  out.source = f.source;
  out.target = g.target;
  for (const auto& [n, m] : f.fn_map) out.fn_map[n] = g.map_fn(m);
  for (const auto& [n, m] : f.rel_map) out.rel_map[n] = g.map_rel(m);
  return out;
}

// ---------------------------------------------------------------------------
// Theory morphisms
//
// A theory morphism carries its signature morphism plus the axiom-preservation
// status. Verification against the oracle lives in decision.hpp
// (verify_theory_morphism); a morphism whose check came back Unknown is
// Flagged and refused by downstream verification unless explicitly allowed.

enum class MorphismStatus { Unchecked, Verified, Flagged };

struct TheoryMorphism {
  SignatureMorphism sigma;
  Theory source, target;
  MorphismStatus status = MorphismStatus::Unchecked;
  std::vector<Formula> unknown_axioms;  // axioms whose preservation is undecided

  void validate_shape() const {
    if (sigma.source != source.sig || sigma.target != target.sig)
      throw Error("theory morphism signature endpoints do not match its theories");
    sigma.validate();
  }
};

inline TheoryMorphism identity_morphism(const Theory& t) {
  TheoryMorphism m;
  m.sigma = SignatureMorphism::identity(t.sig);
  m.source = m.target = t;
  m.status = MorphismStatus::Verified;
  return m;
}

inline TheoryMorphism compose(const TheoryMorphism& g, const TheoryMorphism& f) {
  if (!(f.target.sig == g.source.sig))
    throw Error("theory morphism endpoints do not match");
  if (theory_hash(f.target) != theory_hash(g.source))
    throw Error("theory morphism endpoints do not match (different theories)");
  TheoryMorphism out;
  out.sigma = compose(g.sigma, f.sigma);
  out.source = f.source;
  out.target = g.target;
  out.status = (f.status == MorphismStatus::Verified && g.status == MorphismStatus::Verified)
                   ? MorphismStatus::Verified
                   : (f.status == MorphismStatus::Unchecked || g.status == MorphismStatus::Unchecked)
                         ? MorphismStatus::Unchecked
                         : MorphismStatus::Flagged;
  return out;
}

// ---------------------------------------------------------------------------
// Henkin extension

struct Witness {
  std::string name;   // w$<level>$<index>
  int level;          // 1-based
  long long index;    // rank in the level's one-free-variable enumeration
  Formula formula;    // canonical, free variable `var`
  std::string var;
  Formula axiom;      // exists var. formula -> formula[var := name]
};

struct HenkinExtension {
  Theory base;
  Signature star_sig;
  int levels = 0;
  int formula_depth_bound = 0;
  std::vector<Witness> witnesses;              // level-major, index order
  std::map<std::string, size_t> witness_by_key;   // canonical formula bytes -> index
  std::map<std::string, size_t> witness_by_name;

  std::vector<Formula> henkin_axioms() const {
    std::vector<Formula> out;
    out.reserve(witnesses.size());
    for (const Witness& w : witnesses) out.push_back(w.axiom);
    return out;
  }

  // The extended theory: base axioms plus witness axioms over the extended
  // signature.
  Theory star_theory() const {
    Theory t;
    t.sig = star_sig;
    t.axioms = base.axioms;
    for (const Witness& w : witnesses) t.axioms.push_back(w.axiom);
    return t;
  }

  bool has_witness_for(const std::string& canonical_bytes) const {
    return witness_by_key.count(canonical_bytes) > 0;
  }
  const Witness* witness_for(const std::string& canonical_bytes) const {
    auto it = witness_by_key.find(canonical_bytes);
    return it == witness_by_key.end() ? nullptr : &witnesses[it->second];
  }
};

// Builds the leveled Henkin extension: at level k, every canonical formula
// with exactly one free variable and depth <= formula_depth_bound over the
// level-(k-1) signature that is not yet witnessed receives a fresh constant
// c and the axiom  exists x. phi(x) -> phi(c).
inline HenkinExtension henkinize(const Theory& t, int levels, int formula_depth_bound,
                                 long long witness_cap = 10000) {
  if (levels < 1) throw Error("henkinize: levels must be >= 1");
  if (formula_depth_bound < 0) throw Error("henkinize: formula depth bound must be >= 0");
  if (t.sig.has_witness_symbols())
    throw Error("henkinize: input signature already contains reserved w$ symbols");
  t.validate();

  HenkinExtension h;
  h.base = t;
  h.star_sig = t.sig;
  h.levels = levels;
  h.formula_depth_bound = formula_depth_bound;

  for (int level = 1; level <= levels; level++) {
    Signature level_sig = h.star_sig;  // signature the formulas range over
    std::vector<OpenFormula> open = enumerate_one_free_var(level_sig, formula_depth_bound);
    long long index = 0;
    std::vector<Witness> fresh;
    for (const OpenFormula& of : open) {
      long long my_index = index++;
      if (h.witness_by_key.count(of.key.bytes)) continue;  // witnessed at an earlier level
      std::string name = "w$" + std::to_string(level) + "$" + std::to_string(my_index);
      Witness w;
      w.name = name;
      w.level = level;
      w.index = my_index;
      w.formula = of.f;
      w.var = of.var;
      w.axiom = Formula::implies(Formula::exists(of.var, of.f),
                                 substitute(of.f, of.var, Term::constant(name)));
      fresh.push_back(std::move(w));
      if ((long long)(h.witnesses.size() + fresh.size()) > witness_cap)
        throw ResourceError("henkinize: witness count exceeds cap of " +
                            std::to_string(witness_cap));
    }
    for (Witness& w : fresh) {
      h.star_sig.add_function(w.name, 0);
      std::string key = serialize(w.formula);
      h.witness_by_key[key] = h.witnesses.size();
      h.witness_by_name[w.name] = h.witnesses.size();
      h.witnesses.push_back(std::move(w));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Extending a theory morphism to the Henkin extensions
//
// Maps each level-k witness c_phi of h1 to the witness of the translated
// formula in h2; base symbols map via f.sigma. h2 must have been built with
// bounds at least as generous as h1's.

inline TheoryMorphism extend_morphism_to_henkin(const TheoryMorphism& f,
                                                const HenkinExtension& h1,
                                                const HenkinExtension& h2) {
  if (theory_hash(h1.base) != theory_hash(f.source) ||
      theory_hash(h2.base) != theory_hash(f.target))
    throw Error("extend_morphism_to_henkin: extension bases do not match morphism endpoints");
  if (h2.levels < h1.levels)
    throw Error("extend_morphism_to_henkin: target extension has fewer levels");
  if (h2.formula_depth_bound < h1.formula_depth_bound)
    throw Error("extend_morphism_to_henkin: target extension has a smaller depth bound");

  TheoryMorphism out;
  out.sigma.source = h1.star_sig;
  out.sigma.target = h2.star_sig;
  out.sigma.fn_map = f.sigma.fn_map;
  out.sigma.rel_map = f.sigma.rel_map;
  out.source = h1.star_theory();
  out.target = h2.star_theory();
  out.status = f.status;
  out.unknown_axioms = f.unknown_axioms;

  // Level ascending: a level-k witness formula only mentions witnesses of
  // levels < k, whose images are already in the map.
  for (const Witness& w : h1.witnesses) {
    Formula translated = translate(out.sigma, w.formula);
    std::string key = serialize(canonicalize(translated, h2.star_sig, {w.var}));
    const Witness* target_w = h2.witness_for(key);
    if (!target_w)
      throw Error("extend_morphism_to_henkin: no target witness for " +
                  pretty(w.formula) + " (bound mismatch)");
    out.sigma.fn_map[w.name] = target_w->name;
  }
  out.validate_shape();
  return out;
}

}  // namespace henkin

#endif  // HENKIN_THEORY_HPP_
