// henkin-forge :: syntax
//
// Abstract syntax, parsing, printing, canonical ordering and enumeration of
// first-order terms, formulas and sentences over a signature.
//
// All syntax values are immutable after construction and safe to share
// across threads; every operation in this header is a pure function.

#ifndef HENKIN_SYNTAX_HPP_
#define HENKIN_SYNTAX_HPP_

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace henkin {

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexical/syntactic/arity/scope problems in user input, with position info.
struct ParseError : Error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_)
      : Error("parse error at " + std::to_string(line_) + ":" +
              std::to_string(col_) + ": " + msg),
        line(line_), column(col_) {}
};

// A configured budget or cap was exceeded (witness cap, search-space cap, ...).
struct ResourceError : Error {
  explicit ResourceError(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// Signature

inline bool valid_user_name(const std::string& s) {
  if (s.empty() || (s[0] >= '0' && s[0] <= '9')) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '\'';
    if (!ok) return false;
  }
  return true;
}

// Witness constants are named w$<level>$<index>; the w$ prefix is reserved.
inline bool valid_witness_name(const std::string& s) {
  if (s.size() < 4 || s[0] != 'w' || s[1] != '$') return false;
  size_t i = 2, start = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') i++;
  if (i == start || i >= s.size() || s[i] != '$') return false;
  start = ++i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') i++;
  return i == s.size() && i > start;
}

// Internal prover constants d$<n> (fresh existential witnesses inside the
// tableau); never part of a user signature.
inline bool valid_internal_name(const std::string& s) {
  if (s.size() < 3 || s[0] != 'd' || s[1] != '$') return false;
  for (size_t i = 2; i < s.size(); i++)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline bool reserved_word(const std::string& s) {
  static const char* kw[] = {"fn",     "rel",    "axiom", "forall", "exists",
                             "true",   "false",  "map",   "size",   "source",
                             "target"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

// Function and relation symbols with arities. Function and relation name
// sets are disjoint; arity-0 functions are constants, arity-0 relations are
// propositional atoms.
struct Signature {
  std::map<std::string, int> functions;
  std::map<std::string, int> relations;

  static void check_name(const std::string& name) {
    if (reserved_word(name)) throw Error("symbol name '" + name + "' is a reserved word");
    if (!valid_user_name(name) && !valid_witness_name(name) && !valid_internal_name(name))
      throw Error("invalid symbol name '" + name + "'");
  }

  void add_function(const std::string& name, int arity) {
    check_name(name);
    if (arity < 0) throw Error("negative arity for '" + name + "'");
    if (functions.count(name) || relations.count(name))
      throw Error("duplicate symbol '" + name + "'");
    functions[name] = arity;
  }
  void add_relation(const std::string& name, int arity) {
    check_name(name);
    if (arity < 0) throw Error("negative arity for '" + name + "'");
    if (functions.count(name) || relations.count(name))
      throw Error("duplicate symbol '" + name + "'");
    relations[name] = arity;
  }

  bool has_function(const std::string& n) const { return functions.count(n) > 0; }
  bool has_relation(const std::string& n) const { return relations.count(n) > 0; }
  bool has_symbol(const std::string& n) const { return has_function(n) || has_relation(n); }

  int fn_arity(const std::string& n) const {
    auto it = functions.find(n);
    if (it == functions.end()) throw Error("unknown function '" + n + "'");
    return it->second;
  }
  int rel_arity(const std::string& n) const {
    auto it = relations.find(n);
    if (it == relations.end()) throw Error("unknown relation '" + n + "'");
    return it->second;
  }

  std::vector<std::string> constants() const {
    std::vector<std::string> out;
    for (const auto& [n, a] : functions)
      if (a == 0) out.push_back(n);
    return out;
  }

  // True if any symbol carries the reserved witness prefix.
  bool has_witness_symbols() const {
    for (const auto& [n, a] : functions)
      if (valid_witness_name(n)) return true;
    return false;
  }

  bool operator==(const Signature& o) const {
    return functions == o.functions && relations == o.relations;
  }
  bool operator!=(const Signature& o) const { return !(*this == o); }

  // Subset inclusion on symbols (with equal arities).
  bool subset_of(const Signature& o) const {
    for (const auto& [n, a] : functions) {
      auto it = o.functions.find(n);
      if (it == o.functions.end() || it->second != a) return false;
    }
    for (const auto& [n, a] : relations) {
      auto it = o.relations.find(n);
      if (it == o.relations.end() || it->second != a) return false;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  // A term is either a variable or an application f(t1,...,tn); n may be 0.
  static Term var(const std::string& name) {
    return Term(std::make_shared<Node>(Node{true, name, {}}));
  }
  static Term app(const std::string& fn, std::vector<Term> args = {}) {
    return Term(std::make_shared<Node>(Node{false, fn, std::move(args)}));
  }
  static Term constant(const std::string& c) { return app(c, {}); }

  bool is_var() const { return node_->is_var; }
  const std::string& sym() const { return node_->sym; }
  const std::vector<Term>& args() const { return node_->args; }

  int depth() const {
    if (node_->is_var || node_->args.empty()) return 0;
    int d = 0;
    for (const Term& t : node_->args) d = std::max(d, t.depth());
    return d + 1;
  }

  bool closed() const {
    if (node_->is_var) return false;
    for (const Term& t : node_->args)
      if (!t.closed()) return false;
    return true;
  }

  void collect_vars(std::set<std::string>& out) const {
    if (node_->is_var) { out.insert(node_->sym); return; }
    for (const Term& t : node_->args) t.collect_vars(out);
  }

  bool operator==(const Term& o) const {
    if (node_ == o.node_) return true;
    if (node_->is_var != o.node_->is_var || node_->sym != o.node_->sym ||
        node_->args.size() != o.node_->args.size())
      return false;
    for (size_t i = 0; i < node_->args.size(); i++)
      if (!(node_->args[i] == o.node_->args[i])) return false;
    return true;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  struct Node {
    bool is_var;
    std::string sym;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Formulas

enum class Fk { True, False, Eq, Rel, Not, And, Or, Implies, Forall, Exists };

class Formula {
 public:
  static Formula truth() { return mk(Fk::True); }
  static Formula falsity() { return mk(Fk::False); }
  static Formula eq(Term l, Term r) {
    auto f = mk(Fk::Eq);
    f.node_mut()->terms = {std::move(l), std::move(r)};
    return f;
  }
  static Formula rel(const std::string& r, std::vector<Term> args = {}) {
    auto f = mk(Fk::Rel);
    f.node_mut()->sym = r;
    f.node_mut()->terms = std::move(args);
    return f;
  }
  static Formula neg(Formula a) {
    auto f = mk(Fk::Not);
    f.node_mut()->kids = {std::move(a)};
    return f;
  }
  static Formula conj(Formula a, Formula b) { return bin(Fk::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return bin(Fk::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return bin(Fk::Implies, std::move(a), std::move(b)); }
  static Formula forall(const std::string& v, Formula body) {
    auto f = mk(Fk::Forall);
    f.node_mut()->sym = v;
    f.node_mut()->kids = {std::move(body)};
    return f;
  }
  static Formula exists(const std::string& v, Formula body) {
    auto f = mk(Fk::Exists);
    f.node_mut()->sym = v;
    f.node_mut()->kids = {std::move(body)};
    return f;
  }

  Fk kind() const { return node_->kind; }
  // Relation name or bound-variable name, depending on kind.
  const std::string& sym() const { return node_->sym; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const Term& lhs() const { return node_->terms[0]; }
  const Term& rhs() const { return node_->terms[1]; }
  const Formula& child(size_t i = 0) const { return node_->kids[i]; }
  const Formula& body() const { return node_->kids[0]; }
  size_t num_children() const { return node_->kids.size(); }

  bool is_atom() const {
    Fk k = node_->kind;
    return k == Fk::True || k == Fk::False || k == Fk::Eq || k == Fk::Rel;
  }
  bool is_quantifier() const {
    return node_->kind == Fk::Forall || node_->kind == Fk::Exists;
  }

  int depth() const {
    switch (node_->kind) {
      case Fk::True: case Fk::False: return 0;
      case Fk::Eq: case Fk::Rel: {
        int d = 0;
        for (const Term& t : node_->terms) d = std::max(d, t.depth());
        return d;
      }
      default: {
        int d = 0;
        for (const Formula& f : node_->kids) d = std::max(d, f.depth());
        return d + 1;
      }
    }
  }

  int quantifier_rank() const {
    switch (node_->kind) {
      case Fk::True: case Fk::False: case Fk::Eq: case Fk::Rel: return 0;
      case Fk::Forall: case Fk::Exists: return node_->kids[0].quantifier_rank() + 1;
      default: {
        int r = 0;
        for (const Formula& f : node_->kids) r = std::max(r, f.quantifier_rank());
        return r;
      }
    }
  }

  bool operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (node_->kind != o.node_->kind || node_->sym != o.node_->sym ||
        node_->terms.size() != o.node_->terms.size() ||
        node_->kids.size() != o.node_->kids.size())
      return false;
    for (size_t i = 0; i < node_->terms.size(); i++)
      if (node_->terms[i] != o.node_->terms[i]) return false;
    for (size_t i = 0; i < node_->kids.size(); i++)
      if (!(node_->kids[i] == o.node_->kids[i])) return false;
    return true;
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node {
    Fk kind;
    std::string sym;
    std::vector<Term> terms;
    std::vector<Formula> kids;
  };
  static Formula mk(Fk k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return Formula(n);
  }
  static Formula bin(Fk k, Formula a, Formula b) {
    auto f = mk(k);
    f.node_mut()->kids = {std::move(a), std::move(b)};
    return f;
  }
  Node* node_mut() { return const_cast<Node*>(node_.get()); }
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Free variables, substitution

namespace detail {
inline void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  switch (f.kind()) {
    case Fk::True: case Fk::False: return;
    case Fk::Eq: case Fk::Rel: {
      std::set<std::string> vs;
      for (const Term& t : f.terms()) t.collect_vars(vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Fk::Forall: case Fk::Exists: {
      bool fresh = bound.insert(f.sym()).second;
      free_vars_rec(f.body(), bound, out);
      if (fresh) bound.erase(f.sym());
      return;
    }
    default:
      for (size_t i = 0; i < f.num_children(); i++)
        free_vars_rec(f.child(i), bound, out);
  }
}
}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars_rec(f, bound, out);
  return out;
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

inline Term substitute_term(const Term& t, const std::string& var, const Term& by) {
  if (t.is_var()) return t.sym() == var ? by : t;
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute_term(a, var, by));
  return Term::app(t.sym(), std::move(args));
}

// Capture-avoiding substitution of all free occurrences of `var` by `by`.
// For closed `by` (the witness-constant case) no renaming ever happens.
inline Formula substitute(const Formula& f, const std::string& var, const Term& by) {
  switch (f.kind()) {
    case Fk::True: case Fk::False: return f;
    case Fk::Eq:
      return Formula::eq(substitute_term(f.lhs(), var, by),
                         substitute_term(f.rhs(), var, by));
    case Fk::Rel: {
      std::vector<Term> args;
      for (const Term& t : f.terms()) args.push_back(substitute_term(t, var, by));
      return Formula::rel(f.sym(), std::move(args));
    }
    case Fk::Not: return Formula::neg(substitute(f.body(), var, by));
    case Fk::And: return Formula::conj(substitute(f.child(0), var, by), substitute(f.child(1), var, by));
    case Fk::Or:  return Formula::disj(substitute(f.child(0), var, by), substitute(f.child(1), var, by));
    case Fk::Implies:
      return Formula::implies(substitute(f.child(0), var, by), substitute(f.child(1), var, by));
    case Fk::Forall: case Fk::Exists: {
      if (f.sym() == var) return f;  // occurrences below are bound
      std::set<std::string> by_vars;
      by.collect_vars(by_vars);
      std::string binder = f.sym();
      Formula body = f.body();
      if (by_vars.count(binder)) {
        // rename the binder out of the way of the substituted term
        std::set<std::string> avoid = by_vars;
        std::set<std::string> bf = free_vars(body);
        avoid.insert(bf.begin(), bf.end());
        avoid.insert(var);
        std::string fresh = binder;
        while (avoid.count(fresh)) fresh += '\'';
        body = substitute(body, binder, Term::var(fresh));
        binder = fresh;
      }
      body = substitute(body, var, by);
      return f.kind() == Fk::Forall ? Formula::forall(binder, std::move(body))
                                    : Formula::exists(binder, std::move(body));
    }
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Canonical serialization and SentenceOrder
//
// Serialization is prefix notation; variables are printed with a '?' marker
// so they can never collide with a constant of the same name. Canonical form
// alpha-renames variables to v0,v1,... -- free variables first (in the given
// order), then binders in preorder -- skipping names already taken by
// signature symbols, so canonical formulas always pretty-print unambiguously.

inline void serialize_term(const Term& t, std::string& out) {
  if (t.is_var()) { out += '?'; out += t.sym(); return; }
  if (t.args().empty()) { out += t.sym(); return; }
  out += '(';
  out += t.sym();
  for (const Term& a : t.args()) { out += ' '; serialize_term(a, out); }
  out += ')';
}

inline void serialize_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Fk::True: out += "true"; return;
    case Fk::False: out += "false"; return;
    case Fk::Eq:
      out += "(= ";
      serialize_term(f.lhs(), out);
      out += ' ';
      serialize_term(f.rhs(), out);
      out += ')';
      return;
    case Fk::Rel:
      if (f.terms().empty()) { out += f.sym(); return; }
      out += '(';
      out += f.sym();
      for (const Term& t : f.terms()) { out += ' '; serialize_term(t, out); }
      out += ')';
      return;
    case Fk::Not:
      out += "(not ";
      serialize_formula(f.body(), out);
      out += ')';
      return;
    case Fk::And: case Fk::Or: case Fk::Implies:
      out += (f.kind() == Fk::And ? "(and " : f.kind() == Fk::Or ? "(or " : "(imp ");
      serialize_formula(f.child(0), out);
      out += ' ';
      serialize_formula(f.child(1), out);
      out += ')';
      return;
    case Fk::Forall: case Fk::Exists:
      out += (f.kind() == Fk::Forall ? "(forall ?" : "(exists ?");
      out += f.sym();
      out += ' ';
      serialize_formula(f.body(), out);
      out += ')';
      return;
  }
}

inline std::string serialize(const Formula& f) {
  std::string s;
  serialize_formula(f, s);
  return s;
}
inline std::string serialize(const Term& t) {
  std::string s;
  serialize_term(t, s);
  return s;
}

namespace detail {

struct Renamer {
  const Signature* sig;
  int next = 0;
  std::vector<std::pair<std::string, std::string>> env;  // old -> new, stack

  std::string fresh() {
    for (;;) {
      std::string name = "v" + std::to_string(next++);
      if (!sig || !sig->has_symbol(name)) return name;
    }
  }
  std::string lookup(const std::string& v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    return v;  // free variable not in the declared order: keep as-is
  }
};

inline Term rename_term(const Term& t, const Renamer& r) {
  if (t.is_var()) return Term::var(r.lookup(t.sym()));
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(rename_term(a, r));
  return Term::app(t.sym(), std::move(args));
}

inline Formula rename_formula(const Formula& f, Renamer& r) {
  switch (f.kind()) {
    case Fk::True: case Fk::False: return f;
    case Fk::Eq:
      return Formula::eq(rename_term(f.lhs(), r), rename_term(f.rhs(), r));
    case Fk::Rel: {
      std::vector<Term> args;
      for (const Term& t : f.terms()) args.push_back(rename_term(t, r));
      return Formula::rel(f.sym(), std::move(args));
    }
    case Fk::Not: return Formula::neg(rename_formula(f.body(), r));
    case Fk::And: case Fk::Or: case Fk::Implies: {
      Formula a = rename_formula(f.child(0), r);
      Formula b = rename_formula(f.child(1), r);
      return f.kind() == Fk::And ? Formula::conj(a, b)
           : f.kind() == Fk::Or  ? Formula::disj(a, b)
                                 : Formula::implies(a, b);
    }
    case Fk::Forall: case Fk::Exists: {
      std::string nv = r.fresh();
      r.env.emplace_back(f.sym(), nv);
      Formula body = rename_formula(f.body(), r);
      r.env.pop_back();
      return f.kind() == Fk::Forall ? Formula::forall(nv, body)
                                    : Formula::exists(nv, body);
    }
  }
  throw Error("unreachable");
}

}  // namespace detail

// Alpha-renames to canonical variable names. `free_order` lists the free
// variables that should receive the first canonical names (in that order);
// binders are then numbered in preorder. Signature symbols are skipped.
inline Formula canonicalize(const Formula& f, const Signature& sig,
                            const std::vector<std::string>& free_order = {}) {
  detail::Renamer r;
  r.sig = &sig;
  for (const std::string& v : free_order) r.env.emplace_back(v, r.fresh());
  return detail::rename_formula(f, r);
}

// Total order key on sentences: (depth, canonical serialization bytes).
struct SentenceKey {
  int depth;
  std::string bytes;
  bool operator<(const SentenceKey& o) const {
    if (depth != o.depth) return depth < o.depth;
    return bytes < o.bytes;
  }
  bool operator==(const SentenceKey& o) const {
    return depth == o.depth && bytes == o.bytes;
  }
};

inline SentenceKey sentence_key(const Formula& f, const Signature& sig,
                                const std::vector<std::string>& free_order = {}) {
  Formula c = canonicalize(f, sig, free_order);
  return SentenceKey{c.depth(), serialize(c)};
}

// Key for the order on terms (used for class representatives).
struct TermKey {
  int depth;
  std::string bytes;
  bool operator<(const TermKey& o) const {
    if (depth != o.depth) return depth < o.depth;
    return bytes < o.bytes;
  }
};
inline TermKey term_key(const Term& t) { return TermKey{t.depth(), serialize(t)}; }

// ---------------------------------------------------------------------------
// Arity/scope validation

namespace detail {
inline void check_term(const Term& t, const Signature& sig,
                       const std::set<std::string>& scope) {
  if (t.is_var()) {
    if (!scope.count(t.sym())) throw Error("unbound variable '" + t.sym() + "'");
    return;
  }
  int a = sig.fn_arity(t.sym());
  if ((size_t)a != t.args().size())
    throw Error("arity mismatch for '" + t.sym() + "'");
  for (const Term& x : t.args()) check_term(x, sig, scope);
}

inline void check_formula(const Formula& f, const Signature& sig,
                          std::set<std::string>& scope) {
  switch (f.kind()) {
    case Fk::True: case Fk::False: return;
    case Fk::Eq:
      check_term(f.lhs(), sig, scope);
      check_term(f.rhs(), sig, scope);
      return;
    case Fk::Rel: {
      int a = sig.rel_arity(f.sym());
      if ((size_t)a != f.terms().size())
        throw Error("arity mismatch for '" + f.sym() + "'");
      for (const Term& t : f.terms()) check_term(t, sig, scope);
      return;
    }
    case Fk::Forall: case Fk::Exists: {
      bool fresh = scope.insert(f.sym()).second;
      check_formula(f.body(), sig, scope);
      if (fresh) scope.erase(f.sym());
      return;
    }
    default:
      for (size_t i = 0; i < f.num_children(); i++) {
        auto c = f.child(i);
        check_formula(c, sig, scope);
      }
  }
}
}  // namespace detail

// Throws unless f is well-formed over sig with free variables from `scope`.
inline void validate_formula(const Formula& f, const Signature& sig,
                             const std::set<std::string>& scope = {}) {
  std::set<std::string> s = scope;
  detail::check_formula(f, sig, s);
}

// ---------------------------------------------------------------------------
// Pretty printer (concrete theory-file syntax)
//
//   forall x. exists y. P(x) & ~ s(y) = x -> Q
//
// Precedence: ~ > & > | > -> ; quantifiers extend to the end; & and | are
// left-associative, -> right-associative. print/parse are mutually inverse
// on formulas produced by this library (structural identity).

namespace detail {

inline void pretty_term(const Term& t, std::string& out) {
  out += t.sym();
  if (!t.is_var() && !t.args().empty()) {
    out += '(';
    for (size_t i = 0; i < t.args().size(); i++) {
      if (i) out += ", ";
      pretty_term(t.args()[i], out);
    }
    out += ')';
  }
}

// prec: 0 = top (quantifier scope), 1 = ->, 2 = |, 3 = &, 4 = unary
inline void pretty_formula(const Formula& f, int prec, std::string& out) {
  switch (f.kind()) {
    case Fk::True: out += "true"; return;
    case Fk::False: out += "false"; return;
    case Fk::Eq:
      pretty_term(f.lhs(), out);
      out += " = ";
      pretty_term(f.rhs(), out);
      return;
    case Fk::Rel:
      out += f.sym();
      if (!f.terms().empty()) {
        out += '(';
        for (size_t i = 0; i < f.terms().size(); i++) {
          if (i) out += ", ";
          pretty_term(f.terms()[i], out);
        }
        out += ')';
      }
      return;
    case Fk::Not:
      out += '~';
      if (f.body().is_atom() && f.body().kind() != Fk::Eq) {
        pretty_formula(f.body(), 4, out);
      } else {
        out += '(';
        pretty_formula(f.body(), 0, out);
        out += ')';
      }
      return;
    case Fk::And: case Fk::Or: case Fk::Implies: {
      int my = f.kind() == Fk::And ? 3 : f.kind() == Fk::Or ? 2 : 1;
      bool parens = prec > my;
      if (parens) out += '(';
      // left child: same level allowed for left-assoc (& |), stricter for ->
      pretty_formula(f.child(0), f.kind() == Fk::Implies ? my + 1 : my, out);
      out += f.kind() == Fk::And ? " & " : f.kind() == Fk::Or ? " | " : " -> ";
      pretty_formula(f.child(1), f.kind() == Fk::Implies ? my : my + 1, out);
      if (parens) out += ')';
      return;
    }
    case Fk::Forall: case Fk::Exists: {
      bool parens = prec > 0;
      if (parens) out += '(';
      out += f.kind() == Fk::Forall ? "forall " : "exists ";
      out += f.sym();
      out += ". ";
      pretty_formula(f.body(), 0, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace detail

inline std::string pretty(const Formula& f) {
  std::string s;
  detail::pretty_formula(f, 0, s);
  return s;
}
inline std::string pretty(const Term& t) {
  std::string s;
  detail::pretty_term(t, s);
  return s;
}

// ---------------------------------------------------------------------------
// Lexer / parser for the theory-file format
//
//   # comment
//   fn s/1;
//   rel P/2;
//   axiom forall x. P(x, s(x))
//
// Declarations end with ';'; an axiom ends at end of line.

namespace detail {

struct Token {
  enum Kind { Ident, Int, Punct, Eol, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    // skip spaces and comments, tracking newlines as Eol tokens
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        tok_ = {Token::Eol, "\n", line_, col_};
        pos_++; line_++; col_ = 1;
        return;
      }
      if (c == ' ' || c == '\t' || c == '\r') { pos_++; col_++; continue; }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') pos_++;
        continue;
      }
      break;
    }
    if (pos_ >= src_.size()) { tok_ = {Token::End, "", line_, col_}; return; }
    int l = line_, c0 = col_;
    char c = src_[pos_];
    auto ident_char = [](char x) {
      return (x >= 'a' && x <= 'z') || (x >= 'A' && x <= 'Z') ||
             (x >= '0' && x <= '9') || x == '_' || x == '\'' || x == '$';
    };
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '\'') {
      size_t s = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) { pos_++; col_++; }
      tok_ = {Token::Ident, src_.substr(s, pos_ - s), l, c0};
      return;
    }
    if (c >= '0' && c <= '9') {
      size_t s = pos_;
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') { pos_++; col_++; }
      tok_ = {Token::Int, src_.substr(s, pos_ - s), l, c0};
      return;
    }
    // multi-char punct: ->
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      pos_ += 2; col_ += 2;
      tok_ = {Token::Punct, "->", l, c0};
      return;
    }
    static const std::string punct = "()/;,.=&|~{}[]";
    if (punct.find(c) != std::string::npos) {
      pos_++; col_++;
      tok_ = {Token::Punct, std::string(1, c), l, c0};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, c0);
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class FormulaParser {
 public:
  FormulaParser(Lexer& lex, const Signature& sig) : lex_(lex), sig_(sig) {}

  // Parses until end of line / closing context.
  Formula parse() { return parse_formula(); }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw ParseError(msg, t.line, t.col);
  }

  void skip_eol_inside() {
    // Newlines inside parentheses are insignificant.
    while (depth_ > 0 && lex_.peek().kind == Token::Eol) lex_.take();
  }

  bool at_punct(const std::string& p) {
    skip_eol_inside();
    return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
  }
  bool at_ident(const std::string& s) {
    skip_eol_inside();
    return lex_.peek().kind == Token::Ident && lex_.peek().text == s;
  }
  Token expect_punct(const std::string& p) {
    skip_eol_inside();
    Token t = lex_.take();
    if (t.kind != Token::Punct || t.text != p) fail("expected '" + p + "'", t);
    return t;
  }

  Formula parse_formula() {
    skip_eol_inside();
    if (at_ident("forall") || at_ident("exists")) return parse_quantifier();
    Formula left = parse_or();
    if (at_punct("->")) {
      lex_.take();
      Formula right = parse_formula();  // right-assoc; may be a quantifier
      return Formula::implies(std::move(left), std::move(right));
    }
    return left;
  }

  Formula parse_quantifier() {
    Token q = lex_.take();
    skip_eol_inside();
    Token v = lex_.take();
    if (v.kind != Token::Ident) fail("expected variable after '" + q.text + "'", v);
    if (reserved_word(v.text)) fail("'" + v.text + "' is a reserved word", v);
    expect_punct(".");
    bound_.push_back(v.text);
    Formula body = parse_formula();
    bound_.pop_back();
    return q.text == "forall" ? Formula::forall(v.text, std::move(body))
                              : Formula::exists(v.text, std::move(body));
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (at_punct("|")) {
      lex_.take();
      Formula g = parse_and();
      f = Formula::disj(std::move(f), std::move(g));
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (at_punct("&")) {
      lex_.take();
      Formula g = parse_unary();
      f = Formula::conj(std::move(f), std::move(g));
    }
    return f;
  }

  Formula parse_unary() {
    skip_eol_inside();
    if (at_punct("~")) {
      lex_.take();
      return Formula::neg(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_eol_inside();
    Token t = lex_.peek();
    if (t.kind == Token::Punct && t.text == "(") {
      lex_.take();
      depth_++;
      Formula f = parse_formula();
      expect_punct(")");
      depth_--;
      return f;
    }
    if (t.kind != Token::Ident) fail("expected formula", t);
    if (t.text == "true") { lex_.take(); return Formula::truth(); }
    if (t.text == "false") { lex_.take(); return Formula::falsity(); }

    // relation atom or term (of an equality)
    if (sig_.has_relation(t.text)) {
      Token head = lex_.take();
      std::vector<Term> args;
      if (at_punct("(")) args = parse_args();
      int a = sig_.rel_arity(head.text);
      if ((size_t)a != args.size()) fail("arity mismatch for '" + head.text + "'", head);
      return Formula::rel(head.text, std::move(args));
    }
    Token head = t;
    Term l = parse_term();
    if (!at_punct("=")) {
      if (!sig_.has_symbol(head.text) && !is_bound(head.text))
        fail("unknown relation " + head.text, head);
      fail("expected '=' after term", lex_.peek());
    }
    lex_.take();
    Term r = parse_term();
    return Formula::eq(std::move(l), std::move(r));
  }

  bool is_bound(const std::string& v) const {
    return std::find(bound_.begin(), bound_.end(), v) != bound_.end();
  }

  Term parse_term() {
    skip_eol_inside();
    Token t = lex_.take();
    if (t.kind != Token::Ident) fail("expected term", t);
    if (reserved_word(t.text)) fail("'" + t.text + "' is a reserved word", t);
    if (is_bound(t.text)) return Term::var(t.text);
    if (sig_.has_function(t.text)) {
      std::vector<Term> args;
      if (at_punct("(")) args = parse_args();
      int a = sig_.fn_arity(t.text);
      if ((size_t)a != args.size()) fail("arity mismatch for '" + t.text + "'", t);
      return Term::app(t.text, std::move(args));
    }
    if (sig_.has_relation(t.text)) fail("relation '" + t.text + "' used as a term", t);
    fail("unbound variable '" + t.text + "'", t);
  }

  std::vector<Term> parse_args() {
    expect_punct("(");
    depth_++;
    std::vector<Term> args;
    if (!at_punct(")")) {
      args.push_back(parse_term());
      while (at_punct(",")) {
        lex_.take();
        args.push_back(parse_term());
      }
    }
    expect_punct(")");
    depth_--;
    return args;
  }

  Lexer& lex_;
  const Signature& sig_;
  std::vector<std::string> bound_;
  int depth_ = 0;  // parenthesis nesting; newlines are soft inside parens
};

}  // namespace detail

struct ParsedTheory {
  Signature sig;
  std::vector<Formula> axioms;
};

// Parses the line-oriented theory-file format. Witness-constant declarations
// (w$...) are accepted so extended theories written by the tool round-trip.
inline ParsedTheory parse_theory_file(const std::string& text) {
  detail::Lexer lex(text);
  ParsedTheory out;
  for (;;) {
    while (lex.peek().kind == detail::Token::Eol) lex.take();
    if (lex.peek().kind == detail::Token::End) break;
    detail::Token t = lex.take();
    if (t.kind != detail::Token::Ident)
      throw ParseError("expected 'fn', 'rel' or 'axiom'", t.line, t.col);
    if (t.text == "fn" || t.text == "rel") {
      detail::Token name = lex.take();
      if (name.kind != detail::Token::Ident)
        throw ParseError("expected symbol name", name.line, name.col);
      detail::Token slash = lex.take();
      if (slash.kind != detail::Token::Punct || slash.text != "/")
        throw ParseError("expected '/'", slash.line, slash.col);
      detail::Token ar = lex.take();
      if (ar.kind != detail::Token::Int)
        throw ParseError("expected arity", ar.line, ar.col);
      detail::Token semi = lex.take();
      if (semi.kind != detail::Token::Punct || semi.text != ";")
        throw ParseError("expected ';'", semi.line, semi.col);
      try {
        if (t.text == "fn")
          out.sig.add_function(name.text, std::stoi(ar.text));
        else
          out.sig.add_relation(name.text, std::stoi(ar.text));
      } catch (const Error& e) {
        throw ParseError(e.what(), name.line, name.col);
      }
    } else if (t.text == "axiom") {
      detail::FormulaParser fp(lex, out.sig);
      Formula f = fp.parse();
      auto fv = free_vars(f);
      if (!fv.empty())
        throw ParseError("axiom has free variable '" + *fv.begin() + "'", t.line, t.col);
      out.axioms.push_back(std::move(f));
      // statement ends at end of line
      if (lex.peek().kind != detail::Token::Eol && lex.peek().kind != detail::Token::End)
        throw ParseError("unexpected trailing input after axiom",
                         lex.peek().line, lex.peek().col);
    } else {
      throw ParseError("expected 'fn', 'rel' or 'axiom', got '" + t.text + "'",
                       t.line, t.col);
    }
  }
  return out;
}

// Convenience: parse one formula over a given signature (tests, tools).
inline Formula parse_formula(const std::string& text, const Signature& sig) {
  detail::Lexer lex(text);
  detail::FormulaParser fp(lex, sig);
  Formula f = fp.parse();
  if (lex.peek().kind != detail::Token::End && lex.peek().kind != detail::Token::Eol)
    throw ParseError("unexpected trailing input", lex.peek().line, lex.peek().col);
  return f;
}

inline std::string print_theory_file(const Signature& sig,
                                     const std::vector<Formula>& axioms) {
  std::string out;
  for (const auto& [n, a] : sig.functions)
    out += "fn " + n + "/" + std::to_string(a) + ";\n";
  for (const auto& [n, a] : sig.relations)
    out += "rel " + n + "/" + std::to_string(a) + ";\n";
  for (const Formula& f : axioms) out += "axiom " + pretty(f) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration
//
// Sentences are streamed in SentenceOrder: ascending depth, then canonical
// byte order within a depth layer. Layers are produced lazily so a count
// bound never forces deeper layers (or their quantifier-body sets) to be
// materialized.

namespace detail {

struct Entry {
  Formula f;      // pool variable names x0,x1,... (free), binder names by nesting level
  SentenceKey key;
  int rank;
};

inline bool entry_less(const Entry& a, const Entry& b) { return a.key < b.key; }

// Pool variable name at index i (internal; emission canonicalizes).
inline std::string pool_var(int i) { return "x" + std::to_string(i); }

class FormulaSets {
 public:
  FormulaSets(const Signature& sig, int rank_bound)
      : sig_(sig), rank_bound_(rank_bound) {}

  // Terms of exact depth d with variables among x0..x_{k-1}.
  const std::vector<Term>& terms(int k, int d) {
    auto key = std::make_pair(k, d);
    auto it = terms_.find(key);
    if (it != terms_.end()) return it->second;
    std::vector<Term> out;
    if (d == 0) {
      for (int i = 0; i < k; i++) out.push_back(Term::var(pool_var(i)));
      for (const auto& c : sig_.constants()) out.push_back(Term::constant(c));
    } else {
      // f(t1..tn), max arg depth == d-1
      for (const auto& [fn, ar] : sig_.functions) {
        if (ar == 0) continue;
        std::vector<Term> args(ar);
        build_apps(fn, ar, 0, d, k, args, false, out);
      }
    }
    return terms_.emplace(key, std::move(out)).first->second;
  }

  // All terms of depth <= d (sorted by term key).
  std::vector<Term> terms_upto(int k, int d) {
    std::vector<Term> out;
    for (int i = 0; i <= d; i++) {
      const auto& v = terms(k, i);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  // Formulas of exact depth d, free vars among x0..x_{k-1}, sorted by key.
  const std::vector<Entry>& formulas(int k, int d) {
    auto key = std::make_pair(k, d);
    auto it = sets_.find(key);
    if (it != sets_.end()) return it->second;
    std::vector<Entry> out;
    add_atoms(k, d, out);
    if (d >= 1) {
      const auto& prev = formulas(k, d - 1);
      for (const Entry& e : prev) add(Formula::neg(e.f), e.rank, k, out);
      // binary: max(depth a, depth b) == d-1
      std::vector<const Entry*> le;  // depth <= d-1
      for (int i = 0; i < d; i++)
        for (const Entry& e : formulas(k, i)) le.push_back(&e);
      for (const Entry* a : le)
        for (const Entry* b : le) {
          if (std::max(a->f.depth(), b->f.depth()) != d - 1) continue;
          int r = std::max(a->rank, b->rank);
          if (r > rank_bound_) continue;
          add(Formula::conj(a->f, b->f), r, k, out);
          add(Formula::disj(a->f, b->f), r, k, out);
          add(Formula::implies(a->f, b->f), r, k, out);
        }
      if (rank_bound_ >= 1) {
        for (const Entry& e : formulas(k + 1, d - 1)) {
          if (e.rank + 1 > rank_bound_) continue;
          add(Formula::forall(pool_var(k), e.f), e.rank + 1, k, out);
          add(Formula::exists(pool_var(k), e.f), e.rank + 1, k, out);
        }
      }
    }
    std::sort(out.begin(), out.end(), entry_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Entry& a, const Entry& b) { return a.key == b.key; }),
              out.end());
    return sets_.emplace(key, std::move(out)).first->second;
  }

  // Atoms of exact depth d only (no recursion into compound layers).
  std::vector<Entry> atoms_exact(int k, int d) {
    std::vector<Entry> out;
    add_atoms(k, d, out);
    std::sort(out.begin(), out.end(), entry_less);
    return out;
  }

  SentenceKey key_of(const Formula& f, int k) const {
    std::vector<std::string> order;
    for (int i = 0; i < k; i++) order.push_back(pool_var(i));
    return sentence_key(f, sig_, order);
  }

 private:
  void add(Formula f, int rank, int k, std::vector<Entry>& out) const {
    SentenceKey key = key_of(f, k);
    out.push_back(Entry{std::move(f), std::move(key), rank});
  }

  void add_atoms(int k, int d, std::vector<Entry>& out) {
    if (d == 0) {
      add(Formula::falsity(), 0, k, out);
      add(Formula::truth(), 0, k, out);
    }
    // equalities with max side depth == d
    std::vector<Term> all = terms_upto(k, d);
    for (const Term& l : all)
      for (const Term& r : all) {
        if (std::max(l.depth(), r.depth()) != d) continue;
        add(Formula::eq(l, r), 0, k, out);
      }
    for (const auto& [rel, ar] : sig_.relations) {
      if (ar == 0) {
        if (d == 0) add(Formula::rel(rel), 0, k, out);
        continue;
      }
      std::vector<Term> args(ar);
      build_rel_atoms(rel, ar, 0, d, k, args, false, out);
    }
  }

  void build_rel_atoms(const std::string& rel, int ar, int i, int d, int k,
                       std::vector<Term>& args, bool has_d,
                       std::vector<Entry>& out) {
    if (i == ar) {
      if (has_d) add(Formula::rel(rel, args), 0, k, out);
      return;
    }
    for (int ad = 0; ad <= d; ad++) {
      bool now = has_d || ad == d;
      if (i == ar - 1 && !now) continue;
      for (const Term& t : terms(k, ad)) {
        args[i] = t;
        build_rel_atoms(rel, ar, i + 1, d, k, args, now, out);
      }
    }
  }

  void build_apps(const std::string& fn, int ar, int i, int d, int k,
                  std::vector<Term>& args, bool has_max,
                  std::vector<Term>& out) {
    if (i == ar) {
      if (has_max) out.push_back(Term::app(fn, args));
      return;
    }
    for (int ad = 0; ad <= d - 1; ad++) {
      bool now = has_max || ad == d - 1;
      if (i == ar - 1 && !now) continue;
      for (const Term& t : terms(k, ad)) {
        args[i] = t;
        build_apps(fn, ar, i + 1, d, k, args, now, out);
      }
    }
  }

  const Signature& sig_;
  int rank_bound_;
  std::map<std::pair<int, int>, std::vector<Term>> terms_;
  std::map<std::pair<int, int>, std::vector<Entry>> sets_;
};

// A lazy, sorted stream of depth-d sentence candidates.
class LayerStream {
 public:
  virtual ~LayerStream() = default;
  virtual const Entry* peek() = 0;  // nullptr when exhausted
  virtual void pop() = 0;
};

class VectorStream : public LayerStream {
 public:
  explicit VectorStream(std::vector<Entry> v) : v_(std::move(v)) {}
  const Entry* peek() override { return i_ < v_.size() ? &v_[i_] : nullptr; }
  void pop() override { i_++; }

 private:
  std::vector<Entry> v_;
  size_t i_ = 0;
};

// (op X Y) over sorted sentence lists, lazily in combined canonical order.
class BinaryStream : public LayerStream {
 public:
  BinaryStream(Fk op, const std::vector<Entry>* low, const std::vector<Entry>* exact,
               int rank_bound, const FormulaSets* sets)
      : op_(op), low_(low), exact_(exact), rank_bound_(rank_bound), sets_(sets) {
    advance_to_valid();
  }
  const Entry* peek() override { return has_ ? &cur_ : nullptr; }
  void pop() override {
    j_++;
    advance_to_valid();
  }

 private:
  const std::vector<Entry>& ylist(size_t i) const {
    // max depth must hit d-1: deep X pairs with anything, shallow X needs deep Y
    int dmax = exact_->empty() ? -1 : (*exact_)[0].f.depth();
    return (*low_)[i].f.depth() == dmax ? *low_ : *exact_;
  }
  void advance_to_valid() {
    has_ = false;
    while (i_ < low_->size()) {
      const auto& ys = ylist(i_);
      while (j_ < ys.size()) {
        const Entry& a = (*low_)[i_];
        const Entry& b = ys[j_];
        int r = std::max(a.rank, b.rank);
        if (r > rank_bound_) { j_++; continue; }
        Formula f = op_ == Fk::And ? Formula::conj(a.f, b.f)
                  : op_ == Fk::Or  ? Formula::disj(a.f, b.f)
                                   : Formula::implies(a.f, b.f);
        cur_ = Entry{f, sets_->key_of(f, 0), r};
        has_ = true;
        return;
      }
      i_++;
      j_ = 0;
    }
  }

  Fk op_;
  const std::vector<Entry>* low_;
  const std::vector<Entry>* exact_;
  int rank_bound_;
  const FormulaSets* sets_;
  size_t i_ = 0, j_ = 0;
  Entry cur_{Formula::truth(), {}, 0};
  bool has_ = false;
};

class QuantStream : public LayerStream {
 public:
  QuantStream(Fk op, const std::vector<Entry>* bodies, int rank_bound,
              const FormulaSets* sets)
      : op_(op), bodies_(bodies), rank_bound_(rank_bound), sets_(sets) {
    advance_to_valid();
  }
  const Entry* peek() override { return has_ ? &cur_ : nullptr; }
  void pop() override {
    i_++;
    advance_to_valid();
  }

 private:
  void advance_to_valid() {
    has_ = false;
    while (i_ < bodies_->size()) {
      const Entry& b = (*bodies_)[i_];
      if (b.rank + 1 > rank_bound_) { i_++; continue; }
      Formula f = op_ == Fk::Forall ? Formula::forall(pool_var(0), b.f)
                                    : Formula::exists(pool_var(0), b.f);
      cur_ = Entry{f, sets_->key_of(f, 0), b.rank + 1};
      has_ = true;
      return;
    }
  }

  Fk op_;
  const std::vector<Entry>* bodies_;
  int rank_bound_;
  const FormulaSets* sets_;
  size_t i_ = 0;
  Entry cur_{Formula::truth(), {}, 0};
  bool has_ = false;
};

class NotStream : public LayerStream {
 public:
  NotStream(const std::vector<Entry>* prev, const FormulaSets* sets)
      : prev_(prev), sets_(sets) {}
  const Entry* peek() override {
    if (i_ >= prev_->size()) return nullptr;
    if (!has_) {
      const Entry& e = (*prev_)[i_];
      Formula f = Formula::neg(e.f);
      cur_ = Entry{f, sets_->key_of(f, 0), e.rank};
      has_ = true;
    }
    return &cur_;
  }
  void pop() override {
    i_++;
    has_ = false;
  }

 private:
  const std::vector<Entry>* prev_;
  const FormulaSets* sets_;
  size_t i_ = 0;
  Entry cur_{Formula::truth(), {}, 0};
  bool has_ = false;
};

}  // namespace detail

// Streams sentences over `sig` in SentenceOrder: every sentence of depth
// <= depth_bound exactly once (deduplicated by canonical serialization), at
// most count_bound sentences, optionally restricted to quantifier rank
// <= rank_bound. Emitted formulas are canonical (variables v0,v1,...).
class SentenceEnumerator {
 public:
  SentenceEnumerator(const Signature& sig, int depth_bound, long long count_bound,
                     int rank_bound = 1 << 20)
      : sig_(sig),
        depth_bound_(depth_bound),
        count_bound_(count_bound),
        rank_bound_(std::min(rank_bound, depth_bound)),
        sets_(sig_, rank_bound_) {
    if (depth_bound < 0 || count_bound < 0) throw Error("enumeration bounds must be >= 0");
    if (depth_bound > 9)
      throw Error("sentence depth bound > 9 is not supported");
    begin_layer(0);
  }

  // Next sentence, already canonicalized, or nullopt at the end of the stream.
  std::optional<Formula> next() {
    for (;;) {
      if (emitted_ >= count_bound_) return std::nullopt;
      const detail::Entry* best = nullptr;
      size_t best_i = 0;
      for (size_t i = 0; i < streams_.size(); i++) {
        const detail::Entry* e = streams_[i]->peek();
        if (e && (!best || e->key < best->key)) { best = e; best_i = i; }
      }
      if (!best) {
        if (layer_ >= depth_bound_) return std::nullopt;
        finished_layers_.push_back(std::move(current_layer_));
        current_layer_.clear();
        begin_layer(layer_ + 1);
        continue;
      }
      detail::Entry e = *best;
      streams_[best_i]->pop();
      if (!current_layer_.empty() && current_layer_.back().key == e.key)
        continue;  // dedup by canonical serialization
      current_layer_.push_back(e);
      emitted_++;
      return canonicalize(e.f, sig_);
    }
  }

  const SentenceKey& last_key() const { return current_layer_.back().key; }

 private:
  void begin_layer(int d) {
    layer_ = d;
    streams_.clear();
    // ground atoms (and true/false at depth 0)
    streams_.push_back(std::make_unique<detail::VectorStream>(sets_.atoms_exact(0, d)));
    if (d >= 1) {
      // flattened sorted view of lower layers
      low_.clear();
      for (const auto& l : finished_layers_) low_.insert(low_.end(), l.begin(), l.end());
      std::sort(low_.begin(), low_.end(),
                [](const detail::Entry& a, const detail::Entry& b) {
                  return a.key.bytes < b.key.bytes;  // combined order is by bytes
                });
      exact_.clear();
      for (const detail::Entry& e : finished_layers_.back()) exact_.push_back(e);
      std::sort(exact_.begin(), exact_.end(),
                [](const detail::Entry& a, const detail::Entry& b) {
                  return a.key.bytes < b.key.bytes;
                });
      streams_.push_back(std::make_unique<detail::BinaryStream>(
          Fk::And, &low_, &exact_, rank_bound_, &sets_));
      streams_.push_back(std::make_unique<detail::BinaryStream>(
          Fk::Or, &low_, &exact_, rank_bound_, &sets_));
      streams_.push_back(std::make_unique<detail::BinaryStream>(
          Fk::Implies, &low_, &exact_, rank_bound_, &sets_));
      streams_.push_back(std::make_unique<detail::NotStream>(&finished_layers_.back(), &sets_));
      if (rank_bound_ >= 1) {
        streams_.push_back(std::make_unique<detail::QuantStream>(
            Fk::Forall, &sets_.formulas(1, d - 1), rank_bound_, &sets_));
        streams_.push_back(std::make_unique<detail::QuantStream>(
            Fk::Exists, &sets_.formulas(1, d - 1), rank_bound_, &sets_));
      }
    }
  }

  Signature sig_;
  int depth_bound_;
  long long count_bound_;
  int rank_bound_;
  detail::FormulaSets sets_;
  int layer_ = 0;
  long long emitted_ = 0;
  std::vector<std::vector<detail::Entry>> finished_layers_;
  std::vector<detail::Entry> current_layer_;
  std::vector<detail::Entry> low_, exact_;
  std::vector<std::unique_ptr<detail::LayerStream>> streams_;
};

// Materializing convenience wrapper.
inline std::vector<Formula> enumerate_sentences(const Signature& sig, int depth_bound,
                                                long long count_bound) {
  SentenceEnumerator en(sig, depth_bound, count_bound);
  std::vector<Formula> out;
  while (auto f = en.next()) out.push_back(std::move(*f));
  return out;
}

// All formulas with exactly one free variable, depth <= depth_bound, in
// SentenceOrder. Returned formulas are canonical: the free variable is the
// first canonical name (v0 unless taken by a signature symbol), binders
// follow. Used by the Henkin extension builder.
struct OpenFormula {
  Formula f;          // canonical
  std::string var;    // the canonical free variable name
  SentenceKey key;
};

inline std::string canonical_free_var(const Signature& sig) {
  detail::Renamer r;
  r.sig = &sig;
  return r.fresh();
}

inline std::vector<OpenFormula> enumerate_one_free_var(const Signature& sig,
                                                       int depth_bound) {
  if (depth_bound > 9) throw Error("formula depth bound > 9 is not supported");
  detail::FormulaSets sets(sig, 1 << 20);
  std::string fv = canonical_free_var(sig);
  std::vector<OpenFormula> out;
  for (int d = 0; d <= depth_bound; d++) {
    for (const detail::Entry& e : sets.formulas(1, d)) {
      auto fvs = free_vars(e.f);
      if (fvs.size() != 1 || !fvs.count(detail::pool_var(0))) continue;
      Formula canon = canonicalize(e.f, sig, {detail::pool_var(0)});
      out.push_back(OpenFormula{canon, fv, e.key});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const OpenFormula& a, const OpenFormula& b) { return a.key < b.key; });
  return out;
}

// ---------------------------------------------------------------------------
// Hashing (stable across runs and platforms; used for provenance records)

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; i--) {
    s[i] = d[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace henkin

#endif  // HENKIN_SYNTAX_HPP_
