//
// Copyright 2026 The tla2smt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Expression language of the untyped set-theory fragment: terms, formulas,
// set constructors, functions with domains, CHOOSE, integer arithmetic,
// plus the internal operators produced by the translation (boolify marks,
// alpha/omega applications).
//
// Binding uses a locally nameless representation: bound occurrences are
// de Bruijn indices, free occurrences carry names. Alpha-equivalent
// expressions are structurally equal; binder nodes keep a name hint that is
// ignored by comparison and used only for printing.

#ifndef TLA2SMT_EXPR_HPP_
#define TLA2SMT_EXPR_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tla2smt {

using Int = mpz_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Kind {
  // terms
  Var,      // free variable (named)
  BVar,     // bound variable (de Bruijn index); internal
  OpApp,    // application of a declared operator symbol, arity >= 0
  // formulas
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,  // binder
  Exists,  // binder
  Eq,
  In,
  // sets
  EmptySet,
  SetEnum,    // {e1, ..., en}, n >= 1
  SetFilter,  // {x \in S : P}; binder over P
  SetMap,     // {e : x \in S}; binder over e
  Subset,     // SUBSET S (power set)
  Union,      // UNION S (generalized union)
  Cup,        // S \cup T (binary union, defined operator)
  // choice
  Choose,  // binder
  // functions
  FcnApp,  // f[a]
  Domain,  // DOMAIN f
  Lambda,  // [x \in S |-> e]; binder over e
  FcnSet,  // [S -> T]
  // arithmetic
  IntLit,
  IntSet,  // Int
  NatSet,  // Nat
  Neg,
  Plus,
  Minus,
  Times,
  Lt,
  Range,  // a..b
  // conditional
  Ite,
  // internal: Boolification mark and domain-split application operators
  Boolified,
  AlphaApp,
  OmegaApp,
  IsAFcn,
  // records / tuples (removed by desugaring)
  StrLit,
  TupleLit,
  RecordLit,     // labels[i] names kids[i]
  RecordAccess,  // sym is the label
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  Kind kind;
  std::string sym;  // Var name / OpApp op / StrLit text / binder hint / label
  Int num;          // IntLit value
  int index = -1;   // BVar de Bruijn index
  std::vector<ExprPtr> kids;
  std::vector<std::string> labels;  // RecordLit field names

  explicit Expr(Kind k) : kind(k) {}
  Expr(Kind k, std::string s, std::vector<ExprPtr> ks = {})
      : kind(k), sym(std::move(s)), kids(std::move(ks)) {}
  Expr(Kind k, std::vector<ExprPtr> ks) : kind(k), kids(std::move(ks)) {}
};

// Does this kind introduce a binder, and is kid i in its scope?
inline bool binds(Kind k) {
  switch (k) {
    case Kind::Forall:
    case Kind::Exists:
    case Kind::Choose:
    case Kind::Lambda:
    case Kind::SetFilter:
    case Kind::SetMap:
      return true;
    default:
      return false;
  }
}

inline bool kid_scoped(Kind k, size_t i) {
  switch (k) {
    case Kind::Forall:
    case Kind::Exists:
    case Kind::Choose:
      return i == 0;
    case Kind::Lambda:     // kids = {domain, body}
    case Kind::SetFilter:  // kids = {domain, predicate}
      return i == 1;
    case Kind::SetMap:  // kids = {body, domain}
      return i == 0;
    default:
      return false;
  }
}

namespace mk {

inline ExprPtr node(Kind k, std::vector<ExprPtr> kids = {}) {
  auto e = std::make_shared<Expr>(k);
  e->kids = std::move(kids);
  return e;
}

inline ExprPtr var(const std::string& name) {
  return std::make_shared<Expr>(Kind::Var, name);
}

inline ExprPtr bvar(int i) {
  auto e = std::make_shared<Expr>(Kind::BVar);
  e->index = i;
  return e;
}

inline ExprPtr op(const std::string& name, std::vector<ExprPtr> args = {}) {
  return std::make_shared<Expr>(Kind::OpApp, name, std::move(args));
}

inline ExprPtr tru() { return node(Kind::True); }
inline ExprPtr fls() { return node(Kind::False); }
inline ExprPtr not_(ExprPtr a) { return node(Kind::Not, {std::move(a)}); }
inline ExprPtr and_(ExprPtr a, ExprPtr b) {
  return node(Kind::And, {std::move(a), std::move(b)});
}
inline ExprPtr or_(ExprPtr a, ExprPtr b) {
  return node(Kind::Or, {std::move(a), std::move(b)});
}
inline ExprPtr implies(ExprPtr a, ExprPtr b) {
  return node(Kind::Implies, {std::move(a), std::move(b)});
}
inline ExprPtr iff(ExprPtr a, ExprPtr b) {
  return node(Kind::Iff, {std::move(a), std::move(b)});
}
inline ExprPtr eq(ExprPtr a, ExprPtr b) {
  return node(Kind::Eq, {std::move(a), std::move(b)});
}
inline ExprPtr in(ExprPtr a, ExprPtr b) {
  return node(Kind::In, {std::move(a), std::move(b)});
}
inline ExprPtr empty() { return node(Kind::EmptySet); }
inline ExprPtr set_enum(std::vector<ExprPtr> es) {
  if (es.empty()) return empty();
  return node(Kind::SetEnum, std::move(es));
}
inline ExprPtr subset(ExprPtr s) { return node(Kind::Subset, {std::move(s)}); }
inline ExprPtr big_union(ExprPtr s) {
  return node(Kind::Union, {std::move(s)});
}
inline ExprPtr cup(ExprPtr a, ExprPtr b) {
  return node(Kind::Cup, {std::move(a), std::move(b)});
}
inline ExprPtr fcn_app(ExprPtr f, ExprPtr a) {
  return node(Kind::FcnApp, {std::move(f), std::move(a)});
}
inline ExprPtr domain(ExprPtr f) { return node(Kind::Domain, {std::move(f)}); }
inline ExprPtr fcn_set(ExprPtr s, ExprPtr t) {
  return node(Kind::FcnSet, {std::move(s), std::move(t)});
}
inline ExprPtr int_lit(Int v) {
  auto e = std::make_shared<Expr>(Kind::IntLit);
  e->num = std::move(v);
  return e;
}
inline ExprPtr int_lit(long v) { return int_lit(Int(v)); }
inline ExprPtr int_set() { return node(Kind::IntSet); }
inline ExprPtr nat_set() { return node(Kind::NatSet); }
inline ExprPtr neg(ExprPtr a) { return node(Kind::Neg, {std::move(a)}); }
inline ExprPtr plus(ExprPtr a, ExprPtr b) {
  return node(Kind::Plus, {std::move(a), std::move(b)});
}
inline ExprPtr minus(ExprPtr a, ExprPtr b) {
  return node(Kind::Minus, {std::move(a), std::move(b)});
}
inline ExprPtr times(ExprPtr a, ExprPtr b) {
  return node(Kind::Times, {std::move(a), std::move(b)});
}
inline ExprPtr lt(ExprPtr a, ExprPtr b) {
  return node(Kind::Lt, {std::move(a), std::move(b)});
}
inline ExprPtr range(ExprPtr a, ExprPtr b) {
  return node(Kind::Range, {std::move(a), std::move(b)});
}
inline ExprPtr ite(ExprPtr c, ExprPtr t, ExprPtr e) {
  return node(Kind::Ite, {std::move(c), std::move(t), std::move(e)});
}
inline ExprPtr boolified(ExprPtr a) {
  return node(Kind::Boolified, {std::move(a)});
}
inline ExprPtr alpha_app(ExprPtr f, ExprPtr a) {
  return node(Kind::AlphaApp, {std::move(f), std::move(a)});
}
inline ExprPtr omega_app(ExprPtr f, ExprPtr a) {
  return node(Kind::OmegaApp, {std::move(f), std::move(a)});
}
inline ExprPtr is_a_fcn(ExprPtr f) {
  return node(Kind::IsAFcn, {std::move(f)});
}
inline ExprPtr str(const std::string& s) {
  return std::make_shared<Expr>(Kind::StrLit, s);
}
inline ExprPtr tuple(std::vector<ExprPtr> es) {
  return node(Kind::TupleLit, std::move(es));
}
inline ExprPtr record(std::vector<std::pair<std::string, ExprPtr>> fields) {
  auto e = std::make_shared<Expr>(Kind::RecordLit);
  for (auto& [l, v] : fields) {
    e->labels.push_back(l);
    e->kids.push_back(std::move(v));
  }
  return e;
}
inline ExprPtr record_access(ExprPtr r, const std::string& label) {
  auto e = std::make_shared<Expr>(Kind::RecordAccess, label);
  e->kids.push_back(std::move(r));
  return e;
}

}  // namespace mk

// --- binding machinery -----------------------------------------------------

// Replace free occurrences of `name` by the bound index `depth` (the index
// valid at the binder being constructed).
inline ExprPtr abstract_name(const ExprPtr& e, const std::string& name,
                             int depth) {
  if (e->kind == Kind::Var) return e->sym == name ? mk::bvar(depth) : e;
  if (e->kids.empty()) return e;
  auto copy = std::make_shared<Expr>(*e);
  bool changed = false;
  for (size_t i = 0; i < copy->kids.size(); ++i) {
    int d = depth + (kid_scoped(e->kind, i) ? 1 : 0);
    auto k = abstract_name(copy->kids[i], name, d);
    if (k != copy->kids[i]) changed = true;
    copy->kids[i] = k;
  }
  return changed ? ExprPtr(copy) : e;
}

// Replace BVar(depth) by the locally closed term `t`.
inline ExprPtr instantiate(const ExprPtr& e, const ExprPtr& t, int depth = 0) {
  if (e->kind == Kind::BVar) return e->index == depth ? t : e;
  if (e->kids.empty()) return e;
  auto copy = std::make_shared<Expr>(*e);
  bool changed = false;
  for (size_t i = 0; i < copy->kids.size(); ++i) {
    int d = depth + (kid_scoped(e->kind, i) ? 1 : 0);
    auto k = instantiate(copy->kids[i], t, d);
    if (k != copy->kids[i]) changed = true;
    copy->kids[i] = k;
  }
  return changed ? ExprPtr(copy) : e;
}

namespace mk {

inline ExprPtr binder(Kind k, const std::string& hint, ExprPtr scoped) {
  auto e = std::make_shared<Expr>(k, hint);
  e->kids.push_back(std::move(scoped));
  return e;
}

// Quantifiers etc. take the body with `x` occurring as a free Var; the
// builder closes it.
inline ExprPtr forall(const std::string& x, const ExprPtr& body) {
  return binder(Kind::Forall, x, abstract_name(body, x, 0));
}
inline ExprPtr exists(const std::string& x, const ExprPtr& body) {
  return binder(Kind::Exists, x, abstract_name(body, x, 0));
}
inline ExprPtr choose(const std::string& x, const ExprPtr& pred) {
  return binder(Kind::Choose, x, abstract_name(pred, x, 0));
}
inline ExprPtr lambda(const std::string& x, ExprPtr dom, const ExprPtr& body) {
  auto e = std::make_shared<Expr>(Kind::Lambda, x);
  e->kids.push_back(std::move(dom));
  e->kids.push_back(abstract_name(body, x, 0));
  return e;
}
inline ExprPtr set_filter(const std::string& x, ExprPtr dom,
                          const ExprPtr& pred) {
  auto e = std::make_shared<Expr>(Kind::SetFilter, x);
  e->kids.push_back(std::move(dom));
  e->kids.push_back(abstract_name(pred, x, 0));
  return e;
}
inline ExprPtr set_map(const ExprPtr& body, const std::string& x,
                       ExprPtr dom) {
  auto e = std::make_shared<Expr>(Kind::SetMap, x);
  e->kids.push_back(abstract_name(body, x, 0));
  e->kids.push_back(std::move(dom));
  return e;
}

// \A x \in S : P  is  \A x : x \in S => P  (and dually for \E).
inline ExprPtr forall_in(const std::string& x, ExprPtr dom,
                         const ExprPtr& body) {
  return forall(x, implies(in(var(x), std::move(dom)), body));
}
inline ExprPtr exists_in(const std::string& x, ExprPtr dom,
                         const ExprPtr& body) {
  return exists(x, and_(in(var(x), std::move(dom)), body));
}

}  // namespace mk

// --- structural operations ---------------------------------------------------

// Total order on expressions that ignores binder name hints; alpha-equal
// expressions compare equal.
inline int compare(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case Kind::Var:
    case Kind::OpApp:
    case Kind::StrLit:
    case Kind::RecordAccess:
      if (a->sym != b->sym) return a->sym < b->sym ? -1 : 1;
      break;
    case Kind::BVar:
      if (a->index != b->index) return a->index < b->index ? -1 : 1;
      break;
    case Kind::IntLit: {
      int c = cmp(a->num, b->num);
      if (c != 0) return c < 0 ? -1 : 1;
      break;
    }
    case Kind::RecordLit:
      if (a->labels != b->labels) return a->labels < b->labels ? -1 : 1;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size())
    return a->kids.size() < b->kids.size() ? -1 : 1;
  for (size_t i = 0; i < a->kids.size(); ++i) {
    int c = compare(a->kids[i], b->kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

inline bool alpha_equal(const ExprPtr& a, const ExprPtr& b) {
  return compare(a, b) == 0;
}

struct ExprLess {
  bool operator()(const ExprPtr& a, const ExprPtr& b) const {
    return compare(a, b) < 0;
  }
};

inline void free_vars_into(const ExprPtr& e, std::set<std::string>& out) {
  if (e->kind == Kind::Var) {
    out.insert(e->sym);
    return;
  }
  for (auto& k : e->kids) free_vars_into(k, out);
}

inline std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> out;
  free_vars_into(e, out);
  return out;
}

// Capture-avoiding substitution of a locally closed term for a free variable.
// With named free variables and indexed bound ones, no renaming is needed.
inline ExprPtr substitute(const ExprPtr& e, const std::string& name,
                          const ExprPtr& a) {
  if (e->kind == Kind::Var) return e->sym == name ? a : e;
  if (e->kids.empty()) return e;
  auto copy = std::make_shared<Expr>(*e);
  bool changed = false;
  for (auto& k : copy->kids) {
    auto k2 = substitute(k, name, a);
    if (k2 != k) changed = true;
    k = k2;
  }
  return changed ? ExprPtr(copy) : e;
}

inline size_t expr_size(const ExprPtr& e) {
  size_t n = 1;
  for (auto& k : e->kids) n += expr_size(k);
  return n;
}

// True when every bound index refers to an enclosing binder.
inline bool locally_closed(const ExprPtr& e, int depth = 0) {
  if (e->kind == Kind::BVar) return e->index < depth;
  for (size_t i = 0; i < e->kids.size(); ++i) {
    if (!locally_closed(e->kids[i],
                        depth + (kid_scoped(e->kind, i) ? 1 : 0)))
      return false;
  }
  return true;
}

inline bool contains_kind(const ExprPtr& e, Kind k) {
  if (e->kind == k) return true;
  for (auto& kid : e->kids)
    if (contains_kind(kid, k)) return true;
  return false;
}

// Does the term `t` occur as a subexpression of `e` (up to alpha)?
inline bool contains_term(const ExprPtr& e, const ExprPtr& t) {
  if (alpha_equal(e, t)) return true;
  for (auto& kid : e->kids)
    if (contains_term(kid, t)) return true;
  return false;
}

// --- desugaring --------------------------------------------------------------

// Tuples become functions over 1..n, records functions over their label set,
// record access becomes function application on the label literal.
inline ExprPtr desugar(const ExprPtr& e) {
  std::vector<ExprPtr> kids;
  kids.reserve(e->kids.size());
  bool changed = false;
  for (auto& k : e->kids) {
    kids.push_back(desugar(k));
    if (kids.back() != k) changed = true;
  }
  auto rebuilt = [&]() -> ExprPtr {
    if (!changed) return e;
    auto c = std::make_shared<Expr>(*e);
    c->kids = kids;
    return c;
  };
  switch (e->kind) {
    case Kind::TupleLit: {
      size_t n = kids.size();
      if (n == 0) {
        // << >> is the function with empty domain.
        return mk::node(Kind::Lambda, "i",
                        {mk::range(mk::int_lit(1), mk::int_lit(0)),
                         mk::int_lit(0)});
      }
      ExprPtr body = kids[n - 1];
      for (size_t j = n - 1; j-- > 0;) {
        body = mk::ite(mk::eq(mk::bvar(0), mk::int_lit((long)(j + 1))),
                       kids[j], body);
      }
      auto lam = std::make_shared<Expr>(Kind::Lambda, "i");
      lam->kids.push_back(mk::range(mk::int_lit(1), mk::int_lit((long)n)));
      lam->kids.push_back(body);
      return lam;
    }
    case Kind::RecordLit: {
      // Canonical label order.
      std::vector<std::pair<std::string, ExprPtr>> fields;
      for (size_t i = 0; i < kids.size(); ++i)
        fields.emplace_back(e->labels[i], kids[i]);
      std::sort(fields.begin(), fields.end(),
                [](auto& a, auto& b) { return a.first < b.first; });
      std::vector<ExprPtr> dom;
      for (auto& [l, v] : fields) dom.push_back(mk::str(l));
      size_t n = fields.size();
      ExprPtr body = fields[n - 1].second;
      for (size_t j = n - 1; j-- > 0;) {
        body = mk::ite(mk::eq(mk::bvar(0), mk::str(fields[j].first)),
                       fields[j].second, body);
      }
      auto lam = std::make_shared<Expr>(Kind::Lambda, "s");
      lam->kids.push_back(mk::set_enum(dom));
      lam->kids.push_back(body);
      return lam;
    }
    case Kind::RecordAccess:
      return mk::fcn_app(kids[0], mk::str(e->sym));
    default:
      return rebuilt();
  }
}

// --- proof obligations -------------------------------------------------------

struct SymbolDecl {
  std::string name;
  int arity = 0;
};

enum class HypSource {
  User,
  AbstractionDef,       // introduced definition k(xs) = psi; never eliminated
  ContractionInstance,  // extensionality contraction between definitions
  ChooseAxiom,          // CHOOSE membership / determinism axiom
};

struct Hypothesis {
  ExprPtr expr;
  HypSource source = HypSource::User;
  std::string name;  // assertion label; assigned h1..hn at parse time
};

struct ProofObligation {
  std::string name;
  std::vector<SymbolDecl> declared;
  std::vector<Hypothesis> hypotheses;
  ExprPtr goal;

  bool declares(const std::string& s) const {
    for (auto& d : declared)
      if (d.name == s) return true;
    return false;
  }
};

inline size_t obligation_size(const ProofObligation& ob) {
  size_t n = ob.goal ? expr_size(ob.goal) : 0;
  for (auto& h : ob.hypotheses) n += expr_size(h.expr);
  return n;
}

inline bool alpha_equal(const ProofObligation& a, const ProofObligation& b) {
  if (a.hypotheses.size() != b.hypotheses.size()) return false;
  for (size_t i = 0; i < a.hypotheses.size(); ++i)
    if (!alpha_equal(a.hypotheses[i].expr, b.hypotheses[i].expr)) return false;
  return alpha_equal(a.goal, b.goal);
}

}  // namespace tla2smt

#endif  // TLA2SMT_EXPR_HPP_
