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

// Parser for the .tlapo obligation format:
//
//   ASSUME NEW f, NEW P(_), f \in S, ...
//   PROVE  <expr>
//
// Identifiers are parsed as free variables first; binders close over their
// occurrences, and a resolution pass turns the remaining free names into
// applications of declared constant operators.

#ifndef TLA2SMT_PARSER_HPP_
#define TLA2SMT_PARSER_HPP_

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tla2smt/expr.hpp"

namespace tla2smt {

struct SyntaxError : Error {
  int line, col;
  SyntaxError(int ln, int cl, const std::string& msg)
      : Error("syntax error at " + std::to_string(ln) + ":" +
              std::to_string(cl) + ": " + msg),
        line(ln),
        col(cl) {}
};

struct UnknownSymbol : Error {
  std::string name;
  explicit UnknownSymbol(const std::string& n)
      : Error("unknown symbol: " + n), name(n) {}
};

namespace detail {

enum class Tok {
  Ident,
  Number,
  String,
  Keyword,  // ASSUME PROVE NEW CONSTANT TRUE FALSE IF THEN ELSE SUBSET UNION
            // DOMAIN CHOOSE Int Nat
  Sym,      // punctuation / operators
  Eof,
};

struct Token {
  Tok type;
  std::string text;
  int line, col;
};

inline bool is_keyword(const std::string& s) {
  static const char* kw[] = {"ASSUME", "PROVE",  "NEW",    "CONSTANT", "TRUE",
                             "FALSE",  "IF",     "THEN",   "ELSE",     "SUBSET",
                             "UNION",  "DOMAIN", "CHOOSE", "Int",      "Nat"};
  for (auto* k : kw)
    if (s == k) return true;
  return false;
}

// Names used by the SMT vocabulary; declaring them would collide in emitted
// scripts.
inline bool is_reserved_symbol(const std::string& s) {
  static const char* rs[] = {"alpha", "omega", "boolify", "IsAFcn", "isafcn",
                             "domain", "in",   "i2u",     "u2i",    "plus",
                             "minus", "times", "neg",     "lt",     "b2u",
                             "tla_Int", "tla_Nat"};
  for (auto* r : rs)
    if (s == r) return true;
  return s.rfind("set_enum_", 0) == 0 || s.rfind("str_", 0) == 0;
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::Eof, "", line_, col_});
        return out;
      }
      int ln = line_, cl = col_;
      char c = src_[pos_];
      if (std::isalpha((unsigned char)c) || c == '_') {
        std::string id;
        while (pos_ < src_.size() &&
               (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
          id += take();
        out.push_back({is_keyword(id) ? Tok::Keyword : Tok::Ident, id, ln, cl});
      } else if (std::isdigit((unsigned char)c)) {
        std::string n;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_]))
          n += take();
        out.push_back({Tok::Number, n, ln, cl});
      } else if (c == '"') {
        take();
        std::string s;
        while (pos_ < src_.size() && src_[pos_] != '"') {
          char d = take();
          if (!std::isalnum((unsigned char)d) && d != '_')
            throw SyntaxError(ln, cl, "string literals admit [A-Za-z0-9_]");
          s += d;
        }
        if (pos_ >= src_.size()) throw SyntaxError(ln, cl, "unclosed string");
        take();
        out.push_back({Tok::String, s, ln, cl});
      } else if (c == '\\') {
        take();
        if (pos_ < src_.size() && src_[pos_] == '*') {  // \* line comment
          while (pos_ < src_.size() && src_[pos_] != '\n') take();
          continue;
        }
        std::string id = "\\";
        while (pos_ < src_.size() && std::isalpha((unsigned char)src_[pos_]))
          id += take();
        static const char* ops[] = {"\\A",   "\\E",        "\\in", "\\notin",
                                    "\\cup", "\\subseteq", "\\div"};
        bool ok = false;
        for (auto* o : ops) ok = ok || id == o;
        if (!ok) throw SyntaxError(ln, cl, "unknown operator " + id);
        out.push_back({Tok::Sym, id, ln, cl});
      } else {
        out.push_back({Tok::Sym, lex_sym(ln, cl), ln, cl});
      }
    }
  }

 private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace((unsigned char)src_[pos_]))
        take();
      if (pos_ + 1 < src_.size() && src_[pos_] == '(' && src_[pos_ + 1] == '*') {
        int ln = line_, cl = col_;
        take();
        take();
        int depth = 1;
        while (depth > 0) {
          if (pos_ + 1 >= src_.size())
            throw SyntaxError(ln, cl, "unclosed comment");
          if (src_[pos_] == '(' && src_[pos_ + 1] == '*') {
            take();
            take();
            ++depth;
          } else if (src_[pos_] == '*' && src_[pos_ + 1] == ')') {
            take();
            take();
            --depth;
          } else {
            take();
          }
        }
        continue;
      }
      break;
    }
  }

  std::string lex_sym(int ln, int cl) {
    static const char* two[] = {"/\\", "\\/", "=>", "<=>", "<=", ">=", "..",
                                "<<",  ">>",  "|->", "->",  "==", "::"};
    if (pos_ + 2 < src_.size() && src_.compare(pos_, 3, "<=>") == 0) {
      take();
      take();
      take();
      return "<=>";
    }
    if (pos_ + 2 < src_.size() && src_.compare(pos_, 3, "|->") == 0) {
      take();
      take();
      take();
      return "|->";
    }
    for (auto* t : two) {
      if (std::string(t).size() == 2 && pos_ + 1 < src_.size() &&
          src_.compare(pos_, 2, t) == 0) {
        take();
        take();
        return t;
      }
    }
    static const std::string one = "()[]{},:=<>~+-*#._";
    char c = src_[pos_];
    if (one.find(c) != std::string::npos) {
      take();
      return std::string(1, c);
    }
    throw SyntaxError(ln, cl, std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(Lexer(src).run()) {}

  ProofObligation obligation(const std::string& name) {
    ProofObligation ob;
    ob.name = name;
    if (at_kw("ASSUME")) {
      next();
      for (;;) {
        if (at_kw("NEW")) {
          next();
          if (at_kw("CONSTANT")) next();
          Token t = expect(Tok::Ident, "constant name");
          if (is_reserved_symbol(t.text))
            throw SyntaxError(t.line, t.col,
                              "'" + t.text + "' is reserved by the encoding");
          int arity = 0;
          if (at_sym("(")) {
            next();
            for (;;) {
              expect_sym("_");
              ++arity;
              if (at_sym(",")) {
                next();
                continue;
              }
              break;
            }
            expect_sym(")");
          }
          for (auto& d : ob.declared)
            if (d.name == t.text)
              throw SyntaxError(t.line, t.col, "duplicate NEW " + t.text);
          ob.declared.push_back({t.text, arity});
        } else {
          ob.hypotheses.push_back(
              {expr(), HypSource::User,
               "h" + std::to_string(ob.hypotheses.size() + 1)});
        }
        if (at_sym(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_kw("PROVE");
    ob.goal = expr();
    expect(Tok::Eof, "end of file");
    for (auto& h : ob.hypotheses) h.expr = resolve(desugar(h.expr), ob);
    ob.goal = resolve(desugar(ob.goal), ob);
    return ob;
  }

 private:
  const Token& peek(int k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  void next() { ++pos_; }
  bool at_sym(const std::string& s) const {
    return peek().type == Tok::Sym && peek().text == s;
  }
  bool at_kw(const std::string& s) const {
    return peek().type == Tok::Keyword && peek().text == s;
  }
  Token expect(Tok t, const std::string& what) {
    if (peek().type != t)
      throw SyntaxError(peek().line, peek().col,
                        "expected " + what + ", got '" + peek().text + "'");
    Token tok = peek();
    next();
    return tok;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s))
      throw SyntaxError(peek().line, peek().col,
                        "expected '" + s + "', got '" + peek().text + "'");
    next();
  }
  void expect_kw(const std::string& s) {
    if (!at_kw(s))
      throw SyntaxError(peek().line, peek().col,
                        "expected " + s + ", got '" + peek().text + "'");
    next();
  }

  // --- expression grammar, loosest first ---

  ExprPtr expr() { return quantified(); }

  struct BinderGroup {
    std::vector<std::string> names;
    ExprPtr dom;  // null for unbounded
  };

  std::vector<BinderGroup> binder_groups() {
    std::vector<BinderGroup> groups;
    BinderGroup cur;
    for (;;) {
      Token t = expect(Tok::Ident, "bound variable");
      cur.names.push_back(t.text);
      if (at_sym(",")) {
        next();
        continue;
      }
      if (at_sym("\\in")) {
        next();
        cur.dom = iff_level();
        groups.push_back(std::move(cur));
        cur = {};
        if (at_sym(",")) {
          next();
          continue;
        }
        break;
      }
      groups.push_back(std::move(cur));
      cur = {};
      break;
    }
    return groups;
  }

  ExprPtr quantified() {
    if (at_sym("\\A") || at_sym("\\E")) {
      bool uni = peek().text == "\\A";
      next();
      auto groups = binder_groups();
      expect_sym(":");
      ExprPtr body = quantified();
      for (size_t gi = groups.size(); gi-- > 0;) {
        auto& g = groups[gi];
        for (size_t ni = g.names.size(); ni-- > 0;) {
          const std::string& x = g.names[ni];
          if (g.dom) {
            body = uni ? mk::forall_in(x, g.dom, body)
                       : mk::exists_in(x, g.dom, body);
          } else {
            body = uni ? mk::forall(x, body) : mk::exists(x, body);
          }
        }
      }
      return body;
    }
    if (at_kw("CHOOSE")) {
      next();
      Token x = expect(Tok::Ident, "bound variable");
      ExprPtr dom;
      if (at_sym("\\in")) {
        next();
        dom = iff_level();
      }
      expect_sym(":");
      ExprPtr pred = quantified();
      if (dom) pred = mk::and_(mk::in(mk::var(x.text), dom), pred);
      return mk::choose(x.text, pred);
    }
    if (at_kw("IF")) {
      next();
      ExprPtr c = expr();
      expect_kw("THEN");
      ExprPtr t = expr();
      expect_kw("ELSE");
      ExprPtr e = quantified();
      return mk::ite(c, t, e);
    }
    return iff_level();
  }

  ExprPtr iff_level() {
    ExprPtr a = implies_level();
    while (at_sym("<=>")) {
      next();
      a = mk::iff(a, implies_level());
    }
    return a;
  }

  ExprPtr implies_level() {
    ExprPtr a = or_level();
    if (at_sym("=>")) {
      next();
      return mk::implies(a, implies_level());  // right-assoc
    }
    return a;
  }

  ExprPtr or_level() {
    ExprPtr a = and_level();
    while (at_sym("\\/")) {
      next();
      a = mk::or_(a, and_level());
    }
    return a;
  }

  ExprPtr and_level() {
    ExprPtr a = compare_level();
    while (at_sym("/\\")) {
      next();
      a = mk::and_(a, compare_level());
    }
    return a;
  }

  ExprPtr compare_level() {
    ExprPtr a = range_level();
    if (at_sym("=")) {
      next();
      return mk::eq(a, range_level());
    }
    if (at_sym("#")) {
      next();
      return mk::not_(mk::eq(a, range_level()));
    }
    if (at_sym("<")) {
      next();
      return mk::lt(a, range_level());
    }
    if (at_sym(">")) {
      next();
      return mk::lt(range_level(), a);
    }
    if (at_sym("<=")) {
      next();
      ExprPtr b = range_level();
      return mk::or_(mk::lt(a, b), mk::eq(a, b));
    }
    if (at_sym(">=")) {
      next();
      ExprPtr b = range_level();
      return mk::or_(mk::lt(b, a), mk::eq(b, a));
    }
    if (at_sym("\\in")) {
      next();
      return mk::in(a, range_level());
    }
    if (at_sym("\\notin")) {
      next();
      return mk::not_(mk::in(a, range_level()));
    }
    if (at_sym("\\subseteq")) {
      next();
      ExprPtr b = range_level();
      // S \subseteq T is \A z : z \in S => z \in T.
      std::string z = "z";
      auto fv = free_vars(a);
      auto fvb = free_vars(b);
      int i = 0;
      while (fv.count(z) || fvb.count(z)) z = "z_" + std::to_string(++i);
      return mk::forall(z, mk::implies(mk::in(mk::var(z), a),
                                       mk::in(mk::var(z), b)));
    }
    return a;
  }

  ExprPtr range_level() {
    ExprPtr a = add_level();
    if (at_sym("..")) {
      next();
      return mk::range(a, add_level());
    }
    return a;
  }

  ExprPtr add_level() {
    ExprPtr a = mul_level();
    for (;;) {
      if (at_sym("+")) {
        next();
        a = mk::plus(a, mul_level());
      } else if (at_sym("-")) {
        next();
        a = mk::minus(a, mul_level());
      } else if (at_sym("\\cup")) {
        next();
        a = mk::cup(a, mul_level());
      } else {
        break;
      }
    }
    return a;
  }

  ExprPtr mul_level() {
    ExprPtr a = prefix_level();
    while (at_sym("*")) {
      next();
      a = mk::times(a, prefix_level());
    }
    return a;
  }

  ExprPtr prefix_level() {
    if (at_sym("~")) {
      next();
      return mk::not_(prefix_level());
    }
    if (at_sym("-")) {
      next();
      return mk::neg(prefix_level());
    }
    if (at_kw("SUBSET")) {
      next();
      return mk::subset(prefix_level());
    }
    if (at_kw("UNION")) {
      next();
      return mk::big_union(prefix_level());
    }
    if (at_kw("DOMAIN")) {
      next();
      return mk::domain(prefix_level());
    }
    return postfix_level();
  }

  ExprPtr postfix_level() {
    ExprPtr a = atom();
    for (;;) {
      if (at_sym("[")) {
        next();
        ExprPtr arg = expr();
        expect_sym("]");
        a = mk::fcn_app(a, arg);
      } else if (at_sym(".") && peek(1).type == Tok::Ident) {
        next();
        Token l = expect(Tok::Ident, "record label");
        a = mk::record_access(a, l.text);
      } else {
        break;
      }
    }
    return a;
  }

  ExprPtr atom() {
    Token t = peek();
    switch (t.type) {
      case Tok::Number:
        next();
        return mk::int_lit(Int(t.text));
      case Tok::String:
        next();
        return mk::str(t.text);
      case Tok::Ident: {
        next();
        if (at_sym("(")) {
          next();
          std::vector<ExprPtr> args;
          if (!at_sym(")")) {
            for (;;) {
              args.push_back(expr());
              if (at_sym(",")) {
                next();
                continue;
              }
              break;
            }
          }
          expect_sym(")");
          return mk::op(t.text, std::move(args));
        }
        return mk::var(t.text);
      }
      case Tok::Keyword:
        if (t.text == "TRUE") {
          next();
          return mk::tru();
        }
        if (t.text == "FALSE") {
          next();
          return mk::fls();
        }
        if (t.text == "Int") {
          next();
          return mk::int_set();
        }
        if (t.text == "Nat") {
          next();
          return mk::nat_set();
        }
        if (t.text == "IF" || t.text == "CHOOSE") return quantified();
        break;
      case Tok::Sym:
        if (t.text == "(") {
          next();
          ExprPtr e = expr();
          expect_sym(")");
          return e;
        }
        if (t.text == "{") return set_braces();
        if (t.text == "<<") {
          next();
          std::vector<ExprPtr> es;
          if (!at_sym(">>")) {
            for (;;) {
              es.push_back(expr());
              if (at_sym(",")) {
                next();
                continue;
              }
              break;
            }
          }
          expect_sym(">>");
          return mk::tuple(std::move(es));
        }
        if (t.text == "[") return brackets();
        if (t.text == "\\A" || t.text == "\\E") return quantified();
        break;
      default:
        break;
    }
    throw SyntaxError(t.line, t.col, "expected expression, got '" +
                                         (t.type == Tok::Eof ? "<eof>"
                                                             : t.text) +
                                         "'");
  }

  // {} | {e, ...} | {x \in S : P} | {e : x \in S}
  ExprPtr set_braces() {
    expect_sym("{");
    if (at_sym("}")) {
      next();
      return mk::empty();
    }
    if (peek().type == Tok::Ident && peek(1).type == Tok::Sym &&
        peek(1).text == "\\in") {
      Token x = peek();
      next();
      next();
      ExprPtr dom = iff_level();
      if (at_sym(":")) {
        next();
        ExprPtr pred = expr();
        expect_sym("}");
        return mk::set_filter(x.text, dom, pred);
      }
      // It was an enumeration whose first element is a membership formula.
      return enum_tail(mk::in(mk::var(x.text), dom));
    }
    ExprPtr e1 = expr();
    if (at_sym(":")) {
      next();
      Token x = expect(Tok::Ident, "bound variable");
      expect_sym("\\in");
      ExprPtr dom = expr();
      expect_sym("}");
      return mk::set_map(e1, x.text, dom);
    }
    return enum_tail(e1);
  }

  ExprPtr enum_tail(ExprPtr first) {
    std::vector<ExprPtr> es{std::move(first)};
    while (at_sym(",")) {
      next();
      es.push_back(expr());
    }
    expect_sym("}");
    return mk::set_enum(std::move(es));
  }

  // [x \in S |-> e] | [h |-> e, ...] | [S -> T]
  ExprPtr brackets() {
    expect_sym("[");
    if (peek().type == Tok::Ident && peek(1).type == Tok::Sym &&
        peek(1).text == "\\in") {
      Token x = peek();
      next();
      next();
      ExprPtr dom = expr();
      expect_sym("|->");
      ExprPtr body = expr();
      expect_sym("]");
      return mk::lambda(x.text, dom, body);
    }
    if (peek().type == Tok::Ident && peek(1).type == Tok::Sym &&
        peek(1).text == "|->") {
      std::vector<std::pair<std::string, ExprPtr>> fields;
      for (;;) {
        Token l = expect(Tok::Ident, "record label");
        expect_sym("|->");
        fields.emplace_back(l.text, expr());
        if (at_sym(",")) {
          next();
          continue;
        }
        break;
      }
      expect_sym("]");
      for (size_t i = 0; i < fields.size(); ++i)
        for (size_t j = i + 1; j < fields.size(); ++j)
          if (fields[i].first == fields[j].first)
            throw SyntaxError(peek().line, peek().col,
                              "duplicate record label " + fields[i].first);
      return mk::record(std::move(fields));
    }
    ExprPtr s = expr();
    expect_sym("->");
    ExprPtr t = expr();
    expect_sym("]");
    return mk::fcn_set(s, t);
  }

  // Turn remaining free names into declared constant applications.
  ExprPtr resolve(const ExprPtr& e, const ProofObligation& ob) {
    if (e->kind == Kind::Var) {
      for (auto& d : ob.declared) {
        if (d.name == e->sym) {
          if (d.arity != 0)
            throw UnknownSymbol(e->sym + " (declared with arity " +
                                std::to_string(d.arity) +
                                ", used without arguments)");
          return mk::op(e->sym);
        }
      }
      throw UnknownSymbol(e->sym);
    }
    if (e->kind == Kind::OpApp) {
      bool found = false;
      for (auto& d : ob.declared) {
        if (d.name == e->sym) {
          found = true;
          if ((size_t)d.arity != e->kids.size())
            throw UnknownSymbol(e->sym + " (declared with arity " +
                                std::to_string(d.arity) + ", applied to " +
                                std::to_string(e->kids.size()) +
                                " arguments)");
        }
      }
      if (!found) throw UnknownSymbol(e->sym);
    }
    if (e->kids.empty()) return e;
    auto copy = std::make_shared<Expr>(*e);
    for (auto& k : copy->kids) k = resolve(k, ob);
    return copy;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

inline ProofObligation parse_obligation(const std::string& text,
                                        const std::string& name = "obligation") {
  return detail::Parser(text).obligation(name);
}

}  // namespace tla2smt

#endif  // TLA2SMT_PARSER_HPP_
