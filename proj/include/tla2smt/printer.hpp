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

// ASCII pretty-printer. Output of parser-level constructs is itself
// parseable; internal constructs (marks, alpha/omega) print in an
// application-like notation for traces and stage dumps.

#ifndef TLA2SMT_PRINTER_HPP_
#define TLA2SMT_PRINTER_HPP_

#include <sstream>
#include <string>
#include <vector>

#include "tla2smt/expr.hpp"

namespace tla2smt {

namespace detail {

// Precedence levels, loosest binds lowest.
enum Prec {
  kPrecQuant = 0,
  kPrecIff = 2,
  kPrecImplies = 3,
  kPrecOr = 4,
  kPrecAnd = 5,
  kPrecCompare = 7,
  kPrecRange = 8,
  kPrecAdd = 9,
  kPrecMul = 10,
  kPrecPrefix = 11,
  kPrecPostfix = 13,
  kPrecAtom = 14,
};

class Printer {
 public:
  std::string print(const ExprPtr& e) {
    std::ostringstream os;
    emit(os, e, kPrecQuant);
    return os.str();
  }

 private:
  std::vector<std::string> bound_;  // innermost last

  // A printable name for a fresh binder: start from the hint, rename when a
  // free variable or an enclosing binder already uses it.
  std::string fresh(const ExprPtr& scope, const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    auto taken = [&](const std::string& n) {
      for (auto& b : bound_)
        if (b == n) return true;
      auto fv = free_vars(scope);
      return fv.count(n) > 0;
    };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + "_" + std::to_string(i);
      if (!taken(cand)) return cand;
    }
  }

  void paren(std::ostringstream& os, const ExprPtr& e, int prec, int outer) {
    if (prec < outer) {
      os << "(";
      emit(os, e, kPrecQuant);
      os << ")";
    } else {
      emit(os, e, prec);
    }
  }

  void binary(std::ostringstream& os, const ExprPtr& e, const char* tok,
              int prec, int outer, bool left_assoc = true) {
    if (prec < outer) os << "(";
    // Print kids at one level tighter on the non-associating side.
    emit_at(os, e->kids[0], left_assoc ? prec : prec + 1);
    os << " " << tok << " ";
    emit_at(os, e->kids[1], left_assoc ? prec + 1 : prec);
    if (prec < outer) os << ")";
  }

  void emit_at(std::ostringstream& os, const ExprPtr& e, int min_prec) {
    int p = prec_of(e);
    if (p < min_prec) {
      os << "(";
      emit(os, e, kPrecQuant);
      os << ")";
    } else {
      emit(os, e, min_prec);
    }
  }

  static int prec_of(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Forall:
      case Kind::Exists:
      case Kind::Choose:
        return kPrecQuant;
      case Kind::Iff:
        return kPrecIff;
      case Kind::Implies:
        return kPrecImplies;
      case Kind::Or:
        return kPrecOr;
      case Kind::And:
        return kPrecAnd;
      case Kind::Eq:
      case Kind::In:
      case Kind::Lt:
        return kPrecCompare;
      case Kind::Range:
        return kPrecRange;
      case Kind::Plus:
      case Kind::Minus:
        return kPrecAdd;
      case Kind::Times:
        return kPrecMul;
      case Kind::Not:
      case Kind::Neg:
      case Kind::Subset:
      case Kind::Union:
      case Kind::Domain:
        return kPrecPrefix;
      case Kind::Cup:
        return kPrecAdd;
      case Kind::FcnApp:
      case Kind::RecordAccess:
        return kPrecPostfix;
      case Kind::IntLit:
        return kPrecAtom;  // negative literals parenthesize via Neg
      default:
        return kPrecAtom;
    }
  }

  void emit_binder(std::ostringstream& os, const ExprPtr& e) {
    std::string x = fresh(e, e->sym);
    switch (e->kind) {
      case Kind::Forall:
      case Kind::Exists: {
        os << (e->kind == Kind::Forall ? "\\A " : "\\E ") << x << " : ";
        bound_.push_back(x);
        emit(os, instantiate(e->kids[0], mk::var(x)), kPrecQuant);
        bound_.pop_back();
        break;
      }
      case Kind::Choose: {
        os << "CHOOSE " << x << " : ";
        bound_.push_back(x);
        emit(os, instantiate(e->kids[0], mk::var(x)), kPrecQuant);
        bound_.pop_back();
        break;
      }
      case Kind::Lambda: {
        os << "[" << x << " \\in ";
        emit(os, e->kids[0], kPrecQuant);
        os << " |-> ";
        bound_.push_back(x);
        emit(os, instantiate(e->kids[1], mk::var(x)), kPrecQuant);
        bound_.pop_back();
        os << "]";
        break;
      }
      case Kind::SetFilter: {
        os << "{" << x << " \\in ";
        emit(os, e->kids[0], kPrecQuant);
        os << " : ";
        bound_.push_back(x);
        emit(os, instantiate(e->kids[1], mk::var(x)), kPrecQuant);
        bound_.pop_back();
        os << "}";
        break;
      }
      case Kind::SetMap: {
        os << "{";
        bound_.push_back(x);
        emit(os, instantiate(e->kids[0], mk::var(x)), kPrecQuant);
        bound_.pop_back();
        os << " : " << x << " \\in ";
        emit(os, e->kids[1], kPrecQuant);
        os << "}";
        break;
      }
      default:
        break;
    }
  }

  void emit(std::ostringstream& os, const ExprPtr& e, int outer) {
    switch (e->kind) {
      case Kind::Var:
        os << e->sym;
        break;
      case Kind::BVar:
        os << "@" << e->index;  // only for dangling indices in debug output
        break;
      case Kind::OpApp:
        os << e->sym;
        if (!e->kids.empty()) {
          os << "(";
          for (size_t i = 0; i < e->kids.size(); ++i) {
            if (i) os << ", ";
            emit(os, e->kids[i], kPrecQuant);
          }
          os << ")";
        }
        break;
      case Kind::True:
        os << "TRUE";
        break;
      case Kind::False:
        os << "FALSE";
        break;
      case Kind::Not:
        if (kPrecPrefix < outer) os << "(";
        os << "~";
        emit_at(os, e->kids[0], kPrecPrefix);
        if (kPrecPrefix < outer) os << ")";
        break;
      case Kind::And:
        binary(os, e, "/\\", kPrecAnd, outer);
        break;
      case Kind::Or:
        binary(os, e, "\\/", kPrecOr, outer);
        break;
      case Kind::Implies:
        binary(os, e, "=>", kPrecImplies, outer, /*left_assoc=*/false);
        break;
      case Kind::Iff:
        binary(os, e, "<=>", kPrecIff, outer);
        break;
      case Kind::Forall:
      case Kind::Exists:
      case Kind::Choose:
        if (kPrecQuant < outer) {
          os << "(";
          emit_binder(os, e);
          os << ")";
        } else {
          emit_binder(os, e);
        }
        break;
      case Kind::Eq:
        binary(os, e, "=", kPrecCompare, outer);
        break;
      case Kind::In:
        binary(os, e, "\\in", kPrecCompare, outer);
        break;
      case Kind::EmptySet:
        os << "{}";
        break;
      case Kind::SetEnum:
        os << "{";
        for (size_t i = 0; i < e->kids.size(); ++i) {
          if (i) os << ", ";
          emit(os, e->kids[i], kPrecQuant);
        }
        os << "}";
        break;
      case Kind::SetFilter:
      case Kind::SetMap:
      case Kind::Lambda:
        emit_binder(os, e);
        break;
      case Kind::Subset:
        if (kPrecPrefix < outer) os << "(";
        os << "SUBSET ";
        emit_at(os, e->kids[0], kPrecPrefix);
        if (kPrecPrefix < outer) os << ")";
        break;
      case Kind::Union:
        if (kPrecPrefix < outer) os << "(";
        os << "UNION ";
        emit_at(os, e->kids[0], kPrecPrefix);
        if (kPrecPrefix < outer) os << ")";
        break;
      case Kind::Cup:
        binary(os, e, "\\cup", kPrecAdd, outer);
        break;
      case Kind::FcnApp:
        emit_at(os, e->kids[0], kPrecPostfix);
        os << "[";
        emit(os, e->kids[1], kPrecQuant);
        os << "]";
        break;
      case Kind::Domain:
        if (kPrecPrefix < outer) os << "(";
        os << "DOMAIN ";
        emit_at(os, e->kids[0], kPrecPrefix);
        if (kPrecPrefix < outer) os << ")";
        break;
      case Kind::FcnSet:
        os << "[";
        emit(os, e->kids[0], kPrecQuant);
        os << " -> ";
        emit(os, e->kids[1], kPrecQuant);
        os << "]";
        break;
      case Kind::IntLit:
        if (e->num < 0) {
          if (kPrecPrefix < outer) os << "(";
          os << e->num.get_str();
          if (kPrecPrefix < outer) os << ")";
        } else {
          os << e->num.get_str();
        }
        break;
      case Kind::IntSet:
        os << "Int";
        break;
      case Kind::NatSet:
        os << "Nat";
        break;
      case Kind::Neg:
        if (kPrecPrefix < outer) os << "(";
        os << "-";
        emit_at(os, e->kids[0], kPrecPrefix);
        if (kPrecPrefix < outer) os << ")";
        break;
      case Kind::Plus:
        binary(os, e, "+", kPrecAdd, outer);
        break;
      case Kind::Minus:
        binary(os, e, "-", kPrecAdd, outer);
        break;
      case Kind::Times:
        binary(os, e, "*", kPrecMul, outer);
        break;
      case Kind::Lt:
        binary(os, e, "<", kPrecCompare, outer);
        break;
      case Kind::Range:
        binary(os, e, "..", kPrecRange, outer);
        break;
      case Kind::Ite:
        if (kPrecQuant < outer) os << "(";
        os << "IF ";
        emit(os, e->kids[0], kPrecQuant);
        os << " THEN ";
        emit(os, e->kids[1], kPrecQuant);
        os << " ELSE ";
        emit(os, e->kids[2], kPrecQuant);
        if (kPrecQuant < outer) os << ")";
        break;
      case Kind::Boolified:
        os << "boolify(";
        emit(os, e->kids[0], kPrecQuant);
        os << ")";
        break;
      case Kind::AlphaApp:
        os << "alpha(";
        emit(os, e->kids[0], kPrecQuant);
        os << ", ";
        emit(os, e->kids[1], kPrecQuant);
        os << ")";
        break;
      case Kind::OmegaApp:
        os << "omega(";
        emit(os, e->kids[0], kPrecQuant);
        os << ", ";
        emit(os, e->kids[1], kPrecQuant);
        os << ")";
        break;
      case Kind::IsAFcn:
        os << "IsAFcn(";
        emit(os, e->kids[0], kPrecQuant);
        os << ")";
        break;
      case Kind::StrLit:
        os << '"' << e->sym << '"';
        break;
      case Kind::TupleLit:
        os << "<<";
        for (size_t i = 0; i < e->kids.size(); ++i) {
          if (i) os << ", ";
          emit(os, e->kids[i], kPrecQuant);
        }
        os << ">>";
        break;
      case Kind::RecordLit:
        os << "[";
        for (size_t i = 0; i < e->kids.size(); ++i) {
          if (i) os << ", ";
          os << e->labels[i] << " |-> ";
          emit(os, e->kids[i], kPrecQuant);
        }
        os << "]";
        break;
      case Kind::RecordAccess:
        emit_at(os, e->kids[0], kPrecPostfix);
        os << "." << e->sym;
        break;
    }
  }
};

}  // namespace detail

inline std::string to_string(const ExprPtr& e) {
  return detail::Printer{}.print(e);
}

inline std::string to_string(const ProofObligation& ob) {
  std::ostringstream os;
  os << "ASSUME ";
  bool first = true;
  for (auto& d : ob.declared) {
    if (!first) os << ",\n       ";
    first = false;
    os << "NEW " << d.name;
    if (d.arity > 0) {
      os << "(";
      for (int i = 0; i < d.arity; ++i) os << (i ? ", _" : "_");
      os << ")";
    }
  }
  for (auto& h : ob.hypotheses) {
    if (!first) os << ",\n       ";
    first = false;
    os << to_string(h.expr);
  }
  if (first) os << "TRUE";
  os << "\nPROVE  " << to_string(ob.goal) << "\n";
  return os.str();
}

}  // namespace tla2smt

#endif  // TLA2SMT_PRINTER_HPP_
