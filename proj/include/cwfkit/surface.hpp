#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cwfkit/syntax.hpp"

// Named-variable surface syntax: a parser for a small dependent lambda
// language, bidirectional elaboration into the combinator calculus (variables
// become q[p^n] projections), and readback of normal forms into surface
// syntax.
namespace cwfkit::surface {

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SExpr {
  enum class K { Var, Lam, App, Pair, Fst, Snd, Refl, Annot, Pi, Sig, Id } k;
  std::string name;  // Var; Lam/Pi/Sig binder
  SExprPtr a;        // Lam body, App head, Pair first, Fst/Snd/Annot body,
                     // Pi/Sig domain, Id type
  SExprPtr b;        // App argument, Pair second, Annot type, Pi/Sig body,
                     // Id left endpoint
  SExprPtr c;        // Id right endpoint
  int line = 0, col = 0;
};

SExprPtr s_var(std::string name);
SExprPtr s_lam(std::string binder, SExprPtr body);
SExprPtr s_app(SExprPtr f, SExprPtr x);
SExprPtr s_pair(SExprPtr a, SExprPtr b);
SExprPtr s_fst(SExprPtr a);
SExprPtr s_snd(SExprPtr a);
SExprPtr s_refl();
SExprPtr s_annot(SExprPtr e, SExprPtr ty);
SExprPtr s_pi(std::string binder, SExprPtr dom, SExprPtr body);
SExprPtr s_sig(std::string binder, SExprPtr dom, SExprPtr body);
SExprPtr s_id(SExprPtr ty, SExprPtr l, SExprPtr r);

// structural equality, binder names included
bool s_eq(const SExprPtr&, const SExprPtr&);

std::string print_expr(const SExprPtr& e);
SExprPtr parse_expr(const std::string& text);  // ParseError on bad input

// a declaration file: `type NAME`, `term NAME : TYPE`, `main EXPR : TYPE`
struct Decl {
  enum class K { Type, Term, Main } k;
  std::string name;  // Type, Term
  SExprPtr type;     // Term, Main
  SExprPtr expr;     // Main
  int line = 0;
};

struct File {
  std::vector<Decl> decls;
};

File parse_file(const std::string& text);

struct Program {
  syn::Signature sig;
  std::vector<std::string> type_order;  // declaration order
  std::vector<std::string> term_order;
  std::optional<syn::TmPtr> main;
  std::optional<syn::TyPtr> main_ty;
};

// elaborates declarations in order; every output passes syn::check
Program elaborate_file(const File& f);

// closed elaboration against a signature whose base declarations are closed
syn::TyPtr elaborate_type(const SExprPtr& e, const syn::Signature& sig);
syn::TmPtr elaborate_term(const SExprPtr& e, const SExprPtr& ty,
                          const syn::Signature& sig);

// surface form of a normal expression; binders are renamed x0, x1, ...
// outside in; throws Unreadable on nodes with no surface counterpart
SExprPtr readback_tm(const syn::TmPtr& t);
SExprPtr readback_ty(const syn::TyPtr& t);

}  // namespace cwfkit::surface
