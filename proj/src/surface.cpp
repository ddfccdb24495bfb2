#include "cwfkit/surface.hpp"

#include <cctype>
#include <sstream>
#include <utility>

#include "cwfkit/errors.hpp"

namespace cwfkit::surface {

namespace {

std::shared_ptr<SExpr> fresh(SExpr::K k) {
  auto e = std::make_shared<SExpr>();
  e->k = k;
  return e;
}

}  // namespace

SExprPtr s_var(std::string name) {
  auto e = fresh(SExpr::K::Var);
  e->name = std::move(name);
  return e;
}

SExprPtr s_lam(std::string binder, SExprPtr body) {
  auto e = fresh(SExpr::K::Lam);
  e->name = std::move(binder);
  e->a = std::move(body);
  return e;
}

SExprPtr s_app(SExprPtr f, SExprPtr x) {
  auto e = fresh(SExpr::K::App);
  e->a = std::move(f);
  e->b = std::move(x);
  return e;
}

SExprPtr s_pair(SExprPtr a, SExprPtr b) {
  auto e = fresh(SExpr::K::Pair);
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

SExprPtr s_fst(SExprPtr a) {
  auto e = fresh(SExpr::K::Fst);
  e->a = std::move(a);
  return e;
}

SExprPtr s_snd(SExprPtr a) {
  auto e = fresh(SExpr::K::Snd);
  e->a = std::move(a);
  return e;
}

SExprPtr s_refl() { return fresh(SExpr::K::Refl); }

SExprPtr s_annot(SExprPtr e, SExprPtr ty) {
  auto n = fresh(SExpr::K::Annot);
  n->a = std::move(e);
  n->b = std::move(ty);
  return n;
}

SExprPtr s_pi(std::string binder, SExprPtr dom, SExprPtr body) {
  auto e = fresh(SExpr::K::Pi);
  e->name = std::move(binder);
  e->a = std::move(dom);
  e->b = std::move(body);
  return e;
}

SExprPtr s_sig(std::string binder, SExprPtr dom, SExprPtr body) {
  auto e = fresh(SExpr::K::Sig);
  e->name = std::move(binder);
  e->a = std::move(dom);
  e->b = std::move(body);
  return e;
}

SExprPtr s_id(SExprPtr ty, SExprPtr l, SExprPtr r) {
  auto e = fresh(SExpr::K::Id);
  e->a = std::move(ty);
  e->b = std::move(l);
  e->c = std::move(r);
  return e;
}

bool s_eq(const SExprPtr& x, const SExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->k != y->k || x->name != y->name) return false;
  return s_eq(x->a, y->a) && s_eq(x->b, y->b) && s_eq(x->c, y->c);
}

// ---------------------------------------------------------------- lexer

namespace {

struct Tok {
  enum class K { Ident, Lambda, LParen, RParen, Comma, Colon, Dot, End } k;
  std::string text;
  int line = 1, col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  throw ParseError(msg + " at line " + std::to_string(line) + ", column " +
                   std::to_string(col));
}

[[noreturn]] void fail_tok(const Tok& t, const std::string& msg) {
  fail_at(t.line, t.col, msg);
}

struct Lexer {
  explicit Lexer(const std::string& text) : src_(text) {}

  const Tok& peek() {
    if (!has_peek_) {
      peeked_ = lex();
      has_peek_ = true;
    }
    return peeked_;
  }

  Tok next() {
    if (has_peek_) {
      has_peek_ = false;
      return peeked_;
    }
    return lex();
  }

 private:
  // identifiers: alphanumerics, '_', '\'', and any byte outside ASCII
  static bool ident_char(unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '\'' || c >= 0x80;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Tok lex() {
    for (;;) {
      while (pos_ < src_.size() &&
             (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' ||
              src_[pos_] == '\n')) {
        advance();
      }
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      break;
    }
    Tok t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.k = Tok::K::End;
      return t;
    }
    char c = src_[pos_];
    switch (c) {
      case '\\': t.k = Tok::K::Lambda; advance(); return t;
      case '(': t.k = Tok::K::LParen; advance(); return t;
      case ')': t.k = Tok::K::RParen; advance(); return t;
      case ',': t.k = Tok::K::Comma; advance(); return t;
      case ':': t.k = Tok::K::Colon; advance(); return t;
      case '.': t.k = Tok::K::Dot; advance(); return t;
      default: break;
    }
    if (ident_char(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             ident_char(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      }
      t.k = Tok::K::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    fail_at(line_, col_, std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Tok peeked_;
  bool has_peek_ = false;
};

// ---------------------------------------------------------------- parser

bool reserved(const std::string& s) {
  return s == "Pi" || s == "Sig" || s == "Id" || s == "fst" || s == "snd" ||
         s == "refl" || s == "type" || s == "term" || s == "main";
}

struct Parser {
  explicit Parser(const std::string& text) : lx(text) {}

  Lexer lx;

  Tok expect(Tok::K k, const char* what) {
    Tok t = lx.next();
    if (t.k != k) fail_tok(t, std::string("expected ") + what);
    return t;
  }

  std::string binder_name() {
    Tok t = expect(Tok::K::Ident, "a name");
    if (reserved(t.text)) fail_tok(t, "'" + t.text + "' is a reserved word");
    return t.text;
  }

  SExprPtr with_pos(SExprPtr e, const Tok& t) {
    auto m = std::const_pointer_cast<SExpr>(e);
    m->line = t.line;
    m->col = t.col;
    return e;
  }

  // nullptr when the lookahead cannot start an atom
  SExprPtr atom_opt() {
    const Tok& t = lx.peek();
    switch (t.k) {
      case Tok::K::Ident:
        if (t.text == "refl") {
          Tok tok = lx.next();
          return with_pos(s_refl(), tok);
        }
        if (t.text == "fst" || t.text == "snd") {
          Tok tok = lx.next();
          SExprPtr body = atom();
          return with_pos(tok.text == "fst" ? s_fst(body) : s_snd(body), tok);
        }
        if (reserved(t.text)) return nullptr;
        {
          Tok tok = lx.next();
          return with_pos(s_var(tok.text), tok);
        }
      case Tok::K::LParen: {
        Tok open = lx.next();
        SExprPtr first = expr();
        Tok t2 = lx.next();
        if (t2.k == Tok::K::RParen) return first;
        if (t2.k == Tok::K::Comma) {
          SExprPtr second = expr();
          expect(Tok::K::RParen, "')'");
          return with_pos(s_pair(first, second), open);
        }
        if (t2.k == Tok::K::Colon) {
          SExprPtr ty = expr();
          expect(Tok::K::RParen, "')'");
          return with_pos(s_annot(first, ty), open);
        }
        fail_tok(t2, "expected ')', ',' or ':'");
      }
      default:
        return nullptr;
    }
  }

  SExprPtr atom() {
    SExprPtr e = atom_opt();
    if (!e) fail_tok(lx.peek(), "expected an expression");
    return e;
  }

  SExprPtr expr() {
    const Tok& t = lx.peek();
    if (t.k == Tok::K::Lambda) {
      Tok tok = lx.next();
      std::string x = binder_name();
      expect(Tok::K::Dot, "'.'");
      return with_pos(s_lam(x, expr()), tok);
    }
    if (t.k == Tok::K::Ident && (t.text == "Pi" || t.text == "Sig")) {
      Tok tok = lx.next();
      std::string x = binder_name();
      expect(Tok::K::Colon, "':'");
      SExprPtr dom = expr();
      expect(Tok::K::Dot, "'.'");
      SExprPtr body = expr();
      return with_pos(tok.text == "Pi" ? s_pi(x, dom, body) : s_sig(x, dom, body),
                      tok);
    }
    if (t.k == Tok::K::Ident && t.text == "Id") {
      Tok tok = lx.next();
      SExprPtr a = atom();
      SExprPtr l = atom();
      SExprPtr r = atom();
      return with_pos(s_id(a, l, r), tok);
    }
    SExprPtr head = atom();
    while (SExprPtr arg = atom_opt()) {
      head = s_app(head, arg);
    }
    return head;
  }
};

}  // namespace

SExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  SExprPtr e = p.expr();
  const Tok& t = p.lx.peek();
  if (t.k != Tok::K::End) fail_tok(t, "trailing input");
  return e;
}

File parse_file(const std::string& text) {
  Parser p(text);
  File f;
  for (;;) {
    const Tok& t = p.lx.peek();
    if (t.k == Tok::K::End) break;
    if (t.k != Tok::K::Ident) fail_tok(t, "expected a declaration");
    Decl d;
    d.line = t.line;
    if (t.text == "type") {
      p.lx.next();
      d.k = Decl::K::Type;
      d.name = p.binder_name();
    } else if (t.text == "term") {
      p.lx.next();
      d.k = Decl::K::Term;
      d.name = p.binder_name();
      p.expect(Tok::K::Colon, "':'");
      d.type = p.expr();
    } else if (t.text == "main") {
      p.lx.next();
      d.k = Decl::K::Main;
      d.expr = p.expr();
      p.expect(Tok::K::Colon, "':'");
      d.type = p.expr();
    } else {
      fail_tok(t, "expected 'type', 'term' or 'main'");
    }
    f.decls.push_back(std::move(d));
  }
  return f;
}

// --------------------------------------------------------------- printer

namespace {

void pr(std::ostream& o, const SExprPtr& e);

void pr_atom(std::ostream& o, const SExprPtr& e) {
  switch (e->k) {
    case SExpr::K::Var:
    case SExpr::K::Refl:
    case SExpr::K::Pair:
    case SExpr::K::Annot:
      pr(o, e);
      return;
    default:
      o << '(';
      pr(o, e);
      o << ')';
  }
}

void pr(std::ostream& o, const SExprPtr& e) {
  switch (e->k) {
    case SExpr::K::Var:
      o << e->name;
      return;
    case SExpr::K::Refl:
      o << "refl";
      return;
    case SExpr::K::Lam:
      o << '\\' << e->name << ". ";
      pr(o, e->a);
      return;
    case SExpr::K::App:
      if (e->a->k == SExpr::K::App) {
        pr(o, e->a);
      } else {
        pr_atom(o, e->a);
      }
      o << ' ';
      pr_atom(o, e->b);
      return;
    case SExpr::K::Pair:
      o << '(';
      pr(o, e->a);
      o << ", ";
      pr(o, e->b);
      o << ')';
      return;
    case SExpr::K::Annot:
      o << '(';
      pr(o, e->a);
      o << " : ";
      pr(o, e->b);
      o << ')';
      return;
    case SExpr::K::Fst:
      o << "fst ";
      pr_atom(o, e->a);
      return;
    case SExpr::K::Snd:
      o << "snd ";
      pr_atom(o, e->a);
      return;
    case SExpr::K::Pi:
    case SExpr::K::Sig:
      o << (e->k == SExpr::K::Pi ? "Pi " : "Sig ") << e->name << ':';
      pr(o, e->a);
      o << ". ";
      pr(o, e->b);
      return;
    case SExpr::K::Id:
      o << "Id ";
      pr_atom(o, e->a);
      o << ' ';
      pr_atom(o, e->b);
      o << ' ';
      pr_atom(o, e->c);
      return;
  }
}

}  // namespace

std::string print_expr(const SExprPtr& e) {
  std::ostringstream o;
  pr(o, e);
  return o.str();
}

// ------------------------------------------------------------ elaborator

namespace {

struct Scope {
  const syn::Signature* sig;
  std::vector<std::pair<std::string, syn::TyPtr>> binders;
  syn::CtxPtr ctx = syn::ctx_empty();

  void push(const std::string& name, const syn::TyPtr& ty) {
    binders.emplace_back(name, ty);
    ctx = syn::ctx_ext(ctx, ty);
  }

  void pop() {
    ctx = ctx->ctx;
    binders.pop_back();
  }
};

std::string where(const SExprPtr& e) {
  if (!e || e->line == 0) return "";
  return " at line " + std::to_string(e->line) + ", column " +
         std::to_string(e->col);
}

// q[p^n] for the binder n levels below the top of the scope
syn::TmPtr var_ref(const Scope& sc, std::size_t i) {
  std::size_t m = sc.binders.size();
  syn::TmPtr q = syn::tm_q(sc.binders[i].second);
  if (i + 1 == m) return q;
  syn::SubPtr s = syn::sub_p(sc.binders[m - 1].second);
  for (std::size_t j = m - 1; j-- > i + 1;) {
    s = syn::sub_comp(syn::sub_p(sc.binders[j].second), s);
  }
  return syn::tm_subst(q, s);
}

syn::TyPtr elab_ty(const SExprPtr& e, Scope& sc);
syn::TmPtr check_tm(const SExprPtr& e, const syn::TyPtr& want, Scope& sc);

syn::TmPtr synth_tm(const SExprPtr& e, Scope& sc) {
  switch (e->k) {
    case SExpr::K::Var: {
      for (std::size_t i = sc.binders.size(); i-- > 0;) {
        if (sc.binders[i].first == e->name) return var_ref(sc, i);
      }
      auto it = sc.sig->terms.find(e->name);
      if (it != sc.sig->terms.end()) {
        syn::TmPtr c = syn::tm_base(e->name, it->second);
        if (sc.binders.empty()) return c;
        return syn::tm_subst(c, syn::sub_terminal(sc.ctx));
      }
      if (sc.sig->types.count(e->name)) {
        throw ElaborationError("'" + e->name + "' is a type, not a term" +
                               where(e));
      }
      throw ScopeError("unbound name '" + e->name + "'" + where(e));
    }
    case SExpr::K::App: {
      syn::TmPtr f = synth_tm(e->a, sc);
      syn::TyPtr fty = syn::normalize(syn::ty_of(f));
      if (fty->k != syn::Ty::K::Pi) {
        throw ElaborationError("applied expression is not a function" +
                               where(e->a));
      }
      syn::TmPtr arg = check_tm(e->b, fty->a, sc);
      return syn::tm_ap(f, arg);
    }
    case SExpr::K::Fst:
    case SExpr::K::Snd: {
      syn::TmPtr t = synth_tm(e->a, sc);
      syn::TyPtr tty = syn::normalize(syn::ty_of(t));
      if (tty->k != syn::Ty::K::Sigma) {
        throw ElaborationError("projected expression is not a pair" +
                               where(e->a));
      }
      return e->k == SExpr::K::Fst ? syn::tm_proj1(t) : syn::tm_proj2(t);
    }
    case SExpr::K::Pair: {
      // non-dependent synthesis; dependent pairs need a checked position
      syn::TmPtr a = synth_tm(e->a, sc);
      syn::TmPtr b = synth_tm(e->b, sc);
      syn::TyPtr bty = syn::ty_subst(syn::ty_of(b), syn::sub_p(syn::ty_of(a)));
      return syn::tm_pair(a, b, bty);
    }
    case SExpr::K::Annot: {
      syn::TyPtr ty = elab_ty(e->b, sc);
      return check_tm(e->a, ty, sc);
    }
    case SExpr::K::Lam:
    case SExpr::K::Refl:
      throw ElaborationError(
          "this expression needs a type annotation to elaborate" + where(e));
    default:
      throw ElaborationError("expected a term, found a type" + where(e));
  }
}

syn::TmPtr check_tm(const SExprPtr& e, const syn::TyPtr& want, Scope& sc) {
  switch (e->k) {
    case SExpr::K::Lam: {
      syn::TyPtr n = syn::normalize(want);
      if (n->k != syn::Ty::K::Pi) {
        throw ElaborationError(
            "lambda checked against a type that is not a function type" +
            where(e));
      }
      sc.push(e->name, n->a);
      syn::TmPtr body = check_tm(e->a, n->b, sc);
      sc.pop();
      return syn::tm_lam(body);
    }
    case SExpr::K::Pair: {
      syn::TyPtr n = syn::normalize(want);
      if (n->k != syn::Ty::K::Sigma) {
        throw ElaborationError(
            "pair checked against a type that is not a pair type" + where(e));
      }
      syn::TmPtr a = check_tm(e->a, n->a, sc);
      syn::TyPtr bty =
          syn::ty_subst(n->b, syn::sub_pair(syn::sub_id(sc.ctx), a, n->a));
      syn::TmPtr b = check_tm(e->b, bty, sc);
      return syn::tm_pair(a, b, n->b);
    }
    case SExpr::K::Refl: {
      syn::TyPtr n = syn::normalize(want);
      if (n->k != syn::Ty::K::Id) {
        throw ElaborationError(
            "refl checked against a type that is not an identity type" +
            where(e));
      }
      if (syn::syn_eq(n->t1, n->t2) != syn::Eq::Equal) {
        throw ElaborationError(
            "refl needs definitionally equal endpoints, found " +
            syn::print(syn::normalize(n->t1)) + " and " +
            syn::print(syn::normalize(n->t2)) + where(e));
      }
      return syn::tm_refl(n->a, n->t1);
    }
    default: {
      syn::TmPtr t = synth_tm(e, sc);
      syn::TyPtr got = syn::ty_of(t);
      if (syn::syn_eq(got, want) != syn::Eq::Equal) {
        throw ElaborationError(
            "type mismatch" + where(e) + ": expected " +
            syn::print(syn::normalize(want)) + ", found " +
            syn::print(syn::normalize(got)));
      }
      return t;
    }
  }
}

syn::TyPtr elab_ty(const SExprPtr& e, Scope& sc) {
  switch (e->k) {
    case SExpr::K::Var: {
      for (std::size_t i = sc.binders.size(); i-- > 0;) {
        if (sc.binders[i].first == e->name) {
          throw ElaborationError("'" + e->name +
                                 "' is a term variable, not a type" + where(e));
        }
      }
      auto it = sc.sig->types.find(e->name);
      if (it == sc.sig->types.end()) {
        throw ScopeError("unbound type name '" + e->name + "'" + where(e));
      }
      if (it->second->k != syn::Ctx::K::Empty) {
        throw ElaborationError("base type '" + e->name +
                               "' is not declared over the empty context" +
                               where(e));
      }
      syn::TyPtr base = syn::ty_base(e->name, it->second);
      if (sc.binders.empty()) return base;
      return syn::ty_subst(base, syn::sub_terminal(sc.ctx));
    }
    case SExpr::K::Pi:
    case SExpr::K::Sig: {
      syn::TyPtr dom = elab_ty(e->a, sc);
      sc.push(e->name, dom);
      syn::TyPtr body = elab_ty(e->b, sc);
      sc.pop();
      return e->k == SExpr::K::Pi ? syn::ty_pi(dom, body)
                                  : syn::ty_sigma(dom, body);
    }
    case SExpr::K::Id: {
      syn::TyPtr a = elab_ty(e->a, sc);
      syn::TmPtr l = check_tm(e->b, a, sc);
      syn::TmPtr r = check_tm(e->c, a, sc);
      return syn::ty_id(a, l, r);
    }
    default:
      throw ElaborationError("this expression is not a type" + where(e));
  }
}

}  // namespace

syn::TyPtr elaborate_type(const SExprPtr& e, const syn::Signature& sig) {
  Scope sc{&sig, {}, syn::ctx_empty()};
  return elab_ty(e, sc);
}

syn::TmPtr elaborate_term(const SExprPtr& e, const SExprPtr& ty,
                          const syn::Signature& sig) {
  Scope sc{&sig, {}, syn::ctx_empty()};
  syn::TyPtr want = elab_ty(ty, sc);
  return check_tm(e, want, sc);
}

Program elaborate_file(const File& f) {
  Program prog;
  bool seen_main = false;
  for (const Decl& d : f.decls) {
    switch (d.k) {
      case Decl::K::Type: {
        if (prog.sig.types.count(d.name) || prog.sig.terms.count(d.name)) {
          throw ElaborationError("duplicate declaration of '" + d.name +
                                 "' at line " + std::to_string(d.line));
        }
        prog.sig.types[d.name] = syn::ctx_empty();
        prog.type_order.push_back(d.name);
        break;
      }
      case Decl::K::Term: {
        if (prog.sig.types.count(d.name) || prog.sig.terms.count(d.name)) {
          throw ElaborationError("duplicate declaration of '" + d.name +
                                 "' at line " + std::to_string(d.line));
        }
        syn::TyPtr ty = elaborate_type(d.type, prog.sig);
        syn::check(ty, prog.sig);
        prog.sig.terms[d.name] = ty;
        prog.term_order.push_back(d.name);
        break;
      }
      case Decl::K::Main: {
        if (seen_main) {
          throw ElaborationError("duplicate main declaration at line " +
                                 std::to_string(d.line));
        }
        seen_main = true;
        syn::TyPtr ty = elaborate_type(d.type, prog.sig);
        syn::TmPtr tm = elaborate_term(d.expr, d.type, prog.sig);
        syn::check(ty, prog.sig);
        syn::check(tm, prog.sig);
        prog.main = tm;
        prog.main_ty = ty;
        break;
      }
    }
  }
  return prog;
}

// ------------------------------------------------------------- readback

namespace {

// number of p factors when the substitution is a composite of weakenings
int p_spine(const syn::SubPtr& s) {
  switch (s->k) {
    case syn::Sub::K::P:
      return 1;
    case syn::Sub::K::Comp: {
      int a = p_spine(s->outer);
      int b = p_spine(s->inner);
      return (a < 0 || b < 0) ? -1 : a + b;
    }
    default:
      return -1;
  }
}

std::string fresh_binder(const std::vector<std::string>& names) {
  return "x" + std::to_string(names.size());
}

SExprPtr rb_tm(const syn::TmPtr& t, std::vector<std::string>& names);

SExprPtr rb_ty(const syn::TyPtr& t, std::vector<std::string>& names) {
  switch (t->k) {
    case syn::Ty::K::Base:
      if (t->ctx->k != syn::Ctx::K::Empty) {
        throw Unreadable("no surface syntax for a base type over " +
                         syn::print(t->ctx));
      }
      return s_var(t->name);
    case syn::Ty::K::Subst:
      if (t->a->k == syn::Ty::K::Base &&
          t->sub->k == syn::Sub::K::Terminal) {
        return s_var(t->a->name);
      }
      throw Unreadable("no surface syntax for the type substitution " +
                       syn::print(t));
    case syn::Ty::K::Sigma:
    case syn::Ty::K::Pi: {
      SExprPtr dom = rb_ty(t->a, names);
      names.push_back(fresh_binder(names));
      SExprPtr body = rb_ty(t->b, names);
      std::string x = names.back();
      names.pop_back();
      return t->k == syn::Ty::K::Pi ? s_pi(x, dom, body) : s_sig(x, dom, body);
    }
    case syn::Ty::K::Id:
      return s_id(rb_ty(t->a, names), rb_tm(t->t1, names),
                  rb_tm(t->t2, names));
    case syn::Ty::K::Bar:
      throw Unreadable("no surface syntax for context types");
  }
  throw Unreadable("unrecognized type form");
}

SExprPtr rb_tm(const syn::TmPtr& t, std::vector<std::string>& names) {
  switch (t->k) {
    case syn::Tm::K::Q:
      if (names.empty()) {
        throw Unreadable("variable outside any binder: " + syn::print(t));
      }
      return s_var(names.back());
    case syn::Tm::K::SubstTm: {
      if (t->a->k == syn::Tm::K::BaseTm &&
          t->sub->k == syn::Sub::K::Terminal) {
        return s_var(t->a->name);
      }
      if (t->a->k == syn::Tm::K::Q) {
        int n = p_spine(t->sub);
        if (n >= 0) {
          if (static_cast<std::size_t>(n) >= names.size()) {
            throw Unreadable("variable escapes its scope: " + syn::print(t));
          }
          return s_var(names[names.size() - 1 - static_cast<std::size_t>(n)]);
        }
      }
      throw Unreadable("no surface syntax for the substitution " +
                       syn::print(t));
    }
    case syn::Tm::K::Refl:
      return s_refl();
    case syn::Tm::K::PairTm:
      return s_pair(rb_tm(t->a, names), rb_tm(t->b, names));
    case syn::Tm::K::Proj1:
      return s_fst(rb_tm(t->a, names));
    case syn::Tm::K::Proj2:
      return s_snd(rb_tm(t->a, names));
    case syn::Tm::K::Lam: {
      names.push_back(fresh_binder(names));
      SExprPtr body = rb_tm(t->a, names);
      std::string x = names.back();
      names.pop_back();
      return s_lam(x, body);
    }
    case syn::Tm::K::Ap:
      return s_app(rb_tm(t->a, names), rb_tm(t->b, names));
    case syn::Tm::K::BarSub:
      throw Unreadable("no surface syntax for context reification");
    case syn::Tm::K::BaseTm:
      return s_var(t->name);
  }
  throw Unreadable("unrecognized term form");
}

}  // namespace

SExprPtr readback_tm(const syn::TmPtr& t) {
  std::vector<std::string> names;
  return rb_tm(t, names);
}

SExprPtr readback_ty(const syn::TyPtr& t) {
  std::vector<std::string> names;
  return rb_ty(t, names);
}

}  // namespace cwfkit::surface
