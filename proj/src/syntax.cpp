#include "cwfkit/syntax.hpp"

#include <optional>
#include <sstream>
#include <utility>

namespace cwfkit::syn {

namespace {

thread_local std::string g_masked_rule;

bool masked(const char* rule) { return g_masked_rule == rule; }

template <class T, class... Args>
std::shared_ptr<const T> node(Args&&... args) {
  return std::make_shared<const T>(T{std::forward<Args>(args)...});
}

}  // namespace

RuleMask::RuleMask(std::string rule) { g_masked_rule = std::move(rule); }
RuleMask::~RuleMask() { g_masked_rule.clear(); }

CtxPtr ctx_empty() {
  static const CtxPtr e = node<Ctx>(Ctx::K::Empty);
  return e;
}
CtxPtr ctx_ext(CtxPtr ctx, TyPtr ty) {
  return node<Ctx>(Ctx::K::Ext, std::move(ctx), std::move(ty));
}
CtxPtr ctx_named(std::string name) {
  return node<Ctx>(Ctx::K::Named, nullptr, nullptr, std::move(name));
}

SubPtr sub_id(CtxPtr ctx) { return node<Sub>(Sub::K::Id, std::move(ctx)); }
SubPtr sub_comp(SubPtr outer, SubPtr inner) {
  return node<Sub>(Sub::K::Comp, nullptr, std::move(outer), std::move(inner));
}
SubPtr sub_terminal(CtxPtr src) { return node<Sub>(Sub::K::Terminal, std::move(src)); }
SubPtr sub_p(TyPtr ty) {
  return node<Sub>(Sub::K::P, nullptr, nullptr, nullptr, std::move(ty));
}
SubPtr sub_pair(SubPtr gamma, TmPtr a, TyPtr ty) {
  return node<Sub>(Sub::K::Pair, nullptr, nullptr, nullptr, std::move(ty),
                   std::move(gamma), std::move(a));
}
SubPtr sub_dem(CtxPtr ctx) { return node<Sub>(Sub::K::DemIso, std::move(ctx)); }
SubPtr sub_dem_inv(CtxPtr ctx) { return node<Sub>(Sub::K::DemIsoInv, std::move(ctx)); }

TyPtr ty_base(std::string name, CtxPtr ctx) {
  return node<Ty>(Ty::K::Base, std::move(name), std::move(ctx));
}
TyPtr ty_subst(TyPtr a, SubPtr sub) {
  return node<Ty>(Ty::K::Subst, "", nullptr, std::move(a), std::move(sub));
}
TyPtr ty_sigma(TyPtr a, TyPtr b) {
  return node<Ty>(Ty::K::Sigma, "", nullptr, std::move(a), nullptr, std::move(b));
}
TyPtr ty_pi(TyPtr a, TyPtr b) {
  return node<Ty>(Ty::K::Pi, "", nullptr, std::move(a), nullptr, std::move(b));
}
TyPtr ty_id(TyPtr a, TmPtr t1, TmPtr t2) {
  return node<Ty>(Ty::K::Id, "", nullptr, std::move(a), nullptr, nullptr,
                  std::move(t1), std::move(t2));
}
TyPtr ty_bar(CtxPtr ctx) { return node<Ty>(Ty::K::Bar, "", std::move(ctx)); }

TmPtr tm_q(TyPtr ty) { return node<Tm>(Tm::K::Q, std::move(ty)); }
TmPtr tm_subst(TmPtr a, SubPtr sub) {
  return node<Tm>(Tm::K::SubstTm, nullptr, std::move(a), std::move(sub));
}
TmPtr tm_refl(TyPtr a, TmPtr t) {
  return node<Tm>(Tm::K::Refl, std::move(a), std::move(t));
}
TmPtr tm_pair(TmPtr a, TmPtr b, TyPtr bty) {
  return node<Tm>(Tm::K::PairTm, std::move(bty), std::move(a), nullptr, std::move(b));
}
TmPtr tm_proj1(TmPtr c) { return node<Tm>(Tm::K::Proj1, nullptr, std::move(c)); }
TmPtr tm_proj2(TmPtr c) { return node<Tm>(Tm::K::Proj2, nullptr, std::move(c)); }
TmPtr tm_lam(TmPtr b) { return node<Tm>(Tm::K::Lam, nullptr, std::move(b)); }
TmPtr tm_ap(TmPtr c, TmPtr a) {
  return node<Tm>(Tm::K::Ap, nullptr, std::move(c), nullptr, std::move(a));
}
TmPtr tm_bar_sub(SubPtr delta) {
  return node<Tm>(Tm::K::BarSub, nullptr, nullptr, std::move(delta));
}
TmPtr tm_base(std::string name, TyPtr ty) {
  return node<Tm>(Tm::K::BaseTm, std::move(ty), nullptr, nullptr, nullptr,
                  std::move(name));
}

bool eq(const CtxPtr& x, const CtxPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->k != y->k) return false;
  switch (x->k) {
    case Ctx::K::Empty: return true;
    case Ctx::K::Ext: return eq(x->ctx, y->ctx) && eq(x->ty, y->ty);
    case Ctx::K::Named: return x->name == y->name;
  }
  return false;
}

bool eq(const SubPtr& x, const SubPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->k != y->k) return false;
  switch (x->k) {
    case Sub::K::Id:
    case Sub::K::Terminal:
    case Sub::K::DemIso:
    case Sub::K::DemIsoInv: return eq(x->ctx, y->ctx);
    case Sub::K::Comp: return eq(x->outer, y->outer) && eq(x->inner, y->inner);
    case Sub::K::P: return eq(x->ty, y->ty);
    case Sub::K::Pair:
      return eq(x->sub, y->sub) && eq(x->tm, y->tm) && eq(x->ty, y->ty);
  }
  return false;
}

bool eq(const TyPtr& x, const TyPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->k != y->k) return false;
  switch (x->k) {
    case Ty::K::Base: return x->name == y->name && eq(x->ctx, y->ctx);
    case Ty::K::Subst: return eq(x->a, y->a) && eq(x->sub, y->sub);
    case Ty::K::Sigma:
    case Ty::K::Pi: return eq(x->a, y->a) && eq(x->b, y->b);
    case Ty::K::Id:
      return eq(x->a, y->a) && eq(x->t1, y->t1) && eq(x->t2, y->t2);
    case Ty::K::Bar: return eq(x->ctx, y->ctx);
  }
  return false;
}

bool eq(const TmPtr& x, const TmPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->k != y->k) return false;
  switch (x->k) {
    case Tm::K::Q: return eq(x->ty, y->ty);
    case Tm::K::SubstTm: return eq(x->a, y->a) && eq(x->sub, y->sub);
    case Tm::K::Refl: return eq(x->ty, y->ty) && eq(x->a, y->a);
    case Tm::K::PairTm:
      return eq(x->a, y->a) && eq(x->b, y->b) && eq(x->ty, y->ty);
    case Tm::K::Proj1:
    case Tm::K::Proj2:
    case Tm::K::Lam: return eq(x->a, y->a);
    case Tm::K::Ap: return eq(x->a, y->a) && eq(x->b, y->b);
    case Tm::K::BarSub: return eq(x->sub, y->sub);
    case Tm::K::BaseTm: return x->name == y->name && eq(x->ty, y->ty);
  }
  return false;
}

std::size_t size(const CtxPtr& x) {
  switch (x->k) {
    case Ctx::K::Empty:
    case Ctx::K::Named: return 1;
    case Ctx::K::Ext: return 1 + size(x->ctx) + size(x->ty);
  }
  return 1;
}

std::size_t size(const SubPtr& x) {
  switch (x->k) {
    case Sub::K::Id:
    case Sub::K::Terminal:
    case Sub::K::DemIso:
    case Sub::K::DemIsoInv: return 1 + size(x->ctx);
    case Sub::K::Comp: return 1 + size(x->outer) + size(x->inner);
    case Sub::K::P: return 1 + size(x->ty);
    case Sub::K::Pair: return 1 + size(x->sub) + size(x->tm) + size(x->ty);
  }
  return 1;
}

std::size_t size(const TyPtr& x) {
  switch (x->k) {
    case Ty::K::Base: return 1 + size(x->ctx);
    case Ty::K::Subst: return 1 + size(x->a) + size(x->sub);
    case Ty::K::Sigma:
    case Ty::K::Pi: return 1 + size(x->a) + size(x->b);
    case Ty::K::Id: return 1 + size(x->a) + size(x->t1) + size(x->t2);
    case Ty::K::Bar: return 1 + size(x->ctx);
  }
  return 1;
}

std::size_t size(const TmPtr& x) {
  switch (x->k) {
    case Tm::K::Q: return 1 + size(x->ty);
    case Tm::K::SubstTm: return 1 + size(x->a) + size(x->sub);
    case Tm::K::Refl: return 1 + size(x->ty) + size(x->a);
    case Tm::K::PairTm: return 1 + size(x->a) + size(x->b) + size(x->ty);
    case Tm::K::Proj1:
    case Tm::K::Proj2:
    case Tm::K::Lam: return 1 + size(x->a);
    case Tm::K::Ap: return 1 + size(x->a) + size(x->b);
    case Tm::K::BarSub: return 1 + size(x->sub);
    case Tm::K::BaseTm: return 1 + size(x->ty);
  }
  return 1;
}

CtxPtr ctx_of(const TyPtr& t) {
  switch (t->k) {
    case Ty::K::Base: return t->ctx;
    case Ty::K::Subst: return domcod(t->sub).first;
    case Ty::K::Sigma:
    case Ty::K::Pi:
    case Ty::K::Id: return ctx_of(t->a);
    case Ty::K::Bar: return ctx_empty();
  }
  throw IllFormed("ctx_of: bad type node");
}

CtxPtr ctx_of(const TmPtr& t) {
  switch (t->k) {
    case Tm::K::Q: return ctx_ext(ctx_of(t->ty), t->ty);
    case Tm::K::SubstTm: return domcod(t->sub).first;
    case Tm::K::Refl: return ctx_of(t->ty);
    case Tm::K::PairTm: return ctx_of(t->a);
    case Tm::K::Proj1:
    case Tm::K::Proj2: return ctx_of(t->a);
    case Tm::K::Lam: {
      CtxPtr inner = ctx_of(t->a);
      if (inner->k != Ctx::K::Ext)
        throw IllFormed("lam body does not live in an extended context");
      return inner->ctx;
    }
    case Tm::K::Ap: return ctx_of(t->a);
    case Tm::K::BarSub:
      return ctx_ext(ctx_empty(), ty_bar(domcod(t->sub).first));
    case Tm::K::BaseTm: return ctx_of(t->ty);
  }
  throw IllFormed("ctx_of: bad term node");
}

std::pair<CtxPtr, CtxPtr> domcod(const SubPtr& s) {
  switch (s->k) {
    case Sub::K::Id: return {s->ctx, s->ctx};
    case Sub::K::Comp: {
      auto inner = domcod(s->inner);
      auto outer = domcod(s->outer);
      return {inner.first, outer.second};
    }
    case Sub::K::Terminal: return {s->ctx, ctx_empty()};
    case Sub::K::P: {
      CtxPtr base = ctx_of(s->ty);
      return {ctx_ext(base, s->ty), base};
    }
    case Sub::K::Pair: {
      CtxPtr base = ctx_of(s->ty);
      return {domcod(s->sub).first, ctx_ext(base, s->ty)};
    }
    case Sub::K::DemIso: return {s->ctx, ctx_ext(ctx_empty(), ty_bar(s->ctx))};
    case Sub::K::DemIsoInv: return {ctx_ext(ctx_empty(), ty_bar(s->ctx)), s->ctx};
  }
  throw IllFormed("domcod: bad substitution node");
}

SubPtr weaken_pair(const SubPtr& delta, const TyPtr& a) {
  TyPtr moved = ty_subst(a, delta);
  return sub_pair(sub_comp(delta, sub_p(moved)), tm_q(moved), a);
}

namespace {

std::optional<std::pair<CtxPtr, CtxPtr>> maybe_domcod(const SubPtr& s) {
  try {
    return domcod(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<CtxPtr> maybe_ctx_of(const TmPtr& t) {
  try {
    return ctx_of(t);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<CtxPtr> maybe_ctx_of(const TyPtr& t) {
  try {
    return ctx_of(t);
  } catch (const Error&) {
    return std::nullopt;
  }
}

template <class Ptr>
struct Red {
  const char* rule;
  Ptr out;
};

using SubReds = std::vector<Red<SubPtr>>;
using TyReds = std::vector<Red<TyPtr>>;
using TmReds = std::vector<Red<TmPtr>>;

void root_reducts(const SubPtr& s, SubReds& out);
void root_reducts(const TyPtr& t, TyReds& out);
void root_reducts(const TmPtr& t, TmReds& out);

void push(SubReds& out, const char* rule, SubPtr v) {
  if (!masked(rule)) out.push_back({rule, std::move(v)});
}
void push(TyReds& out, const char* rule, TyPtr v) {
  if (!masked(rule)) out.push_back({rule, std::move(v)});
}
void push(TmReds& out, const char* rule, TmPtr v) {
  if (!masked(rule)) out.push_back({rule, std::move(v)});
}

void root_reducts(const SubPtr& s, SubReds& out) {
  switch (s->k) {
    case Sub::K::Comp: {
      const SubPtr& f = s->outer;
      const SubPtr& g = s->inner;
      if (g->k == Sub::K::Id) push(out, "sub-id-right", f);
      if (f->k == Sub::K::Id) push(out, "sub-id-left", g);
      if (f->k == Sub::K::Comp)
        push(out, "sub-assoc", sub_comp(f->outer, sub_comp(f->inner, g)));
      if (f->k == Sub::K::P && g->k == Sub::K::Pair) push(out, "p-pair", g->sub);
      if (f->k == Sub::K::Pair)
        push(out, "pair-comp",
             sub_pair(sub_comp(f->sub, g), tm_subst(f->tm, g), f->ty));
      if (f->k == Sub::K::DemIso && g->k == Sub::K::DemIsoInv && eq(f->ctx, g->ctx))
        push(out, "dem-iso-section",
             sub_id(ctx_ext(ctx_empty(), ty_bar(f->ctx))));
      if (f->k == Sub::K::DemIso && g->k == Sub::K::Comp &&
          g->outer->k == Sub::K::DemIsoInv && eq(f->ctx, g->outer->ctx))
        push(out, "dem-iso-section", g->inner);
      if (f->k == Sub::K::DemIsoInv && g->k == Sub::K::DemIso && eq(f->ctx, g->ctx))
        push(out, "dem-iso-retraction", sub_id(f->ctx));
      if (f->k == Sub::K::DemIsoInv && g->k == Sub::K::Comp &&
          g->outer->k == Sub::K::DemIso && eq(f->ctx, g->outer->ctx))
        push(out, "dem-iso-retraction", g->inner);
      break;
    }
    case Sub::K::Pair: {
      const SubPtr& g = s->sub;
      const TmPtr& a = s->tm;
      if (a->k == Tm::K::Q && eq(a->ty, s->ty)) {
        if (g->k == Sub::K::P && eq(g->ty, s->ty))
          push(out, "pair-eta", sub_id(ctx_ext(ctx_of(s->ty), s->ty)));
        else if (g->k == Sub::K::Terminal) {
          auto base = maybe_ctx_of(s->ty);
          if (base && (*base)->k == Ctx::K::Empty &&
              eq(g->ctx, ctx_ext(ctx_empty(), s->ty)))
            push(out, "pair-eta", sub_id(ctx_ext(ctx_empty(), s->ty)));
        }
      }
      if (g->k == Sub::K::Comp && g->outer->k == Sub::K::P &&
          eq(g->outer->ty, s->ty) && a->k == Tm::K::SubstTm &&
          a->a->k == Tm::K::Q && eq(a->a->ty, s->ty) && eq(g->inner, a->sub))
        push(out, "pair-eta", g->inner);
      break;
    }
    default: break;
  }
  // maps into the empty context are unique; canonicalize them (democracy
  // isos stay rigid so their cancellation rules can fire)
  if (s->k == Sub::K::Comp || s->k == Sub::K::P || s->k == Sub::K::Pair ||
      s->k == Sub::K::Terminal) {
    if (auto dc = maybe_domcod(s)) {
      if (dc->second->k == Ctx::K::Empty) {
        if (dc->first->k == Ctx::K::Empty) {
          push(out, "terminal-empty", sub_id(ctx_empty()));
        } else if (s->k != Sub::K::Terminal) {
          push(out, "terminal-unique", sub_terminal(dc->first));
        }
      }
    }
  }
}

void root_reducts(const TyPtr& t, TyReds& out) {
  if (t->k != Ty::K::Subst) return;
  const TyPtr& a = t->a;
  const SubPtr& d = t->sub;
  if (a->k == Ty::K::Subst)
    push(out, "ty-subst-comp", ty_subst(a->a, sub_comp(a->sub, d)));
  if (d->k == Sub::K::Id) push(out, "ty-subst-id", a);
  if (a->k == Ty::K::Sigma)
    push(out, "sigma-subst",
         ty_sigma(ty_subst(a->a, d), ty_subst(a->b, weaken_pair(d, a->a))));
  if (a->k == Ty::K::Pi)
    push(out, "pi-subst",
         ty_pi(ty_subst(a->a, d), ty_subst(a->b, weaken_pair(d, a->a))));
  if (a->k == Ty::K::Id)
    push(out, "id-subst",
         ty_id(ty_subst(a->a, d), tm_subst(a->t1, d), tm_subst(a->t2, d)));
}

// peel a final weakening off a right-nested composition spine:
// f1 . (f2 . ... (fk . p)) becomes f1 . (f2 . ... fk)
std::optional<SubPtr> strip_trailing_p(const SubPtr& s, const TyPtr& ty) {
  if (s->k != Sub::K::Comp) return std::nullopt;
  const SubPtr& tail = s->inner;
  if (tail->k == Sub::K::P && eq(tail->ty, ty)) return s->outer;
  if (auto rest = strip_trailing_p(tail, ty)) return sub_comp(s->outer, *rest);
  return std::nullopt;
}

void root_reducts(const TmPtr& t, TmReds& out) {
  switch (t->k) {
    case Tm::K::SubstTm: {
      const TmPtr& a = t->a;
      const SubPtr& d = t->sub;
      if (a->k == Tm::K::SubstTm)
        push(out, "tm-subst-comp", tm_subst(a->a, sub_comp(a->sub, d)));
      if (d->k == Sub::K::Id) push(out, "tm-subst-id", a);
      if (a->k == Tm::K::Q && d->k == Sub::K::Pair) push(out, "q-pair", d->tm);
      if (a->k == Tm::K::Refl)
        push(out, "refl-subst", tm_refl(ty_subst(a->ty, d), tm_subst(a->a, d)));
      if (a->k == Tm::K::PairTm) {
        auto bctx = maybe_ctx_of(a->ty);
        if (bctx && (*bctx)->k == Ctx::K::Ext)
          push(out, "pair-subst",
               tm_pair(tm_subst(a->a, d), tm_subst(a->b, d),
                       ty_subst(a->ty, weaken_pair(d, (*bctx)->ty))));
      }
      if (a->k == Tm::K::Proj1) push(out, "proj1-subst", tm_proj1(tm_subst(a->a, d)));
      if (a->k == Tm::K::Proj2) push(out, "proj2-subst", tm_proj2(tm_subst(a->a, d)));
      if (a->k == Tm::K::Lam) {
        auto bctx = maybe_ctx_of(a->a);
        if (bctx && (*bctx)->k == Ctx::K::Ext)
          push(out, "lam-subst",
               tm_lam(tm_subst(a->a, weaken_pair(d, (*bctx)->ty))));
      }
      if (a->k == Tm::K::Ap)
        push(out, "ap-subst", tm_ap(tm_subst(a->a, d), tm_subst(a->b, d)));
      break;
    }
    case Tm::K::Proj1:
      if (t->a->k == Tm::K::PairTm) push(out, "sigma-beta-1", t->a->a);
      break;
    case Tm::K::Proj2:
      if (t->a->k == Tm::K::PairTm) push(out, "sigma-beta-2", t->a->b);
      break;
    case Tm::K::Ap:
      if (t->a->k == Tm::K::Lam) {
        auto bctx = maybe_ctx_of(t->a->a);
        if (bctx && (*bctx)->k == Ctx::K::Ext)
          push(out, "pi-beta",
               tm_subst(t->a->a,
                        sub_pair(sub_id((*bctx)->ctx), t->b, (*bctx)->ty)));
      }
      break;
    case Tm::K::PairTm:
      if (t->a->k == Tm::K::Proj1 && t->b->k == Tm::K::Proj2 && eq(t->a->a, t->b->a))
        push(out, "sigma-eta", t->a->a);
      break;
    case Tm::K::Lam: {
      const TmPtr& body = t->a;
      if (body->k == Tm::K::Ap && body->a->k == Tm::K::SubstTm &&
          body->b->k == Tm::K::Q) {
        const SubPtr& sigma = body->a->sub;
        if (sigma->k == Sub::K::P && eq(sigma->ty, body->b->ty)) {
          push(out, "pi-eta", body->a->a);
        } else if (auto rest = strip_trailing_p(sigma, body->b->ty)) {
          push(out, "pi-eta", tm_subst(body->a->a, *rest));
        }
      }
      break;
    }
    case Tm::K::BarSub: {
      if (auto dc = maybe_domcod(t->sub)) {
        const CtxPtr& from = dc->first;
        const CtxPtr& to = dc->second;
        push(out, "dem-bar",
             tm_subst(tm_q(ty_bar(to)),
                      sub_comp(sub_dem(to), sub_comp(t->sub, sub_dem_inv(from)))));
      }
      break;
    }
    default: break;
  }
}

// leftmost-innermost single step
template <class Ptr>
struct Stepped {
  const char* rule;
  Ptr out;
};

std::optional<Stepped<CtxPtr>> step(const CtxPtr&);
std::optional<Stepped<SubPtr>> step(const SubPtr&);
std::optional<Stepped<TyPtr>> step(const TyPtr&);
std::optional<Stepped<TmPtr>> step(const TmPtr&);

std::optional<Stepped<CtxPtr>> step(const CtxPtr& c) {
  if (c->k != Ctx::K::Ext) return std::nullopt;
  if (auto s = step(c->ctx)) return {{s->rule, ctx_ext(s->out, c->ty)}};
  if (auto s = step(c->ty)) return {{s->rule, ctx_ext(c->ctx, s->out)}};
  return std::nullopt;
}

std::optional<Stepped<SubPtr>> step(const SubPtr& s) {
  switch (s->k) {
    case Sub::K::Id:
    case Sub::K::Terminal:
    case Sub::K::DemIso:
    case Sub::K::DemIsoInv: {
      if (auto r = step(s->ctx)) {
        SubPtr rebuilt = s->k == Sub::K::Id          ? sub_id(r->out)
                         : s->k == Sub::K::Terminal  ? sub_terminal(r->out)
                         : s->k == Sub::K::DemIso    ? sub_dem(r->out)
                                                     : sub_dem_inv(r->out);
        return {{r->rule, rebuilt}};
      }
      break;
    }
    case Sub::K::Comp:
      if (auto r = step(s->outer)) return {{r->rule, sub_comp(r->out, s->inner)}};
      if (auto r = step(s->inner)) return {{r->rule, sub_comp(s->outer, r->out)}};
      break;
    case Sub::K::P:
      if (auto r = step(s->ty)) return {{r->rule, sub_p(r->out)}};
      break;
    case Sub::K::Pair:
      if (auto r = step(s->sub)) return {{r->rule, sub_pair(r->out, s->tm, s->ty)}};
      if (auto r = step(s->tm)) return {{r->rule, sub_pair(s->sub, r->out, s->ty)}};
      if (auto r = step(s->ty)) return {{r->rule, sub_pair(s->sub, s->tm, r->out)}};
      break;
  }
  SubReds reds;
  root_reducts(s, reds);
  if (!reds.empty()) return {{reds.front().rule, reds.front().out}};
  return std::nullopt;
}

std::optional<Stepped<TyPtr>> step(const TyPtr& t) {
  switch (t->k) {
    case Ty::K::Base:
      if (auto r = step(t->ctx)) return {{r->rule, ty_base(t->name, r->out)}};
      break;
    case Ty::K::Subst:
      if (auto r = step(t->a)) return {{r->rule, ty_subst(r->out, t->sub)}};
      if (auto r = step(t->sub)) return {{r->rule, ty_subst(t->a, r->out)}};
      break;
    case Ty::K::Sigma:
      if (auto r = step(t->a)) return {{r->rule, ty_sigma(r->out, t->b)}};
      if (auto r = step(t->b)) return {{r->rule, ty_sigma(t->a, r->out)}};
      break;
    case Ty::K::Pi:
      if (auto r = step(t->a)) return {{r->rule, ty_pi(r->out, t->b)}};
      if (auto r = step(t->b)) return {{r->rule, ty_pi(t->a, r->out)}};
      break;
    case Ty::K::Id:
      if (auto r = step(t->a)) return {{r->rule, ty_id(r->out, t->t1, t->t2)}};
      if (auto r = step(t->t1)) return {{r->rule, ty_id(t->a, r->out, t->t2)}};
      if (auto r = step(t->t2)) return {{r->rule, ty_id(t->a, t->t1, r->out)}};
      break;
    case Ty::K::Bar:
      if (auto r = step(t->ctx)) return {{r->rule, ty_bar(r->out)}};
      break;
  }
  TyReds reds;
  root_reducts(t, reds);
  if (!reds.empty()) return {{reds.front().rule, reds.front().out}};
  return std::nullopt;
}

std::optional<Stepped<TmPtr>> step(const TmPtr& t) {
  switch (t->k) {
    case Tm::K::Q:
      if (auto r = step(t->ty)) return {{r->rule, tm_q(r->out)}};
      break;
    case Tm::K::SubstTm:
      if (auto r = step(t->a)) return {{r->rule, tm_subst(r->out, t->sub)}};
      if (auto r = step(t->sub)) return {{r->rule, tm_subst(t->a, r->out)}};
      break;
    case Tm::K::Refl:
      if (auto r = step(t->ty)) return {{r->rule, tm_refl(r->out, t->a)}};
      if (auto r = step(t->a)) return {{r->rule, tm_refl(t->ty, r->out)}};
      break;
    case Tm::K::PairTm:
      if (auto r = step(t->a)) return {{r->rule, tm_pair(r->out, t->b, t->ty)}};
      if (auto r = step(t->b)) return {{r->rule, tm_pair(t->a, r->out, t->ty)}};
      if (auto r = step(t->ty)) return {{r->rule, tm_pair(t->a, t->b, r->out)}};
      break;
    case Tm::K::Proj1:
      if (auto r = step(t->a)) return {{r->rule, tm_proj1(r->out)}};
      break;
    case Tm::K::Proj2:
      if (auto r = step(t->a)) return {{r->rule, tm_proj2(r->out)}};
      break;
    case Tm::K::Lam:
      if (auto r = step(t->a)) return {{r->rule, tm_lam(r->out)}};
      break;
    case Tm::K::Ap:
      if (auto r = step(t->a)) return {{r->rule, tm_ap(r->out, t->b)}};
      if (auto r = step(t->b)) return {{r->rule, tm_ap(t->a, r->out)}};
      break;
    case Tm::K::BarSub:
      if (auto r = step(t->sub)) return {{r->rule, tm_bar_sub(r->out)}};
      break;
    case Tm::K::BaseTm:
      if (auto r = step(t->ty)) return {{r->rule, tm_base(t->name, r->out)}};
      break;
  }
  TmReds reds;
  root_reducts(t, reds);
  if (!reds.empty()) return {{reds.front().rule, reds.front().out}};
  return std::nullopt;
}

template <class Ptr>
Ptr run_normalize(Ptr cur, int budget, Trace* trace) {
  int left = budget;
  while (true) {
    auto r = step(cur);
    if (!r) return cur;
    if (left-- <= 0)
      throw NonTermination("rewrite budget " + std::to_string(budget) +
                           " exhausted; last rule " + std::string(r->rule) +
                           ", size " + std::to_string(size(r->out)));
    cur = r->out;
    if (trace) trace->steps.push_back({r->rule, print(cur)});
  }
}

}  // namespace

CtxPtr normalize(const CtxPtr& c, int budget, Trace* trace) {
  return run_normalize(c, budget, trace);
}
SubPtr normalize(const SubPtr& s, int budget, Trace* trace) {
  return run_normalize(s, budget, trace);
}
TyPtr normalize(const TyPtr& t, int budget, Trace* trace) {
  return run_normalize(t, budget, trace);
}
TmPtr normalize(const TmPtr& t, int budget, Trace* trace) {
  return run_normalize(t, budget, trace);
}

namespace {

// all one-step reducts at every position
std::vector<std::pair<std::string, CtxPtr>> all_steps_ctx(const CtxPtr&);

template <class Out, class Rebuild, class Child>
void collect(Out& out, Rebuild rebuild, const Child& child) {
  for (auto& [rule, reduct] : all_steps(child)) out.emplace_back(rule, rebuild(reduct));
}

template <class Out, class Rebuild>
void collect_ctx(Out& out, Rebuild rebuild, const CtxPtr& child) {
  for (auto& [rule, reduct] : all_steps_ctx(child)) out.emplace_back(rule, rebuild(reduct));
}

std::vector<std::pair<std::string, CtxPtr>> all_steps_ctx(const CtxPtr& c) {
  std::vector<std::pair<std::string, CtxPtr>> out;
  if (c->k == Ctx::K::Ext) {
    collect_ctx(out, [&](CtxPtr x) { return ctx_ext(x, c->ty); }, c->ctx);
    collect(out, [&](TyPtr x) { return ctx_ext(c->ctx, x); }, c->ty);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, SubPtr>> all_steps(const SubPtr& s) {
  std::vector<std::pair<std::string, SubPtr>> out;
  switch (s->k) {
    case Sub::K::Id:
      collect_ctx(out, [&](CtxPtr x) { return sub_id(x); }, s->ctx);
      break;
    case Sub::K::Terminal:
      collect_ctx(out, [&](CtxPtr x) { return sub_terminal(x); }, s->ctx);
      break;
    case Sub::K::DemIso:
      collect_ctx(out, [&](CtxPtr x) { return sub_dem(x); }, s->ctx);
      break;
    case Sub::K::DemIsoInv:
      collect_ctx(out, [&](CtxPtr x) { return sub_dem_inv(x); }, s->ctx);
      break;
    case Sub::K::Comp:
      collect(out, [&](SubPtr x) { return sub_comp(x, s->inner); }, s->outer);
      collect(out, [&](SubPtr x) { return sub_comp(s->outer, x); }, s->inner);
      break;
    case Sub::K::P:
      collect(out, [&](TyPtr x) { return sub_p(x); }, s->ty);
      break;
    case Sub::K::Pair:
      collect(out, [&](SubPtr x) { return sub_pair(x, s->tm, s->ty); }, s->sub);
      collect(out, [&](TmPtr x) { return sub_pair(s->sub, x, s->ty); }, s->tm);
      collect(out, [&](TyPtr x) { return sub_pair(s->sub, s->tm, x); }, s->ty);
      break;
  }
  SubReds reds;
  root_reducts(s, reds);
  for (auto& r : reds) out.emplace_back(r.rule, r.out);
  return out;
}

std::vector<std::pair<std::string, TyPtr>> all_steps(const TyPtr& t) {
  std::vector<std::pair<std::string, TyPtr>> out;
  switch (t->k) {
    case Ty::K::Base:
      collect_ctx(out, [&](CtxPtr x) { return ty_base(t->name, x); }, t->ctx);
      break;
    case Ty::K::Subst:
      collect(out, [&](TyPtr x) { return ty_subst(x, t->sub); }, t->a);
      collect(out, [&](SubPtr x) { return ty_subst(t->a, x); }, t->sub);
      break;
    case Ty::K::Sigma:
      collect(out, [&](TyPtr x) { return ty_sigma(x, t->b); }, t->a);
      collect(out, [&](TyPtr x) { return ty_sigma(t->a, x); }, t->b);
      break;
    case Ty::K::Pi:
      collect(out, [&](TyPtr x) { return ty_pi(x, t->b); }, t->a);
      collect(out, [&](TyPtr x) { return ty_pi(t->a, x); }, t->b);
      break;
    case Ty::K::Id:
      collect(out, [&](TyPtr x) { return ty_id(x, t->t1, t->t2); }, t->a);
      collect(out, [&](TmPtr x) { return ty_id(t->a, x, t->t2); }, t->t1);
      collect(out, [&](TmPtr x) { return ty_id(t->a, t->t1, x); }, t->t2);
      break;
    case Ty::K::Bar:
      collect_ctx(out, [&](CtxPtr x) { return ty_bar(x); }, t->ctx);
      break;
  }
  TyReds reds;
  root_reducts(t, reds);
  for (auto& r : reds) out.emplace_back(r.rule, r.out);
  return out;
}

std::vector<std::pair<std::string, TmPtr>> all_steps(const TmPtr& t) {
  std::vector<std::pair<std::string, TmPtr>> out;
  switch (t->k) {
    case Tm::K::Q:
      collect(out, [&](TyPtr x) { return tm_q(x); }, t->ty);
      break;
    case Tm::K::SubstTm:
      collect(out, [&](TmPtr x) { return tm_subst(x, t->sub); }, t->a);
      collect(out, [&](SubPtr x) { return tm_subst(t->a, x); }, t->sub);
      break;
    case Tm::K::Refl:
      collect(out, [&](TyPtr x) { return tm_refl(x, t->a); }, t->ty);
      collect(out, [&](TmPtr x) { return tm_refl(t->ty, x); }, t->a);
      break;
    case Tm::K::PairTm:
      collect(out, [&](TmPtr x) { return tm_pair(x, t->b, t->ty); }, t->a);
      collect(out, [&](TmPtr x) { return tm_pair(t->a, x, t->ty); }, t->b);
      collect(out, [&](TyPtr x) { return tm_pair(t->a, t->b, x); }, t->ty);
      break;
    case Tm::K::Proj1:
      collect(out, [&](TmPtr x) { return tm_proj1(x); }, t->a);
      break;
    case Tm::K::Proj2:
      collect(out, [&](TmPtr x) { return tm_proj2(x); }, t->a);
      break;
    case Tm::K::Lam:
      collect(out, [&](TmPtr x) { return tm_lam(x); }, t->a);
      break;
    case Tm::K::Ap:
      collect(out, [&](TmPtr x) { return tm_ap(x, t->b); }, t->a);
      collect(out, [&](TmPtr x) { return tm_ap(t->a, x); }, t->b);
      break;
    case Tm::K::BarSub:
      collect(out, [&](SubPtr x) { return tm_bar_sub(x); }, t->sub);
      break;
    case Tm::K::BaseTm:
      collect(out, [&](TyPtr x) { return tm_base(t->name, x); }, t->ty);
      break;
  }
  TmReds reds;
  root_reducts(t, reds);
  for (auto& r : reds) out.emplace_back(r.rule, r.out);
  return out;
}

TyPtr ty_of(const TmPtr& t) {
  switch (t->k) {
    case Tm::K::Q: return ty_subst(t->ty, sub_p(t->ty));
    case Tm::K::SubstTm: return ty_subst(ty_of(t->a), t->sub);
    case Tm::K::Refl: return ty_id(t->ty, t->a, t->a);
    case Tm::K::PairTm: {
      CtxPtr bctx = normalize(ctx_of(t->ty));
      if (bctx->k != Ctx::K::Ext)
        throw IllFormed("pair annotation does not live in an extended context");
      return ty_sigma(bctx->ty, t->ty);
    }
    case Tm::K::Proj1: {
      TyPtr c = normalize(ty_of(t->a));
      if (c->k != Ty::K::Sigma) throw IllFormed("fst of a non-pair type");
      return c->a;
    }
    case Tm::K::Proj2: {
      TyPtr c = normalize(ty_of(t->a));
      if (c->k != Ty::K::Sigma) throw IllFormed("snd of a non-pair type");
      CtxPtr base = ctx_of(c->a);
      return ty_subst(c->b, sub_pair(sub_id(base), tm_proj1(t->a), c->a));
    }
    case Tm::K::Lam: {
      CtxPtr inner = normalize(ctx_of(t->a));
      if (inner->k != Ctx::K::Ext)
        throw IllFormed("lam body does not live in an extended context");
      return ty_pi(inner->ty, ty_of(t->a));
    }
    case Tm::K::Ap: {
      TyPtr c = normalize(ty_of(t->a));
      if (c->k != Ty::K::Pi) throw IllFormed("application head is not a function");
      CtxPtr base = ctx_of(c->a);
      return ty_subst(c->b, sub_pair(sub_id(base), t->b, c->a));
    }
    case Tm::K::BarSub: {
      auto dc = domcod(t->sub);
      return ty_subst(ty_bar(dc.second), sub_p(ty_bar(dc.first)));
    }
    case Tm::K::BaseTm: return t->ty;
  }
  throw IllFormed("ty_of: bad term node");
}

Eq syn_eq(const TmPtr& x, const TmPtr& y, const TmRefuter& refute, int budget) {
  try {
    if (eq(normalize(x, budget), normalize(y, budget))) return Eq::Equal;
  } catch (const NonTermination&) {
    return Eq::Unknown;
  }
  if (refute && refute(x, y)) return Eq::Distinct;
  return Eq::Unknown;
}

Eq syn_eq(const TyPtr& x, const TyPtr& y, const TyRefuter& refute, int budget) {
  try {
    if (eq(normalize(x, budget), normalize(y, budget))) return Eq::Equal;
  } catch (const NonTermination&) {
    return Eq::Unknown;
  }
  if (refute && refute(x, y)) return Eq::Distinct;
  return Eq::Unknown;
}

Eq syn_eq(const SubPtr& x, const SubPtr& y, const SubRefuter& refute, int budget) {
  try {
    if (eq(normalize(x, budget), normalize(y, budget))) return Eq::Equal;
  } catch (const NonTermination&) {
    return Eq::Unknown;
  }
  if (refute && refute(x, y)) return Eq::Distinct;
  return Eq::Unknown;
}

Eq syn_eq(const CtxPtr& x, const CtxPtr& y, int budget) {
  try {
    if (eq(normalize(x, budget), normalize(y, budget))) return Eq::Equal;
  } catch (const NonTermination&) {
    return Eq::Unknown;
  }
  return Eq::Unknown;
}

namespace {

bool ctx_equal(const CtxPtr& x, const CtxPtr& y) {
  return syn_eq(x, y) == Eq::Equal;
}

[[noreturn]] void ill(const std::string& what, const std::string& detail) {
  throw IllFormed(what + ": " + detail);
}

}  // namespace

std::string Judgment::show() const {
  switch (k) {
    case K::CtxOk: return "ok " + print(ctx);
    case K::Sub: return print(ctx) + " => " + print(cod);
    case K::Ty: return "type over " + print(ctx);
    case K::Tm: return print(ty) + " over " + print(ctx);
  }
  return "?";
}

Judgment check(const CtxPtr& c, const Signature& sig) {
  switch (c->k) {
    case Ctx::K::Empty: return {Judgment::K::CtxOk, c};
    case Ctx::K::Named: {
      for (auto& n : sig.contexts)
        if (n == c->name) return {Judgment::K::CtxOk, c};
      ill("unknown context", c->name);
    }
    case Ctx::K::Ext: {
      check(c->ctx, sig);
      Judgment jt = check(c->ty, sig);
      if (!ctx_equal(jt.ctx, c->ctx))
        ill("extension type lives elsewhere", print(c));
      return {Judgment::K::CtxOk, c};
    }
  }
  ill("bad context node", "");
}

Judgment check(const SubPtr& s, const Signature& sig) {
  switch (s->k) {
    case Sub::K::Id: {
      check(s->ctx, sig);
      return {Judgment::K::Sub, s->ctx, s->ctx};
    }
    case Sub::K::Comp: {
      Judgment jo = check(s->outer, sig);
      Judgment ji = check(s->inner, sig);
      if (!ctx_equal(ji.cod, jo.ctx))
        ill("composition endpoints disagree", print(s));
      return {Judgment::K::Sub, ji.ctx, jo.cod};
    }
    case Sub::K::Terminal: {
      check(s->ctx, sig);
      return {Judgment::K::Sub, s->ctx, ctx_empty()};
    }
    case Sub::K::P: {
      Judgment jt = check(s->ty, sig);
      return {Judgment::K::Sub, ctx_ext(jt.ctx, s->ty), jt.ctx};
    }
    case Sub::K::Pair: {
      Judgment jg = check(s->sub, sig);
      Judgment jt = check(s->ty, sig);
      if (!ctx_equal(jt.ctx, jg.cod))
        ill("pair annotation lives elsewhere", print(s));
      Judgment ja = check(s->tm, sig);
      if (!ctx_equal(ja.ctx, jg.ctx)) ill("pair component lives elsewhere", print(s));
      if (syn_eq(ja.ty, ty_subst(s->ty, s->sub)) != Eq::Equal)
        ill("pair component type mismatch", print(s));
      return {Judgment::K::Sub, jg.ctx, ctx_ext(jg.cod, s->ty)};
    }
    case Sub::K::DemIso: {
      check(s->ctx, sig);
      return {Judgment::K::Sub, s->ctx, ctx_ext(ctx_empty(), ty_bar(s->ctx))};
    }
    case Sub::K::DemIsoInv: {
      check(s->ctx, sig);
      return {Judgment::K::Sub, ctx_ext(ctx_empty(), ty_bar(s->ctx)), s->ctx};
    }
  }
  ill("bad substitution node", "");
}

Judgment check(const TyPtr& t, const Signature& sig) {
  switch (t->k) {
    case Ty::K::Base: {
      auto it = sig.types.find(t->name);
      if (it == sig.types.end()) ill("unknown base type", t->name);
      check(t->ctx, sig);
      if (!ctx_equal(t->ctx, it->second))
        ill("base type used at the wrong context", t->name);
      return {Judgment::K::Ty, t->ctx};
    }
    case Ty::K::Subst: {
      Judgment ja = check(t->a, sig);
      Judgment js = check(t->sub, sig);
      if (!ctx_equal(js.cod, ja.ctx))
        ill("substitution does not reach the type's context", print(t));
      return {Judgment::K::Ty, js.ctx};
    }
    case Ty::K::Sigma:
    case Ty::K::Pi: {
      Judgment ja = check(t->a, sig);
      Judgment jb = check(t->b, sig);
      if (!ctx_equal(jb.ctx, ctx_ext(ja.ctx, t->a)))
        ill("family is not indexed by the first component", print(t));
      return {Judgment::K::Ty, ja.ctx};
    }
    case Ty::K::Id: {
      Judgment ja = check(t->a, sig);
      Judgment j1 = check(t->t1, sig);
      Judgment j2 = check(t->t2, sig);
      if (!ctx_equal(j1.ctx, ja.ctx) || !ctx_equal(j2.ctx, ja.ctx))
        ill("equality endpoints live elsewhere", print(t));
      if (syn_eq(j1.ty, t->a) != Eq::Equal || syn_eq(j2.ty, t->a) != Eq::Equal)
        ill("equality endpoint type mismatch", print(t));
      return {Judgment::K::Ty, ja.ctx};
    }
    case Ty::K::Bar: {
      check(t->ctx, sig);
      return {Judgment::K::Ty, ctx_empty()};
    }
  }
  ill("bad type node", "");
}

Judgment check(const TmPtr& t, const Signature& sig) {
  switch (t->k) {
    case Tm::K::Q: {
      Judgment jt = check(t->ty, sig);
      return {Judgment::K::Tm, ctx_ext(jt.ctx, t->ty), nullptr,
              ty_subst(t->ty, sub_p(t->ty))};
    }
    case Tm::K::SubstTm: {
      Judgment ja = check(t->a, sig);
      Judgment js = check(t->sub, sig);
      if (!ctx_equal(js.cod, ja.ctx))
        ill("substitution does not reach the term's context", print(t));
      return {Judgment::K::Tm, js.ctx, nullptr, ty_subst(ja.ty, t->sub)};
    }
    case Tm::K::Refl: {
      Judgment jA = check(t->ty, sig);
      Judgment ja = check(t->a, sig);
      if (!ctx_equal(ja.ctx, jA.ctx)) ill("refl endpoint lives elsewhere", print(t));
      if (syn_eq(ja.ty, t->ty) != Eq::Equal)
        ill("refl endpoint type mismatch", print(t));
      return {Judgment::K::Tm, jA.ctx, nullptr, ty_id(t->ty, t->a, t->a)};
    }
    case Tm::K::PairTm: {
      Judgment jB = check(t->ty, sig);
      CtxPtr bctx = normalize(jB.ctx);
      if (bctx->k != Ctx::K::Ext)
        ill("pair annotation does not live in an extended context", print(t));
      TyPtr a_ty = bctx->ty;
      Judgment ja = check(t->a, sig);
      if (!ctx_equal(ja.ctx, bctx->ctx)) ill("pair first lives elsewhere", print(t));
      if (syn_eq(ja.ty, a_ty) != Eq::Equal)
        ill("pair first component type mismatch", print(t));
      Judgment jb = check(t->b, sig);
      TyPtr want = ty_subst(t->ty, sub_pair(sub_id(bctx->ctx), t->a, a_ty));
      if (!ctx_equal(jb.ctx, bctx->ctx)) ill("pair second lives elsewhere", print(t));
      if (syn_eq(jb.ty, want) != Eq::Equal)
        ill("pair second component type mismatch", print(t));
      return {Judgment::K::Tm, bctx->ctx, nullptr, ty_sigma(a_ty, t->ty)};
    }
    case Tm::K::Proj1: {
      Judgment jc = check(t->a, sig);
      TyPtr c = normalize(jc.ty);
      if (c->k != Ty::K::Sigma) ill("fst of a non-pair", print(t));
      return {Judgment::K::Tm, jc.ctx, nullptr, c->a};
    }
    case Tm::K::Proj2: {
      Judgment jc = check(t->a, sig);
      TyPtr c = normalize(jc.ty);
      if (c->k != Ty::K::Sigma) ill("snd of a non-pair", print(t));
      return {Judgment::K::Tm, jc.ctx, nullptr,
              ty_subst(c->b, sub_pair(sub_id(jc.ctx), tm_proj1(t->a), c->a))};
    }
    case Tm::K::Lam: {
      Judgment jb = check(t->a, sig);
      CtxPtr inner = normalize(jb.ctx);
      if (inner->k != Ctx::K::Ext)
        ill("lam body does not live in an extended context", print(t));
      return {Judgment::K::Tm, inner->ctx, nullptr, ty_pi(inner->ty, jb.ty)};
    }
    case Tm::K::Ap: {
      Judgment jc = check(t->a, sig);
      TyPtr c = normalize(jc.ty);
      if (c->k != Ty::K::Pi) ill("application head is not a function", print(t));
      Judgment ja = check(t->b, sig);
      if (!ctx_equal(ja.ctx, jc.ctx)) ill("argument lives elsewhere", print(t));
      if (syn_eq(ja.ty, c->a) != Eq::Equal)
        ill("argument type mismatch", print(t));
      return {Judgment::K::Tm, jc.ctx, nullptr,
              ty_subst(c->b, sub_pair(sub_id(jc.ctx), t->b, c->a))};
    }
    case Tm::K::BarSub: {
      Judgment js = check(t->sub, sig);
      return {Judgment::K::Tm, ctx_ext(ctx_empty(), ty_bar(js.ctx)), nullptr,
              ty_subst(ty_bar(js.cod), sub_p(ty_bar(js.ctx)))};
    }
    case Tm::K::BaseTm: {
      auto it = sig.terms.find(t->name);
      if (it == sig.terms.end()) ill("unknown constant", t->name);
      Judgment jt = check(t->ty, sig);
      if (syn_eq(t->ty, it->second) != Eq::Equal)
        ill("constant used at the wrong type", t->name);
      return {Judgment::K::Tm, jt.ctx, nullptr, t->ty};
    }
  }
  ill("bad term node", "");
}

// --- s-expressions ---

namespace {

void pr(std::ostream& os, const CtxPtr& c);
void pr(std::ostream& os, const SubPtr& s);
void pr(std::ostream& os, const TyPtr& t);
void pr(std::ostream& os, const TmPtr& t);

void pr(std::ostream& os, const CtxPtr& c) {
  switch (c->k) {
    case Ctx::K::Empty: os << "empty"; return;
    case Ctx::K::Named: os << "(cx " << c->name << ")"; return;
    case Ctx::K::Ext:
      os << "(ext ";
      pr(os, c->ctx);
      os << ' ';
      pr(os, c->ty);
      os << ')';
      return;
  }
}

void pr(std::ostream& os, const SubPtr& s) {
  switch (s->k) {
    case Sub::K::Id:
      os << "(id ";
      pr(os, s->ctx);
      os << ')';
      return;
    case Sub::K::Comp:
      os << "(comp ";
      pr(os, s->outer);
      os << ' ';
      pr(os, s->inner);
      os << ')';
      return;
    case Sub::K::Terminal:
      os << "(terminal ";
      pr(os, s->ctx);
      os << ')';
      return;
    case Sub::K::P:
      os << "(p ";
      pr(os, s->ty);
      os << ')';
      return;
    case Sub::K::Pair:
      os << "(pair ";
      pr(os, s->sub);
      os << ' ';
      pr(os, s->tm);
      os << ' ';
      pr(os, s->ty);
      os << ')';
      return;
    case Sub::K::DemIso:
      os << "(dem ";
      pr(os, s->ctx);
      os << ')';
      return;
    case Sub::K::DemIsoInv:
      os << "(dem-inv ";
      pr(os, s->ctx);
      os << ')';
      return;
  }
}

void pr(std::ostream& os, const TyPtr& t) {
  switch (t->k) {
    case Ty::K::Base:
      os << "(ty " << t->name << ' ';
      pr(os, t->ctx);
      os << ')';
      return;
    case Ty::K::Subst:
      os << "(subst ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->sub);
      os << ')';
      return;
    case Ty::K::Sigma:
      os << "(sigma ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->b);
      os << ')';
      return;
    case Ty::K::Pi:
      os << "(pi ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->b);
      os << ')';
      return;
    case Ty::K::Id:
      os << "(id-ty ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->t1);
      os << ' ';
      pr(os, t->t2);
      os << ')';
      return;
    case Ty::K::Bar:
      os << "(bar ";
      pr(os, t->ctx);
      os << ')';
      return;
  }
}

void pr(std::ostream& os, const TmPtr& t) {
  switch (t->k) {
    case Tm::K::Q:
      os << "(q ";
      pr(os, t->ty);
      os << ')';
      return;
    case Tm::K::SubstTm:
      os << "(subst-tm ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->sub);
      os << ')';
      return;
    case Tm::K::Refl:
      os << "(refl ";
      pr(os, t->ty);
      os << ' ';
      pr(os, t->a);
      os << ')';
      return;
    case Tm::K::PairTm:
      os << "(pair-tm ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->b);
      os << ' ';
      pr(os, t->ty);
      os << ')';
      return;
    case Tm::K::Proj1:
      os << "(fst ";
      pr(os, t->a);
      os << ')';
      return;
    case Tm::K::Proj2:
      os << "(snd ";
      pr(os, t->a);
      os << ')';
      return;
    case Tm::K::Lam:
      os << "(lam ";
      pr(os, t->a);
      os << ')';
      return;
    case Tm::K::Ap:
      os << "(ap ";
      pr(os, t->a);
      os << ' ';
      pr(os, t->b);
      os << ')';
      return;
    case Tm::K::BarSub:
      os << "(bar-sub ";
      pr(os, t->sub);
      os << ')';
      return;
    case Tm::K::BaseTm:
      os << "(con " << t->name << ' ';
      pr(os, t->ty);
      os << ')';
      return;
  }
}

struct SexpNode {
  std::string atom;  // empty when this is a list
  std::vector<SexpNode> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
};

struct Tokenizer {
  const std::string& text;
  std::size_t pos = 0;
  explicit Tokenizer(const std::string& t) : text(t) {}
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }
  std::optional<std::string> next() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    char c = text[pos];
    if (c == '(' || c == ')') {
      pos++;
      return std::string(1, c);
    }
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      pos++;
    return text.substr(start, pos - start);
  }
};

SexpNode parse_sexp(Tokenizer& tok) {
  auto t = tok.next();
  if (!t) throw SortMismatch("unexpected end of expression");
  if (*t == ")") throw SortMismatch("unexpected ')'");
  if (*t != "(") return SexpNode{*t, {}};
  SexpNode n;
  while (true) {
    tok.skip_ws();
    if (tok.pos < tok.text.size() && tok.text[tok.pos] == ')') {
      tok.pos++;
      return n;
    }
    if (tok.pos >= tok.text.size()) throw SortMismatch("missing ')'");
    n.items.push_back(parse_sexp(tok));
  }
}

CtxPtr to_ctx(const SexpNode&);
SubPtr to_sub(const SexpNode&);
TyPtr to_ty(const SexpNode&);
TmPtr to_tm(const SexpNode&);

[[noreturn]] void sort_fail(const std::string& head, const char* want) {
  throw SortMismatch("'" + head + "' is not a " + want);
}

std::string head_of(const SexpNode& n) {
  if (n.is_atom()) return n.atom;
  if (n.items.empty() || !n.items[0].is_atom())
    throw SortMismatch("expression head must be a symbol");
  return n.items[0].atom;
}

void want_arity(const SexpNode& n, std::size_t k) {
  if (n.items.size() != k + 1)
    throw SortMismatch("'" + head_of(n) + "' expects " + std::to_string(k) +
                       " arguments");
}

CtxPtr to_ctx(const SexpNode& n) {
  std::string h = head_of(n);
  if (n.is_atom()) {
    if (h == "empty") return ctx_empty();
    sort_fail(h, "context");
  }
  if (h == "cx") {
    want_arity(n, 1);
    if (!n.items[1].is_atom()) throw SortMismatch("context name must be a symbol");
    return ctx_named(n.items[1].atom);
  }
  if (h == "ext") {
    want_arity(n, 2);
    return ctx_ext(to_ctx(n.items[1]), to_ty(n.items[2]));
  }
  sort_fail(h, "context");
}

SubPtr to_sub(const SexpNode& n) {
  std::string h = head_of(n);
  if (n.is_atom()) sort_fail(h, "substitution");
  if (h == "id") {
    want_arity(n, 1);
    return sub_id(to_ctx(n.items[1]));
  }
  if (h == "comp") {
    want_arity(n, 2);
    return sub_comp(to_sub(n.items[1]), to_sub(n.items[2]));
  }
  if (h == "terminal") {
    want_arity(n, 1);
    return sub_terminal(to_ctx(n.items[1]));
  }
  if (h == "p") {
    want_arity(n, 1);
    return sub_p(to_ty(n.items[1]));
  }
  if (h == "pair") {
    want_arity(n, 3);
    return sub_pair(to_sub(n.items[1]), to_tm(n.items[2]), to_ty(n.items[3]));
  }
  if (h == "dem") {
    want_arity(n, 1);
    return sub_dem(to_ctx(n.items[1]));
  }
  if (h == "dem-inv") {
    want_arity(n, 1);
    return sub_dem_inv(to_ctx(n.items[1]));
  }
  sort_fail(h, "substitution");
}

TyPtr to_ty(const SexpNode& n) {
  std::string h = head_of(n);
  if (n.is_atom()) sort_fail(h, "type");
  if (h == "ty") {
    want_arity(n, 2);
    if (!n.items[1].is_atom()) throw SortMismatch("type name must be a symbol");
    return ty_base(n.items[1].atom, to_ctx(n.items[2]));
  }
  if (h == "subst") {
    want_arity(n, 2);
    return ty_subst(to_ty(n.items[1]), to_sub(n.items[2]));
  }
  if (h == "sigma") {
    want_arity(n, 2);
    return ty_sigma(to_ty(n.items[1]), to_ty(n.items[2]));
  }
  if (h == "pi") {
    want_arity(n, 2);
    return ty_pi(to_ty(n.items[1]), to_ty(n.items[2]));
  }
  if (h == "id-ty") {
    want_arity(n, 3);
    return ty_id(to_ty(n.items[1]), to_tm(n.items[2]), to_tm(n.items[3]));
  }
  if (h == "bar") {
    want_arity(n, 1);
    return ty_bar(to_ctx(n.items[1]));
  }
  sort_fail(h, "type");
}

TmPtr to_tm(const SexpNode& n) {
  std::string h = head_of(n);
  if (n.is_atom()) sort_fail(h, "term");
  if (h == "q") {
    want_arity(n, 1);
    return tm_q(to_ty(n.items[1]));
  }
  if (h == "subst-tm") {
    want_arity(n, 2);
    return tm_subst(to_tm(n.items[1]), to_sub(n.items[2]));
  }
  if (h == "refl") {
    want_arity(n, 2);
    return tm_refl(to_ty(n.items[1]), to_tm(n.items[2]));
  }
  if (h == "pair-tm") {
    want_arity(n, 3);
    return tm_pair(to_tm(n.items[1]), to_tm(n.items[2]), to_ty(n.items[3]));
  }
  if (h == "fst") {
    want_arity(n, 1);
    return tm_proj1(to_tm(n.items[1]));
  }
  if (h == "snd") {
    want_arity(n, 1);
    return tm_proj2(to_tm(n.items[1]));
  }
  if (h == "lam") {
    want_arity(n, 1);
    return tm_lam(to_tm(n.items[1]));
  }
  if (h == "ap") {
    want_arity(n, 2);
    return tm_ap(to_tm(n.items[1]), to_tm(n.items[2]));
  }
  if (h == "bar-sub") {
    want_arity(n, 1);
    return tm_bar_sub(to_sub(n.items[1]));
  }
  if (h == "con") {
    want_arity(n, 2);
    if (!n.items[1].is_atom()) throw SortMismatch("constant name must be a symbol");
    return tm_base(n.items[1].atom, to_ty(n.items[2]));
  }
  sort_fail(h, "term");
}

SexpNode parse_whole(const std::string& text) {
  Tokenizer tok(text);
  SexpNode n = parse_sexp(tok);
  tok.skip_ws();
  if (tok.pos != text.size()) throw SortMismatch("trailing input after expression");
  return n;
}

}  // namespace

std::string print(const CtxPtr& c) {
  std::ostringstream os;
  pr(os, c);
  return os.str();
}
std::string print(const SubPtr& s) {
  std::ostringstream os;
  pr(os, s);
  return os.str();
}
std::string print(const TyPtr& t) {
  std::ostringstream os;
  pr(os, t);
  return os.str();
}
std::string print(const TmPtr& t) {
  std::ostringstream os;
  pr(os, t);
  return os.str();
}

Parsed parse(const std::string& text) {
  SexpNode n = parse_whole(text);
  std::string h = head_of(n);
  Parsed out{};
  if (h == "empty" || h == "cx" || h == "ext") {
    out.k = Parsed::K::Ctx;
    out.ctx = to_ctx(n);
  } else if (h == "id" || h == "comp" || h == "terminal" || h == "p" ||
             h == "pair" || h == "dem" || h == "dem-inv") {
    out.k = Parsed::K::Sub;
    out.sub = to_sub(n);
  } else if (h == "ty" || h == "subst" || h == "sigma" || h == "pi" ||
             h == "id-ty" || h == "bar") {
    out.k = Parsed::K::Ty;
    out.ty = to_ty(n);
  } else {
    out.k = Parsed::K::Tm;
    out.tm = to_tm(n);
  }
  return out;
}

CtxPtr parse_ctx(const std::string& text) { return to_ctx(parse_whole(text)); }
SubPtr parse_sub(const std::string& text) { return to_sub(parse_whole(text)); }
TyPtr parse_ty(const std::string& text) { return to_ty(parse_whole(text)); }
TmPtr parse_tm(const std::string& text) { return to_tm(parse_whole(text)); }

}  // namespace cwfkit::syn
