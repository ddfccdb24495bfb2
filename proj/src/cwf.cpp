#include "cwfkit/cwf.hpp"

#include <utility>

namespace cwfkit::cwf {

Sub weaken(const Instance& I, const Sub& gamma, const Ty& a) {
  Ty moved = I.subst_ty(a, gamma);
  return I.pair_sub(I.compose(gamma, I.p(moved)), I.q(moved), a);
}

Tm bar_mor(const Instance& I, const Sub& delta) {
  Obj from = I.dom(delta);
  Obj to = I.cod(delta);
  Sub route = I.compose(I.dem(to), I.compose(delta, I.dem_inv(from)));
  return I.subst_tm(I.q(I.bar(to)), route);
}

TypeIso::TypeIso(const Instance& I, Ty src_, Ty dst_, Sub fwd_, Sub bwd_)
    : inst(&I), src(std::move(src_)), dst(std::move(dst_)), fwd(std::move(fwd_)),
      bwd(std::move(bwd_)) {
  Obj base = I.ctx_of(src);
  if (!I.eq_obj(base, I.ctx_of(dst)))
    throw FiberMismatch("iso endpoints live over different contexts");
  Obj es = I.ext(src);
  Obj ed = I.ext(dst);
  if (!I.eq_obj(I.dom(fwd), es) || !I.eq_obj(I.cod(fwd), ed) ||
      !I.eq_obj(I.dom(bwd), ed) || !I.eq_obj(I.cod(bwd), es))
    throw FiberMismatch("iso maps have the wrong boundaries");
  if (!I.eq_sub(I.compose(I.p(dst), fwd), I.p(src)) ||
      !I.eq_sub(I.compose(I.p(src), bwd), I.p(dst)))
    throw FiberMismatch("iso maps do not live over the context");
  if (!I.eq_sub(I.compose(bwd, fwd), I.id(es)) ||
      !I.eq_sub(I.compose(fwd, bwd), I.id(ed)))
    throw FiberMismatch("iso maps are not mutually inverse");
}

TypeIso identity_iso(const Instance& I, const Ty& a) {
  Sub one = I.id(I.ext(a));
  return TypeIso(I, a, a, one, one);
}

TypeIso invert_iso(const TypeIso& iso) {
  return TypeIso(*iso.inst, iso.dst, iso.src, iso.bwd, iso.fwd);
}

TypeIso compose_iso(const TypeIso& second, const TypeIso& first) {
  const Instance& I = *first.inst;
  if (second.inst != first.inst)
    throw InstanceMismatch("composing isos from different instances");
  return TypeIso(I, first.src, second.dst, I.compose(second.fwd, first.fwd),
                 I.compose(first.bwd, second.bwd));
}

Tm coerce(const TypeIso& iso, const Tm& a) {
  const Instance& I = *iso.inst;
  Obj base = I.ctx_of(iso.src);
  Sub section = I.pair_sub(I.id(base), a, iso.src);
  return I.subst_tm(I.q(iso.dst), I.compose(iso.fwd, section));
}

Sub reindex_fiber(const Instance& I, const Sub& gamma, const Sub& f, const Ty& a,
                  const Ty& b) {
  Ty a_moved = I.subst_ty(a, gamma);
  Ty b_moved = I.subst_ty(b, gamma);
  Tm inner = I.subst_tm(I.q(b), I.compose(f, weaken(I, gamma, a)));
  return I.pair_sub(I.p(a_moved), inner, b_moved);
}

TypeIso reindex_iso(const Instance& I, const Sub& gamma, const TypeIso& iso) {
  return TypeIso(I, I.subst_ty(iso.src, gamma), I.subst_ty(iso.dst, gamma),
                 reindex_fiber(I, gamma, iso.fwd, iso.src, iso.dst),
                 reindex_fiber(I, gamma, iso.bwd, iso.dst, iso.src));
}

SliceIso::SliceIso(const Instance& I, Sub left_, Sub right_, Sub fwd_, Sub bwd_)
    : inst(&I), left(std::move(left_)), right(std::move(right_)),
      fwd(std::move(fwd_)), bwd(std::move(bwd_)) {
  if (!I.eq_obj(I.cod(left), I.cod(right)))
    throw BoundaryMismatch("slice iso relates maps into different contexts");
  if (!I.eq_obj(I.dom(fwd), I.dom(left)) || !I.eq_obj(I.cod(fwd), I.dom(right)) ||
      !I.eq_obj(I.dom(bwd), I.dom(right)) || !I.eq_obj(I.cod(bwd), I.dom(left)))
    throw BoundaryMismatch("slice iso maps have the wrong boundaries");
  if (!I.eq_sub(I.compose(right, fwd), left) ||
      !I.eq_sub(I.compose(left, bwd), right))
    throw FiberMismatch("slice iso maps do not commute with the legs");
  if (!I.eq_sub(I.compose(bwd, fwd), I.id(I.dom(left))) ||
      !I.eq_sub(I.compose(fwd, bwd), I.id(I.dom(right))))
    throw FiberMismatch("slice iso maps are not mutually inverse");
}

namespace {

void need(const Instance& I, bool ok, const char* what) {
  if (!ok)
    throw MissingCapability(I.name() + std::string(" cannot form ") + what);
}

}  // namespace

Ty inv_type(const Instance& I, const Sub& delta) {
  need(I, I.has_democracy() && I.has_sigma() && I.has_id_types(),
       "inverse image types");
  Obj from = I.dom(delta);
  Obj to = I.cod(delta);
  Ty dbar = I.bar(from);
  Ty gbar = I.bar(to);
  Ty first = I.subst_ty(dbar, I.terminal_sub(to));
  Obj extended = I.ext(first);
  Ty gbar_here = I.subst_ty(gbar, I.terminal_sub(extended));
  Tm lhs = I.subst_tm(I.q(gbar), I.compose(I.dem(to), I.p(first)));
  Sub point = I.pair_sub(I.terminal_sub(extended), I.q(first), dbar);
  Tm rhs = I.subst_tm(bar_mor(I, delta), point);
  return I.sigma_ty(first, I.id_ty(gbar_here, lhs, rhs));
}

SliceIso inv_iso(const Instance& I, const Sub& delta) {
  Obj from = I.dom(delta);
  Obj to = I.cod(delta);
  Ty inv = inv_type(I, delta);
  Ty dbar = I.bar(from);
  Ty gbar = I.bar(to);
  Ty first = I.subst_ty(dbar, I.terminal_sub(to));
  Obj extended = I.ext(first);
  Ty gbar_here = I.subst_ty(gbar, I.terminal_sub(extended));
  Tm lhs = I.subst_tm(I.q(gbar), I.compose(I.dem(to), I.p(first)));
  Sub point = I.pair_sub(I.terminal_sub(extended), I.q(first), dbar);
  Tm rhs = I.subst_tm(bar_mor(I, delta), point);
  Ty eqn = I.id_ty(gbar_here, lhs, rhs);

  // forward: project the reflected point back out of the pair
  Obj apex = I.ext(inv);
  Sub pinv = I.p(inv);
  Ty first_up = I.subst_ty(first, pinv);
  Ty eqn_up = I.subst_ty(eqn, weaken(I, pinv, first));
  Tm component = I.proj1(first_up, eqn_up, I.q(inv));
  Sub into_bar = I.pair_sub(I.terminal_sub(apex), component, dbar);
  Sub fwd = I.compose(I.dem_inv(from), into_bar);

  // backward: pair the reflected point with a reflexivity witness
  Tm pt = I.subst_tm(I.q(dbar), I.dem(from));
  Ty gbar_from = I.subst_ty(gbar, I.terminal_sub(from));
  Tm endpoint = I.subst_tm(I.q(gbar), I.compose(I.dem(to), delta));
  Tm witness = I.refl(gbar_from, endpoint);
  Ty first_dn = I.subst_ty(first, delta);
  Ty eqn_dn = I.subst_ty(eqn, weaken(I, delta, first));
  Tm cell = I.pair_tm(first_dn, eqn_dn, pt, witness);
  Sub bwd = I.pair_sub(delta, cell, inv);

  return SliceIso(I, pinv, delta, fwd, bwd);
}

Ty fiber_product(const Instance& I, const Ty& a, const Ty& b) {
  need(I, I.has_sigma(), "fiber products");
  return I.sigma_ty(a, I.subst_ty(b, I.p(a)));
}

Ty fiber_exponential(const Instance& I, const Ty& a, const Ty& b) {
  need(I, I.has_pi(), "fiber exponentials");
  return I.pi_ty(a, I.subst_ty(b, I.p(a)));
}

// --- the syntactic instance ---

const syn::CtxPtr& SynInstance::C(const Obj& o) {
  return *std::any_cast<syn::CtxPtr>(&o.v);
}
const syn::SubPtr& SynInstance::S(const Sub& s) {
  return *std::any_cast<syn::SubPtr>(&s.v);
}
const syn::TyPtr& SynInstance::T(const Ty& t) {
  return *std::any_cast<syn::TyPtr>(&t.v);
}
const syn::TmPtr& SynInstance::M(const Tm& t) {
  return *std::any_cast<syn::TmPtr>(&t.v);
}
Obj SynInstance::mk(syn::CtxPtr c) { return Obj{std::move(c)}; }
Sub SynInstance::mk(syn::SubPtr s) { return Sub{std::move(s)}; }
Ty SynInstance::mk(syn::TyPtr t) { return Ty{std::move(t)}; }
Tm SynInstance::mk(syn::TmPtr t) { return Tm{std::move(t)}; }

Sub SynInstance::id(const Obj& o) const { return mk(syn::sub_id(C(o))); }
Sub SynInstance::compose(const Sub& g, const Sub& f) const {
  return mk(syn::sub_comp(S(g), S(f)));
}
Obj SynInstance::dom(const Sub& s) const { return mk(syn::domcod(S(s)).first); }
Obj SynInstance::cod(const Sub& s) const { return mk(syn::domcod(S(s)).second); }
bool SynInstance::eq_obj(const Obj& a, const Obj& b) const {
  return syn::syn_eq(C(a), C(b)) == syn::Eq::Equal;
}
bool SynInstance::eq_sub(const Sub& a, const Sub& b) const {
  return syn::syn_eq(S(a), S(b)) == syn::Eq::Equal;
}
Obj SynInstance::terminal_obj() const { return mk(syn::ctx_empty()); }
Sub SynInstance::terminal_sub(const Obj& o) const {
  return mk(syn::sub_terminal(C(o)));
}
Obj SynInstance::ctx_of(const Ty& t) const { return mk(syn::ctx_of(T(t))); }
Ty SynInstance::subst_ty(const Ty& t, const Sub& s) const {
  return mk(syn::ty_subst(T(t), S(s)));
}
bool SynInstance::eq_ty(const Ty& a, const Ty& b) const {
  return syn::syn_eq(T(a), T(b)) == syn::Eq::Equal;
}
bool SynInstance::rep_eq_ty(const Ty& a, const Ty& b) const {
  return syn::eq(syn::normalize(T(a)), syn::normalize(T(b)));
}
Ty SynInstance::ty_of(const Tm& t) const { return mk(syn::ty_of(M(t))); }
Tm SynInstance::subst_tm(const Tm& t, const Sub& s) const {
  return mk(syn::tm_subst(M(t), S(s)));
}
bool SynInstance::eq_tm(const Tm& a, const Tm& b) const {
  return syn::syn_eq(M(a), M(b)) == syn::Eq::Equal;
}
Obj SynInstance::ext(const Ty& t) const {
  return mk(syn::ctx_ext(syn::ctx_of(T(t)), T(t)));
}
Sub SynInstance::p(const Ty& t) const { return mk(syn::sub_p(T(t))); }
Tm SynInstance::q(const Ty& t) const { return mk(syn::tm_q(T(t))); }
Sub SynInstance::pair_sub(const Sub& gamma, const Tm& a, const Ty& ty) const {
  return mk(syn::sub_pair(S(gamma), M(a), T(ty)));
}

Ty SynInstance::sigma_ty(const Ty& a, const Ty& b) const {
  return mk(syn::ty_sigma(T(a), T(b)));
}
Tm SynInstance::pair_tm(const Ty&, const Ty& b, const Tm& x, const Tm& y) const {
  return mk(syn::tm_pair(M(x), M(y), T(b)));
}
Tm SynInstance::proj1(const Ty&, const Ty&, const Tm& c) const {
  return mk(syn::tm_proj1(M(c)));
}
Tm SynInstance::proj2(const Ty&, const Ty&, const Tm& c) const {
  return mk(syn::tm_proj2(M(c)));
}

Ty SynInstance::id_ty(const Ty& a, const Tm& x, const Tm& y) const {
  return mk(syn::ty_id(T(a), M(x), M(y)));
}
Tm SynInstance::refl(const Ty& a, const Tm& x) const {
  return mk(syn::tm_refl(T(a), M(x)));
}

Ty SynInstance::pi_ty(const Ty& a, const Ty& b) const {
  return mk(syn::ty_pi(T(a), T(b)));
}
Tm SynInstance::lam(const Ty&, const Ty&, const Tm& b) const {
  return mk(syn::tm_lam(M(b)));
}
Tm SynInstance::ap(const Ty&, const Ty&, const Tm& c, const Tm& x) const {
  return mk(syn::tm_ap(M(c), M(x)));
}

Ty SynInstance::bar(const Obj& o) const { return mk(syn::ty_bar(C(o))); }
Sub SynInstance::dem(const Obj& o) const { return mk(syn::sub_dem(C(o))); }
Sub SynInstance::dem_inv(const Obj& o) const { return mk(syn::sub_dem_inv(C(o))); }

std::optional<Sub> SynInstance::invert(const Sub& s) const {
  syn::SubPtr n = syn::normalize(S(s));
  if (n->k == syn::Sub::K::Id) return mk(n);
  if (n->k == syn::Sub::K::DemIso) return mk(syn::sub_dem_inv(n->ctx));
  if (n->k == syn::Sub::K::DemIsoInv) return mk(syn::sub_dem(n->ctx));
  return std::nullopt;
}

std::string SynInstance::show_obj(const Obj& o) const { return syn::print(C(o)); }
std::string SynInstance::show_sub(const Sub& s) const { return syn::print(S(s)); }
std::string SynInstance::show_ty(const Ty& t) const { return syn::print(T(t)); }
std::string SynInstance::show_tm(const Tm& t) const { return syn::print(M(t)); }
std::string SynInstance::key_obj(const Obj& o) const {
  return syn::print(syn::normalize(C(o)));
}
std::string SynInstance::key_sub(const Sub& s) const {
  return syn::print(syn::normalize(S(s)));
}
std::string SynInstance::key_ty(const Ty& t) const {
  return syn::print(syn::normalize(T(t)));
}
std::string SynInstance::key_tm(const Tm& t) const {
  return syn::print(syn::normalize(M(t)));
}

}  // namespace cwfkit::cwf
