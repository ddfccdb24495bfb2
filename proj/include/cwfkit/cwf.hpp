#pragma once

#include <any>
#include <optional>
#include <string>

#include "cwfkit/errors.hpp"
#include "cwfkit/syntax.hpp"

// Uniform interface to a category with families: a base category together
// with types-in-context, terms, comprehension, and optional structure
// (dependent pairs, equality types, functions, context reflection).
namespace cwfkit::cwf {

struct Obj {
  std::any v;
};
struct Sub {
  std::any v;
};
struct Ty {
  std::any v;
};
struct Tm {
  std::any v;
};

// a commuting square of substitutions: right . top == bottom . left,
// with the apex at dom(top) == dom(left)
struct SubSquare {
  Sub top, left, right, bottom;
};

class Instance {
 public:
  virtual ~Instance() = default;
  virtual std::string name() const = 0;

  // base category
  virtual Sub id(const Obj&) const = 0;
  virtual Sub compose(const Sub& g, const Sub& f) const = 0;  // g after f
  virtual Obj dom(const Sub&) const = 0;
  virtual Obj cod(const Sub&) const = 0;
  virtual bool eq_obj(const Obj&, const Obj&) const = 0;
  virtual bool eq_sub(const Sub&, const Sub&) const = 0;

  virtual Obj terminal_obj() const = 0;
  virtual Sub terminal_sub(const Obj&) const = 0;

  // types and terms
  virtual Obj ctx_of(const Ty&) const = 0;
  virtual Ty subst_ty(const Ty&, const Sub&) const = 0;
  virtual bool eq_ty(const Ty&, const Ty&) const = 0;
  // representation equality: stricter than eq_ty on instances whose types
  // carry a normal form; defaults to eq_ty
  virtual bool rep_eq_ty(const Ty& a, const Ty& b) const { return eq_ty(a, b); }
  virtual Ty ty_of(const Tm&) const = 0;
  virtual Tm subst_tm(const Tm&, const Sub&) const = 0;
  virtual bool eq_tm(const Tm&, const Tm&) const = 0;

  // comprehension
  virtual Obj ext(const Ty&) const = 0;
  virtual Sub p(const Ty&) const = 0;
  virtual Tm q(const Ty&) const = 0;
  virtual Sub pair_sub(const Sub& gamma, const Tm& a, const Ty& ty) const = 0;

  // optional structure
  virtual bool has_sigma() const { return false; }
  virtual Ty sigma_ty(const Ty&, const Ty&) const { missing("sigma"); }
  virtual Tm pair_tm(const Ty&, const Ty&, const Tm&, const Tm&) const {
    missing("sigma");
  }
  virtual Tm proj1(const Ty&, const Ty&, const Tm&) const { missing("sigma"); }
  virtual Tm proj2(const Ty&, const Ty&, const Tm&) const { missing("sigma"); }

  virtual bool has_id_types() const { return false; }
  virtual Ty id_ty(const Ty&, const Tm&, const Tm&) const { missing("id types"); }
  virtual Tm refl(const Ty&, const Tm&) const { missing("id types"); }

  virtual bool has_pi() const { return false; }
  virtual Ty pi_ty(const Ty&, const Ty&) const { missing("pi"); }
  virtual Tm lam(const Ty&, const Ty&, const Tm&) const { missing("pi"); }
  virtual Tm ap(const Ty&, const Ty&, const Tm&, const Tm&) const { missing("pi"); }

  virtual bool has_democracy() const { return false; }
  virtual Ty bar(const Obj&) const { missing("democracy"); }
  virtual Sub dem(const Obj&) const { missing("democracy"); }
  virtual Sub dem_inv(const Obj&) const { missing("democracy"); }

  virtual std::optional<Sub> invert(const Sub&) const { return std::nullopt; }

  // chosen finite limits in the base, where the instance has them
  virtual bool has_base_limits() const { return false; }
  virtual bool base_is_pullback(const SubSquare&) const { missing("base limits"); }
  virtual std::optional<Sub> base_mediate(const SubSquare&, const Sub& leg_left,
                                          const Sub& leg_top) const {
    missing("base limits");
  }

  // printing and memo keys
  virtual std::string show_obj(const Obj&) const { return "<obj>"; }
  virtual std::string show_sub(const Sub&) const { return "<sub>"; }
  virtual std::string show_ty(const Ty&) const { return "<ty>"; }
  virtual std::string show_tm(const Tm&) const { return "<tm>"; }
  virtual std::string key_obj(const Obj& o) const { return show_obj(o); }
  virtual std::string key_sub(const Sub& s) const { return show_sub(s); }
  virtual std::string key_ty(const Ty& t) const { return show_ty(t); }
  virtual std::string key_tm(const Tm& t) const { return show_tm(t); }

 protected:
  [[noreturn]] void missing(const std::string& what) const {
    throw MissingCapability(name() + " does not provide " + what);
  }
};

// ⟨gamma . p, q⟩ : ext(A[gamma]) -> ext(A), the substitution square's top
Sub weaken(const Instance& I, const Sub& gamma, const Ty& a);

// the reflected substitution: a term over ext(bar(dom)) of bar(cod) weakened
Tm bar_mor(const Instance& I, const Sub& delta);

// an isomorphism between two types over one context, witnessed by mutually
// inverse maps over the base; construction validates everything
struct TypeIso {
  const Instance* inst;
  Ty src, dst;
  Sub fwd, bwd;
  TypeIso(const Instance& I, Ty src_, Ty dst_, Sub fwd_, Sub bwd_);
};

TypeIso identity_iso(const Instance& I, const Ty& a);
TypeIso invert_iso(const TypeIso& iso);
TypeIso compose_iso(const TypeIso& second, const TypeIso& first);

// transport a term across a type isomorphism: q[fwd . ⟨id, a⟩]
Tm coerce(const TypeIso& iso, const Tm& a);

// functorial action of reindexing on fiber morphisms:
// ⟨p, q[f . ⟨gamma . p, q⟩]⟩
Sub reindex_fiber(const Instance& I, const Sub& gamma, const Sub& f, const Ty& a,
                  const Ty& b);
TypeIso reindex_iso(const Instance& I, const Sub& gamma, const TypeIso& iso);

// an isomorphism between two maps into the same context, living over it
struct SliceIso {
  const Instance* inst;
  Sub left, right;  // the two maps into the shared codomain
  Sub fwd, bwd;     // dom(left) <-> dom(right), commuting with them
  SliceIso(const Instance& I, Sub left_, Sub right_, Sub fwd_, Sub bwd_);
};

// the type over cod(delta) whose display map is isomorphic to delta:
// a dependent pair of a reflected point of dom(delta) and an equation
Ty inv_type(const Instance& I, const Sub& delta);

// the witnessing slice isomorphism between p(inv_type(delta)) and delta
SliceIso inv_iso(const Instance& I, const Sub& delta);

// binary product and exponential inside one fiber
Ty fiber_product(const Instance& I, const Ty& a, const Ty& b);
Ty fiber_exponential(const Instance& I, const Ty& a, const Ty& b);

// the free syntactic instance over a signature
class SynInstance final : public Instance {
 public:
  explicit SynInstance(syn::Signature sig) : sig_(std::move(sig)) {}
  std::string name() const override { return "syntax"; }

  static const syn::CtxPtr& C(const Obj& o);
  static const syn::SubPtr& S(const Sub& s);
  static const syn::TyPtr& T(const Ty& t);
  static const syn::TmPtr& M(const Tm& t);
  static Obj mk(syn::CtxPtr c);
  static Sub mk(syn::SubPtr s);
  static Ty mk(syn::TyPtr t);
  static Tm mk(syn::TmPtr t);

  Sub id(const Obj&) const override;
  Sub compose(const Sub&, const Sub&) const override;
  Obj dom(const Sub&) const override;
  Obj cod(const Sub&) const override;
  bool eq_obj(const Obj&, const Obj&) const override;
  bool eq_sub(const Sub&, const Sub&) const override;
  Obj terminal_obj() const override;
  Sub terminal_sub(const Obj&) const override;
  Obj ctx_of(const Ty&) const override;
  Ty subst_ty(const Ty&, const Sub&) const override;
  bool eq_ty(const Ty&, const Ty&) const override;
  bool rep_eq_ty(const Ty&, const Ty&) const override;
  Ty ty_of(const Tm&) const override;
  Tm subst_tm(const Tm&, const Sub&) const override;
  bool eq_tm(const Tm&, const Tm&) const override;
  Obj ext(const Ty&) const override;
  Sub p(const Ty&) const override;
  Tm q(const Ty&) const override;
  Sub pair_sub(const Sub&, const Tm&, const Ty&) const override;

  bool has_sigma() const override { return true; }
  Ty sigma_ty(const Ty&, const Ty&) const override;
  Tm pair_tm(const Ty&, const Ty&, const Tm&, const Tm&) const override;
  Tm proj1(const Ty&, const Ty&, const Tm&) const override;
  Tm proj2(const Ty&, const Ty&, const Tm&) const override;

  bool has_id_types() const override { return true; }
  Ty id_ty(const Ty&, const Tm&, const Tm&) const override;
  Tm refl(const Ty&, const Tm&) const override;

  bool has_pi() const override { return true; }
  Ty pi_ty(const Ty&, const Ty&) const override;
  Tm lam(const Ty&, const Ty&, const Tm&) const override;
  Tm ap(const Ty&, const Ty&, const Tm&, const Tm&) const override;

  bool has_democracy() const override { return true; }
  Ty bar(const Obj&) const override;
  Sub dem(const Obj&) const override;
  Sub dem_inv(const Obj&) const override;

  std::optional<Sub> invert(const Sub&) const override;

  std::string show_obj(const Obj&) const override;
  std::string show_sub(const Sub&) const override;
  std::string show_ty(const Ty&) const override;
  std::string show_tm(const Tm&) const override;
  std::string key_obj(const Obj&) const override;
  std::string key_sub(const Sub&) const override;
  std::string key_ty(const Ty&) const override;
  std::string key_tm(const Tm&) const override;

  const syn::Signature& signature() const { return sig_; }

 private:
  syn::Signature sig_;
};

}  // namespace cwfkit::cwf
