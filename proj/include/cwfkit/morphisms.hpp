#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cwfkit/cwf.hpp"
#include "cwfkit/hofmann.hpp"
#include "cwfkit/laws.hpp"
#include "json.hpp"

// Structure-preserving maps between instances, given up to coherent iso.
//
// A morphism carries a functor on the base, a type translation, and the
// comparison map rho : F(G.A) -> FG.sigma(A) over each extension. Everything
// else is derived: terms translate by pairing and projecting through rho, and
// the substitution comparison theta is the mediator between the image of a
// weakening square and the chosen one downstream. Construction fails with
// NotLimitPreserving when the functor breaks the relevant pullback, which is
// a feature: it is how non-examples are detected.
namespace cwfkit::morph {

struct MorphismData {
  const cwf::Instance* src = nullptr;
  const cwf::Instance* dst = nullptr;
  std::string name;
  std::function<cwf::Obj(const cwf::Obj&)> on_obj;
  std::function<cwf::Sub(const cwf::Sub&)> on_sub;
  std::function<cwf::Ty(const cwf::Obj&, const cwf::Ty&)> on_ty;
  // rho_{G,A} : F(G.A) -> FG.sigma(A); must be invertible and live over F(p)
  std::function<cwf::Sub(const cwf::Obj&, const cwf::Ty&)> comparison;
};

class PseudoCwfMorphism {
 public:
  explicit PseudoCwfMorphism(MorphismData data);

  const cwf::Instance& src() const { return *d_.src; }
  const cwf::Instance& dst() const { return *d_.dst; }
  const std::string& name() const { return d_.name; }

  cwf::Obj obj(const cwf::Obj& o) const { return d_.on_obj(o); }
  cwf::Sub sub(const cwf::Sub& s) const { return d_.on_sub(s); }
  cwf::Ty ty(const cwf::Obj& ctx, const cwf::Ty& a) const {
    return d_.on_ty(ctx, a);
  }
  cwf::Tm tm(const cwf::Obj& ctx, const cwf::Tm& a) const;

  // validated against the display equation p . rho = F(p) on first use
  cwf::Sub rho(const cwf::Obj& ctx, const cwf::Ty& a) const;
  cwf::Sub rho_inv(const cwf::Obj& ctx, const cwf::Ty& a) const;

  // sigma(A[delta]) ~= sigma(A)[F delta] over F(dom delta)
  cwf::TypeIso theta(const cwf::Obj& ctx, const cwf::Ty& a,
                     const cwf::Sub& delta) const;

 private:
  MorphismData d_;
  mutable std::map<std::string, bool> rho_checked_;
};

PseudoCwfMorphism identity_morphism(const cwf::Instance& inst,
                                    std::string name = "id");
PseudoCwfMorphism compose_pseudo(const PseudoCwfMorphism& g,
                                 const PseudoCwfMorphism& f);

struct TransformationData {
  const PseudoCwfMorphism* from = nullptr;
  const PseudoCwfMorphism* to = nullptr;
  std::string name;
  std::function<cwf::Sub(const cwf::Obj&)> component;  // FG -> GG, per object
};

class PseudoCwfTransformation {
 public:
  explicit PseudoCwfTransformation(TransformationData data);

  const PseudoCwfMorphism& from() const { return *d_.from; }
  const PseudoCwfMorphism& to() const { return *d_.to; }
  const std::string& name() const { return d_.name; }

  cwf::Sub at(const cwf::Obj& o) const { return d_.component(o); }
  // psi_{G,A} : FG.sigma^F(A) -> GG.sigma^G(A), over at(G)
  cwf::Sub fiber(const cwf::Obj& ctx, const cwf::Ty& a) const;

 private:
  TransformationData d_;
};

PseudoCwfTransformation identity_transformation(const PseudoCwfMorphism& f,
                                                std::string name = "id");
PseudoCwfTransformation vertical_compose(const PseudoCwfTransformation& second,
                                         const PseudoCwfTransformation& first);
PseudoCwfTransformation horizontal_compose(
    const PseudoCwfTransformation& outer, const PseudoCwfTransformation& inner,
    const PseudoCwfMorphism& composed_from,
    const PseudoCwfMorphism& composed_to);

struct CheckOptions {
  int samples = 8;
  std::uint64_t seed = 0;
};

struct MorphismReport {
  std::string morphism;
  std::vector<cwf::LawResult> laws;
  bool ok() const;
  nlohmann::json to_json() const;
};

// functor laws, the display equation for rho, theta's identity/pasting
// coherence, naturality of the term translation, and preservation of the
// weakening pullbacks, all on sampled data from the source
MorphismReport check_morphism(const PseudoCwfMorphism& f, cwf::Sampler& sampler,
                              CheckOptions opts = {});

// search for a fiberwise iso between two types over the same context; used to
// certify preservation up to iso
using IsoFinder = std::function<std::optional<cwf::TypeIso>(
    const cwf::Instance&, const cwf::Ty&, const cwf::Ty&)>;

IsoFinder h_iso_finder();

// preservation of sigma, identity types, pi, and the democracy square
MorphismReport check_preserves(const PseudoCwfMorphism& f,
                               cwf::Sampler& sampler, const IsoFinder& finder,
                               CheckOptions opts = {});

// naturality on the base, the fiber map living over the base component,
// compatibility with term pairing, and the square relating theta upstairs
// and downstairs
MorphismReport check_transformation(const PseudoCwfTransformation& t,
                                    cwf::Sampler& sampler,
                                    CheckOptions opts = {});

struct SetFunctor {
  std::string name;
  std::function<fincat::FinObj(const fincat::FinObj&)> on_obj;
  std::function<fincat::FinMor(const fincat::FinMor&)> on_mor;
};

SetFunctor set_identity_functor();
SetFunctor set_relabel_functor(std::string prefix);
SetFunctor set_product_functor(fincat::FinObj x);   // does not preserve 1
SetFunctor set_exponent_functor(fincat::FinObj x);  // preserves all limits
SetFunctor set_powerset_functor();  // covariant image; breaks pullbacks

// the induced morphism between finite-set instances: types map to the hat of
// the functor's image of their display, with an identity comparison map
PseudoCwfMorphism h_on_functor(const hof::HInstance& src,
                               const hof::HInstance& dst, SetFunctor f);

PseudoCwfTransformation h_on_nat(
    const PseudoCwfMorphism& from, const PseudoCwfMorphism& to,
    std::string name,
    std::function<fincat::FinMor(const fincat::FinObj&)> component);

}  // namespace cwfkit::morph
