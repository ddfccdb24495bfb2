#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cwfkit/cwf.hpp"
#include "cwfkit/hofmann.hpp"
#include "cwfkit/laws.hpp"
#include "cwfkit/morphisms.hpp"
#include "cwfkit/syntax.hpp"
#include "json.hpp"

// The two directions between an instance and the family model over its base,
// the comparison maps relating their composites to identities, and the
// round-trip reports that certify them on samples. Also the finite-set
// interpreter for the free instance, which doubles as the disequality oracle.
namespace cwfkit::biequiv {

// projection onto the base category
struct BaseHandle {
  const cwf::Instance* inst;
  cwf::Sub id(const cwf::Obj& o) const { return inst->id(o); }
  cwf::Sub compose(const cwf::Sub& g, const cwf::Sub& f) const {
    return inst->compose(g, f);
  }
};

BaseHandle forget(const cwf::Instance& inst);

struct BaseFunctor {
  std::string name;
  std::function<cwf::Obj(const cwf::Obj&)> on_obj;
  std::function<cwf::Sub(const cwf::Sub&)> on_sub;
};

BaseFunctor forget(const morph::PseudoCwfMorphism& f);
std::function<cwf::Sub(const cwf::Obj&)> forget(
    const morph::PseudoCwfTransformation& t);

// The family of displays a type induces over the base: stage delta is the
// display of a[delta], and the square over (delta, alpha) is the pairing map
// ⟨alpha.p, q⟩. Defined through the comprehension operations only, so it
// works over any instance.
class BackedFamily {
 public:
  BackedFamily(const cwf::Instance& inst, cwf::Obj ctx, cwf::Ty a);

  const cwf::Obj& ctx() const { return ctx_; }
  const cwf::Ty& backing() const { return a_; }

  cwf::Ty stage_ty(const cwf::Sub& delta) const;
  cwf::Sub at(const cwf::Sub& delta) const;
  cwf::Sub top(const cwf::Sub& delta, const cwf::Sub& alpha) const;

 private:
  const cwf::Instance* inst_;
  cwf::Obj ctx_;
  cwf::Ty a_;
};

// functoriality of the induced families on sampled stages, under the
// instance's own equality
std::vector<cwf::LawResult> check_backed_families(const cwf::Instance& inst,
                                                  cwf::Sampler& sampler,
                                                  int samples = 8);

// types to their induced families (identity on the base)
morph::PseudoCwfMorphism eta_h(const hof::HInstance& inst);

// families to the inverse-image type of their display at the identity
morph::PseudoCwfMorphism epsilon_h(const hof::HInstance& inst);

// Both composites, their comparisons to the identity, and the identity
// endpoints, with stable addresses for the transformations to reference.
class BiequivalencePackage {
 public:
  explicit BiequivalencePackage(const hof::HInstance& inst);

  const morph::PseudoCwfMorphism& eta() const { return *eta_; }
  const morph::PseudoCwfMorphism& epsilon() const { return *epsilon_; }
  const morph::PseudoCwfMorphism& round() const { return *round_; }  // eps.eta
  const morph::PseudoCwfMorphism& back() const { return *back_; }    // eta.eps
  const morph::PseudoCwfMorphism& ident() const { return *ident_; }
  const morph::PseudoCwfTransformation& m() const { return *m_; }
  const morph::PseudoCwfTransformation& m_prime() const { return *mp_; }

 private:
  std::unique_ptr<morph::PseudoCwfMorphism> eta_, epsilon_, round_, back_,
      ident_;
  std::unique_ptr<morph::PseudoCwfTransformation> m_, mp_;
};

struct RoundTripCase {
  std::string ctx;
  std::string type;
  bool psi_m_iso = false;
  bool psi_m_prime_iso = false;
  bool square_m = false;
  bool square_m_prime = false;
  std::string note;
  bool ok() const {
    return psi_m_iso && psi_m_prime_iso && square_m && square_m_prime;
  }
};

struct RoundTripReport {
  std::string instance;
  std::vector<RoundTripCase> cases;
  int failures() const;
  bool ok() const { return failures() == 0; }
  nlohmann::json to_json() const;
};

struct RoundTripOptions {
  int samples = 8;
  std::uint64_t seed = 0;
};

RoundTripReport roundtrip_report(const hof::HInstance& inst,
                                 cwf::Sampler& sampler,
                                 RoundTripOptions opts = {});

// assignment of base signature symbols to finite-set data
struct Environment {
  std::map<std::string, fincat::FinObj> contexts;
  std::map<std::string, fincat::FinMor> types;  // display over the context
  std::map<std::string, fincat::FinMor> terms;  // section of the display
};

Environment env_from_json(const nlohmann::json& j);
nlohmann::json env_to_json(const Environment& env);

// structural interpreter into finite sets; closed over the environment's
// symbols, memoized by node identity
class Interp {
 public:
  explicit Interp(Environment env);

  fincat::FinObj ctx(const syn::CtxPtr& c) const;
  fincat::FinMor sub(const syn::SubPtr& s) const;
  hof::FamPtr ty(const syn::TyPtr& t) const;
  hof::HTm tm(const syn::TmPtr& t) const;

  const Environment& env() const { return env_; }

 private:
  Environment env_;
  hof::HInstance h_;
  mutable std::map<const syn::Ctx*, fincat::FinObj> ctx_cache_;
  mutable std::map<const syn::Sub*, fincat::FinMor> sub_cache_;
  mutable std::map<const syn::Ty*, hof::FamPtr> ty_cache_;
  mutable std::map<const syn::Tm*, hof::HTm> tm_cache_;
  // cache keys are node addresses; pinning the nodes keeps them unique
  mutable std::vector<std::shared_ptr<const void>> pins_;
};

// disequality oracles: true only when both sides interpret and the results
// differ extensionally; interpretation failure never refutes
syn::TmRefuter tm_refuter(std::shared_ptr<const Interp> interp);
syn::TyRefuter ty_refuter(std::shared_ptr<const Interp> interp);
syn::SubRefuter sub_refuter(std::shared_ptr<const Interp> interp);

}  // namespace cwfkit::biequiv
