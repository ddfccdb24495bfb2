#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cwfkit/cwf.hpp"
#include "cwfkit/fincat.hpp"
#include "cwfkit/laws.hpp"
#include "json.hpp"

// Finite-set semantics with substitution strict on the nose.
//
// A naive family over Gamma is a display map into Gamma, reindexed by
// pullback; that choice only commutes with composition up to iso. Here a
// family instead records a whole matrix of displays: one for every map
// delta : X -> Gamma, together with the chosen pullback top for every
// alpha : Y -> X. Substitution along gamma then just precomposes the index,
// so A[gamma][delta] and A[gamma . delta] are the same data, not merely
// isomorphic. Type formers act pointwise on the matrix and substitution
// pushes through them structurally, which keeps representation equality
// (`key`) a congruence for substitution.
namespace cwfkit::hof {

using fincat::FinMor;
using fincat::FinObj;

class FunFam {
 public:
  virtual ~FunFam() = default;

  virtual const FinObj& base() const = 0;
  virtual std::string kind() const = 0;
  virtual std::string key() const = 0;

  // display over dom(delta); delta must land in base()
  FinMor at(const FinMor& delta) const;
  // chosen pullback top dom(at(delta.alpha)) -> dom(at(delta)), over alpha
  FinMor square(const FinMor& delta, const FinMor& alpha) const;

 protected:
  virtual FinMor compute_at(const FinMor& delta) const = 0;
  virtual FinMor compute_square(const FinMor& delta,
                                const FinMor& alpha) const = 0;

 private:
  mutable std::mutex mu_;
  mutable std::map<FinMor, FinMor> at_cache_;
  mutable std::map<std::pair<FinMor, FinMor>, FinMor> square_cache_;
};

using FamPtr = std::shared_ptr<const FunFam>;

// family whose display at delta is the chosen pullback of `display` along
// reindex . delta
FamPtr hat(FinMor display, FinMor reindex);
FamPtr hat_display(FinMor display);  // reindex = id
FamPtr sigma_fam(FamPtr a, FamPtr b);
FamPtr id_fam(FamPtr a, FinMor left, FinMor right);
FamPtr pi_fam(FamPtr a, FamPtr b);
FamPtr bar_fam(const FinObj& gamma);  // gamma as a type over the point
// the family of displays induced by a type through the comprehension ops:
// at(delta) is the display of inner[delta], squares are the pairing maps
FamPtr backed_fam(FamPtr inner);

// substitution; pushes through formers, composes the index of a hat
FamPtr subst_fam(const FamPtr& a, const FinMor& gamma);

FinMor display_of(const FunFam& a);  // at(id)
FinObj ext_of(const FunFam& a);      // dom(at(id))

// transport of a section of A along delta, landing in a section of A[delta]
FinMor section_subst(const FunFam& a, const FinMor& s, const FinMor& delta);

struct HTm {
  FamPtr fam;      // the type, over fam->base()
  FinMor section;  // right inverse of display_of(*fam)
};

FinMor h_pair_sub(const FunFam& a, const FinMor& delta, const FinMor& s);
HTm h_q(const FamPtr& a);
HTm h_subst_tm(const HTm& t, const FinMor& delta);
HTm h_pair_tm(const FamPtr& a, const FamPtr& b, const HTm& x, const HTm& y);
HTm h_proj1(const FamPtr& a, const FamPtr& b, const HTm& c);
HTm h_proj2(const FamPtr& a, const FamPtr& b, const HTm& c);
HTm h_refl(const FamPtr& a, const HTm& x);
HTm h_lambda(const FamPtr& a, const FamPtr& b, const HTm& body);
HTm h_ap(const FamPtr& a, const FamPtr& b, const HTm& f, const HTm& x);

bool fam_eq(const FunFam& a, const FunFam& b);  // structural, via key()

// brute-force semantic comparison: same displays at every probe index and
// matching squares along every composable probe pair
bool fam_extensional_eq(const FunFam& a, const FunFam& b, int probe_atoms);

nlohmann::json dump_family(const FunFam& a, const std::vector<FinMor>& probes);

struct Caps {
  bool sigma = true;
  bool id_types = true;
  bool pi = true;
  bool democracy = true;
};

class HInstance : public cwf::Instance {
 public:
  explicit HInstance(Caps caps = {});

  static const FinObj& O(const cwf::Obj& o);
  static const FinMor& S(const cwf::Sub& s);
  static const FamPtr& T(const cwf::Ty& t);
  static const HTm& M(const cwf::Tm& t);

  std::string name() const override;

  cwf::Sub id(const cwf::Obj&) const override;
  cwf::Sub compose(const cwf::Sub& g, const cwf::Sub& f) const override;
  cwf::Obj dom(const cwf::Sub&) const override;
  cwf::Obj cod(const cwf::Sub&) const override;
  bool eq_obj(const cwf::Obj&, const cwf::Obj&) const override;
  bool eq_sub(const cwf::Sub&, const cwf::Sub&) const override;

  cwf::Obj terminal_obj() const override;
  cwf::Sub terminal_sub(const cwf::Obj&) const override;

  cwf::Obj ctx_of(const cwf::Ty&) const override;
  cwf::Ty subst_ty(const cwf::Ty&, const cwf::Sub&) const override;
  bool eq_ty(const cwf::Ty&, const cwf::Ty&) const override;
  cwf::Ty ty_of(const cwf::Tm&) const override;
  cwf::Tm subst_tm(const cwf::Tm&, const cwf::Sub&) const override;
  bool eq_tm(const cwf::Tm&, const cwf::Tm&) const override;

  cwf::Obj ext(const cwf::Ty&) const override;
  cwf::Sub p(const cwf::Ty&) const override;
  cwf::Tm q(const cwf::Ty&) const override;
  cwf::Sub pair_sub(const cwf::Sub& gamma, const cwf::Tm& a,
                    const cwf::Ty& ty) const override;

  bool has_sigma() const override { return caps_.sigma; }
  cwf::Ty sigma_ty(const cwf::Ty&, const cwf::Ty&) const override;
  cwf::Tm pair_tm(const cwf::Ty&, const cwf::Ty&, const cwf::Tm&,
                  const cwf::Tm&) const override;
  cwf::Tm proj1(const cwf::Ty&, const cwf::Ty&, const cwf::Tm&) const override;
  cwf::Tm proj2(const cwf::Ty&, const cwf::Ty&, const cwf::Tm&) const override;

  bool has_id_types() const override { return caps_.id_types; }
  cwf::Ty id_ty(const cwf::Ty&, const cwf::Tm&, const cwf::Tm&) const override;
  cwf::Tm refl(const cwf::Ty&, const cwf::Tm&) const override;

  bool has_pi() const override { return caps_.pi; }
  cwf::Ty pi_ty(const cwf::Ty&, const cwf::Ty&) const override;
  cwf::Tm lam(const cwf::Ty&, const cwf::Ty&, const cwf::Tm&) const override;
  cwf::Tm ap(const cwf::Ty&, const cwf::Ty&, const cwf::Tm&,
             const cwf::Tm&) const override;

  bool has_democracy() const override { return caps_.democracy; }
  cwf::Ty bar(const cwf::Obj&) const override;
  cwf::Sub dem(const cwf::Obj&) const override;
  cwf::Sub dem_inv(const cwf::Obj&) const override;

  std::optional<cwf::Sub> invert(const cwf::Sub&) const override;

  bool has_base_limits() const override { return true; }
  bool base_is_pullback(const cwf::SubSquare&) const override;
  std::optional<cwf::Sub> base_mediate(const cwf::SubSquare&,
                                       const cwf::Sub& leg_left,
                                       const cwf::Sub& leg_top) const override;

  std::string show_obj(const cwf::Obj&) const override;
  std::string show_sub(const cwf::Sub&) const override;
  std::string show_ty(const cwf::Ty&) const override;
  std::string show_tm(const cwf::Tm&) const override;
  std::string key_ty(const cwf::Ty&) const override;

 private:
  Caps caps_;
};

// Deterministic sampler over small finite sets. Reconstructing one with the
// same parameters replays the exact same draws, so reports are reproducible.
class HSampler final : public cwf::Sampler {
 public:
  HSampler(int atoms, int depth, std::uint64_t seed);

  std::vector<cwf::Obj> objects(int n) override;
  std::vector<cwf::Sub> subs_into(const cwf::Obj& cod, int n) override;
  std::vector<cwf::Ty> types_over(const cwf::Obj& ctx, int n) override;
  std::vector<cwf::Tm> terms_of(const cwf::Ty& ty, int n) override;

 private:
  FamPtr random_fam(const FinObj& base, int depth);
  FinMor random_display(const FinObj& base, int max_fiber);

  std::vector<FinObj> universe_;
  int depth_;
  std::mt19937_64 rng_;
  int fresh_ = 0;
};

}  // namespace cwfkit::hof
