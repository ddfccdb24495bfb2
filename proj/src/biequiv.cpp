#include "cwfkit/biequiv.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "cwfkit/errors.hpp"
#include "cwfkit/fincat.hpp"

namespace cwfkit::biequiv {

using fincat::FinMor;
using fincat::FinObj;

BaseHandle forget(const cwf::Instance& inst) { return BaseHandle{&inst}; }

BaseFunctor forget(const morph::PseudoCwfMorphism& f) {
  BaseFunctor out;
  out.name = f.name();
  out.on_obj = [f](const cwf::Obj& o) { return f.obj(o); };
  out.on_sub = [f](const cwf::Sub& s) { return f.sub(s); };
  return out;
}

std::function<cwf::Sub(const cwf::Obj&)> forget(
    const morph::PseudoCwfTransformation& t) {
  return [t](const cwf::Obj& o) { return t.at(o); };
}

BackedFamily::BackedFamily(const cwf::Instance& inst, cwf::Obj ctx, cwf::Ty a)
    : inst_(&inst), ctx_(std::move(ctx)), a_(std::move(a)) {
  if (!inst_->eq_obj(inst_->ctx_of(a_), ctx_))
    throw BaseMismatch("backing type does not live over the given context");
}

cwf::Ty BackedFamily::stage_ty(const cwf::Sub& delta) const {
  if (!inst_->eq_obj(inst_->cod(delta), ctx_))
    throw BaseMismatch("stage index does not land in the family's context");
  return inst_->subst_ty(a_, delta);
}

cwf::Sub BackedFamily::at(const cwf::Sub& delta) const {
  return inst_->p(stage_ty(delta));
}

cwf::Sub BackedFamily::top(const cwf::Sub& delta, const cwf::Sub& alpha) const {
  return cwf::weaken(*inst_, alpha, stage_ty(delta));
}

namespace {

cwf::LawResult& row(std::vector<cwf::LawResult>& rows, const char* name) {
  for (auto& r : rows)
    if (r.law == name) return r;
  throw IllFormed(std::string("unknown report row ") + name);
}

template <typename Body>
void attempt(cwf::LawResult& r, int cap, Body&& body) {
  if (r.skipped || r.cases >= cap) return;
  ++r.cases;
  std::optional<std::string> why;
  try {
    why = body();
  } catch (const Error& e) {
    why = std::string(e.what());
  }
  if (why) {
    ++r.failures;
    if (r.note.empty()) r.note = *why;
  }
}

}  // namespace

std::vector<cwf::LawResult> check_backed_families(const cwf::Instance& inst,
                                                  cwf::Sampler& sampler,
                                                  int samples) {
  std::vector<cwf::LawResult> rows;
  for (const char* n : {"fam-boundary", "fam-id-top", "fam-square-over",
                        "fam-square-comp", "fam-split"})
    rows.push_back(cwf::LawResult{n, 0, 0, false, ""});
  auto& r_bound = row(rows, "fam-boundary");
  auto& r_idtop = row(rows, "fam-id-top");
  auto& r_over = row(rows, "fam-square-over");
  auto& r_comp = row(rows, "fam-square-comp");
  auto& r_split = row(rows, "fam-split");
  const int cap = std::max(1, samples);

  for (auto& gamma : sampler.objects(3)) {
    for (auto& a : sampler.types_over(gamma, 2)) {
      BackedFamily fam(inst, gamma, a);
      for (auto& delta : sampler.subs_into(gamma, 2)) {
        attempt(r_bound, cap, [&]() -> std::optional<std::string> {
          if (!inst.eq_obj(inst.cod(fam.at(delta)), inst.dom(delta)))
            return "stage display does not sit over the stage";
          return std::nullopt;
        });
        attempt(r_idtop, cap, [&]() -> std::optional<std::string> {
          auto t = fam.top(delta, inst.id(inst.dom(delta)));
          auto stage = inst.ext(fam.stage_ty(delta));
          if (!inst.eq_sub(t, inst.id(stage)))
            return "top over the identity is not the identity";
          return std::nullopt;
        });
        for (auto& alpha : sampler.subs_into(inst.dom(delta), 2)) {
          attempt(r_over, cap, [&]() -> std::optional<std::string> {
            auto lhs = inst.compose(fam.at(delta), fam.top(delta, alpha));
            auto rhs =
                inst.compose(alpha, fam.at(inst.compose(delta, alpha)));
            if (!inst.eq_sub(lhs, rhs))
              return "square does not sit over its index";
            return std::nullopt;
          });
          attempt(r_split, cap, [&]() -> std::optional<std::string> {
            BackedFamily moved(inst, inst.dom(delta),
                               inst.subst_ty(a, delta));
            if (!inst.eq_sub(moved.at(alpha),
                             fam.at(inst.compose(delta, alpha))))
              return "restriction disagrees with precomposition";
            return std::nullopt;
          });
          for (auto& beta : sampler.subs_into(inst.dom(alpha), 1)) {
            attempt(r_comp, cap, [&]() -> std::optional<std::string> {
              auto whole = fam.top(delta, inst.compose(alpha, beta));
              auto steps =
                  inst.compose(fam.top(delta, alpha),
                               fam.top(inst.compose(delta, alpha), beta));
              if (!inst.eq_sub(whole, steps)) return "tops do not paste";
              return std::nullopt;
            });
          }
        }
      }
    }
  }
  return rows;
}

morph::PseudoCwfMorphism eta_h(const hof::HInstance& inst) {
  morph::MorphismData d;
  d.src = &inst;
  d.dst = &inst;
  d.name = "eta";
  d.on_obj = [](const cwf::Obj& o) { return o; };
  d.on_sub = [](const cwf::Sub& s) { return s; };
  d.on_ty = [](const cwf::Obj&, const cwf::Ty& a) {
    return cwf::Ty{hof::backed_fam(hof::HInstance::T(a))};
  };
  const cwf::Instance* ip = &inst;
  d.comparison = [ip](const cwf::Obj&, const cwf::Ty& a) {
    return ip->id(ip->ext(a));
  };
  return morph::PseudoCwfMorphism(std::move(d));
}

morph::PseudoCwfMorphism epsilon_h(const hof::HInstance& inst) {
  morph::MorphismData d;
  d.src = &inst;
  d.dst = &inst;
  d.name = "epsilon";
  d.on_obj = [](const cwf::Obj& o) { return o; };
  d.on_sub = [](const cwf::Sub& s) { return s; };
  const cwf::Instance* ip = &inst;
  d.on_ty = [ip](const cwf::Obj&, const cwf::Ty& a) {
    auto display = cwf::Sub{hof::display_of(*hof::HInstance::T(a))};
    return cwf::inv_type(*ip, display);
  };
  d.comparison = [ip](const cwf::Obj&, const cwf::Ty& a) {
    auto display = cwf::Sub{hof::display_of(*hof::HInstance::T(a))};
    return cwf::inv_iso(*ip, display).bwd;
  };
  return morph::PseudoCwfMorphism(std::move(d));
}

BiequivalencePackage::BiequivalencePackage(const hof::HInstance& inst) {
  eta_ = std::make_unique<morph::PseudoCwfMorphism>(eta_h(inst));
  epsilon_ = std::make_unique<morph::PseudoCwfMorphism>(epsilon_h(inst));
  round_ = std::make_unique<morph::PseudoCwfMorphism>(
      morph::compose_pseudo(*epsilon_, *eta_));
  back_ = std::make_unique<morph::PseudoCwfMorphism>(
      morph::compose_pseudo(*eta_, *epsilon_));
  ident_ =
      std::make_unique<morph::PseudoCwfMorphism>(morph::identity_morphism(inst));
  const cwf::Instance* ip = &inst;
  morph::TransformationData dm;
  dm.from = round_.get();
  dm.to = ident_.get();
  dm.name = "m";
  dm.component = [ip](const cwf::Obj& o) { return ip->id(o); };
  m_ = std::make_unique<morph::PseudoCwfTransformation>(std::move(dm));
  morph::TransformationData dp;
  dp.from = back_.get();
  dp.to = ident_.get();
  dp.name = "m-prime";
  dp.component = [ip](const cwf::Obj& o) { return ip->id(o); };
  mp_ = std::make_unique<morph::PseudoCwfTransformation>(std::move(dp));
}

int RoundTripReport::failures() const {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(),
                    [](const RoundTripCase& c) { return !c.ok(); }));
}

nlohmann::json RoundTripReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json r;
    r["ctx"] = c.ctx;
    r["type"] = c.type;
    r["psi_m_iso"] = c.psi_m_iso;
    r["psi_m_prime_iso"] = c.psi_m_prime_iso;
    r["square_m"] = c.square_m;
    r["square_m_prime"] = c.square_m_prime;
    r["ok"] = c.ok();
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(std::move(r));
  }
  nlohmann::json out;
  out["instance"] = instance;
  out["cases"] = std::move(arr);
  out["summary"] = {{"cases", static_cast<int>(cases.size())},
                    {"failures", failures()}};
  out["ok"] = ok();
  return out;
}

namespace {

// the coherence square a transformation must satisfy per substitution:
// psi after the source's comparisons equals the target's comparisons after
// the fiber at the substituted stage
bool coherence_square(const morph::PseudoCwfTransformation& t,
                      const cwf::Obj& gamma, const cwf::Ty& a,
                      const cwf::Sub& delta) {
  const auto& F = t.from();
  const auto& G = t.to();
  const auto& C = F.src();
  const auto& D = F.dst();
  auto th_f = F.theta(gamma, a, delta);
  auto th_g = G.theta(gamma, a, delta);
  auto lhs = D.compose(
      t.fiber(gamma, a),
      D.compose(cwf::weaken(D, F.sub(delta), F.ty(gamma, a)), th_f.fwd));
  auto rhs = D.compose(
      cwf::weaken(D, G.sub(delta), G.ty(gamma, a)),
      D.compose(th_g.fwd, t.fiber(C.dom(delta), C.subst_ty(a, delta))));
  return D.eq_sub(lhs, rhs);
}

}  // namespace

RoundTripReport roundtrip_report(const hof::HInstance& inst,
                                 cwf::Sampler& sampler, RoundTripOptions opts) {
  BiequivalencePackage pkg(inst);
  const auto& D = inst;
  RoundTripReport rep;
  rep.instance = inst.name();
  const int want = std::max(1, opts.samples);
  for (const auto& gamma : sampler.objects(std::max(1, (want + 1) / 2))) {
    if (static_cast<int>(rep.cases.size()) >= want) break;
    for (const auto& a : sampler.types_over(gamma, 2)) {
      if (static_cast<int>(rep.cases.size()) >= want) break;
      RoundTripCase c;
      c.ctx = D.show_obj(gamma);
      c.type = D.show_ty(a);
      try {
        c.psi_m_iso = D.invert(pkg.m().fiber(gamma, a)).has_value();
        c.psi_m_prime_iso = D.invert(pkg.m_prime().fiber(gamma, a)).has_value();
        c.square_m = true;
        c.square_m_prime = true;
        for (const auto& delta : sampler.subs_into(gamma, 2)) {
          c.square_m = c.square_m && coherence_square(pkg.m(), gamma, a, delta);
          c.square_m_prime =
              c.square_m_prime && coherence_square(pkg.m_prime(), gamma, a, delta);
        }
      } catch (const Error& e) {
        c.psi_m_iso = false;
        c.psi_m_prime_iso = false;
        c.square_m = false;
        c.square_m_prime = false;
        c.note = e.what();
      }
      rep.cases.push_back(std::move(c));
    }
  }
  if (rep.cases.empty())
    throw EmptySampler("round trip needs at least one sampled type");
  return rep;
}

Environment env_from_json(const nlohmann::json& j) {
  Environment env;
  if (j.contains("contexts"))
    for (auto it = j.at("contexts").begin(); it != j.at("contexts").end(); ++it)
      env.contexts.emplace(it.key(), fincat::obj_from_json(it.value().dump()));
  if (j.contains("types"))
    for (auto it = j.at("types").begin(); it != j.at("types").end(); ++it)
      env.types.emplace(it.key(), fincat::mor_from_json(it.value().dump()));
  if (j.contains("terms"))
    for (auto it = j.at("terms").begin(); it != j.at("terms").end(); ++it)
      env.terms.emplace(it.key(), fincat::mor_from_json(it.value().dump()));
  return env;
}

nlohmann::json env_to_json(const Environment& env) {
  nlohmann::json out;
  out["contexts"] = nlohmann::json::object();
  out["types"] = nlohmann::json::object();
  out["terms"] = nlohmann::json::object();
  for (const auto& [name, obj] : env.contexts)
    out["contexts"][name] = nlohmann::json::parse(fincat::to_json(obj));
  for (const auto& [name, mor] : env.types)
    out["types"][name] = nlohmann::json::parse(fincat::to_json(mor));
  for (const auto& [name, mor] : env.terms)
    out["terms"][name] = nlohmann::json::parse(fincat::to_json(mor));
  return out;
}

Interp::Interp(Environment env) : env_(std::move(env)) {}

FinObj Interp::ctx(const syn::CtxPtr& c) const {
  if (!c) throw IllFormed("interpreting a null context");
  if (auto it = ctx_cache_.find(c.get()); it != ctx_cache_.end())
    return it->second;
  FinObj out = [&]() -> FinObj {
    switch (c->k) {
      case syn::Ctx::K::Empty:
        return fincat::terminal();
      case syn::Ctx::K::Named: {
        auto it = env_.contexts.find(c->name);
        if (it == env_.contexts.end())
          throw ScopeError("context symbol not in environment: " + c->name);
        return it->second;
      }
      case syn::Ctx::K::Ext:
        return hof::ext_of(*ty(c->ty));
    }
    throw IllFormed("interpreting a malformed context node");
  }();
  ctx_cache_.emplace(c.get(), out);
  pins_.push_back(c);
  return out;
}

FinMor Interp::sub(const syn::SubPtr& s) const {
  if (!s) throw IllFormed("interpreting a null substitution");
  if (auto it = sub_cache_.find(s.get()); it != sub_cache_.end())
    return it->second;
  FinMor out = [&]() -> FinMor {
    switch (s->k) {
      case syn::Sub::K::Id:
        return fincat::identity(ctx(s->ctx));
      case syn::Sub::K::Comp:
        return fincat::compose(sub(s->outer), sub(s->inner));
      case syn::Sub::K::Terminal:
        return fincat::terminal_map(ctx(s->ctx));
      case syn::Sub::K::P:
        return hof::display_of(*ty(s->ty));
      case syn::Sub::K::Pair:
        return hof::h_pair_sub(*ty(s->ty), sub(s->sub), tm(s->tm).section);
      case syn::Sub::K::DemIso:
        return hof::HInstance::S(h_.dem(cwf::Obj{ctx(s->ctx)}));
      case syn::Sub::K::DemIsoInv:
        return hof::HInstance::S(h_.dem_inv(cwf::Obj{ctx(s->ctx)}));
    }
    throw IllFormed("interpreting a malformed substitution node");
  }();
  sub_cache_.emplace(s.get(), out);
  pins_.push_back(s);
  return out;
}

hof::FamPtr Interp::ty(const syn::TyPtr& t) const {
  if (!t) throw IllFormed("interpreting a null type");
  if (auto it = ty_cache_.find(t.get()); it != ty_cache_.end())
    return it->second;
  hof::FamPtr out = [&]() -> hof::FamPtr {
    switch (t->k) {
      case syn::Ty::K::Base: {
        auto it = env_.types.find(t->name);
        if (it == env_.types.end())
          throw ScopeError("type symbol not in environment: " + t->name);
        if (!(it->second.cod == ctx(t->ctx)))
          throw BaseMismatch("environment display for " + t->name +
                             " sits over the wrong context");
        return hof::hat_display(it->second);
      }
      case syn::Ty::K::Subst:
        return hof::subst_fam(ty(t->a), sub(t->sub));
      case syn::Ty::K::Sigma:
        return hof::sigma_fam(ty(t->a), ty(t->b));
      case syn::Ty::K::Pi:
        return hof::pi_fam(ty(t->a), ty(t->b));
      case syn::Ty::K::Id:
        return hof::id_fam(ty(t->a), tm(t->t1).section, tm(t->t2).section);
      case syn::Ty::K::Bar:
        return hof::bar_fam(ctx(t->ctx));
    }
    throw IllFormed("interpreting a malformed type node");
  }();
  ty_cache_.emplace(t.get(), out);
  pins_.push_back(t);
  return out;
}

hof::HTm Interp::tm(const syn::TmPtr& t) const {
  if (!t) throw IllFormed("interpreting a null term");
  if (auto it = tm_cache_.find(t.get()); it != tm_cache_.end())
    return it->second;
  hof::HTm out = [&]() -> hof::HTm {
    switch (t->k) {
      case syn::Tm::K::Q:
        return hof::h_q(ty(t->ty));
      case syn::Tm::K::SubstTm:
        return hof::h_subst_tm(tm(t->a), sub(t->sub));
      case syn::Tm::K::Refl:
        return hof::h_refl(ty(t->ty), tm(t->a));
      case syn::Tm::K::PairTm: {
        auto x = tm(t->a);
        return hof::h_pair_tm(x.fam, ty(t->ty), x, tm(t->b));
      }
      case syn::Tm::K::Proj1: {
        auto c = syn::normalize(syn::ty_of(t->a));
        if (c->k != syn::Ty::K::Sigma)
          throw IllFormed("projected term is not of pair type");
        return hof::h_proj1(ty(c->a), ty(c->b), tm(t->a));
      }
      case syn::Tm::K::Proj2: {
        auto c = syn::normalize(syn::ty_of(t->a));
        if (c->k != syn::Ty::K::Sigma)
          throw IllFormed("projected term is not of pair type");
        return hof::h_proj2(ty(c->a), ty(c->b), tm(t->a));
      }
      case syn::Tm::K::Lam: {
        auto body = tm(t->a);
        auto inner = syn::normalize(syn::ctx_of(t->a));
        if (inner->k != syn::Ctx::K::Ext)
          throw IllFormed("lambda body does not live in an extended context");
        return hof::h_lambda(ty(inner->ty), body.fam, body);
      }
      case syn::Tm::K::Ap: {
        auto c = syn::normalize(syn::ty_of(t->a));
        if (c->k != syn::Ty::K::Pi)
          throw IllFormed("application head is not of function type");
        return hof::h_ap(ty(c->a), ty(c->b), tm(t->a), tm(t->b));
      }
      case syn::Tm::K::BarSub:
        return hof::HInstance::M(cwf::bar_mor(h_, cwf::Sub{sub(t->sub)}));
      case syn::Tm::K::BaseTm: {
        auto it = env_.terms.find(t->name);
        if (it == env_.terms.end())
          throw ScopeError("term symbol not in environment: " + t->name);
        auto fam = ty(t->ty);
        auto display = hof::display_of(*fam);
        if (!(fincat::compose(display, it->second) ==
              fincat::identity(fam->base())))
          throw NotASection("environment section for " + t->name +
                            " does not section its declared type");
        return hof::HTm{fam, it->second};
      }
    }
    throw IllFormed("interpreting a malformed term node");
  }();
  tm_cache_.emplace(t.get(), out);
  pins_.push_back(t);
  return out;
}

syn::TmRefuter tm_refuter(std::shared_ptr<const Interp> interp) {
  return [interp](const syn::TmPtr& x, const syn::TmPtr& y) {
    try {
      return interp->tm(x).section != interp->tm(y).section;
    } catch (const Error&) {
      return false;
    }
  };
}

syn::TyRefuter ty_refuter(std::shared_ptr<const Interp> interp) {
  return [interp](const syn::TyPtr& x, const syn::TyPtr& y) {
    try {
      return !hof::fam_extensional_eq(*interp->ty(x), *interp->ty(y), 2);
    } catch (const Error&) {
      return false;
    }
  };
}

syn::SubRefuter sub_refuter(std::shared_ptr<const Interp> interp) {
  return [interp](const syn::SubPtr& x, const syn::SubPtr& y) {
    try {
      return interp->sub(x) != interp->sub(y);
    } catch (const Error&) {
      return false;
    }
  };
}

}  // namespace cwfkit::biequiv
