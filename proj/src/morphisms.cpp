#include "cwfkit/morphisms.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "cwfkit/errors.hpp"
#include "cwfkit/fincat.hpp"

namespace cwfkit::morph {

PseudoCwfMorphism::PseudoCwfMorphism(MorphismData data) : d_(std::move(data)) {
  if (!d_.src || !d_.dst) throw IllFormed("morphism needs both endpoints");
  if (!d_.on_obj || !d_.on_sub || !d_.on_ty || !d_.comparison)
    throw IllFormed("morphism is missing a component");
  if (d_.name.empty()) d_.name = "morphism";
}

cwf::Sub PseudoCwfMorphism::rho(const cwf::Obj& ctx, const cwf::Ty& a) const {
  const auto& C = *d_.src;
  const auto& D = *d_.dst;
  cwf::Sub r = d_.comparison(ctx, a);
  std::string k = C.key_obj(ctx) + "|" + C.key_ty(a);
  auto it = rho_checked_.find(k);
  if (it == rho_checked_.end()) {
    bool ok = D.eq_sub(D.compose(D.p(ty(ctx, a)), r), sub(C.p(a)));
    it = rho_checked_.emplace(k, ok).first;
  }
  if (!it->second)
    throw IllFormed(d_.name + ": comparison map does not live over the display of " +
                    C.show_ty(a));
  return r;
}

cwf::Sub PseudoCwfMorphism::rho_inv(const cwf::Obj& ctx, const cwf::Ty& a) const {
  auto r = rho(ctx, a);
  auto inv = d_.dst->invert(r);
  if (!inv) throw IllFormed(d_.name + ": comparison map is not invertible");
  return *inv;
}

cwf::Tm PseudoCwfMorphism::tm(const cwf::Obj& ctx, const cwf::Tm& a) const {
  const auto& C = *d_.src;
  const auto& D = *d_.dst;
  cwf::Ty A = C.ty_of(a);
  cwf::Sub graph = C.pair_sub(C.id(ctx), a, A);
  return D.subst_tm(D.q(ty(ctx, A)), D.compose(rho(ctx, A), sub(graph)));
}

cwf::TypeIso PseudoCwfMorphism::theta(const cwf::Obj& ctx, const cwf::Ty& a,
                                      const cwf::Sub& delta) const {
  const auto& C = *d_.src;
  const auto& D = *d_.dst;
  cwf::Obj above = C.dom(delta);
  cwf::Ty moved = C.subst_ty(a, delta);
  cwf::Ty sa = ty(ctx, a);
  cwf::Ty s_moved = ty(above, moved);
  cwf::Sub fdelta = sub(delta);
  cwf::Ty target = D.subst_ty(sa, fdelta);

  // strict morphisms land on the nose; try the identity witness first
  try {
    return cwf::TypeIso(D, s_moved, target, D.id(D.ext(s_moved)),
                        D.id(D.ext(target)));
  } catch (const Error&) {
  }

  if (!D.has_base_limits())
    throw NotLimitPreserving(
        d_.name + ": target instance exposes no chosen pullbacks to mediate through");

  cwf::Sub f_weak = sub(cwf::weaken(C, delta, a));
  cwf::Sub f_p_moved = sub(C.p(moved));

  cwf::SubSquare chosen{cwf::weaken(D, fdelta, sa), D.p(target), D.p(sa), fdelta};
  auto med = D.base_mediate(chosen, f_p_moved, D.compose(rho(ctx, a), f_weak));
  if (!med)
    throw NotLimitPreserving(d_.name +
                             ": no mediator into the chosen substitution square");
  cwf::Sub fwd = D.compose(*med, rho_inv(above, moved));

  cwf::SubSquare image{f_weak, f_p_moved, sub(C.p(a)), fdelta};
  if (!D.base_is_pullback(image))
    throw NotLimitPreserving(d_.name +
                             ": image of a weakening square is not a pullback");
  auto back = D.base_mediate(image, D.p(target),
                             D.compose(rho_inv(ctx, a), cwf::weaken(D, fdelta, sa)));
  if (!back)
    throw NotLimitPreserving(d_.name + ": image square refuses a mediator");
  cwf::Sub bwd = D.compose(rho(above, moved), *back);

  return cwf::TypeIso(D, s_moved, target, fwd, bwd);
}

PseudoCwfMorphism identity_morphism(const cwf::Instance& inst, std::string name) {
  MorphismData d;
  d.src = &inst;
  d.dst = &inst;
  d.name = std::move(name);
  d.on_obj = [](const cwf::Obj& o) { return o; };
  d.on_sub = [](const cwf::Sub& s) { return s; };
  d.on_ty = [](const cwf::Obj&, const cwf::Ty& a) { return a; };
  const cwf::Instance* ip = &inst;
  d.comparison = [ip](const cwf::Obj&, const cwf::Ty& a) {
    return ip->id(ip->ext(a));
  };
  return PseudoCwfMorphism(std::move(d));
}

PseudoCwfMorphism compose_pseudo(const PseudoCwfMorphism& g,
                                 const PseudoCwfMorphism& f) {
  if (&f.dst() != &g.src())
    throw InstanceMismatch("composing morphisms whose middle instances differ");
  MorphismData d;
  d.src = &f.src();
  d.dst = &g.dst();
  d.name = g.name() + "." + f.name();
  d.on_obj = [g, f](const cwf::Obj& o) { return g.obj(f.obj(o)); };
  d.on_sub = [g, f](const cwf::Sub& s) { return g.sub(f.sub(s)); };
  d.on_ty = [g, f](const cwf::Obj& ctx, const cwf::Ty& a) {
    return g.ty(f.obj(ctx), f.ty(ctx, a));
  };
  d.comparison = [g, f](const cwf::Obj& ctx, const cwf::Ty& a) {
    const auto& D = g.dst();
    return D.compose(g.rho(f.obj(ctx), f.ty(ctx, a)), g.sub(f.rho(ctx, a)));
  };
  return PseudoCwfMorphism(std::move(d));
}

PseudoCwfTransformation::PseudoCwfTransformation(TransformationData data)
    : d_(std::move(data)) {
  if (!d_.from || !d_.to) throw IllFormed("transformation needs endpoints");
  if (&d_.from->src() != &d_.to->src() || &d_.from->dst() != &d_.to->dst())
    throw InstanceMismatch("transformation endpoints disagree on instances");
  if (!d_.component) throw IllFormed("transformation is missing its component");
  if (d_.name.empty()) d_.name = "transformation";
}

cwf::Sub PseudoCwfTransformation::fiber(const cwf::Obj& ctx,
                                        const cwf::Ty& a) const {
  const auto& F = *d_.from;
  const auto& G = *d_.to;
  const auto& D = F.dst();
  cwf::Obj extended = F.src().ext(a);
  return D.compose(G.rho(ctx, a), D.compose(at(extended), F.rho_inv(ctx, a)));
}

PseudoCwfTransformation identity_transformation(const PseudoCwfMorphism& f,
                                                std::string name) {
  TransformationData d;
  d.from = &f;
  d.to = &f;
  d.name = std::move(name);
  const cwf::Instance* D = &f.dst();
  const PseudoCwfMorphism* fp = &f;
  d.component = [D, fp](const cwf::Obj& o) { return D->id(fp->obj(o)); };
  return PseudoCwfTransformation(std::move(d));
}

PseudoCwfTransformation vertical_compose(const PseudoCwfTransformation& second,
                                         const PseudoCwfTransformation& first) {
  if (&first.to() != &second.from())
    throw InstanceMismatch("vertical composition endpoints do not meet");
  TransformationData d;
  d.from = &first.from();
  d.to = &second.to();
  d.name = second.name() + "." + first.name();
  const cwf::Instance* D = &first.from().dst();
  auto c1 = first;
  auto c2 = second;
  d.component = [D, c1, c2](const cwf::Obj& o) {
    return D->compose(c2.at(o), c1.at(o));
  };
  return PseudoCwfTransformation(std::move(d));
}

PseudoCwfTransformation horizontal_compose(
    const PseudoCwfTransformation& outer, const PseudoCwfTransformation& inner,
    const PseudoCwfMorphism& composed_from,
    const PseudoCwfMorphism& composed_to) {
  if (&inner.from().dst() != &outer.from().src())
    throw InstanceMismatch("horizontal composition endpoints do not meet");
  TransformationData d;
  d.from = &composed_from;
  d.to = &composed_to;
  d.name = outer.name() + "*" + inner.name();
  const cwf::Instance* E = &outer.from().dst();
  auto co = outer;
  auto ci = inner;
  d.component = [E, co, ci](const cwf::Obj& o) {
    return E->compose(co.at(ci.to().obj(o)), co.from().sub(ci.at(o)));
  };
  return PseudoCwfTransformation(std::move(d));
}

bool MorphismReport::ok() const {
  return std::all_of(laws.begin(), laws.end(),
                     [](const cwf::LawResult& r) { return r.failures == 0; });
}

nlohmann::json MorphismReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : laws) arr.push_back(r.to_json());
  return nlohmann::json{{"morphism", morphism}, {"ok", ok()}, {"laws", arr}};
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

void skip(cwf::LawResult& r, const std::string& why) {
  r.skipped = true;
  if (r.note.empty()) r.note = why;
}

}  // namespace

MorphismReport check_morphism(const PseudoCwfMorphism& f, cwf::Sampler& sampler,
                              CheckOptions opts) {
  const auto& C = f.src();
  const auto& D = f.dst();
  std::vector<cwf::LawResult> rows;
  for (const char* n :
       {"functor-id", "functor-comp", "terminal-iso", "rho-display",
        "theta-identity", "theta-coherence", "theta-naturality",
        "pullback-preservation"})
    rows.push_back(cwf::LawResult{n, 0, 0, false, ""});
  auto& r_fid = row(rows, "functor-id");
  auto& r_fcomp = row(rows, "functor-comp");
  auto& r_term = row(rows, "terminal-iso");
  auto& r_rho = row(rows, "rho-display");
  auto& r_tid = row(rows, "theta-identity");
  auto& r_tco = row(rows, "theta-coherence");
  auto& r_tnat = row(rows, "theta-naturality");
  auto& r_pb = row(rows, "pullback-preservation");
  const int cap = opts.samples;

  if (!D.has_base_limits())
    skip(r_pb, "target instance has no chosen pullbacks");

  attempt(r_term, 1, [&]() -> std::optional<std::string> {
    auto t = D.terminal_sub(f.obj(C.terminal_obj()));
    if (!D.invert(t)) return "image of the empty context is not terminal";
    return std::nullopt;
  });

  for (auto& gamma : sampler.objects(4)) {
    attempt(r_fid, cap, [&]() -> std::optional<std::string> {
      if (!D.eq_sub(f.sub(C.id(gamma)), D.id(f.obj(gamma))))
        return "identity not preserved at " + C.show_obj(gamma);
      return std::nullopt;
    });
    auto subs = sampler.subs_into(gamma, 3);
    for (auto& d1 : subs) {
      for (auto& d2 : sampler.subs_into(C.dom(d1), 2)) {
        attempt(r_fcomp, cap, [&]() -> std::optional<std::string> {
          auto lhs = f.sub(C.compose(d1, d2));
          auto rhs = D.compose(f.sub(d1), f.sub(d2));
          if (!D.eq_sub(lhs, rhs)) return "composition not preserved";
          return std::nullopt;
        });
      }
    }
    for (auto& a : sampler.types_over(gamma, 2)) {
      attempt(r_rho, cap, [&]() -> std::optional<std::string> {
        auto r = f.rho(gamma, a);
        auto ri = f.rho_inv(gamma, a);
        if (!D.eq_sub(D.compose(r, ri), D.id(D.ext(f.ty(gamma, a)))))
          return "comparison inverse fails on the extension side";
        if (!D.eq_sub(D.compose(ri, r), D.id(f.obj(C.ext(a)))))
          return "comparison inverse fails on the image side";
        return std::nullopt;
      });
      attempt(r_tid, cap, [&]() -> std::optional<std::string> {
        auto th = f.theta(gamma, a, C.id(gamma));
        auto want = D.id(D.ext(th.src));
        if (!D.eq_sub(th.fwd, want) || !D.eq_sub(th.bwd, want))
          return "substitution comparison at the identity is not the identity";
        return std::nullopt;
      });
      for (auto& d1 : subs) {
        if (!r_pb.skipped) {
          attempt(r_pb, cap, [&]() -> std::optional<std::string> {
            cwf::SubSquare image{f.sub(cwf::weaken(C, d1, a)),
                                 f.sub(C.p(C.subst_ty(a, d1))), f.sub(C.p(a)),
                                 f.sub(d1)};
            if (!D.base_is_pullback(image))
              return "image of a weakening square is not a pullback";
            return std::nullopt;
          });
        }
        for (auto& d2 : sampler.subs_into(C.dom(d1), 2)) {
          attempt(r_tco, cap, [&]() -> std::optional<std::string> {
            auto th1 = f.theta(gamma, a, d1);
            auto th2 = f.theta(C.dom(d1), C.subst_ty(a, d1), d2);
            auto pasted =
                cwf::compose_iso(cwf::reindex_iso(D, f.sub(d2), th1), th2);
            auto direct = f.theta(gamma, a, C.compose(d1, d2));
            if (!D.eq_sub(pasted.fwd, direct.fwd))
              return "pasting along composition disagrees (forward)";
            if (!D.eq_sub(pasted.bwd, direct.bwd))
              return "pasting along composition disagrees (backward)";
            return std::nullopt;
          });
        }
        for (auto& x : sampler.terms_of(a, 2)) {
          attempt(r_tnat, cap, [&]() -> std::optional<std::string> {
            auto th = f.theta(gamma, a, d1);
            auto moved = f.tm(C.dom(d1), C.subst_tm(x, d1));
            auto routed = cwf::coerce(cwf::invert_iso(th),
                                      D.subst_tm(f.tm(gamma, x), f.sub(d1)));
            if (!D.eq_tm(moved, routed))
              return "term translation does not commute with substitution";
            return std::nullopt;
          });
        }
      }
    }
  }
  return MorphismReport{f.name(), std::move(rows)};
}

IsoFinder h_iso_finder() {
  return [](const cwf::Instance& inst, const cwf::Ty& a,
            const cwf::Ty& b) -> std::optional<cwf::TypeIso> {
    const auto* h = dynamic_cast<const hof::HInstance*>(&inst);
    if (!h) return std::nullopt;
    const auto& fa = hof::HInstance::T(a);
    const auto& fb = hof::HInstance::T(b);
    if (fa->base() != fb->base()) return std::nullopt;
    auto fwd = fincat::iso_over_base(hof::display_of(*fa), hof::display_of(*fb));
    if (!fwd) return std::nullopt;
    auto bwd = fincat::is_iso(*fwd);
    if (!bwd) return std::nullopt;
    try {
      return cwf::TypeIso(inst, a, b, cwf::Sub{*fwd}, cwf::Sub{*bwd});
    } catch (const Error&) {
      return std::nullopt;
    }
  };
}

MorphismReport check_preserves(const PseudoCwfMorphism& f, cwf::Sampler& sampler,
                               const IsoFinder& finder, CheckOptions opts) {
  const auto& C = f.src();
  const auto& D = f.dst();
  std::vector<cwf::LawResult> rows;
  for (const char* n :
       {"sigma-preserved", "id-preserved", "pi-preserved", "dem-square"})
    rows.push_back(cwf::LawResult{n, 0, 0, false, ""});
  auto& r_sigma = row(rows, "sigma-preserved");
  auto& r_id = row(rows, "id-preserved");
  auto& r_pi = row(rows, "pi-preserved");
  auto& r_dem = row(rows, "dem-square");
  const int cap = opts.samples;

  if (!C.has_sigma() || !D.has_sigma()) skip(r_sigma, "pair types unavailable");
  if (!C.has_id_types() || !D.has_id_types())
    skip(r_id, "equality types unavailable");
  if (!C.has_pi() || !D.has_pi()) skip(r_pi, "function types unavailable");
  if (!C.has_democracy() || !D.has_democracy())
    skip(r_dem, "context reflection unavailable");

  for (auto& gamma : sampler.objects(3)) {
    if (!r_dem.skipped) {
      attempt(r_dem, cap, [&]() -> std::optional<std::string> {
        auto iota = D.invert(D.terminal_sub(f.obj(C.terminal_obj())));
        if (!iota) return "terminal not preserved, reflection incomparable";
        auto sbar = f.ty(C.terminal_obj(), C.bar(gamma));
        auto landed = D.subst_ty(sbar, *iota);
        auto d_iso = finder(D, landed, D.bar(f.obj(gamma)));
        if (!d_iso) return "reflected context not preserved up to iso";
        auto w = cwf::weaken(D, *iota, sbar);
        auto winv = D.invert(w);
        if (!winv) return "terminal comparison does not lift to extensions";
        auto lhs = D.compose(
            d_iso->fwd,
            D.compose(*winv, D.compose(f.rho(C.terminal_obj(), C.bar(gamma)),
                                       f.sub(C.dem(gamma)))));
        if (!D.eq_sub(lhs, D.dem(f.obj(gamma))))
          return "reflection square does not commute";
        return std::nullopt;
      });
    }
    for (auto& a : sampler.types_over(gamma, 2)) {
      auto sa = f.ty(gamma, a);
      if (!r_sigma.skipped || !r_pi.skipped) {
        for (auto& b : sampler.types_over(C.ext(a), 2)) {
          attempt(r_sigma, cap, [&]() -> std::optional<std::string> {
            auto whole = f.ty(gamma, C.sigma_ty(a, b));
            auto sb = D.subst_ty(f.ty(C.ext(a), b), f.rho_inv(gamma, a));
            if (!finder(D, whole, D.sigma_ty(sa, sb)))
              return "no fiberwise iso for the image of a pair type";
            return std::nullopt;
          });
          attempt(r_pi, cap, [&]() -> std::optional<std::string> {
            auto whole = f.ty(gamma, C.pi_ty(a, b));
            auto sb = D.subst_ty(f.ty(C.ext(a), b), f.rho_inv(gamma, a));
            if (!finder(D, whole, D.pi_ty(sa, sb)))
              return "no fiberwise iso for the image of a function type";
            return std::nullopt;
          });
        }
      }
      if (!r_id.skipped) {
        auto tms = sampler.terms_of(a, 2);
        for (std::size_t i = 0; i < tms.size(); ++i) {
          for (std::size_t j = i; j < tms.size(); ++j) {
            attempt(r_id, cap, [&]() -> std::optional<std::string> {
              auto whole = f.ty(gamma, C.id_ty(a, tms[i], tms[j]));
              auto built = D.id_ty(sa, f.tm(gamma, tms[i]), f.tm(gamma, tms[j]));
              if (!finder(D, whole, built))
                return "no fiberwise iso for the image of an equality type";
              return std::nullopt;
            });
          }
        }
      }
    }
  }
  return MorphismReport{f.name(), std::move(rows)};
}

MorphismReport check_transformation(const PseudoCwfTransformation& t,
                                    cwf::Sampler& sampler, CheckOptions opts) {
  const auto& F = t.from();
  const auto& G = t.to();
  const auto& C = F.src();
  const auto& D = F.dst();
  std::vector<cwf::LawResult> rows;
  for (const char* n : {"base-naturality", "fiber-over-base", "fiber-pairing",
                        "theta-square"})
    rows.push_back(cwf::LawResult{n, 0, 0, false, ""});
  auto& r_nat = row(rows, "base-naturality");
  auto& r_over = row(rows, "fiber-over-base");
  auto& r_pair = row(rows, "fiber-pairing");
  auto& r_theta = row(rows, "theta-square");
  const int cap = opts.samples;

  for (auto& gamma : sampler.objects(3)) {
    auto subs = sampler.subs_into(gamma, 3);
    for (auto& d1 : subs) {
      attempt(r_nat, cap, [&]() -> std::optional<std::string> {
        auto lhs = D.compose(G.sub(d1), t.at(C.dom(d1)));
        auto rhs = D.compose(t.at(gamma), F.sub(d1));
        if (!D.eq_sub(lhs, rhs)) return "component is not natural on the base";
        return std::nullopt;
      });
    }
    for (auto& a : sampler.types_over(gamma, 2)) {
      attempt(r_over, cap, [&]() -> std::optional<std::string> {
        auto psi = t.fiber(gamma, a);
        auto lhs = D.compose(D.p(G.ty(gamma, a)), psi);
        auto rhs = D.compose(t.at(gamma), D.p(F.ty(gamma, a)));
        if (!D.eq_sub(lhs, rhs)) return "fiber map does not live over the base";
        return std::nullopt;
      });
      for (auto& x : sampler.terms_of(a, 2)) {
        attempt(r_pair, cap, [&]() -> std::optional<std::string> {
          auto psi = t.fiber(gamma, a);
          auto lhs = D.compose(
              psi, D.pair_sub(D.id(F.obj(gamma)), F.tm(gamma, x), F.ty(gamma, a)));
          auto rhs = D.compose(
              D.pair_sub(D.id(G.obj(gamma)), G.tm(gamma, x), G.ty(gamma, a)),
              t.at(gamma));
          if (!D.eq_sub(lhs, rhs)) return "fiber map forgets term pairing";
          return std::nullopt;
        });
      }
      for (auto& d1 : subs) {
        attempt(r_theta, cap, [&]() -> std::optional<std::string> {
          auto th_f = F.theta(gamma, a, d1);
          auto th_g = G.theta(gamma, a, d1);
          auto lhs = D.compose(
              t.fiber(gamma, a),
              D.compose(cwf::weaken(D, F.sub(d1), F.ty(gamma, a)), th_f.fwd));
          auto rhs = D.compose(
              cwf::weaken(D, G.sub(d1), G.ty(gamma, a)),
              D.compose(th_g.fwd, t.fiber(C.dom(d1), C.subst_ty(a, d1))));
          if (!D.eq_sub(lhs, rhs))
            return "substitution comparisons disagree across the component";
          return std::nullopt;
        });
      }
    }
  }
  return MorphismReport{t.name(), std::move(rows)};
}

using fincat::Atom;
using fincat::FinMor;
using fincat::FinObj;

SetFunctor set_identity_functor() {
  return SetFunctor{"id", [](const FinObj& x) { return x; },
                    [](const FinMor& g) { return g; }};
}

SetFunctor set_relabel_functor(std::string prefix) {
  auto ren = [prefix](const Atom& a) { return prefix + a; };
  auto on_obj = [ren](const FinObj& x) {
    std::vector<Atom> out;
    out.reserve(x.elements.size());
    for (const auto& a : x.elements) out.push_back(ren(a));
    return FinObj(std::move(out));
  };
  auto on_mor = [ren, on_obj](const FinMor& g) {
    std::map<Atom, Atom> table;
    for (const auto& [k, v] : g.table) table.emplace(ren(k), ren(v));
    return FinMor(on_obj(g.dom), on_obj(g.cod), std::move(table));
  };
  return SetFunctor{"relabel:" + prefix, std::move(on_obj), std::move(on_mor)};
}

SetFunctor set_product_functor(FinObj x) {
  auto on_obj = [x](const FinObj& y) {
    std::vector<Atom> out;
    for (const auto& a : y.elements)
      for (const auto& b : x.elements) out.push_back(fincat::pair_atom(a, b));
    return FinObj(std::move(out));
  };
  auto on_mor = [x, on_obj](const FinMor& g) {
    std::map<Atom, Atom> table;
    for (const auto& [k, v] : g.table)
      for (const auto& b : x.elements)
        table.emplace(fincat::pair_atom(k, b), fincat::pair_atom(v, b));
    return FinMor(on_obj(g.dom), on_obj(g.cod), std::move(table));
  };
  return SetFunctor{"product", std::move(on_obj), std::move(on_mor)};
}

SetFunctor set_exponent_functor(FinObj x) {
  auto enc = [](const FinMor& g) { return fincat::section_atom(fincat::kStar, g.table); };
  auto on_obj = [x, enc](const FinObj& y) {
    std::vector<Atom> out;
    for (const auto& g : fincat::enumerate_maps(x, y)) out.push_back(enc(g));
    return FinObj(std::move(out));
  };
  auto on_mor = [x, on_obj, enc](const FinMor& g) {
    std::map<Atom, Atom> table;
    for (const auto& m : fincat::enumerate_maps(x, g.dom)) {
      std::map<Atom, Atom> pushed;
      for (const auto& [k, v] : m.table) pushed.emplace(k, g(v));
      table.emplace(enc(m), fincat::section_atom(fincat::kStar, pushed));
    }
    return FinMor(on_obj(g.dom), on_obj(g.cod), std::move(table));
  };
  return SetFunctor{"exponent", std::move(on_obj), std::move(on_mor)};
}

namespace {

Atom subset_atom(const std::vector<Atom>& members) {
  Atom out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += members[i];
  }
  out += "}";
  return out;
}

}  // namespace

SetFunctor set_powerset_functor() {
  auto on_obj = [](const FinObj& y) {
    std::vector<Atom> out;
    const auto n = y.elements.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<Atom> members;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t(1) << i)) members.push_back(y.elements[i]);
      out.push_back(subset_atom(members));
    }
    return FinObj(std::move(out));
  };
  auto on_mor = [on_obj](const FinMor& g) {
    std::map<Atom, Atom> table;
    const auto n = g.dom.elements.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<Atom> members;
      std::vector<Atom> image;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t(1) << i)) members.push_back(g.dom.elements[i]);
      for (const auto& a : members) image.push_back(g(a));
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      table.emplace(subset_atom(members), subset_atom(image));
    }
    return FinMor(on_obj(g.dom), on_obj(g.cod), std::move(table));
  };
  return SetFunctor{"powerset", std::move(on_obj), std::move(on_mor)};
}

PseudoCwfMorphism h_on_functor(const hof::HInstance& src,
                               const hof::HInstance& dst, SetFunctor f) {
  MorphismData d;
  d.src = &src;
  d.dst = &dst;
  d.name = f.name;
  auto fo = f.on_obj;
  auto fm = f.on_mor;
  d.on_obj = [fo](const cwf::Obj& o) {
    return cwf::Obj{fo(hof::HInstance::O(o))};
  };
  d.on_sub = [fm](const cwf::Sub& s) {
    return cwf::Sub{fm(hof::HInstance::S(s))};
  };
  d.on_ty = [fm](const cwf::Obj&, const cwf::Ty& t) {
    return cwf::Ty{hof::hat_display(fm(hof::display_of(*hof::HInstance::T(t))))};
  };
  d.comparison = [fm](const cwf::Obj&, const cwf::Ty& t) {
    auto img = fm(hof::display_of(*hof::HInstance::T(t)));
    return cwf::Sub{fincat::identity(img.dom)};
  };
  return PseudoCwfMorphism(std::move(d));
}

PseudoCwfTransformation h_on_nat(
    const PseudoCwfMorphism& from, const PseudoCwfMorphism& to, std::string name,
    std::function<fincat::FinMor(const fincat::FinObj&)> component) {
  TransformationData d;
  d.from = &from;
  d.to = &to;
  d.name = std::move(name);
  d.component = [component](const cwf::Obj& o) {
    return cwf::Sub{component(hof::HInstance::O(o))};
  };
  return PseudoCwfTransformation(std::move(d));
}

}  // namespace cwfkit::morph
