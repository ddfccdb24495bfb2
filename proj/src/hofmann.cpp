#include "cwfkit/hofmann.hpp"

#include <algorithm>
#include <sstream>

namespace cwfkit::hof {

using fincat::Atom;
using fincat::compose;
using fincat::Cone;
using fincat::identity;
using fincat::is_identity_table;
using fincat::mediate_pullback;
using fincat::Square;

FinMor FunFam::at(const FinMor& delta) const {
  if (delta.cod != base())
    throw BaseMismatch("family probed along a map into the wrong context");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = at_cache_.find(delta);
    if (it != at_cache_.end()) return it->second;
  }
  auto result = compute_at(delta);
  std::lock_guard<std::mutex> lock(mu_);
  return at_cache_.emplace(delta, std::move(result)).first->second;
}

FinMor FunFam::square(const FinMor& delta, const FinMor& alpha) const {
  if (delta.cod != base())
    throw BaseMismatch("family square indexed by a map into the wrong context");
  if (alpha.cod != delta.dom)
    throw BaseMismatch("family square legs do not compose");
  auto k = std::make_pair(delta, alpha);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = square_cache_.find(k);
    if (it != square_cache_.end()) return it->second;
  }
  auto result = compute_square(delta, alpha);
  std::lock_guard<std::mutex> lock(mu_);
  return square_cache_.emplace(std::move(k), std::move(result)).first->second;
}

namespace {

class HatFam final : public FunFam {
 public:
  HatFam(FinMor display, FinMor reindex)
      : display_(std::move(display)), reindex_(std::move(reindex)) {
    if (reindex_.cod != display_.cod)
      throw BaseMismatch("display and reindex must share a codomain");
  }

  const FinObj& base() const override { return reindex_.dom; }
  std::string kind() const override { return "hat"; }
  std::string key() const override {
    return "hat(" + fincat::show(display_) + ";" + fincat::show(reindex_) +
           ")";
  }

  const FinMor& display() const { return display_; }
  const FinMor& reindex() const { return reindex_; }

 protected:
  FinMor compute_at(const FinMor& delta) const override {
    return fincat::pullback_along(display_, compose(reindex_, delta)).proj;
  }

  FinMor compute_square(const FinMor& delta,
                        const FinMor& alpha) const override {
    auto outer = fincat::pullback_along(display_, compose(reindex_, delta));
    auto inner = fincat::pullback_along(
        display_, compose(reindex_, compose(delta, alpha)));
    Square sq(outer.top, compose(reindex_, delta), outer.proj, display_);
    Cone cone{inner.apex(), compose(alpha, inner.proj), inner.top};
    return mediate_pullback(sq, cone);
  }

 private:
  FinMor display_;
  FinMor reindex_;
};

class SigmaFam final : public FunFam {
 public:
  SigmaFam(FamPtr a, FamPtr b) : a_(std::move(a)), b_(std::move(b)) {}

  const FinObj& base() const override { return a_->base(); }
  std::string kind() const override { return "sigma"; }
  std::string key() const override {
    return "sigma(" + a_->key() + ";" + b_->key() + ")";
  }

  const FamPtr& first() const { return a_; }
  const FamPtr& second() const { return b_; }

 protected:
  FinMor compute_at(const FinMor& delta) const override {
    auto lift = a_->square(identity(a_->base()), delta);
    return compose(a_->at(delta), b_->at(lift));
  }

  FinMor compute_square(const FinMor& delta,
                        const FinMor& alpha) const override {
    auto idb = identity(a_->base());
    return b_->square(a_->square(idb, delta), a_->square(delta, alpha));
  }

 private:
  FamPtr a_;
  FamPtr b_;
};

class IdFam final : public FunFam {
 public:
  IdFam(FamPtr a, FinMor left, FinMor right)
      : a_(std::move(a)), left_(std::move(left)), right_(std::move(right)) {}

  const FinObj& base() const override { return a_->base(); }
  std::string kind() const override { return "id"; }
  std::string key() const override {
    return "id(" + a_->key() + ";" + fincat::show(left_) + ";" +
           fincat::show(right_) + ")";
  }

  const FamPtr& carrier() const { return a_; }
  const FinMor& left() const { return left_; }
  const FinMor& right() const { return right_; }

 protected:
  FinMor compute_at(const FinMor& delta) const override {
    auto l = section_subst(*a_, left_, delta);
    auto r = section_subst(*a_, right_, delta);
    return fincat::equalizer(l, r).incl;
  }

  FinMor compute_square(const FinMor& delta,
                        const FinMor& alpha) const override {
    auto incl_fine = at(compose(delta, alpha));
    auto incl_coarse = at(delta);
    return fincat::factor_through_inclusion(incl_coarse,
                                            compose(alpha, incl_fine));
  }

 private:
  FamPtr a_;
  FinMor left_;
  FinMor right_;
};

class PiFam final : public FunFam {
 public:
  PiFam(FamPtr a, FamPtr b) : a_(std::move(a)), b_(std::move(b)) {}

  const FinObj& base() const override { return a_->base(); }
  std::string kind() const override { return "pi"; }
  std::string key() const override {
    return "pi(" + a_->key() + ";" + b_->key() + ")";
  }

  const FamPtr& arg() const { return a_; }
  const FamPtr& result() const { return b_; }

  const fincat::DepProductResult& full(const FinMor& delta) const {
    {
      std::lock_guard<std::mutex> lock(full_mu_);
      auto it = full_cache_.find(delta);
      if (it != full_cache_.end()) return it->second;
    }
    auto lift = a_->square(identity(a_->base()), delta);
    auto r = fincat::dependent_product_full(a_->at(delta), b_->at(lift));
    std::lock_guard<std::mutex> lock(full_mu_);
    return full_cache_.emplace(delta, std::move(r)).first->second;
  }

 protected:
  FinMor compute_at(const FinMor& delta) const override {
    return full(delta).pi;
  }

  // an element over y is (y, fiberwise section); transport it to alpha(y) by
  // conjugating with the chosen fiber bijections of the argument and result
  FinMor compute_square(const FinMor& delta,
                        const FinMor& alpha) const override {
    auto idb = identity(a_->base());
    auto fine = compose(delta, alpha);
    const auto& src = full(fine);
    const auto& dst = full(delta);
    auto sa = a_->square(delta, alpha);
    auto sb = b_->square(a_->square(idb, delta), sa);
    std::map<Atom, Atom> table;
    for (const auto& [elem, entry] : src.decode) {
      const Atom& x = alpha(entry.first);
      std::map<Atom, Atom> moved;
      for (const auto& [arg_atom, value] : entry.second)
        moved[sa(arg_atom)] = sb(value);
      table[elem] = dst.lookup(x, moved);
    }
    return FinMor(src.pi.dom, dst.pi.dom, std::move(table));
  }

 private:
  FamPtr a_;
  FamPtr b_;
  mutable std::mutex full_mu_;
  mutable std::map<FinMor, fincat::DepProductResult> full_cache_;
};

void want_family(const FamPtr& a, const char* who) {
  if (!a) throw IllFormed(std::string(who) + " over a null family");
}

void want_over_ext(const FamPtr& a, const FamPtr& b, const char* who) {
  want_family(a, who);
  want_family(b, who);
  if (b->base() != ext_of(*a))
    throw BaseMismatch(std::string(who) +
                       ": second component must live over the extension of "
                       "the first");
}

void want_section(const FunFam& a, const FinMor& s, const char* who) {
  if (s.dom != a.base() || s.cod != ext_of(a) ||
      compose(display_of(a), s) != identity(a.base()))
    throw NotASection(std::string(who) + ": not a section of the display");
}

HTm make_term(FamPtr fam, FinMor section) {
  want_section(*fam, section, "term");
  return HTm{std::move(fam), std::move(section)};
}

// the chosen pullback square exhibiting at(delta) as the reindexing of at(id)
Square index_square(const FunFam& a, const FinMor& delta) {
  auto idb = identity(a.base());
  return Square(a.square(idb, delta), delta, a.at(delta), a.at(idb));
}

class BackedFam final : public FunFam {
 public:
  explicit BackedFam(FamPtr inner) : inner_(std::move(inner)) {}

  const FinObj& base() const override { return inner_->base(); }
  std::string kind() const override { return "backed"; }
  std::string key() const override { return "backed(" + inner_->key() + ")"; }

  const FamPtr& inner() const { return inner_; }

 protected:
  FinMor compute_at(const FinMor& delta) const override {
    return display_of(*subst_fam(inner_, delta));
  }

  FinMor compute_square(const FinMor& delta,
                        const FinMor& alpha) const override {
    auto fam_d = subst_fam(inner_, delta);
    auto fam_da = subst_fam(inner_, compose(delta, alpha));
    return h_pair_sub(*fam_d, compose(alpha, display_of(*fam_da)),
                      h_q(fam_da).section);
  }

 private:
  FamPtr inner_;
};

}  // namespace

FamPtr hat(FinMor display, FinMor reindex) {
  return std::make_shared<HatFam>(std::move(display), std::move(reindex));
}

FamPtr hat_display(FinMor display) {
  auto idc = identity(display.cod);
  return hat(std::move(display), std::move(idc));
}

FamPtr sigma_fam(FamPtr a, FamPtr b) {
  want_over_ext(a, b, "sigma");
  return std::make_shared<SigmaFam>(std::move(a), std::move(b));
}

FamPtr id_fam(FamPtr a, FinMor left, FinMor right) {
  want_family(a, "id");
  want_section(*a, left, "id");
  want_section(*a, right, "id");
  return std::make_shared<IdFam>(std::move(a), std::move(left),
                                 std::move(right));
}

FamPtr pi_fam(FamPtr a, FamPtr b) {
  want_over_ext(a, b, "pi");
  return std::make_shared<PiFam>(std::move(a), std::move(b));
}

FamPtr bar_fam(const FinObj& gamma) {
  return hat(fincat::terminal_map(gamma), identity(fincat::terminal()));
}

FamPtr backed_fam(FamPtr inner) {
  want_family(inner, "backed");
  return std::make_shared<BackedFam>(std::move(inner));
}

FamPtr subst_fam(const FamPtr& a, const FinMor& gamma) {
  want_family(a, "substitution");
  if (gamma.cod != a->base())
    throw BaseMismatch("substitution does not land in the family's context");
  if (is_identity_table(gamma)) return a;
  if (auto* h = dynamic_cast<const HatFam*>(a.get()))
    return hat(h->display(), compose(h->reindex(), gamma));
  if (auto* s = dynamic_cast<const SigmaFam*>(a.get())) {
    auto lift = s->first()->square(identity(s->first()->base()), gamma);
    return sigma_fam(subst_fam(s->first(), gamma),
                     subst_fam(s->second(), lift));
  }
  if (auto* i = dynamic_cast<const IdFam*>(a.get()))
    return id_fam(subst_fam(i->carrier(), gamma),
                  section_subst(*i->carrier(), i->left(), gamma),
                  section_subst(*i->carrier(), i->right(), gamma));
  if (auto* p = dynamic_cast<const PiFam*>(a.get())) {
    auto lift = p->arg()->square(identity(p->arg()->base()), gamma);
    return pi_fam(subst_fam(p->arg(), gamma), subst_fam(p->result(), lift));
  }
  if (auto* w = dynamic_cast<const BackedFam*>(a.get()))
    return backed_fam(subst_fam(w->inner(), gamma));
  throw IllFormed("unknown family kind: " + a->kind());
}

FinMor display_of(const FunFam& a) { return a.at(identity(a.base())); }

FinObj ext_of(const FunFam& a) { return display_of(a).dom; }

FinMor section_subst(const FunFam& a, const FinMor& s, const FinMor& delta) {
  if (is_identity_table(delta)) return s;
  Cone cone{delta.dom, identity(delta.dom), compose(s, delta)};
  return mediate_pullback(index_square(a, delta), cone);
}

FinMor h_pair_sub(const FunFam& a, const FinMor& delta, const FinMor& s) {
  return compose(a.square(identity(a.base()), delta), s);
}

HTm h_q(const FamPtr& a) {
  want_family(a, "q");
  auto pa = display_of(*a);
  auto ext = ext_of(*a);
  Cone cone{ext, identity(ext), identity(ext)};
  auto section = mediate_pullback(index_square(*a, pa), cone);
  return make_term(subst_fam(a, pa), std::move(section));
}

HTm h_subst_tm(const HTm& t, const FinMor& delta) {
  want_family(t.fam, "term substitution");
  return make_term(subst_fam(t.fam, delta),
                   section_subst(*t.fam, t.section, delta));
}

HTm h_pair_tm(const FamPtr& a, const FamPtr& b, const HTm& x, const HTm& y) {
  want_over_ext(a, b, "pair");
  want_section(*a, x.section, "pair");
  auto phi = x.section;  // <id, x> : base -> ext(a)
  auto section = compose(b->square(identity(ext_of(*a)), phi), y.section);
  return make_term(sigma_fam(a, b), std::move(section));
}

HTm h_proj1(const FamPtr& a, const FamPtr& b, const HTm& c) {
  want_over_ext(a, b, "proj1");
  auto section = compose(b->at(identity(ext_of(*a))), c.section);
  return make_term(a, std::move(section));
}

HTm h_proj2(const FamPtr& a, const FamPtr& b, const HTm& c) {
  want_over_ext(a, b, "proj2");
  auto phi = compose(b->at(identity(ext_of(*a))), c.section);
  Cone cone{a->base(), identity(a->base()), c.section};
  auto section = mediate_pullback(index_square(*b, phi), cone);
  return make_term(subst_fam(b, phi), std::move(section));
}

HTm h_refl(const FamPtr& a, const HTm& x) {
  want_family(a, "refl");
  want_section(*a, x.section, "refl");
  auto fam = id_fam(a, x.section, x.section);
  auto incl = display_of(*fam);
  auto section = fincat::factor_through_inclusion(incl, identity(a->base()));
  return make_term(std::move(fam), std::move(section));
}

HTm h_lambda(const FamPtr& a, const FamPtr& b, const HTm& body) {
  want_over_ext(a, b, "lambda");
  want_section(*b, body.section, "lambda");
  auto fam = pi_fam(a, b);
  const auto* pf = static_cast<const PiFam*>(fam.get());
  const auto& f = pf->full(identity(a->base()));
  auto pa = display_of(*a);
  std::map<Atom, Atom> table;
  for (const auto& x : a->base().elements) {
    std::map<Atom, Atom> bindings;
    for (const auto& e : pa.dom.elements)
      if (pa(e) == x) bindings[e] = body.section(e);
    table[x] = f.lookup(x, bindings);
  }
  FinMor section(a->base(), f.pi.dom, std::move(table));
  return make_term(std::move(fam), std::move(section));
}

HTm h_ap(const FamPtr& a, const FamPtr& b, const HTm& f, const HTm& x) {
  want_over_ext(a, b, "ap");
  want_section(*a, x.section, "ap");
  const auto* pf = dynamic_cast<const PiFam*>(f.fam.get());
  if (pf == nullptr) throw FiberMismatch("applying a non-function term");
  const auto& full = pf->full(identity(a->base()));
  auto phi = x.section;
  auto idext = identity(ext_of(*a));
  std::map<Atom, Atom> raw;
  for (const auto& g : a->base().elements) {
    const auto& entry = full.decode.at(f.section(g));
    raw[g] = entry.second.at(phi(g));
  }
  FinMor values(a->base(), b->at(idext).dom, std::move(raw));
  Cone cone{a->base(), identity(a->base()), values};
  auto section = mediate_pullback(index_square(*b, phi), cone);
  return make_term(subst_fam(b, phi), std::move(section));
}

bool fam_eq(const FunFam& a, const FunFam& b) { return a.key() == b.key(); }

bool fam_extensional_eq(const FunFam& a, const FunFam& b, int probe_atoms) {
  if (a.base() != b.base()) return false;
  std::vector<FinObj> probes;
  probes.push_back(a.base());
  std::vector<Atom> pool = {"z0", "z1", "z2"};
  int cap = std::min(probe_atoms, 3);
  for (int k = 0; k <= cap; ++k)
    probes.push_back(FinObj(std::vector<Atom>(pool.begin(), pool.begin() + k)));
  std::vector<FinMor> deltas;
  for (const auto& probe : probes)
    for (auto& d : fincat::enumerate_maps(probe, a.base()))
      deltas.push_back(std::move(d));
  for (const auto& d : deltas)
    if (a.at(d) != b.at(d)) return false;
  for (const auto& d : deltas) {
    for (const auto& probe : probes) {
      if (probe.size() > 2) continue;
      for (const auto& alpha : fincat::enumerate_maps(probe, d.dom))
        if (a.square(d, alpha) != b.square(d, alpha)) return false;
    }
  }
  return true;
}

nlohmann::json dump_family(const FunFam& a, const std::vector<FinMor>& probes) {
  nlohmann::json out;
  out["kind"] = a.kind();
  out["base"] = nlohmann::json::parse(fincat::to_json(a.base()));
  out["key"] = a.key();
  out["probes"] = nlohmann::json::array();
  for (const auto& d : probes) {
    nlohmann::json row;
    row["index"] = nlohmann::json::parse(fincat::to_json(d));
    row["display"] = nlohmann::json::parse(fincat::to_json(a.at(d)));
    out["probes"].push_back(std::move(row));
  }
  return out;
}

HInstance::HInstance(Caps caps) : caps_(caps) {}

const FinObj& HInstance::O(const cwf::Obj& o) {
  if (const auto* p = std::any_cast<FinObj>(&o.v)) return *p;
  throw InstanceMismatch("foreign object handle");
}

const FinMor& HInstance::S(const cwf::Sub& s) {
  if (const auto* p = std::any_cast<FinMor>(&s.v)) return *p;
  throw InstanceMismatch("foreign morphism handle");
}

const FamPtr& HInstance::T(const cwf::Ty& t) {
  if (const auto* p = std::any_cast<FamPtr>(&t.v)) return *p;
  throw InstanceMismatch("foreign type handle");
}

const HTm& HInstance::M(const cwf::Tm& t) {
  if (const auto* p = std::any_cast<HTm>(&t.v)) return *p;
  throw InstanceMismatch("foreign term handle");
}

namespace {
cwf::Obj mko(FinObj x) { return cwf::Obj{std::move(x)}; }
cwf::Sub mks(FinMor f) { return cwf::Sub{std::move(f)}; }
cwf::Ty mkt(FamPtr f) { return cwf::Ty{std::move(f)}; }
cwf::Tm mkm(HTm t) { return cwf::Tm{std::move(t)}; }
}  // namespace

std::string HInstance::name() const { return "finset"; }

cwf::Sub HInstance::id(const cwf::Obj& o) const { return mks(identity(O(o))); }

cwf::Sub HInstance::compose(const cwf::Sub& g, const cwf::Sub& f) const {
  return mks(fincat::compose(S(g), S(f)));
}

cwf::Obj HInstance::dom(const cwf::Sub& s) const { return mko(S(s).dom); }

cwf::Obj HInstance::cod(const cwf::Sub& s) const { return mko(S(s).cod); }

bool HInstance::eq_obj(const cwf::Obj& x, const cwf::Obj& y) const {
  return O(x) == O(y);
}

bool HInstance::eq_sub(const cwf::Sub& x, const cwf::Sub& y) const {
  return S(x) == S(y);
}

cwf::Obj HInstance::terminal_obj() const { return mko(fincat::terminal()); }

cwf::Sub HInstance::terminal_sub(const cwf::Obj& o) const {
  return mks(fincat::terminal_map(O(o)));
}

cwf::Obj HInstance::ctx_of(const cwf::Ty& t) const {
  return mko(T(t)->base());
}

cwf::Ty HInstance::subst_ty(const cwf::Ty& t, const cwf::Sub& s) const {
  return mkt(subst_fam(T(t), S(s)));
}

bool HInstance::eq_ty(const cwf::Ty& x, const cwf::Ty& y) const {
  return fam_eq(*T(x), *T(y));
}

cwf::Ty HInstance::ty_of(const cwf::Tm& t) const { return mkt(M(t).fam); }

cwf::Tm HInstance::subst_tm(const cwf::Tm& t, const cwf::Sub& s) const {
  return mkm(h_subst_tm(M(t), S(s)));
}

bool HInstance::eq_tm(const cwf::Tm& x, const cwf::Tm& y) const {
  return M(x).section == M(y).section && fam_eq(*M(x).fam, *M(y).fam);
}

cwf::Obj HInstance::ext(const cwf::Ty& t) const {
  return mko(ext_of(*T(t)));
}

cwf::Sub HInstance::p(const cwf::Ty& t) const {
  return mks(display_of(*T(t)));
}

cwf::Tm HInstance::q(const cwf::Ty& t) const { return mkm(h_q(T(t))); }

cwf::Sub HInstance::pair_sub(const cwf::Sub& gamma, const cwf::Tm& a,
                             const cwf::Ty& ty) const {
  return mks(h_pair_sub(*T(ty), S(gamma), M(a).section));
}

cwf::Ty HInstance::sigma_ty(const cwf::Ty& a, const cwf::Ty& b) const {
  if (!caps_.sigma) missing("sigma");
  return mkt(sigma_fam(T(a), T(b)));
}

cwf::Tm HInstance::pair_tm(const cwf::Ty& a, const cwf::Ty& b,
                           const cwf::Tm& x, const cwf::Tm& y) const {
  if (!caps_.sigma) missing("sigma");
  return mkm(h_pair_tm(T(a), T(b), M(x), M(y)));
}

cwf::Tm HInstance::proj1(const cwf::Ty& a, const cwf::Ty& b,
                         const cwf::Tm& c) const {
  if (!caps_.sigma) missing("sigma");
  return mkm(h_proj1(T(a), T(b), M(c)));
}

cwf::Tm HInstance::proj2(const cwf::Ty& a, const cwf::Ty& b,
                         const cwf::Tm& c) const {
  if (!caps_.sigma) missing("sigma");
  return mkm(h_proj2(T(a), T(b), M(c)));
}

cwf::Ty HInstance::id_ty(const cwf::Ty& a, const cwf::Tm& x,
                         const cwf::Tm& y) const {
  if (!caps_.id_types) missing("id types");
  return mkt(id_fam(T(a), M(x).section, M(y).section));
}

cwf::Tm HInstance::refl(const cwf::Ty& a, const cwf::Tm& x) const {
  if (!caps_.id_types) missing("id types");
  return mkm(h_refl(T(a), M(x)));
}

cwf::Ty HInstance::pi_ty(const cwf::Ty& a, const cwf::Ty& b) const {
  if (!caps_.pi) missing("pi");
  return mkt(pi_fam(T(a), T(b)));
}

cwf::Tm HInstance::lam(const cwf::Ty& a, const cwf::Ty& b,
                       const cwf::Tm& body) const {
  if (!caps_.pi) missing("pi");
  return mkm(h_lambda(T(a), T(b), M(body)));
}

cwf::Tm HInstance::ap(const cwf::Ty& a, const cwf::Ty& b, const cwf::Tm& f,
                      const cwf::Tm& x) const {
  if (!caps_.pi) missing("pi");
  return mkm(h_ap(T(a), T(b), M(f), M(x)));
}

cwf::Ty HInstance::bar(const cwf::Obj& o) const {
  if (!caps_.democracy) missing("democracy");
  return mkt(bar_fam(O(o)));
}

cwf::Sub HInstance::dem(const cwf::Obj& o) const {
  if (!caps_.democracy) missing("democracy");
  // the chosen pullback along an identity is the display itself, so the
  // extension of bar(G) is literally G and the iso is an identity
  return mks(identity(O(o)));
}

cwf::Sub HInstance::dem_inv(const cwf::Obj& o) const {
  if (!caps_.democracy) missing("democracy");
  return mks(identity(O(o)));
}

std::optional<cwf::Sub> HInstance::invert(const cwf::Sub& s) const {
  auto inv = fincat::is_iso(S(s));
  if (!inv) return std::nullopt;
  return mks(*inv);
}

bool HInstance::base_is_pullback(const cwf::SubSquare& sq) const {
  try {
    Square raw(S(sq.top), S(sq.bottom), S(sq.left), S(sq.right));
    return fincat::is_pullback(raw);
  } catch (const Error&) {
    return false;
  }
}

std::optional<cwf::Sub> HInstance::base_mediate(const cwf::SubSquare& sq,
                                                const cwf::Sub& leg_left,
                                                const cwf::Sub& leg_top) const {
  try {
    Square raw(S(sq.top), S(sq.bottom), S(sq.left), S(sq.right));
    Cone cone{S(leg_left).dom, S(leg_left), S(leg_top)};
    return mks(mediate_pullback(raw, cone));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string HInstance::show_obj(const cwf::Obj& o) const {
  return fincat::show(O(o));
}

std::string HInstance::show_sub(const cwf::Sub& s) const {
  return fincat::show(S(s));
}

std::string HInstance::show_ty(const cwf::Ty& t) const {
  return T(t)->kind() + " over " + fincat::show(T(t)->base());
}

std::string HInstance::show_tm(const cwf::Tm& t) const {
  return fincat::show(M(t).section);
}

std::string HInstance::key_ty(const cwf::Ty& t) const { return T(t)->key(); }

HSampler::HSampler(int atoms, int depth, std::uint64_t seed)
    : depth_(depth), rng_(seed) {
  atoms = std::clamp(atoms, 1, 3);
  std::vector<Atom> pool = {"u", "v", "w"};
  universe_.push_back(fincat::terminal());
  for (int k = 1; k <= atoms; ++k)
    universe_.push_back(FinObj(std::vector<Atom>(pool.begin(), pool.begin() + k)));
  universe_.push_back(FinObj{});
}

std::vector<cwf::Obj> HSampler::objects(int n) {
  std::vector<cwf::Obj> out;
  for (const auto& x : universe_) {
    if ((int)out.size() >= n) break;
    out.push_back(mko(x));
  }
  // past the canonical universe, draw relabeled copies; atom names feed the
  // chosen-pullback encodings, so each labeling is a distinct concrete case
  static const char* pool[] = {"u", "v", "w"};
  int atoms = (int)universe_.size() - 2;
  for (int k = 0; (int)out.size() < n; ++k) {
    int sz = 1 + (int)(rng_() % (std::uint64_t)atoms);
    std::vector<Atom> xs;
    xs.reserve(sz);
    for (int j = 0; j < sz; ++j)
      xs.push_back(std::string(pool[j]) + ".r" + std::to_string(k));
    out.push_back(mko(FinObj(xs)));
  }
  return out;
}

std::vector<cwf::Sub> HSampler::subs_into(const cwf::Obj& cod, int n) {
  const auto& target = HInstance::O(cod);
  std::vector<FinMor> all;
  for (const auto& x : universe_)
    for (auto& f : fincat::enumerate_maps(x, target)) all.push_back(std::move(f));
  std::vector<cwf::Sub> out;
  out.push_back(mks(identity(target)));
  while ((int)out.size() < n && !all.empty())
    out.push_back(mks(all[rng_() % all.size()]));
  return out;
}

std::vector<cwf::Ty> HSampler::types_over(const cwf::Obj& ctx, int n) {
  std::vector<cwf::Ty> out;
  for (int i = 0; i < n; ++i)
    out.push_back(mkt(random_fam(HInstance::O(ctx), depth_)));
  return out;
}

std::vector<cwf::Tm> HSampler::terms_of(const cwf::Ty& ty, int n) {
  const auto& fam = HInstance::T(ty);
  std::vector<cwf::Tm> out;
  for (auto& s : fincat::enumerate_sections(display_of(*fam))) {
    if ((int)out.size() >= n) break;
    out.push_back(mkm(HTm{fam, std::move(s)}));
  }
  return out;
}

FinMor HSampler::random_display(const FinObj& base, int max_fiber) {
  std::vector<Atom> elems;
  std::map<Atom, Atom> table;
  int salt = fresh_++ % 10;
  for (const auto& x : base.elements) {
    int fiber = (int)(rng_() % (std::uint64_t)(max_fiber + 1));
    for (int j = 0; j < fiber; ++j) {
      Atom e = x + "." + std::to_string(salt) + std::to_string(j);
      elems.push_back(e);
      table[e] = x;
    }
  }
  return FinMor(FinObj(std::move(elems)), base, std::move(table));
}

FamPtr HSampler::random_fam(const FinObj& base, int depth) {
  if (depth <= 0) return hat_display(random_display(base, 2));
  switch (rng_() % 4) {
    case 0:
      return hat_display(random_display(base, 2));
    case 1: {
      auto a = random_fam(base, 0);
      return sigma_fam(a, random_fam(ext_of(*a), depth - 1));
    }
    case 2: {
      auto a = hat_display(random_display(base, 2));
      return pi_fam(a, random_fam(ext_of(*a), 0));
    }
    default: {
      auto a = random_fam(base, 0);
      auto sections = fincat::enumerate_sections(display_of(*a));
      if (sections.empty()) return a;
      const auto& l = sections[rng_() % sections.size()];
      const auto& r = sections[rng_() % sections.size()];
      return id_fam(a, l, r);
    }
  }
}

}  // namespace cwfkit::hof
