// Acceptance suite: one pass/fail line per criterion, exit 1 if any fail.
// Every check is exact (table equality / representation equality); the only
// tolerances are the two wall-clock limits pinned below.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cwfkit/biequiv.hpp"
#include "cwfkit/cwf.hpp"
#include "cwfkit/errors.hpp"
#include "cwfkit/fincat.hpp"
#include "cwfkit/hofmann.hpp"
#include "cwfkit/laws.hpp"
#include "cwfkit/morphisms.hpp"
#include "cwfkit/syntax.hpp"

namespace {

namespace fincat = cwfkit::fincat;
namespace cwf = cwfkit::cwf;
namespace hof = cwfkit::hof;
namespace morph = cwfkit::morph;
namespace biequiv = cwfkit::biequiv;
namespace syn = cwfkit::syn;
using cwfkit::Error;
using fincat::Atom;
using fincat::FinMor;
using fincat::FinObj;

constexpr long kLawsLimitMs = 60000;
constexpr long kRoundTripLimitMs = 120000;

struct Line {
  bool pass;
  std::string text;
};
std::vector<Line> g_lines;

void record(int id, const std::string& label, bool pass,
            const std::string& detail) {
  std::ostringstream os;
  os << "criterion " << id << " (" << label << "): "
     << (pass ? "PASS" : "FAIL") << " - " << detail;
  g_lines.push_back({pass, os.str()});
  std::cout << g_lines.back().text << "\n";
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::uint64_t xs(std::uint64_t& s) {
  s ^= s << 13;
  s ^= s >> 7;
  s ^= s << 17;
  return s;
}

FinObj sized_obj(const std::string& prefix, int n) {
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back(prefix + std::to_string(i));
  return FinObj(atoms);
}

// all displays over `base` with fiber sizes 0..2
std::vector<FinMor> small_displays(const FinObj& base) {
  std::vector<FinMor> out;
  const int n = static_cast<int>(base.size());
  std::vector<int> digits(n, 0);
  for (;;) {
    std::vector<Atom> dom;
    std::map<Atom, Atom> table;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < digits[i]; ++k) {
        Atom a = base.elements[i] + "." + std::to_string(k);
        dom.push_back(a);
        table.emplace(a, base.elements[i]);
      }
    out.emplace_back(FinObj(dom), base, table);
    int i = 0;
    while (i < n && digits[i] == 2) digits[i++] = 0;
    if (i == n) break;
    ++digits[i];
  }
  return out;
}

int fiber_size(const FinMor& f, const Atom& c) {
  int k = 0;
  for (const auto& [x, y] : f.table)
    if (y == c) ++k;
  return k;
}

unsigned long long ipow(unsigned long long b, int e) {
  unsigned long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// slice morphisms between two displays over a common base, counted fiberwise
unsigned long long slice_hom_count(const FinMor& x, const FinMor& y) {
  unsigned long long total = 1;
  for (const auto& c : x.cod.elements)
    total *= ipow(static_cast<unsigned long long>(fiber_size(y, c)),
                  fiber_size(x, c));
  return total;
}

unsigned long long slice_hom_brute(const FinMor& x, const FinMor& y) {
  unsigned long long k = 0;
  for (const auto& h : fincat::enumerate_maps(x.dom, y.dom))
    if (fincat::compose(y, h) == x) ++k;
  return k;
}

// every display-preserving bijection of dom(disp), or empty if there are
// more than `cap`
std::vector<FinMor> display_automorphisms(const FinMor& disp,
                                          unsigned long long cap) {
  std::map<Atom, std::vector<Atom>> fibers;
  for (const auto& a : disp.dom.elements) fibers[disp(a)].push_back(a);
  unsigned long long count = 1;
  for (const auto& [c, f] : fibers) {
    unsigned long long fact = 1;
    for (std::size_t i = 2; i <= f.size(); ++i) fact *= i;
    count *= fact;
    if (count > cap) return {};
  }
  std::vector<std::vector<std::vector<Atom>>> perms;
  std::vector<const std::vector<Atom>*> keys;
  for (const auto& [c, f] : fibers) {
    keys.push_back(&f);
    std::vector<Atom> p = f;
    std::vector<std::vector<Atom>> all;
    std::sort(p.begin(), p.end());
    do {
      all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    perms.push_back(std::move(all));
  }
  std::vector<std::size_t> idx(perms.size(), 0);
  std::vector<FinMor> out;
  for (;;) {
    std::map<Atom, Atom> table;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      const auto& from = *keys[i];
      const auto& to = perms[i][idx[i]];
      for (std::size_t j = 0; j < from.size(); ++j)
        table.emplace(from[j], to[j]);
    }
    out.emplace_back(disp.dom, disp.dom, table);
    std::size_t i = 0;
    while (i < idx.size() && idx[i] + 1 == perms[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  return out;
}

// ---------------------------------------------------------------- criterion 1

void criterion_laws() {
  auto t0 = std::chrono::steady_clock::now();
  hof::HInstance inst;
  hof::HSampler sampler(3, 3, 0);
  auto rep = cwf::law_suite(inst, sampler, {120, 0});
  long elapsed = ms_since(t0);

  const std::vector<std::string> stability = {
      "ty-subst-id",     "ty-subst-comp",      "tm-subst-id",
      "tm-subst-comp",   "id-stability-ty",    "id-stability-refl",
      "sigma-stability-ty", "sigma-stability-pair", "pi-stability-ty",
      "pi-stability-lam", "pi-stability-ap"};
  std::set<std::string> names;
  int min_cases = 1 << 30;
  int failures = 0;
  for (const auto& r : rep.laws) {
    names.insert(r.law);
    failures += r.failures;
    if (!r.skipped) min_cases = std::min(min_cases, r.cases);
  }
  bool have_stability = true;
  for (const auto& s : stability)
    if (!names.count(s)) have_stability = false;
  bool skipped_any =
      std::any_of(rep.laws.begin(), rep.laws.end(),
                  [](const cwf::LawResult& r) { return r.skipped; });

  bool pass = rep.ok() && failures == 0 && !skipped_any && have_stability &&
              static_cast<int>(rep.laws.size()) >= 25 && min_cases >= 100 &&
              elapsed < kLawsLimitMs;
  std::ostringstream os;
  os << rep.laws.size() << " laws, min " << min_cases << " cases/law, "
     << failures << " failures, " << elapsed << " ms";
  if (!have_stability) os << ", stability law missing";
  record(1, "law suite", pass, os.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion_split() {
  hof::HInstance inst;
  hof::HSampler sampler(3, 2, 1);
  int checked = 0, bad = 0;
  std::string first;
  for (const auto& g_obj : sampler.objects(8)) {
    if (checked >= 200) break;
    for (const auto& a : sampler.types_over(g_obj, 3)) {
      if (checked >= 200) break;
      const auto& fam = hof::HInstance::T(a);
      for (const auto& gamma : sampler.subs_into(g_obj, 4)) {
        if (checked >= 200) break;
        const FinMor& g = hof::HInstance::S(gamma);
        for (const auto& delta : sampler.subs_into(inst.dom(gamma), 3)) {
          if (checked >= 200) break;
          const FinMor& d = hof::HInstance::S(delta);
          ++checked;
          auto under_id = hof::subst_fam(fam, fincat::identity(fam->base()));
          auto two_step = hof::subst_fam(hof::subst_fam(fam, g), d);
          auto one_step = hof::subst_fam(fam, fincat::compose(g, d));
          bool ok = hof::fam_eq(*under_id, *fam) &&
                    under_id->key() == fam->key() &&
                    hof::fam_eq(*two_step, *one_step) &&
                    two_step->key() == one_step->key();
          if (!ok && ++bad == 1)
            first = fam->key() + " under " + fincat::show(g) + " then " +
                    fincat::show(d);
        }
      }
    }
  }
  std::ostringstream os;
  os << checked << " triples, " << bad << " representation mismatches";
  if (bad) os << "; first: " << first;
  record(2, "split substitution", checked >= 200 && bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion_squares() {
  hof::HInstance inst;
  hof::HSampler sampler(3, 2, 2);
  int checked = 0, bad = 0;
  std::string first;
  for (const auto& g_obj : sampler.objects(10)) {
    if (checked >= 200) break;
    for (const auto& a : sampler.types_over(g_obj, 4)) {
      if (checked >= 200) break;
      const auto& fam = hof::HInstance::T(a);
      for (const auto& delta_s : sampler.subs_into(g_obj, 4)) {
        if (checked >= 200) break;
        const FinMor& delta = hof::HInstance::S(delta_s);
        for (const auto& alpha_s :
             sampler.subs_into(inst.dom(delta_s), 3)) {
          if (checked >= 200) break;
          const FinMor& alpha = hof::HInstance::S(alpha_s);
          ++checked;
          bool ok = true;
          std::string why;
          FinMor top = fam->square(delta, alpha);
          fincat::Square sq(top, alpha, fam->at(fincat::compose(delta, alpha)),
                            fam->at(delta));
          if (!fincat::is_pullback(sq)) {
            ok = false;
            why = "square is not a pullback";
          }
          FinMor at_delta = fam->at(delta);
          if (fam->square(delta, fincat::identity(delta.dom)) !=
              fincat::identity(at_delta.dom)) {
            ok = false;
            why = "square at the identity is not the identity";
          }
          for (const auto& beta_s : sampler.subs_into(cwf::Obj{alpha.dom}, 2)) {
            const FinMor& beta = hof::HInstance::S(beta_s);
            FinMor pasted = fincat::compose(
                fam->square(delta, alpha),
                fam->square(fincat::compose(delta, alpha), beta));
            if (fam->square(delta, fincat::compose(alpha, beta)) != pasted) {
              ok = false;
              why = "pasting two squares misses the composite";
            }
          }
          if (!ok && ++bad == 1)
            first = why + " for " + fam->key() + " along " +
                    fincat::show(delta) + ", " + fincat::show(alpha);
        }
      }
    }
  }
  std::ostringstream os;
  os << checked << " (family, delta, alpha) samples, " << bad << " failures";
  if (bad) os << "; first: " << first;
  record(3, "chosen pullback squares", checked >= 200 && bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 4

void criterion_pi_counts() {
  long combos = 0, brute_checked = 0, bad = 0;
  std::string first;
  for (int bn = 0; bn <= 3 && bad == 0; ++bn) {
    for (int cn = 0; cn <= 3 && bad == 0; ++cn) {
      FinObj B = sized_obj("x", bn);
      FinObj C = sized_obj("y", cn);
      auto gs = small_displays(B);
      auto xs_ = small_displays(C);
      for (const auto& f : fincat::enumerate_maps(B, C)) {
        for (const auto& g : gs) {
          FinMor pi = fincat::dependent_product(f, g);
          auto pve = fincat::pi_via_exponentials(f, g);
          auto inv = fincat::is_iso(pve.iso);
          if (!inv || fincat::compose(pi, pve.iso) != pve.pi) {
            ++bad;
            first = "exponential route disagrees for f=" + fincat::show(f) +
                    " g=" + fincat::show(g);
            break;
          }
          for (const auto& x : xs_) {
            ++combos;
            unsigned long long lhs = slice_hom_count(x, pi);
            FinMor fx = fincat::pullback_along(x, f).proj;
            unsigned long long rhs = slice_hom_count(fx, g);
            bool ok = lhs == rhs;
            if (ok && x.dom.size() <= 3 && pi.dom.size() <= 4) {
              ++brute_checked;
              ok = slice_hom_brute(x, pi) == lhs;
            }
            if (ok && fx.dom.size() <= 3 && g.dom.size() <= 4) {
              ++brute_checked;
              ok = slice_hom_brute(fx, g) == rhs;
            }
            if (!ok) {
              ++bad;
              std::ostringstream w;
              w << "count mismatch (" << lhs << " vs " << rhs
                << ") for f=" << fincat::show(f) << " g=" << fincat::show(g)
                << " x=" << fincat::show(x);
              first = w.str();
              break;
            }
          }
          if (bad) break;
        }
        if (bad) break;
      }
    }
  }
  std::ostringstream os;
  os << combos << " (f, g, x) combinations, " << brute_checked
     << " cross-checked by enumeration, " << bad << " failures";
  if (bad) os << "; first: " << first;
  record(4, "dependent product counts", combos > 0 && bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 5

void criterion_inverse_image() {
  hof::HInstance inst;
  int checked = 0, bad = 0;
  std::string first;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      FinObj D = sized_obj("d", m);
      FinObj G = sized_obj("g", n);
      for (const auto& delta : fincat::enumerate_maps(D, G)) {
        ++checked;
        std::string why;
        try {
          cwf::Sub ds{delta};
          auto iso = cwf::inv_iso(inst, ds);
          const FinMor& fwd = hof::HInstance::S(iso.fwd);
          const FinMor& bwd = hof::HInstance::S(iso.bwd);
          if (!fincat::is_identity_table(fincat::compose(fwd, bwd)) ||
              !fincat::is_identity_table(fincat::compose(bwd, fwd)))
            why = "iso composites are not identities";
          if (hof::HInstance::S(iso.right) != delta)
            why = "iso does not sit over the given map";
          auto ivt = cwf::inv_type(inst, ds);
          FinMor disp = hof::display_of(*hof::HInstance::T(ivt));
          for (const auto& x : G.elements)
            if (fiber_size(disp, x) != fiber_size(delta, x))
              why = "fiber over " + x + " has " +
                    std::to_string(fiber_size(disp, x)) + " points, expected " +
                    std::to_string(fiber_size(delta, x));
        } catch (const Error& e) {
          why = e.what();
        }
        if (!why.empty() && ++bad == 1)
          first = why + " for " + fincat::show(delta);
      }
    }
  }
  std::ostringstream os;
  os << checked << " maps, " << bad << " failures";
  if (bad) os << "; first: " << first;
  record(5, "inverse image", checked > 0 && bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 6

// the two conditions a candidate must satisfy to fill theta's role
struct ThetaProbe {
  FinMor disp_src, disp_dst, top, route;
  bool admits(const FinMor& h) const {
    return fincat::compose(disp_dst, h) == disp_src &&
           fincat::compose(top, h) == route;
  }
};

std::optional<ThetaProbe> theta_probe(const morph::PseudoCwfMorphism& F,
                                      const cwf::Obj& gamma, const cwf::Ty& a,
                                      const cwf::Sub& delta) {
  const cwf::Instance& C = F.src();
  ThetaProbe p;
  cwf::Obj dom = C.dom(delta);
  cwf::Ty a_delta = C.subst_ty(a, delta);
  cwf::Ty src_ty = F.ty(dom, a_delta);
  cwf::Ty dst_ty =
      F.dst().subst_ty(F.ty(gamma, a), F.sub(delta));
  p.disp_src = hof::display_of(*hof::HInstance::T(src_ty));
  p.disp_dst = hof::display_of(*hof::HInstance::T(dst_ty));
  cwf::Ty sigma_a_ty = F.ty(gamma, a);
  const auto& sigma_a = hof::HInstance::T(sigma_a_ty);
  p.top = sigma_a->square(fincat::identity(sigma_a->base()),
                          hof::HInstance::S(F.sub(delta)));
  cwf::Sub w = cwf::weaken(C, delta, a);
  p.route = fincat::compose(
      hof::HInstance::S(F.rho(gamma, a)),
      fincat::compose(hof::HInstance::S(F.sub(w)),
                      hof::HInstance::S(F.rho_inv(dom, a_delta))));
  return p;
}

void criterion_theta_unique() {
  hof::HInstance inst;
  biequiv::BiequivalencePackage pkg(inst);
  auto relab =
      morph::h_on_functor(inst, inst, morph::set_relabel_functor("z."));
  const morph::PseudoCwfMorphism* morphs[2] = {&pkg.round(), &relab};

  int accepted = 0, bad = 0;
  std::string first;
  for (int which = 0; which < 2; ++which) {
    const auto& F = *morphs[which];
    hof::HSampler sampler(3, 1, 6 + which);
    int got = 0;
    for (const auto& gamma : sampler.objects(6)) {
      if (got >= 10) break;
      for (const auto& a : sampler.types_over(gamma, 2)) {
        if (got >= 10) break;
        for (const auto& delta : sampler.subs_into(gamma, 3)) {
          if (got >= 10) break;
          std::string why;
          try {
            auto probe = theta_probe(F, gamma, a, delta);
            auto th = F.theta(gamma, a, delta);
            const FinMor& fwd = hof::HInstance::S(th.fwd);
            const FinMor& bwd = hof::HInstance::S(th.bwd);
            auto autos = display_automorphisms(probe->disp_src, 50000);
            if (autos.empty()) continue;  // fiber group too large, next draw
            ++got;
            ++accepted;
            if (!probe->admits(fwd))
              why = "generated map misses a projection";
            if (!fincat::is_identity_table(fincat::compose(fwd, bwd)) ||
                !fincat::is_identity_table(fincat::compose(bwd, fwd)))
              why = "generated map is not invertible";
            int admitting = 0;
            for (const auto& phi : autos) {
              FinMor cand = fincat::compose(fwd, phi);
              if (probe->admits(cand)) {
                ++admitting;
                if (cand != fwd) why = "a twisted candidate also fits";
              }
            }
            if (admitting != 1)
              why = "expected exactly one fitting candidate, found " +
                    std::to_string(admitting);
          } catch (const Error& e) {
            why = e.what();
          }
          if (!why.empty() && ++bad == 1) first = why + " (" + F.name() + ")";
        }
      }
    }
  }
  std::ostringstream os;
  os << accepted << " instances searched over their fiber automorphisms, "
     << bad << " failures";
  if (bad) os << "; first: " << first;
  record(6, "mediator uniqueness", accepted >= 20 && bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 7

void criterion_transformation_equations() {
  hof::HInstance inst;
  biequiv::BiequivalencePackage pkg(inst);

  std::vector<std::unique_ptr<morph::PseudoCwfMorphism>> functors;
  const int kPrefixes = 7;
  for (int i = 0; i < kPrefixes; ++i)
    functors.push_back(std::make_unique<morph::PseudoCwfMorphism>(
        morph::h_on_functor(inst, inst,
                            morph::set_relabel_functor(
                                "t" + std::to_string(i) + "."))));

  auto relabel_component = [&](int i, int j) {
    std::string from = "t" + std::to_string(i) + ".";
    std::string to = "t" + std::to_string(j) + ".";
    return [from, to](const FinObj& x) {
      std::vector<Atom> dom, cod;
      std::map<Atom, Atom> table;
      for (const auto& a : x.elements) {
        dom.push_back(from + a);
        cod.push_back(to + a);
        table.emplace(from + a, to + a);
      }
      return FinMor(FinObj(dom), FinObj(cod), table);
    };
  };

  std::vector<morph::PseudoCwfTransformation> pool;
  for (int i = 0; i < kPrefixes; ++i)
    for (int j = 0; j < kPrefixes; ++j)
      if (i != j)
        pool.push_back(morph::h_on_nat(
            *functors[i], *functors[j],
            "relabel" + std::to_string(i) + "to" + std::to_string(j),
            relabel_component(i, j)));
  for (int k = 0; k < 4; ++k)
    pool.push_back(morph::vertical_compose(
        morph::h_on_nat(*functors[k + 1], *functors[k + 2], "snd",
                        relabel_component(k + 1, k + 2)),
        morph::h_on_nat(*functors[k], *functors[k + 1], "fst",
                        relabel_component(k, k + 1))));
  pool.push_back(morph::identity_transformation(pkg.ident()));
  pool.push_back(morph::identity_transformation(pkg.round()));
  pool.push_back(pkg.m());
  pool.push_back(pkg.m_prime());
  while (pool.size() > 50) pool.pop_back();

  int checked = 0, bad = 0;
  long cases = 0;
  std::string first;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    hof::HSampler sampler(2, 1, 100 + k);
    auto rep = morph::check_transformation(
        pool[k], sampler, {3, 100 + static_cast<std::uint64_t>(k)});
    ++checked;
    for (const auto& r : rep.laws) {
      cases += r.cases;
      bool ok = !r.skipped && r.cases > 0 && r.failures == 0;
      if (!ok && ++bad == 1)
        first = pool[k].name() + ": " + r.law +
                (r.note.empty() ? "" : (" (" + r.note + ")"));
    }
  }
  std::ostringstream os;
  os << checked << " transformations, 4 equations each, " << cases
     << " cases, " << bad << " failing rows";
  if (bad) os << "; first: " << first;
  record(7, "transformation equations", checked == 50 && bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 8

void criterion_round_trip() {
  auto t0 = std::chrono::steady_clock::now();
  hof::HInstance inst;
  hof::HSampler sampler(3, 2, 0);
  auto rep = biequiv::roundtrip_report(inst, sampler, {12, 0});
  long elapsed = ms_since(t0);
  int bad = 0;
  std::string first;
  for (const auto& c : rep.cases)
    if (!c.ok() && ++bad == 1)
      first = c.ctx + " |- " + c.type +
              (c.note.empty() ? "" : (": " + c.note));
  bool pass = !rep.cases.empty() && bad == 0 && rep.ok() &&
              elapsed < kRoundTripLimitMs;
  std::ostringstream os;
  os << rep.cases.size()
     << " cases, both comparison components invertible and both squares "
        "commute in each, "
     << elapsed << " ms";
  if (bad) os << "; first failure: " << first;
  record(8, "round trip", pass, os.str());
}

// ---------------------------------------------------------------- criterion 9

struct FuzzWorld {
  syn::Signature sig;
  syn::TyPtr tyA, tyB;
  std::vector<std::pair<syn::TmPtr, syn::TyPtr>> pool;
  biequiv::Interp interp;

  FuzzWorld() : interp(make_env()) {
    auto empty = syn::ctx_empty();
    tyA = syn::ty_base("A", empty);
    tyB = syn::ty_base("B", empty);
    sig.types.emplace("A", empty);
    sig.types.emplace("B", empty);
    sig.terms.emplace("a", tyA);
    sig.terms.emplace("a'", tyA);
    sig.terms.emplace("b", tyB);
    pool.emplace_back(syn::tm_base("a", tyA), tyA);
    pool.emplace_back(syn::tm_base("a'", tyA), tyA);
    pool.emplace_back(syn::tm_base("b", tyB), tyB);
  }

  static biequiv::Environment make_env() {
    biequiv::Environment env;
    FinObj star = fincat::terminal();
    FinObj da({"a0", "a1"});
    FinObj db({"b0"});
    const Atom pt = star.elements.front();
    env.types.emplace("A", FinMor(da, star, {{"a0", pt}, {"a1", pt}}));
    env.types.emplace("B", FinMor(db, star, {{"b0", pt}}));
    env.terms.emplace("a", FinMor(star, da, {{pt, "a0"}}));
    env.terms.emplace("a'", FinMor(star, da, {{pt, "a1"}}));
    env.terms.emplace("b", FinMor(star, db, {{pt, "b0"}}));
    return env;
  }

  bool push(const syn::TmPtr& t) {
    if (!t || syn::size(t) > 60) return false;
    try {
      auto j = syn::check(t, sig);
      pool.emplace_back(t, j.ty);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  std::pair<syn::TmPtr, syn::TyPtr> pick(std::uint64_t& s) const {
    return pool[xs(s) % pool.size()];
  }

  // one candidate term; push() filters anything ill-formed
  void grow(std::uint64_t& s) {
    auto weaken_to = [](const syn::TyPtr& t, const syn::TyPtr& over) {
      return syn::ty_subst(t, syn::sub_p(over));
    };
    switch (xs(s) % 8) {
      case 0: {  // non-dependent pair
        auto x = pick(s);
        auto y = pick(s);
        push(syn::tm_pair(x.first, y.first, weaken_to(y.second, x.second)));
        break;
      }
      case 1: {
        auto t = pick(s);
        push(xs(s) % 2 ? syn::tm_proj1(t.first) : syn::tm_proj2(t.first));
        break;
      }
      case 2: {  // constant function
        syn::TyPtr dom = xs(s) % 2 ? tyA : tyB;
        auto t = pick(s);
        push(syn::tm_lam(syn::tm_subst(t.first, syn::sub_p(dom))));
        break;
      }
      case 3: {  // identity-shaped function
        syn::TyPtr dom = xs(s) % 2 ? tyA : tyB;
        push(syn::tm_lam(syn::tm_q(dom)));
        break;
      }
      case 4: {  // application
        auto f = pick(s);
        auto x = pick(s);
        push(syn::tm_ap(f.first, x.first));
        break;
      }
      case 5: {
        auto t = pick(s);
        push(syn::tm_refl(t.second, t.first));
        break;
      }
      case 6: {  // substitution along the identity
        auto t = pick(s);
        push(syn::tm_subst(t.first, syn::sub_id(syn::ctx_empty())));
        break;
      }
      case 7: {  // instantiate a one-variable body at a closed point
        auto x = pick(s);
        auto t = pick(s);
        syn::TmPtr body = xs(s) % 2
                              ? syn::tm_q(x.second)
                              : syn::tm_subst(t.first, syn::sub_p(x.second));
        push(syn::tm_subst(body, syn::sub_pair(syn::sub_id(syn::ctx_empty()),
                                               x.first, x.second)));
        break;
      }
    }
  }
};

void criterion_rewrite_soundness() {
  FuzzWorld w;
  std::uint64_t s = 0xC0FFEE;
  for (int round = 0; round < 400; ++round) w.grow(s);

  int steps = 0, bad_steps = 0;
  std::string first;
  std::set<std::string> seen;
  std::deque<syn::TmPtr> queue;
  for (const auto& [t, ty] : w.pool)
    if (seen.insert(syn::print(t)).second) queue.push_back(t);
  while (steps < 500 && !queue.empty()) {
    syn::TmPtr t = queue.front();
    queue.pop_front();
    hof::HTm before = w.interp.tm(t);
    for (const auto& [rule, u] : syn::all_steps(t)) {
      if (steps >= 500) break;
      ++steps;
      hof::HTm after = w.interp.tm(u);
      if (before.section != after.section && ++bad_steps == 1)
        first = rule + " changed the meaning of " + syn::print(t);
      if (seen.insert(syn::print(u)).second) queue.push_back(u);
    }
  }

  // distinct meanings must never be judged equal
  int refuted = 0, lied = 0;
  const std::size_t pair_pool = std::min<std::size_t>(w.pool.size(), 120);
  for (std::size_t i = 0; i < pair_pool; ++i) {
    for (std::size_t j = i + 1; j < pair_pool; ++j) {
      const auto& [ti, tyi] = w.pool[i];
      const auto& [tj, tyj] = w.pool[j];
      if (syn::syn_eq(tyi, tyj) != syn::Eq::Equal) continue;
      hof::HTm mi = w.interp.tm(ti);
      hof::HTm mj = w.interp.tm(tj);
      if (mi.section == mj.section) continue;
      ++refuted;
      if (syn::syn_eq(ti, tj) == syn::Eq::Equal && ++lied == 1 &&
          first.empty())
        first = "judged equal despite distinct values: " + syn::print(ti) +
                " vs " + syn::print(tj);
    }
  }

  bool pass = steps >= 500 && bad_steps == 0 && refuted > 0 && lied == 0;
  std::ostringstream os;
  os << steps << " rewrite steps meaning-checked, " << bad_steps
     << " meaning changes; " << refuted
     << " model-distinct pairs, " << lied << " wrongly judged equal";
  if (!first.empty()) os << "; first: " << first;
  record(9, "rewrite soundness", pass, os.str());
}

// ---------------------------------------------------------------- criterion 10

// pairs stored with their components exchanged whenever that still sorts
struct SwappedPairInstance final : hof::HInstance {
  cwf::Tm pair_tm(const cwf::Ty& a, const cwf::Ty& b, const cwf::Tm& x,
                  const cwf::Tm& y) const override {
    try {
      return hof::HInstance::pair_tm(a, b, y, x);
    } catch (const Error&) {
      return hof::HInstance::pair_tm(a, b, x, y);
    }
  }
};

// identity on everything, but the comprehension comparison twists fibers
// over contexts with at least two points
struct TwistedComparison {
  FinMor operator()(const cwf::Obj& ctx, const cwf::Ty& a) const {
    const auto& fam = hof::HInstance::T(a);
    FinMor disp = hof::display_of(*fam);
    std::map<Atom, Atom> table;
    for (const auto& at : disp.dom.elements) table.emplace(at, at);
    if (hof::HInstance::O(ctx).size() >= 2) {
      std::map<Atom, std::vector<Atom>> fibers;
      for (const auto& at : disp.dom.elements) fibers[disp(at)].push_back(at);
      for (const auto& [c, f] : fibers)
        if (f.size() >= 2) {
          table[f[0]] = f[1];
          table[f[1]] = f[0];
        }
    }
    return FinMor(disp.dom, disp.dom, table);
  }
};

// identity types whose two endpoints are silently identified
struct CollapsedIdInstance final : hof::HInstance {
  cwf::Ty id_ty(const cwf::Ty& a, const cwf::Tm& l,
                const cwf::Tm& r) const override {
    return hof::HInstance::id_ty(a, l, l);
  }
};

// substitution that rebuilds the result from its display alone, forgetting
// the structure that makes reindexing strict
struct ForgetfulSubstInstance final : hof::HInstance {
  cwf::Ty subst_ty(const cwf::Ty& t, const cwf::Sub& s) const override {
    auto honest = hof::HInstance::subst_ty(t, s);
    return cwf::Ty{
        hof::hat_display(hof::display_of(*hof::HInstance::T(honest)))};
  }
};

void criterion_mutations() {
  int detected = 0;
  std::vector<std::string> notes;

  {  // swapped pair components
    SwappedPairInstance sab;
    hof::HInstance honest;
    hof::HSampler sampler(2, 1, 40);
    bool found = false;
    std::string note = "not detected";
    for (const auto& gamma : sampler.objects(4)) {
      if (found) break;
      for (const auto& a : sampler.types_over(gamma, 3)) {
        if (found) break;
        auto terms = sampler.terms_of(a, 4);
        for (std::size_t i = 0; i < terms.size() && !found; ++i)
          for (std::size_t j = 0; j < terms.size() && !found; ++j) {
            try {
              if (honest.eq_tm(terms[i], terms[j])) continue;
              cwf::Ty b = honest.subst_ty(a, honest.p(a));
              cwf::Tm pr = sab.pair_tm(a, b, terms[i], terms[j]);
              cwf::Tm got = sab.proj1(a, b, pr);
              cwf::Tm sane = honest.proj1(
                  a, b, honest.pair_tm(a, b, terms[i], terms[j]));
              if (!honest.eq_tm(sane, terms[i])) continue;
              if (!sab.eq_tm(got, terms[i])) {
                found = true;
                note = "first projection of a pair returned " +
                       sab.show_tm(got) + " instead of " +
                       sab.show_tm(terms[i]);
              }
            } catch (const Error&) {
              continue;
            }
          }
      }
    }
    if (found) ++detected;
    notes.push_back("swapped pair components: " + note);
  }

  {  // broken substitution comparison on an otherwise identity-shaped functor
    hof::HInstance inst;
    morph::MorphismData d;
    d.src = &inst;
    d.dst = &inst;
    d.name = "twisted";
    d.on_obj = [](const cwf::Obj& o) { return o; };
    d.on_sub = [](const cwf::Sub& s) { return s; };
    d.on_ty = [](const cwf::Obj&, const cwf::Ty& a) { return a; };
    TwistedComparison twist;
    d.comparison = [twist](const cwf::Obj& ctx, const cwf::Ty& a) {
      return cwf::Sub{twist(ctx, a)};
    };
    morph::PseudoCwfMorphism bad(std::move(d));
    hof::HSampler sampler(3, 1, 33);
    auto rep = morph::check_morphism(bad, sampler, {12, 33});
    std::string note = "not detected";
    bool found = false;
    for (const auto& r : rep.laws)
      if (r.failures > 0 && r.law.rfind("theta", 0) == 0) {
        found = true;
        note = r.law + " failed" + (r.note.empty() ? "" : (": " + r.note));
        break;
      }
    hof::HSampler sane_sampler(3, 1, 33);
    auto sane = morph::check_morphism(morph::identity_morphism(inst),
                                      sane_sampler, {12, 33});
    if (found && sane.ok()) ++detected;
    notes.push_back("broken substitution comparison: " + note);
  }

  {  // collapsed identity type makes the wrong preimage fiber
    CollapsedIdInstance sab;
    hof::HInstance honest;
    FinObj D({"d0"});
    FinObj G({"g0", "g1"});
    FinMor delta(D, G, {{"d0", "g0"}});
    std::string note = "not detected";
    bool found = false;
    try {
      FinMor disp =
          hof::display_of(*hof::HInstance::T(cwf::inv_type(sab, cwf::Sub{delta})));
      FinMor sane = hof::display_of(
          *hof::HInstance::T(cwf::inv_type(honest, cwf::Sub{delta})));
      if (fiber_size(sane, "g1") == 0 && fiber_size(disp, "g1") != 0) {
        found = true;
        note = "preimage type over g1 has " +
               std::to_string(fiber_size(disp, "g1")) +
               " points where the map has none";
      }
    } catch (const Error& e) {
      found = true;
      note = std::string("construction rejected: ") + e.what();
    }
    if (found) ++detected;
    notes.push_back("wrong preimage fiber: " + note);
  }

  {  // forgetful substitution loses representation equality
    ForgetfulSubstInstance sab;
    hof::HInstance honest;
    hof::HSampler sampler(2, 2, 7);
    std::string note = "not detected";
    bool found = false;
    for (const auto& gamma : sampler.objects(4)) {
      if (found) break;
      for (const auto& a : sampler.types_over(gamma, 6)) {
        cwf::Ty under_id = sab.subst_ty(a, sab.id(gamma));
        bool honest_ok =
            honest.eq_ty(honest.subst_ty(a, honest.id(gamma)), a);
        if (honest_ok && !sab.eq_ty(under_id, a)) {
          found = true;
          note = "substitution along the identity returned " +
                 hof::HInstance::T(under_id)->key() + " for " +
                 hof::HInstance::T(a)->key();
          break;
        }
      }
    }
    if (found) ++detected;
    notes.push_back("non-strict substitution: " + note);
  }

  {  // dropping the function eta rule loses a provable equality
    auto ctx = syn::ctx_named("G");
    auto tyA = syn::ty_base("A", ctx);
    auto tyB = syn::ty_base("B", ctx);
    auto piAB = syn::ty_pi(tyA, syn::ty_subst(tyB, syn::sub_p(tyA)));
    auto f = syn::tm_base("f", piAB);
    auto expanded = syn::tm_lam(
        syn::tm_ap(syn::tm_subst(f, syn::sub_p(tyA)), syn::tm_q(tyA)));
    bool equal_before = syn::syn_eq(expanded, f) == syn::Eq::Equal;
    bool equal_after;
    {
      syn::RuleMask mask("pi-eta");
      equal_after = syn::syn_eq(expanded, f) == syn::Eq::Equal;
    }
    bool found = equal_before && !equal_after;
    std::string note =
        found ? syn::print(expanded) + " stopped being equal to " +
                    syn::print(f)
              : "not detected";
    if (found) ++detected;
    notes.push_back("dropped eta rule: " + note);
  }

  for (const auto& n : notes) std::cout << "    " << n << "\n";
  record(10, "mutation sensitivity", detected == 5,
         std::to_string(detected) + "/5 mutations detected");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    void (*fn)();
  };
  const Entry entries[] = {
      {1, "law suite", criterion_laws},
      {2, "split substitution", criterion_split},
      {3, "chosen pullback squares", criterion_squares},
      {4, "dependent product counts", criterion_pi_counts},
      {5, "inverse image", criterion_inverse_image},
      {6, "mediator uniqueness", criterion_theta_unique},
      {7, "transformation equations", criterion_transformation_equations},
      {8, "round trip", criterion_round_trip},
      {9, "rewrite soundness", criterion_rewrite_soundness},
      {10, "mutation sensitivity", criterion_mutations},
  };
  for (const auto& e : entries) {
    try {
      e.fn();
    } catch (const std::exception& ex) {
      record(e.id, e.label, false, std::string("exception: ") + ex.what());
    }
  }
  bool all = std::all_of(g_lines.begin(), g_lines.end(),
                         [](const Line& l) { return l.pass; });
  std::cout << (all ? "acceptance: all criteria passed"
                    : "acceptance: some criteria FAILED")
            << "\n";
  return all ? 0 : 1;
}
