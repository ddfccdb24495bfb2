#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "cwfkit/hofmann.hpp"
#include "oracles.hpp"

using namespace cwfkit;
using namespace cwfkit::hof;
using fincat::Atom;
using fincat::FinMor;
using fincat::FinObj;

namespace {

FinObj uv() { return FinObj{"u", "v"}; }

FinMor display_uv() {
  // fibers: u -> {u.0, u.1}, v -> {v.0}
  FinObj total{"u.0", "u.1", "v.0"};
  return FinMor(total, uv(),
                {{"u.0", "u"}, {"u.1", "u"}, {"v.0", "v"}});
}

std::vector<FinMor> probes_into(const FinObj& base) {
  std::vector<FinMor> out = {fincat::identity(base)};
  for (const auto& probe :
       {FinObj{}, FinObj{"z0"}, FinObj{"z0", "z1"}}) {
    for (auto& d : fincat::enumerate_maps(probe, base)) out.push_back(d);
  }
  return out;
}

std::vector<FamPtr> sample_fams(const FinObj& base, int count, int depth,
                                std::uint64_t seed) {
  HSampler sampler(3, depth, seed);
  std::vector<FamPtr> out;
  for (auto& t : sampler.types_over(cwf::Obj{base}, count))
    out.push_back(HInstance::T(t));
  return out;
}

std::size_t fiber_size(const FinMor& display, const Atom& x) {
  std::size_t n = 0;
  for (const auto& [e, b] : display.table)
    if (b == x) ++n;
  return n;
}

}  // namespace

TEST_CASE("reindexing along an identity is strict") {
  auto d = display_uv();
  auto fam = hat_display(d);
  CHECK(display_of(*fam) == d);
  CHECK(ext_of(*fam) == d.dom);
  CHECK(subst_fam(fam, fincat::identity(uv())) == fam);

  auto idext = fincat::identity(ext_of(*fam));
  CHECK(fam->square(fincat::identity(uv()), fincat::identity(uv())) == idext);
}

TEST_CASE("family squares are pullbacks and compose functorially") {
  int checked = 0;
  for (auto& fam : sample_fams(uv(), 6, 2, 11)) {
    for (const auto& delta : probes_into(uv())) {
      auto idb = fincat::identity(uv());
      fincat::Square sq(fam->square(idb, delta), delta, fam->at(delta),
                        fam->at(idb));
      CHECK(fincat::is_pullback(sq));
      CHECK(fam->square(delta, fincat::identity(delta.dom)) ==
            fincat::identity(fam->at(delta).dom));
      for (const auto& alpha : fincat::enumerate_maps(FinObj{"y0"}, delta.dom)) {
        fincat::Square step(fam->square(delta, alpha), alpha,
                            fam->at(fincat::compose(delta, alpha)),
                            fam->at(delta));
        CHECK(fincat::is_pullback(step));
        for (const auto& beta : fincat::enumerate_maps(FinObj{}, alpha.dom)) {
          auto lhs = fam->square(delta, fincat::compose(alpha, beta));
          auto rhs = fincat::compose(
              fam->square(delta, alpha),
              fam->square(fincat::compose(delta, alpha), beta));
          CHECK(lhs == rhs);
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("substitution is split on the nose") {
  oracle::Rng rng(5);
  int checked = 0;
  for (auto& fam : sample_fams(uv(), 8, 2, 23)) {
    for (const auto& gamma : probes_into(uv())) {
      auto once = subst_fam(fam, gamma);
      for (const auto& delta :
           fincat::enumerate_maps(FinObj{"w0"}, gamma.dom)) {
        auto twice = subst_fam(once, delta);
        auto direct = subst_fam(fam, fincat::compose(gamma, delta));
        CHECK(twice->key() == direct->key());
        CHECK(fam_extensional_eq(*twice, *direct, 1));
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
  (void)rng;
}

TEST_CASE("sigma, pi, and identity fibers match brute-force counts") {
  auto a = hat_display(display_uv());
  FinObj ea = ext_of(*a);
  // fibers over the extension: 1, 2, 1
  FinObj eb{"u.0:a", "u.1:a", "u.1:b", "v.0:a"};
  FinMor db(eb, ea,
            {{"u.0:a", "u.0"}, {"u.1:a", "u.1"}, {"u.1:b", "u.1"},
             {"v.0:a", "v.0"}});
  auto b = hat_display(db);

  auto sig = sigma_fam(a, b);
  auto pi = pi_fam(a, b);

  for (const auto& delta : probes_into(uv())) {
    auto lift = a->square(fincat::identity(uv()), delta);
    auto da = a->at(delta);
    auto dbm = b->at(lift);
    auto ds = sig->at(delta);
    auto dp = pi->at(delta);
    for (const auto& y : delta.dom.elements) {
      std::size_t pairs = 0;
      for (const auto& [e, x] : da.table)
        if (x == y) pairs += fiber_size(dbm, e);
      CHECK(fiber_size(ds, y) == pairs);
      CHECK(fiber_size(dp, y) == oracle::section_count(da, dbm, y));
    }
  }

  auto sections = fincat::enumerate_sections(display_of(*a));
  REQUIRE(sections.size() == 2);
  auto idf = id_fam(a, sections[0], sections[1]);
  auto same = id_fam(a, sections[0], sections[0]);
  for (const auto& x : uv().elements) {
    std::size_t expect_diff = sections[0](x) == sections[1](x) ? 1 : 0;
    CHECK(fiber_size(display_of(*idf), x) == expect_diff);
    CHECK(fiber_size(display_of(*same), x) == 1);
  }
}

TEST_CASE("pairing and projections satisfy beta and eta") {
  auto a = hat_display(display_uv());
  FinObj ea = ext_of(*a);
  FinObj eb{"u.0:a", "u.1:a", "u.1:b", "v.0:a"};
  FinMor db(eb, ea,
            {{"u.0:a", "u.0"}, {"u.1:a", "u.1"}, {"u.1:b", "u.1"},
             {"v.0:a", "v.0"}});
  auto b = hat_display(db);
  auto sig = sigma_fam(a, b);

  int cases = 0;
  for (const auto& xs : fincat::enumerate_sections(display_of(*a))) {
    HTm x{a, xs};
    auto moved = subst_fam(b, xs);
    for (const auto& ys : fincat::enumerate_sections(display_of(*moved))) {
      HTm y{moved, ys};
      auto pr = h_pair_tm(a, b, x, y);
      CHECK(pr.fam->key() == sig->key());
      CHECK(h_proj1(a, b, pr).section == x.section);
      CHECK(h_proj2(a, b, pr).section == y.section);
      ++cases;
    }
  }
  CHECK(cases >= 2);

  for (const auto& cs : fincat::enumerate_sections(display_of(*sig))) {
    HTm c{sig, cs};
    auto rebuilt =
        h_pair_tm(a, b, h_proj1(a, b, c), h_proj2(a, b, c));
    CHECK(rebuilt.section == c.section);
  }
}

TEST_CASE("lambda and application satisfy beta and eta") {
  auto a = hat_display(display_uv());
  FinObj ea = ext_of(*a);
  FinObj eb{"u.0:a", "u.1:a", "u.1:b", "v.0:a"};
  FinMor db(eb, ea,
            {{"u.0:a", "u.0"}, {"u.1:a", "u.1"}, {"u.1:b", "u.1"},
             {"v.0:a", "v.0"}});
  auto b = hat_display(db);
  auto pi = pi_fam(a, b);

  int betas = 0;
  for (const auto& body_s : fincat::enumerate_sections(display_of(*b))) {
    HTm body{b, body_s};
    auto lam = h_lambda(a, b, body);
    CHECK(lam.fam->key() == pi->key());
    for (const auto& xs : fincat::enumerate_sections(display_of(*a))) {
      HTm x{a, xs};
      auto applied = h_ap(a, b, lam, x);
      auto expected = h_subst_tm(body, xs);
      CHECK(applied.section == expected.section);
      CHECK(applied.fam->key() == expected.fam->key());
      ++betas;
    }
  }
  CHECK(betas == 4);

  auto pa = display_of(*a);
  auto lift = a->square(fincat::identity(uv()), pa);
  auto a_up = subst_fam(a, pa);
  auto b_up = subst_fam(b, lift);
  for (const auto& fs : fincat::enumerate_sections(display_of(*pi))) {
    HTm f{pi, fs};
    auto f_up = h_subst_tm(f, pa);
    auto applied = h_ap(a_up, b_up, f_up, h_q(a));
    auto again = h_lambda(a, b, applied);
    CHECK(again.section == f.section);
    CHECK(again.fam->key() == pi->key());
  }
}

TEST_CASE("comprehension equations hold for the section calculus") {
  for (auto& fam : sample_fams(uv(), 5, 1, 37)) {
    auto base = fam->base();
    auto pa = display_of(*fam);
    auto qa = h_q(fam);
    CHECK(h_pair_sub(*fam, pa, qa.section) == fincat::identity(ext_of(*fam)));

    for (const auto& delta : probes_into(base)) {
      auto moved = subst_fam(fam, delta);
      for (const auto& a_s :
           fincat::enumerate_sections(fam->at(delta))) {
        auto pair = h_pair_sub(*fam, delta, a_s);
        CHECK(fincat::compose(pa, pair) == delta);
        CHECK(h_subst_tm(qa, pair).section == a_s);
        for (const auto& beta :
             fincat::enumerate_maps(FinObj{"m0"}, delta.dom)) {
          auto lhs = fincat::compose(pair, beta);
          auto rhs = h_pair_sub(*fam, fincat::compose(delta, beta),
                                section_subst(*moved, a_s, beta));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("democracy is strict on extensions") {
  HInstance inst;
  auto g = cwf::Obj{uv()};
  auto barred = inst.bar(g);
  CHECK(inst.eq_obj(inst.ext(barred), g));
  CHECK(HInstance::S(inst.p(barred)) == fincat::terminal_map(uv()));
  CHECK(HInstance::S(inst.dem(g)) == fincat::identity(uv()));
  CHECK(inst.eq_sub(inst.compose(inst.dem(g), inst.dem_inv(g)),
                    inst.id(g)));

  auto along = cwf::bar_mor(inst, inst.id(g));
  CHECK(inst.eq_tm(along, inst.q(barred)));
}

TEST_CASE("law suite passes on finite sets") {
  HInstance inst;
  HSampler sampler(3, 2, 101);
  cwf::LawOptions opts;
  opts.samples = 10;
  opts.seed = 101;
  auto report = cwf::law_suite(inst, sampler, opts);
  CHECK(report.laws.size() == 31);
  for (auto& law : report.laws) {
    INFO(law.law, ": ", law.note);
    CHECK(law.failures == 0);
    CHECK(!law.skipped);
    CHECK(law.cases > 0);
  }
  CHECK(report.ok());
}

TEST_CASE("slice equivalence validates on finite sets") {
  HInstance inst;
  HSampler sampler(3, 1, 59);
  auto report = cwf::slice_equivalence_check(inst, sampler, 6);
  INFO(report.to_json().dump());
  CHECK(report.failures == 0);
  CHECK(report.map_cases > 0);
  CHECK(report.type_cases > 0);
  CHECK(report.ok());
}

TEST_CASE("masked capabilities skip laws and refuse operations") {
  Caps caps;
  caps.pi = false;
  caps.democracy = false;
  HInstance inst(caps);
  CHECK(!inst.has_pi());
  CHECK(inst.has_sigma());
  auto fam = hat_display(display_uv());
  cwf::Ty a{fam};
  CHECK_THROWS_AS(inst.pi_ty(a, a), MissingCapability);
  CHECK_THROWS_AS(inst.bar(cwf::Obj{uv()}), MissingCapability);

  HSampler sampler(2, 1, 3);
  cwf::LawOptions opts;
  opts.samples = 4;
  auto report = cwf::law_suite(inst, sampler, opts);
  CHECK(report.ok());
  int skipped = 0;
  for (auto& law : report.laws)
    if (law.skipped) ++skipped;
  CHECK(skipped == 8);  // 5 pi laws + 3 democracy laws
}

TEST_CASE("base limit helpers agree with the chosen pullbacks") {
  HInstance inst;
  auto fam = hat_display(display_uv());
  auto idb = fincat::identity(uv());
  FinMor delta(FinObj{"z0"}, uv(), {{"z0", "u"}});
  cwf::SubSquare sq{cwf::Sub{fam->square(idb, delta)},
                    cwf::Sub{fam->at(delta)},
                    cwf::Sub{fam->at(idb)},
                    cwf::Sub{delta}};
  CHECK(inst.base_is_pullback(sq));

  auto med = inst.base_mediate(sq, cwf::Sub{fam->at(delta)},
                               cwf::Sub{fam->square(idb, delta)});
  REQUIRE(med.has_value());
  CHECK(HInstance::S(*med) == fincat::identity(fam->at(delta).dom));

  // collapsing the apex to a point breaks the universal property
  FinObj pt{"p"};
  FinMor crush(pt, uv(), {{"p", "u"}});
  cwf::SubSquare broken{cwf::Sub{fincat::compose(fam->square(idb, delta),
                                                 FinMor(pt, fam->at(delta).dom,
                                                        {{"p", fam->at(delta).dom.elements[0]}}))},
                        cwf::Sub{crush},
                        cwf::Sub{fam->at(idb)},
                        cwf::Sub{delta}};
  CHECK(!inst.base_is_pullback(broken));
}

TEST_CASE("family dumps carry the probed displays") {
  auto fam = hat_display(display_uv());
  auto probes = probes_into(uv());
  auto j = dump_family(*fam, probes);
  CHECK(j["kind"] == "hat");
  CHECK(j["probes"].size() == probes.size());
  CHECK(j["base"]["elements"].size() == 2);
  CHECK(j["probes"][0].contains("display"));
}

TEST_CASE("ill-formed constructions are rejected") {
  auto a = hat_display(display_uv());
  FinObj other{"x"};
  FinMor wrong(other, other, {{"x", "x"}});
  CHECK_THROWS_AS(subst_fam(a, wrong), BaseMismatch);
  CHECK_THROWS_AS(a->at(wrong), BaseMismatch);
  CHECK_THROWS_AS(sigma_fam(a, a), BaseMismatch);

  FinMor bogus(uv(), ext_of(*a), {{"u", "u.0"}, {"v", "u.0"}});
  CHECK_THROWS_AS(id_fam(a, bogus, bogus), NotASection);

  auto sections = fincat::enumerate_sections(display_of(*a));
  REQUIRE(!sections.empty());
  HTm x{a, sections[0]};
  CHECK_THROWS_AS(h_ap(a, subst_fam(a, display_of(*a)), x, x), FiberMismatch);

  CHECK_THROWS_AS(HInstance::O(cwf::Obj{std::string("nope")}),
                  InstanceMismatch);
}
