#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "cwfkit/fincat.hpp"
#include "oracles.hpp"

using namespace cwfkit;
using namespace cwfkit::fincat;

namespace {

FinMor mk(const FinObj& d, const FinObj& c, std::map<Atom, Atom> t) {
  return FinMor(d, c, std::move(t));
}

}  // namespace

TEST_CASE("compose: identities and pointwise tables") {
  FinObj xy({"x", "y"});
  FinObj a({"a"});
  FinMor f = mk(a, xy, {{"a", "x"}});
  CHECK(compose(identity(xy), f) == f);
  CHECK(compose(f, identity(a)) == f);

  FinObj ab({"a", "b"});
  FinObj x({"x"});
  FinObj y({"y"});
  FinMor g = mk(ab, x, {{"a", "x"}, {"b", "x"}});
  FinMor h = mk(x, y, {{"x", "y"}});
  FinMor hg = compose(h, g);
  CHECK(hg.table == std::map<Atom, Atom>{{"a", "y"}, {"b", "y"}});

  CHECK_THROWS_AS(compose(f, h), CompositionMismatch);
}

TEST_CASE("compose: associativity on sampled triples") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    FinObj w = oracle::random_obj(rng, "w", 5);
    FinObj x = oracle::random_obj(rng, "x", 5);
    FinObj y = oracle::random_obj(rng, "y", 5);
    FinObj z = oracle::random_obj(rng, "z", 5);
    if ((x.size() == 0 && w.size() > 0) || (y.size() == 0 && x.size() > 0) ||
        (z.size() == 0 && y.size() > 0))
      continue;
    FinMor f = oracle::random_map(rng, w, x);
    FinMor g = oracle::random_map(rng, x, y);
    FinMor h = oracle::random_map(rng, y, z);
    CHECK(compose(compose(h, g), f) == compose(h, compose(g, f)));
  }
}

TEST_CASE("terminal object and maps") {
  CHECK(terminal().elements == std::vector<Atom>{kStar});
  CHECK(terminal_map(FinObj({})).table.empty());
  FinMor t = terminal_map(FinObj({"a", "b"}));
  CHECK(t.table == std::map<Atom, Atom>{{"a", kStar}, {"b", kStar}});
  // uniqueness: the only map into a singleton is the terminal map
  for (const auto& g : oracle::all_maps(FinObj({"a", "b"}), terminal()))
    CHECK(g == t);
}

TEST_CASE("pullback_along: identity choice is strict") {
  FinObj base({"u", "v"});
  FinObj e({"e0", "e1", "e2"});
  FinMor f = mk(e, base, {{"e0", "u"}, {"e1", "u"}, {"e2", "v"}});
  PullbackResult pb = pullback_along(f, identity(base));
  CHECK(pb.proj == f);
  CHECK(pb.top == identity(e));
}

TEST_CASE("pullback_along: pair-atom apex") {
  FinObj star = terminal();
  FinObj zo({"0", "1"});
  FinObj two({"2"});
  FinMor f = terminal_map(zo);
  FinMor d = terminal_map(two);
  PullbackResult pb = pullback_along(f, d);
  // oracle: enumerate matching pairs directly
  auto pairs = oracle::pullback_pairs(f, d);
  CHECK(pairs.size() == 2);
  CHECK(pb.apex().elements == std::vector<Atom>{"(2,0)", "(2,1)"});
  CHECK(pb.proj("(2,0)") == "2");
  CHECK(pb.top("(2,1)") == "1");

  // empty fiber over delta's image
  FinObj uv({"u", "v"});
  FinMor f2 = mk(zo, uv, {{"0", "u"}, {"1", "u"}});
  FinMor d2 = mk(two, uv, {{"2", "v"}});
  CHECK(pullback_along(f2, d2).apex().size() == 0);

  CHECK_THROWS_AS(pullback_along(f, mk(two, uv, {{"2", "u"}})), CospanMismatch);
}

TEST_CASE("is_pullback: positives and a doubled-apex negative") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    FinObj base = oracle::random_obj(rng, "c", 3);
    FinObj e = oracle::random_obj(rng, "e", 4);
    FinObj d = oracle::random_obj(rng, "d", 3);
    if (base.size() == 0) continue;
    FinMor f = oracle::random_map(rng, e, base);
    FinMor del = oracle::random_map(rng, d, base);
    PullbackResult pb = pullback_along(f, del);
    CHECK(is_pullback(Square(pb.top, del, pb.proj, f)));
  }

  FinObj apex({"p", "q"});  // two copies of the single genuine pair
  FinObj one({"a"});
  FinMor l = mk(apex, one, {{"p", "a"}, {"q", "a"}});
  FinMor t = mk(apex, one, {{"p", "a"}, {"q", "a"}});
  Square doubled(t, identity(one), l, identity(one));
  CHECK_FALSE(is_pullback(doubled));

  Square idsq(identity(one), identity(one), identity(one), identity(one));
  CHECK(is_pullback(idsq));
}

TEST_CASE("mediate_pullback: triangles, uniqueness, errors") {
  FinObj base({"u", "v"});
  FinObj e({"e0", "e1", "e2"});
  FinObj d({"d0", "d1"});
  FinMor f = mk(e, base, {{"e0", "u"}, {"e1", "u"}, {"e2", "v"}});
  FinMor del = mk(d, base, {{"d0", "u"}, {"d1", "v"}});
  PullbackResult pb = pullback_along(f, del);
  Square sq(pb.top, del, pb.proj, f);

  // cone = the square's own legs mediates to the identity
  Cone self{pb.apex(), pb.proj, pb.top};
  CHECK(mediate_pullback(sq, self) == identity(pb.apex()));

  // a section cone: toLeft = id over d
  FinMor a = mk(d, e, {{"d0", "e1"}, {"d1", "e2"}});  // f.a = del
  Cone sec{d, identity(d), a};
  FinMor h = mediate_pullback(sq, sec);
  CHECK(compose(pb.proj, h) == identity(d));
  CHECK(compose(pb.top, h) == a);

  // uniqueness: exhaustive search over all maps apex -> pullback apex
  int witnesses = 0;
  for (const auto& cand : oracle::all_maps(d, pb.apex()))
    if (compose(pb.proj, cand) == sec.to_left && compose(pb.top, cand) == sec.to_top) {
      ++witnesses;
      CHECK(cand == h);
    }
  CHECK(witnesses == 1);

  // empty cone apex
  Cone empty{FinObj({}), mk(FinObj({}), d, {}), mk(FinObj({}), e, {})};
  CHECK(mediate_pullback(sq, empty).table.empty());

  FinMor bad = mk(d, e, {{"d0", "e0"}, {"d1", "e0"}});  // not over del
  CHECK_THROWS_AS(mediate_pullback(sq, Cone{d, identity(d), bad}), ConeDoesNotCommute);

  FinObj apex2({"p", "q"});
  FinObj one({"a"});
  FinMor l2 = mk(apex2, one, {{"p", "a"}, {"q", "a"}});
  Square notpb(l2, identity(one), l2, identity(one));
  CHECK_THROWS_AS(mediate_pullback(notpb, Cone{one, identity(one), identity(one)}),
                  NotAPullback);
}

TEST_CASE("equalizer: subsets and universal property") {
  FinObj ab({"a", "b"});
  FinObj xy({"x", "y"});
  FinMor f = mk(ab, xy, {{"a", "x"}, {"b", "x"}});
  FinMor g = mk(ab, xy, {{"a", "x"}, {"b", "y"}});
  EqualizerResult e = equalizer(f, g);
  CHECK(e.obj.elements == std::vector<Atom>{"a"});
  CHECK(e.incl("a") == "a");

  CHECK(equalizer(f, f).obj == ab);
  FinMor g2 = mk(ab, xy, {{"a", "y"}, {"b", "y"}});
  CHECK(equalizer(f, g2).obj.size() == 0);
  CHECK_THROWS_AS(equalizer(f, mk(xy, xy, {{"x", "x"}, {"y", "y"}})),
                  ParallelPairMismatch);

  // universal property: every equalizing h factors uniquely through incl
  FinObj probe({"t0", "t1"});
  for (const auto& h : oracle::all_maps(probe, ab)) {
    if (compose(f, h) != compose(g, h)) continue;
    FinMor k = factor_through_inclusion(e.incl, h);
    CHECK(compose(e.incl, k) == h);
    int count = 0;
    for (const auto& cand : oracle::all_maps(probe, e.obj))
      if (compose(e.incl, cand) == h) ++count;
    CHECK(count == 1);
  }
}

TEST_CASE("dependent_product: fibers are sections") {
  FinObj c({"c"});
  FinObj b({"b1", "b2"});
  FinObj a({"a1", "a2", "a3", "a4", "a5"});
  FinMor f = mk(b, c, {{"b1", "c"}, {"b2", "c"}});
  FinMor g = mk(a, b,
                {{"a1", "b1"}, {"a2", "b1"}, {"a3", "b2"}, {"a4", "b2"}, {"a5", "b2"}});
  FinMor pi = dependent_product(f, g);
  CHECK(pi.dom.size() == oracle::section_count(f, g, "c"));
  CHECK(pi.dom.size() == 6);
  // canonical encoding of one section
  CHECK(pi.dom.contains("(c,[b1↦a1,b2↦a3])"));

  // f = id: fibers of the product are the fibers of g
  FinMor pi_id = dependent_product(identity(b), g);
  CHECK(pi_id.dom.size() == g.dom.size());
  auto iso = iso_over_base(pi_id, g);
  CHECK(iso.has_value());

  // an empty g-fiber kills the section set
  FinObj a2({"a1"});
  FinMor g2 = mk(a2, b, {{"a1", "b1"}});
  CHECK(dependent_product(f, g2).dom.size() == 0);

  CHECK_THROWS_AS(dependent_product(g, f), ChainMismatch);
}

TEST_CASE("slice_exponential: full function spaces fiberwise") {
  FinObj c({"c1", "c2"});
  FinObj x({"x1", "x2"});
  FinObj y({"y1", "y2"});
  FinMor f = mk(x, c, {{"x1", "c1"}, {"x2", "c1"}});
  FinMor g = mk(y, c, {{"y1", "c1"}, {"y2", "c1"}});
  SliceExpResult exp = slice_exponential(f, g);
  // fiber over c1: 2^2 maps; fiber over c2: the empty function
  std::size_t over_c1 = 0, over_c2 = 0;
  for (const auto& z : exp.pi.dom.elements)
    (exp.pi(z) == "c1" ? over_c1 : over_c2)++;
  CHECK(over_c1 == 4);
  CHECK(over_c2 == 1);

  SliceExpResult selfexp = slice_exponential(f, f);
  CHECK(selfexp.pi.dom.contains("(c1,[x1↦x1,x2↦x2])"));

  CHECK_THROWS_AS(slice_exponential(f, mk(y, x, {{"y1", "x1"}, {"y2", "x1"}})),
                  CospanMismatch);
}

TEST_CASE("pi_via_exponentials agrees with dependent_product") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    FinObj c = oracle::random_obj(rng, "c", 3);
    FinObj b = oracle::random_obj(rng, "b", 3);
    FinObj a = oracle::random_obj(rng, "a", 4);
    if (c.size() == 0 && b.size() > 0) continue;
    if (b.size() == 0 && a.size() > 0) continue;
    FinMor f = oracle::random_map(rng, b, c);
    FinMor g = oracle::random_map(rng, a, b);
    FinMor dep = dependent_product(f, g);
    PiViaExpResult via = pi_via_exponentials(f, g);
    CHECK(via.iso.dom == via.pi.dom);
    CHECK(via.iso.cod == dep.dom);
    CHECK(is_iso(via.iso).has_value());
    CHECK(compose(dep, via.iso) == via.pi);  // iso lives over the base
  }
}

TEST_CASE("dependent_product adjunction counts on small bases") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    FinObj c = oracle::random_obj(rng, "c", 3);
    if (c.size() == 0) continue;
    FinObj b = oracle::random_obj(rng, "b", 3);
    FinObj a = oracle::random_obj(rng, "a", 3);
    FinObj xd = oracle::random_obj(rng, "t", 3);
    if (b.size() == 0 && a.size() > 0) continue;
    FinMor f = oracle::random_map(rng, b, c);
    FinMor g = oracle::random_map(rng, a, b);
    FinMor x = oracle::random_map(rng, xd, c);
    FinMor pi = dependent_product(f, g);
    PullbackResult fx = pullback_along(x, f);  // f*(x) over b
    std::size_t lhs = oracle::hom_over_base_count(x, pi);
    std::size_t rhs = oracle::hom_over_base_count(fx.proj, g);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("is_iso") {
  FinObj ab({"a", "b"});
  CHECK(is_iso(identity(ab)) == identity(ab));
  FinMor swap = mk(ab, ab, {{"a", "b"}, {"b", "a"}});
  CHECK(is_iso(swap) == swap);
  FinMor cons = mk(ab, ab, {{"a", "a"}, {"b", "a"}});
  CHECK_FALSE(is_iso(cons).has_value());
}

TEST_CASE("json round trips with sorted keys") {
  FinObj ab({"b", "a"});
  CHECK(to_json(ab) == "{\"elements\":[\"a\",\"b\"]}");
  CHECK(obj_from_json(to_json(ab)) == ab);
  FinMor t = terminal_map(ab);
  CHECK(mor_from_json(to_json(t)) == t);
  CHECK(to_json(t).find("⋆") != std::string::npos);
}

TEST_CASE("FinObj and FinMor validation") {
  CHECK_THROWS_AS(FinObj({"a", "a"}), Error);
  FinObj ab({"a", "b"});
  FinObj x({"x"});
  CHECK_THROWS_AS(FinMor(ab, x, {{"a", "x"}}), Error);            // not total
  CHECK_THROWS_AS(FinMor(ab, x, {{"a", "x"}, {"b", "y"}}), Error);  // escapes cod
}
