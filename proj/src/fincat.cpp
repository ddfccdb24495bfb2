#include "cwfkit/fincat.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace cwfkit::fincat {

FinObj::FinObj(std::vector<Atom> atoms) : elements(std::move(atoms)) {
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 1; i < elements.size(); ++i)
    if (elements[i - 1] == elements[i])
      throw Error("FinObj: duplicate atom " + elements[i]);
}

bool FinObj::contains(const Atom& a) const {
  return std::binary_search(elements.begin(), elements.end(), a);
}

FinMor::FinMor(FinObj d, FinObj c, std::map<Atom, Atom> t)
    : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
  if (table.size() != dom.size())
    throw Error("FinMor: table is not total on the domain");
  for (const auto& [a, b] : table) {
    if (!dom.contains(a)) throw Error("FinMor: spurious table key " + a);
    if (!cod.contains(b)) throw Error("FinMor: value outside codomain: " + b);
  }
}

const Atom& FinMor::operator()(const Atom& a) const {
  auto it = table.find(a);
  if (it == table.end()) throw Error("FinMor: atom outside domain: " + a);
  return it->second;
}

bool FinMor::operator<(const FinMor& o) const {
  if (dom != o.dom) return dom < o.dom;
  if (cod != o.cod) return cod < o.cod;
  return table < o.table;
}

Square::Square(FinMor t, FinMor b, FinMor l, FinMor r)
    : top(std::move(t)), bottom(std::move(b)), left(std::move(l)), right(std::move(r)) {
  if (top.dom != left.dom || top.cod != right.dom || left.cod != bottom.dom ||
      right.cod != bottom.cod)
    throw Error("Square: boundary objects do not line up");
  if (compose(right, top) != compose(bottom, left))
    throw Error("Square: does not commute");
}

FinMor identity(const FinObj& x) {
  std::map<Atom, Atom> t;
  for (const auto& a : x.elements) t[a] = a;
  return FinMor(x, x, std::move(t));
}

bool is_identity_table(const FinMor& f) {
  if (f.dom != f.cod) return false;
  for (const auto& [a, b] : f.table)
    if (a != b) return false;
  return true;
}

FinMor compose(const FinMor& g, const FinMor& f) {
  if (f.cod != g.dom)
    throw CompositionMismatch("compose: cod(f) != dom(g)");
  std::map<Atom, Atom> t;
  for (const auto& [a, b] : f.table) t[a] = g(b);
  return FinMor(f.dom, g.cod, std::move(t));
}

FinObj terminal() { return FinObj({kStar}); }

FinMor terminal_map(const FinObj& x) {
  std::map<Atom, Atom> t;
  for (const auto& a : x.elements) t[a] = kStar;
  return FinMor(x, terminal(), std::move(t));
}

Atom pair_atom(const Atom& left, const Atom& right) {
  return "(" + left + "," + right + ")";
}

Atom section_atom(const Atom& base, const std::map<Atom, Atom>& bindings) {
  std::string s = "(" + base + ",[";
  bool first = true;
  for (const auto& [b, a] : bindings) {
    if (!first) s += ",";
    first = false;
    s += b + "↦" + a;
  }
  return s + "])";
}

PullbackResult pullback_along(const FinMor& f, const FinMor& delta) {
  if (f.cod != delta.cod)
    throw CospanMismatch("pullback_along: maps do not share a codomain");
  if (is_identity_table(delta))
    return {f, identity(f.dom)};
  std::vector<Atom> apex;
  std::map<Atom, Atom> proj_t, top_t;
  for (const auto& d : delta.dom.elements)
    for (const auto& x : f.dom.elements)
      if (delta(d) == f(x)) {
        Atom z = pair_atom(d, x);
        apex.push_back(z);
        proj_t[z] = d;
        top_t[z] = x;
      }
  FinObj p(std::move(apex));
  return {FinMor(p, delta.dom, std::move(proj_t)), FinMor(p, f.dom, std::move(top_t))};
}

namespace {

// index of a jointly monic pair of legs: (u(z), v(z)) -> z
std::map<std::pair<Atom, Atom>, Atom> leg_index(const FinMor& u, const FinMor& v) {
  std::map<std::pair<Atom, Atom>, Atom> ix;
  for (const auto& z : u.dom.elements) ix[{u(z), v(z)}] = z;
  return ix;
}

}  // namespace

bool is_pullback(const Square& sq) {
  PullbackResult pb = pullback_along(sq.right, sq.bottom);
  auto ix = leg_index(pb.proj, pb.top);
  if (ix.size() != pb.apex().size()) return false;  // legs not jointly monic
  std::map<Atom, int> hits;
  for (const auto& z : sq.apex().elements) {
    auto it = ix.find({sq.left(z), sq.top(z)});
    if (it == ix.end()) return false;
    if (++hits[it->second] > 1) return false;  // comparison not injective
  }
  return hits.size() == pb.apex().size();  // and surjective
}

FinMor mediate_pullback(const Square& sq, const Cone& cone) {
  if (cone.to_left.dom != cone.apex || cone.to_top.dom != cone.apex ||
      cone.to_left.cod != sq.bottom.dom || cone.to_top.cod != sq.right.dom)
    throw ConeDoesNotCommute("mediate_pullback: cone legs have wrong endpoints");
  if (compose(sq.bottom, cone.to_left) != compose(sq.right, cone.to_top))
    throw ConeDoesNotCommute("mediate_pullback: cone does not commute");
  if (!is_pullback(sq))
    throw NotAPullback("mediate_pullback: square is not a pullback");
  auto ix = leg_index(sq.left, sq.top);
  std::map<Atom, Atom> t;
  for (const auto& z : cone.apex.elements)
    t[z] = ix.at({cone.to_left(z), cone.to_top(z)});
  return FinMor(cone.apex, sq.apex(), std::move(t));
}

EqualizerResult equalizer(const FinMor& f, const FinMor& g) {
  if (f.dom != g.dom || f.cod != g.cod)
    throw ParallelPairMismatch("equalizer: maps are not a parallel pair");
  std::vector<Atom> sub;
  for (const auto& x : f.dom.elements)
    if (f(x) == g(x)) sub.push_back(x);
  FinObj e(std::move(sub));
  std::map<Atom, Atom> t;
  for (const auto& x : e.elements) t[x] = x;
  return {e, FinMor(e, f.dom, std::move(t))};
}

FinMor factor_through_inclusion(const FinMor& incl, const FinMor& h) {
  if (h.cod != incl.cod)
    throw Error("factor_through_inclusion: codomain mismatch");
  std::map<Atom, Atom> t;
  for (const auto& [a, b] : h.table) {
    if (!incl.dom.contains(b))
      throw Error("factor_through_inclusion: value escapes the subset: " + b);
    t[a] = b;
  }
  return FinMor(h.dom, incl.dom, std::move(t));
}

namespace {

// all sections of g above one fiber: maps s with g(s(b)) == b for b in fiber
void sections_above(const std::vector<Atom>& fiber,
                    const std::map<Atom, std::vector<Atom>>& g_fibers,
                    std::size_t i, std::map<Atom, Atom>& acc,
                    std::vector<std::map<Atom, Atom>>& out) {
  if (i == fiber.size()) {
    out.push_back(acc);
    return;
  }
  auto it = g_fibers.find(fiber[i]);
  if (it == g_fibers.end() || it->second.empty()) return;
  for (const auto& a : it->second) {
    acc[fiber[i]] = a;
    sections_above(fiber, g_fibers, i + 1, acc, out);
  }
  acc.erase(fiber[i]);
}

std::map<Atom, std::vector<Atom>> fibers_of(const FinMor& f) {
  std::map<Atom, std::vector<Atom>> fs;
  for (const auto& c : f.cod.elements) fs[c];
  for (const auto& [a, b] : f.table) fs[b].push_back(a);
  return fs;
}

}  // namespace

DepProductResult dependent_product_full(const FinMor& f, const FinMor& g) {
  if (g.cod != f.dom)
    throw ChainMismatch("dependent_product: cod(g) != dom(f)");
  auto f_fibers = fibers_of(f);
  auto g_fibers = fibers_of(g);
  std::vector<Atom> total;
  std::map<Atom, Atom> pi_t;
  DepProductResult res;
  for (const auto& c : f.cod.elements) {
    std::vector<std::map<Atom, Atom>> ss;
    std::map<Atom, Atom> acc;
    sections_above(f_fibers[c], g_fibers, 0, acc, ss);
    for (auto& s : ss) {
      Atom z = section_atom(c, s);
      total.push_back(z);
      pi_t[z] = c;
      res.decode[z] = {c, std::move(s)};
    }
  }
  res.pi = FinMor(FinObj(std::move(total)), f.cod, std::move(pi_t));
  return res;
}

FinMor dependent_product(const FinMor& f, const FinMor& g) {
  return dependent_product_full(f, g).pi;
}

Atom DepProductResult::lookup(const Atom& base, const std::map<Atom, Atom>& bindings) const {
  Atom z = section_atom(base, bindings);
  if (decode.find(z) == decode.end())
    throw Error("dependent product: no such section over " + base);
  return z;
}

SliceExpResult slice_exponential(const FinMor& f, const FinMor& g) {
  if (f.cod != g.cod)
    throw CospanMismatch("slice_exponential: objects live over different bases");
  auto f_fibers = fibers_of(f);
  auto g_fibers = fibers_of(g);
  std::vector<Atom> total;
  std::map<Atom, Atom> pi_t;
  SliceExpResult res;
  for (const auto& c : f.cod.elements) {
    const auto& src = f_fibers[c];
    const auto& dst = g_fibers[c];
    std::vector<std::map<Atom, Atom>> maps;
    if (src.empty()) {
      maps.push_back({});
    } else if (!dst.empty()) {
      std::vector<std::size_t> pick(src.size(), 0);
      for (;;) {
        std::map<Atom, Atom> m;
        for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = dst[pick[i]];
        maps.push_back(std::move(m));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == dst.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    for (auto& m : maps) {
      Atom z = section_atom(c, m);
      total.push_back(z);
      pi_t[z] = c;
      res.decode[z] = {c, std::move(m)};
    }
  }
  res.pi = FinMor(FinObj(std::move(total)), f.cod, std::move(pi_t));
  return res;
}

Atom SliceExpResult::lookup(const Atom& base, const std::map<Atom, Atom>& bindings) const {
  Atom z = section_atom(base, bindings);
  if (decode.find(z) == decode.end())
    throw Error("slice exponential: no such map over " + base);
  return z;
}

PiViaExpResult pi_via_exponentials(const FinMor& f, const FinMor& g) {
  if (g.cod != f.dom)
    throw ChainMismatch("pi_via_exponentials: cod(g) != dom(f)");
  FinMor fg = compose(f, g);  // A -> C
  SliceExpResult pow = slice_exponential(f, fg);  // fibers: f^-1(c) -> (fg)^-1(c)
  SliceExpResult selfpow = slice_exponential(f, f);
  // postcomposition with g, over the base
  std::map<Atom, Atom> post_t;
  for (const auto& [z, cb] : pow.decode) {
    std::map<Atom, Atom> m;
    for (const auto& [b, a] : cb.second) m[b] = g(a);
    post_t[z] = selfpow.lookup(cb.first, m);
  }
  FinMor post(pow.pi.dom, selfpow.pi.dom, std::move(post_t));
  // the name of the identity
  std::map<Atom, Atom> name_t;
  for (const auto& c : f.cod.elements) {
    std::map<Atom, Atom> m;
    auto fibs = fibers_of(f);
    for (const auto& b : fibs[c]) m[b] = b;
    name_t[c] = selfpow.lookup(c, m);
  }
  FinMor name_id(f.cod, selfpow.pi.dom, std::move(name_t));
  PullbackResult pb = pullback_along(post, name_id);
  DepProductResult dep = dependent_product_full(f, g);
  // comparison: a pullback point is (c, map-whose-postcomposite-is-identity),
  // i.e. exactly a section of g above the fiber
  std::map<Atom, Atom> iso_t;
  for (const auto& z : pb.apex().elements) {
    const auto& cb = pow.decode.at(pb.top(z));
    iso_t[z] = dep.lookup(pb.proj(z), cb.second);
  }
  return {pb.proj, FinMor(pb.apex(), dep.pi.dom, std::move(iso_t))};
}

std::optional<FinMor> is_iso(const FinMor& f) {
  if (f.dom.size() != f.cod.size()) return std::nullopt;
  std::map<Atom, Atom> inv;
  for (const auto& [a, b] : f.table) {
    if (inv.count(b)) return std::nullopt;
    inv[b] = a;
  }
  if (inv.size() != f.cod.size()) return std::nullopt;
  return FinMor(f.cod, f.dom, std::move(inv));
}

std::optional<FinMor> iso_over_base(const FinMor& p1, const FinMor& p2) {
  if (p1.cod != p2.cod) return std::nullopt;
  auto f1 = fibers_of(p1);
  auto f2 = fibers_of(p2);
  std::map<Atom, Atom> t;
  for (const auto& c : p1.cod.elements) {
    if (f1[c].size() != f2[c].size()) return std::nullopt;
    for (std::size_t i = 0; i < f1[c].size(); ++i) t[f1[c][i]] = f2[c][i];
  }
  return FinMor(p1.dom, p2.dom, std::move(t));
}

std::vector<FinMor> enumerate_sections(const FinMor& display) {
  auto fibers = fibers_of(display);
  std::vector<FinMor> out;
  const auto& base = display.cod.elements;
  for (const auto& c : base)
    if (fibers[c].empty()) return out;
  std::vector<std::size_t> pick(base.size(), 0);
  if (base.empty()) {
    out.push_back(FinMor(display.cod, display.dom, {}));
    return out;
  }
  for (;;) {
    std::map<Atom, Atom> t;
    for (std::size_t i = 0; i < base.size(); ++i) t[base[i]] = fibers[base[i]][pick[i]];
    out.push_back(FinMor(display.cod, display.dom, std::move(t)));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == fibers[base[i]].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

std::vector<FinMor> enumerate_maps(const FinObj& x, const FinObj& y) {
  std::vector<FinMor> out;
  if (x.elements.empty()) {
    out.push_back(FinMor(x, y, {}));
    return out;
  }
  if (y.elements.empty()) return out;
  std::vector<std::size_t> pick(x.size(), 0);
  for (;;) {
    std::map<Atom, Atom> t;
    for (std::size_t i = 0; i < x.size(); ++i) t[x.elements[i]] = y.elements[pick[i]];
    out.push_back(FinMor(x, y, std::move(t)));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == y.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

std::string show(const FinObj& x) {
  std::string s = "{";
  for (std::size_t i = 0; i < x.elements.size(); ++i) {
    if (i) s += ",";
    s += x.elements[i];
  }
  return s + "}";
}

std::string show(const FinMor& f) {
  std::string s = show(f.dom) + "->" + show(f.cod) + "[";
  bool first = true;
  for (const auto& [a, b] : f.table) {
    if (!first) s += ",";
    first = false;
    s += a + "↦" + b;
  }
  return s + "]";
}

std::string to_json(const FinObj& x) {
  nlohmann::json j;
  j["elements"] = x.elements;
  return j.dump();
}

std::string to_json(const FinMor& f) {
  nlohmann::json j;
  j["dom"] = f.dom.elements;
  j["cod"] = f.cod.elements;
  j["table"] = f.table;
  return j.dump();
}

FinObj obj_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return FinObj(j.at("elements").get<std::vector<Atom>>());
}

FinMor mor_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return FinMor(FinObj(j.at("dom").get<std::vector<Atom>>()),
                FinObj(j.at("cod").get<std::vector<Atom>>()),
                j.at("table").get<std::map<Atom, Atom>>());
}

}  // namespace cwfkit::fincat
