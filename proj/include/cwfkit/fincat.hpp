#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwfkit/errors.hpp"

// Finite sets and total functions, with enough limit structure to model
// contexts: chosen pullbacks, equalizers, dependent products, and the
// brute-force checkers for their universal properties.
namespace cwfkit::fincat {

using Atom = std::string;

inline const Atom kStar = "⋆";  // label of the chosen terminal object

struct FinObj {
  std::vector<Atom> elements;  // strictly sorted, duplicate-free

  FinObj() = default;
  explicit FinObj(std::vector<Atom> atoms);
  FinObj(std::initializer_list<Atom> atoms) : FinObj(std::vector<Atom>(atoms)) {}

  bool contains(const Atom& a) const;
  std::size_t size() const { return elements.size(); }
  bool operator==(const FinObj& o) const { return elements == o.elements; }
  bool operator!=(const FinObj& o) const { return !(*this == o); }
  bool operator<(const FinObj& o) const { return elements < o.elements; }
};

struct FinMor {
  FinObj dom;
  FinObj cod;
  std::map<Atom, Atom> table;  // total on dom, image within cod

  FinMor() = default;
  FinMor(FinObj d, FinObj c, std::map<Atom, Atom> t);

  const Atom& operator()(const Atom& a) const;
  bool operator==(const FinMor& o) const {
    return dom == o.dom && cod == o.cod && table == o.table;
  }
  bool operator!=(const FinMor& o) const { return !(*this == o); }
  bool operator<(const FinMor& o) const;
};

// commuting square, right.top == bottom.left; apex is dom(top) == dom(left)
struct Square {
  FinMor top;     // apex -> dom(right)
  FinMor bottom;  // dom(left's cod side) -> shared codomain
  FinMor left;    // apex -> dom(bottom)
  FinMor right;   // dom(right's side) -> shared codomain

  Square(FinMor t, FinMor b, FinMor l, FinMor r);
  const FinObj& apex() const { return top.dom; }
};

struct Cone {
  FinObj apex;
  FinMor to_left;  // apex -> dom(square.bottom)
  FinMor to_top;   // apex -> dom(square.right)
};

FinMor identity(const FinObj& x);
bool is_identity_table(const FinMor& f);

// g after f; f.cod must equal g.dom
FinMor compose(const FinMor& g, const FinMor& f);

FinObj terminal();
FinMor terminal_map(const FinObj& x);

// composite-atom encodings shared by the chosen limits
Atom pair_atom(const Atom& left, const Atom& right);
Atom section_atom(const Atom& base, const std::map<Atom, Atom>& bindings);

struct PullbackResult {
  FinMor proj;  // apex -> dom(delta)
  FinMor top;   // apex -> dom(f)
  const FinObj& apex() const { return proj.dom; }
};

// chosen pullback of f along delta (common codomain); when delta is an
// identity table the result is (f, id) verbatim, which keeps reindexing strict
PullbackResult pullback_along(const FinMor& f, const FinMor& delta);

bool is_pullback(const Square& sq);

// unique map from the cone apex through a pullback square
FinMor mediate_pullback(const Square& sq, const Cone& cone);

struct EqualizerResult {
  FinObj obj;   // subset of the shared domain, inherited order
  FinMor incl;  // obj -> dom(f)
};

EqualizerResult equalizer(const FinMor& f, const FinMor& g);

// factor h through a subset inclusion; h's image must lie in the subset
FinMor factor_through_inclusion(const FinMor& incl, const FinMor& h);

struct DepProductResult {
  FinMor pi;  // total space -> cod(f)
  // decoded structure of each composite atom: base point and section table
  std::map<Atom, std::pair<Atom, std::map<Atom, Atom>>> decode;

  Atom lookup(const Atom& base, const std::map<Atom, Atom>& bindings) const;
};

// right adjoint to pullback: fibers over c are the sections of g above f^-1(c)
FinMor dependent_product(const FinMor& f, const FinMor& g);
DepProductResult dependent_product_full(const FinMor& f, const FinMor& g);

struct SliceExpResult {
  FinMor pi;
  std::map<Atom, std::pair<Atom, std::map<Atom, Atom>>> decode;

  Atom lookup(const Atom& base, const std::map<Atom, Atom>& bindings) const;
};

// exponential in the slice over the shared codomain: fiber over c is the full
// function space f^-1(c) -> g^-1(c)
SliceExpResult slice_exponential(const FinMor& f, const FinMor& g);

struct PiViaExpResult {
  FinMor pi;
  FinMor iso;  // dom(pi) -> dom(dependent_product(f,g)), over the base
};

// independent construction of the dependent product through slice
// exponentials and the pullback against the name of the identity
PiViaExpResult pi_via_exponentials(const FinMor& f, const FinMor& g);

std::optional<FinMor> is_iso(const FinMor& f);

// canonical fiberwise order-matching bijection over a common base, when the
// fiber cardinalities agree everywhere
std::optional<FinMor> iso_over_base(const FinMor& p1, const FinMor& p2);

// all sections of a display map (right inverses), in lexicographic order
std::vector<FinMor> enumerate_sections(const FinMor& display);

// all morphisms x -> y
std::vector<FinMor> enumerate_maps(const FinObj& x, const FinObj& y);

std::string show(const FinObj& x);
std::string show(const FinMor& f);

std::string to_json(const FinObj& x);
std::string to_json(const FinMor& f);
FinObj obj_from_json(const std::string& text);
FinMor mor_from_json(const std::string& text);

}  // namespace cwfkit::fincat
