#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cwfkit/errors.hpp"

// The free cwf as a combinator calculus: contexts, substitutions, types and
// terms with full annotations, an oriented rewriting normalizer, and a
// conservative (never unsoundly Equal) equality check.
namespace cwfkit::syn {

struct Ctx;
struct Sub;
struct Ty;
struct Tm;
using CtxPtr = std::shared_ptr<const Ctx>;
using SubPtr = std::shared_ptr<const Sub>;
using TyPtr = std::shared_ptr<const Ty>;
using TmPtr = std::shared_ptr<const Tm>;

struct Ctx {
  enum class K { Empty, Ext, Named } k;
  CtxPtr ctx;        // Ext
  TyPtr ty;          // Ext
  std::string name;  // Named
};

struct Sub {
  enum class K { Id, Comp, Terminal, P, Pair, DemIso, DemIsoInv } k;
  CtxPtr ctx;    // Id, Terminal (source), DemIso, DemIsoInv
  SubPtr outer;  // Comp
  SubPtr inner;  // Comp
  TyPtr ty;      // P (the weakened type), Pair (annotation A)
  SubPtr sub;    // Pair (gamma)
  TmPtr tm;      // Pair (a)
};

struct Ty {
  enum class K { Base, Subst, Sigma, Pi, Id, Bar } k;
  std::string name;  // Base
  CtxPtr ctx;        // Base (context), Bar
  TyPtr a;           // Subst (body), Sigma/Pi (A), Id (A)
  SubPtr sub;        // Subst
  TyPtr b;           // Sigma/Pi (B over Ext(ctx,A))
  TmPtr t1, t2;      // Id endpoints
};

struct Tm {
  enum class K { Q, SubstTm, Refl, PairTm, Proj1, Proj2, Lam, Ap, BarSub, BaseTm } k;
  TyPtr ty;          // Q (the extended type), Refl (A), PairTm (B), BaseTm (declared)
  TmPtr a;           // SubstTm (body), Refl (a), PairTm (first), Proj1/Proj2/Lam/Ap (head)
  SubPtr sub;        // SubstTm, BarSub (delta)
  TmPtr b;           // PairTm (second), Ap (argument)
  std::string name;  // BaseTm
};

// constructors
CtxPtr ctx_empty();
CtxPtr ctx_ext(CtxPtr ctx, TyPtr ty);
CtxPtr ctx_named(std::string name);

SubPtr sub_id(CtxPtr ctx);
SubPtr sub_comp(SubPtr outer, SubPtr inner);
SubPtr sub_terminal(CtxPtr src);
SubPtr sub_p(TyPtr ty);
SubPtr sub_pair(SubPtr gamma, TmPtr a, TyPtr ty);
SubPtr sub_dem(CtxPtr ctx);
SubPtr sub_dem_inv(CtxPtr ctx);

TyPtr ty_base(std::string name, CtxPtr ctx);
TyPtr ty_subst(TyPtr a, SubPtr sub);
TyPtr ty_sigma(TyPtr a, TyPtr b);
TyPtr ty_pi(TyPtr a, TyPtr b);
TyPtr ty_id(TyPtr a, TmPtr t1, TmPtr t2);
TyPtr ty_bar(CtxPtr ctx);

TmPtr tm_q(TyPtr ty);
TmPtr tm_subst(TmPtr a, SubPtr sub);
TmPtr tm_refl(TyPtr a, TmPtr t);
TmPtr tm_pair(TmPtr a, TmPtr b, TyPtr bty);
TmPtr tm_proj1(TmPtr c);
TmPtr tm_proj2(TmPtr c);
TmPtr tm_lam(TmPtr b);
TmPtr tm_ap(TmPtr c, TmPtr a);
TmPtr tm_bar_sub(SubPtr delta);
TmPtr tm_base(std::string name, TyPtr ty);

// structural equality (annotations included)
bool eq(const CtxPtr&, const CtxPtr&);
bool eq(const SubPtr&, const SubPtr&);
bool eq(const TyPtr&, const TyPtr&);
bool eq(const TmPtr&, const TmPtr&);

std::size_t size(const CtxPtr&);
std::size_t size(const SubPtr&);
std::size_t size(const TyPtr&);
std::size_t size(const TmPtr&);

// raw synthesis; may throw IllFormed on mis-structured input
CtxPtr ctx_of(const TyPtr&);
CtxPtr ctx_of(const TmPtr&);
TyPtr ty_of(const TmPtr&);  // normalizes heads where elimination forms need it
std::pair<CtxPtr, CtxPtr> domcod(const SubPtr&);

struct Signature {
  std::vector<std::string> contexts;
  std::map<std::string, CtxPtr> types;  // base type name -> its context
  std::map<std::string, TyPtr> terms;   // base term name -> its type
};

struct Judgment {
  enum class K { CtxOk, Sub, Ty, Tm } k;
  CtxPtr ctx;   // Sub: domain; Ty/Tm: the context; CtxOk: the context
  CtxPtr cod;   // Sub: codomain
  TyPtr ty;     // Tm: the type
  std::string show() const;
};

Judgment check(const CtxPtr&, const Signature&);
Judgment check(const SubPtr&, const Signature&);
Judgment check(const TyPtr&, const Signature&);
Judgment check(const TmPtr&, const Signature&);

inline constexpr int kDefaultBudget = 10000;

struct Trace {
  struct Step {
    std::string rule;
    std::string result;
  };
  std::vector<Step> steps;
};

// test hook: suppress one named rewrite rule for the guard's lifetime
struct RuleMask {
  explicit RuleMask(std::string rule);
  ~RuleMask();
  RuleMask(const RuleMask&) = delete;
  RuleMask& operator=(const RuleMask&) = delete;
};

CtxPtr normalize(const CtxPtr&, int budget = kDefaultBudget, Trace* trace = nullptr);
SubPtr normalize(const SubPtr&, int budget = kDefaultBudget, Trace* trace = nullptr);
TyPtr normalize(const TyPtr&, int budget = kDefaultBudget, Trace* trace = nullptr);
TmPtr normalize(const TmPtr&, int budget = kDefaultBudget, Trace* trace = nullptr);

// every single-step reduct (all positions), for confluence and fuzz tests;
// each entry carries the name of the rule applied
std::vector<std::pair<std::string, SubPtr>> all_steps(const SubPtr&);
std::vector<std::pair<std::string, TyPtr>> all_steps(const TyPtr&);
std::vector<std::pair<std::string, TmPtr>> all_steps(const TmPtr&);

enum class Eq { Equal, Distinct, Unknown };

// a refuter returns true when it can demonstrate the two sides differ in a
// model; syn_eq itself never claims Equal beyond normal-form coincidence
using TmRefuter = std::function<bool(const TmPtr&, const TmPtr&)>;
using TyRefuter = std::function<bool(const TyPtr&, const TyPtr&)>;
using SubRefuter = std::function<bool(const SubPtr&, const SubPtr&)>;

Eq syn_eq(const TmPtr&, const TmPtr&, const TmRefuter& refute = nullptr,
          int budget = kDefaultBudget);
Eq syn_eq(const TyPtr&, const TyPtr&, const TyRefuter& refute = nullptr,
          int budget = kDefaultBudget);
Eq syn_eq(const SubPtr&, const SubPtr&, const SubRefuter& refute = nullptr,
          int budget = kDefaultBudget);
Eq syn_eq(const CtxPtr&, const CtxPtr&, int budget = kDefaultBudget);

// deterministic s-expression printer and parser (round-trips)
std::string print(const CtxPtr&);
std::string print(const SubPtr&);
std::string print(const TyPtr&);
std::string print(const TmPtr&);

struct Parsed {
  enum class K { Ctx, Sub, Ty, Tm } k;
  CtxPtr ctx;
  SubPtr sub;
  TyPtr ty;
  TmPtr tm;
};

Parsed parse(const std::string& text);
CtxPtr parse_ctx(const std::string& text);
SubPtr parse_sub(const std::string& text);
TyPtr parse_ty(const std::string& text);
TmPtr parse_tm(const std::string& text);

// ⟨delta.p, q⟩ : Ext(dom(delta), A[delta]) -> Ext(cod(delta), A)
SubPtr weaken_pair(const SubPtr& delta, const TyPtr& a);

}  // namespace cwfkit::syn
