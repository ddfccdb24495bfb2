#include "cwfkit/laws.hpp"

#include <functional>
#include <utility>

namespace cwfkit::cwf {

nlohmann::json LawResult::to_json() const {
  nlohmann::json j;
  j["law"] = law;
  j["cases"] = cases;
  j["failures"] = failures;
  j["skipped"] = skipped;
  if (!note.empty()) j["note"] = note;
  return j;
}

bool LawReport::ok() const {
  for (auto& r : laws)
    if (r.failures > 0) return false;
  return true;
}

int LawReport::total_cases() const {
  int n = 0;
  for (auto& r : laws) n += r.cases;
  return n;
}

nlohmann::json LawReport::to_json() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["seed"] = seed;
  j["samples"] = samples;
  j["ok"] = ok();
  j["total_cases"] = total_cases();
  j["laws"] = nlohmann::json::array();
  for (auto& r : laws) j["laws"].push_back(r.to_json());
  return j;
}

namespace {

class Collector {
 public:
  Collector(std::string name, int target) : target_(target) {
    result_.law = std::move(name);
  }

  bool want_more() const { return result_.cases < target_; }

  void pass() { result_.cases++; }

  void fail(const std::string& detail) {
    result_.cases++;
    result_.failures++;
    if (result_.note.empty()) result_.note = detail;
  }

  void check(bool ok, const std::function<std::string()>& describe) {
    if (ok)
      pass();
    else
      fail(describe());
  }

  void skip(const std::string& why) {
    result_.skipped = true;
    result_.note = why;
  }

  LawResult take() { return std::move(result_); }

 private:
  LawResult result_;
  int target_;
};

struct Env {
  const Instance& I;
  Sampler& S;
  int n;
  std::vector<Obj> objs;

  std::string so(const Obj& o) const { return I.show_obj(o); }
  std::string ss(const Sub& s) const { return I.show_sub(s); }
  std::string st(const Ty& t) const { return I.show_ty(t); }
  std::string sm(const Tm& t) const { return I.show_tm(t); }
};

// generic tuple walkers; every loop bails as soon as the collector is full

template <class F>
void each_sub(Env& e, Collector& c, F f) {
  for (auto& g : e.objs) {
    if (!c.want_more()) return;
    for (auto& s : e.S.subs_into(g, e.n)) {
      if (!c.want_more()) return;
      f(s);
    }
  }
}

template <class F>
void each_ty(Env& e, Collector& c, F f) {
  for (auto& g : e.objs) {
    if (!c.want_more()) return;
    for (auto& t : e.S.types_over(g, e.n)) {
      if (!c.want_more()) return;
      f(g, t);
    }
  }
}

template <class F>
void each_ty_tm(Env& e, Collector& c, F f) {
  each_ty(e, c, [&](const Obj& g, const Ty& a) {
    for (auto& x : e.S.terms_of(a, e.n)) {
      if (!c.want_more()) return;
      f(g, a, x);
    }
  });
}

// a type together with a dependent family over its extension
template <class F>
void each_family(Env& e, Collector& c, F f) {
  each_ty(e, c, [&](const Obj& g, const Ty& a) {
    for (auto& b : e.S.types_over(e.I.ext(a), 2)) {
      if (!c.want_more()) return;
      f(g, a, b);
    }
  });
}

template <class F>
void guarded(Collector& c, const Env& e, F f, const std::string& what) {
  try {
    f();
  } catch (const Error& err) {
    c.fail(what + " raised: " + err.what());
  }
}

LawResult run_law(Env& e, const std::string& name, bool enabled,
                  const std::string& skip_reason,
                  const std::function<void(Collector&)>& body) {
  Collector c(name, e.n);
  if (!enabled) {
    c.skip(skip_reason);
    return c.take();
  }
  try {
    body(c);
  } catch (const Error& err) {
    c.fail(std::string("law harness raised: ") + err.what());
  }
  return c.take();
}

}  // namespace

LawReport law_suite(const Instance& I, Sampler& sampler, const LawOptions& opt) {
  LawReport rep;
  rep.instance = I.name();
  rep.seed = opt.seed;
  rep.samples = opt.samples;
  Env e{I, sampler, opt.samples, sampler.objects(opt.samples)};
  auto add = [&](const std::string& name, bool enabled, const std::string& why,
                 std::function<void(Collector&)> body) {
    rep.laws.push_back(run_law(e, name, enabled, why, std::move(body)));
  };
  const std::string no_sigma = "instance has no dependent pairs";
  const std::string no_id = "instance has no equality types";
  const std::string no_pi = "instance has no function types";
  const std::string no_dem = "instance has no context reflection";

  add("sub-assoc", true, "", [&](Collector& c) {
    each_sub(e, c, [&](const Sub& h) {
      for (auto& g : e.S.subs_into(I.dom(h), 2)) {
        for (auto& f : e.S.subs_into(I.dom(g), 2)) {
          if (!c.want_more()) return;
          guarded(c, e, [&] {
            Sub lhs = I.compose(I.compose(h, g), f);
            Sub rhs = I.compose(h, I.compose(g, f));
            c.check(I.eq_sub(lhs, rhs), [&] {
              return "h=" + e.ss(h) + " g=" + e.ss(g) + " f=" + e.ss(f);
            });
          }, "composition");
        }
      }
    });
  });

  add("sub-id-left", true, "", [&](Collector& c) {
    each_sub(e, c, [&](const Sub& f) {
      guarded(c, e, [&] {
        c.check(I.eq_sub(I.compose(I.id(I.cod(f)), f), f),
                [&] { return "f=" + e.ss(f); });
      }, "identity");
    });
  });

  add("sub-id-right", true, "", [&](Collector& c) {
    each_sub(e, c, [&](const Sub& f) {
      guarded(c, e, [&] {
        c.check(I.eq_sub(I.compose(f, I.id(I.dom(f))), f),
                [&] { return "f=" + e.ss(f); });
      }, "identity");
    });
  });

  add("ty-subst-id", true, "", [&](Collector& c) {
    each_ty(e, c, [&](const Obj& g, const Ty& a) {
      guarded(c, e, [&] {
        c.check(I.eq_ty(I.subst_ty(a, I.id(g)), a),
                [&] { return "A=" + e.st(a); });
      }, "substitution");
    });
  });

  add("ty-subst-comp", true, "", [&](Collector& c) {
    each_ty(e, c, [&](const Obj& g, const Ty& a) {
      for (auto& g1 : e.S.subs_into(g, 2)) {
        for (auto& g2 : e.S.subs_into(I.dom(g1), 2)) {
          if (!c.want_more()) return;
          guarded(c, e, [&] {
            Ty lhs = I.subst_ty(I.subst_ty(a, g1), g2);
            Ty rhs = I.subst_ty(a, I.compose(g1, g2));
            c.check(I.eq_ty(lhs, rhs), [&] {
              return "A=" + e.st(a) + " g1=" + e.ss(g1) + " g2=" + e.ss(g2);
            });
          }, "substitution");
        }
      }
    });
  });

  add("tm-subst-id", true, "", [&](Collector& c) {
    each_ty_tm(e, c, [&](const Obj& g, const Ty&, const Tm& x) {
      guarded(c, e, [&] {
        c.check(I.eq_tm(I.subst_tm(x, I.id(g)), x),
                [&] { return "a=" + e.sm(x); });
      }, "substitution");
    });
  });

  add("tm-subst-comp", true, "", [&](Collector& c) {
    each_ty_tm(e, c, [&](const Obj& g, const Ty&, const Tm& x) {
      for (auto& g1 : e.S.subs_into(g, 2)) {
        for (auto& g2 : e.S.subs_into(I.dom(g1), 2)) {
          if (!c.want_more()) return;
          guarded(c, e, [&] {
            Tm lhs = I.subst_tm(I.subst_tm(x, g1), g2);
            Tm rhs = I.subst_tm(x, I.compose(g1, g2));
            c.check(I.eq_tm(lhs, rhs), [&] {
              return "a=" + e.sm(x) + " g1=" + e.ss(g1) + " g2=" + e.ss(g2);
            });
          }, "substitution");
        }
      }
    });
  });

  add("terminal-unique", true, "", [&](Collector& c) {
    for (auto& f : e.S.subs_into(I.terminal_obj(), e.n)) {
      if (!c.want_more()) return;
      guarded(c, e, [&] {
        c.check(I.eq_sub(f, I.terminal_sub(I.dom(f))),
                [&] { return "f=" + e.ss(f); });
      }, "terminal map");
    }
  });

  // comprehension laws need a type, a map into its context, and a fitting term
  auto each_extension = [&](Collector& c,
                            const std::function<void(const Obj&, const Ty&,
                                                     const Sub&, const Tm&)>& f) {
    each_ty(e, c, [&](const Obj& g, const Ty& a) {
      for (auto& d : e.S.subs_into(g, 2)) {
        Ty moved = I.subst_ty(a, d);
        for (auto& x : e.S.terms_of(moved, 2)) {
          if (!c.want_more()) return;
          f(g, a, d, x);
        }
      }
    });
  };

  add("comp-p", true, "", [&](Collector& c) {
    each_extension(c, [&](const Obj&, const Ty& a, const Sub& d, const Tm& x) {
      guarded(c, e, [&] {
        c.check(I.eq_sub(I.compose(I.p(a), I.pair_sub(d, x, a)), d), [&] {
          return "A=" + e.st(a) + " d=" + e.ss(d) + " a=" + e.sm(x);
        });
      }, "comprehension");
    });
  });

  add("comp-q", true, "", [&](Collector& c) {
    each_extension(c, [&](const Obj&, const Ty& a, const Sub& d, const Tm& x) {
      guarded(c, e, [&] {
        c.check(I.eq_tm(I.subst_tm(I.q(a), I.pair_sub(d, x, a)), x), [&] {
          return "A=" + e.st(a) + " d=" + e.ss(d) + " a=" + e.sm(x);
        });
      }, "comprehension");
    });
  });

  add("comp-eta", true, "", [&](Collector& c) {
    each_ty(e, c, [&](const Obj&, const Ty& a) {
      guarded(c, e, [&] {
        c.check(I.eq_sub(I.pair_sub(I.p(a), I.q(a), a), I.id(I.ext(a))),
                [&] { return "A=" + e.st(a); });
      }, "comprehension");
    });
  });

  add("comp-sub", true, "", [&](Collector& c) {
    each_extension(c, [&](const Obj&, const Ty& a, const Sub& d, const Tm& x) {
      for (auto& d2 : e.S.subs_into(I.dom(d), 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Sub lhs = I.compose(I.pair_sub(d, x, a), d2);
          Sub rhs = I.pair_sub(I.compose(d, d2), I.subst_tm(x, d2), a);
          c.check(I.eq_sub(lhs, rhs), [&] {
            return "A=" + e.st(a) + " d=" + e.ss(d) + " d2=" + e.ss(d2) +
                   " a=" + e.sm(x);
          });
        }, "comprehension");
      }
    });
  });

  add("id-stability-ty", I.has_id_types(), no_id, [&](Collector& c) {
    each_ty_tm(e, c, [&](const Obj& g, const Ty& a, const Tm& x) {
      for (auto& d : e.S.subs_into(g, 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Ty lhs = I.subst_ty(I.id_ty(a, x, x), d);
          Ty rhs = I.id_ty(I.subst_ty(a, d), I.subst_tm(x, d), I.subst_tm(x, d));
          c.check(I.eq_ty(lhs, rhs),
                  [&] { return "A=" + e.st(a) + " d=" + e.ss(d); });
        }, "equality type");
      }
    });
  });

  add("id-stability-refl", I.has_id_types(), no_id, [&](Collector& c) {
    each_ty_tm(e, c, [&](const Obj& g, const Ty& a, const Tm& x) {
      for (auto& d : e.S.subs_into(g, 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Tm lhs = I.subst_tm(I.refl(a, x), d);
          Tm rhs = I.refl(I.subst_ty(a, d), I.subst_tm(x, d));
          c.check(I.eq_tm(lhs, rhs),
                  [&] { return "A=" + e.st(a) + " a=" + e.sm(x); });
        }, "equality type");
      }
    });
  });

  // an inhabited equality type forces its endpoints (and witnesses) together
  auto each_equation = [&](Collector& c,
                           const std::function<void(const Ty&, const Tm&,
                                                    const Tm&, const Tm&)>& f) {
    each_ty(e, c, [&](const Obj&, const Ty& a) {
      auto xs = e.S.terms_of(a, 3);
      for (auto& x : xs) {
        for (auto& y : xs) {
          for (auto& w : e.S.terms_of(I.id_ty(a, x, y), 1)) {
            if (!c.want_more()) return;
            f(a, x, y, w);
          }
        }
      }
    });
  };

  add("id-reflection", I.has_id_types(), no_id, [&](Collector& c) {
    each_equation(c, [&](const Ty& a, const Tm& x, const Tm& y, const Tm&) {
      guarded(c, e, [&] {
        c.check(I.eq_tm(x, y), [&] {
          return "A=" + e.st(a) + " a=" + e.sm(x) + " a'=" + e.sm(y);
        });
      }, "reflection");
    });
  });

  add("id-uip", I.has_id_types(), no_id, [&](Collector& c) {
    each_equation(c, [&](const Ty& a, const Tm& x, const Tm&, const Tm& w) {
      guarded(c, e, [&] {
        c.check(I.eq_tm(w, I.refl(a, x)), [&] {
          return "A=" + e.st(a) + " witness=" + e.sm(w);
        });
      }, "uniqueness");
    });
  });

  // dependent pair data: a family plus a point and a fitting second component
  auto each_pair = [&](Collector& c,
                       const std::function<void(const Obj&, const Ty&, const Ty&,
                                                const Tm&, const Tm&)>& f) {
    each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
      for (auto& x : e.S.terms_of(a, 2)) {
        Ty at_x = I.subst_ty(b, I.pair_sub(I.id(g), x, a));
        for (auto& y : e.S.terms_of(at_x, 2)) {
          if (!c.want_more()) return;
          f(g, a, b, x, y);
        }
      }
    });
  };

  add("sigma-beta-1", I.has_sigma(), no_sigma, [&](Collector& c) {
    each_pair(c, [&](const Obj&, const Ty& a, const Ty& b, const Tm& x,
                     const Tm& y) {
      guarded(c, e, [&] {
        Tm pr = I.pair_tm(a, b, x, y);
        c.check(I.eq_tm(I.proj1(a, b, pr), x),
                [&] { return "a=" + e.sm(x) + " b=" + e.sm(y); });
      }, "pairing");
    });
  });

  add("sigma-beta-2", I.has_sigma(), no_sigma, [&](Collector& c) {
    each_pair(c, [&](const Obj&, const Ty& a, const Ty& b, const Tm& x,
                     const Tm& y) {
      guarded(c, e, [&] {
        Tm pr = I.pair_tm(a, b, x, y);
        c.check(I.eq_tm(I.proj2(a, b, pr), y),
                [&] { return "a=" + e.sm(x) + " b=" + e.sm(y); });
      }, "pairing");
    });
  });

  add("sigma-eta", I.has_sigma(), no_sigma, [&](Collector& c) {
    each_family(e, c, [&](const Obj&, const Ty& a, const Ty& b) {
      for (auto& z : e.S.terms_of(I.sigma_ty(a, b), 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Tm rebuilt = I.pair_tm(a, b, I.proj1(a, b, z), I.proj2(a, b, z));
          c.check(I.eq_tm(rebuilt, z), [&] { return "c=" + e.sm(z); });
        }, "pairing");
      }
    });
  });

  add("sigma-stability-ty", I.has_sigma(), no_sigma, [&](Collector& c) {
    each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
      for (auto& d : e.S.subs_into(g, 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Ty lhs = I.subst_ty(I.sigma_ty(a, b), d);
          Ty rhs = I.sigma_ty(I.subst_ty(a, d), I.subst_ty(b, weaken(I, d, a)));
          c.check(I.eq_ty(lhs, rhs),
                  [&] { return "A=" + e.st(a) + " d=" + e.ss(d); });
        }, "stability");
      }
    });
  });

  add("sigma-stability-pair", I.has_sigma(), no_sigma, [&](Collector& c) {
    each_pair(c, [&](const Obj& g, const Ty& a, const Ty& b, const Tm& x,
                     const Tm& y) {
      for (auto& d : e.S.subs_into(g, 1)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Tm lhs = I.subst_tm(I.pair_tm(a, b, x, y), d);
          Ty a2 = I.subst_ty(a, d);
          Ty b2 = I.subst_ty(b, weaken(I, d, a));
          Tm rhs = I.pair_tm(a2, b2, I.subst_tm(x, d), I.subst_tm(y, d));
          c.check(I.eq_tm(lhs, rhs),
                  [&] { return "a=" + e.sm(x) + " d=" + e.ss(d); });
        }, "stability");
      }
    });
  });

  auto proj_stability = [&](const char* name, bool first) {
    add(name, I.has_sigma(), no_sigma, [&, first](Collector& c) {
      each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
        for (auto& z : e.S.terms_of(I.sigma_ty(a, b), 1)) {
          for (auto& d : e.S.subs_into(g, 2)) {
            if (!c.want_more()) return;
            guarded(c, e, [&] {
              Ty a2 = I.subst_ty(a, d);
              Ty b2 = I.subst_ty(b, weaken(I, d, a));
              Tm moved = I.subst_tm(z, d);
              Tm lhs = first ? I.subst_tm(I.proj1(a, b, z), d)
                             : I.subst_tm(I.proj2(a, b, z), d);
              Tm rhs = first ? I.proj1(a2, b2, moved) : I.proj2(a2, b2, moved);
              c.check(I.eq_tm(lhs, rhs),
                      [&] { return "c=" + e.sm(z) + " d=" + e.ss(d); });
            }, "stability");
          }
        }
      });
    });
  };
  proj_stability("sigma-stability-proj1", true);
  proj_stability("sigma-stability-proj2", false);

  // function data: a family plus a body over the extension
  add("pi-beta", I.has_pi(), no_pi, [&](Collector& c) {
    each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
      for (auto& body : e.S.terms_of(b, 2)) {
        for (auto& x : e.S.terms_of(a, 2)) {
          if (!c.want_more()) return;
          guarded(c, e, [&] {
            Tm lhs = I.ap(a, b, I.lam(a, b, body), x);
            Tm rhs = I.subst_tm(body, I.pair_sub(I.id(g), x, a));
            c.check(I.eq_tm(lhs, rhs),
                    [&] { return "b=" + e.sm(body) + " a=" + e.sm(x); });
          }, "application");
        }
      }
    });
  });

  add("pi-eta", I.has_pi(), no_pi, [&](Collector& c) {
    each_family(e, c, [&](const Obj&, const Ty& a, const Ty& b) {
      for (auto& f : e.S.terms_of(I.pi_ty(a, b), 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Sub pa = I.p(a);
          Ty a2 = I.subst_ty(a, pa);
          Ty b2 = I.subst_ty(b, weaken(I, pa, a));
          Tm body = I.ap(a2, b2, I.subst_tm(f, pa), I.q(a));
          c.check(I.eq_tm(I.lam(a, b, body), f), [&] { return "c=" + e.sm(f); });
        }, "function eta");
      }
    });
  });

  add("pi-stability-ty", I.has_pi(), no_pi, [&](Collector& c) {
    each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
      for (auto& d : e.S.subs_into(g, 2)) {
        if (!c.want_more()) return;
        guarded(c, e, [&] {
          Ty lhs = I.subst_ty(I.pi_ty(a, b), d);
          Ty rhs = I.pi_ty(I.subst_ty(a, d), I.subst_ty(b, weaken(I, d, a)));
          c.check(I.eq_ty(lhs, rhs),
                  [&] { return "A=" + e.st(a) + " d=" + e.ss(d); });
        }, "stability");
      }
    });
  });

  add("pi-stability-lam", I.has_pi(), no_pi, [&](Collector& c) {
    each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
      for (auto& body : e.S.terms_of(b, 2)) {
        for (auto& d : e.S.subs_into(g, 2)) {
          if (!c.want_more()) return;
          guarded(c, e, [&] {
            Tm lhs = I.subst_tm(I.lam(a, b, body), d);
            Ty a2 = I.subst_ty(a, d);
            Ty b2 = I.subst_ty(b, weaken(I, d, a));
            Tm rhs = I.lam(a2, b2, I.subst_tm(body, weaken(I, d, a)));
            c.check(I.eq_tm(lhs, rhs),
                    [&] { return "b=" + e.sm(body) + " d=" + e.ss(d); });
          }, "stability");
        }
      }
    });
  });

  add("pi-stability-ap", I.has_pi(), no_pi, [&](Collector& c) {
    each_family(e, c, [&](const Obj& g, const Ty& a, const Ty& b) {
      for (auto& f : e.S.terms_of(I.pi_ty(a, b), 1)) {
        for (auto& x : e.S.terms_of(a, 1)) {
          for (auto& d : e.S.subs_into(g, 2)) {
            if (!c.want_more()) return;
            guarded(c, e, [&] {
              Tm lhs = I.subst_tm(I.ap(a, b, f, x), d);
              Ty a2 = I.subst_ty(a, d);
              Ty b2 = I.subst_ty(b, weaken(I, d, a));
              Tm rhs = I.ap(a2, b2, I.subst_tm(f, d), I.subst_tm(x, d));
              c.check(I.eq_tm(lhs, rhs),
                      [&] { return "c=" + e.sm(f) + " d=" + e.ss(d); });
            }, "stability");
          }
        }
      }
    });
  });

  add("dem-iso-1", I.has_democracy(), no_dem, [&](Collector& c) {
    for (auto& g : e.objs) {
      if (!c.want_more()) return;
      guarded(c, e, [&] {
        c.check(I.eq_sub(I.compose(I.dem_inv(g), I.dem(g)), I.id(g)),
                [&] { return "G=" + e.so(g); });
      }, "reflection iso");
    }
  });

  add("dem-iso-2", I.has_democracy(), no_dem, [&](Collector& c) {
    for (auto& g : e.objs) {
      if (!c.want_more()) return;
      guarded(c, e, [&] {
        Obj reflected = I.ext(I.bar(g));
        c.check(I.eq_sub(I.compose(I.dem(g), I.dem_inv(g)), I.id(reflected)),
                [&] { return "G=" + e.so(g); });
      }, "reflection iso");
    }
  });

  add("dem-bar-id", I.has_democracy(), no_dem, [&](Collector& c) {
    for (auto& g : e.objs) {
      if (!c.want_more()) return;
      guarded(c, e, [&] {
        c.check(I.eq_tm(bar_mor(I, I.id(g)), I.q(I.bar(g))),
                [&] { return "G=" + e.so(g); });
      }, "reflection");
    }
  });

  return rep;
}

nlohmann::json SliceReport::to_json() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["map_cases"] = map_cases;
  j["type_cases"] = type_cases;
  j["failures"] = failures;
  j["ok"] = ok();
  j["notes"] = notes;
  return j;
}

SliceReport slice_equivalence_check(const Instance& I, Sampler& sampler, int n) {
  SliceReport rep;
  rep.instance = I.name();
  auto objs = sampler.objects(n);
  for (auto& g : objs) {
    for (auto& d : sampler.subs_into(g, n)) {
      if (rep.map_cases >= n) break;
      rep.map_cases++;
      try {
        inv_iso(I, d);
      } catch (const Error& err) {
        rep.failures++;
        rep.notes.push_back("map " + I.show_sub(d) + ": " + err.what());
      }
    }
    for (auto& a : sampler.types_over(g, n)) {
      if (rep.type_cases >= n) break;
      rep.type_cases++;
      try {
        SliceIso s = inv_iso(I, I.p(a));
        TypeIso recovered(I, inv_type(I, I.p(a)), a, s.fwd, s.bwd);
        (void)recovered;
      } catch (const Error& err) {
        rep.failures++;
        rep.notes.push_back("type " + I.show_ty(a) + ": " + err.what());
      }
    }
  }
  return rep;
}

}  // namespace cwfkit::cwf
