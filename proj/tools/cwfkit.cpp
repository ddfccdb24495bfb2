#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cwfkit/biequiv.hpp"
#include "cwfkit/errors.hpp"
#include "cwfkit/fincat.hpp"
#include "cwfkit/hofmann.hpp"
#include "cwfkit/laws.hpp"
#include "cwfkit/surface.hpp"
#include "cwfkit/syntax.hpp"
#include "json.hpp"

namespace {

using namespace cwfkit;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct Loaded {
  surface::File file;
  surface::Program prog;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.file = surface::parse_file(slurp(path));
  l.prog = surface::elaborate_file(l.file);
  return l;
}

syn::TmPtr main_of(const Loaded& l, const std::string& path) {
  if (!l.prog.main) throw ElaborationError(path + " has no main declaration");
  return *l.prog.main;
}

int env_budget() {
  const char* s = std::getenv("CWFKIT_BUDGET");
  if (!s || !*s) return syn::kDefaultBudget;
  std::string text(s);
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size() || v <= 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("CWFKIT_BUDGET must be a positive integer, got '" + text +
                     "'");
  }
}

int run_check(const std::string& path) {
  Loaded l = load(path);
  for (const surface::Decl& d : l.file.decls) {
    switch (d.k) {
      case surface::Decl::K::Type:
        std::cout << "type " << d.name << "\n";
        break;
      case surface::Decl::K::Term:
        std::cout << "term " << d.name << " : " << surface::print_expr(d.type)
                  << "\n";
        break;
      case surface::Decl::K::Main:
        std::cout << "main : " << surface::print_expr(d.type) << "\n";
        break;
    }
  }
  std::cout << "ok\n";
  return 0;
}

int run_normalize(const std::string& path, int budget, bool trace) {
  Loaded l = load(path);
  syn::Trace tr;
  syn::TmPtr nf = syn::normalize(main_of(l, path), budget, trace ? &tr : nullptr);
  if (trace) {
    for (const syn::Trace::Step& s : tr.steps) {
      std::cout << s.rule << "  =>  " << s.result << "\n";
    }
  }
  std::cout << surface::print_expr(surface::readback_tm(nf)) << "\n";
  return 0;
}

int run_eq(const std::string& path1, const std::string& path2,
           const std::string& env_path, int budget) {
  Loaded l1 = load(path1);
  Loaded l2 = load(path2);
  syn::TmRefuter refuter = nullptr;
  std::shared_ptr<const biequiv::Interp> interp;
  if (!env_path.empty()) {
    interp = std::make_shared<biequiv::Interp>(
        biequiv::env_from_json(read_json(env_path)));
    refuter = biequiv::tm_refuter(interp);
  }
  syn::Eq r = syn::syn_eq(main_of(l1, path1), main_of(l2, path2), refuter,
                          budget);
  switch (r) {
    case syn::Eq::Equal: std::cout << "Equal\n"; break;
    case syn::Eq::Distinct: std::cout << "Distinct\n"; break;
    case syn::Eq::Unknown: std::cout << "Unknown\n"; break;
  }
  return 0;
}

int run_interp(const std::string& path, const std::string& env_path) {
  Loaded l = load(path);
  biequiv::Interp interp(biequiv::env_from_json(read_json(env_path)));
  hof::HTm tm = interp.tm(main_of(l, path));
  std::cout << fincat::show(tm.section) << "\n";
  return 0;
}

int run_laws(int atoms, int depth, std::uint64_t seed, int samples) {
  hof::HInstance inst;
  hof::HSampler sampler(atoms, depth, seed);
  cwf::LawReport rep = cwf::law_suite(inst, sampler, {samples, seed});
  std::cout << rep.to_json().dump(2) << "\n";
  return rep.ok() ? 0 : 1;
}

int run_roundtrip(int atoms, int depth, std::uint64_t seed, int samples) {
  hof::HInstance inst;
  hof::HSampler sampler(atoms, depth, seed);
  biequiv::RoundTripReport rep =
      biequiv::roundtrip_report(inst, sampler, {samples, seed});
  std::cout << rep.to_json().dump(2) << "\n";
  return rep.ok() ? 0 : 1;
}

int run_dump_family(const std::string& path, const std::string& probes_path) {
  Loaded l = load(path);
  if (!l.prog.main_ty) {
    throw ElaborationError(path + " has no main declaration");
  }
  nlohmann::json j = read_json(probes_path);
  if (!j.contains("env") || !j.contains("probes")) {
    throw ParseError(probes_path + ": expected an object with \"env\" and \"probes\"");
  }
  biequiv::Environment env = biequiv::env_from_json(j.at("env"));
  std::vector<fincat::FinMor> probes;
  for (const auto& el : j.at("probes")) {
    probes.push_back(fincat::mor_from_json(el.dump()));
  }
  biequiv::Interp interp(env);
  hof::FamPtr fam = interp.ty(*l.prog.main_ty);
  std::cout << hof::dump_family(*fam, probes).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependent type surface language over finite-set semantics"};
  app.require_subcommand(1);

  int rc = 0;

  std::string chk_file;
  CLI::App* chk = app.add_subcommand("check", "parse and elaborate a file");
  chk->add_option("file", chk_file, "declaration file")->required();
  chk->callback([&] { rc = run_check(chk_file); });

  std::string norm_file;
  int norm_budget = 0;
  bool norm_trace = false;
  CLI::App* norm =
      app.add_subcommand("normalize", "normalize a file's main expression");
  norm->add_option("file", norm_file, "declaration file")->required();
  norm->add_option("--budget", norm_budget, "rewrite step budget");
  norm->add_flag("--trace", norm_trace, "print each rewrite step");
  norm->callback([&] {
    int budget = norm_budget > 0 ? norm_budget : env_budget();
    rc = run_normalize(norm_file, budget, norm_trace);
  });

  std::string eq_file1, eq_file2, eq_env;
  int eq_budget = 0;
  CLI::App* eqc =
      app.add_subcommand("eq", "compare the main expressions of two files");
  eqc->add_option("file1", eq_file1, "first declaration file")->required();
  eqc->add_option("file2", eq_file2, "second declaration file")->required();
  eqc->add_option("--env", eq_env, "environment used to refute equality");
  eqc->add_option("--budget", eq_budget, "rewrite step budget");
  eqc->callback([&] {
    int budget = eq_budget > 0 ? eq_budget : env_budget();
    rc = run_eq(eq_file1, eq_file2, eq_env, budget);
  });

  std::string int_file, int_env;
  CLI::App* intc =
      app.add_subcommand("interp", "interpret a file's main expression");
  intc->add_option("file", int_file, "declaration file")->required();
  intc->add_option("--env", int_env, "environment file (JSON)")->required();
  intc->callback([&] { rc = run_interp(int_file, int_env); });

  std::string laws_model = "finset";
  int laws_atoms = 3, laws_depth = 3, laws_samples = 120;
  std::uint64_t laws_seed = 0;
  CLI::App* laws = app.add_subcommand("laws", "run the equation suite");
  laws->add_option("--model", laws_model, "model to check")
      ->check(CLI::IsMember({"finset"}));
  laws->add_option("--atoms", laws_atoms, "atom bound for sampled objects");
  laws->add_option("--depth", laws_depth, "former nesting depth");
  laws->add_option("--seed", laws_seed, "sampler seed");
  laws->add_option("--samples", laws_samples, "cases attempted per law");
  laws->callback(
      [&] { rc = run_laws(laws_atoms, laws_depth, laws_seed, laws_samples); });

  std::string rt_model = "finset";
  int rt_atoms = 3, rt_depth = 2, rt_samples = 12;
  std::uint64_t rt_seed = 0;
  CLI::App* rt =
      app.add_subcommand("roundtrip", "run the unit round-trip report");
  rt->add_option("--model", rt_model, "model to check")
      ->check(CLI::IsMember({"finset"}));
  rt->add_option("--atoms", rt_atoms, "atom bound for sampled objects");
  rt->add_option("--depth", rt_depth, "former nesting depth");
  rt->add_option("--seed", rt_seed, "sampler seed");
  rt->add_option("--samples", rt_samples, "sampled (context, type) cases");
  rt->callback(
      [&] { rc = run_roundtrip(rt_atoms, rt_depth, rt_seed, rt_samples); });

  std::string df_file, df_probes;
  CLI::App* df = app.add_subcommand(
      "dump-family", "interpret a file's main type and probe it");
  df->add_option("file", df_file, "declaration file")->required();
  df->add_option("--probes", df_probes, "JSON file with env and probe maps")
      ->required();
  df->callback([&] { rc = run_dump_family(df_file, df_probes); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
