// relkit: command-line front end for the verification kernel.
//
// Exit codes: 0 success, 1 law violations / failed verdicts on otherwise
// well-formed input, 2 malformed input (parse errors, unresolved references,
// broken tables).

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "relkit/formal.hpp"
#include "relkit/json_io.hpp"

using namespace relkit;
namespace rio = relkit::io;
using rio::json;

namespace {

struct Options {
  std::string workspace = ".";
  std::string out;
  std::uint64_t budget = 0;  // 0: use the workspace config value
};

void emit(const json& j, const Options& opt) {
  std::string s = rio::dump(j);
  if (opt.out.empty()) {
    std::cout << s;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw MalformedTables("cannot write " + opt.out);
    f << s;
  }
}

std::uint64_t budget_of(const Options& opt, const rio::Workspace& ws) {
  return opt.budget ? opt.budget : ws.config.budget;
}

// Require a clean workspace before running constructions on it.
void require_valid(const rio::Workspace& ws) {
  for (const auto& [k, r] : ws.reports)
    if (!r.ok()) throw LawViolation("workspace does not validate: " + k + ": " +
                                    r.violations.front().law);
}

CatPtr renamed(const CatPtr& c, std::string name) {
  auto d = std::make_shared<EnrichedCategory>(*c);
  d->name = std::move(name);
  return d;
}

std::string reg_category(rio::Workspace& ws, const CatPtr& c, const std::string& name) {
  std::string existing = ws.category_name(c);
  if (!existing.empty()) return existing;
  ws.categories[name] = c;
  return name;
}

std::string reg_functor(rio::Workspace& ws, const EnrichedFunctor& f, const std::string& name) {
  for (const auto& [n, g] : ws.functors)
    if (same_functor(g, f)) return n;
  ws.functors[name] = f;
  return name;
}


json base_file_json(const std::string& name, const BasePtr& V) {
  json j = rio::base_descriptor(V);
  j["kind"] = "base";
  j["name"] = name;
  return j;
}

// Re-emit one named object of the given kind from a workspace, canonically.
json reemit(const rio::Workspace& ws, const std::string& kind, const std::string& name) {
  if (kind == "base") return base_file_json(name, ws.base(name));
  if (kind == "category") return rio::category_to_json(ws, ws.category(name));
  if (kind == "functor") return rio::functor_to_json(ws, ws.functor(name));
  if (kind == "distributor") return rio::distributor_to_json(ws, ws.distributor(name));
  if (kind == "monad") return rio::monad_to_json(ws, ws.monad(name));
  if (kind == "adjunction") return rio::adjunction_to_json(ws, ws.adjunction(name));
  if (kind == "comonad") return rio::comonad_to_json(ws, ws.comonad(name));
  throw MalformedTables("cannot re-emit kind: " + kind);
}

json verdict_json(const std::string& check, bool ok, std::uint64_t budget,
                  const std::string& failure) {
  return json{{"budget", budget}, {"check", check}, {"failure", failure},
              {"kind", "verdict"}, {"ok", ok}};
}

int cmd_validate(const Options& opt) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  json v = json::array();
  for (const auto& [k, r] : ws.reports)
    for (const auto& viol : r.violations)
      v.push_back(json{{"law", viol.law}, {"object", k}, {"where", viol.where}});
  emit(json{{"kind", "report"}, {"ok", v.empty()}, {"violations", v}}, opt);
  return v.empty() ? 0 : 1;
}

int cmd_kleisli(const Options& opt, const std::string& name) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  KleisliResult kl = kleisli(ws.monad(name));
  kl.cat = renamed(kl.cat, "Kl(" + name + ")");
  kl.incl.cod = kl.cat;
  kl.incl.name = "k(" + name + ")";
  rio::Workspace ws2 = ws;
  reg_category(ws2, kl.cat, kl.cat->name);
  json items = json::array();
  items.push_back(rio::category_to_json(ws2, kl.cat));
  items.push_back(rio::functor_to_json(ws2, kl.incl));
  emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  return 0;
}

int cmd_em(const Options& opt, const std::string& name) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  EMCategoryResult em = em_category(ws.monad(name), budget_of(opt, ws));
  em.cat = renamed(em.cat, "EM(" + name + ")");
  em.proj.dom = em.cat;
  em.proj.name = "u(" + name + ")";
  rio::Workspace ws2 = ws;
  reg_category(ws2, em.cat, em.cat->name);
  json items = json::array();
  items.push_back(rio::category_to_json(ws2, em.cat));
  items.push_back(rio::functor_to_json(ws2, em.proj));
  emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  return 0;
}

int cmd_cokleisli(const Options& opt, const std::string& name) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  CoKleisliResult ck = co_kleisli(ws.comonad(name));
  ck.cat = renamed(ck.cat, "coKl(" + name + ")");
  // The inclusion runs from the comonad's domain (double dual on the nose).
  ck.incl.dom = ws.comonad(name).i.dom;
  ck.incl.cod = ck.cat;
  ck.incl.name = "k(" + name + ")";
  rio::Workspace ws2 = ws;
  reg_category(ws2, ck.cat, ck.cat->name);
  json items = json::array();
  items.push_back(rio::category_to_json(ws2, ck.cat));
  items.push_back(rio::functor_to_json(ws2, ck.incl));
  emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  return 0;
}

int cmd_coem(const Options& opt, const std::string& name) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  CoEMCategoryResult em = co_em(ws.comonad(name), budget_of(opt, ws));
  em.cat = renamed(em.cat, "coEM(" + name + ")");
  em.proj.dom = em.cat;
  em.proj.cod = ws.comonad(name).i.cod;
  em.proj.name = "u(" + name + ")";
  rio::Workspace ws2 = ws;
  reg_category(ws2, em.cat, em.cat->name);
  json items = json::array();
  items.push_back(rio::category_to_json(ws2, em.cat));
  items.push_back(rio::functor_to_json(ws2, em.proj));
  emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  return 0;
}

int cmd_induce(const Options& opt, const std::string& name) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  RelativeMonad T = induced_monad(ws.adjunction(name));
  T.name = "T(" + name + ")";
  emit(rio::monad_to_json(ws, T), opt);
  return 0;
}

int cmd_compose(const Options& opt, const std::string& inner, const std::string& outer,
                const std::string& lprime) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  RelativeAdjunction c =
      compose_adjunctions(ws.adjunction(inner), ws.adjunction(outer), ws.functor(lprime));
  c.name = inner + ";" + outer;
  rio::Workspace ws2 = ws;
  json items = json::array();
  auto add_fun = [&](EnrichedFunctor& f, const std::string& fallback) {
    std::string n = reg_functor(ws2, f, fallback);
    if (ws.functors.count(n)) return;  // already in the workspace
    f.name = n;
    ws2.functors[n] = f;
    items.push_back(rio::functor_to_json(ws2, f));
  };
  add_fun(c.l, "l(" + c.name + ")");
  add_fun(c.r, "r(" + c.name + ")");
  items.push_back(rio::adjunction_to_json(ws2, c));
  emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  return 0;
}

int cmd_pushforward(const Options& opt, const std::string& outer, const std::string& lprime,
                    const std::string& monad) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  RelativeMonad P =
      pushforward_monad(ws.adjunction(outer), ws.functor(lprime), ws.monad(monad));
  P.name = "push(" + monad + ")";
  rio::Workspace ws2 = ws;
  json items = json::array();
  std::string jn = reg_functor(ws2, P.j, "root(" + P.name + ")");
  if (!ws.functors.count(jn)) {
    P.j.name = jn;
    ws2.functors[jn] = P.j;
    items.push_back(rio::functor_to_json(ws2, P.j));
  }
  items.push_back(rio::monad_to_json(ws2, P));
  if (items.size() == 1) {
    emit(items[0], opt);
  } else {
    emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  }
  return 0;
}

int cmd_translate(const Options& opt, const std::string& monoid_form, const std::string& compact,
                  const std::string& file) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  if (!monoid_form.empty()) {
    json mf = rio::monoid_form_to_json(ws, to_monoid_form(ws.monad(monoid_form)));
    mf["name"] = monoid_form;
    emit(mf, opt);
    return 0;
  }
  if (!compact.empty()) {
    json j = rio::read_json_file(compact);
    if (j.value("kind", "") != "monoid_monad")
      throw MalformedTables("--compact expects a monoid_monad file");
    RelativeMonad T = from_monoid_form(rio::monoid_form_from_json(ws, j));
    T.name = j.value("name", "");
    auto rep = validate_relative_monad(T);
    if (!rep.ok()) throw LawViolation("translated monad: " + rep.violations.front().law);
    emit(rio::monad_to_json(ws, T), opt);
    return 0;
  }
  if (file.empty()) throw MalformedTables("translate: nothing to do");
  // Normalization: load the file against the workspace and re-emit it
  // canonically (used for byte-level round trips).
  json j = rio::read_json_file(file);
  rio::Workspace ws2 = ws;
  auto one = [&](const json& item) {
    rio::workspace_add(ws2, item);
    std::string key = item.at("kind").get<std::string>() + " " +
                      item.at("name").get<std::string>();
    auto it = ws2.reports.find(key);
    if (it != ws2.reports.end() && !it->second.ok())
      throw LawViolation(key + ": " + it->second.violations.front().law);
    return reemit(ws2, item.at("kind").get<std::string>(), item.at("name").get<std::string>());
  };
  if (j.value("kind", "") == "bundle") {
    json items = json::array();
    for (const auto& item : j.at("items")) items.push_back(one(item));
    emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  } else {
    emit(one(j), opt);
  }
  return 0;
}

int cmd_dualize(const Options& opt, const std::string& name) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  rio::Workspace ws2 = ws;
  json items = json::array();
  auto emit_cat = [&](CatPtr& opc, const std::string& base_of) {
    if (!ws2.category_name(opc).empty()) return;
    opc = renamed(opc, "op(" + base_of + ")");
    reg_category(ws2, opc, opc->name);
    items.push_back(rio::category_to_json(ws2, opc));
  };
  auto emit_fun = [&](EnrichedFunctor& f, const std::string& orig) {
    emit_cat(f.dom, ws.category_name(ws.functor(orig).dom));
    emit_cat(f.cod, ws.category_name(ws.functor(orig).cod));
    f.name = "op(" + orig + ")";
    reg_functor(ws2, f, f.name);
    items.push_back(rio::functor_to_json(ws2, f));
  };
  if (ws.categories.count(name)) {
    CatPtr opc = op_category(ws.category(name));
    emit_cat(opc, name);
  } else if (ws.functors.count(name)) {
    EnrichedFunctor f = op_functor(ws.functor(name));
    emit_fun(f, name);
  } else if (ws.monads.count(name)) {
    const RelativeMonad& T = ws.monad(name);
    RelativeComonad C = monad_to_op_comonad(T);
    C.name = "op(" + name + ")";
    std::string root;
    for (const auto& [n, g] : ws.functors)
      if (same_functor(g, T.j)) root = n;
    EnrichedFunctor i = C.i;
    emit_fun(i, root);
    C.i = i;
    items.push_back(rio::comonad_to_json(ws2, C));
  } else if (ws.comonads.count(name)) {
    const RelativeComonad& C = ws.comonad(name);
    RelativeMonad T = comonad_to_op_monad(C);
    T.name = "op(" + name + ")";
    std::string root;
    for (const auto& [n, g] : ws.functors)
      if (same_functor(g, C.i)) root = n;
    EnrichedFunctor j = T.j;
    emit_fun(j, root);
    T.j = j;
    items.push_back(rio::monad_to_json(ws2, T));
  } else if (ws.distributors.count(name)) {
    Distributor p = op_distributor(ws.distributor(name));
    p.name = "op(" + name + ")";
    emit_cat(p.left, ws.category_name(ws.distributor(name).right));
    emit_cat(p.right, ws.category_name(ws.distributor(name).left));
    items.push_back(rio::distributor_to_json(ws2, p));
  } else {
    throw MalformedTables("unresolved reference: " + name);
  }
  if (items.size() == 1) {
    emit(items[0], opt);
  } else {
    emit(json{{"items", items}, {"kind", "bundle"}}, opt);
  }
  return 0;
}

int cmd_certify(const Options& opt, const std::string& name, const std::string& what,
                std::vector<std::string> pool_names) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  const RelativeMonad& T = ws.monad(name);
  std::uint64_t budget = budget_of(opt, ws);
  if (pool_names.empty()) pool_names = ws.config.pool;
  std::vector<CatPtr> pool;
  std::vector<Distributor> chains;
  for (const std::string& pn : pool_names) {
    pool.push_back(ws.category(pn));
    chains.push_back(loose_identity(pool.back()));
  }
  if (what == "underlying") {
    std::uint64_t n = certify_underlying_uniqueness(T, budget);
    emit(verdict_json("underlying-uniqueness", n == 1, budget,
                      n == 1 ? "" : std::to_string(n) + " natural candidates"),
         opt);
    return n == 1 ? 0 : 1;
  }
  CertifiedVerdict v;
  if (what == "opalgebra-object") {
    v = check_opalgebra_object(T, kleisli(T).op, pool, chains, budget);
  } else {
    TAlgebra cand = em_category(T, budget).alg;
    v = check_algebra_object(T, cand, pool, chains, budget);
  }
  emit(verdict_json(what, v.ok, v.budget, v.failure), opt);
  return v.ok ? 0 : 1;
}

int cmd_check(const Options& opt, const std::string& what,
              const std::vector<std::string>& args) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  std::uint64_t budget = budget_of(opt, ws);
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw MalformedTables("check " + what + ": expected " + std::to_string(n) +
                            " arguments");
  };
  bool ok = false;
  std::string failure;
  if (what == "dense") {
    need(1);
    ok = is_dense(ws.functor(args[0]), budget);
  } else if (what == "ff") {
    need(1);
    ok = is_fully_faithful(ws.functor(args[0]), budget);
  } else if (what == "absolute") {
    need(5);
    if (!ws.forms.count(args[4]))
      throw MalformedTables("unresolved form reference: " + args[4]);
    ok = is_j_absolute(ws.functor(args[0]), ws.distributor(args[1]), ws.functor(args[2]),
                       ws.functor(args[3]), ws.forms.at(args[4]), budget);
  } else if (what == "colimit" || what == "limit") {
    need(4);
    const Distributor& w = ws.distributor(args[0]);
    const EnrichedFunctor& f = ws.functor(args[1]);
    const EnrichedFunctor& c = ws.functor(args[2]);
    const Form& mu = ws.forms.count(args[3])
                         ? ws.forms.at(args[3])
                         : throw MalformedTables("unresolved form reference: " + args[3]);
    CylinderCheck cc = what == "colimit" ? check_weighted_colimit(w, f, c, mu, budget)
                                         : check_weighted_limit(w, f, c, mu, budget);
    ok = cc.verdict;
    failure = cc.failure;
  } else {
    throw MalformedTables("unknown check: " + what);
  }
  emit(verdict_json(what, ok, budget, failure), opt);
  return ok ? 0 : 1;
}

int cmd_enumerate_monads(const Options& opt, const std::string& root, int max_card) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  std::uint64_t budget = budget_of(opt, ws);
  const EnrichedFunctor& j = ws.functor(root);
  const MonoidalBase& V = *j.cod->base;
  std::function<bool(const std::vector<int>&)> filter;
  if (max_card >= 0) {
    if (!V.set_like())
      throw MalformedTables("--max-card needs a set-like base");
    filter = [&](const std::vector<int>& obj) {
      for (int o : obj)
        if (static_cast<long long>(V.card(o)) > static_cast<long long>(max_card)) return false;
      return true;
    };
  }
  std::vector<RelativeMonad> all = enumerate_relative_monads(j, budget, filter);
  json items = json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i].name = "monad" + std::to_string(i);
    items.push_back(rio::monad_to_json(ws, all[i]));
  }
  emit(json{{"budget", budget}, {"count", all.size()}, {"items", items},
            {"kind", "enumeration"}, {"what", "monads"}},
       opt);
  return 0;
}

int cmd_enumerate_morphisms(const Options& opt, const std::string& from,
                            const std::string& to) {
  rio::Workspace ws = rio::load_workspace(opt.workspace);
  require_valid(ws);
  std::uint64_t budget = budget_of(opt, ws);
  std::vector<MonadMorphism> all =
      enumerate_monad_morphisms(ws.monad(from), ws.monad(to), budget);
  json items = json::array();
  for (const MonadMorphism& m : all) items.push_back(json{{"tau", rio::mors_to_json(m.tau)}});
  emit(json{{"budget", budget}, {"count", all.size()}, {"items", items},
            {"kind", "enumeration"}, {"what", "morphisms"}},
       opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relkit: finite enriched category theory verification kernel"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("-w,--workspace", opt.workspace, "workspace directory of JSON files");
  app.add_option("-b,--budget", opt.budget, "enumeration budget (0: workspace default)");
  app.add_option("-o,--out", opt.out, "write output to a file instead of stdout");

  auto* validate = app.add_subcommand("validate", "validate every object in the workspace");

  std::string arg1, arg2, arg3;
  auto* kleisli_cmd = app.add_subcommand("kleisli", "Kleisli category and inclusion");
  kleisli_cmd->add_option("monad", arg1)->required();
  auto* em_cmd = app.add_subcommand("em", "Eilenberg-Moore category and projection");
  em_cmd->add_option("monad", arg1)->required();
  auto* cokl_cmd = app.add_subcommand("cokleisli", "co-Kleisli category and inclusion");
  cokl_cmd->add_option("comonad", arg1)->required();
  auto* coem_cmd = app.add_subcommand("coem", "coalgebra category and projection");
  coem_cmd->add_option("comonad", arg1)->required();
  auto* induce_cmd = app.add_subcommand("induce", "monad induced by an adjunction");
  induce_cmd->add_option("adjunction", arg1)->required();
  auto* compose_cmd = app.add_subcommand("compose", "compose two relative adjunctions");
  compose_cmd->add_option("inner", arg1)->required();
  compose_cmd->add_option("outer", arg2)->required();
  compose_cmd->add_option("lprime", arg3)->required();
  auto* push_cmd = app.add_subcommand("pushforward", "push a monad along an adjunction");
  push_cmd->add_option("outer", arg1)->required();
  push_cmd->add_option("lprime", arg2)->required();
  push_cmd->add_option("monad", arg3)->required();

  std::string monoid_form, compact, file;
  auto* tr_cmd = app.add_subcommand("translate", "convert or canonically re-emit objects");
  tr_cmd->add_option("--monoid-form", monoid_form, "monad name: emit its monoid form");
  tr_cmd->add_option("--compact", compact, "monoid_monad file: emit the compact form");
  tr_cmd->add_option("file", file, "JSON file to normalize against the workspace");

  auto* dual_cmd = app.add_subcommand("dualize", "dual of a named object");
  dual_cmd->add_option("name", arg1)->required();

  std::string certify_what = "opalgebra-object";
  std::vector<std::string> pool_names;
  auto* cert_cmd = app.add_subcommand("certify", "bounded universal-property certification");
  cert_cmd->add_option("monad", arg1)->required();
  cert_cmd->add_option("--what", certify_what,
                       "opalgebra-object | algebra-object | underlying");
  cert_cmd->add_flag_callback("--opalgebra-object",
                              [&] { certify_what = "opalgebra-object"; });
  cert_cmd->add_flag_callback("--algebra-object", [&] { certify_what = "algebra-object"; });
  cert_cmd->add_flag_callback("--underlying", [&] { certify_what = "underlying"; });
  cert_cmd->add_option("--pool", pool_names, "grading pool categories");

  std::vector<std::string> check_args;
  std::string check_what;
  auto* check_cmd = app.add_subcommand("check", "formal-theory predicates");
  check_cmd->add_option("what", check_what, "colimit | limit | dense | ff | absolute")
      ->required();
  check_cmd->add_option("args", check_args, "object names");

  int max_card = -1;
  auto* enum_cmd = app.add_subcommand("enumerate", "exhaustive bounded enumeration");
  auto* enum_monads = enum_cmd->add_subcommand("monads", "all monads on a root");
  enum_monads->add_option("--root", arg1)->required();
  enum_monads->add_option("--max-card", max_card, "carrier cardinality bound");
  auto* enum_morphs = enum_cmd->add_subcommand("morphisms", "all monad morphisms");
  enum_morphs->add_option("--from", arg2)->required();
  enum_morphs->add_option("--to", arg3)->required();
  enum_cmd->require_subcommand(1);

  // Let global options (--workspace, --budget, --out) appear after the
  // subcommand name as well.
  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
    s->fallthrough();
    for (CLI::App* t : s->get_subcommands([](const CLI::App*) { return true; }))
      t->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(opt);
    if (*kleisli_cmd) return cmd_kleisli(opt, arg1);
    if (*em_cmd) return cmd_em(opt, arg1);
    if (*cokl_cmd) return cmd_cokleisli(opt, arg1);
    if (*coem_cmd) return cmd_coem(opt, arg1);
    if (*induce_cmd) return cmd_induce(opt, arg1);
    if (*compose_cmd) return cmd_compose(opt, arg1, arg2, arg3);
    if (*push_cmd) return cmd_pushforward(opt, arg1, arg2, arg3);
    if (*tr_cmd) return cmd_translate(opt, monoid_form, compact, file);
    if (*dual_cmd) return cmd_dualize(opt, arg1);
    if (*cert_cmd) return cmd_certify(opt, arg1, certify_what, pool_names);
    if (*check_cmd) return cmd_check(opt, check_what, check_args);
    if (*enum_monads) return cmd_enumerate_monads(opt, arg1, max_card);
    if (*enum_morphs) return cmd_enumerate_morphisms(opt, arg2, arg3);
  } catch (const MalformedTables& e) {
    std::cerr << rio::dump(json{{"error", e.what()}, {"kind", "error"}});
    return 2;
  } catch (const RelkitError& e) {
    std::cerr << rio::dump(json{{"error", e.what()}, {"kind", "error"}});
    return 1;
  } catch (const std::exception& e) {
    std::cerr << rio::dump(json{{"error", e.what()}, {"kind", "error"}});
    return 2;
  }
  return 2;
}
