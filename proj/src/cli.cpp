#include "frobstab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobstab/catalog.hpp"
#include "frobstab/frobenius_stable.hpp"
#include "frobstab/json_io.hpp"

namespace frobstab {

using nlohmann::json;

namespace {

constexpr int kNegative = 2;

struct Report {
  json data;
  std::string text;
  int exit_code = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

LoadedContext load_context(const std::string& arg) {
  if (is_file(arg)) return context_from_json(read_json_file(arg), arg);
  return builtin_loaded_context(arg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// arg := term ('+' term)* ; term := file | syz:term | cosyz:term | built-in name
ModuleRep load_module(const LoadedContext& lc, const std::string& arg) {
  if (is_file(arg)) return module_from_json(lc, read_json_file(arg));
  const auto terms = split(arg, '+');
  if (terms.size() > 1) {
    ModuleRep sum = load_module(lc, terms[0]);
    for (std::size_t k = 1; k < terms.size(); ++k) sum = direct_sum(sum, load_module(lc, terms[k])).sum;
    return sum;
  }
  if (arg.rfind("syz:", 0) == 0) return relative_syzygy(lc.context, load_module(lc, arg.substr(4))).module;
  if (arg.rfind("cosyz:", 0) == 0) return relative_cosyzygy(lc.context, load_module(lc, arg.substr(6))).module;
  return builtin_module(lc.context, arg);
}

// eta:X  eps:X  id:X  zero:X:Y  incl:X:Y  proj:X:Y  or a map file
ModuleMap load_map(const LoadedContext& lc, const std::string& arg) {
  const AdjointContext& ctx = lc.context;
  if (is_file(arg)) {
    const json j = read_json_file(arg);
    const auto dir = std::filesystem::path(arg).parent_path();
    auto module_ref = [&](const char* key) {
      if (!j.contains(key)) throw FormatError(std::string("map is missing \"") + key + "\"");
      const json& m = j.at(key);
      if (m.is_object()) return module_from_json(lc, m);
      std::string ref = m.get<std::string>();
      if (!is_file(ref) && is_file((dir / ref).string())) ref = (dir / ref).string();
      return load_module(lc, ref);
    };
    const ModuleRep src = module_ref("source");
    const ModuleRep tgt = module_ref("target");
    if (!j.contains("matrix")) throw FormatError("map is missing \"matrix\"");
    return ModuleMap(src, tgt, matrix_from_json(j.at("matrix"), ctx.modulus(), tgt.dim(), src.dim()));
  }
  const auto colon = arg.find(':');
  if (colon == std::string::npos) throw FormatError("unknown map '" + arg + "'");
  const std::string kind = arg.substr(0, colon);
  const std::string rest = arg.substr(colon + 1);
  if (kind == "eta") return ctx.unit(load_module(lc, rest));
  if (kind == "eps") return ctx.counit(load_module(lc, rest));
  if (kind == "id") return ModuleMap::identity(load_module(lc, rest));
  const auto parts = split(rest, ':');
  if (parts.size() != 2) throw FormatError("map '" + arg + "' needs two modules");
  const ModuleRep a = load_module(lc, parts[0]);
  const ModuleRep b = load_module(lc, parts[1]);
  if (kind == "zero") return ModuleMap::zero(a, b);
  if (kind == "incl") return direct_sum(a, b).inclusion_first;
  if (kind == "proj") return direct_sum(a, b).projection_first;
  throw FormatError("unknown map kind '" + kind + "'");
}

json map_json(const ModuleMap& f) {
  return json{{"source_dim", f.source().dim()}, {"target_dim", f.target().dim()},
              {"matrix", matrix_to_json(f.matrix())}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json context_json(const LoadedContext& lc) {
  const AdjointContext& ctx = lc.context;
  json j{{"name", ctx.name()}, {"p", ctx.modulus()}, {"index", ctx.index()}};
  if (ctx.is_group_induction()) {
    j["kind"] = "group";
    j["group_order"] = ctx.subgroup().parent().order();
    j["subgroup_order"] = ctx.subgroup().order();
  } else {
    j["kind"] = "algebra";
    j["algebra_dim"] = ctx.algebra().dim();
    j["frobenius_form"] = ctx.frobenius_form();
  }
  return j;
}

Report cmd_define(const LoadedContext& lc, const std::vector<std::string>& modules) {
  Report r;
  r.data["context"] = context_json(lc);
  r.data["modules"] = json::array();
  std::ostringstream t;
  const auto& c = r.data["context"];
  t << "context " << lc.context.name() << ": " << c["kind"].get<std::string>() << ", p = " << lc.context.modulus()
    << ", index " << lc.context.index() << "\n";
  if (!lc.context.is_group_induction()) {
    t << "Frobenius form:";
    for (auto v : lc.context.frobenius_form()) t << " " << v;
    t << "\n";
  }
  for (const auto& name : modules) {
    const ModuleRep x = load_module(lc, name);
    r.data["modules"].push_back(json{{"name", name}, {"dim", x.dim()}});
    t << "module " << name << ": dim " << x.dim() << "\n";
  }
  r.text = t.str();
  return r;
}

Report cmd_relproj(const LoadedContext& lc, const std::string& name) {
  Report r;
  const ModuleRep x = load_module(lc, name);
  const auto s = is_relatively_projective(lc.context, x);
  r.data = json{{"module", name}, {"dim", x.dim()}, {"relatively_projective", s.has_value()}};
  if (s) {
    r.data["section"] = map_json(*s);
    r.text = name + ": relatively projective (counit splits)\n";
  } else {
    r.text = name + ": not relatively projective\n";
    r.exit_code = kNegative;
  }
  return r;
}

Report cmd_stablehom(const LoadedContext& lc, const std::string& xn, const std::string& yn) {
  Report r;
  const StableHom sh = stable_hom(lc.context, load_module(lc, xn), load_module(lc, yn));
  json reps = json::array();
  for (const auto& f : sh.quotient_representatives) reps.push_back(matrix_to_json(f.matrix()));
  r.data = json{{"dim_hom", sh.full_hom_basis.size()},
                {"dim_factoring", sh.factoring_subspace_basis.size()},
                {"dim_stable", sh.stable_dimension},
                {"representatives", reps}};
  std::ostringstream t;
  t << "dim Hom(" << xn << ", " << yn << ") = " << sh.full_hom_basis.size() << "\n"
    << "dim factoring = " << sh.factoring_subspace_basis.size() << "\n"
    << "dim stable = " << sh.stable_dimension << "\n";
  r.text = t.str();
  return r;
}

Report cmd_syzygy(const LoadedContext& lc, const std::string& name, bool co) {
  Report r;
  const ModuleRep x = load_module(lc, name);
  json mod;
  ModuleMap map = co ? relative_cosyzygy(lc.context, x).deflation : relative_syzygy(lc.context, x).inflation;
  const ModuleRep& m = co ? map.target() : map.source();
  mod = module_to_json(m);
  r.data = json{{"dim", m.dim()}, {"action", mod["action"]}, {"map", matrix_to_json(map.matrix())}};
  r.text = std::string(co ? "cosyzygy" : "syzygy") + " of " + name + ": dim " + std::to_string(m.dim()) + "\n";
  return r;
}

Report cmd_triangle(const LoadedContext& lc, const std::string& fname) {
  Report r;
  const Triangle t = happel_triangle(lc.context, load_map(lc, fname));
  const bool ok = triangle_composites_factor(lc.context, t);
  r.data = json{{"dims", {t.x().dim(), t.y().dim(), t.cone().dim(), t.shift().dim()}},
                {"cone", module_to_json(t.cone())},
                {"to_cone", matrix_to_json(t.to_cone.matrix())},
                {"to_shift", matrix_to_json(t.to_shift.matrix())},
                {"shifted_base", matrix_to_json(t.shifted_base.matrix())},
                {"composites_factor", ok}};
  std::ostringstream s;
  s << "triangle dims X=" << t.x().dim() << " Y=" << t.y().dim() << " cone=" << t.cone().dim()
    << " shift=" << t.shift().dim() << "\ncomposites factor through relatively projectives: " << yes_no(ok) << "\n";
  r.text = s.str();
  if (!ok) r.exit_code = kNegative;
  return r;
}

Report cmd_schanuel(const LoadedContext& lc, const std::string& a, const std::string& b) {
  Report r;
  const auto iso = schanuel_compare(lc.context, load_map(lc, a), load_map(lc, b));
  r.data = json{{"found", iso.has_value()}};
  if (iso) {
    r.data["iso"] = map_json(*iso);
    r.text = "isomorphism found, dim " + std::to_string(iso->source().dim()) + "\n";
  } else {
    r.text = "no isomorphism found\n";
    r.exit_code = kNegative;
  }
  return r;
}

Report cmd_stable_iso(const LoadedContext& lc, const std::string& xn, const std::string& yn,
                      std::uint64_t seed, std::uint64_t budget) {
  Report r;
  const auto v = is_stably_isomorphic(lc.context, load_module(lc, xn), load_module(lc, yn), seed, budget);
  r.data = json{{"verdict", to_string(v.kind)}, {"exhaustive", v.exhaustive}, {"candidates", v.candidates}};
  if (v.f) r.data["f"] = matrix_to_json(v.f->matrix());
  if (v.g) r.data["g"] = matrix_to_json(v.g->matrix());
  r.text = xn + " vs " + yn + ": " + to_string(v.kind) + "\n";
  if (v.kind != StableIsoVerdict::Kind::yes) r.exit_code = kNegative;
  return r;
}

Report cmd_audit(const LoadedContext& lc, std::uint64_t seed, std::size_t samples, std::size_t max_dim) {
  Report r;
  AuditOptions o;
  o.seed = seed;
  o.samples = samples;
  o.max_dim = max_dim;
  const AuditReport a = axiom_audit(lc.context, o);
  json axioms = json::array();
  std::ostringstream t;
  for (const auto& x : a.axioms) {
    axioms.push_back(json{{"axiom", x.axiom}, {"checked", x.checked}, {"failed", x.failed},
                          {"failure_seeds", x.failure_seeds}});
    t << x.axiom << ": " << x.checked << " checked, " << x.failed << " failed\n";
  }
  r.data = json{{"samples", samples}, {"seed", seed}, {"axioms", axioms}, {"failures", a.failures()}};
  t << a.failures() << " failures\n";
  r.text = t.str();
  if (!a.passed()) r.exit_code = kNegative;
  return r;
}

Report cmd_adjunction(const LoadedContext& lc, std::uint64_t seed, std::size_t samples) {
  Report r;
  ModuleSampler sampler(lc.context, seed);
  std::vector<ModuleRep> ambient, base;
  for (std::size_t k = 0; k < samples; ++k) {
    ambient.push_back(sampler.ambient_module());
    base.push_back(sampler.base_module());
  }
  const TriangleReport t = check_triangle_identities(lc.context, ambient, base);
  json v = json::array();
  for (const auto& x : t.violations) v.push_back(json{{"identity", x.identity}, {"module", x.module}});
  r.data = json{{"checked", t.checked}, {"violations", v}};
  r.text = std::to_string(t.checked) + " identities checked, " + std::to_string(t.violations.size()) +
           " violations\n";
  if (!t.ok()) r.exit_code = kNegative;
  return r;
}

Report cmd_frobenius(const std::string& arg, std::uint64_t seed) {
  Report r;
  std::shared_ptr<const AlgebraData> a;
  if (is_file(arg)) {
    json j = read_json_file(arg);
    a = std::make_shared<const AlgebraData>(algebra_from_json(j.contains("algebra") ? j.at("algebra") : j));
  } else {
    a = builtin_algebra(arg.rfind("A:", 0) == 0 ? arg.substr(2) : arg);
  }
  const auto form = is_frobenius_algebra(*a, seed);
  const bool exhaustive = saturating_power(a->modulus(), a->dim()) <= kDefaultExhaustiveThreshold;
  r.data = json{{"dim", a->dim()}, {"p", a->modulus()}, {"frobenius", form.has_value()}, {"exhaustive", exhaustive}};
  if (form) {
    r.data["form"] = *form;
    r.data["gram"] = matrix_to_json(frobenius_gram(*a, *form));
    std::ostringstream t;
    t << "Frobenius; form:";
    for (auto v : *form) t << " " << v;
    r.text = t.str() + "\n";
  } else {
    r.text = std::string("no nondegenerate form found") + (exhaustive ? " (exhaustive)" : "") + "\n";
    r.exit_code = kNegative;
  }
  return r;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult result;
  CLI::App app{"Relative stable categories of group and Frobenius algebra representations over GF(p)",
               "frobstab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultStableBudget;
  bool as_json = false;
  std::string out_path;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--budget", budget, "Candidate budget for stable-iso")->capture_default_str();
  app.add_flag("--json", as_json, "Emit JSON");
  app.add_option("--out", out_path, "Write the report to a file");

  std::string ctx_name, a, b;
  std::vector<std::string> modules;
  std::size_t audit_samples = 200, adj_samples = 20, max_dim = 8;
  std::function<Report()> action;

  auto with_ctx = [&](CLI::App* sub) {
    sub->add_option("context", ctx_name, "Built-in context name or context JSON file")->required();
  };
  auto* define = app.add_subcommand("define", "Load a context and modules, report dimensions");
  with_ctx(define);
  define->add_option("modules", modules, "Modules");
  define->callback([&] { action = [&] { return cmd_define(load_context(ctx_name), modules); }; });

  auto* relproj = app.add_subcommand("relproj", "Higman criterion: does the counit split?");
  with_ctx(relproj);
  relproj->add_option("module", a)->required();
  relproj->callback([&] { action = [&] { return cmd_relproj(load_context(ctx_name), a); }; });

  auto* stablehom = app.add_subcommand("stablehom", "Stable Hom modulo relatively projective maps");
  with_ctx(stablehom);
  stablehom->add_option("source", a)->required();
  stablehom->add_option("target", b)->required();
  stablehom->callback([&] { action = [&] { return cmd_stablehom(load_context(ctx_name), a, b); }; });

  for (bool co : {false, true}) {
    auto* sub = app.add_subcommand(co ? "cosyzygy" : "syzygy", co ? "Cokernel of the unit" : "Kernel of the counit");
    with_ctx(sub);
    sub->add_option("module", a)->required();
    sub->callback([&, co] { action = [&, co] { return cmd_syzygy(load_context(ctx_name), a, co); }; });
  }

  auto* triangle = app.add_subcommand("triangle", "Happel triangle of a map");
  with_ctx(triangle);
  triangle->add_option("map", a)->required();
  triangle->callback([&] { action = [&] { return cmd_triangle(load_context(ctx_name), a); }; });

  auto* schanuel = app.add_subcommand("schanuel", "Compare two embeddings into relatively projectives");
  with_ctx(schanuel);
  schanuel->add_option("first", a)->required();
  schanuel->add_option("second", b)->required();
  schanuel->callback([&] { action = [&] { return cmd_schanuel(load_context(ctx_name), a, b); }; });

  auto* iso = app.add_subcommand("stable-iso", "Search for a stable isomorphism");
  with_ctx(iso);
  iso->add_option("first", a)->required();
  iso->add_option("second", b)->required();
  iso->callback([&] { action = [&] { return cmd_stable_iso(load_context(ctx_name), a, b, seed, budget); }; });

  auto* audit = app.add_subcommand("audit", "Sampled audit of the exact-category axioms");
  with_ctx(audit);
  audit->add_option("--samples", audit_samples, "Sampled sequences")->capture_default_str();
  audit->add_option("--max-dim", max_dim, "Dimension bound for sampled modules")->capture_default_str();
  audit->callback([&] { action = [&] { return cmd_audit(load_context(ctx_name), seed, audit_samples, max_dim); }; });

  auto* adj = app.add_subcommand("adjunction-check", "Triangle identities on sampled modules");
  with_ctx(adj);
  adj->add_option("--samples", adj_samples, "Sampled modules per side")->capture_default_str();
  adj->callback([&] { action = [&] { return cmd_adjunction(load_context(ctx_name), seed, adj_samples); }; });

  auto* frob = app.add_subcommand("frobenius-algebra", "Search for a nondegenerate Frobenius form");
  frob->add_option("algebra", a, "Built-in algebra (kC2:p2, x3:p3, T2:p2) or algebra JSON file")->required();
  frob->callback([&] { action = [&] { return cmd_frobenius(a, seed); }; });

  std::vector<const char*> argv{"frobstab"};
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? 0 : 1;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    const Report r = action();
    std::string text = as_json ? r.data.dump(2) + "\n" : r.text;
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw FormatError("cannot write " + out_path);
      f << text;
    } else {
      result.out = std::move(text);
    }
    result.exit_code = r.exit_code;
  } catch (const std::exception& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = 1;
  }
  return result;
}

}  // namespace frobstab
