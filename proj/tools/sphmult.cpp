// Command-line driver: runs the verification engines over scenario files and
// emits deterministic JSON reports (identical bytes for identical inputs and
// seeds, except the elapsed_ms fields).
//
// Exit codes: 0 every requested verdict holds, 2 at least one verified claim
// fails, 1 operational trouble (bad input, resource caps, io).

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphmult/estimator.hpp"
#include "sphmult/mult.hpp"
#include "sphmult/periodicity.hpp"
#include "sphmult/reduction.hpp"
#include "sphmult/scenario_io.hpp"

namespace {

using namespace sphmult;
using sio::json;

constexpr const char* kEngineName = "sphmult";
constexpr const char* kEngineVersion = "1.0.0";

constexpr int kExitPass = 0;
constexpr int kExitOperational = 1;
constexpr int kExitViolation = 2;

struct Options {
  std::string scenario_path;
  std::string suite_dir;
  u64 q = 0;         // 0 = keep the file's value
  u32 max_ext = 0;   // 0 = keep the file's value
  std::string ell;   // empty = file default or auto; "auto"; or a prime
  std::string tol;   // rational string; empty = file default or 1/8
  u64 seed = 0;
  bool seed_given = false;
  int selector = -1;
  std::string out_path;  // empty = stdout
  std::string format = "json";
};

struct Effective {
  Scenario s;
  u64 seed = 1;
  BigRat tol = BigRat(1, 8);
  std::optional<u64> ell;  // nullopt = choose automatically
};

Effective resolve(const sio::ScenarioFile& sf, const Options& o) {
  Effective eff;
  const Scenario& base = sf.scenario;
  u64 q = o.q ? o.q : base.q;
  u32 max_ext = o.max_ext ? o.max_ext : base.max_ext;
  eff.s = Scenario::make(base.name, base.group, base.space, q, max_ext,
                         base.notes);
  eff.s.witness = base.witness;

  if (o.seed_given)
    eff.seed = o.seed;
  else if (sf.defaults.seed)
    eff.seed = *sf.defaults.seed;

  if (!o.tol.empty())
    eff.tol = parse_rat(o.tol);
  else if (sf.defaults.tol)
    eff.tol = *sf.defaults.tol;
  if (eff.tol <= 0) throw std::invalid_argument("tol must be positive");

  if (!o.ell.empty()) {
    if (o.ell != "auto") eff.ell = std::stoull(o.ell);
  } else if (sf.defaults.ell) {
    eff.ell = *sf.defaults.ell;
  }
  if (eff.ell && !is_prime_u64(*eff.ell))
    throw std::invalid_argument("ell must be prime: " +
                                std::to_string(*eff.ell));
  return eff;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  u64 ms() const {
    auto dt = std::chrono::steady_clock::now() - t0;
    return u64(
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
  }
};

json rat_list(const std::vector<BigRat>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rat_str(r));
  return out;
}

EllContext make_ctx(const GroupTable& G, u64 omega_max, const Effective& eff) {
  if (eff.ell) return context_at(G, *eff.ell, omega_max, eff.seed);
  return choose_ell(G, omega_max, eff.seed);
}

json header(const char* command, const Effective& eff) {
  json j;
  j["engine"] = kEngineName;
  j["version"] = kEngineVersion;
  j["command"] = command;
  j["scenario"] = sio::scenario_to_json(eff.s);
  j["seed"] = eff.seed;
  return j;
}

void emit(const json& j, const Options& o) {
  if (o.out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    sio::write_json_atomic(j, o.out_path);
}

bool all_true(const json& verdicts) {
  for (const auto& item : verdicts.items())
    if (!item.value().get<bool>()) return false;
  return true;
}

// --- result blocks, shared between single commands and verify-all -----------

json chartab_block(const GroupTable& G, const CharTable& t, json& verdicts) {
  json j;
  j["group_order"] = G.size();
  j["class_count"] = G.classes().count();
  j["ell"] = t.ctx.ell;
  j["zeta"] = t.ctx.zeta;
  j["exponent"] = t.ctx.exponent;
  j["degrees"] = t.degrees;
  j["combos_used"] = t.combos_used;

  u64 sumsq = 0;
  for (u64 d : t.degrees) sumsq += d * d;
  j["sum_sq_degrees"] = sumsq;
  bool ortho = true;
  for (u32 i = 0; i < t.count() && ortho; ++i)
    for (u32 k = i; k < t.count() && ortho; ++k)
      ortho = inner_product_mod(G, t.ctx.ell, t.rows[i], t.rows[k]) ==
              (i == k ? 1u : 0u);
  verdicts["sum_sq_degrees_is_group_order"] = (sumsq == G.size());
  verdicts["rows_orthonormal"] = ortho;
  return j;
}

json mult_block(const GroupTable& G, const SpaceInstance& X, const CharTable& t,
                json& verdicts) {
  json j;
  auto v = multiplicity_vector(G, X, t);
  j["omega_size"] = v.omega_size;
  j["multiplicities"] = v.m;
  j["degrees"] = t.degrees;
  j["mu_max"] = v.mu_max;
  j["orbit_count"] = v.orbit_count;

  u64 weighted = 0, sumsq = 0;
  for (u32 i = 0; i < t.count(); ++i) {
    weighted += v.m[i] * t.degrees[i];
    sumsq += v.m[i] * v.m[i];
  }
  j["weighted_degree_sum"] = weighted;
  j["sum_sq_multiplicities"] = sumsq;

  const u64 ell = t.ctx.ell;
  ClassFn perm = permutation_character(G, X, ell);
  u64 burnside = burnside_orbits(G, X);
  j["burnside_orbits"] = burnside;
  verdicts["weighted_degree_sum_is_omega"] = (weighted == v.omega_size);
  verdicts["rank_identity"] =
      (inner_product_mod(G, ell, perm, perm) == sumsq % ell);
  verdicts["burnside_matches_trivial_row"] = (burnside == v.orbit_count);
  verdicts["frobenius_trivial_row"] =
      frobenius_identity_check(G, X, t.rows[t.trivial_row()], ell);
  return j;
}

json estimate_block(const ComponentEstimate& est, json& verdicts) {
  json j;
  j["K"] = est.K;
  j["tol"] = rat_str(est.tol);
  j["ratios"] = rat_list(est.ratios);
  json orbits = json::array();
  for (const auto& smp : est.trace) {
    json o;
    o["k"] = smp.k;
    o["orbits"] = smp.orbits;
    o["route"] = smp.route;
    orbits.push_back(o);
  }
  j["borel_orbits"] = orbits;
  j["c_hat"] = est.c_hat;
  j["converged"] = est.converged;
  j["spherical"] = est.spherical;
  verdicts["estimator_converged"] = est.converged;
  verdicts["spherical_screen"] = est.spherical;
  return j;
}

json periodicity_block(const SequenceVerdict& sv, int selector,
                       json& verdicts) {
  json j;
  j["selector"] = selector;
  j["values"] = sv.values;
  j["verdict"] = sv.verdict;
  if (sv.period)
    j["period"] = *sv.period;
  else
    j["period"] = nullptr;
  j["preperiod"] = sv.preperiod;
  j["limsup_witness"] = sv.limsup_witness;
  verdicts["integer_valued"] = sv.is_integer_valued;
  verdicts["eventually_periodic"] = (sv.verdict == "periodic");
  verdicts["first_value_le_limsup"] = sv.f1_le_limsup;
  return j;
}

json link_json(const ChainLink& l) {
  json j;
  j["name"] = l.name;
  j["holds"] = l.holds;
  j["detail"] = l.detail;
  return j;
}

json reduce_block(const ChainReport& rep, json& verdicts) {
  json j;
  j["trivial_witness"] = rep.trivial;

  json iso;
  iso["mu_target"] = rep.iso.mu_target;
  iso["mu_source"] = rep.iso.mu_source;
  iso["index"] = rep.iso.index;
  iso["slack"] = rep.iso.slack;
  iso["max_constituents"] = rep.iso.max_constituents;
  iso["constituents_ok"] = rep.iso.constituents_ok;
  iso["holds"] = rep.iso.holds;
  j["restriction"] = iso;

  json rad;
  rad["mu_sub"] = rep.rad.mu_sub;
  rad["mu_induced"] = rep.rad.mu_induced;
  rad["index"] = rep.rad.index;
  rad["center_order"] = rep.rad.center_order;
  rad["product_order"] = rep.rad.product_order;
  rad["induced_size"] = rep.rad.induced_size;
  rad["slack"] = rep.rad.slack;
  rad["size_identity"] = rep.rad.size_identity;
  rad["holds"] = rep.rad.holds;
  j["induction"] = rad;

  json idx;
  idx["image_index"] = rep.index_bound.image_index;
  idx["declared_pi0"] = rep.index_bound.declared_pi0;
  idx["holds"] = rep.index_bound.holds;
  j["index_bound"] = idx;

  json d;
  d["d_value"] = rep.d.d_value;
  d["scheme_kernel_order"] = rep.d.scheme_kernel_order;
  d["pi0_intersection"] = rep.d.pi0_intersection;
  d["kernel_rational"] = rep.d.kernel_rational;
  d["kernel_extension"] = rep.d.kernel_extension;
  d["intersection_rational"] = rep.d.intersection_rational;
  d["factorization_extension"] = rep.d.factorization_extension;
  j["witness_constant"] = d;

  j["ratios_covering"] = rat_list(rep.ratios_prime);
  j["ratios_induced"] = rat_list(rep.ratios_induced);
  j["c_covering"] = rep.c_prime;
  j["c_induced"] = rep.c_induced;
  j["c_hat"] = rep.base.c_hat;
  j["mu_base"] = rep.mu_base;

  json links = json::array();
  for (const auto& l : rep.links) {
    links.push_back(link_json(l));
    verdicts["link_" + l.name] = l.holds;
  }
  j["links"] = links;
  verdicts["chain_all_links"] = rep.all;
  return j;
}

// --- subcommands -------------------------------------------------------------

int finish(json& j, const json& verdicts, const Timer& tm, const Options& o) {
  j["verdicts"] = verdicts;
  bool ok = all_true(verdicts);
  j["overall"] = ok;
  j["elapsed_ms"] = tm.ms();
  emit(j, o);
  return ok ? kExitPass : kExitViolation;
}

int cmd_chartab(const Options& o) {
  Timer tm;
  auto eff = resolve(sio::load_scenario_file(o.scenario_path), o);
  FieldTower tower(u32(eff.s.p));
  Instance inst = instantiate(eff.s, tower, 1, true);
  EllContext ctx = make_ctx(*inst.group, inst.group->size(), eff);
  CharTable t = character_table(*inst.group, ctx);

  json j = header("chartab", eff);
  json verdicts;
  j["results"]["character_table"] = chartab_block(*inst.group, t, verdicts);
  return finish(j, verdicts, tm, o);
}

int cmd_mult(const Options& o) {
  Timer tm;
  auto eff = resolve(sio::load_scenario_file(o.scenario_path), o);
  FieldTower tower(u32(eff.s.p));
  Instance inst = instantiate(eff.s, tower, 1, true);
  u64 omega_max = std::max<u64>(inst.space->size(), inst.group->size());
  EllContext ctx = make_ctx(*inst.group, omega_max, eff);
  CharTable t = character_table(*inst.group, ctx);

  json j = header("mult", eff);
  json verdicts;
  j["results"]["character_table"] = chartab_block(*inst.group, t, verdicts);
  j["results"]["multiplicity"] =
      mult_block(*inst.group, *inst.space, t, verdicts);
  return finish(j, verdicts, tm, o);
}

int cmd_bound(const Options& o) {
  Timer tm;
  auto eff = resolve(sio::load_scenario_file(o.scenario_path), o);
  FieldTower tower(u32(eff.s.p));
  Instance inst = instantiate(eff.s, tower, 1, true);
  u64 omega_max = std::max<u64>(inst.space->size(), inst.group->size());
  EllContext ctx = make_ctx(*inst.group, omega_max, eff);
  CharTable t = character_table(*inst.group, ctx);

  json j = header("bound", eff);
  json verdicts;
  j["results"]["character_table"] = chartab_block(*inst.group, t, verdicts);
  json mult = mult_block(*inst.group, *inst.space, t, verdicts);
  j["results"]["multiplicity"] = mult;
  ComponentEstimate est =
      component_estimate(eff.s, tower, eff.s.max_ext, eff.tol);
  j["results"]["estimate"] = estimate_block(est, verdicts);
  verdicts["mu_max_le_c_hat"] = mult["mu_max"].get<u64>() <= est.c_hat;
  return finish(j, verdicts, tm, o);
}

int cmd_periodicity(const Options& o) {
  Timer tm;
  auto eff = resolve(sio::load_scenario_file(o.scenario_path), o);
  FieldTower tower(u32(eff.s.p));
  SequenceVerdict sv = multiplicity_sequence(eff.s, tower, eff.s.max_ext,
                                             o.selector, u32(eff.seed));
  json j = header("periodicity", eff);
  json verdicts;
  j["results"]["sequence"] = periodicity_block(sv, o.selector, verdicts);
  return finish(j, verdicts, tm, o);
}

int cmd_reduce(const Options& o) {
  Timer tm;
  auto eff = resolve(sio::load_scenario_file(o.scenario_path), o);
  if (!eff.s.witness)
    throw std::invalid_argument("scenario \"" + eff.s.name +
                                "\" carries no witness block");
  FieldTower tower(u32(eff.s.p));
  u32 k_base = std::min<u32>(eff.s.max_ext, 4);
  ChainReport rep = check_main_chain(eff.s, tower, k_base, 2, eff.seed);

  json j = header("reduce", eff);
  json verdicts;
  j["results"]["base_estimate"] = estimate_block(rep.base, verdicts);
  j["results"]["reduction"] = reduce_block(rep, verdicts);
  return finish(j, verdicts, tm, o);
}

int cmd_verify_all(const Options& o) {
  Timer tm;
  std::vector<std::filesystem::path> files;
  {
    std::error_code ec;
    std::filesystem::directory_iterator it(o.suite_dir, ec);
    if (ec)
      throw std::invalid_argument("cannot read suite directory: " +
                                  o.suite_dir);
    for (const auto& ent : it)
      if (ent.path().extension() == ".json") files.push_back(ent.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::invalid_argument("no scenario files in " + o.suite_dir);

  json j;
  j["engine"] = kEngineName;
  j["version"] = kEngineVersion;
  j["command"] = "verify-all";
  j["suite"] = o.suite_dir;
  json rows = json::array();
  bool ok_all = true;

  for (const auto& f : files) {
    Timer stm;
    auto eff = resolve(sio::load_scenario_file(f.string()), o);
    json row;
    row["file"] = f.filename().string();
    row["scenario"] = sio::scenario_to_json(eff.s);
    row["seed"] = eff.seed;
    json verdicts;

    FieldTower tower(u32(eff.s.p));
    Instance inst = instantiate(eff.s, tower, 1, true);
    u64 omega_max = std::max<u64>(inst.space->size(), inst.group->size());
    EllContext ctx = make_ctx(*inst.group, omega_max, eff);
    CharTable t = character_table(*inst.group, ctx);
    row["results"]["character_table"] =
        chartab_block(*inst.group, t, verdicts);
    json mult = mult_block(*inst.group, *inst.space, t, verdicts);
    row["results"]["multiplicity"] = mult;
    ComponentEstimate est =
        component_estimate(eff.s, tower, eff.s.max_ext, eff.tol);
    row["results"]["estimate"] = estimate_block(est, verdicts);
    verdicts["mu_max_le_c_hat"] = mult["mu_max"].get<u64>() <= est.c_hat;

    u32 k_per = std::min<u32>(eff.s.max_ext, 4);
    SequenceVerdict sv =
        multiplicity_sequence(eff.s, tower, k_per, -1, u32(eff.seed));
    row["results"]["sequence"] = periodicity_block(sv, -1, verdicts);

    if (eff.s.witness) {
      ChainReport rep =
          check_main_chain(eff.s, tower, k_per, 2, eff.seed);
      row["results"]["reduction"] = reduce_block(rep, verdicts);
    }

    row["verdicts"] = verdicts;
    bool ok = all_true(verdicts);
    row["overall"] = ok;
    row["elapsed_ms"] = stm.ms();
    ok_all = ok_all && ok;
    rows.push_back(row);
  }

  j["scenarios"] = rows;
  j["overall"] = ok_all;
  j["elapsed_ms"] = tm.ms();
  emit(j, o);
  return ok_all ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical multiplicity verifier over finite fields"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* c, bool with_scenario) {
    if (with_scenario)
      c->add_option("--scenario", o.scenario_path, "scenario JSON file")
          ->required();
    c->add_option("--q", o.q, "override the base prime power");
    c->add_option("--out", o.out_path, "write the report here (atomic)");
    c->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"json"}));
    c->add_option("--seed", o.seed, "deterministic seed")
        ->each([&](const std::string&) { o.seed_given = true; });
  };

  auto* chartab = app.add_subcommand("chartab", "character table of G(F_q)");
  add_common(chartab, true);
  chartab->add_option("--ell", o.ell, "modulus: a prime, or auto");

  auto* mult = app.add_subcommand(
      "mult", "multiplicities of the permutation module on X(F_q)");
  add_common(mult, true);
  mult->add_option("--ell", o.ell, "modulus: a prime, or auto");

  auto* bound = app.add_subcommand(
      "bound", "multiplicities against the orbit-ratio bound");
  add_common(bound, true);
  bound->add_option("--ell", o.ell, "modulus: a prime, or auto");
  bound->add_option("--max-ext", o.max_ext, "extensions for the estimator");
  bound->add_option("--tol", o.tol, "convergence tolerance, e.g. 1/8");

  auto* period = app.add_subcommand(
      "periodicity", "multiplicity sequence along the extension tower");
  add_common(period, true);
  period->add_option("--max-ext", o.max_ext, "levels to evaluate");
  period->add_option("--selector", o.selector,
                     "row index per level; -1 = orbit counts");

  auto* reduce = app.add_subcommand(
      "reduce", "transfer chain through the scenario's witness");
  add_common(reduce, true);
  reduce->add_option("--max-ext", o.max_ext, "extensions for the estimates");

  auto* verify = app.add_subcommand("verify-all",
                                    "every check on a directory of scenarios");
  verify->add_option("--suite", o.suite_dir, "directory of scenario files")
      ->required();
  verify->add_option("--out", o.out_path, "write the report here (atomic)");
  verify->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json"}));
  verify->add_option("--seed", o.seed, "deterministic seed")
      ->each([&](const std::string&) { o.seed_given = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (chartab->parsed()) return cmd_chartab(o);
    if (mult->parsed()) return cmd_mult(o);
    if (bound->parsed()) return cmd_bound(o);
    if (period->parsed()) return cmd_periodicity(o);
    if (reduce->parsed()) return cmd_reduce(o);
    if (verify->parsed()) return cmd_verify_all(o);
  } catch (const std::exception& e) {
    std::cerr << "sphmult: " << e.what() << "\n";
    return kExitOperational;
  }
  std::cerr << "sphmult: no subcommand\n";
  return kExitOperational;
}
