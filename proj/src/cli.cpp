#include "snapcx/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "snapcx/checks.hpp"
#include "snapcx/errors.hpp"
#include "snapcx/serialize.hpp"
#include "snapcx/strata.hpp"
#include "snapcx/topology.hpp"

namespace snapcx::cli {

using nlohmann::json;

namespace {

// Accepts the comma syntax ("2,1,1") or a JSON object ({"0":2,"1":1}).
RoundCounter parse_counter(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("counter JSON: ") + e.what());
    }
    return counter_from_json(j);
  }
  return RoundCounter::parse(text);
}

Complex build_complex(const RunConfig& cfg) {
  BuildOptions options;
  options.max_simplices =
      cfg.max_simplices ? cfg.max_simplices : simplex_cap_from_env();
  return Complex::build(parse_counter(cfg.counter), options);
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InvalidInput("cannot write " + cfg.out);
  file << text;
}

int cmd_build(const RunConfig& cfg, bool full, std::ostream& out) {
  const Complex k = build_complex(cfg);
  emit(cfg, out, dump(complex_to_json(k, full)));
  return kOk;
}

int cmd_facets(const RunConfig& cfg, bool count, std::ostream& out) {
  const Complex k = build_complex(cfg);
  if (count) {
    emit(cfg, out, std::to_string(k.facets().size()) + "\n");
    return kOk;
  }
  json facets = json::array();
  for (SimplexId f : k.facets()) facets.push_back(canonical_key(k.simplex(f)));
  emit(cfg, out, dump(facets));
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Complex k = build_complex(cfg);
  CheckOptions options;
  options.seed = cfg.seed;
  std::vector<std::string> names = cfg.checks;
  if (names.empty()) names = check_names();
  // Reject unknown names before running anything.
  for (const std::string& n : names) {
    const auto& known = check_names();
    if (std::find(known.begin(), known.end(), n) == known.end())
      throw InvalidInput("unknown check '" + n + "'");
  }
  json reports = json::array();
  bool ok = true;
  for (const std::string& n : names) {
    CheckResult r = run_check(k, n, options);
    ok = ok && !r.failed();
    reports.push_back(std::move(r.report));
  }
  json report = {{"counter", to_json(k.counter())},
                 {"checks", reports},
                 {"status", ok ? "pass" : "fail"}};
  emit(cfg, out, dump(report));
  return ok ? kOk : kCheckFailed;
}

// One of "S" (X_S), "S/A" or a full stratum name.
StratumRef parse_stratum_arg(const std::string& text) {
  return StratumRef::parse(text);
}

int cmd_strata(const RunConfig& cfg, bool list,
               const std::vector<std::string>& intersect, bool want_nerve,
               std::ostream& out) {
  const Complex k = build_complex(cfg);
  const RoundCounter& r = k.counter();
  if (!intersect.empty()) {
    StratumRef p = parse_stratum_arg(intersect.at(0));
    StratumRef q = parse_stratum_arg(intersect.at(1));
    const bool yz = (p.kind == StratumKind::Y || p.kind == StratumKind::Z) &&
                    (q.kind == StratumKind::Y || q.kind == StratumKind::Z);
    if (yz) {
      check_well_formed(p, r);
      check_well_formed(q, r);
      const auto res = intersect_yz(p, q);
      emit(cfg, out, (res ? res->to_string() : std::string("∅")) + "\n");
      return kOk;
    }
    // Z_S is X_{S,S}; everything else must be an X stratum.
    for (StratumRef* ref : {&p, &q}) {
      if (ref->kind == StratumKind::Z) ref->kind = StratumKind::X;
      if (ref->kind != StratumKind::X)
        throw InvalidInput("--intersect takes X strata, or two Y/Z strata");
      check_well_formed(*ref, r);
    }
    emit(cfg, out, intersect_pair(p.s, p.a, q.s, q.a).to_string() + "\n");
    return kOk;
  }
  if (want_nerve) {
    const NerveReport n = nerve(k);
    json vertices = json::array();
    for (ProcessSet s : n.vertices) vertices.push_back(StratumRef::x(s).to_string());
    json report = {{"counter", to_json(r)},
                   {"vertices", vertices},
                   {"simplices", n.simplices},
                   {"apex", n.apex >= 0 ? vertices[n.apex] : json()},
                   {"is_cone", n.is_cone}};
    emit(cfg, out, dump(report));
    return kOk;
  }
  (void)list;
  json strata = json::array();
  auto add = [&](const StratumRef& ref) {
    strata.push_back({{"stratum", ref.to_string()},
                      {"size", members(k, ref).size()}});
  };
  for (ProcessSet s : subsets_of(r.active())) {
    if (s.empty()) continue;
    for (ProcessSet a : subsets_of(s)) {
      add(StratumRef::x(s, a));
      if (a != s) add(StratumRef::y(s, a));
    }
  }
  for (ProcessSet v : subsets_of(r.support()))
    if (!v.empty()) add(StratumRef::b(v));
  emit(cfg, out, dump({{"counter", to_json(r)}, {"strata", strata}}));
  return kOk;
}

int cmd_collapse(const RunConfig& cfg, std::optional<int> pivot, bool full,
                 bool validate, const std::string& steps_file,
                 std::ostream& out) {
  const Complex k = build_complex(cfg);
  json report;
  bool ok = true;
  if (!steps_file.empty()) {
    // Validate a sequence produced elsewhere.
    std::ifstream in(steps_file);
    if (!in) throw InvalidInput("cannot read " + steps_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InvalidInput(steps_file + ": " + e.what());
    }
    const auto steps = collapse_steps_from_json(k, j);
    const CollapseValidation v = validate_collapse(k, steps, full);
    report = {{"counter", to_json(k.counter())},
              {"steps", steps.size()},
              {"valid", v.ok},
              {"perfect", v.perfect}};
    if (!v.ok) {
      report["failed_step"] = *v.failed_step;
      report["failure"] = v.message;
    }
    emit(cfg, out, dump(report));
    return v.ok ? kOk : kCheckFailed;
  }

  const ProcessId p = pivot.value_or(k.counter().support().min());
  const CollapseSequence seq =
      full ? collapse_all(k, p) : collapse_to_relative_boundary(k, p);
  report = collapse_to_json(k, seq);
  report["pivot"] = p;
  report["mode"] = full ? "full" : "relative-boundary";
  if (validate) {
    const CollapseValidation v = validate_collapse(k, seq.steps, full);
    json check = {{"valid", v.ok}, {"perfect", v.perfect}};
    if (!full) {
      // The remainder must be ∂P minus the interior of B_p.
      bool predicted = true;
      std::size_t remaining = 0;
      for (SimplexId id = 0; id < k.size(); ++id) {
        const ProcessSet g0 = k.simplex(id).rows[0].g;
        const bool expect = !(g0.empty() || g0 == ProcessSet::singleton(p));
        predicted = predicted && (v.remaining[id] != 0) == expect;
        remaining += v.remaining[id] ? 1 : 0;
      }
      check["remaining"] = remaining;
      check["matches_prediction"] = predicted;
      ok = v.ok && predicted;
    } else {
      ok = v.ok && 2 * seq.steps.size() == k.size();
    }
    if (!v.ok) check["failure"] = v.message;
    report["validation"] = check;
  }
  emit(cfg, out, dump(report));
  return ok ? kOk : kCheckFailed;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const Complex k = build_complex(cfg);
  if (cfg.format == "json") {
    emit(cfg, out, dump(complex_to_json(k, true)));
  } else if (cfg.format == "dot") {
    emit(cfg, out, to_dot(k));
  } else {
    emit(cfg, out, to_svg(k));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Immediate snapshot complexes P(r): build, verify, collapse",
               "snapcx"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto counter_opt = [&](CLI::App* sub) {
    sub->add_option("-r,--counter", cfg.counter,
                    "round counter, e.g. 2,1,1 or {\"0\":2,\"1\":1}")
        ->required();
    sub->add_option("--max-simplices", cfg.max_simplices,
                    "simplex cap (default: SNAPCX_MAX_SIMPLICES or 2000000)")
        ->check(CLI::PositiveNumber);
  };

  bool full_build = false;
  auto* build = app.add_subcommand("build", "construct P(r) and write it as JSON");
  counter_opt(build);
  build->add_option("-o,--out", cfg.out, "output file");
  build->add_flag("--full", full_build, "include every simplex with its faces");

  bool count = false;
  auto* facets = app.add_subcommand("facets", "list facets of P(r)");
  counter_opt(facets);
  facets->add_flag("--count", count, "print only the number of facets");

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  counter_opt(verify);
  verify->add_option("--checks", cfg.checks, "comma separated suites (default: all)")
      ->delimiter(',');
  verify->add_option("--seed", cfg.seed, "seed for sampled checks");
  verify->add_option("-o,--out", cfg.out, "output file");

  bool list = false, want_nerve = false;
  std::vector<std::string> intersect;
  auto* strata = app.add_subcommand("strata", "strata sizes, intersections, nerve");
  counter_opt(strata);
  auto* list_opt = strata->add_flag("--list", list, "list strata with sizes");
  auto* inter_opt = strata->add_option("--intersect", intersect,
                                       "closed-form intersection of two strata")
                        ->expected(2);
  auto* nerve_opt = strata->add_flag("--nerve", want_nerve, "nerve of the cover by X_S");
  list_opt->excludes(inter_opt)->excludes(nerve_opt);
  inter_opt->excludes(nerve_opt);

  std::optional<int> pivot;
  bool full = false, validate = false;
  std::string steps_file;
  auto* collapse = app.add_subcommand("collapse", "elementary collapse sequences");
  counter_opt(collapse);
  collapse->add_option("--pivot", pivot, "process p of B_p (default: min supp r)");
  collapse->add_flag("--full", full, "collapse everything, down to a perfect matching");
  collapse->add_flag("--validate", validate, "replay and check the sequence");
  collapse->add_option("--steps", steps_file, "validate a step list from a file instead");
  collapse->add_option("-o,--out", cfg.out, "output file");

  auto* exp = app.add_subcommand("export", "JSON, DOT or SVG export");
  counter_opt(exp);
  exp->add_option("--format", cfg.format, "json, dot or svg")
      ->check(CLI::IsMember({"json", "dot", "svg"}));
  exp->add_option("-o,--out", cfg.out, "output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* shown = &app;
    for (CLI::App* sub : app.get_subcommands()) shown = sub;
    err << shown->help();
    return kUsage;
  }
  if (*strata && !list && intersect.empty() && !want_nerve) {
    err << "error: strata needs one of --list, --intersect, --nerve\n"
        << strata->help();
    return kUsage;
  }

  try {
    if (*build) {
      cfg.command = "build";
      return cmd_build(cfg, full_build, out);
    }
    if (*facets) {
      cfg.command = "facets";
      return cmd_facets(cfg, count, out);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg, out);
    }
    if (*strata) {
      cfg.command = "strata";
      return cmd_strata(cfg, list, intersect, want_nerve, out);
    }
    if (*collapse) {
      cfg.command = "collapse";
      return cmd_collapse(cfg, pivot, full, validate, steps_file, out);
    }
    cfg.command = "export";
    return cmd_export(cfg, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const VerificationFailure& e) {
    out << dump({{"status", "fail"}, {"command", cfg.command}, {"failure", e.what()}});
    return kCheckFailed;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace snapcx::cli
