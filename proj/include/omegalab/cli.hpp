#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "omegalab/constructions.hpp"
#include "omegalab/core.hpp"
#include "omegalab/finite_oracle.hpp"
#include "omegalab/reductions.hpp"
#include "omegalab/report.hpp"
#include "omegalab/rigidity.hpp"
#include "omegalab/sets.hpp"
#include "omegalab/specs.hpp"

// Batch commands: build objects from spec strings, run sweeps, emit reports.
// Exit codes: 0 = no claimed property refuted (expected audit dichotomies
// included), 2 = a claimed property was refuted, 1 = usage/capacity error.

namespace omegalab {

inline Report cmd_verify_chain(const std::string& set_spec, Nat kmax, Nat window) {
  if (kmax < 1) throw std::invalid_argument("verify-chain: kmax must be >= 1");
  const OmegaSet a = parse_set_spec(set_spec);
  Report report;
  report.command = "verify-chain";
  report.params["set"] = set_spec;
  report.params["kmax"] = kmax;
  report.params["window"] = window;
  for (Nat k = 1; k <= kmax; ++k) {
    const OmegaSet a_k = thicken(a, k);
    const OmegaSet a_k1 = thicken(a, k + 1);
    const std::string tag = "k=" + std::to_string(k) + "/";

    const Reduction down = thicken_witness_down(k, a.descriptor());
    report.verdicts.push_back(make_check_entry(
        tag + "down/preservation", check_membership_preservation(down, a_k, a, window)));
    report.verdicts.push_back(make_check_entry(
        tag + "down/preimage-bound", check_preimage_bound(down, k, window, window / k)));

    const Reduction up = thicken_witness_up(k, a.descriptor());
    report.verdicts.push_back(make_check_entry(
        tag + "up/preservation", check_membership_preservation(up, a, a_k, window)));
    report.verdicts.push_back(
        make_check_entry(tag + "up/injectivity", check_injectivity(up, window)));

    const Reduction chain = chain_witness(k, a.descriptor());
    report.verdicts.push_back(make_check_entry(
        tag + "chain/preservation", check_membership_preservation(chain, a_k, a_k1, window)));
    report.verdicts.push_back(
        make_check_entry(tag + "chain/injectivity", check_injectivity(chain, window)));
  }
  report.finalize_exit_code();
  return report;
}

inline Report cmd_audit_pigeonhole(const std::string& generator, Nat k, Nat ymax, Nat batch) {
  if (k < 1) throw std::invalid_argument("audit-pigeonhole: k must be >= 1");
  const auto candidates = generate_candidates(parse_generator_spec(generator), batch);
  Report report;
  report.command = "audit-pigeonhole";
  report.params["generator"] = generator;
  report.params["k"] = k;
  report.params["ymax"] = ymax;
  report.params["batch"] = batch;
  Nat clean = 0;
  Nat total_deviations = 0;
  Nat total_collisions = 0;
  for (const auto& candidate : candidates) {
    Nat deviations = 0;
    Nat collisions = 0;
    for (Nat y = 0; y < ymax; ++y) {
      const AuditOutcome outcome = pigeonhole_audit(candidate, k, y);
      if (outcome.is_deviation()) {
        ++deviations;
      } else if (outcome.is_collision()) {
        ++collisions;
      } else {
        ++clean;  // logically impossible; counted so a bug cannot hide
      }
    }
    nlohmann::json witness;
    witness["deviations"] = deviations;
    witness["collisions"] = collisions;
    report.verdicts.emplace_back("cand=" + candidate.descriptor(), "evidence", ymax,
                                 std::move(witness));
    total_deviations += deviations;
    total_collisions += collisions;
  }
  nlohmann::json summary;
  summary["candidates"] = candidates.size();
  summary["clean"] = clean;
  summary["deviations"] = total_deviations;
  summary["collisions"] = total_collisions;
  report.verdicts.emplace_back("summary", clean == 0 ? "evidence" : "refuted", ymax,
                               std::move(summary));
  report.exit_code = clean == 0 ? 0 : 2;
  return report;
}

inline Report cmd_probe_incomparability(const std::string& a_spec, Nat j, Nat l,
                                        const std::string& mode, const std::string& generator,
                                        Nat window, Nat budget, Nat batch) {
  if (j == l) throw std::invalid_argument("probe-incomparability: j and l must differ");
  if (mode != "fin" && mode != "one-one") {
    throw std::invalid_argument("probe-incomparability: mode must be 'fin' or 'one-one'");
  }
  const OmegaSet a = parse_set_spec(a_spec);
  const OmegaSet t = disjoint_family(j);  // source index set T
  const OmegaSet s = disjoint_family(l);  // target index set S; T \ S = T
  const bool one_one = mode == "one-one";
  const ComputableDomain d_t = one_one ? bounded_calibrated_domain(t) : calibrated_domain(t);
  const OmegaSet b_t = pullback(d_t, a);

  // Points to audit: members of T below the window.
  std::vector<Nat> points;
  for (Nat i = 0;; ++i) {
    const Nat x = pair_code(j, i);
    if (x >= window) break;
    points.push_back(x);
  }

  const auto candidates = generate_candidates(parse_generator_spec(generator), batch);
  Report report;
  report.command = "probe-incomparability";
  report.params["set"] = a_spec;
  report.params["j"] = j;
  report.params["l"] = l;
  report.params["mode"] = mode;
  report.params["candidates"] = generator;
  report.params["window"] = window;
  report.params["budget"] = budget;
  report.params["batch"] = batch;

  Nat clean = 0;
  for (const auto& candidate : candidates) {
    const std::string tag = "cand=" + candidate.descriptor() + "/";

    // Does the candidate respect A-membership on domain codes? For a genuine
    // reduction between the pullback sets this would hold everywhere.
    const Reduction projected{[candidate, d_t](Nat idx) {
                                return unpair_code(candidate(d_t.select_entry(idx).code)).first;
                              },
                              ReductionClass::many_one(), b_t.descriptor(), a.descriptor()};
    report.verdicts.push_back(make_check_entry(
        tag + "preservation", check_membership_preservation(projected, b_t, a, window)));

    nlohmann::json witness;
    if (one_one) {
      Nat deviations = 0;
      Nat collisions = 0;
      Nat range_violations = 0;
      for (const Nat x : points) {
        const AuditOutcome outcome = bounded_collision_audit(candidate, s, t, x);
        if (outcome.is_deviation()) {
          ++deviations;
        } else if (outcome.is_collision()) {
          ++collisions;
        } else if (outcome.is_range_violation()) {
          ++range_violations;
        } else {
          ++clean;
        }
      }
      witness["points"] = points.size();
      witness["deviations"] = deviations;
      witness["collisions"] = collisions;
      witness["range_violations"] = range_violations;
    } else {
      Nat deviations = 0;
      Nat exhausted = 0;
      Nat max_distinct = 0;
      Nat max_multiplicity = 0;
      for (const Nat x : points) {
        const AuditOutcome outcome = calibrated_autoreduction(candidate, s, t, x, budget);
        if (outcome.is_deviation()) {
          ++deviations;
        } else if (outcome.is_budget_exhausted()) {
          ++exhausted;
          max_distinct = std::max(max_distinct, outcome.stats().distinct_projections);
          max_multiplicity = std::max(max_multiplicity, outcome.stats().max_image_multiplicity);
        } else {
          ++clean;
        }
      }
      witness["points"] = points.size();
      witness["deviations"] = deviations;
      witness["budget_exhausted"] = exhausted;
      witness["max_distinct_projections"] = max_distinct;
      witness["max_image_multiplicity"] = max_multiplicity;
    }
    report.verdicts.emplace_back(tag + "audit", "evidence", window, std::move(witness));
  }
  // Refuted preservation entries above are expected candidate outcomes, not
  // claims; only an impossible clean audit outcome refutes the command.
  report.exit_code = clean == 0 ? 0 : 2;
  return report;
}

inline Report cmd_stress_biimmunity(const std::string& a_spec, Nat xmin, Nat xmax,
                                    Nat column_window, Nat seed) {
  if (xmin >= xmax) throw std::invalid_argument("stress-biimmunity: need xmin < xmax");
  const OmegaSet a = parse_set_spec(a_spec);
  Report report;
  report.command = "stress-biimmunity";
  report.params["set"] = a_spec;
  report.params["xmin"] = xmin;
  report.params["xmax"] = xmax;
  report.params["column_window"] = column_window;
  report.params["seed"] = seed;

  using NamedMap = std::pair<std::string, std::function<Nat(Nat)>>;
  const Nat w = column_window;
  const std::vector<NamedMap> candidates = {
      {"identity", [](Nat code) { return code; }},
      {"collapse",
       [](Nat code) { return pair_code(unpair_code(code).first, 0); }},
      // column-preserving rotation: a pi1-preserving bijection of each
      // column's first `w` rows, keyed by (seed, column)
      {"rotate", [seed, w](Nat code) {
         const auto [x, i] = unpair_code(code);
         if (w == 0 || i >= w) return code;
         const Nat shift = mix64(seed ^ x) % w;
         return pair_code(x, (i + shift) % w);
       }}};

  for (const auto& [name, fn] : candidates) {
    for (Nat x = xmin; x < xmax; ++x) {
      const ColumnImageStats stats = column_image_audit(fn, a, x, w);
      nlohmann::json witness;
      witness["distinct_images"] = stats.distinct_images;
      witness["max_multiplicity"] = stats.max_multiplicity;
      witness["agreeing"] = stats.agreeing;
      witness["disagreeing"] = stats.disagreeing;
      report.verdicts.emplace_back("cand=" + name + "/x=" + std::to_string(x), "evidence",
                                   w, std::move(witness));
    }
  }
  report.exit_code = 0;
  return report;
}

namespace detail {

inline Nat parse_mask(const std::string& text, Nat n) {
  if (text.size() != n) {
    throw std::invalid_argument("mask '" + text + "' must have exactly " +
                                std::to_string(n) + " bits");
  }
  Nat mask = 0;
  for (Nat i = 0; i < n; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1') throw std::invalid_argument("mask must be over {0,1}");
    if (c == '1') mask |= Nat(1) << i;
  }
  return mask;
}

inline ReductionClass parse_class(const std::string& name, Nat bound) {
  if (name == "one-one") return ReductionClass::one_one();
  if (name == "bounded") return ReductionClass::bounded(bound);
  if (name == "finite-one") return ReductionClass::finite_one();
  if (name == "many-one") return ReductionClass::many_one();
  throw std::invalid_argument("unknown reduction class '" + name + "'");
}

}  // namespace detail

inline Report cmd_oracle(Nat n, const std::string& check, Nat k, const std::string& amask,
                         const std::string& bmask, const std::string& cls, Nat bound) {
  if (n < 1 || n > kUniverseCap) {
    throw std::invalid_argument("oracle: universe size must be in [1..4]");
  }
  Report report;
  report.command = "oracle";
  report.params["n"] = n;
  report.params["check"] = check;
  if (check == "compose") {
    report.verdicts.push_back(make_check_entry("compose", composition_rule_check(n)));
  } else if (check == "pigeonhole") {
    report.params["k"] = k;
    report.verdicts.push_back(make_check_entry("pigeonhole", pigeonhole_fact_check(k, n)));
  } else if (check == "reduces") {
    report.params["amask"] = amask;
    report.params["bmask"] = bmask;
    report.params["class"] = cls;
    if (cls == "bounded") report.params["c"] = bound;
    const auto result = reduces_exhaustive(detail::parse_mask(amask, n),
                                           detail::parse_mask(bmask, n),
                                           detail::parse_class(cls, bound), n);
    nlohmann::json witness;
    witness["reducible"] = result.reducible;
    witness["witness_table"] = result.witness ? nlohmann::json(*result.witness)
                                              : nlohmann::json(nullptr);
    Nat tables = 1;
    for (Nat i = 0; i < n; ++i) tables *= n;
    report.verdicts.emplace_back("reduces", "evidence", tables, std::move(witness));
  } else {
    throw std::invalid_argument("oracle: check must be compose, pigeonhole, or reduces");
  }
  report.finalize_exit_code();
  return report;
}

// Classification dump: the CSV face of the oracle subcommand.
inline std::string oracle_csv(Nat n) {
  std::string out = "table,injective,max_preimage\n";
  detail::for_each_table(n, n, [&](const FunctionTable& t) {
    std::string digits;
    for (Nat entry : t) digits += static_cast<char>('0' + entry);
    const auto c = classify_table(t);
    out += digits + "," + (c.injective ? "1" : "0") + "," + std::to_string(c.max_preimage) + "\n";
  });
  return out;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"window checks and proof-derived audits over lazy subsets of omega"};
  app.require_subcommand(1);

  std::string out_path = "stdout";
  std::string format = "json";
  Nat seed = 0;
  Nat window = 10000;
  app.add_option("--out", out_path, "report destination path, or 'stdout'");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for keyed sweep candidates");
  app.add_option("--window", window, "verification window N");

  auto* verify = app.add_subcommand("verify-chain", "verify thickening and chain witnesses");
  verify->fallthrough();
  std::string verify_set;
  Nat kmax = 4;
  verify->add_option("set", verify_set, "set spec for A")->required();
  verify->add_option("--kmax", kmax, "verify k = 1..kmax");

  auto* pigeon = app.add_subcommand("audit-pigeonhole", "sweep the chain-embedding dichotomy");
  pigeon->fallthrough();
  std::string pigeon_generator;
  Nat pigeon_k = 2;
  Nat ymax = 1000;
  Nat batch = 100;
  pigeon->add_option("generator", pigeon_generator, "candidate generator spec")->required();
  pigeon->add_option("--k", pigeon_k, "chain level k");
  pigeon->add_option("--ymax", ymax, "audit y = 0..ymax-1");
  pigeon->add_option("--batch", batch, "batch size for injection generators");

  auto* probe = app.add_subcommand("probe-incomparability",
                                   "audit candidates between pullbacks over disjoint columns");
  probe->fallthrough();
  std::string probe_set;
  Nat probe_j = 0;
  Nat probe_l = 1;
  std::string probe_mode = "fin";
  std::string probe_generator = "affine:amax=3,bmax=3";
  Nat budget = 1000;
  Nat probe_batch = 10;
  probe->add_option("set", probe_set, "set spec for A")->required();
  probe->add_option("--j", probe_j, "source column index");
  probe->add_option("--l", probe_l, "target column index");
  probe->add_option("--mode", probe_mode, "fin (calibrated) or one-one (bounded calibrated)")
      ->check(CLI::IsMember({"fin", "one-one"}));
  probe->add_option("--candidates", probe_generator, "candidate generator spec");
  probe->add_option("--budget", budget, "search budget per audited point");
  probe->add_option("--batch", probe_batch, "batch size for injection generators");

  auto* stress = app.add_subcommand("stress-biimmunity", "column image statistics");
  stress->fallthrough();
  std::string stress_set;
  Nat xmin = 0;
  Nat xmax = 10;
  Nat column_window = 100;
  stress->add_option("set", stress_set, "set spec for A")->required();
  stress->add_option("--xmin", xmin, "first column");
  stress->add_option("--xmax", xmax, "one past the last column");
  stress->add_option("--column-window", column_window, "rows audited per column");

  auto* oracle = app.add_subcommand("oracle", "exhaustive finite-universe checks");
  oracle->fallthrough();
  Nat oracle_n = 3;
  std::string oracle_check;
  Nat oracle_k = 2;
  std::string oracle_amask;
  std::string oracle_bmask;
  std::string oracle_class = "many-one";
  Nat oracle_bound = 1;
  oracle->add_option("--n", oracle_n, "universe size (cap 4)");
  oracle->add_option("--check", oracle_check, "compose | pigeonhole | reduces")->required();
  oracle->add_option("--k", oracle_k, "pigeonhole slots");
  oracle->add_option("--amask", oracle_amask, "source mask, e.g. 1010");
  oracle->add_option("--bmask", oracle_bmask, "target mask");
  oracle->add_option("--class", oracle_class, "one-one | bounded | finite-one | many-one");
  oracle->add_option("--c", oracle_bound, "bound for class 'bounded'");

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes args back to front
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    Report report;
    bool oracle_run = false;
    if (app.got_subcommand(verify)) {
      report = cmd_verify_chain(verify_set, kmax, window);
    } else if (app.got_subcommand(pigeon)) {
      report = cmd_audit_pigeonhole(pigeon_generator, pigeon_k, ymax, batch);
    } else if (app.got_subcommand(probe)) {
      report = cmd_probe_incomparability(probe_set, probe_j, probe_l, probe_mode,
                                         probe_generator, window, budget, probe_batch);
    } else if (app.got_subcommand(stress)) {
      report = cmd_stress_biimmunity(stress_set, xmin, xmax, column_window, seed);
    } else {
      report = cmd_oracle(oracle_n, oracle_check, oracle_k, oracle_amask, oracle_bmask,
                          oracle_class, oracle_bound);
      oracle_run = true;
    }

    const std::string rendered = format == "csv"
                                     ? (oracle_run ? oracle_csv(oracle_n) : report.to_csv())
                                     : report.to_json_text();
    if (out_path == "stdout") {
      out << rendered;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file: " + out_path);
      file << rendered;
    }
    return report.exit_code;
  } catch (const SpecParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace omegalab
