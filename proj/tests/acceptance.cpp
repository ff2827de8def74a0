// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances and runtime budget in code.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "omegalab/omegalab.hpp"

using namespace omegalab;

namespace {

using CriterionFn = std::function<bool(std::string&)>;

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  CriterionFn run;
};

std::string show(Nat v) { return std::to_string(v); }

// 1. Thickening equivalence: both witnesses preserve membership with zero
// violations, and down-fibers are exactly k on every fully covered target.
bool thickening_equivalence(std::string& detail) {
  std::vector<OmegaSet> sets;
  for (Nat seed = 1; seed <= 5; ++seed) sets.push_back(seeded_random_set(seed));
  sets.push_back(evens());
  sets.push_back(primes());
  const Nat window = 10000;
  for (const OmegaSet& a : sets) {
    for (Nat k = 1; k <= 6; ++k) {
      const OmegaSet a_k = thicken(a, k);
      const Reduction down = thicken_witness_down(k, a.descriptor());
      const Reduction up = thicken_witness_up(k, a.descriptor());
      if (check_membership_preservation(down, a_k, a, window).refuted()) {
        detail = "down witness refuted for " + a.descriptor() + " k=" + show(k);
        return false;
      }
      if (check_membership_preservation(up, a, a_k, window).refuted()) {
        detail = "up witness refuted for " + a.descriptor() + " k=" + show(k);
        return false;
      }
      const auto counts = preimage_counts(down, window, window / k);
      for (Nat y = 0; y < window / k; ++y) {
        if (counts[y] != k) {
          detail = "fiber of y=" + show(y) + " has " + show(counts[y]) +
                   " members, expected " + show(k);
          return false;
        }
      }
    }
  }
  return true;
}

// 2. Chain embedding: p strictly increasing with floor(p(x)/(k+1)) == floor(x/k).
bool chain_embedding(std::string& detail) {
  for (Nat k = 1; k <= 6; ++k) {
    const Reduction p = chain_witness(k);
    Nat previous = 0;
    for (Nat x = 0; x < 10000; ++x) {
      const Nat px = p.map(x);
      if (px / (k + 1) != x / k) {
        detail = "block identity fails at k=" + show(k) + " x=" + show(x);
        return false;
      }
      if (x > 0 && px <= previous) {
        detail = "monotonicity fails at k=" + show(k) + " x=" + show(x);
        return false;
      }
      previous = px;
    }
  }
  return true;
}

// 3. Pigeonhole dichotomy: >= 1000 candidates, zero clean outcomes, all
// witnesses replay.
bool pigeonhole_dichotomy(std::string& detail) {
  std::vector<CandidateMap> corpus = generate_candidates(AffineGridSpec{30, 29}, 0);  // 900
  const auto injections = generate_candidates(InjectionBatchSpec{1, 10000}, 100);
  corpus.insert(corpus.end(), injections.begin(), injections.end());
  for (Nat k = 1; k <= 5; ++k) {
    corpus.push_back(CandidateMap::adversarial_identity_seeker(k));
  }
  if (corpus.size() < 1000) {
    detail = "corpus too small: " + show(corpus.size());
    return false;
  }

  Nat audits = 0;
  Nat replayed = 0;
  for (const CandidateMap& h : corpus) {
    for (Nat k = 1; k <= 5; ++k) {
      for (Nat y = 0; y < 1000; ++y) {
        const AuditOutcome outcome = pigeonhole_audit(h, k, y);
        ++audits;
        if (outcome.is_deviation()) {
          const auto& d = outcome.deviation();
          if (h((k + 1) * y + d.point) / k != d.value || d.value == y) {
            detail = "deviation witness fails to replay at k=" + show(k) + " y=" + show(y);
            return false;
          }
          ++replayed;
        } else if (outcome.is_collision()) {
          const auto& c = outcome.collision();
          if (c.point1 == c.point2 || h(c.point1) != c.value || h(c.point2) != c.value) {
            detail = "collision witness fails to replay at k=" + show(k) + " y=" + show(y);
            return false;
          }
          ++replayed;
        } else {
          detail = "clean outcome at k=" + show(k) + " y=" + show(y) + " candidate " +
                   h.descriptor();
          return false;
        }
      }
    }
  }
  if (replayed != audits) {
    detail = "only " + show(replayed) + " of " + show(audits) + " witnesses replayed";
    return false;
  }
  detail = show(corpus.size()) + " candidates, " + show(audits) + " audits, 0 clean";
  return true;
}

// 4. Calibrated / bounded-calibrated equivalences: q and r verify on the
// window, r injective, and q's fibers match the column profiles exactly.
bool calibrated_equivalences(std::string& detail) {
  const OmegaSet a = seeded_random_set(6);
  std::vector<OmegaSet> index_sets = {evens()};
  for (Nat k = 0; k <= 3; ++k) index_sets.push_back(disjoint_family(k));

  std::vector<ComputableDomain> domains;
  for (const OmegaSet& s : index_sets) {
    domains.push_back(calibrated_domain(s));
    domains.push_back(bounded_calibrated_domain(s));
  }
  domains.push_back(pyramid_domain());

  const Nat window = 10000;
  for (const ComputableDomain& d : domains) {
    const OmegaSet b = pullback(d, a);
    const Reduction q = pullback_witness_q(d, a.descriptor());
    const Reduction r = pullback_witness_r(d, a.descriptor());
    if (check_membership_preservation(q, b, a, window).refuted()) {
      detail = "q refuted over " + d.descriptor();
      return false;
    }
    if (check_membership_preservation(r, a, b, window).refuted()) {
      detail = "r refuted over " + d.descriptor();
      return false;
    }
    if (check_injectivity(r, window).refuted()) {
      detail = "r not injective over " + d.descriptor();
      return false;
    }
  }

  // q-fiber sizes against the profiles, on fully covered columns
  const auto fibers_below = [](const ComputableDomain& d, Nat cap) {
    Nat members = 0;
    for (Nat code = 0; code < cap; ++code) members += d.contains(code);
    const Reduction q = pullback_witness_q(d);
    std::map<Nat, Nat> fibers;
    for (Nat n = 0; n < members; ++n) ++fibers[q.map(n)];
    return fibers;
  };

  for (const OmegaSet& s : index_sets) {
    const ComputableDomain d = bounded_calibrated_domain(s);
    const Nat x0 = 200;
    const auto fibers = fibers_below(d, pair_code(x0, 2));
    for (Nat x = 0; x < x0; ++x) {
      const Nat expected = s.member(x) ? 2 : 1;
      const auto it = fibers.find(x);
      if (it == fibers.end() || it->second != expected) {
        detail = "bounded fiber mismatch at x=" + show(x) + " over " + d.descriptor();
        return false;
      }
    }
  }
  {
    const auto fibers = fibers_below(pyramid_domain(), pair_code(99, 99) + 1);
    for (Nat x = 0; x < 100; ++x) {
      const auto it = fibers.find(x);
      if (it == fibers.end() || it->second != x + 1) {
        detail = "pyramid fiber mismatch at x=" + show(x);
        return false;
      }
    }
  }
  for (const OmegaSet& s : index_sets) {
    const ComputableDomain d = calibrated_domain(s);
    const Nat x0 = 200;
    const auto fibers = fibers_below(d, pair_code(x0, 0));
    for (Nat x = 0; x < x0; ++x) {
      if (s.member(x)) continue;  // infinite columns have no exact window count
      const auto it = fibers.find(x);
      if (it == fibers.end() || it->second != 1) {
        detail = "calibrated fiber mismatch at x=" + show(x) + " over " + d.descriptor();
        return false;
      }
    }
  }
  return true;
}

// 5. Bounded collision dichotomy: range-respecting candidates always produce
// a deviation or a collision; out-of-range images are flagged, never clean.
bool bounded_collision_dichotomy(std::string& detail) {
  const OmegaSet s = evens();
  const OmegaSet t = odds();

  const auto collapse = [](Nat code) { return pair_code(unpair_code(code).first, 0); };
  const auto shift = [](Nat code) {
    const auto [x, i] = unpair_code(code);
    return pair_code(x + 1, i);
  };
  const auto mixed = [&](Nat code) {
    return unpair_code(code).first < 500 ? collapse(code) : shift(code);
  };
  const auto identity = [](Nat code) { return code; };

  Nat deviations = 0;
  Nat collisions = 0;
  for (Nat x = 1; x < 1000; x += 2) {  // T \ S below 10^3
    for (const auto& f : {std::function<Nat(Nat)>(collapse), std::function<Nat(Nat)>(shift),
                          std::function<Nat(Nat)>(mixed)}) {
      const AuditOutcome outcome = bounded_collision_audit(f, s, t, x);
      if (outcome.is_deviation()) {
        ++deviations;
      } else if (outcome.is_collision()) {
        ++collisions;
      } else {
        detail = "range-respecting candidate escaped the dichotomy at x=" + show(x);
        return false;
      }
    }
    if (!bounded_collision_audit(identity, s, t, x).is_range_violation()) {
      detail = "identity should violate the E_S range at x=" + show(x);
      return false;
    }
  }
  if (deviations == 0 || collisions == 0) {
    detail = "expected both branches to occur";
    return false;
  }
  return true;
}

// 6. Pyramid dichotomy: every audit yields an off-x value or a bound
// refutation listing exactly x+1 column members mapping to x.
bool pyramid_dichotomy(std::string& detail) {
  const CandidateMap injection = CandidateMap::seeded_injection(2, 100000);
  const std::vector<std::pair<std::string, std::function<Nat(Nat)>>> candidates = {
      {"pi1", [](Nat code) { return unpair_code(code).first; }},
      {"identity", [](Nat code) { return code; }},
      {"affine", [](Nat code) { return 2 * code + 1; }},
      {"injection", [injection](Nat code) { return injection(code); }},
      {"const7", [](Nat) { return Nat(7); }}};

  Nat refutations = 0;
  for (const auto& [name, f] : candidates) {
    for (Nat c = 1; c <= 4; ++c) {
      for (Nat x = c; x < 1000; ++x) {
        const PyramidStep step = pyramid_autoreduction_step(f, c, x);
        if (std::holds_alternative<Nat>(step)) {
          if (std::get<Nat>(step) == x) {
            detail = name + " returned x itself at c=" + show(c) + " x=" + show(x);
            return false;
          }
        } else {
          const auto& refutation = std::get<BoundRefutation>(step);
          if (refutation.column_codes.size() != x + 1) {
            detail = name + " refutation lists " + show(refutation.column_codes.size()) +
                     " codes at x=" + show(x);
            return false;
          }
          for (Nat y = 0; y <= x; ++y) {
            if (refutation.column_codes[y] != pair_code(x, y) ||
                f(refutation.column_codes[y]) != x) {
              detail = name + " refutation evidence fails to replay at x=" + show(x);
              return false;
            }
          }
          ++refutations;
        }
      }
    }
  }
  if (refutations == 0) {
    detail = "no bound refutation was ever produced";
    return false;
  }
  return true;
}

// 7. Finite-oracle exhaustives.
bool finite_oracle_exhaustives(std::string& detail) {
  for (Nat n = 2; n <= 4; ++n) {
    if (composition_rule_check(n).refuted()) {
      detail = "composition rule refuted at n=" + show(n);
      return false;
    }
  }
  for (Nat k = 1; k <= 4; ++k) {
    if (pigeonhole_fact_check(k, k + 1).refuted()) {
      detail = "pigeonhole fact refuted at k=" + show(k);
      return false;
    }
  }
  const std::vector<ReductionClass> chain = {
      ReductionClass::one_one(), ReductionClass::bounded(1), ReductionClass::bounded(2),
      ReductionClass::finite_one(), ReductionClass::many_one()};
  for (Nat a = 0; a < 8; ++a) {
    for (Nat b = 0; b < 8; ++b) {
      bool previous = false;
      for (const ReductionClass& cls : chain) {
        const bool now = reduces_exhaustive(a, b, cls, 3).reducible;
        if (previous && !now) {
          detail = "monotonicity breaks at masks " + show(a) + "," + show(b) + " class " +
                   cls.to_string();
          return false;
        }
        previous = now;
      }
    }
  }
  return true;
}

// 8. Bijection infrastructure: pairing round-trips and sigma round-trips.
bool bijection_infrastructure(std::string& detail) {
  for (Nat x = 0; x < 500; ++x) {
    for (Nat y = 0; y < 500; ++y) {
      if (unpair_code(pair_code(x, y)) != std::pair<Nat, Nat>{x, y}) {
        detail = "pair round trip fails at (" + show(x) + "," + show(y) + ")";
        return false;
      }
    }
  }
  for (Nat code = 0; code < 100000; ++code) {
    const auto [x, y] = unpair_code(code);
    if (pair_code(x, y) != code) {
      detail = "unpair round trip fails at code " + show(code);
      return false;
    }
  }
  const std::vector<ComputableDomain> kinds = {full_domain(), pyramid_domain(),
                                               calibrated_domain(evens()),
                                               bounded_calibrated_domain(evens())};
  for (const ComputableDomain& d : kinds) {
    Nat previous = 0;
    for (Nat n = 0; n < 10000; ++n) {
      const Nat code = d.select(n);
      if (d.rank(code) != n) {
        detail = "sigma round trip fails at n=" + show(n) + " over " + d.descriptor();
        return false;
      }
      if (n > 0 && code <= previous) {
        detail = "sigma not increasing at n=" + show(n) + " over " + d.descriptor();
        return false;
      }
      previous = code;
    }
  }
  return true;
}

// 9. Statistical rigidity probe: non-identity affine candidates preserve
// membership on well below 95% of the window.
bool statistical_rigidity(std::string& detail) {
  double worst = 0;
  for (Nat seed = 1; seed <= 10; ++seed) {
    const OmegaSet a = seeded_random_set(seed);
    for (Nat slope = 1; slope <= 3; ++slope) {
      for (Nat offset = 0; offset <= 3; ++offset) {
        if (slope == 1 && offset == 0) continue;
        const CandidateMap g = CandidateMap::affine(slope, offset);
        const Rational rate = preservation_rate(g, a, 10000);
        worst = std::max(worst, rate.value());
        if (rate.value() >= 0.95) {
          detail = "rate " + show(rate.num) + "/" + show(rate.den) + " for " +
                   g.descriptor() + " against seed " + show(seed);
          return false;
        }
      }
    }
  }
  std::ostringstream oss;
  oss << "worst rate " << worst;
  detail = oss.str();
  return true;
}

// 10. Report determinism: identical flags give byte-identical JSON from the
// actual binary, per command, twice.
bool report_determinism(std::string& detail) {
  const std::vector<std::string> commands = {
      "verify-chain random:seed=42 --kmax 2 --window 2000",
      "audit-pigeonhole adversary:k=2 --k 2 --ymax 300",
      "probe-incomparability random:seed=9 --j 0 --l 1 --mode one-one "
      "--candidates affine:amax=2,bmax=1 --window 200 --budget 40",
      "stress-biimmunity random:seed=3 --xmin 0 --xmax 3 --column-window 64",
      "oracle --n 4 --check compose"};

  const auto run_once = [](const std::string& args, const std::string& path, int& code) {
    const std::string command =
        std::string(OMEGALAB_CLI_PATH) + " " + args + " --out " + path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(path, std::ios::binary);
    std::stringstream content;
    content << in.rdbuf();
    return content.str();
  };

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string path1 = "acceptance_run_a" + std::to_string(i) + ".json";
    const std::string path2 = "acceptance_run_b" + std::to_string(i) + ".json";
    int code1 = -1;
    int code2 = -1;
    const auto started = std::chrono::steady_clock::now();
    const std::string bytes1 = run_once(commands[i], path1, code1);
    const std::string bytes2 = run_once(commands[i], path2, code2);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::remove(path1.c_str());
    std::remove(path2.c_str());
    if (code1 != 0 || code2 != 0) {
      detail = "command '" + commands[i] + "' exited " + std::to_string(code1) + "/" +
               std::to_string(code2);
      return false;
    }
    if (bytes1.empty() || bytes1 != bytes2) {
      detail = "command '" + commands[i] + "' is not byte-stable";
      return false;
    }
    if (elapsed / 2 >= 30.0) {
      detail = "command '" + commands[i] + "' exceeded the 30s budget";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "thickening-equivalence", 5.0, thickening_equivalence},
      {2, "chain-embedding", 1.0, chain_embedding},
      {3, "pigeonhole-dichotomy", 30.0, pigeonhole_dichotomy},
      {4, "calibrated-equivalences", 10.0, calibrated_equivalences},
      {5, "bounded-collision-dichotomy", 10.0, bounded_collision_dichotomy},
      {6, "pyramid-dichotomy", 10.0, pyramid_dichotomy},
      {7, "finite-oracle-exhaustives", 5.0, finite_oracle_exhaustives},
      {8, "bijection-infrastructure", 2.0, bijection_infrastructure},
      {9, "statistical-rigidity-probe", 5.0, statistical_rigidity},
      {10, "report-determinism", 150.0, report_determinism}};

  bool all_passed = true;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool ok = false;
    const auto started = std::chrono::steady_clock::now();
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool within_budget = elapsed < criterion.budget_seconds;
    const bool passed = ok && within_budget;
    all_passed = all_passed && passed;
    std::printf("%s %2d %-28s %6.2fs (budget %.0fs)%s%s\n", passed ? "PASS" : "FAIL",
                criterion.number, criterion.name.c_str(), elapsed, criterion.budget_seconds,
                detail.empty() ? "" : " - ", detail.c_str());
    if (ok && !within_budget) {
      std::printf("     runtime budget exceeded\n");
    }
  }
  std::printf("%s\n", all_passed ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES present");
  return all_passed ? 0 : 1;
}
