#pragma once

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "omegalab/core.hpp"
#include "omegalab/pairing.hpp"
#include "omegalab/sets.hpp"

// Executable content of the non-reducibility arguments. Each audit runs one
// proof's per-point dichotomy against an arbitrary total map: either the
// extracted autoreduction visibly deviates from the identity, or the map is
// forced into a collision / bound refutation. The quantifier "for every
// total computable function" is replaced by generator families plus
// user-supplied tables; the dichotomies themselves hold for any total map.

namespace omegalab {

// ---------------------------------------------------------------------------
// Candidate maps: the generator families swept by audits.

class CandidateMap {
 public:
  enum class Mode { Affine, Table, SeededInjection, AdversarialIdentitySeeker };

  Nat operator()(Nat x) const { return eval_(x); }

  Mode mode() const { return mode_; }
  const std::string& descriptor() const { return descriptor_; }

  static CandidateMap affine(Nat a, Nat b) {
    return CandidateMap(
        Mode::Affine, "affine:a=" + std::to_string(a) + ",b=" + std::to_string(b),
        [a, b](Nat x) {
          const u128 v = static_cast<u128>(a) * x + b;
          if (v > kNatMax) throw CapacityError("affine candidate: a*x + b overflows");
          return static_cast<Nat>(v);
        });
  }

  // Finite explicit map; identity outside the table.
  static CandidateMap table(std::vector<std::pair<Nat, Nat>> entries) {
    auto map = std::make_shared<const std::unordered_map<Nat, Nat>>(entries.begin(),
                                                                    entries.end());
    return CandidateMap(Mode::Table, "table:n=" + std::to_string(map->size()),
                        [map](Nat x) {
                          const auto it = map->find(x);
                          return it == map->end() ? x : it->second;
                        });
  }

  // Injective on [0, range): the first `range` entries of a keyed shuffle of
  // the doubled codomain [0, 2*range). Identity outside the range.
  static CandidateMap seeded_injection(Nat seed, Nat range) {
    if (range > kNatMax / 2) throw CapacityError("seeded_injection: range too large");
    auto perm = std::make_shared<std::vector<Nat>>();
    perm->resize(static_cast<std::size_t>(2 * range));
    for (Nat v = 0; v < 2 * range; ++v) (*perm)[static_cast<std::size_t>(v)] = v;
    SplitMix64 rng(seed);
    for (Nat i = 2 * range; i > 1; --i) {
      const Nat j = rng.next_below(i);
      std::swap((*perm)[static_cast<std::size_t>(i - 1)], (*perm)[static_cast<std::size_t>(j)]);
    }
    auto table = std::make_shared<const std::vector<Nat>>(std::move(*perm));
    return CandidateMap(
        Mode::SeededInjection,
        "inj:seed=" + std::to_string(seed) + ",range=" + std::to_string(range),
        [table, range](Nat x) {
          return x < range ? (*table)[static_cast<std::size_t>(x)] : x;
        });
  }

  // Built to dodge the deviation branch of the pigeonhole audit: on inputs
  // (k+1)y + j it stays inside the k-slot window {ky..ky+k-1}, so the k+1
  // values are forced to collide.
  static CandidateMap adversarial_identity_seeker(Nat k) {
    if (k < 1) throw std::invalid_argument("adversarial_identity_seeker: k must be >= 1");
    return CandidateMap(Mode::AdversarialIdentitySeeker, "adversary:k=" + std::to_string(k),
                        [k](Nat x) {
                          const Nat y = x / (k + 1);
                          const Nat j = x % (k + 1);
                          const u128 v = static_cast<u128>(k) * y + std::min(j, k - 1);
                          if (v > kNatMax) throw CapacityError("adversary candidate overflows");
                          return static_cast<Nat>(v);
                        });
  }

 private:
  CandidateMap(Mode mode, std::string descriptor, std::function<Nat(Nat)> eval)
      : mode_(mode), descriptor_(std::move(descriptor)), eval_(std::move(eval)) {}

  Mode mode_;
  std::string descriptor_;
  std::function<Nat(Nat)> eval_;
};

// ---------------------------------------------------------------------------
// Audit outcomes.

struct Deviation {
  Nat point;
  Nat value;
};

struct Collision {
  Nat point1;
  Nat point2;
  Nat value;
};

struct BudgetStats {
  Nat evaluated = 0;
  Nat distinct_projections = 0;
  Nat max_image_multiplicity = 0;
};

struct BudgetExhausted {
  BudgetStats stats;
};

struct RangeViolation {
  Nat input;
  Nat image;
};

struct AuditOutcome {
  std::variant<Deviation, Collision, BudgetExhausted, RangeViolation> result;
  std::string context;  // which dichotomy produced it

  bool is_deviation() const { return std::holds_alternative<Deviation>(result); }
  bool is_collision() const { return std::holds_alternative<Collision>(result); }
  bool is_budget_exhausted() const { return std::holds_alternative<BudgetExhausted>(result); }
  bool is_range_violation() const { return std::holds_alternative<RangeViolation>(result); }

  const Deviation& deviation() const { return std::get<Deviation>(result); }
  const Collision& collision() const { return std::get<Collision>(result); }
  const BudgetStats& stats() const { return std::get<BudgetExhausted>(result).stats; }
  const RangeViolation& range_violation() const { return std::get<RangeViolation>(result); }
};

// ---------------------------------------------------------------------------
// Chain-embedding audit (thickening chains).

namespace detail {

inline Nat chain_input(Nat k, Nat y, Nat j) {
  const u128 v = static_cast<u128>(k + 1) * y + j;
  if (v > kNatMax) throw CapacityError("chain audit: (k+1)y + j overflows");
  return static_cast<Nat>(v);
}

}  // namespace detail

// The k+1 candidate autoreductions f_j(y) = floor(h((k+1)y + j) / k).
template <typename H>
std::vector<std::function<Nat(Nat)>> chain_autoreductions(const H& h, Nat k) {
  if (k < 1) throw std::invalid_argument("chain_autoreductions: k must be >= 1");
  std::vector<std::function<Nat(Nat)>> maps;
  maps.reserve(static_cast<std::size_t>(k + 1));
  for (Nat j = 0; j <= k; ++j) {
    maps.push_back([h, k, j](Nat y) { return h(detail::chain_input(k, y, j)) / k; });
  }
  return maps;
}

// Per-point dichotomy: either some f_j(y) deviates from y (least j wins), or
// all k+1 images of h land in the k-slot window V_y = {ky..ky+k-1} and two
// of them must coincide. A clean outcome is logically impossible.
template <typename H>
AuditOutcome pigeonhole_audit(const H& h, Nat k, Nat y) {
  if (k < 1) throw std::invalid_argument("pigeonhole_audit: k must be >= 1");
  const std::string context =
      "pigeonhole:k=" + std::to_string(k) + ",y=" + std::to_string(y);
  std::vector<Nat> inputs(static_cast<std::size_t>(k + 1));
  std::vector<Nat> images(static_cast<std::size_t>(k + 1));
  for (Nat j = 0; j <= k; ++j) {
    inputs[static_cast<std::size_t>(j)] = detail::chain_input(k, y, j);
    images[static_cast<std::size_t>(j)] = h(inputs[static_cast<std::size_t>(j)]);
    if (images[static_cast<std::size_t>(j)] / k != y) {
      return AuditOutcome{Deviation{j, images[static_cast<std::size_t>(j)] / k}, context};
    }
  }
  for (Nat second = 1; second <= k; ++second) {
    for (Nat first = 0; first < second; ++first) {
      if (images[static_cast<std::size_t>(first)] == images[static_cast<std::size_t>(second)]) {
        return AuditOutcome{Collision{inputs[static_cast<std::size_t>(first)],
                                      inputs[static_cast<std::size_t>(second)],
                                      images[static_cast<std::size_t>(first)]},
                            context};
      }
    }
  }
  throw std::logic_error("pigeonhole_audit: k+1 values in k slots without collision");
}

// ---------------------------------------------------------------------------
// Pyramid audit (linearly growing columns defeat any global fiber bound).

// Evidence that every member of column x maps to x: x+1 codes, more than any
// claimed bound c <= x.
struct BoundRefutation {
  Nat x;
  std::vector<Nat> column_codes;
};

using PyramidStep = std::variant<Nat, BoundRefutation>;

// One evaluation of the extracted map g at x: identity below c, otherwise
// the first off-x value found in column x. If the column yields none, the
// search itself refutes the claimed bound c.
template <typename F>
PyramidStep pyramid_autoreduction_step(const F& f, Nat c, Nat x) {
  if (c < 1) throw std::invalid_argument("pyramid_autoreduction: c must be >= 1");
  if (x < c) return PyramidStep{std::in_place_index<0>, x};
  for (Nat y = 0; y <= x; ++y) {
    const Nat value = f(pair_code(x, y));
    if (value != x) return PyramidStep{std::in_place_index<0>, value};
  }
  BoundRefutation refutation{x, {}};
  refutation.column_codes.reserve(static_cast<std::size_t>(x + 1));
  for (Nat y = 0; y <= x; ++y) refutation.column_codes.push_back(pair_code(x, y));
  return PyramidStep{std::move(refutation)};
}

// The total map g as a value.
template <typename F>
std::function<PyramidStep(Nat)> pyramid_autoreduction(F f, Nat c) {
  if (c < 1) throw std::invalid_argument("pyramid_autoreduction: c must be >= 1");
  return [f = std::move(f), c](Nat x) { return pyramid_autoreduction_step(f, c, x); };
}

// ---------------------------------------------------------------------------
// Calibrated-domain audit (search for a projection landing in S).

// Walks f along column x of D_T, projecting to first coordinates, until one
// lands in S (a deviation witness, since x is outside S) or the budget runs
// out. Termination is only guaranteed for genuine reductions, hence the
// explicit budget.
template <typename F>
AuditOutcome calibrated_autoreduction(const F& f, const OmegaSet& s, const OmegaSet& t,
                                      Nat x, Nat budget) {
  if (!t.member(x) || s.member(x)) {
    throw std::invalid_argument("calibrated_autoreduction: x must lie in T \\ S");
  }
  const std::string context = "calibrated-search:x=" + std::to_string(x);
  std::unordered_set<Nat> projections;
  std::unordered_map<Nat, Nat> image_multiplicity;
  Nat max_multiplicity = 0;
  for (Nat i = 0; i < budget; ++i) {
    const Nat image = f(pair_code(x, i));
    const Nat projection = unpair_code(image).first;
    if (s.member(projection)) {
      return AuditOutcome{Deviation{x, projection}, context};
    }
    projections.insert(projection);
    max_multiplicity = std::max(max_multiplicity, ++image_multiplicity[image]);
  }
  return AuditOutcome{
      BudgetExhausted{BudgetStats{budget, projections.size(), max_multiplicity}}, context};
}

// ---------------------------------------------------------------------------
// Bounded-calibrated audit (width-2 columns force a collision).

// The two extracted autoreductions of the bounded construction:
// g0(x) = pi1(f(<x,0>)), and g1(x) = pi1(f(<x,1>)) on T, identity off T.
template <typename F>
std::pair<std::function<Nat(Nat)>, std::function<Nat(Nat)>>
bounded_calibrated_autoreductions(const F& f, const OmegaSet& t) {
  auto g0 = [f](Nat x) { return unpair_code(f(pair_code(x, 0))).first; };
  auto g1 = [f, t](Nat x) {
    return t.member(x) ? unpair_code(f(pair_code(x, 1))).first : x;
  };
  return {std::move(g0), std::move(g1)};
}

// For x in T \ S: if either extracted value leaves x, that is a deviation;
// otherwise both images sit over column x of E_S, where x (not in S) has the
// single code <x,0>, so f has collided. Images outside E_S are their own
// refutation outcome. Never clean.
template <typename F>
AuditOutcome bounded_collision_audit(const F& f, const OmegaSet& s, const OmegaSet& t,
                                     Nat x) {
  if (!t.member(x) || s.member(x)) {
    throw std::invalid_argument("bounded_collision_audit: x must lie in T \\ S");
  }
  const std::string context = "bounded-collision:x=" + std::to_string(x);
  const auto in_e_s = [&s](Nat code) {
    const auto [first, second] = unpair_code(code);
    return second == 0 || (second == 1 && s.member(first));
  };
  const Nat input0 = pair_code(x, 0);
  const Nat input1 = pair_code(x, 1);
  const Nat image0 = f(input0);
  if (!in_e_s(image0)) return AuditOutcome{RangeViolation{input0, image0}, context};
  const Nat image1 = f(input1);
  if (!in_e_s(image1)) return AuditOutcome{RangeViolation{input1, image1}, context};
  const Nat g0 = unpair_code(image0).first;
  if (g0 != x) return AuditOutcome{Deviation{x, g0}, context};
  const Nat g1 = unpair_code(image1).first;
  if (g1 != x) return AuditOutcome{Deviation{x, g1}, context};
  // both images have first coordinate x with x outside S: both are <x,0>
  return AuditOutcome{Collision{input0, input1, image0}, context};
}

// ---------------------------------------------------------------------------
// Cylinder column statistics (bi-immunity stress).

struct ColumnImageStats {
  Nat window = 0;
  Nat distinct_images = 0;
  Nat max_multiplicity = 0;
  Nat agreeing = 0;     // projections on member(A, x)'s side
  Nat disagreeing = 0;  // projections on the other side
};

// Evaluates h across the first W codes of cylinder column V_x. Multiplicity
// growth with W flags non-finite-to-one behavior; a split A-side ledger
// flags membership non-preservation.
template <typename H>
ColumnImageStats column_image_audit(const H& h, const OmegaSet& a, Nat x, Nat w) {
  ColumnImageStats stats;
  stats.window = w;
  const bool side = a.member(x);
  std::unordered_map<Nat, Nat> image_multiplicity;
  for (Nat i = 0; i < w; ++i) {
    const Nat image = h(pair_code(x, i));
    stats.max_multiplicity = std::max(stats.max_multiplicity, ++image_multiplicity[image]);
    if (a.member(unpair_code(image).first) == side) {
      ++stats.agreeing;
    } else {
      ++stats.disagreeing;
    }
  }
  stats.distinct_images = image_multiplicity.size();
  return stats;
}

// ---------------------------------------------------------------------------
// Identity-tail reports and preservation rates.

struct DeviationReport {
  Nat window = 0;
  std::vector<Nat> deviations;                // all x < window with g(x) != x
  std::optional<Nat> identity_tail_start;     // least n0 with no deviation in [n0, window)
};

template <typename G>
DeviationReport eventual_identity_report(const G& g, Nat n) {
  DeviationReport report;
  report.window = n;
  for (Nat x = 0; x < n; ++x) {
    if (g(x) != x) report.deviations.push_back(x);
  }
  if (report.deviations.empty()) {
    report.identity_tail_start = 0;
  } else {
    const Nat tail = report.deviations.back() + 1;
    if (tail < n) report.identity_tail_start = tail;
  }
  return report;
}

struct Rational {
  Nat num = 0;
  Nat den = 0;

  // Empty windows count as vacuously preserved.
  double value() const { return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den); }
};

// Fraction of x < N at which g preserves A-membership.
template <typename G>
Rational preservation_rate(const G& g, const OmegaSet& a, Nat n) {
  Nat hits = 0;
  for (Nat x = 0; x < n; ++x) {
    if (a.member(x) == a.member(g(x))) ++hits;
  }
  return Rational{hits, n};
}

// ---------------------------------------------------------------------------
// Candidate generation.

struct AffineGridSpec {
  Nat amax;  // a in [1..amax]
  Nat bmax;  // b in [0..bmax]
};

struct InjectionBatchSpec {
  Nat seed;  // batch uses seeds seed..seed+batch-1
  Nat range;
};

struct AdversarySpec {
  Nat k;
};

struct TableFileSpec {
  std::string path;  // JSON list of [input, output] pairs
};

using GeneratorSpec =
    std::variant<AffineGridSpec, InjectionBatchSpec, AdversarySpec, TableFileSpec>;

inline CandidateMap load_table_candidate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open candidate table file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid candidate table file " + path + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("candidate table file must be a JSON list of [input, output] pairs");
  }
  std::vector<std::pair<Nat, Nat>> entries;
  entries.reserve(doc.size());
  for (const auto& row : doc) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number_unsigned() ||
        !row[1].is_number_unsigned()) {
      throw std::runtime_error("candidate table entries must be [input, output] pairs of naturals");
    }
    entries.emplace_back(row[0].get<Nat>(), row[1].get<Nat>());
  }
  return CandidateMap::table(std::move(entries));
}

// Deterministic candidate list for a generator family. `batch` is the batch
// size for injection families; the other families are fully determined by
// their spec.
inline std::vector<CandidateMap> generate_candidates(const GeneratorSpec& spec, Nat batch) {
  std::vector<CandidateMap> candidates;
  if (const auto* affine = std::get_if<AffineGridSpec>(&spec)) {
    for (Nat a = 1; a <= affine->amax; ++a) {
      for (Nat b = 0; b <= affine->bmax; ++b) {
        candidates.push_back(CandidateMap::affine(a, b));
      }
    }
  } else if (const auto* inj = std::get_if<InjectionBatchSpec>(&spec)) {
    for (Nat i = 0; i < batch; ++i) {
      candidates.push_back(CandidateMap::seeded_injection(inj->seed + i, inj->range));
    }
  } else if (const auto* adversary = std::get_if<AdversarySpec>(&spec)) {
    candidates.push_back(CandidateMap::adversarial_identity_seeker(adversary->k));
  } else if (const auto* table = std::get_if<TableFileSpec>(&spec)) {
    candidates.push_back(load_table_candidate(table->path));
  }
  return candidates;
}

}  // namespace omegalab
