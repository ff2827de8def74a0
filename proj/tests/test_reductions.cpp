#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "omegalab/omegalab.hpp"

using namespace omegalab;

namespace {

Reduction identity_reduction(const std::string& desc) {
  return Reduction{[](Nat x) { return x; }, ReductionClass::one_one(), desc, desc};
}

}  // namespace

TEST_CASE("membership preservation verdicts") {
  const OmegaSet a = seeded_random_set(5);
  const OmegaSet a2 = thicken(a, 2);

  // g(x) = 2x embeds A into its 2-thickening: floor(2x/2) = x
  const Reduction up = thicken_witness_up(2, a.descriptor());
  const Verdict ok = check_membership_preservation(up, a, a2, 10000);
  CHECK_FALSE(ok.refuted());
  CHECK(ok.window == 10000);

  // identity can never reduce A to its complement
  const Verdict bad =
      check_membership_preservation(identity_reduction(a.descriptor()), a, complement(a), 10);
  REQUIRE(bad.refuted());
  REQUIRE(bad.counterexample.has_value());
  CHECK(bad.counterexample->inputs == std::vector<Nat>{0});

  // successor flips parity
  const Reduction successor{[](Nat x) { return x + 1; }, ReductionClass::one_one(), "evens",
                            "evens"};
  const Verdict parity = check_membership_preservation(successor, evens(), evens(), 10);
  REQUIRE(parity.refuted());
  CHECK(parity.counterexample->inputs == std::vector<Nat>{0});
  CHECK(parity.counterexample->observed == std::vector<Nat>{1});
}

TEST_CASE("refuted membership counterexamples replay") {
  const OmegaSet a = seeded_random_set(11);
  const OmegaSet b = seeded_random_set(12);
  const Reduction r{[](Nat x) { return 3 * x + 1; }, ReductionClass::many_one(),
                    a.descriptor(), b.descriptor()};
  const Verdict v = check_membership_preservation(r, a, b, 10000);
  REQUIRE(v.refuted());
  const Nat x = v.counterexample->inputs[0];
  const Nat fx = v.counterexample->observed[0];
  CHECK(r.map(x) == fx);
  CHECK(a.member(x) != b.member(fx));
  // least violation: everything below checks out
  for (Nat below = 0; below < x; ++below) {
    REQUIRE(a.member(below) == b.member(r.map(below)));
  }
}

TEST_CASE("injectivity verdicts") {
  const Reduction doubling{[](Nat x) { return 2 * x; }, ReductionClass::one_one(), "A", "B"};
  CHECK_FALSE(check_injectivity(doubling, 10000).refuted());

  const Reduction halving{[](Nat x) { return x / 2; }, ReductionClass::bounded(2), "A", "B"};
  const Verdict v = check_injectivity(halving, 3);
  REQUIRE(v.refuted());
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->inputs == std::vector<Nat>{0, 1});
  CHECK(v.counterexample->observed == std::vector<Nat>{0});
  CHECK(halving.map(0) == halving.map(1));

  CHECK_FALSE(check_injectivity(chain_witness(2), 10000).refuted());
}

TEST_CASE("preimage bound verdicts") {
  const Reduction down3 = thicken_witness_down(3);

  const Verdict ok = check_preimage_bound(down3, 3, 3000, 999);
  CHECK_FALSE(ok.refuted());
  CHECK_FALSE(ok.caveat.empty());  // counts are lower bounds
  const auto counts = preimage_counts(down3, 3000, 999);
  for (Nat y = 0; y < 999; ++y) {
    REQUIRE(counts[y] == 3);  // exactly k consecutive integers per fiber
  }

  const Verdict tight = check_preimage_bound(down3, 2, 3000, 999);
  REQUIRE(tight.refuted());
  CHECK(tight.counterexample->inputs == std::vector<Nat>{0});
  CHECK(tight.counterexample->observed == std::vector<Nat>{3});

  CHECK_FALSE(check_preimage_bound(identity_reduction("A"), 1, 10000, 10000).refuted());
  CHECK_THROWS_AS(check_preimage_bound(down3, 0, 10, 10), std::invalid_argument);
}

TEST_CASE("composition of witnesses") {
  const Reduction times2{[](Nat x) { return 2 * x; }, ReductionClass::one_one(), "A", "B"};
  const Reduction times3{[](Nat x) { return 3 * x; }, ReductionClass::one_one(), "B", "C"};
  const Reduction times6 = compose(times2, times3);
  CHECK(times6.claimed_class == ReductionClass::one_one());
  CHECK(times6.source == "A");
  CHECK(times6.target == "C");
  for (Nat x = 0; x < 100; ++x) REQUIRE(times6.map(x) == 6 * x);

  const Reduction half{[](Nat x) { return x / 2; }, ReductionClass::bounded(2), "A6", "A3"};
  const Reduction third{[](Nat x) { return x / 3; }, ReductionClass::bounded(3), "A3", "A"};
  const Reduction sixth = compose(half, third);
  CHECK(sixth.claimed_class == ReductionClass::bounded(6));
  // brute-force fiber count over the window confirms the product bound is hit
  const auto counts = preimage_counts(sixth, 6000, 1000);
  Nat max_count = 0;
  for (Nat y = 0; y < 1000; ++y) max_count = std::max(max_count, counts[y]);
  CHECK(max_count == 6);

  const Reduction viaIdentity = compose(identity_reduction("A"), times2);
  CHECK(viaIdentity.claimed_class == times2.claimed_class);
  for (Nat x = 0; x < 50; ++x) REQUIRE(viaIdentity.map(x) == times2.map(x));

  CHECK_THROWS_AS(compose(times2, times2), std::invalid_argument);  // B vs A
}

TEST_CASE("composition class algebra") {
  const auto join = [](ReductionClass a, ReductionClass b) {
    const Reduction r1{[](Nat x) { return x; }, a, "A", "B"};
    const Reduction r2{[](Nat x) { return x; }, b, "B", "C"};
    return compose(r1, r2).claimed_class;
  };
  CHECK(join(ReductionClass::one_one(), ReductionClass::one_one()) == ReductionClass::one_one());
  CHECK(join(ReductionClass::one_one(), ReductionClass::bounded(3)) == ReductionClass::bounded(3));
  CHECK(join(ReductionClass::bounded(2), ReductionClass::bounded(3)) == ReductionClass::bounded(6));
  CHECK(join(ReductionClass::bounded(2), ReductionClass::finite_one()) == ReductionClass::finite_one());
  CHECK(join(ReductionClass::finite_one(), ReductionClass::one_one()) == ReductionClass::finite_one());
  CHECK(join(ReductionClass::many_one(), ReductionClass::one_one()) == ReductionClass::many_one());
  CHECK(join(ReductionClass::finite_one(), ReductionClass::many_one()) == ReductionClass::many_one());
}

TEST_CASE("class refinement chain") {
  const auto one = ReductionClass::one_one();
  const auto b1 = ReductionClass::bounded(1);
  const auto b2 = ReductionClass::bounded(2);
  const auto fin = ReductionClass::finite_one();
  const auto many = ReductionClass::many_one();

  CHECK(one.refines(b1));
  CHECK(b1.refines(b2));
  CHECK(b2.refines(fin));
  CHECK(fin.refines(many));
  CHECK(one.refines(many));
  CHECK(one.refines(one));

  CHECK_FALSE(b1.refines(one));
  CHECK_FALSE(b2.refines(b1));
  CHECK_FALSE(fin.refines(b2));
  CHECK_FALSE(many.refines(fin));
}

TEST_CASE("one-one witnesses satisfy the bounded(1) check") {
  std::vector<Reduction> corpus;
  for (Nat k = 1; k <= 4; ++k) {
    corpus.push_back(thicken_witness_up(k));
    corpus.push_back(chain_witness(k));
  }
  corpus.push_back(pullback_witness_r(bounded_calibrated_domain(evens())));
  corpus.push_back(pullback_witness_r(pyramid_domain()));
  for (const Reduction& r : corpus) {
    REQUIRE(r.claimed_class == ReductionClass::one_one());
    REQUIRE_FALSE(check_injectivity(r, 2000).refuted());
    REQUIRE_FALSE(check_preimage_bound(r, 1, 2000, 2000).refuted());
  }
}
