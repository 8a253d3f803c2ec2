// Randomized property tests: every invariant the modules promise, checked on
// generated instances (200+ cases each). Bodies live in properties.hpp so the
// acceptance runner can re-run them.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"

namespace {
void run(props::PropResult (*prop)(), long min_cases) {
    auto r = prop();
    CHECK(r.ok);
    CHECK(r.cases >= min_cases);
}
}  // namespace

TEST_CASE("delta composed with delta vanishes on random systems") {
    run(props::delta_delta_vanishes, 200);
}

TEST_CASE("reduced and full complexes have the same cohomology") {
    run(props::reduced_equals_full, 200);
}

TEST_CASE("Leibniz rule holds for random ring pairings and degree splits") {
    run(props::leibniz_rule, 250);
}

TEST_CASE("restriction along a composite is the composite of restrictions") {
    run(props::composite_restriction, 200);
}

TEST_CASE("ring pairings satisfy the three naturality identities") {
    run(props::pairing_naturality, 200);
}

TEST_CASE("image of gamma equals the kernel of the restriction") {
    run(props::gamma_image_is_restriction_kernel, 200);
}

TEST_CASE("relative products satisfy the gamma-naturality lemma") {
    run(props::relative_product_naturality, 200);
}

TEST_CASE("every generated covering is a bifibration") {
    run(props::covering_is_bifibration, 200);
}

TEST_CASE("pullbacks of bifibrations are bifibrations") {
    run(props::pullback_preserves_bifibration, 200);
}

TEST_CASE("Cartesian lifts are unique up to a unique vertical isomorphism") {
    run(props::cartesian_lift_uniqueness, 200);
}

TEST_CASE("homotopic and strict sectional category agree on generated coverings") {
    run(props::genus_equals_secat, 200);
}

TEST_CASE("the cup length of ker P* bounds the Svarc genus from below") {
    run(props::cup_length_bounds_genus, 200);
}
