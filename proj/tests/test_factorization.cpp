#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bw/factorization.hpp"

using namespace bw;
using cat::FinCat;
using cat::RawCategory;

static RawCategory raw_parallel() {
    RawCategory r;
    r.objects = {"C", "D"};
    r.morphisms = {{"idC", "C", "C"}, {"idD", "D", "D"}, {"a", "C", "D"}, {"b", "C", "D"}};
    r.identities = {{"C", "idC"}, {"D", "idD"}};
    r.compose = {{"idC", "idC", "idC"}, {"idD", "idD", "idD"}, {"a", "idC", "a"},
                 {"idD", "a", "a"},     {"b", "idC", "b"},     {"idD", "b", "b"}};
    return r;
}

static RawCategory raw_chain3() {  // free category on 0 -> 1 -> 2
    RawCategory r;
    r.objects = {"0", "1", "2"};
    r.morphisms = {{"i0", "0", "0"}, {"i1", "1", "1"}, {"i2", "2", "2"},
                   {"f", "0", "1"},  {"g", "1", "2"},  {"gf", "0", "2"}};
    r.identities = {{"0", "i0"}, {"1", "i1"}, {"2", "i2"}};
    r.compose = {{"i0", "i0", "i0"}, {"i1", "i1", "i1"}, {"i2", "i2", "i2"}, {"f", "i0", "f"},
                 {"i1", "f", "f"},   {"g", "i1", "g"},   {"i2", "g", "g"},   {"gf", "i0", "gf"},
                 {"i2", "gf", "gf"}, {"g", "f", "gf"}};
    return r;
}

TEST_CASE("factorization category of the parallel-arrow category") {
    FinCat s = cat::validate_category(raw_parallel());
    auto fc = fact::build_fact_cat(s);
    CHECK(fc.cat.num_objects() == 4);
    // idC has 3 incoming factorizations (idC, a, b on the left), idD has 3
    // (idD, a, b on the right), a and b only their identities
    CHECK(fc.cat.num_morphisms() == 8);

    long a = s.mor_index("a"), idC = s.mor_index("idC"), idD = s.mor_index("idD");
    long k = fc.pair_index(a, idC, idC);
    CHECK(fc.from[k] == idC);
    CHECK(fc.to[k] == a);
    CHECK(fc.cat.is_identity(fc.pair_index(idC, idC, idC)));

    // composition law (a', b') ∘ (a, b) = (a'∘a, b∘b')
    long k1 = fc.pair_index(a, idC, idC);   // idC -> a
    long k2 = fc.pair_index(idD, idC, a);   // a -> a (identity of a)
    long comp = fc.cat.compose(k2, k1);
    CHECK(fc.alpha[comp] == a);
    CHECK(fc.beta[comp] == idC);
}

TEST_CASE("induced functor on factorization categories") {
    FinCat s = cat::validate_category(raw_parallel());
    auto fc = fact::build_fact_cat(s);
    auto idhat = fact::induced_hat(cat::identity_functor(s), fc, fc);
    CHECK(idhat == cat::identity_functor(fc.cat));

    // collapse a and b: endofunctor sending b -> a
    std::vector<long> om{0, 1}, mm{s.mor_index("idC"), s.mor_index("idD"), s.mor_index("a"),
                                   s.mor_index("a")};
    auto f = cat::validate_functor(s, s, om, mm);
    auto fhat = fact::induced_hat(f, fc, fc);
    long b = s.mor_index("b"), idC = s.mor_index("idC");
    long kb = fc.pair_index(b, idC, idC);
    long ka = fc.pair_index(s.mor_index("a"), idC, idC);
    CHECK(fhat.mor_map[kb] == ka);
}

// The sign system on the parallel-arrow category: all values Z, pushes are the
// identity, pulling along b negates. (This is the system whose degree-0
// coboundary is (c, d) -> (c - d, c + d).)
static fact::NaturalSystem sign_system(const FinCat& s) {
    fact::NaturalSystem d;
    d.base = &s;
    d.value.assign(s.num_morphisms(), ab::Group::free(1));
    long idC = s.mor_index("idC"), idD = s.mor_index("idD");
    long a = s.mor_index("a"), b = s.mor_index("b");
    auto one = ab::Hom::identity(ab::Group::free(1));
    auto neg = one.negated();
    d.push[{a, idC}] = one;
    d.push[{b, idC}] = one;
    d.pull[{a, idD}] = one;
    d.pull[{b, idD}] = neg;
    return d;
}

TEST_CASE("natural system validation") {
    FinCat s = cat::validate_category(raw_parallel());
    auto fc = fact::build_fact_cat(s);

    auto d = fact::validate_natural_system(sign_system(s), fc);
    CHECK(d.at(0).invariants() == ab::Invariants{1, {}});
    // identity maps were filled in
    CHECK(d.push.size() + d.pull.size() == 12);  // 6 pushes + 6 pulls, identities included

    auto c = fact::constant_system(s, ab::Group::with_invariants(0, {2}));
    CHECK_NOTHROW(fact::validate_natural_system(c, fc));

    // structure map D(alpha, beta) = pull_beta ∘ push_alpha
    long b = s.mor_index("b"), idC = s.mor_index("idC"), idD = s.mor_index("idD");
    auto m = d.structure_map(idD, b, idD);  // idD -> b by (idD, b)
    CHECK(m.mat.at(0, 0) == -1);
    auto m2 = d.structure_map(b, idC, idC);  // idC -> b by (b, idC)
    CHECK(m2.mat.at(0, 0) == 1);
}

TEST_CASE("functoriality failures are caught") {
    FinCat c = cat::validate_category(raw_chain3());
    auto fc = fact::build_fact_cat(c);

    auto d = fact::constant_system(c, ab::Group::free(1));
    // push along g after f must match push along gf; doubling one breaks it
    d.push[{c.mor_index("g"), c.mor_index("f")}] =
        ab::Hom(ab::Group::free(1), ab::Group::free(1), lin::IntMatrix::from_rows({{2}}));
    CHECK_THROWS_WITH_AS(fact::validate_natural_system(d, fc), doctest::Contains("NotFunctorial"),
                         cat::Error);

    // shape mismatches are MalformedHom
    auto d2 = fact::constant_system(c, ab::Group::free(1));
    d2.push[{c.mor_index("g"), c.mor_index("f")}] =
        ab::Hom(ab::Group::free(2), ab::Group::free(1), lin::IntMatrix::from_rows({{1, 0}}));
    CHECK_THROWS_WITH_AS(fact::validate_natural_system(d2, fc), doctest::Contains("MalformedHom"),
                         cat::Error);

    // a push not defined on torsion
    auto d3 = fact::constant_system(c, ab::Group::with_invariants(0, {2}));
    auto& h = d3.push[{c.mor_index("g"), c.mor_index("f")}];
    // replace Z/2 -> Z/2 by something landing in Z: forge dst as free
    d3.value[c.mor_index("gf")] = ab::Group::free(1);
    CHECK_THROWS_AS(fact::validate_natural_system(d3, fc), cat::Error);
    (void)h;
}

TEST_CASE("pullback systems") {
    FinCat s = cat::validate_category(raw_parallel());
    FinCat term = cat::interval_category(0);
    auto tfc = fact::build_fact_cat(term);
    auto sfc = fact::build_fact_cat(s);

    auto dz = fact::validate_natural_system(fact::constant_system(term, ab::Group::free(1)), tfc);
    auto bang = cat::all_functors(s, term).at(0);
    auto pulled = fact::validate_natural_system(fact::pullback_system(bang, dz), sfc);
    for (long l = 0; l < s.num_morphisms(); ++l)
        CHECK(pulled.at(l).invariants() == ab::Invariants{1, {}});

    // pulling the sign system back along the identity is the identity
    auto d = fact::validate_natural_system(sign_system(s), sfc);
    auto same = fact::pullback_system(cat::identity_functor(s), d);
    long b = s.mor_index("b"), idD = s.mor_index("idD");
    CHECK(same.pull_map(b, idD).mat.at(0, 0) == -1);
}

TEST_CASE("ring pairings validate and evaluate bilinearly") {
    FinCat s = cat::validate_category(raw_parallel());
    auto rp = fact::ring_pairing(s, 0);
    CHECK_NOTHROW(fact::validate_pairing(rp.pairing));
    long a = s.mor_index("a"), idC = s.mor_index("idC");
    CHECK(rp.pairing.eval(a, idC, {3}, {5}) == ab::Vec{15});

    auto rp2 = fact::ring_pairing(s, 2);
    CHECK_NOTHROW(fact::validate_pairing(rp2.pairing));
    CHECK(rp2.system.at(0).invariants() == ab::Invariants{0, {2}});

    CHECK_THROWS_AS(fact::ring_pairing(s, 1), cat::Error);

    // break naturality: scale a single entry
    rp.pairing.table[{a, idC}] = {{ab::Vec{2}}};
    CHECK_THROWS_WITH_AS(fact::validate_pairing(rp.pairing),
                         doctest::Contains("PairingNotNatural"), cat::Error);
}

TEST_CASE("pullback pairing transports the table") {
    FinCat s = cat::validate_category(raw_parallel());
    FinCat term = cat::interval_category(0);
    auto rp = fact::ring_pairing(term, 3);
    auto bang = cat::all_functors(s, term).at(0);
    auto pd = fact::pullback_system(bang, rp.system);
    auto pp = fact::pullback_pairing(bang, rp.pairing, pd, pd, pd);
    CHECK_NOTHROW(fact::validate_pairing(pp));
    long a = s.mor_index("a"), idC = s.mor_index("idC");
    CHECK(pp.eval(a, idC, {2}, {2}) == ab::Vec{4});
}
