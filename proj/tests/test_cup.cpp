#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bw/cup.hpp"
#include "bw/instances.hpp"

using namespace bw;
using ab::Vec;
using cat::FinCat;

namespace {

bool same_mod_2(const ab::IntMatrix& a, const std::vector<Vec>& rows) {
    if (a.rows() != (long)rows.size()) return false;
    for (long i = 0; i < a.rows(); ++i) {
        if (a.cols() != (long)rows[i].size()) return false;
        for (long j = 0; j < a.cols(); ++j)
            if ((a.at(i, j) - rows[i][j]) % 2 != 0) return false;
    }
    return true;
}

Vec random_cochain(std::mt19937_64& rng, long n, long modulus) {
    Vec v(n);
    for (auto& x : v) x = (long)(rng() % (unsigned long long)modulus);
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec scale(const ab::Int& c, const Vec& a) {
    Vec r = a;
    for (auto& x : r) x *= c;
    return r;
}

}  // namespace

TEST_CASE("cup-length of the sign cohomology of the parallel arrows is 1") {
    auto s = inst::load_bundled("parallel_arrows_S");
    auto cx = coh::build_complex(*s.base, *s.system);
    auto ring = cup::build_ring(cx, *s.pairing, 4);
    CHECK(!ring.capped);
    auto cl = cup::cup_length(ring);
    CHECK(cl.value == 1);
    CHECK(cl.exact);
    REQUIRE(cl.witness.size() == 1);
    CHECK(cl.witness[0].degree == 1);
    auto serial = cup::cup_length_serial(ring);
    CHECK(serial.value == cl.value);
    CHECK(serial.witness.size() == cl.witness.size());
}

TEST_CASE("projective plane base: the printed coboundaries and cohomology") {
    auto p2 = inst::load_bundled("projective_plane_covering");
    auto cx = coh::build_complex(*p2.base, *p2.system);
    CHECK(cx.complete);
    REQUIRE(cx.top() >= 2);
    CHECK(cx.groups[0].n == 3);  // F2^3 -> F2^6 -> F2^4 -> 0
    CHECK(cx.groups[1].n == 6);
    CHECK(cx.groups[2].n == 4);
    if (cx.top() >= 3) CHECK(cx.groups[3].n == 0);

    // degree-0 coordinates follow object order (X, Y, Z), degree-1 the
    // morphism order (alpha1, alpha2, beta1, beta2, gamma1, gamma2)
    CHECK(same_mod_2(cx.deltas[0].mat, {{1, 1, 0},
                                        {1, 1, 0},
                                        {0, 1, 1},
                                        {0, 1, 1},
                                        {1, 0, 1},
                                        {1, 0, 1}}));
    // 2-chain basis order: (beta1,alpha1), (beta1,alpha2), (beta2,alpha1),
    // (beta2,alpha2); rows follow that lexicographic order
    CHECK(same_mod_2(cx.deltas[1].mat, {{1, 0, 1, 0, 1, 0},
                                        {0, 1, 1, 0, 0, 1},
                                        {1, 0, 0, 1, 0, 1},
                                        {0, 1, 0, 1, 1, 0}}));

    auto h0 = coh::cohomology_at(cx, 0);
    auto h1 = coh::cohomology_at(cx, 1);
    auto h2 = coh::cohomology_at(cx, 2);
    CHECK(h0.invariants() == ab::Invariants{0, {2}});  // constant coefficients, connected base
    CHECK(h1.invariants() == ab::Invariants{0, {2}});
    CHECK(h2.invariants() == ab::Invariants{0, {2}});

    // the generator f = (1,0,0,1,1,0): a cocycle not in Im delta^1
    Vec f = {1, 0, 0, 1, 1, 0};
    CHECK(cx.groups[2].element_is_zero(cx.deltas[1].apply(f)));
    CHECK(!h1.element_is_zero(f));
    CHECK(h1.reduce(f) == Vec{1});
}

TEST_CASE("projective plane base: f smile f is the nonzero class of H^2") {
    auto p2 = inst::load_bundled("projective_plane_covering");
    auto cx = coh::build_complex(*p2.base, *p2.system);
    Vec f = {1, 0, 0, 1, 1, 0};
    Vec ff = cup::cup_cochain(cx, 1, f, cx, 1, f, cx, *p2.pairing);
    // f(beta_j) * f(alpha_i) on the four 2-chains; only (beta2, alpha1)
    // survives in our basis order
    CHECK(ff == Vec{0, 0, 1, 0});
    auto h2 = coh::cohomology_at(cx, 2);
    CHECK(!h2.element_is_zero(ff));
    // the same cocycle written in the other common basis ordering, (0,0,0,1),
    // is not a coboundary either
    CHECK(!h2.element_is_zero(Vec{0, 0, 0, 1}));

    auto ring = cup::build_ring(cx, *p2.pairing, 3);
    Vec prod = cup::cup_classes(ring, 1, {1}, 1, {1});
    CHECK(prod == Vec{1});
    auto cl = cup::cup_length(ring);
    CHECK(cl.value == 2);
    CHECK(cl.exact);
    REQUIRE(cl.witness.size() == 2);
    CHECK(cl.witness[0].degree == 1);
    CHECK(cl.witness[1].degree == 1);
}

TEST_CASE("H^1 of the projective plane total category vanishes") {
    auto p2 = inst::load_bundled("projective_plane_covering");
    auto pd = fact::pullback_system(*p2.p, *p2.system);
    auto cx = coh::build_complex(*p2.total, pd);
    CHECK(cx.groups[0].n == 6);  // F2^6 -> F2^12 -> F2^8 -> 0
    CHECK(cx.groups[1].n == 12);
    CHECK(cx.groups[2].n == 8);
    CHECK(coh::cohomology_at(cx, 1).invariants().trivial());

    // hence the H^1 generator of the base restricts to zero: ker P* in
    // degree 1 is everything
    auto base_cx = coh::build_complex(*p2.base, *p2.system);
    auto kg = coh::ker_generators(*p2.p, cx, base_cx, 1);
    REQUIRE(kg.size() == 1);
    CHECK(kg[0] == Vec{1});
}

namespace {

// free category on 0 -> 1 -> 2 -> 3; the top of its reduced complex is the
// 3-chain (c, b, a), so Leibniz signs matter up there
cat::FinCat chain4() {
    cat::RawCategory r;
    r.objects = {"0", "1", "2", "3"};
    r.morphisms = {{"i0", "0", "0"}, {"i1", "1", "1"}, {"i2", "2", "2"}, {"i3", "3", "3"},
                   {"a", "0", "1"},  {"b", "1", "2"},  {"c", "2", "3"},  {"ba", "0", "2"},
                   {"cb", "1", "3"}, {"cba", "0", "3"}};
    r.identities = {{"0", "i0"}, {"1", "i1"}, {"2", "i2"}, {"3", "i3"}};
    r.compose = {{"b", "a", "ba"}, {"c", "b", "cb"}, {"c", "ba", "cba"}, {"cb", "a", "cba"}};
    for (const auto& m : r.morphisms) {
        r.compose.push_back({r.identities[m.cod], m.id, m.id});
        if (r.identities[m.dom] != m.id) r.compose.push_back({m.id, r.identities[m.dom], m.id});
    }
    return cat::validate_category(r);
}

}  // namespace

TEST_CASE("Leibniz rule and its iterated form on random cochains") {
    std::mt19937_64 rng(77001);
    auto c4 = chain4();
    for (long modulus : {0L, 2L, 3L}) {
        auto rp = fact::ring_pairing(c4, modulus);
        auto cx = coh::build_complex(c4, rp.system);
        const fact::Pairing& mu = rp.pairing;
        REQUIRE(cx.groups[3].n == 1);  // the chain (c, b, a)
        auto rand_deg = [&](long n) {
            Vec v(cx.groups[n].n);
            for (auto& x : v) x = (long)(rng() % 7) - 3;
            return v;
        };
        auto cup2 = [&](long a, const Vec& x, long b, const Vec& y) {
            return cup::cup_cochain(cx, a, x, cx, b, y, cx, mu);
        };
        for (int it = 0; it < 80; ++it) {
            // Eq. (2) with (n, m) = (1, 1): the sign on the second term bites
            Vec f = rand_deg(1), g = rand_deg(1);
            Vec lhs = cx.deltas[2].apply(cup2(1, f, 1, g));
            Vec rhs = add(cup2(2, cx.deltas[1].apply(f), 1, g),
                          scale(-1, cup2(1, f, 2, cx.deltas[1].apply(g))));
            CHECK(cx.groups[3].element_is_zero(add(lhs, scale(-1, rhs))));
            // and with (0, 1): no sign
            Vec f0 = rand_deg(0);
            lhs = cx.deltas[1].apply(cup2(0, f0, 1, g));
            rhs = add(cup2(1, cx.deltas[0].apply(f0), 1, g),
                      cup2(0, f0, 2, cx.deltas[1].apply(g)));
            CHECK(cx.groups[2].element_is_zero(add(lhs, scale(-1, rhs))));

            // iterated Eq. (3) on (f0, f1, f2) of degrees (0, 1, 1):
            // N_1 = N_2 = 0 and N_3 = 1
            Vec f1 = rand_deg(1), f2 = rand_deg(1);
            Vec l3 = cx.deltas[2].apply(cup2(1, cup2(0, f0, 1, f1), 1, f2));
            Vec r3 = cup2(2, cup2(1, cx.deltas[0].apply(f0), 1, f1), 1, f2);
            r3 = add(r3, cup2(2, cup2(0, f0, 2, cx.deltas[1].apply(f1)), 1, f2));
            r3 = add(r3, scale(-1, cup2(1, cup2(0, f0, 1, f1), 2, cx.deltas[1].apply(f2))));
            CHECK(cx.groups[3].element_is_zero(add(l3, scale(-1, r3))));
        }
    }
}

TEST_CASE("class products do not depend on the representative") {
    std::mt19937_64 rng(77002);
    auto p2 = inst::load_bundled("projective_plane_covering");
    auto cx = coh::build_complex(*p2.base, *p2.system);
    auto h1 = coh::cohomology_at(cx, 1);
    auto h2 = coh::cohomology_at(cx, 2);
    Vec f = {1, 0, 0, 1, 1, 0};
    for (int it = 0; it < 50; ++it) {
        Vec g = add(f, cx.deltas[0].apply(random_cochain(rng, cx.groups[0].n, 2)));
        CHECK(h1.reduce(g) == h1.reduce(f));
        Vec ff = cup::cup_cochain(cx, 1, f, cx, 1, f, cx, *p2.pairing);
        Vec gg = cup::cup_cochain(cx, 1, g, cx, 1, g, cx, *p2.pairing);
        CHECK(h2.reduce(ff) == h2.reduce(gg));
    }
}

TEST_CASE("cochain-level cup product is associative for ring pairings") {
    std::mt19937_64 rng(77003);
    auto p2 = inst::load_bundled("projective_plane_covering");
    auto cx = coh::build_complex(*p2.base, *p2.system);
    const fact::Pairing& mu = *p2.pairing;
    for (int it = 0; it < 100; ++it) {
        Vec f = random_cochain(rng, cx.groups[0].n, 2);
        Vec g = random_cochain(rng, cx.groups[1].n, 2);
        Vec h = random_cochain(rng, cx.groups[1].n, 2);
        Vec l = cup::cup_cochain(cx, 1, cup::cup_cochain(cx, 0, f, cx, 1, g, cx, mu), cx, 1, h,
                                 cx, mu);
        Vec r = cup::cup_cochain(cx, 0, f, cx, 2, cup::cup_cochain(cx, 1, g, cx, 1, h, cx, mu),
                                 cx, mu);
        CHECK(l == r);
    }
}

TEST_CASE("generator-tuple search matches the all-class search oracle") {
    auto p2 = inst::load_bundled("projective_plane_covering");
    auto cx = coh::build_complex(*p2.base, *p2.system);
    auto ring = cup::build_ring(cx, *p2.pairing, 3);

    // enumerate every element of every positive-degree cohomology group
    // (coefficients are F2, so the groups are tiny) and brute-force the
    // longest nonzero product over all tuples
    std::vector<cup::DegClass> all;
    for (long d = 1; d <= ring.max_degree; ++d) {
        long n = ring.h[d].normal_form().n;
        for (long bits = 1; bits < (1L << n); ++bits) {
            Vec v(n);
            for (long j = 0; j < n; ++j) v[j] = (bits >> j) & 1;
            if (!ring.h[d].normal_form().element_is_zero(v)) all.push_back({d, v});
        }
    }
    long best = 0;
    std::vector<long> idx;
    auto rec = [&](auto&& self, long len) -> void {
        if ((long)idx.size() == len) {
            long deg = 0;
            for (long i : idx) deg += all[i].degree;
            if (deg > ring.max_degree) return;
            Vec cur = all[idx[0]].coords;
            long d = all[idx[0]].degree;
            for (size_t k = 1; k < idx.size(); ++k) {
                cur = cup::cup_classes(ring, d, cur, all[idx[k]].degree, all[idx[k]].coords);
                d += all[idx[k]].degree;
            }
            if (!ring.h[d].normal_form().element_is_zero(cur)) best = std::max(best, len);
            return;
        }
        for (long i = 0; i < (long)all.size(); ++i) {
            idx.push_back(i);
            self(self, len);
            idx.pop_back();
        }
    };
    for (long len = 1; len <= ring.max_degree; ++len) rec(rec, len);
    CHECK(best == cup::cup_length(ring).value);
    CHECK(best == cup::cup_length_serial(ring).value);
}

TEST_CASE("relative products need a geometric cover of the union") {
    auto p2 = inst::load_bundled("projective_plane_covering");
    const FinCat& b = *p2.base;
    auto cx = coh::build_complex(b, *p2.system);
    auto u0 = cat::subcategory_generated_by(b, {b.mor_index("alpha1"), b.mor_index("beta1")});
    auto u1 = cat::subcategory_generated_by(b, {b.mor_index("alpha2"), b.mor_index("beta2")});
    auto uni = cat::union_subcategory(u0, u1);
    auto cx0 = coh::build_complex(b, *p2.system, -1, true, &u0);
    auto cx1 = coh::build_complex(b, *p2.system, -1, true, &u1);
    auto cxu = coh::build_complex(b, *p2.system, -1, true, &uni);
    auto h0 = coh::cohomology_at(cx0, 1);
    auto h1r = coh::cohomology_at(cx1, 1);
    REQUIRE(h0.normal_form().n > 0);
    REQUIRE(h1r.normal_form().n > 0);
    Vec e0(h0.normal_form().n), e1(h1r.normal_form().n);
    e0[0] = e1[0] = 1;
    std::vector<cup::RelClass> factors = {{&cx0, &u0, 1, e0}, {&cx1, &u1, 1, e1}};
    // {u0, u1} leaves the mixed walks (alpha1, beta2) etc. uncovered
    CHECK_THROWS_WITH_AS(cup::relative_cup(cx, factors, uni, cxu, *p2.pairing),
                         doctest::Contains("NotGeometricCover"), cat::Error);
}

TEST_CASE("relative product respects gamma-naturality") {
    auto p2 = inst::load_bundled("projective_plane_covering");
    const FinCat& b = *p2.base;
    auto cx = coh::build_complex(b, *p2.system);
    auto ring = cup::build_ring(cx, *p2.pairing, 2);
    // u0 carries the (alpha1, beta1) walks, u1 the lone gamma2 arrow; the
    // pair is a geometric cover of its union
    auto u0 = cat::subcategory_generated_by(b, {b.mor_index("alpha1"), b.mor_index("beta1")});
    auto u1 = cat::subcategory_generated_by(b, {b.mor_index("gamma2")});
    auto uni = cat::union_subcategory(u0, u1);
    auto cx0 = coh::build_complex(b, *p2.system, -1, true, &u0);
    auto cx1 = coh::build_complex(b, *p2.system, -1, true, &u1);
    auto cxu = coh::build_complex(b, *p2.system, -1, true, &uni);
    auto h0 = coh::cohomology_at(cx0, 1);
    auto h1r = coh::cohomology_at(cx1, 1);
    auto g0 = coh::gamma_map(cx0, cx, 1);
    auto g1 = coh::gamma_map(cx1, cx, 1);
    auto gu = coh::gamma_map(cxu, cx, 2);
    for (long i = 0; i < h0.normal_form().n; ++i)
        for (long j = 0; j < h1r.normal_form().n; ++j) {
            Vec e0(h0.normal_form().n), e1(h1r.normal_form().n);
            e0[i] = e1[j] = 1;
            std::vector<cup::RelClass> factors = {{&cx0, &u0, 1, e0}, {&cx1, &u1, 1, e1}};
            Vec rel = cup::relative_cup(cx, factors, uni, cxu, *p2.pairing);
            Vec lhs = gu.apply(rel);
            Vec rhs = cup::cup_classes(ring, 1, g0.apply(e0), 1, g1.apply(e1));
            auto h2 = coh::cohomology_at(cx, 2);
            CHECK(h2.normal_form().element_is_zero(add(lhs, scale(-1, rhs))));
        }
}
