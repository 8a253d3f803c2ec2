// Shared hand-built categories and coefficient systems for the unit tests.
#ifndef TESTS_FIXTURES_HPP
#define TESTS_FIXTURES_HPP

#include "bw/factorization.hpp"

namespace fixtures {

using bw::cat::FinCat;
using bw::cat::RawCategory;

// Two parallel arrows a, b : C -> D.
inline RawCategory raw_parallel() {
    RawCategory r;
    r.objects = {"C", "D"};
    r.morphisms = {{"idC", "C", "C"}, {"idD", "D", "D"}, {"a", "C", "D"}, {"b", "C", "D"}};
    r.identities = {{"C", "idC"}, {"D", "idD"}};
    r.compose = {{"idC", "idC", "idC"}, {"idD", "idD", "idD"}, {"a", "idC", "a"},
                 {"idD", "a", "a"},     {"b", "idC", "b"},     {"idD", "b", "b"}};
    return r;
}

// Free category on 0 -> 1 -> 2.
inline RawCategory raw_chain3() {
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

// One object with a non-identity idempotent endomorphism (unbounded nerve).
inline RawCategory raw_idempotent() {
    RawCategory r;
    r.objects = {"X"};
    r.morphisms = {{"id", "X", "X"}, {"e", "X", "X"}};
    r.identities = {{"X", "id"}};
    r.compose = {{"id", "id", "id"}, {"e", "id", "e"}, {"id", "e", "e"}, {"e", "e", "e"}};
    return r;
}

// The sign system on the parallel-arrow category: all values Z, pushes are
// the identity, pulling along b negates; its degree-0 coboundary is
// (c, d) -> (c - d, c + d).
inline bw::fact::NaturalSystem sign_system(const FinCat& s) {
    bw::fact::NaturalSystem d;
    d.base = &s;
    d.value.assign(s.num_morphisms(), bw::ab::Group::free(1));
    long idC = s.mor_index("idC"), idD = s.mor_index("idD");
    long a = s.mor_index("a"), b = s.mor_index("b");
    auto one = bw::ab::Hom::identity(bw::ab::Group::free(1));
    d.push[{a, idC}] = one;
    d.push[{b, idC}] = one;
    d.pull[{a, idD}] = one;
    d.pull[{b, idD}] = one.negated();
    return d;
}

}  // namespace fixtures

#endif
