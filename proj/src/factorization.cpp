#include "bw/factorization.hpp"

namespace bw::fact {

using ab::Hom;
using ab::Vec;
using cat::Error;
using cat::RawCategory;

namespace {

bool equal_mod_rels(const ab::Group& g, const Vec& x, const Vec& y) {
    Vec d(x.size());
    for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return g.element_is_zero(d);
}

bool hom_equal(const Hom& a, const Hom& b) {
    if (a.mat.rows() != b.mat.rows() || a.mat.cols() != b.mat.cols()) return false;
    lin::LatticeSolver solver(a.dst.rels);
    for (long j = 0; j < a.mat.cols(); ++j) {
        Vec d(a.mat.rows());
        for (long i = 0; i < a.mat.rows(); ++i) d[i] = a.mat.at(i, j) - b.mat.at(i, j);
        if (!solver.contains(d)) return false;
    }
    return true;
}

}  // namespace

long FactCat::pair_index(long a, long b, long lambda) const {
    for (long k = 0; k < (long)alpha.size(); ++k)
        if (alpha[k] == a && beta[k] == b && from[k] == lambda) return k;
    throw Error("UnknownMorphism", "no such factorization pair");
}

FactCat build_fact_cat(const FinCat& c) {
    FactCat fc;
    fc.base = &c;
    RawCategory raw;
    for (long m = 0; m < c.num_morphisms(); ++m) raw.objects.push_back(c.mor_id(m));

    auto pid = [&](long a, long b, long l) {
        return "(" + c.mor_id(a) + "|" + c.mor_id(b) + ")@" + c.mor_id(l);
    };
    for (long l = 0; l < c.num_morphisms(); ++l)
        for (long a = 0; a < c.num_morphisms(); ++a) {
            if (c.dom(a) != c.cod(l)) continue;
            long al = c.compose(a, l);
            for (long b = 0; b < c.num_morphisms(); ++b) {
                if (c.cod(b) != c.dom(l)) continue;
                long mu = c.compose(al, b);
                raw.morphisms.push_back({pid(a, b, l), c.mor_id(l), c.mor_id(mu)});
                fc.alpha.push_back(a);
                fc.beta.push_back(b);
                fc.from.push_back(l);
                fc.to.push_back(mu);
            }
        }
    for (long l = 0; l < c.num_morphisms(); ++l)
        raw.identities[c.mor_id(l)] = pid(c.identity(c.cod(l)), c.identity(c.dom(l)), l);

    // (a',b') ∘ (a,b) = (a'∘a, b∘b')
    for (long k2 = 0; k2 < (long)fc.alpha.size(); ++k2)
        for (long k1 = 0; k1 < (long)fc.alpha.size(); ++k1) {
            if (fc.from[k2] != fc.to[k1]) continue;
            long a = c.compose(fc.alpha[k2], fc.alpha[k1]);
            long b = c.compose(fc.beta[k1], fc.beta[k2]);
            raw.compose.push_back(
                {pid(fc.alpha[k2], fc.beta[k2], fc.from[k2]), pid(fc.alpha[k1], fc.beta[k1], fc.from[k1]),
                 pid(a, b, fc.from[k1])});
        }
    fc.cat = cat::validate_category(raw);
    return fc;
}

FunctorMap induced_hat(const FunctorMap& f, const FactCat& src_fc, const FactCat& dst_fc) {
    std::vector<long> om(src_fc.cat.num_objects()), mm(src_fc.cat.num_morphisms());
    for (long l = 0; l < src_fc.cat.num_objects(); ++l) om[l] = f.mor_map[l];
    for (long k = 0; k < src_fc.cat.num_morphisms(); ++k)
        mm[k] = dst_fc.cat.mor_index(
            dst_fc.cat.mor_id(dst_fc.pair_index(f.mor_map[src_fc.alpha[k]], f.mor_map[src_fc.beta[k]],
                                                f.mor_map[src_fc.from[k]])));
    return cat::validate_functor(src_fc.cat, dst_fc.cat, std::move(om), std::move(mm));
}

const Hom& NaturalSystem::push_map(long a, long l) const {
    auto it = push.find({a, l});
    if (it == push.end()) throw Error("MalformedHom", "missing push map");
    return it->second;
}
const Hom& NaturalSystem::pull_map(long b, long l) const {
    auto it = pull.find({b, l});
    if (it == pull.end()) throw Error("MalformedHom", "missing pull map");
    return it->second;
}

Hom NaturalSystem::structure_map(long a, long b, long lambda) const {
    long al = base->compose(a, lambda);
    return pull_map(b, al).compose(push_map(a, lambda));
}

NaturalSystem validate_natural_system(NaturalSystem raw, const FactCat& fc) {
    const FinCat& c = *raw.base;
    if ((long)raw.value.size() != c.num_morphisms())
        throw Error("MalformedHom", "value table size mismatch");

    auto same_group = [](const ab::Group& a, const ab::Group& b) {
        return a.n == b.n && a.rels == b.rels;
    };

    // identity maps may be omitted; fill them in, verify them when given
    for (long l = 0; l < c.num_morphisms(); ++l) {
        long ic = c.identity(c.cod(l)), id = c.identity(c.dom(l));
        Hom idh = Hom::identity(raw.value[l]);
        if (auto it = raw.push.find({ic, l}); it != raw.push.end()) {
            if (!hom_equal(it->second, idh)) throw Error("NotFunctorial", "push of identity is not id");
        } else raw.push[{ic, l}] = idh;
        if (auto it = raw.pull.find({id, l}); it != raw.pull.end()) {
            if (!hom_equal(it->second, idh)) throw Error("NotFunctorial", "pull of identity is not id");
        } else raw.pull[{id, l}] = idh;
    }

    for (long l = 0; l < c.num_morphisms(); ++l) {
        for (long a = 0; a < c.num_morphisms(); ++a) {
            if (c.dom(a) != c.cod(l)) continue;
            const Hom& h = raw.push_map(a, l);
            if (!same_group(h.src, raw.value[l]) || !same_group(h.dst, raw.value[c.compose(a, l)]))
                throw Error("MalformedHom", "push " + c.mor_id(a) + " at " + c.mor_id(l));
            if (!h.well_defined())
                throw Error("MalformedHom",
                            "push " + c.mor_id(a) + " at " + c.mor_id(l) + " not defined on torsion");
        }
        for (long b = 0; b < c.num_morphisms(); ++b) {
            if (c.cod(b) != c.dom(l)) continue;
            const Hom& h = raw.pull_map(b, l);
            if (!same_group(h.src, raw.value[l]) || !same_group(h.dst, raw.value[c.compose(l, b)]))
                throw Error("MalformedHom", "pull " + c.mor_id(b) + " at " + c.mor_id(l));
            if (!h.well_defined())
                throw Error("MalformedHom",
                            "pull " + c.mor_id(b) + " at " + c.mor_id(l) + " not defined on torsion");
        }
    }

    // full functoriality over the factorization category
    std::vector<Hom> structure;
    structure.reserve(fc.cat.num_morphisms());
    for (long k = 0; k < fc.cat.num_morphisms(); ++k)
        structure.push_back(raw.structure_map(fc.alpha[k], fc.beta[k], fc.from[k]));
    for (long k2 = 0; k2 < fc.cat.num_morphisms(); ++k2)
        for (long k1 = 0; k1 < fc.cat.num_morphisms(); ++k1) {
            if (!fc.cat.composable(k2, k1)) continue;
            long k = fc.cat.compose(k2, k1);
            if (!hom_equal(structure[k], structure[k2].compose(structure[k1])))
                throw Error("NotFunctorial", "square fails at " + fc.cat.mor_id(k2) + " ∘ " +
                                                 fc.cat.mor_id(k1));
        }
    return raw;
}

NaturalSystem constant_system(const FinCat& c, const ab::Group& a) {
    NaturalSystem d;
    d.base = &c;
    d.value.assign(c.num_morphisms(), a);
    Hom idh = Hom::identity(a);
    for (long l = 0; l < c.num_morphisms(); ++l) {
        for (long m = 0; m < c.num_morphisms(); ++m) {
            if (c.dom(m) == c.cod(l)) d.push[{m, l}] = idh;
            if (c.cod(m) == c.dom(l)) d.pull[{m, l}] = idh;
        }
    }
    return d;
}

NaturalSystem pullback_system(const FunctorMap& f, const NaturalSystem& d) {
    NaturalSystem out;
    out.base = f.src;
    const FinCat& c = *f.src;
    out.value.resize(c.num_morphisms());
    for (long l = 0; l < c.num_morphisms(); ++l) out.value[l] = d.value[f.mor_map[l]];
    for (long l = 0; l < c.num_morphisms(); ++l)
        for (long m = 0; m < c.num_morphisms(); ++m) {
            if (c.dom(m) == c.cod(l)) out.push[{m, l}] = d.push_map(f.mor_map[m], f.mor_map[l]);
            if (c.cod(m) == c.dom(l)) out.pull[{m, l}] = d.pull_map(f.mor_map[m], f.mor_map[l]);
        }
    return out;
}

Vec Pairing::eval(long m1, long m2, const Vec& x, const Vec& y) const {
    auto it = table.find({m1, m2});
    if (it == table.end()) throw Error("MalformedHom", "pairing missing a 2-chain entry");
    const auto& t = it->second;
    Vec out(dout->at(dout->base->compose(m1, m2)).n);
    for (size_t i = 0; i < t.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < t[i].size(); ++j) {
            if (y[j] == 0) continue;
            for (size_t k = 0; k < out.size(); ++k) out[k] += x[i] * y[j] * t[i][j][k];
        }
    }
    return out;
}

RingPairing ring_pairing(const FinCat& c, const ab::Int& modulus) {
    if (modulus != 0 && modulus < 2) throw Error("MalformedHom", "ring modulus must be 0 or >= 2");
    ab::Group ring = modulus == 0 ? ab::Group::free(1)
                                  : ab::Group::with_invariants(0, {modulus});
    RingPairing rp;
    rp.system = constant_system(c, ring);
    rp.pairing.d1 = rp.pairing.d2 = rp.pairing.dout = &rp.system;
    for (long m1 = 0; m1 < c.num_morphisms(); ++m1)
        for (long m2 = 0; m2 < c.num_morphisms(); ++m2)
            if (c.composable(m1, m2)) rp.pairing.table[{m1, m2}] = {{Vec{1}}};
    return rp;
}

Pairing pullback_pairing(const FunctorMap& f, const Pairing& mu, const NaturalSystem& pd1,
                         const NaturalSystem& pd2, const NaturalSystem& pdout) {
    Pairing out;
    out.d1 = &pd1;
    out.d2 = &pd2;
    out.dout = &pdout;
    const FinCat& c = *f.src;
    for (long m1 = 0; m1 < c.num_morphisms(); ++m1)
        for (long m2 = 0; m2 < c.num_morphisms(); ++m2) {
            if (!c.composable(m1, m2)) continue;
            auto it = mu.table.find({f.mor_map[m1], f.mor_map[m2]});
            if (it == mu.table.end()) throw Error("MalformedHom", "pairing missing a 2-chain entry");
            out.table[{m1, m2}] = it->second;
        }
    return out;
}

void validate_pairing(const Pairing& p) {
    const FinCat& c = *p.d1->base;
    auto basis = [](long n) {
        std::vector<Vec> e(n, Vec());
        for (long i = 0; i < n; ++i) {
            e[i].assign(n, 0);
            e[i][i] = 1;
        }
        return e;
    };

    for (long m1 = 0; m1 < c.num_morphisms(); ++m1)
        for (long m2 = 0; m2 < c.num_morphisms(); ++m2) {
            if (!c.composable(m1, m2)) continue;
            auto it = p.table.find({m1, m2});
            if (it == p.table.end())
                throw Error("PairingNotNatural",
                            "missing entry at (" + c.mor_id(m1) + "," + c.mor_id(m2) + ")");
            const ab::Group& g1 = p.d1->at(m1);
            const ab::Group& g2 = p.d2->at(m2);
            const ab::Group& go = p.dout->at(c.compose(m1, m2));
            if ((long)it->second.size() != g1.n) throw Error("PairingNotNatural", "bad table shape");
            for (const auto& row : it->second) {
                if ((long)row.size() != g2.n) throw Error("PairingNotNatural", "bad table shape");
                for (const auto& v : row)
                    if ((long)v.size() != go.n) throw Error("PairingNotNatural", "bad value length");
            }
            // bilinearity kills relations on both sides
            auto e2 = basis(g2.n);
            for (long r = 0; r < g1.rels.cols(); ++r)
                for (long j = 0; j < g2.n; ++j)
                    if (!go.element_is_zero(p.eval(m1, m2, g1.rels.col(r), e2[j])))
                        throw Error("PairingNotNatural", "not defined on left torsion");
            auto e1 = basis(g1.n);
            for (long r = 0; r < g2.rels.cols(); ++r)
                for (long i = 0; i < g1.n; ++i)
                    if (!go.element_is_zero(p.eval(m1, m2, e1[i], g2.rels.col(r))))
                        throw Error("PairingNotNatural", "not defined on right torsion");
        }

    // identity 1: (g^* x) · y = x · (g_* y), on chains (l1, g, l2)
    for (long l1 = 0; l1 < c.num_morphisms(); ++l1)
        for (long g = 0; g < c.num_morphisms(); ++g) {
            if (c.dom(l1) != c.cod(g)) continue;
            for (long l2 = 0; l2 < c.num_morphisms(); ++l2) {
                if (c.dom(g) != c.cod(l2)) continue;
                long l1g = c.compose(l1, g), gl2 = c.compose(g, l2);
                const ab::Group& go = p.dout->at(c.compose(l1g, l2));
                auto e1 = basis(p.d1->at(l1).n);
                auto e2 = basis(p.d2->at(l2).n);
                for (const auto& x : e1)
                    for (const auto& y : e2) {
                        Vec lhs = p.eval(l1g, l2, p.d1->pull_map(g, l1).apply(x), y);
                        Vec rhs = p.eval(l1, gl2, x, p.d2->push_map(g, l2).apply(y));
                        if (!equal_mod_rels(go, lhs, rhs))
                            throw Error("PairingNotNatural",
                                        "identity 1 fails at (" + c.mor_id(l1) + "," + c.mor_id(g) +
                                            "," + c.mor_id(l2) + ")");
                    }
            }
        }

    // identity 2: f_*(x·y) = (f_* x)·y
    for (long f = 0; f < c.num_morphisms(); ++f)
        for (long l1 = 0; l1 < c.num_morphisms(); ++l1) {
            if (c.dom(f) != c.cod(l1)) continue;
            for (long l2 = 0; l2 < c.num_morphisms(); ++l2) {
                if (!c.composable(l1, l2)) continue;
                long l1l2 = c.compose(l1, l2), fl1 = c.compose(f, l1);
                const ab::Group& go = p.dout->at(c.compose(fl1, l2));
                auto e1 = basis(p.d1->at(l1).n);
                auto e2 = basis(p.d2->at(l2).n);
                for (const auto& x : e1)
                    for (const auto& y : e2) {
                        Vec lhs = p.dout->push_map(f, l1l2).apply(p.eval(l1, l2, x, y));
                        Vec rhs = p.eval(fl1, l2, p.d1->push_map(f, l1).apply(x), y);
                        if (!equal_mod_rels(go, lhs, rhs))
                            throw Error("PairingNotNatural",
                                        "identity 2 fails at (" + c.mor_id(f) + "," + c.mor_id(l1) +
                                            "," + c.mor_id(l2) + ")");
                    }
            }
        }

    // identity 3: h^*(x·y) = x·(h^* y)
    for (long l1 = 0; l1 < c.num_morphisms(); ++l1)
        for (long l2 = 0; l2 < c.num_morphisms(); ++l2) {
            if (!c.composable(l1, l2)) continue;
            for (long h = 0; h < c.num_morphisms(); ++h) {
                if (c.cod(h) != c.dom(l2)) continue;
                long l1l2 = c.compose(l1, l2), l2h = c.compose(l2, h);
                const ab::Group& go = p.dout->at(c.compose(l1, l2h));
                auto e1 = basis(p.d1->at(l1).n);
                auto e2 = basis(p.d2->at(l2).n);
                for (const auto& x : e1)
                    for (const auto& y : e2) {
                        Vec lhs = p.dout->pull_map(h, l1l2).apply(p.eval(l1, l2, x, y));
                        Vec rhs = p.eval(l1, l2h, x, p.d2->pull_map(h, l2).apply(y));
                        if (!equal_mod_rels(go, lhs, rhs))
                            throw Error("PairingNotNatural",
                                        "identity 3 fails at (" + c.mor_id(l1) + "," + c.mor_id(l2) +
                                            "," + c.mor_id(h) + ")");
                    }
            }
        }
}

}  // namespace bw::fact
