#include "bw/fibration.hpp"

#include <algorithm>

namespace bw::fib {

using cat::Error;

bool is_cartesian(const FunctorMap& p, long phi, std::pair<long, long>* counterexample) {
    const FinCat& e = *p.src;
    const FinCat& b = *p.dst;
    long e1 = e.dom(phi), e2 = e.cod(phi);
    long pphi = p.mor_map[phi];
    for (long beta = 0; beta < e.num_morphisms(); ++beta) {
        if (e.cod(beta) != e2) continue;
        long src = e.dom(beta);
        for (long abar = 0; abar < b.num_morphisms(); ++abar) {
            if (b.dom(abar) != p.obj_map[src] || b.cod(abar) != b.dom(pphi)) continue;
            if (b.compose(pphi, abar) != p.mor_map[beta]) continue;
            long count = 0;
            for (long alpha = 0; alpha < e.num_morphisms(); ++alpha) {
                if (e.dom(alpha) != src || e.cod(alpha) != e1) continue;
                if (p.mor_map[alpha] != abar) continue;
                if (e.compose(phi, alpha) != beta) continue;
                ++count;
            }
            if (count != 1) {
                if (counterexample) *counterexample = {beta, abar};
                return false;
            }
        }
    }
    return true;
}

bool is_opcartesian(const FunctorMap& p, long phi, std::pair<long, long>* counterexample) {
    const FinCat& e = *p.src;
    const FinCat& b = *p.dst;
    long e1 = e.dom(phi), e2 = e.cod(phi);
    long pphi = p.mor_map[phi];
    for (long beta = 0; beta < e.num_morphisms(); ++beta) {
        if (e.dom(beta) != e1) continue;
        long dst = e.cod(beta);
        for (long abar = 0; abar < b.num_morphisms(); ++abar) {
            if (b.dom(abar) != b.cod(pphi) || b.cod(abar) != p.obj_map[dst]) continue;
            if (b.compose(abar, pphi) != p.mor_map[beta]) continue;
            long count = 0;
            for (long alpha = 0; alpha < e.num_morphisms(); ++alpha) {
                if (e.dom(alpha) != e2 || e.cod(alpha) != dst) continue;
                if (p.mor_map[alpha] != abar) continue;
                if (e.compose(alpha, phi) != beta) continue;
                ++count;
            }
            if (count != 1) {
                if (counterexample) *counterexample = {beta, abar};
                return false;
            }
        }
    }
    return true;
}

namespace {

FibrationReport classify_impl(const FunctorMap& p, bool parallel) {
    const FinCat& e = *p.src;
    const FinCat& b = *p.dst;
    FibrationReport rep;

    // (op-)Cartesianness of every source arrow, computed up front
    std::vector<char> cart(e.num_morphisms()), opcart(e.num_morphisms());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long m = 0; m < e.num_morphisms(); ++m) {
            cart[m] = is_cartesian(p, m);
            opcart[m] = is_opcartesian(p, m);
        }
    } else {
        for (long m = 0; m < e.num_morphisms(); ++m) {
            cart[m] = is_cartesian(p, m);
            opcart[m] = is_opcartesian(p, m);
        }
    }

    auto least_id = [&](const std::vector<long>& ms) {
        long best = -1;
        for (long m : ms)
            if (best < 0 || e.mor_id(m) < e.mor_id(best)) best = m;
        return best;
    };

    rep.is_fibration = true;
    rep.is_opfibration = true;
    for (long phibar = 0; phibar < b.num_morphisms(); ++phibar) {
        for (long obj = 0; obj < e.num_objects(); ++obj) {
            if (p.obj_map[obj] == b.cod(phibar)) {
                std::vector<long> lifts;
                for (long m = 0; m < e.num_morphisms(); ++m)
                    if (e.cod(m) == obj && p.mor_map[m] == phibar && cart[m]) lifts.push_back(m);
                if (lifts.empty()) {
                    rep.is_fibration = false;
                    rep.fibration_failures.push_back({phibar, obj});
                } else {
                    rep.cartesian_lifts[{phibar, obj}] = least_id(lifts);
                }
            }
            if (p.obj_map[obj] == b.dom(phibar)) {
                std::vector<long> lifts;
                for (long m = 0; m < e.num_morphisms(); ++m)
                    if (e.dom(m) == obj && p.mor_map[m] == phibar && opcart[m]) lifts.push_back(m);
                if (lifts.empty()) {
                    rep.is_opfibration = false;
                    rep.opfibration_failures.push_back({phibar, obj});
                } else {
                    rep.opcartesian_lifts[{phibar, obj}] = least_id(lifts);
                }
            }
        }
    }

    // covering: surjective on objects, bijective star maps at every object
    rep.is_covering = true;
    std::vector<char> hit(b.num_objects(), 0);
    for (long o : p.obj_map) hit[o] = 1;
    for (long o = 0; o < b.num_objects(); ++o)
        if (!hit[o]) {
            rep.is_covering = false;
            rep.covering_failure = "object " + b.obj_id(o) + " has no preimage";
        }
    for (long obj = 0; obj < e.num_objects() && rep.is_covering; ++obj) {
        for (int outgoing = 0; outgoing < 2 && rep.is_covering; ++outgoing) {
            std::map<long, long> counts;  // base arrow -> lifts through obj
            long total_base = 0;
            for (long mb = 0; mb < b.num_morphisms(); ++mb)
                if ((outgoing ? b.dom(mb) : b.cod(mb)) == p.obj_map[obj]) {
                    counts[mb] = 0;
                    ++total_base;
                }
            for (long m = 0; m < e.num_morphisms(); ++m)
                if ((outgoing ? e.dom(m) : e.cod(m)) == obj) ++counts[p.mor_map[m]];
            for (auto& [mb, k] : counts)
                if (k != 1) {
                    rep.is_covering = false;
                    rep.covering_failure = std::string(outgoing ? "outgoing" : "incoming") +
                                           " star at " + e.obj_id(obj) + " hits " + b.mor_id(mb) +
                                           " " + std::to_string(k) + " times";
                }
            (void)total_base;
        }
    }
    if (rep.is_covering && !(rep.is_fibration && rep.is_opfibration))
        throw Error("ComplexBroken", "covering that is not a bifibration: checker inconsistency");
    return rep;
}

}  // namespace

FibrationReport classify(const FunctorMap& p) { return classify_impl(p, true); }
FibrationReport classify_serial(const FunctorMap& p) { return classify_impl(p, false); }

Subcategory fiber(const FunctorMap& p, long b) {
    const FinCat& e = *p.src;
    std::vector<char> ho(e.num_objects(), 0), hm(e.num_morphisms(), 0);
    long idb = p.dst->identity(b);
    for (long o = 0; o < e.num_objects(); ++o) ho[o] = p.obj_map[o] == b;
    for (long m = 0; m < e.num_morphisms(); ++m)
        hm[m] = p.mor_map[m] == idb && ho[e.dom(m)] && ho[e.cod(m)];
    return cat::validate_subcategory(e, ho, hm);
}

Pullback pullback(const FunctorMap& p, const FunctorMap& f) {
    const FinCat& e = *p.src;
    const FinCat& b = *p.dst;
    const FinCat& bp = *f.src;  // B'
    if (f.dst != p.dst) throw Error("BadCompositionDomain", "pullback legs have different targets");

    Pullback out;
    cat::RawCategory raw;
    auto oid = [&](long c, long d) { return "(" + bp.obj_id(c) + "," + e.obj_id(d) + ")"; };
    auto mid = [&](long u, long v) { return "(" + bp.mor_id(u) + "|" + e.mor_id(v) + ")"; };
    std::map<std::pair<long, long>, long> oidx, midx;
    for (long c = 0; c < bp.num_objects(); ++c)
        for (long d = 0; d < e.num_objects(); ++d)
            if (f.obj_map[c] == p.obj_map[d]) {
                oidx[{c, d}] = (long)out.obj_pairs.size();
                out.obj_pairs.push_back({c, d});
                raw.objects.push_back(oid(c, d));
            }
    for (long u = 0; u < bp.num_morphisms(); ++u)
        for (long v = 0; v < e.num_morphisms(); ++v)
            if (f.mor_map[u] == p.mor_map[v]) {
                midx[{u, v}] = (long)out.mor_pairs.size();
                out.mor_pairs.push_back({u, v});
                raw.morphisms.push_back(
                    {mid(u, v), oid(bp.dom(u), e.dom(v)), oid(bp.cod(u), e.cod(v))});
            }
    for (auto& [od, idx] : oidx)
        raw.identities[oid(od.first, od.second)] =
            mid(bp.identity(od.first), e.identity(od.second));
    for (auto& [m2, i2] : midx)
        for (auto& [m1, i1] : midx)
            if (bp.composable(m2.first, m1.first) && e.composable(m2.second, m1.second))
                raw.compose.push_back({mid(m2.first, m2.second), mid(m1.first, m1.second),
                                       mid(bp.compose(m2.first, m1.first),
                                           e.compose(m2.second, m1.second))});
    out.cat = cat::validate_category(raw);

    std::vector<long> om1, mm1, om2, mm2;
    for (auto& [c, d] : out.obj_pairs) {
        om1.push_back(c);
        om2.push_back(d);
    }
    for (auto& [u, v] : out.mor_pairs) {
        mm1.push_back(u);
        mm2.push_back(v);
    }
    out.into_base = cat::validate_functor(out.cat, bp, std::move(om1), std::move(mm1));
    out.into_total = cat::validate_functor(out.cat, e, std::move(om2), std::move(mm2));
    return out;
}

}  // namespace bw::fib
