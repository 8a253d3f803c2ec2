#include "bw/secat.hpp"

#include <algorithm>
#include <set>

#include "bw/cup.hpp"
#include "bw/fibration.hpp"

namespace bw::secat {

using cat::Error;

namespace {

// arrow sets of directed walks using only allowed arrows/objects, identities
// of visited objects always included
std::vector<std::vector<char>> walk_sets(const FinCat& c, const std::vector<char>& allowed_obj,
                                         const std::vector<char>& allowed_mor, long limit) {
    std::set<std::pair<long, std::vector<char>>> states;
    std::vector<std::pair<long, std::vector<char>>> stack;
    auto push = [&](long obj, std::vector<char> mask) {
        mask[c.identity(obj)] = 1;
        auto st = std::make_pair(obj, std::move(mask));
        if (states.insert(st).second) {
            if ((long)states.size() > limit)
                throw Error("SetExplosion", "too many reachable (object, arrow-set) states");
            stack.push_back(std::move(st));
        }
    };
    for (long o = 0; o < c.num_objects(); ++o)
        if (allowed_obj[o]) push(o, std::vector<char>(c.num_morphisms(), 0));
    while (!stack.empty()) {
        auto [o, mask] = std::move(stack.back());
        stack.pop_back();
        for (long m = 0; m < c.num_morphisms(); ++m) {
            if (!allowed_mor[m] || c.dom(m) != o) continue;
            auto next = mask;
            next[m] = 1;
            push(c.cod(m), std::move(next));
        }
    }
    std::set<std::vector<char>> masks;
    for (auto& [o, mask] : states) masks.insert(mask);
    std::vector<std::vector<char>> all(masks.begin(), masks.end());
    std::vector<std::vector<char>> maximal;
    auto subset = [](const std::vector<char>& a, const std::vector<char>& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] && !b[i]) return false;
        return true;
    };
    for (const auto& s : all) {
        bool dominated = false;
        for (const auto& t : all)
            if (&s != &t && subset(s, t) && !(s == t)) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(s);
    }
    return maximal;
}

}  // namespace

RealizableSetFamily realizable_sets(const FinCat& c, long limit) {
    RealizableSetFamily fam;
    fam.base = &c;
    fam.maximal_sets = walk_sets(c, std::vector<char>(c.num_objects(), 1),
                                 std::vector<char>(c.num_morphisms(), 1), limit);
    return fam;
}

bool is_geometric_cover(const std::vector<Subcategory>& pieces, const Subcategory& scope,
                        std::vector<char>* uncovered, long limit) {
    const FinCat& c = *scope.parent;
    auto maximal = walk_sets(c, scope.has_obj, scope.has_mor, limit);
    for (const auto& s : maximal) {
        bool covered = false;
        for (const auto& p : pieces) {
            bool in = true;
            for (long m = 0; m < c.num_morphisms() && in; ++m)
                if (s[m] && !p.contains_mor(m)) in = false;
            if (in) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            if (uncovered) *uncovered = s;
            return false;
        }
    }
    return true;
}

std::vector<SectionWitness> sections(const FunctorMap& p, const Subcategory& u, SectionKind kind,
                                     long max_count) {
    if (u.parent != p.dst) throw Error("BadCompositionDomain", "piece is not in the base of P");
    auto emb = std::make_shared<cat::EmbeddedCat>(cat::materialize(u));
    const FinCat& e = *p.src;
    std::vector<SectionWitness> out;

    if (kind == SectionKind::strict) {
        cat::FunctorConstraints cons;
        cons.obj_candidates.resize(emb->cat.num_objects());
        cons.mor_candidates.resize(emb->cat.num_morphisms());
        for (long o = 0; o < emb->cat.num_objects(); ++o)
            for (long eo = 0; eo < e.num_objects(); ++eo)
                if (p.obj_map[eo] == emb->obj_to_parent[o]) cons.obj_candidates[o].push_back(eo);
        for (long m = 0; m < emb->cat.num_morphisms(); ++m)
            for (long em = 0; em < e.num_morphisms(); ++em)
                if (p.mor_map[em] == emb->mor_to_parent[m]) cons.mor_candidates[m].push_back(em);
        cat::enumerate_functors(emb->cat, e, cons, [&](const cat::FunctorMap& s) {
            out.push_back(SectionWitness{emb, s, {}});
            return (long)out.size() < max_count;
        });
        return out;
    }

    auto iota = cat::inclusion_functor(*emb, *p.dst);
    cat::enumerate_functors(emb->cat, e, {}, [&](const cat::FunctorMap& s) {
        auto ps = cat::compose_functors(p, s);
        cat::HomotopyWitness w;
        if (cat::homotopic(ps, iota, &w)) out.push_back(SectionWitness{emb, s, std::move(w)});
        return (long)out.size() < max_count;
    });
    return out;
}

namespace {

// exact minimum set cover by branch and bound; sets and universe as bitmasks
struct SetCover {
    long k = 0;
    std::vector<unsigned long long> sets;
    std::vector<long> best;

    void solve() {
        std::vector<long> cur;
        best.clear();
        rec(cur, 0ULL);
    }

    void rec(std::vector<long>& cur, unsigned long long covered) {
        unsigned long long full = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
        if (covered == full) {
            if (best.empty() || cur.size() < best.size()) best = cur;
            return;
        }
        if (!best.empty() && cur.size() + 1 >= best.size()) {
            // even one more piece cannot beat the incumbent unless it finishes
            long biggest = 0;
            for (auto s : sets) biggest = std::max<long>(biggest, __builtin_popcountll(s & ~covered));
            long uncovered = __builtin_popcountll(full & ~covered);
            if (cur.size() + (uncovered + biggest - 1) / std::max<long>(biggest, 1) >= best.size())
                return;
        }
        // branch on the uncovered element with the fewest candidate sets
        long pick = -1, fewest = -1;
        for (long el = 0; el < k; ++el) {
            if (covered & (1ULL << el)) continue;
            long cnt = 0;
            for (auto s : sets)
                if (s & (1ULL << el)) ++cnt;
            if (pick < 0 || cnt < fewest) {
                pick = el;
                fewest = cnt;
            }
        }
        if (pick < 0) return;
        if (fewest == 0) return;  // uncoverable
        for (long i = 0; i < (long)sets.size(); ++i) {
            if (!(sets[i] & (1ULL << pick))) continue;
            cur.push_back(i);
            rec(cur, covered | sets[i]);
            cur.pop_back();
        }
    }
};

}  // namespace

SecatResult secat(const FunctorMap& p, SectionKind kind, long limit) {
    const FinCat& base = *p.dst;
    auto fam = realizable_sets(base, limit);
    long k = (long)fam.maximal_sets.size();
    if (k > 62 || (1LL << k) > limit)
        throw Error("SetExplosion", "too many maximal realizable sets for exact search");

    auto piece_for = [&](unsigned long long mask) {
        std::vector<long> gens;
        for (long i = 0; i < k; ++i)
            if (mask & (1ULL << i))
                for (long m = 0; m < base.num_morphisms(); ++m)
                    if (fam.maximal_sets[i][m]) gens.push_back(m);
        return cat::subcategory_generated_by(base, gens);
    };

    // feasibility (the generated piece admits a section) is downward closed,
    // so scanning masks by decreasing popcount and skipping subsets of known
    // feasible masks yields exactly the maximal feasible masks
    std::vector<unsigned long long> order;
    for (unsigned long long mask = 1; mask < (1ULL << k); ++mask) order.push_back(mask);
    std::sort(order.begin(), order.end(), [](auto a, auto b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        return pa != pb ? pa > pb : a < b;
    });
    std::vector<unsigned long long> feasible_max;
    std::vector<SectionWitness> feasible_wit;
    for (auto mask : order) {
        bool known = false;
        for (auto fm : feasible_max)
            if ((mask & fm) == mask) {
                known = true;
                break;
            }
        if (known) continue;
        auto ws = sections(p, piece_for(mask), kind, 1);
        if (!ws.empty()) {
            feasible_max.push_back(mask);
            feasible_wit.push_back(std::move(ws[0]));
        }
    }

    SecatResult res;
    res.finite = false;
    SetCover sc;
    sc.k = k;
    sc.sets = feasible_max;
    sc.solve();
    if (sc.best.empty() && k > 0) return res;  // some maximal set is unsectionable
    res.finite = true;
    res.value = (long)sc.best.size() - 1;
    CoverCertificate cert;
    cert.kind = kind;
    for (long i : sc.best) {
        cert.pieces.push_back(piece_for(feasible_max[i]));
        cert.piece_sections.push_back(feasible_wit[i]);
    }
    res.certificate = std::move(cert);
    return res;
}

SvarcBound svarc_bound(const FunctorMap& p, const fact::NaturalSystem& d,
                       const fact::Pairing& pairing, long degree_cap) {
    auto rep = fib::classify(p);
    if (!rep.is_bifibration())
        throw Error("NotABifibration", "the main inequality requires a bifibration");

    const FinCat& base = *p.dst;
    const FinCat& total = *p.src;
    long base_cap = base.has_endless_chains() ? degree_cap + 1 : -1;
    long total_cap = total.has_endless_chains() ? degree_cap + 1 : -1;
    auto base_cx = coh::build_complex(base, d, base_cap);
    auto ring = cup::build_ring(base_cx, pairing, degree_cap);
    auto pd = fact::pullback_system(p, d);
    auto total_cx = coh::build_complex(total, pd, total_cap);

    std::vector<cup::DegClass> kergens;
    for (long n = 1; n <= ring.max_degree; ++n) {
        if (ring.h[n].normal_form().n == 0) continue;
        for (auto& v : coh::ker_generators(p, total_cx, base_cx, n))
            kergens.push_back({n, std::move(v)});
    }

    SvarcBound out;
    auto cl = cup::cup_length(ring, &kergens);
    out.cpl = cl.value;
    out.cpl_exact = cl.exact;
    out.sg = secat(p, SectionKind::strict);
    out.holds = !out.sg.finite || out.cpl <= out.sg.value;
    return out;
}

}  // namespace bw::secat
