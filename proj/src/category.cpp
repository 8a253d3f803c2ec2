#include "bw/category.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace bw::cat {

long FinCat::obj_index(const std::string& id) const {
    auto it = obj_index_.find(id);
    if (it == obj_index_.end()) throw Error("UnknownObject", id);
    return it->second;
}

long FinCat::mor_index(const std::string& id) const {
    auto it = mor_index_.find(id);
    if (it == mor_index_.end()) throw Error("UnknownMorphism", id);
    return it->second;
}

std::vector<long> FinCat::hom(long a, long b) const {
    std::vector<long> out;
    for (long m = 0; m < num_morphisms(); ++m)
        if (dom_[m] == a && cod_[m] == b) out.push_back(m);
    return out;
}

bool FinCat::has_endless_chains() const {
    // cycle detection on the object graph spanned by non-identity arrows
    long n = num_objects();
    std::vector<std::vector<long>> adj(n);
    for (long m = 0; m < num_morphisms(); ++m)
        if (!is_identity(m)) adj[dom_[m]].push_back(cod_[m]);
    std::vector<int> state(n, 0);
    std::function<bool(long)> dfs = [&](long v) {
        state[v] = 1;
        for (long w : adj[v]) {
            if (state[w] == 1) return true;
            if (state[w] == 0 && dfs(w)) return true;
        }
        state[v] = 2;
        return false;
    };
    for (long v = 0; v < n; ++v)
        if (state[v] == 0 && dfs(v)) return true;
    return false;
}

FinCat validate_category(const RawCategory& raw) {
    FinCat c;
    for (const auto& o : raw.objects) {
        if (c.obj_index_.count(o)) throw Error("DuplicateObject", o);
        c.obj_index_[o] = (long)c.obj_ids_.size();
        c.obj_ids_.push_back(o);
    }
    for (const auto& m : raw.morphisms) {
        if (c.mor_index_.count(m.id)) throw Error("DuplicateMorphism", m.id);
        c.mor_index_[m.id] = (long)c.mor_ids_.size();
        c.mor_ids_.push_back(m.id);
        c.dom_.push_back(c.obj_index(m.dom));
        c.cod_.push_back(c.obj_index(m.cod));
    }
    long no = c.num_objects(), nm = c.num_morphisms();

    c.identity_.assign(no, -1);
    for (const auto& [o, m] : raw.identities) {
        long oi = c.obj_index(o), mi = c.mor_index(m);
        if (c.dom_[mi] != oi || c.cod_[mi] != oi)
            throw Error("MissingIdentity", "identity of " + o + " has wrong endpoints");
        c.identity_[oi] = mi;
    }
    for (long o = 0; o < no; ++o)
        if (c.identity_[o] < 0) throw Error("MissingIdentity", c.obj_ids_[o]);

    c.table_.assign(nm * nm, -1);
    for (const auto& t : raw.compose) {
        long g = c.mor_index(t[0]), f = c.mor_index(t[1]), gf = c.mor_index(t[2]);
        if (c.dom_[g] != c.cod_[f])
            throw Error("BadCompositionDomain", t[0] + " ∘ " + t[1] + " is not composable");
        if (c.dom_[gf] != c.dom_[f] || c.cod_[gf] != c.cod_[g])
            throw Error("BadCompositionDomain", t[0] + " ∘ " + t[1] + " = " + t[2] + " has wrong endpoints");
        c.table_[g * nm + f] = gf;
    }
    for (long g = 0; g < nm; ++g)
        for (long f = 0; f < nm; ++f) {
            if (c.dom_[g] != c.cod_[f]) continue;
            long gf = c.table_[g * nm + f];
            if (gf < 0)
                throw Error("MissingComposite",
                            c.mor_ids_[g] + " ∘ " + c.mor_ids_[f] + " is undefined");
        }
    for (long f = 0; f < nm; ++f) {
        if (c.table_[c.identity_[c.cod_[f]] * nm + f] != f)
            throw Error("IdentityLaw", "id ∘ " + c.mor_ids_[f] + " != " + c.mor_ids_[f]);
        if (c.table_[f * nm + c.identity_[c.dom_[f]]] != f)
            throw Error("IdentityLaw", c.mor_ids_[f] + " ∘ id != " + c.mor_ids_[f]);
    }
    for (long h = 0; h < nm; ++h)
        for (long g = 0; g < nm; ++g) {
            if (c.dom_[h] != c.cod_[g]) continue;
            long hg = c.table_[h * nm + g];
            for (long f = 0; f < nm; ++f) {
                if (c.dom_[g] != c.cod_[f]) continue;
                long gf = c.table_[g * nm + f];
                if (c.table_[hg * nm + f] != c.table_[h * nm + gf])
                    throw Error("NonAssociative", "(" + c.mor_ids_[h] + " ∘ " + c.mor_ids_[g] +
                                                      ") ∘ " + c.mor_ids_[f]);
            }
        }
    return c;
}

FunctorMap validate_functor(const FinCat& src, const FinCat& dst, std::vector<long> obj_map,
                            std::vector<long> mor_map) {
    FunctorMap fm{&src, &dst, std::move(obj_map), std::move(mor_map)};
    if ((long)fm.obj_map.size() != src.num_objects() || (long)fm.mor_map.size() != src.num_morphisms())
        throw Error("MalformedFunctor", "map size mismatch");
    for (long m = 0; m < src.num_morphisms(); ++m) {
        long fm_m = fm.mor_map[m];
        if (dst.dom(fm_m) != fm.obj_map[src.dom(m)] || dst.cod(fm_m) != fm.obj_map[src.cod(m)])
            throw Error("MalformedFunctor", "endpoints not preserved at " + src.mor_id(m));
    }
    for (long o = 0; o < src.num_objects(); ++o)
        if (fm.mor_map[src.identity(o)] != dst.identity(fm.obj_map[o]))
            throw Error("MalformedFunctor", "identity not preserved at " + src.obj_id(o));
    for (long g = 0; g < src.num_morphisms(); ++g)
        for (long f = 0; f < src.num_morphisms(); ++f) {
            if (!src.composable(g, f)) continue;
            if (fm.mor_map[src.compose(g, f)] != dst.compose(fm.mor_map[g], fm.mor_map[f]))
                throw Error("MalformedFunctor",
                            "composition not preserved at " + src.mor_id(g) + " ∘ " + src.mor_id(f));
        }
    return fm;
}

FunctorMap identity_functor(const FinCat& c) {
    std::vector<long> om(c.num_objects()), mm(c.num_morphisms());
    for (long o = 0; o < c.num_objects(); ++o) om[o] = o;
    for (long m = 0; m < c.num_morphisms(); ++m) mm[m] = m;
    return FunctorMap{&c, &c, std::move(om), std::move(mm)};
}

FunctorMap compose_functors(const FunctorMap& outer, const FunctorMap& inner) {
    if (inner.dst != outer.src) throw Error("MalformedFunctor", "functors not composable");
    std::vector<long> om(inner.obj_map.size()), mm(inner.mor_map.size());
    for (size_t o = 0; o < om.size(); ++o) om[o] = outer.obj_map[inner.obj_map[o]];
    for (size_t m = 0; m < mm.size(); ++m) mm[m] = outer.mor_map[inner.mor_map[m]];
    return FunctorMap{inner.src, outer.dst, std::move(om), std::move(mm)};
}

long Subcategory::obj_count() const {
    return (long)std::count(has_obj.begin(), has_obj.end(), 1);
}
long Subcategory::mor_count() const {
    return (long)std::count(has_mor.begin(), has_mor.end(), 1);
}
bool Subcategory::subset_of(const Subcategory& o) const {
    for (size_t i = 0; i < has_obj.size(); ++i)
        if (has_obj[i] && !o.has_obj[i]) return false;
    for (size_t i = 0; i < has_mor.size(); ++i)
        if (has_mor[i] && !o.has_mor[i]) return false;
    return true;
}

Subcategory validate_subcategory(const FinCat& parent, const std::vector<char>& has_obj,
                                 const std::vector<char>& has_mor) {
    Subcategory s{&parent, has_obj, has_mor};
    for (long m = 0; m < parent.num_morphisms(); ++m) {
        if (!has_mor[m]) continue;
        if (!has_obj[parent.dom(m)] || !has_obj[parent.cod(m)])
            throw Error("MalformedSubcategory", "endpoints of " + parent.mor_id(m) + " missing");
    }
    for (long o = 0; o < parent.num_objects(); ++o)
        if (has_obj[o] && !has_mor[parent.identity(o)])
            throw Error("MalformedSubcategory", "identity of " + parent.obj_id(o) + " missing");
    for (long g = 0; g < parent.num_morphisms(); ++g)
        for (long f = 0; f < parent.num_morphisms(); ++f)
            if (has_mor[g] && has_mor[f] && parent.composable(g, f) &&
                !has_mor[parent.compose(g, f)])
                throw Error("MalformedSubcategory",
                            "not closed under " + parent.mor_id(g) + " ∘ " + parent.mor_id(f));
    return s;
}

Subcategory full_subcategory(const FinCat& parent) {
    return Subcategory{&parent, std::vector<char>(parent.num_objects(), 1),
                       std::vector<char>(parent.num_morphisms(), 1)};
}
Subcategory empty_subcategory(const FinCat& parent) {
    return Subcategory{&parent, std::vector<char>(parent.num_objects(), 0),
                       std::vector<char>(parent.num_morphisms(), 0)};
}

Subcategory subcategory_generated_by(const FinCat& parent, const std::vector<long>& gen_mors,
                                     const std::vector<long>& gen_objs) {
    Subcategory s = empty_subcategory(parent);
    auto add_obj = [&](long o) {
        s.has_obj[o] = 1;
        s.has_mor[parent.identity(o)] = 1;
    };
    for (long o : gen_objs) add_obj(o);
    for (long m : gen_mors) {
        s.has_mor[m] = 1;
        add_obj(parent.dom(m));
        add_obj(parent.cod(m));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (long g = 0; g < parent.num_morphisms(); ++g)
            for (long f = 0; f < parent.num_morphisms(); ++f)
                if (s.has_mor[g] && s.has_mor[f] && parent.composable(g, f)) {
                    long gf = parent.compose(g, f);
                    if (!s.has_mor[gf]) {
                        s.has_mor[gf] = 1;
                        grew = true;
                    }
                }
    }
    return s;
}

Subcategory union_subcategory(const Subcategory& u, const Subcategory& v) {
    if (u.parent != v.parent) throw Error("MalformedSubcategory", "different parents");
    std::vector<long> gens, objs;
    for (long m = 0; m < u.parent->num_morphisms(); ++m)
        if (u.has_mor[m] || v.has_mor[m]) gens.push_back(m);
    for (long o = 0; o < u.parent->num_objects(); ++o)
        if (u.has_obj[o] || v.has_obj[o]) objs.push_back(o);
    return subcategory_generated_by(*u.parent, gens, objs);
}

EmbeddedCat materialize(const Subcategory& u) {
    const FinCat& p = *u.parent;
    RawCategory raw;
    EmbeddedCat e;
    for (long o = 0; o < p.num_objects(); ++o)
        if (u.has_obj[o]) {
            raw.objects.push_back(p.obj_id(o));
            e.obj_to_parent.push_back(o);
        }
    for (long m = 0; m < p.num_morphisms(); ++m)
        if (u.has_mor[m]) {
            raw.morphisms.push_back({p.mor_id(m), p.obj_id(p.dom(m)), p.obj_id(p.cod(m))});
            e.mor_to_parent.push_back(m);
        }
    for (long o = 0; o < p.num_objects(); ++o)
        if (u.has_obj[o]) raw.identities[p.obj_id(o)] = p.mor_id(p.identity(o));
    for (long g = 0; g < p.num_morphisms(); ++g)
        for (long f = 0; f < p.num_morphisms(); ++f)
            if (u.has_mor[g] && u.has_mor[f] && p.composable(g, f))
                raw.compose.push_back({p.mor_id(g), p.mor_id(f), p.mor_id(p.compose(g, f))});
    e.cat = validate_category(raw);
    return e;
}

FunctorMap inclusion_functor(const EmbeddedCat& e, const FinCat& parent) {
    return FunctorMap{&e.cat, &parent, e.obj_to_parent, e.mor_to_parent};
}

FinCat interval_category(long m) {
    RawCategory raw;
    for (long i = 0; i <= m; ++i) {
        raw.objects.push_back(std::to_string(i));
        raw.morphisms.push_back({"id" + std::to_string(i), std::to_string(i), std::to_string(i)});
        raw.identities[std::to_string(i)] = "id" + std::to_string(i);
    }
    for (long i = 0; i < m; ++i) {
        // zigzag: 0 -> 1 <- 2 -> 3 ...
        std::string a = std::to_string(i), b = std::to_string(i + 1);
        if (i % 2 == 0) raw.morphisms.push_back({"u" + std::to_string(i), a, b});
        else raw.morphisms.push_back({"u" + std::to_string(i), b, a});
    }
    for (const auto& mm : raw.morphisms) {
        raw.compose.push_back({raw.identities[mm.cod], mm.id, mm.id});
        if (raw.identities[mm.dom] != mm.id || mm.dom != mm.cod)
            raw.compose.push_back({mm.id, raw.identities[mm.dom], mm.id});
    }
    return validate_category(raw);
}

FinCat product_with_interval(const FinCat& c, long m) {
    FinCat im = interval_category(m);
    RawCategory raw;
    auto oid = [&](long a, long b) { return c.obj_id(a) + "*" + im.obj_id(b); };
    auto mid = [&](long a, long b) { return c.mor_id(a) + "*" + im.mor_id(b); };
    for (long a = 0; a < c.num_objects(); ++a)
        for (long b = 0; b < im.num_objects(); ++b) raw.objects.push_back(oid(a, b));
    for (long a = 0; a < c.num_morphisms(); ++a)
        for (long b = 0; b < im.num_morphisms(); ++b)
            raw.morphisms.push_back({mid(a, b), oid(c.dom(a), im.dom(b)), oid(c.cod(a), im.cod(b))});
    for (long a = 0; a < c.num_objects(); ++a)
        for (long b = 0; b < im.num_objects(); ++b)
            raw.identities[oid(a, b)] = mid(c.identity(a), im.identity(b));
    for (long g1 = 0; g1 < c.num_morphisms(); ++g1)
        for (long f1 = 0; f1 < c.num_morphisms(); ++f1) {
            if (!c.composable(g1, f1)) continue;
            for (long g2 = 0; g2 < im.num_morphisms(); ++g2)
                for (long f2 = 0; f2 < im.num_morphisms(); ++f2) {
                    if (!im.composable(g2, f2)) continue;
                    raw.compose.push_back(
                        {mid(g1, g2), mid(f1, f2), mid(c.compose(g1, f1), im.compose(g2, f2))});
                }
        }
    return validate_category(raw);
}

namespace {

struct Enumerator {
    const FinCat& src;
    const FinCat& dst;
    const FunctorConstraints& cons;
    const std::function<bool(const FunctorMap&)>& yield;
    std::vector<long> obj_map, mor_map;
    // triples (g,f,gf) checked as soon as the last participant is assigned
    std::vector<std::vector<std::array<long, 3>>> checks_at;
    bool stopped = false;

    Enumerator(const FinCat& s, const FinCat& d, const FunctorConstraints& cn,
               const std::function<bool(const FunctorMap&)>& y)
        : src(s), dst(d), cons(cn), yield(y) {
        obj_map.assign(src.num_objects(), -1);
        mor_map.assign(src.num_morphisms(), -1);
        checks_at.resize(src.num_morphisms());
        for (long g = 0; g < src.num_morphisms(); ++g)
            for (long f = 0; f < src.num_morphisms(); ++f)
                if (src.composable(g, f)) {
                    long gf = src.compose(g, f);
                    checks_at[std::max({g, f, gf})].push_back({g, f, gf});
                }
    }

    bool obj_allowed(long o, long img) const {
        if (cons.obj_candidates.empty() || cons.obj_candidates[o].empty()) return true;
        const auto& c = cons.obj_candidates[o];
        return std::find(c.begin(), c.end(), img) != c.end();
    }
    bool mor_allowed(long m, long img) const {
        if (cons.mor_candidates.empty() || cons.mor_candidates[m].empty()) return true;
        const auto& c = cons.mor_candidates[m];
        return std::find(c.begin(), c.end(), img) != c.end();
    }

    void run() { assign_obj(0); }

    void assign_obj(long o) {
        if (stopped) return;
        if (o == src.num_objects()) {
            assign_mor(0);
            return;
        }
        for (long img = 0; img < dst.num_objects() && !stopped; ++img) {
            if (!obj_allowed(o, img)) continue;
            obj_map[o] = img;
            assign_obj(o + 1);
        }
        obj_map[o] = -1;
    }

    void assign_mor(long m) {
        if (stopped) return;
        if (m == src.num_morphisms()) {
            FunctorMap fm{&src, &dst, obj_map, mor_map};
            if (!yield(fm)) stopped = true;
            return;
        }
        long d = obj_map[src.dom(m)], c = obj_map[src.cod(m)];
        if (src.is_identity(m)) {
            long img = dst.identity(d);
            if (mor_allowed(m, img)) {
                mor_map[m] = img;
                if (consistent(m)) assign_mor(m + 1);
                mor_map[m] = -1;
            }
            return;
        }
        for (long img = 0; img < dst.num_morphisms() && !stopped; ++img) {
            if (dst.dom(img) != d || dst.cod(img) != c) continue;
            if (!mor_allowed(m, img)) continue;
            mor_map[m] = img;
            if (consistent(m)) assign_mor(m + 1);
            mor_map[m] = -1;
        }
    }

    bool consistent(long m) const {
        for (const auto& t : checks_at[m])
            if (dst.compose(mor_map[t[0]], mor_map[t[1]]) != mor_map[t[2]]) return false;
        return true;
    }
};

}  // namespace

void enumerate_functors(const FinCat& src, const FinCat& dst, const FunctorConstraints& cons,
                        const std::function<bool(const FunctorMap&)>& yield) {
    Enumerator(src, dst, cons, yield).run();
}

std::vector<FunctorMap> all_functors(const FinCat& src, const FinCat& dst,
                                     const FunctorConstraints& cons) {
    std::vector<FunctorMap> out;
    enumerate_functors(src, dst, cons, [&](const FunctorMap& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

std::vector<NatTrans> natural_transformations(const FunctorMap& f, const FunctorMap& g) {
    if (f.src != g.src || f.dst != g.dst) throw Error("MalformedFunctor", "nat trans endpoint mismatch");
    const FinCat& src = *f.src;
    const FinCat& dst = *f.dst;
    std::vector<NatTrans> out;
    std::vector<long> comp(src.num_objects(), -1);
    std::function<void(long)> rec = [&](long o) {
        if (o == src.num_objects()) {
            out.push_back(NatTrans{f, g, comp});
            return;
        }
        for (long u = 0; u < dst.num_morphisms(); ++u) {
            if (dst.dom(u) != f.obj_map[o] || dst.cod(u) != g.obj_map[o]) continue;
            comp[o] = u;
            bool ok = true;
            for (long m = 0; m < src.num_morphisms() && ok; ++m) {
                long a = src.dom(m), b = src.cod(m);
                if (comp[a] < 0 || comp[b] < 0) continue;
                ok = dst.compose(comp[b], f.mor_map[m]) == dst.compose(g.mor_map[m], comp[a]);
            }
            if (ok) rec(o + 1);
        }
        comp[o] = -1;
    };
    rec(0);
    return out;
}

bool homotopic(const FunctorMap& f, const FunctorMap& g, HomotopyWitness* witness) {
    if (f == g) {
        if (witness) witness->steps.clear();
        return true;
    }
    auto all = all_functors(*f.src, *f.dst);
    auto index_of = [&](const FunctorMap& x) {
        for (size_t i = 0; i < all.size(); ++i)
            if (all[i] == x) return (long)i;
        throw Error("MalformedFunctor", "functor not valid for homotopy test");
    };
    long s = index_of(f), t = index_of(g);
    std::vector<long> prev(all.size(), -1);
    std::vector<ZigzagStep> step_to(all.size());
    std::deque<long> queue{s};
    std::vector<char> seen(all.size(), 0);
    seen[s] = 1;
    while (!queue.empty()) {
        long v = queue.front();
        queue.pop_front();
        if (v == t) break;
        for (long w = 0; w < (long)all.size(); ++w) {
            if (seen[w]) continue;
            auto fwd = natural_transformations(all[v], all[w]);
            auto bwd = fwd.empty() ? natural_transformations(all[w], all[v]) : std::vector<NatTrans>{};
            if (fwd.empty() && bwd.empty()) continue;
            seen[w] = 1;
            prev[w] = v;
            step_to[w] = ZigzagStep{all[w], !fwd.empty(), fwd.empty() ? bwd.front() : fwd.front()};
            queue.push_back(w);
        }
    }
    if (!seen[t]) return false;
    if (witness) {
        std::vector<ZigzagStep> steps;
        for (long v = t; v != s; v = prev[v]) steps.push_back(step_to[v]);
        std::reverse(steps.begin(), steps.end());
        witness->steps = std::move(steps);
    }
    return true;
}

}  // namespace bw::cat
