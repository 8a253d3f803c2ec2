#include "bw/instances.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace bw::inst {

using cat::Error;
using cat::FinCat;
using cat::RawCategory;

namespace {

// append m . id_dom = m, id_cod . m = m and id . id = id for every morphism
void add_identity_composites(RawCategory& r) {
    std::map<std::string, std::string> dom, cod;
    for (auto& m : r.morphisms) {
        dom[m.id] = m.dom;
        cod[m.id] = m.cod;
    }
    std::set<std::array<std::string, 2>> seen;
    for (auto& t : r.compose) seen.insert({t[0], t[1]});
    auto put = [&](const std::string& g, const std::string& f, const std::string& gf) {
        if (seen.insert({g, f}).second) r.compose.push_back({g, f, gf});
    };
    for (auto& m : r.morphisms) {
        put(m.id, r.identities[m.dom], m.id);
        put(r.identities[m.cod], m.id, m.id);
    }
}

RawCategory raw_parallel_arrows() {
    RawCategory r;
    r.objects = {"C", "D"};
    r.morphisms = {{"idC", "C", "C"}, {"idD", "D", "D"}, {"alpha", "C", "D"}, {"beta", "C", "D"}};
    r.identities = {{"C", "idC"}, {"D", "idD"}};
    add_identity_composites(r);
    return r;
}

// values Z everywhere; one of the four structure maps is -id. The primary
// orientation negates the pull along beta, the alternative negates the push.
fact::NaturalSystem make_sign_system(const FinCat& s, bool negate_pull) {
    fact::NaturalSystem d;
    d.base = &s;
    d.value.assign(s.num_morphisms(), ab::Group::free(1));
    long idC = s.mor_index("idC"), idD = s.mor_index("idD");
    long a = s.mor_index("alpha"), b = s.mor_index("beta");
    auto one = ab::Hom::identity(ab::Group::free(1));
    d.push[{a, idC}] = one;
    d.push[{b, idC}] = negate_pull ? one : one.negated();
    d.pull[{a, idD}] = one;
    d.pull[{b, idD}] = negate_pull ? one.negated() : one;
    return d;
}

// pointwise multiplication of the rank-1 values of a system, as an endopairing
std::shared_ptr<fact::Pairing> multiplication_pairing(
    const std::shared_ptr<fact::NaturalSystem>& sys) {
    auto p = std::make_shared<fact::Pairing>();
    p->d1 = p->d2 = p->dout = sys.get();
    const FinCat& c = *sys->base;
    for (long m1 = 0; m1 < c.num_morphisms(); ++m1)
        for (long m2 = 0; m2 < c.num_morphisms(); ++m2)
            if (c.composable(m1, m2)) p->table[{m1, m2}] = {{ab::Vec{1}}};
    fact::validate_pairing(*p);
    return p;
}

// The sign system admits no nonzero natural endopairing: identity (2) forces
// the entry at (beta, idC) to equal the one at (idC, idC), identity (3) the
// entry at (idD, beta) to equal the one at (idD, idD), and identity (1) on
// the chain (idD, beta, idC) then demands opposite signs of what it demands
// on (idD, alpha, idC). The zero pairing is the only natural choice, and it
// is all the cup-length statements about this system need.
std::shared_ptr<fact::Pairing> zero_pairing(const std::shared_ptr<fact::NaturalSystem>& sys) {
    auto p = std::make_shared<fact::Pairing>();
    p->d1 = p->d2 = p->dout = sys.get();
    const FinCat& c = *sys->base;
    for (long m1 = 0; m1 < c.num_morphisms(); ++m1)
        for (long m2 = 0; m2 < c.num_morphisms(); ++m2)
            if (c.composable(m1, m2))
                p->table[{m1, m2}] = {{ab::Vec(sys->at(c.compose(m1, m2)).n)}};
    fact::validate_pairing(*p);
    return p;
}

Instance make_parallel_arrows() {
    Instance out;
    out.name = "parallel_arrows_S";
    out.base = std::make_shared<FinCat>(cat::validate_category(raw_parallel_arrows()));
    auto fc = fact::build_fact_cat(*out.base);
    out.system = std::make_shared<fact::NaturalSystem>(
        fact::validate_natural_system(make_sign_system(*out.base, true), fc));
    out.alt_system = std::make_shared<fact::NaturalSystem>(
        fact::validate_natural_system(make_sign_system(*out.base, false), fc));
    out.pairing = zero_pairing(out.system);
    return out;
}

Instance make_groupoid() {
    Instance out;
    out.name = "groupoid_to_Z2";
    RawCategory base;
    base.objects = {"pt"};
    base.morphisms = {{"id_pt", "pt", "pt"}, {"h", "pt", "pt"}};
    base.identities = {{"pt", "id_pt"}};
    base.compose = {{"h", "h", "id_pt"}};
    add_identity_composites(base);
    out.base = std::make_shared<FinCat>(cat::validate_category(base));

    RawCategory tot;
    tot.objects = {"A", "B"};
    tot.morphisms = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"f", "A", "B"}, {"g", "B", "A"}};
    tot.identities = {{"A", "idA"}, {"B", "idB"}};
    tot.compose = {{"f", "g", "idB"}, {"g", "f", "idA"}};
    add_identity_composites(tot);
    out.total = std::make_shared<FinCat>(cat::validate_category(tot));

    const FinCat& e = *out.total;
    const FinCat& b = *out.base;
    std::vector<long> om(e.num_objects(), b.obj_index("pt")), mm(e.num_morphisms());
    mm[e.mor_index("idA")] = mm[e.mor_index("idB")] = b.mor_index("id_pt");
    mm[e.mor_index("f")] = mm[e.mor_index("g")] = b.mor_index("h");
    out.p = cat::validate_functor(e, b, std::move(om), std::move(mm));
    return out;
}

Instance make_doblecir() {
    Instance out = make_parallel_arrows();
    out.name = "doblecir_covering";
    out.alt_system.reset();

    RawCategory tot;
    tot.objects = {"C1", "C2", "D1", "D2"};
    tot.morphisms = {{"idC1", "C1", "C1"},    {"idC2", "C2", "C2"},    {"idD1", "D1", "D1"},
                     {"idD2", "D2", "D2"},    {"alpha1", "C1", "D1"},  {"alpha2", "C2", "D2"},
                     {"beta1", "C1", "D2"},   {"beta2", "C2", "D1"}};
    tot.identities = {{"C1", "idC1"}, {"C2", "idC2"}, {"D1", "idD1"}, {"D2", "idD2"}};
    add_identity_composites(tot);
    out.total = std::make_shared<FinCat>(cat::validate_category(tot));

    const FinCat& e = *out.total;
    const FinCat& b = *out.base;
    std::vector<long> om(e.num_objects()), mm(e.num_morphisms());
    auto obj = [&](const char* te, const char* tb) { om[e.obj_index(te)] = b.obj_index(tb); };
    auto mor = [&](const char* te, const char* tb) { mm[e.mor_index(te)] = b.mor_index(tb); };
    obj("C1", "C");
    obj("C2", "C");
    obj("D1", "D");
    obj("D2", "D");
    mor("idC1", "idC");
    mor("idC2", "idC");
    mor("idD1", "idD");
    mor("idD2", "idD");
    mor("alpha1", "alpha");
    mor("alpha2", "alpha");
    mor("beta1", "beta");
    mor("beta2", "beta");
    out.p = cat::validate_functor(e, b, std::move(om), std::move(mm));
    return out;
}

Instance make_projective_plane() {
    Instance out;
    out.name = "projective_plane_covering";

    RawCategory base;
    base.objects = {"X", "Y", "Z"};
    base.morphisms = {{"idX", "X", "X"},    {"idY", "Y", "Y"},    {"idZ", "Z", "Z"},
                      {"alpha1", "X", "Y"}, {"alpha2", "X", "Y"}, {"beta1", "Y", "Z"},
                      {"beta2", "Y", "Z"},  {"gamma1", "X", "Z"}, {"gamma2", "X", "Z"}};
    base.identities = {{"X", "idX"}, {"Y", "idY"}, {"Z", "idZ"}};
    base.compose = {{"beta1", "alpha1", "gamma1"},
                    {"beta2", "alpha2", "gamma1"},
                    {"beta1", "alpha2", "gamma2"},
                    {"beta2", "alpha1", "gamma2"}};
    add_identity_composites(base);
    out.base = std::make_shared<FinCat>(cat::validate_category(base));

    // the poset double cover: alphaJ_I is the arrow out of X_I hitting Y_J,
    // and similarly for the other levels; the composite X_I -> Z_J is gammaJ_I
    RawCategory tot;
    tot.objects = {"X1", "X2", "Y1", "Y2", "Z1", "Z2"};
    for (auto& o : tot.objects) {
        tot.morphisms.push_back({"id" + o, o, o});
        tot.identities[o] = "id" + o;
    }
    auto arrow = [&](const std::string& id, const std::string& d, const std::string& c) {
        tot.morphisms.push_back({id, d, c});
    };
    arrow("alpha1_1", "X1", "Y1");
    arrow("alpha2_1", "X1", "Y2");
    arrow("alpha1_2", "X2", "Y1");
    arrow("alpha2_2", "X2", "Y2");
    arrow("beta1_1", "Y1", "Z1");
    arrow("beta2_1", "Y1", "Z2");
    arrow("beta1_2", "Y2", "Z1");
    arrow("beta2_2", "Y2", "Z2");
    arrow("gamma1_1", "X1", "Z1");
    arrow("gamma2_1", "X1", "Z2");
    arrow("gamma1_2", "X2", "Z1");
    arrow("gamma2_2", "X2", "Z2");
    // a poset: the composite X_I -> Z_J is the unique arrow gammaJ_I
    for (const char* i : {"1", "2"})
        for (const char* j : {"1", "2"})
            for (const char* k : {"1", "2"})
                tot.compose.push_back({"beta" + std::string(j) + "_" + k,
                                       "alpha" + std::string(k) + "_" + i,
                                       "gamma" + std::string(j) + "_" + i});
    add_identity_composites(tot);
    out.total = std::make_shared<FinCat>(cat::validate_category(tot));

    const FinCat& e = *out.total;
    const FinCat& b = *out.base;
    std::vector<long> om(e.num_objects()), mm(e.num_morphisms());
    auto obj = [&](const char* te, const char* tb) { om[e.obj_index(te)] = b.obj_index(tb); };
    auto mor = [&](const std::string& te, const std::string& tb) {
        mm[e.mor_index(te)] = b.mor_index(tb);
    };
    for (const char* l : {"X", "Y", "Z"})
        for (const char* i : {"1", "2"}) {
            obj((l + std::string(i)).c_str(), l);
            mor("id" + std::string(l) + i, "id" + std::string(l));
        }
    // sheet 1 maps straight; sheet 2 swaps the two parallel arrows at every
    // level, which is what makes the star maps bijective and P a functor
    mor("alpha1_1", "alpha1");
    mor("alpha2_1", "alpha2");
    mor("alpha1_2", "alpha2");
    mor("alpha2_2", "alpha1");
    mor("beta1_1", "beta1");
    mor("beta2_1", "beta2");
    mor("beta1_2", "beta2");
    mor("beta2_2", "beta1");
    mor("gamma1_1", "gamma1");
    mor("gamma2_1", "gamma2");
    mor("gamma1_2", "gamma2");
    mor("gamma2_2", "gamma1");
    out.p = cat::validate_functor(e, b, std::move(om), std::move(mm));

    auto fc = fact::build_fact_cat(*out.base);
    out.system = std::make_shared<fact::NaturalSystem>(fact::validate_natural_system(
        fact::constant_system(*out.base, ab::Group::with_invariants(0, {2})), fc));
    out.pairing = multiplication_pairing(out.system);
    return out;
}

Instance make_interval(long m) {
    Instance out;
    out.name = m == 3 ? "interval_m" : "interval_" + std::to_string(m);
    out.base = std::make_shared<FinCat>(cat::interval_category(m));
    return out;
}

}  // namespace

Instance load_bundled(const std::string& name) {
    if (name == "parallel_arrows_S") return make_parallel_arrows();
    if (name == "groupoid_to_Z2") return make_groupoid();
    if (name == "doblecir_covering") return make_doblecir();
    if (name == "projective_plane_covering") return make_projective_plane();
    if (name == "interval_m") return make_interval(3);
    if (name == "terminal") {
        Instance out = make_interval(0);
        out.name = "terminal";
        return out;
    }
    if (name.rfind("interval_", 0) == 0) {
        try {
            size_t pos = 0;
            long m = std::stol(name.substr(9), &pos);
            if (pos == name.size() - 9 && m >= 0) return make_interval(m);
        } catch (const std::exception&) {
        }
    }
    throw Error("UnknownInstance", "no bundled instance named '" + name + "'");
}

fact::NaturalSystem representable_system(const FinCat& c, long mu0, const ab::Int& modulus) {
    fact::NaturalSystem d;
    d.base = &c;
    // basis of the value at lambda: the factorizations lambda = a . mu0 . b,
    // enumerated in (a, b) index order
    std::vector<std::vector<std::pair<long, long>>> basis(c.num_morphisms());
    std::vector<std::map<std::pair<long, long>, long>> pos(c.num_morphisms());
    for (long a = 0; a < c.num_morphisms(); ++a) {
        if (!c.composable(a, mu0)) continue;
        for (long b = 0; b < c.num_morphisms(); ++b) {
            if (!c.composable(mu0, b)) continue;
            long lambda = c.compose(c.compose(a, mu0), b);
            pos[lambda][{a, b}] = (long)basis[lambda].size();
            basis[lambda].push_back({a, b});
        }
    }
    for (long l = 0; l < c.num_morphisms(); ++l) {
        long n = (long)basis[l].size();
        d.value.push_back(modulus == 0
                              ? ab::Group::free(n)
                              : ab::Group::with_invariants(0, std::vector<ab::Int>(n, modulus)));
    }
    auto action = [&](long l, long tgt, bool post, long m) {
        ab::IntMatrix mat((long)basis[tgt].size(), (long)basis[l].size());
        for (long j = 0; j < (long)basis[l].size(); ++j) {
            auto [a, b] = basis[l][j];
            auto key = post ? std::make_pair(c.compose(m, a), b)
                            : std::make_pair(a, c.compose(b, m));
            mat.at(pos[tgt].at(key), j) = 1;
        }
        return ab::Hom{d.value[l], d.value[tgt], mat};
    };
    for (long m = 0; m < c.num_morphisms(); ++m) {
        if (c.is_identity(m)) continue;
        for (long l = 0; l < c.num_morphisms(); ++l) {
            if (c.composable(m, l)) d.push[{m, l}] = action(l, c.compose(m, l), true, m);
            if (c.composable(l, m)) d.pull[{m, l}] = action(l, c.compose(l, m), false, m);
        }
    }
    auto fc = fact::build_fact_cat(c);
    return fact::validate_natural_system(std::move(d), fc);
}

namespace {

// all directed paths of a DAG whose edges are (src, dst, label); a path is a
// list of edge indices, last-traversed first (composition order)
struct FreeDag {
    long n = 0;
    std::vector<std::array<long, 2>> edges;

    RawCategory to_raw(std::vector<std::vector<long>>* out_paths) const {
        RawCategory r;
        for (long v = 0; v < n; ++v) {
            r.objects.push_back("v" + std::to_string(v));
            r.morphisms.push_back({"1v" + std::to_string(v), r.objects[v], r.objects[v]});
            r.identities[r.objects[v]] = r.morphisms.back().id;
        }
        std::vector<std::vector<long>> paths;
        for (long e = 0; e < (long)edges.size(); ++e) paths.push_back({e});
        for (size_t i = 0; i < paths.size(); ++i)
            for (long e = 0; e < (long)edges.size(); ++e)
                if (edges[e][0] == edges[paths[i].front()][1]) {
                    auto p = paths[i];
                    p.insert(p.begin(), e);
                    paths.push_back(std::move(p));
                }
        auto pid = [&](const std::vector<long>& p) {
            std::string id;
            for (long e : p) id += (id.empty() ? "e" : ".e") + std::to_string(e);
            return id;
        };
        for (auto& p : paths)
            r.morphisms.push_back({pid(p), "v" + std::to_string(edges[p.back()][0]),
                                   "v" + std::to_string(edges[p.front()][1])});
        for (auto& p2 : paths)
            for (auto& p1 : paths)
                if (edges[p2.back()][0] == edges[p1.front()][1]) {
                    auto cat = p2;
                    cat.insert(cat.end(), p1.begin(), p1.end());
                    r.compose.push_back({pid(p2), pid(p1), pid(cat)});
                }
        add_identity_composites(r);
        if (out_paths) *out_paths = std::move(paths);
        return r;
    }
};

Instance random_acyclic(std::mt19937_64& rng, const RandomParams& params, Instance out) {
    FreeDag dag;
    dag.n = 1 + (long)(rng() % (unsigned long long)params.max_objects);
    for (long u = 0; u < dag.n; ++u)
        for (long v = u + 1; v < dag.n; ++v) {
            if (rng() % 10 < 4) dag.edges.push_back({u, v});
            if (rng() % 20 < 3) dag.edges.push_back({u, v});  // occasional parallel pair
        }
    // keep the free category desk-sized: path counts grow fast with density
    auto count_paths = [&]() {
        std::vector<std::vector<long>> paths;
        dag.to_raw(&paths);
        return (long)paths.size();
    };
    while (!dag.edges.empty() && count_paths() > 60)
        dag.edges.erase(dag.edges.begin() + (long)(rng() % dag.edges.size()));

    std::vector<std::vector<long>> paths;
    out.base = std::make_shared<FinCat>(cat::validate_category(dag.to_raw(&paths)));

    if (params.with_covering) {
        long k = std::max<long>(1, params.fibers);
        // a permutation of the k sheets per edge; a path permutes by the
        // composition of its edge permutations, so the total category below
        // is a category and both star maps are bijective by construction
        std::vector<std::vector<long>> perm(dag.edges.size(), std::vector<long>(k));
        for (auto& p : perm) {
            for (long i = 0; i < k; ++i) p[i] = i;
            std::shuffle(p.begin(), p.end(), rng);
        }
        auto path_perm = [&](const std::vector<long>& p, long i) {
            for (auto it = p.rbegin(); it != p.rend(); ++it) i = perm[*it][i];
            return i;
        };
        auto pid = [&](const std::vector<long>& p) {
            std::string id;
            for (long e : p) id += (id.empty() ? "e" : ".e") + std::to_string(e);
            return id;
        };
        RawCategory tot;
        for (long v = 0; v < dag.n; ++v)
            for (long i = 0; i < k; ++i) {
                std::string o = "v" + std::to_string(v) + "@" + std::to_string(i);
                tot.objects.push_back(o);
                tot.morphisms.push_back({"1" + o, o, o});
                tot.identities[o] = tot.morphisms.back().id;
            }
        auto lift_id = [&](const std::vector<long>& p, long i) {
            return pid(p) + "@" + std::to_string(i);
        };
        for (auto& p : paths)
            for (long i = 0; i < k; ++i)
                tot.morphisms.push_back(
                    {lift_id(p, i),
                     "v" + std::to_string(dag.edges[p.back()][0]) + "@" + std::to_string(i),
                     "v" + std::to_string(dag.edges[p.front()][1]) + "@" +
                         std::to_string(path_perm(p, i))});
        for (auto& p2 : paths)
            for (auto& p1 : paths)
                if (dag.edges[p2.back()][0] == dag.edges[p1.front()][1]) {
                    auto cat = p2;
                    cat.insert(cat.end(), p1.begin(), p1.end());
                    for (long i = 0; i < k; ++i)
                        tot.compose.push_back(
                            {lift_id(p2, path_perm(p1, i)), lift_id(p1, i), lift_id(cat, i)});
                }
        add_identity_composites(tot);
        out.total = std::make_shared<FinCat>(cat::validate_category(tot));

        const FinCat& e = *out.total;
        const FinCat& b = *out.base;
        std::vector<long> om(e.num_objects()), mm(e.num_morphisms());
        auto strip = [](const std::string& id) { return id.substr(0, id.find('@')); };
        for (long o = 0; o < e.num_objects(); ++o) om[o] = b.obj_index(strip(e.obj_id(o)));
        for (long m = 0; m < e.num_morphisms(); ++m) {
            std::string id = e.mor_id(m);
            mm[m] = b.mor_index(id[0] == '1' ? "1" + strip(id.substr(1)) : strip(id));
        }
        out.p = cat::validate_functor(e, b, std::move(om), std::move(mm));
    }
    return out;
}

Instance random_groupoid(std::mt19937_64& rng, const RandomParams& params, Instance out) {
    long m = 2 + (long)(rng() % 3);  // the cyclic group Z/m as a one-object category
    RawCategory base;
    base.objects = {"pt"};
    for (long i = 0; i < m; ++i)
        base.morphisms.push_back({"h" + std::to_string(i), "pt", "pt"});
    base.identities = {{"pt", "h0"}};
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            base.compose.push_back({"h" + std::to_string(i), "h" + std::to_string(j),
                                    "h" + std::to_string((i + j) % m)});
    out.base = std::make_shared<FinCat>(cat::validate_category(base));

    if (params.with_covering) {
        // action groupoid of Z/m on a finite set: free orbits plus fixed points
        long orbits = 1 + (long)(rng() % 2), fixed = (long)(rng() % 2);
        std::vector<long> next;  // the generator's action
        for (long o = 0; o < orbits; ++o)
            for (long i = 0; i < m; ++i) next.push_back(o * m + (i + 1) % m);
        for (long f = 0; f < fixed; ++f) next.push_back(orbits * m + f);
        long s = (long)next.size();
        auto act = [&](long x, long g) {
            for (long t = 0; t < g; ++t) x = next[x];
            return x;
        };
        RawCategory tot;
        for (long x = 0; x < s; ++x) {
            tot.objects.push_back("x" + std::to_string(x));
            tot.identities["x" + std::to_string(x)] = "x" + std::to_string(x) + ".h0";
        }
        auto mid = [](long x, long g) {
            return "x" + std::to_string(x) + ".h" + std::to_string(g);
        };
        for (long x = 0; x < s; ++x)
            for (long g = 0; g < m; ++g)
                tot.morphisms.push_back(
                    {mid(x, g), "x" + std::to_string(x), "x" + std::to_string(act(x, g))});
        for (long x = 0; x < s; ++x)
            for (long g = 0; g < m; ++g)
                for (long g2 = 0; g2 < m; ++g2)
                    tot.compose.push_back(
                        {mid(act(x, g), g2), mid(x, g), mid(x, (g + g2) % m)});
        out.total = std::make_shared<FinCat>(cat::validate_category(tot));

        const FinCat& e = *out.total;
        const FinCat& b = *out.base;
        std::vector<long> om(e.num_objects(), b.obj_index("pt")), mm(e.num_morphisms());
        for (long mo = 0; mo < e.num_morphisms(); ++mo) {
            std::string id = e.mor_id(mo);
            mm[mo] = b.mor_index(id.substr(id.find('.') + 1));
        }
        out.p = cat::validate_functor(e, b, std::move(om), std::move(mm));
    }
    return out;
}

}  // namespace

Instance generate_random(unsigned long long seed, RandomParams params) {
    std::mt19937_64 rng(seed);
    Instance out;
    out.name = "random_" + std::to_string(seed);
    out = params.acyclic ? random_acyclic(rng, params, std::move(out))
                         : random_groupoid(rng, params, std::move(out));
    if (params.with_system) {
        long mu0 = (long)(rng() % (unsigned long long)out.base->num_morphisms());
        out.system =
            std::make_shared<fact::NaturalSystem>(representable_system(*out.base, mu0, params.modulus));
    }
    return out;
}

}  // namespace bw::inst
