#include "bw/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace bw::io {

using ab::Group;
using ab::Hom;
using ab::IntMatrix;
using ab::Vec;
using cat::Error;
using cat::FinCat;
using cat::FunctorMap;
using cat::RawCategory;

namespace {

void need_kind(const json& j, const std::string& kind) {
    if (!j.is_object() || j.value("kind", "") != kind)
        throw Error("ParseError", "expected a file of kind '" + kind + "'");
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const json& j, long rows, long cols) {
    if (!j.is_array() || (long)j.size() != rows)
        throw Error("ParseError", "matrix row count mismatch");
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || (long)row.size() != cols)
            throw Error("ParseError", "matrix column count mismatch");
        for (long c = 0; c < cols; ++c) {
            const json& e = row[c];
            m.at(i, c) = e.is_string() ? ab::Int(e.get<std::string>(), 10)
                                       : ab::Int(e.get<long>());
        }
    }
    return m;
}

json group_to_json(const Group& g) {
    auto inv = g.invariants();
    json torsion = json::array();
    for (const auto& d : inv.torsion) torsion.push_back(d.get_str());
    return json{{"rank", inv.free_rank}, {"torsion", std::move(torsion)}};
}

Group group_from_json(const json& j) {
    long rank = j.at("rank").get<long>();
    std::vector<ab::Int> torsion;
    for (const json& d : j.at("torsion"))
        torsion.push_back(d.is_string() ? ab::Int(d.get<std::string>(), 10)
                                        : ab::Int(d.get<long>()));
    return Group::with_invariants(rank, std::move(torsion));
}

// the on-disk format fixes the normal-form presentation; reject value groups
// whose in-memory presentation differs (matrices would change meaning)
void require_normal_form(const Group& g, const std::string& where) {
    Group nf = group_from_json(group_to_json(g));
    if (g.n != nf.n || !(g.rels == nf.rels))
        throw Error("SystemNotNormalForm", "value group at " + where +
                                               " is not presented in normal form");
}

}  // namespace

json category_to_json(const FinCat& c) {
    json objects = json::array(), morphisms = json::array(), compose = json::array();
    json identities = json::object();
    for (long o = 0; o < c.num_objects(); ++o) {
        objects.push_back(c.obj_id(o));
        identities[c.obj_id(o)] = c.mor_id(c.identity(o));
    }
    for (long m = 0; m < c.num_morphisms(); ++m)
        morphisms.push_back(json{{"id", c.mor_id(m)},
                                 {"dom", c.obj_id(c.dom(m))},
                                 {"cod", c.obj_id(c.cod(m))}});
    for (long g = 0; g < c.num_morphisms(); ++g)
        for (long f = 0; f < c.num_morphisms(); ++f)
            if (c.composable(g, f))
                compose.push_back(json::array(
                    {c.mor_id(g), c.mor_id(f), c.mor_id(c.compose(g, f))}));
    return json{{"kind", "category"},
                {"objects", std::move(objects)},
                {"morphisms", std::move(morphisms)},
                {"identities", std::move(identities)},
                {"compose", std::move(compose)}};
}

FinCat category_from_json(const json& j) {
    need_kind(j, "category");
    RawCategory raw;
    for (const json& o : j.at("objects")) raw.objects.push_back(o.get<std::string>());
    for (const json& m : j.at("morphisms"))
        raw.morphisms.push_back({m.at("id").get<std::string>(), m.at("dom").get<std::string>(),
                                 m.at("cod").get<std::string>()});
    for (auto it = j.at("identities").begin(); it != j.at("identities").end(); ++it)
        raw.identities[it.key()] = it.value().get<std::string>();
    for (const json& t : j.at("compose")) {
        if (!t.is_array() || t.size() != 3) throw Error("ParseError", "compose entries are triples");
        raw.compose.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                               t[2].get<std::string>()});
    }
    return cat::validate_category(raw);
}

json functor_to_json(const FunctorMap& f, const std::string& source_path,
                     const std::string& target_path) {
    json obj_map = json::object(), mor_map = json::object();
    for (long o = 0; o < f.src->num_objects(); ++o)
        obj_map[f.src->obj_id(o)] = f.dst->obj_id(f.obj_map[o]);
    for (long m = 0; m < f.src->num_morphisms(); ++m)
        mor_map[f.src->mor_id(m)] = f.dst->mor_id(f.mor_map[m]);
    return json{{"kind", "functor"},
                {"source", source_path},
                {"target", target_path},
                {"obj_map", std::move(obj_map)},
                {"mor_map", std::move(mor_map)}};
}

LoadedFunctor functor_from_json(const json& j, const std::string& base_dir) {
    need_kind(j, "functor");
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        if (fp.is_absolute() || base_dir.empty()) return fp;
        return std::filesystem::path(base_dir) / fp;
    };
    LoadedFunctor out;
    out.src = std::make_shared<FinCat>(
        category_from_json(load_file(resolve(j.at("source").get<std::string>()).string())));
    out.dst = std::make_shared<FinCat>(
        category_from_json(load_file(resolve(j.at("target").get<std::string>()).string())));
    std::vector<long> om(out.src->num_objects()), mm(out.src->num_morphisms());
    for (long o = 0; o < out.src->num_objects(); ++o)
        om[o] = out.dst->obj_index(j.at("obj_map").at(out.src->obj_id(o)).get<std::string>());
    for (long m = 0; m < out.src->num_morphisms(); ++m)
        mm[m] = out.dst->mor_index(j.at("mor_map").at(out.src->mor_id(m)).get<std::string>());
    out.map = cat::validate_functor(*out.src, *out.dst, std::move(om), std::move(mm));
    return out;
}

json system_to_json(const fact::NaturalSystem& d) {
    const FinCat& c = *d.base;
    json groups = json::object();
    for (long m = 0; m < c.num_morphisms(); ++m) {
        require_normal_form(d.value[m], c.mor_id(m));
        groups[c.mor_id(m)] = group_to_json(d.value[m]);
    }
    auto maps_to_json = [&](const std::map<std::pair<long, long>, Hom>& maps, const char* along) {
        json out = json::array();
        for (const auto& [key, h] : maps) {
            auto [a, l] = key;
            if (c.is_identity(a)) continue;  // identity maps are implied
            out.push_back(json{{along, c.mor_id(a)}, {"on", c.mor_id(l)},
                               {"matrix", matrix_to_json(h.mat)}});
        }
        return out;
    };
    return json{{"kind", "natural_system"},
                {"groups", std::move(groups)},
                {"push", maps_to_json(d.push, "post")},
                {"pull", maps_to_json(d.pull, "pre")}};
}

fact::NaturalSystem system_from_json(const json& j, const FinCat& c) {
    need_kind(j, "natural_system");
    fact::NaturalSystem d;
    d.base = &c;
    d.value.resize(c.num_morphisms());
    const json& groups = j.at("groups");
    for (long m = 0; m < c.num_morphisms(); ++m)
        d.value[m] = group_from_json(groups.at(c.mor_id(m)));
    auto read_maps = [&](const json& arr, const char* along, bool is_push) {
        for (const json& e : arr) {
            long a = c.mor_index(e.at(along).get<std::string>());
            long l = c.mor_index(e.at("on").get<std::string>());
            bool comp = is_push ? c.dom(a) == c.cod(l) : c.cod(a) == c.dom(l);
            if (!comp) throw Error("ParseError", "structure map endpoints not composable");
            long out = is_push ? c.compose(a, l) : c.compose(l, a);
            Hom h(d.value[l], d.value[out],
                  matrix_from_json(e.at("matrix"), d.value[out].n, d.value[l].n));
            (is_push ? d.push : d.pull)[{a, l}] = std::move(h);
        }
    };
    read_maps(j.at("push"), "post", true);
    read_maps(j.at("pull"), "pre", false);
    auto fc = fact::build_fact_cat(c);
    return fact::validate_natural_system(std::move(d), fc);
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileUnreadable", path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("ParseError", path + ": " + e.what());
    }
    return j;
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("FileUnreadable", path);
    out << j.dump(2) << "\n";
}

std::string to_dot(const FinCat& c) {
    std::ostringstream os;
    os << "digraph category {\n";
    for (long o = 0; o < c.num_objects(); ++o) os << "  \"" << c.obj_id(o) << "\";\n";
    for (long m = 0; m < c.num_morphisms(); ++m) {
        if (c.is_identity(m)) continue;
        os << "  \"" << c.obj_id(c.dom(m)) << "\" -> \"" << c.obj_id(c.cod(m)) << "\" [label=\""
           << c.mor_id(m) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace bw::io
