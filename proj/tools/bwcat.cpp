// Command-line front end: validation, cohomology, cup-lengths, fibration
// checks, sectional category, the genus lower bound, and golden-file
// regression over the bundled examples.
//
// Exit codes: 0 ok, 1 mathematical failure (validation error, property does
// not hold), 2 usage or parse error, 3 golden mismatch.
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "bw/cup.hpp"
#include "bw/fibration.hpp"
#include "bw/instances.hpp"
#include "bw/io.hpp"
#include "bw/secat.hpp"

using namespace bw;
using ab::Vec;
using cat::FinCat;
using io::json;

namespace {

struct Options {
    bool as_json = false;
};

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.as_json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

int exit_code_for(const cat::Error& e) {
    if (e.code == "ParseError" || e.code == "FileUnreadable" || e.code == "UnknownInstance" ||
        e.code == "Usage")
        return 2;
    return 1;
}

cat::Error usage(const std::string& what) { return cat::Error("Usage", what); }

std::string dir_of(const std::string& path) {
    return std::filesystem::path(path).parent_path().string();
}

// --system constant:Z | constant:Z/m | <file>; the returned system lives on c
fact::NaturalSystem load_system(const std::string& spec, const FinCat& c) {
    if (spec == "constant:Z") return fact::constant_system(c, ab::Group::free(1));
    if (spec.rfind("constant:Z/", 0) == 0) {
        long m = std::stol(spec.substr(11));
        if (m < 2) throw usage("constant torsion modulus must be >= 2");
        return fact::constant_system(c, ab::Group::with_invariants(0, {m}));
    }
    return io::system_from_json(io::load_file(spec), c);
}

// ring pairings (the only pairing kind exposed on the command line) require a
// constant Z or Z/m system
fact::RingPairing load_ring_pairing(const std::string& system_spec, const FinCat& c) {
    if (system_spec == "constant:Z") return fact::ring_pairing(c, 0);
    if (system_spec.rfind("constant:Z/", 0) == 0)
        return fact::ring_pairing(c, std::stol(system_spec.substr(11)));
    throw usage("--pairing ring requires --system constant:Z or constant:Z/m");
}

long pick_cap(const FinCat& c, long max_degree) {
    if (!c.has_endless_chains()) return -1;  // nerve bounded; build it all
    if (max_degree < 0)
        throw usage("--max-degree is required: the category has non-identity endomorphisms, "
                    "so its nerve is unbounded");
    return max_degree + 1;  // one degree above the last reported group
}

cat::Subcategory parse_subcategory(const FinCat& c, const std::string& gens) {
    std::vector<long> mors, objs;
    std::stringstream ss(gens);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        bool found = false;
        for (long m = 0; m < c.num_morphisms() && !found; ++m)
            if (c.mor_id(m) == tok) {
                mors.push_back(m);
                found = true;
            }
        for (long o = 0; o < c.num_objects() && !found; ++o)
            if (c.obj_id(o) == tok) {
                objs.push_back(o);
                found = true;
            }
        if (!found) throw usage("unknown object or morphism id '" + tok + "'");
    }
    return cat::subcategory_generated_by(c, mors, objs);
}

std::vector<std::string> piece_ids(const cat::Subcategory& u) {
    std::vector<std::string> ids;
    for (long m = 0; m < u.parent->num_morphisms(); ++m)
        if (u.contains_mor(m) && !u.parent->is_identity(m)) ids.push_back(u.parent->mor_id(m));
    if (ids.empty())
        for (long o = 0; o < u.parent->num_objects(); ++o)
            if (u.contains_obj(o)) ids.push_back(u.parent->obj_id(o));
    return ids;
}

// ------------------------------------------------------------------ validate

int cmd_validate(const Options& opt, const std::string& file, bool dot) {
    json j = io::load_file(file);
    std::string kind = j.value("kind", "");
    json rep{{"file", file}, {"kind", kind}, {"valid", true}};
    std::string text;
    if (kind == "category") {
        auto c = io::category_from_json(j);
        if (dot) {
            std::cout << io::to_dot(c);
            return 0;
        }
        rep["objects"] = c.num_objects();
        rep["morphisms"] = c.num_morphisms();
        text = "valid category: " + std::to_string(c.num_objects()) + " objects, " +
               std::to_string(c.num_morphisms()) + " morphisms\n";
    } else if (kind == "functor") {
        auto lf = io::functor_from_json(j, dir_of(file));
        rep["source_objects"] = lf.src->num_objects();
        rep["target_objects"] = lf.dst->num_objects();
        text = "valid functor between validated categories\n";
    } else if (kind == "natural_system") {
        if (!j.contains("category")) throw usage("natural-system validation needs a 'category' path");
        std::string cp = j.at("category").get<std::string>();
        std::filesystem::path p(cp);
        if (!p.is_absolute()) p = std::filesystem::path(dir_of(file)) / p;
        auto c = io::category_from_json(io::load_file(p.string()));
        io::system_from_json(j, c);
        text = "valid natural system\n";
    } else {
        throw cat::Error("ParseError", "unknown file kind '" + kind + "'");
    }
    emit(opt, rep, text);
    return 0;
}

// ---------------------------------------------------------------- cohomology

int cmd_cohomology(const Options& opt, const std::string& file, const std::string& system,
                   const std::string& relative, long max_degree) {
    auto c = io::category_from_json(io::load_file(file));
    auto d = load_system(system, c);
    long cap = pick_cap(c, max_degree);

    std::optional<cat::Subcategory> rel;
    if (!relative.empty()) rel = parse_subcategory(c, relative);
    auto cx = coh::build_complex(c, d, cap, true, rel ? &*rel : nullptr);

    long last = max_degree >= 0 ? max_degree : cx.top();
    json groups = json::object();
    std::string text;
    for (long n = 0; n <= last; ++n) {
        auto inv = coh::cohomology_at(cx, n).invariants();
        groups[std::to_string(n)] = inv.str();
        text += "H^" + std::to_string(n) + " = " + inv.str() + "\n";
    }
    emit(opt, json{{"relative", !relative.empty()}, {"groups", groups}}, text);
    return 0;
}

// ---------------------------------------------------------------- cup-length

int cmd_cup_length(const Options& opt, const std::string& file, const std::string& system,
                   const std::string& pairing, const std::string& kernel_of, long max_degree) {
    if (pairing != "ring") throw usage("only --pairing ring is available");
    auto c = io::category_from_json(io::load_file(file));
    auto rp = load_ring_pairing(system, c);
    long cap = pick_cap(c, max_degree);
    auto cx = coh::build_complex(c, rp.system, cap);
    long top_deg = max_degree >= 0 ? max_degree : cx.top();
    auto ring = cup::build_ring(cx, rp.pairing, top_deg);

    cup::CupLengthResult res;
    if (kernel_of.empty()) {
        res = cup::cup_length(ring);
    } else {
        auto lf = io::functor_from_json(io::load_file(kernel_of), dir_of(kernel_of));
        if (io::category_to_json(*lf.dst) != io::category_to_json(c))
            throw usage("--kernel-of functor's target differs from the category file");
        auto tot_sys = fact::pullback_system(lf.map, rp.system);
        auto tot_cx = coh::build_complex(*lf.src, tot_sys, lf.src->has_endless_chains() ? cap : -1);
        std::vector<cup::DegClass> gens;
        for (long n = 1; n <= ring.max_degree; ++n)
            for (const auto& v : coh::ker_generators(lf.map, tot_cx, cx, n))
                gens.push_back({n, v});
        res = cup::cup_length(ring, &gens);
    }
    json rep{{"cup_length", res.value}, {"exact", res.exact}};
    std::string text = "cup-length = " + std::to_string(res.value) +
                       (res.exact ? "" : " (lower bound: degree cap reached)") + "\n";
    emit(opt, rep, text);
    return 0;
}

// --------------------------------------------------------------------- check

int cmd_check(const Options& opt, const std::string& file, const std::string& mode) {
    auto lf = io::functor_from_json(io::load_file(file), dir_of(file));
    auto rep = fib::classify(lf.map);
    bool ok;
    if (mode == "fibration") ok = rep.is_fibration;
    else if (mode == "opfibration") ok = rep.is_opfibration;
    else if (mode == "bifibration") ok = rep.is_bifibration();
    else if (mode == "covering") ok = rep.is_covering;
    else throw usage("check mode must be fibration|opfibration|bifibration|covering");

    json out{{"property", mode},
             {"holds", ok},
             {"fibration", rep.is_fibration},
             {"opfibration", rep.is_opfibration},
             {"covering", rep.is_covering}};
    std::string text = mode + ": " + (ok ? "yes" : "no") + "\n";
    if (!ok) {
        if (!rep.fibration_failures.empty()) {
            auto [m, o] = rep.fibration_failures.front();
            text += "  no Cartesian lift of " + lf.dst->mor_id(m) + " at " + lf.src->obj_id(o) + "\n";
            out["witness"] = {{"morphism", lf.dst->mor_id(m)}, {"object", lf.src->obj_id(o)}};
        } else if (!rep.opfibration_failures.empty()) {
            auto [m, o] = rep.opfibration_failures.front();
            text += "  no op-Cartesian lift of " + lf.dst->mor_id(m) + " at " + lf.src->obj_id(o) + "\n";
            out["witness"] = {{"morphism", lf.dst->mor_id(m)}, {"object", lf.src->obj_id(o)}};
        } else if (!rep.covering_failure.empty()) {
            text += "  " + rep.covering_failure + "\n";
            out["witness"] = rep.covering_failure;
        }
    }
    emit(opt, out, text);
    return ok ? 0 : 1;
}

// --------------------------------------------------------------------- secat

json certificate_to_json(const secat::SecatResult& r) {
    json pieces = json::array();
    if (r.certificate)
        for (const auto& u : r.certificate->pieces) pieces.push_back(piece_ids(u));
    return pieces;
}

int cmd_secat(const Options& opt, const std::string& file, bool homotopic) {
    auto lf = io::functor_from_json(io::load_file(file), dir_of(file));
    auto kind = homotopic ? secat::SectionKind::homotopic : secat::SectionKind::strict;
    auto r = secat::secat(lf.map, kind);
    json rep{{"kind", homotopic ? "homotopic" : "strict"},
             {"value", r.finite ? json(r.value) : json("infinite")},
             {"certificate", certificate_to_json(r)}};
    std::string text = (homotopic ? std::string("Sg = ") : std::string("sc = ")) +
                       (r.finite ? std::to_string(r.value) : "infinite") + "\n";
    if (r.finite && r.certificate) {
        text += "cover pieces (generating arrows):\n";
        for (const auto& u : r.certificate->pieces) {
            text += "  {";
            auto ids = piece_ids(u);
            for (size_t i = 0; i < ids.size(); ++i) text += (i ? ", " : "") + ids[i];
            text += "}\n";
        }
    }
    emit(opt, rep, text);
    return 0;
}

// --------------------------------------------------------------- svarc-bound

int cmd_svarc(const Options& opt, const std::string& file, const std::string& system,
              const std::string& pairing, long max_degree) {
    if (pairing != "ring") throw usage("only --pairing ring is available");
    auto lf = io::functor_from_json(io::load_file(file), dir_of(file));
    auto rp = load_ring_pairing(system, *lf.dst);
    long cap = max_degree >= 0 ? max_degree : 3;
    auto b = secat::svarc_bound(lf.map, rp.system, rp.pairing, cap);
    json rep{{"kernel_cup_length", b.cpl},
             {"cup_length_exact", b.cpl_exact},
             {"svarc_genus", b.sg.finite ? json(b.sg.value) : json("infinite")},
             {"holds", b.holds}};
    std::string text = "cup-length(ker P*) = " + std::to_string(b.cpl) + "\nSg(P) = " +
                       (b.sg.finite ? std::to_string(b.sg.value) : "infinite") +
                       "\nlower bound holds: " + (b.holds ? "yes" : "no") + "\n";
    emit(opt, rep, text);
    return b.holds ? 0 : 1;
}

// ------------------------------------------------------------------ examples

const std::vector<std::string> kExampleNames = {
    "parallel_arrows_S", "groupoid_to_Z2", "doblecir_covering", "projective_plane_covering"};

json example_report(const std::string& name) {
    auto i = inst::load_bundled(name);
    json rep{{"name", name}};
    if (name == "parallel_arrows_S") {
        auto cx = coh::build_complex(*i.base, *i.system);
        for (long n = 0; n <= 2; ++n)
            rep["H"][std::to_string(n)] = coh::cohomology_at(cx, n).invariants().str();
        auto u = cat::subcategory_generated_by(*i.base, {i.base->identity(i.base->obj_index("C"))});
        auto rel = coh::build_complex(*i.base, *i.system, -1, true, &u);
        rep["relative_H"]["1"] = coh::cohomology_at(rel, 1).invariants().str();
        auto ring = cup::build_ring(cx, *i.pairing, 2);
        rep["cup_length"] = cup::cup_length(ring).value;
    } else if (name == "groupoid_to_Z2") {
        auto cls = fib::classify(*i.p);
        rep["covering"] = cls.is_covering;
        rep["bifibration"] = cls.is_bifibration();
        rep["global_sections"] =
            (long)secat::sections(*i.p, cat::full_subcategory(*i.base),
                                  secat::SectionKind::strict, 10)
                .size();
        auto sc = secat::secat(*i.p, secat::SectionKind::strict);
        rep["sc"] = sc.finite ? json(sc.value) : json("infinite");
    } else if (name == "doblecir_covering") {
        auto cls = fib::classify(*i.p);
        rep["covering"] = cls.is_covering;
        rep["bifibration"] = cls.is_bifibration();
        auto sc = secat::secat(*i.p, secat::SectionKind::strict);
        auto sg = secat::secat(*i.p, secat::SectionKind::homotopic);
        rep["sc"] = sc.finite ? json(sc.value) : json("infinite");
        rep["Sg"] = sg.finite ? json(sg.value) : json("infinite");
        auto b = secat::svarc_bound(*i.p, *i.system, *i.pairing, 3);
        rep["kernel_cup_length"] = b.cpl;
        rep["bound_holds"] = b.holds;
    } else if (name == "projective_plane_covering") {
        auto cx = coh::build_complex(*i.base, *i.system);
        rep["H"]["1"] = coh::cohomology_at(cx, 1).invariants().str();
        rep["H"]["2"] = coh::cohomology_at(cx, 2).invariants().str();
        auto ring = cup::build_ring(cx, *i.pairing, 2);
        rep["f_cup_f_nonzero"] =
            !ring.h[2].normal_form().element_is_zero(cup::cup_classes(ring, 1, {1}, 1, {1}));
        auto tot_sys = fact::pullback_system(*i.p, *i.system);
        auto tot_cx = coh::build_complex(*i.total, tot_sys);
        rep["total_H"]["1"] = coh::cohomology_at(tot_cx, 1).invariants().str();
        auto b = secat::svarc_bound(*i.p, *i.system, *i.pairing, 3);
        rep["kernel_cup_length"] = b.cpl;
        rep["Sg"] = b.sg.finite ? json(b.sg.value) : json("infinite");
        rep["bound_holds"] = b.holds;
        rep["strict"] = b.sg.finite && b.cpl < b.sg.value;
    } else {
        throw cat::Error("UnknownInstance", name);
    }
    return rep;
}

int cmd_examples_run(const Options& opt, const std::string& name, bool all,
                     const std::string& data_dir, bool update) {
    std::vector<std::string> names;
    if (all) names = kExampleNames;
    else if (!name.empty()) names = {name};
    else throw usage("examples run needs an instance name or --all");

    int rc = 0;
    for (const auto& n : names) {
        json rep = example_report(n);
        auto golden_path = std::filesystem::path(data_dir) / "goldens" / (n + ".json");
        if (update) {
            std::filesystem::create_directories(golden_path.parent_path());
            io::save_file(golden_path.string(), rep);
            std::cout << "wrote " << golden_path.string() << "\n";
            continue;
        }
        json golden = io::load_file(golden_path.string());
        bool ok = golden == rep;
        if (opt.as_json)
            std::cout << json{{"name", n}, {"match", ok}, {"report", rep}}.dump(2) << "\n";
        else {
            std::cout << n << ": " << (ok ? "matches golden" : "MISMATCH") << "\n";
            if (!ok) {
                std::cout << "  computed: " << rep.dump() << "\n";
                std::cout << "  golden:   " << golden.dump() << "\n";
            }
        }
        if (!ok) rc = 3;
    }
    return rc;
}

int cmd_examples_export(const std::string& data_dir) {
    std::filesystem::create_directories(data_dir);
    for (const auto& n : kExampleNames) {
        auto i = inst::load_bundled(n);
        auto dir = std::filesystem::path(data_dir);
        io::save_file((dir / (n + ".category.json")).string(), io::category_to_json(*i.base));
        if (i.total)
            io::save_file((dir / (n + ".total.json")).string(), io::category_to_json(*i.total));
        if (i.p)
            io::save_file((dir / (n + ".functor.json")).string(),
                          io::functor_to_json(*i.p, n + ".total.json", n + ".category.json"));
        if (i.system) {
            json sys = io::system_to_json(*i.system);
            sys["category"] = n + ".category.json";
            io::save_file((dir / (n + ".system.json")).string(), sys);
        }
        std::cout << "exported " << n << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomological and sectional invariants of finite categories"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.as_json, "structured JSON output");

    std::string file, system = "constant:Z", pairing = "ring", relative, kernel_of, mode, name,
                data_dir = "data";
    long max_degree = -1;
    bool dot = false, homotopic = false, all = false, update = false;

    auto* validate = app.add_subcommand("validate", "validate a category/functor/system file");
    validate->add_option("file", file)->required();
    validate->add_flag("--dot", dot, "emit Graphviz DOT instead of a report (categories only)");

    auto* cohomology = app.add_subcommand("cohomology", "cohomology groups of a category file");
    cohomology->add_option("file", file)->required();
    cohomology->add_option("--system", system, "constant:Z, constant:Z/m, or a system file");
    cohomology->add_option("--relative", relative, "comma-separated generators of a subcategory");
    cohomology->add_option("--max-degree", max_degree);

    auto* cuplen = app.add_subcommand("cup-length", "cup-length of the cohomology ring");
    cuplen->add_option("file", file)->required();
    cuplen->add_option("--system", system);
    cuplen->add_option("--pairing", pairing);
    cuplen->add_option("--kernel-of", kernel_of, "functor file; restrict to ker of its induced map");
    cuplen->add_option("--max-degree", max_degree);

    auto* check = app.add_subcommand("check", "check a lifting property of a functor");
    check->add_option("file", file)->required();
    check->add_option("mode", mode, "fibration|opfibration|bifibration|covering")->required();

    auto* secat_cmd = app.add_subcommand("secat", "exact sectional category of a functor");
    secat_cmd->add_option("file", file)->required();
    secat_cmd->add_flag("--homotopic", homotopic, "use homotopic sections (Svarc genus)");

    auto* svarc = app.add_subcommand("svarc-bound", "cup-length lower bound for the Svarc genus");
    svarc->add_option("file", file)->required();
    svarc->add_option("--system", system);
    svarc->add_option("--pairing", pairing);
    svarc->add_option("--max-degree", max_degree);

    auto* examples = app.add_subcommand("examples", "bundled worked examples");
    auto* ex_run = examples->add_subcommand("run", "recompute and diff against goldens");
    ex_run->add_option("name", name);
    ex_run->add_flag("--all", all);
    ex_run->add_option("--data-dir", data_dir);
    ex_run->add_flag("--update-goldens", update);
    auto* ex_export = examples->add_subcommand("export", "write bundled instances as files");
    ex_export->add_option("--data-dir", data_dir);
    examples->require_subcommand(1);

    // allow global flags like --json to appear after the subcommand name
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    ex_run->fallthrough();
    ex_export->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, file, dot);
        if (cohomology->parsed()) return cmd_cohomology(opt, file, system, relative, max_degree);
        if (cuplen->parsed()) return cmd_cup_length(opt, file, system, pairing, kernel_of, max_degree);
        if (check->parsed()) return cmd_check(opt, file, mode);
        if (secat_cmd->parsed()) return cmd_secat(opt, file, homotopic);
        if (svarc->parsed()) return cmd_svarc(opt, file, system, pairing, max_degree);
        if (ex_run->parsed()) return cmd_examples_run(opt, name, all, data_dir, update);
        if (ex_export->parsed()) return cmd_examples_export(data_dir);
    } catch (const cat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
