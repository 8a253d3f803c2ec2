#ifndef BW_CATEGORY_HPP
#define BW_CATEGORY_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bw::cat {

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& what) : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

/// Raw category data, as read from files or built by hand.
struct RawCategory {
    std::vector<std::string> objects;
    struct Mor {
        std::string id, dom, cod;
    };
    std::vector<Mor> morphisms;
    std::map<std::string, std::string> identities;               // object -> morphism id
    std::vector<std::array<std::string, 3>> compose;             // [g, f, g∘f]
};

/// A finite category with a total, validated composition table.
class FinCat {
public:
    long num_objects() const { return (long)obj_ids_.size(); }
    long num_morphisms() const { return (long)mor_ids_.size(); }

    const std::string& obj_id(long o) const { return obj_ids_[o]; }
    const std::string& mor_id(long m) const { return mor_ids_[m]; }
    long obj_index(const std::string& id) const;
    long mor_index(const std::string& id) const;

    long dom(long m) const { return dom_[m]; }
    long cod(long m) const { return cod_[m]; }
    long identity(long o) const { return identity_[o]; }
    bool is_identity(long m) const { return identity_[dom_[m]] == m && dom_[m] == cod_[m]; }

    bool composable(long g, long f) const { return dom_[g] == cod_[f]; }
    long compose(long g, long f) const {  // g ∘ f
        if (!composable(g, f)) throw Error("BadCompositionDomain", mor_ids_[g] + " ∘ " + mor_ids_[f]);
        return table_[g * (long)mor_ids_.size() + f];
    }

    /// Morphisms A -> B.
    std::vector<long> hom(long a, long b) const;

    /// True when some non-identity morphism sits on a composability cycle,
    /// i.e. the non-degenerate nerve is unbounded.
    bool has_endless_chains() const;

    friend FinCat validate_category(const RawCategory& raw);

private:
    std::vector<std::string> obj_ids_, mor_ids_;
    std::map<std::string, long> obj_index_, mor_index_;
    std::vector<long> dom_, cod_, identity_;
    std::vector<long> table_;  // table_[g*nm + f] = g∘f, -1 when not composable
};

FinCat validate_category(const RawCategory& raw);

/// A validated functor between two finite categories.
struct FunctorMap {
    const FinCat* src = nullptr;
    const FinCat* dst = nullptr;
    std::vector<long> obj_map, mor_map;

    long on_obj(long o) const { return obj_map[o]; }
    long on_mor(long m) const { return mor_map[m]; }
    bool operator==(const FunctorMap& o) const { return obj_map == o.obj_map && mor_map == o.mor_map; }
};

FunctorMap validate_functor(const FinCat& src, const FinCat& dst, std::vector<long> obj_map,
                            std::vector<long> mor_map);
FunctorMap identity_functor(const FinCat& c);
/// outer ∘ inner
FunctorMap compose_functors(const FunctorMap& outer, const FunctorMap& inner);

/// A subcategory as subsets of parent objects/morphisms (always contains the
/// identities of its objects).
struct Subcategory {
    const FinCat* parent = nullptr;
    std::vector<char> has_obj, has_mor;

    bool contains_mor(long m) const { return has_mor[m] != 0; }
    bool contains_obj(long o) const { return has_obj[o] != 0; }
    long obj_count() const;
    long mor_count() const;
    bool operator==(const Subcategory& o) const { return has_obj == o.has_obj && has_mor == o.has_mor; }
    bool subset_of(const Subcategory& o) const;
};

Subcategory validate_subcategory(const FinCat& parent, const std::vector<char>& has_obj,
                                 const std::vector<char>& has_mor);
Subcategory full_subcategory(const FinCat& parent);
Subcategory empty_subcategory(const FinCat& parent);
Subcategory subcategory_generated_by(const FinCat& parent, const std::vector<long>& gen_mors,
                                     const std::vector<long>& gen_objs = {});
Subcategory union_subcategory(const Subcategory& u, const Subcategory& v);

/// Materialize a subcategory as its own FinCat, plus the inclusion functor.
struct EmbeddedCat {
    FinCat cat;
    std::vector<long> obj_to_parent, mor_to_parent;
};
EmbeddedCat materialize(const Subcategory& u);
FunctorMap inclusion_functor(const EmbeddedCat& e, const FinCat& parent);

struct NatTrans {
    FunctorMap from, to;
    std::vector<long> components;  // per source object, a morphism of dst
};

/// The zigzag interval category I_m: 0 -> 1 <- 2 -> ...
FinCat interval_category(long m);
/// C x I_m with componentwise composition.
FinCat product_with_interval(const FinCat& c, long m);

/// Per-object / per-morphism candidate restrictions for functor enumeration.
struct FunctorConstraints {
    // empty vector = unconstrained
    std::vector<std::vector<long>> obj_candidates;  // per src object
    std::vector<std::vector<long>> mor_candidates;  // per src morphism
};

/// All functors src -> dst consistent with the constraints, in deterministic
/// (lexicographic) order. The callback may return false to stop early.
void enumerate_functors(const FinCat& src, const FinCat& dst, const FunctorConstraints& cons,
                        const std::function<bool(const FunctorMap&)>& yield);
std::vector<FunctorMap> all_functors(const FinCat& src, const FinCat& dst,
                                     const FunctorConstraints& cons = {});

std::vector<NatTrans> natural_transformations(const FunctorMap& f, const FunctorMap& g);

struct ZigzagStep {
    FunctorMap target;
    bool forward;  // true: nat trans prev -> target, false: target -> prev
    NatTrans witness;
};
struct HomotopyWitness {
    std::vector<ZigzagStep> steps;
};

/// Connectivity in the graph of all functors src->dst with natural
/// transformations (either direction) as edges.
bool homotopic(const FunctorMap& f, const FunctorMap& g, HomotopyWitness* witness = nullptr);

}  // namespace bw::cat

#endif
