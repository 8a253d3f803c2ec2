#ifndef BW_SECAT_HPP
#define BW_SECAT_HPP

#include <memory>
#include <optional>

#include "bw/cochain.hpp"

namespace bw::secat {

using cat::FinCat;
using cat::FunctorMap;
using cat::Subcategory;

/// Arrow sets of composable chains. A chain lies in a subcategory iff its
/// arrow set does, so coverage of the (possibly unbounded) set of chains
/// reduces to coverage of the finitely many maximal realizable arrow sets.
/// Identities of visited objects are always included (they can be inserted
/// into any chain), which also accounts for degree-0 chains.
struct RealizableSetFamily {
    const FinCat* base = nullptr;
    std::vector<std::vector<char>> maximal_sets;  // morphism membership masks
};

/// Depth-first search over (endpoint object, arrow set) states; throws
/// SetExplosion when the number of distinct states exceeds `limit`.
RealizableSetFamily realizable_sets(const FinCat& c, long limit = 2000000);

/// True iff every chain of `scope` lies in some piece; on failure `uncovered`
/// receives a maximal realizable arrow set no piece contains.
bool is_geometric_cover(const std::vector<Subcategory>& pieces, const Subcategory& scope,
                        std::vector<char>* uncovered = nullptr, long limit = 2000000);

enum class SectionKind { strict, homotopic };

/// A section of P over a subcategory u of the base: s: u -> E with P∘s = ι
/// (strict) or P∘s ≃ ι (homotopic, with a zigzag witness).
struct SectionWitness {
    std::shared_ptr<cat::EmbeddedCat> domain;  // the materialized piece, kept alive
    FunctorMap s;  // from domain->cat into the source of P
    cat::HomotopyWitness homotopy;  // empty for strict sections
};

/// Up to max_count sections of P over u, in deterministic order.
std::vector<SectionWitness> sections(const FunctorMap& p, const Subcategory& u, SectionKind kind,
                                     long max_count = 1);

struct CoverCertificate {
    std::vector<Subcategory> pieces;
    std::vector<SectionWitness> piece_sections;
    SectionKind kind = SectionKind::strict;
};

struct SecatResult {
    bool finite = false;
    long value = 0;  // meaningful when finite
    std::optional<CoverCertificate> certificate;
};

/// Exact sectional category: least n such that n+1 sectioned subcategories
/// form a geometric cover of the base, or ∞ (finite = false). kind = strict
/// computes sc, kind = homotopic the Švarc genus.
SecatResult secat(const FunctorMap& p, SectionKind kind, long limit = 2000000);

struct SvarcBound {
    long cpl = 0;
    bool cpl_exact = true;
    SecatResult sg;
    bool holds = false;  // cpl <= Sg(P)
};

/// Checks the main inequality: the cup length of ker P* is a lower bound for
/// the Švarc genus. Requires P to be a bifibration (NotABifibration), where
/// Sg = sc, so the strict sectional category is computed. D and the
/// endopairing live on the base (the target of P).
SvarcBound svarc_bound(const FunctorMap& p, const fact::NaturalSystem& d,
                       const fact::Pairing& pairing, long degree_cap);

}  // namespace bw::secat

#endif
