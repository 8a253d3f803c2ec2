#ifndef BW_COCHAIN_HPP
#define BW_COCHAIN_HPP

#include <map>
#include <vector>

#include "bw/factorization.hpp"

namespace bw::coh {

using cat::FinCat;
using cat::FunctorMap;
using cat::Subcategory;

/// A composable chain (λ₁,…,λₙ), oriented dom λᵢ = cod λᵢ₊₁. Degree 0 is an
/// object, stored via its identity morphism as the composite.
struct Chain {
    std::vector<long> mors;
    long composite = -1;  // λ₁∘⋯∘λₙ, or id of the object in degree 0
    bool degenerate = false;

    long degree() const { return (long)mors.size(); }
};

/// All degree-n chains in deterministic order: degree 0 follows object-id
/// order, higher degrees are lexicographic in morphism ids position by
/// position. reduced=true drops degenerate chains.
std::vector<Chain> enumerate_chains(const FinCat& c, long n, bool reduced);

/// The cochain complex in degrees 0..top() with coboundaries between them.
/// Coordinates of degree n: one generator block per basis chain, the block
/// being the generators of D at the chain's composite.
struct Complex {
    const FinCat* base = nullptr;
    const fact::NaturalSystem* sys = nullptr;
    bool reduced = true;
    bool complete = true;  // false when a cap truncated an unbounded nerve
    std::vector<std::vector<Chain>> chains;  // per degree
    std::vector<ab::Group> groups;           // per degree, direct sum over chains
    std::vector<std::vector<long>> offsets;  // per degree, generator offset per chain
    std::vector<ab::Hom> deltas;             // deltas[n]: groups[n] -> groups[n+1]

    long top() const { return (long)chains.size() - 1; }
    /// Index of a chain in the degree-n basis, -1 when absent. Degree 0 is
    /// keyed by the composite (the object's identity), higher degrees by the
    /// morphism list.
    long find_chain(long n, const std::vector<long>& mors, long composite) const;
    std::vector<std::map<std::vector<long>, long>> index;  // per degree
};

/// Builds degrees 0..cap. cap = -1 means "until the non-degenerate nerve is
/// exhausted", which requires a loop-free category (error CapRequired
/// otherwise; full complexes always need a cap). When `rel` is given, chains
/// lying entirely inside it are excluded (relative complex; degree 0 excludes
/// its objects). delta∘delta is verified during assembly (ComplexBroken).
Complex build_complex(const FinCat& c, const fact::NaturalSystem& d, long cap = -1,
                      bool reduced = true, const Subcategory* rel = nullptr);

/// Hⁿ = ker δⁿ / im δⁿ⁻¹ as a subquotient of groups[n]. Requires n <= top()
/// when the complex is complete; with a truncated complex additionally
/// n < top() so that ker δⁿ is known (error DegreeNotComputed).
ab::Subquotient cohomology_at(const Complex& cx, long n);

/// The cochain restriction along F: cochains on F's target -> cochains on F's
/// source, in degree n: (F*f)(λ₁,…,λₙ) = f(Fλ₁,…,Fλₙ), zero when the image
/// chain indexes no basis element. `src_cx` must be built over F's source with
/// the pullback system, `dst_cx` over F's target.
ab::Hom induced_cochain_map(const FunctorMap& f, const Complex& src_cx, const Complex& dst_cx,
                            long n);

/// Map on cohomology normal forms induced by the cochain restriction.
ab::Hom induced_cohomology_map(const FunctorMap& f, const Complex& src_cx, const Complex& dst_cx,
                               long n);

/// Nonzero generators of ker(induced map on Hⁿ), in the normal form of
/// Hⁿ(target of F).
std::vector<ab::Vec> ker_generators(const FunctorMap& f, const Complex& src_cx,
                                    const Complex& dst_cx, long n);

/// γ: Hⁿ(𝒞,𝒰;D) -> Hⁿ(𝒞;D), induced by extending relative cochains by zero.
/// rel_cx must be the relative complex for some subcategory, abs_cx the
/// absolute one over the same category, system and cap.
ab::Hom gamma_map(const Complex& rel_cx, const Complex& abs_cx, long n);

/// ι*: Hⁿ(𝒞;D) -> Hⁿ(𝒰;D) for a materialized subcategory, as the induced map
/// of the inclusion functor. u_cx must be built over the materialized
/// subcategory with the restricted (pulled back) system.
ab::Hom restriction_map(const FunctorMap& inclusion, const Complex& u_cx, const Complex& abs_cx,
                        long n);

}  // namespace bw::coh

#endif
