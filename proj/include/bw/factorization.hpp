#ifndef BW_FACTORIZATION_HPP
#define BW_FACTORIZATION_HPP

#include <map>
#include <utility>
#include <vector>

#include "bw/abelian.hpp"
#include "bw/category.hpp"

namespace bw::fact {

using cat::FinCat;
using cat::FunctorMap;

/// The factorization category of a base category: objects are the base
/// morphisms, a morphism lambda -> mu is a pair (alpha, beta) with
/// mu = alpha ∘ lambda ∘ beta.
struct FactCat {
    const FinCat* base = nullptr;
    FinCat cat;  // objects indexed like base morphisms
    // per cat-morphism: the defining data
    std::vector<long> alpha, beta, from, to;

    long pair_index(long a, long b, long lambda) const;  // morphism (a,b): lambda -> a∘lambda∘b
};

FactCat build_fact_cat(const FinCat& c);

/// F-hat on factorization categories: lambda -> F(lambda), (a,b) -> (Fa, Fb).
FunctorMap induced_hat(const FunctorMap& f, const FactCat& src_fc, const FactCat& dst_fc);

/// A natural system: an abelian group per base morphism plus push maps
/// (post-composition, alpha_*) and pull maps (pre-composition, beta^*),
/// validated to assemble into a functor on the factorization category.
struct NaturalSystem {
    const FinCat* base = nullptr;
    std::vector<ab::Group> value;  // per base morphism

    // push[{a, l}] : D_l -> D_{a∘l}   for cod l == dom a
    // pull[{b, l}] : D_l -> D_{l∘b}   for cod b == dom l
    std::map<std::pair<long, long>, ab::Hom> push, pull;

    const ab::Group& at(long mor) const { return value[mor]; }
    const ab::Hom& push_map(long a, long l) const;
    const ab::Hom& pull_map(long b, long l) const;
    /// D(alpha,beta) = pull_beta ∘ push_alpha on D_lambda.
    ab::Hom structure_map(long a, long b, long lambda) const;
};

/// Checks all functor axioms exhaustively over the factorization category;
/// throws NotFunctorial / MalformedHom with a witness.
NaturalSystem validate_natural_system(NaturalSystem raw, const FactCat& fc);

NaturalSystem constant_system(const FinCat& c, const ab::Group& a);

/// F*D = D ∘ F-hat.
NaturalSystem pullback_system(const FunctorMap& f, const NaturalSystem& d);

/// Bilinear pairing (D1; D2) -> Dout on 2-chains; for each composable pair of
/// base morphisms (m1, m2) (dom m1 == cod m2) and each pair of generators, an
/// element of Dout_{m1∘m2}.
struct Pairing {
    const NaturalSystem* d1 = nullptr;
    const NaturalSystem* d2 = nullptr;
    const NaturalSystem* dout = nullptr;
    // table[{m1,m2}][i][j] with i a generator of D1_{m1}, j of D2_{m2}
    std::map<std::pair<long, long>, std::vector<std::vector<ab::Vec>>> table;

    /// Bilinear evaluation on arbitrary elements.
    ab::Vec eval(long m1, long m2, const ab::Vec& x, const ab::Vec& y) const;
};

/// Multiplication pairing on the constant system Z (modulus 0) or Z/m.
struct RingPairing {
    NaturalSystem system;  // keep alive together with the pairing
    Pairing pairing;
};
RingPairing ring_pairing(const FinCat& c, const ab::Int& modulus);

/// Pairing on a pullback system: (F*mu)_{(l1,l2)} = mu_{(Fl1,Fl2)}.
Pairing pullback_pairing(const FunctorMap& f, const Pairing& mu, const NaturalSystem& pd1,
                         const NaturalSystem& pd2, const NaturalSystem& pdout);

/// The three naturality identities checked exhaustively on generators;
/// throws PairingNotNatural with identity number and witness.
void validate_pairing(const Pairing& p);

}  // namespace bw::fact

#endif
