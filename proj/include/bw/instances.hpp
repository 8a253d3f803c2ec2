#ifndef BW_INSTANCES_HPP
#define BW_INSTANCES_HPP

#include <memory>
#include <optional>
#include <string>

#include "bw/factorization.hpp"

namespace bw::inst {

/// A bundled or generated problem instance. Everything is validated on
/// construction. The shared_ptrs keep the categories and systems alive for
/// the internal pointers of FunctorMap / NaturalSystem / Pairing.
struct Instance {
    std::string name;
    std::shared_ptr<cat::FinCat> base;
    std::shared_ptr<cat::FinCat> total;  // null when the instance is a bare category
    std::optional<cat::FunctorMap> p;    // total -> base, when `total` is present
    std::shared_ptr<fact::NaturalSystem> system;      // coefficients on `base`, may be null
    std::shared_ptr<fact::NaturalSystem> alt_system;  // second sign orientation (parallel_arrows_S)
    std::shared_ptr<fact::Pairing> pairing;           // endopairing on `system`, may be null
};

/// Bundled instances:
///   parallel_arrows_S          two parallel arrows alpha, beta : C -> D, with the
///                              sign coefficient system (values Z, pulling along
///                              beta negates) and its multiplication pairing;
///                              alt_system carries the other consistent sign
///                              orientation (pushing along beta negates)
///   groupoid_to_Z2             the two-object groupoid over the group Z/2
///   doblecir_covering          the four-arrow double cover of parallel_arrows_S,
///                              with the sign system and pairing on the base
///   projective_plane_covering  the three-level base with relations
///                              beta1.alpha1 = gamma1 = beta2.alpha2 and
///                              beta1.alpha2 = gamma2 = beta2.alpha1, its poset
///                              double cover, and the constant Z/2 multiplication
///                              pairing
///   interval_m                 the zigzag interval with 3 arrows
///   interval_<k>               the zigzag interval with k arrows (k >= 0)
///   terminal                   the one-object category
/// Throws UnknownInstance for anything else.
Instance load_bundled(const std::string& name);

struct RandomParams {
    long max_objects = 5;
    bool acyclic = true;        // free category on a random DAG; otherwise a groupoid
    bool with_covering = false; // also build a finite covering of the base
    long fibers = 2;            // sheets of the generated covering (acyclic case)
    bool with_system = false;   // attach a representable coefficient system
    ab::Int modulus = 0;        // coefficient modulus for generated systems, 0 = Z
};

/// Deterministic per seed. Acyclic instances are free categories on random
/// DAGs (their morphisms are paths); coverings are built from a permutation
/// action on the fibers, which makes both star maps bijective by
/// construction. Non-acyclic instances are one-object cyclic groups Z/m with
/// action-groupoid coverings.
Instance generate_random(unsigned long long seed, RandomParams params = {});

/// The natural system represented by a base morphism mu0: the value at
/// lambda is the free (or Z/modulus) module on the factorizations
/// lambda = alpha . mu0 . beta, with push/pull acting by post/pre-composition
/// on the (alpha, beta) basis. Functorial by construction; validated anyway.
fact::NaturalSystem representable_system(const cat::FinCat& c, long mu0,
                                         const ab::Int& modulus = 0);

}  // namespace bw::inst

#endif
