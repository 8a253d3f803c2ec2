#ifndef BW_CUP_HPP
#define BW_CUP_HPP

#include "bw/cochain.hpp"

namespace bw::cup {

/// (f ⌣ g)(λ₁,…,λₙ₊ₘ) = f(λ₁,…,λₙ) · g(λₙ₊₁,…,λₙ₊ₘ), evaluated against the
/// basis of `out_cx` in degree n+m. f lives in cxf degree n, g in cxg degree
/// m; all three complexes share the base category. Halves indexing no basis
/// element (degenerate, or inside a relative subcategory) contribute zero.
/// Throws DegreeOverflow when degree n+m is not materialized in out_cx.
ab::Vec cup_cochain(const coh::Complex& cxf, long n, const ab::Vec& f, const coh::Complex& cxg,
                    long m, const ab::Vec& g, const coh::Complex& out_cx,
                    const fact::Pairing& p);

/// Cohomology of an absolute complex packaged with an endopairing, degrees
/// 0..max_degree, for class-level products.
struct GradedRing {
    const coh::Complex* cx = nullptr;
    const fact::Pairing* pairing = nullptr;
    std::vector<ab::Subquotient> h;  // per degree
    long max_degree = 0;
    bool capped = false;  // true when degrees beyond max_degree are unknown
};

GradedRing build_ring(const coh::Complex& cx, const fact::Pairing& p, long max_degree);

/// {x} ⌣ {y} on normal-form coordinates, via chosen cocycle representatives.
ab::Vec cup_classes(const GradedRing& r, long n, const ab::Vec& x, long m, const ab::Vec& y);

/// A positive-degree class used as a generator in the cup-length search.
struct DegClass {
    long degree = 0;
    ab::Vec coords;  // in h[degree] normal form
};

struct CupLengthResult {
    long value = 0;
    bool exact = true;  // false when the degree cap leaves longer products unknown
    std::vector<DegClass> witness;
};

/// Largest L with a nonzero L-fold product of positive-degree classes drawn
/// from `gens` (default: the normal-form generators of every degree >= 1).
/// Multilinearity makes the generator-only search complete. Search order:
/// increasing length, lexicographic tuples; parallel over the first factor.
CupLengthResult cup_length(const GradedRing& r, const std::vector<DegClass>* gens = nullptr);
/// Single-threaded reference implementation with identical results.
CupLengthResult cup_length_serial(const GradedRing& r, const std::vector<DegClass>* gens = nullptr);

/// One factor of a relative product: a class in Hᵈ(𝒞,𝒰ᵢ;D).
struct RelClass {
    const coh::Complex* cx = nullptr;       // complex of 𝒞 relative to `piece`
    const cat::Subcategory* piece = nullptr;
    long degree = 0;
    ab::Vec coords;  // in the relative cohomology normal form
};

/// The relative product: classes ξᵢ ∈ H^{pᵢ}(𝒞,𝒰ᵢ;D) multiply into
/// H^{Σpᵢ}(𝒞, 𝒰₀∪⋯∪𝒰ₙ; D) provided the pieces form a geometric cover of
/// their union (NotGeometricCover otherwise). abs_cx is the absolute complex,
/// union_cx the complex relative to the union.
ab::Vec relative_cup(const coh::Complex& abs_cx, const std::vector<RelClass>& factors,
                     const cat::Subcategory& union_u, const coh::Complex& union_cx,
                     const fact::Pairing& p);

}  // namespace bw::cup

#endif
