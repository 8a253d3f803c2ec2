#ifndef BW_FIBRATION_HPP
#define BW_FIBRATION_HPP

#include <map>
#include <optional>

#include "bw/category.hpp"

namespace bw::fib {

using cat::FinCat;
using cat::FunctorMap;
using cat::Subcategory;

/// φ: e₁ → e₂ is Cartesian for P when every β: e → e₂ together with a base
/// factorization P(φ)∘ᾱ = P(β) lifts to a unique α: e → e₁ with φ∘α = β and
/// P(α) = ᾱ. Exhaustive check; the counterexample (β, ᾱ) is reported when
/// the property fails (existence or uniqueness).
bool is_cartesian(const FunctorMap& p, long phi, std::pair<long, long>* counterexample = nullptr);

/// Dual: unique α: e₂ → e with α∘φ = β and P(α) = ᾱ.
bool is_opcartesian(const FunctorMap& p, long phi, std::pair<long, long>* counterexample = nullptr);

struct FibrationReport {
    bool is_fibration = false;
    bool is_opfibration = false;
    bool is_covering = false;
    bool is_bifibration() const { return is_fibration && is_opfibration; }
    // failures: (base arrow, object over its cod/dom) with no (op-)Cartesian lift
    std::vector<std::pair<long, long>> fibration_failures, opfibration_failures;
    std::string covering_failure;  // human-readable witness, empty when covering
    // (base arrow, object over endpoint) -> chosen lift, least morphism id
    std::map<std::pair<long, long>, long> cartesian_lifts, opcartesian_lifts;
};

/// Full classification by exhaustive enumeration; per-arrow checks run in
/// parallel. classify_serial is the reference implementation.
FibrationReport classify(const FunctorMap& p);
FibrationReport classify_serial(const FunctorMap& p);

/// The fiber over a base object: objects over b, arrows over id_b.
Subcategory fiber(const FunctorMap& p, long b);

/// Pullback of P: E -> B along F: B' -> B. The result's objects are pairs
/// (C, D) with F(C) = P(D); `into_base` is the projection to B', `into_total`
/// the projection to E, and the square commutes.
struct Pullback {
    FinCat cat;
    std::vector<std::pair<long, long>> obj_pairs, mor_pairs;
    FunctorMap into_base, into_total;
};
Pullback pullback(const FunctorMap& p, const FunctorMap& f);

}  // namespace bw::fib

#endif
