#ifndef BW_ABELIAN_HPP
#define BW_ABELIAN_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bw/int_matrix.hpp"

namespace bw::ab {

using lin::Int;
using lin::IntMatrix;
using lin::Vec;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& what) : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

/// Isomorphism type of a finitely generated abelian group:
/// Z^free_rank + Z/d1 + ... with d1 | d2 | ..., di >= 2.
struct Invariants {
    long free_rank = 0;
    std::vector<Int> torsion;
    bool operator==(const Invariants&) const = default;
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string str() const;
};

/// A finitely generated abelian group presented as Z^n modulo the lattice
/// spanned by the columns of `rels`. Every torsion question in the artifact
/// reduces to lattice membership against `rels` (plus subgroup generators).
struct Group {
    long n = 0;
    IntMatrix rels;  // n x k

    Group() : rels(0, 0) {}
    Group(long n_, IntMatrix r) : n(n_), rels(std::move(r)) {
        if (rels.rows() != n) throw std::logic_error("Group: relation shape mismatch");
    }

    static Group free(long r) { return Group(r, IntMatrix(r, 0)); }

    /// Normal-form layout: free generators first, then one generator per
    /// invariant factor in increasing order.
    static Group with_invariants(const Invariants& inv);
    static Group with_invariants(long free_rank, std::vector<Int> torsion) {
        return with_invariants(Invariants{free_rank, std::move(torsion)});
    }

    Invariants invariants() const;
    bool is_trivial() const { return invariants().trivial(); }

    /// Membership of x in the relation lattice, i.e. x == 0 in the group.
    bool element_is_zero(const Vec& x) const { return lin::LatticeSolver(rels).contains(x); }
};

/// Direct sum, keeping each summand's generators as a contiguous block.
Group direct_sum(const std::vector<Group>& parts);

/// Homomorphism between presented groups; column j of `mat` is the image of
/// generator j of `src` in the generators of `dst`.
struct Hom {
    Group src, dst;
    IntMatrix mat;

    Hom() : mat(0, 0) {}
    Hom(Group s, Group d, IntMatrix m) : src(std::move(s)), dst(std::move(d)), mat(std::move(m)) {
        if (mat.rows() != dst.n || mat.cols() != src.n) throw std::logic_error("Hom: shape mismatch");
    }

    static Hom identity(const Group& g) { return Hom(g, g, IntMatrix::identity(g.n)); }
    static Hom zero(const Group& s, const Group& d) { return Hom(s, d, IntMatrix(d.n, s.n)); }

    /// Well-defined on torsion: the image of every relation is a relation.
    bool well_defined() const { return lin::LatticeSolver(dst.rels).contains_all(mat.mul(src.rels)); }

    Hom compose(const Hom& inner) const {  // this o inner
        return Hom(inner.src, dst, mat.mul(inner.mat));
    }
    Hom add(const Hom& o) const;
    Hom negated() const { return Hom(src, dst, mat.negated()); }
    Vec apply(const Vec& x) const { return mat.apply(x); }
};

/// Generators of ker h = { x : h(x) = 0 in dst }, as a subgroup of src
/// (the relation lattice of src is always contained in it).
IntMatrix hom_kernel(const Hom& h);

/// (<num> + rels) / (<den> + rels) inside an ambient presented group, with a
/// computed normal form, coset representatives and a reduction map.
class Subquotient {
public:
    Subquotient(Group ambient, IntMatrix num, IntMatrix den);

    const Group& ambient() const { return ambient_; }
    const IntMatrix& num() const { return num_; }
    const IntMatrix& den() const { return den_; }
    const Group& normal_form() const { return nf_; }
    const Invariants& invariants() const { return inv_; }
    /// ambient.n x nf.n, column j = chosen coset representative of nf generator j
    const IntMatrix& lift() const { return lift_; }

    /// Normal-form coordinates of an ambient element of the numerator.
    Vec reduce(const Vec& x) const;
    bool element_is_zero(const Vec& x) const;
    bool contains(const Vec& x) const;  // membership in the numerator

private:
    Group ambient_;
    IntMatrix num_, den_;
    Group nf_;
    Invariants inv_;
    IntMatrix lift_;
    IntMatrix a_;  // [num | ambient.rels]
    std::shared_ptr<lin::LatticeSolver> num_solver_, den_solver_;
    IntMatrix uinv_rows_;  // nf coordinates of numerator combinations: row i = kept row i of U
    std::vector<Int> kept_ord_;  // 0 = free, else the invariant factor
};

inline Subquotient subquotient(const Group& ambient, IntMatrix num, IntMatrix den) {
    return Subquotient(ambient, std::move(num), std::move(den));
}

/// Map on normal forms induced by f (a Hom between the ambient groups);
/// throws NotChainCompatible when f does not respect numerators/denominators.
Hom induced_subquotient_map(const Hom& f, const Subquotient& src, const Subquotient& dst);

/// Nonzero kernel generators of a map between normal forms, in src normal-form
/// coordinates.
std::vector<Vec> kernel_of_subquotient_map(const Hom& f_nf);

}  // namespace bw::ab

#endif
