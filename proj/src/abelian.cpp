#include "bw/abelian.hpp"

#include <algorithm>

namespace bw::ab {

std::string Invariants::str() const {
    if (trivial()) return "0";
    std::string s;
    auto app = [&](const std::string& t) {
        if (!s.empty()) s += " + ";
        s += t;
    };
    if (free_rank == 1) app("Z");
    else if (free_rank > 1) app("Z^" + std::to_string(free_rank));
    for (const auto& d : torsion) app("Z/" + d.get_str());
    return s;
}

Group Group::with_invariants(const Invariants& inv) {
    long k = (long)inv.torsion.size();
    for (long i = 0; i < k; ++i) {
        if (inv.torsion[i] < 2) throw Error("BadInvariants", "torsion factor < 2");
        if (i > 0 && inv.torsion[i] % inv.torsion[i - 1] != 0)
            throw Error("BadInvariants", "divisibility chain violated");
    }
    IntMatrix rels(inv.free_rank + k, k);
    for (long i = 0; i < k; ++i) rels.at(inv.free_rank + i, i) = inv.torsion[i];
    return Group(inv.free_rank + k, std::move(rels));
}

Invariants Group::invariants() const {
    auto s = lin::smith_normal_form(rels);
    Invariants inv;
    inv.free_rank = n - s.rank;
    for (long i = 0; i < s.rank; ++i)
        if (s.S.at(i, i) >= 2) inv.torsion.push_back(s.S.at(i, i));
    return inv;
}

Group direct_sum(const std::vector<Group>& parts) {
    long n = 0, k = 0;
    for (const auto& p : parts) {
        n += p.n;
        k += p.rels.cols();
    }
    IntMatrix rels(n, k);
    long ro = 0, co = 0;
    for (const auto& p : parts) {
        for (long i = 0; i < p.n; ++i)
            for (long j = 0; j < p.rels.cols(); ++j) rels.at(ro + i, co + j) = p.rels.at(i, j);
        ro += p.n;
        co += p.rels.cols();
    }
    return Group(n, std::move(rels));
}

Hom Hom::add(const Hom& o) const {
    IntMatrix m = mat;
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) m.at(i, j) += o.mat.at(i, j);
    return Hom(src, dst, std::move(m));
}

IntMatrix hom_kernel(const Hom& h) {
    // x with h(x) in the relation lattice of dst
    IntMatrix m = h.mat.hstack(h.dst.rels);
    IntMatrix kern = lin::kernel(m);
    IntMatrix gens(h.src.n, 0);
    for (long j = 0; j < kern.cols(); ++j) {
        Vec x(h.src.n);
        bool nonzero = false;
        for (long i = 0; i < h.src.n; ++i) {
            x[i] = kern.at(i, j);
            nonzero |= x[i] != 0;
        }
        if (nonzero) gens = gens.hstack(IntMatrix::column(x));
    }
    return gens.hstack(h.src.rels);
}

Subquotient::Subquotient(Group ambient, IntMatrix num, IntMatrix den)
    : ambient_(std::move(ambient)),
      num_(std::move(num)),
      den_(std::move(den)),
      nf_(Group::free(0)),
      lift_(0, 0),
      a_(0, 0),
      uinv_rows_(0, 0) {
    if (num_.rows() != ambient_.n || den_.rows() != ambient_.n)
        throw std::logic_error("Subquotient: generator shape mismatch");
    a_ = num_.hstack(ambient_.rels);
    IntMatrix b = den_.hstack(ambient_.rels);
    num_solver_ = std::make_shared<lin::LatticeSolver>(a_);
    den_solver_ = std::make_shared<lin::LatticeSolver>(b);
    for (long j = 0; j < den_.cols(); ++j)
        if (!num_solver_->contains(den_.col(j)))
            throw Error("DenominatorNotContained", "denominator generator outside numerator span");

    // relations among the columns of a_ modulo b
    long s = a_.cols();
    IntMatrix kern = lin::kernel(a_.hstack(b));
    IntMatrix k(s, kern.cols());
    for (long i = 0; i < s; ++i)
        for (long j = 0; j < kern.cols(); ++j) k.at(i, j) = kern.at(i, j);

    auto snf = lin::smith_normal_form(k);
    std::vector<long> free_pos, tor_pos;
    std::vector<Int> tor;
    for (long i = 0; i < s; ++i) {
        Int d = (i < std::min(k.rows(), k.cols())) ? snf.S.at(i, i) : Int(0);
        if (d == 0) free_pos.push_back(i);
        else if (d >= 2) {
            tor_pos.push_back(i);
            tor.push_back(d);
        }
    }
    inv_ = Invariants{(long)free_pos.size(), tor};
    nf_ = Group::with_invariants(inv_);

    std::vector<long> kept = free_pos;
    kept.insert(kept.end(), tor_pos.begin(), tor_pos.end());
    kept_ord_.assign(kept.size(), Int(0));
    for (size_t i = 0; i < tor.size(); ++i) kept_ord_[free_pos.size() + i] = tor[i];

    lift_ = IntMatrix(ambient_.n, (long)kept.size());
    uinv_rows_ = IntMatrix((long)kept.size(), s);
    for (size_t jj = 0; jj < kept.size(); ++jj) {
        long p = kept[jj];
        Vec rep = a_.apply(snf.Uinv.col(p));
        for (long i = 0; i < ambient_.n; ++i) lift_.at(i, (long)jj) = rep[i];
        for (long c = 0; c < s; ++c) uinv_rows_.at((long)jj, c) = snf.U.at(p, c);
    }
}

bool Subquotient::contains(const Vec& x) const { return num_solver_->contains(x); }

Vec Subquotient::reduce(const Vec& x) const {
    auto v = num_solver_->solve(x);
    if (!v) throw Error("NotInNumerator", "element outside the numerator subgroup");
    Vec w = uinv_rows_.apply(*v);
    for (size_t i = 0; i < w.size(); ++i)
        if (kept_ord_[i] != 0) {
            mpz_fdiv_r(w[i].get_mpz_t(), w[i].get_mpz_t(), kept_ord_[i].get_mpz_t());
        }
    return w;
}

bool Subquotient::element_is_zero(const Vec& x) const {
    if (!contains(x)) throw Error("NotInNumerator", "element outside the numerator subgroup");
    return den_solver_->contains(x);
}

Hom induced_subquotient_map(const Hom& f, const Subquotient& src, const Subquotient& dst) {
    if (!f.well_defined()) throw Error("NotChainCompatible", "map not well-defined on ambient torsion");
    for (long j = 0; j < src.num().cols(); ++j)
        if (!dst.contains(f.apply(src.num().col(j))))
            throw Error("NotChainCompatible", "numerator image leaves the target numerator");
    for (long j = 0; j < src.den().cols(); ++j)
        if (!dst.element_is_zero(f.apply(src.den().col(j))))
            throw Error("NotChainCompatible", "denominator image leaves the target denominator");
    IntMatrix mat(dst.normal_form().n, src.normal_form().n);
    for (long j = 0; j < src.normal_form().n; ++j) {
        Vec img = f.apply(src.lift().col(j));
        if (!dst.contains(img)) throw Error("NotChainCompatible", "image leaves the target numerator");
        Vec red = dst.reduce(img);
        for (long i = 0; i < dst.normal_form().n; ++i) mat.at(i, j) = red[i];
    }
    Hom h(src.normal_form(), dst.normal_form(), std::move(mat));
    if (!h.well_defined()) throw Error("NotChainCompatible", "induced map not well-defined on torsion");
    return h;
}

std::vector<Vec> kernel_of_subquotient_map(const Hom& f_nf) {
    IntMatrix gens = hom_kernel(f_nf);
    std::vector<Vec> out;
    for (long j = 0; j < gens.cols(); ++j) {
        Vec x = gens.col(j);
        if (!f_nf.src.element_is_zero(x)) out.push_back(std::move(x));
    }
    return out;
}

}  // namespace bw::ab
