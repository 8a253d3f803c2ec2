#include "bw/cochain.hpp"

#include <algorithm>

namespace bw::coh {

using ab::Group;
using ab::Hom;
using ab::IntMatrix;
using ab::Vec;
using cat::Error;

namespace {

std::vector<long> mors_by_id(const FinCat& c) {
    std::vector<long> order(c.num_morphisms());
    for (long m = 0; m < c.num_morphisms(); ++m) order[m] = m;
    std::sort(order.begin(), order.end(),
              [&](long a, long b) { return c.mor_id(a) < c.mor_id(b); });
    return order;
}

std::vector<long> objs_by_id(const FinCat& c) {
    std::vector<long> order(c.num_objects());
    for (long o = 0; o < c.num_objects(); ++o) order[o] = o;
    std::sort(order.begin(), order.end(),
              [&](long a, long b) { return c.obj_id(a) < c.obj_id(b); });
    return order;
}

bool chain_in_subcategory(const FinCat& c, const Chain& ch, const Subcategory& u) {
    if (ch.degree() == 0) return u.contains_obj(c.dom(ch.composite));
    for (long m : ch.mors)
        if (!u.contains_mor(m)) return false;
    return true;
}

std::vector<long> chain_key(long n, const std::vector<long>& mors, long composite) {
    if (n == 0) return {composite};
    return mors;
}

}  // namespace

std::vector<Chain> enumerate_chains(const FinCat& c, long n, bool reduced) {
    std::vector<Chain> out;
    if (n == 0) {
        for (long o : objs_by_id(c)) out.push_back(Chain{{}, c.identity(o), false});
        return out;
    }
    auto order = mors_by_id(c);
    std::vector<long> mors;
    // positions filled left to right; dom of the previous entry constrains
    // the cod of the next
    auto rec = [&](auto&& self, long pos) -> void {
        if (pos == n) {
            long comp = mors[n - 1];
            for (long i = n - 2; i >= 0; --i) comp = c.compose(mors[i], comp);
            bool deg = false;
            for (long m : mors) deg |= c.is_identity(m);
            if (!(reduced && deg)) out.push_back(Chain{mors, comp, deg});
            return;
        }
        for (long m : order) {
            if (pos > 0 && c.cod(m) != c.dom(mors[pos - 1])) continue;
            if (reduced && c.is_identity(m)) continue;
            mors.push_back(m);
            self(self, pos + 1);
            mors.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

long Complex::find_chain(long n, const std::vector<long>& mors, long composite) const {
    if (n < 0 || n > top()) return -1;
    auto it = index[n].find(chain_key(n, mors, composite));
    return it == index[n].end() ? -1 : it->second;
}

Complex build_complex(const FinCat& c, const fact::NaturalSystem& d, long cap, bool reduced,
                      const Subcategory* rel) {
    if (cap < 0 && (!reduced || c.has_endless_chains()))
        throw Error("CapRequired",
                    "the nerve is unbounded; a degree cap is required");
    Complex cx;
    cx.base = &c;
    cx.sys = &d;
    cx.reduced = reduced;

    for (long n = 0;; ++n) {
        auto all = enumerate_chains(c, n, reduced);
        std::vector<Chain> kept;
        for (auto& ch : all)
            if (!rel || !chain_in_subcategory(c, ch, *rel)) kept.push_back(std::move(ch));
        cx.chains.push_back(std::move(kept));
        // a degree-0 basis can be empty for relative complexes while degree 1
        // is not (objects in the subcategory, arrows outside), so natural
        // exhaustion is only detected from degree 1 on
        if (cap < 0 && n >= 1 && cx.chains.back().empty()) break;
        if (cap >= 0 && n == cap) break;
    }
    cx.complete = cx.top() >= 1 && cx.chains.back().empty();

    for (const auto& basis : cx.chains) {
        std::vector<Group> parts;
        std::vector<long> off;
        long at = 0;
        for (const auto& ch : basis) {
            off.push_back(at);
            parts.push_back(d.at(ch.composite));
            at += d.at(ch.composite).n;
        }
        cx.offsets.push_back(std::move(off));
        cx.groups.push_back(ab::direct_sum(parts));
    }
    cx.index.resize(cx.chains.size());
    for (long n = 0; n <= cx.top(); ++n)
        for (long i = 0; i < (long)cx.chains[n].size(); ++i)
            cx.index[n][chain_key(n, cx.chains[n][i].mors, cx.chains[n][i].composite)] = i;

    // coboundaries: assemble by target chain, one face term at a time
    auto add_block = [&](IntMatrix& mat, long roff, long coff, const IntMatrix& b, int sign) {
        for (long i = 0; i < b.rows(); ++i)
            for (long j = 0; j < b.cols(); ++j) mat.at(roff + i, coff + j) += sign * b.at(i, j);
    };
    for (long n = 0; n < cx.top(); ++n) {
        IntMatrix mat(cx.groups[n + 1].n, cx.groups[n].n);
        for (long t = 0; t < (long)cx.chains[n + 1].size(); ++t) {
            const Chain& s = cx.chains[n + 1][t];
            long m = n + 1;
            long roff = cx.offsets[n + 1][t];
            // face 0: drop λ₁, push along it
            {
                std::vector<long> face(s.mors.begin() + 1, s.mors.end());
                long comp = m == 1 ? c.identity(c.dom(s.mors[0]))
                                   : [&] {
                                         long r = face.back();
                                         for (long i = (long)face.size() - 2; i >= 0; --i)
                                             r = c.compose(face[i], r);
                                         return r;
                                     }();
                long j = cx.find_chain(n, face, comp);
                if (j >= 0) add_block(mat, roff, cx.offsets[n][j], d.push_map(s.mors[0], comp).mat, 1);
            }
            // middle faces: compose λᵢ∘λᵢ₊₁, identity coefficient map
            for (long i = 1; i < m; ++i) {
                std::vector<long> face;
                for (long k = 0; k < m; ++k) {
                    if (k == i) continue;
                    face.push_back(k == i - 1 ? c.compose(s.mors[i - 1], s.mors[i]) : s.mors[k]);
                }
                long j = cx.find_chain(n, face, s.composite);
                if (j >= 0)
                    add_block(mat, roff, cx.offsets[n][j], IntMatrix::identity(d.at(s.composite).n),
                              i % 2 ? -1 : 1);
            }
            // last face: drop λₘ, pull along it
            {
                std::vector<long> face(s.mors.begin(), s.mors.end() - 1);
                long comp = m == 1 ? c.identity(c.cod(s.mors[0]))
                                   : [&] {
                                         long r = face.back();
                                         for (long i = (long)face.size() - 2; i >= 0; --i)
                                             r = c.compose(face[i], r);
                                         return r;
                                     }();
                long j = cx.find_chain(n, face, comp);
                if (j >= 0)
                    add_block(mat, roff, cx.offsets[n][j], d.pull_map(s.mors[m - 1], comp).mat,
                              m % 2 ? -1 : 1);
            }
        }
        cx.deltas.emplace_back(cx.groups[n], cx.groups[n + 1], std::move(mat));
        if (!cx.deltas.back().well_defined())
            throw Error("ComplexBroken", "coboundary not defined on torsion in degree " +
                                             std::to_string(n));
    }
    for (long n = 0; n + 1 < (long)cx.deltas.size(); ++n) {
        Hom dd = cx.deltas[n + 1].compose(cx.deltas[n]);
        lin::LatticeSolver solver(cx.groups[n + 2].rels);
        if (!solver.contains_all(dd.mat))
            throw Error("ComplexBroken", "delta∘delta != 0 in degree " + std::to_string(n));
    }
    return cx;
}

ab::Subquotient cohomology_at(const Complex& cx, long n) {
    if (n > cx.top() || (n == cx.top() && !cx.chains[n].empty())) {
        if (!cx.complete)
            throw Error("DegreeNotComputed",
                        "degree " + std::to_string(n) + " is beyond the computed cap");
        if (n > cx.top())
            return ab::Subquotient(Group::free(0), IntMatrix(0, 0), IntMatrix(0, 0));
        // complete implies the top basis is empty, so this point needs n==top
        // with a nonempty basis: impossible
        throw Error("DegreeNotComputed", "internal degree bookkeeping error");
    }
    IntMatrix num = n < (long)cx.deltas.size() ? ab::hom_kernel(cx.deltas[n])
                                               : IntMatrix::identity(cx.groups[n].n);
    IntMatrix den = n == 0 ? IntMatrix(cx.groups[0].n, 0) : cx.deltas[n - 1].mat;
    return ab::Subquotient(cx.groups[n], std::move(num), std::move(den));
}

// The degree-n cochain group, zero beyond the exhausted nerve of a complete
// complex (and an error past the cap of a truncated one).
static const ab::Group& cochain_group(const Complex& cx, long n) {
    static const ab::Group trivial = Group::free(0);
    if (n > cx.top()) {
        if (!cx.complete)
            throw Error("DegreeNotComputed",
                        "degree " + std::to_string(n) + " is beyond the computed cap");
        return trivial;
    }
    return cx.groups[n];
}

ab::Hom induced_cochain_map(const FunctorMap& f, const Complex& src_cx, const Complex& dst_cx,
                            long n) {
    IntMatrix mat(cochain_group(src_cx, n).n, cochain_group(dst_cx, n).n);
    for (long i = 0; n <= src_cx.top() && i < (long)src_cx.chains[n].size(); ++i) {
        const Chain& ch = src_cx.chains[n][i];
        std::vector<long> img;
        img.reserve(ch.mors.size());
        for (long m : ch.mors) img.push_back(f.mor_map[m]);
        long j = dst_cx.find_chain(n, img, f.mor_map[ch.composite]);
        if (j < 0) continue;  // degenerate or excluded image: cochain value 0
        long sz = src_cx.sys->at(ch.composite).n;
        for (long g = 0; g < sz; ++g)
            mat.at(src_cx.offsets[n][i] + g, dst_cx.offsets[n][j] + g) = 1;
    }
    return Hom(cochain_group(dst_cx, n), cochain_group(src_cx, n), std::move(mat));
}

ab::Hom induced_cohomology_map(const FunctorMap& f, const Complex& src_cx, const Complex& dst_cx,
                               long n) {
    Hom big = induced_cochain_map(f, src_cx, dst_cx, n);
    return ab::induced_subquotient_map(big, cohomology_at(dst_cx, n), cohomology_at(src_cx, n));
}

std::vector<Vec> ker_generators(const FunctorMap& f, const Complex& src_cx, const Complex& dst_cx,
                                long n) {
    return ab::kernel_of_subquotient_map(induced_cohomology_map(f, src_cx, dst_cx, n));
}

ab::Hom gamma_map(const Complex& rel_cx, const Complex& abs_cx, long n) {
    IntMatrix mat(cochain_group(abs_cx, n).n, cochain_group(rel_cx, n).n);
    for (long i = 0; n <= rel_cx.top() && i < (long)rel_cx.chains[n].size(); ++i) {
        const Chain& ch = rel_cx.chains[n][i];
        long j = abs_cx.find_chain(n, ch.mors, ch.composite);
        if (j < 0) throw Error("NotChainCompatible", "relative chain missing from absolute basis");
        long sz = rel_cx.sys->at(ch.composite).n;
        for (long g = 0; g < sz; ++g)
            mat.at(abs_cx.offsets[n][j] + g, rel_cx.offsets[n][i] + g) = 1;
    }
    Hom incl(cochain_group(rel_cx, n), cochain_group(abs_cx, n), std::move(mat));
    return ab::induced_subquotient_map(incl, cohomology_at(rel_cx, n), cohomology_at(abs_cx, n));
}

ab::Hom restriction_map(const FunctorMap& inclusion, const Complex& u_cx, const Complex& abs_cx,
                        long n) {
    return induced_cohomology_map(inclusion, u_cx, abs_cx, n);
}

}  // namespace bw::coh
