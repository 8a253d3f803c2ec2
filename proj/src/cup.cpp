#include "bw/cup.hpp"

#include <omp.h>

#include "bw/secat.hpp"

namespace bw::cup {

using ab::Vec;
using cat::Error;
using coh::Chain;
using coh::Complex;

namespace {

long prefix_composite(const cat::FinCat& c, const std::vector<long>& mors, long from, long to,
                      long whole_composite) {
    // composite of mors[from..to); an empty slice is the identity of the
    // object where the neighbouring arrows meet
    if (from == to) {
        if (mors.empty()) return whole_composite;  // degree-0 chain: the object itself
        if (to == (long)mors.size()) return c.identity(c.dom(mors.back()));
        return c.identity(c.cod(mors[to]));
    }
    long r = mors[to - 1];
    for (long i = to - 2; i >= from; --i) r = c.compose(mors[i], r);
    return r;
}

Vec block_of(const Complex& cx, long n, const Vec& v, long chain_idx) {
    long off = cx.offsets[n][chain_idx];
    long sz = cx.sys->at(cx.chains[n][chain_idx].composite).n;
    Vec out(sz);
    for (long g = 0; g < sz; ++g) out[g] = v[off + g];
    return out;
}

}  // namespace

Vec cup_cochain(const Complex& cxf, long n, const Vec& f, const Complex& cxg, long m, const Vec& g,
                const Complex& out_cx, const fact::Pairing& p) {
    long total = n + m;
    if (total > out_cx.top())
        throw Error("DegreeOverflow", "degree " + std::to_string(total) + " beyond the cap");
    const cat::FinCat& c = *out_cx.base;
    Vec out(out_cx.groups[total].n);
    for (long t = 0; t < (long)out_cx.chains[total].size(); ++t) {
        const Chain& s = out_cx.chains[total][t];
        std::vector<long> first(s.mors.begin(), s.mors.begin() + n);
        std::vector<long> last(s.mors.begin() + n, s.mors.end());
        long c1 = prefix_composite(c, s.mors, 0, n, s.composite);
        long c2 = prefix_composite(c, s.mors, n, total, s.composite);
        long i1 = cxf.find_chain(n, first, c1);
        long i2 = cxg.find_chain(m, last, c2);
        if (i1 < 0 || i2 < 0) continue;  // a half is degenerate or excluded
        Vec val = p.eval(c1, c2, block_of(cxf, n, f, i1), block_of(cxg, m, g, i2));
        long off = out_cx.offsets[total][t];
        for (size_t k = 0; k < val.size(); ++k) out[off + k] += val[k];
    }
    return out;
}

GradedRing build_ring(const Complex& cx, const fact::Pairing& p, long max_degree) {
    GradedRing r;
    r.cx = &cx;
    r.pairing = &p;
    // with a complete complex, everything above the top degree is zero, so
    // extending the range makes "beyond max_degree" mean "zero" uniformly
    r.max_degree = cx.complete ? std::max(max_degree, cx.top()) : max_degree;
    r.capped = !cx.complete;
    for (long d = 0; d <= r.max_degree; ++d) r.h.push_back(coh::cohomology_at(cx, d));
    return r;
}

Vec cup_classes(const GradedRing& r, long n, const Vec& x, long m, const Vec& y) {
    if (n + m > r.max_degree)
        throw Error("DegreeOverflow", "class product beyond the computed range");
    Vec fx = r.h[n].lift().apply(x);
    Vec fy = r.h[m].lift().apply(y);
    Vec prod = cup_cochain(*r.cx, n, fx, *r.cx, m, fy, *r.cx, *r.pairing);
    return r.h[n + m].reduce(prod);
}

namespace {

std::vector<DegClass> default_gens(const GradedRing& r) {
    std::vector<DegClass> gens;
    for (long d = 1; d <= r.max_degree; ++d)
        for (long j = 0; j < r.h[d].normal_form().n; ++j) {
            Vec e(r.h[d].normal_form().n);
            e[j] = 1;
            gens.push_back({d, std::move(e)});
        }
    return gens;
}

// left-associated product of the tuple; nullopt when the total degree
// overflows the computed range
std::optional<std::pair<long, Vec>> tuple_product(const GradedRing& r,
                                                  const std::vector<DegClass>& gens,
                                                  const std::vector<long>& idx) {
    long total = 0;
    for (long i : idx) total += gens[i].degree;
    if (total > r.max_degree) return std::nullopt;
    long d = gens[idx[0]].degree;
    Vec cur = gens[idx[0]].coords;
    for (size_t k = 1; k < idx.size(); ++k) {
        cur = cup_classes(r, d, cur, gens[idx[k]].degree, gens[idx[k]].coords);
        d += gens[idx[k]].degree;
        if (r.h[d].normal_form().element_is_zero(cur)) return std::make_pair(d, Vec(cur.size()));
    }
    return std::make_pair(d, cur);
}

// search all length-L tuples whose first index is i0; returns the first
// (lexicographic) tuple with nonzero product, and whether any tuple
// overflowed the degree range
struct LevelScan {
    std::optional<std::vector<long>> found;
    bool overflow = false;
};

LevelScan scan_first(const GradedRing& r, const std::vector<DegClass>& gens, long L, long i0) {
    LevelScan res;
    std::vector<long> idx(L);
    idx[0] = i0;
    auto rec = [&](auto&& self, long pos) -> bool {
        if (pos == L) {
            auto pr = tuple_product(r, gens, idx);
            if (!pr) {
                res.overflow = true;
                return false;
            }
            if (!r.h[pr->first].normal_form().element_is_zero(pr->second)) {
                res.found = idx;
                return true;
            }
            return false;
        }
        for (long i = 0; i < (long)gens.size(); ++i) {
            idx[pos] = i;
            if (self(self, pos + 1)) return true;
        }
        return false;
    };
    rec(rec, 1);
    return res;
}

CupLengthResult cup_length_impl(const GradedRing& r, const std::vector<DegClass>* gens_in,
                                bool parallel) {
    std::vector<DegClass> gens = gens_in ? *gens_in : default_gens(r);
    // drop zero classes up front
    std::erase_if(gens, [&](const DegClass& g) {
        return r.h[g.degree].normal_form().element_is_zero(g.coords);
    });
    CupLengthResult out;
    out.exact = !r.capped;
    if (gens.empty()) return out;

    for (long L = 1; L <= r.max_degree; ++L) {
        std::vector<LevelScan> scans(gens.size());
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (long i0 = 0; i0 < (long)gens.size(); ++i0) scans[i0] = scan_first(r, gens, L, i0);
        } else {
            for (long i0 = 0; i0 < (long)gens.size(); ++i0) scans[i0] = scan_first(r, gens, L, i0);
        }
        const std::vector<long>* first_hit = nullptr;
        for (const auto& s : scans)
            if (s.found) {
                first_hit = &*s.found;
                break;
            }
        if (!first_hit) break;  // every longer product has a vanishing prefix
        out.value = L;
        out.witness.clear();
        for (long i : *first_hit) out.witness.push_back(gens[i]);
    }
    return out;
}

}  // namespace

CupLengthResult cup_length(const GradedRing& r, const std::vector<DegClass>* gens) {
    return cup_length_impl(r, gens, true);
}
CupLengthResult cup_length_serial(const GradedRing& r, const std::vector<DegClass>* gens) {
    return cup_length_impl(r, gens, false);
}

Vec relative_cup(const Complex& abs_cx, const std::vector<RelClass>& factors,
                 const cat::Subcategory& union_u, const Complex& union_cx,
                 const fact::Pairing& p) {
    std::vector<cat::Subcategory> pieces;
    for (const auto& f : factors) {
        if (!f.piece->subset_of(union_u))
            throw Error("NotGeometricCover", "piece not contained in the union");
        pieces.push_back(*f.piece);
    }
    if (!secat::is_geometric_cover(pieces, union_u))
        throw Error("NotGeometricCover", "pieces do not cover their union");

    auto embed = [&](const Complex& rel, long n, const Vec& v) {
        Vec out(abs_cx.groups[n].n);
        for (long i = 0; n <= rel.top() && i < (long)rel.chains[n].size(); ++i) {
            const Chain& ch = rel.chains[n][i];
            long j = abs_cx.find_chain(n, ch.mors, ch.composite);
            if (j < 0) throw Error("NotChainCompatible", "relative chain missing from absolute basis");
            long sz = rel.sys->at(ch.composite).n;
            for (long g = 0; g < sz; ++g) out[abs_cx.offsets[n][j] + g] = v[rel.offsets[n][i] + g];
        }
        return out;
    };

    long d0 = factors[0].degree;
    Vec cur = embed(*factors[0].cx,
                    d0, coh::cohomology_at(*factors[0].cx, d0).lift().apply(factors[0].coords));
    long deg = d0;
    for (size_t i = 1; i < factors.size(); ++i) {
        long di = factors[i].degree;
        Vec fi = embed(*factors[i].cx, di,
                       coh::cohomology_at(*factors[i].cx, di).lift().apply(factors[i].coords));
        cur = cup_cochain(abs_cx, deg, cur, abs_cx, di, fi, abs_cx, p);
        deg += di;
    }

    // the product vanishes on every chain inside the union (that is the point
    // of the geometric-cover hypothesis); transport it to the relative basis
    // the union-relative nerve may already be exhausted below deg; every
    // absolute chain then lies inside the union and the product must vanish
    Vec out(deg <= union_cx.top() ? union_cx.groups[deg].n : 0);
    std::vector<char> seen(abs_cx.chains[deg].size(), 0);
    for (long i = 0; deg <= union_cx.top() && i < (long)union_cx.chains[deg].size(); ++i) {
        const Chain& ch = union_cx.chains[deg][i];
        long j = abs_cx.find_chain(deg, ch.mors, ch.composite);
        if (j < 0) throw Error("NotChainCompatible", "relative chain missing from absolute basis");
        seen[j] = 1;
        long sz = union_cx.sys->at(ch.composite).n;
        for (long g = 0; g < sz; ++g) out[union_cx.offsets[deg][i] + g] = cur[abs_cx.offsets[deg][j] + g];
    }
    for (long j = 0; j < (long)abs_cx.chains[deg].size(); ++j) {
        if (seen[j]) continue;
        const Chain& ch = abs_cx.chains[deg][j];
        long sz = abs_cx.sys->at(ch.composite).n;
        Vec blk(sz);
        for (long g = 0; g < sz; ++g) blk[g] = cur[abs_cx.offsets[deg][j] + g];
        if (!abs_cx.sys->at(ch.composite).element_is_zero(blk))
            throw Error("NotChainCompatible",
                        "relative product does not vanish inside the union");
    }
    return coh::cohomology_at(union_cx, deg).reduce(out);
}

}  // namespace bw::cup
