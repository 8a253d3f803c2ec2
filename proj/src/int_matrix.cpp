#include "bw/int_matrix.hpp"

#include <cstdlib>

namespace bw::lin {

namespace {

// Elementary operations keeping U*orig*V = S and the tracked inverses in sync.
struct Worker {
    IntMatrix S, U, Uinv, V, Vinv;

    explicit Worker(const IntMatrix& m)
        : S(m),
          U(IntMatrix::identity(m.rows())),
          Uinv(IntMatrix::identity(m.rows())),
          V(IntMatrix::identity(m.cols())),
          Vinv(IntMatrix::identity(m.cols())) {}

    void swap_rows(long a, long b) {
        if (a == b) return;
        for (long j = 0; j < S.cols(); ++j) std::swap(S.at(a, j), S.at(b, j));
        for (long j = 0; j < U.cols(); ++j) std::swap(U.at(a, j), U.at(b, j));
        for (long i = 0; i < Uinv.rows(); ++i) std::swap(Uinv.at(i, a), Uinv.at(i, b));
    }
    void swap_cols(long a, long b) {
        if (a == b) return;
        for (long i = 0; i < S.rows(); ++i) std::swap(S.at(i, a), S.at(i, b));
        for (long i = 0; i < V.rows(); ++i) std::swap(V.at(i, a), V.at(i, b));
        for (long j = 0; j < Vinv.cols(); ++j) std::swap(Vinv.at(a, j), Vinv.at(b, j));
    }
    // row[i] -= q * row[t]
    void row_sub(long i, long t, const Int& q) {
        if (q == 0) return;
        for (long j = 0; j < S.cols(); ++j) S.at(i, j) -= q * S.at(t, j);
        for (long j = 0; j < U.cols(); ++j) U.at(i, j) -= q * U.at(t, j);
        for (long r = 0; r < Uinv.rows(); ++r) Uinv.at(r, t) += q * Uinv.at(r, i);
    }
    // col[j] -= q * col[t]
    void col_sub(long j, long t, const Int& q) {
        if (q == 0) return;
        for (long i = 0; i < S.rows(); ++i) S.at(i, j) -= q * S.at(i, t);
        for (long i = 0; i < V.rows(); ++i) V.at(i, j) -= q * V.at(i, t);
        for (long c = 0; c < Vinv.cols(); ++c) Vinv.at(t, c) += q * Vinv.at(j, c);
    }
    void negate_row(long t) {
        for (long j = 0; j < S.cols(); ++j) S.at(t, j) = -S.at(t, j);
        for (long j = 0; j < U.cols(); ++j) U.at(t, j) = -U.at(t, j);
        for (long i = 0; i < Uinv.rows(); ++i) Uinv.at(i, t) = -Uinv.at(i, t);
    }
    // row[t] += row[i]
    void row_add(long t, long i) {
        for (long j = 0; j < S.cols(); ++j) S.at(t, j) += S.at(i, j);
        for (long j = 0; j < U.cols(); ++j) U.at(t, j) += U.at(i, j);
        for (long r = 0; r < Uinv.rows(); ++r) Uinv.at(r, i) -= Uinv.at(r, t);
    }
};

Int round_div(const Int& a, const Int& b) {
    // nearest-integer quotient, keeps remainders small
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > abs(b)) q += 1;
    return q;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    Worker w(m);
    long n = std::min(m.rows(), m.cols());
    long t = 0;
    while (t < n) {
        bool dirty = true;
        bool empty = false;
        while (dirty) {
            dirty = false;
            // re-pick the smallest nonzero absolute value in the trailing
            // block every pass; this keeps intermediate entries small
            long pi = -1, pj = -1;
            Int best;
            for (long i = t; i < m.rows(); ++i)
                for (long j = t; j < m.cols(); ++j) {
                    const Int& x = w.S.at(i, j);
                    if (x == 0) continue;
                    Int a = abs(x);
                    if (pi < 0 || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) {
                empty = true;
                break;
            }
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            for (long i = t + 1; i < m.rows(); ++i) {
                if (w.S.at(i, t) == 0) continue;
                Int q = round_div(w.S.at(i, t), w.S.at(t, t));
                w.row_sub(i, t, q);
                if (w.S.at(i, t) != 0) dirty = true;  // remainder is a smaller pivot
            }
            for (long j = t + 1; j < m.cols(); ++j) {
                if (w.S.at(t, j) == 0) continue;
                Int q = round_div(w.S.at(t, j), w.S.at(t, t));
                w.col_sub(j, t, q);
                if (w.S.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // divisibility fix-up
            for (long i = t + 1; i < m.rows() && !dirty; ++i)
                for (long j = t + 1; j < m.cols() && !dirty; ++j)
                    if (w.S.at(i, j) % w.S.at(t, t) != 0) {
                        w.row_add(t, i);
                        dirty = true;
                    }
        }
        if (empty) break;
        if (w.S.at(t, t) < 0) w.negate_row(t);
        ++t;
    }
    SmithResult r;
    r.rank = t;
    r.U = std::move(w.U);
    r.Uinv = std::move(w.Uinv);
    r.S = std::move(w.S);
    r.V = std::move(w.V);
    r.Vinv = std::move(w.Vinv);
    return r;
}

LatticeSolver::LatticeSolver(const IntMatrix& a) : a_(a), s_(smith_normal_form(a)) {}

std::optional<Vec> LatticeSolver::solve(const Vec& x) const {
    if ((long)x.size() != a_.rows()) throw std::logic_error("LatticeSolver::solve size mismatch");
    Vec y = s_.U.apply(x);
    Vec t(a_.cols());
    for (long i = 0; i < a_.rows(); ++i) {
        if (i < s_.rank) {
            const Int& d = s_.S.at(i, i);
            if (y[i] % d != 0) return std::nullopt;
            if (i < a_.cols()) t[i] = y[i] / d;
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s_.V.apply(t);
}

bool LatticeSolver::contains_all(const IntMatrix& m) const {
    for (long j = 0; j < m.cols(); ++j)
        if (!contains(m.col(j))) return false;
    return true;
}

IntMatrix LatticeSolver::kernel() const {
    return s_.V.submatrix_cols(s_.rank, a_.cols());
}

}  // namespace bw::lin
