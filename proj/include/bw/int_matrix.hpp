#ifndef BW_INT_MATRIX_HPP
#define BW_INT_MATRIX_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bw::lin {

using Int = mpz_class;
using Vec = std::vector<Int>;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(long n) {
        IntMatrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix zero(long r, long c) { return IntMatrix(r, c); }
    static IntMatrix from_rows(const std::vector<Vec>& rows) {
        long r = (long)rows.size();
        long c = r ? (long)rows[0].size() : 0;
        IntMatrix m(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        return m;
    }
    static IntMatrix column(const Vec& v) {
        IntMatrix m((long)v.size(), 1);
        for (long i = 0; i < (long)v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Int& at(long i, long j) { return e_[i * cols_ + j]; }
    const Int& at(long i, long j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

    Vec col(long j) const {
        Vec v(rows_);
        for (long i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    IntMatrix mul(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::logic_error("IntMatrix::mul shape mismatch");
        IntMatrix r(rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (long j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    Vec apply(const Vec& v) const {
        if ((long)v.size() != cols_) throw std::logic_error("IntMatrix::apply shape mismatch");
        Vec r(rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    /// Horizontal concatenation [this | o].
    IntMatrix hstack(const IntMatrix& o) const {
        if (rows_ != o.rows_ && cols_ != 0 && o.cols_ != 0)
            throw std::logic_error("IntMatrix::hstack shape mismatch");
        long r = std::max(rows_, o.rows_);
        IntMatrix m(r, cols_ + o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (long i = 0; i < o.rows_; ++i)
            for (long j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
        return m;
    }

    IntMatrix submatrix_cols(long from, long to) const {
        IntMatrix m(rows_, to - from);
        for (long i = 0; i < rows_; ++i)
            for (long j = from; j < to; ++j) m.at(i, j - from) = at(i, j);
        return m;
    }

    IntMatrix negated() const {
        IntMatrix m = *this;
        for (auto& x : m.e_) x = -x;
        return m;
    }

    std::string str() const {
        std::string s = "[";
        for (long i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (long j = 0; j < cols_; ++j) s += (j ? "," : "") + at(i, j).get_str();
        }
        return s + "]";
    }

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

/// U*m*V = S with U, V unimodular, S diagonal, d1 | d2 | ..., di >= 0.
/// Uinv and Vinv are the tracked inverses (handy for lattice solves).
struct SmithResult {
    IntMatrix U, Uinv, S, V, Vinv;
    long rank = 0;
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Integer lattice (column span) queries against a fixed matrix.
class LatticeSolver {
public:
    explicit LatticeSolver(const IntMatrix& a);

    /// Some v with A v = x, if one exists.
    std::optional<Vec> solve(const Vec& x) const;
    bool contains(const Vec& x) const { return solve(x).has_value(); }
    /// True when every column of m lies in the lattice.
    bool contains_all(const IntMatrix& m) const;

    /// Generators of { v : A v = 0 }.
    IntMatrix kernel() const;

    const IntMatrix& matrix() const { return a_; }

private:
    IntMatrix a_;
    SmithResult s_;
};

inline IntMatrix kernel(const IntMatrix& a) { return LatticeSolver(a).kernel(); }

}  // namespace bw::lin

#endif
