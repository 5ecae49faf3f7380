#include "eqalg/linalg.hpp"

#include <cstdint>
#include <stdexcept>

namespace eqa {

namespace {

Scalar absval(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

struct SnfState {
    Matrix D, U, Uinv, V;

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < D.cols; ++j) std::swap(D(a, j), D(b, j));
        for (std::size_t j = 0; j < U.cols; ++j) std::swap(U(a, j), U(b, j));
        for (std::size_t i = 0; i < Uinv.rows; ++i) std::swap(Uinv(i, a), Uinv(i, b));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < D.rows; ++i) std::swap(D(i, a), D(i, b));
        for (std::size_t i = 0; i < V.rows; ++i) std::swap(V(i, a), V(i, b));
    }
    // row_i -= q * row_t
    void row_axpy(std::size_t i, std::size_t t, const Scalar& q)
    {
        if (q == 0) return;
        for (std::size_t j = 0; j < D.cols; ++j) D(i, j) -= q * D(t, j);
        for (std::size_t j = 0; j < U.cols; ++j) U(i, j) -= q * U(t, j);
        for (std::size_t r = 0; r < Uinv.rows; ++r) Uinv(r, t) += q * Uinv(r, i);
    }
    // col_j -= q * col_t
    void col_axpy(std::size_t j, std::size_t t, const Scalar& q)
    {
        if (q == 0) return;
        for (std::size_t i = 0; i < D.rows; ++i) D(i, j) -= q * D(i, t);
        for (std::size_t i = 0; i < V.rows; ++i) V(i, j) -= q * V(i, t);
    }
    void negate_row(std::size_t t)
    {
        for (std::size_t j = 0; j < D.cols; ++j) D(t, j) = -D(t, j);
        for (std::size_t j = 0; j < U.cols; ++j) U(t, j) = -U(t, j);
        for (std::size_t r = 0; r < Uinv.rows; ++r) Uinv(r, t) = -Uinv(r, t);
    }
};

}  // namespace

SmithForm smith_normal_form(const Matrix& A)
{
    SnfState s{A, Matrix::identity(A.rows), Matrix::identity(A.rows), Matrix::identity(A.cols)};
    const std::size_t m = A.rows, n = A.cols;
    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        // smallest |entry| in the trailing block, row-major tie-break
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (s.D(i, j) != 0 && (pi == m || absval(s.D(i, j)) < absval(s.D(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.D(i, t) == 0) continue;
                Scalar q;
                mpz_tdiv_q(q.get_mpz_t(), s.D(i, t).get_mpz_t(), s.D(t, t).get_mpz_t());
                s.row_axpy(i, t, q);
                if (s.D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.D(t, j) == 0) continue;
                Scalar q;
                mpz_tdiv_q(q.get_mpz_t(), s.D(t, j).get_mpz_t(), s.D(t, t).get_mpz_t());
                s.col_axpy(j, t, q);
                if (s.D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // move the smallest leftover in row/column t to the pivot
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (s.D(i, t) != 0 && absval(s.D(i, t)) < absval(s.D(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (s.D(t, j) != 0 && absval(s.D(t, j)) < absval(s.D(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                s.swap_rows(t, bi);
                s.swap_cols(t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s.D(i, j).get_mpz_t(), s.D(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            s.row_axpy(t, bad, Scalar(-1));
        }
        if (s.D(t, t) < 0) s.negate_row(t);
    }
    SmithForm f;
    f.rank = t;
    f.D = std::move(s.D);
    f.U = std::move(s.U);
    f.Uinv = std::move(s.Uinv);
    f.V = std::move(s.V);
    return f;
}

namespace {

// word-sized field arithmetic for the elimination loops
struct FieldOps {
    const Field* F = nullptr;
    std::uint64_t p = 0;
    bool prime = false;
    std::vector<std::uint32_t> inv_tab;

    explicit FieldOps(const Base& B) : F(&B.field()), p(static_cast<std::uint64_t>(B.field().p())), prime(B.field().k() == 1)
    {
        if (prime && p <= (1u << 16)) {
            inv_tab.assign(p, 0);
            for (std::uint64_t a = 1; a < p; ++a) inv_tab[a] = static_cast<std::uint32_t>(F->inv(a));
        }
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const
    {
        if (prime) {
            std::uint64_t r = a + b;
            return r >= p ? r - p : r;
        }
        return F->add(a, b);
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const
    {
        if (prime) return a >= b ? a - b : a + p - b;
        return F->sub(a, b);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return prime ? a * b % p : F->mul(a, b); }
    std::uint64_t inv(std::uint64_t a) const { return prime && !inv_tab.empty() ? inv_tab[a] : F->inv(a); }
};

struct WordMatrix {
    std::size_t rows, cols;
    std::vector<std::uint64_t> a;
    std::uint64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

WordMatrix to_words(const FieldOps& ops, const Matrix& A)
{
    WordMatrix W{A.rows, A.cols, std::vector<std::uint64_t>(A.a.size())};
    for (std::size_t i = 0; i < A.a.size(); ++i)
        W.a[i] = ops.prime ? mpz_fdiv_ui(A.a[i].get_mpz_t(), ops.p) : A.a[i].get_ui();
    return W;
}

}  // namespace

Echelon rref(const Base& B, Matrix A)
{
    if (!B.is_field()) throw std::logic_error("rref: base must be a field");
    FieldOps ops(B);
    WordMatrix W = to_words(ops, A);
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < W.cols && r < W.rows; ++c) {
        std::size_t piv = W.rows;
        for (std::size_t i = r; i < W.rows; ++i)
            if (W(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv == W.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < W.cols; ++j) std::swap(W(piv, j), W(r, j));
        std::uint64_t inv = ops.inv(W(r, c));
        std::vector<std::size_t> nz;
        for (std::size_t j = c; j < W.cols; ++j)
            if (W(r, j) != 0) {
                W(r, j) = ops.mul(inv, W(r, j));
                nz.push_back(j);
            }
        for (std::size_t i = 0; i < W.rows; ++i) {
            if (i == r || W(i, c) == 0) continue;
            std::uint64_t f = W(i, c);
            for (auto j : nz) W(i, j) = ops.sub(W(i, j), ops.mul(f, W(r, j)));
        }
        e.pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = 0; i < W.a.size(); ++i) A.a[i] = static_cast<unsigned long>(W.a[i]);
    e.R = std::move(A);
    return e;
}

std::size_t rank(const Base& B, const Matrix& A)
{
    if (B.is_field()) return rref(B, A).pivots.size();
    return smith_normal_form(A).rank;
}

Matrix kernel(const Base& B, const Matrix& A)
{
    if (!B.is_field()) {
        auto f = smith_normal_form(A);
        Matrix K(A.cols, A.cols - f.rank);
        for (std::size_t j = f.rank; j < A.cols; ++j)
            for (std::size_t i = 0; i < A.cols; ++i) K(i, j - f.rank) = f.V(i, j);
        return K;
    }
    auto e = rref(B, A);
    std::vector<bool> is_piv(A.cols, false);
    for (auto c : e.pivots) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < A.cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    Matrix K(A.cols, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        K(free[k], k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) K(e.pivots[r], k) = B.neg(e.R(r, free[k]));
    }
    return K;
}

Matrix image_basis(const Base& B, const Matrix& A)
{
    if (!B.is_field()) {
        auto f = smith_normal_form(A);
        Matrix I(A.rows, f.rank);
        for (std::size_t j = 0; j < f.rank; ++j)
            for (std::size_t i = 0; i < A.rows; ++i) I(i, j) = f.Uinv(i, j) * f.D(j, j);
        return I;
    }
    auto e = rref(B, A);
    return submatrix(A, [&] {
        std::vector<std::size_t> r(A.rows);
        for (std::size_t i = 0; i < A.rows; ++i) r[i] = i;
        return r;
    }(), e.pivots);
}

std::optional<Vec> solve(const Base& B, const Matrix& A, const Vec& b)
{
    if (b.size() != A.rows) throw std::invalid_argument("solve: rhs length mismatch");
    if (!B.is_field()) {
        auto f = smith_normal_form(A);
        Vec c(A.rows);
        for (std::size_t i = 0; i < A.rows; ++i)
            for (std::size_t k = 0; k < A.rows; ++k) c[i] += f.U(i, k) * b[k];
        Vec y(A.cols);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i < f.rank) {
                if (!mpz_divisible_p(c[i].get_mpz_t(), f.D(i, i).get_mpz_t())) return std::nullopt;
                y[i] = c[i] / f.D(i, i);
            } else if (c[i] != 0) {
                return std::nullopt;
            }
        }
        Vec x(A.cols);
        for (std::size_t i = 0; i < A.cols; ++i)
            for (std::size_t k = 0; k < A.cols; ++k) x[i] += f.V(i, k) * y[k];
        return x;
    }
    Matrix aug = hstack(A, Matrix::from_cols(A.rows, {b}));
    auto e = rref(B, aug);
    Vec x(A.cols);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == A.cols) return std::nullopt;
        x[e.pivots[r]] = e.R(r, A.cols);
    }
    return x;
}

std::optional<Matrix> solve(const Base& B, const Matrix& A, const Matrix& Bm)
{
    if (Bm.rows != A.rows) throw std::invalid_argument("solve: rhs rows mismatch");
    Matrix X(A.cols, Bm.cols);
    if (!B.is_field()) {
        auto f = smith_normal_form(A);
        Matrix C = mul(B, f.U, Bm);
        Matrix Y(A.cols, Bm.cols);
        for (std::size_t j = 0; j < Bm.cols; ++j)
            for (std::size_t i = 0; i < A.rows; ++i) {
                if (i < f.rank) {
                    if (!mpz_divisible_p(C(i, j).get_mpz_t(), f.D(i, i).get_mpz_t())) return std::nullopt;
                    Y(i, j) = C(i, j) / f.D(i, i);
                } else if (C(i, j) != 0) {
                    return std::nullopt;
                }
            }
        return mul(B, f.V, Y);
    }
    auto e = rref(B, hstack(A, Bm));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= A.cols) return std::nullopt;
        for (std::size_t j = 0; j < Bm.cols; ++j) X(e.pivots[r], j) = e.R(r, A.cols + j);
    }
    return X;
}

Scalar det(const Base& B, const Matrix& A)
{
    if (A.rows != A.cols) throw std::invalid_argument("det: non-square matrix");
    const std::size_t n = A.rows;
    if (n == 0) return 1;
    Matrix M = A;
    if (!B.is_field()) {
        // Bareiss fraction-free elimination
        Scalar prev = 1, sign = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (M(k, k) == 0) {
                std::size_t r = k + 1;
                while (r < n && M(r, k) == 0) ++r;
                if (r == n) return 0;
                for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(r, j));
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j) {
                    Scalar v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                    M(i, j) = v;
                }
            prev = M(k, k);
        }
        return sign * M(n - 1, n - 1);
    }
    FieldOps ops(B);
    WordMatrix W = to_words(ops, M);
    std::uint64_t d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (W(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(W(piv, j), W(c, j));
            d = ops.sub(0, d);
        }
        d = ops.mul(d, W(c, c));
        std::uint64_t inv = ops.inv(W(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (W(i, c) == 0) continue;
            std::uint64_t f = ops.mul(W(i, c), inv);
            for (std::size_t j = c; j < n; ++j) W(i, j) = ops.sub(W(i, j), ops.mul(f, W(c, j)));
        }
    }
    return Scalar(static_cast<unsigned long>(d));
}

std::optional<Matrix> inverse(const Base& B, const Matrix& A)
{
    if (A.rows != A.cols) return std::nullopt;
    if (!B.is_field()) {
        auto f = smith_normal_form(A);
        if (f.rank != A.rows) return std::nullopt;
        for (std::size_t i = 0; i < A.rows; ++i)
            if (f.D(i, i) != 1) return std::nullopt;
        return mul(B, f.V, f.U);
    }
    if (rank(B, A) != A.rows) return std::nullopt;
    return solve(B, A, Matrix::identity(A.rows));
}

std::vector<std::size_t> complement_indices(const Base& B, const Matrix& W)
{
    auto e = rref(B, hstack(W, Matrix::identity(W.rows)));
    std::vector<std::size_t> idx;
    for (auto c : e.pivots)
        if (c >= W.cols) idx.push_back(c - W.cols);
    return idx;
}

}  // namespace eqa
