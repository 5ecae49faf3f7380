#include "eqalg/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace eqa {

Matrix Matrix::identity(std::size_t n)
{
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& r)
{
    Matrix M(r.size(), r.empty() ? 0 : r[0].size());
    for (std::size_t i = 0; i < M.rows; ++i) {
        if (r[i].size() != M.cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < M.cols; ++j) M(i, j) = r[i][j];
    }
    return M;
}

Matrix Matrix::from_cols(std::size_t rows, const std::vector<Vec>& cols)
{
    Matrix M(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) M.set_col(j, cols[j]);
    return M;
}

Vec Matrix::col(std::size_t j) const
{
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

void Matrix::set_col(std::size_t j, const Vec& v)
{
    if (v.size() != rows) throw std::invalid_argument("Matrix::set_col: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const
{
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Matrix mul(const Base& B, const Matrix& X, const Matrix& Y)
{
    if (X.cols != Y.rows)
        throw std::invalid_argument("mul: shape mismatch " + std::to_string(X.rows) + "x" + std::to_string(X.cols) +
                                    " * " + std::to_string(Y.rows) + "x" + std::to_string(Y.cols));
    Matrix Z(X.rows, Y.cols);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t k = 0; k < X.cols; ++k) {
            const Scalar& x = X(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < Y.cols; ++j) {
                const Scalar& y = Y(k, j);
                if (y != 0) B.fma(Z(i, j), x, y);
            }
        }
    for (auto& z : Z.a) B.normalize(z);
    return Z;
}

Vec mul(const Base& B, const Matrix& X, const Vec& v)
{
    if (X.cols != v.size()) throw std::invalid_argument("mul: vector length mismatch");
    Vec r(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) {
        for (std::size_t k = 0; k < X.cols; ++k)
            if (X(i, k) != 0 && v[k] != 0) B.fma(r[i], X(i, k), v[k]);
        B.normalize(r[i]);
    }
    return r;
}

Matrix add(const Base& B, const Matrix& X, const Matrix& Y)
{
    if (X.rows != Y.rows || X.cols != Y.cols) throw std::invalid_argument("add: shape mismatch");
    Matrix Z(X.rows, X.cols);
    for (std::size_t i = 0; i < Z.a.size(); ++i) Z.a[i] = B.add(X.a[i], Y.a[i]);
    return Z;
}

Matrix sub(const Base& B, const Matrix& X, const Matrix& Y)
{
    if (X.rows != Y.rows || X.cols != Y.cols) throw std::invalid_argument("sub: shape mismatch");
    Matrix Z(X.rows, X.cols);
    for (std::size_t i = 0; i < Z.a.size(); ++i) Z.a[i] = B.sub(X.a[i], Y.a[i]);
    return Z;
}

Matrix scale(const Base& B, const Scalar& c, const Matrix& X)
{
    Matrix Z = X;
    for (auto& z : Z.a) z = B.mul(c, z);
    return Z;
}

Matrix power(const Base& B, const Matrix& X, std::size_t e)
{
    if (X.rows != X.cols) throw std::invalid_argument("power: non-square matrix");
    Matrix R = Matrix::identity(X.rows), P = X;
    while (e) {
        if (e & 1) R = mul(B, R, P);
        e >>= 1;
        if (e) P = mul(B, P, P);
    }
    return R;
}

Matrix transpose(const Matrix& X)
{
    Matrix T(X.cols, X.rows);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) T(j, i) = X(i, j);
    return T;
}

Matrix hstack(const Matrix& X, const Matrix& Y)
{
    if (X.rows != Y.rows) throw std::invalid_argument("hstack: row mismatch");
    Matrix Z(X.rows, X.cols + Y.cols);
    for (std::size_t i = 0; i < X.rows; ++i) {
        for (std::size_t j = 0; j < X.cols; ++j) Z(i, j) = X(i, j);
        for (std::size_t j = 0; j < Y.cols; ++j) Z(i, X.cols + j) = Y(i, j);
    }
    return Z;
}

Matrix vstack(const Matrix& X, const Matrix& Y)
{
    if (X.cols != Y.cols) throw std::invalid_argument("vstack: column mismatch");
    Matrix Z(X.rows + Y.rows, X.cols);
    std::copy(X.a.begin(), X.a.end(), Z.a.begin());
    std::copy(Y.a.begin(), Y.a.end(), Z.a.begin() + X.a.size());
    return Z;
}

Matrix block_diag(const std::vector<Matrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows;
        c += b.cols;
    }
    Matrix Z(r, c);
    std::size_t i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows; ++i)
            for (std::size_t j = 0; j < b.cols; ++j) Z(i0 + i, j0 + j) = b(i, j);
        i0 += b.rows;
        j0 += b.cols;
    }
    return Z;
}

Matrix kron(const Base& B, const Matrix& X, const Matrix& Y)
{
    Matrix Z(X.rows * Y.rows, X.cols * Y.cols);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) {
            if (X(i, j) == 0) continue;
            for (std::size_t k = 0; k < Y.rows; ++k)
                for (std::size_t l = 0; l < Y.cols; ++l) Z(i * Y.rows + k, j * Y.cols + l) = B.mul(X(i, j), Y(k, l));
        }
    return Z;
}

Matrix submatrix(const Matrix& X, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    Matrix Z(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) Z(i, j) = X(rows[i], cols[j]);
    return Z;
}

Matrix reduce(const Base& B, Matrix X)
{
    // packed extension-field entries are already canonical when in [0, q)
    const bool packed = B.kind() == Base::Kind::Extension;
    for (auto& x : X.a)
        if (!packed || x < 0 || x >= static_cast<unsigned long>(B.size())) x = B.from_int(x);
    return X;
}

Vec vadd(const Base& B, const Vec& x, const Vec& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("vadd: length mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = B.add(x[i], y[i]);
    return r;
}

Vec vsub(const Base& B, const Vec& x, const Vec& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("vsub: length mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = B.sub(x[i], y[i]);
    return r;
}

Vec vscale(const Base& B, const Scalar& c, const Vec& x)
{
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = B.mul(c, x[i]);
    return r;
}

bool vzero(const Vec& x)
{
    for (const auto& v : x)
        if (v != 0) return false;
    return true;
}

Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n);
    v.at(i) = 1;
    return v;
}

std::string to_string(const Vec& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

std::string to_string(const Matrix& M)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < M.rows; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < M.cols; ++j) os << (j ? " " : "") << M(i, j).get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace eqa
