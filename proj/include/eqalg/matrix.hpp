#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eqalg/base.hpp"

namespace eqa {

using Vec = std::vector<Scalar>;

// Dense row-major matrix of exact scalars.  Arithmetic takes the Base
// explicitly since the same storage serves Z and finite fields.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Scalar& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<long>>& r);
    static Matrix from_cols(std::size_t rows, const std::vector<Vec>& cols);

    Vec col(std::size_t j) const;
    Vec row(std::size_t i) const;
    void set_col(std::size_t j, const Vec& v);
    bool is_zero() const;
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
};

Matrix mul(const Base& B, const Matrix& X, const Matrix& Y);
Vec mul(const Base& B, const Matrix& X, const Vec& v);
Matrix add(const Base& B, const Matrix& X, const Matrix& Y);
Matrix sub(const Base& B, const Matrix& X, const Matrix& Y);
Matrix scale(const Base& B, const Scalar& c, const Matrix& X);
Matrix power(const Base& B, const Matrix& X, std::size_t e);
Matrix transpose(const Matrix& X);
Matrix hstack(const Matrix& X, const Matrix& Y);
Matrix vstack(const Matrix& X, const Matrix& Y);
Matrix block_diag(const std::vector<Matrix>& blocks);
Matrix kron(const Base& B, const Matrix& X, const Matrix& Y);
Matrix submatrix(const Matrix& X, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);
Matrix reduce(const Base& B, Matrix X);

Vec vadd(const Base& B, const Vec& x, const Vec& y);
Vec vsub(const Base& B, const Vec& x, const Vec& y);
Vec vscale(const Base& B, const Scalar& c, const Vec& x);
bool vzero(const Vec& x);
Vec unit_vec(std::size_t n, std::size_t i);

std::string to_string(const Vec& v);
std::string to_string(const Matrix& M);

}  // namespace eqa
