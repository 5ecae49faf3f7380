#pragma once

#include <optional>
#include <vector>

#include "eqalg/matrix.hpp"

namespace eqa {

// U*A*V = D, D diagonal with d_i | d_{i+1}, U and V unimodular.  Uinv is
// tracked alongside since quotient presentations need it.
struct SmithForm {
    Matrix U, D, V, Uinv;
    std::size_t rank = 0;
    Scalar d(std::size_t i) const { return i < D.rows && i < D.cols ? D(i, i) : Scalar(0); }
};

SmithForm smith_normal_form(const Matrix& A);

struct Echelon {
    Matrix R;
    std::vector<std::size_t> pivots;
};

// reduced row echelon form over a field
Echelon rref(const Base& B, Matrix A);

// rank over the field, or over Q for Z
std::size_t rank(const Base& B, const Matrix& A);

// columns form a basis of the null space; over Z a basis of the (saturated)
// integer kernel lattice
Matrix kernel(const Base& B, const Matrix& A);

// columns form a basis of the column space (over Z a lattice basis)
Matrix image_basis(const Base& B, const Matrix& A);

// some solution of A x = b (integral over Z), or nothing
std::optional<Vec> solve(const Base& B, const Matrix& A, const Vec& b);
std::optional<Matrix> solve(const Base& B, const Matrix& A, const Matrix& Bm);

Scalar det(const Base& B, const Matrix& A);

// inverse over the field; over Z only for unimodular input
std::optional<Matrix> inverse(const Base& B, const Matrix& A);

// a complement to the column span of W inside B^n made of standard basis
// vectors (field only); returns the chosen indices
std::vector<std::size_t> complement_indices(const Base& B, const Matrix& W);

}  // namespace eqa
