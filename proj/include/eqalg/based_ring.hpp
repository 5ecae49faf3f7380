#pragma once

#include <string>
#include <vector>

#include "eqalg/module.hpp"
#include "eqalg/report.hpp"

namespace eqa {

// Finite-rank ring given by a basis and structure constants:
// e_a * e_b = sum_c mult(c, a*rank + b) e_c.
struct BasedRing {
    FPModule group;  // additive group; free over a field
    Matrix mult;
    Vec unit;
    std::vector<std::string> labels;

    const Base& base() const { return group.base; }
    std::size_t rank() const { return group.size(); }

    Vec product(const Vec& x, const Vec& y) const;
    Vec basis_product(std::size_t a, std::size_t b) const;
    // matrix of y -> x*y and of y -> y*x
    Matrix left_mult(const Vec& x) const;
    Matrix right_mult(const Vec& x) const;
    bool is_commutative() const;
};

BasedRing make_based_ring(const FPModule& group, Matrix mult, Vec unit, std::vector<std::string> labels = {});

// associativity, unit, and (optionally) commutativity on basis tuples;
// first violation reported with indices
Report based_ring_check(const BasedRing& R, bool require_commutative = true);

// the zero ring over B
BasedRing zero_ring(const Base& B);
// B itself as a rank-one ring
BasedRing scalar_ring(const Base& B);
// GF(p^k) as a ring over its prime field, power basis 1, x, ..., x^{k-1}
BasedRing field_ring(const Field& F);
// matrix of x -> x^p on field_ring(F)
Matrix frobenius_matrix(const Field& F);

// linear map is unital and multiplicative on basis pairs
bool is_ring_hom(const BasedRing& S, const BasedRing& T, const Matrix& f);

// commutative ring over a finite field that is a field; structural test via
// the q-power Frobenius (reduced and exactly one primitive idempotent)
bool is_field_ring(const BasedRing& R);

// matrix of x -> x^q for q = |base| (base-linear when R is commutative)
Matrix q_frobenius(const BasedRing& R);

// "F4", "Z", "F2[t]/(t^2)"-style short name when recognizable, else "R<rank>"
std::string ring_name(const BasedRing& R);

}  // namespace eqa
