#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqalg/linalg.hpp"

namespace eqa {

// Finitely presented module over Z or a field, kept in diagonal form:
// generator i has order tors[i] (0 = free, d > 1 = Z/d).  Over a field every
// generator is free and the module is a plain vector space.
struct FPModule {
    Base base;
    std::vector<Scalar> tors;

    FPModule() = default;
    FPModule(Base b, std::size_t n) : base(std::move(b)), tors(n, 0) {}
    static FPModule free(const Base& b, std::size_t n) { return FPModule(b, n); }

    std::size_t size() const { return tors.size(); }
    bool is_free() const;
    bool is_zero() const { return tors.empty(); }
    std::size_t free_rank() const;

    // canonical representative of an element / of each column of a map into
    // this module
    Vec reduce(Vec v) const;
    Matrix reduce_cols(Matrix f) const;
    bool equal(const Vec& a, const Vec& b) const;
    bool maps_equal(const Matrix& f, const Matrix& g) const;
    // gens x (#torsion generators), the diagonal relation columns
    Matrix relations() const;
    // invariant factors ≠ 1 sorted, with free rank as zeros at the end
    std::vector<Scalar> invariants() const;
    std::string describe() const;
    bool operator==(const FPModule& o) const { return base == o.base && tors == o.tors; }
};

// map f : M -> N respects relations
bool map_well_defined(const FPModule& M, const FPModule& N, const Matrix& f);

struct SubModule {
    FPModule S;
    Matrix incl;  // N.size x S.size
};

struct QuotientModule {
    FPModule Q;
    Matrix proj;  // Q.size x N.size
    Matrix lift;  // N.size x Q.size, proj * lift = id
};

// presentation <gens | rel columns> brought into diagonal form; new generator
// i corresponds to column i of `lift` in the old coordinates
QuotientModule present(const Base& B, std::size_t gens, const Matrix& rel);

QuotientModule cokernel(const FPModule& N, const Matrix& f);
SubModule image(const FPModule& N, const Matrix& f);
SubModule kernel(const FPModule& M, const FPModule& N, const Matrix& f);
// coordinates of v in the submodule, or nothing if v is not in it
std::optional<Vec> coords_in(const FPModule& N, const SubModule& S, const Vec& v);
// map g with incl_T * g = h * incl_S, if h(S) ⊂ T
std::optional<Matrix> restrict_map(const FPModule& N2, const SubModule& S, const SubModule& T, const Matrix& h);

FPModule direct_sum(const std::vector<FPModule>& ms);

struct Subquotient {
    SubModule sub;
    QuotientModule quo;
};

// span columns must live in M
Subquotient module_subquotient(const FPModule& M, const Matrix& span);

}  // namespace eqa
