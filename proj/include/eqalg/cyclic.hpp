#pragma once

#include <string>
#include <vector>

#include "eqalg/based_ring.hpp"

namespace eqa {

// C_{p^n}; subgroups C_{p^s} for 0 <= s <= n form a chain.
struct CyclicGroup {
    int p = 2;
    int n = 0;

    CyclicGroup() = default;
    CyclicGroup(int p_, int n_);

    long order() const { return ipow(n); }
    long ipow(int e) const;
    // "C4", "e"
    std::string subgroup_name(int s) const;
    // "C4/C2", "C4/e"
    std::string orbit_name(int s) const;
    bool operator==(const CyclicGroup& o) const { return p == o.p && n == o.n; }
    bool operator!=(const CyclicGroup& o) const { return !(*this == o); }
};

// multiplicities a_s of orbits C_{p^n}/C_{p^s}
struct FiniteGSet {
    CyclicGroup G;
    std::vector<Scalar> mult;

    static FiniteGSet orbit(const CyclicGroup& G, int s);
    static FiniteGSet empty(const CyclicGroup& G);
    FiniteGSet operator+(const FiniteGSet& o) const;
    Scalar cardinality() const;
    bool operator==(const FiniteGSet& o) const { return G == o.G && mult == o.mult; }
};

// integer combination of orbit classes, coefficients indexed by s
struct BurnsideElement {
    CyclicGroup G;
    Vec coeffs;
};

FiniteGSet orbit_product(const CyclicGroup& G, int i, int j);
FiniteGSet restrict_gset(const FiniteGSet& X, int m);
FiniteGSet induce_gset(const FiniteGSet& X, int n);
Vec marks(const FiniteGSet& X);
Vec marks(const BurnsideElement& x);
// column t = marks of C_{p^n}/C_{p^t}
Matrix marks_matrix(const CyclicGroup& G);

// generator names of A(C_{p^n}) by level: x, y, z top-down for n <= 3,
// x1..xn beyond; the point orbit is "1"
std::vector<std::string> burnside_labels(const CyclicGroup& G);
BasedRing burnside_ring(const CyclicGroup& G);
BurnsideElement burnside_product(const BurnsideElement& a, const BurnsideElement& b);

struct BurnsideQuotient {
    BasedRing ring;
    std::string presentation;
    Matrix proj;  // quotient rank x (n+1)
    std::vector<std::size_t> kept;
};

// A / (ideal generated by ideal_gens); throws std::domain_error when the
// quotient has torsion
BurnsideQuotient burnside_quotient(const BasedRing& A, const std::vector<BurnsideElement>& ideal_gens);

// "Z[x,y]/(x^2-2x,...)" for a ring over Z whose basis contains the unit
// labelled "1"
std::string render_presentation(const BasedRing& R);

}  // namespace eqa
