#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqalg/green.hpp"

namespace eqa {

// to C_{p^m}; the generator of C_{p^m} is g^{p^{n-m}}
MackeyFunctor restrict_mackey(const MackeyFunctor& M, int m);
GreenFunctor restrict_green(const GreenFunctor& R, int m);

// Ind from C_{p^m} to C_{p^n}.  Level s holds copies of M_{min(s,m)}
// indexed by coset representatives g^0, g^1, ...; g moves copy c to c+1 and
// applies the inner generator on wraparound.
MackeyFunctor induce_mackey(const MackeyFunctor& M, int n);
// number of copies at level s of Ind from level m
long induce_copies(const CyclicGroup& G, int m, int s);

// F_i = Ind_i Res_i R with its R-module structure
GreenModule free_module(const GreenFunctor& R, int i);
// morphism F_i -> X sending the unit of copy 0 at level i to x
MackeyMorphism yoneda_map(const GreenModule& Fi, int i, const GreenModule& X, const Vec& x);
// direct sum of free modules F_{idx[0]} + F_{idx[1]} + ...
GreenModule free_sum(const GreenFunctor& R, const std::vector<int>& idx);
GreenModule module_direct_sum(const std::vector<GreenModule>& parts);

MackeyFunctor tau_geq_1(const MackeyFunctor& M);
GreenFunctor tau_green(const GreenFunctor& R);
GreenModule tau_module(const GreenModule& X);

MackeyFunctor brutal_truncation(const MackeyFunctor& M);
GreenFunctor brutal_truncation_green(const GreenFunctor& R);

struct GreenQuotient {
    GreenFunctor R;
    std::vector<Matrix> proj, lift;
};
// quotient by an ideal given as spanning columns per level
GreenQuotient quotient_green(const GreenFunctor& R, const std::vector<Matrix>& ideal);

MackeyFunctor geometric_fixed_points(const MackeyFunctor& M);
// tau R modulo the ideal generated by the bottom transfer
GreenQuotient geometric_fixed_points_green(const GreenFunctor& R);

struct PhiRing {
    BasedRing ring;
    Matrix weyl;  // residual action of the generator
    int m = 0;
    int weyl_exponent = 0;  // acting group C_{p^{n-m}}
};
PhiRing phi_ring(const GreenFunctor& R, int m);

enum class Tri { Yes, No, Unknown };
std::string tri_name(Tri t);

struct E1Entry {
    int t = 0;
    PhiRing phi;
    long weyl_order = 1;
    std::optional<TwistedGroupRing> twisted;
    std::string name;
};

struct E1Page {
    int p = 2, n = 0;
    std::vector<E1Entry> entries;  // zero rings dropped
    bool zero_transfer = false;
    bool surjective_transfer = false;
    Tri section = Tri::Unknown;
    std::optional<GreenMap> section_witness;
};

E1Page e1_page(const GreenFunctor& R);
std::string twisted_ring_name(const PhiRing& phi, int p);

}  // namespace eqa
