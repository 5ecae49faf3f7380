#pragma once

#include <vector>

#include "eqalg/based_ring.hpp"
#include "eqalg/mackey.hpp"

namespace eqa {

// Mackey functor with a commutative ring structure on every level;
// rings[s].group is levels[s] of the underlying functor.
struct GreenFunctor {
    MackeyFunctor M;
    std::vector<BasedRing> rings;

    int n() const { return M.n(); }
    const Base& base() const { return M.base; }
};

// act[s] has column a*dim(M_s) + b holding r_a . m_b
struct GreenModule {
    GreenFunctor R;
    MackeyFunctor M;
    std::vector<Matrix> act;

    // matrix of m -> r.m on level s
    Matrix action(int s, const Vec& r) const;
    Matrix action_basis(int s, std::size_t a) const;
};

GreenFunctor make_green(MackeyFunctor M, std::vector<BasedRing> rings);
Report check_green(const GreenFunctor& R);
Report check_green_module(const GreenModule& M);

// R as a module over itself
GreenModule regular_module(const GreenFunctor& R);

// module conditions (action compatibility) for hom_basis between R-modules
std::vector<HomConstraint> module_constraints(const GreenModule& M, const GreenModule& N);

GreenFunctor constant_green(const Base& B, const CyclicGroup& G);
// fixed points of a ring L under the automorphism theta of order | p^n
GreenFunctor fixed_point_green(const BasedRing& L, const Matrix& theta, const CyclicGroup& G);
// FP(GF(p^k)) over F_p with the generator acting by Frobenius
GreenFunctor fp_galois(int p, int n, int k);
GreenFunctor burnside_green(const CyclicGroup& G, const Base& B = Base::integers());

// ring of coordinates of a subring given by incl (columns in L)
BasedRing subring(const BasedRing& L, const Matrix& incl);

struct TwistedGroupRing {
    BasedRing coefficient;
    int p = 2;
    int m = 0;  // group C_{p^m}
    Matrix theta;
    BasedRing ring;  // basis r_a w^j at index j*rank + a
};

TwistedGroupRing twisted_group_ring(const BasedRing& R, int p, int m, const Matrix& theta);
TwistedGroupRing level_twisted_ring(const GreenFunctor& R, int s);

// Generators at level s are the tensors M_t (x) N_t for t <= s, summand t
// standing for Tr_t^s(m (x) n).
struct BoxProduct {
    MackeyFunctor P;
    std::vector<std::vector<std::size_t>> offset;  // offset[s][t]
    std::vector<std::size_t> gens;
    std::vector<Matrix> proj, lift;  // per level, quotient <-> generators
};

BoxProduct box_product(const MackeyFunctor& M, const MackeyFunctor& N);
MackeyFunctor box_product_cp(const MackeyFunctor& M, const MackeyFunctor& N);
MackeyFunctor box_product_general(const MackeyFunctor& M, const MackeyFunctor& N);

// m (x) n -> n (x) m
MackeyMorphism box_swap(const MackeyFunctor& M, const MackeyFunctor& N, const BoxProduct& MN, const BoxProduct& NM);
// A (x) M -> M from the Burnside action [C_{p^t}/C_{p^u}] m = Tr_u^t Res^t_u m
MackeyMorphism box_unit_map(const MackeyFunctor& M, const BoxProduct& AM);

struct GreenMap {
    std::vector<Matrix> maps;
};
Report check_green_map(const GreenFunctor& k, const GreenFunctor& l, const GreenMap& f);

struct BaseChange {
    GreenModule module;
    std::vector<std::vector<std::size_t>> offset;
    std::vector<Matrix> proj, lift;
};

// l (x)_k M over C_p
BaseChange base_change_cp(const GreenFunctor& k, const GreenFunctor& l, const GreenMap& f, const GreenModule& M);
// levelwise matrices of g (x) id between two base changes
MackeyMorphism base_change_map(const BaseChange& BM, const BaseChange& BN, const MackeyMorphism& g,
                               const GreenModule& M, const GreenModule& N);

}  // namespace eqa
