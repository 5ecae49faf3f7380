#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqalg/cyclic.hpp"
#include "eqalg/module.hpp"
#include "eqalg/report.hpp"

namespace eqa {

// C_{p^n}-Mackey functor.  Level s is the value at G/C_{p^s}.
//   res[s] : levels[s+1] -> levels[s]
//   tr[s]  : levels[s]   -> levels[s+1]
//   weyl[s]: action of the generator g of G on levels[s]
struct MackeyFunctor {
    CyclicGroup G;
    Base base;
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;

    int n() const { return G.n; }
    std::size_t dim(int s) const { return levels[s].size(); }
    std::vector<std::size_t> dims() const;
    bool is_zero() const;
};

struct MackeyMorphism {
    std::vector<Matrix> maps;
};

// shapes are checked, maps reduced modulo torsion
MackeyFunctor make_mackey(const CyclicGroup& G, const Base& B, std::vector<FPModule> levels, std::vector<Matrix> res,
                          std::vector<Matrix> tr, std::vector<Matrix> weyl);
MackeyFunctor zero_mackey(const CyclicGroup& G, const Base& B);

// composite restriction levels[h] -> levels[s] and transfer levels[t] -> levels[h]
Matrix res_chain(const MackeyFunctor& M, int h, int s);
Matrix tr_chain(const MackeyFunctor& M, int t, int h);
Matrix weyl_pow(const MackeyFunctor& M, int s, std::uint64_t e);

Report check_axioms(const MackeyFunctor& M);
Report check_cohomological(const MackeyFunctor& M);
Report check_morphism(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f);

MackeyMorphism identity_morphism(const MackeyFunctor& M);
MackeyMorphism compose(const MackeyFunctor& target, const MackeyMorphism& g, const MackeyMorphism& f);
bool morphisms_equal(const MackeyFunctor& target, const MackeyMorphism& f, const MackeyMorphism& g);

MackeyFunctor constant_mackey(const FPModule& A, const CyclicGroup& G);

struct FixedPointData {
    MackeyFunctor M;
    std::vector<Matrix> incl;  // level s -> A
};
// rho is the action of g on A; level s holds the C_{p^s}-fixed points
FixedPointData fixed_point_data(const FPModule& A, const Matrix& rho, const CyclicGroup& G);
MackeyFunctor fixed_point_mackey(const FPModule& A, const Matrix& rho, const CyclicGroup& G);

// level s = A(C_{p^s}) on the orbit basis [C_{p^s}/C_{p^t}], t = 0..s
MackeyFunctor burnside_mackey(const CyclicGroup& G, const Base& B = Base::integers());

// C_p functor with top Z{u,v}, bottom Z, res = (a, p), tr = (0,1)^T
MackeyFunctor twisted_burnside(int p, long a);
MackeyFunctor twisted_burnside_c5();

FPModule evaluate_at_gset(const MackeyFunctor& M, const FiniteGSet& X);

// linear condition f_u * A = B * f_v on a family of level maps f_s : M_s -> N_s
struct HomConstraint {
    int u, v;
    Matrix A;  // M_v -> M_u
    Matrix B;  // N_v -> N_u
};

std::vector<HomConstraint> mackey_constraints(const MackeyFunctor& M, const MackeyFunctor& N);

// basis (field) or lattice generators (Z) of the maps satisfying the
// constraints; the Mackey constraints are always included
std::vector<MackeyMorphism> hom_basis(const MackeyFunctor& M, const MackeyFunctor& N,
                                      const std::vector<HomConstraint>& extra = {});

// levelwise bijective
bool is_invertible(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f);
std::optional<MackeyMorphism> inverse_morphism(const MackeyFunctor& M, const MackeyFunctor& N,
                                               const MackeyMorphism& f);

struct IsoOptions {
    std::uint64_t seed = 1;
    long bound = 5;             // coefficient box over Z
    int max_modulus = 97;
    std::size_t random_trials = 10000;
    std::uint64_t exhaustive_limit = 200000;
    std::vector<HomConstraint> extra;  // e.g. module actions
};

struct IsoVerdict {
    enum class Kind { Iso, NonIso, Inconclusive };
    Kind kind = Kind::Inconclusive;
    MackeyMorphism witness;  // when Iso
    std::string certificate;  // human readable reason
    int modulus = 0;          // determinant certificate over Z, 0 otherwise
    int level = -1;
    std::string kind_name() const;
};

IsoVerdict is_isomorphic(const MackeyFunctor& M, const MackeyFunctor& N, const IsoOptions& opt = {});

struct SubFunctor {
    MackeyFunctor S;
    std::vector<Matrix> incl;
};

struct QuotFunctor {
    MackeyFunctor Q;
    std::vector<Matrix> proj, lift;
};

// spans[s] columns in M_s; the spans must be closed under res/tr/weyl
SubFunctor sub_functor(const MackeyFunctor& M, const std::vector<Matrix>& spans);
QuotFunctor quotient_functor(const MackeyFunctor& M, const std::vector<Matrix>& spans);

// smallest family of submodules containing gens and closed under res, tr,
// weyl and the extra per-level operators; returns spanning columns
std::vector<Matrix> generated_submodule(const MackeyFunctor& M, const std::vector<Matrix>& gens,
                                        const std::vector<std::vector<Matrix>>& ops = {});

SubFunctor kernel_functor(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f);
SubFunctor image_functor(const MackeyFunctor& N, const MackeyMorphism& f);
QuotFunctor cokernel_functor(const MackeyFunctor& N, const MackeyMorphism& f);

struct DirectSum {
    MackeyFunctor M;
    std::vector<MackeyMorphism> incl, proj;
};
DirectSum direct_sum(const std::vector<MackeyFunctor>& parts);

// copy of M over a different base via entrywise reduction (Z -> F_p)
MackeyFunctor change_base(const MackeyFunctor& M, const Base& B);

std::string describe(const MackeyFunctor& M);

}  // namespace eqa
