#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqalg/functors.hpp"

namespace eqa {

// dimensions over the top level field; column i is F_i, F_n = k
struct DimensionMatrix {
    int p = 2, n = 0;
    int r = 0;  // stabilizer level
    std::vector<std::vector<long>> alpha;  // (n+1) x (n+1), alpha[s][i]
    std::vector<long> level_dims;          // dim k_s over k_n
    // rows 0..r, columns F_0..F_{r-1} and k
    Matrix gamma() const;
    // reduced gamma after subtracting adjacent columns; upper triangular
    Matrix gamma_reduced() const;
    Scalar gamma_det() const;
};

// requires every level to be a field finite over the top level
DimensionMatrix dim_matrix(const GreenFunctor& k);

BurnsideQuotient k0_free_fixed_point(int p, int n, int r);

// F_i for r <= i < n becomes p^{n-i} copies of k; refuses unless the
// characteristic is p or r = n
std::vector<long> classify_free(int p, int n, int r, const std::vector<long>& mult, bool char_is_p);

// submodule spanned levelwise by the columns of spans (field base)
struct SubGreenModule {
    GreenModule X;
    std::vector<Matrix> incl;
};
SubGreenModule sub_green_module(const GreenModule& X, const std::vector<Matrix>& spans);

struct FreeDecomposition {
    bool ok = false;
    std::vector<long> raw;             // as found by splitting
    std::vector<long> multiplicities;  // canonical when classify_free applies
    bool canonical = false;
    GreenModule P;               // image of e, coordinates in P_incl
    std::vector<Matrix> P_incl;  // into F
    GreenModule candidate;
    MackeyMorphism witness;  // P -> candidate
    std::string failure;     // stage and residual data
};

// P = image of an idempotent module endomorphism e of F
FreeDecomposition freeness_decompose(const GreenFunctor& k, const GreenModule& F, const MackeyMorphism& e,
                                     std::uint64_t seed = 1);

struct RandomProjective {
    GreenModule F;
    MackeyMorphism e;
    std::vector<long> expected;  // multiplicities of the kept summands
};
// conjugate of the projection of F_{idx} onto the kept summands by a random
// module automorphism
RandomProjective random_projective(const GreenFunctor& k, const std::vector<int>& idx, const std::vector<bool>& keep,
                                   std::uint64_t seed);

// random module automorphism of X (field base)
std::optional<MackeyMorphism> random_automorphism(const GreenModule& X, std::uint64_t seed, int tries = 200);

// number of simple modules of Mat(L^C)[C_{p^m}], L^C of size q
long simples_count(std::uint64_t q, int p, int m, bool char_is_p);

// simple count of L_theta[C_{p^m}] over a finite field, through the
// nilradical and the idempotent splitting of L
long twisted_simples(const BasedRing& L, const Matrix& theta, int p, int m);

// primitive idempotents of a commutative reduced ring over a finite field
std::vector<Vec> primitive_idempotents(const BasedRing& L);

struct G0Term {
    std::string ring;
    std::optional<long> rank;
    std::string note;
};

struct G0Splitting {
    E1Page page;
    std::string kind;  // "zero-transfer", "surjective-transfer" or "none"
    std::vector<G0Term> terms;
    std::optional<long> total;
};

G0Splitting g0_splitting(const GreenFunctor& R);
// "rings: F2[C2], F2; zero-transfer: yes; G0 ranks 1+1"
std::string e1_summary(const G0Splitting& g);

struct ResolutionCheck {
    Report report;
    std::vector<MackeyFunctor> terms;  // Z, Ind Z, Ind Z, Z, M
    std::vector<MackeyMorphism> maps;
    std::vector<long> k0_class;  // alternating multiplicities of F_0, F_1
};

ResolutionCheck constant_Z_resolution_check(int p);

}  // namespace eqa
