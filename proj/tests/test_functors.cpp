#include "doctest.h"
#include "support.hpp"

using namespace eqa;
using namespace eqa::testing;

namespace {

std::vector<GreenFunctor> green_zoo(int p, int n)
{
    CyclicGroup G(p, n);
    std::vector<GreenFunctor> out{constant_green(Base::prime(p), G), constant_green(Base::integers(), G),
                                  burnside_green(G, Base::prime(p))};
    if (n >= 1) out.push_back(fp_galois(p, n, p));
    return out;
}

// levelwise value of F_i read off a product of orbits
std::size_t orbit_oracle(const GreenFunctor& R, int i, int s)
{
    return evaluate_at_gset(R.M, orbit_product(R.M.G, i, s)).size();
}

// R(G/C_{p^i})^{p^{n-s}} for s >= i, R(G/C_{p^s})^{p^{n-i}} otherwise
std::size_t closed_formula(const GreenFunctor& R, int i, int s)
{
    const CyclicGroup& G = R.M.G;
    return s >= i ? R.M.dim(i) * G.ipow(G.n - s) : R.M.dim(s) * G.ipow(G.n - i);
}

bool same_functor(const MackeyFunctor& A, const MackeyFunctor& B)
{
    if (A.G != B.G || A.base != B.base || A.dims() != B.dims()) return false;
    for (int s = 0; s <= A.n(); ++s) {
        if (!(A.levels[s] == B.levels[s]) || A.weyl[s] != B.weyl[s]) return false;
        if (s < A.n() && (A.res[s] != B.res[s] || A.tr[s] != B.tr[s])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("restriction")
{
    CyclicGroup C4(2, 2);
    MackeyFunctor A = burnside_mackey(C4);
    CHECK(same_functor(restrict_mackey(A, 2), A));
    MackeyFunctor R = restrict_mackey(A, 1);
    CHECK(check_axioms(R).ok);
    CHECK(is_isomorphic(R, burnside_mackey(CyclicGroup(2, 1))).kind == IsoVerdict::Kind::Iso);
    for (int p : {2, 3})
        for (int m = 0; m <= 2; ++m)
            CHECK(same_functor(restrict_mackey(constant_green(Base::integers(), CyclicGroup(p, 2)).M, m),
                               constant_green(Base::integers(), CyclicGroup(p, m)).M));
    CHECK_THROWS(restrict_mackey(A, 3));
    GreenFunctor F = restrict_green(fp_galois(2, 2, 2), 1);
    CHECK(check_green(F).ok);
}

TEST_CASE("induction")
{
    for (int p : {2, 3}) {
        const Base F2 = Base::prime(2);
        MackeyFunctor triv = constant_green(F2, CyclicGroup(p, 0)).M;
        MackeyFunctor I = induce_mackey(triv, 1);
        CHECK(check_axioms(I).ok);
        CHECK(I.dims() == std::vector<std::size_t>{std::size_t(p), 1});
        // transfer sums the copies, restriction is the diagonal
        CHECK(I.tr[0] == Matrix::from_rows({std::vector<long>(p, 1)}));
        CHECK(I.res[0] == transpose(Matrix::from_rows({std::vector<long>(p, 1)})));
    }
    MackeyFunctor A = burnside_mackey(CyclicGroup(3, 2));
    CHECK(same_functor(induce_mackey(A, 2), A));
    CHECK_THROWS(induce_mackey(A, 1));
}

TEST_CASE("induce then restrict matches the double coset decomposition")
{
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n)
            for (int m = 0; m <= n; ++m) {
                CyclicGroup H(p, m), G(p, n);
                for (const auto& M : {burnside_mackey(H), constant_green(Base::prime(p), H).M}) {
                    MackeyFunctor I = induce_mackey(M, n);
                    CHECK(check_axioms(I).ok);
                    for (int s = 0; s <= n; ++s) {
                        CHECK(I.dim(s) == evaluate_at_gset(M, restrict_gset(FiniteGSet::orbit(G, s), m)).size());
                        CHECK(induce_copies(G, m, s) * M.dim(std::min(s, m)) == long(I.dim(s)));
                    }
                }
            }
}

TEST_CASE("free module dimensions")
{
    for (int p : {2, 3})
        for (int n = 0; n <= 3; ++n)
            for (const auto& R : green_zoo(p, n))
                for (int i = 0; i <= n; ++i) {
                    GreenModule F = free_module(R, i);
                    for (int s = 0; s <= n; ++s) {
                        INFO("p=" << p << " n=" << n << " i=" << i << " s=" << s << " base " << R.base().name());
                        CHECK(F.M.dim(s) == closed_formula(R, i, s));
                        CHECK(F.M.dim(s) == orbit_oracle(R, i, s));
                    }
                }
}

TEST_CASE("free modules are modules and F_n is R")
{
    for (int p : {2, 3})
        for (int n = 0; n <= 2; ++n)
            for (const auto& R : green_zoo(p, n)) {
                for (int i = 0; i <= n; ++i) {
                    GreenModule F = free_module(R, i);
                    CHECK(check_axioms(F.M).ok);
                    CHECK(check_green_module(F).ok);
                }
                CHECK(same_functor(free_module(R, n).M, R.M));
            }
}

TEST_CASE("small free module values")
{
    // F_0 at the top is R(G/e) once
    GreenModule F0 = free_module(constant_green(Base::prime(2), CyclicGroup(2, 1)), 0);
    CHECK(F0.M.dims() == std::vector<std::size_t>{2, 1});
    // dimensions over F2; R = FP(F4) over C4 has levels F4, F4, F2
    GreenModule F1 = free_module(fp_galois(2, 2, 2), 1);
    CHECK(F1.M.dims() == std::vector<std::size_t>{4, 4, 2});
    CHECK_THROWS(free_module(fp_galois(2, 2, 2), 3));
}

TEST_CASE("Yoneda maps out of free modules")
{
    GreenFunctor R = fp_galois(2, 2, 2);
    GreenModule X = free_sum(R, {0, 1});
    for (int i = 0; i <= 2; ++i) {
        GreenModule Fi = free_module(R, i);
        for (std::size_t b = 0; b < X.M.dim(i); ++b) {
            MackeyMorphism f = yoneda_map(Fi, i, X, unit_vec(X.M.dim(i), b));
            CHECK(is_module_map(Fi, X, f));
        }
        // hom(F_i, X) as modules has the size of X at level i
        CHECK(hom_basis(Fi.M, X.M, module_constraints(Fi, X)).size() == X.M.dim(i));
    }
}

TEST_CASE("truncation preserves free modules")
{
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n)
            for (const auto& R : green_zoo(p, n)) {
                GreenFunctor tR = tau_green(R);
                CHECK(check_green(tR).ok);
                for (int i = 1; i <= n; ++i) {
                    GreenModule a = tau_module(free_module(R, i));
                    GreenModule b = free_module(tR, i - 1);
                    REQUIRE(a.M.dims() == b.M.dims());
                    MackeyMorphism id = identity_morphism(a.M);
                    CHECK(is_module_map(a, b, id));
                    CHECK(is_invertible(a.M, b.M, id));
                }
            }
}

TEST_CASE("truncation of constant and Burnside functors")
{
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n)
            CHECK(same_functor(tau_geq_1(constant_green(Base::integers(), CyclicGroup(p, n)).M),
                               constant_green(Base::integers(), CyclicGroup(p, n - 1)).M));
    MackeyFunctor t = tau_geq_1(burnside_mackey(CyclicGroup(2, 2)));
    CHECK(t.dims() == std::vector<std::size_t>{2, 3});
    CHECK(check_axioms(t).ok);
    CHECK_THROWS(tau_geq_1(burnside_mackey(CyclicGroup(2, 0))));
}

TEST_CASE("brutal truncation")
{
    CyclicGroup C2(2, 1);
    CHECK(brutal_truncation(zero_mackey(C2, Base::integers())).is_zero());
    MackeyFunctor b = brutal_truncation(constant_green(Base::prime(2), C2).M);
    CHECK(b.dims() == std::vector<std::size_t>{0, 1});
    CHECK(check_axioms(b).ok);
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            GreenFunctor A = burnside_green(CyclicGroup(p, n));
            GreenFunctor T = brutal_truncation_green(A);
            CHECK(check_axioms(T.M).ok);
            CHECK(check_green(T).ok);
            CHECK(T.M.dim(0) == 0);
            for (int s = 1; s <= n; ++s) CHECK(T.M.dim(s) == A.M.dim(s));
        }
}

TEST_CASE("geometric fixed points")
{
    for (int p : {2, 3, 5}) {
        CyclicGroup G(p, 1);
        MackeyFunctor a = geometric_fixed_points(constant_green(Base::prime(p), G).M);
        CHECK(a.dims() == std::vector<std::size_t>{1});
        MackeyFunctor z = geometric_fixed_points(constant_green(Base::integers(), G).M);
        REQUIRE(z.dims() == std::vector<std::size_t>{1});
        CHECK(z.levels[0].tors == std::vector<Scalar>{p});
    }
    CHECK(geometric_fixed_points(fp_galois(2, 1, 2).M).is_zero());
    CHECK(geometric_fixed_points_green(fp_galois(2, 1, 2)).R.M.is_zero());
    CHECK_THROWS(geometric_fixed_points(burnside_mackey(CyclicGroup(2, 0))));
}

TEST_CASE("geometric fixed points of the Burnside functor")
{
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            GreenQuotient q = geometric_fixed_points_green(burnside_green(CyclicGroup(p, n)));
            CHECK(check_green(q.R).ok);
            IsoVerdict v = is_isomorphic(q.R.M, burnside_mackey(CyclicGroup(p, n - 1)));
            REQUIRE(v.kind == IsoVerdict::Kind::Iso);
            CHECK(check_morphism(q.R.M, burnside_mackey(CyclicGroup(p, n - 1)), v.witness).ok);
        }
}

TEST_CASE("rings of geometric fixed points")
{
    for (int p : {2, 3, 5}) {
        GreenFunctor Z = constant_green(Base::integers(), CyclicGroup(p, 1));
        PhiRing bottom = phi_ring(Z, 0);
        CHECK(ring_name(bottom.ring) == "Z");
        PhiRing top = phi_ring(Z, 1);
        CHECK(top.ring.rank() == 1);
        CHECK(top.ring.base().characteristic() == p);
        CHECK(is_field_ring(top.ring));
    }
    GreenFunctor F2 = constant_green(Base::prime(2), CyclicGroup(2, 1));
    CHECK(ring_name(phi_ring(F2, 1).ring) == "F2");
    GreenFunctor F4 = fp_galois(2, 1, 2);
    CHECK(ring_name(phi_ring(F4, 0).ring) == "F4");
    CHECK(phi_ring(F4, 0).weyl_exponent == 1);
    CHECK(phi_ring(F4, 1).ring.rank() == 0);
}

TEST_CASE("E1 page flags")
{
    E1Page a = e1_page(constant_green(Base::prime(2), CyclicGroup(2, 1)));
    CHECK(a.zero_transfer);
    CHECK_FALSE(a.surjective_transfer);
    REQUIRE(a.entries.size() == 2);
    CHECK(a.entries[0].name == "F2[C2]");
    CHECK(a.entries[1].name == "F2");
    CHECK(a.section == Tri::Yes);

    E1Page b = e1_page(fp_galois(2, 1, 2));
    CHECK(b.surjective_transfer);
    REQUIRE(b.entries.size() == 1);
    CHECK(b.entries[0].weyl_order == 2);

    E1Page c = e1_page(burnside_green(CyclicGroup(2, 1)));
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0].name == "Z[C2]");
    CHECK(c.entries[1].name == "Z");
    CHECK(c.section == Tri::Yes);
    REQUIRE(c.section_witness);
}

TEST_CASE("zero transfer gives a section")
{
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            E1Page e = e1_page(constant_green(Base::prime(p), CyclicGroup(p, n)));
            CHECK(e.zero_transfer);
            CHECK(e.section == Tri::Yes);
            CHECK(e.entries.size() == std::size_t(n + 1));
            CHECK(e.entries.back().weyl_order == 1);
        }
    for (int p : {2, 3}) {
        E1Page e = e1_page(trivial_meadow(p, 2));
        CHECK(e.zero_transfer);
        CHECK(e.section == Tri::Yes);
    }
}

TEST_CASE("hom ranks are unchanged by truncation on modules generated above the bottom")
{
    std::mt19937_64 rng(41);
    std::vector<GreenFunctor> rings{constant_green(Base::prime(2), CyclicGroup(2, 2)), fp_galois(2, 2, 2),
                                    constant_green(Base::prime(3), CyclicGroup(3, 1)),
                                    burnside_green(CyclicGroup(2, 1), Base::prime(2))};
    std::uniform_int_distribution<int> coin(0, 1);
    int pairs = 0;
    for (int t = 0; t < 20; ++t) {
        const GreenFunctor& R = rings[t % rings.size()];
        const int n = R.n();
        auto make = [&]() {
            std::vector<int> idx;
            for (int j = 0; j < 2; ++j) idx.push_back(1 + (n > 1 ? coin(rng) : 0));
            GreenModule F = free_sum(R, idx);
            if (coin(rng)) return F;
            // relations live above the bottom level too
            return quotient_module(F, random_submodule(F, rng, 1).incl);
        };
        GreenModule M = make(), N = make();
        CHECK(check_green_module(M).ok);
        std::size_t h = hom_basis(M.M, N.M, module_constraints(M, N)).size();
        GreenModule tM = tau_module(M), tN = tau_module(N);
        CHECK(check_green_module(tM).ok);
        std::size_t th = hom_basis(tM.M, tN.M, module_constraints(tM, tN)).size();
        CHECK(h == th);
        ++pairs;
    }
    CHECK(pairs == 20);
}
