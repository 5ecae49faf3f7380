#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace eqa;
using namespace eqa::testing;

namespace {

// every column of Y is an integral combination of the columns of X
bool lattice_contains(const Matrix& X, const Matrix& Y)
{
    const Base Z = Base::integers();
    for (std::size_t j = 0; j < Y.cols; ++j)
        if (!solve(Z, X, Y.col(j))) return false;
    return true;
}

std::vector<GreenFunctor> meadows()
{
    std::vector<GreenFunctor> out;
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            out.push_back(constant_green(Base::prime(p), CyclicGroup(p, n)));
            out.push_back(fp_galois(p, n, p));
        }
    out.push_back(fp_galois(2, 2, 4));
    out.push_back(trivial_meadow(2, 2));
    out.push_back(trivial_meadow(3, 2));
    return out;
}

// orbits of multiplication by q on Z/N
long coset_count(std::uint64_t q, long N)
{
    std::set<long> seen;
    long orbits = 0;
    for (long a = 0; a < N; ++a) {
        if (seen.count(a)) continue;
        ++orbits;
        for (long b = a; !seen.count(b); b = long((b * (q % N)) % N)) seen.insert(b);
    }
    return orbits;
}

bool char_is_p(const GreenFunctor& k) { return k.base().characteristic() == k.M.G.p; }

std::vector<long> expected_canonical(const GreenFunctor& k, const std::vector<long>& raw)
{
    DimensionMatrix D = dim_matrix(k);
    return classify_free(k.M.G.p, k.n(), D.r, raw, char_is_p(k));
}

}  // namespace

TEST_CASE("dimension matrix examples")
{
    DimensionMatrix a = dim_matrix(constant_green(Base::prime(2), CyclicGroup(2, 1)));
    CHECK(a.r == 1);
    CHECK(a.gamma() == Matrix::from_rows({{2, 1}, {1, 1}}));
    CHECK(a.gamma_det() == 1);

    DimensionMatrix b = dim_matrix(fp_galois(2, 1, 2));
    CHECK(b.r == 0);
    CHECK(b.gamma() == Matrix::from_rows({{2}}));

    DimensionMatrix c = dim_matrix(fp_galois(2, 2, 2));
    CHECK(c.r == 1);
    CHECK(c.level_dims == std::vector<long>{2, 2, 1});
    CHECK(c.gamma() == Matrix::from_rows({{8, 2}, {4, 2}}));
    CHECK(c.gamma_reduced() == Matrix::from_rows({{4, 2}, {0, 2}}));
    CHECK(c.gamma_det() == 8);
}

TEST_CASE("dimension matrix agrees with free modules")
{
    for (const auto& k : meadows()) {
        DimensionMatrix D = dim_matrix(k);
        const long top = long(k.M.dim(k.n()));
        for (int i = 0; i <= k.n(); ++i) {
            GreenModule F = free_module(k, i);
            for (int s = 0; s <= k.n(); ++s) CHECK(D.alpha[s][i] * top == long(F.M.dim(s)));
        }
        Matrix R = D.gamma_reduced();
        for (std::size_t i = 0; i < R.rows; ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK(R(i, j) == 0);
        CHECK(D.gamma_det() != 0);
        CHECK(det(Base::integers(), D.gamma()) == D.gamma_det());
    }
}

TEST_CASE("dimension matrix needs a meadow")
{
    CHECK_THROWS(dim_matrix(constant_green(Base::integers(), CyclicGroup(2, 1))));
    CHECK_THROWS(dim_matrix(burnside_green(CyclicGroup(2, 1), Base::prime(2))));
}

TEST_CASE("K0 of free modules over fixed point meadows")
{
    BurnsideQuotient a = k0_free_fixed_point(2, 2, 1);
    CHECK(a.ring.rank() == 2);
    CHECK(a.ring.group.is_free());
    CHECK(a.presentation == "Z[y]/(y^2-4y)");
    CHECK(k0_free_fixed_point(2, 2, 2).presentation == "Z[x,y]/(x^2-2x,y^2-4y,xy-2y)");
    CHECK(k0_free_fixed_point(3, 2, 0).presentation == "Z");
    CHECK(k0_free_fixed_point(2, 1, 1).presentation == "Z[x]/(x^2-2x)");
    CHECK_THROWS(k0_free_fixed_point(2, 2, 3));
}

TEST_CASE("the kernel to K0 is cut out by marks below the stabilizer")
{
    const Base Z = Base::integers();
    for (int p : {2, 3})
        for (int n = 0; n <= 2; ++n)
            for (int r = 0; r <= n; ++r) {
                BurnsideQuotient q = k0_free_fixed_point(p, n, r);
                CHECK(q.ring.rank() == std::size_t(r + 1));
                CHECK(based_ring_check(q.ring).ok);
                CHECK(is_ring_hom(burnside_ring(CyclicGroup(p, n)), q.ring, q.proj));
                Matrix marks = marks_matrix(CyclicGroup(p, n));
                std::vector<std::size_t> rows, cols;
                for (int t = 0; t <= r; ++t) rows.push_back(t);
                for (int s = 0; s <= n; ++s) cols.push_back(s);
                Matrix K1 = kernel(Z, q.proj), K2 = kernel(Z, submatrix(marks, rows, cols));
                CHECK(lattice_contains(K1, K2));
                CHECK(lattice_contains(K2, K1));
            }
}

TEST_CASE("classification of free modules")
{
    CHECK(classify_free(2, 2, 1, {1, 1, 1}, true) == std::vector<long>{1, 0, 3});
    CHECK(classify_free(2, 1, 0, {3, 1}, true) == std::vector<long>{0, 7});
    CHECK(classify_free(3, 2, 2, {1, 2, 3}, false) == std::vector<long>{1, 2, 3});
    CHECK_THROWS(classify_free(3, 2, 1, {1, 2, 3}, false));
    for (const auto& k : meadows()) {
        if (!char_is_p(k)) continue;
        DimensionMatrix D = dim_matrix(k);
        const int n = k.n(), p = k.M.G.p;
        for (long a = 0; a < 3; ++a)
            for (long b = 0; b < 3; ++b) {
                std::vector<long> m(n + 1, 0);
                m[0] = a;
                m[n] = b;
                if (n > 1) m[1] = a + b;
                auto c = classify_free(p, n, D.r, m, true);
                CHECK(classify_free(p, n, D.r, c, true) == c);
                for (int s = 0; s <= n; ++s) {
                    long d1 = 0, d2 = 0;
                    for (int i = 0; i <= n; ++i) {
                        d1 += m[i] * D.alpha[s][i];
                        d2 += c[i] * D.alpha[s][i];
                    }
                    CHECK(d1 == d2);
                }
            }
    }
}

TEST_CASE("free modules over F4 fixed points collapse to the top")
{
    // F_0 over FP(F4), C2 is two copies of k
    GreenFunctor k = fp_galois(2, 1, 2);
    GreenModule F0 = free_module(k, 0);
    DirectSum two = direct_sum({k.M, k.M});
    CHECK(is_isomorphic(F0.M, two.M).kind == IsoVerdict::Kind::Iso);
}

TEST_CASE("random projectives decompose")
{
    struct Case {
        GreenFunctor k;
        std::vector<int> idx;
        std::vector<bool> keep;
    };
    std::vector<Case> cases{
        {constant_green(Base::prime(2), CyclicGroup(2, 1)), {0, 1}, {true, true}},
        {constant_green(Base::prime(2), CyclicGroup(2, 1)), {0, 0, 1}, {true, false, true}},
        {constant_green(Base::prime(2), CyclicGroup(2, 2)), {0, 1, 2}, {true, true, false}},
        {fp_galois(2, 1, 2), {0, 1}, {true, true}},
        {constant_green(Base::prime(3), CyclicGroup(3, 1)), {1, 0}, {false, true}},
        {fp_galois(2, 2, 2), {1, 2}, {true, true}},
    };
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        RandomProjective rp = random_projective(c.k, c.idx, c.keep, seed++);
        FreeDecomposition fd = freeness_decompose(c.k, rp.F, rp.e, seed);
        INFO(fd.failure);
        REQUIRE(fd.ok);
        CHECK(check_green_module(fd.P).ok);
        CHECK(is_module_map(fd.P, fd.candidate, fd.witness));
        CHECK(is_invertible(fd.P.M, fd.candidate.M, fd.witness));
        if (fd.canonical)
            CHECK(fd.multiplicities == expected_canonical(c.k, rp.expected));
        else
            CHECK(fd.raw == rp.expected);
    }
}

TEST_CASE("decomposition is additive")
{
    GreenFunctor k = constant_green(Base::prime(2), CyclicGroup(2, 2));
    std::vector<long> total(3, 0);
    for (int i = 0; i <= 2; ++i) {
        RandomProjective rp = random_projective(k, {i}, {true}, 7 + i);
        FreeDecomposition fd = freeness_decompose(k, rp.F, rp.e, 7);
        REQUIRE(fd.ok);
        for (int s = 0; s <= 2; ++s) total[s] += fd.multiplicities[s];
    }
    RandomProjective all = random_projective(k, {0, 1, 2}, {true, true, true}, 31);
    FreeDecomposition fd = freeness_decompose(k, all.F, all.e, 31);
    REQUIRE(fd.ok);
    CHECK(fd.multiplicities == total);
}

TEST_CASE("decompose rejects a non-idempotent")
{
    GreenFunctor k = constant_green(Base::prime(2), CyclicGroup(2, 1));
    GreenModule F = free_sum(k, {0});
    MackeyMorphism zero;
    for (int s = 0; s <= 1; ++s) zero.maps.push_back(Matrix(F.M.dim(s), F.M.dim(s)));
    MackeyMorphism twice = identity_morphism(F.M);
    twice.maps[0](0, 1) = 1;
    CHECK_THROWS_AS(freeness_decompose(k, F, twice, 1), std::invalid_argument);
    // the zero idempotent has the zero image
    FreeDecomposition z = freeness_decompose(k, F, zero, 1);
    REQUIRE(z.ok);
    CHECK(z.multiplicities == std::vector<long>{0, 0});
}

TEST_CASE("simple module counts")
{
    CHECK(simples_count(2, 3, 1, false) == 2);
    CHECK(simples_count(4, 3, 1, false) == 3);
    CHECK(simples_count(2, 5, 1, false) == 2);
    CHECK(simples_count(2, 2, 3, true) == 1);
    CHECK(simples_count(7, 3, 0, false) == 1);
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
        for (int p : {2, 3, 5})
            for (int m = 1; m <= 2; ++m) {
                if (q % p == 0) continue;
                long N = 1;
                for (int i = 0; i < m; ++i) N *= p;
                CHECK(simples_count(q, p, m, false) == coset_count(q, N));
            }
}

TEST_CASE("simples of twisted group rings")
{
    Field F4 = gf_default(2, 2);
    BasedRing L = field_ring(F4);
    // Frobenius twist: a matrix ring, one simple
    CHECK(twisted_simples(L, frobenius_matrix(F4), 2, 1) == 1);
    // trivial action over C3: F4[x]/(x^3 - 1) splits completely
    CHECK(twisted_simples(L, Matrix::identity(2), 3, 1) == 3);
    CHECK(twisted_simples(field_ring(gf_make(2, 1, {0, 1})), Matrix::identity(1), 3, 1) == 2);
    // F2 x F2 with the swap: induced, one simple
    const Base F2 = Base::prime(2);
    Matrix mult(2, 4);
    mult(0, 0) = 1;
    mult(1, 3) = 1;
    BasedRing P = make_based_ring(FPModule::free(F2, 2), mult, Vec{1, 1});
    CHECK(twisted_simples(P, Matrix::from_rows({{0, 1}, {1, 0}}), 2, 1) == 1);
    CHECK(twisted_simples(P, Matrix::identity(2), 2, 1) == 2);
    CHECK(primitive_idempotents(P).size() == 2);
    CHECK(primitive_idempotents(L).size() == 1);
}

TEST_CASE("G0 splitting summaries")
{
    CHECK(e1_summary(g0_splitting(constant_green(Base::prime(2), CyclicGroup(2, 1)))) ==
          "rings: F2[C2], F2; zero-transfer: yes; G0 ranks 1+1");
    CHECK(e1_summary(g0_splitting(fp_galois(2, 1, 2))) == "rings: F4_θ[C2]; surjective-transfer: yes; G0 ranks 1");
    G0Splitting a = g0_splitting(constant_green(Base::prime(2), CyclicGroup(2, 1)));
    REQUIRE(a.total);
    CHECK(*a.total == 2);
    G0Splitting b = g0_splitting(constant_green(Base::prime(2), CyclicGroup(2, 2)));
    REQUIRE(b.total);
    CHECK(*b.total == 3);
    G0Splitting c = g0_splitting(constant_green(Base::prime(2), CyclicGroup(3, 1)));
    REQUIRE(c.total);
    CHECK(*c.total == 2);
    G0Splitting d = g0_splitting(burnside_green(CyclicGroup(2, 1)));
    CHECK_FALSE(d.total);
}

TEST_CASE("K0 of free F2-modules over C2")
{
    // two generators F_0 and F_1, relations none: K0 is A(C2) additively
    GreenFunctor k = constant_green(Base::prime(2), CyclicGroup(2, 1));
    DimensionMatrix D = dim_matrix(k);
    CHECK(D.r == 1);
    CHECK(abs(D.gamma_det()) == 1);
    BurnsideQuotient q = k0_free_fixed_point(2, 1, D.r);
    CHECK(q.ring.rank() == 2);
    CHECK(is_isomorphic(free_module(k, 0).M, k.M).kind == IsoVerdict::Kind::NonIso);
}

TEST_CASE("resolution of the constant integral functor")
{
    for (int p : {2, 3, 5}) {
        ResolutionCheck r = constant_Z_resolution_check(p);
        INFO(r.report.summary());
        CHECK(r.report.ok);
        CHECK(r.k0_class == std::vector<long>{0, 0});
        for (std::size_t i = 0; i < r.terms.size(); ++i) CHECK(check_axioms(r.terms[i]).ok);
    }
}
