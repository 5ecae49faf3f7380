#pragma once
// helpers shared by the unit tests and the acceptance driver

#include <random>

#include "eqalg/kzero.hpp"

namespace eqa::testing {

inline Scalar random_scalar(const Base& B, std::mt19937_64& rng)
{
    std::uniform_int_distribution<unsigned long> d(0, B.size() - 1);
    return Scalar(d(rng));
}

inline Vec random_vec(const Base& B, std::size_t n, std::mt19937_64& rng)
{
    Vec v(n);
    for (auto& x : v) x = random_scalar(B, rng);
    return v;
}

// left multiplications by the ring basis, per level
inline std::vector<std::vector<Matrix>> action_ops(const GreenModule& X)
{
    std::vector<std::vector<Matrix>> ops(X.M.n() + 1);
    for (int s = 0; s <= X.M.n(); ++s)
        for (std::size_t a = 0; a < X.R.rings[s].rank(); ++a) ops[s].push_back(X.action_basis(s, a));
    return ops;
}

// submodule generated by one random element at a random level >= min_level
inline SubGreenModule random_submodule(const GreenModule& X, std::mt19937_64& rng, int min_level = 0)
{
    const int n = X.M.n();
    std::uniform_int_distribution<int> lv(min_level, n);
    const int s = lv(rng);
    std::vector<Matrix> gens(n + 1);
    for (int t = 0; t <= n; ++t) gens[t] = Matrix(X.M.dim(t), 0);
    gens[s] = Matrix::from_cols(X.M.dim(s), {random_vec(X.M.base, X.M.dim(s), rng)});
    return sub_green_module(X, generated_submodule(X.M, gens, action_ops(X)));
}

// L with the trivial C_p action over the prime field: levels L, transfer p = 0
inline GreenFunctor trivial_meadow(int p, int k)
{
    return fixed_point_green(field_ring(gf_default(p, k)), Matrix::identity(k), CyclicGroup(p, 1));
}

// constant F_p -> trivial_meadow(p, k), the prime field inclusion at each level
inline GreenMap prime_inclusion(const GreenFunctor& kk, const GreenFunctor& l)
{
    GreenMap f;
    for (int s = 0; s <= kk.n(); ++s) {
        Matrix m(l.rings[s].rank(), kk.rings[s].rank());
        const Vec& u = l.rings[s].unit;
        for (std::size_t i = 0; i < u.size(); ++i) m(i, 0) = u[i];
        f.maps.push_back(m);
    }
    return f;
}

inline bool levelwise_injective(const MackeyFunctor& M, const MackeyMorphism& f)
{
    for (int s = 0; s <= M.n(); ++s)
        if (rank(M.base, f.maps[s]) != M.dim(s)) return false;
    return true;
}

}  // namespace eqa::testing

namespace eqa::testing {

// X modulo the submodule spanned by spans[s]
inline GreenModule quotient_module(const GreenModule& X, const std::vector<Matrix>& spans)
{
    QuotFunctor q = quotient_functor(X.M, spans);
    GreenModule out;
    out.R = X.R;
    out.M = q.Q;
    const Base& B = X.M.base;
    for (int s = 0; s <= X.M.n(); ++s) {
        const std::size_t d = q.Q.dim(s), rs = X.R.rings[s].rank();
        Matrix act(d, rs * d);
        for (std::size_t a = 0; a < rs; ++a) {
            Matrix A = mul(B, q.proj[s], mul(B, X.action_basis(s, a), q.lift[s]));
            for (std::size_t u = 0; u < d; ++u)
                for (std::size_t v = 0; v < d; ++v) act(u, a * d + v) = A(u, v);
        }
        out.act.push_back(q.Q.levels[s].reduce_cols(act));
    }
    return out;
}

// f is a Mackey map that commutes with the module actions
inline bool is_module_map(const GreenModule& X, const GreenModule& Y, const MackeyMorphism& f)
{
    if (!check_morphism(X.M, Y.M, f).ok) return false;
    const Base& B = X.M.base;
    for (const auto& c : module_constraints(X, Y))
        if (!Y.M.levels[c.u].maps_equal(mul(B, f.maps[c.u], c.A), mul(B, c.B, f.maps[c.v]))) return false;
    return true;
}

}  // namespace eqa::testing
