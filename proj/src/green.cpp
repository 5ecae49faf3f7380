#include "eqalg/green.hpp"

#include <functional>
#include <stdexcept>

namespace eqa {

static std::string lvl(int s) { return std::to_string(s); }

Matrix GreenModule::action_basis(int s, std::size_t a) const
{
    const std::size_t d = M.dim(s);
    Matrix A(d, d);
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t i = 0; i < d; ++i) A(i, b) = act[s](i, a * d + b);
    return A;
}

Matrix GreenModule::action(int s, const Vec& r) const
{
    const Base& B = M.base;
    const std::size_t d = M.dim(s);
    Matrix A(d, d);
    for (std::size_t a = 0; a < r.size(); ++a)
        if (r[a] != 0) A = add(B, A, scale(B, r[a], action_basis(s, a)));
    return M.levels[s].reduce_cols(A);
}

GreenFunctor make_green(MackeyFunctor M, std::vector<BasedRing> rings)
{
    if (rings.size() != M.levels.size()) throw std::invalid_argument("make_green: one ring per level required");
    for (int s = 0; s <= M.n(); ++s)
        if (!(rings[s].group == M.levels[s]))
            throw std::invalid_argument("make_green: ring " + lvl(s) + " does not match level group");
    return GreenFunctor{std::move(M), std::move(rings)};
}

static void expect_vec(Report& rep, const FPModule& X, const Vec& a, const Vec& b, const std::string& what)
{
    if (!X.equal(a, b)) rep.fail(what);
}

Report check_green(const GreenFunctor& R)
{
    Report rep = check_axioms(R.M);
    const MackeyFunctor& M = R.M;
    const Base& B = M.base;
    const int n = M.n();
    for (int s = 0; s <= n; ++s) {
        if (!(R.rings[s].group == M.levels[s])) rep.fail("ring " + lvl(s) + " does not match level group");
        Report r = based_ring_check(R.rings[s], true);
        rep.merge(r, "level " + lvl(s) + ": ");
    }
    if (!rep.ok) return rep;
    for (int s = 0; s <= n; ++s) {
        if (!is_ring_hom(R.rings[s], R.rings[s], M.weyl[s])) rep.fail("weyl_" + lvl(s) + " is not a ring map");
        if (s < n && !is_ring_hom(R.rings[s + 1], R.rings[s], M.res[s]))
            rep.fail("res_" + lvl(s) + " is not a ring map");
    }
    // Frobenius reciprocity at adjacent levels, plus composite transfers
    for (int h = 1; h <= n; ++h)
        for (int t = h - 1; t >= 0; --t) {
            if (t < h - 1 && n > 3) break;
            Matrix T = tr_chain(M, t, h), Rs = res_chain(M, h, t);
            const BasedRing &Rt = R.rings[t], &Rh = R.rings[h];
            for (std::size_t a = 0; a < Rt.rank(); ++a)
                for (std::size_t b = 0; b < Rh.rank(); ++b) {
                    Vec x = unit_vec(Rt.rank(), a), y = unit_vec(Rh.rank(), b);
                    Vec trx = mul(B, T, x), resy = mul(B, Rs, y);
                    expect_vec(rep, Rh.group, Rh.product(trx, y), mul(B, T, Rt.product(x, resy)),
                               "reciprocity Tr^" + lvl(h) + "_" + lvl(t) + "(x)y on basis (" + std::to_string(a) +
                                   "," + std::to_string(b) + ")");
                    expect_vec(rep, Rh.group, Rh.product(y, trx), mul(B, T, Rt.product(resy, x)),
                               "reciprocity y Tr^" + lvl(h) + "_" + lvl(t) + "(x) on basis (" + std::to_string(b) +
                                   "," + std::to_string(a) + ")");
                }
        }
    return rep;
}

Report check_green_module(const GreenModule& X)
{
    Report rep = check_axioms(X.M);
    const MackeyFunctor& M = X.M;
    const GreenFunctor& R = X.R;
    const Base& B = M.base;
    const int n = M.n();
    if (R.M.G != M.G || R.M.levels.size() != M.levels.size()) {
        rep.fail("module and ring live over different groups");
        return rep;
    }
    for (int s = 0; s <= n; ++s)
        if (X.act[s].rows != M.dim(s) || X.act[s].cols != R.rings[s].rank() * M.dim(s)) {
            rep.fail("action tensor " + lvl(s) + " has wrong shape");
            return rep;
        }
    if (!rep.ok) return rep;
    for (int s = 0; s <= n; ++s) {
        const BasedRing& Rs = R.rings[s];
        const FPModule& Ms = M.levels[s];
        std::vector<Matrix> A;
        for (std::size_t a = 0; a < Rs.rank(); ++a) {
            A.push_back(X.action_basis(s, a));
            if (!map_well_defined(Ms, Ms, A.back()))
                rep.fail("action of basis element " + std::to_string(a) + " on level " + lvl(s) + " not well defined");
        }
        if (!Ms.maps_equal(X.action(s, Rs.unit), Matrix::identity(Ms.size())))
            rep.fail("unit does not act as identity on level " + lvl(s));
        for (std::size_t a = 0; a < Rs.rank(); ++a)
            for (std::size_t b = 0; b < Rs.rank(); ++b)
                if (!Ms.maps_equal(mul(B, A[a], A[b]), X.action(s, Rs.basis_product(a, b))))
                    rep.fail("action not associative on level " + lvl(s) + " basis (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
        for (std::size_t a = 0; a < Rs.rank(); ++a)
            if (!Ms.maps_equal(mul(B, M.weyl[s], A[a]),
                               mul(B, X.action(s, mul(B, R.M.weyl[s], unit_vec(Rs.rank(), a))), M.weyl[s])))
                rep.fail("weyl not semilinear on level " + lvl(s) + " basis element " + std::to_string(a));
        if (s == n) continue;
        const BasedRing& Ru = R.rings[s + 1];
        const FPModule& Mu = M.levels[s + 1];
        for (std::size_t a = 0; a < Ru.rank(); ++a) {
            Vec r = unit_vec(Ru.rank(), a);
            Matrix Au = X.action(s + 1, r);
            Matrix Ad = X.action(s, mul(B, R.M.res[s], r));
            // Res(r m) = Res(r) Res(m)
            if (!Ms.maps_equal(mul(B, M.res[s], Au), mul(B, Ad, M.res[s])))
                rep.fail("res_" + lvl(s) + "(r m) != res(r) res(m) for ring basis " + std::to_string(a));
            // Tr(Res(r) m) = r Tr(m)
            if (!Mu.maps_equal(mul(B, M.tr[s], Ad), mul(B, Au, M.tr[s])))
                rep.fail("tr_" + lvl(s) + "(res(r) m) != r tr(m) for ring basis " + std::to_string(a));
        }
        for (std::size_t a = 0; a < Rs.rank(); ++a) {
            Vec r = unit_vec(Rs.rank(), a);
            // Tr(r Res(m)) = Tr(r) m
            if (!Mu.maps_equal(mul(B, M.tr[s], mul(B, A[a], M.res[s])), X.action(s + 1, mul(B, R.M.tr[s], r))))
                rep.fail("tr_" + lvl(s) + "(r res(m)) != tr(r) m for ring basis " + std::to_string(a));
        }
    }
    return rep;
}

GreenModule regular_module(const GreenFunctor& R)
{
    GreenModule X;
    X.R = R;
    X.M = R.M;
    for (const auto& r : R.rings) X.act.push_back(r.mult);
    return X;
}

std::vector<HomConstraint> module_constraints(const GreenModule& M, const GreenModule& N)
{
    std::vector<HomConstraint> c;
    for (int s = 0; s <= M.M.n(); ++s)
        for (std::size_t a = 0; a < M.R.rings[s].rank(); ++a) c.push_back({s, s, M.action_basis(s, a), N.action_basis(s, a)});
    return c;
}

GreenFunctor constant_green(const Base& B, const CyclicGroup& G)
{
    MackeyFunctor M = constant_mackey(FPModule::free(B, 1), G);
    return make_green(M, std::vector<BasedRing>(G.n + 1, scalar_ring(B)));
}

BasedRing subring(const BasedRing& L, const Matrix& incl)
{
    const Base& B = L.base();
    const std::size_t k = incl.cols;
    SubModule S{FPModule::free(B, k), incl};
    if (!L.group.is_free()) S = image(L.group, incl);
    auto coords = [&](const Vec& v) {
        auto c = coords_in(L.group, S, v);
        if (!c) throw std::invalid_argument("subring: span is not closed under multiplication");
        return *c;
    };
    Matrix m(k, k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) m.set_col(a * k + b, coords(L.product(incl.col(a), incl.col(b))));
    Vec u = coords(L.unit);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < k; ++a) labels.push_back(S.S.equal(unit_vec(k, a), u) ? "1" : "f" + std::to_string(a));
    if (incl == Matrix::identity(L.rank())) labels = L.labels;
    return make_based_ring(S.S, m, u, labels);
}

GreenFunctor fixed_point_green(const BasedRing& L, const Matrix& theta, const CyclicGroup& G)
{
    if (!is_ring_hom(L, L, theta)) throw std::invalid_argument("fixed_point_green: action is not a ring automorphism");
    FixedPointData d = fixed_point_data(L.group, theta, G);
    std::vector<BasedRing> rings;
    for (int s = 0; s <= G.n; ++s) {
        BasedRing r = subring(L, d.incl[s]);
        r.group = d.M.levels[s];
        rings.push_back(r);
    }
    return make_green(d.M, rings);
}

GreenFunctor fp_galois(int p, int n, int k)
{
    CyclicGroup G(p, n);
    long kk = k;
    while (kk > 1 && kk % p == 0) kk /= p;
    if (k < 1 || kk != 1 || G.order() % k != 0)
        throw std::invalid_argument("fp_galois: degree " + std::to_string(k) + " is not a power of " +
                                    std::to_string(p) + " dividing " + std::to_string(G.order()));
    Field F = gf_default(p, k);
    return fixed_point_green(field_ring(F), frobenius_matrix(F), G);
}

GreenFunctor burnside_green(const CyclicGroup& G, const Base& B)
{
    MackeyFunctor M = burnside_mackey(G, B);
    std::vector<BasedRing> rings;
    for (int s = 0; s <= G.n; ++s) {
        BasedRing A = burnside_ring(CyclicGroup(G.p, s));
        rings.push_back(make_based_ring(FPModule::free(B, A.rank()), reduce(B, A.mult), reduce(B, Matrix::from_cols(A.rank(), {A.unit})).col(0), A.labels));
    }
    return make_green(M, rings);
}

TwistedGroupRing twisted_group_ring(const BasedRing& R, int p, int m, const Matrix& theta)
{
    const Base& B = R.base();
    if (!B.is_field()) throw std::invalid_argument("twisted_group_ring: coefficient ring must be over a field");
    CyclicGroup W(p, m);
    const std::size_t r = R.rank();
    const std::size_t w = static_cast<std::size_t>(W.order());
    if (!is_ring_hom(R, R, theta)) throw std::invalid_argument("twisted_group_ring: theta is not a ring map");
    if (power(B, theta, w) != Matrix::identity(r))
        throw std::invalid_argument("twisted_group_ring: theta^" + std::to_string(w) + " is not the identity");
    std::vector<Matrix> tp{Matrix::identity(r)};
    for (std::size_t j = 1; j < w; ++j) tp.push_back(mul(B, theta, tp.back()));
    const std::size_t N = r * w;
    Matrix mult(N, N * N);
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t j = 0; j < w; ++j)
                for (std::size_t b = 0; b < r; ++b) {
                    // (e_a w^i)(e_b w^j) = e_a theta^i(e_b) w^{i+j}
                    Vec c = R.product(unit_vec(r, a), tp[i].col(b));
                    const std::size_t k = (i + j) % w;
                    for (std::size_t c0 = 0; c0 < r; ++c0) mult(k * r + c0, (i * r + a) * N + j * r + b) = c[c0];
                }
    Vec unit(N);
    for (std::size_t a = 0; a < r; ++a) unit[a] = R.unit[a];
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < w; ++j)
        for (std::size_t a = 0; a < r; ++a)
            labels.push_back(j == 0 ? R.labels[a] : R.labels[a] + "w" + (j == 1 ? "" : "^" + std::to_string(j)));
    TwistedGroupRing T;
    T.coefficient = R;
    T.p = p;
    T.m = m;
    T.theta = theta;
    T.ring = make_based_ring(FPModule::free(B, N), mult, unit, labels);
    return T;
}

TwistedGroupRing level_twisted_ring(const GreenFunctor& R, int s)
{
    if (!R.base().is_field()) throw std::invalid_argument("level_twisted_ring: base Z is unsupported");
    return twisted_group_ring(R.rings[s], R.M.G.p, R.n() - s, R.M.weyl[s]);
}

// --- box products -----------------------------------------------------------

namespace {

Vec tensor_vec(const Base& B, const Vec& a, const Vec& b)
{
    Vec r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) r[i * b.size() + j] = B.mul(a[i], b[j]);
    return r;
}

struct Layout {
    std::vector<std::vector<std::size_t>> offset;
    std::vector<std::size_t> gens;
};

Layout box_layout(const MackeyFunctor& M, const MackeyFunctor& N)
{
    Layout L;
    for (int s = 0; s <= M.n(); ++s) {
        std::vector<std::size_t> off;
        std::size_t g = 0;
        for (int t = 0; t <= s; ++t) {
            off.push_back(g);
            g += M.dim(t) * N.dim(t);
        }
        L.offset.push_back(off);
        L.gens.push_back(g);
    }
    return L;
}

// relations common to box products and base change: Weyl orbits, reciprocity, torsion
std::vector<Vec> box_relations(const MackeyFunctor& M, const MackeyFunctor& N, const Layout& L, int s)
{
    const Base& B = M.base;
    const int n = M.n();
    const std::size_t G = L.gens[s];
    std::vector<Vec> rel;
    auto place = [&](Vec& r, int t, const Vec& x, const Scalar& sign) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) r[L.offset[s][t] + i] = B.add(r[L.offset[s][t] + i], B.mul(sign, x[i]));
    };
    const Scalar one = 1, minus = B.neg(1);
    for (int t = 0; t <= s; ++t) {
        const std::size_t a = M.dim(t), b = N.dim(t);
        if (t < s) {
            Matrix wm = weyl_pow(M, t, static_cast<std::uint64_t>(M.G.ipow(n - s)));
            Matrix wn = weyl_pow(N, t, static_cast<std::uint64_t>(M.G.ipow(n - s)));
            for (std::size_t i = 0; i < a; ++i)
                for (std::size_t j = 0; j < b; ++j) {
                    Vec r(G);
                    place(r, t, tensor_vec(B, wm.col(i), wn.col(j)), one);
                    place(r, t, tensor_vec(B, unit_vec(a, i), unit_vec(b, j)), minus);
                    if (!vzero(r)) rel.push_back(r);
                }
        }
        if (t >= 1) {
            // Tr_t(tr(m) (x) n) = Tr_{t-1}(m (x) res(n)), and the mirror image
            for (std::size_t i = 0; i < M.dim(t - 1); ++i)
                for (std::size_t j = 0; j < b; ++j) {
                    Vec r(G);
                    place(r, t, tensor_vec(B, M.tr[t - 1].col(i), unit_vec(b, j)), one);
                    place(r, t - 1, tensor_vec(B, unit_vec(M.dim(t - 1), i), N.res[t - 1].col(j)), minus);
                    if (!vzero(r)) rel.push_back(r);
                }
            for (std::size_t i = 0; i < a; ++i)
                for (std::size_t j = 0; j < N.dim(t - 1); ++j) {
                    Vec r(G);
                    place(r, t, tensor_vec(B, unit_vec(a, i), N.tr[t - 1].col(j)), one);
                    place(r, t - 1, tensor_vec(B, M.res[t - 1].col(i), unit_vec(N.dim(t - 1), j)), minus);
                    if (!vzero(r)) rel.push_back(r);
                }
        }
        if (!B.is_field())
            for (std::size_t i = 0; i < a; ++i)
                for (std::size_t j = 0; j < b; ++j) {
                    Scalar d = gcd(M.levels[t].tors[i], N.levels[t].tors[j]);
                    if (M.levels[t].tors[i] == 0) d = N.levels[t].tors[j];
                    if (N.levels[t].tors[j] == 0) d = M.levels[t].tors[i];
                    if (d == 0) continue;
                    Vec r(G);
                    r[L.offset[s][t] + i * b + j] = d;
                    rel.push_back(r);
                }
    }
    return rel;
}

// structure maps on generators
struct GenMaps {
    std::vector<Matrix> res, tr, weyl;
};

GenMaps box_gen_maps(const MackeyFunctor& M, const MackeyFunctor& N, const Layout& L)
{
    const Base& B = M.base;
    const int n = M.n();
    GenMaps g;
    for (int s = 0; s <= n; ++s) {
        Matrix W(L.gens[s], L.gens[s]);
        for (int t = 0; t <= s; ++t) {
            Matrix k = kron(B, M.weyl[t], N.weyl[t]);
            for (std::size_t i = 0; i < k.rows; ++i)
                for (std::size_t j = 0; j < k.cols; ++j) W(L.offset[s][t] + i, L.offset[s][t] + j) = k(i, j);
        }
        g.weyl.push_back(W);
        if (s == n) continue;
        Matrix T(L.gens[s + 1], L.gens[s]);
        for (std::size_t i = 0; i < L.gens[s]; ++i) T(i, i) = 1;  // offsets agree for t <= s
        g.tr.push_back(T);
        Matrix R(L.gens[s], L.gens[s + 1]);
        for (int t = 0; t <= s; ++t) {
            Matrix wm = weyl_pow(M, t, static_cast<std::uint64_t>(M.G.ipow(n - s - 1)));
            Matrix wn = weyl_pow(N, t, static_cast<std::uint64_t>(M.G.ipow(n - s - 1)));
            Matrix step = kron(B, wm, wn), acc = Matrix::identity(step.rows), sum(step.rows, step.cols);
            for (int i = 0; i < M.G.p; ++i) {
                sum = add(B, sum, acc);
                acc = mul(B, step, acc);
            }
            for (std::size_t i = 0; i < sum.rows; ++i)
                for (std::size_t j = 0; j < sum.cols; ++j) R(L.offset[s][t] + i, L.offset[s + 1][t] + j) = sum(i, j);
        }
        Matrix k = kron(B, M.res[s], N.res[s]);
        for (std::size_t i = 0; i < k.rows; ++i)
            for (std::size_t j = 0; j < k.cols; ++j) R(L.offset[s][s] + i, L.offset[s + 1][s + 1] + j) = k(i, j);
        g.res.push_back(R);
    }
    return g;
}

struct Presented {
    MackeyFunctor P;
    std::vector<Matrix> proj, lift;
};

Presented present_functor(const MackeyFunctor& M, const Layout& L, const GenMaps& g, const std::vector<std::vector<Vec>>& rels)
{
    const Base& B = M.base;
    const int n = M.n();
    std::vector<QuotientModule> q;
    for (int s = 0; s <= n; ++s) q.push_back(present(B, L.gens[s], Matrix::from_cols(L.gens[s], rels[s])));
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        levels.push_back(q[s].Q);
        weyl.push_back(mul(B, q[s].proj, mul(B, g.weyl[s], q[s].lift)));
        if (s < n) {
            res.push_back(mul(B, q[s].proj, mul(B, g.res[s], q[s + 1].lift)));
            tr.push_back(mul(B, q[s + 1].proj, mul(B, g.tr[s], q[s].lift)));
        }
    }
    Presented out;
    out.P = make_mackey(M.G, B, std::move(levels), std::move(res), std::move(tr), std::move(weyl));
    for (auto& x : q) {
        out.proj.push_back(x.proj);
        out.lift.push_back(x.lift);
    }
    return out;
}

}  // namespace

BoxProduct box_product(const MackeyFunctor& M, const MackeyFunctor& N)
{
    if (M.G != N.G || !(M.base == N.base)) throw std::invalid_argument("box_product: group or base mismatch");
    if (M.n() > 1 && !M.base.is_field())
        throw std::invalid_argument("box_product: base Z is unsupported for n > 1");
    Layout L = box_layout(M, N);
    std::vector<std::vector<Vec>> rels;
    for (int s = 0; s <= M.n(); ++s) rels.push_back(box_relations(M, N, L, s));
    Presented pr = present_functor(M, L, box_gen_maps(M, N, L), rels);
    BoxProduct bp;
    bp.P = std::move(pr.P);
    bp.offset = L.offset;
    bp.gens = L.gens;
    bp.proj = std::move(pr.proj);
    bp.lift = std::move(pr.lift);
    return bp;
}

MackeyFunctor box_product_cp(const MackeyFunctor& M, const MackeyFunctor& N)
{
    if (M.n() != 1) return box_product_general(M, N);
    return box_product(M, N).P;
}

MackeyFunctor box_product_general(const MackeyFunctor& M, const MackeyFunctor& N) { return box_product(M, N).P; }

MackeyMorphism box_swap(const MackeyFunctor& M, const MackeyFunctor& N, const BoxProduct& MN, const BoxProduct& NM)
{
    const Base& B = M.base;
    MackeyMorphism f;
    for (int s = 0; s <= M.n(); ++s) {
        Matrix S(NM.gens[s], MN.gens[s]);
        for (int t = 0; t <= s; ++t)
            for (std::size_t i = 0; i < M.dim(t); ++i)
                for (std::size_t j = 0; j < N.dim(t); ++j)
                    S(NM.offset[s][t] + j * M.dim(t) + i, MN.offset[s][t] + i * N.dim(t) + j) = 1;
        f.maps.push_back(NM.P.levels[s].reduce_cols(mul(B, NM.proj[s], mul(B, S, MN.lift[s]))));
    }
    return f;
}

MackeyMorphism box_unit_map(const MackeyFunctor& M, const BoxProduct& AM)
{
    const Base& B = M.base;
    MackeyFunctor A = burnside_mackey(M.G, B);
    MackeyMorphism f;
    for (int s = 0; s <= M.n(); ++s) {
        Matrix F(M.dim(s), AM.gens[s]);
        for (int t = 0; t <= s; ++t)
            for (int u = 0; u <= t; ++u) {
                // [C_{p^t}/C_{p^u}] (x) m  ->  Tr_u^s Res^t_u m
                Matrix img = mul(B, tr_chain(M, u, s), res_chain(M, t, u));
                for (std::size_t j = 0; j < M.dim(t); ++j)
                    for (std::size_t i = 0; i < M.dim(s); ++i)
                        F(i, AM.offset[s][t] + static_cast<std::size_t>(u) * M.dim(t) + j) = img(i, j);
            }
        f.maps.push_back(M.levels[s].reduce_cols(mul(B, F, AM.lift[s])));
    }
    (void)A;
    return f;
}

Report check_green_map(const GreenFunctor& k, const GreenFunctor& l, const GreenMap& f)
{
    Report rep = check_morphism(k.M, l.M, MackeyMorphism{f.maps});
    for (int s = 0; s <= k.n(); ++s)
        if (!is_ring_hom(k.rings[s], l.rings[s], f.maps[s])) rep.fail("level " + lvl(s) + " map is not a ring map");
    return rep;
}

BaseChange base_change_cp(const GreenFunctor& k, const GreenFunctor& l, const GreenMap& f, const GreenModule& X)
{
    if (k.n() != 1) throw std::invalid_argument("base_change_cp: group must be C_p");
    Report chk = check_green_map(k, l, f);
    if (!chk.ok) throw std::invalid_argument("base_change_cp: not a Green map: " + chk.failures[0]);
    const MackeyFunctor& M = X.M;
    const MackeyFunctor& N = l.M;
    const Base& B = M.base;
    Layout L = box_layout(M, N);
    std::vector<std::vector<Vec>> rels;
    for (int s = 0; s <= 1; ++s) {
        auto r = box_relations(M, N, L, s);
        // k-balancing in every summand: (a m) (x) x = m (x) f(a) x
        for (int t = 0; t <= s; ++t) {
            const std::size_t a = M.dim(t), b = N.dim(t);
            for (std::size_t e = 0; e < k.rings[t].rank(); ++e) {
                Matrix Am = X.action_basis(t, e);
                Matrix Al = l.rings[t].left_mult(mul(B, f.maps[t], unit_vec(k.rings[t].rank(), e)));
                for (std::size_t i = 0; i < a; ++i)
                    for (std::size_t j = 0; j < b; ++j) {
                        Vec v = tensor_vec(B, Am.col(i), unit_vec(b, j));
                        Vec w = tensor_vec(B, unit_vec(a, i), Al.col(j));
                        Vec rr(L.gens[s]);
                        for (std::size_t c = 0; c < v.size(); ++c) rr[L.offset[s][t] + c] = B.sub(v[c], w[c]);
                        if (!vzero(rr)) r.push_back(rr);
                    }
            }
        }
        rels.push_back(std::move(r));
    }
    Presented pr = present_functor(M, L, box_gen_maps(M, N, L), rels);
    BaseChange bc;
    bc.module.R = l;
    bc.module.M = pr.P;
    bc.offset = L.offset;
    bc.proj = pr.proj;
    bc.lift = pr.lift;
    // lambda . [m (x) x]_t = [m (x) Res^s_t(lambda) x]_t
    for (int s = 0; s <= 1; ++s) {
        const std::size_t d = pr.P.dim(s), r = l.rings[s].rank();
        Matrix act(d, r * d);
        for (std::size_t e = 0; e < r; ++e) {
            Matrix G(L.gens[s], L.gens[s]);
            for (int t = 0; t <= s; ++t) {
                Vec lam = mul(B, res_chain(N, s, t), unit_vec(r, e));
                Matrix Al = l.rings[t].left_mult(lam);
                Matrix K = kron(B, Matrix::identity(M.dim(t)), Al);
                for (std::size_t i = 0; i < K.rows; ++i)
                    for (std::size_t j = 0; j < K.cols; ++j) G(L.offset[s][t] + i, L.offset[s][t] + j) = K(i, j);
            }
            Matrix A = mul(B, pr.proj[s], mul(B, G, pr.lift[s]));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) act(i, e * d + j) = A(i, j);
        }
        bc.module.act.push_back(act);
    }
    return bc;
}

MackeyMorphism base_change_map(const BaseChange& BM, const BaseChange& BN, const MackeyMorphism& g,
                               const GreenModule& M, const GreenModule& N)
{
    const Base& B = M.M.base;
    const MackeyFunctor& Lf = BM.module.R.M;
    MackeyMorphism out;
    for (int s = 0; s <= M.M.n(); ++s) {
        Matrix G(BN.lift[s].rows, BM.lift[s].rows);
        for (int t = 0; t <= s; ++t) {
            Matrix K = kron(B, g.maps[t], Matrix::identity(Lf.dim(t)));
            for (std::size_t i = 0; i < K.rows; ++i)
                for (std::size_t j = 0; j < K.cols; ++j) G(BN.offset[s][t] + i, BM.offset[s][t] + j) = K(i, j);
        }
        out.maps.push_back(BN.module.M.levels[s].reduce_cols(mul(B, BN.proj[s], mul(B, G, BM.lift[s]))));
    }
    (void)N;
    return out;
}

}  // namespace eqa
