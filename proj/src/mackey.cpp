#include "eqalg/mackey.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace eqa {

std::vector<std::size_t> MackeyFunctor::dims() const
{
    std::vector<std::size_t> d;
    for (const auto& l : levels) d.push_back(l.size());
    return d;
}

bool MackeyFunctor::is_zero() const
{
    return std::all_of(levels.begin(), levels.end(), [](const FPModule& l) { return l.is_zero(); });
}

static std::string lvl(int s) { return std::to_string(s); }

MackeyFunctor make_mackey(const CyclicGroup& G, const Base& B, std::vector<FPModule> levels, std::vector<Matrix> res,
                          std::vector<Matrix> tr, std::vector<Matrix> weyl)
{
    const std::size_t L = static_cast<std::size_t>(G.n) + 1;
    if (levels.size() != L || res.size() != L - 1 || tr.size() != L - 1 || weyl.size() != L)
        throw std::invalid_argument("make_mackey: wrong number of levels or maps");
    for (std::size_t s = 0; s < L; ++s) {
        if (!(levels[s].base == B)) throw std::invalid_argument("make_mackey: level " + lvl(int(s)) + " base mismatch");
        const std::size_t d = levels[s].size();
        if (weyl[s].rows != d || weyl[s].cols != d)
            throw std::invalid_argument("make_mackey: weyl " + lvl(int(s)) + " has wrong shape");
        weyl[s] = levels[s].reduce_cols(reduce(B, weyl[s]));
        if (s + 1 < L) {
            const std::size_t e = levels[s + 1].size();
            if (res[s].rows != d || res[s].cols != e)
                throw std::invalid_argument("make_mackey: res " + lvl(int(s)) + " has wrong shape");
            if (tr[s].rows != e || tr[s].cols != d)
                throw std::invalid_argument("make_mackey: tr " + lvl(int(s)) + " has wrong shape");
            res[s] = levels[s].reduce_cols(reduce(B, res[s]));
            tr[s] = levels[s + 1].reduce_cols(reduce(B, tr[s]));
        }
    }
    MackeyFunctor M;
    M.G = G;
    M.base = B;
    M.levels = std::move(levels);
    M.res = std::move(res);
    M.tr = std::move(tr);
    M.weyl = std::move(weyl);
    return M;
}

MackeyFunctor zero_mackey(const CyclicGroup& G, const Base& B)
{
    const std::size_t L = static_cast<std::size_t>(G.n) + 1;
    return make_mackey(G, B, std::vector<FPModule>(L, FPModule::free(B, 0)), std::vector<Matrix>(L - 1),
                       std::vector<Matrix>(L - 1), std::vector<Matrix>(L));
}

Matrix res_chain(const MackeyFunctor& M, int h, int s)
{
    if (s > h) throw std::invalid_argument("res_chain: target above source");
    Matrix R = Matrix::identity(M.dim(h));
    for (int t = h - 1; t >= s; --t) R = mul(M.base, M.res[t], R);
    return M.levels[s].reduce_cols(R);
}

Matrix tr_chain(const MackeyFunctor& M, int t, int h)
{
    if (t > h) throw std::invalid_argument("tr_chain: source above target");
    Matrix T = Matrix::identity(M.dim(t));
    for (int u = t; u < h; ++u) T = mul(M.base, M.tr[u], T);
    return M.levels[h].reduce_cols(T);
}

Matrix weyl_pow(const MackeyFunctor& M, int s, std::uint64_t e)
{
    std::uint64_t ord = static_cast<std::uint64_t>(M.G.ipow(M.n() - s));
    return M.levels[s].reduce_cols(power(M.base, M.weyl[s], e % ord));
}

// first column where two maps into `target` disagree, or -1
static long first_diff(const FPModule& target, const Matrix& f, const Matrix& g)
{
    Matrix a = target.reduce_cols(f), b = target.reduce_cols(g);
    for (std::size_t j = 0; j < a.cols; ++j)
        for (std::size_t i = 0; i < a.rows; ++i)
            if (a(i, j) != b(i, j)) return static_cast<long>(j);
    return -1;
}

static void expect_eq(Report& rep, const FPModule& target, const Matrix& f, const Matrix& g, const std::string& what)
{
    long j = first_diff(target, f, g);
    if (j >= 0) rep.fail(what + " fails on basis vector e" + std::to_string(j));
}

Report check_axioms(const MackeyFunctor& M)
{
    Report rep;
    const int n = M.n();
    const Base& B = M.base;
    const int p = M.G.p;
    for (int s = 0; s <= n; ++s) {
        const FPModule& Ms = M.levels[s];
        if (!map_well_defined(Ms, Ms, M.weyl[s])) rep.fail("weyl_" + lvl(s) + " not well defined");
        if (s < n) {
            if (!map_well_defined(M.levels[s + 1], Ms, M.res[s])) rep.fail("res_" + lvl(s) + " not well defined");
            if (!map_well_defined(Ms, M.levels[s + 1], M.tr[s])) rep.fail("tr_" + lvl(s) + " not well defined");
        }
    }
    if (!rep.ok) return rep;
    for (int s = 0; s <= n; ++s) {
        const FPModule& Ms = M.levels[s];
        Matrix id = Matrix::identity(M.dim(s));
        std::uint64_t ord = static_cast<std::uint64_t>(M.G.ipow(n - s));
        expect_eq(rep, Ms, power(B, M.weyl[s], ord), id, "weyl_" + lvl(s) + "^" + std::to_string(ord) + " = id");
        if (s == n) expect_eq(rep, Ms, M.weyl[s], id, "weyl_" + lvl(n) + " = id");
        if (s < n) {
            expect_eq(rep, Ms, mul(B, M.res[s], M.weyl[s + 1]), mul(B, M.weyl[s], M.res[s]),
                      "res_" + lvl(s) + " weyl = weyl res_" + lvl(s));
            expect_eq(rep, M.levels[s + 1], mul(B, M.tr[s], M.weyl[s]), mul(B, M.weyl[s + 1], M.tr[s]),
                      "tr_" + lvl(s) + " weyl = weyl tr_" + lvl(s));
        }
    }
    if (!rep.ok) return rep;
    // double coset formula Res^h_s Tr^h_t for all s, t <= h
    for (int h = 1; h <= n; ++h)
        for (int s = 0; s <= h; ++s)
            for (int t = 0; t <= h; ++t) {
                if (s == h || t == h) continue;  // identities
                Matrix lhs = mul(B, res_chain(M, h, s), tr_chain(M, t, h));
                Matrix rhs(M.dim(s), M.dim(t));
                const std::uint64_t step = static_cast<std::uint64_t>(M.G.ipow(n - h));
                if (t <= s) {
                    // sum over H/K of Tr^s_t c_gamma
                    const long cnt = M.G.ipow(h - s);
                    Matrix T = tr_chain(M, t, s);
                    for (long i = 0; i < cnt; ++i)
                        rhs = add(B, rhs, mul(B, T, weyl_pow(M, t, step * static_cast<std::uint64_t>(i))));
                } else {
                    const long cnt = M.G.ipow(h - t);
                    Matrix R = res_chain(M, t, s);
                    for (long i = 0; i < cnt; ++i)
                        rhs = add(B, rhs, mul(B, weyl_pow(M, s, step * static_cast<std::uint64_t>(i)), R));
                }
                expect_eq(rep, M.levels[s], lhs, rhs,
                          "double coset Res^" + lvl(h) + "_" + lvl(s) + " Tr^" + lvl(h) + "_" + lvl(t));
            }
    (void)p;
    return rep;
}

Report check_cohomological(const MackeyFunctor& M)
{
    Report rep;
    for (int s = 0; s < M.n(); ++s) {
        Matrix lhs = mul(M.base, M.tr[s], M.res[s]);
        Matrix rhs = scale(M.base, M.base.from_int(M.G.p), Matrix::identity(M.dim(s + 1)));
        expect_eq(rep, M.levels[s + 1], lhs, rhs, "tr_" + lvl(s) + " res_" + lvl(s) + " = p");
    }
    return rep;
}

Report check_morphism(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f)
{
    Report rep;
    const int n = M.n();
    if (N.G != M.G || f.maps.size() != M.levels.size()) {
        rep.fail("morphism: group or level count mismatch");
        return rep;
    }
    for (int s = 0; s <= n; ++s)
        if (!map_well_defined(M.levels[s], N.levels[s], f.maps[s])) {
            rep.fail("morphism: level " + lvl(s) + " map has wrong shape or is not well defined");
            return rep;
        }
    const Base& B = M.base;
    for (int s = 0; s <= n; ++s) {
        expect_eq(rep, N.levels[s], mul(B, f.maps[s], M.weyl[s]), mul(B, N.weyl[s], f.maps[s]),
                  "morphism commutes with weyl_" + lvl(s));
        if (s < n) {
            expect_eq(rep, N.levels[s], mul(B, f.maps[s], M.res[s]), mul(B, N.res[s], f.maps[s + 1]),
                      "morphism commutes with res_" + lvl(s));
            expect_eq(rep, N.levels[s + 1], mul(B, f.maps[s + 1], M.tr[s]), mul(B, N.tr[s], f.maps[s]),
                      "morphism commutes with tr_" + lvl(s));
        }
    }
    return rep;
}

MackeyMorphism identity_morphism(const MackeyFunctor& M)
{
    MackeyMorphism f;
    for (const auto& l : M.levels) f.maps.push_back(Matrix::identity(l.size()));
    return f;
}

MackeyMorphism compose(const MackeyFunctor& target, const MackeyMorphism& g, const MackeyMorphism& f)
{
    MackeyMorphism h;
    for (std::size_t s = 0; s < f.maps.size(); ++s)
        h.maps.push_back(target.levels[s].reduce_cols(mul(target.base, g.maps[s], f.maps[s])));
    return h;
}

bool morphisms_equal(const MackeyFunctor& target, const MackeyMorphism& f, const MackeyMorphism& g)
{
    if (f.maps.size() != g.maps.size()) return false;
    for (std::size_t s = 0; s < f.maps.size(); ++s)
        if (!target.levels[s].maps_equal(f.maps[s], g.maps[s])) return false;
    return true;
}

MackeyFunctor constant_mackey(const FPModule& A, const CyclicGroup& G)
{
    const std::size_t L = static_cast<std::size_t>(G.n) + 1;
    const Base& B = A.base;
    Matrix I = Matrix::identity(A.size());
    Matrix P = scale(B, B.from_int(G.p), I);
    return make_mackey(G, B, std::vector<FPModule>(L, A), std::vector<Matrix>(L - 1, I), std::vector<Matrix>(L - 1, P),
                       std::vector<Matrix>(L, I));
}

FixedPointData fixed_point_data(const FPModule& A, const Matrix& rho, const CyclicGroup& G)
{
    const Base& B = A.base;
    const int n = G.n;
    if (rho.rows != A.size() || rho.cols != A.size()) throw std::invalid_argument("fixed_point_mackey: action has wrong shape");
    if (!map_well_defined(A, A, rho)) throw std::invalid_argument("fixed_point_mackey: action not well defined");
    if (!A.maps_equal(power(B, rho, static_cast<std::size_t>(G.order())), Matrix::identity(A.size())))
        throw std::invalid_argument("fixed_point_mackey: action does not have order dividing " +
                                    std::to_string(G.order()));
    std::vector<SubModule> subs;
    for (int s = 0; s <= n; ++s) {
        if (s == 0) {
            subs.push_back(SubModule{A, Matrix::identity(A.size())});
            continue;
        }
        Matrix g = power(B, rho, static_cast<std::size_t>(G.ipow(n - s)));
        subs.push_back(kernel(A, A, sub(B, g, Matrix::identity(A.size()))));
    }
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        levels.push_back(subs[s].S);
        auto w = restrict_map(A, subs[s], subs[s], rho);
        if (!w) throw std::logic_error("fixed_point_mackey: fixed points not stable");
        weyl.push_back(*w);
    }
    for (int s = 0; s < n; ++s) {
        auto r = restrict_map(A, subs[s + 1], subs[s], Matrix::identity(A.size()));
        Matrix norm(A.size(), A.size());
        Matrix step = power(B, rho, static_cast<std::size_t>(G.ipow(n - s - 1)));
        Matrix acc = Matrix::identity(A.size());
        for (int i = 0; i < G.p; ++i) {
            norm = add(B, norm, acc);
            acc = mul(B, step, acc);
        }
        auto t = restrict_map(A, subs[s], subs[s + 1], norm);
        if (!r || !t) throw std::logic_error("fixed_point_mackey: inclusion or norm leaves fixed points");
        res.push_back(*r);
        tr.push_back(*t);
    }
    FixedPointData d;
    d.M = make_mackey(G, B, std::move(levels), std::move(res), std::move(tr), std::move(weyl));
    for (auto& s : subs) d.incl.push_back(s.incl);
    return d;
}

MackeyFunctor fixed_point_mackey(const FPModule& A, const Matrix& rho, const CyclicGroup& G)
{
    return fixed_point_data(A, rho, G).M;
}

MackeyFunctor burnside_mackey(const CyclicGroup& G, const Base& B)
{
    const int n = G.n;
    const int p = G.p;
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        levels.push_back(FPModule::free(B, static_cast<std::size_t>(s) + 1));
        weyl.push_back(Matrix::identity(static_cast<std::size_t>(s) + 1));
    }
    for (int s = 0; s < n; ++s) {
        CyclicGroup H(p, s + 1);
        Matrix r(s + 1, s + 2), t(s + 2, s + 1);
        for (int u = 0; u <= s + 1; ++u) {
            FiniteGSet Y = restrict_gset(FiniteGSet::orbit(H, u), s);
            for (int v = 0; v <= s; ++v) r(v, u) = Y.mult[v];
        }
        for (int u = 0; u <= s; ++u) t(u, u) = 1;  // C_{p^s}/C_{p^u} induces to C_{p^{s+1}}/C_{p^u}
        res.push_back(r);
        tr.push_back(t);
    }
    return make_mackey(G, B, std::move(levels), std::move(res), std::move(tr), std::move(weyl));
}

MackeyFunctor twisted_burnside(int p, long a)
{
    CyclicGroup G(p, 1);
    Base Z = Base::integers();
    Matrix r = Matrix::from_rows({{a, p}});
    Matrix t = Matrix::from_rows({{0}, {1}});
    return make_mackey(G, Z, {FPModule::free(Z, 1), FPModule::free(Z, 2)}, {r}, {t},
                       {Matrix::identity(1), Matrix::identity(2)});
}

MackeyFunctor twisted_burnside_c5() { return twisted_burnside(5, 2); }

FPModule evaluate_at_gset(const MackeyFunctor& M, const FiniteGSet& X)
{
    if (X.G != M.G) throw std::invalid_argument("evaluate_at_gset: group mismatch");
    std::vector<FPModule> parts{FPModule::free(M.base, 0)};
    for (int s = 0; s <= M.n(); ++s)
        for (Scalar k = 0; k < X.mult[s]; ++k) parts.push_back(M.levels[s]);
    return direct_sum(parts);
}

std::vector<HomConstraint> mackey_constraints(const MackeyFunctor& M, const MackeyFunctor& N)
{
    std::vector<HomConstraint> c;
    for (int s = 0; s <= M.n(); ++s) {
        c.push_back({s, s, M.weyl[s], N.weyl[s]});
        if (s < M.n()) {
            c.push_back({s, s + 1, M.res[s], N.res[s]});
            c.push_back({s + 1, s, M.tr[s], N.tr[s]});
        }
    }
    return c;
}

std::vector<MackeyMorphism> hom_basis(const MackeyFunctor& M, const MackeyFunctor& N,
                                      const std::vector<HomConstraint>& extra)
{
    if (M.G != N.G || !(M.base == N.base)) throw std::invalid_argument("hom_basis: group or base mismatch");
    const Base& B = M.base;
    const int L = M.n() + 1;
    std::vector<std::size_t> off(L + 1, 0);
    for (int s = 0; s < L; ++s) off[s + 1] = off[s] + N.dim(s) * M.dim(s);
    const std::size_t U = off[L];
    auto var = [&](int s, std::size_t i, std::size_t j) { return off[s] + i * M.dim(s) + j; };

    struct Row {
        std::vector<std::pair<std::size_t, Scalar>> e;
        Scalar slack;  // Z only: modulus of the equation
    };
    std::vector<Row> rows;
    auto cons = mackey_constraints(M, N);
    cons.insert(cons.end(), extra.begin(), extra.end());
    for (const auto& c : cons) {
        const std::size_t nu = N.dim(c.u), mv = M.dim(c.v), mu = M.dim(c.u), nv = N.dim(c.v);
        for (std::size_t i = 0; i < nu; ++i)
            for (std::size_t j = 0; j < mv; ++j) {
                Row r;
                for (std::size_t k = 0; k < mu; ++k)
                    if (c.A(k, j) != 0) r.e.push_back({var(c.u, i, k), c.A(k, j)});
                for (std::size_t k = 0; k < nv; ++k)
                    if (c.B(i, k) != 0) r.e.push_back({var(c.v, k, j), B.neg(c.B(i, k))});
                if (!B.is_field()) r.slack = N.levels[c.u].tors[i];
                if (!r.e.empty()) rows.push_back(std::move(r));
            }
    }
    if (!B.is_field())
        for (int v = 0; v < L; ++v)
            for (std::size_t j = 0; j < M.dim(v); ++j) {
                const Scalar& d = M.levels[v].tors[j];
                if (d == 0) continue;
                for (std::size_t i = 0; i < N.dim(v); ++i) rows.push_back(Row{{{var(v, i, j), d}}, N.levels[v].tors[i]});
            }

    std::size_t slacks = 0;
    for (const auto& r : rows)
        if (r.slack != 0) ++slacks;
    Matrix E(rows.size(), U + slacks);
    std::size_t sc = U;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        for (const auto& [idx, v] : rows[k].e) {
            if (B.is_field())
                E(k, idx) = B.add(E(k, idx), v);
            else
                E(k, idx) += v;
        }
        if (rows[k].slack != 0) E(k, sc++) = rows[k].slack;
    }
    Matrix K;
    if (rows.empty()) {
        K = Matrix::identity(U);
    } else {
        Matrix Kfull = kernel(B, E);
        K = Matrix(U, Kfull.cols);
        for (std::size_t i = 0; i < U; ++i)
            for (std::size_t j = 0; j < Kfull.cols; ++j) K(i, j) = Kfull(i, j);
        if (!B.is_field()) K = image_basis(B, K);
    }
    std::vector<MackeyMorphism> out;
    for (std::size_t j = 0; j < K.cols; ++j) {
        MackeyMorphism f;
        bool nonzero = false;
        for (int s = 0; s < L; ++s) {
            Matrix fs(N.dim(s), M.dim(s));
            for (std::size_t i = 0; i < N.dim(s); ++i)
                for (std::size_t k = 0; k < M.dim(s); ++k) fs(i, k) = K(var(s, i, k), j);
            fs = N.levels[s].reduce_cols(fs);
            if (!fs.is_zero()) nonzero = true;
            f.maps.push_back(std::move(fs));
        }
        if (nonzero) out.push_back(std::move(f));
    }
    return out;
}

bool is_invertible(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f)
{
    const Base& B = M.base;
    for (int s = 0; s <= M.n(); ++s) {
        const Matrix& fs = f.maps[s];
        if (B.is_field() || (M.levels[s].is_free() && N.levels[s].is_free())) {
            if (fs.rows != fs.cols) return false;
            Scalar d = det(B, fs);
            if (B.is_field() ? d == 0 : (d != 1 && d != -1)) return false;
        } else {
            if (kernel(M.levels[s], N.levels[s], fs).S.size() != 0) return false;
            if (cokernel(N.levels[s], fs).Q.size() != 0) return false;
        }
    }
    return true;
}

std::optional<MackeyMorphism> inverse_morphism(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f)
{
    if (!is_invertible(M, N, f)) return std::nullopt;
    const Base& B = M.base;
    MackeyMorphism g;
    for (int s = 0; s <= M.n(); ++s) {
        const Matrix& fs = f.maps[s];
        if (B.is_field() || (M.levels[s].is_free() && N.levels[s].is_free())) {
            auto inv = inverse(B, fs);
            if (!inv) return std::nullopt;
            g.maps.push_back(*inv);
            continue;
        }
        // f g = id modulo the relations of N
        Matrix A = hstack(fs, N.levels[s].relations());
        auto X = solve(B, A, Matrix::identity(N.dim(s)));
        if (!X) return std::nullopt;
        Matrix gs(M.dim(s), N.dim(s));
        for (std::size_t i = 0; i < M.dim(s); ++i)
            for (std::size_t j = 0; j < N.dim(s); ++j) gs(i, j) = (*X)(i, j);
        g.maps.push_back(M.levels[s].reduce_cols(gs));
    }
    return g;
}

std::string IsoVerdict::kind_name() const
{
    switch (kind) {
    case Kind::Iso: return "iso";
    case Kind::NonIso: return "non-iso";
    default: return "inconclusive";
    }
}

static std::string dims_string(const MackeyFunctor& M)
{
    std::ostringstream os;
    os << "(";
    for (int s = 0; s <= M.n(); ++s) os << (s ? "," : "") << M.dim(s);
    os << ")";
    return os.str();
}

static MackeyMorphism combine(const Base& B, const MackeyFunctor& N, const std::vector<MackeyMorphism>& H,
                              const std::vector<Scalar>& c)
{
    MackeyMorphism f;
    for (int s = 0; s <= N.n(); ++s) {
        Matrix acc(N.dim(s), H.empty() ? 0 : H[0].maps[s].cols);
        for (std::size_t k = 0; k < H.size(); ++k)
            if (c[k] != 0) acc = add(B, acc, scale(B, c[k], H[k].maps[s]));
        f.maps.push_back(N.levels[s].reduce_cols(acc));
    }
    return f;
}

static std::uint64_t ipow_capped(std::uint64_t b, std::size_t e, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

IsoVerdict is_isomorphic(const MackeyFunctor& M, const MackeyFunctor& N, const IsoOptions& opt)
{
    IsoVerdict v;
    if (M.G != N.G || !(M.base == N.base)) throw std::invalid_argument("is_isomorphic: group or base mismatch");
    const Base& B = M.base;
    const int n = M.n();
    for (int s = 0; s <= n; ++s) {
        if (M.levels[s].invariants() != N.levels[s].invariants()) {
            v.kind = IsoVerdict::Kind::NonIso;
            v.level = s;
            v.certificate = B.is_field() ? "dimension vectors " + dims_string(M) + " vs " + dims_string(N)
                                         : "level " + M.G.orbit_name(s) + " groups " + M.levels[s].describe() +
                                               " vs " + N.levels[s].describe();
            return v;
        }
    }
    if (M.is_zero()) {
        v.kind = IsoVerdict::Kind::Iso;
        v.witness = identity_morphism(M);
        v.certificate = "both zero";
        return v;
    }
    auto H = hom_basis(M, N, opt.extra);
    const std::size_t d = H.size();
    if (d == 0) {
        v.kind = IsoVerdict::Kind::NonIso;
        v.certificate = "no nonzero morphisms";
        return v;
    }
    std::mt19937_64 rng(opt.seed);
    auto found = [&](const std::vector<Scalar>& c) {
        MackeyMorphism f = combine(B, N, H, c);
        if (!is_invertible(M, N, f)) return false;
        v.kind = IsoVerdict::Kind::Iso;
        v.witness = std::move(f);
        return true;
    };

    if (B.is_field()) {
        const std::uint64_t q = B.size();
        std::uniform_int_distribution<std::uint64_t> U(0, q - 1);
        std::vector<Scalar> c(d);
        std::size_t used = 0;
        for (; used < std::min<std::size_t>(64, opt.random_trials); ++used) {
            for (auto& x : c) x = static_cast<unsigned long>(U(rng));
            if (found(c)) {
                v.certificate = "invertible morphism found by random search";
                return v;
            }
        }
        const std::uint64_t total = ipow_capped(q, d, opt.exhaustive_limit);
        if (d <= 6 && total <= opt.exhaustive_limit) {
            std::vector<std::uint64_t> digit(d, 0);
            for (std::uint64_t k = 0; k < total; ++k) {
                std::uint64_t t = k;
                for (std::size_t i = 0; i < d; ++i) {
                    c[i] = static_cast<unsigned long>(t % q);
                    t /= q;
                }
                if (found(c)) {
                    v.certificate = "invertible morphism found by exhaustive search";
                    return v;
                }
            }
            v.kind = IsoVerdict::Kind::NonIso;
            v.certificate = "no invertible morphism among all " + std::to_string(total) +
                            " elements of the hom space (dimension " + std::to_string(d) + ")";
            return v;
        }
        for (; used < opt.random_trials; ++used) {
            for (auto& x : c) x = static_cast<unsigned long>(U(rng));
            if (found(c)) {
                v.certificate = "invertible morphism found by random search";
                return v;
            }
        }
        v.certificate = "no invertible morphism in " + std::to_string(opt.random_trials) + " random trials";
        return v;
    }

    // Z: determinant certificates, then a bounded search
    for (int m = 2; m <= opt.max_modulus; ++m) {
        const std::uint64_t total = ipow_capped(static_cast<std::uint64_t>(m), d, opt.exhaustive_limit);
        if (total > opt.exhaustive_limit) break;
        for (int s = n; s >= 0; --s) {
            if (!M.levels[s].is_free() || !N.levels[s].is_free() || M.dim(s) == 0) continue;
            bool hit = false;
            std::vector<Matrix> Hs;
            for (const auto& h : H) Hs.push_back(h.maps[s]);
            for (std::uint64_t k = 0; k < total && !hit; ++k) {
                std::uint64_t t = k;
                Matrix acc(N.dim(s), M.dim(s));
                for (std::size_t i = 0; i < d; ++i) {
                    long ci = static_cast<long>(t % static_cast<std::uint64_t>(m));
                    t /= static_cast<std::uint64_t>(m);
                    if (ci) acc = add(B, acc, scale(B, Scalar(ci), Hs[i]));
                }
                Scalar dt = det(B, acc);
                Scalar r;
                mpz_fdiv_r_ui(r.get_mpz_t(), dt.get_mpz_t(), static_cast<unsigned long>(m));
                if (r == 1 || r == m - 1) hit = true;
            }
            if (!hit) {
                v.kind = IsoVerdict::Kind::NonIso;
                v.modulus = m;
                v.level = s;
                v.certificate = "mod " + std::to_string(m) + ", level " + M.G.orbit_name(s);
                return v;
            }
        }
    }
    const std::uint64_t side = static_cast<std::uint64_t>(2 * opt.bound + 1);
    const std::uint64_t total = ipow_capped(side, d, opt.exhaustive_limit);
    std::vector<Scalar> c(d);
    if (total <= opt.exhaustive_limit) {
        for (std::uint64_t k = 0; k < total; ++k) {
            std::uint64_t t = k;
            for (std::size_t i = 0; i < d; ++i) {
                c[i] = static_cast<long>(t % side) - opt.bound;
                t /= side;
            }
            if (found(c)) {
                v.certificate = "unimodular morphism found in coefficient box";
                return v;
            }
        }
    } else {
        std::uniform_int_distribution<long> U(-opt.bound, opt.bound);
        for (std::size_t k = 0; k < opt.random_trials; ++k) {
            for (auto& x : c) x = U(rng);
            if (found(c)) {
                v.certificate = "unimodular morphism found by random search";
                return v;
            }
        }
    }
    v.certificate = "no certificate modulo 2.." + std::to_string(opt.max_modulus) +
                    " and no unimodular morphism with coefficients in [-" + std::to_string(opt.bound) + "," +
                    std::to_string(opt.bound) + "]";
    return v;
}

static SubFunctor sub_from_submodules(const MackeyFunctor& M, const std::vector<SubModule>& subs)
{
    const int n = M.n();
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        levels.push_back(subs[s].S);
        auto w = restrict_map(M.levels[s], subs[s], subs[s], M.weyl[s]);
        if (!w) throw std::invalid_argument("sub_functor: level " + lvl(s) + " not stable under weyl");
        weyl.push_back(*w);
        if (s < n) {
            auto r = restrict_map(M.levels[s], subs[s + 1], subs[s], M.res[s]);
            auto t = restrict_map(M.levels[s + 1], subs[s], subs[s + 1], M.tr[s]);
            if (!r || !t) throw std::invalid_argument("sub_functor: level " + lvl(s) + " not stable under res/tr");
            res.push_back(*r);
            tr.push_back(*t);
        }
    }
    SubFunctor out;
    out.S = make_mackey(M.G, M.base, std::move(levels), std::move(res), std::move(tr), std::move(weyl));
    for (const auto& s : subs) out.incl.push_back(s.incl);
    return out;
}

SubFunctor sub_functor(const MackeyFunctor& M, const std::vector<Matrix>& spans)
{
    std::vector<SubModule> subs;
    for (int s = 0; s <= M.n(); ++s) subs.push_back(image(M.levels[s], spans[s]));
    return sub_from_submodules(M, subs);
}

QuotFunctor quotient_functor(const MackeyFunctor& M, const std::vector<Matrix>& spans)
{
    const int n = M.n();
    const Base& B = M.base;
    std::vector<QuotientModule> q;
    for (int s = 0; s <= n; ++s) q.push_back(cokernel(M.levels[s], spans[s]));
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        levels.push_back(q[s].Q);
        weyl.push_back(mul(B, q[s].proj, mul(B, M.weyl[s], q[s].lift)));
        if (s < n) {
            res.push_back(mul(B, q[s].proj, mul(B, M.res[s], q[s + 1].lift)));
            tr.push_back(mul(B, q[s + 1].proj, mul(B, M.tr[s], q[s].lift)));
        }
    }
    QuotFunctor out;
    out.Q = make_mackey(M.G, B, std::move(levels), std::move(res), std::move(tr), std::move(weyl));
    for (auto& x : q) {
        out.proj.push_back(x.proj);
        out.lift.push_back(x.lift);
    }
    return out;
}

// is v in the span of S (columns) inside module X
static bool in_span(const FPModule& X, const Matrix& S, const Vec& v)
{
    if (vzero(X.reduce(v))) return true;
    if (S.cols == 0) return false;
    return solve(X.base, hstack(S, X.relations()), v).has_value();
}

std::vector<Matrix> generated_submodule(const MackeyFunctor& M, const std::vector<Matrix>& gens,
                                        const std::vector<std::vector<Matrix>>& ops)
{
    const int n = M.n();
    const Base& B = M.base;
    std::vector<Matrix> span(n + 1);
    for (int s = 0; s <= n; ++s) span[s] = s < static_cast<int>(gens.size()) ? gens[s] : Matrix(M.dim(s), 0);
    auto tidy = [&](int s) {
        span[s] = image(M.levels[s], span[s]).incl;
    };
    for (int s = 0; s <= n; ++s) tidy(s);
    for (bool changed = true; changed;) {
        changed = false;
        for (int s = 0; s <= n; ++s) {
            std::vector<Matrix> cands;
            cands.push_back(mul(B, M.weyl[s], span[s]));
            if (s < n) cands.push_back(mul(B, M.res[s], span[s + 1]));
            if (s > 0) cands.push_back(mul(B, M.tr[s - 1], span[s - 1]));
            if (s < static_cast<int>(ops.size()))
                for (const auto& op : ops[s]) cands.push_back(mul(B, op, span[s]));
            bool grew = false;
            for (const auto& C : cands)
                for (std::size_t j = 0; j < C.cols; ++j) {
                    Vec col = C.col(j);
                    if (!in_span(M.levels[s], span[s], col)) {
                        span[s] = hstack(span[s], Matrix::from_cols(M.dim(s), {col}));
                        grew = true;
                    }
                }
            if (grew) {
                tidy(s);
                changed = true;
            }
        }
    }
    return span;
}

SubFunctor kernel_functor(const MackeyFunctor& M, const MackeyFunctor& N, const MackeyMorphism& f)
{
    std::vector<SubModule> subs;
    for (int s = 0; s <= M.n(); ++s) subs.push_back(kernel(M.levels[s], N.levels[s], f.maps[s]));
    return sub_from_submodules(M, subs);
}

SubFunctor image_functor(const MackeyFunctor& N, const MackeyMorphism& f) { return sub_functor(N, f.maps); }

QuotFunctor cokernel_functor(const MackeyFunctor& N, const MackeyMorphism& f) { return quotient_functor(N, f.maps); }

DirectSum direct_sum(const std::vector<MackeyFunctor>& parts)
{
    if (parts.empty()) throw std::invalid_argument("direct_sum: no summands");
    const int n = parts[0].n();
    const Base& B = parts[0].base;
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        std::vector<FPModule> ls;
        std::vector<Matrix> ws, rs, ts;
        for (const auto& P : parts) {
            if (P.G != parts[0].G) throw std::invalid_argument("direct_sum: group mismatch");
            ls.push_back(P.levels[s]);
            ws.push_back(P.weyl[s]);
            if (s < n) {
                rs.push_back(P.res[s]);
                ts.push_back(P.tr[s]);
            }
        }
        levels.push_back(direct_sum(ls));
        weyl.push_back(block_diag(ws));
        if (s < n) {
            res.push_back(block_diag(rs));
            tr.push_back(block_diag(ts));
        }
    }
    DirectSum D;
    D.M = make_mackey(parts[0].G, B, std::move(levels), std::move(res), std::move(tr), std::move(weyl));
    std::vector<std::size_t> off(n + 1, 0);
    for (const auto& P : parts) {
        MackeyMorphism in, pr;
        for (int s = 0; s <= n; ++s) {
            Matrix i(D.M.dim(s), P.dim(s)), q(P.dim(s), D.M.dim(s));
            for (std::size_t k = 0; k < P.dim(s); ++k) {
                i(off[s] + k, k) = 1;
                q(k, off[s] + k) = 1;
            }
            off[s] += P.dim(s);
            in.maps.push_back(i);
            pr.maps.push_back(q);
        }
        D.incl.push_back(in);
        D.proj.push_back(pr);
    }
    return D;
}

MackeyFunctor change_base(const MackeyFunctor& M, const Base& B)
{
    std::vector<FPModule> levels;
    for (const auto& l : M.levels) {
        if (!l.is_free()) throw std::invalid_argument("change_base: level with torsion");
        levels.push_back(FPModule::free(B, l.size()));
    }
    return make_mackey(M.G, B, levels, M.res, M.tr, M.weyl);
}

std::string describe(const MackeyFunctor& M)
{
    std::ostringstream os;
    os << "C" << M.G.order() << "-Mackey functor over " << M.base.name() << ", levels";
    for (int s = 0; s <= M.n(); ++s) os << (s ? ", " : " ") << M.G.orbit_name(s) << ": " << M.levels[s].describe();
    return os.str();
}

}  // namespace eqa
