#include "eqalg/functors.hpp"

#include <stdexcept>

namespace eqa {

static std::string lvl(int s) { return std::to_string(s); }

MackeyFunctor restrict_mackey(const MackeyFunctor& M, int m)
{
    const int n = M.n();
    if (m < 0 || m > n) throw std::invalid_argument("restrict_mackey: level " + lvl(m) + " out of range");
    const std::uint64_t step = static_cast<std::uint64_t>(M.G.ipow(n - m));
    std::vector<FPModule> levels(M.levels.begin(), M.levels.begin() + m + 1);
    std::vector<Matrix> res(M.res.begin(), M.res.begin() + m), tr(M.tr.begin(), M.tr.begin() + m), weyl;
    for (int s = 0; s <= m; ++s) weyl.push_back(weyl_pow(M, s, step));
    return make_mackey(CyclicGroup(M.G.p, m), M.base, levels, res, tr, weyl);
}

GreenFunctor restrict_green(const GreenFunctor& R, int m)
{
    MackeyFunctor M = restrict_mackey(R.M, m);
    return make_green(M, std::vector<BasedRing>(R.rings.begin(), R.rings.begin() + m + 1));
}

long induce_copies(const CyclicGroup& G, int m, int s) { return s < m ? G.ipow(G.n - m) : G.ipow(G.n - s); }

MackeyFunctor induce_mackey(const MackeyFunctor& M, int n)
{
    const int m = M.n();
    if (n < m) throw std::invalid_argument("induce_mackey: target group is smaller");
    const Base& B = M.base;
    CyclicGroup G(M.G.p, n);
    auto val = [&](int s) { return std::min(s, m); };
    std::vector<FPModule> levels;
    std::vector<Matrix> res, tr, weyl;
    for (int s = 0; s <= n; ++s) {
        const long c = induce_copies(G, m, s);
        const FPModule& V = M.levels[val(s)];
        levels.push_back(direct_sum(std::vector<FPModule>(c, V)));
        const std::size_t d = V.size();
        Matrix W(c * d, c * d);
        Matrix wrap = s < m ? M.weyl[s] : Matrix::identity(d);
        for (long x = 0; x < c; ++x) {
            const long y = (x + 1) % c;
            const Matrix& blk = x + 1 == c ? wrap : Matrix::identity(d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) W(y * d + i, x * d + j) = blk(i, j);
        }
        weyl.push_back(W);
    }
    for (int s = 0; s < n; ++s) {
        const long c0 = induce_copies(G, m, s), c1 = induce_copies(G, m, s + 1);
        if (s < m) {
            res.push_back(block_diag(std::vector<Matrix>(c0, M.res[s])));
            tr.push_back(block_diag(std::vector<Matrix>(c0, M.tr[s])));
            continue;
        }
        const std::size_t d = M.levels[m].size();
        Matrix Rm(c0 * d, c1 * d), Tm(c1 * d, c0 * d);
        for (long x = 0; x < c0; ++x) {
            const long y = x % c1;
            for (std::size_t i = 0; i < d; ++i) {
                Rm(x * d + i, y * d + i) = 1;
                Tm(y * d + i, x * d + i) = 1;
            }
        }
        res.push_back(Rm);
        tr.push_back(Tm);
    }
    return make_mackey(G, B, levels, res, tr, weyl);
}

GreenModule free_module(const GreenFunctor& R, int i)
{
    const int n = R.n();
    if (i < 0 || i > n) throw std::invalid_argument("free_module: level " + lvl(i) + " out of range");
    const Base& B = R.base();
    GreenModule X;
    X.R = R;
    X.M = induce_mackey(restrict_mackey(R.M, i), n);
    for (int s = 0; s <= n; ++s) {
        const int L = std::min(i, s);
        const long c = induce_copies(R.M.G, i, s);
        const std::uint64_t ord = static_cast<std::uint64_t>(R.M.G.ipow(n - s));
        const std::size_t rs = R.rings[s].rank(), d = R.rings[L].rank(), D = c * d;
        Matrix act(D, rs * D);
        Matrix Rs = res_chain(R.M, s, L);
        for (long x = 0; x < c; ++x) {
            Matrix Wx = mul(B, Rs, weyl_pow(R.M, s, (ord - static_cast<std::uint64_t>(x) % ord) % ord));
            for (std::size_t a = 0; a < rs; ++a) {
                Matrix A = R.rings[L].left_mult(Wx.col(a));
                for (std::size_t u = 0; u < d; ++u)
                    for (std::size_t v = 0; v < d; ++v) act(x * d + u, a * D + x * d + v) = A(u, v);
            }
        }
        X.act.push_back(X.M.levels[s].reduce_cols(reduce(B, act)));
    }
    return X;
}

MackeyMorphism yoneda_map(const GreenModule& Fi, int i, const GreenModule& X, const Vec& x)
{
    const int n = X.M.n();
    const Base& B = X.M.base;
    const GreenFunctor& R = X.R;
    MackeyMorphism f;
    for (int s = 0; s <= n; ++s) {
        const int L = std::min(i, s);
        const long c = induce_copies(R.M.G, i, s);
        const std::size_t d = R.rings[L].rank();
        Matrix F(X.M.dim(s), Fi.M.dim(s));
        Vec xr = mul(B, res_chain(X.M, i, L), x);
        Matrix T = tr_chain(X.M, L, s);
        for (long k = 0; k < c; ++k) {
            Matrix W = weyl_pow(X.M, s, static_cast<std::uint64_t>(k));
            for (std::size_t a = 0; a < d; ++a) {
                Vec y = mul(B, X.action_basis(L, a), xr);
                F.set_col(k * d + a, mul(B, W, mul(B, T, y)));
            }
        }
        f.maps.push_back(X.M.levels[s].reduce_cols(reduce(B, F)));
    }
    return f;
}

GreenModule module_direct_sum(const std::vector<GreenModule>& parts)
{
    if (parts.empty()) throw std::invalid_argument("module_direct_sum: empty");
    const GreenFunctor& R = parts[0].R;
    std::vector<MackeyFunctor> Ms;
    for (const auto& X : parts) Ms.push_back(X.M);
    GreenModule out;
    out.R = R;
    out.M = direct_sum(Ms).M;
    for (int s = 0; s <= R.n(); ++s) {
        const std::size_t D = out.M.dim(s), rs = R.rings[s].rank();
        Matrix act(D, rs * D);
        for (std::size_t a = 0; a < rs; ++a) {
            std::vector<Matrix> blocks;
            for (const auto& X : parts) blocks.push_back(X.action_basis(s, a));
            Matrix A = block_diag(blocks);
            for (std::size_t u = 0; u < D; ++u)
                for (std::size_t v = 0; v < D; ++v) act(u, a * D + v) = A(u, v);
        }
        out.act.push_back(act);
    }
    return out;
}

GreenModule free_sum(const GreenFunctor& R, const std::vector<int>& idx)
{
    std::vector<GreenModule> parts;
    for (int i : idx) parts.push_back(free_module(R, i));
    if (parts.empty()) {
        GreenModule Z;
        Z.R = R;
        Z.M = zero_mackey(R.M.G, R.base());
        for (int s = 0; s <= R.n(); ++s) Z.act.push_back(Matrix(0, 0));
        return Z;
    }
    return module_direct_sum(parts);
}

MackeyFunctor tau_geq_1(const MackeyFunctor& M)
{
    const int n = M.n();
    if (n < 1) throw std::invalid_argument("tau_geq_1: needs n >= 1");
    std::vector<FPModule> levels(M.levels.begin() + 1, M.levels.end());
    std::vector<Matrix> res(M.res.begin() + 1, M.res.end()), tr(M.tr.begin() + 1, M.tr.end()),
        weyl(M.weyl.begin() + 1, M.weyl.end());
    return make_mackey(CyclicGroup(M.G.p, n - 1), M.base, levels, res, tr, weyl);
}

GreenFunctor tau_green(const GreenFunctor& R)
{
    MackeyFunctor M = tau_geq_1(R.M);
    return make_green(M, std::vector<BasedRing>(R.rings.begin() + 1, R.rings.end()));
}

GreenModule tau_module(const GreenModule& X)
{
    GreenModule out;
    out.R = tau_green(X.R);
    out.M = tau_geq_1(X.M);
    out.act.assign(X.act.begin() + 1, X.act.end());
    return out;
}

MackeyFunctor brutal_truncation(const MackeyFunctor& M)
{
    if (M.n() < 1) return zero_mackey(M.G, M.base);
    std::vector<FPModule> levels = M.levels;
    std::vector<Matrix> res = M.res, tr = M.tr, weyl = M.weyl;
    levels[0] = FPModule::free(M.base, 0);
    res[0] = Matrix(0, M.dim(1));
    tr[0] = Matrix(M.dim(1), 0);
    weyl[0] = Matrix(0, 0);
    return make_mackey(M.G, M.base, levels, res, tr, weyl);
}

GreenFunctor brutal_truncation_green(const GreenFunctor& R)
{
    MackeyFunctor M = brutal_truncation(R.M);
    std::vector<BasedRing> rings = R.rings;
    for (int s = 0; s <= R.n(); ++s)
        if (M.dim(s) == 0) rings[s] = zero_ring(R.base());
    return make_green(M, rings);
}

// ring structure carried through a quotient map of additive groups
static BasedRing quotient_ring(const BasedRing& L, const FPModule& Q, const Matrix& proj, const Matrix& lift,
                               const Base& target)
{
    const Base& B = L.base();
    const std::size_t k = Q.size();
    Matrix m(k, k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            m.set_col(a * k + b, mul(B, proj, L.product(lift.col(a), lift.col(b))));
    Vec u = mul(B, proj, L.unit);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < k; ++a) {
        std::string lab = "f" + std::to_string(a);
        Vec c = lift.col(a);
        std::size_t nz = 0, at = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) ++nz, at = j;
        if (nz == 1 && c[at] == 1 && at < L.labels.size()) lab = L.labels[at];
        labels.push_back(lab);
    }
    Matrix um = Matrix::from_cols(k, {u});
    FPModule G = Q;
    if (target != B) G = FPModule::free(target, k);
    return make_based_ring(G, G.reduce_cols(reduce(target, m)), G.reduce_cols(reduce(target, um)).col(0), labels);
}

GreenQuotient quotient_green(const GreenFunctor& R, const std::vector<Matrix>& ideal)
{
    QuotFunctor q = quotient_functor(R.M, ideal);
    std::vector<BasedRing> rings;
    for (int s = 0; s <= R.n(); ++s)
        rings.push_back(quotient_ring(R.rings[s], q.Q.levels[s], q.proj[s], q.lift[s], R.base()));
    GreenQuotient out;
    out.R = make_green(q.Q, rings);
    out.proj = q.proj;
    out.lift = q.lift;
    return out;
}

static std::vector<Matrix> bottom_transfer_gens(const MackeyFunctor& M, const MackeyFunctor& T)
{
    std::vector<Matrix> gens(T.n() + 1);
    for (int s = 0; s <= T.n(); ++s) gens[s] = Matrix(T.dim(s), 0);
    gens[0] = M.tr[0];
    return gens;
}

MackeyFunctor geometric_fixed_points(const MackeyFunctor& M)
{
    MackeyFunctor T = tau_geq_1(M);
    return quotient_functor(T, generated_submodule(T, bottom_transfer_gens(M, T))).Q;
}

GreenQuotient geometric_fixed_points_green(const GreenFunctor& R)
{
    GreenFunctor T = tau_green(R);
    std::vector<std::vector<Matrix>> ops(T.n() + 1);
    for (int s = 0; s <= T.n(); ++s)
        for (std::size_t a = 0; a < T.rings[s].rank(); ++a)
            ops[s].push_back(T.rings[s].left_mult(unit_vec(T.rings[s].rank(), a)));
    return quotient_green(T, generated_submodule(T.M, bottom_transfer_gens(R.M, T.M), ops));
}

PhiRing phi_ring(const GreenFunctor& R, int m)
{
    const int n = R.n();
    if (m < 0 || m > n) throw std::invalid_argument("phi_ring: level " + lvl(m) + " out of range");
    const Base& B = R.base();
    PhiRing out;
    out.m = m;
    out.weyl_exponent = n - m;
    if (m == 0) {
        out.ring = R.rings[0];
        out.weyl = R.M.weyl[0];
        return out;
    }
    QuotientModule q = cokernel(R.M.levels[m], R.M.tr[m - 1]);
    Base target = B;
    bool torsion = false;
    for (const auto& t : q.Q.tors)
        if (t != 0) torsion = true;
    if (torsion) {
        for (const auto& t : q.Q.tors)
            if (t != R.M.G.p)
                throw std::domain_error("phi_ring: quotient at level " + lvl(m) + " is " + q.Q.describe() +
                                        ", not an F_p-vector space");
        target = Base::prime(R.M.G.p);
    }
    out.ring = quotient_ring(R.rings[m], q.Q, q.proj, q.lift, target);
    out.weyl = reduce(target, mul(B, q.proj, mul(B, R.M.weyl[m], q.lift)));
    return out;
}

std::string tri_name(Tri t)
{
    switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
    }
}

std::string twisted_ring_name(const PhiRing& phi, int p)
{
    std::string s = ring_name(phi.ring);
    if (phi.weyl != Matrix::identity(phi.ring.rank())) s += "_θ";
    long ord = 1;
    for (int i = 0; i < phi.weyl_exponent; ++i) ord *= p;
    if (ord > 1) s += "[C" + std::to_string(ord) + "]";
    return s;
}

namespace {

// all coefficient matrices rows x cols with entries from vals, in order
struct Odometer {
    std::vector<Scalar> vals;
    std::vector<std::size_t> idx;
    bool started = false;
    bool next()
    {
        if (!started) return started = true;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (++idx[i] < vals.size()) return true;
            idx[i] = 0;
        }
        return false;
    }
};

constexpr std::uint64_t kSectionLimit = 200000;

// sections sigma of pi : T -> Phi with pi sigma = id that are ring maps and
// Mackey morphisms, searched in a bounded box; a miss is reported as unknown
Tri find_section(const GreenFunctor& T, const GreenQuotient& Q, std::optional<GreenMap>& witness)
{
    const Base& B = T.base();
    const int n = T.n();
    std::vector<Scalar> vals;
    if (B.is_field()) {
        for (std::uint64_t v = 0; v < B.size(); ++v) vals.push_back(Scalar(static_cast<unsigned long>(v)));
    } else {
        for (long v = -5; v <= 5; ++v) vals.push_back(Scalar(v));
    }
    std::vector<std::vector<Matrix>> cands(n + 1);
    std::uint64_t total = 1;
    for (int s = 0; s <= n; ++s) {
        const FPModule& Ts = T.M.levels[s];
        Matrix K = kernel(Ts, Q.R.M.levels[s], Q.proj[s]).incl;
        const std::size_t ds = Q.R.M.dim(s);
        const std::size_t U = K.cols * ds;
        std::uint64_t cnt = 1;
        for (std::size_t u = 0; u < U; ++u) {
            cnt *= vals.size();
            if (cnt > kSectionLimit) return Tri::Unknown;
        }
        Odometer od{vals, std::vector<std::size_t>(U, 0)};
        while (od.next()) {
            Matrix C(K.cols, ds);
            for (std::size_t u = 0; u < U; ++u) C.a[u] = od.vals[od.idx[u]];
            Matrix sigma = Ts.reduce_cols(reduce(B, add(B, Q.lift[s], mul(B, K, C))));
            if (map_well_defined(Q.R.M.levels[s], Ts, sigma) && is_ring_hom(Q.R.rings[s], T.rings[s], sigma))
                cands[s].push_back(sigma);
        }
        if (cands[s].empty()) return Tri::Unknown;
        total *= cands[s].size();
        if (total > kSectionLimit) return Tri::Unknown;
    }
    std::vector<std::size_t> pick(n + 1, 0);
    for (;;) {
        GreenMap g;
        for (int s = 0; s <= n; ++s) g.maps.push_back(cands[s][pick[s]]);
        if (check_morphism(Q.R.M, T.M, MackeyMorphism{g.maps}).ok) {
            witness = g;
            return Tri::Yes;
        }
        int s = 0;
        while (s <= n && ++pick[s] == cands[s].size()) pick[s++] = 0;
        if (s > n) break;
    }
    return Tri::Unknown;
}

}  // namespace

E1Page e1_page(const GreenFunctor& R)
{
    E1Page E;
    E.p = R.M.G.p;
    E.n = R.n();
    for (int t = 0; t <= R.n(); ++t) {
        E1Entry e;
        e.t = t;
        e.phi = phi_ring(R, t);
        if (e.phi.ring.rank() == 0) continue;
        e.weyl_order = R.M.G.ipow(R.n() - t);
        if (e.phi.ring.base().is_field())
            e.twisted = twisted_group_ring(e.phi.ring, E.p, e.phi.weyl_exponent, e.phi.weyl);
        e.name = twisted_ring_name(e.phi, E.p);
        E.entries.push_back(e);
    }
    E.zero_transfer = true;
    E.surjective_transfer = true;
    for (int s = 0; s < R.n(); ++s) {
        if (!R.M.levels[s + 1].reduce_cols(R.M.tr[s]).is_zero()) E.zero_transfer = false;
        if (!cokernel(R.M.levels[s + 1], R.M.tr[s]).Q.is_zero()) E.surjective_transfer = false;
    }
    if (R.n() == 0) {
        E.section = Tri::Yes;
        return E;
    }
    GreenFunctor T = tau_green(R);
    GreenQuotient Q = geometric_fixed_points_green(R);
    if (E.zero_transfer) {
        // the quotient is tau R itself
        E.section = Tri::Yes;
        E.section_witness = GreenMap{Q.lift};
        return E;
    }
    E.section = find_section(T, Q, E.section_witness);
    return E;
}

}  // namespace eqa
