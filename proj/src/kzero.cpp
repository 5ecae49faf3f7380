#include "eqalg/kzero.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace eqa {

static std::string lvl(int s) { return std::to_string(s); }

static long lpow(long b, int e)
{
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// --- dimension matrix -------------------------------------------------------

Matrix DimensionMatrix::gamma() const
{
    Matrix g(r + 1, r + 1);
    for (int s = 0; s <= r; ++s) {
        for (int i = 0; i < r; ++i) g(s, i) = alpha[s][i];
        g(s, r) = alpha[s][n];
    }
    return g;
}

Matrix DimensionMatrix::gamma_reduced() const
{
    Matrix g = gamma(), out = g;
    for (int i = 0; i < r; ++i) {
        const long f = i + 1 < r ? 1 : lpow(p, n - r);
        for (int s = 0; s <= r; ++s) out(s, i) = g(s, i) - f * g(s, i + 1);
    }
    return out;
}

Scalar DimensionMatrix::gamma_det() const { return det(Base::integers(), gamma()); }

DimensionMatrix dim_matrix(const GreenFunctor& k)
{
    const Base& B = k.base();
    if (!B.is_field()) throw std::invalid_argument("dim_matrix: base must be a finite field");
    const int n = k.n();
    for (int s = 0; s <= n; ++s)
        if (!is_field_ring(k.rings[s])) throw std::invalid_argument("dim_matrix: level " + lvl(s) + " is not a field");
    DimensionMatrix D;
    D.p = k.M.G.p;
    D.n = n;
    const long top = static_cast<long>(k.rings[n].rank());
    for (int s = 0; s <= n; ++s) {
        const long d = static_cast<long>(k.rings[s].rank());
        if (d % top != 0)
            throw std::invalid_argument("dim_matrix: level " + lvl(s) + " is not finite free over the top level");
        D.level_dims.push_back(d / top);
    }
    D.r = 0;
    for (int s = 0; s <= n; ++s)
        if (D.level_dims[s] == D.level_dims[0]) D.r = s;
    D.alpha.assign(n + 1, std::vector<long>(n + 1));
    for (int s = 0; s <= n; ++s)
        for (int i = 0; i <= n; ++i)
            D.alpha[s][i] = s < i ? lpow(D.p, n - i) * D.level_dims[s] : lpow(D.p, n - s) * D.level_dims[i];
    return D;
}

// --- K0 of free modules -----------------------------------------------------

BurnsideQuotient k0_free_fixed_point(int p, int n, int r)
{
    if (r < 0 || r > n) throw std::invalid_argument("k0_free_fixed_point: stabilizer level out of range");
    CyclicGroup G(p, n);
    BasedRing A = burnside_ring(G);
    std::vector<BurnsideElement> gens;
    for (int s = r; s < n; ++s) {
        BurnsideElement x{G, Vec(n + 1)};
        x.coeffs[s] = 1;
        x.coeffs[n] = -lpow(p, n - s);
        gens.push_back(x);
    }
    return burnside_quotient(A, gens);
}

std::vector<long> classify_free(int p, int n, int r, const std::vector<long>& mult, bool char_is_p)
{
    if (static_cast<int>(mult.size()) != n + 1) throw std::invalid_argument("classify_free: need n+1 multiplicities");
    if (!char_is_p && r != n)
        throw std::domain_error("classify_free: only characteristic p or trivial action (r = n) is supported");
    std::vector<long> out = mult;
    for (int i = r; i < n; ++i) {
        out[n] += out[i] * lpow(p, n - i);
        out[i] = 0;
    }
    return out;
}

// --- submodules and random automorphisms -------------------------------------

SubGreenModule sub_green_module(const GreenModule& X, const std::vector<Matrix>& spans)
{
    const Base& B = X.M.base;
    SubFunctor S = sub_functor(X.M, spans);
    SubGreenModule out;
    out.incl = S.incl;
    out.X.R = X.R;
    out.X.M = S.S;
    for (int s = 0; s <= X.M.n(); ++s) {
        const std::size_t d = S.S.dim(s), rs = X.R.rings[s].rank();
        Matrix act(d, rs * d);
        for (std::size_t a = 0; a < rs; ++a) {
            auto A = solve(B, S.incl[s], mul(B, X.action_basis(s, a), S.incl[s]));
            if (!A) throw std::invalid_argument("sub_green_module: span at level " + lvl(s) + " is not a submodule");
            for (std::size_t u = 0; u < d; ++u)
                for (std::size_t v = 0; v < d; ++v) act(u, a * d + v) = (*A)(u, v);
        }
        out.X.act.push_back(act);
    }
    return out;
}

static Scalar random_scalar(const Base& B, std::mt19937_64& rng)
{
    std::uniform_int_distribution<unsigned long> d(0, B.size() - 1);
    return Scalar(d(rng));
}

static MackeyMorphism random_combination(const Base& B, const MackeyFunctor& N, const std::vector<MackeyMorphism>& H,
                                         std::mt19937_64& rng)
{
    Vec c;
    for (std::size_t j = 0; j < H.size(); ++j) c.push_back(random_scalar(B, rng));
    MackeyMorphism f;
    for (int s = 0; s <= N.n(); ++s) {
        Matrix m = H.empty() ? Matrix() : Matrix(H[0].maps[s].rows, H[0].maps[s].cols);
        for (std::size_t j = 0; j < H.size(); ++j) m = add(B, m, scale(B, c[j], H[j].maps[s]));
        f.maps.push_back(m);
    }
    return f;
}

std::optional<MackeyMorphism> random_automorphism(const GreenModule& X, std::uint64_t seed, int tries)
{
    const Base& B = X.M.base;
    if (!B.is_field()) throw std::invalid_argument("random_automorphism: field base required");
    auto H = hom_basis(X.M, X.M, module_constraints(X, X));
    if (H.empty()) return identity_morphism(X.M);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < tries; ++t) {
        MackeyMorphism f = random_combination(B, X.M, H, rng);
        if (is_invertible(X.M, X.M, f)) return f;
    }
    return std::nullopt;
}

RandomProjective random_projective(const GreenFunctor& k, const std::vector<int>& idx, const std::vector<bool>& keep,
                                   std::uint64_t seed)
{
    const Base& B = k.base();
    const int n = k.n();
    RandomProjective out;
    out.F = free_sum(k, idx);
    out.expected.assign(n + 1, 0);
    MackeyMorphism pi;
    for (int s = 0; s <= n; ++s) {
        std::vector<Matrix> blocks;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const std::size_t d = free_module(k, idx[j]).M.dim(s);
            blocks.push_back(keep[j] ? Matrix::identity(d) : Matrix(d, d));
        }
        pi.maps.push_back(idx.empty() ? Matrix(0, 0) : block_diag(blocks));
    }
    for (std::size_t j = 0; j < idx.size(); ++j)
        if (keep[j]) ++out.expected[idx[j]];
    auto g = random_automorphism(out.F, seed);
    if (!g) throw std::runtime_error("random_projective: no automorphism found");
    auto gi = inverse_morphism(out.F.M, out.F.M, *g);
    out.e = compose(out.F.M, *g, compose(out.F.M, pi, *gi));
    for (int s = 0; s <= n; ++s) out.e.maps[s] = reduce(B, out.e.maps[s]);
    return out;
}

// --- projective => free -------------------------------------------------------

namespace {

struct Splitter {
    std::mt19937_64 rng;
    std::string failure;

    bool injective(const Base& B, const Matrix& f) { return rank(B, f) == f.cols; }

    // phase 1 candidate: an element whose Yoneda map from F_0 is injective
    std::optional<MackeyMorphism> find_f0(const GreenFunctor& k, const GreenModule& P, const GreenModule& F0)
    {
        const Base& B = k.base();
        const std::size_t d = P.M.dim(0);
        if (d < F0.M.dim(0)) return std::nullopt;
        const std::uint64_t ord = static_cast<std::uint64_t>(k.M.G.order());
        auto try_x = [&](const Vec& x) -> std::optional<MackeyMorphism> {
            std::vector<Vec> orbit;
            for (std::uint64_t j = 0; j < ord; ++j) orbit.push_back(mul(B, weyl_pow(P.M, 0, j), x));
            if (rank(B, Matrix::from_cols(d, orbit)) != orbit.size()) return std::nullopt;
            MackeyMorphism phi = yoneda_map(F0, 0, P, x);
            for (int s = 0; s <= k.n(); ++s)
                if (!injective(B, phi.maps[s])) return std::nullopt;
            return phi;
        };
        for (std::size_t j = 0; j < d; ++j)
            if (auto phi = try_x(unit_vec(d, j))) return phi;
        for (int t = 0; t < 1000; ++t) {
            Vec x(d);
            for (auto& c : x) c = random_scalar(B, rng);
            if (vzero(x)) continue;
            if (auto phi = try_x(x)) return phi;
        }
        return std::nullopt;
    }

    // retraction rho : P -> F_0 with rho phi = id
    std::optional<MackeyMorphism> retraction(const GreenModule& P, const GreenModule& F0, const MackeyMorphism& phi)
    {
        const Base& B = P.M.base;
        auto H = hom_basis(P.M, F0.M, module_constraints(P, F0));
        std::size_t rows = 0;
        for (int s = 0; s <= P.M.n(); ++s) rows += F0.M.dim(s) * F0.M.dim(s);
        Matrix A(rows, H.size());
        Vec rhs(rows);
        for (std::size_t j = 0; j < H.size(); ++j) {
            std::size_t r = 0;
            for (int s = 0; s <= P.M.n(); ++s) {
                Matrix c = mul(B, H[j].maps[s], phi.maps[s]);
                for (const auto& x : c.a) A(r++, j) = x;
            }
        }
        std::size_t r = 0;
        for (int s = 0; s <= P.M.n(); ++s) {
            Matrix I = Matrix::identity(F0.M.dim(s));
            for (const auto& x : I.a) rhs[r++] = x;
        }
        auto c = solve(B, A, rhs);
        if (!c) return std::nullopt;
        MackeyMorphism rho;
        for (int s = 0; s <= P.M.n(); ++s) {
            Matrix m(F0.M.dim(s), P.M.dim(s));
            for (std::size_t j = 0; j < H.size(); ++j) m = add(B, m, scale(B, (*c)[j], H[j].maps[s]));
            rho.maps.push_back(m);
        }
        return rho;
    }

    // multiplicities of F_0 .. F_n in P, or nothing on failure
    std::optional<std::vector<long>> run(const GreenFunctor& k, GreenModule P)
    {
        const int n = k.n();
        std::vector<long> mult(n + 1, 0);
        GreenModule F0 = free_module(k, 0);
        for (;;) {
            if (P.M.is_zero()) return mult;
            auto phi = find_f0(k, P, F0);
            if (!phi) break;
            auto rho = retraction(P, F0, *phi);
            if (!rho) {
                failure = "phase 1 (n=" + lvl(n) + "): no retraction onto F_0, residual " + describe(P.M);
                return std::nullopt;
            }
            SubFunctor K = kernel_functor(P.M, F0.M, *rho);
            P = sub_green_module(P, K.incl).X;
            ++mult[0];
        }
        if (n == 0) {
            failure = "phase 1 (n=0): nonzero residual without a free summand: " + describe(P.M);
            return std::nullopt;
        }
        auto sub = run(tau_green(k), tau_module(P));
        if (!sub) return std::nullopt;
        for (int i = 1; i <= n; ++i) mult[i] += (*sub)[i - 1];
        return mult;
    }
};

std::vector<int> summand_list(const std::vector<long>& mult)
{
    std::vector<int> idx;
    for (std::size_t i = 0; i < mult.size(); ++i)
        for (long c = 0; c < mult[i]; ++c) idx.push_back(static_cast<int>(i));
    return idx;
}

}  // namespace

FreeDecomposition freeness_decompose(const GreenFunctor& k, const GreenModule& F, const MackeyMorphism& e,
                                     std::uint64_t seed)
{
    const Base& B = k.base();
    if (!B.is_field() || B.size() == 0) throw std::invalid_argument("freeness_decompose: base must be a finite field");
    DimensionMatrix D = dim_matrix(k);
    if (!morphisms_equal(F.M, compose(F.M, e, e), e))
        throw std::invalid_argument("freeness_decompose: e is not idempotent");
    Report mr = check_morphism(F.M, F.M, e);
    for (int s = 0; s <= k.n(); ++s)
        for (std::size_t a = 0; a < k.rings[s].rank(); ++a) {
            Matrix A = F.action_basis(s, a);
            if (mul(B, A, e.maps[s]) != reduce(B, mul(B, e.maps[s], A)))
                mr.fail("level " + lvl(s) + ": e does not commute with the action");
        }
    if (!mr.ok) throw std::invalid_argument("freeness_decompose: e is not a module map: " + mr.summary());

    FreeDecomposition out;
    SubGreenModule P = sub_green_module(F, e.maps);
    out.P = P.X;
    out.P_incl = P.incl;
    for (int s = 0; s < k.n(); ++s)
        if (rank(B, P.X.M.res[s]) != P.X.M.dim(s + 1)) {
            out.failure = "restriction " + lvl(s + 1) + " -> " + lvl(s) + " of P is not injective";
            return out;
        }
    Splitter sp{std::mt19937_64(seed), {}};
    auto raw = sp.run(k, P.X);
    if (!raw) {
        out.failure = sp.failure;
        return out;
    }
    out.raw = *raw;
    out.multiplicities = out.raw;
    const bool char_p = B.characteristic() == k.M.G.p;
    if (char_p || D.r == k.n()) {
        out.multiplicities = classify_free(D.p, D.n, D.r, out.raw, char_p);
        out.canonical = true;
    }
    out.candidate = free_sum(k, summand_list(out.multiplicities));
    IsoOptions opt;
    opt.seed = seed;
    opt.extra = module_constraints(P.X, out.candidate);
    IsoVerdict v = is_isomorphic(P.X.M, out.candidate.M, opt);
    if (v.kind != IsoVerdict::Kind::Iso) {
        out.failure = "phase 3: " + v.kind_name() + " (" + v.certificate + ") against candidate " +
                      describe(out.candidate.M);
        return out;
    }
    out.witness = v.witness;
    out.ok = true;
    return out;
}

// --- simple modules of twisted group rings ---------------------------------

long simples_count(std::uint64_t q, int p, int m, bool char_is_p)
{
    if (char_is_p || m == 0) return 1;
    const long N = lpow(p, m);
    std::vector<bool> seen(N, false);
    long count = 0;
    for (long x = 0; x < N; ++x) {
        if (seen[x]) continue;
        ++count;
        for (long y = x; !seen[y]; y = static_cast<long>((static_cast<unsigned __int128>(y) * q) % N)) seen[y] = true;
    }
    return count;
}

std::vector<Vec> primitive_idempotents(const BasedRing& L)
{
    const Base& B = L.base();
    const std::size_t r = L.rank();
    if (r == 0) return {};
    Matrix S = kernel(B, sub(B, q_frobenius(L), Matrix::identity(r)));
    std::vector<Vec> idem{L.unit};
    for (std::size_t j = 0; j < S.cols; ++j) {
        Vec b = S.col(j);
        std::vector<Vec> next;
        for (const auto& e : idem)
            for (std::uint64_t lam = 0; lam < B.size(); ++lam) {
                // Lagrange idempotent of b at lam, cut down by e
                Vec f = e;
                for (std::uint64_t mu = 0; mu < B.size() && !vzero(f); ++mu) {
                    if (mu == lam) continue;
                    Scalar c = B.inv(B.sub(Scalar(static_cast<unsigned long>(lam)), Scalar(static_cast<unsigned long>(mu))));
                    Vec t = vsub(B, b, vscale(B, Scalar(static_cast<unsigned long>(mu)), L.unit));
                    f = vscale(B, c, L.product(f, t));
                }
                if (!vzero(f)) next.push_back(f);
            }
        idem = next;
    }
    return idem;
}

static BasedRing quotient_by(const BasedRing& L, const Matrix& span, Matrix& proj, Matrix& lift)
{
    const Base& B = L.base();
    QuotientModule q = cokernel(L.group, span);
    proj = q.proj;
    lift = q.lift;
    const std::size_t k = q.Q.size();
    Matrix m(k, k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) m.set_col(a * k + b, mul(B, proj, L.product(lift.col(a), lift.col(b))));
    return make_based_ring(q.Q, m, mul(B, proj, L.unit));
}

long twisted_simples(const BasedRing& L, const Matrix& theta, int p, int m)
{
    const Base& B = L.base();
    if (!B.is_field()) throw std::invalid_argument("twisted_simples: base must be a finite field");
    const std::size_t r = L.rank();
    if (r == 0) return 0;
    // nilradical = kernel of a high Frobenius power
    Matrix F = q_frobenius(L), FN = Matrix::identity(r);
    for (std::size_t i = 0; i < r; ++i) FN = mul(B, F, FN);
    Matrix N = kernel(B, FN);
    Matrix proj, lift;
    BasedRing Lb = quotient_by(L, N, proj, lift);
    Matrix th = reduce(B, mul(B, proj, mul(B, theta, lift)));
    std::vector<Vec> idem = primitive_idempotents(Lb);
    const std::size_t t = idem.size();
    auto index_of = [&](const Vec& v) {
        for (std::size_t i = 0; i < t; ++i)
            if (idem[i] == v) return i;
        throw std::logic_error("twisted_simples: action does not permute the idempotents");
    };
    std::vector<std::size_t> perm(t);
    for (std::size_t i = 0; i < t; ++i) perm[i] = index_of(mul(B, th, idem[i]));
    const bool char_p = B.characteristic() == p;
    std::vector<bool> done(t, false);
    long total = 0;
    for (std::size_t i = 0; i < t; ++i) {
        if (done[i]) continue;
        long size = 0;
        for (std::size_t j = i; !done[j]; j = perm[j]) done[j] = true, ++size;
        int a = 0;
        while (lpow(p, a) < size) ++a;
        if (lpow(p, a) != size) throw std::logic_error("twisted_simples: orbit size is not a power of p");
        // stabilizer generator on the factor e L
        Matrix sigma = power(B, th, static_cast<std::size_t>(size));
        Matrix E = image_basis(B, Lb.left_mult(idem[i]));
        const std::size_t de = E.cols;
        int c = 0;
        Matrix sc = sigma;
        while (reduce(B, mul(B, sc, E)) != E) {
            sc = power(B, sc, static_cast<std::size_t>(p));
            ++c;
            if (c > m) throw std::logic_error("twisted_simples: action order exceeds the group");
        }
        const std::size_t fixed_deg = de / static_cast<std::size_t>(lpow(p, c));
        std::uint64_t qf = 1;
        for (std::size_t j = 0; j < fixed_deg; ++j) qf *= B.size();
        total += simples_count(qf, p, m - a - c, char_p);
    }
    return total;
}

// --- E1 page G0 ranks ---------------------------------------------------------

G0Splitting g0_splitting(const GreenFunctor& R)
{
    G0Splitting g;
    g.page = e1_page(R);
    g.kind = g.page.zero_transfer ? "zero-transfer" : g.page.surjective_transfer ? "surjective-transfer" : "none";
    bool known = true;
    for (const auto& e : g.page.entries) {
        G0Term t;
        t.ring = e.name;
        if (e.phi.ring.base().is_field())
            t.rank = twisted_simples(e.phi.ring, e.phi.weyl, g.page.p, e.phi.weyl_exponent);
        else
            t.note = "G0 over Z not computed";
        if (!t.rank) known = false;
        g.terms.push_back(t);
    }
    if (g.kind == "none") {
        for (auto& t : g.terms)
            if (t.note.empty()) t.note = "no splitting certificate";
    } else if (known) {
        long s = 0;
        for (const auto& t : g.terms) s += *t.rank;
        g.total = s;
    }
    return g;
}

std::string e1_summary(const G0Splitting& g)
{
    std::string out = "rings: ";
    for (std::size_t i = 0; i < g.terms.size(); ++i) out += (i ? ", " : "") + g.terms[i].ring;
    if (g.terms.empty()) out += "none";
    if (g.page.zero_transfer)
        out += "; zero-transfer: yes";
    else if (g.page.surjective_transfer)
        out += "; surjective-transfer: yes";
    else
        out += "; zero-transfer: no; surjective-transfer: no; section: " + tri_name(g.page.section);
    if (g.total) {
        out += "; G0 ranks ";
        for (std::size_t i = 0; i < g.terms.size(); ++i) out += (i ? "+" : "") + std::to_string(*g.terms[i].rank);
    } else {
        out += g.kind == "none" ? "; G0: no splitting certificate" : "; G0: not computed over Z";
    }
    return out;
}

// --- resolution of the constant functor -------------------------------------

ResolutionCheck constant_Z_resolution_check(int p)
{
    const Base Z = Base::integers();
    CyclicGroup G(p, 1);
    ResolutionCheck out;
    Report& rep = out.report;
    MackeyFunctor K = constant_mackey(FPModule::free(Z, 1), G);
    MackeyFunctor I = free_module(constant_green(Z, G), 0).M;
    const std::size_t P = static_cast<std::size_t>(p);

    Matrix ones_col(P, 1), ones_row(1, P);
    for (std::size_t i = 0; i < P; ++i) ones_col(i, 0) = ones_row(0, i) = 1;
    Matrix one = Matrix::identity(1), zero(1, 1), pm(1, 1);
    pm(0, 0) = p;
    MackeyMorphism a{{ones_col, one}};
    MackeyMorphism b{{sub(Z, I.weyl[0], Matrix::identity(P)), zero}};
    MackeyMorphism c{{ones_row, pm}};
    out.terms = {K, I, I, K};
    out.maps = {a, b, c};
    for (const auto& X : out.terms) rep.merge(check_axioms(X), "term: ");
    rep.merge(check_morphism(K, I, a), "unit map: ");
    rep.merge(check_morphism(I, I, b), "shift map: ");
    rep.merge(check_morphism(I, K, c), "sum map: ");

    for (int s = 0; s <= 1; ++s) {
        const std::string at = " at level " + lvl(s);
        if (kernel(Z, a.maps[s]).cols != 0) rep.fail("unit map not injective" + at);
        auto exact_at = [&](const Matrix& f, const Matrix& g, const std::string& where) {
            if (!mul(Z, g, f).is_zero()) rep.fail("composite nonzero at " + where + at);
            Matrix ker = kernel(Z, g);
            for (std::size_t j = 0; j < ker.cols; ++j)
                if (!solve(Z, f, ker.col(j))) rep.fail("kernel not in image at " + where + at);
        };
        exact_at(a.maps[s], b.maps[s], "first Ind");
        exact_at(b.maps[s], c.maps[s], "second Ind");
    }
    QuotFunctor M = cokernel_functor(K, c);
    out.terms.push_back(M.Q);
    if (!M.Q.levels[0].is_zero()) rep.fail("cokernel is nonzero at the bottom level");
    if (M.Q.levels[1].tors != std::vector<Scalar>{Scalar(p)}) rep.fail("cokernel top is " + M.Q.levels[1].describe());
    // Z = F_1 and Ind Z = F_0 as modules over the constant Green functor
    const std::vector<std::vector<long>> cls{{0, 1}, {1, 0}, {1, 0}, {0, 1}};
    out.k0_class = {0, 0};
    for (std::size_t t = 0; t < cls.size(); ++t)
        for (std::size_t i = 0; i < 2; ++i) out.k0_class[i] += (t % 2 ? -1 : 1) * cls[t][i];
    if (out.k0_class != std::vector<long>{0, 0}) rep.fail("alternating K0 class is nonzero");
    return out;
}

}  // namespace eqa
