#include "eqalg/module.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eqa {

bool FPModule::is_free() const
{
    return std::all_of(tors.begin(), tors.end(), [](const Scalar& d) { return d == 0; });
}

std::size_t FPModule::free_rank() const
{
    return static_cast<std::size_t>(std::count_if(tors.begin(), tors.end(), [](const Scalar& d) { return d == 0; }));
}

Vec FPModule::reduce(Vec v) const
{
    if (v.size() != tors.size()) throw std::invalid_argument("FPModule::reduce: length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (base.is_field()) {
            base.normalize(v[i]);
        } else if (tors[i] != 0) {
            mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), tors[i].get_mpz_t());
        }
    }
    return v;
}

Matrix FPModule::reduce_cols(Matrix f) const
{
    if (f.rows != tors.size()) throw std::invalid_argument("FPModule::reduce_cols: row mismatch");
    if (base.is_field() || is_free()) return f;
    for (std::size_t i = 0; i < f.rows; ++i)
        if (tors[i] != 0)
            for (std::size_t j = 0; j < f.cols; ++j)
                mpz_fdiv_r(f(i, j).get_mpz_t(), f(i, j).get_mpz_t(), tors[i].get_mpz_t());
    return f;
}

bool FPModule::equal(const Vec& a, const Vec& b) const { return reduce(a) == reduce(b); }

bool FPModule::maps_equal(const Matrix& f, const Matrix& g) const
{
    if (f.rows != g.rows || f.cols != g.cols) return false;
    return reduce_cols(f) == reduce_cols(g);
}

Matrix FPModule::relations() const
{
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < tors.size(); ++i)
        if (tors[i] != 0) {
            Vec c(tors.size());
            c[i] = tors[i];
            cols.push_back(c);
        }
    return Matrix::from_cols(tors.size(), cols);
}

std::vector<Scalar> FPModule::invariants() const
{
    std::vector<Scalar> t, out;
    std::size_t fr = 0;
    for (const auto& d : tors) {
        if (d == 0)
            ++fr;
        else
            t.push_back(d);
    }
    // normalize torsion part to invariant factor form
    if (!t.empty()) {
        Matrix Dm(t.size(), t.size());
        for (std::size_t i = 0; i < t.size(); ++i) Dm(i, i) = t[i];
        auto f = smith_normal_form(Dm);
        for (std::size_t i = 0; i < t.size(); ++i)
            if (f.D(i, i) != 1) out.push_back(f.D(i, i));
    }
    for (std::size_t i = 0; i < fr; ++i) out.push_back(0);
    return out;
}

std::string FPModule::describe() const
{
    if (base.is_field()) return base.name() + "^" + std::to_string(size());
    std::ostringstream os;
    auto inv = invariants();
    std::size_t fr = 0;
    bool first = true;
    for (const auto& d : inv) {
        if (d == 0) {
            ++fr;
            continue;
        }
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (fr) os << (first ? "" : " + ") << "Z^" << fr;
    if (inv.empty()) os << "0";
    return os.str();
}

bool map_well_defined(const FPModule& M, const FPModule& N, const Matrix& f)
{
    if (f.rows != N.size() || f.cols != M.size()) return false;
    if (M.base.is_field()) return true;
    for (std::size_t j = 0; j < M.size(); ++j) {
        if (M.tors[j] == 0) continue;
        Vec v = f.col(j);
        for (auto& x : v) x *= M.tors[j];
        if (!vzero(N.reduce(v))) return false;
    }
    return true;
}

QuotientModule present(const Base& B, std::size_t gens, const Matrix& rel)
{
    if (rel.rows != gens) throw std::invalid_argument("present: relation rows mismatch");
    QuotientModule q;
    q.Q.base = B;
    if (B.is_field()) {
        Matrix W = image_basis(B, rel);
        auto comp = complement_indices(B, W);
        Matrix T = W;
        for (auto i : comp) T = hstack(T, Matrix::from_cols(gens, {unit_vec(gens, i)}));
        auto Tinv = inverse(B, T);
        if (!Tinv) throw std::logic_error("present: complement is not a basis");
        q.Q = FPModule::free(B, comp.size());
        q.proj = Matrix(comp.size(), gens);
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = 0; j < gens; ++j) q.proj(i, j) = (*Tinv)(W.cols + i, j);
        q.lift = Matrix(gens, comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) q.lift(comp[i], i) = 1;
        return q;
    }
    auto f = smith_normal_form(rel);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < gens; ++i)
        if (f.d(i) != 1) kept.push_back(i);
    q.Q.tors.resize(kept.size());
    q.proj = Matrix(kept.size(), gens);
    q.lift = Matrix(gens, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        q.Q.tors[k] = f.d(kept[k]);
        for (std::size_t j = 0; j < gens; ++j) {
            q.proj(k, j) = f.U(kept[k], j);
            q.lift(j, k) = f.Uinv(j, kept[k]);
        }
    }
    q.proj = q.Q.reduce_cols(q.proj);
    return q;
}

QuotientModule cokernel(const FPModule& N, const Matrix& f)
{
    if (f.rows != N.size()) throw std::invalid_argument("cokernel: map does not land in module");
    return present(N.base, N.size(), hstack(N.relations(), f));
}

// submodule L / D_N of N for a lattice L containing the relation lattice
static SubModule sub_from_lattice(const FPModule& N, const Matrix& L)
{
    const Base& B = N.base;
    Matrix Dn = N.relations();
    Matrix rel(L.cols, Dn.cols);
    if (Dn.cols) {
        auto c = solve(B, L, Dn);
        if (!c) throw std::logic_error("sub_from_lattice: lattice misses relations");
        rel = *c;
    }
    auto q = present(B, L.cols, rel);
    SubModule s;
    s.S = q.Q;
    s.incl = N.reduce_cols(mul(B, L, q.lift));
    return s;
}

SubModule image(const FPModule& N, const Matrix& f)
{
    if (f.rows != N.size()) throw std::invalid_argument("image: map does not land in module");
    const Base& B = N.base;
    if (B.is_field()) {
        Matrix W = image_basis(B, f);
        return SubModule{FPModule::free(B, W.cols), W};
    }
    Matrix L = image_basis(B, hstack(f, N.relations()));
    return sub_from_lattice(N, L);
}

SubModule kernel(const FPModule& M, const FPModule& N, const Matrix& f)
{
    if (f.rows != N.size() || f.cols != M.size()) throw std::invalid_argument("kernel: shape mismatch");
    const Base& B = M.base;
    if (B.is_field()) {
        Matrix K = kernel(B, f);
        return SubModule{FPModule::free(B, K.cols), K};
    }
    Matrix Dn = N.relations();
    Matrix K = kernel(B, hstack(f, Dn));
    Matrix top(M.size(), K.cols);
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < K.cols; ++j) top(i, j) = K(i, j);
    Matrix L = image_basis(B, hstack(top, M.relations()));
    return sub_from_lattice(M, L);
}

std::optional<Vec> coords_in(const FPModule& N, const SubModule& S, const Vec& v)
{
    const Base& B = N.base;
    Matrix A = hstack(S.incl, N.relations());
    auto x = solve(B, A, v);
    if (!x) return std::nullopt;
    Vec y(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(S.S.size()));
    return S.S.reduce(y);
}

std::optional<Matrix> restrict_map(const FPModule& N2, const SubModule& S, const SubModule& T, const Matrix& h)
{
    Matrix img = mul(N2.base, h, S.incl);
    Matrix g(T.S.size(), S.S.size());
    for (std::size_t j = 0; j < S.S.size(); ++j) {
        auto c = coords_in(N2, T, img.col(j));
        if (!c) return std::nullopt;
        g.set_col(j, *c);
    }
    return g;
}

FPModule direct_sum(const std::vector<FPModule>& ms)
{
    if (ms.empty()) throw std::invalid_argument("direct_sum: empty list");
    FPModule s;
    s.base = ms[0].base;
    for (const auto& m : ms) s.tors.insert(s.tors.end(), m.tors.begin(), m.tors.end());
    return s;
}

Subquotient module_subquotient(const FPModule& M, const Matrix& span)
{
    if (span.rows != M.size())
        throw std::invalid_argument("module_subquotient: span has " + std::to_string(span.rows) +
                                    " rows, module has " + std::to_string(M.size()) + " generators");
    Subquotient r;
    r.sub = image(M, span);
    r.quo = cokernel(M, span);
    return r;
}

}  // namespace eqa
