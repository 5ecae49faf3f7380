#include "eqalg/cyclic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eqa {

CyclicGroup::CyclicGroup(int p_, int n_) : p(p_), n(n_)
{
    if (!is_prime(p)) throw std::invalid_argument("CyclicGroup: " + std::to_string(p) + " is not prime");
    if (n < 0) throw std::invalid_argument("CyclicGroup: negative exponent");
}

long CyclicGroup::ipow(int e) const
{
    if (e < 0) throw std::invalid_argument("CyclicGroup::ipow: negative exponent");
    long r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

std::string CyclicGroup::subgroup_name(int s) const { return s == 0 ? "e" : "C" + std::to_string(ipow(s)); }

std::string CyclicGroup::orbit_name(int s) const { return subgroup_name(n) + "/" + subgroup_name(s); }

static void check_level(const CyclicGroup& G, int s, const char* who)
{
    if (s < 0 || s > G.n)
        throw std::out_of_range(std::string(who) + ": level " + std::to_string(s) + " outside 0.." + std::to_string(G.n));
}

FiniteGSet FiniteGSet::orbit(const CyclicGroup& G, int s)
{
    check_level(G, s, "FiniteGSet::orbit");
    FiniteGSet X = empty(G);
    X.mult[s] = 1;
    return X;
}

FiniteGSet FiniteGSet::empty(const CyclicGroup& G) { return FiniteGSet{G, std::vector<Scalar>(G.n + 1, 0)}; }

FiniteGSet FiniteGSet::operator+(const FiniteGSet& o) const
{
    if (G != o.G) throw std::invalid_argument("FiniteGSet: group mismatch");
    FiniteGSet r = *this;
    for (std::size_t s = 0; s < mult.size(); ++s) r.mult[s] += o.mult[s];
    return r;
}

Scalar FiniteGSet::cardinality() const
{
    Scalar c = 0;
    for (int s = 0; s <= G.n; ++s) c += mult[s] * G.ipow(G.n - s);
    return c;
}

FiniteGSet orbit_product(const CyclicGroup& G, int i, int j)
{
    check_level(G, i, "orbit_product");
    check_level(G, j, "orbit_product");
    FiniteGSet X = FiniteGSet::empty(G);
    X.mult[std::min(i, j)] = G.ipow(G.n - std::max(i, j));
    return X;
}

FiniteGSet restrict_gset(const FiniteGSet& X, int m)
{
    check_level(X.G, m, "restrict_gset");
    CyclicGroup H(X.G.p, m);
    FiniteGSet Y = FiniteGSet::empty(H);
    for (int s = 0; s <= X.G.n; ++s) Y.mult[std::min(m, s)] += X.mult[s] * X.G.ipow(X.G.n - std::max(m, s));
    return Y;
}

FiniteGSet induce_gset(const FiniteGSet& X, int n)
{
    if (n < X.G.n)
        throw std::out_of_range("induce_gset: target exponent " + std::to_string(n) + " below " + std::to_string(X.G.n));
    CyclicGroup G(X.G.p, n);
    FiniteGSet Y = FiniteGSet::empty(G);
    for (int s = 0; s <= X.G.n; ++s) Y.mult[s] += X.mult[s];
    return Y;
}

Matrix marks_matrix(const CyclicGroup& G)
{
    Matrix M(G.n + 1, G.n + 1);
    for (int t = 0; t <= G.n; ++t)
        for (int s = 0; s <= t; ++s) M(s, t) = G.ipow(G.n - t);
    return M;
}

Vec marks(const FiniteGSet& X)
{
    return mul(Base::integers(), marks_matrix(X.G), Vec(X.mult.begin(), X.mult.end()));
}

Vec marks(const BurnsideElement& x) { return mul(Base::integers(), marks_matrix(x.G), x.coeffs); }

std::vector<std::string> burnside_labels(const CyclicGroup& G)
{
    std::vector<std::string> l(G.n + 1);
    l[G.n] = "1";
    static const char* small[] = {"x", "y", "z"};
    for (int s = G.n - 1, k = 0; s >= 0; --s, ++k)
        l[s] = G.n <= 3 ? std::string(small[k]) : "x" + std::to_string(k + 1);
    return l;
}

BasedRing burnside_ring(const CyclicGroup& G)
{
    const std::size_t r = G.n + 1;
    Matrix m(r, r * r);
    for (int i = 0; i <= G.n; ++i)
        for (int j = 0; j <= G.n; ++j) {
            auto X = orbit_product(G, i, j);
            for (int s = 0; s <= G.n; ++s) m(s, i * r + j) = X.mult[s];
        }
    return make_based_ring(FPModule::free(Base::integers(), r), m, unit_vec(r, G.n), burnside_labels(G));
}

BurnsideElement burnside_product(const BurnsideElement& a, const BurnsideElement& b)
{
    if (a.G != b.G) throw std::invalid_argument("burnside_product: group mismatch");
    return BurnsideElement{a.G, burnside_ring(a.G).product(a.coeffs, b.coeffs)};
}

static std::string render_term(const Scalar& c, const std::string& mono, bool first)
{
    std::ostringstream os;
    Scalar a = c < 0 ? Scalar(-c) : c;
    if (c < 0)
        os << "-";
    else if (!first)
        os << "+";
    if (mono.empty())
        os << a.get_str();
    else {
        if (a != 1) os << a.get_str();
        os << mono;
    }
    return os.str();
}

std::string render_presentation(const BasedRing& R)
{
    if (R.base().is_field()) throw std::invalid_argument("render_presentation: ring must be over Z");
    std::size_t unit_idx = R.rank();
    for (std::size_t i = 0; i < R.rank(); ++i)
        if (R.unit == unit_vec(R.rank(), i)) unit_idx = i;
    if (unit_idx == R.rank()) throw std::invalid_argument("render_presentation: unit is not a basis element");
    // generators top-down: labels in descending basis index
    std::vector<std::size_t> gens;
    for (std::size_t i = R.rank(); i-- > 0;)
        if (i != unit_idx) gens.push_back(i);
    if (gens.empty()) return "Z";
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto g : gens) pairs.push_back({g, g});
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b) pairs.push_back({gens[a], gens[b]});
    std::ostringstream os;
    os << "Z[";
    for (std::size_t a = 0; a < gens.size(); ++a) os << (a ? "," : "") << R.labels[gens[a]];
    os << "]/(";
    bool first_rel = true;
    for (auto [a, b] : pairs) {
        std::string mono = a == b ? R.labels[a] + "^2" : R.labels[a] + R.labels[b];
        Vec prod = R.basis_product(a, b);
        std::string rel = mono;
        for (auto g : gens)
            if (prod[g] != 0) rel += render_term(-prod[g], R.labels[g], false);
        if (prod[unit_idx] != 0) rel += render_term(-prod[unit_idx], "", false);
        os << (first_rel ? "" : ",") << rel;
        first_rel = false;
    }
    os << ")";
    return os.str();
}

BurnsideQuotient burnside_quotient(const BasedRing& A, const std::vector<BurnsideElement>& ideal_gens)
{
    const Base Z = Base::integers();
    const std::size_t r = A.rank();
    std::size_t unit_idx = r;
    for (std::size_t i = 0; i < r; ++i)
        if (A.unit == unit_vec(r, i)) unit_idx = i;
    // ideal closure: g * b for generators g and basis elements b
    std::vector<Vec> cols;
    for (const auto& g : ideal_gens) {
        if (g.coeffs.size() != r) throw std::invalid_argument("burnside_quotient: element of wrong rank");
        for (std::size_t b = 0; b < r; ++b) cols.push_back(A.product(g.coeffs, unit_vec(r, b)));
    }
    Matrix L = image_basis(Z, Matrix::from_cols(r, cols));
    auto sn = smith_normal_form(L);
    for (std::size_t i = 0; i < sn.rank; ++i)
        if (sn.D(i, i) != 1)
            throw std::domain_error("burnside_quotient: quotient has torsion Z/" + sn.D(i, i).get_str() +
                                    ", no based presentation");

    std::vector<Vec> rels;
    for (std::size_t j = 0; j < L.cols; ++j) rels.push_back(L.col(j));
    std::vector<std::pair<std::size_t, Vec>> elim;  // b = expr (expr_b = 0)
    std::vector<bool> gone(r, false);
    for (;;) {
        bool found = false;
        for (std::size_t b = r; b-- > 0 && !found;) {
            if (b == unit_idx || gone[b]) continue;
            for (std::size_t k = 0; k < rels.size(); ++k) {
                const Scalar vb = rels[k][b];
                if (vb != 1 && vb != -1) continue;
                Vec v = rels[k];
                Vec expr(r);
                for (std::size_t i = 0; i < r; ++i)
                    if (i != b) expr[i] = -vb * v[i];
                for (std::size_t k2 = 0; k2 < rels.size(); ++k2) {
                    if (k2 == k) continue;
                    Scalar c = rels[k2][b] * vb;
                    for (std::size_t i = 0; i < r; ++i) rels[k2][i] -= c * v[i];
                }
                rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(k));
                rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Vec& x) { return vzero(x); }),
                           rels.end());
                elim.push_back({b, expr});
                gone[b] = true;
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    if (!rels.empty())
        throw std::domain_error("burnside_quotient: relations left after elimination; quotient has no based form");

    BurnsideQuotient q;
    for (std::size_t i = 0; i < r; ++i)
        if (!gone[i]) q.kept.push_back(i);
    const std::size_t k = q.kept.size();
    // images of all original basis elements in kept coordinates
    std::vector<Vec> img(r);
    for (std::size_t t = 0; t < k; ++t) img[q.kept[t]] = unit_vec(k, t);
    for (std::size_t e = elim.size(); e-- > 0;) {
        Vec v(k);
        const Vec& expr = elim[e].second;
        for (std::size_t i = 0; i < r; ++i)
            if (expr[i] != 0) {
                if (img[i].empty()) throw std::logic_error("burnside_quotient: unresolved elimination");
                for (std::size_t t = 0; t < k; ++t) v[t] += expr[i] * img[i][t];
            }
        img[elim[e].first] = v;
    }
    q.proj = Matrix::from_cols(k, img);
    Matrix m(k, k * k);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < k; ++a) {
        labels.push_back(A.labels[q.kept[a]]);
        for (std::size_t b = 0; b < k; ++b) m.set_col(a * k + b, mul(Z, q.proj, A.basis_product(q.kept[a], q.kept[b])));
    }
    q.ring = make_based_ring(FPModule::free(Z, k), m, mul(Z, q.proj, A.unit), labels);
    q.presentation = render_presentation(q.ring);
    return q;
}

}  // namespace eqa
