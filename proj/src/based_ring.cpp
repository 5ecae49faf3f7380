#include "eqalg/based_ring.hpp"

#include <sstream>
#include <stdexcept>

namespace eqa {

Vec BasedRing::basis_product(std::size_t a, std::size_t b) const { return mult.col(a * rank() + b); }

Vec BasedRing::product(const Vec& x, const Vec& y) const
{
    const Base& B = base();
    const std::size_t r = rank();
    Vec z(r);
    for (std::size_t a = 0; a < r; ++a) {
        if (x[a] == 0) continue;
        for (std::size_t b = 0; b < r; ++b) {
            if (y[b] == 0) continue;
            Scalar c = B.mul(x[a], y[b]);
            for (std::size_t k = 0; k < r; ++k) {
                const Scalar& m = mult(k, a * r + b);
                if (m != 0) B.fma(z[k], c, m);
            }
        }
    }
    for (auto& v : z) B.normalize(v);
    return group.reduce(z);
}

Matrix BasedRing::left_mult(const Vec& x) const
{
    Matrix L(rank(), rank());
    for (std::size_t b = 0; b < rank(); ++b) L.set_col(b, product(x, unit_vec(rank(), b)));
    return L;
}

Matrix BasedRing::right_mult(const Vec& x) const
{
    Matrix L(rank(), rank());
    for (std::size_t b = 0; b < rank(); ++b) L.set_col(b, product(unit_vec(rank(), b), x));
    return L;
}

bool BasedRing::is_commutative() const
{
    for (std::size_t a = 0; a < rank(); ++a)
        for (std::size_t b = a + 1; b < rank(); ++b)
            if (!group.equal(basis_product(a, b), basis_product(b, a))) return false;
    return true;
}

BasedRing make_based_ring(const FPModule& group, Matrix mult, Vec unit, std::vector<std::string> labels)
{
    const std::size_t r = group.size();
    if (mult.rows != r || mult.cols != r * r) throw std::invalid_argument("make_based_ring: tensor shape mismatch");
    if (unit.size() != r) throw std::invalid_argument("make_based_ring: unit length mismatch");
    if (labels.empty())
        for (std::size_t i = 0; i < r; ++i) labels.push_back("e" + std::to_string(i));
    BasedRing R;
    R.group = group;
    R.mult = group.reduce_cols(std::move(mult));
    R.unit = group.reduce(std::move(unit));
    R.labels = std::move(labels);
    return R;
}

Report based_ring_check(const BasedRing& R, bool require_commutative)
{
    Report rep;
    const std::size_t r = R.rank();
    for (std::size_t a = 0; a < r; ++a) {
        Vec ea = unit_vec(r, a);
        if (!R.group.equal(R.product(R.unit, ea), ea) || !R.group.equal(R.product(ea, R.unit), ea)) {
            rep.fail("unit axiom fails on basis element " + std::to_string(a));
            return rep;
        }
    }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            Vec ab = R.basis_product(a, b);
            if (require_commutative && !R.group.equal(ab, R.basis_product(b, a))) {
                rep.fail("commutativity fails on basis pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
                return rep;
            }
            for (std::size_t c = 0; c < r; ++c) {
                Vec lhs = R.product(ab, unit_vec(r, c));
                Vec rhs = R.product(unit_vec(r, a), R.basis_product(b, c));
                if (!R.group.equal(lhs, rhs)) {
                    rep.fail("associativity fails on basis triple (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")");
                    return rep;
                }
            }
        }
    return rep;
}

BasedRing zero_ring(const Base& B) { return make_based_ring(FPModule::free(B, 0), Matrix(0, 0), Vec{}, {}); }

BasedRing scalar_ring(const Base& B)
{
    Matrix m(1, 1);
    m(0, 0) = 1;
    return make_based_ring(FPModule::free(B, 1), m, Vec{Scalar(1)}, {"1"});
}

BasedRing field_ring(const Field& F)
{
    Base B = Base::prime(F.p());
    const int k = F.k();
    std::uint64_t pk = 1;
    std::vector<std::uint64_t> basis;
    for (int i = 0; i < k; ++i) {
        basis.push_back(pk);
        pk *= static_cast<std::uint64_t>(F.p());
    }
    Matrix mult(k, k * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            auto c = F.coeffs(F.mul(basis[a], basis[b]));
            for (int i = 0; i < k; ++i) mult(i, a * k + b) = c[i];
        }
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    return make_based_ring(FPModule::free(B, k), mult, unit_vec(k, 0), labels);
}

Matrix frobenius_matrix(const Field& F)
{
    const int k = F.k();
    Matrix M(k, k);
    std::uint64_t pk = 1;
    for (int j = 0; j < k; ++j) {
        auto c = F.coeffs(F.frobenius(pk));
        for (int i = 0; i < k; ++i) M(i, j) = c[i];
        pk *= static_cast<std::uint64_t>(F.p());
    }
    return M;
}

bool is_ring_hom(const BasedRing& S, const BasedRing& T, const Matrix& f)
{
    const Base& B = S.base();
    if (f.rows != T.rank() || f.cols != S.rank()) return false;
    if (!map_well_defined(S.group, T.group, f)) return false;
    if (!T.group.equal(mul(B, f, S.unit), T.unit)) return false;
    for (std::size_t a = 0; a < S.rank(); ++a)
        for (std::size_t b = 0; b < S.rank(); ++b) {
            Vec lhs = mul(B, f, S.basis_product(a, b));
            Vec rhs = T.product(f.col(a), f.col(b));
            if (!T.group.equal(lhs, rhs)) return false;
        }
    return true;
}

static Vec ring_pow(const BasedRing& R, Vec x, std::uint64_t e)
{
    Vec r = R.unit;
    while (e) {
        if (e & 1) r = R.product(r, x);
        e >>= 1;
        if (e) x = R.product(x, x);
    }
    return r;
}

Matrix q_frobenius(const BasedRing& R)
{
    if (!R.base().is_field()) throw std::logic_error("q_frobenius: base must be a finite field");
    Matrix F(R.rank(), R.rank());
    for (std::size_t j = 0; j < R.rank(); ++j) F.set_col(j, ring_pow(R, unit_vec(R.rank(), j), R.base().size()));
    return F;
}

bool is_field_ring(const BasedRing& R)
{
    const Base& B = R.base();
    if (!B.is_field() || R.rank() == 0 || !R.is_commutative()) return false;
    Matrix F = q_frobenius(R);
    Matrix FN = F;
    for (std::size_t q = B.size(); q < R.rank(); q *= B.size()) FN = mul(B, FN, F);
    if (kernel(B, FN).cols != 0) return false;
    Matrix fixed = sub(B, F, Matrix::identity(R.rank()));
    return kernel(B, fixed).cols == 1;
}

std::string ring_name(const BasedRing& R)
{
    const Base& B = R.base();
    if (R.rank() == 0) return "0";
    if (!B.is_field()) {
        if (R.rank() == 1 && R.group.is_free()) return "Z";
        return "Z-ring(" + R.group.describe() + ")";
    }
    if (is_field_ring(R)) {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), B.size(), R.rank());
        return "F" + q.get_str();
    }
    std::ostringstream os;
    os << B.name() << "-algebra(rank " << R.rank() << ")";
    return os.str();
}

}  // namespace eqa
