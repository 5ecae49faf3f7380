#include "eqalg/field.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace eqa {

namespace poly {

static int md(long long a, int p)
{
    a %= p;
    return static_cast<int>(a < 0 ? a + p : a);
}

std::vector<int> trim(std::vector<int> a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> rem(std::vector<int> a, const std::vector<int>& m, int p)
{
    a = trim(std::move(a));
    std::vector<int> mm = trim(m);
    if (mm.empty()) throw std::invalid_argument("poly::rem: zero modulus");
    int lead_inv = 1;
    for (int t = 1; t < p; ++t)
        if (md(static_cast<long long>(t) * mm.back(), p) == 1) lead_inv = t;
    while (a.size() >= mm.size()) {
        std::size_t shift = a.size() - mm.size();
        int c = md(static_cast<long long>(a.back()) * lead_inv, p);
        for (std::size_t i = 0; i < mm.size(); ++i)
            a[shift + i] = md(a[shift + i] - static_cast<long long>(c) * mm[i], p);
        a = trim(std::move(a));
    }
    return a;
}

std::vector<int> mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& m, int p)
{
    if (a.empty() || b.empty()) return {};
    std::vector<long long> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + static_cast<long long>(a[i]) * b[j]) % p;
    std::vector<int> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = md(r[i], p);
    return rem(std::move(out), m, p);
}

std::vector<int> gcd(std::vector<int> a, std::vector<int> b, int p)
{
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        int inv = 1;
        for (int t = 1; t < p; ++t)
            if (md(static_cast<long long>(t) * a.back(), p) == 1) inv = t;
        for (auto& c : a) c = md(static_cast<long long>(c) * inv, p);
    }
    return a;
}

std::string to_string(const std::vector<int>& a, char var)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || a[i] != 1) os << a[i];
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace poly

bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<int> Field::coeffs(std::uint64_t a) const
{
    std::vector<int> c(k_);
    for (int i = 0; i < k_; ++i) {
        c[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return c;
}

std::uint64_t Field::pack(const std::vector<int>& c) const
{
    std::uint64_t a = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (static_cast<int>(i) >= k_) {
            if (c[i] != 0) throw std::invalid_argument("Field::pack: too many coefficients");
            continue;
        }
        a = a * p_ + static_cast<std::uint64_t>(poly::md(c[i], p_));
    }
    return a;
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const
{
    if (k_ == 1) return (a + b) % p_;
    std::uint64_t r = 0, w = 1;
    for (int i = 0; i < k_; ++i) {
        r += ((a % p_ + b % p_) % p_) * w;
        a /= p_;
        b /= p_;
        w *= p_;
    }
    return r;
}

std::uint64_t Field::neg(std::uint64_t a) const
{
    if (k_ == 1) return (p_ - a % p_) % p_;
    std::uint64_t r = 0, w = 1;
    for (int i = 0; i < k_; ++i) {
        r += ((p_ - a % p_) % p_) * w;
        a /= p_;
        w *= p_;
    }
    return r;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul_slow(std::uint64_t a, std::uint64_t b) const
{
    if (k_ == 1) return (a * b) % p_;
    return pack(poly::mulmod(poly::trim(coeffs(a)), poly::trim(coeffs(b)), mod_, p_));
}

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const
{
    if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
    return mul_slow(a, b);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const
{
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow(a, q_ - 2);
}

std::uint64_t Field::from_int(long long n) const { return static_cast<std::uint64_t>(poly::md(n, p_)); }

std::uint64_t Field::frobenius_pow(std::uint64_t a, int j) const
{
    j %= k_;
    if (j < 0) j += k_;
    for (int i = 0; i < j; ++i) a = frobenius(a);
    return a;
}

std::uint64_t Field::gen() const
{
    if (k_ == 1) return from_int(-mod_[0]);
    return static_cast<std::uint64_t>(p_);
}

std::string Field::name() const { return "F" + std::to_string(q_); }

Field gf_make(int p, int k, const std::vector<int>& modulus)
{
    if (!is_prime(p)) throw std::invalid_argument("gf_make: " + std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("gf_make: degree must be positive");
    std::vector<int> m(modulus.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = poly::md(modulus[i], p);
    m = poly::trim(m);
    if (static_cast<int>(m.size()) != k + 1 || m.back() != 1)
        throw std::invalid_argument("gf_make: modulus must be monic of degree " + std::to_string(k));
    // Rabin-style: gcd(m, x^{p^i} - x) = 1 for i <= k/2
    std::vector<int> xp{0, 1};
    for (int i = 1; i <= k / 2; ++i) {
        // xp <- xp^p mod m
        std::vector<int> acc{1}, base = xp;
        for (int e = p; e; e >>= 1) {
            if (e & 1) acc = poly::mulmod(acc, base, m, p);
            base = poly::mulmod(base, base, m, p);
        }
        xp = acc;
        std::vector<int> diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = poly::md(diff[1] - 1, p);
        auto g = poly::gcd(m, diff, p);
        if (g.size() > 1)
            throw std::invalid_argument("gf_make: modulus " + poly::to_string(m) + " is reducible over F" +
                                        std::to_string(p) + ", factor " + poly::to_string(g));
    }
    Field F;
    F.p_ = p;
    F.k_ = k;
    F.mod_ = m;
    F.q_ = 1;
    for (int i = 0; i < k; ++i) F.q_ *= static_cast<std::uint64_t>(p);
    if (F.q_ <= 1024) {
        F.mul_tab_.resize(F.q_ * F.q_);
        for (std::uint64_t a = 0; a < F.q_; ++a)
            for (std::uint64_t b = 0; b < F.q_; ++b)
                F.mul_tab_[a * F.q_ + b] = static_cast<std::uint32_t>(F.mul_slow(a, b));
        F.inv_tab_.assign(F.q_, 0);
        for (std::uint64_t a = 1; a < F.q_; ++a)
            for (std::uint64_t b = 1; b < F.q_; ++b)
                if (F.mul_tab_[a * F.q_ + b] == 1) F.inv_tab_[a] = static_cast<std::uint32_t>(b);
    }
    return F;
}

std::vector<int> default_modulus(int p, int k)
{
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},      {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 2}, {2, 2, 1}},          {{3, 3}, {1, 2, 0, 1}},      {{5, 2}, {2, 4, 1}},
        {{7, 2}, {3, 6, 1}},
    };
    if (k == 1) return {0, 1};
    auto it = table.find({p, k});
    if (it != table.end()) return it->second;
    // lexicographic search for an irreducible monic polynomial
    std::vector<int> c(k + 1, 0);
    c[k] = 1;
    for (;;) {
        try {
            gf_make(p, k, c);
            return c;
        } catch (const std::invalid_argument&) {
        }
        int i = 0;
        while (i < k && ++c[i] == p) c[i++] = 0;
        if (i == k) throw std::invalid_argument("default_modulus: no irreducible found");
    }
}

Field gf_default(int p, int k) { return gf_make(p, k, default_modulus(p, k)); }

std::uint64_t galois_trace(const Field& F, std::uint64_t x, int subdegree)
{
    if (subdegree <= 0 || F.k() % subdegree != 0)
        throw std::invalid_argument("galois_trace: subdegree " + std::to_string(subdegree) + " does not divide " +
                                    std::to_string(F.k()));
    std::uint64_t acc = 0, y = x;
    for (int i = 0; i < F.k() / subdegree; ++i) {
        acc = F.add(acc, y);
        y = F.frobenius_pow(y, subdegree);
    }
    return acc;
}

}  // namespace eqa
