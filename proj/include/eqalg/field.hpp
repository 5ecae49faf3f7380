#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eqa {

// Finite field GF(p^k) presented as F_p[x]/(modulus).  Elements are packed
// integers c_0 + c_1 p + ... + c_{k-1} p^{k-1} in the power basis.
class Field {
public:
    Field() = default;

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint64_t q() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t from_int(long long n) const;

    // x -> x^p and its j-th iterate
    std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p_); }
    std::uint64_t frobenius_pow(std::uint64_t a, int j) const;

    // class of x in F_p[x]/(modulus)
    std::uint64_t gen() const;

    std::vector<int> coeffs(std::uint64_t a) const;
    std::uint64_t pack(const std::vector<int>& c) const;

    // "F4", "F9", "F2"
    std::string name() const;
    bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && mod_ == o.mod_; }

private:
    friend Field gf_make(int p, int k, const std::vector<int>& modulus);
    std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;

    int p_ = 2, k_ = 1;
    std::uint64_t q_ = 2;
    std::vector<int> mod_{0, 1};
    std::vector<std::uint32_t> mul_tab_, inv_tab_;
};

bool is_prime(long long n);

// modulus given low-to-high, monic, length k+1; throws std::invalid_argument
// on a reducible modulus (message carries a factor) or a non-prime p.
Field gf_make(int p, int k, const std::vector<int>& modulus);

// Conway-style default moduli for p^k <= 64, found by search beyond that.
std::vector<int> default_modulus(int p, int k);
Field gf_default(int p, int k);

// sum of sigma^i(x) for sigma = Frobenius^subdegree, i < k/subdegree
std::uint64_t galois_trace(const Field& F, std::uint64_t x, int subdegree);

// polynomial helpers over F_p, low-to-high coefficient vectors
namespace poly {
std::vector<int> trim(std::vector<int> a);
std::vector<int> mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& m, int p);
std::vector<int> rem(std::vector<int> a, const std::vector<int>& m, int p);
std::vector<int> gcd(std::vector<int> a, std::vector<int> b, int p);
std::string to_string(const std::vector<int>& a, char var = 'x');
}  // namespace poly

}  // namespace eqa
