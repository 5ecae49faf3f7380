#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

#include "eqalg/field.hpp"

namespace eqa {

using Scalar = mpz_class;

// Coefficient ring of every matrix in the library: the integers or a finite
// field.  Field elements are packed integers (see Field).
class Base {
public:
    enum class Kind { Integers, Prime, Extension };

    Base() = default;
    static Base integers() { return Base(); }
    static Base field(const Field& F);
    static Base prime(int p) { return field(gf_make(p, 1, {0, 1})); }

    Kind kind() const { return kind_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    const Field& field() const;
    long characteristic() const { return is_field() ? f_->p() : 0; }
    // field size, 0 for Z
    std::uint64_t size() const { return is_field() ? f_->q() : 0; }

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar from_int(const Scalar& n) const;
    // acc += a*b, with reduction deferred until normalize (Z, prime fields)
    void fma(Scalar& acc, const Scalar& a, const Scalar& b) const;
    void normalize(Scalar& a) const;
    bool is_unit(const Scalar& a) const;

    std::string name() const;
    bool operator==(const Base& o) const;
    bool operator!=(const Base& o) const { return !(*this == o); }

private:
    Kind kind_ = Kind::Integers;
    std::shared_ptr<const Field> f_;
};

}  // namespace eqa
