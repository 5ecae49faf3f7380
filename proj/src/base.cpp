#include "eqalg/base.hpp"

#include <stdexcept>

namespace eqa {

static std::uint64_t ui(const Scalar& a) { return a.get_ui(); }

Base Base::field(const Field& F)
{
    Base b;
    b.kind_ = F.k() == 1 ? Kind::Prime : Kind::Extension;
    b.f_ = std::make_shared<const Field>(F);
    return b;
}

const Field& Base::field() const
{
    if (!f_) throw std::logic_error("Base::field: base is Z");
    return *f_;
}

Scalar Base::add(const Scalar& a, const Scalar& b) const
{
    switch (kind_) {
    case Kind::Integers: return a + b;
    case Kind::Prime: {
        Scalar r = a + b;
        if (r >= f_->p()) r -= f_->p();
        return r;
    }
    default: return Scalar(static_cast<unsigned long>(f_->add(ui(a), ui(b))));
    }
}

Scalar Base::neg(const Scalar& a) const
{
    switch (kind_) {
    case Kind::Integers: return -a;
    case Kind::Prime: return a == 0 ? Scalar(0) : Scalar(f_->p() - a);
    default: return Scalar(static_cast<unsigned long>(f_->neg(ui(a))));
    }
}

Scalar Base::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Base::mul(const Scalar& a, const Scalar& b) const
{
    switch (kind_) {
    case Kind::Integers: return a * b;
    case Kind::Prime: {
        Scalar r = a * b;
        mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), f_->p());
        return r;
    }
    default: return Scalar(static_cast<unsigned long>(f_->mul(ui(a), ui(b))));
    }
}

Scalar Base::inv(const Scalar& a) const
{
    switch (kind_) {
    case Kind::Integers:
        if (a == 1 || a == -1) return a;
        throw std::domain_error("Base::inv: non-unit integer");
    default: return Scalar(static_cast<unsigned long>(f_->inv(ui(a))));
    }
}

Scalar Base::from_int(const Scalar& n) const
{
    if (kind_ == Kind::Integers) return n;
    Scalar r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), f_->p());
    return r;
}

void Base::fma(Scalar& acc, const Scalar& a, const Scalar& b) const
{
    if (kind_ == Kind::Extension) {
        acc = Scalar(static_cast<unsigned long>(f_->add(ui(acc), f_->mul(ui(a), ui(b)))));
        return;
    }
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

void Base::normalize(Scalar& a) const
{
    if (kind_ == Kind::Prime) mpz_fdiv_r_ui(a.get_mpz_t(), a.get_mpz_t(), f_->p());
}

bool Base::is_unit(const Scalar& a) const
{
    if (kind_ == Kind::Integers) return a == 1 || a == -1;
    return a != 0;
}

std::string Base::name() const
{
    if (kind_ == Kind::Integers) return "Z";
    return f_->name();
}

bool Base::operator==(const Base& o) const
{
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Integers) return true;
    return *f_ == *o.f_;
}

}  // namespace eqa
