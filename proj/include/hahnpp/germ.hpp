#pragma once

#include <optional>
#include <utility>

#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/rational.hpp>

namespace hahnpp
{

// Quotient num/den of generalized polynomials. Normalized so that den's
// least-value coefficient is 1; a monomial denominator is absorbed into the
// numerator. Equality goes through cross-multiplication.
class RationalGerm
{
public:
    explicit RationalGerm(Polynomial num)
        : num_(std::move(num)), den_(Polynomial::constant(num_.context(), Rational(1)))
    {
    }

    RationalGerm(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den))
    {
        num_.check_same(den_);
        normalize();
    }

    static RationalGerm constant(const ContextPtr &ctx, const Rational &c)
    {
        return RationalGerm(Polynomial::constant(ctx, c));
    }

    static RationalGerm zero(const ContextPtr &ctx)
    {
        return RationalGerm(Polynomial(ctx));
    }

    const Polynomial &num() const noexcept
    {
        return num_;
    }
    const Polynomial &den() const noexcept
    {
        return den_;
    }
    const ContextPtr &context() const noexcept
    {
        return num_.context();
    }

    bool is_zero() const noexcept
    {
        return num_.is_zero();
    }

    bool is_polynomial() const
    {
        return den_.is_constant();
    }

    std::optional<GroupElement> value() const
    {
        if (num_.is_zero()) {
            return std::nullopt;
        }
        return *num_.value() - *den_.value();
    }

    // Leading coefficient of the quotient (den's is 1).
    Rational leading_coefficient() const
    {
        return num_.leading().coeff;
    }

    // Germs of generators are positive, so the sign is that of the
    // leading coefficient.
    int sign() const
    {
        return num_.is_zero() ? 0 : sgn(num_.leading().coeff);
    }

    RationalGerm inverse() const
    {
        if (num_.is_zero()) {
            throw DivisionByZeroGerm("inverse of the zero germ");
        }
        return RationalGerm(den_, num_);
    }

    RationalGerm pow(long n) const
    {
        if (n < 0) {
            return inverse().pow(-n);
        }
        const auto un = static_cast<unsigned long>(n);
        return RationalGerm(num_.pow(un), den_.pow(un));
    }

    RationalGerm scaled(const Rational &q) const
    {
        return RationalGerm(num_.scaled(q), den_);
    }

    RationalGerm times(const Monomial &m) const
    {
        return RationalGerm(num_.times(m), den_);
    }

    friend RationalGerm operator+(const RationalGerm &a, const RationalGerm &b)
    {
        if (a.den_ == b.den_) {
            return RationalGerm(a.num_ + b.num_, a.den_);
        }
        return RationalGerm(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalGerm operator-(const RationalGerm &a, const RationalGerm &b)
    {
        if (a.den_ == b.den_) {
            return RationalGerm(a.num_ - b.num_, a.den_);
        }
        return RationalGerm(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalGerm operator-(const RationalGerm &a)
    {
        return a.scaled(Rational(-1));
    }
    friend RationalGerm operator*(const RationalGerm &a, const RationalGerm &b)
    {
        return RationalGerm(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalGerm operator/(const RationalGerm &a, const RationalGerm &b)
    {
        if (b.is_zero()) {
            throw DivisionByZeroGerm("division by the zero germ");
        }
        return RationalGerm(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RationalGerm &a, const RationalGerm &b)
    {
        if (a.den_ == b.den_) {
            return a.num_ == b.num_;
        }
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

private:
    void normalize()
    {
        if (den_.is_zero()) {
            throw DivisionByZeroGerm("germ with zero denominator");
        }
        const auto &ctx = num_.context();
        if (num_.is_zero()) {
            den_ = Polynomial::constant(ctx, Rational(1));
            return;
        }
        const Term lead = den_.leading();
        if (den_.is_monomial()) {
            num_ = num_.times(lead.mono.inverse()).scaled(Rational(1) / lead.coeff);
            den_ = Polynomial::constant(ctx, Rational(1));
            return;
        }
        if (lead.coeff != 1) {
            const Rational inv = Rational(1) / lead.coeff;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Polynomial num_;
    Polynomial den_;
};

// v(num) - v(den); nullopt for the zero germ.
inline std::optional<GroupElement> germ_value(const RationalGerm &h)
{
    return h.value();
}

} // namespace hahnpp
