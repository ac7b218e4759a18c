#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/rational.hpp>
#include <hahnpp/value_group.hpp>

namespace hahnpp
{

struct Term {
    Rational coeff;
    Monomial mono;
    GroupElement value;
};

// Element of the group ring Q[monomials]: a finite sum of terms with
// nonzero coefficients, kept sorted strictly increasing by value. Since the
// value map is injective on monomials, the first term is the unique term of
// least value and equal polynomials have identical term lists.
class GeneralizedPolynomial
{
public:
    explicit GeneralizedPolynomial(ContextPtr ctx) : ctx_(std::move(ctx))
    {
        if (!ctx_) {
            throw std::invalid_argument("polynomial needs a context");
        }
    }

    GeneralizedPolynomial(ContextPtr ctx, std::vector<std::pair<Rational, Monomial>> terms)
        : GeneralizedPolynomial(std::move(ctx))
    {
        terms_.reserve(terms.size());
        for (auto &[c, m] : terms) {
            if (m.size() != ctx_->size()) {
                throw std::invalid_argument("monomial does not match the context");
            }
            GroupElement v = ctx_->value(m);
            terms_.push_back(Term{std::move(c), std::move(m), std::move(v)});
        }
        normalize();
    }

    static GeneralizedPolynomial constant(ContextPtr ctx, const Rational &c)
    {
        GeneralizedPolynomial p(ctx);
        if (c != 0) {
            p.terms_.push_back(Term{c, p.ctx_->one(), GroupElement{}});
        }
        return p;
    }

    static GeneralizedPolynomial monomial(ContextPtr ctx, const Monomial &m,
                                          const Rational &c = Rational(1))
    {
        return GeneralizedPolynomial(std::move(ctx), {{c, m}});
    }

    const ContextPtr &context() const noexcept
    {
        return ctx_;
    }
    const std::vector<Term> &terms() const noexcept
    {
        return terms_;
    }
    std::size_t size() const noexcept
    {
        return terms_.size();
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    // Least term value; nullopt stands for the value of 0 (infinity).
    std::optional<GroupElement> value() const
    {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.front().value;
    }

    const Term &leading() const
    {
        if (terms_.empty()) {
            throw ZeroArgument("the zero polynomial has no leading term");
        }
        return terms_.front();
    }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
    }

    bool is_monomial() const
    {
        return terms_.size() == 1;
    }

    // Coefficient of monomial m (0 when absent).
    Rational coefficient(const Monomial &m) const
    {
        for (const auto &t : terms_) {
            if (t.mono == m) {
                return t.coeff;
            }
        }
        return Rational(0);
    }

    GeneralizedPolynomial scaled(const Rational &q) const
    {
        if (q == 0) {
            return GeneralizedPolynomial(ctx_);
        }
        GeneralizedPolynomial out(*this);
        for (auto &t : out.terms_) {
            t.coeff *= q;
        }
        return out;
    }

    // Multiplication by a monomial shifts every value by the same amount,
    // so the order is preserved.
    GeneralizedPolynomial times(const Monomial &m) const
    {
        const GroupElement shift = ctx_->value(m);
        GeneralizedPolynomial out(*this);
        for (auto &t : out.terms_) {
            t.mono = t.mono * m;
            t.value = t.value + shift;
        }
        return out;
    }

    GeneralizedPolynomial pow(unsigned long n) const
    {
        GeneralizedPolynomial result = constant(ctx_, Rational(1));
        GeneralizedPolynomial base(*this);
        while (n > 0) {
            if (n & 1UL) {
                result = result * base;
            }
            n >>= 1;
            if (n > 0) {
                base = base * base;
            }
        }
        return result;
    }

    // Terms whose value is < bound (strict) or <= bound (!strict).
    GeneralizedPolynomial truncated(const GroupElement &bound, bool strict = true) const
    {
        GeneralizedPolynomial out(ctx_);
        for (const auto &t : terms_) {
            const auto c = ctx_->group().compare(t.value, bound);
            if (c < 0 || (!strict && c == 0)) {
                out.terms_.push_back(t);
            } else {
                break;
            }
        }
        return out;
    }

    friend GeneralizedPolynomial operator+(const GeneralizedPolynomial &a,
                                           const GeneralizedPolynomial &b)
    {
        return merge(a, b, Rational(1));
    }
    friend GeneralizedPolynomial operator-(const GeneralizedPolynomial &a,
                                           const GeneralizedPolynomial &b)
    {
        return merge(a, b, Rational(-1));
    }
    friend GeneralizedPolynomial operator-(const GeneralizedPolynomial &a)
    {
        return a.scaled(Rational(-1));
    }
    friend GeneralizedPolynomial operator*(const GeneralizedPolynomial &a,
                                           const GeneralizedPolynomial &b)
    {
        a.check_same(b);
        GeneralizedPolynomial out(a.ctx_);
        if (a.is_zero() || b.is_zero()) {
            return out;
        }
        out.terms_.reserve(a.size() * b.size());
        for (const auto &s : a.terms_) {
            for (const auto &t : b.terms_) {
                out.terms_.push_back(Term{s.coeff * t.coeff, s.mono * t.mono, s.value + t.value});
            }
        }
        out.normalize();
        return out;
    }
    GeneralizedPolynomial &operator+=(const GeneralizedPolynomial &b)
    {
        return *this = *this + b;
    }
    GeneralizedPolynomial &operator-=(const GeneralizedPolynomial &b)
    {
        return *this = *this - b;
    }
    GeneralizedPolynomial &operator*=(const GeneralizedPolynomial &b)
    {
        return *this = *this * b;
    }

    friend bool operator==(const GeneralizedPolynomial &a, const GeneralizedPolynomial &b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].mono != b.terms_[i].mono) {
                return false;
            }
        }
        return true;
    }

    void check_same(const GeneralizedPolynomial &b) const
    {
        if (ctx_ != b.ctx_ && !(*ctx_ == *b.ctx_)) {
            throw std::invalid_argument("polynomials from different contexts");
        }
    }

private:
    // Sort by value, merge equal monomials, drop zero coefficients.
    void normalize()
    {
        const auto &g = ctx_->group();
        std::sort(terms_.begin(), terms_.end(),
                  [&g](const Term &x, const Term &y) { return g.compare(x.value, y.value) < 0; });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!merged.empty() && merged.back().mono == t.mono) {
                merged.back().coeff += t.coeff;
            } else {
                if (!merged.empty() && merged.back().coeff == 0) {
                    merged.pop_back();
                }
                merged.push_back(std::move(t));
            }
        }
        if (!merged.empty() && merged.back().coeff == 0) {
            merged.pop_back();
        }
        terms_ = std::move(merged);
    }

    static GeneralizedPolynomial merge(const GeneralizedPolynomial &a,
                                       const GeneralizedPolynomial &b, const Rational &sign)
    {
        a.check_same(b);
        const auto &g = a.ctx_->group();
        GeneralizedPolynomial out(a.ctx_);
        out.terms_.reserve(a.size() + b.size());
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end()) {
                out.terms_.push_back(*ia++);
                continue;
            }
            if (ia == a.terms_.end()) {
                out.terms_.push_back(Term{ib->coeff * sign, ib->mono, ib->value});
                ++ib;
                continue;
            }
            const auto c = g.compare(ia->value, ib->value);
            if (c < 0) {
                out.terms_.push_back(*ia++);
            } else if (c > 0) {
                out.terms_.push_back(Term{ib->coeff * sign, ib->mono, ib->value});
                ++ib;
            } else {
                Rational s = ia->coeff + ib->coeff * sign;
                if (s != 0) {
                    out.terms_.push_back(Term{std::move(s), ia->mono, ia->value});
                }
                ++ia;
                ++ib;
            }
        }
        return out;
    }

    ContextPtr ctx_;
    std::vector<Term> terms_;
};

using Polynomial = GeneralizedPolynomial;

inline Polynomial poly_add(const Polynomial &p, const Polynomial &q)
{
    return p + q;
}

inline Polynomial poly_mul(const Polynomial &p, const Polynomial &q)
{
    return p * q;
}

} // namespace hahnpp
