#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/value_group.hpp>

namespace hahnpp
{

// A finite sum `shown` of terms of value < bound, standing for a germ g with
// v(g - shown) >= bound. When `source` is set, g is that rational germ.
struct TruncatedSeries {
    Polynomial shown;
    GroupElement bound;
    std::optional<RationalGerm> source;
};

// One summand c*z of an expansion relative to a coarsening w_level: z is a
// monomial over generators of classes <= level, c a germ over the deeper
// generators (so w(c) = 0 and w(c*z) = v(z)).
struct LevelTerm {
    RationalGerm coeff;
    Monomial mono;
    GroupElement value;
};

struct LevelExpansion {
    int level = 1;
    std::vector<LevelTerm> terms;
    // The kept terms summed over a common denominator: numerator / denominator.
    Polynomial numerator;
    Polynomial denominator;
};

namespace detail
{

// Drops the tail of `p` whose w_level-values are >= bound (strict) or
// > bound (inclusive). Term order is compatible with w_level, so this is a
// prefix cut.
inline Polynomial cut(const Polynomial &p, int level, const GroupElement &bound, bool inclusive)
{
    const auto &g = p.context()->group();
    std::vector<std::pair<Rational, Monomial>> kept;
    for (const auto &t : p.terms()) {
        const auto c = g.compare(t.value.project(level), bound);
        if (c < 0 || (inclusive && c == 0)) {
            kept.emplace_back(t.coeff, t.mono);
        } else {
            break;
        }
    }
    return Polynomial(p.context(), std::move(kept));
}

constexpr std::size_t long_division_cap = 64;

inline Polynomial long_division(const RationalGerm &h, const GroupElement &alpha)
{
    const auto &ctx = h.context();
    const auto &g = ctx->group();
    const Term &lead = h.den().leading();
    const GroupElement shift = alpha + lead.value;
    Polynomial rem = h.num();
    std::vector<std::pair<Rational, Monomial>> shown;
    while (!rem.is_zero() && g.less(rem.leading().value, shift)) {
        if (shown.size() == long_division_cap) {
            throw PrecisionUnreachable("more than " + std::to_string(long_division_cap)
                                       + " terms below the bound");
        }
        const Rational c = rem.leading().coeff / lead.coeff;
        const Monomial m = rem.leading().mono / lead.mono;
        rem -= h.den().times(m).scaled(c);
        shown.emplace_back(c, m);
    }
    return Polynomial(ctx, std::move(shown));
}

} // namespace detail

// Expands h relative to w_level following the dense-truncation construction:
// with b*z1 the part of den of least w-value, den = b*z1*(1 - d), w(d) > 0, and
// h = (num / (b*z1)) * sum_i d^i. Keeps the summands c*z with w(z) < bound
// (or <= bound when `inclusive`), so that w(h - kept) >= bound (resp. > bound).
//
// The geometric sum is stopped at the least l with (l+1) w(d) >= bound - w(num/(b*z1))
// (strict > when inclusive). Partial products whose w-value already passed the
// bound are discarded early; every factor of d has positive w-value so they
// cannot contribute below the bound.
inline LevelExpansion expand_at_level(const RationalGerm &h, int level, const GroupElement &bound_in,
                                      bool inclusive = false)
{
    const auto &ctx = h.context();
    const auto &g = ctx->group();
    if (level < 1 || level > ctx->num_levels()) {
        throw std::out_of_range("coarsening level out of range");
    }
    const GroupElement bound = bound_in.project(level);
    LevelExpansion out{level, {}, Polynomial(ctx), Polynomial::constant(ctx, Rational(1))};
    if (h.is_zero()) {
        return out;
    }

    const Polynomial &num = h.num();
    const Polynomial &den = h.den();

    // den = B*z1 + (terms of larger w-value); B lives over deeper generators.
    const Monomial z1 = ctx->upto(den.leading().mono, level);
    const GroupElement wz1 = ctx->value(z1);
    std::vector<std::pair<Rational, Monomial>> lead_terms;
    std::vector<std::pair<Rational, Monomial>> rest_terms;
    for (const auto &t : den.terms()) {
        if (ctx->upto(t.mono, level) == z1) {
            lead_terms.emplace_back(t.coeff, t.mono / z1);
        } else {
            rest_terms.emplace_back(-t.coeff, t.mono / z1);
        }
    }
    Polynomial b(ctx, std::move(lead_terms));
    // step = d * b = (b*z1 - den) / z1
    Polynomial step(ctx, std::move(rest_terms));
    Polynomial cur = num.times(z1.inverse());
    if (b.is_constant()) {
        const Rational inv = Rational(1) / b.leading().coeff;
        cur = cur.scaled(inv);
        step = step.scaled(inv);
        b = Polynomial::constant(ctx, Rational(1));
    }
    const bool unit_b = b.is_constant();

    const GroupElement w_n0 = num.leading().value.project(level) - wz1;
    std::optional<mpz_class> max_power;
    if (!step.is_zero()) {
        const GroupElement w_d = step.leading().value.project(level);
        const GroupElement target = bound - w_n0;
        auto n = g.least_multiple_reaching(w_d, target);
        if (!n) {
            throw PrecisionUnreachable("the bound is not reachable by multiples of the "
                                       "expansion step (distinct archimedean classes)");
        }
        if (inclusive && g.compare(w_d.scaled(Rational(*n)), target) == 0) {
            *n += 1;
        }
        max_power = *n - 1;
    }

    cur = detail::cut(cur, level, bound, inclusive);
    Polynomial acc = cur;
    mpz_class power(0);
    while (max_power && power < *max_power && !cur.is_zero()) {
        cur = detail::cut(cur * step, level, bound, inclusive);
        if (unit_b) {
            acc += cur;
        } else {
            acc = acc * b + cur;
        }
        power += 1;
    }

    // acc / b^(power+1); with a unit b the exponent is irrelevant.
    Polynomial denom = unit_b ? Polynomial::constant(ctx, Rational(1))
                              : b.pow(static_cast<unsigned long>(power.get_ui() + 1));

    // Terms sharing a class-(<= level) factor are contiguous in value order.
    const auto &terms = acc.terms();
    for (std::size_t i = 0; i < terms.size();) {
        const Monomial z = ctx->upto(terms[i].mono, level);
        std::vector<std::pair<Rational, Monomial>> coeff;
        std::size_t j = i;
        for (; j < terms.size() && ctx->upto(terms[j].mono, level) == z; ++j) {
            coeff.emplace_back(terms[j].coeff, ctx->above(terms[j].mono, level));
        }
        out.terms.push_back(LevelTerm{RationalGerm(Polynomial(ctx, std::move(coeff)), denom), z,
                                      ctx->value(z)});
        i = j;
    }
    out.numerator = std::move(acc);
    out.denominator = std::move(denom);
    return out;
}

// Dense truncation for the natural valuation: shown has rational coefficients,
// every term of value < alpha, and v(h - shown) >= alpha. The certificate is
// re-checked by exact arithmetic: v(num - shown*den) >= alpha + v(den).
inline TruncatedSeries expand_quotient(const RationalGerm &h, const GroupElement &alpha)
{
    const auto &ctx = h.context();
    const int k = ctx->num_levels();
    TruncatedSeries out{Polynomial(ctx), alpha, h};
    if (h.is_zero()) {
        return out;
    }
    if (k == 0) {
        // Only constants exist.
        out.shown = h.num().scaled(Rational(1) / h.den().leading().coeff);
        out.shown = out.shown.truncated(alpha);
        return out;
    }
    try {
        LevelExpansion e = expand_at_level(h, k, alpha, false);
        if (!e.denominator.is_constant() || e.denominator.leading().coeff != 1) {
            throw std::logic_error("natural-valuation expansion produced a non-unit denominator");
        }
        out.shown = std::move(e.numerator);
    } catch (const PrecisionUnreachable &) {
        // The geometric sum needs infinitely many terms, but they may cancel:
        // (1 + q)/(1 + q - p) = 1 + p/(1 + q - p). Long division finds the
        // true terms in increasing value; give up after a fixed number.
        out.shown = detail::long_division(h, alpha);
    }

    const Polynomial residual = h.num() - out.shown * h.den();
    if (!residual.is_zero()
        && ctx->group().compare(*residual.value(), alpha + *h.den().value()) < 0) {
        throw std::logic_error("expansion certificate failed");
    }
    return out;
}

// Exact check of v(source - shown) >= bound.
inline bool certificate_holds(const TruncatedSeries &s)
{
    if (!s.source) {
        throw std::invalid_argument("series carries no source germ");
    }
    const auto &g = s.shown.context()->group();
    const Polynomial residual = s.source->num() - s.shown * s.source->den();
    if (residual.is_zero()) {
        return true;
    }
    return g.compare(*residual.value() - *s.source->den().value(), s.bound) >= 0;
}

struct TruncationSummand {
    RationalGerm coeff;
    Monomial mono;
};

struct TruncationAtZero {
    std::vector<TruncationSummand> terms;
    // h - sum of terms, which lies in the valuation ring of w.
    RationalGerm remainder;
};

// The unique summands c_i*d_i with w(c_i d_i) < 0 strictly increasing and
// h - sum c_i d_i in O_w; c_i are germs over generators deeper than w.
inline TruncationAtZero truncate_at_zero(const RationalGerm &h, const Coarsening &w)
{
    if (h.is_zero()) {
        throw ZeroArgument("truncate_at_zero needs a nonzero germ");
    }
    LevelExpansion e = expand_at_level(h, w.level, GroupElement{}, false);
    TruncationAtZero out{{}, RationalGerm(h.num() * e.denominator - e.numerator * h.den(),
                                          h.den() * e.denominator)};
    for (auto &t : e.terms) {
        out.terms.push_back(TruncationSummand{std::move(t.coeff), std::move(t.mono)});
    }
    return out;
}

} // namespace hahnpp
