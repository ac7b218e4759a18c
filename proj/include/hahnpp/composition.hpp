#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/expansion.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/rational.hpp>

namespace hahnpp
{

using MultiIndex = std::vector<unsigned>;

// A formal power series in `arity` variables: either an explicit coefficient
// table, complete up to total degree `order` (or outright, for polynomials),
// or one of the builtin univariate coefficient rules.
class FormalSeries
{
public:
    enum class Kind { explicit_table, geom, log1p, exp_restricted, binomial };

    static FormalSeries geom()
    {
        return FormalSeries("geom", Kind::geom);
    }
    static FormalSeries log1p()
    {
        return FormalSeries("log1p", Kind::log1p);
    }
    static FormalSeries exp_restricted()
    {
        return FormalSeries("exp_restricted", Kind::exp_restricted);
    }
    // (1 + X)^p
    static FormalSeries binomial(const Rational &p)
    {
        FormalSeries s("binomial", Kind::binomial);
        s.exponent_ = p;
        return s;
    }

    static FormalSeries from_coefficients(std::string name, std::size_t arity, unsigned order,
                                          const std::vector<std::pair<MultiIndex, Rational>> &coeffs,
                                          bool complete = false)
    {
        if (arity == 0) {
            throw InputError("series '" + name + "' must have arity >= 1");
        }
        FormalSeries s(std::move(name), Kind::explicit_table);
        s.arity_ = arity;
        s.order_ = order;
        s.complete_ = complete;
        for (const auto &[idx, c] : coeffs) {
            if (idx.size() != arity) {
                throw InputError("multi-index of wrong length in series '" + s.name_ + "'");
            }
            if (!complete && degree(idx) > order) {
                throw InputError("coefficient beyond the declared order in series '" + s.name_
                                 + "'");
            }
            if (!s.table_.emplace(idx, c).second) {
                throw InputError("duplicate multi-index in series '" + s.name_ + "'");
            }
        }
        return s;
    }

    // Builtins by name, as referenced from expressions and registries.
    static std::optional<FormalSeries> builtin(const std::string &name)
    {
        if (name == "geom") {
            return geom();
        }
        if (name == "log1p") {
            return log1p();
        }
        if (name == "exp_restricted") {
            return exp_restricted();
        }
        return std::nullopt;
    }

    const std::string &name() const noexcept
    {
        return name_;
    }
    std::size_t arity() const noexcept
    {
        return arity_;
    }
    Kind kind() const noexcept
    {
        return kind_;
    }
    unsigned order() const noexcept
    {
        return order_;
    }
    bool complete() const noexcept
    {
        return complete_;
    }
    bool is_polynomial() const noexcept
    {
        return kind_ == Kind::explicit_table && complete_;
    }
    const std::map<MultiIndex, Rational> &table() const noexcept
    {
        return table_;
    }

    static unsigned degree(const MultiIndex &a)
    {
        return std::accumulate(a.begin(), a.end(), 0U);
    }

    Rational coefficient(const MultiIndex &a) const
    {
        if (a.size() != arity_) {
            throw ArityMismatch("multi-index length differs from the arity of '" + name_ + "'");
        }
        const unsigned n = a.empty() ? 0 : a.front();
        switch (kind_) {
        case Kind::geom:
            return Rational(1);
        case Kind::log1p:
            if (n == 0) {
                return Rational(0);
            }
            return Rational(n % 2 == 1 ? 1 : -1, n);
        case Kind::exp_restricted: {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), n);
            return Rational(mpz_class(1), f);
        }
        case Kind::binomial: {
            Rational c(1);
            for (unsigned j = 0; j < n; ++j) {
                c *= (exponent_ - j) / Rational(j + 1);
            }
            return c;
        }
        case Kind::explicit_table:
            break;
        }
        if (!complete_ && degree(a) > order_) {
            throw InsufficientCoefficients("series '" + name_ + "' is only known up to order "
                                           + std::to_string(order_));
        }
        auto it = table_.find(a);
        return it == table_.end() ? Rational(0) : it->second;
    }

private:
    FormalSeries(std::string name, Kind kind) : name_(std::move(name)), kind_(kind)
    {
    }

    std::string name_;
    Kind kind_;
    std::size_t arity_ = 1;
    unsigned order_ = 0;
    bool complete_ = false;
    Rational exponent_{0};
    std::map<MultiIndex, Rational> table_;
};

namespace detail
{

// Lower bound for the value of the germ behind a truncation.
inline GroupElement value_floor(const TruncatedSeries &s)
{
    const auto &g = s.shown.context()->group();
    if (!s.shown.is_zero() && g.less(*s.shown.value(), s.bound)) {
        return *s.shown.value();
    }
    return s.bound;
}

inline void for_each_index(const std::vector<unsigned> &extent, MultiIndex &cur, std::size_t pos,
                           const auto &fn)
{
    if (pos == extent.size()) {
        fn(cur);
        return;
    }
    for (unsigned a = 0; a < extent[pos]; ++a) {
        cur[pos] = a;
        for_each_index(extent, cur, pos + 1, fn);
    }
}

} // namespace detail

// F(args) truncated at alpha, for certified arguments of positive value.
// The kept multi-indices are {a : sum a_i v(arg_i) < alpha}, a finite box;
// every omitted term has value >= alpha. The returned bound is alpha lowered
// to the least argument bound, since argument errors propagate at that level.
inline TruncatedSeries compose_series(const FormalSeries &f, const std::vector<TruncatedSeries> &args,
                                      const GroupElement &alpha)
{
    if (args.size() != f.arity()) {
        throw ArityMismatch("series '" + f.name() + "' takes " + std::to_string(f.arity())
                            + " arguments");
    }
    if (args.empty()) {
        throw ArityMismatch("composition needs at least one argument");
    }
    const auto &ctx = args.front().shown.context();
    const auto &g = ctx->group();

    GroupElement bound = alpha;
    std::vector<GroupElement> values;
    std::vector<unsigned> extent;
    bool unknown_sign = false;
    for (const auto &arg : args) {
        arg.shown.check_same(args.front().shown);
        if (g.less(arg.bound, bound)) {
            bound = arg.bound;
        }
        GroupElement v = detail::value_floor(arg);
        if (g.sign(v) <= 0) {
            if (!arg.shown.is_zero()) {
                throw PositiveValueRequired("argument of '" + f.name()
                                            + "' must have positive value");
            }
            unknown_sign = true;
        }
        values.push_back(std::move(v));
    }
    if (g.sign(bound) <= 0) {
        // Only the multi-index 0 has value < a positive bound; none is kept here.
        return TruncatedSeries{Polynomial(ctx), bound, std::nullopt};
    }
    if (unknown_sign) {
        throw PositiveValueRequired("argument of '" + f.name()
                                    + "' is not known to have positive value");
    }
    for (const auto &v : values) {
        const auto n = g.least_multiple_reaching(v, bound);
        if (!n) {
            throw PrecisionUnreachable("no multiple of an argument value reaches the bound");
        }
        if (!n->fits_uint_p()) {
            throw PrecisionUnreachable("composition box too large");
        }
        extent.push_back(static_cast<unsigned>(n->get_ui()));
    }

    // Truncated powers of each argument.
    std::vector<std::vector<Polynomial>> powers(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        const Polynomial s = args[i].shown.truncated(bound);
        powers[i].push_back(Polynomial::constant(ctx, Rational(1)));
        for (unsigned a = 1; a < extent[i]; ++a) {
            powers[i].push_back((powers[i].back() * s).truncated(bound));
        }
    }

    Polynomial shown(ctx);
    MultiIndex idx(args.size(), 0);
    detail::for_each_index(extent, idx, 0, [&](const MultiIndex &a) {
        GroupElement v;
        for (std::size_t i = 0; i < a.size(); ++i) {
            v = GroupElement::axpy(v, values[i], Rational(a[i]));
        }
        if (!g.less(v, bound)) {
            return;
        }
        const Rational c = f.coefficient(a);
        if (c == 0) {
            return;
        }
        Polynomial term = Polynomial::constant(ctx, c);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > 0) {
                term = (term * powers[i][a[i]]).truncated(bound);
            }
        }
        shown += term;
    });
    return TruncatedSeries{shown.truncated(bound), bound, std::nullopt};
}

// Exact-argument overload: each argument is first expanded at alpha.
inline TruncatedSeries compose_series(const FormalSeries &f, const std::vector<RationalGerm> &args,
                                      const GroupElement &alpha)
{
    std::vector<TruncatedSeries> expanded;
    for (const auto &a : args) {
        if (!a.is_zero() && a.context()->group().sign(*a.value()) <= 0) {
            throw PositiveValueRequired("argument of '" + f.name() + "' must have positive value");
        }
        expanded.push_back(expand_quotient(a, alpha));
    }
    return compose_series(f, expanded, alpha);
}

// Exact substitution into a polynomial series.
inline RationalGerm compose_polynomial(const FormalSeries &f, const std::vector<RationalGerm> &args)
{
    if (!f.is_polynomial()) {
        throw PrecisionRequired("series '" + f.name() + "' is not a polynomial");
    }
    if (args.size() != f.arity()) {
        throw ArityMismatch("series '" + f.name() + "' takes " + std::to_string(f.arity())
                            + " arguments");
    }
    const auto &ctx = args.front().context();
    RationalGerm out = RationalGerm::zero(ctx);
    for (const auto &[a, c] : f.table()) {
        RationalGerm term = RationalGerm::constant(ctx, c);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > 0) {
                term = term * args[i].pow(static_cast<long>(a[i]));
            }
        }
        out = out + term;
    }
    return out;
}

// (x/lx) * (1 + f_D(llx/lx, 1/lx)) where f_D keeps the coefficients of f of
// total degree <= D.
inline RationalGerm hardy_i_germ(const ContextPtr &ctx, unsigned D, const FormalSeries &f)
{
    const auto x = ctx->index_of("x");
    const auto lx = ctx->index_of("lx");
    const auto llx = ctx->index_of("llx");
    if (!x || !lx || !llx) {
        throw ContextError("the i(x) germ needs generators x, lx, llx");
    }
    if (f.arity() != 2) {
        throw ArityMismatch("the i(x) germ needs a series in two variables");
    }
    if (f.kind() != FormalSeries::Kind::explicit_table) {
        throw InputError("the i(x) germ needs an explicit coefficient table");
    }
    if (!f.complete() && f.order() < D) {
        throw InsufficientCoefficients("series '" + f.name() + "' is not explicit to order "
                                       + std::to_string(D));
    }
    const Polynomial y1 =
        Polynomial::monomial(ctx, ctx->generator_monomial(*llx) * ctx->generator_monomial(*lx, -1));
    const Polynomial y2 = Polynomial::monomial(ctx, ctx->generator_monomial(*lx, -1));
    Polynomial ftilde(ctx);
    for (const auto &[a, c] : f.table()) {
        if (FormalSeries::degree(a) <= D) {
            ftilde += (y1.pow(a[0]) * y2.pow(a[1])).scaled(c);
        }
    }
    const Polynomial prefactor =
        Polynomial::monomial(ctx, ctx->generator_monomial(*x) * ctx->generator_monomial(*lx, -1));
    return RationalGerm(prefactor * (Polynomial::constant(ctx, Rational(1)) + ftilde));
}

} // namespace hahnpp
