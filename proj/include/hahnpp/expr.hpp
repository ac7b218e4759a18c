#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <hahnpp/composition.hpp>
#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/expansion.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/principal_part.hpp>
#include <hahnpp/rational.hpp>

namespace hahnpp
{

using Registry = std::map<std::string, FormalSeries>;

inline std::optional<FormalSeries> resolve_series(const Registry &registry, const std::string &name)
{
    if (auto it = registry.find(name); it != registry.end()) {
        return it->second;
    }
    return FormalSeries::builtin(name);
}

struct Expr {
    enum class Kind { literal, generator, neg, add, sub, mul, div, pow, call, log };

    Kind kind = Kind::literal;
    // Literal value (non-negative) or the exponent of a power.
    Rational number{0};
    // Generator or series name.
    std::string name;
    std::vector<Expr> args;

    static Expr literal(const Rational &q)
    {
        Expr e;
        e.number = q;
        return e;
    }
    static Expr generator(std::string n)
    {
        Expr e;
        e.kind = Kind::generator;
        e.name = std::move(n);
        return e;
    }
    static Expr unary(Kind k, Expr a)
    {
        Expr e;
        e.kind = k;
        e.args.push_back(std::move(a));
        return e;
    }
    static Expr binary(Kind k, Expr a, Expr b)
    {
        Expr e;
        e.kind = k;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }
    static Expr power(Expr base, const Rational &exponent)
    {
        Expr e = unary(Kind::pow, std::move(base));
        e.number = exponent;
        return e;
    }
    static Expr call(std::string n, std::vector<Expr> args)
    {
        Expr e;
        e.kind = Kind::call;
        e.name = std::move(n);
        e.args = std::move(args);
        return e;
    }

    friend bool operator==(const Expr &a, const Expr &b)
    {
        return a.kind == b.kind && a.number == b.number && a.name == b.name && a.args == b.args;
    }
};

namespace detail
{

class Parser
{
public:
    Parser(std::string_view text, const GeneratorContext &ctx, const Registry &registry)
        : text_(text), ctx_(ctx), registry_(registry)
    {
    }

    Expr run()
    {
        Expr e = sum();
        skip();
        if (pos_ != text_.size()) {
            throw SyntaxError(pos_, "operator or end of input");
        }
        return e;
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            throw SyntaxError(pos_, std::string("'") + c + "'");
        }
    }

    bool at_digit()
    {
        skip();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    mpz_class integer()
    {
        if (!at_digit()) {
            throw SyntaxError(pos_, "integer");
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    Expr sum()
    {
        Expr lhs = product();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Expr::Kind::add, std::move(lhs), product());
            } else if (accept('-')) {
                lhs = Expr::binary(Expr::Kind::sub, std::move(lhs), product());
            } else {
                return lhs;
            }
        }
    }

    Expr product()
    {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Expr::Kind::mul, std::move(lhs), unary());
            } else if (accept('/')) {
                Expr rhs = unary();
                if (lhs.kind == Expr::Kind::literal && rhs.kind == Expr::Kind::literal
                    && rhs.number != 0) {
                    lhs = Expr::literal(lhs.number / rhs.number);
                } else {
                    lhs = Expr::binary(Expr::Kind::div, std::move(lhs), std::move(rhs));
                }
            } else {
                return lhs;
            }
        }
    }

    Expr unary()
    {
        if (accept('-')) {
            return Expr::unary(Expr::Kind::neg, unary());
        }
        Expr base = primary();
        if (accept('^')) {
            return Expr::power(std::move(base), exponent());
        }
        return base;
    }

    // INT | -INT | (INT) | (-INT) | (p/q) | (-p/q)
    Rational exponent()
    {
        skip();
        if (accept('(')) {
            const bool negative = accept('-');
            const mpz_class p = integer();
            mpz_class q = 1;
            if (accept('/')) {
                skip();
                const std::size_t at = pos_;
                q = integer();
                if (q == 0) {
                    throw SyntaxError(at, "nonzero denominator");
                }
            }
            expect(')');
            Rational r(negative ? mpz_class(-p) : p, q);
            r.canonicalize();
            return r;
        }
        const bool negative = accept('-');
        if (!at_digit()) {
            throw SyntaxError(pos_, "exponent");
        }
        const mpz_class p = integer();
        return Rational(negative ? mpz_class(-p) : p);
    }

    Expr primary()
    {
        skip();
        if (pos_ >= text_.size()) {
            throw SyntaxError(pos_, "operand");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Expr::literal(Rational(integer()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (accept('(')) {
                return application(std::move(name), start);
            }
            if (!ctx_.index_of(name)) {
                throw UnknownIdentifier("unknown identifier '" + name + "' at position "
                                        + std::to_string(start));
            }
            return Expr::generator(std::move(name));
        }
        if (accept('(')) {
            Expr e = sum();
            expect(')');
            return e;
        }
        throw SyntaxError(pos_, "operand");
    }

    Expr application(std::string name, std::size_t start)
    {
        std::vector<Expr> args;
        if (!accept(')')) {
            do {
                args.push_back(sum());
            } while (accept(','));
            expect(')');
        }
        std::size_t arity = 1;
        if (name != "log") {
            const auto f = resolve_series(registry_, name);
            if (!f) {
                throw UnknownIdentifier("unknown series '" + name + "' at position "
                                        + std::to_string(start));
            }
            arity = f->arity();
        }
        if (args.size() != arity) {
            throw ArityMismatch("'" + name + "' at position " + std::to_string(start) + " takes "
                                + std::to_string(arity) + " argument(s), got "
                                + std::to_string(args.size()));
        }
        if (name == "log") {
            Expr e = Expr::unary(Expr::Kind::log, std::move(args.front()));
            e.name = "log";
            return e;
        }
        return Expr::call(std::move(name), std::move(args));
    }

    std::string_view text_;
    const GeneratorContext &ctx_;
    const Registry &registry_;
    std::size_t pos_ = 0;
};

inline int precedence(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
        return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
        return 2;
    case Expr::Kind::neg:
        return 3;
    case Expr::Kind::pow:
        return 4;
    default:
        return 5;
    }
}

std::string print(const Expr &e);

inline std::string print_at(const Expr &e, int min_prec)
{
    const std::string s = print(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

inline std::string print(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::literal:
        return is_integer(e.number) ? to_text(e.number) : "(" + to_text(e.number) + ")";
    case Expr::Kind::generator:
        return e.name;
    case Expr::Kind::neg:
        return "-" + print_at(e.args[0], 3);
    case Expr::Kind::add:
        return print_at(e.args[0], 1) + " + " + print_at(e.args[1], 2);
    case Expr::Kind::sub:
        return print_at(e.args[0], 1) + " - " + print_at(e.args[1], 2);
    case Expr::Kind::mul:
        return print_at(e.args[0], 2) + "*" + print_at(e.args[1], 3);
    case Expr::Kind::div:
        return print_at(e.args[0], 2) + "/" + print_at(e.args[1], 3);
    case Expr::Kind::pow: {
        const std::string exp = is_integer(e.number) ? to_text(e.number)
                                                      : "(" + to_text(e.number) + ")";
        return print_at(e.args[0], 5) + "^" + exp;
    }
    case Expr::Kind::call:
    case Expr::Kind::log: {
        std::string out = e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            out += (i ? ", " : "") + print(e.args[i]);
        }
        return out + ")";
    }
    }
    return {};
}

} // namespace detail

inline Expr parse(std::string_view text, const GeneratorContext &ctx, const Registry &registry = {})
{
    return detail::Parser(text, ctx, registry).run();
}

inline std::string print(const Expr &e)
{
    return detail::print(e);
}

// Arithmetic on exact germs and certified truncations.
namespace series
{

inline const ContextPtr &context_of(const Germ &g)
{
    if (const auto *r = std::get_if<RationalGerm>(&g)) {
        return r->context();
    }
    return std::get<TruncatedSeries>(g).shown.context();
}

inline TruncatedSeries expand(const RationalGerm &h, const GroupElement &bound)
{
    return expand_quotient(h, bound);
}

inline Germ negate(const Germ &a)
{
    if (const auto *r = std::get_if<RationalGerm>(&a)) {
        return -*r;
    }
    const auto &s = std::get<TruncatedSeries>(a);
    return TruncatedSeries{-s.shown, s.bound, std::nullopt};
}

inline Germ add(const Germ &a, const Germ &b)
{
    const auto *ra = std::get_if<RationalGerm>(&a);
    const auto *rb = std::get_if<RationalGerm>(&b);
    if (ra && rb) {
        return *ra + *rb;
    }
    if (ra || rb) {
        const auto &s = std::get<TruncatedSeries>(ra ? b : a);
        const TruncatedSeries h = expand(ra ? *ra : *rb, s.bound);
        return TruncatedSeries{(h.shown + s.shown).truncated(s.bound), s.bound, std::nullopt};
    }
    const auto &sa = std::get<TruncatedSeries>(a);
    const auto &sb = std::get<TruncatedSeries>(b);
    const auto &g = sa.shown.context()->group();
    const GroupElement bound = g.less(sa.bound, sb.bound) ? sa.bound : sb.bound;
    return TruncatedSeries{(sa.shown + sb.shown).truncated(bound), bound, std::nullopt};
}

inline Germ mul(const Germ &a, const Germ &b)
{
    const auto *ra = std::get_if<RationalGerm>(&a);
    const auto *rb = std::get_if<RationalGerm>(&b);
    if (ra && rb) {
        return *ra * *rb;
    }
    if (ra || rb) {
        const RationalGerm &h = ra ? *ra : *rb;
        const auto &s = std::get<TruncatedSeries>(ra ? b : a);
        if (h.is_zero()) {
            return h;
        }
        // h*(shown + R) with v(h*R) >= v(h) + bound.
        const GroupElement bound = *h.value() + s.bound;
        return TruncatedSeries{expand(h * RationalGerm(s.shown), bound).shown, bound, std::nullopt};
    }
    const auto &sa = std::get<TruncatedSeries>(a);
    const auto &sb = std::get<TruncatedSeries>(b);
    const auto &g = sa.shown.context()->group();
    const GroupElement b1 = sa.bound + detail::value_floor(sb);
    const GroupElement b2 = sb.bound + detail::value_floor(sa);
    const GroupElement bound = g.less(b1, b2) ? b1 : b2;
    return TruncatedSeries{(sa.shown * sb.shown).truncated(bound), bound, std::nullopt};
}

// Leading coefficient and monomial of the shown part; the germ behind it
// is c*m*(1 + u + R) with v(R) >= rel_bound > 0.
struct Normalized {
    Rational c;
    Monomial m;
    TruncatedSeries u;
};

inline Normalized normalize(const TruncatedSeries &s)
{
    if (s.shown.is_zero() || !s.shown.context()->group().less(*s.shown.value(), s.bound)) {
        throw PrecisionRequired("the leading term of the series is not known at this precision");
    }
    const auto &ctx = s.shown.context();
    const Term lead = s.shown.leading();
    const Polynomial u = s.shown.times(lead.mono.inverse()).scaled(Rational(1) / lead.coeff)
                         - Polynomial::constant(ctx, Rational(1));
    const GroupElement rel = s.bound - lead.value;
    return Normalized{lead.coeff, lead.mono, TruncatedSeries{u, rel, std::nullopt}};
}

inline Germ inverse(const Germ &a)
{
    if (const auto *r = std::get_if<RationalGerm>(&a)) {
        return r->inverse();
    }
    const auto n = normalize(std::get<TruncatedSeries>(a));
    const auto &ctx = n.u.shown.context();
    const TruncatedSeries neg_u{-n.u.shown, n.u.bound, std::nullopt};
    const TruncatedSeries geo = compose_series(FormalSeries::geom(), {neg_u}, n.u.bound);
    const Monomial mi = n.m.inverse();
    return TruncatedSeries{geo.shown.times(mi).scaled(Rational(1) / n.c),
                           geo.bound + ctx->value(mi), std::nullopt};
}

inline Germ div(const Germ &a, const Germ &b)
{
    if (const auto *rb = std::get_if<RationalGerm>(&b); rb && rb->is_zero()) {
        throw DivisionByZeroGerm("division by the zero germ");
    }
    return mul(a, inverse(b));
}

inline Germ ipow(const Germ &a, long n)
{
    if (const auto *r = std::get_if<RationalGerm>(&a)) {
        return r->pow(n);
    }
    if (n < 0) {
        return ipow(inverse(a), -n);
    }
    Germ result = RationalGerm::constant(context_of(a), Rational(1));
    Germ base = a;
    for (unsigned long e = static_cast<unsigned long>(n); e > 0; e >>= 1) {
        if (e & 1UL) {
            result = mul(result, base);
        }
        if (e > 1) {
            base = mul(base, base);
        }
    }
    return result;
}

inline std::pair<Rational, Monomial> leading_term(const RationalGerm &h)
{
    const Term &n = h.num().leading();
    const Term &d = h.den().leading();
    return {n.coeff / d.coeff, n.mono / d.mono};
}

// Rational coefficient c^e, or an error when c <= 0 or c^e is irrational.
inline Rational constant_power(const Rational &c, const Rational &e)
{
    if (c <= 0) {
        throw NonPositiveLeading("rational power of a germ with leading coefficient "
                                 + to_text(c));
    }
    const auto q = e.get_den();
    if (!q.fits_ulong_p() || !e.get_num().fits_slong_p()) {
        throw IrrationalConstant("exponent too large");
    }
    const auto r = root(c, q.get_ui());
    if (!r) {
        throw IrrationalConstant(to_text(c) + "^(" + to_text(e) + ") is not rational");
    }
    return pow(*r, e.get_num().get_si());
}

inline Germ rpow(const Germ &a, const Rational &e, const std::optional<GroupElement> &alpha)
{
    if (is_integer(e)) {
        if (!e.get_num().fits_slong_p()) {
            throw PrecisionUnreachable("exponent too large");
        }
        return ipow(a, e.get_num().get_si());
    }
    const ContextPtr &ctx = context_of(a);
    const FormalSeries binom = FormalSeries::binomial(e);
    if (const auto *r = std::get_if<RationalGerm>(&a)) {
        if (r->is_zero()) {
            if (e > 0) {
                return *r;
            }
            throw DivisionByZeroGerm("zero raised to a negative power");
        }
        const auto [c, m] = leading_term(*r);
        const Rational ce = constant_power(c, e);
        const Monomial me = m.pow(e);
        const RationalGerm eps =
            r->times(m.inverse()).scaled(Rational(1) / c) - RationalGerm::constant(ctx, Rational(1));
        if (eps.is_zero()) {
            return RationalGerm(Polynomial::monomial(ctx, me, ce));
        }
        if (!alpha) {
            throw PrecisionRequired("a rational power of a non-monomial germ needs --alpha");
        }
        const GroupElement rel = *alpha - ctx->value(me);
        const TruncatedSeries s = compose_series(binom, std::vector<RationalGerm>{eps}, rel);
        return TruncatedSeries{s.shown.times(me).scaled(ce), s.bound + ctx->value(me), std::nullopt};
    }
    const auto n = normalize(std::get<TruncatedSeries>(a));
    const Rational ce = constant_power(n.c, e);
    const Monomial me = n.m.pow(e);
    const GroupElement rel = alpha ? *alpha - ctx->value(me) : n.u.bound;
    const TruncatedSeries s = compose_series(binom, {n.u}, rel);
    return TruncatedSeries{s.shown.times(me).scaled(ce), s.bound + ctx->value(me), std::nullopt};
}

// log(c*m) = sum_t e_t * log(g_t) through the log links; needs c = 1.
inline Polynomial log_of_monomial(const GeneratorContext &ctx, const ContextPtr &ptr,
                                  const Rational &c, const Monomial &m)
{
    if (c <= 0) {
        throw NonPositiveLeading("log of a germ with leading coefficient " + to_text(c));
    }
    if (c != 1) {
        throw IrrationalConstant("log(" + to_text(c) + ") is not rational");
    }
    Polynomial out(ptr);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        const auto link = ctx.generator(i).log;
        if (!link) {
            throw ContextError("generator '" + ctx.generator(i).name + "' has no log link");
        }
        out += Polynomial::monomial(ptr, ctx.generator_monomial(*link), m[i]);
    }
    return out;
}

inline Germ log(const Germ &a, const std::optional<GroupElement> &alpha)
{
    const ContextPtr &ctx = context_of(a);
    if (const auto *r = std::get_if<RationalGerm>(&a)) {
        if (r->is_zero()) {
            throw ZeroArgument("log of the zero germ");
        }
        const auto [c, m] = leading_term(*r);
        const RationalGerm l(log_of_monomial(*ctx, ctx, c, m));
        const RationalGerm eps =
            r->times(m.inverse()).scaled(Rational(1) / c) - RationalGerm::constant(ctx, Rational(1));
        if (eps.is_zero()) {
            return l;
        }
        if (!alpha) {
            throw PrecisionRequired("log of a non-monomial germ needs --alpha");
        }
        return add(l, compose_series(FormalSeries::log1p(), std::vector<RationalGerm>{eps}, *alpha));
    }
    const auto n = normalize(std::get<TruncatedSeries>(a));
    const RationalGerm l(log_of_monomial(*ctx, ctx, n.c, n.m));
    const GroupElement target = alpha ? *alpha : n.u.bound;
    return add(l, compose_series(FormalSeries::log1p(), {n.u}, target));
}

inline Germ apply(const FormalSeries &f, const std::vector<Germ> &args,
                  const std::optional<GroupElement> &alpha)
{
    bool exact = true;
    for (const auto &a : args) {
        exact = exact && std::holds_alternative<RationalGerm>(a);
    }
    if (exact && f.is_polynomial()) {
        std::vector<RationalGerm> ra;
        for (const auto &a : args) {
            ra.push_back(std::get<RationalGerm>(a));
        }
        return compose_polynomial(f, ra);
    }
    if (!alpha) {
        throw PrecisionRequired("applying series '" + f.name() + "' needs --alpha");
    }
    std::vector<TruncatedSeries> ts;
    for (const auto &a : args) {
        if (const auto *r = std::get_if<RationalGerm>(&a)) {
            if (!r->is_zero() && r->context()->group().sign(*r->value()) <= 0) {
                throw PositiveValueRequired("argument of '" + f.name()
                                            + "' must have positive value");
            }
            ts.push_back(expand(*r, *alpha));
        } else {
            ts.push_back(std::get<TruncatedSeries>(a));
        }
    }
    return compose_series(f, ts, *alpha);
}

} // namespace series

class Evaluator
{
public:
    Evaluator(ContextPtr ctx, const Registry &registry, std::optional<GroupElement> alpha = {})
        : ctx_(std::move(ctx)), registry_(registry), alpha_(std::move(alpha))
    {
    }

    Germ operator()(const Expr &e) const
    {
        using K = Expr::Kind;
        switch (e.kind) {
        case K::literal:
            return RationalGerm::constant(ctx_, e.number);
        case K::generator: {
            const auto i = ctx_->index_of(e.name);
            if (!i) {
                throw UnknownIdentifier("unknown generator '" + e.name + "'");
            }
            return RationalGerm(Polynomial::monomial(ctx_, ctx_->generator_monomial(*i)));
        }
        case K::neg:
            return series::negate((*this)(e.args[0]));
        case K::add:
            return series::add((*this)(e.args[0]), (*this)(e.args[1]));
        case K::sub:
            return series::add((*this)(e.args[0]), series::negate((*this)(e.args[1])));
        case K::mul:
            return series::mul((*this)(e.args[0]), (*this)(e.args[1]));
        case K::div:
            return series::div((*this)(e.args[0]), (*this)(e.args[1]));
        case K::pow:
            return series::rpow((*this)(e.args[0]), e.number, alpha_);
        case K::log:
            return series::log((*this)(e.args[0]), alpha_);
        case K::call: {
            const auto f = resolve_series(registry_, e.name);
            if (!f) {
                throw UnknownIdentifier("unknown series '" + e.name + "'");
            }
            std::vector<Germ> args;
            for (const auto &a : e.args) {
                args.push_back((*this)(a));
            }
            return series::apply(*f, args, alpha_);
        }
        }
        throw std::logic_error("unhandled expression node");
    }

private:
    ContextPtr ctx_;
    const Registry &registry_;
    std::optional<GroupElement> alpha_;
};

inline Germ evaluate(const Expr &e, const ContextPtr &ctx, const Registry &registry = {},
                     const std::optional<GroupElement> &alpha = {})
{
    return Evaluator(ctx, registry, alpha)(e);
}

inline Germ evaluate(std::string_view text, const ContextPtr &ctx, const Registry &registry = {},
                     const std::optional<GroupElement> &alpha = {})
{
    return evaluate(parse(text, *ctx, registry), ctx, registry, alpha);
}

// Exact evaluation; raises PrecisionRequired if the result is only a truncation.
inline RationalGerm evaluate_exact(std::string_view text, const ContextPtr &ctx,
                                   const Registry &registry = {})
{
    Germ g = evaluate(text, ctx, registry);
    if (auto *r = std::get_if<RationalGerm>(&g)) {
        return std::move(*r);
    }
    throw PrecisionRequired("expression does not evaluate to an exact germ");
}

} // namespace hahnpp
