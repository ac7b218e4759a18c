#pragma once

#include <cstddef>
#include <string>

#include <hahnpp/context.hpp>
#include <hahnpp/expansion.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/principal_part.hpp>
#include <hahnpp/rational.hpp>
#include <hahnpp/value_group.hpp>

// Plain-text rendering. Everything printed here parses back through the
// expression grammar in expr.hpp.

namespace hahnpp
{

inline std::string exponent_text(const Rational &e)
{
    if (is_integer(e)) {
        return to_text(e);
    }
    return "(" + to_text(e) + ")";
}

inline std::string monomial_text(const GeneratorContext &ctx, const Monomial &m)
{
    std::string out;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += ctx.generator(i).name;
        if (m[i] != 1) {
            out += "^" + exponent_text(m[i]);
        }
    }
    return out.empty() ? "1" : out;
}

// c*m with |c| printed; the sign is handled by the caller.
inline std::string term_text(const GeneratorContext &ctx, const Rational &c, const Monomial &m)
{
    if (m.is_one()) {
        return to_text(c);
    }
    const std::string mono = monomial_text(ctx, m);
    if (c == 1) {
        return mono;
    }
    return to_text(c) + "*" + mono;
}

// Terms in increasing value order, e.g. "x^2*lx + x + lx + 5 + x^-1".
inline std::string poly_text(const Polynomial &p)
{
    if (p.is_zero()) {
        return "0";
    }
    const auto &ctx = *p.context();
    std::string out;
    bool first = true;
    for (const auto &t : p.terms()) {
        const bool negative = t.coeff < 0;
        const Rational mag = negative ? Rational(-t.coeff) : t.coeff;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += term_text(ctx, mag, t.mono);
        first = false;
    }
    return out;
}

inline std::string germ_text(const RationalGerm &h)
{
    if (h.is_polynomial()) {
        return poly_text(h.num().scaled(Rational(1) / h.den().leading().coeff));
    }
    return "(" + poly_text(h.num()) + ")/(" + poly_text(h.den()) + ")";
}

// "[c1; c2; ...]" with one entry per class of `g`; a class with extra symbols
// prints as "q1 + q2*tau".
inline std::string group_text(const ValueGroup &g, const GroupElement &a)
{
    std::string out = "[";
    for (int c = 1; c <= g.num_classes(); ++c) {
        if (c > 1) {
            out += "; ";
        }
        out += to_text(a.coord(Coord{c, 1}));
        const auto &symbols = g.arch_class(c).symbols;
        for (std::size_t s = 1; s < symbols.size(); ++s) {
            const Rational q = a.coord(Coord{c, static_cast<int>(s + 1)});
            if (q != 0) {
                out += (q < 0 ? " - " : " + ") + to_text(q < 0 ? Rational(-q) : q) + "*"
                       + symbols[s].name;
            }
        }
    }
    return out + "]";
}

inline std::string series_text(const TruncatedSeries &s)
{
    const auto &g = s.shown.context()->group();
    return poly_text(s.shown) + " + O(" + group_text(g, s.bound) + ")";
}

inline std::string germ_text(const Germ &h)
{
    if (const auto *r = std::get_if<RationalGerm>(&h)) {
        return germ_text(*r);
    }
    return series_text(std::get<TruncatedSeries>(h));
}

inline std::string pp_text(const PrincipalPart &pp)
{
    const auto &ctx = *pp.context;
    std::string out;
    for (const auto &b : pp.blocks) {
        out += "block " + std::to_string(b.level) + ":";
        bool first = true;
        for (const auto &t : b.terms) {
            out += first ? " " : " + ";
            out += "(" + germ_text(t.coeff) + ")*" + monomial_text(ctx, t.mono);
            first = false;
        }
        out += "\n";
    }
    out += "r: " + (pp.r ? to_text(*pp.r) : std::string("unknown")) + "\n";
    out += "tail: " + germ_text(pp.tail) + "\n";
    if (pp.precision) {
        out += "known below: " + group_text(ctx.group(), *pp.precision) + "\n";
    }
    return out;
}

} // namespace hahnpp
