#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/expansion.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/value_group.hpp>

namespace hahnpp
{

// Either an exact rational germ or a certified truncation of some germ.
using Germ = std::variant<RationalGerm, TruncatedSeries>;
using ResidueGerm = Germ;

struct PPSummand {
    RationalGerm coeff;
    Monomial mono;
};

// Summands produced at coarsening w_level. Only nonempty blocks are stored.
struct PPBlock {
    int level = 1;
    std::vector<PPSummand> terms;
};

// h = sum of blocks + r + tail with v(tail) > 0.
//
// For an exact input every field is exact. For a truncated input with bound
// > 0 only the tail is a truncation. With bound <= 0 the blocks are exact
// only below `precision`, and r is unknown.
struct PrincipalPart {
    ContextPtr context;
    std::vector<PPBlock> blocks;
    std::optional<Rational> r;
    Germ tail;
    // Classes whose generators occur in h: the convex chain actually used.
    std::vector<int> chain;
    std::optional<GroupElement> precision;

    bool empty() const
    {
        return blocks.empty();
    }

    // pp(h) as a germ.
    RationalGerm sum() const
    {
        RationalGerm out = RationalGerm::zero(context);
        for (const auto &b : blocks) {
            for (const auto &t : b.terms) {
                out = out + t.coeff.times(t.mono);
            }
        }
        return out;
    }
};

namespace detail
{

inline std::vector<int> occurring_classes(const RationalGerm &h)
{
    const auto &ctx = h.context();
    std::set<int> classes;
    for (const Polynomial *p : {&h.num(), &h.den()}) {
        for (const auto &t : p->terms()) {
            for (std::size_t i = 0; i < ctx->size(); ++i) {
                if (t.mono[i] != 0) {
                    classes.insert(ctx->generator(i).cls);
                }
            }
        }
    }
    return {classes.begin(), classes.end()};
}

// Blocks and the final constant residue of an exact germ.
inline std::pair<std::vector<PPBlock>, Rational> decompose(const RationalGerm &h)
{
    const auto &ctx = h.context();
    std::vector<PPBlock> blocks;
    RationalGerm running = h;
    for (int level = 1; level <= ctx->num_levels(); ++level) {
        if (running.is_zero()) {
            break;
        }
        // Summands of w_level-value <= 0; the one with trivial monomial is
        // the residue, passed on to the next coarsening.
        LevelExpansion e = expand_at_level(running, level, GroupElement{}, true);
        PPBlock block{level, {}};
        std::optional<RationalGerm> residue;
        for (auto &t : e.terms) {
            if (t.mono.is_one()) {
                residue = std::move(t.coeff);
            } else {
                block.terms.push_back(PPSummand{std::move(t.coeff), std::move(t.mono)});
            }
        }
        if (!block.terms.empty()) {
            blocks.push_back(std::move(block));
        }
        running = residue ? std::move(*residue) : RationalGerm::zero(ctx);
    }
    if (!running.is_polynomial() || !running.num().is_constant()) {
        throw std::logic_error("residue after the finest coarsening is not a constant");
    }
    const Rational r = running.is_zero() ? Rational(0) : running.num().leading().coeff;
    return {std::move(blocks), r};
}

} // namespace detail

// The principal part of an exact germ: blocks per coarsening, constant r,
// and the exact tail h - pp(h) - r of positive value.
inline PrincipalPart compute_pp(const RationalGerm &h)
{
    const auto &ctx = h.context();
    auto [blocks, r] = detail::decompose(h);
    PrincipalPart pp{ctx, std::move(blocks), r, RationalGerm::zero(ctx),
                     detail::occurring_classes(h), std::nullopt};
    RationalGerm tail = h - pp.sum() - RationalGerm::constant(ctx, r);
    if (!tail.is_zero() && ctx->group().sign(*tail.value()) <= 0) {
        throw std::logic_error("principal part tail does not have positive value");
    }
    pp.tail = std::move(tail);
    return pp;
}

// Principal part of a certified truncation. shown is a polynomial, so the
// blocks are polynomial; they equal those of the underlying germ when the
// bound is positive, and agree below the bound otherwise.
inline PrincipalPart compute_pp(const TruncatedSeries &s)
{
    const auto &ctx = s.shown.context();
    const RationalGerm shown(s.shown);
    auto [blocks, r] = detail::decompose(shown);
    PrincipalPart pp{ctx, std::move(blocks), r, RationalGerm::zero(ctx),
                     detail::occurring_classes(shown), std::nullopt};
    if (ctx->group().sign(s.bound) > 0) {
        RationalGerm rest = shown - pp.sum() - RationalGerm::constant(ctx, r);
        pp.tail = TruncatedSeries{rest.num(), s.bound, std::nullopt};
    } else {
        pp.r.reset();
        pp.precision = s.bound;
        pp.tail = TruncatedSeries{Polynomial(ctx), s.bound, std::nullopt};
    }
    return pp;
}

inline PrincipalPart compute_pp(const Germ &h)
{
    return std::visit([](const auto &x) { return compute_pp(x); }, h);
}

enum class Verdict { equal, not_equal, undecided };

inline const char *to_string(Verdict v)
{
    switch (v) {
    case Verdict::equal:
        return "equal";
    case Verdict::not_equal:
        return "not_equal";
    default:
        return "undecided";
    }
}

namespace detail
{

inline bool blocks_equal(const PrincipalPart &p, const PrincipalPart &q)
{
    if (p.blocks.size() != q.blocks.size()) {
        return false;
    }
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const auto &a = p.blocks[i];
        const auto &b = q.blocks[i];
        if (a.level != b.level || a.terms.size() != b.terms.size()) {
            return false;
        }
        for (std::size_t j = 0; j < a.terms.size(); ++j) {
            if (a.terms[j].mono != b.terms[j].mono || !(a.terms[j].coeff == b.terms[j].coeff)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

// Compares principal parts. Exact ones are compared block by block. When a
// side is known only below some precision, the difference of the two sums is
// decisive only if its value lies below the smaller precision.
inline Verdict pp_equal(const PrincipalPart &p, const PrincipalPart &q)
{
    if (!p.precision && !q.precision) {
        return detail::blocks_equal(p, q) ? Verdict::equal : Verdict::not_equal;
    }
    const auto &g = p.context->group();
    GroupElement prec = p.precision ? *p.precision : *q.precision;
    if (p.precision && q.precision && g.less(*q.precision, prec)) {
        prec = *q.precision;
    }
    const RationalGerm diff = p.sum() - q.sum();
    if (!diff.is_zero() && g.less(*diff.value(), prec)) {
        return Verdict::not_equal;
    }
    return Verdict::undecided;
}

// The representative h_bar over generators deeper than w with w(h - h_bar) > 0.
inline RationalGerm residue_at(const RationalGerm &h, const Coarsening &w)
{
    if (h.is_zero()) {
        throw NotInValuationRing("the zero germ has no residue of value 0");
    }
    if (!h.value()->project(w.level).is_zero()) {
        throw NotInValuationRing("residue_at needs w(h) = 0");
    }
    LevelExpansion e = expand_at_level(h, w.level, GroupElement{}, true);
    for (auto &t : e.terms) {
        if (t.mono.is_one()) {
            return std::move(t.coeff);
        }
    }
    throw std::logic_error("expansion of a unit lacks its residue term");
}

// For a truncation, the residue is that of the shown part once the bound
// has positive w-value.
inline ResidueGerm residue_at(const Germ &h, const Coarsening &w)
{
    if (const auto *r = std::get_if<RationalGerm>(&h)) {
        return residue_at(*r, w);
    }
    const auto &s = std::get<TruncatedSeries>(h);
    const auto &g = s.shown.context()->group();
    if (g.sign(coarsen(w, s.bound)) <= 0) {
        throw PrecisionRequired("the truncation bound must have positive w-value");
    }
    return residue_at(RationalGerm(s.shown), w);
}

} // namespace hahnpp
