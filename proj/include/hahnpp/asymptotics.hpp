#pragma once

#include <optional>

#include <hahnpp/errors.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/principal_part.hpp>
#include <hahnpp/value_group.hpp>

namespace hahnpp
{

// v(f) = v(g), i.e. f/g tends to a nonzero constant.
inline bool same_value(const RationalGerm &f, const RationalGerm &g)
{
    if (f.is_zero() || g.is_zero()) {
        throw ZeroArgument("same_value needs nonzero germs");
    }
    return *f.value() == *g.value();
}

// v(f - g) > v(g), i.e. f/g tends to 1.
inline bool is_asymptotic(const RationalGerm &f, const RationalGerm &g)
{
    if (g.is_zero()) {
        throw ZeroArgument("is_asymptotic needs a nonzero reference germ");
    }
    const RationalGerm d = f - g;
    if (d.is_zero()) {
        return true;
    }
    return g.context()->group().less(*g.value(), *d.value());
}

// For h1 = log f, h2 = log g: equal iff f ~ r*g for some positive real r.
inline Verdict asym_mod_constant(const Germ &h1, const Germ &h2)
{
    return pp_equal(compute_pp(h1), compute_pp(h2));
}

inline Verdict asym_mod_constant(const RationalGerm &h1, const RationalGerm &h2)
{
    return pp_equal(compute_pp(h1), compute_pp(h2));
}

// Half the value of the last monomial of the last block; nothing for an
// empty principal part.
inline std::optional<GroupElement> support_lower_bound(const PrincipalPart &p)
{
    if (p.blocks.empty()) {
        return std::nullopt;
    }
    const Monomial &d = p.blocks.back().terms.back().mono;
    return p.context->value(d).scaled(Rational(1, 2));
}

} // namespace hahnpp
