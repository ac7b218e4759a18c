#include <gtest/gtest.h>

#include "support.hpp"

using namespace hahnpp;
using hahnpp::testing::Rng;

namespace
{

const ContextPtr ctx = GeneratorContext::std3();

RationalGerm E(const std::string &s, const ContextPtr &c = ctx)
{
    return evaluate_exact(s, c);
}

Polynomial P(const std::string &s, const ContextPtr &c = ctx)
{
    const RationalGerm h = E(s, c);
    EXPECT_TRUE(h.is_polynomial());
    return h.num();
}

GroupElement A(const std::string &s, const ContextPtr &c = ctx)
{
    return parse_group_literal(s, c->group());
}

} // namespace

TEST(Context, Std3)
{
    EXPECT_EQ(ctx->size(), 3U);
    EXPECT_EQ(ctx->num_levels(), 3);
    EXPECT_EQ(ctx->generator(0).log, std::optional<std::size_t>(1));
    EXPECT_EQ(ctx->generator(1).log, std::optional<std::size_t>(2));
    EXPECT_FALSE(ctx->generator(2).log);
}

TEST(Context, Validation)
{
    const auto g = ValueGroup::unit_classes(2);
    using S = std::vector<GeneratorSpec>;
    // Two rationally dependent values in one class.
    EXPECT_THROW(GeneratorContext(g, S{{"x", GroupElement::unit(1, -1), {}},
                                       {"y", GroupElement::unit(1, -2), {}},
                                       {"lx", GroupElement::unit(2, -1), {}}}),
                 RationalDependence);
    EXPECT_THROW(GeneratorContext(g, S{{"x", GroupElement::unit(1, -1), {}}}), ContextError);
    EXPECT_THROW(GeneratorContext(g, S{{"x", GroupElement::unit(1, -1) + GroupElement::unit(2, 1), {}},
                                       {"lx", GroupElement::unit(2, -1), {}}}),
                 ContextError);
    EXPECT_THROW(GeneratorContext(g, S{{"x", GroupElement::unit(1, -1), std::string("nope")},
                                       {"lx", GroupElement::unit(2, -1), {}}}),
                 ContextError);
    EXPECT_THROW(GeneratorContext(g, S{{"log", GroupElement::unit(1, -1), {}},
                                       {"lx", GroupElement::unit(2, -1), {}}}),
                 ContextError);
    EXPECT_THROW(GeneratorContext(g, S{{"x", GroupElement::unit(1, -1), {}},
                                       {"x", GroupElement::unit(2, -1), {}}}),
                 ContextError);
    EXPECT_NO_THROW(hahnpp::testing::two_in_one_context());
}

TEST(Polynomial, ArithExamples)
{
    EXPECT_TRUE(poly_add(P("x"), P("-x")).is_zero());
    EXPECT_FALSE(poly_add(P("x"), P("-x")).value());
    EXPECT_EQ(poly_mul(P("x + 1"), P("x - 1")), P("x^2 - 1"));
    const Polynomial one = poly_mul(P("x"), P("x^-1"));
    EXPECT_EQ(one, Polynomial::constant(ctx, Rational(1)));
    EXPECT_TRUE(one.value()->is_zero());
}

TEST(Polynomial, SortedByValue)
{
    const Polynomial p = P("x^-1 + 5 + lx + x + x^2*lx");
    ASSERT_EQ(p.size(), 5U);
    for (std::size_t i = 1; i < p.size(); ++i) {
        EXPECT_TRUE(ctx->group().less(p.terms()[i - 1].value, p.terms()[i].value));
    }
    EXPECT_EQ(p.terms().front().mono, (ctx->generator_monomial(0, 2) * ctx->generator_monomial(1)));
}

TEST(Germ, ValueExamples)
{
    EXPECT_EQ(*germ_value(E("x^2*lx")), A("[-2; -1; 0]"));
    EXPECT_TRUE(germ_value(E("(x + 1)/x"))->is_zero());
    EXPECT_EQ(*germ_value(E("1/(x - 1)")), A("[1]"));
    EXPECT_FALSE(germ_value(E("x - x")));
}

TEST(Germ, Normalization)
{
    const RationalGerm h = E("(2*x + 2)/(2*x^2 + 4)");
    EXPECT_EQ(h.den().leading().coeff, 1);
    EXPECT_TRUE(E("(x^2 + x)/(3*x)").is_polynomial());
    EXPECT_EQ(E("(x^2 + x)/(3*x)"), E("x/3 + 1/3"));
    EXPECT_EQ(E("(x^2 - 1)/(x - 1)"), E("x + 1"));
    EXPECT_THROW(E("1/(x - x)"), DivisionByZeroGerm);
}

TEST(Expansion, Examples)
{
    const TruncatedSeries one = expand_quotient(E("1"), A("[1]"));
    EXPECT_EQ(one.shown, P("1"));
    EXPECT_TRUE(certificate_holds(one));

    const TruncatedSeries s = expand_quotient(E("1/(x - 1)"), A("[3]"));
    EXPECT_EQ(s.shown, P("x^-1 + x^-2"));
    EXPECT_TRUE(certificate_holds(s));

    const TruncatedSeries t = expand_quotient(E("(x*lx + x)/lx"), GroupElement{});
    EXPECT_EQ(t.shown, P("x + x*lx^-1"));
    EXPECT_TRUE(certificate_holds(t));
}

TEST(Expansion, DenominatorSpanningLevels)
{
    // den = x + lx: the expansion step lies in class 1 relative to x.
    const TruncatedSeries s = expand_quotient(E("1/(x + lx)"), A("[3]"));
    EXPECT_EQ(s.shown, P("x^-1 - lx*x^-2 + lx^2*x^-3"));
    EXPECT_TRUE(certificate_holds(s));
    // Deeper alpha than any multiple of v(lx/x) reaches within class 1.
    const TruncatedSeries u = expand_quotient(E("1/(lx + llx)"), A("[0; 3; 0]"));
    EXPECT_EQ(u.shown, P("lx^-1 - llx*lx^-2 + llx^2*lx^-3"));
    EXPECT_TRUE(certificate_holds(u));
}

TEST(Expansion, Unreachable)
{
    // v(d) = v(1/lx) sits in class 2; no multiple passes a class-1 bound.
    EXPECT_THROW(expand_quotient(E("1/(1 - 1/lx)"), A("[1]")), PrecisionUnreachable);
}

TEST(Expansion, CancellingGeometricTerms)
{
    // The class-2 powers of 1/lx cancel: the quotient is 1 + (1/x)/(1 + 1/lx - 1/x).
    const RationalGerm h = E("(1 + 1/lx)/(1 + 1/lx - 1/x)");
    const TruncatedSeries s = expand_quotient(h, A("[1]"));
    EXPECT_EQ(s.shown, P("1"));
    EXPECT_TRUE(certificate_holds(s));
    EXPECT_THROW(expand_quotient(h, A("[2]")), PrecisionUnreachable);
}

TEST(Expansion, LargerEllDoesNotChangeShown)
{
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const RationalGerm h = hahnpp::testing::random_germ(ctx, rng, 3, 3);
        const GroupElement a1 = *h.value() + A("[2; 0; 0]");
        const GroupElement a2 = *h.value() + A("[4; 0; 0]");
        try {
            const auto s1 = expand_quotient(h, a1);
            const auto s2 = expand_quotient(h, a2);
            EXPECT_EQ(s2.shown.truncated(a1), s1.shown);
        } catch (const PrecisionUnreachable &) {
        }
    }
}

TEST(Truncation, Examples)
{
    const RationalGerm h = E("x^2*lx + x + lx + 5 + x^-1");
    const TruncationAtZero t = truncate_at_zero(h, Coarsening{1});
    ASSERT_EQ(t.terms.size(), 2U);
    EXPECT_EQ(t.terms[0].coeff, E("lx"));
    EXPECT_EQ(t.terms[0].mono, ctx->generator_monomial(0, 2));
    EXPECT_EQ(t.terms[1].coeff, E("1"));
    EXPECT_EQ(t.terms[1].mono, ctx->generator_monomial(0));
    EXPECT_EQ(t.remainder, E("lx + 5 + x^-1"));

    EXPECT_TRUE(truncate_at_zero(E("lx + 5"), Coarsening{1}).terms.empty());

    const auto c1 = GeneratorContext::standard(1);
    const TruncationAtZero u = truncate_at_zero(E("1/(1 - 1/x)", c1), Coarsening{1});
    EXPECT_TRUE(u.terms.empty());
    EXPECT_EQ(u.remainder, E("x/(x - 1)", c1));

    EXPECT_THROW(truncate_at_zero(E("0"), Coarsening{1}), ZeroArgument);
}

TEST(Truncation, RationalCoefficientGerms)
{
    // x/(1 + 1/lx): w_1 sees x*(lx/(lx + 1)) with a non-polynomial coefficient.
    const TruncationAtZero t = truncate_at_zero(E("x/(1 + 1/lx)"), Coarsening{1});
    ASSERT_EQ(t.terms.size(), 1U);
    EXPECT_EQ(t.terms[0].coeff, E("lx/(lx + 1)"));
    EXPECT_TRUE(t.remainder.is_zero());
}

TEST(SeriesProperty, CrossSection)
{
    Rng rng(22);
    for (int i = 0; i < 500; ++i) {
        const Monomial a = hahnpp::testing::random_monomial(*ctx, rng);
        const Monomial b = hahnpp::testing::random_monomial(*ctx, rng);
        EXPECT_EQ(ctx->value(a * b), ctx->value(a) + ctx->value(b));
        EXPECT_EQ(ctx->value(a) == ctx->value(b), a == b);
    }
}

TEST(SeriesProperty, CrossSectionIrrational)
{
    const auto c = hahnpp::testing::two_in_one_context();
    Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        const Monomial a = hahnpp::testing::random_monomial(*c, rng);
        const Monomial b = hahnpp::testing::random_monomial(*c, rng);
        EXPECT_EQ(c->value(a) == c->value(b), a == b);
        if (!(a == b)) {
            EXPECT_NE(c->group().compare(c->value(a), c->value(b)), std::strong_ordering::equal);
        }
    }
}

TEST(SeriesProperty, Ultrametric)
{
    Rng rng(24);
    const auto &g = ctx->group();
    for (int i = 0; i < 500; ++i) {
        const Polynomial p = hahnpp::testing::random_polynomial(ctx, rng, 4);
        const Polynomial q = hahnpp::testing::random_polynomial(ctx, rng, 4);
        const Polynomial s = p + q;
        const auto m = g.less(*q.value(), *p.value()) ? *q.value() : *p.value();
        if (!s.is_zero()) {
            EXPECT_TRUE(std::is_gteq(g.compare(*s.value(), m)));
        }
        if (*p.value() != *q.value()) {
            ASSERT_FALSE(s.is_zero());
            EXPECT_EQ(*s.value(), m);
        }
        EXPECT_EQ(*(p * q).value(), *p.value() + *q.value());
    }
}

TEST(SeriesProperty, DensityWithIrrationalWeights)
{
    const auto c = hahnpp::testing::two_in_one_context();
    Rng rng(25);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const RationalGerm h = hahnpp::testing::random_germ(c, rng, 3, 3, 2, 0.0);
        const GroupElement alpha = *h.value() + GroupElement::unit(1, rng.uniform(0, 4));
        try {
            EXPECT_TRUE(certificate_holds(expand_quotient(h, alpha)));
            ++checked;
        } catch (const PrecisionUnreachable &) {
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(SeriesProperty, LeadingComparison)
{
    // |a| <= |b| eventually when v(a) > v(b), or equal values with |lc(a)| <= |lc(b)|.
    Rng rng(26);
    const auto &g = ctx->group();
    for (int i = 0; i < 300; ++i) {
        const RationalGerm a = hahnpp::testing::random_germ(ctx, rng, 3, 2);
        const RationalGerm b = hahnpp::testing::random_germ(ctx, rng, 3, 2);
        const RationalGerm diff = b * b - a * a;
        // b^2 - a^2 >= 0 eventually iff its sign is non-negative.
        if (diff.sign() >= 0) {
            EXPECT_TRUE(std::is_gteq(g.compare(*a.value(), *b.value())));
        }
    }
}
