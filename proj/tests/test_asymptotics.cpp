#include <gtest/gtest.h>

#include "support.hpp"

using namespace hahnpp;
using hahnpp::testing::Rng;

namespace
{

const ContextPtr ctx = GeneratorContext::std3();

RationalGerm E(const std::string &s)
{
    return evaluate_exact(s, ctx);
}

} // namespace

TEST(Asymptotics, SameValue)
{
    EXPECT_TRUE(same_value(E("x"), E("3*x")));
    EXPECT_FALSE(same_value(E("x"), E("x*lx")));
    EXPECT_TRUE(same_value(E("(x + 1)/x"), E("7")));
    EXPECT_THROW(same_value(E("0"), E("x")), ZeroArgument);
}

TEST(Asymptotics, IsAsymptotic)
{
    EXPECT_TRUE(is_asymptotic(E("x + 1"), E("x")));
    EXPECT_FALSE(is_asymptotic(E("2*x"), E("x")));
    EXPECT_TRUE(is_asymptotic(E("x + lx"), E("x")));
    EXPECT_FALSE(is_asymptotic(E("0"), E("x")));
    EXPECT_THROW(is_asymptotic(E("x"), E("0")), ZeroArgument);
}

TEST(Asymptotics, ModConstant)
{
    EXPECT_EQ(asym_mod_constant(E("x + 1/x"), E("x + 3 + 2/x")), Verdict::equal);
    EXPECT_EQ(asym_mod_constant(E("x"), E("x + lx")), Verdict::not_equal);
    const RationalGerm h = E("x^2*lx - llx/(1 + 1/x)");
    EXPECT_EQ(asym_mod_constant(h, h), Verdict::equal);
}

TEST(Asymptotics, SupportBound)
{
    EXPECT_EQ(*support_lower_bound(compute_pp(E("x"))), GroupElement::unit(1, Rational(-1, 2)));
    EXPECT_FALSE(support_lower_bound(compute_pp(E("7"))));
    const auto b = support_lower_bound(compute_pp(E("x^2 + x")));
    ASSERT_TRUE(b);
    EXPECT_EQ(*b, GroupElement::unit(1, Rational(-1, 2)));
    const auto &g = ctx->group();
    EXPECT_TRUE(g.less(GroupElement::unit(1, -2), *b));
    EXPECT_FALSE(g.less(*b, GroupElement::unit(1, -1)));
}

TEST(AsymptoticsProperty, AsymptoticImpliesSameValue)
{
    Rng rng(51);
    int hits = 0;
    for (int i = 0; i < 400; ++i) {
        const RationalGerm f = hahnpp::testing::random_germ(ctx, rng, 3, 2);
        // Half the time g is f perturbed by something small relative to f.
        RationalGerm g = hahnpp::testing::random_germ(ctx, rng, 3, 2);
        if (rng.coin()) {
            g = f * (RationalGerm::constant(ctx, Rational(1))
                     + RationalGerm(hahnpp::testing::random_positive(ctx, rng, 2)));
        }
        if (is_asymptotic(f, g)) {
            ++hits;
            EXPECT_TRUE(same_value(f, g));
            EXPECT_TRUE(is_asymptotic(g, f));
        }
        EXPECT_TRUE(is_asymptotic(f, f));
    }
    EXPECT_GT(hits, 100);
}

TEST(AsymptoticsProperty, ConstantAndSmallTermsIgnored)
{
    Rng rng(52);
    for (int i = 0; i < 200; ++i) {
        const RationalGerm h = hahnpp::testing::random_germ(ctx, rng, 3, 2);
        const RationalGerm c = RationalGerm::constant(ctx, rng.nonzero_rational());
        const RationalGerm p(hahnpp::testing::random_positive(ctx, rng, 3));
        EXPECT_EQ(asym_mod_constant(h, h + c + p), Verdict::equal);
    }
}
