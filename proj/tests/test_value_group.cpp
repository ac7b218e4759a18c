#include <gtest/gtest.h>

#include "support.hpp"

using namespace hahnpp;
using hahnpp::testing::Rng;

namespace
{

GroupElement ge(std::vector<GroupElement::Entry> e)
{
    return GroupElement(std::move(e));
}

const ValueGroup g2 = ValueGroup::unit_classes(2);
const ValueGroup g3 = ValueGroup::unit_classes(3);

} // namespace

TEST(ValueGroup, CompareExamples)
{
    EXPECT_EQ(vg_compare(g2, GroupElement::unit(1, -1), GroupElement::unit(2, -1)),
              std::strong_ordering::less);
    EXPECT_EQ(vg_compare(g2, GroupElement{}, GroupElement{}), std::strong_ordering::equal);
    EXPECT_EQ(vg_compare(g2, GroupElement::unit(1, -1),
                         ge({{Coord{1, 1}, Rational(-1)}, {Coord{2, 1}, Rational(5)}})),
              std::strong_ordering::less);
}

TEST(ValueGroup, ArithExamples)
{
    EXPECT_TRUE(vg_arith(GroupElement::unit(1, -1), GroupElement::unit(1, -1), Rational(-1)).is_zero());
    EXPECT_EQ(vg_arith(GroupElement::unit(1, -2), GroupElement::unit(2, -1), Rational(3)),
              ge({{Coord{1, 1}, Rational(-2)}, {Coord{2, 1}, Rational(-3)}}));
    EXPECT_EQ(vg_arith(GroupElement{}, GroupElement::unit(1, Rational(1, 2)), Rational(2)),
              GroupElement::unit(1, 1));
}

TEST(ValueGroup, ZeroCoordinatesDropped)
{
    const auto a = ge({{Coord{1, 1}, Rational(0)}, {Coord{2, 1}, Rational(3)}});
    EXPECT_EQ(a.coords().size(), 1U);
    EXPECT_EQ(a, GroupElement::unit(2, 3));
}

TEST(ValueGroup, CoarsenExamples)
{
    const auto a = ge({{Coord{1, 1}, Rational(-1)}, {Coord{2, 1}, Rational(4)}});
    EXPECT_EQ(coarsen(Coarsening{1}, a), GroupElement::unit(1, -1));
    EXPECT_TRUE(coarsen(Coarsening{1}, GroupElement::unit(2, -1)).is_zero());
    EXPECT_EQ(coarsen(Coarsening{2}, a), a);

    const auto b = ge({{Coord{1, 1}, Rational(-1)}, {Coord{2, 1}, Rational(7)}});
    EXPECT_TRUE(g2.less(GroupElement::unit(1, -1), b));
    EXPECT_EQ(coarsen(Coarsening{1}, GroupElement::unit(1, -1)), coarsen(Coarsening{1}, b));
}

TEST(ValueGroup, ArchEquivalentExamples)
{
    EXPECT_TRUE(g2.arch_equivalent(GroupElement::unit(1, -1), GroupElement::unit(1, 5)));
    EXPECT_FALSE(g2.arch_equivalent(GroupElement::unit(1, -1), GroupElement::unit(2, -1)));
    EXPECT_TRUE(g2.arch_equivalent(ge({{Coord{1, 1}, Rational(-2)}, {Coord{2, 1}, Rational(9)}}),
                                   GroupElement::unit(1, 1)));
    EXPECT_THROW(g2.arch_equivalent(GroupElement{}, GroupElement::unit(1, 1)), ZeroArgument);
}

TEST(ValueGroup, ChainContainment)
{
    const ConvexChain chain = g3.chain();
    EXPECT_EQ(chain.k(), 3);
    const auto a = ge({{Coord{2, 1}, Rational(1)}, {Coord{3, 1}, Rational(-4)}});
    EXPECT_TRUE(chain.contains(1, a));
    EXPECT_TRUE(chain.contains(2, a));
    EXPECT_FALSE(chain.contains(3, a));
    EXPECT_TRUE(chain.contains(4, GroupElement{}));
    EXPECT_FALSE(chain.contains(4, GroupElement::unit(3, 1)));
}

TEST(ValueGroup, IrrationalSymbolsCertified)
{
    std::vector<ArchClassSpec> classes(1);
    classes[0].symbols.push_back(WeightSymbol{"tau", Rational(141, 100), Rational(142, 100)});
    const ValueGroup g(classes);
    // 1.41 <= tau <= 1.42: 3/2 - tau > 0, 7/5 - tau < 0.
    const auto tau = ge({{Coord{1, 2}, Rational(1)}});
    EXPECT_EQ(g.sign(GroupElement::unit(1, Rational(3, 2)) - tau), 1);
    EXPECT_EQ(g.sign(GroupElement::unit(1, Rational(7, 5)) - tau), -1);
    // Undecidable with this enclosure; refinement settles it.
    const auto close = GroupElement::unit(1, Rational(1414, 1000)) - tau;
    EXPECT_THROW(g.sign(close), PrecisionExhausted);
    const ValueGroup refined = g.refine(1, 2, Rational(14142, 10000), Rational(14143, 10000));
    EXPECT_EQ(refined.sign(close), -1);
}

TEST(ValueGroup, BadEnclosureRejected)
{
    std::vector<ArchClassSpec> classes(1);
    classes[0].symbols.push_back(WeightSymbol{"tau", Rational(0), Rational(1)});
    EXPECT_THROW(ValueGroup{classes}, ContextError);
}

TEST(ValueGroup, LeastMultipleReaching)
{
    const auto n = g2.least_multiple_reaching(GroupElement::unit(1, Rational(1, 3)),
                                              GroupElement::unit(1, 2));
    ASSERT_TRUE(n);
    EXPECT_EQ(*n, 6);
    EXPECT_EQ(*g2.least_multiple_reaching(GroupElement::unit(1, 1), GroupElement::unit(1, -3)), 1);
    // A class-2 step never reaches a class-1 target.
    EXPECT_FALSE(g2.least_multiple_reaching(GroupElement::unit(2, 1), GroupElement::unit(1, 1)));
    EXPECT_TRUE(g2.least_multiple_reaching(GroupElement::unit(1, 1), GroupElement::unit(2, 100)));
}

TEST(ValueGroupProperty, OrderCompatibleWithAddition)
{
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto a = hahnpp::testing::random_element(rng, 3);
        const auto b = hahnpp::testing::random_element(rng, 3);
        const auto c = hahnpp::testing::random_element(rng, 3);
        EXPECT_EQ(g3.compare(a, b), g3.compare(a + c, b + c));
        EXPECT_EQ(g3.compare(a, b), 0 <=> g3.sign(b - a));
    }
}

TEST(ValueGroupProperty, CoarseningLaws)
{
    Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        const auto a = hahnpp::testing::random_element(rng, 3);
        const auto b = hahnpp::testing::random_element(rng, 3);
        for (int l = 1; l <= 3; ++l) {
            const Coarsening w{l};
            if (g3.compare(a, b) <= 0) {
                EXPECT_TRUE(std::is_lteq(g3.compare(coarsen(w, a), coarsen(w, b))));
            }
            EXPECT_EQ(coarsen(w, a + b), coarsen(w, a) + coarsen(w, b));
            EXPECT_EQ(coarsen(w, a).is_zero(), g3.chain().contains(l + 1, a));
            for (int l2 = 1; l2 <= l; ++l2) {
                EXPECT_EQ(coarsen(Coarsening{l2}, coarsen(w, a)), coarsen(Coarsening{l2}, a));
            }
        }
    }
}
