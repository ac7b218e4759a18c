#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include <hahnpp/hahnpp.hpp>

namespace hahnpp
{

inline void PrintTo(const GeneralizedPolynomial &p, std::ostream *os)
{
    *os << poly_text(p);
}

} // namespace hahnpp

namespace hahnpp::testing
{

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : gen_(seed)
    {
    }

    int uniform(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

    bool coin(double p = 0.5)
    {
        return std::bernoulli_distribution(p)(gen_);
    }

    // Nonzero rational p/q with |p| <= max_num, 1 <= q <= max_den.
    Rational nonzero_rational(int max_num = 9, int max_den = 4)
    {
        int p = 0;
        while (p == 0) {
            p = uniform(-max_num, max_num);
        }
        Rational r(p, uniform(1, max_den));
        r.canonicalize();
        return r;
    }

    // Exponent in [-max, max], occasionally a half or third.
    Rational exponent(int max = 2, double fraction_rate = 0.15)
    {
        if (coin(fraction_rate)) {
            Rational r(uniform(-2 * max, 2 * max), uniform(2, 3));
            r.canonicalize();
            return r;
        }
        return Rational(uniform(-max, max));
    }

    std::mt19937_64 &engine()
    {
        return gen_;
    }

private:
    std::mt19937_64 gen_;
};

// x, y (value -tau in class 1 with tau ~ sqrt 2), lx, llx.
inline ContextPtr two_in_one_context()
{
    std::vector<ArchClassSpec> classes(3);
    classes[0].symbols.push_back(WeightSymbol{"tau", Rational(141421, 100000), Rational(141422, 100000)});
    std::vector<GeneratorSpec> specs{
        {"x", GroupElement::unit(1, Rational(-1)), std::string("lx")},
        {"y", GroupElement({{Coord{1, 2}, Rational(-1)}}), std::nullopt},
        {"lx", GroupElement::unit(2, Rational(-1)), std::string("llx")},
        {"llx", GroupElement::unit(3, Rational(-1)), std::nullopt},
    };
    return std::make_shared<const GeneratorContext>(ValueGroup(classes), specs);
}

inline Monomial random_monomial(const GeneratorContext &ctx, Rng &rng, int max_exp = 2,
                                double fraction_rate = 0.15)
{
    Monomial m = ctx.one();
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (rng.coin(0.6)) {
            m[i] = rng.exponent(max_exp, fraction_rate);
        }
    }
    return m;
}

inline Polynomial random_polynomial(const ContextPtr &ctx, Rng &rng, int max_terms, int max_exp = 2,
                                    double fraction_rate = 0.15)
{
    for (;;) {
        std::vector<std::pair<Rational, Monomial>> terms;
        const int n = rng.uniform(1, max_terms);
        for (int i = 0; i < n; ++i) {
            terms.emplace_back(rng.nonzero_rational(), random_monomial(*ctx, rng, max_exp, fraction_rate));
        }
        Polynomial p(ctx, std::move(terms));
        if (!p.is_zero()) {
            return p;
        }
    }
}

inline RationalGerm random_germ(const ContextPtr &ctx, Rng &rng, int num_terms, int den_terms,
                                int max_exp = 2, double fraction_rate = 0.15)
{
    return RationalGerm(random_polynomial(ctx, rng, num_terms, max_exp, fraction_rate),
                        random_polynomial(ctx, rng, den_terms, max_exp, fraction_rate));
}

// A polynomial all of whose terms have positive value.
inline Polynomial random_positive(const ContextPtr &ctx, Rng &rng, int max_terms, int max_exp = 2)
{
    const auto &g = ctx->group();
    for (;;) {
        std::vector<std::pair<Rational, Monomial>> terms;
        const int n = rng.uniform(1, max_terms);
        while (static_cast<int>(terms.size()) < n) {
            Monomial m = random_monomial(*ctx, rng, max_exp);
            if (g.sign(ctx->value(m)) > 0) {
                terms.emplace_back(rng.nonzero_rational(), std::move(m));
            }
        }
        Polynomial p(ctx, std::move(terms));
        if (!p.is_zero()) {
            return p;
        }
    }
}

inline GroupElement random_element(Rng &rng, int classes, int max = 4)
{
    std::vector<GroupElement::Entry> e;
    for (int c = 1; c <= classes; ++c) {
        if (rng.coin(0.7)) {
            Rational q(rng.uniform(-max * 2, max * 2), rng.uniform(1, 2));
            q.canonicalize();
            e.emplace_back(Coord{c, 1}, q);
        }
    }
    return GroupElement(std::move(e));
}

} // namespace hahnpp::testing
