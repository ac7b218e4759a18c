#include <iostream>

#include <hahnpp/hahnpp.hpp>

using namespace hahnpp;

// i(x) = (x/lx)(1 + f(llx/lx, 1/lx)) with f truncated at total degree 2.
int main()
{
    const auto ctx = GeneratorContext::std3();
    const FormalSeries f = FormalSeries::from_coefficients(
        "f", 2, 2, {{{1, 0}, Rational(1, 2)}, {{0, 1}, Rational(-3)}, {{1, 1}, Rational(2, 7)}});

    const RationalGerm i = hardy_i_germ(ctx, 2, f);
    std::cout << "i(x) = " << germ_text(i) << "\n";
    std::cout << pp_text(compute_pp(i));

    const auto alpha = parse_group_literal("[0; 3]", ctx->group());
    const Germ l = evaluate("log(x + lx)", ctx, {}, alpha);
    std::cout << "log(x + lx) = " << germ_text(l) << "\n";
    std::cout << "support bound of pp(x^2 + x): "
              << group_text(ctx->group(), *support_lower_bound(compute_pp(
                                              evaluate_exact("x^2 + x", ctx))))
              << "\n";
}
