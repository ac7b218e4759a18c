#pragma once

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <hahnpp/composition.hpp>
#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/expansion.hpp>
#include <hahnpp/expr.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/principal_part.hpp>
#include <hahnpp/rational.hpp>
#include <hahnpp/value_group.hpp>

namespace hahnpp
{

using json = nlohmann::ordered_json;

inline json to_json(const Rational &q)
{
    return to_string(q);
}

// [[class, symbol, "p/q"], ...]
inline json to_json(const GroupElement &a)
{
    json out = json::array();
    for (const auto &[c, q] : a.coords()) {
        out.push_back(json::array({c.cls, c.sym, to_string(q)}));
    }
    return out;
}

inline json monomial_json(const GeneratorContext &ctx, const Monomial &m)
{
    json out = json::object();
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (m[i] != 0) {
            out[ctx.generator(i).name] = to_string(m[i]);
        }
    }
    return out;
}

inline json to_json(const Polynomial &p)
{
    json out = json::array();
    for (const auto &t : p.terms()) {
        out.push_back(json::array({to_string(t.coeff), monomial_json(*p.context(), t.mono)}));
    }
    return out;
}

inline json to_json(const RationalGerm &h)
{
    json out = json::object();
    out["num"] = to_json(h.num());
    out["den"] = to_json(h.den());
    return out;
}

inline json to_json(const TruncatedSeries &s)
{
    json out = json::object();
    out["num"] = to_json(s.shown);
    out["den"] = to_json(Polynomial::constant(s.shown.context(), Rational(1)));
    out["bound"] = to_json(s.bound);
    return out;
}

inline json to_json(const Germ &g)
{
    return std::visit([](const auto &x) { return to_json(x); }, g);
}

inline json to_json(const PrincipalPart &pp)
{
    json blocks = json::array();
    json levels = json::array();
    for (const auto &b : pp.blocks) {
        json block = json::array();
        for (const auto &t : b.terms) {
            json s = json::object();
            s["c"] = to_json(t.coeff);
            s["d"] = monomial_json(*pp.context, t.mono);
            block.push_back(std::move(s));
        }
        blocks.push_back(std::move(block));
        levels.push_back(b.level);
    }
    json out = json::object();
    out["blocks"] = std::move(blocks);
    out["levels"] = std::move(levels);
    out["r"] = pp.r ? json(to_string(*pp.r)) : json(nullptr);
    out["tail"] = to_json(pp.tail);
    if (pp.precision) {
        out["precision"] = to_json(*pp.precision);
    }
    return out;
}

namespace detail
{

inline Rational rational_from_json(const json &j)
{
    if (j.is_number_integer()) {
        return Rational(mpz_class(j.dump(), 10));
    }
    if (!j.is_string()) {
        throw InputError("expected a rational string, got " + j.dump());
    }
    return parse_rational(j.get<std::string>());
}

template <class F>
auto guarded(F &&f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed JSON input: ") + e.what());
    }
}

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return guarded([&] { return json::parse(buf.str()); });
}

} // namespace detail

inline GroupElement group_from_json(const json &j)
{
    return detail::guarded([&] {
        std::vector<GroupElement::Entry> entries;
        for (const auto &e : j) {
            if (!e.is_array() || e.size() != 3) {
                throw InputError("group element entries are [class, symbol, \"p/q\"]");
            }
            entries.emplace_back(Coord{e[0].get<int>(), e[1].get<int>()},
                                 detail::rational_from_json(e[2]));
        }
        return GroupElement(std::move(entries));
    });
}

inline Monomial monomial_from_json(const GeneratorContext &ctx, const json &j)
{
    return detail::guarded([&] {
        Monomial m = ctx.one();
        for (const auto &[name, exp] : j.items()) {
            const auto i = ctx.index_of(name);
            if (!i) {
                throw UnknownIdentifier("unknown generator '" + name + "'");
            }
            m[*i] = detail::rational_from_json(exp);
        }
        return m;
    });
}

inline Polynomial polynomial_from_json(const ContextPtr &ctx, const json &j)
{
    return detail::guarded([&] {
        std::vector<std::pair<Rational, Monomial>> terms;
        for (const auto &t : j) {
            terms.emplace_back(detail::rational_from_json(t.at(0)), monomial_from_json(*ctx, t.at(1)));
        }
        return Polynomial(ctx, std::move(terms));
    });
}

inline Germ germ_from_json(const ContextPtr &ctx, const json &j)
{
    return detail::guarded([&]() -> Germ {
        const Polynomial num = polynomial_from_json(ctx, j.at("num"));
        const Polynomial den = polynomial_from_json(ctx, j.at("den"));
        if (j.contains("bound")) {
            if (!den.is_constant() || den.leading().coeff != 1) {
                throw InputError("a truncated series has denominator 1");
            }
            return TruncatedSeries{num, group_from_json(j.at("bound")), std::nullopt};
        }
        return RationalGerm(num, den);
    });
}

// {"classes": [{"symbols": [{"name": "1"}, {"name": "tau", "approx": ["lo", "hi"]}]}],
//  "generators": [{"name": "x", "value": [[1, 1, "-1"]], "log": "lx"}]}
inline ContextPtr context_from_json(const json &j)
{
    return detail::guarded([&] {
        std::vector<ArchClassSpec> classes;
        for (const auto &c : j.at("classes")) {
            ArchClassSpec spec;
            if (c.contains("symbols")) {
                spec.symbols.clear();
                for (const auto &s : c.at("symbols")) {
                    WeightSymbol w{s.at("name").get<std::string>(), Rational(1), Rational(1)};
                    if (s.contains("approx")) {
                        w.lo = detail::rational_from_json(s.at("approx").at(0));
                        w.hi = detail::rational_from_json(s.at("approx").at(1));
                    }
                    spec.symbols.push_back(std::move(w));
                }
            }
            classes.push_back(std::move(spec));
        }
        std::vector<GeneratorSpec> gens;
        for (const auto &g : j.at("generators")) {
            GeneratorSpec s{g.at("name").get<std::string>(), group_from_json(g.at("value")),
                            std::nullopt};
            if (g.contains("log") && !g.at("log").is_null()) {
                s.log = g.at("log").get<std::string>();
            }
            gens.push_back(std::move(s));
        }
        return std::make_shared<const GeneratorContext>(ValueGroup(std::move(classes)), gens);
    });
}

inline ContextPtr load_context(const std::string &spec)
{
    if (spec == "std3") {
        return GeneratorContext::std3();
    }
    return context_from_json(detail::read_json_file(spec));
}

inline FormalSeries series_from_json(const json &j)
{
    return detail::guarded([&] {
        const std::string name = j.at("name").get<std::string>();
        if (name == "log") {
            throw InputError("'log' is reserved and cannot name a series");
        }
        if (j.contains("builtin")) {
            auto b = FormalSeries::builtin(j.at("builtin").get<std::string>());
            if (!b) {
                throw InputError("unknown builtin series " + j.at("builtin").dump());
            }
            return *b;
        }
        const auto arity = j.at("arity").get<std::size_t>();
        const auto order = j.value("order", 0U);
        const bool complete = j.value("complete", false);
        std::vector<std::pair<MultiIndex, Rational>> coeffs;
        for (const auto &c : j.at("coeffs")) {
            coeffs.emplace_back(c.at(0).get<MultiIndex>(), detail::rational_from_json(c.at(1)));
        }
        return FormalSeries::from_coefficients(name, arity, order, coeffs, complete);
    });
}

inline Registry registry_from_json(const json &j)
{
    Registry out;
    const auto add = [&](const json &entry) {
        const std::string name = detail::guarded([&] { return entry.at("name").get<std::string>(); });
        if (!out.emplace(name, series_from_json(entry)).second) {
            throw InputError("duplicate series '" + name + "' in registry");
        }
    };
    if (j.is_array()) {
        for (const auto &e : j) {
            add(e);
        }
    } else {
        add(j);
    }
    return out;
}

inline Registry load_registry(const std::string &path)
{
    return registry_from_json(detail::read_json_file(path));
}

// "[c1; c2; ...]": unit-symbol coordinates per class; missing trailing
// classes are 0.
inline GroupElement parse_group_literal(const std::string &text, const ValueGroup &g)
{
    std::string body = text;
    const auto first = body.find_first_not_of(" \t");
    const auto last = body.find_last_not_of(" \t");
    if (first == std::string::npos || body[first] != '[' || body[last] != ']') {
        throw InputError("group element literal must look like \"[c1; c2; c3]\"");
    }
    body = body.substr(first + 1, last - first - 1);
    std::vector<GroupElement::Entry> entries;
    int cls = 1;
    std::stringstream ss(body);
    for (std::string item; std::getline(ss, item, ';'); ++cls) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a == std::string::npos) {
            throw InputError("empty coordinate in group element literal");
        }
        if (cls > g.num_classes()) {
            throw InputError("group element literal has more coordinates than classes");
        }
        entries.emplace_back(Coord{cls, 1}, parse_rational(item.substr(a, b - a + 1)));
    }
    return GroupElement(std::move(entries));
}

} // namespace hahnpp
