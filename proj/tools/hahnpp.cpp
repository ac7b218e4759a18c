#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <hahnpp/hahnpp.hpp>

using namespace hahnpp;

namespace
{

constexpr int exit_input = 2;
constexpr int exit_algebra = 3;
constexpr int exit_undecided = 4;

struct Options {
    std::string context = "std3";
    std::string registry;
    std::string alpha;
    std::string format = "text";
    int level = 1;
    std::vector<std::string> exprs;
};

struct Session {
    ContextPtr ctx;
    Registry registry;
    std::optional<GroupElement> alpha;
    bool json_out = false;

    Germ eval(const std::string &text) const
    {
        return evaluate(text, ctx, registry, alpha);
    }

    RationalGerm eval_exact(const std::string &text) const
    {
        Germ g = eval(text);
        if (auto *r = std::get_if<RationalGerm>(&g)) {
            return *r;
        }
        throw PrecisionRequired("'" + text + "' does not evaluate to an exact germ");
    }

    void emit(const json &j, const std::string &text) const
    {
        if (json_out) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << text;
            if (text.empty() || text.back() != '\n') {
                std::cout << "\n";
            }
        }
    }
};

Session open_session(const Options &o)
{
    Session s;
    s.ctx = load_context(o.context);
    if (!o.registry.empty()) {
        s.registry = load_registry(o.registry);
    }
    if (!o.alpha.empty()) {
        s.alpha = parse_group_literal(o.alpha, s.ctx->group());
    }
    s.json_out = o.format == "json";
    return s;
}

std::optional<GroupElement> value_of(const Germ &g)
{
    if (const auto *r = std::get_if<RationalGerm>(&g)) {
        return r->value();
    }
    const auto &s = std::get<TruncatedSeries>(g);
    if (s.shown.is_zero()) {
        throw PrecisionRequired("the value lies beyond the truncation bound");
    }
    return s.shown.value();
}

int run(const std::string &command, const Options &o)
{
    const Session s = open_session(o);
    const auto &g = s.ctx->group();
    const auto need = [&](std::size_t n) {
        if (o.exprs.size() != n) {
            throw InputError("'" + command + "' takes " + std::to_string(n) + " expression(s)");
        }
    };

    if (command == "value") {
        need(1);
        const auto v = value_of(s.eval(o.exprs[0]));
        json j = json::object();
        j["value"] = v ? to_json(*v) : json(nullptr);
        s.emit(j, v ? group_text(g, *v) : "inf");
    } else if (command == "expand") {
        need(1);
        if (!s.alpha) {
            throw InputError("'expand' needs --alpha");
        }
        const Germ h = s.eval(o.exprs[0]);
        TruncatedSeries t = std::holds_alternative<RationalGerm>(h)
                                ? expand_quotient(std::get<RationalGerm>(h), *s.alpha)
                                : std::get<TruncatedSeries>(h);
        if (g.less(*s.alpha, t.bound)) {
            t = TruncatedSeries{t.shown.truncated(*s.alpha), *s.alpha, std::nullopt};
        }
        t.source.reset();
        s.emit(to_json(t), series_text(t));
    } else if (command == "pp") {
        need(1);
        const PrincipalPart pp = compute_pp(s.eval(o.exprs[0]));
        s.emit(to_json(pp), pp_text(pp));
    } else if (command == "residue") {
        need(1);
        if (o.level < 1 || o.level > s.ctx->num_levels()) {
            throw InputError("--level must lie in 1.." + std::to_string(s.ctx->num_levels()));
        }
        const Germ r = residue_at(s.eval(o.exprs[0]), Coarsening{o.level});
        s.emit(to_json(r), germ_text(r));
    } else if (command == "asym") {
        need(2);
        const bool a = is_asymptotic(s.eval_exact(o.exprs[0]), s.eval_exact(o.exprs[1]));
        json j = json::object();
        j["asymptotic"] = a;
        s.emit(j, a ? "true" : "false");
    } else if (command == "asym-log") {
        need(2);
        const Verdict v = asym_mod_constant(s.eval(o.exprs[0]), s.eval(o.exprs[1]));
        json j = json::object();
        j["verdict"] = to_string(v);
        s.emit(j, to_string(v));
        if (v == Verdict::undecided) {
            return exit_undecided;
        }
    } else if (command == "support-bound") {
        need(1);
        const auto b = support_lower_bound(compute_pp(s.eval(o.exprs[0])));
        json j = json::object();
        j["bound"] = b ? to_json(*b) : json(nullptr);
        s.emit(j, b ? group_text(g, *b) : "none");
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Principal parts and asymptotic comparison of rational germs"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"value", "print the value of a germ"},
        {"expand", "truncated expansion at --alpha"},
        {"pp", "principal part"},
        {"residue", "residue-field representative at coarsening --level"},
        {"asym", "are two germs asymptotic"},
        {"asym-log", "compare exp of two germs up to a positive constant"},
        {"support-bound", "bound keeping the principal part support away from 0"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--context", o.context, "context JSON file or std3");
        sub->add_option("--registry", o.registry, "series registry JSON file");
        sub->add_option("--alpha", o.alpha, "precision \"[c1; c2; c3]\"");
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        if (name == "residue") {
            sub->add_option("--level", o.level, "coarsening level")->required();
        }
        sub->add_option("exprs", o.exprs, "germ expression(s)")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const AlgebraError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_algebra;
    }
}
