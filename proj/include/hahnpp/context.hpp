#pragma once

#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hahnpp/errors.hpp>
#include <hahnpp/rational.hpp>
#include <hahnpp/value_group.hpp>

namespace hahnpp
{

// Exponent vector over the generators of a context (dense, absent = 0).
// Monomials form a Q-vector space under multiplication.
class Monomial
{
public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n)
    {
    }
    explicit Monomial(std::vector<Rational> exps) : exps_(std::move(exps))
    {
    }

    std::size_t size() const noexcept
    {
        return exps_.size();
    }
    const Rational &operator[](std::size_t i) const
    {
        return exps_[i];
    }
    Rational &operator[](std::size_t i)
    {
        return exps_[i];
    }
    const std::vector<Rational> &exponents() const noexcept
    {
        return exps_;
    }

    bool is_one() const
    {
        for (const auto &e : exps_) {
            if (e != 0) {
                return false;
            }
        }
        return true;
    }

    Monomial pow(const Rational &q) const
    {
        Monomial out(*this);
        for (auto &e : out.exps_) {
            e *= q;
        }
        return out;
    }

    Monomial inverse() const
    {
        return pow(Rational(-1));
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial out(a);
        for (std::size_t i = 0; i < out.exps_.size(); ++i) {
            out.exps_[i] += b.exps_[i];
        }
        return out;
    }
    friend Monomial operator/(const Monomial &a, const Monomial &b)
    {
        Monomial out(a);
        for (std::size_t i = 0; i < out.exps_.size(); ++i) {
            out.exps_[i] -= b.exps_[i];
        }
        return out;
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;

private:
    std::vector<Rational> exps_;
};

struct GeneratorSpec {
    std::string name;
    GroupElement value;
    // Name of the generator representing log of this one, if any.
    std::optional<std::string> log;
};

// The finite system of monomial generators a computation runs in: names,
// their values (each supported in a single archimedean class), and the
// log links x -> lx -> llx.
class GeneratorContext
{
public:
    struct Generator {
        std::string name;
        GroupElement value;
        int cls = 1;
        std::optional<std::size_t> log;
    };

    GeneratorContext(ValueGroup group, const std::vector<GeneratorSpec> &specs)
        : group_(std::move(group))
    {
        std::vector<bool> class_used(static_cast<std::size_t>(group_.num_classes()), false);
        for (const auto &s : specs) {
            if (!valid_name(s.name)) {
                throw ContextError("invalid generator name '" + s.name + "'");
            }
            if (index_of(s.name)) {
                throw ContextError("duplicate generator '" + s.name + "'");
            }
            group_.check_member(s.value);
            const auto lead = s.value.leading_class();
            if (!lead) {
                throw RationalDependence("generator '" + s.name + "' has value 0");
            }
            if (s.value.class_part(*lead) != s.value) {
                throw ContextError("value of generator '" + s.name
                                   + "' must lie in a single archimedean class");
            }
            class_used[static_cast<std::size_t>(*lead - 1)] = true;
            gens_.push_back(Generator{s.name, s.value, *lead, std::nullopt});
        }
        for (std::size_t c = 0; c < class_used.size(); ++c) {
            if (!class_used[c]) {
                throw ContextError("class " + std::to_string(c + 1) + " carries no generator");
            }
        }
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (specs[i].log) {
                const auto target = index_of(*specs[i].log);
                if (!target) {
                    throw ContextError("log link of '" + specs[i].name
                                       + "' names unknown generator '" + *specs[i].log + "'");
                }
                gens_[i].log = *target;
            }
        }
        check_independence();
    }

    // x, lx, llx with values -1 in classes 1, 2, 3 and log links x -> lx -> llx.
    static std::shared_ptr<const GeneratorContext> standard(int depth = 3)
    {
        static const char *names[] = {"x", "lx", "llx", "lllx", "llllx"};
        if (depth < 1 || depth > 5) {
            throw ContextError("standard contexts have depth 1..5");
        }
        std::vector<GeneratorSpec> specs;
        for (int i = 0; i < depth; ++i) {
            GeneratorSpec s{names[i], GroupElement::unit(i + 1, Rational(-1)), std::nullopt};
            if (i + 1 < depth) {
                s.log = names[i + 1];
            }
            specs.push_back(std::move(s));
        }
        return std::make_shared<const GeneratorContext>(ValueGroup::unit_classes(depth), specs);
    }

    static std::shared_ptr<const GeneratorContext> std3()
    {
        return standard(3);
    }

    std::size_t size() const noexcept
    {
        return gens_.size();
    }
    const Generator &generator(std::size_t i) const
    {
        return gens_.at(i);
    }
    const std::vector<Generator> &generators() const noexcept
    {
        return gens_;
    }
    const ValueGroup &group() const noexcept
    {
        return group_;
    }
    int num_levels() const noexcept
    {
        return group_.num_classes();
    }
    ConvexChain chain() const
    {
        return group_.chain();
    }

    std::optional<std::size_t> index_of(const std::string &name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    Monomial one() const
    {
        return Monomial(gens_.size());
    }

    Monomial generator_monomial(std::size_t i, const Rational &exponent = Rational(1)) const
    {
        Monomial m(gens_.size());
        m[i] = exponent;
        return m;
    }

    // The cross-section value sum_t e_t * v(g_t).
    GroupElement value(const Monomial &m) const
    {
        std::vector<GroupElement::Entry> entries;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            for (const auto &[c, q] : gens_[i].value.coords()) {
                entries.emplace_back(c, q * m[i]);
            }
        }
        return GroupElement(std::move(entries));
    }

    // Factor of m over generators of classes <= level.
    Monomial upto(const Monomial &m, int level) const
    {
        Monomial out(m);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].cls > level) {
                out[i] = 0;
            }
        }
        return out;
    }

    // Factor of m over generators of classes > level.
    Monomial above(const Monomial &m, int level) const
    {
        Monomial out(m);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].cls <= level) {
                out[i] = 0;
            }
        }
        return out;
    }

    // Smallest class carrying a generator with nonzero exponent in m.
    std::optional<int> leading_class(const Monomial &m) const
    {
        std::optional<int> out;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (m[i] != 0 && (!out || gens_[i].cls < *out)) {
                out = gens_[i].cls;
            }
        }
        return out;
    }

    friend bool operator==(const GeneratorContext &a, const GeneratorContext &b)
    {
        if (a.gens_.size() != b.gens_.size() || a.num_levels() != b.num_levels()) {
            return false;
        }
        for (std::size_t i = 0; i < a.gens_.size(); ++i) {
            if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].value != b.gens_[i].value
                || a.gens_[i].log != b.gens_[i].log) {
                return false;
            }
        }
        for (int c = 1; c <= a.num_levels(); ++c) {
            const auto &sa = a.group_.arch_class(c).symbols;
            const auto &sb = b.group_.arch_class(c).symbols;
            if (sa.size() != sb.size()) {
                return false;
            }
            for (std::size_t s = 0; s < sa.size(); ++s) {
                if (sa[s].lo != sb[s].lo || sa[s].hi != sb[s].hi) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    static bool valid_name(const std::string &name)
    {
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
            return false;
        }
        for (char c : name) {
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
                return false;
            }
        }
        return name != "log";
    }

    // Generator values inside one class must be Q-linearly independent as
    // vectors over the class's symbols (which are themselves assumed
    // independent).
    void check_independence() const
    {
        for (int c = 1; c <= group_.num_classes(); ++c) {
            const std::size_t width = group_.arch_class(c).symbols.size();
            std::vector<std::vector<Rational>> rows;
            for (const auto &g : gens_) {
                if (g.cls != c) {
                    continue;
                }
                std::vector<Rational> row(width);
                for (const auto &[coord, q] : g.value.coords()) {
                    row[static_cast<std::size_t>(coord.sym - 1)] = q;
                }
                rows.push_back(std::move(row));
            }
            if (rank(rows, width) != rows.size()) {
                throw RationalDependence("generator values in class " + std::to_string(c)
                                         + " are rationally dependent");
            }
        }
    }

    static std::size_t rank(std::vector<std::vector<Rational>> rows, std::size_t width)
    {
        std::size_t r = 0;
        for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
            std::size_t pivot = r;
            while (pivot < rows.size() && rows[pivot][col] == 0) {
                ++pivot;
            }
            if (pivot == rows.size()) {
                continue;
            }
            std::swap(rows[r], rows[pivot]);
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) {
                    continue;
                }
                const Rational f = rows[i][col] / rows[r][col];
                for (std::size_t j = col; j < width; ++j) {
                    rows[i][j] -= f * rows[r][j];
                }
            }
            ++r;
        }
        return r;
    }

    ValueGroup group_;
    std::vector<Generator> gens_;
};

using ContextPtr = std::shared_ptr<const GeneratorContext>;

} // namespace hahnpp
