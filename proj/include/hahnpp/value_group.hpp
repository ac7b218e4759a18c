#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hahnpp/errors.hpp>
#include <hahnpp/rational.hpp>

namespace hahnpp
{

// Position of a coordinate: archimedean class (1 = coarsest) and the basis
// symbol inside that class (1 = the unit symbol).
struct Coord {
    int cls = 1;
    int sym = 1;

    friend auto operator<=>(const Coord &, const Coord &) = default;
};

// Element of the value group, stored as a sparse list of exact rational
// coordinates sorted by Coord. Zero coordinates are never stored, so
// structural equality coincides with group equality.
class GroupElement
{
public:
    using Entry = std::pair<Coord, Rational>;

    GroupElement() = default;

    explicit GroupElement(std::vector<Entry> entries) : entries_(std::move(entries))
    {
        normalize();
    }

    // q times the unit symbol of class `cls`.
    static GroupElement unit(int cls, const Rational &q)
    {
        return GroupElement({{Coord{cls, 1}, q}});
    }

    const std::vector<Entry> &coords() const noexcept
    {
        return entries_;
    }

    Rational coord(Coord c) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), c,
                                   [](const Entry &e, const Coord &key) { return e.first < key; });
        if (it != entries_.end() && it->first == c) {
            return it->second;
        }
        return Rational(0);
    }

    bool is_zero() const noexcept
    {
        return entries_.empty();
    }

    // Lowest-index class carrying a nonzero coordinate.
    std::optional<int> leading_class() const
    {
        if (entries_.empty()) {
            return std::nullopt;
        }
        return entries_.front().first.cls;
    }

    // Coordinates of classes 1..level only.
    GroupElement project(int level) const
    {
        GroupElement out;
        for (const auto &e : entries_) {
            if (e.first.cls <= level) {
                out.entries_.push_back(e);
            }
        }
        return out;
    }

    // Coordinates of a single class.
    GroupElement class_part(int cls) const
    {
        GroupElement out;
        for (const auto &e : entries_) {
            if (e.first.cls == cls) {
                out.entries_.push_back(e);
            }
        }
        return out;
    }

    GroupElement scaled(const Rational &q) const
    {
        if (q == 0) {
            return {};
        }
        GroupElement out(*this);
        for (auto &e : out.entries_) {
            e.second *= q;
        }
        return out;
    }

    // a + q*b
    static GroupElement axpy(const GroupElement &a, const GroupElement &b, const Rational &q)
    {
        GroupElement out;
        out.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto ia = a.entries_.begin();
        auto ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end()) {
            if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
                out.entries_.push_back(*ia++);
            } else if (ia == a.entries_.end() || ib->first < ia->first) {
                Rational v = ib->second * q;
                if (v != 0) {
                    out.entries_.emplace_back(ib->first, std::move(v));
                }
                ++ib;
            } else {
                Rational v = ia->second + ib->second * q;
                if (v != 0) {
                    out.entries_.emplace_back(ia->first, std::move(v));
                }
                ++ia;
                ++ib;
            }
        }
        return out;
    }

    friend GroupElement operator+(const GroupElement &a, const GroupElement &b)
    {
        return axpy(a, b, Rational(1));
    }
    friend GroupElement operator-(const GroupElement &a, const GroupElement &b)
    {
        return axpy(a, b, Rational(-1));
    }
    friend GroupElement operator-(const GroupElement &a)
    {
        return a.scaled(Rational(-1));
    }
    GroupElement &operator+=(const GroupElement &b)
    {
        return *this = *this + b;
    }

    friend bool operator==(const GroupElement &, const GroupElement &) = default;

private:
    void normalize()
    {
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry &x, const Entry &y) { return x.first < y.first; });
        std::vector<Entry> merged;
        merged.reserve(entries_.size());
        for (auto &e : entries_) {
            if (e.first.cls < 1 || e.first.sym < 1) {
                throw InputError("group element coordinates are 1-based");
            }
            if (!merged.empty() && merged.back().first == e.first) {
                merged.back().second += e.second;
            } else {
                merged.push_back(std::move(e));
            }
        }
        std::erase_if(merged, [](const Entry &e) { return e.second == 0; });
        entries_ = std::move(merged);
    }

    std::vector<Entry> entries_;
};

// A basis symbol of an archimedean class: a positive real weight known
// through a rational enclosure [lo, hi]. The unit symbol has lo = hi = 1.
struct WeightSymbol {
    std::string name;
    Rational lo{1};
    Rational hi{1};
};

struct ArchClassSpec {
    std::vector<WeightSymbol> symbols{WeightSymbol{"1", Rational(1), Rational(1)}};
};

// The convex subgroups Gamma(1) ⊇ ... ⊇ Gamma(k+1) = {0}; Gamma(i) holds the
// elements supported on classes >= i.
class ConvexChain
{
public:
    explicit ConvexChain(int k = 0) : k_(k)
    {
    }

    int k() const noexcept
    {
        return k_;
    }

    bool contains(int i, const GroupElement &a) const
    {
        if (i < 1 || i > k_ + 1) {
            throw std::out_of_range("convex subgroup index out of range");
        }
        const auto lead = a.leading_class();
        return !lead || *lead >= i;
    }

    friend bool operator==(const ConvexChain &, const ConvexChain &) = default;

private:
    int k_;
};

// The convex valuation w_level, whose associated subgroup is Gamma(level+1).
// The finest one, w_k, is the natural valuation.
struct Coarsening {
    int level = 1;

    friend auto operator<=>(const Coarsening &, const Coarsening &) = default;
};

// w(a) under the identification wK = vK / H_w.
inline GroupElement coarsen(const Coarsening &w, const GroupElement &a)
{
    return a.project(w.level);
}

// A lexicographic sum of finitely generated subgroups of the reals, one per
// archimedean class.
class ValueGroup
{
public:
    ValueGroup() = default;

    explicit ValueGroup(std::vector<ArchClassSpec> classes) : classes_(std::move(classes))
    {
        for (const auto &c : classes_) {
            if (c.symbols.empty() || c.symbols.front().lo != 1 || c.symbols.front().hi != 1) {
                throw ContextError("the first symbol of every class must be the unit 1");
            }
            for (std::size_t s = 1; s < c.symbols.size(); ++s) {
                const auto &sym = c.symbols[s];
                if (!(sym.lo > 0) || sym.lo > sym.hi) {
                    throw ContextError("symbol '" + sym.name
                                       + "' needs an enclosure with 0 < lo <= hi");
                }
            }
            if (c.symbols.size() > 1) {
                unit_only_ = false;
            }
        }
    }

    // k classes, each spanned by the unit symbol only.
    static ValueGroup unit_classes(int k)
    {
        return ValueGroup(std::vector<ArchClassSpec>(static_cast<std::size_t>(k)));
    }

    int num_classes() const noexcept
    {
        return static_cast<int>(classes_.size());
    }

    const ArchClassSpec &arch_class(int cls) const
    {
        return classes_.at(static_cast<std::size_t>(cls - 1));
    }

    ConvexChain chain() const
    {
        return ConvexChain(num_classes());
    }

    // Returns a copy whose enclosure for (cls, sym) is intersected with [lo, hi].
    ValueGroup refine(int cls, int sym, const Rational &lo, const Rational &hi) const
    {
        ValueGroup out(*this);
        auto &s = out.classes_.at(static_cast<std::size_t>(cls - 1))
                      .symbols.at(static_cast<std::size_t>(sym - 1));
        if (sym == 1) {
            return out;
        }
        s.lo = std::max(s.lo, lo);
        s.hi = std::min(s.hi, hi);
        if (!(s.lo > 0) || s.lo > s.hi) {
            throw ContextError("refined enclosure of '" + s.name + "' is empty");
        }
        return out;
    }

    void check_member(const GroupElement &a) const
    {
        for (const auto &[c, q] : a.coords()) {
            if (c.cls > num_classes()
                || c.sym > static_cast<int>(arch_class(c.cls).symbols.size())) {
                throw ContextError("group element has a coordinate outside the declared classes");
            }
        }
    }

    // Sign of the real number sum_s q_s * tau_s for the coordinates of `a`
    // in class `cls`.
    int class_sign(const GroupElement &a, int cls) const
    {
        Rational unit(0), lo(0), hi(0);
        bool irrational = false;
        for (const auto &[c, q] : a.coords()) {
            if (c.cls != cls) {
                continue;
            }
            if (c.sym == 1) {
                unit = q;
                continue;
            }
            irrational = true;
            const auto &s = arch_class(cls).symbols.at(static_cast<std::size_t>(c.sym - 1));
            if (q > 0) {
                lo += q * s.lo;
                hi += q * s.hi;
            } else {
                lo += q * s.hi;
                hi += q * s.lo;
            }
        }
        if (!irrational) {
            return sgn(unit);
        }
        lo += unit;
        hi += unit;
        if (lo > 0) {
            return 1;
        }
        if (hi < 0) {
            return -1;
        }
        throw PrecisionExhausted("enclosures of class " + std::to_string(cls)
                                 + " cannot certify the sign of a combination");
    }

    // Sign in the lexicographic order: decided by the leading class.
    int sign(const GroupElement &a) const
    {
        const auto lead = a.leading_class();
        if (!lead) {
            return 0;
        }
        return class_sign(a, *lead);
    }

    std::strong_ordering compare(const GroupElement &a, const GroupElement &b) const
    {
        if (unit_only_) {
            return compare_unit(a, b);
        }
        const int s = sign(a - b);
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    bool less(const GroupElement &a, const GroupElement &b) const
    {
        return compare(a, b) < 0;
    }

    // |a| and |b| bound each other by integer multiples: same leading class.
    bool arch_equivalent(const GroupElement &a, const GroupElement &b) const
    {
        if (a.is_zero() || b.is_zero()) {
            throw ZeroArgument("archimedean equivalence is defined for nonzero elements");
        }
        return a.leading_class() == b.leading_class();
    }

    // Least n >= 1 with n*step >= target, for step > 0. Empty when no
    // multiple of step reaches target (target lies in a coarser class).
    std::optional<mpz_class> least_multiple_reaching(const GroupElement &step,
                                                     const GroupElement &target) const
    {
        if (sign(step) <= 0) {
            throw std::invalid_argument("least_multiple_reaching needs a positive step");
        }
        if (!less(step, target)) {
            return mpz_class(1);
        }
        if (*target.leading_class() < *step.leading_class()) {
            return std::nullopt;
        }
        if (*target.leading_class() > *step.leading_class()) {
            return mpz_class(1);
        }
        // Same leading class: double, then bisect. Terminates because the
        // class is archimedean.
        auto reaches = [&](const mpz_class &n) { return !less(step.scaled(Rational(n)), target); };
        mpz_class hi(2);
        while (!reaches(hi)) {
            hi *= 2;
        }
        mpz_class lo = hi / 2; // does not reach
        while (hi - lo > 1) {
            mpz_class mid = (lo + hi) / 2;
            if (reaches(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return hi;
    }

private:
    // Every class is spanned by its unit symbol: the order is plain
    // lexicographic on coordinates, with absent entries read as 0.
    static std::strong_ordering compare_unit(const GroupElement &a, const GroupElement &b)
    {
        const auto &x = a.coords();
        const auto &y = b.coords();
        std::size_t i = 0, j = 0;
        static const Rational zero(0);
        while (i < x.size() || j < y.size()) {
            const Rational *qa = &zero;
            const Rational *qb = &zero;
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                qa = &x[i++].second;
            } else if (i == x.size() || y[j].first < x[i].first) {
                qb = &y[j++].second;
            } else {
                qa = &x[i++].second;
                qb = &y[j++].second;
            }
            const int c = cmp(*qa, *qb);
            if (c != 0) {
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
            }
        }
        return std::strong_ordering::equal;
    }

    std::vector<ArchClassSpec> classes_;
    bool unit_only_ = true;
};

inline std::strong_ordering vg_compare(const ValueGroup &g, const GroupElement &a,
                                       const GroupElement &b)
{
    return g.compare(a, b);
}

inline GroupElement vg_arith(const GroupElement &a, const GroupElement &b, const Rational &q)
{
    return GroupElement::axpy(a, b, q);
}

} // namespace hahnpp
