#pragma once

#include "scpn/algebra.hpp"
#include "scpn/errors.hpp"
#include "scpn/field.hpp"
#include "scpn/jet.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace scpn {

/// Uniform access to the coefficient ring: a field F or a jet over F.
template <class C>
struct coeff_ops {
    using Field = C;
    static bool is_zero(const C& c) { return field_traits<C>::is_zero(c); }
    static C conj(const C& c) { return field_traits<C>::conj(c); }
    static C inverse(const C& c) { return field_traits<C>::inverse(c); }
    static C one_like(const C&) { return field_traits<C>::from_int(1); }
};

template <class F>
struct coeff_ops<Jet<F>> {
    using Field = F;
    static bool is_zero(const Jet<F>& c) { return c.is_zero(); }
    static Jet<F> conj(const Jet<F>& c) { return c.conjugate(); }
    static Jet<F> inverse(const Jet<F>& c) { return c.reciprocal(); }
    static Jet<F> one_like(const Jet<F>& c) { return c.one_like(); }
};

enum class Parity { even, odd, mixed };

template <class C>
class Grassmann;

template <class C>
Grassmann<C> grassmann_product(const Grassmann<C>& a, const Grassmann<C>& b);

/// Element of the finite Grassmann algebra over the coefficient ring C.
/// Terms are kept sorted by mask with no zero coefficients.
template <class C>
class Grassmann {
public:
    using Coeff = C;
    using Field = typename coeff_ops<C>::Field;

    struct Term {
        Mask mask;
        C coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    /// Placeholder without an algebra; only assignment is meaningful.
    Grassmann() = default;
    explicit Grassmann(AlgebraPtr algebra) : alg_(std::move(algebra)) {}

    static Grassmann from_terms(AlgebraPtr algebra, std::vector<Term> terms)
    {
        Grassmann g(std::move(algebra));
        std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.mask < y.mask; });
        for (auto& t : terms) {
            require(t.mask <= g.alg_->full_mask(), ErrorKind::IndexOutOfRange, "monomial outside algebra");
            if (!g.terms_.empty() && g.terms_.back().mask == t.mask)
                g.terms_.back().coeff += t.coeff;
            else
                g.terms_.push_back(std::move(t));
        }
        g.prune();
        return g;
    }

    static Grassmann scalar(AlgebraPtr algebra, C value) { return monomial(std::move(algebra), 0, std::move(value)); }

    static Grassmann monomial(AlgebraPtr algebra, Mask mask, C value)
    {
        Grassmann g(std::move(algebra));
        require(mask <= g.alg_->full_mask(), ErrorKind::IndexOutOfRange, "monomial outside algebra");
        if (!coeff_ops<C>::is_zero(value)) g.terms_.push_back({mask, std::move(value)});
        return g;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const C* find(Mask mask) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                                   [](const Term& t, Mask m) { return t.mask < m; });
        return (it != terms_.end() && it->mask == mask) ? &it->coeff : nullptr;
    }
    const C* body() const { return find(0); }

    /// Zero counts as both even and odd.
    bool is_even() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return degree(t.mask) % 2 == 0; });
    }
    bool is_odd() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return degree(t.mask) % 2 == 1; });
    }
    Parity parity() const
    {
        if (is_even()) return Parity::even;
        if (is_odd()) return Parity::odd;
        return Parity::mixed;
    }

    Grassmann soul() const
    {
        Grassmann g(alg_);
        for (const auto& t : terms_)
            if (t.mask != 0) g.terms_.push_back(t);
        return g;
    }

    template <class Fn>
    Grassmann map_coeffs(Fn&& fn) const
    {
        Grassmann g(alg_);
        g.terms_.reserve(terms_.size());
        for (const auto& t : terms_) g.terms_.push_back({t.mask, fn(t.coeff)});
        g.prune();
        return g;
    }

    void check_algebra(const Grassmann& o) const
    {
        if (alg_ != o.alg_ && !(*alg_ == *o.alg_)) raise(ErrorKind::AlgebraMismatch, "elements from different algebras");
    }

    Grassmann& operator+=(const Grassmann& o) { return *this = combine(*this, o, false); }
    Grassmann& operator-=(const Grassmann& o) { return *this = combine(*this, o, true); }
    friend Grassmann operator+(const Grassmann& a, const Grassmann& b) { return combine(a, b, false); }
    friend Grassmann operator-(const Grassmann& a, const Grassmann& b) { return combine(a, b, true); }
    Grassmann operator-() const
    {
        Grassmann g(*this);
        for (auto& t : g.terms_) t.coeff = -t.coeff;
        return g;
    }

    friend Grassmann operator*(const Grassmann& a, const Grassmann& b) { return grassmann_product(a, b); }
    Grassmann& operator*=(const Grassmann& o) { return *this = grassmann_product(*this, o); }

    /// Multiplication by a central coefficient.
    Grassmann scaled(const C& c) const
    {
        return map_coeffs([&](const C& x) { return x * c; });
    }
    Grassmann scaled_by_field(const Field& s) const
    {
        return map_coeffs([&](const C& x) { return x * s; });
    }

    friend bool operator==(const Grassmann& a, const Grassmann& b)
    {
        return (a.alg_ == b.alg_ || *a.alg_ == *b.alg_) && a.terms_ == b.terms_;
    }

    /// Appends without sorting; caller guarantees increasing masks.
    void push_sorted(Mask mask, C coeff)
    {
        if (!coeff_ops<C>::is_zero(coeff)) terms_.push_back({mask, std::move(coeff)});
    }

private:
    void prune()
    {
        std::erase_if(terms_, [](const Term& t) { return coeff_ops<C>::is_zero(t.coeff); });
    }

    static Grassmann combine(const Grassmann& a, const Grassmann& b, bool subtract)
    {
        a.check_algebra(b);
        Grassmann g(a.alg_);
        g.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->mask < j->mask)) {
                g.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->mask < i->mask) {
                g.terms_.push_back({j->mask, subtract ? -j->coeff : j->coeff});
                ++j;
            } else {
                C c = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
                if (!coeff_ops<C>::is_zero(c)) g.terms_.push_back({i->mask, std::move(c)});
                ++i;
                ++j;
            }
        }
        return g;
    }

    AlgebraPtr alg_;
    std::vector<Term> terms_;
};

template <class C>
C plain_product(const C& a, const C& b)
{
    return a * b;
}

template <class F>
Jet<F> plain_product(const Jet<F>& a, const Jet<F>& b)
{
    return Jet<F>::convolve(a, b);
}

/// Serial pairwise product over the naive coefficient convolution; kept as
/// the reference the fast kernels are tested against.
template <class C>
Grassmann<C> reference_product(const Grassmann<C>& a, const Grassmann<C>& b)
{
    a.check_algebra(b);
    using Term = typename Grassmann<C>::Term;
    std::vector<Term> parts;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) {
            if (x.mask & y.mask) continue;
            C c = plain_product(x.coeff, y.coeff);
            if (mul_sign(x.mask, y.mask) < 0) c = -c;
            parts.push_back({x.mask | y.mask, std::move(c)});
        }
    return Grassmann<C>::from_terms(a.algebra(), std::move(parts));
}

template <class C>
Grassmann<C> grassmann_product(const Grassmann<C>& a, const Grassmann<C>& b)
{
    return reference_product(a, b);
}

template <>
Grassmann<Jet<GaussRational>> grassmann_product(const Grassmann<Jet<GaussRational>>& a,
                                                 const Grassmann<Jet<GaussRational>>& b);

template <class C>
Grassmann<C> gmul(const Grassmann<C>& a, const Grassmann<C>& b)
{
    return grassmann_product(a, b);
}

/// Antilinear involution with (ab)^dagger = b^dagger a^dagger.
template <class C>
Grassmann<C> gconj(const Grassmann<C>& a)
{
    const auto& alg = *a.algebra();
    std::vector<typename Grassmann<C>::Term> parts;
    parts.reserve(a.size());
    for (const auto& t : a.terms()) {
        C c = coeff_ops<C>::conj(t.coeff);
        if (alg.conj_sign(t.mask) < 0) c = -c;
        parts.push_back({alg.conj_mask(t.mask), std::move(c)});
    }
    return Grassmann<C>::from_terms(a.algebra(), std::move(parts));
}

/// Left derivative with respect to generator `gen`.
template <class C>
Grassmann<C> gderiv(const Grassmann<C>& a, int gen)
{
    require(gen >= 0 && gen < a.algebra()->generator_count(), ErrorKind::IndexOutOfRange,
            "generator " + std::to_string(gen) + " out of range");
    const Mask bit = Mask{1} << gen;
    Grassmann<C> out(a.algebra());
    for (const auto& t : a.terms()) {
        if (!(t.mask & bit)) continue;
        C c = t.coeff;
        if (deriv_sign(t.mask, gen) < 0) c = -c;
        out.push_sorted(t.mask & ~bit, std::move(c));
    }
    // Removing a fixed bit keeps the relative order of the remaining masks.
    return out;
}

/// Inverse via the finite Neumann series in the nilpotent soul.
template <class C>
Grassmann<C> ginvert(const Grassmann<C>& a)
{
    const C* b = a.body();
    if (b == nullptr) raise(ErrorKind::ZeroBody, "element has no body");
    const C binv = coeff_ops<C>::inverse(*b);
    const Grassmann<C> u = a.soul().scaled(binv);
    Grassmann<C> sum = Grassmann<C>::scalar(a.algebra(), coeff_ops<C>::one_like(binv));
    Grassmann<C> power = sum;
    for (int m = 1; m <= a.algebra()->generator_count(); ++m) {
        power = -(power * u);
        if (power.is_zero()) break;
        sum += power;
    }
    return sum.scaled(binv);
}

} // namespace scpn
