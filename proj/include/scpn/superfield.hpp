#pragma once

#include "scpn/exact_kernel.hpp"
#include "scpn/grassmann.hpp"
#include "scpn/jet.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scpn {

template <class F>
using SuperScalar = Grassmann<Jet<F>>;

/// Everything needed to mint constants: the algebra, the base point and the
/// working jet orders.
template <class F>
struct Frame {
    AlgebraPtr algebra;
    F base;
    JetOrders orders;

    Frame with_orders(JetOrders o) const { return {algebra, base, o}; }

    Jet<F> jet(const F& value) const { return Jet<F>::constant(base, orders, value); }
    SuperScalar<F> zero() const { return SuperScalar<F>(algebra); }
    SuperScalar<F> constant(const F& value) const { return SuperScalar<F>::scalar(algebra, jet(value)); }
    SuperScalar<F> one() const { return constant(field_traits<F>::from_int(1)); }
    SuperScalar<F> from_jet(Jet<F> j, Mask mask = 0) const { return SuperScalar<F>::monomial(algebra, mask, std::move(j)); }
    SuperScalar<F> generator(int g) const { return SuperScalar<F>::monomial(algebra, Mask{1} << g, jet(field_traits<F>::from_int(1))); }
    SuperScalar<F> variable(Direction d) const { return from_jet(Jet<F>::variable(base, orders, d)); }
    /// poly(x+) times the monomial e_mask.
    SuperScalar<F> polynomial(std::span<const F> coeffs, Mask mask = 0) const
    {
        return from_jet(Jet<F>::polynomial_plus(base, orders, coeffs), mask);
    }
};

template <class F>
class SuperVector {
public:
    SuperVector() = default;
    explicit SuperVector(std::vector<SuperScalar<F>> comps) : c_(std::move(comps)) {}
    static SuperVector zeros(const AlgebraPtr& alg, std::size_t n) { return SuperVector(std::vector<SuperScalar<F>>(n, SuperScalar<F>(alg))); }

    std::size_t size() const { return c_.size(); }
    const SuperScalar<F>& operator[](std::size_t k) const { return c_[k]; }
    SuperScalar<F>& operator[](std::size_t k) { return c_[k]; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }
    const std::vector<SuperScalar<F>>& components() const { return c_; }

    friend bool operator==(const SuperVector&, const SuperVector&) = default;

private:
    std::vector<SuperScalar<F>> c_;
};

template <class F>
class SuperMatrix {
public:
    SuperMatrix() = default;
    SuperMatrix(const AlgebraPtr& alg, std::size_t n) : n_(n), e_(n * n, SuperScalar<F>(alg)) {}

    static SuperMatrix identity(const Frame<F>& frame, std::size_t n)
    {
        SuperMatrix m(frame.algebra, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = frame.one();
        return m;
    }

    std::size_t size() const { return n_; }
    const SuperScalar<F>& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    SuperScalar<F>& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const std::vector<SuperScalar<F>>& entries() const { return e_; }
    std::vector<SuperScalar<F>>& entries() { return e_; }

    friend bool operator==(const SuperMatrix&, const SuperMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<SuperScalar<F>> e_;
};

// ---------------------------------------------------------------------------
// Entry-wise maps shared by scalars, vectors and matrices.

template <class F, class Fn>
SuperVector<F> map_entries(const SuperVector<F>& v, Fn&& fn)
{
    std::vector<SuperScalar<F>> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(fn(x));
    return SuperVector<F>(std::move(out));
}

template <class F, class Fn>
SuperMatrix<F> map_entries(const SuperMatrix<F>& m, Fn&& fn)
{
    SuperMatrix<F> out = m;
    for (auto& x : out.entries()) x = fn(x);
    return out;
}

template <class F>
SuperScalar<F> truncate(const SuperScalar<F>& s, JetOrders to)
{
    return s.map_coeffs([&](const Jet<F>& j) { return j.truncated(to); });
}
template <class F>
SuperVector<F> truncate(const SuperVector<F>& v, JetOrders to)
{
    return map_entries(v, [&](const SuperScalar<F>& x) { return truncate(x, to); });
}
template <class F>
SuperMatrix<F> truncate(const SuperMatrix<F>& m, JetOrders to)
{
    return map_entries(m, [&](const SuperScalar<F>& x) { return truncate(x, to); });
}

/// Ordinary derivative d/dx+- applied to every jet coefficient.
template <class F>
SuperScalar<F> partial(const SuperScalar<F>& s, Direction d)
{
    return s.map_coeffs([&](const Jet<F>& j) { return j.derive(d); });
}
template <class F>
SuperVector<F> partial(const SuperVector<F>& v, Direction d)
{
    return map_entries(v, [&](const SuperScalar<F>& x) { return partial(x, d); });
}

template <class F>
SuperScalar<F> conj(const SuperScalar<F>& s)
{
    return gconj(s);
}

/// Odd superderivative -i d/d(theta) + theta d/dx in direction d.
template <class F>
SuperScalar<F> super_derive(const SuperScalar<F>& f, Direction d)
{
    const int gen = d == Direction::plus ? AlgebraContext::theta_plus : AlgebraContext::theta_minus;
    const Mask bit = Mask{1} << gen;
    using Term = typename SuperScalar<F>::Term;
    std::vector<Term> parts;
    parts.reserve(2 * f.size());
    const F minus_i = -field_traits<F>::i();
    for (const auto& t : f.terms()) {
        const JetOrders lowered = t.coeff.orders().lowered(d);
        require(lowered.in(d) >= 0, ErrorKind::JetOrderExhausted,
                std::string("superderivative needs jet order in ") + (d == Direction::plus ? "x+" : "x-"));
        if (t.mask & bit) {
            Jet<F> c = t.coeff.truncated(lowered) * minus_i;
            if (deriv_sign(t.mask, gen) < 0) c = -c;
            parts.push_back({t.mask & ~bit, std::move(c)});
        } else {
            Jet<F> c = t.coeff.derive(d);
            if (mul_sign(bit, t.mask) < 0) c = -c;
            parts.push_back({t.mask | bit, std::move(c)});
        }
    }
    return SuperScalar<F>::from_terms(f.algebra(), std::move(parts));
}
template <class F>
SuperVector<F> super_derive(const SuperVector<F>& v, Direction d)
{
    return map_entries(v, [&](const SuperScalar<F>& x) { return super_derive(x, d); });
}
template <class F>
SuperMatrix<F> super_derive(const SuperMatrix<F>& m, Direction d)
{
    return map_entries(m, [&](const SuperScalar<F>& x) { return super_derive(x, d); });
}

/// No theta- anywhere and every jet coefficient independent of x-.
template <class F>
bool is_holomorphic(const SuperScalar<F>& f)
{
    const Mask bit = Mask{1} << AlgebraContext::theta_minus;
    for (const auto& t : f.terms())
        if ((t.mask & bit) || !t.coeff.is_holomorphic()) return false;
    return true;
}
template <class F>
bool is_holomorphic(const SuperVector<F>& v)
{
    for (const auto& x : v)
        if (!is_holomorphic(x)) return false;
    return true;
}

/// Largest |coefficient| over monomials and jet cells.
template <class F>
double max_abs(const SuperScalar<F>& s)
{
    double m = 0.0;
    for (const auto& t : s.terms())
        for (const auto& x : t.coeff.cells()) m = std::max(m, field_traits<F>::abs(x));
    return m;
}
template <class F>
double max_abs(const SuperVector<F>& v)
{
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, max_abs(x));
    return m;
}
template <class F>
double max_abs(const SuperMatrix<F>& mat)
{
    double m = 0.0;
    for (const auto& x : mat.entries()) m = std::max(m, max_abs(x));
    return m;
}

template <class F>
bool is_zero(const SuperScalar<F>& s)
{
    return s.is_zero();
}
template <class F>
bool is_zero(const SuperVector<F>& v)
{
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}
template <class F>
bool is_zero(const SuperMatrix<F>& m)
{
    for (const auto& x : m.entries())
        if (!x.is_zero()) return false;
    return true;
}

/// Jet orders carried by the coefficients; nullopt for the zero element.
template <class F>
std::optional<JetOrders> orders_of(const SuperScalar<F>& s)
{
    if (s.is_zero()) return std::nullopt;
    return s.terms().front().coeff.orders();
}

// ---------------------------------------------------------------------------
// Vector and matrix arithmetic. Products keep operand order; scalars act
// from the left unless the name says otherwise.

template <class F>
void check_same_size(std::size_t a, std::size_t b)
{
    require(a == b, ErrorKind::DimensionMismatch, "sizes " + std::to_string(a) + " and " + std::to_string(b));
}

template <class F>
SuperVector<F> operator+(const SuperVector<F>& a, const SuperVector<F>& b)
{
    check_same_size<F>(a.size(), b.size());
    std::vector<SuperScalar<F>> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] + b[k]);
    return SuperVector<F>(std::move(out));
}
template <class F>
SuperVector<F> operator-(const SuperVector<F>& a, const SuperVector<F>& b)
{
    check_same_size<F>(a.size(), b.size());
    std::vector<SuperScalar<F>> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] - b[k]);
    return SuperVector<F>(std::move(out));
}
template <class F>
SuperVector<F> operator-(const SuperVector<F>& a)
{
    return map_entries(a, [](const SuperScalar<F>& x) { return -x; });
}
template <class F>
SuperVector<F> operator*(const SuperScalar<F>& s, const SuperVector<F>& v)
{
    return map_entries(v, [&](const SuperScalar<F>& x) { return s * x; });
}
template <class F>
SuperVector<F> operator*(const SuperVector<F>& v, const SuperScalar<F>& s)
{
    return map_entries(v, [&](const SuperScalar<F>& x) { return x * s; });
}
template <class F>
SuperVector<F> scale(const SuperVector<F>& v, const F& s)
{
    return map_entries(v, [&](const SuperScalar<F>& x) { return x.scaled_by_field(s); });
}

template <class F>
SuperMatrix<F> operator+(const SuperMatrix<F>& a, const SuperMatrix<F>& b)
{
    check_same_size<F>(a.size(), b.size());
    SuperMatrix<F> out = a;
    for (std::size_t k = 0; k < out.entries().size(); ++k) out.entries()[k] += b.entries()[k];
    return out;
}
template <class F>
SuperMatrix<F> operator-(const SuperMatrix<F>& a, const SuperMatrix<F>& b)
{
    check_same_size<F>(a.size(), b.size());
    SuperMatrix<F> out = a;
    for (std::size_t k = 0; k < out.entries().size(); ++k) out.entries()[k] -= b.entries()[k];
    return out;
}
template <class F>
SuperMatrix<F> operator*(const SuperScalar<F>& s, const SuperMatrix<F>& m)
{
    return map_entries(m, [&](const SuperScalar<F>& x) { return s * x; });
}
template <class F>
SuperMatrix<F> operator*(const SuperMatrix<F>& m, const SuperScalar<F>& s)
{
    return map_entries(m, [&](const SuperScalar<F>& x) { return x * s; });
}
template <class F>
SuperMatrix<F> scale(const SuperMatrix<F>& m, const F& s)
{
    return map_entries(m, [&](const SuperScalar<F>& x) { return x.scaled_by_field(s); });
}

template <class F>
SuperMatrix<F> operator*(const SuperMatrix<F>& a, const SuperMatrix<F>& b)
{
    check_same_size<F>(a.size(), b.size());
    const std::size_t n = a.size();
    SuperMatrix<F> out(a(0, 0).algebra(), n);
    const long cells = static_cast<long>(n * n);
#ifdef SCPN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (cells > 1)
#endif
    for (long c = 0; c < cells; ++c) {
        const std::size_t i = static_cast<std::size_t>(c) / n, j = static_cast<std::size_t>(c) % n;
        SuperScalar<F> acc(a(0, 0).algebra());
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
            acc += a(i, k) * b(k, j);
        }
        out(i, j) = std::move(acc);
    }
    return out;
}

template <class F>
SuperVector<F> operator*(const SuperMatrix<F>& a, const SuperVector<F>& v)
{
    check_same_size<F>(a.size(), v.size());
    const std::size_t n = a.size();
    std::vector<SuperScalar<F>> out(n, SuperScalar<F>(v[0].algebra()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero() || v[k].is_zero()) continue;
            out[i] += a(i, k) * v[k];
        }
    return SuperVector<F>(std::move(out));
}

/// Entry-wise conjugate, transposed.
template <class F>
SuperMatrix<F> dagger(const SuperMatrix<F>& m)
{
    const std::size_t n = m.size();
    SuperMatrix<F> out(m(0, 0).algebra(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = gconj(m(j, i));
    return out;
}

/// u v^dagger.
template <class F>
SuperMatrix<F> outer(const SuperVector<F>& u, const SuperVector<F>& v)
{
    check_same_size<F>(u.size(), v.size());
    const std::size_t n = u.size();
    SuperMatrix<F> out(u[0].algebra(), n);
    std::vector<SuperScalar<F>> vc;
    for (const auto& x : v) vc.push_back(gconj(x));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = u[i] * vc[j];
    return out;
}

template <class F>
SuperScalar<F> trace(const SuperMatrix<F>& m)
{
    SuperScalar<F> t(m(0, 0).algebra());
    for (std::size_t i = 0; i < m.size(); ++i) t += m(i, i);
    return t;
}

} // namespace scpn
