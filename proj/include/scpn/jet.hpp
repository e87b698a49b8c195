#pragma once

#include "scpn/errors.hpp"
#include "scpn/field.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace scpn {

enum class Direction { plus, minus };

inline Direction opposite(Direction d) { return d == Direction::plus ? Direction::minus : Direction::plus; }

struct JetOrders {
    int plus = 0;
    int minus = 0;

    friend bool operator==(const JetOrders&, const JetOrders&) = default;

    int in(Direction d) const { return d == Direction::plus ? plus : minus; }
    JetOrders swapped() const { return {minus, plus}; }
    JetOrders lowered(Direction d, int by = 1) const
    {
        return d == Direction::plus ? JetOrders{plus - by, minus} : JetOrders{plus, minus - by};
    }
    static JetOrders min(JetOrders a, JetOrders b) { return {std::min(a.plus, b.plus), std::min(a.minus, b.minus)}; }
    std::size_t cells() const { return static_cast<std::size_t>(plus + 1) * static_cast<std::size_t>(minus + 1); }
};

/// Truncated Taylor table of f(x+, x-) at (x0, conj(x0)). Cell (p, q) holds
/// d+^p d-^q f / (p! q!), so products are plain truncated convolutions.
template <class F>
class Jet {
public:
    using Field = F;

    Jet(F base, JetOrders orders) : base_(std::move(base)), orders_(orders), c_(orders.cells())
    {
        require(orders.plus >= 0 && orders.minus >= 0, ErrorKind::JetOrderExhausted, "negative jet order");
    }

    static Jet constant(F base, JetOrders orders, F value)
    {
        Jet j(std::move(base), orders);
        j.c_[0] = std::move(value);
        return j;
    }

    static Jet variable(F base, JetOrders orders, Direction dir)
    {
        Jet j(base, orders);
        if (dir == Direction::plus) {
            j.c_[0] = base;
            if (orders.plus >= 1) j.at(1, 0) = field_traits<F>::from_int(1);
        } else {
            j.c_[0] = field_traits<F>::conj(base);
            if (orders.minus >= 1) j.at(0, 1) = field_traits<F>::from_int(1);
        }
        return j;
    }

    /// Jet of sum_k coeffs[k] * x+^k.
    static Jet polynomial_plus(F base, JetOrders orders, std::span<const F> coeffs)
    {
        Jet j(base, orders);
        // Taylor shift: c_p = sum_{k>=p} a_k * C(k, p) * x0^(k-p)
        std::vector<F> powers(coeffs.size() + 1, field_traits<F>::from_int(1));
        for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * base;
        for (int p = 0; p <= orders.plus && p < static_cast<int>(coeffs.size()); ++p) {
            F acc{};
            long binom = 1; // C(p, p)
            for (std::size_t k = p; k < coeffs.size(); ++k) {
                if (k > static_cast<std::size_t>(p)) binom = binom * static_cast<long>(k) / static_cast<long>(k - p);
                acc += coeffs[k] * field_traits<F>::from_int(binom) * powers[k - p];
            }
            j.at(p, 0) = acc;
        }
        return j;
    }

    const F& base() const { return base_; }
    JetOrders orders() const { return orders_; }

    const F& at(int p, int q) const { return c_[index(p, q)]; }
    F& at(int p, int q) { return c_[index(p, q)]; }
    std::span<const F> cells() const { return c_; }
    std::span<F> cells() { return c_; }
    const F& value() const { return c_[0]; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const F& x) { return field_traits<F>::is_zero(x); });
    }

    bool is_holomorphic() const
    {
        for (int p = 0; p <= orders_.plus; ++p)
            for (int q = 1; q <= orders_.minus; ++q)
                if (!field_traits<F>::is_zero(at(p, q))) return false;
        return true;
    }

    Jet zero_like() const { return Jet(base_, orders_); }
    Jet one_like() const { return constant(base_, orders_, field_traits<F>::from_int(1)); }

    /// Keeps cells with p <= orders.plus, q <= orders.minus.
    Jet truncated(JetOrders to) const
    {
        require(to.plus <= orders_.plus && to.minus <= orders_.minus, ErrorKind::OrderMismatch,
                "cannot raise jet order by truncation");
        if (to == orders_) return *this;
        Jet out(base_, to);
        for (int p = 0; p <= to.plus; ++p)
            for (int q = 0; q <= to.minus; ++q) out.at(p, q) = at(p, q);
        return out;
    }

    Jet derive(Direction dir) const
    {
        require(orders_.in(dir) >= 1, ErrorKind::JetOrderExhausted,
                std::string("no jet order left in ") + (dir == Direction::plus ? "x+" : "x-"));
        Jet out(base_, orders_.lowered(dir));
        for (int p = 0; p <= out.orders_.plus; ++p)
            for (int q = 0; q <= out.orders_.minus; ++q) {
                if (dir == Direction::plus)
                    out.at(p, q) = at(p + 1, q) * field_traits<F>::from_int(p + 1);
                else
                    out.at(p, q) = at(p, q + 1) * field_traits<F>::from_int(q + 1);
            }
        return out;
    }

    /// f -> conj(f) as a function of independent (x+, x-): c'(p,q) = conj(c(q,p)).
    Jet conjugate() const
    {
        Jet out(base_, orders_.swapped());
        for (int p = 0; p <= out.orders_.plus; ++p)
            for (int q = 0; q <= out.orders_.minus; ++q) out.at(p, q) = field_traits<F>::conj(at(q, p));
        return out;
    }

    Jet reciprocal() const
    {
        if (field_traits<F>::is_zero(c_[0])) raise(ErrorKind::ZeroBody, "jet reciprocal with vanishing constant term");
        Jet out(base_, orders_);
        const F inv0 = field_traits<F>::inverse(c_[0]);
        out.c_[0] = inv0;
        for (int p = 0; p <= orders_.plus; ++p)
            for (int q = 0; q <= orders_.minus; ++q) {
                if (p == 0 && q == 0) continue;
                F acc{};
                for (int i = 0; i <= p; ++i)
                    for (int j = 0; j <= q; ++j) {
                        if (i == 0 && j == 0) continue;
                        const F& a = at(i, j);
                        if (field_traits<F>::is_zero(a)) continue;
                        acc += a * out.at(p - i, q - j);
                    }
                out.at(p, q) = -(inv0 * acc);
            }
        return out;
    }

    Jet& operator+=(const Jet& o)
    {
        check_compatible(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        check_compatible(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(const F& s)
    {
        for (auto& x : c_) x *= s;
        return *this;
    }
    Jet operator-() const
    {
        Jet out(*this);
        for (auto& x : out.c_) x = -x;
        return out;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const F& s) { return a *= s; }
    friend Jet operator*(const F& s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b) { return jet_product(a, b); }
    Jet& operator*=(const Jet& o) { return *this = jet_product(*this, o); }

    friend bool operator==(const Jet& a, const Jet& b)
    {
        return a.orders_ == b.orders_ && same_point(a.base_, b.base_) && a.c_ == b.c_;
    }

    void check_compatible(const Jet& o) const
    {
        if (!same_point(base_, o.base_)) raise(ErrorKind::BasePointMismatch, "jets at different base points");
        if (!(orders_ == o.orders_))
            raise(ErrorKind::OrderMismatch, "jet orders (" + std::to_string(orders_.plus) + "," +
                                                std::to_string(orders_.minus) + ") vs (" +
                                                std::to_string(o.orders_.plus) + "," + std::to_string(o.orders_.minus) + ")");
    }

    /// Reference truncated convolution; the exact backend overrides
    /// jet_product with a fraction-free kernel.
    static Jet convolve(const Jet& a, const Jet& b)
    {
        a.check_compatible(b);
        Jet out(a.base_, a.orders_);
        const int P = a.orders_.plus, Q = a.orders_.minus;
        for (int i = 0; i <= P; ++i)
            for (int j = 0; j <= Q; ++j) {
                const F& x = a.at(i, j);
                if (field_traits<F>::is_zero(x)) continue;
                for (int k = 0; k + i <= P; ++k)
                    for (int l = 0; l + j <= Q; ++l) out.at(i + k, j + l) += x * b.at(k, l);
            }
        return out;
    }

private:
    std::size_t index(int p, int q) const
    {
        return static_cast<std::size_t>(p) * static_cast<std::size_t>(orders_.minus + 1) + static_cast<std::size_t>(q);
    }

    F base_;
    JetOrders orders_;
    std::vector<F> c_;
};

template <class F>
Jet<F> jet_product(const Jet<F>& a, const Jet<F>& b)
{
    return Jet<F>::convolve(a, b);
}

template <>
Jet<GaussRational> jet_product(const Jet<GaussRational>& a, const Jet<GaussRational>& b);

} // namespace scpn
