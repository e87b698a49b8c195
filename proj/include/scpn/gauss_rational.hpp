#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace scpn {

/// Exact element of Q(i). Both parts are kept canonical by GMP, so equality
/// is structural.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long re) : re_(re) {}
    GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational i() { return GaussRational(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }
    double abs() const;
    /// Throws ZeroBody on zero.
    GaussRational inverse() const;

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussRational& a, const GaussRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    /// Literal form: "a", "a/b", "a/b+c/d*i", "-c/d*i"; lowest terms.
    std::string to_string() const;
    /// Accepts the literal form above plus "i", "-i", "2*i" and whitespace.
    static GaussRational parse(std::string_view text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

} // namespace scpn
