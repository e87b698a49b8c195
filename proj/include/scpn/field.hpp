#pragma once

#include "scpn/errors.hpp"
#include "scpn/gauss_rational.hpp"

#include <cmath>
#include <complex>

namespace scpn {

using Complex = std::complex<double>;

/// Absolute threshold below which float coefficients count as zero.
/// Process-wide; set once from the run configuration before any work.
double float_zero_threshold();
void set_float_zero_threshold(double value);

template <class F>
struct field_traits;

template <>
struct field_traits<GaussRational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";

    static bool is_zero(const GaussRational& x) { return x.is_zero(); }
    static GaussRational conj(const GaussRational& x) { return x.conj(); }
    static double abs(const GaussRational& x) { return x.abs(); }
    static GaussRational i() { return GaussRational::i(); }
    static GaussRational from_int(long v) { return GaussRational(v); }
    static GaussRational inverse(const GaussRational& x) { return x.inverse(); }
};

template <>
struct field_traits<Complex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";

    static bool is_zero(const Complex& x) { return std::abs(x) <= float_zero_threshold(); }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static double abs(const Complex& x) { return std::abs(x); }
    static Complex i() { return {0.0, 1.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex inverse(const Complex& x)
    {
        if (is_zero(x)) raise(ErrorKind::ZeroBody, "inverse of negligible value");
        return Complex(1) / x;
    }
};

/// Exact comparison used for base points; float base points are chosen once
/// per run and copied, so bitwise equality is the right test there too.
template <class F>
bool same_point(const F& a, const F& b)
{
    return a == b;
}

} // namespace scpn
