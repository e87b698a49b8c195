#include "scpn/gauss_rational.hpp"

#include "scpn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

namespace scpn {

double GaussRational::abs() const
{
    if (sgn(im_) == 0) return std::fabs(re_.get_d());
    if (sgn(re_) == 0) return std::fabs(im_.get_d());
    return std::hypot(re_.get_d(), im_.get_d());
}

GaussRational GaussRational::inverse() const
{
    if (is_zero()) raise(ErrorKind::ZeroBody, "inverse of zero");
    mpq_class n = norm2();
    return {re_ / n, -im_ / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

std::string GaussRational::to_string() const
{
    if (sgn(im_) == 0) return re_.get_str();
    std::string out = re_.get_str();
    mpq_class mag = im_;
    if (sgn(im_) < 0) {
        out += "-";
        mag = -mag;
    } else {
        out += "+";
    }
    out += mag.get_str();
    out += "*i";
    return out;
}

namespace {

mpq_class parse_rational(std::string_view s, std::string_view whole)
{
    if (s.empty()) raise(ErrorKind::ConfigParseError, "bad scalar literal '" + std::string(whole) + "'");
    std::string text(s);
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            raise(ErrorKind::ConfigParseError, "bad scalar literal '" + std::string(whole) + "'");
    }
    if (text.front() == '+') text.erase(0, 1);
    mpq_class q;
    if (q.set_str(text, 10) != 0) raise(ErrorKind::ConfigParseError, "bad scalar literal '" + std::string(whole) + "'");
    if (sgn(q.get_den()) == 0) raise(ErrorKind::ConfigParseError, "zero denominator in '" + std::string(whole) + "'");
    q.canonicalize();
    return q;
}

// Imaginary part written as "c/d*i", "c*i", "i" with an optional sign.
mpq_class parse_imag(std::string_view s, std::string_view whole)
{
    std::string_view body = s.substr(0, s.size() - 1); // drop 'i'
    if (!body.empty() && body.back() == '*') body.remove_suffix(1);
    if (body.empty() || body == "+") return 1;
    if (body == "-") return -1;
    return parse_rational(body, whole);
}

} // namespace

GaussRational GaussRational::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) raise(ErrorKind::ConfigParseError, "empty scalar literal");

    if (s.back() != 'i') return {parse_rational(s, text), 0};

    // Split at the last sign that is not the leading character and not part
    // of an exponent-free fraction; literals never contain '+'/'-' inside a part.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0, parse_imag(s, text)};
    return {parse_rational(std::string_view(s).substr(0, split), text),
            parse_imag(std::string_view(s).substr(split), text)};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.to_string(); }

} // namespace scpn
