#include "kn/rational.hpp"

#include "kn/errors.hpp"

namespace kn {

std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

bool rational_sqrt(const Rational& r, Rational& root) {
    if (r < 0) return false;
    BigInt num = numerator(r), den = denominator(r);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    root = Rational(sn, sd);
    return true;
}

CRational operator/(const CRational& a, const CRational& b) {
    Rational n = b.norm_sq();
    if (n == 0) throw Error("division by zero complex rational");
    CRational c = a * b.conj();
    return {c.re / n, c.im / n};
}

std::string to_string(const CRational& c) {
    if (c.im == 0) return to_string(c.re);
    std::string s = "(";
    if (c.re != 0) s += to_string(c.re) + (c.im > 0 ? " + " : " - ");
    else if (c.im < 0) s += "-";
    Rational m = c.im > 0 ? c.im : Rational(-c.im);
    if (m != 1) s += to_string(m) + " ";
    s += "i)";
    return s;
}

Rational rational_from_decimal(const std::string& text) {
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    auto dot = body.find('.');
    Rational r;
    if (dot == std::string::npos) {
        r = Rational(BigInt(body));
    } else {
        std::string whole = body.substr(0, dot);
        std::string frac = body.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        BigInt num = BigInt(whole.empty() ? "0" : whole) * den + BigInt(frac.empty() ? "0" : frac);
        r = Rational(num, den);
    }
    return negative ? -r : r;
}

Rational rational_pow(const Rational& r, long e) {
    if (e < 0) {
        if (r == 0) throw Error("zero to negative power");
        return 1 / rational_pow(r, -e);
    }
    Rational acc(1), base = r;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace kn
