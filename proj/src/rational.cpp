#include "qtoric/rational.hpp"

#include <algorithm>
#include <cctype>

namespace qtoric {

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) return std::nullopt;

    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) return std::nullopt;
        Integer den(q);
        if (den == 0) return std::nullopt;
        Rational r(Integer(p), den);
        r.canonicalize();
        return r;
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        if (!is_int(ip) || (!fp.empty() && !is_int(fp))) return std::nullopt;
        Integer scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        Integer numer = Integer(ip) * scale + (fp.empty() ? Integer(0) : Integer(fp));
        if (neg) numer = -numer;
        Rational r(numer, scale);
        r.canonicalize();
        return r;
    }

    if (!is_int(s)) return std::nullopt;
    return Rational(Integer(s));
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

QInterval QInterval::operator*(const QInterval& o) const {
    Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rational mn = std::min(std::min(a, b), std::min(c, d));
    Rational mx = std::max(std::max(a, b), std::max(c, d));
    return {mn, mx};
}

QInterval QInterval::pow(unsigned n) const {
    if (n == 0) return point(Rational(1));
    auto rpow = [](const Rational& x, unsigned k) {
        Rational r(1);
        for (unsigned i = 0; i < k; ++i) r *= x;
        return r;
    };
    Rational a = rpow(lo, n), b = rpow(hi, n);
    if (n % 2 == 1) return {a, b};
    if (sgn(lo) >= 0) return {a, b};
    if (sgn(hi) <= 0) return {b, a};
    return {Rational(0), std::max(a, b)};
}

QInterval QInterval::intersect(const QInterval& o) const {
    return {std::max(lo, o.lo), std::min(hi, o.hi)};
}

}  // namespace qtoric
