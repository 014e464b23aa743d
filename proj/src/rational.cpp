#include "freeholo/rational.hpp"

#include <cctype>
#include <cmath>

#include "freeholo/free_group.hpp"

namespace freeholo {

namespace {

int half_plane(const Point2& u) { return (sgn(u.y) < 0 || (sgn(u.y) == 0 && sgn(u.x) < 0)) ? 1 : 0; }

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

bool angle_less(const Point2& u, const Point2& v) {
    const int hu = half_plane(u), hv = half_plane(v);
    if (hu != hv) return hu < hv;
    return sgn(cross(u, v)) > 0;
}

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational q;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("non-rational coordinate '" + std::string(text) + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        q = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
        auto ip = body.substr(0, dot_pos), fp = body.substr(dot_pos + 1);
        if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp) || (ip.empty() && fp.empty()))
            throw ParseError("non-rational coordinate '" + std::string(text) + "'");
        mpz_class scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        mpz_class num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        q = Rational(num, scale);
    } else {
        if (!all_digits(body)) throw ParseError("non-rational coordinate '" + std::string(text) + "'");
        q = Rational(mpz_class(std::string(body), 10));
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Point2& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

double to_double(const Rational& q) { return q.get_d(); }

Rational snap(double value, unsigned bits) {
    if (!std::isfinite(value)) throw DomainError("cannot snap a non-finite coordinate");
    Rational exact(value);  // doubles are dyadic, so this is exact
    mpz_class scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Rational scaled = exact * scale;
    Rational half(1, 2);
    mpz_class n;
    if (sgn(scaled) >= 0) {
        Rational s = scaled + half;
        mpz_fdiv_q(n.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    } else {
        Rational s = -scaled + half;
        mpz_fdiv_q(n.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        n = -n;
    }
    Rational r(n, scale);
    r.canonicalize();
    return r;
}

double distance(const Point2& a, const Point2& b) {
    const double dx = to_double(b.x - a.x), dy = to_double(b.y - a.y);
    return std::hypot(dx, dy);
}

} // namespace freeholo
