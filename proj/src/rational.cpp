#include "sqfvar/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "sqfvar/errors.hpp"

namespace sqfvar {

Rational::Rational(i64 num, i64 den) {
    if (num <= 0 || den <= 0) throw ConfigError("H must be a positive rational");
    const i64 g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (static_cast<i128>(num_) * den_ >= (i128{1} << 31))
        throw ConfigError("H = " + std::to_string(num_) + "/" + std::to_string(den_) +
                          " is too large for exact boundary tests");
}

Rational Rational::parse(const std::string& text) {
    auto bad = [&] { return ConfigError("cannot parse rational H: '" + text + "'"); };
    auto parse_int = [&](const std::string& s) -> i64 {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
        if (s.size() > 15) throw bad();
        return std::stoll(s);
    };
    if (auto slash = text.find('/'); slash != std::string::npos)
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) return Rational(parse_int(whole), 1);
        if (frac.size() > 9) throw bad();
        i64 den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        return Rational(parse_int(whole) * den + parse_int(frac), den);
    }
    return Rational(parse_int(text), 1);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

int cmp_shifted_square(u64 m, u64 n, const Rational& H) {
    // (sqrt(m) - p/q)^2 - n = (L - 2pq sqrt(m)) / q^2 with L = q^2 (m - n) + p^2.
    const i128 p = H.num();
    const i128 q = H.den();
    const i128 L = q * q * (static_cast<i128>(m) - static_cast<i128>(n)) + p * p;
    if (L <= 0) return -1;
    if (L >= (i128{1} << 64)) return 1;  // L^2 >= 2^128 > 4 p^2 q^2 m
    const u128 lhs = static_cast<u128>(L) * static_cast<u128>(L);
    const u128 rhs = static_cast<u128>(4 * p * p * q * q) * m;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool within_upper(u64 n, u64 x, const Rational& H) {
    // sqrt(n) <= sqrt(x) + H  <=>  sqrt(n) <= H  or  (sqrt(n) - H)^2 <= x
    const u128 q2n = static_cast<u128>(H.den()) * H.den() * n;
    const u128 p2 = static_cast<u128>(H.num()) * H.num();
    if (q2n <= p2) return true;
    return cmp_shifted_square(n, x, H) <= 0;
}

u64 upper_end(u64 x, const Rational& H) {
    const long double r = std::sqrt(static_cast<long double>(x)) + H.value_ld();
    const long double est = r * r;
    if (!(est < static_cast<long double>(kExactLimit) - 4096.0L))
        throw ConfigError("upper end of interval exceeds 2^63");
    u64 u = static_cast<u64>(est);
    while (u > 0 && !within_upper(u, x, H)) --u;
    while (within_upper(u + 1, x, H)) ++u;
    return u;
}

}  // namespace sqfvar
