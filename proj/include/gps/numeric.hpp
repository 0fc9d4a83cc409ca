#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gps {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Splits n > 0 as N * p^j with p not dividing N.  Returns {N, j}.
inline std::pair<Int, unsigned> p_part(Int n, const Int& p) {
    if (n <= 0) throw std::invalid_argument("p_part: n must be positive");
    unsigned j = 0;
    while (n % p == 0) { n /= p; ++j; }
    return {n, j};
}

inline Int pow_int(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// num/den with the sign normalized into the numerator (cpp_rational rejects
/// negative denominators).
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(num, den);
}

/// Parses "a" or "a/b" into an exact rational.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline std::string rat_str(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Scalar cutoff in the primary weight: a rational bound or +infinity.
struct Cutoff {
    bool finite = false;
    Rat value{};

    static Cutoff inf() { return Cutoff{}; }
    static Cutoff at(const Rat& v) { return Cutoff{true, v}; }

    bool operator==(const Cutoff& o) const {
        return finite == o.finite && (!finite || value == o.value);
    }
    /// True when a value below this cutoff is guaranteed exact.
    bool covers(const Rat& v) const { return !finite || v < value; }

    friend Cutoff min(const Cutoff& a, const Cutoff& b) {
        if (!a.finite) return b;
        if (!b.finite) return a;
        return Cutoff{true, a.value < b.value ? a.value : b.value};
    }
    /// Shift by a rational (cutoff + valuation propagation); inf absorbs.
    Cutoff shifted(const Rat& d) const {
        if (!finite) return *this;
        return Cutoff{true, value + d};
    }
    Cutoff scaled(const Rat& c) const {
        if (!finite) return *this;
        return Cutoff{true, value * c};
    }
    std::string str() const { return finite ? rat_str(value) : "inf"; }
};

}  // namespace gps
