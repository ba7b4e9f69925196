#ifndef ORTHDET_COMMON_HPP
#define ORTHDET_COMMON_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace orthdet {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy. Everything user-recoverable derives from Error so the CLI
// can map categories onto exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};
struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error(m) {}
};
struct CapacityError : Error {
    explicit CapacityError(const std::string& m) : Error(m) {}
};
struct ValidityError : Error {
    explicit ValidityError(const std::string& m) : Error(m) {}
};
struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& m) : Error(m) {}
};
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& m) : Error(m) {}
};
struct ConstructionError : Error {
    explicit ConstructionError(const std::string& m) : Error(m) {}
};
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& m) : Error(m) {}
};
// Internal contract violations: a bug, not a user error.
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& m) : std::logic_error(m) {}
};

inline void contract(bool ok, const char* what) {
    if (!ok) throw ContractError(what);
}

// Tri-state used by the square tests: "no" is certified, "undecided" means
// bound exhaustion without a certificate either way.
enum class Tri : std::uint8_t { yes, no, undecided };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "undecided";
    }
}

inline long long imod(long long a, long long m) {
    contract(m > 0, "imod: modulus must be positive");
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long igcd(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long long t = a % b; a = b; b = t; }
    return a;
}

inline long long ilcm(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return a / igcd(a, b) * b;
}

inline Integer ipow(Integer base, unsigned long exp) {
    Integer r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline long long ipow_ll(long long base, unsigned exp) {
    long long r = 1;
    while (exp--) r *= base;
    return r;
}

// Exact integer square root test.
inline bool is_perfect_square(const Integer& n, Integer* root = nullptr) {
    if (n < 0) return false;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

inline bool is_square_rational(const Rational& x, Rational* root = nullptr) {
    if (x < 0) return false;
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer rn, rd;
    if (!is_perfect_square(num, &rn) || !is_perfect_square(den, &rd)) return false;
    if (root) *root = Rational(rn, rd);
    return true;
}

// Signed squarefree part by trial division; returns unreduced input when the
// cofactor exceeds the factoring cap (class equality never needs the
// canonical form, see cyclo::class_eq).
inline Integer squarefree_part(Integer n, const Integer& cap = Integer(10000000)) {
    contract(n != 0, "squarefree_part: zero has no square class");
    Integer sign = n < 0 ? -1 : 1;
    n = boost::multiprecision::abs(n);
    Integer out = 1;
    for (Integer p = 2; p * p <= n; ++p) {
        if (p > cap) return sign * out * n;  // best effort beyond cap
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            if (e & 1) out *= p;
        }
    }
    return sign * out * n;
}

inline Rational squarefree_part(const Rational& x) {
    // x ~ num*den modulo squares.
    return Rational(squarefree_part(boost::multiprecision::numerator(x) *
                                    boost::multiprecision::denominator(x)));
}

}  // namespace orthdet

#endif
