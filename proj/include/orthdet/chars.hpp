// chars.hpp: the Irr+ slice of the generic character table of SL3(q)/SU3(q).
//
// Encodes labels, parameter validity, degrees, character fields,
// principal-series status and Harish-Chandra restriction data.  Everything
// here is closed-form arithmetic in (q, eps); no group elements are needed,
// so the functions take a lightweight Family handle (constructible from a
// groups::Group when one is around).

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthdet/common.hpp"
#include "orthdet/cyclo.hpp"
#include "orthdet/groups.hpp"

namespace orthdet {
namespace chartab {

using groups::GroupKind;

// ------------------------------------------------------------------
// family handle
// ------------------------------------------------------------------

struct Family {
    GroupKind kind = GroupKind::SL;
    long long q = 0;
    long long p = 0;  // characteristic
    int f = 0;        // q = p^f

    int eps() const { return kind == GroupKind::SL ? 1 : -1; }
    int d() const { return (int)igcd(3, q - eps()); }
    bool q_odd() const { return q % 2 == 1; }

    static Family make(GroupKind kind, long long q) {
        auto [p, f] = groups::detail::prime_power_split(q);
        return {kind, q, p, f};
    }
    static Family of(const groups::Group& G) { return {G->kind(), G->q(), G->p(), G->f()}; }
};

// ------------------------------------------------------------------
// labels
// ------------------------------------------------------------------

enum class CharKind { Trivial, Qs, QCubed, StPrime, St, Rt };

inline const char* to_string(CharKind k) {
    switch (k) {
        case CharKind::Trivial: return "trivial";
        case CharKind::Qs: return "qs";
        case CharKind::QCubed: return "qcubed";
        case CharKind::StPrime: return "stprime";
        case CharKind::St: return "st";
        case CharKind::Rt: return "rt";
    }
    throw ContractError("to_string(CharKind): bad value");
}

inline std::optional<CharKind> kind_from_name(std::string_view s) {
    for (CharKind k : {CharKind::Trivial, CharKind::Qs, CharKind::QCubed, CharKind::StPrime,
                       CharKind::St, CharKind::Rt})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

struct CharLabel {
    static constexpr long long kNoParam = -1;
    CharKind kind = CharKind::Trivial;
    long long u = kNoParam;

    bool has_param() const { return u != kNoParam; }
    friend bool operator==(const CharLabel&, const CharLabel&) = default;
    friend bool operator<(const CharLabel& a, const CharLabel& b) {
        if (a.kind != b.kind) return (int)a.kind < (int)b.kind;
        return a.u < b.u;
    }
};

inline CharLabel label_of(CharKind k, long long u = CharLabel::kNoParam) { return {k, u}; }

inline std::string to_string(const CharLabel& l) {
    std::string s = to_string(l.kind);
    if (l.has_param()) s += "(" + std::to_string(l.u) + ")";
    return s;
}

// whether the label kind carries a u parameter at all
inline bool kind_has_param(CharKind k) {
    return k == CharKind::StPrime || k == CharKind::St || k == CharKind::Rt;
}

// ------------------------------------------------------------------
// degrees as polynomials in q (constant coefficient first); StPrime is the
// St polynomial divided by 3 (integral exactly when 3 | q - eps)
// ------------------------------------------------------------------

inline std::vector<Integer> degree_polynomial(CharKind k, int eps) {
    contract(eps == 1 || eps == -1, "degree_polynomial: eps");
    Integer e = eps;
    switch (k) {
        case CharKind::Trivial: return {1};
        case CharKind::Qs: return {0, e, 1};                   // q(q+eps)
        case CharKind::QCubed: return {0, 0, 0, 1};            // q^3
        case CharKind::StPrime:                                // (q+eps)(q^2+eps q+1)/3
        case CharKind::St: return {e, 2, Integer(2) * e, 1};   // (q+eps)(q^2+eps q+1)
        case CharKind::Rt: return {-e, 0, 0, 1};               // (q-eps)(q^2+eps q+1) = q^3-eps
    }
    throw ContractError("degree_polynomial: bad kind");
}

inline long long degree_divisor(CharKind k) { return k == CharKind::StPrime ? 3 : 1; }

// |G| = q^3 (q^3 - eps)(q^2 - 1) as a polynomial in q
inline std::vector<Integer> order_polynomial(int eps) {
    Integer e = eps;
    return {0, 0, 0, e, 0, -e, -1, 0, 1};
}

inline Integer eval_poly(const std::vector<Integer>& c, long long q) {
    Integer acc = 0, qk = 1;
    for (const Integer& ci : c) {
        acc += ci * qk;
        qk *= q;
    }
    return acc;
}

inline Integer degree_of(const Family& F, CharKind k) {
    Integer v = eval_poly(degree_polynomial(k, F.eps()), F.q);
    long long dv = degree_divisor(k);
    if (dv != 1) {
        contract(v % dv == 0, "degree_of: non-integral degree");
        v /= dv;
    }
    return v;
}

// index |G/B| of the Borel subgroup
inline Integer flag_index(const Family& F) {
    Integer Q = F.q;
    return F.kind == GroupKind::SL ? Integer((Q + 1) * (Q * Q + Q + 1)) : Integer(Q * Q * Q + 1);
}

// ------------------------------------------------------------------
// character fields: Q, or the raw descriptor theta_m^(j) from the table
// ------------------------------------------------------------------

struct FieldDesc {
    bool rational = true;
    long long m = 0, j = 0;  // raw descriptor when !rational

    // canonical conductor of the actual field (1 means Q)
    long long canonical_m() const { return rational ? 1 : cyclo::theta(m, j).m; }
    bool field_is_rational() const { return canonical_m() == 1; }

    std::string display() const {
        if (rational) return "Q";
        std::string s = "Q(theta(" + std::to_string(m) + "," + std::to_string(j) + "))";
        if (field_is_rational()) s += " = Q";
        return s;
    }
    friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

inline FieldDesc field_q() { return {}; }
inline FieldDesc field_theta(long long m, long long j) { return {false, m, imod(j, m)}; }

// ------------------------------------------------------------------
// parameter validity
// ------------------------------------------------------------------

// the integral members of {(q-eps)/3, (q-eps)/2, 2(q-eps)/3}
inline std::vector<long long> st_exclusions(const Family& F) {
    long long n = F.q - F.eps();
    std::vector<long long> out;
    if (n % 3 == 0) out.push_back(n / 3);
    if (n % 2 == 0) out.push_back(n / 2);
    if (n % 3 == 0) out.push_back(2 * n / 3);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool st_param_valid(const Family& F, long long u) {
    long long n = F.q - F.eps();
    if (u < 1 || u >= n) return false;
    for (long long e : st_exclusions(F))
        if (u == e) return false;
    return true;
}

// the two published ranges for the rt parameter
enum class RangeMode { Theorem, Proposition, Union };

inline const char* to_string(RangeMode m) {
    switch (m) {
        case RangeMode::Theorem: return "theorem";
        case RangeMode::Proposition: return "proposition";
        case RangeMode::Union: return "union";
    }
    throw ContractError("to_string(RangeMode): bad value");
}

inline std::optional<RangeMode> range_mode_from_name(std::string_view s) {
    for (RangeMode m : {RangeMode::Theorem, RangeMode::Proposition, RangeMode::Union})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

inline bool rt_param_in_mode(const Family& F, long long u, RangeMode mode) {
    if (u < 1) return false;
    bool thm = u < F.q + F.eps();
    bool prop = u < F.q + 1;
    switch (mode) {
        case RangeMode::Theorem: return thm;
        case RangeMode::Proposition: return prop;
        case RangeMode::Union: return thm || prop;
    }
    return false;
}

// which published range(s) admit the label (SL ranges coincide)
inline const char* rt_range_tag(const Family& F, long long u) {
    bool thm = rt_param_in_mode(F, u, RangeMode::Theorem);
    bool prop = rt_param_in_mode(F, u, RangeMode::Proposition);
    if (thm && prop) return "both";
    return thm ? "theorem" : "proposition";
}

// real torus character behind rt (SU): 2u = 0 mod q-1; the det formula
// degenerates there (delta = 0) and the engine refuses such labels
inline bool rt_degenerate(const Family& F, long long u) {
    if (F.kind != GroupKind::SU) return false;
    return imod(2 * u, F.q - 1) == 0;
}

// ------------------------------------------------------------------
// CharInfo
// ------------------------------------------------------------------

struct CharInfo {
    CharLabel label;
    Integer degree;
    FieldDesc field;
    bool in_irr_plus = false;
    // nullopt where the source data is silent (qs for SU)
    std::optional<bool> principal_series;
    std::optional<int> hc_degree;  // chi_T(1)
    bool degenerate = false;       // rt (SU) with real torus character
};

inline CharInfo char_info(const Family& F, const CharLabel& l) {
    auto bad = [&](const std::string& why) -> void {
        throw ValidityError("char_info " + to_string(l) + ": " + why);
    };
    if (kind_has_param(l.kind) && !l.has_param()) bad("u parameter required");
    if (!kind_has_param(l.kind) && l.has_param()) bad("u parameter not applicable");

    CharInfo info;
    info.label = l;
    info.degree = degree_of(F, l.kind);
    info.field = field_q();
    bool sl = F.kind == GroupKind::SL;
    bool odd = F.q_odd();

    switch (l.kind) {
        case CharKind::Trivial:
            info.in_irr_plus = false;
            info.principal_series = true;
            info.hc_degree = 1;
            break;
        case CharKind::Qs:
            info.in_irr_plus = sl;
            if (sl) {
                info.principal_series = true;
                info.hc_degree = 2;
            }
            break;
        case CharKind::QCubed:
            info.in_irr_plus = !odd;
            info.principal_series = true;
            info.hc_degree = 1;
            break;
        case CharKind::StPrime:
            if (F.d() != 3) bad("requires 3 | q - eps");
            if (l.u < 0 || l.u > 2) bad("u must lie in {0, 1, 2}");
            info.in_irr_plus = odd;
            info.principal_series = sl;
            info.hc_degree = sl ? 2 : 0;
            break;
        case CharKind::St: {
            if (!st_param_valid(F, l.u)) {
                long long n = F.q - F.eps();
                if (l.u < 1 || l.u >= n)
                    bad("u out of range 1 <= u < " + std::to_string(n));
                bad("u = " + std::to_string(l.u) + " lies in the exclusion set");
            }
            info.field = field_theta(F.q - F.eps(), l.u);
            info.in_irr_plus = odd;
            info.principal_series = sl;
            info.hc_degree = sl ? 6 : 0;
            break;
        }
        case CharKind::Rt: {
            if (!rt_param_in_mode(F, l.u, RangeMode::Union))
                bad("u out of range 1 <= u <= " + std::to_string(F.q));
            info.field = field_theta(F.q + F.eps(), l.u);
            info.degenerate = rt_degenerate(F, l.u);
            info.in_irr_plus = odd && rt_param_in_mode(F, l.u, RangeMode::Theorem);
            info.principal_series = !sl;
            info.hc_degree = sl ? 0 : 2;
            break;
        }
    }
    return info;
}

inline bool is_principal_series(const Family& F, const CharLabel& l) {
    CharInfo info = char_info(F, l);
    if (!info.principal_series)
        throw UnsupportedError("is_principal_series " + to_string(l) +
                               ": not determined by the source data");
    return *info.principal_series;
}

// ------------------------------------------------------------------
// enumeration
// ------------------------------------------------------------------

inline std::vector<CharLabel> irr_plus(const Family& F, RangeMode mode = RangeMode::Theorem,
                                       bool canonicalize = false) {
    std::vector<CharLabel> out;
    bool sl = F.kind == GroupKind::SL;
    if (!F.q_odd()) {
        if (sl) out.push_back(label_of(CharKind::Qs));
        out.push_back(label_of(CharKind::QCubed));
        return out;
    }
    if (sl) out.push_back(label_of(CharKind::Qs));
    if (F.d() == 3)
        for (long long u = 0; u <= 2; ++u) out.push_back(label_of(CharKind::StPrime, u));
    for (long long u = 1; u < F.q - F.eps(); ++u)
        if (st_param_valid(F, u)) out.push_back(label_of(CharKind::St, u));
    for (long long u = 1; u <= F.q; ++u)
        if (rt_param_in_mode(F, u, mode)) out.push_back(label_of(CharKind::Rt, u));

    if (canonicalize) {
        for (auto& l : out) {
            long long n = 0;
            if (l.kind == CharKind::St) n = F.q - F.eps();
            if (l.kind == CharKind::Rt) n = F.q + F.eps();
            if (n > 0 && l.u >= 1 && l.u < n) l.u = std::min(l.u, n - l.u);
        }
        std::vector<CharLabel> dedup;
        for (const auto& l : out)
            if (std::find(dedup.begin(), dedup.end(), l) == dedup.end()) dedup.push_back(l);
        out = std::move(dedup);
    }
    return out;
}

// ------------------------------------------------------------------
// torus characters
// ------------------------------------------------------------------

struct TorusChar {
    GroupKind kind = GroupKind::SL;
    long long modulus = 1;     // q-1 per alpha factor (SL) or q^2-1 (SU)
    long long u1 = 0, u2 = 0;  // SU uses u1 only

    bool is_trivial() const { return u1 == 0 && u2 == 0; }
    bool is_real() const { return imod(2 * u1, modulus) == 0 && imod(2 * u2, modulus) == 0; }
    TorusChar conjugate() const { return {kind, modulus, imod(-u1, modulus), imod(-u2, modulus)}; }

    // multiplicative order as a linear character
    long long order() const {
        long long g = igcd(igcd(u1, u2), modulus);
        return modulus / g;
    }

    // exponent of mu_modulus at the torus element diag with dlog(entry00) = a
    // and dlog(entry22) = b (SL) resp. dlog(entry00) = a (SU)
    long long eval_exponent(long long a, long long b) const {
        if (kind == GroupKind::SL) return imod(a * u1 + b * u2, modulus);
        return imod(a * u1, modulus);
    }

    std::string display() const {
        if (is_trivial()) return "1";
        if (kind == GroupKind::SL)
            return "alpha1^" + std::to_string(u1) + " alpha2^" + std::to_string(u2);
        return "alpha^" + std::to_string(u1);
    }

    friend bool operator==(const TorusChar&, const TorusChar&) = default;
};

inline TorusChar sl_torus_char(const Family& F, long long u1, long long u2) {
    contract(F.kind == GroupKind::SL, "sl_torus_char: SL only");
    long long n = F.q - 1;
    return {GroupKind::SL, n, imod(u1, n), imod(u2, n)};
}

inline TorusChar su_torus_char(const Family& F, long long u) {
    contract(F.kind == GroupKind::SU, "su_torus_char: SU only");
    long long n = F.q * F.q - 1;
    return {GroupKind::SU, n, imod(u, n), 0};
}

// theta^(u): alpha1^u alpha2^-u for SL, alpha^u for SU
inline TorusChar theta_char(const Family& F, long long u) {
    return F.kind == GroupKind::SL ? sl_torus_char(F, u, -u) : su_torus_char(F, u);
}

inline TorusChar trivial_torus_char(const Family& F) { return theta_char(F, 0); }

// ------------------------------------------------------------------
// Harish-Chandra restriction data
// ------------------------------------------------------------------

struct ComplexPair {
    TorusChar chi, chi_bar;
    // descriptor (m, j) of the value field L = Q(mu_m^j), feeding delta(m, j)
    long long delta_m = 0, delta_j = 0;
};

struct TorusRestriction {
    std::vector<ComplexPair> complex_pairs;
    std::vector<TorusChar> real_chars;
    int total_degree = 0;
    bool degenerate = false;  // real constituents present
};

inline ComplexPair make_complex_pair(const TorusChar& t) {
    contract(!t.is_real(), "make_complex_pair: real torus character");
    long long g = igcd(igcd(t.u1, t.u2), t.modulus);
    return {t, t.conjugate(), t.modulus, g};
}

inline TorusRestriction harish_chandra(const Family& F, const CharLabel& l) {
    CharInfo info = char_info(F, l);
    if (!info.hc_degree)
        throw UnsupportedError("harish_chandra " + to_string(l) +
                               ": not determined by the source data");
    TorusRestriction out;
    auto push_real = [&](const TorusChar& t, int count) {
        for (int i = 0; i < count; ++i) out.real_chars.push_back(t);
        out.degenerate = true;
    };
    bool sl = F.kind == GroupKind::SL;
    switch (l.kind) {
        case CharKind::Trivial:
            push_real(trivial_torus_char(F), 1);
            break;
        case CharKind::Qs:
            push_real(trivial_torus_char(F), 2);
            break;
        case CharKind::QCubed:
            push_real(trivial_torus_char(F), 1);
            break;
        case CharKind::StPrime:
            if (sl) out.complex_pairs.push_back(make_complex_pair(theta_char(F, (F.q - 1) / 3)));
            break;
        case CharKind::St:
            if (sl) {
                out.complex_pairs.push_back(make_complex_pair(theta_char(F, l.u)));
                out.complex_pairs.push_back(make_complex_pair(sl_torus_char(F, 2 * l.u, l.u)));
                out.complex_pairs.push_back(make_complex_pair(sl_torus_char(F, l.u, 2 * l.u)));
            }
            break;
        case CharKind::Rt:
            if (!sl) {
                TorusChar t = su_torus_char(F, (F.q + 1) * l.u);
                if (t.is_real())
                    push_real(t, 2);
                else
                    out.complex_pairs.push_back(make_complex_pair(t));
            }
            break;
    }
    out.total_degree = 2 * (int)out.complex_pairs.size() + (int)out.real_chars.size();
    contract(out.total_degree == *info.hc_degree, "harish_chandra: degree mismatch");
    return out;
}

// ------------------------------------------------------------------
// decomposition of Ind_B^G(theta) for the published theta
// ------------------------------------------------------------------

inline std::vector<CharLabel> induced_decomposition(const Family& F, const TorusChar& th) {
    bool sl = F.kind == GroupKind::SL;
    contract(th.kind == F.kind, "induced_decomposition: family mismatch");
    contract(th.modulus == (sl ? F.q - 1 : F.q * F.q - 1), "induced_decomposition: bad modulus");
    if (th.is_trivial()) {
        if (sl)
            return {label_of(CharKind::Trivial), label_of(CharKind::Qs), label_of(CharKind::Qs),
                    label_of(CharKind::QCubed)};
        return {label_of(CharKind::Trivial), label_of(CharKind::QCubed)};
    }
    if (sl) {
        // covered cases are theta^(u) = alpha1^u alpha2^-u
        if (imod(th.u1 + th.u2, th.modulus) != 0)
            throw UnsupportedError("induced_decomposition: " + th.display() +
                                   " is outside the decomposed cases");
        long long u = imod(th.u1, th.modulus);
        long long n = F.q - 1;
        if (n % 3 == 0 && (u == n / 3 || u == 2 * n / 3))
            return {label_of(CharKind::StPrime, 0), label_of(CharKind::StPrime, 1),
                    label_of(CharKind::StPrime, 2)};
        if (st_param_valid(F, u)) return {label_of(CharKind::St, u)};
        throw UnsupportedError("induced_decomposition: theta^(" + std::to_string(u) +
                               ") is outside the decomposed cases");
    }
    // SU: covered cases are theta^((q+1)u)
    if (th.u1 % (F.q + 1) != 0)
        throw UnsupportedError("induced_decomposition: " + th.display() +
                               " is outside the decomposed cases");
    long long u = imod(th.u1 / (F.q + 1), F.q - 1);
    contract(u != 0, "induced_decomposition: trivial case already handled");
    return {label_of(CharKind::Rt, u)};
}

}  // namespace chartab
}  // namespace orthdet
