#ifndef ORTHDET_GF_HPP
#define ORTHDET_GF_HPP

#include "orthdet/common.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace orthdet::gf {

// Elements of F_{p^(f*ext)} are identified by their index sum c_i * p^i where
// (c_0, ..., c_{d-1}) is the canonical reduced coefficient vector in
// F_p[x]/(modulus). Index 0 is zero, index 1 is one.
using Fel = std::uint64_t;

namespace detail {

// Dense polynomial helpers over F_p, coefficients low-degree-first.
using Poly = std::vector<long long>;

inline void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly pmul(const Poly& a, const Poly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

inline Poly pmod(Poly a, const Poly& m, long long p) {
    contract(!m.empty() && m.back() == 1, "pmod: modulus must be monic");
    ptrim(a);
    while (a.size() >= m.size()) {
        long long c = a.back();
        size_t shift = a.size() - m.size();
        if (c) {
            for (size_t i = 0; i < m.size(); ++i)
                a[shift + i] = imod(a[shift + i] - c * m[i], p);
        }
        a.pop_back();
        ptrim(a);
    }
    return a;
}

inline Poly pgcd(Poly a, Poly b, long long p) {
    ptrim(a);
    ptrim(b);
    auto make_monic = [&](Poly& f) {
        if (f.empty()) return;
        long long lead = f.back();
        if (lead == 1) return;
        // invert lead mod p
        long long inv = 1, base = lead, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (auto& c : f) c = c * inv % p;
    };
    while (!b.empty()) {
        make_monic(b);
        Poly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

// x^(p^k) mod m via repeated p-th powering.
inline Poly x_pk_mod(const Poly& m, long long p, int k) {
    Poly x = {0, 1};
    x = pmod(x, m, p);
    Poly cur = x;
    for (int i = 0; i < k; ++i) {
        // cur <- cur^p mod m via square and multiply on exponent p
        Poly acc = {1};
        Poly base = cur;
        long long e = p;
        while (e) {
            if (e & 1) acc = pmod(pmul(acc, base, p), m, p);
            base = pmod(pmul(base, base, p), m, p);
            e >>= 1;
        }
        cur = acc;
    }
    return cur;
}

inline bool poly_eq(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    ptrim(x);
    ptrim(y);
    return x == y;
}

// Rabin irreducibility: f monic degree d is irreducible over F_p iff
// x^(p^d) == x (mod f) and gcd(x^(p^(d/r)) - x, f) = 1 for prime r | d.
inline bool irreducible(const Poly& f, long long p) {
    int d = int(f.size()) - 1;
    if (d < 1) return false;
    if (d == 1) return true;
    Poly xp = x_pk_mod(f, p, d);
    if (!poly_eq(xp, Poly{0, 1})) return false;
    int n = d;
    std::vector<int> primes;
    for (int r = 2; r * r <= n; ++r)
        if (n % r == 0) {
            primes.push_back(r);
            while (n % r == 0) n /= r;
        }
    if (n > 1) primes.push_back(n);
    for (int r : primes) {
        Poly g = x_pk_mod(f, p, d / r);
        // g - x
        Poly diff = g;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = imod(diff[1] - 1, p);
        ptrim(diff);
        Poly gc = pgcd(f, diff, p);
        if (!(gc.size() == 1)) return false;
    }
    return true;
}

inline bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

class FieldSpec {
public:
    static constexpr long long kDefaultMaxQ = 1 << 16;
    static constexpr long long kTableCap = 1 << 20;   // log/exp tables
    static constexpr long long kDenseCap = 512;       // full add/mul tables

    static std::shared_ptr<const FieldSpec> make(long long p, int f, int ext,
                                                 long long max_q = kDefaultMaxQ) {
        if (!detail::is_prime_ll(p)) throw ParameterError("make_field: p must be prime");
        if (f < 1 || ext < 1 || ext > 2) throw ParameterError("make_field: need f >= 1, ext in {1,2}");
        long long qq = 1;
        for (int i = 0; i < f; ++i) {
            qq *= p;
            if (qq > max_q) throw CapacityError("make_field: q exceeds cap");
        }
        return std::shared_ptr<const FieldSpec>(new FieldSpec(p, f, ext));
    }

    long long p() const { return p_; }
    int f() const { return f_; }
    int ext() const { return ext_; }
    int degree() const { return deg_; }
    long long q() const { return q_; }
    long long size() const { return size_; }
    const std::vector<long long>& modulus() const { return modulus_; }

    std::vector<long long> coeffs(Fel a) const {
        contract(a < (Fel)size_, "coeffs: index out of range");
        std::vector<long long> c(deg_);
        for (int i = 0; i < deg_; ++i) {
            c[i] = (long long)(a % (Fel)p_);
            a /= (Fel)p_;
        }
        return c;
    }

    Fel from_coeffs(const std::vector<long long>& c) const {
        contract((int)c.size() <= deg_, "from_coeffs: too many coefficients");
        Fel a = 0;
        for (int i = int(c.size()) - 1; i >= 0; --i)
            a = a * (Fel)p_ + (Fel)imod(c[i], p_);
        return a;
    }

    Fel from_int(long long v) const { return (Fel)imod(v, p_); }

    Fel add(Fel a, Fel b) const {
        if (dense_) return add_tab_[a * (Fel)size_ + b];
        return add_slow(a, b);
    }
    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
    Fel neg(Fel a) const {
        if (dense_) return neg_tab_[a];
        return neg_slow(a);
    }
    Fel mul(Fel a, Fel b) const {
        if (dense_) return mul_tab_[a * (Fel)size_ + b];
        if (tables_) {
            if (a == 0 || b == 0) return 0;
            return exp_[(log_[a] + log_[b]) % (size_ - 1)];
        }
        return mul_slow(a, b);
    }
    Fel inv(Fel a) const {
        if (a == 0) throw ParameterError("inv: zero is not invertible");
        if (tables_) return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
        return pow(a, size_ - 2);
    }
    Fel pow(Fel a, Integer e) const {
        Integer m = size_ - 1;
        if (a == 0) {
            contract(e > 0, "pow: 0^e needs e > 0");
            return 0;
        }
        Integer r = e % m;
        if (r < 0) r += m;
        unsigned long long k = r.convert_to<unsigned long long>();
        Fel acc = 1, base = a;
        while (k) {
            if (k & 1) acc = mul(acc, base);
            base = mul(base, base);
            k >>= 1;
        }
        return acc;
    }
    // x -> x^p (generates Gal(F_{p^d}/F_p))
    Fel frob(Fel a) const { return pow(a, p_); }
    // x -> x^q, whose fixed field inside F_{q^2} is F_q
    Fel frob_q(Fel a) const { return pow(a, q_); }
    bool in_base_q(Fel a) const { return frob_q(a) == a; }

    Fel generator() const { return gen_; }

    long long mult_order(Fel a) const {
        if (a == 0) throw ParameterError("mult_order: zero");
        long long n = size_ - 1, order = n;
        for (long long r : prime_factors(n)) {
            while (order % r == 0 && pow(a, order / r) == 1) order /= r;
        }
        return order;
    }

    // Discrete log base generator(); table-backed fields only.
    long long dlog(Fel a) const {
        if (a == 0) throw ParameterError("dlog: zero");
        if (!tables_) throw CapacityError("dlog: field too large for tables");
        return log_[a];
    }

    // ext == 2 helpers relative to F_q.
    Fel trace_q(Fel a) const { return add(a, frob_q(a)); }
    Fel norm_q(Fel a) const { return mul(a, frob_q(a)); }

    static std::vector<long long> prime_factors(long long n) {
        std::vector<long long> ps;
        for (long long r = 2; r * r <= n; ++r)
            if (n % r == 0) {
                ps.push_back(r);
                while (n % r == 0) n /= r;
            }
        if (n > 1) ps.push_back(n);
        return ps;
    }

private:
    FieldSpec(long long p, int f, int ext) : p_(p), f_(f), ext_(ext), deg_(f * ext) {
        q_ = 1;
        for (int i = 0; i < f_; ++i) q_ *= p_;
        size_ = 1;
        for (int i = 0; i < deg_; ++i) size_ *= p_;
        find_modulus();
        build_reduction();
        find_generator();
        if (size_ <= kTableCap) build_tables();
        if (size_ <= kDenseCap) build_dense();
    }

    // Least monic irreducible of degree deg_, comparing coefficient tuples
    // (c_0, ..., c_{deg-1}) lexicographically.
    void find_modulus() {
        int d = deg_;
        std::vector<long long> c(d, 0);
        for (;;) {
            detail::Poly f(c.begin(), c.end());
            f.push_back(1);
            if (detail::irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
            // increment tuple in lex order: last coordinate fastest would be
            // colex; we need c_0 most significant, so bump from the back.
            int i = d - 1;
            while (i >= 0 && c[i] == p_ - 1) c[i--] = 0;
            contract(i >= 0, "find_modulus: no irreducible found");
            ++c[i];
        }
    }

    void build_reduction() {
        // xred_[k] = x^(deg+k) mod modulus for k in [0, deg-1)
        int d = deg_;
        xred_.assign(std::max(0, d - 1), std::vector<long long>(d, 0));
        detail::Poly cur(d + 1, 0);
        cur[d] = 1;
        for (int k = 0; k + 1 < d; ++k) {
            detail::Poly r = detail::pmod(cur, modulus_, p_);
            r.resize(d, 0);
            xred_[k].assign(r.begin(), r.end());
            cur.insert(cur.begin(), 0);  // multiply by x
        }
    }

    Fel add_slow(Fel a, Fel b) const {
        Fel out = 0, mul = 1;
        for (int i = 0; i < deg_; ++i) {
            long long s = (long long)(a % (Fel)p_) + (long long)(b % (Fel)p_);
            if (s >= p_) s -= p_;
            out += (Fel)s * mul;
            a /= (Fel)p_;
            b /= (Fel)p_;
            mul *= (Fel)p_;
        }
        return out;
    }

    Fel neg_slow(Fel a) const {
        Fel out = 0, mul = 1;
        for (int i = 0; i < deg_; ++i) {
            long long c = (long long)(a % (Fel)p_);
            out += (Fel)(c ? p_ - c : 0) * mul;
            a /= (Fel)p_;
            mul *= (Fel)p_;
        }
        return out;
    }

    Fel mul_slow(Fel a, Fel b) const {
        int d = deg_;
        std::array<long long, 64> prod{};
        std::array<long long, 32> ca{}, cb{};
        for (int i = 0; i < d; ++i) {
            ca[i] = (long long)(a % (Fel)p_);
            a /= (Fel)p_;
            cb[i] = (long long)(b % (Fel)p_);
            b /= (Fel)p_;
        }
        for (int i = 0; i < d; ++i) {
            if (!ca[i]) continue;
            for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        }
        for (int k = 2 * d - 2; k >= d; --k) {
            long long c = prod[k];
            if (!c) continue;
            const auto& row = xred_[k - d];
            for (int i = 0; i < d; ++i) prod[i] = (prod[i] + c * row[i]) % p_;
        }
        Fel out = 0;
        for (int i = d - 1; i >= 0; --i) out = out * (Fel)p_ + (Fel)prod[i];
        return out;
    }

    void find_generator() {
        long long n = size_ - 1;
        if (n == 1) {
            gen_ = 1;
            return;
        }
        auto ps = prime_factors(n);
        for (Fel a = 2; a < (Fel)size_; ++a) {
            bool ok = true;
            for (long long r : ps)
                if (pow_slowpath(a, n / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen_ = a;
                return;
            }
        }
        throw ContractError("find_generator: multiplicative group not cyclic?");
    }

    Fel pow_slowpath(Fel a, long long e) const {
        Fel acc = 1, base = a;
        while (e) {
            if (e & 1) acc = mul_slow(acc, base);
            base = mul_slow(base, base);
            e >>= 1;
        }
        return acc;
    }

    void build_tables() {
        exp_.resize(size_ - 1);
        log_.assign(size_, 0);
        Fel cur = 1;
        for (long long i = 0; i < size_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = i;
            cur = mul_slow(cur, gen_);
        }
        contract(cur == 1, "build_tables: generator order mismatch");
        tables_ = true;
    }

    void build_dense() {
        add_tab_.resize(size_ * size_);
        mul_tab_.resize(size_ * size_);
        neg_tab_.resize(size_);
        for (long long a = 0; a < size_; ++a) {
            neg_tab_[a] = neg_slow(a);
            for (long long b = 0; b < size_; ++b) {
                add_tab_[a * size_ + b] = add_slow(a, b);
                mul_tab_[a * size_ + b] = mul_slow(a, b);
            }
        }
        dense_ = true;
    }

    long long p_;
    int f_, ext_, deg_;
    long long q_, size_;
    std::vector<long long> modulus_;
    std::vector<std::vector<long long>> xred_;
    Fel gen_ = 1;
    bool tables_ = false, dense_ = false;
    std::vector<Fel> exp_;
    std::vector<long long> log_;
    std::vector<Fel> add_tab_, mul_tab_, neg_tab_;
};

using Field = std::shared_ptr<const FieldSpec>;

inline Field make_field(long long p, int f, int ext, long long max_q = FieldSpec::kDefaultMaxQ) {
    return FieldSpec::make(p, f, ext, max_q);
}

}  // namespace orthdet::gf

#endif
