#ifndef ORTHDET_GROUPS_HPP
#define ORTHDET_GROUPS_HPP

#include "orthdet/common.hpp"
#include "orthdet/gf.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace orthdet::groups {

using gf::Fel;
using gf::Field;
using gf::FieldSpec;

// ------------------------------------------------------------------
// 3x3 matrices over a finite field
// ------------------------------------------------------------------

struct Mat3 {
    Field F;
    std::array<Fel, 9> a{};  // row major

    Fel& at(int i, int j) { return a[3 * i + j]; }
    Fel at(int i, int j) const { return a[3 * i + j]; }
};

using Vec3 = std::array<Fel, 3>;

inline Mat3 m3_zero(const Field& F) { return {F, {}}; }

inline Mat3 m3_id(const Field& F) {
    Mat3 m{F, {}};
    Fel one = F->from_int(1);
    m.at(0, 0) = one;
    m.at(1, 1) = one;
    m.at(2, 2) = one;
    return m;
}

inline bool m3_eq(const Mat3& x, const Mat3& y) {
    contract(x.F.get() == y.F.get(), "m3_eq: field mismatch");
    return x.a == y.a;
}

inline Mat3 m3_mul(const Mat3& x, const Mat3& y) {
    contract(x.F.get() == y.F.get(), "m3_mul: field mismatch");
    const FieldSpec& F = *x.F;
    Mat3 r{x.F, {}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Fel s = 0;
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(x.at(i, k), y.at(k, j)));
            r.at(i, j) = s;
        }
    return r;
}

inline Vec3 m3_apply(const Mat3& m, const Vec3& v) {
    const FieldSpec& F = *m.F;
    Vec3 r{};
    for (int i = 0; i < 3; ++i) {
        Fel s = 0;
        for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(m.at(i, k), v[k]));
        r[i] = s;
    }
    return r;
}

inline Fel m3_det(const Mat3& m) {
    const FieldSpec& F = *m.F;
    auto mul3 = [&](Fel a, Fel b, Fel c) { return F.mul(F.mul(a, b), c); };
    Fel pos = F.add(F.add(mul3(m.at(0, 0), m.at(1, 1), m.at(2, 2)),
                          mul3(m.at(0, 1), m.at(1, 2), m.at(2, 0))),
                    mul3(m.at(0, 2), m.at(1, 0), m.at(2, 1)));
    Fel neg = F.add(F.add(mul3(m.at(0, 2), m.at(1, 1), m.at(2, 0)),
                          mul3(m.at(0, 0), m.at(1, 2), m.at(2, 1))),
                    mul3(m.at(0, 1), m.at(1, 0), m.at(2, 2)));
    return F.sub(pos, neg);
}

inline Mat3 m3_transpose(const Mat3& m) {
    Mat3 r{m.F, {}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = m.at(j, i);
    return r;
}

inline Mat3 m3_inv(const Mat3& m) {
    const FieldSpec& F = *m.F;
    Fel det = m3_det(m);
    contract(det != 0, "m3_inv: singular matrix");
    Fel idet = F.inv(det);
    Mat3 r{m.F, {}};
    auto co = [&](int i1, int j1, int i2, int j2) {
        return F.sub(F.mul(m.at(i1, j1), m.at(i2, j2)), F.mul(m.at(i1, j2), m.at(i2, j1)));
    };
    // adjugate (transposed cofactors)
    r.at(0, 0) = co(1, 1, 2, 2);
    r.at(0, 1) = F.neg(co(0, 1, 2, 2));
    r.at(0, 2) = co(0, 1, 1, 2);
    r.at(1, 0) = F.neg(co(1, 0, 2, 2));
    r.at(1, 1) = co(0, 0, 2, 2);
    r.at(1, 2) = F.neg(co(0, 0, 1, 2));
    r.at(2, 0) = co(1, 0, 2, 1);
    r.at(2, 1) = F.neg(co(0, 0, 2, 1));
    r.at(2, 2) = co(0, 0, 1, 1);
    for (auto& x : r.a) x = F.mul(x, idet);
    return r;
}

// entrywise x -> x^q (the field must be a quadratic extension)
inline Mat3 m3_frob_q(const Mat3& m) {
    Mat3 r = m;
    for (auto& x : r.a) x = m.F->frob_q(x);
    return r;
}

inline Mat3 m3_scalar(const Field& F, Fel c) {
    Mat3 m{F, {}};
    m.at(0, 0) = c;
    m.at(1, 1) = c;
    m.at(2, 2) = c;
    return m;
}

inline Mat3 m3_diag(const Field& F, Fel a, Fel b, Fel c) {
    Mat3 m{F, {}};
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    return m;
}

// I + t E_ij
inline Mat3 m3_transvection(const Field& F, int i, int j, Fel t) {
    contract(i != j, "m3_transvection: off-diagonal position required");
    Mat3 m = m3_id(F);
    m.at(i, j) = t;
    return m;
}

// packed key, valid while |F|^9 < 2^128
using PackedMat = unsigned __int128;

inline PackedMat m3_pack(const Mat3& m) {
    PackedMat key = 0;
    PackedMat base = m.F->size();
    for (int i = 0; i < 9; ++i) key = key * base + m.a[i];
    return key;
}

inline Mat3 m3_unpack(const Field& F, PackedMat key) {
    Mat3 m{F, {}};
    PackedMat base = F->size();
    for (int i = 8; i >= 0; --i) {
        m.a[i] = (Fel)(key % base);
        key /= base;
    }
    return m;
}

struct PackedHash {
    size_t operator()(const PackedMat& x) const {
        std::uint64_t lo = (std::uint64_t)x, hi = (std::uint64_t)(x >> 64);
        std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x9e3779b97f4a7c15ULL + (lo << 6));
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27;
        return (size_t)h;
    }
};

// ------------------------------------------------------------------
// the groups
// ------------------------------------------------------------------

enum class GroupKind { SL, SU };

inline const char* to_string(GroupKind k) { return k == GroupKind::SL ? "SL" : "SU"; }

class GroupSpec;
using Group = std::shared_ptr<const GroupSpec>;

class GroupSpec {
public:
    static constexpr long long kDefaultMaxQ = 32;

    static Group make(GroupKind kind, long long q, long long max_q = kDefaultMaxQ);

    GroupKind kind() const { return kind_; }
    long long q() const { return q_; }
    int eps() const { return kind_ == GroupKind::SL ? 1 : -1; }
    long long p() const { return F_->p(); }
    int f() const { return F_->f(); }
    int d() const { return (int)igcd(3, q_ - eps()); }
    const Field& field() const { return F_; }
    const Integer& order() const { return order_; }
    const std::vector<Mat3>& gens() const { return gens_; }

    // q^3 elements of the standard unipotent radical (upper triangular)
    const std::vector<Mat3>& unipotent_radical() const { return unip_; }

    // torus elements; SL: diag(tau^i, tau^j, tau^-i-j); SU: diag(tau^k, tau^(k(q-1)), tau^(-kq))
    Mat3 torus_sl(long long i, long long j) const {
        contract(kind_ == GroupKind::SL, "torus_sl: SL only");
        Fel t = F_->generator();
        return m3_diag(F_, F_->pow(t, Integer(imod(i, q_ - 1))), F_->pow(t, Integer(imod(j, q_ - 1))),
                       F_->pow(t, Integer(imod(-i - j, q_ - 1))));
    }
    Mat3 torus_su(long long k) const {
        contract(kind_ == GroupKind::SU, "torus_su: SU only");
        long long n = q_ * q_ - 1;
        Fel t = F_->generator();
        return m3_diag(F_, F_->pow(t, Integer(imod(k, n))), F_->pow(t, Integer(imod(k * (q_ - 1), n))),
                       F_->pow(t, Integer(imod(-k * q_, n))));
    }

    bool is_det_one(const Mat3& g) const { return m3_det(g) == F_->from_int(1); }

    // Hermitian form for SU (F is the quadratic extension)
    Fel herm(const Vec3& v, const Vec3& w) const {
        contract(kind_ == GroupKind::SU, "herm: SU only");
        const FieldSpec& F = *F_;
        Fel s = 0;
        // Omega antidiagonal: sum_i v_i^q w_{2-i}
        for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(F.frob_q(v[i]), w[2 - i]));
        return s;
    }

    bool is_unitary(const Mat3& g) const {
        contract(kind_ == GroupKind::SU, "is_unitary: SU only");
        const FieldSpec& F = *F_;
        // F(g)^T Omega g == Omega
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Fel s = 0;
                for (int k = 0; k < 3; ++k)
                    s = F.add(s, F.mul(F.frob_q(g.at(k, i)), g.at(2 - k, j)));
                Fel want = (i + j == 2) ? F.from_int(1) : 0;
                if (s != want) return false;
            }
        return true;
    }

    bool contains(const Mat3& g) const {
        if (g.F.get() != F_.get()) return false;
        if (!is_det_one(g)) return false;
        return kind_ == GroupKind::SL ? true : is_unitary(g);
    }

    // SU unipotent u(a, b) = [[1, a, b], [0, 1, -a^q], [0, 0, 1]] with
    // b + b^q + a^(q+1) = 0
    Mat3 su_unipotent(Fel a, Fel b) const {
        contract(kind_ == GroupKind::SU, "su_unipotent: SU only");
        const FieldSpec& F = *F_;
        Mat3 m = m3_id(F_);
        m.at(0, 1) = a;
        m.at(0, 2) = b;
        m.at(1, 2) = F.neg(F.frob_q(a));
        contract(F.add(F.add(b, F.frob_q(b)), F.mul(a, F.frob_q(a))) == 0,
                 "su_unipotent: isotropy constraint violated");
        return m;
    }

    // one solution of b + b^q = c (c must lie in the base subfield)
    Fel trace_solve(Fel c) const {
        contract(kind_ == GroupKind::SU, "trace_solve: SU only");
        const FieldSpec& F = *F_;
        contract(F.in_base_q(c), "trace_solve: target outside base field");
        return F.mul(trace_unit_, c);  // trace_unit has trace 1; c in F_q commutes through
    }

private:
    friend Group make_group(GroupKind, long long, long long);

    GroupKind kind_;
    long long q_ = 0;
    Field F_;
    Integer order_;
    std::vector<Mat3> gens_;
    std::vector<Mat3> unip_;
    Fel trace_unit_ = 0;  // SU: fixed element with tr(x) = x + x^q = 1

    GroupSpec() = default;

    void build_sl();
    void build_su();
    void certify_sl() const;
    void certify_su() const;
};

namespace detail {

inline std::pair<long long, int> prime_power_split(long long q) {
    if (q < 2) throw ParameterError("q must be a prime power >= 2");
    long long p = 0;
    for (long long c = 2; c * c <= q; ++c)
        if (q % c == 0) {
            p = c;
            break;
        }
    if (p == 0) return {q, 1};  // q prime
    int f = 0;
    long long t = q;
    while (t > 1) {
        if (t % p != 0) throw ParameterError("q must be a prime power");
        t /= p;
        ++f;
    }
    return {p, f};
}

// is the matrix I + t E_ij for some off-diagonal (i, j)? returns (i, j, t)
inline bool match_transvection(const Mat3& m, int& oi, int& oj, Fel& ot) {
    const FieldSpec& F = *m.F;
    Fel one = F.from_int(1);
    int found = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Fel want = i == j ? one : 0;
            if (m.at(i, j) == want) continue;
            if (i == j) return false;
            if (found >= 0) return false;
            found = 3 * i + j;
        }
    if (found < 0) return false;
    oi = found / 3;
    oj = found % 3;
    ot = m.at(oi, oj);
    return true;
}

// F_p-span tracker for field elements, echelon form over coefficient vectors
struct SpanTracker {
    const FieldSpec* F;
    std::vector<std::vector<int>> rows;  // reduced echelon rows mod p

    explicit SpanTracker(const FieldSpec* f) : F(f) {}

    bool contains(Fel x) const { return !reduce(coeff(x)).has_value(); }
    int dim() const { return (int)rows.size(); }

    // returns true if the span grew
    bool insert(Fel x) {
        auto r = reduce(coeff(x));
        if (!r) return false;
        rows.push_back(*r);
        return true;
    }

    std::vector<Fel> basis() const {
        std::vector<Fel> out;
        for (const auto& r : rows) {
            std::vector<long long> cs(r.begin(), r.end());
            out.push_back(F->from_coeffs(cs));
        }
        return out;
    }

private:
    std::vector<int> coeff(Fel x) const {
        auto cs = F->coeffs(x);
        return std::vector<int>(cs.begin(), cs.end());
    }

    // reduce against echelon rows; nullopt if dependent, else normalized row
    std::optional<std::vector<int>> reduce(std::vector<int> v) const {
        long long p = F->p();
        for (const auto& row : rows) {
            int lead = -1;
            for (size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) {
                    lead = (int)i;
                    break;
                }
            if (lead < 0) continue;
            int c = v[lead];
            if (c == 0) continue;
            // row is normalized to lead coefficient 1
            for (size_t i = 0; i < v.size(); ++i) v[i] = (int)imod(v[i] - (long long)c * row[i], p);
        }
        int lead = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                lead = (int)i;
                break;
            }
        if (lead < 0) return std::nullopt;
        // normalize lead to 1
        long long inv = 1, a = v[lead] % p;
        for (long long t = 1; t < p; ++t)
            if (a * t % p == 1) {
                inv = t;
                break;
            }
        for (auto& c : v) c = (int)imod((long long)c * inv, p);
        return v;
    }
};

}  // namespace detail

inline Group make_group(GroupKind kind, long long q, long long max_q = GroupSpec::kDefaultMaxQ) {
    auto [p, f] = detail::prime_power_split(q);
    if (q > max_q) throw CapacityError("make_group: q exceeds the configured cap");
    auto G = std::shared_ptr<GroupSpec>(new GroupSpec());
    G->kind_ = kind;
    G->q_ = q;
    G->F_ = gf::make_field(p, f, kind == GroupKind::SL ? 1 : 2);
    Integer Q = q;
    Integer unit_count = kind == GroupKind::SL ? Integer(Q * Q * Q - 1) : Integer(Q * Q * Q + 1);
    G->order_ = Q * Q * Q * unit_count * (Q * Q - 1);
    if (kind == GroupKind::SL)
        G->build_sl();
    else
        G->build_su();
    return G;
}

inline Group GroupSpec::make(GroupKind kind, long long q, long long max_q) {
    return make_group(kind, q, max_q);
}

inline void GroupSpec::build_sl() {
    const FieldSpec& F = *F_;
    Fel one = F.from_int(1);
    Fel tau = F.generator();
    gens_.push_back(m3_transvection(F_, 0, 1, one));
    if (tau != one) gens_.push_back(m3_transvection(F_, 0, 1, tau));
    Mat3 w = m3_zero(F_);  // cyclic basis rotation, determinant 1
    w.at(0, 1) = one;
    w.at(1, 2) = one;
    w.at(2, 0) = one;
    gens_.push_back(w);
    // unipotent radical: all upper unitriangular matrices
    for (Fel a = 0; a < (Fel)F.size(); ++a)
        for (Fel b = 0; b < (Fel)F.size(); ++b)
            for (Fel c = 0; c < (Fel)F.size(); ++c) {
                Mat3 u = m3_id(F_);
                u.at(0, 1) = a;
                u.at(0, 2) = b;
                u.at(1, 2) = c;
                unip_.push_back(u);
            }
    certify_sl();
}

inline void GroupSpec::certify_sl() const {
    for (const auto& g : gens_)
        if (!is_det_one(g)) throw ConstructionError("SL generator has determinant != 1");
    // closure of transvection parameter spans under generator conjugation and
    // commutators; success means every transvection lies in the generated
    // subgroup, which forces the whole special linear group
    const FieldSpec& F = *F_;
    std::array<detail::SpanTracker, 9> spans{
        detail::SpanTracker(&F), detail::SpanTracker(&F), detail::SpanTracker(&F),
        detail::SpanTracker(&F), detail::SpanTracker(&F), detail::SpanTracker(&F),
        detail::SpanTracker(&F), detail::SpanTracker(&F), detail::SpanTracker(&F)};
    auto add_matrix = [&](const Mat3& m) -> bool {
        int i, j;
        Fel t;
        if (!detail::match_transvection(m, i, j, t)) return false;
        return spans[3 * i + j].insert(t);
    };
    for (const auto& g : gens_) add_matrix(g);
    bool grew = true;
    int rounds = 0;
    while (grew && rounds++ < 64) {
        grew = false;
        // snapshot the basis transvections
        std::vector<Mat3> basis;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                for (Fel t : spans[3 * i + j].basis()) basis.push_back(m3_transvection(F_, i, j, t));
            }
        for (const auto& g : gens_) {
            Mat3 gi = m3_inv(g);
            for (const auto& e : basis)
                if (add_matrix(m3_mul(m3_mul(g, e), gi))) grew = true;
        }
        for (const auto& x : basis)
            for (const auto& y : basis) {
                Mat3 c = m3_mul(m3_mul(x, y), m3_mul(m3_inv(x), m3_inv(y)));
                if (add_matrix(c)) grew = true;
            }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && spans[3 * i + j].dim() != F.f())
                throw ConstructionError("SL generation certificate failed");
}

inline void GroupSpec::build_su() {
    const FieldSpec& F = *F_;
    Fel tau = F.generator();
    // element of trace one: any gamma with nonzero trace, normalized
    trace_unit_ = 0;
    for (Fel g = 1; g < (Fel)F.size(); ++g) {
        Fel tr = F.add(g, F.frob_q(g));
        if (tr != 0) {
            trace_unit_ = F.mul(g, F.inv(tr));
            break;
        }
    }
    contract(trace_unit_ != 0, "build_su: no trace-one element found");

    gens_.push_back(torus_su(1));
    auto u_of = [&](Fel a) {
        Fel c = F.neg(F.mul(a, F.frob_q(a)));  // b + b^q = -a^(q+1)
        return su_unipotent(a, trace_solve(c));
    };
    gens_.push_back(u_of(F.from_int(1)));
    gens_.push_back(u_of(tau));
    Mat3 w0 = m3_zero(F_);
    w0.at(0, 2) = F.from_int(1);
    w0.at(1, 1) = F.neg(F.from_int(1));
    w0.at(2, 0) = F.from_int(1);
    gens_.push_back(w0);

    // unipotent radical: u(a, b0(a) + t), t in the trace kernel
    std::vector<Fel> ker;
    for (Fel t = 0; t < (Fel)F.size(); ++t)
        if (F.add(t, F.frob_q(t)) == 0) ker.push_back(t);
    contract((long long)ker.size() == q_, "build_su: trace kernel size");
    for (Fel a = 0; a < (Fel)F.size(); ++a) {
        Fel c = F.neg(F.mul(a, F.frob_q(a)));
        Fel b0 = trace_solve(c);
        for (Fel t : ker) unip_.push_back(su_unipotent(a, F.add(b0, t)));
    }
    certify_su();
}

inline void GroupSpec::certify_su() const {
    const FieldSpec& F = *F_;
    for (const auto& g : gens_)
        if (!is_det_one(g) || !is_unitary(g))
            throw ConstructionError("SU generator outside the unitary group");
    // (i) torus generator has full order q^2 - 1
    long long n = q_ * q_ - 1;
    Mat3 t = gens_[0];
    Mat3 acc = t;
    long long ord = 1;
    Mat3 id = m3_id(F_);
    while (!m3_eq(acc, id)) {
        acc = m3_mul(acc, t);
        if (++ord > n) throw ConstructionError("SU torus generator order overflow");
    }
    if (ord != n) throw ConstructionError("SU torus generator has wrong order");
    // (ii) the two unipotent generators, closed under products and torus
    // conjugation, fill the whole unipotent radical (q^3 elements)
    std::unordered_set<PackedMat, PackedHash> seen;
    std::vector<Mat3> frontier = {m3_id(F_)};
    seen.insert(m3_pack(frontier[0]));
    Mat3 ti = m3_inv(t);
    while (!frontier.empty()) {
        std::vector<Mat3> next;
        for (const auto& x : frontier) {
            Mat3 cand[3] = {m3_mul(x, gens_[1]), m3_mul(x, gens_[2]), m3_mul(m3_mul(t, x), ti)};
            for (auto& c : cand)
                if (seen.insert(m3_pack(c)).second) next.push_back(c);
        }
        frontier = std::move(next);
    }
    if ((long long)seen.size() != q_ * q_ * q_)
        throw ConstructionError("SU unipotent closure has wrong size");
    // (iii) orbit of the base isotropic point under the generators covers all
    // q^3 + 1 isotropic points; with (i)+(ii) in the stabilizer this pins the
    // group order from below and certifies generation
    auto normalize = [&](Vec3 v) {
        for (int i = 0; i < 3; ++i)
            if (v[i] != 0) {
                Fel inv = F.inv(v[i]);
                for (int k = 0; k < 3; ++k) v[k] = F.mul(v[k], inv);
                break;
            }
        return v;
    };
    auto key = [&](const Vec3& v) {
        return (std::uint64_t)v[0] + (std::uint64_t)F.size() * ((std::uint64_t)v[1] + (std::uint64_t)F.size() * (std::uint64_t)v[2]);
    };
    std::unordered_set<std::uint64_t> orbit;
    std::vector<Vec3> stack = {{F.from_int(1), 0, 0}};
    orbit.insert(key(stack[0]));
    while (!stack.empty()) {
        Vec3 v = stack.back();
        stack.pop_back();
        if (herm(v, v) != 0) throw ConstructionError("SU orbit left the isotropic set");
        for (const auto& g : gens_) {
            Vec3 w = normalize(m3_apply(g, v));
            if (orbit.insert(key(w)).second) stack.push_back(w);
        }
    }
    if ((long long)orbit.size() != q_ * q_ * q_ + 1)
        throw ConstructionError("SU isotropic orbit has wrong size");
}

// ------------------------------------------------------------------
// exhaustive enumeration (small q only)
// ------------------------------------------------------------------

inline std::vector<PackedMat> enumerate_group(const Group& G, std::size_t cap = 1u << 20) {
    if (G->order() > Integer((unsigned long long)cap))
        throw CapacityError("enumerate_group: order exceeds cap");
    std::unordered_set<PackedMat, PackedHash> seen;
    seen.reserve((size_t)(unsigned long long)G->order() * 2);
    std::vector<Mat3> frontier = {m3_id(G->field())};
    seen.insert(m3_pack(frontier[0]));
    while (!frontier.empty()) {
        std::vector<Mat3> next;
        for (const auto& x : frontier)
            for (const auto& g : G->gens()) {
                Mat3 y = m3_mul(x, g);
                if (seen.insert(m3_pack(y)).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<PackedMat>(seen.begin(), seen.end());
}

// ------------------------------------------------------------------
// unipotent bucketing
// ------------------------------------------------------------------

struct UnipotentBuckets {
    long long identity = 0;       // rank(u - 1) == 0
    long long transvections = 0;  // rank 1
    std::vector<long long> regular_by_label;  // rank 2, split by d-part label
};

inline int m3_rank_minus_id(const Mat3& m) {
    const FieldSpec& F = *m.F;
    std::array<std::array<Fel, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = F.sub(m.at(i, j), i == j ? F.from_int(1) : 0);
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int pr = -1;
        for (int r = rank; r < 3; ++r)
            if (a[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[rank], a[pr]);
        Fel inv = F.inv(a[rank][col]);
        for (int j = 0; j < 3; ++j) a[rank][j] = F.mul(a[rank][j], inv);
        for (int r = 0; r < 3; ++r) {
            if (r == rank) continue;
            Fel f = a[r][col];
            if (f == 0) continue;
            for (int j = 0; j < 3; ++j) a[r][j] = F.sub(a[r][j], F.mul(f, a[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// d-part label of a regular element of the unipotent radical:
// SL: dlog(a^2 c) mod d for u with superdiagonal (a, c); SU: dlog(a) mod d
inline int regular_label(const Group& G, const Mat3& u) {
    const FieldSpec& F = *G->field();
    Fel a = u.at(0, 1), c = u.at(1, 2);
    contract(a != 0 && (G->kind() == GroupKind::SU || c != 0), "regular_label: not regular");
    int d = G->d();
    if (d == 1) return 0;
    if (G->kind() == GroupKind::SL) {
        Fel val = F.mul(F.mul(a, a), c);
        return (int)(F.dlog(val) % d);
    }
    return (int)(F.dlog(a) % d);
}

inline UnipotentBuckets unipotent_buckets(const Group& G) {
    UnipotentBuckets B;
    B.regular_by_label.assign(G->d(), 0);
    for (const auto& u : G->unipotent_radical()) {
        int r = m3_rank_minus_id(u);
        if (r == 0)
            ++B.identity;
        else if (r == 1)
            ++B.transvections;
        else
            ++B.regular_by_label[regular_label(G, u)];
    }
    return B;
}

// ------------------------------------------------------------------
// coset spaces with explicit representatives
// ------------------------------------------------------------------

enum class SpaceKind { projective_points, full_flags, isotropic_points };

class CosetSpace {
public:
    const Group& group() const { return G_; }
    SpaceKind space_kind() const { return kind_; }
    int size() const { return (int)reps_.size(); }
    const Mat3& rep(int x) const { return reps_[x]; }

    // index of g . x
    int apply(const Mat3& g, int x) const { return apply_with_inv(g, m3_inv(g), x); }

    // whole permutation of g (one inverse computation)
    std::vector<int> perm(const Mat3& g) const {
        Mat3 gi = m3_inv(g);
        std::vector<int> out(size());
        for (int x = 0; x < size(); ++x) out[x] = apply_with_inv(g, gi, x);
        return out;
    }

    static CosetSpace projective(const Group& G);
    static CosetSpace flags(const Group& G);
    static CosetSpace isotropic(const Group& G);

private:
    Group G_;
    SpaceKind kind_;
    std::vector<Vec3> pts_;                       // primal points
    std::vector<Vec3> duals_;                     // flag line functionals
    std::vector<std::pair<int, int>> flag_of_;    // flag -> (pt, dual)
    std::unordered_map<std::uint64_t, int> pidx_, didx_, fidx_;
    std::vector<Mat3> reps_;

    std::uint64_t vkey(const Vec3& v) const {
        std::uint64_t S = G_->field()->size();
        return (std::uint64_t)v[0] + S * ((std::uint64_t)v[1] + S * (std::uint64_t)v[2]);
    }

    Vec3 normalize(Vec3 v) const {
        const FieldSpec& F = *G_->field();
        for (int i = 0; i < 3; ++i)
            if (v[i] != 0) {
                Fel inv = F.inv(v[i]);
                for (int k = 0; k < 3; ++k) v[k] = F.mul(v[k], inv);
                return v;
            }
        throw ContractError("normalize: zero vector");
    }

    int apply_with_inv(const Mat3& g, const Mat3& gi, int x) const {
        switch (kind_) {
            case SpaceKind::projective_points:
            case SpaceKind::isotropic_points: {
                auto it = pidx_.find(vkey(normalize(m3_apply(g, pts_[x]))));
                contract(it != pidx_.end(), "apply: image point not indexed");
                return it->second;
            }
            case SpaceKind::full_flags: {
                auto [pi, di] = flag_of_[x];
                Vec3 pv = normalize(m3_apply(g, pts_[pi]));
                Vec3 dv = normalize(m3_apply(m3_transpose(gi), duals_[di]));
                auto ip = pidx_.find(vkey(pv));
                auto idd = didx_.find(vkey(dv));
                contract(ip != pidx_.end() && idd != didx_.end(), "apply: flag image not indexed");
                auto f = fidx_.find((std::uint64_t)ip->second * duals_.size() + idd->second);
                contract(f != fidx_.end(), "apply: image flag not incident");
                return f->second;
            }
        }
        throw ContractError("apply: bad space kind");
    }

    void validate() const {
        // every representative moves the base coset to its index
        for (int x = 0; x < size(); ++x) {
            contract(G_->contains(reps_[x]), "coset rep outside the group");
            contract(apply(reps_[x], 0) == x, "coset rep does not hit its point");
        }
        // generators act by genuine permutations (transitivity comes from reps)
        for (const auto& g : G_->gens()) {
            auto pm = perm(g);
            std::vector<char> hit(size(), 0);
            for (int y : pm) {
                contract(y >= 0 && y < size() && !hit[y], "generator action not a permutation");
                hit[y] = 1;
            }
        }
    }

    friend class GroupSpec;
};

namespace detail {

// normalized projective representatives (first nonzero coordinate = 1),
// (1,0,0) first
inline std::vector<Vec3> projective_reps(const FieldSpec& F) {
    Fel one = F.from_int(1);
    std::vector<Vec3> out;
    out.push_back({one, 0, 0});
    for (Fel b = 0; b < (Fel)F.size(); ++b)
        for (Fel c = 0; c < (Fel)F.size(); ++c)
            if (b != 0 || c != 0) out.push_back({one, b, c});
    for (Fel c = 0; c < (Fel)F.size(); ++c) out.push_back({0, one, c});
    out.push_back({0, 0, one});
    return out;
}

// complete the column v to a determinant-one matrix
inline Mat3 complete_point(const Field& Fp, const Vec3& v) {
    const FieldSpec& F = *Fp;
    Vec3 es[3] = {{F.from_int(1), 0, 0}, {0, F.from_int(1), 0}, {0, 0, F.from_int(1)}};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Mat3 m{Fp, {}};
            for (int r = 0; r < 3; ++r) {
                m.at(r, 0) = v[r];
                m.at(r, 1) = es[i][r];
                m.at(r, 2) = es[j][r];
            }
            Fel det = m3_det(m);
            if (det == 0) continue;
            Fel s = F.inv(det);
            for (int r = 0; r < 3; ++r) m.at(r, 2) = F.mul(m.at(r, 2), s);
            return m;
        }
    throw ContractError("complete_point: no completion found");
}

}  // namespace detail

inline CosetSpace CosetSpace::projective(const Group& G) {
    contract(G->kind() == GroupKind::SL, "projective: SL spaces only");
    CosetSpace S;
    S.G_ = G;
    S.kind_ = SpaceKind::projective_points;
    S.pts_ = detail::projective_reps(*G->field());
    for (int i = 0; i < (int)S.pts_.size(); ++i) S.pidx_.emplace(S.vkey(S.pts_[i]), i);
    for (const auto& v : S.pts_) S.reps_.push_back(detail::complete_point(G->field(), v));
    contract((long long)S.pts_.size() == G->q() * G->q() + G->q() + 1, "projective: wrong point count");
    S.validate();
    return S;
}

inline CosetSpace CosetSpace::flags(const Group& G) {
    contract(G->kind() == GroupKind::SL, "flags: SL spaces only");
    const FieldSpec& F = *G->field();
    CosetSpace S;
    S.G_ = G;
    S.kind_ = SpaceKind::full_flags;
    S.pts_ = detail::projective_reps(F);
    S.duals_ = detail::projective_reps(F);
    for (int i = 0; i < (int)S.pts_.size(); ++i) S.pidx_.emplace(S.vkey(S.pts_[i]), i);
    for (int i = 0; i < (int)S.duals_.size(); ++i) S.didx_.emplace(S.vkey(S.duals_[i]), i);
    auto dot = [&](const Vec3& a, const Vec3& b) {
        Fel s = 0;
        for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(a[k], b[k]));
        return s;
    };
    // base flag first: point <e1> inside the line annihilated by e3*
    auto push_flag = [&](int pi, int di) {
        S.fidx_.emplace((std::uint64_t)pi * S.duals_.size() + di, (int)S.flag_of_.size());
        S.flag_of_.emplace_back(pi, di);
    };
    int base_d = S.didx_.at(S.vkey({0, 0, F.from_int(1)}));
    push_flag(0, base_d);
    for (int pi = 0; pi < (int)S.pts_.size(); ++pi)
        for (int di = 0; di < (int)S.duals_.size(); ++di) {
            if (pi == 0 && di == base_d) continue;
            if (dot(S.duals_[di], S.pts_[pi]) == 0) push_flag(pi, di);
        }
    contract((long long)S.flag_of_.size() == (G->q() + 1) * (G->q() * G->q() + G->q() + 1),
             "flags: wrong flag count");
    // representative: columns (point, second line vector, completion)
    for (auto [pi, di] : S.flag_of_) {
        const Vec3& p = S.pts_[pi];
        const Vec3& phi = S.duals_[di];
        int l = 0;
        while (phi[l] == 0) ++l;
        // kernel basis: e_i - (phi_i / phi_l) e_l for i != l
        Vec3 kb[2];
        int nb = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == l) continue;
            Vec3 v{};
            v[i] = F.from_int(1);
            v[l] = F.neg(F.mul(phi[i], F.inv(phi[l])));
            kb[nb++] = v;
        }
        // pick a kernel vector independent from p (cross of coordinates)
        auto proportional = [&](const Vec3& a, const Vec3& b) {
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i])) != 0) return false;
            return true;
        };
        Vec3 c2 = proportional(kb[0], p) ? kb[1] : kb[0];
        contract(!proportional(c2, p), "flags: degenerate kernel basis");
        Mat3 m{G->field(), {}};
        for (int r = 0; r < 3; ++r) {
            m.at(r, 0) = p[r];
            m.at(r, 1) = c2[r];
        }
        bool done = false;
        for (int e = 0; e < 3 && !done; ++e) {
            for (int r = 0; r < 3; ++r) m.at(r, 2) = r == e ? F.from_int(1) : 0;
            Fel det = m3_det(m);
            if (det == 0) continue;
            Fel s = F.inv(det);
            for (int r = 0; r < 3; ++r) m.at(r, 2) = F.mul(m.at(r, 2), s);
            done = true;
        }
        contract(done, "flags: no completion");
        S.reps_.push_back(m);
    }
    S.validate();
    return S;
}

inline CosetSpace CosetSpace::isotropic(const Group& G) {
    contract(G->kind() == GroupKind::SU, "isotropic: SU spaces only");
    const FieldSpec& F = *G->field();
    CosetSpace S;
    S.G_ = G;
    S.kind_ = SpaceKind::isotropic_points;
    for (const auto& v : detail::projective_reps(F)) {
        if (G->herm(v, v) != 0) continue;
        S.pidx_.emplace(S.vkey(v), (int)S.pts_.size());
        S.pts_.push_back(v);
    }
    contract((long long)S.pts_.size() == G->q() * G->q() * G->q() + 1, "isotropic: wrong point count");
    contract(S.pts_[0][0] == F.from_int(1) && S.pts_[0][1] == 0 && S.pts_[0][2] == 0,
             "isotropic: base point must come first");

    Fel one = F.from_int(1);
    Vec3 es[3] = {{one, 0, 0}, {0, one, 0}, {0, 0, one}};
    for (const auto& v : S.pts_) {
        if (S.reps_.size() == 0u) {
            S.reps_.push_back(m3_id(G->field()));
            continue;
        }
        // hyperbolic partner: isotropic u' with H(v, u') = 1
        Vec3 w{};
        Fel b = 0;
        for (const auto& e : es) {
            b = G->herm(v, e);
            if (b != 0) {
                w = e;
                break;
            }
        }
        contract(b != 0, "isotropic: degenerate form?");
        Fel c = G->herm(w, w);
        Fel s = G->trace_solve(F.neg(c));
        Fel t = F.mul(s, F.inv(F.frob_q(b)));
        Vec3 u2{};
        for (int r = 0; r < 3; ++r) u2[r] = F.add(w[r], F.mul(t, v[r]));
        Fel binv = F.inv(b);
        Vec3 up{};
        for (int r = 0; r < 3; ++r) up[r] = F.mul(u2[r], binv);
        contract(G->herm(up, up) == 0 && G->herm(v, up) == one, "isotropic: partner construction");
        // middle vector: kernel of the two linear forms H(v, .) and H(up, .)
        Vec3 rows[2];
        for (int r = 0; r < 3; ++r) {
            rows[0][r] = F.frob_q(v[2 - r]);   // H(v, z) = sum_r v_{2-r}^q z_r
            rows[1][r] = F.frob_q(up[2 - r]);
        }
        Vec3 z0{};
        {
            // cross product of the two rows lies in both kernels
            auto cr = [&](int i, int j) {
                return F.sub(F.mul(rows[0][i], rows[1][j]), F.mul(rows[0][j], rows[1][i]));
            };
            z0 = {cr(1, 2), F.neg(cr(0, 2)), cr(0, 1)};
        }
        contract(!(z0[0] == 0 && z0[1] == 0 && z0[2] == 0), "isotropic: zero middle vector");
        Fel nz = G->herm(z0, z0);
        contract(nz != 0 && F.in_base_q(nz), "isotropic: middle vector norm");
        long long k = (long long)F.dlog(nz);
        contract(k % (G->q() + 1) == 0, "isotropic: norm not in the image");
        Fel sc = F.pow(F.generator(), Integer(k / (G->q() + 1)));
        Vec3 z{};
        Fel sinv = F.inv(sc);
        for (int r = 0; r < 3; ++r) z[r] = F.mul(z0[r], sinv);
        contract(G->herm(z, z) == one, "isotropic: middle normalization");
        Mat3 m{G->field(), {}};
        for (int r = 0; r < 3; ++r) {
            m.at(r, 0) = v[r];
            m.at(r, 1) = z[r];
            m.at(r, 2) = up[r];
        }
        contract(G->is_unitary(m), "isotropic: representative not unitary");
        // fix the determinant (a norm-one scalar) by rescaling the middle column
        Fel det = m3_det(m);
        contract(F.pow(det, Integer(G->q() + 1)) == one, "isotropic: determinant norm");
        Fel di = F.inv(det);
        for (int r = 0; r < 3; ++r) m.at(r, 1) = F.mul(m.at(r, 1), di);
        contract(G->contains(m), "isotropic: representative outside SU");
        S.reps_.push_back(m);
    }
    S.validate();
    return S;
}

// number of orbits of the unipotent radical on a coset space
inline int u_orbit_count(const Group& G, const CosetSpace& S) {
    int n = S.size();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& u : G->unipotent_radical()) {
        auto pm = S.perm(u);
        for (int x = 0; x < n; ++x) {
            int a = find(x), b = find(pm[x]);
            if (a != b) parent[a] = b;
        }
    }
    int count = 0;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) ++count;
    return count;
}

}  // namespace orthdet::groups

#endif
