#include <catch2/catch_amalgamated.hpp>

#include "orthdet/gf.hpp"

#include <map>
#include <random>
#include <set>

using namespace orthdet;
using gf::Fel;

namespace {

// Independent brute-force poly oracle over F_p: long-division trial by every
// monic divisor of degree 1..deg/2.
using P = std::vector<long long>;

P trim(P a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool divides(const P& d, P a, long long p) {
    a = trim(a);
    while (a.size() >= d.size()) {
        long long lead = a.back();
        if (lead) {
            // d is monic
            size_t s = a.size() - d.size();
            for (size_t i = 0; i < d.size(); ++i) a[s + i] = ((a[s + i] - lead * d[i]) % p + p) % p;
        }
        a.pop_back();
        a = trim(a);
    }
    return a.empty();
}

bool brute_irreducible(const P& f, long long p) {
    int deg = int(f.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    // all monic polys of degree k <= deg/2
    for (int k = 1; 2 * k <= deg; ++k) {
        long long count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (long long n = 0; n < count; ++n) {
            P d(k + 1, 0);
            long long m = n;
            for (int i = 0; i < k; ++i) {
                d[i] = m % p;
                m /= p;
            }
            d[k] = 1;
            if (divides(d, f, p)) return false;
        }
    }
    return true;
}

// order by repeated multiplication, no shortcuts
long long naive_order(const gf::Field& F, Fel a) {
    long long n = 1;
    Fel cur = a;
    while (cur != 1) {
        cur = F->mul(cur, a);
        ++n;
        REQUIRE(n <= F->size());
    }
    return n;
}

}  // namespace

TEST_CASE("prime field F_2") {
    auto F = gf::make_field(2, 1, 1);
    CHECK(F->size() == 2);
    CHECK(F->modulus() == std::vector<long long>{0, 1});  // x
    CHECK(F->add(1, 1) == 0);
    CHECK(F->mul(1, 1) == 1);
    CHECK(F->generator() == 1);
}

TEST_CASE("F_4 modulus and generator order") {
    auto F = gf::make_field(2, 2, 1);
    CHECK(F->size() == 4);
    CHECK(F->modulus() == std::vector<long long>{1, 1, 1});  // x^2+x+1
    CHECK(naive_order(F, F->generator()) == 3);
}

TEST_CASE("F_9 as quadratic extension") {
    auto F = gf::make_field(3, 1, 2);
    CHECK(F->size() == 9);
    CHECK(F->q() == 3);
    CHECK(F->modulus() == std::vector<long long>{1, 0, 1});  // x^2+1
    CHECK(F->generator() == F->from_coeffs({1, 1}));         // x+1 is the least generator
    CHECK(naive_order(F, F->generator()) == 8);
    // frobenius x -> x^q fixes exactly F_3
    int fixed = 0;
    for (Fel a = 0; a < 9; ++a)
        if (F->frob_q(a) == a) ++fixed;
    CHECK(fixed == 3);
    for (Fel a = 0; a < 9; ++a) CHECK(F->frob_q(F->frob_q(a)) == a);
    CHECK(F->in_base_q(F->from_int(2)));
    CHECK_FALSE(F->in_base_q(F->from_coeffs({0, 1})));
}

TEST_CASE("size-25 fields, both shapes") {
    auto A = gf::make_field(5, 1, 2);
    auto B = gf::make_field(5, 2, 1);
    CHECK(A->size() == 25);
    CHECK(B->size() == 25);
    CHECK(naive_order(A, A->generator()) == 24);
    CHECK(naive_order(B, B->generator()) == 24);
}

TEST_CASE("modulus is the lex-least monic irreducible") {
    // degree 4 over F_2: enumerate candidates in (c0,c1,c2,c3) lex order with
    // an independent trial-division oracle.
    long long p = 2;
    int d = 4;
    P expect;
    for (long long n = 0; n < 16 && expect.empty(); ++n) {
        P f(d + 1, 0);
        f[d] = 1;
        // n encodes (c0..c3) with c0 most significant so increasing n is lex order
        long long m = n;
        for (int i = d - 1; i >= 0; --i) {
            f[i] = m % p;
            m /= p;
        }
        if (brute_irreducible(f, p)) expect = f;
    }
    REQUIRE(!expect.empty());
    auto F = gf::make_field(2, 4, 1);
    CHECK(F->modulus() == expect);
    CHECK(expect == P{1, 0, 0, 1, 1});  // x^4 + x^3 + 1 precedes x^4 + x + 1
}

TEST_CASE("moduli are irreducible (brute force)") {
    for (auto [p, f, e] : {std::tuple<long long, int, int>{2, 3, 1},
                           {3, 2, 1},
                           {3, 1, 2},
                           {5, 1, 2},
                           {7, 1, 2},
                           {2, 2, 2},
                           {13, 1, 2}}) {
        auto F = gf::make_field(p, f, e);
        CHECK(brute_irreducible(F->modulus(), p));
    }
}

TEST_CASE("field axioms, exhaustive on small fields") {
    for (auto [p, f, e] : {std::tuple<long long, int, int>{2, 2, 1}, {3, 1, 2}, {2, 3, 1}}) {
        auto F = gf::make_field(p, f, e);
        long long S = F->size();
        for (Fel a = 0; a < (Fel)S; ++a) {
            CHECK(F->add(a, F->neg(a)) == 0);
            CHECK(F->mul(a, 1) == a);
            CHECK(F->pow(a ? a : 1, S - 1) == 1);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            for (Fel b = 0; b < (Fel)S; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
                for (Fel c = 0; c < (Fel)S; ++c) {
                    CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
                    CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("field axioms, sampled on larger fields") {
    std::mt19937 rng(12345);
    for (auto [p, f, e] : {std::tuple<long long, int, int>{7, 1, 2}, {13, 1, 2}, {3, 2, 2}, {2, 8, 1}}) {
        auto F = gf::make_field(p, f, e);
        std::uniform_int_distribution<long long> d(0, F->size() - 1);
        for (int t = 0; t < 300; ++t) {
            Fel a = d(rng), b = d(rng), c = d(rng);
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            CHECK(F->pow(a ? a : 1, F->size() - 1) == 1);
        }
    }
}

TEST_CASE("multiplicative group is cyclic with exhibited generator") {
    for (auto [p, f, e] : {std::tuple<long long, int, int>{2, 2, 1},
                           {2, 3, 1},
                           {3, 1, 2},
                           {2, 4, 1},
                           {5, 1, 2},
                           {3, 3, 1},
                           {7, 1, 2}}) {
        auto F = gf::make_field(p, f, e);
        Fel g = F->generator();
        CHECK(F->mult_order(g) == F->size() - 1);
        std::set<Fel> seen;
        Fel cur = 1;
        for (long long i = 0; i < F->size() - 1; ++i) {
            seen.insert(cur);
            cur = F->mul(cur, g);
        }
        CHECK((long long)seen.size() == F->size() - 1);
    }
}

TEST_CASE("dlog round trip") {
    auto F = gf::make_field(5, 1, 2);
    Fel g = F->generator();
    for (long long k = 0; k < 24; ++k) CHECK(F->dlog(F->pow(g, k)) == k);
    CHECK_THROWS_AS(F->dlog(0), ParameterError);
}

TEST_CASE("trace and norm land in the base field and trace is onto") {
    for (auto [p, f] : {std::pair<long long, int>{5, 1}, {3, 1}, {2, 2}, {7, 1}}) {
        auto F = gf::make_field(p, f, 2);
        std::set<Fel> traces;
        for (Fel a = 0; a < (Fel)F->size(); ++a) {
            CHECK(F->in_base_q(F->trace_q(a)));
            CHECK(F->in_base_q(F->norm_q(a)));
            traces.insert(F->trace_q(a));
        }
        CHECK((long long)traces.size() == F->q());  // trace surjective onto F_q
    }
}

TEST_CASE("frobenius is additive and multiplicative") {
    auto F = gf::make_field(3, 2, 2);  // F_81 over F_9
    std::mt19937 rng(777);
    std::uniform_int_distribution<long long> d(0, F->size() - 1);
    for (int t = 0; t < 200; ++t) {
        Fel a = d(rng), b = d(rng);
        CHECK(F->frob(F->add(a, b)) == F->add(F->frob(a), F->frob(b)));
        CHECK(F->frob(F->mul(a, b)) == F->mul(F->frob(a), F->frob(b)));
        CHECK(F->frob_q(F->frob_q(a)) == a);
    }
}

TEST_CASE("make_field parameter validation") {
    CHECK_THROWS_AS(gf::make_field(6, 1, 1), ParameterError);
    CHECK_THROWS_AS(gf::make_field(5, 1, 3), ParameterError);
    CHECK_THROWS_AS(gf::make_field(2, 30, 1), CapacityError);
    CHECK_THROWS_AS(gf::make_field(65537, 2, 1), CapacityError);
}

TEST_CASE("coeff codec round trip") {
    auto F = gf::make_field(7, 1, 2);
    for (Fel a = 0; a < (Fel)F->size(); ++a) CHECK(F->from_coeffs(F->coeffs(a)) == a);
    CHECK(F->from_coeffs({3, 5}) == 3 + 5 * 7);
    CHECK(F->from_coeffs({-4, 12}) == 3 + 5 * 7);  // reduced mod p
}
