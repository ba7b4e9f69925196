#include <catch2/catch_amalgamated.hpp>

#include "orthdet/chars.hpp"

#include <set>

using namespace orthdet;
using namespace orthdet::chartab;
using groups::GroupKind;

namespace {

const long long kPrimePowers[] = {2, 3, 4, 5, 7, 8, 9, 11, 13};

Family sl(long long q) { return Family::make(GroupKind::SL, q); }
Family su(long long q) { return Family::make(GroupKind::SU, q); }

// independent degree expressions, written directly from the table column
Integer table_degree(const Family& F, CharKind k) {
    Integer q = F.q, e = F.eps();
    switch (k) {
        case CharKind::Trivial: return 1;
        case CharKind::Qs: return q * (q + e);
        case CharKind::QCubed: return q * q * q;
        case CharKind::StPrime: return (q + e) * (q * q + e * q + 1) / 3;
        case CharKind::St: return (q + e) * (q * q + e * q + 1);
        case CharKind::Rt: return (q - e) * (q * q + e * q + 1);
    }
    return -1;
}

}  // namespace

TEST_CASE("degrees match the table column") {
    for (long long q : kPrimePowers)
        for (Family F : {sl(q), su(q)})
            for (CharKind k : {CharKind::Trivial, CharKind::Qs, CharKind::QCubed, CharKind::St,
                               CharKind::Rt}) {
                CHECK(degree_of(F, k) == table_degree(F, k));
            }
    // stprime only where 3 | q - eps
    CHECK(degree_of(sl(7), CharKind::StPrime) == 152);
    CHECK(degree_of(sl(13), CharKind::StPrime) == 854);
    CHECK(degree_of(su(5), CharKind::StPrime) == 28);
    CHECK(degree_of(sl(5), CharKind::St) == 186);
    CHECK(degree_of(su(5), CharKind::Rt) == 126);
    CHECK(degree_of(sl(2), CharKind::Qs) == 6);
    CHECK(degree_of(su(2), CharKind::QCubed) == 8);
}

TEST_CASE("degree polynomials satisfy Ennola duality q -> -q") {
    // f(q, -eps) = sigma * f(-q, eps) for a single global sign sigma
    auto matches_with_sign = [](const std::vector<Integer>& plus,
                                const std::vector<Integer>& minus, int sigma) {
        if (plus.size() != minus.size()) return false;
        for (size_t i = 0; i < plus.size(); ++i) {
            Integer flip = (i % 2 == 0) ? plus[i] : Integer(-plus[i]);
            if (minus[i] != Integer(sigma * flip)) return false;
        }
        return true;
    };
    for (CharKind k : {CharKind::Qs, CharKind::QCubed, CharKind::StPrime, CharKind::St,
                       CharKind::Rt}) {
        auto plus = degree_polynomial(k, 1);
        auto minus = degree_polynomial(k, -1);
        CHECK((matches_with_sign(plus, minus, 1) || matches_with_sign(plus, minus, -1)));
    }
    CHECK(matches_with_sign(order_polynomial(1), order_polynomial(-1), 1));
}

TEST_CASE("irr_plus enumerations at small q") {
    auto labels = [](const Family& F) {
        std::vector<std::string> out;
        for (const auto& l : irr_plus(F)) out.push_back(to_string(l));
        return out;
    };
    CHECK(labels(sl(2)) == std::vector<std::string>{"qs", "qcubed"});
    CHECK(labels(su(2)) == std::vector<std::string>{"qcubed"});
    CHECK(labels(sl(4)) == std::vector<std::string>{"qs", "qcubed"});
    CHECK(labels(su(4)) == std::vector<std::string>{"qcubed"});
    CHECK(labels(sl(5)) ==
          std::vector<std::string>{"qs", "st(1)", "st(3)", "rt(1)", "rt(2)", "rt(3)", "rt(4)",
                                   "rt(5)"});
    CHECK(labels(sl(3)) == std::vector<std::string>{"qs", "rt(1)", "rt(2)", "rt(3)"});
    CHECK(labels(su(3)) == std::vector<std::string>{"st(1)", "st(3)", "rt(1)"});
    CHECK(labels(sl(7)) ==
          std::vector<std::string>{"qs", "stprime(0)", "stprime(1)", "stprime(2)", "st(1)",
                                   "st(5)", "rt(1)", "rt(2)", "rt(3)", "rt(4)", "rt(5)", "rt(6)",
                                   "rt(7)"});
    CHECK(labels(su(5)) ==
          std::vector<std::string>{"stprime(0)", "stprime(1)", "stprime(2)", "st(1)", "st(5)",
                                   "rt(1)", "rt(2)", "rt(3)"});
}

TEST_CASE("every enumerated label is valid, in Irr+, and of even degree") {
    for (long long q : kPrimePowers)
        for (Family F : {sl(q), su(q)})
            for (const auto& l : irr_plus(F)) {
                CharInfo info = char_info(F, l);
                CHECK(info.in_irr_plus);
                CHECK(info.degree % 2 == 0);
                CHECK(info.degree > 0);
                if (info.hc_degree) {
                    int h = *info.hc_degree;
                    CHECK((h == 0 || h == 1 || h == 2 || h == 6));
                    int W = F.kind == GroupKind::SL ? 6 : 2;
                    CHECK(h <= W);
                }
            }
}

TEST_CASE("rt range modes") {
    Family F = su(5);
    auto count = [&](RangeMode m) {
        int n = 0;
        for (const auto& l : irr_plus(F, m))
            if (l.kind == CharKind::Rt) ++n;
        return n;
    };
    CHECK(count(RangeMode::Theorem) == 3);       // u in {1,2,3}
    CHECK(count(RangeMode::Proposition) == 5);   // u in {1..5}
    CHECK(count(RangeMode::Union) == 5);
    CHECK(std::string(rt_range_tag(F, 3)) == "both");
    CHECK(std::string(rt_range_tag(F, 4)) == "proposition");
    CHECK(std::string(rt_range_tag(F, 5)) == "proposition");
    // extras beyond the theorem range are not counted as Irr+ labels
    CHECK_FALSE(char_info(F, label_of(CharKind::Rt, 5)).in_irr_plus);
    CHECK(char_info(F, label_of(CharKind::Rt, 3)).in_irr_plus);
    // SL ranges coincide
    CHECK(std::string(rt_range_tag(sl(5), 5)) == "both");
}

TEST_CASE("degenerate rt parameters are flagged") {
    CHECK(char_info(su(3), label_of(CharKind::Rt, 1)).degenerate);
    CHECK(char_info(su(5), label_of(CharKind::Rt, 2)).degenerate);
    CHECK(char_info(su(5), label_of(CharKind::Rt, 4)).degenerate);
    CHECK_FALSE(char_info(su(5), label_of(CharKind::Rt, 1)).degenerate);
    CHECK_FALSE(char_info(su(5), label_of(CharKind::Rt, 3)).degenerate);
    // SL rt never degenerates (determinant is q, independent of u)
    for (long long u = 1; u <= 7; ++u)
        CHECK_FALSE(char_info(sl(7), label_of(CharKind::Rt, u)).degenerate);
}

TEST_CASE("canonicalized enumeration folds Galois-paired parameters") {
    auto folded = irr_plus(sl(7), RangeMode::Theorem, true);
    std::vector<std::string> got;
    for (const auto& l : folded) got.push_back(to_string(l));
    CHECK(got == std::vector<std::string>{"qs", "stprime(0)", "stprime(1)", "stprime(2)", "st(1)",
                                          "rt(1)", "rt(2)", "rt(3)", "rt(4)"});
}

TEST_CASE("character fields") {
    CHECK(char_info(sl(5), label_of(CharKind::Qs)).field == field_q());
    // theta(4,1) = 0, so the field collapses to Q
    FieldDesc f1 = char_info(sl(5), label_of(CharKind::St, 1)).field;
    CHECK(f1 == field_theta(4, 1));
    CHECK(f1.field_is_rational());
    FieldDesc f2 = char_info(su(5), label_of(CharKind::Rt, 1)).field;
    CHECK(f2 == field_theta(4, 1));
    CHECK(f2.field_is_rational());
    // theta(6,1) = 1: rational again
    CHECK(char_info(sl(7), label_of(CharKind::St, 1)).field.field_is_rational());
    // theta(12,1) = sqrt(3): genuine quadratic field
    FieldDesc f3 = char_info(sl(13), label_of(CharKind::St, 1)).field;
    CHECK(f3 == field_theta(12, 1));
    CHECK_FALSE(f3.field_is_rational());
    CHECK(f3.canonical_m() == 12);
    // rt of SL sits in Q(theta_{q+1})
    CHECK(char_info(sl(13), label_of(CharKind::Rt, 1)).field == field_theta(14, 1));
    CHECK(char_info(su(13), label_of(CharKind::St, 2)).field == field_theta(14, 2));
}

TEST_CASE("parameter validation rejects bad labels") {
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::St, 2)), ValidityError);   // (q-1)/2
    CHECK_THROWS_AS(char_info(sl(7), label_of(CharKind::St, 2)), ValidityError);   // (q-1)/3
    CHECK_THROWS_AS(char_info(sl(7), label_of(CharKind::St, 3)), ValidityError);   // (q-1)/2
    CHECK_THROWS_AS(char_info(sl(7), label_of(CharKind::St, 4)), ValidityError);   // 2(q-1)/3
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::St, 0)), ValidityError);
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::St, 4)), ValidityError);
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::StPrime, 0)), ValidityError);  // 3 | 4 fails
    CHECK_THROWS_AS(char_info(sl(7), label_of(CharKind::StPrime, 3)), ValidityError);
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::Rt, 0)), ValidityError);
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::Rt, 6)), ValidityError);
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::Qs, 1)), ValidityError);
    CHECK_THROWS_AS(char_info(sl(5), label_of(CharKind::St)), ValidityError);
    CHECK_THROWS_AS(Family::make(GroupKind::SL, 6), ParameterError);
    // proposition-range extras are structurally accepted for SU
    CHECK_NOTHROW(char_info(su(5), label_of(CharKind::Rt, 5)));
}

TEST_CASE("principal series flags") {
    CHECK_FALSE(is_principal_series(sl(7), label_of(CharKind::Rt, 1)));
    CHECK(is_principal_series(sl(7), label_of(CharKind::St, 1)));
    CHECK(is_principal_series(sl(7), label_of(CharKind::StPrime, 0)));
    CHECK(is_principal_series(sl(7), label_of(CharKind::Qs)));
    CHECK_FALSE(is_principal_series(su(7), label_of(CharKind::St, 1)));
    CHECK_FALSE(is_principal_series(su(5), label_of(CharKind::StPrime, 1)));
    CHECK(is_principal_series(su(7), label_of(CharKind::Rt, 1)));
    CHECK(is_principal_series(sl(2), label_of(CharKind::QCubed)));
    CHECK(is_principal_series(su(2), label_of(CharKind::QCubed)));
    CHECK_THROWS_AS(is_principal_series(su(7), label_of(CharKind::Qs)), UnsupportedError);
}

TEST_CASE("harish-chandra restrictions") {
    // st of SL: three complex pairs, all with the same value field
    auto hc = harish_chandra(sl(7), label_of(CharKind::St, 1));
    REQUIRE(hc.complex_pairs.size() == 3);
    CHECK(hc.real_chars.empty());
    CHECK(hc.total_degree == 6);
    CHECK_FALSE(hc.degenerate);
    CHECK(hc.complex_pairs[0].chi == theta_char(sl(7), 1));
    CHECK(hc.complex_pairs[1].chi == sl_torus_char(sl(7), 2, 1));
    CHECK(hc.complex_pairs[2].chi == sl_torus_char(sl(7), 1, 2));
    for (const auto& pr : hc.complex_pairs) {
        CHECK(pr.chi_bar == pr.chi.conjugate());
        CHECK(pr.delta_m == 6);
        CHECK(pr.delta_j == 1);
        CHECK_FALSE(pr.chi.is_real());
    }

    // stprime: a single pair on the cubic character
    auto hp = harish_chandra(sl(7), label_of(CharKind::StPrime, 1));
    REQUIRE(hp.complex_pairs.size() == 1);
    CHECK(hp.total_degree == 2);
    CHECK(hp.complex_pairs[0].chi == theta_char(sl(7), 2));
    CHECK(hp.complex_pairs[0].delta_m == 6);
    CHECK(hp.complex_pairs[0].delta_j == 2);

    // rt of SU: the pair {alpha^((q+1)u), conjugate}
    auto hr = harish_chandra(su(5), label_of(CharKind::Rt, 1));
    REQUIRE(hr.complex_pairs.size() == 1);
    CHECK(hr.total_degree == 2);
    CHECK(hr.complex_pairs[0].chi == su_torus_char(su(5), 6));
    CHECK(hr.complex_pairs[0].chi_bar == su_torus_char(su(5), 18));

    // non-principal-series labels have empty restrictions
    CHECK(harish_chandra(su(7), label_of(CharKind::St, 1)).total_degree == 0);
    CHECK(harish_chandra(su(5), label_of(CharKind::StPrime, 0)).total_degree == 0);
    CHECK(harish_chandra(sl(7), label_of(CharKind::Rt, 2)).total_degree == 0);

    // degenerate rt: real constituents, flagged
    auto hd = harish_chandra(su(5), label_of(CharKind::Rt, 2));
    CHECK(hd.complex_pairs.empty());
    REQUIRE(hd.real_chars.size() == 2);
    CHECK(hd.real_chars[0].is_real());
    CHECK(hd.degenerate);
    CHECK(hd.total_degree == 2);

    // permutation-route characters: real trivial constituents
    auto hq = harish_chandra(sl(5), label_of(CharKind::Qs));
    CHECK(hq.real_chars.size() == 2);
    CHECK(hq.real_chars[0].is_trivial());
    CHECK(hq.degenerate);
    CHECK(harish_chandra(sl(2), label_of(CharKind::QCubed)).total_degree == 1);
    CHECK_THROWS_AS(harish_chandra(su(5), label_of(CharKind::Qs)), UnsupportedError);
}

TEST_CASE("harish-chandra totals agree with the stored hc degrees") {
    for (long long q : kPrimePowers)
        for (Family F : {sl(q), su(q)})
            for (const auto& l : irr_plus(F, RangeMode::Union)) {
                CharInfo info = char_info(F, l);
                if (!info.hc_degree) continue;
                CHECK(harish_chandra(F, l).total_degree == *info.hc_degree);
            }
}

TEST_CASE("torus characters") {
    Family F = sl(7);
    TorusChar t = sl_torus_char(F, 2, 5);
    CHECK(t.eval_exponent(1, 0) == 2);
    CHECK(t.eval_exponent(0, 1) == 5);
    CHECK(t.eval_exponent(3, 4) == imod(3 * 2 + 4 * 5, 6));
    CHECK(t.conjugate() == sl_torus_char(F, -2, -5));
    CHECK(theta_char(F, 1).order() == 6);
    CHECK(theta_char(F, 2).order() == 3);
    CHECK(trivial_torus_char(F).is_trivial());
    CHECK(trivial_torus_char(F).is_real());

    Family G = su(5);
    TorusChar s = su_torus_char(G, 6);
    CHECK(s.modulus == 24);
    CHECK(s.order() == 4);
    CHECK(s.eval_exponent(3, 0) == 18);
    CHECK_FALSE(s.is_real());
    CHECK(su_torus_char(G, 12).is_real());  // order-2 character
}

TEST_CASE("induced decompositions and their degree sums") {
    auto degree_sum = [](const Family& F, const std::vector<CharLabel>& ls) {
        Integer s = 0;
        for (const auto& l : ls) s += degree_of(F, l.kind);
        return s;
    };

    // trivial character: the full flag permutation character
    auto d1 = induced_decomposition(sl(5), trivial_torus_char(sl(5)));
    REQUIRE(d1.size() == 4);
    CHECK(d1[0].kind == CharKind::Trivial);
    CHECK(d1[1].kind == CharKind::Qs);
    CHECK(d1[2].kind == CharKind::Qs);
    CHECK(d1[3].kind == CharKind::QCubed);
    CHECK(degree_sum(sl(5), d1) == 186);
    CHECK(degree_sum(sl(5), d1) == flag_index(sl(5)));

    auto d2 = induced_decomposition(su(2), trivial_torus_char(su(2)));
    REQUIRE(d2.size() == 2);
    CHECK(degree_sum(su(2), d2) == 9);

    // generic theta^(u): irreducible of full degree |G/B|
    auto d3 = induced_decomposition(sl(7), theta_char(sl(7), 1));
    REQUIRE(d3.size() == 1);
    CHECK(d3[0] == label_of(CharKind::St, 1));
    CHECK(degree_sum(sl(7), d3) == flag_index(sl(7)));

    // cubic theta: the three-way stprime split
    auto d4 = induced_decomposition(sl(7), theta_char(sl(7), 2));
    REQUIRE(d4.size() == 3);
    for (long long u = 0; u <= 2; ++u) CHECK(d4[u] == label_of(CharKind::StPrime, u));
    CHECK(degree_sum(sl(7), d4) == flag_index(sl(7)));
    CHECK(induced_decomposition(sl(7), theta_char(sl(7), 4)) == d4);

    // SU: theta^((q+1)u) gives rt(u), of full degree |G/B|
    auto d5 = induced_decomposition(su(5), su_torus_char(su(5), 6));
    REQUIRE(d5.size() == 1);
    CHECK(d5[0] == label_of(CharKind::Rt, 1));
    CHECK(degree_sum(su(5), d5) == flag_index(su(5)));
    CHECK(induced_decomposition(su(5), su_torus_char(su(5), 12))[0] ==
          label_of(CharKind::Rt, 2));

    // outside the decomposed cases
    CHECK_THROWS_AS(induced_decomposition(sl(7), sl_torus_char(sl(7), 1, 1)), UnsupportedError);
    CHECK_THROWS_AS(induced_decomposition(sl(7), theta_char(sl(7), 3)), UnsupportedError);
    CHECK_THROWS_AS(induced_decomposition(su(5), su_torus_char(su(5), 1)), UnsupportedError);
}

TEST_CASE("degree sums of all covered inductions equal |G/B|") {
    for (long long q : kPrimePowers) {
        Family F = sl(q);
        for (long long u = 0; u < q - 1; ++u) {
            std::vector<CharLabel> dec;
            try {
                dec = induced_decomposition(F, theta_char(F, u));
            } catch (const UnsupportedError&) {
                continue;
            }
            Integer s = 0;
            for (const auto& l : dec) s += degree_of(F, l.kind);
            CHECK(s == flag_index(F));
        }
        Family G = su(q);
        for (long long u = 0; u < q - 1; ++u) {
            std::vector<CharLabel> dec;
            try {
                dec = induced_decomposition(G, su_torus_char(G, (q + 1) * u));
            } catch (const UnsupportedError&) {
                continue;
            }
            Integer s = 0;
            for (const auto& l : dec) s += degree_of(G, l.kind);
            CHECK(s == flag_index(G));
        }
    }
}

TEST_CASE("label parsing and printing") {
    CHECK(to_string(label_of(CharKind::St, 3)) == "st(3)");
    CHECK(to_string(label_of(CharKind::Qs)) == "qs");
    CHECK(kind_from_name("rt") == CharKind::Rt);
    CHECK(kind_from_name("qcubed") == CharKind::QCubed);
    CHECK_FALSE(kind_from_name("nope").has_value());
    CHECK(range_mode_from_name("theorem") == RangeMode::Theorem);
    CHECK(range_mode_from_name("union") == RangeMode::Union);
    CHECK_FALSE(range_mode_from_name("prop").has_value());
}
