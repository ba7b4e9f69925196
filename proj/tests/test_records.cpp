// Serialization tests: exact JSON round-trips, pinned rows, CSV layout,
// and the human-readable determinant rendering.

#include <catch2/catch_amalgamated.hpp>

#include "orthdet/records.hpp"

using namespace orthdet;
using chartab::CharKind;
using chartab::Family;
using chartab::RangeMode;
using groups::GroupKind;
using records::OutputRecord;

namespace {

Family sl(long long q) { return Family::make(GroupKind::SL, q); }
Family su(long long q) { return Family::make(GroupKind::SU, q); }

}  // namespace

TEST_CASE("rational string round-trip") {
    CHECK(records::rat_str(Rational(3, 4)) == "3/4");
    CHECK(records::rat_str(Rational(-3, 7)) == "-3/7");
    CHECK(records::rat_str(Rational(21)) == "21/1");
    CHECK(records::rat_parse("3/4") == Rational(3, 4));
    CHECK(records::rat_parse("-3/7") == Rational(-3, 7));
    CHECK(records::rat_parse("21/1") == Rational(21));
    CHECK(records::rat_parse("21") == Rational(21));
    for (long long n : {-5, -1, 0, 7, 100})
        for (long long d : {1, 2, 3, 97}) {
            Rational r(n, d);
            CHECK(records::rat_parse(records::rat_str(r)) == r);
        }
}

TEST_CASE("determinant rendering") {
    using detengine::det_main;
    // rational classes render as bare integers
    CHECK(records::render_value(7, det_main(sl(7), {CharKind::Qs}).value.rep) == "57");
    CHECK(records::render_value(7, det_main(sl(7), {CharKind::St, 1}).value.rep) == "21");
    CHECK(records::render_value(5, det_main(su(5), {CharKind::Rt, 1}).value.rep) == "5");
    // genuine field elements render in the tabulated shape
    CHECK(records::render_value(11, det_main(sl(11), {CharKind::St, 1}).value.rep) ==
          "11*(2 - theta(10,2))");
    CHECK(records::render_value(11, det_main(sl(11), {CharKind::St, 3}).value.rep) ==
          "11*(2 - theta(10,4))");
    // for q = 13 the angle collapses: theta_12^(2) = 1, so the value is the
    // rational 13 even though the character field is Q(theta(12,1))
    CHECK(records::render_value(13, det_main(su(13), {CharKind::Rt, 1}).value.rep) == "13");
    // fallback: a plain power-basis element
    CHECK(records::render_value(3, cyclo::theta(12, 1)) == "1/1*theta(12,1)");
    cyclo::RealElem mixed = cyclo::re_make(7, {Rational(1, 2), Rational(0), Rational(1)});
    CHECK(records::render_value(3, mixed) == "1/2 + 1/1*theta(7,1)^2");
}

TEST_CASE("record construction smoke") {
    OutputRecord r = records::make_record(sl(7), {CharKind::St, 1});
    CHECK(r.family == "sl");
    CHECK(r.q == 7);
    CHECK(r.kind == "st");
    REQUIRE(r.u.has_value());
    CHECK(*r.u == 1);
    CHECK(r.degree == 456);
    CHECK_FALSE(r.field_rational);
    CHECK(r.field_m == 6);
    CHECK(r.field_j == 1);
    REQUIRE(r.det.has_value());
    CHECK(r.det->rational);
    CHECK(r.det->value == 21);
    CHECK(r.det->text == "21");
    CHECK(r.route == "closed-form");
    CHECK_FALSE(r.degenerate);

    OutputRecord g = records::make_record(su(3), {CharKind::Rt, 1});
    CHECK(g.degenerate);
    CHECK_FALSE(g.det.has_value());
    CHECK(g.route.empty());

    OutputRecord f = records::make_record(sl(11), {CharKind::St, 1});
    REQUIRE(f.det.has_value());
    CHECK_FALSE(f.det->rational);
    CHECK(f.det->m == 10);
    CHECK(f.det->coeffs.size() == cyclo::theta(10, 1).c.size());
    CHECK(f.det->text == "11*(2 - theta(10,2))");

    // constant-in-field representatives are emitted as rational values
    OutputRecord c13 = records::make_record(sl(13), {CharKind::St, 1});
    REQUIRE(c13.det.has_value());
    CHECK(c13.det->rational);
    CHECK(c13.det->value == 13);
    CHECK_FALSE(c13.field_rational);
    CHECK(c13.field_m == 12);

    // range-mode extras are computable only under the wider mode
    CHECK_THROWS_AS(records::make_record(su(5), {CharKind::Rt, 5}), ValidityError);
    OutputRecord e = records::make_record(su(5), {CharKind::Rt, 5}, RangeMode::Union);
    REQUIRE(e.det.has_value());
    CHECK(e.det->rational);
    CHECK(e.det->value == 5);
}

TEST_CASE("pinned tables") {
    auto tbl = records::make_table(sl(2));
    REQUIRE(tbl.size() == 2);
    CHECK(tbl[0].kind == "qs");
    CHECK(tbl[0].det->value == 7);
    CHECK(tbl[1].kind == "qcubed");
    CHECK(tbl[1].det->value == 21);

    auto tsu2 = records::make_table(su(2));
    REQUIRE(tsu2.size() == 1);
    CHECK(tsu2[0].kind == "qcubed");
    CHECK(tsu2[0].det->value == 1);  // 9 reduced

    // su(3): two st labels with det 3, one degenerate rt
    auto tsu3 = records::make_table(su(3));
    REQUIRE(tsu3.size() == 3);
    CHECK(tsu3[0].kind == "st");
    CHECK(*tsu3[0].u == 1);
    CHECK(tsu3[0].det->value == 3);
    CHECK(tsu3[1].kind == "st");
    CHECK(*tsu3[1].u == 3);
    CHECK(tsu3[2].kind == "rt");
    CHECK(tsu3[2].degenerate);
    CHECK_FALSE(tsu3[2].det.has_value());

    // sl(7): qs, stprime(0..2), st(1), st(5), rt labels in deterministic order
    auto tsl7 = records::make_table(sl(7));
    CHECK(tsl7.size() == 13);
    CHECK(tsl7[0].kind == "qs");
    CHECK(tsl7[1].kind == "stprime");
    CHECK(tsl7[0].det->value == 57);
    for (const auto& r : tsl7) {
        CHECK(r.det.has_value());  // no degenerate labels for SL
        CHECK(r.route == "closed-form");
    }
}

TEST_CASE("JSON round-trip is exact for all tables up to q = 13") {
    for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 13})
        for (Family F : {sl(q), su(q)})
            for (RangeMode mode :
                 {RangeMode::Theorem, RangeMode::Proposition, RangeMode::Union}) {
                auto tbl = records::make_table(F, mode);
                std::string s = records::emit_json(tbl);
                auto back = records::parse_json(s);
                INFO("family " << (F.kind == GroupKind::SL ? "sl" : "su") << " q = " << q
                               << " mode " << chartab::to_string(mode));
                REQUIRE(back.size() == tbl.size());
                for (size_t i = 0; i < tbl.size(); ++i) CHECK(back[i] == tbl[i]);
            }
}

TEST_CASE("JSON shape") {
    auto tbl = records::make_table(su(3));
    records::json arr = records::json::parse(records::emit_json(tbl));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 3);
    const auto& st1 = arr[0];
    CHECK(st1.at("family") == "su");
    CHECK(st1.at("q") == 3);
    CHECK(st1.at("kind") == "st");
    CHECK(st1.at("u") == 1);
    CHECK(st1.at("degree") == 14);
    CHECK(st1.at("field").at("type") == "theta");
    CHECK(st1.at("field").at("m") == 4);
    CHECK(st1.at("det").at("type") == "rational");
    CHECK(st1.at("det").at("value") == 3);
    CHECK(st1.at("route") == "closed-form");
    CHECK(st1.at("degenerate") == false);
    const auto& rt1 = arr[2];
    CHECK(rt1.at("det").is_null());
    CHECK(rt1.at("route").is_null());
    CHECK(rt1.at("degenerate") == true);

    // field elements carry exact coefficient strings
    auto rec = records::make_record(sl(11), {CharKind::St, 1});
    records::json j = records::to_json(rec);
    CHECK(j.at("det").at("type") == "field_element");
    CHECK(j.at("det").at("m") == 10);
    for (const auto& c : j.at("det").at("coeffs")) {
        std::string s = c.get<std::string>();
        CHECK(s.find('/') != std::string::npos);
    }
    CHECK(records::from_json(j) == rec);

    // malformed input is rejected
    CHECK_THROWS_AS(records::parse_json("{}"), ParameterError);
    records::json bad = records::to_json(rec);
    bad["det"]["type"] = "imaginary";
    CHECK_THROWS_AS(records::from_json(bad), ParameterError);
}

TEST_CASE("CSV layout") {
    CHECK(std::string(records::csv_header()) == "family,q,kind,u,degree,field,det,route");
    auto tbl = records::make_table(sl(2));
    std::string csv = records::emit_csv(tbl);
    CHECK(csv == "family,q,kind,u,degree,field,det,route\n"
                 "sl,2,qs,,6,Q,7,closed-form\n"
                 "sl,2,qcubed,,8,Q,21,closed-form\n");

    // fields containing commas are quoted
    auto rec = records::make_record(sl(11), {CharKind::St, 1});
    std::string row = records::csv_row(rec);
    CHECK(row ==
          "sl,11,st,1,1596,\"Q(theta(10,1))\",\"11*(2 - theta(10,2))\",closed-form");

    // degenerate rows have empty det and route columns
    std::string drow = records::csv_row(records::make_record(su(3), {CharKind::Rt, 1}));
    CHECK(drow.substr(drow.size() - 2) == ",,");
}

TEST_CASE("text table") {
    auto tbl = records::make_table(su(3));
    std::string txt = records::emit_text(tbl);
    CHECK(txt.find("family") != std::string::npos);
    CHECK(txt.find("degenerate: open question") != std::string::npos);
    // one header line plus one line per record
    CHECK(std::count(txt.begin(), txt.end(), '\n') == (long)tbl.size() + 1);
}

TEST_CASE("csv quoting corner cases") {
    CHECK(records::csv_quote("plain") == "plain");
    CHECK(records::csv_quote("a,b") == "\"a,b\"");
    CHECK(records::csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
