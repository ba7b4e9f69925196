// records.hpp: serialization of determinant results as JSON, CSV, and text.
//
// Records are plain serialization-level data so that JSON round-trips are
// exact: rational coefficients travel as "numerator/denominator" strings,
// rational determinant classes as signed squarefree integers, and field
// elements as coefficient vectors in the power basis of theta(m,1) together
// with a human-readable rendering.  No floating point anywhere.

#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthdet/chars.hpp"
#include "orthdet/common.hpp"
#include "orthdet/cyclo.hpp"
#include "orthdet/det.hpp"

namespace orthdet {
namespace records {

using chartab::CharLabel;
using chartab::Family;
using groups::GroupKind;
using json = nlohmann::ordered_json;

inline std::string rat_str(const Rational& r) {
    return Integer(boost::multiprecision::numerator(r)).str() + "/" +
           Integer(boost::multiprecision::denominator(r)).str();
}

inline Rational rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

struct DetPayload {
    bool rational = true;
    Integer value;                 // signed squarefree integer (rational case)
    long long m = 1;               // power-basis conductor (field case)
    std::vector<Rational> coeffs;  // coordinates in the power basis of theta(m,1)
    std::string text;              // human-readable rendering

    bool operator==(const DetPayload&) const = default;
};

struct OutputRecord {
    std::string family;  // "sl" or "su"
    long long q = 0;
    std::string kind;  // cli identifier: qs, qcubed, stprime, st, rt
    std::optional<long long> u;
    Integer degree;
    bool field_rational = true;
    long long field_m = 0, field_j = 0;   // theta descriptor when not rational
    std::optional<DetPayload> det;        // absent for degenerate labels
    std::string route;                    // empty when det is absent
    bool degenerate = false;

    bool operator==(const OutputRecord&) const = default;
};

// ------------------------------------------------------------------
// value rendering
// ------------------------------------------------------------------

// rational value of a representative that is constant in its field (a class
// representative can be rational even when the character field is not)
inline std::optional<Rational> constant_value(const cyclo::RealElem& rep) {
    for (size_t i = 1; i < rep.c.size(); ++i)
        if (rep.c[i] != 0) return std::nullopt;
    return rep.c.empty() ? Rational(0) : rep.c[0];
}

// render a square-class representative; field elements of the tabulated
// shape q(2 - theta(m,k)) are detected by exact comparison, anything else
// falls back to an explicit power-basis polynomial
inline std::string render_value(long long q, const cyclo::RealElem& rep) {
    if (auto r = constant_value(rep)) {
        contract(boost::multiprecision::denominator(*r) == 1,
                 "render_value: class representative is not an integer");
        return Integer(boost::multiprecision::numerator(*r)).str();
    }
    for (long long k = 1; 2 * k <= rep.m; ++k) {
        cyclo::RealElem t = cyclo::theta(rep.m, k);
        if (t.m != rep.m) {
            // theta reduced into a subfield (or an equal field under a
            // smaller conductor key); lift it back when possible
            if (t.m != 1 && rep.m % t.m != 0) continue;
            t = cyclo::re_lift(t, rep.m);
        }
        cyclo::RealElem cand =
            cyclo::re_scale(cyclo::re_sub(cyclo::re_lift(cyclo::re_rat(2), rep.m), t),
                            Rational(q));
        if (cyclo::re_eq(rep, cand))
            return std::to_string(q) + "*(2 - theta(" + std::to_string(rep.m) + "," +
                   std::to_string(k) + "))";
    }
    std::string s;
    for (size_t i = 0; i < rep.c.size(); ++i) {
        if (rep.c[i] == 0) continue;
        std::string term = rat_str(rep.c[i]);
        if (i > 0) {
            term += "*theta(" + std::to_string(rep.m) + ",1)";
            if (i > 1) term += "^" + std::to_string(i);
        }
        s += s.empty() ? term : " + " + term;
    }
    return s.empty() ? "0" : s;
}

inline DetPayload make_payload(long long q, const cyclo::RealElem& rep) {
    DetPayload p;
    p.text = render_value(q, rep);
    if (auto r = constant_value(rep)) {
        p.rational = true;
        p.value = Integer(boost::multiprecision::numerator(*r));
        p.m = 1;
        return p;
    }
    p.rational = false;
    p.m = rep.m;
    p.coeffs = rep.c;
    return p;
}

// ------------------------------------------------------------------
// record construction
// ------------------------------------------------------------------

inline OutputRecord make_record(const Family& F, const CharLabel& l,
                                chartab::RangeMode mode = chartab::RangeMode::Theorem) {
    chartab::CharInfo info = chartab::char_info(F, l);
    OutputRecord r;
    r.family = F.kind == GroupKind::SL ? "sl" : "su";
    r.q = F.q;
    r.kind = chartab::to_string(l.kind);
    if (l.has_param()) r.u = l.u;
    r.degree = info.degree;
    r.field_rational = info.field.rational;
    if (!info.field.rational) {
        r.field_m = info.field.m;
        r.field_j = info.field.j;
    }
    r.degenerate = info.degenerate;
    if (!info.degenerate) {
        detengine::DetResult d = detengine::det_main(F, l, mode);
        r.route = detengine::to_string(d.route);
        r.det = make_payload(F.q, d.value.rep);
    }
    return r;
}

inline std::vector<OutputRecord> make_table(const Family& F,
                                            chartab::RangeMode mode = chartab::RangeMode::Theorem) {
    std::vector<OutputRecord> out;
    for (const CharLabel& l : chartab::irr_plus(F, mode)) out.push_back(make_record(F, l, mode));
    return out;
}

// ------------------------------------------------------------------
// JSON
// ------------------------------------------------------------------

inline json to_json(const OutputRecord& r) {
    json j;
    j["family"] = r.family;
    j["q"] = r.q;
    j["kind"] = r.kind;
    j["u"] = r.u ? json(*r.u) : json(nullptr);
    j["degree"] = r.degree.convert_to<long long>();
    if (r.field_rational)
        j["field"] = {{"type", "Q"}};
    else
        j["field"] = {{"type", "theta"}, {"m", r.field_m}, {"j", r.field_j}};
    if (r.det) {
        json d;
        if (r.det->rational) {
            d["type"] = "rational";
            d["value"] = r.det->value.convert_to<long long>();
        } else {
            d["type"] = "field_element";
            d["m"] = r.det->m;
            std::vector<std::string> cs;
            for (const Rational& c : r.det->coeffs) cs.push_back(rat_str(c));
            d["coeffs"] = cs;
        }
        d["text"] = r.det->text;
        j["det"] = d;
        j["route"] = r.route;
    } else {
        j["det"] = nullptr;
        j["route"] = nullptr;
    }
    j["degenerate"] = r.degenerate;
    return j;
}

inline OutputRecord from_json(const json& j) {
    OutputRecord r;
    r.family = j.at("family").get<std::string>();
    r.q = j.at("q").get<long long>();
    r.kind = j.at("kind").get<std::string>();
    if (!j.at("u").is_null()) r.u = j.at("u").get<long long>();
    r.degree = Integer(j.at("degree").get<long long>());
    const json& f = j.at("field");
    std::string ftype = f.at("type").get<std::string>();
    if (ftype == "Q") {
        r.field_rational = true;
    } else if (ftype == "theta") {
        r.field_rational = false;
        r.field_m = f.at("m").get<long long>();
        r.field_j = f.at("j").get<long long>();
    } else {
        throw ParameterError("from_json: unknown field type " + ftype);
    }
    if (!j.at("det").is_null()) {
        const json& d = j.at("det");
        DetPayload p;
        std::string dtype = d.at("type").get<std::string>();
        if (dtype == "rational") {
            p.rational = true;
            p.value = Integer(d.at("value").get<long long>());
        } else if (dtype == "field_element") {
            p.rational = false;
            p.m = d.at("m").get<long long>();
            for (const auto& c : d.at("coeffs")) p.coeffs.push_back(rat_parse(c.get<std::string>()));
        } else {
            throw ParameterError("from_json: unknown det type " + dtype);
        }
        p.text = d.at("text").get<std::string>();
        r.det = p;
        r.route = j.at("route").get<std::string>();
    }
    r.degenerate = j.at("degenerate").get<bool>();
    return r;
}

inline std::string emit_json(const std::vector<OutputRecord>& rs) {
    json arr = json::array();
    for (const OutputRecord& r : rs) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

inline std::vector<OutputRecord> parse_json(const std::string& s) {
    json arr = json::parse(s);
    if (!arr.is_array()) throw ParameterError("parse_json: top-level value must be an array");
    std::vector<OutputRecord> out;
    for (const auto& j : arr) out.push_back(from_json(j));
    return out;
}

// ------------------------------------------------------------------
// CSV and text
// ------------------------------------------------------------------

inline std::string field_display(const OutputRecord& r) {
    if (r.field_rational) return "Q";
    return chartab::FieldDesc{false, r.field_m, r.field_j}.display();
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline const char* csv_header() { return "family,q,kind,u,degree,field,det,route"; }

inline std::string csv_row(const OutputRecord& r) {
    std::ostringstream os;
    os << r.family << ',' << r.q << ',' << r.kind << ',';
    if (r.u) os << *r.u;
    os << ',' << r.degree.str() << ',' << csv_quote(field_display(r)) << ',';
    if (r.det) os << csv_quote(r.det->text);
    os << ',' << r.route;
    return os.str();
}

inline std::string emit_csv(const std::vector<OutputRecord>& rs) {
    std::string out = std::string(csv_header()) + "\n";
    for (const OutputRecord& r : rs) out += csv_row(r) + "\n";
    return out;
}

inline std::string emit_text(const std::vector<OutputRecord>& rs) {
    std::vector<std::array<std::string, 8>> rows;
    rows.push_back({"family", "q", "kind", "u", "degree", "field", "det", "route"});
    for (const OutputRecord& r : rs) {
        std::array<std::string, 8> row;
        row[0] = r.family;
        row[1] = std::to_string(r.q);
        row[2] = r.kind;
        row[3] = r.u ? std::to_string(*r.u) : "-";
        row[4] = r.degree.str();
        row[5] = field_display(r);
        row[6] = r.det ? r.det->text : "(degenerate: open question)";
        row[7] = r.det ? r.route : "-";
        rows.push_back(row);
    }
    std::array<size_t, 8> w{};
    for (const auto& row : rows)
        for (int i = 0; i < 8; ++i) w[i] = std::max(w[i], row[i].size());
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (int i = 0; i < 8; ++i) {
            line += row[i];
            if (i + 1 < 8) line += std::string(w[i] - row[i].size() + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace records
}  // namespace orthdet
