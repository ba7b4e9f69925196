// Command-line surface: single determinants (det), full tables (table), and
// verification sweeps (verify) running both engines against each other and
// against the explicit-module oracle.  Formats: aligned text, JSON (one
// object per record under a top-level array), CSV.
#include <CLI11.hpp>

#include <orthdet/oracle.hpp>
#include <orthdet/records.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

namespace {

using namespace orthdet;
using chartab::CharKind;
using chartab::CharLabel;
using chartab::Family;
using chartab::RangeMode;
using groups::GroupKind;
using records::json;
using records::OutputRecord;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return (char)std::tolower(c); });
    return s;
}

GroupKind parse_family(const std::string& s) {
    std::string t = lower(s);
    if (t == "sl") return GroupKind::SL;
    if (t == "su") return GroupKind::SU;
    throw ParameterError("unknown family '" + s + "' (expected SL or SU)");
}

RangeMode parse_mode(const std::string& s) {
    auto m = chartab::range_mode_from_name(lower(s));
    if (!m)
        throw ParameterError("unknown range mode '" + s +
                             "' (expected theorem, proposition, or union)");
    return *m;
}

CharKind parse_kind(const std::string& s) {
    auto k = chartab::kind_from_name(lower(s));
    if (!k)
        throw ParameterError("unknown character kind '" + s +
                             "' (expected qs, qcubed, stprime, st, or rt)");
    return *k;
}

// flags shared by every subcommand; zero means "use the module default"
struct CommonOpts {
    long long max_q = 0;
    long long precision_bits = 0;
    long long denominator_bound = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--max-q", c.max_q,
                    "cap on q (default: 257 for det/table, 32 for group-building "
                    "verify stages)");
    cmd->add_option("--precision-bits", c.precision_bits,
                    "interval-arithmetic precision ceiling for square-class "
                    "decisions (default 512)");
    cmd->add_option("--denominator-bound", c.denominator_bound,
                    "starting denominator bound for rational square witnesses "
                    "(default 10^6; grows x1000 per round, 4 rounds)");
}

cyclo::SquareOpts square_opts(const CommonOpts& c) {
    cyclo::SquareOpts sq;
    if (c.precision_bits > 0) sq.max_precision_bits = c.precision_bits;
    if (c.denominator_bound > 0) sq.den_start = Integer(c.denominator_bound);
    return sq;
}

// q values above the cyclotomic conductor wall cannot be represented anyway;
// the default det/table cap sits exactly there.
constexpr long long kTableMaxQ = 257;

void check_q_cap(long long q, const CommonOpts& c) {
    long long cap = c.max_q > 0 ? c.max_q : kTableMaxQ;
    if (q > cap)
        throw CapacityError("q = " + std::to_string(q) + " exceeds the cap " +
                            std::to_string(cap) + " (raise with --max-q)");
}

void emit_records(const std::vector<OutputRecord>& rows, const std::string& format) {
    std::string out;
    if (format == "json")
        out = records::emit_json(rows);
    else if (format == "csv")
        out = records::emit_csv(rows);
    else
        out = records::emit_text(rows);
    std::fputs(out.c_str(), stdout);
}

// ------------------------------------------------------------------
// det
// ------------------------------------------------------------------

struct DetArgs {
    std::string family;
    long long q = 0;
    std::string char_name;
    long long u = CharLabel::kNoParam;
    std::string format = "text";
    std::string range_mode = "theorem";
    CommonOpts common;
};

int cmd_det(const DetArgs& a) {
    check_q_cap(a.q, a.common);
    Family F = Family::make(parse_family(a.family), a.q);
    CharLabel l = chartab::label_of(parse_kind(a.char_name), a.u);
    RangeMode mode = parse_mode(a.range_mode);
    // surfaces ValidityError / DegeneracyError before any output is written
    detengine::det_main(F, l, mode);
    emit_records({records::make_record(F, l, mode)}, a.format);
    return 0;
}

// ------------------------------------------------------------------
// table
// ------------------------------------------------------------------

struct TableArgs {
    std::string family;
    long long q = 0;
    std::string format = "text";
    std::string range_mode = "theorem";
    CommonOpts common;
};

int cmd_table(const TableArgs& a) {
    check_q_cap(a.q, a.common);
    Family F = Family::make(parse_family(a.family), a.q);
    emit_records(records::make_table(F, parse_mode(a.range_mode)), a.format);
    return 0;
}

// ------------------------------------------------------------------
// verify
// ------------------------------------------------------------------

struct VerifyArgs {
    std::string family;  // empty = both
    std::vector<long long> qs;
    std::string effort = "fast";
    std::string range_mode = "theorem";
    CommonOpts common;
};

struct Totals {
    long long matches = 0, mismatches = 0, undecided = 0, skipped = 0;
};

json cross_check_json(const detengine::CrossCheckReport& rep, Totals& t) {
    json lines = json::array();
    for (const auto& ln : rep.lines)
        lines.push_back({{"label", chartab::to_string(ln.label)},
                         {"comparison", ln.comparison},
                         {"verdict", ln.skipped ? "skipped" : to_string(ln.verdict)},
                         {"detail", ln.detail}});
    t.matches += rep.matches;
    t.mismatches += rep.mismatches;
    t.undecided += rep.undecided;
    t.skipped += rep.skipped;
    return {{"matches", rep.matches},
            {"mismatches", rep.mismatches},
            {"undecided", rep.undecided},
            {"skipped", rep.skipped},
            {"lines", lines}};
}

json oracle_json(const oracle::VerifyReport& rep, Totals& t) {
    json lines = json::array();
    for (const auto& ln : rep.lines)
        lines.push_back({{"label", chartab::to_string(ln.label)},
                         {"method", ln.method},
                         {"level", ln.level},
                         {"verdict", ln.skipped ? "skipped" : to_string(ln.verdict)},
                         {"detail", ln.detail}});
    t.matches += rep.matches;
    t.mismatches += rep.mismatches;
    t.undecided += rep.undecided;
    t.skipped += rep.skipped;
    return {{"matches", rep.matches},
            {"mismatches", rep.mismatches},
            {"undecided", rep.undecided},
            {"skipped", rep.skipped},
            {"lines", lines}};
}

int cmd_verify(const VerifyArgs& a) {
    RangeMode mode = parse_mode(a.range_mode);
    if (a.effort != "fast" && a.effort != "slow")
        throw ParameterError("unknown effort '" + a.effort + "' (expected fast or slow)");

    std::vector<GroupKind> kinds;
    if (a.family.empty())
        kinds = {GroupKind::SL, GroupKind::SU};
    else
        kinds = {parse_family(a.family)};

    oracle::OracleOpts oopts;
    oopts.square = square_opts(a.common);
    // fast covers induced modules through q = 4 (dim <= 105); slow reaches the
    // 126- and 186-dimensional q = 5 modules
    oopts.max_dim = a.effort == "slow" ? 200 : 105;
    long long group_cap = a.common.max_q > 0 ? a.common.max_q : groups::GroupSpec::kDefaultMaxQ;

    Totals t;
    json runs = json::array();
    for (long long q : a.qs) {
        for (GroupKind kind : kinds) {
            Family F = Family::make(kind, q);
            json run;
            run["family"] = kind == GroupKind::SL ? "sl" : "su";
            run["q"] = q;
            run["cross_check"] = cross_check_json(
                detengine::cross_check(F, mode, square_opts(a.common)), t);
            try {
                groups::Group G = groups::make_group(kind, q, group_cap);
                run["oracle"] = oracle_json(oracle::verify_family(G, mode, oopts), t);
                if (q <= 5) {
                    oracle::UnipotentCheck uc = oracle::check_unipotent_counts(G);
                    run["unipotent_counts"] = {{"checked", true}, {"ok", uc.ok},
                                               {"detail", uc.detail}};
                    ++(uc.ok ? t.matches : t.mismatches);
                } else {
                    run["unipotent_counts"] = {{"checked", false}, {"ok", nullptr},
                                               {"detail", "enumeration wired for q <= 5"}};
                }
            } catch (const CapacityError& e) {
                run["oracle"] = {{"skipped", e.what()}};
                run["unipotent_counts"] = {{"checked", false}, {"ok", nullptr},
                                           {"detail", e.what()}};
                ++t.skipped;
            }
            runs.push_back(std::move(run));
        }
    }

    const char* verdict = t.mismatches > 0   ? "mismatch"
                          : t.undecided > 0  ? "undecided"
                                             : "match";
    json summary = {{"range_mode", chartab::to_string(mode)},
                    {"effort", a.effort},
                    {"runs", runs},
                    {"totals",
                     {{"matches", t.matches},
                      {"mismatches", t.mismatches},
                      {"undecided", t.undecided},
                      {"skipped", t.skipped}}},
                    {"verdict", verdict}};
    std::fputs((summary.dump(2) + "\n").c_str(), stdout);
    return t.mismatches > 0 ? 2 : t.undecided > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal determinants of SL3(q) and SU3(q)"};
    app.require_subcommand(1);
    app.footer(
        "character kinds (--char values; also the 'kind' column in tables):\n"
        "  qs       the unipotent character of degree q^2+q\n"
        "  qcubed   the Steinberg character of degree q^3\n"
        "  stprime  cubic-case principal-series constituents, u in {0,1,2}\n"
        "  st       parameterized series st(u) (needs --u)\n"
        "  rt       parameterized series rt(u) (needs --u)\n"
        "\n"
        "exit codes: 0 success / all match; 1 invalid or degenerate parameters;\n"
        "            2 verification mismatch; 3 verification undecided");

    DetArgs det;
    CLI::App* cdet = app.add_subcommand("det", "print one orthogonal determinant");
    cdet->add_option("--family", det.family, "SL or SU (case-insensitive)")->required();
    cdet->add_option("--q", det.q, "prime power q >= 2")->required();
    cdet->add_option("--char", det.char_name, "character kind (see footer)")->required();
    cdet->add_option("--u", det.u, "series parameter for stprime/st/rt");
    cdet->add_option("--format", det.format, "text, json, or csv (default text)")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cdet->add_option("--range-mode", det.range_mode,
                     "rt parameter range: theorem, proposition, or union");
    add_common(cdet, det.common);

    TableArgs table;
    CLI::App* ctab = app.add_subcommand("table", "print all even-degree '+' rows for one q");
    ctab->add_option("--family", table.family, "SL or SU (case-insensitive)")->required();
    ctab->add_option("--q", table.q, "prime power q >= 2")->required();
    ctab->add_option("--format", table.format, "text, json, or csv (default text)")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    ctab->add_option("--range-mode", table.range_mode,
                     "rt parameter range: theorem, proposition, or union");
    add_common(ctab, table.common);

    VerifyArgs verify;
    CLI::App* cver = app.add_subcommand(
        "verify", "cross-check engines and explicit modules; JSON summary");
    cver->add_option("--family", verify.family, "SL or SU; both if omitted");
    cver->add_option("--q", verify.qs, "comma-separated q list, e.g. 2,3,4")
        ->required()
        ->delimiter(',');
    cver->add_option("--effort", verify.effort,
                     "fast (induced modules to dim 105) or slow (to dim 200)")
        ->check(CLI::IsMember({"fast", "slow"}));
    cver->add_option("--range-mode", verify.range_mode,
                     "rt parameter range: theorem, proposition, or union");
    add_common(cver, verify.common);

    int rc = 0;
    cdet->callback([&] { rc = cmd_det(det); });
    ctab->callback([&] { rc = cmd_table(table); });
    cver->callback([&] { rc = cmd_verify(verify); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return rc;
}
