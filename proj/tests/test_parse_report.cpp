#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certival/certified_eval.hpp"
#include "certival/parse.hpp"
#include "certival/report.hpp"
#include "test_util.hpp"

using namespace certival;
using certival::testutil::poly_from_ints;

TEST_CASE("parser handles the headline inputs") {
    auto g = parse_polynomial("21x^8 - 42x^4 - 56x^3 + 3");
    REQUIRE(g.is_polynomial());
    UniPoly p = g.as_polynomial();
    CHECK(p.degree() == 8);
    CHECK(p.coeff(8) == Rational(21));
    CHECK(p.coeff(4) == Rational(-42));
    CHECK(p.coeff(3) == Rational(-56));
    CHECK(p.coeff(0) == Rational(3));

    auto quintic = parse_polynomial("x^5 - x - 1");
    CHECK(quintic.as_polynomial() == poly_from_ints({-1, -1, 0, 0, 0, 1}));

    auto rf = parse_polynomial("(1)/(1 - x^3 - x^7 + x^18)");
    CHECK(!rf.is_polynomial());
    CHECK(rf.den.degree() == 18);
    CHECK(rf.num.degree() == 0);
}

TEST_CASE("parser grammar corners") {
    CHECK(parse_polynomial("(x-1)(x-2)").as_polynomial() == poly_from_ints({2, -3, 1}));
    CHECK(parse_polynomial("2(x+1)").as_polynomial() == poly_from_ints({2, 2}));
    CHECK(parse_polynomial("-x^2").as_polynomial() == poly_from_ints({0, 0, -1}));
    CHECK(parse_polynomial("x/2").as_polynomial() ==
          UniPoly(std::vector<Rational>{Rational(0), Rational(1, 2)}));
    CHECK(parse_polynomial("1/2 x").as_polynomial() ==
          UniPoly(std::vector<Rational>{Rational(0), Rational(1, 2)}));
    CHECK(parse_polynomial("3.5x").as_polynomial() ==
          UniPoly(std::vector<Rational>{Rational(0), Rational(7, 2)}));
    CHECK(parse_polynomial("x^2/x").as_polynomial() == poly_from_ints({0, 1}));

    // round trip on the canonical print
    UniPoly p = poly_from_ints({3, 0, -56, -42, 0, 0, 0, 0, 21});
    CHECK(parse_polynomial(poly_to_string(p)).as_polynomial() == p);
}

TEST_CASE("parser reports errors with a position") {
    CHECK_THROWS_AS(parse_polynomial("x +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(x"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x^y"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/(x-x)"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("y + 1"), ParseError);
    try {
        parse_polynomial("x^2 + @");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("json report carries exact rationals, decimals, and errors") {
    Rational eps = Rational::from_string("1e-10");
    UniPoly p = poly_from_ints({2, -3, 1});
    std::vector<EvalFunction> fs{EvalFunction(poly_from_ints({0, 0, 1}))};
    auto report = certify_evaluations(p, fs, {}, eps);
    nlohmann::json j = report_to_json(report, fs, eps);

    REQUIRE(j.contains("roots"));
    REQUIRE(j.contains("evaluations"));
    REQUIRE(j["roots"].is_array());
    REQUIRE(j["evaluations"].is_array());
    CHECK(j["roots"].size() == 2);
    REQUIRE(j["evaluations"].size() == fs.size());
    CHECK(j["evaluations"][0].size() == j["roots"].size());
    for (const auto& root : j["roots"]) {
        CHECK(root.contains("re"));
        CHECK(root["re"].contains("num"));
        CHECK(root["re"].contains("den"));
        CHECK(root.contains("im"));
        CHECK(root.contains("multiplicity"));
        CHECK(root.contains("error"));
        CHECK(root.contains("decimal"));
        CHECK(root.contains("box"));
        CHECK(root["box"].size() >= 1);
        CHECK(root["box"][0].contains("lo"));
    }
    for (const auto& row : j["evaluations"]) {
        for (const auto& cell : row) {
            CHECK(cell.contains("re"));
            CHECK(cell.contains("im"));
            CHECK(cell.contains("error"));
            // the error field is an exact rational object
            CHECK(cell["error"].contains("num"));
            CHECK(cell["error"].contains("den"));
        }
    }
    // the decimal renderings parse back within the stated error of exact
    for (size_t jdx = 0; jdx < report.roots.size(); ++jdx) {
        auto& root = j["roots"][jdx];
        Rational re_exact(mpz_class(root["re"]["num"].get<std::string>()),
                          mpz_class(root["re"]["den"].get<std::string>()));
        CHECK(re_exact == report.roots[jdx].approx.re());
    }
}

namespace {

// minimal structural validator for the shipped schema subset
bool validate_schema(const nlohmann::json& schema, const nlohmann::json& value,
                     const nlohmann::json& root_schema) {
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        REQUIRE(ref.rfind(prefix, 0) == 0);
        return validate_schema(root_schema["definitions"][ref.substr(prefix.size())], value,
                               root_schema);
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& e : schema["enum"])
            if (e == value) hit = true;
        if (!hit) return false;
    }
    if (schema.contains("type")) {
        std::string t = schema["type"].get<std::string>();
        if (t == "object" && !value.is_object()) return false;
        if (t == "array" && !value.is_array()) return false;
        if (t == "string" && !value.is_string()) return false;
        if (t == "integer" && !value.is_number_integer()) return false;
        if (t == "boolean" && !value.is_boolean()) return false;
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) return false;
    if (schema.contains("properties") && value.is_object())
        for (auto& [key, sub] : schema["properties"].items())
            if (value.contains(key))
                if (!validate_schema(sub, value[key], root_schema)) return false;
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validate_schema(schema["items"], item, root_schema)) return false;
    return true;
}

nlohmann::json load_schema() {
    std::string path = std::string(CERTIVAL_SOURCE_DIR) + "/docs/report.schema.json";
    FILE* f = fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string text;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, f)) text.append(buf, n);
    fclose(f);
    return nlohmann::json::parse(text);
}

}  // namespace

TEST_CASE("reports validate against the shipped schema") {
    nlohmann::json schema = load_schema();
    Rational eps = Rational::from_string("1e-8");
    UniPoly p = poly_from_ints({-1, -1, 0, 0, 0, 1});
    std::vector<EvalFunction> fs{EvalFunction(poly_from_ints({0, 1}))};
    auto report = certify_evaluations(p, fs, {}, eps);
    nlohmann::json j = report_to_json(report, fs, eps);
    CHECK(validate_schema(schema, j, schema));
    CHECK(j["roots"].size() == j["evaluations"][0].size());

    SignVerdict v;
    v.kind = SignVerdict::Kind::AllNonnegative;
    v.n0_star = 10;
    CHECK(validate_schema(schema, verdict_to_json(v), schema));
}

TEST_CASE("verdict rendering") {
    SignVerdict v;
    v.kind = SignVerdict::Kind::Counterexample;
    v.n0 = 1;
    v.value = Rational(-1);
    auto j = verdict_to_json(v);
    CHECK(j["verdict"]["outcome"] == "counterexample");
    CHECK(j["verdict"]["n0"] == 1);
    CHECK(verdict_to_text(v).find("R_1") != std::string::npos);

    SignVerdict ok;
    ok.kind = SignVerdict::Kind::AllNonnegative;
    ok.n0_star = 204;
    CHECK(verdict_to_json(ok)["verdict"]["outcome"] == "all_nonnegative");
    CHECK(verdict_to_json(ok)["verdict"]["n0_star"] == 204);

    SignVerdict na;
    na.kind = SignVerdict::Kind::NotApplicable;
    na.reason = "q has repeated roots";
    CHECK(verdict_to_json(na)["verdict"]["outcome"] == "not_applicable");
}

#ifdef CERTIVAL_BIN_PATH
#include <array>
#include <cstdio>

namespace {
int run_cli(const std::string& args, std::string* output = nullptr) {
    std::string cmd = std::string(CERTIVAL_BIN_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    if (output) *output = out;
    return WEXITSTATUS(status);
}
}  // namespace

TEST_CASE("cli exit codes per error class") {
    std::string out;
    CHECK(run_cli("roots \"x^2-2\" --epsilon 1e-6", &out) == 0);
    CHECK(out.find("roots (2)") != std::string::npos);

    // input error
    CHECK(run_cli("roots \"x^2 +\"") == 1);
    CHECK(run_cli("eval \"x^2-2\" --functions \"1/(x-x)\"") == 1);

    // not applicable
    CHECK(run_cli("nonneg \"1\" \"1-2x+x^2\"") == 2);

    // internal cap: modulus tie is undecidable
    CHECK(run_cli("nonneg \"1\" \"(x-2)(x^2+4)\"") == 3);

    // internal cap: evaluating a function at its own pole exhausts the
    // Hölder disk search
    CHECK(run_cli("eval \"x-1\" --functions \"(1)/(x-1)\" --epsilon 1e-4") == 3);

    // counterexample is a successful verdict
    CHECK(run_cli("nonneg \"(1-2x)/(1-x)\"", &out) == 0);
    CHECK(out.find("R_1") != std::string::npos);
}

TEST_CASE("cli json output is well formed") {
    std::string out;
    CHECK(run_cli("--output json roots \"x^2+1\" --epsilon 1e-3", &out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["roots"].size() == 2);
    CHECK(j["roots"][0]["im"]["num"] != "0");
}
#endif
