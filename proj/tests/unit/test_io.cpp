#include "qbound/io.hpp"
#include "qbound/product.hpp"
#include "qbound/report.hpp"

#include "support.hpp"

#include "doctest.h"

#include <fstream>
#include <sstream>

using namespace qbound;
using nlohmann::json;

namespace {

const std::filesystem::path fixtures = std::filesystem::path(QBOUND_SOURCE_DIR) / "data" / "fixtures";

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs `fn` and returns the Error message, or "" when nothing was thrown.
template <class F>
std::string error_of(F fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("category files round-trip exactly")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const std::string text = serialize_category(*cat);
        const auto back = parse_category(text, name);
        CHECK(serialize_category(*back) == text);
        CHECK(back->rank() == cat->rank());
        cat->for_each_F_tuple([&](int a, int b, int c, int d, int e, int f) {
            CHECK(back->F(a, b, c, d, e, f) == cat->F(a, b, c, d, e, f)); // bit-exact
        });
    }
}

TEST_CASE("category fixtures load and re-serialize to the same bytes")
{
    for (const char* f : {"ising.json", "fibonacci.json"}) {
        CAPTURE(f);
        const std::string text = slurp(fixtures / f);
        const auto cat = load_category(fixtures / f);
        CHECK(serialize_category(*cat) == text);
        CHECK(validate(*cat).ok());
    }
    CHECK(resolve_category((fixtures / "ising.json").string())->rank() == 3);
    CHECK(resolve_category("product:fibonacci")->rank() == 4);
    CHECK_THROWS_AS(resolve_category("no-such-category"), Error);
}

TEST_CASE("broken unit law is rejected with a unit-law diagnostic")
{
    json j = json::parse(serialize_category(*build_builtin("fibonacci")));
    j["fusion"].push_back({"id", "sigma", "id", 1});
    const std::string msg = error_of([&] { parse_category(j.dump(), "bad.json"); });
    CHECK(msg.find("unit law") != std::string::npos);
    CHECK(msg.find("bad.json") != std::string::npos);
}

TEST_CASE("undefined labels are dangling references")
{
    json j = json::parse(serialize_category(*build_builtin("fibonacci")));
    j["F"]["sigma,sigma,sigma,sigma;id,psi"] = {1.0, 0.0};
    const std::string msg = error_of([&] { parse_category(j.dump(), "dangling.json"); });
    CHECK(msg.find("dangling reference") != std::string::npos);
    CHECK(msg.find("psi") != std::string::npos);
}

TEST_CASE("wrong F values fail validation with locations")
{
    json j = json::parse(serialize_category(*build_builtin("ising")));
    j["F"]["sigma,sigma,sigma,sigma;id,id"] = {0.6, 0.0};
    const std::string msg = error_of([&] { parse_category(j.dump(), "f.json"); });
    CHECK(msg.find("fails validation") != std::string::npos);
    CHECK(msg.find("pentagon") != std::string::npos);
}

TEST_CASE("malformed files")
{
    CHECK(error_of([] { parse_category("{", "x.json"); }).find("x.json") != std::string::npos);
    CHECK_FALSE(error_of([] { parse_category(R"({"format": "qbound-category", "version": 1})"); }).empty());
    json j = json::parse(serialize_category(*build_builtin("ising")));
    j["R"]["sigma,sigma;id"] = "one";
    CHECK_FALSE(error_of([&] { parse_category(j.dump()); }).empty());
}

TEST_CASE("Q-system files round-trip and verify")
{
    for (const char* spec : {"ising:fermi", "fibonacci:canonical", "z3:trivial", "z9:condensate"}) {
        CAPTURE(spec);
        const QSystem q = builtin_qsystem(spec);
        const std::string text = serialize_qsystem(q);
        const QSystem back = parse_qsystem(text, spec);
        CHECK(serialize_qsystem(back) == text);
        CHECK(back.theta == q.theta);
        CHECK(distance(back.x, q.x) == 0);
        CHECK(distance(back.w, q.w) == 0);
    }
    const QSystem fermi = load_qsystem(fixtures / "ising-fermi.json");
    CHECK(verify_qsystem(fermi).max() <= 1e-9);
    CHECK_FALSE(is_commutative(fermi));
    const QSystem z = resolve_qsystem((fixtures / "z9-condensate-centre.json").string());
    CHECK(verify_qsystem(z).max() <= 1e-9);
    CHECK(is_commutative(z));
    CHECK(coupling_matrix(z) == coupling_matrix(full_centre(builtin_qsystem("z9:condensate"))));
}

TEST_CASE("Q-system files with unknown trees or bad axioms are rejected")
{
    json j = json::parse(serialize_qsystem(builtin_qsystem("ising:fermi")));
    json bad = j;
    bad["x"][0]["out"] = "sigma#0;sigma#0>id";
    CHECK(error_of([&] { parse_qsystem(bad.dump(), "q.json"); }).find("dangling reference") != std::string::npos);
    bad = j;
    bad["w"][0]["value"] = {3.0, 0.0};
    CHECK(error_of([&] { parse_qsystem(bad.dump(), "q.json"); }).find("fails verification") != std::string::npos);
}

TEST_CASE("reports: every format carries the tolerance and is stable")
{
    ReportOptions opt;
    opt.classify.tol = 1e-9;
    const auto rep = classify_cardy(build_builtin("ising"), opt);
    const json j = json::parse(render_json(rep));
    CHECK(j["tolerance"].get<double>() == 1e-9);
    CHECK(j["count"].get<int>() == 3);
    CHECK(j["expected_count"].get<int>() == 3);
    CHECK(render(rep, "table").find("tolerance: 1e-09") != std::string::npos);
    const std::string csv = render(rep, "csv");
    CHECK(csv.rfind("m,dim_beta,", 0) == 0);
    CHECK(csv.find(",1e-09\n") != std::string::npos);
    CHECK(render(classify_cardy(build_builtin("ising"), opt), "csv") == csv);
    CHECK_THROWS_AS(render(rep, "xml"), Error);
}

TEST_CASE("number formatting folds signed zeros and rounding noise")
{
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(-1e-17) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.38196601125010515) == "-0.38196601125");
    CHECK(format_complex({0.5, 1e-17}) == "0.5");
    CHECK(format_complex({0, -1}) == "-1i");
    CHECK(format_complex({1, 2}) == "1+2i");
}
