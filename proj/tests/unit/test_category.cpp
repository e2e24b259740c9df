#include "qbound/category.hpp"

#include "support.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace qbound;

namespace {

constexpr double phi = 1.6180339887498948482;

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("built-in categories pass pentagon, hexagon and unitarity")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto rep = validate(*build_builtin(name));
        CHECK(rep.structural.empty());
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("fusion rings: unit, duality, associativity")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const int n = cat->rank();
        for (int a = 0; a < n; ++a) {
            CHECK(cat->dual(cat->dual(a)) == a);
            CHECK(cat->N(a, cat->dual(a), 0) == 1);
            for (int b = 0; b < n; ++b) {
                CHECK(cat->N(0, a, b) == (a == b));
                CHECK(cat->N(a, 0, b) == (a == b));
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        int lhs = 0, rhs = 0;
                        for (int e = 0; e < n; ++e) {
                            lhs += cat->N(a, b, e) * cat->N(e, c, d);
                            rhs += cat->N(b, c, e) * cat->N(a, e, d);
                        }
                        CHECK(lhs == rhs);
                    }
    }
}

TEST_CASE("quantum dimensions are the Perron-Frobenius dimensions")
{
    const auto ising = build_builtin("ising");
    CHECK(ising->dim(0) == doctest::Approx(1).epsilon(1e-12));
    CHECK(ising->dim(1) == doctest::Approx(1).epsilon(1e-12));
    CHECK(ising->dim(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ising->global_dim() == doctest::Approx(2).epsilon(1e-12));

    const auto fib = build_builtin("fibonacci");
    CHECK(fib->dim(1) == doctest::Approx(phi).epsilon(1e-12));
    CHECK(fib->global_dim() == doctest::Approx(std::sqrt(2 + phi)).epsilon(1e-12));

    for (const char* z : {"z3", "z5", "z9"}) {
        const auto cat = build_builtin(z);
        for (int a = 0; a < cat->rank(); ++a) CHECK(cat->dim(a) == doctest::Approx(1).epsilon(1e-12));
        CHECK(cat->global_dim() == doctest::Approx(std::sqrt(cat->rank())).epsilon(1e-12));
    }

    for (const auto& name : qtest::chiral_builtins())
        CHECK(modular_data(*build_builtin(name)).dimCrossCheck < 1e-9);
}

TEST_CASE("Ising modular data matches the closed form")
{
    const auto md = modular_data(*build_builtin("ising"));
    REQUIRE(md.isModular);
    const double s = std::sqrt(2.0);
    Eigen::MatrixXcd S(3, 3);
    S << 1, 1, s, 1, 1, -s, s, -s, 0;
    S /= 2;
    CHECK(max_abs(md.S - S) < 1e-12);
    CHECK(std::abs(md.twists[1] + 1.0) < 1e-12);
    CHECK(std::abs(md.twists[2] - std::polar(1.0, 2 * std::numbers::pi / 16)) < 1e-12);
}

TEST_CASE("Fibonacci modular data matches the closed form")
{
    const auto md = modular_data(*build_builtin("fibonacci"));
    REQUIRE(md.isModular);
    Eigen::MatrixXcd S(2, 2);
    S << 1, phi, phi, -1;
    S /= std::sqrt(2 + phi);
    CHECK(max_abs(md.S - S) < 1e-12);
    CHECK(std::abs(std::pow(md.twists[1], 5) - 1.0) < 1e-9);
}

TEST_CASE("modular S is symmetric and unitary, and (ST)^3 is proportional to S^2")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto md = modular_data(*build_builtin(name));
        REQUIRE(md.isModular);
        const int n = static_cast<int>(md.S.rows());
        CHECK(max_abs(md.S - md.S.transpose()) < 1e-12);
        CHECK(max_abs(md.S * md.S.adjoint() - Eigen::MatrixXcd::Identity(n, n)) < 1e-9);
        const Eigen::MatrixXcd ST = md.S * md.T;
        const Eigen::MatrixXcd lhs = ST * ST * ST, rhs = md.S * md.S;
        const cplx ratio = lhs(0, 0) / rhs(0, 0);
        CHECK(std::abs(std::abs(ratio) - 1) < 1e-9);
        CHECK(max_abs(lhs - ratio * rhs) < 1e-9);
    }
}

TEST_CASE("pointed S entries have modulus 1/sqrt(N)")
{
    for (int N : {3, 5, 9}) {
        const auto md = modular_data(*build_builtin("z" + std::to_string(N)));
        CHECK((md.S.cwiseAbs().array() - 1 / std::sqrt(double(N))).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("validate flags a perturbed F-symbol")
{
    const auto ising = build_builtin("ising");
    auto F = CategoryData::FMap{};
    ising->for_each_F_tuple([&](int a, int b, int c, int d, int e, int f) {
        F[pack_F(a, b, c, d, e, f)] = ising->F(a, b, c, d, e, f);
    });
    CategoryData::RMap R;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if (auto r = ising->find_R(a, b, c)) R[pack_R(a, b, c)] = *r;
    F[pack_F(2, 2, 2, 2, 0, 0)] *= 1.01;
    const auto broken = CategoryData::make("broken", ising->ring(), F, R, "");
    const auto rep = validate(*broken);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("unknown built-in names")
{
    CHECK(try_builtin("nope") == nullptr);
    CHECK_THROWS_AS(build_builtin("nope"), Error);
    CHECK(try_builtin("pointed:7:1") != nullptr);
    CHECK_THROWS_AS(build_builtin("pointed:4:1"), Error);
}
