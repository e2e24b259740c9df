#include "qbound/lift.hpp"

#include "support.hpp"

#include "doctest.h"

#include <cmath>

using namespace qbound;

TEST_CASE("the lift preserves fusion, F and R")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const LiftMap L = lift_map(cat);
        REQUIRE(L.target->is_product());
        const int n = cat->rank();
        for (int a = 0; a < n; ++a) {
            CHECK(L.target->dim(L(a)) == doctest::Approx(cat->dim(a)).epsilon(1e-12));
            CHECK(L.target->dual(L(a)) == L(cat->dual(a)));
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    CHECK(L.target->N(L(a), L(b), L(c)) == cat->N(a, b, c));
                    if (auto r = cat->find_R(a, b, c)) CHECK(std::abs(L.target->R(L(a), L(b), L(c)) - *r) < 1e-12);
                }
        }
        cat->for_each_F_tuple([&](int a, int b, int c, int d, int e, int f) {
            CHECK(std::abs(L.target->F(L(a), L(b), L(c), L(d), L(e), L(f)) - cat->F(a, b, c, d, e, f)) < 1e-12);
        });
    }
}

TEST_CASE("lifted morphisms compose and tensor like the originals")
{
    const auto cat = build_builtin("fibonacci");
    const LiftMap L = lift_map(cat);
    for (int trial = 0; trial < 20; ++trial) {
        const Obj X = qtest::random_obj(*cat), Y = qtest::random_obj(*cat), Z = qtest::random_obj(*cat);
        const Morphism f = qtest::random_morphism(cat, Space{Y}, Space{Z}), g = qtest::random_morphism(cat, Space{X}, Space{Y});
        CHECK(distance(lift_morphism(L, compose(f, g)), compose(lift_morphism(L, f), lift_morphism(L, g))) < 1e-9);
        CHECK(distance(lift_morphism(L, tensor(f, g)), tensor(lift_morphism(L, f), lift_morphism(L, g))) < 1e-9);
        CHECK(distance(lift_morphism(L, braid(cat, Space{X}, Space{Y})),
                       braid(L.target, Space{lift_object(L, X)}, Space{lift_object(L, Y)})) < 1e-9);
    }
}

TEST_CASE("lifted Q-systems keep their residuals and dimension")
{
    for (const char* spec : {"ising:fermi", "ising:trivial", "z9:condensate", "fibonacci:trivial"}) {
        CAPTURE(spec);
        const QSystem A = builtin_qsystem(spec);
        const QSystem B = lift_qsystem(A);
        CHECK(B.dim() == doctest::Approx(A.dim()).epsilon(1e-12));
        CHECK(std::abs(verify_qsystem(B).max() - verify_qsystem(A).max()) < 1e-12);
        CHECK(is_commutative(B) == is_commutative(A));
        const Eigen::MatrixXi Z = theta_components(B);
        for (int a = 0; a < A.cat->rank(); ++a) {
            CHECK(Z(a, 0) == A.theta.mult(a));
            for (int b = 1; b < A.cat->rank(); ++b) CHECK(Z(a, b) == 0);
        }
    }
}

TEST_CASE("theta components of canonical Q-systems are the charge conjugation")
{
    for (const auto& name : qtest::chiral_builtins()) {
        const auto cat = build_builtin(name);
        const Eigen::MatrixXi Z = theta_components(canonical_qsystem(cat));
        for (int a = 0; a < cat->rank(); ++a)
            for (int b = 0; b < cat->rank(); ++b) CHECK(Z(a, b) == (b == cat->dual(a)));
    }
    CHECK_THROWS_AS(theta_components(trivial_qsystem(build_builtin("ising"))), Error);
}
