#include "qbound/qsystem.hpp"

#include "support.hpp"

#include "doctest.h"

#include <cmath>

using namespace qbound;

namespace {

constexpr double tol = 1e-9;

} // namespace

TEST_CASE("trivial Q-systems")
{
    for (const auto& name : qtest::chiral_builtins()) {
        const QSystem q = trivial_qsystem(build_builtin(name));
        CHECK(verify_qsystem(q).pass(tol));
        CHECK(is_commutative(q));
        CHECK(q.dim() == doctest::Approx(1));
    }
}

TEST_CASE("canonical Q-systems pass, are commutative and have dimension D")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto chiral = build_builtin(name);
        const QSystem R = canonical_qsystem(chiral);
        const QReport rep = verify_qsystem(R);
        CHECK(rep.max() <= tol);
        CHECK(is_commutative(R));
        CHECK(commutativity_residual(R, -1) <= tol);
        CHECK(qsystem_dimension(R) == doctest::Approx(chiral->global_dim()).epsilon(1e-12));
        // Θ = ⊕ ρ⊠ρ̄, each once
        for (int a = 0; a < chiral->rank(); ++a)
            for (int b = 0; b < chiral->rank(); ++b)
                CHECK(R.theta.mult(R.cat->pair(a, b)) == (b == chiral->dual(a) ? 1 : 0));
    }
}

TEST_CASE("the Ising Fermi Q-system passes the axioms and is not commutative")
{
    const QSystem F = builtin_qsystem("ising:fermi");
    CHECK(verify_qsystem(F).max() <= tol);
    CHECK(F.dim() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(F.theta.mult(0) == 1);
    CHECK(F.theta.mult(1) == 1);
    CHECK(F.theta.mult(2) == 0);
    CHECK_FALSE(is_commutative(F));
    CHECK(commutativity_residual(F, +1) > 0.5);
    CHECK(commutativity_residual(F, -1) > 0.5);
}

TEST_CASE("group Q-systems over pointed categories")
{
    const auto z9 = build_builtin("z9");
    const QSystem A = group_qsystem(z9, {0, 3, 6});
    CHECK(verify_qsystem(A).max() <= tol);
    CHECK(A.dim() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(is_commutative(A)); // 3 is a boson for the Z9 twist q(a) = a²/9
    CHECK_THROWS_AS(group_qsystem(z9, {0, 3}), Error);
    CHECK_THROWS_AS(group_qsystem(z9, {3, 6}), Error);
    CHECK_THROWS_AS(group_qsystem(build_builtin("ising"), {0, 2}), Error);

    const QSystem full = group_qsystem(build_builtin("z3"), {0, 1, 2});
    CHECK(verify_qsystem(full).max() <= tol);
    CHECK_FALSE(is_commutative(full)); // 1 has twist e^{2πi/3}
}

TEST_CASE("charged fields are normalized and complete")
{
    for (const char* spec : {"ising:canonical", "fibonacci:canonical", "ising:fermi", "z9:condensate", "z5:canonical"}) {
        CAPTURE(spec);
        const QSystem A = builtin_qsystem(spec);
        const double d = A.dim();
        Morphism sum(A.cat, A.th(), A.th());
        for (const auto& f : charged_fields(A)) {
            const double dr = A.cat->dim(f.label);
            CHECK(std::abs(compose(f.W.dagger(), f.W).block(f.label)(0, 0) - d / dr) < tol);
            sum += (dr / d) * compose(f.W, f.W.dagger());
        }
        CHECK(distance(sum, Morphism::identity(A.cat, A.th())) < tol);
    }
}

TEST_CASE("perturbed multiplications are rejected")
{
    QSystem R = canonical_qsystem(build_builtin("fibonacci"));
    for (int c = 0; c < R.x.rank(); ++c)
        if (R.x.block(c).size()) {
            R.x.block(c)(0, 0) *= 1.001;
            break;
        }
    CHECK(verify_qsystem(R).max() > 1e-4);
    CHECK_THROWS_AS(require_qsystem(R), Error);
}

TEST_CASE("built-in Q-system names")
{
    CHECK_THROWS_AS(builtin_qsystem("fibonacci:fermi"), Error);
    CHECK_THROWS_AS(builtin_qsystem("ising:bogus"), Error);
    CHECK_THROWS_AS(builtin_qsystem("ising"), Error);
    CHECK(builtin_qsystem("z3:group:0").dim() == doctest::Approx(1));
}
