#include "qbound/lift.hpp"
#include "qbound/product.hpp"

#include "support.hpp"

#include "doctest.h"

#include <cmath>

using namespace qbound;

namespace {

constexpr double tol = 1e-9;

/// Chiral Q-systems with a modular base, paired with their expected full-centre dimension d_R².
struct Chiral {
    const char* spec;
};
const Chiral chiral_cases[] = {{"ising:trivial"},    {"ising:fermi"},   {"fibonacci:trivial"},
                               {"z3:trivial"},       {"z5:trivial"},    {"z9:trivial"},
                               {"z9:condensate"},    {"z9:group:0,3,6"}};

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

// R x R over z9 has 81 summands in θ and dense x⊗1 blocks of several GB;
// z9 enters through (A⊗1) x R instead, which is what full centres build.
const char* const small_builtins[] = {"ising", "fibonacci", "z3", "z5"};

} // namespace

TEST_CASE("braided products are Q-systems of product dimension")
{
    for (const char* name : small_builtins) {
        CAPTURE(name);
        const QSystem R = canonical_qsystem(build_builtin(name));
        for (int sign : {+1, -1}) {
            const QSystem P = braided_product(R, R, sign);
            CHECK(verify_qsystem(P).max() <= tol);
            CHECK(P.dim() == doctest::Approx(R.dim() * R.dim()).epsilon(1e-12));
        }
    }
    const QSystem F = lift_qsystem(builtin_qsystem("ising:fermi"));
    const QSystem R = canonical_qsystem(build_builtin("ising"));
    CHECK(verify_qsystem(braided_product(F, R, +1)).max() <= tol);
    CHECK_THROWS_AS(braided_product(builtin_qsystem("ising:fermi"), R, +1), Error);
}

TEST_CASE("centre projections of braided products satisfy the intermediate and centre relations")
{
    std::vector<std::pair<QSystem, QSystem>> pairs;
    for (const char* name : small_builtins) {
        const QSystem R = canonical_qsystem(build_builtin(name));
        pairs.emplace_back(R, R);
    }
    for (const auto& name : qtest::chiral_builtins())
        pairs.emplace_back(lift_qsystem(trivial_qsystem(build_builtin(name))), canonical_qsystem(build_builtin(name)));
    pairs.emplace_back(lift_qsystem(builtin_qsystem("ising:fermi")), canonical_qsystem(build_builtin("ising")));
    pairs.emplace_back(lift_qsystem(builtin_qsystem("z9:condensate")), canonical_qsystem(build_builtin("z9")));
    for (const auto& [A1, A2] : pairs)
        for (int sign : {+1, -1}) {
            const QSystem P = braided_product(A1, A2, sign);
            CAPTURE(P.name);
            CAPTURE(sign);
            for (int side : {+1, -1}) {
                const ProjectionInTheta p = centre_projection(P, side);
                CHECK(p.isProjection);
                CHECK(p.satisfiesIntermediate);
                if (side > 0) CHECK(p.satisfiesLeftCentreRel);
                else CHECK(p.satisfiesRightCentreRel);
                CHECK(p.idempotency <= tol);
                CHECK(p.selfAdjoint <= tol);
            }
        }
}

TEST_CASE("the centre projection of a commutative Q-system is the identity")
{
    for (const auto& name : qtest::chiral_builtins()) {
        const QSystem R = canonical_qsystem(build_builtin(name));
        for (int side : {+1, -1}) {
            const ProjectionInTheta p = centre_projection(R, side);
            CHECK(distance(p.p, Morphism::identity(R.cat, R.th())) < tol);
            CHECK(projection_trace(R, p.p) == doctest::Approx(R.theta.dim(*R.cat)).epsilon(1e-9));
        }
    }
}

TEST_CASE("(Fermi x 1) x+ canonical: p- has trace 4 and reduces to the canonical Q-system")
{
    const auto ising = build_builtin("ising");
    const QSystem F = lift_qsystem(builtin_qsystem("ising:fermi"));
    const QSystem R = canonical_qsystem(ising);
    const QSystem P = braided_product(F, R, +1);
    const ProjectionInTheta pm = centre_projection(P, -1);
    REQUIRE(pm.isProjection);
    CHECK(projection_trace(P, pm.p) == doctest::Approx(4).epsilon(1e-9));
    const Reduction red = reduce(P, pm);
    CHECK(red.q.theta == R.theta);
    CHECK(equivalence_residual(red, R, second_factor_embedding(F, R)) < tol);
}

TEST_CASE("reduce rejects projections that break the intermediate relations")
{
    const QSystem R = canonical_qsystem(build_builtin("ising"));
    Morphism half = 0.5 * Morphism::identity(R.cat, R.th());
    CHECK_THROWS_AS(reduce(R, check_projection(R, half)), Error);
    // the projection onto one summand other than the unit does not contain w
    Morphism q(R.cat, R.th(), R.th());
    q.block(R.cat->pair(2, 2))(0, 0) = 1;
    const ProjectionInTheta pq = check_projection(R, q);
    CHECK(pq.isProjection);
    CHECK_FALSE(pq.satisfiesIntermediate);
}

TEST_CASE("the full centre of the trivial Q-system is the canonical one")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const QSystem T = trivial_qsystem(cat);
        const Reduction red = full_centre_reduction(T);
        const QSystem R = canonical_qsystem(cat);
        CHECK(red.q.theta == R.theta);
        CHECK(equivalence_residual(red, R, second_factor_embedding(lift_qsystem(T), R)) < tol);
    }
}

TEST_CASE("full centres have dimension d_R squared, are commutative and modular invariant")
{
    for (const auto& c : chiral_cases) {
        CAPTURE(c.spec);
        const QSystem A = builtin_qsystem(c.spec);
        const QSystem Z = full_centre(A);
        const double dR = A.cat->global_dim();
        CHECK(Z.theta.dim(*Z.cat) == doctest::Approx(dR * dR).epsilon(1e-8));
        CHECK(verify_qsystem(Z).max() <= tol);
        CHECK(is_commutative(Z));
        CHECK(Z.theta.mult(0) == 1);
        const Eigen::MatrixXcd M = coupling_matrix(Z).cast<cplx>();
        const ModularData md = modular_data(*A.cat);
        CHECK(max_abs(M * md.S - md.S * M) < 1e-8);
        CHECK(max_abs(M * md.T - md.T * M) < 1e-8);
    }
}

TEST_CASE("the Z9 condensate has the block coupling matrix of its orbit {0, 3, 6}")
{
    const Eigen::MatrixXi Z = coupling_matrix(full_centre(builtin_qsystem("z9:condensate")));
    Eigen::MatrixXi want = Eigen::MatrixXi::Zero(9, 9);
    for (int a : {0, 3, 6})
        for (int b : {0, 3, 6}) want(a, b) = 1;
    CHECK(Z == want);
}

TEST_CASE("full centres need a chiral modular input")
{
    CHECK_THROWS_AS(full_centre(canonical_qsystem(build_builtin("ising"))), Error);
}
