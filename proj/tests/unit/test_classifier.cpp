#include "qbound/classifier.hpp"
#include "qbound/io.hpp"
#include "qbound/lift.hpp"
#include "qbound/report.hpp"

#include "support.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace qbound;

namespace {

constexpr double tol = 1e-9;
constexpr double gamma_inv2 = 0.38196601125010515180; // 1/φ²

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

/// Oracle for the Cardy characters: the fusion matrices (N_ρ)_{bc} = N_{ρb}^c
/// commute and are normal, so a generic combination has simple eigenvalues;
/// its eigenvectors diagonalize every N_ρ, and π(T_ρ) = λ_ρ/d_ρ.
std::vector<Eigen::VectorXcd> fusion_characters(const CategoryData& cat)
{
    const int n = cat.rank();
    std::vector<Eigen::MatrixXcd> N(n, Eigen::MatrixXcd::Zero(n, n));
    for (int r = 0; r < n; ++r)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) N[r](b, c) = cat.N(r, b, c);
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < n; ++r) G += cplx(std::cos(0.7 * r + 0.3), std::sin(1.3 * r + 0.1)) * N[r];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(G);
    std::vector<Eigen::VectorXcd> out;
    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXcd v = es.eigenvectors().col(k);
        int piv = 0;
        v.cwiseAbs().maxCoeff(&piv);
        Eigen::VectorXcd chi(n);
        for (int r = 0; r < n; ++r) chi(r) = (N[r] * v)(piv) / v(piv) / cat.dim(r);
        out.push_back(chi);
    }
    return out;
}

/// For each row of `conds`, the index of the unused row of `want` it equals, or -1.
std::vector<int> match_rows(const std::vector<BoundaryCondition>& conds, const std::vector<Eigen::VectorXcd>& want)
{
    std::vector<int> map;
    std::vector<bool> used(want.size(), false);
    for (const auto& c : conds) {
        int hit = -1;
        for (std::size_t k = 0; k < want.size(); ++k)
            if (!used[k] && (c.values - want[k]).cwiseAbs().maxCoeff() < tol) {
                hit = static_cast<int>(k);
                break;
            }
        if (hit >= 0) used[hit] = true;
        map.push_back(hit);
    }
    return map;
}

std::vector<Eigen::VectorXcd> verlinde_rows(const CategoryData& cat)
{
    const Eigen::MatrixXcd V = verlinde_table(cat);
    std::vector<Eigen::VectorXcd> out;
    for (int s = 0; s < V.rows(); ++s) out.push_back(V.row(s).transpose());
    return out;
}

Eigen::MatrixXi coupling_of(const std::string& ref)
{
    const QSystem q = resolve_qsystem(ref);
    return theta_components(q.cat->is_product() ? q : lift_qsystem(q));
}

} // namespace

TEST_CASE("Ising boundary conditions")
{
    const auto rows = classify(cardy_algebra(build_builtin("ising")));
    REQUIRE(rows.size() == 3);
    const double want[3][2] = {{1, 1}, {1, -1}, {-1, 0}};
    for (int m = 0; m < 3; ++m) {
        CHECK(std::abs(rows[m].values(0) - 1.0) < tol);
        CHECK(std::abs(rows[m].values(1) - want[m][0]) < tol);
        CHECK(std::abs(rows[m].values(2) - want[m][1]) < tol);
    }
    CHECK(rows[2].dimBeta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("Fibonacci boundary conditions")
{
    const auto rows = classify(cardy_algebra(build_builtin("fibonacci")));
    REQUIRE(rows.size() == 2);
    std::vector<double> b{rows[0].values(1).real(), rows[1].values(1).real()};
    std::sort(b.begin(), b.end());
    CHECK(std::abs(b[0] + gamma_inv2) < tol);
    CHECK(std::abs(b[1] - 1) < tol);
    CHECK(std::abs(b[0] + 0.3819660113) < 1e-9);
}

TEST_CASE("the closed-form Cardy algebra agrees with the centre algebra built from morphisms")
{
    for (const char* name : {"ising", "fibonacci", "z3", "z5"}) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const CentreAlgebra closed = cardy_algebra(cat);
        const QSystem R = canonical_qsystem(cat);
        const CentreAlgebra built = centre_algebra(R, R);
        REQUIRE(built.size() == closed.size());
        const auto a = classify(closed), b = classify(built);
        REQUIRE(a.size() == b.size());
        std::vector<Eigen::VectorXcd> bv;
        for (const auto& c : b) bv.push_back(c.values);
        for (int m : match_rows(a, bv)) CHECK(m >= 0);
    }
}

TEST_CASE("Verlinde table: closed form, fusion characters and classifier agree")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const auto rows = classify(cardy_algebra(cat));
        const auto chars = fusion_characters(*cat);
        REQUIRE(rows.size() == chars.size());
        for (int m : match_rows(rows, chars)) CHECK(m >= 0);
        for (int m : match_rows(rows, verlinde_rows(*cat))) CHECK(m >= 0);
    }
}

TEST_CASE("generalized S is unitary and Cardy-Cardy recovers the fusion rules")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        const CentreAlgebra alg = cardy_algebra(cat);
        const auto rows = classify(alg);
        const Eigen::MatrixXcd S = s_matrix(rows, alg);
        const int n = static_cast<int>(S.rows());
        CHECK(max_abs(S * S.adjoint() - Eigen::MatrixXcd::Identity(n, n)) < 1e-8);

        for (const cplx v : recovered_fusion_raw(S, S, S, alg, alg, alg))
            CHECK(std::abs(v - std::round(v.real())) < 1e-6);
        const auto N = recovered_fusion(S, S, S, alg, alg, alg);
        // condition m corresponds to the label whose Verlinde row it carries
        const auto lab = match_rows(rows, verlinde_rows(*cat));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    CHECK(N[(static_cast<std::size_t>(a) * n + b) * n + c] == cat->N(lab[a], lab[b], lab[c]));
    }
}

TEST_CASE("idempotents are orthogonal, complete and self-adjoint")
{
    for (const auto& name : qtest::chiral_builtins()) {
        const CentreAlgebra alg = cardy_algebra(build_builtin(name));
        CHECK(check_idempotents(alg, classify(alg)).max() < tol);
    }
    const CentreAlgebra mixed = centre_for("z9:canonical", "Z:z9:condensate");
    CHECK(check_idempotents(mixed, classify(mixed)).max() < tol);
}

TEST_CASE("the number of boundary conditions is Tr(Z^Lt Z^R)")
{
    const std::pair<const char*, const char*> pairs[] = {
        {"ising:canonical", "ising:canonical"}, {"fibonacci:canonical", "fibonacci:canonical"},
        {"z3:canonical", "z3:canonical"},       {"z5:canonical", "z5:canonical"},
        {"z9:canonical", "z9:canonical"},       {"Z:ising:fermi", "ising:canonical"},
        {"z9:canonical", "Z:z9:condensate"},    {"Z:z9:condensate", "z9:canonical"},
        {"Z:z9:condensate", "Z:z9:condensate"}, {"ising:trivial", "ising:canonical"},
    };
    for (const auto& [l, r] : pairs) {
        CAPTURE(l);
        CAPTURE(r);
        const CentreAlgebra alg = centre_for(l, r);
        const int expected = (coupling_of(l).transpose() * coupling_of(r)).trace();
        CHECK(static_cast<int>(classify(alg).size()) == expected);
        CHECK(alg.size() == expected);
    }
}

TEST_CASE("classification is deterministic")
{
    const CentreAlgebra alg = centre_for("z9:canonical", "Z:z9:condensate");
    const auto a = classify(alg), b = classify(alg);
    REQUIRE(a.size() == b.size());
    for (std::size_t m = 0; m < a.size(); ++m) {
        CHECK(a[m].values == b[m].values);
        CHECK(a[m].idempotent == b[m].idempotent);
    }
    const auto ising = build_builtin("ising");
    CHECK(render_json(classify_cardy(ising)) == render_json(classify_cardy(ising)));
}

TEST_CASE("the centre algebra rejects non-commutative inputs")
{
    const QSystem F = lift_qsystem(builtin_qsystem("ising:fermi"));
    CHECK_THROWS_AS(centre_algebra(F, canonical_qsystem(build_builtin("ising"))), Error);
}
