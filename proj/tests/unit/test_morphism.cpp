#include "qbound/morphism.hpp"

#include "support.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

using namespace qbound;
using qtest::random_morphism;
using qtest::random_obj;

namespace {

constexpr double tol = 1e-9;

Space word(const Obj& o) { return Space{o}; }
Space word(const Obj& a, const Obj& b) { return Space{a, b}; }

Obj simple(const CatPtr& c, int a) { return Obj::simple(c->rank(), a); }

} // namespace

TEST_CASE("composition: identities, associativity, dagger involution")
{
    const auto cat = build_builtin("ising");
    for (int trial = 0; trial < 20; ++trial) {
        const Space X = word(random_obj(*cat)), Y = word(random_obj(*cat)), Z = word(random_obj(*cat)),
                    U = word(random_obj(*cat));
        const Morphism f = random_morphism(cat, Y, Z), g = random_morphism(cat, X, Y), h = random_morphism(cat, U, X);
        CHECK(distance(compose(Morphism::identity(cat, Z), f), f) < tol);
        CHECK(distance(compose(f, Morphism::identity(cat, Y)), f) < tol);
        CHECK(distance(compose(compose(f, g), h), compose(f, compose(g, h))) < tol);
        CHECK(distance(f.dagger().dagger(), f) < tol);
        CHECK(distance(compose(f, g).dagger(), compose(g.dagger(), f.dagger())) < tol);
    }
}

TEST_CASE("composition rejects mismatched spaces")
{
    const auto cat = build_builtin("ising");
    const Morphism f = random_morphism(cat, word(simple(cat, 1)), word(simple(cat, 2)));
    CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("tensor is bifunctorial and the unit acts neutrally")
{
    for (const char* name : {"ising", "fibonacci"}) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 10; ++trial) {
            const Space X = word(random_obj(*cat, 1)), X1 = word(random_obj(*cat, 1)), X2 = word(random_obj(*cat, 1));
            const Space Y = word(random_obj(*cat, 1)), Y1 = word(random_obj(*cat, 1)), Y2 = word(random_obj(*cat, 1));
            const Morphism f = random_morphism(cat, X1, X2), f1 = random_morphism(cat, X, X1);
            const Morphism g = random_morphism(cat, Y1, Y2), g1 = random_morphism(cat, Y, Y1);
            CHECK(distance(tensor(compose(f, f1), compose(g, g1)), compose(tensor(f, g), tensor(f1, g1))) < tol);
            CHECK(distance(tensor(f, g).dagger(), tensor(f.dagger(), g.dagger())) < tol);
        }
        const Space X = word(random_obj(*cat));
        const Morphism f = random_morphism(cat, X, X);
        const Morphism one = Morphism::identity(cat, Space{});
        CHECK(distance(tensor(one, f), f) < tol);
        CHECK(distance(tensor(f, one), f) < tol);
    }
}

TEST_CASE("dimensions of tensor words multiply")
{
    for (const auto& name : qtest::chiral_builtins()) {
        const auto cat = build_builtin(name);
        const Obj a = random_obj(*cat), b = random_obj(*cat);
        CHECK(dim(*cat, word(a, b)) == doctest::Approx(a.dim(*cat) * b.dim(*cat)).epsilon(1e-12));
        CHECK(flatten(*cat, word(a, b)).dim(*cat) == doctest::Approx(a.dim(*cat) * b.dim(*cat)).epsilon(1e-12));
    }
}

TEST_CASE("Ising braiding values")
{
    const auto cat = build_builtin("ising");
    const Space tau = word(simple(cat, 1)), sigma = word(simple(cat, 2));
    const Morphism ett = braid(cat, tau, tau);
    CHECK(std::abs(ett.block(0)(0, 0) + 1.0) < tol);

    const Morphism ess = braid(cat, sigma, sigma);
    std::vector<cplx> ev{ess.block(0)(0, 0), ess.block(1)(0, 0)};
    const double k = std::numbers::pi / 8;
    std::vector<cplx> want{std::polar(1.0, -k), std::polar(1.0, 3 * k)};
    for (const auto& w : want)
        CHECK(std::any_of(ev.begin(), ev.end(), [&](cplx e) { return std::abs(e - w) < tol; }));
}

TEST_CASE("braidings are unitary and the opposite braiding is the adjoint")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 5; ++trial) {
            const Space X = word(random_obj(*cat)), Y = word(random_obj(*cat));
            const Morphism e = braid(cat, X, Y);
            const Space XY = word(X[0], Y[0]);
            CHECK(distance(compose(e.dagger(), e), Morphism::identity(cat, XY)) < tol);
            CHECK(distance(braid(cat, X, Y, -1), braid(cat, Y, X).dagger()) < tol);
        }
    }
}

TEST_CASE("braiding is natural")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 100; ++trial) {
            const Space X = word(random_obj(*cat, 1)), X1 = word(random_obj(*cat, 1));
            const Space Y = word(random_obj(*cat, 1)), Y1 = word(random_obj(*cat, 1));
            const Morphism f = random_morphism(cat, X, X1), g = random_morphism(cat, Y, Y1);
            const int sign = trial % 2 ? +1 : -1;
            const Morphism lhs = compose(braid(cat, X1, Y1, sign), tensor(f, g));
            const Morphism rhs = compose(tensor(g, f), braid(cat, X, Y, sign));
            CHECK(distance(lhs, rhs) < tol);
        }
    }
}

TEST_CASE("hexagon: braiding past a tensor product is the two-step composite")
{
    for (const char* name : {"fibonacci", "ising", "z5"}) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 5; ++trial) {
            const Obj x = random_obj(*cat, 1), y = random_obj(*cat, 1), z = random_obj(*cat, 1);
            const Space X{x}, Y{y}, Z{z};
            const Morphism direct = braid(cat, X, Space{y, z});
            const Morphism steps = compose(tensor(Morphism::identity(cat, Y), braid(cat, X, Z)),
                                           tensor(braid(cat, X, Y), Morphism::identity(cat, Z)));
            CHECK(distance(direct, steps) < tol);
        }
    }
}

TEST_CASE("standard conjugate solutions")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 5; ++trial) {
            const Obj X = random_obj(*cat);
            const ConjugatePair p = conjugate_solution(cat, X);
            const double d = X.dim(*cat);
            CHECK(std::abs(scalar(compose(p.r.dagger(), p.r)) - d) < tol);
            CHECK(std::abs(scalar(compose(p.rbar.dagger(), p.rbar)) - d) < tol);
            // zig-zag: (rbar† ⊗ 1)(1 ⊗ r) = 1_X and (r† ⊗ 1)(1 ⊗ rbar) = 1_X̄
            const Morphism idX = Morphism::identity(cat, Space{X}), idXb = Morphism::identity(cat, Space{p.conj});
            const Morphism zig = tensor(idX, p.r);
            CHECK(distance(compose(tensor(p.rbar.dagger(), idX), zig), idX) < tol);
            const Morphism zag = tensor(idXb, p.rbar);
            CHECK(distance(compose(tensor(p.r.dagger(), idXb), zag), idXb) < tol);
        }
    }
    const auto ising = build_builtin("ising");
    const ConjugatePair s = conjugate_solution(ising, simple(ising, 2));
    CHECK(std::abs(scalar(compose(s.r.dagger(), s.r)) - std::sqrt(2.0)) < tol);
    const ConjugatePair u = conjugate_solution(ising, Obj::unit(3));
    CHECK(std::abs(scalar(u.r) - 1.0) < tol);
}

TEST_CASE("scalar products: positivity and left/right agreement")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 100; ++trial) {
            const Obj X = random_obj(*cat), Y = random_obj(*cat);
            const Morphism D1 = random_morphism(cat, Space{X}, Space{Y}), D2 = random_morphism(cat, Space{X}, Space{Y});
            const ConjugatePair px = conjugate_solution(cat, X), py = conjugate_solution(cat, Y);
            const cplx dd = trace_pair(D1, D1, px);
            CHECK(std::abs(dd.imag()) < 1e-9);
            CHECK(dd.real() >= -1e-12);
            CHECK(std::abs(trace_pair(D1, D2, px) - trace_pair_left(D1, D2, py)) < 1e-9);
        }
    }
    const auto ising = build_builtin("ising");
    CHECK(std::abs(scalar(Morphism::identity(ising, Space{})) - 1.0) < tol);
}

TEST_CASE("Frobenius reciprocity maps are mutually inverse")
{
    for (const auto& name : qtest::chiral_builtins()) {
        CAPTURE(name);
        const auto cat = build_builtin(name);
        for (int trial = 0; trial < 20; ++trial) {
            const Obj X = random_obj(*cat, 1), Y = random_obj(*cat, 1), Z = random_obj(*cat, 1);
            const ConjugatePair pz = conjugate_solution(cat, Z);
            const Morphism f = random_morphism(cat, Space{X}, Space{Y, Z});
            CHECK(distance(unbend_right(bend_right(f, pz), pz), f) < tol);
            const Morphism g = random_morphism(cat, Space{X, pz.conj}, Space{Y});
            CHECK(distance(bend_right(unbend_right(g, pz), pz), g) < tol);
        }
    }
}

TEST_CASE("the fusion-tree basis registry is safe under concurrent lookups")
{
    const auto cat = build_builtin("fibonacci");
    const Obj t = Obj::simple(2, 1);
    std::vector<std::thread> threads;
    std::vector<int> dims(8);
    for (int k = 0; k < 8; ++k)
        threads.emplace_back([&, k] { dims[k] = basis(*cat, Space(4 + k % 3, t))->dim(1); });
    for (auto& th : threads) th.join();
    for (int k = 0; k < 8; ++k) CHECK(dims[k] == basis(*cat, Space(4 + k % 3, t))->dim(1));
}
