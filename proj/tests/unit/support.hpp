#pragma once

// Hand-rolled generators shared by the unit suites. Seeds are fixed so
// failures reproduce.

#include "qbound/morphism.hpp"

#include <random>
#include <string>
#include <vector>

namespace qtest {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(0x9e3779b97f4a7c15ULL);
    return g;
}

inline double uniform(double lo = -1, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng()); }

inline qbound::cplx random_cplx() { return {uniform(), uniform()}; }

/// Object with multiplicities in [0, maxMult], never zero.
inline qbound::Obj random_obj(const qbound::CategoryData& cat, int maxMult = 2)
{
    qbound::Obj o(cat.rank());
    while (o.is_zero())
        for (int a = 0; a < cat.rank(); ++a) o.set(a, pick(maxMult + 1));
    return o;
}

/// Morphism with independent uniform complex entries in every block.
inline qbound::Morphism random_morphism(const qbound::CatPtr& cat, const qbound::Space& src, const qbound::Space& tgt)
{
    qbound::Morphism m(cat, src, tgt);
    for (int c = 0; c < m.rank(); ++c)
        for (int i = 0; i < m.block(c).rows(); ++i)
            for (int j = 0; j < m.block(c).cols(); ++j) m.block(c)(i, j) = random_cplx();
    return m;
}

inline const std::vector<std::string>& chiral_builtins()
{
    static const std::vector<std::string> names = {"ising", "fibonacci", "z3", "z5", "z9"};
    return names;
}

} // namespace qtest
