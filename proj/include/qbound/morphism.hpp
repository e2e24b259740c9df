#pragma once

#include "qbound/category.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qbound {

/// Direct sum ⊕_a n_a·a of simple objects.
class Obj {
public:
    Obj() = default;
    /// Zero object over a category with `rank` labels.
    explicit Obj(int rank) : m_(rank, 0) {}
    static Obj simple(int rank, int a, int mult = 1);
    static Obj unit(int rank) { return simple(rank, 0); }

    int rank() const { return static_cast<int>(m_.size()); }
    int mult(int a) const { return m_[a]; }
    void set(int a, int n);
    const std::vector<int>& mults() const { return m_; }
    /// Labels with nonzero multiplicity, ascending.
    std::vector<int> support() const;
    bool is_zero() const;
    int total() const;
    double dim(const CategoryData& cat) const;
    /// ⊕ n_a·ā.
    Obj conj(const CategoryData& cat) const;
    Obj operator+(const Obj& o) const;
    bool operator==(const Obj& o) const = default;
    std::string str(const CategoryData& cat) const;

private:
    std::vector<int> m_;
};

/// Tensor word X1⊗...⊗Xk; the empty word is the tensor unit.
using Space = std::vector<Obj>;

/// One left-associated splitting tree ((l1 l2)_{e2} l3)_{e3}... with copy
/// indices into the multiplicity of each factor. edges[0] = labels[0] and the
/// last edge is the total label.
struct Channel {
    std::vector<int> labels;
    std::vector<int> copies;
    std::vector<int> edges;
};

/// Canonical basis of Hom(c, X1⊗...⊗Xk) for every total label c, in
/// lexicographic order of (l1, i1, (l_k, i_k, e_k)_k).
struct SpaceBasis {
    std::vector<std::vector<Channel>> channels;
    std::vector<std::map<std::vector<int>, int>> index;
    int dim(int c) const { return static_cast<int>(channels[c].size()); }
    static std::vector<int> key(const Channel& ch);
};

/// Cached basis of a space; lookups are lock-protected and entries immutable.
std::shared_ptr<const SpaceBasis> basis(const CategoryData& cat, const Space& s);
int space_dim(const CategoryData& cat, const Space& s, int c);
/// The object ⊕_c n_c(s)·c.
Obj flatten(const CategoryData& cat, const Space& s);
double dim(const CategoryData& cat, const Space& s);
std::string space_str(const CategoryData& cat, const Space& s);

/// Intertwiner between tensor words, one dense block per total label c of
/// shape n_c(target) × n_c(source).
class Morphism {
public:
    Morphism() = default;
    /// Zero morphism.
    Morphism(CatPtr cat, Space source, Space target);
    static Morphism identity(CatPtr cat, Space s);

    const CatPtr& cat() const { return cat_; }
    const CategoryData& category() const { return *cat_; }
    const Space& source() const { return src_; }
    const Space& target() const { return tgt_; }
    int rank() const { return static_cast<int>(blocks_.size()); }
    Eigen::MatrixXcd& block(int c) { return blocks_[c]; }
    const Eigen::MatrixXcd& block(int c) const { return blocks_[c]; }

    Morphism dagger() const;
    /// Largest absolute entry.
    double norm() const;
    Morphism& operator+=(const Morphism& o);
    Morphism& operator-=(const Morphism& o);
    Morphism& operator*=(cplx s);

private:
    CatPtr cat_;
    Space src_, tgt_;
    std::vector<Eigen::MatrixXcd> blocks_;
};

Morphism operator+(Morphism a, const Morphism& b);
Morphism operator-(Morphism a, const Morphism& b);
Morphism operator-(Morphism a);
Morphism operator*(cplx s, Morphism a);
/// Composition f∘g.
Morphism compose(const Morphism& f, const Morphism& g);
inline Morphism operator*(const Morphism& f, const Morphism& g) { return compose(f, g); }
/// Max-entry distance; throws when the Hom spaces differ.
double distance(const Morphism& a, const Morphism& b);

/// f⊗g : X⊗Y → X'⊗Y', realized through F-moves into the canonical basis.
Morphism tensor(const Morphism& f, const Morphism& g);
/// ε^±_{X,Y} : X⊗Y → Y⊗X. sign = -1 gives the opposite braiding ε^-_{X,Y} = ε^+_{Y,X}†.
Morphism braid(const CatPtr& cat, const Space& X, const Space& Y, int sign = +1);
/// Unitary Φ : s → [flatten(s)] with identity blocks.
Morphism flatten_iso(const CatPtr& cat, const Space& s);
/// Unitary between two words with the same flattening (identity blocks).
Morphism regroup(const CatPtr& cat, const Space& from, const Space& to);

/// Standard solution r : 1 → X̄⊗X, rbar : 1 → X⊗X̄ with r†r = rbar†rbar = dim X.
struct ConjugatePair {
    Obj object;
    Obj conj;
    Morphism r;
    Morphism rbar;
};
ConjugatePair conjugate_solution(const CatPtr& cat, const Obj& X);

/// Coefficient of a morphism 1 → 1.
cplx scalar(const Morphism& f);
/// Categorical trace Σ_c d_c tr(f_c) of an endomorphism.
cplx trace(const Morphism& f);
/// (D1, D2) = rbar†((D1†D2)⊗1)rbar for D1, D2 : X → Y, with pair the standard
/// solution of X.
cplx trace_pair(const Morphism& D1, const Morphism& D2, const ConjugatePair& pair);
/// Left form rbar_Y†((D2 D1†)⊗1)rbar_Y with pair the standard solution of Y.
cplx trace_pair_left(const Morphism& D1, const Morphism& D2, const ConjugatePair& pair);

/// Frobenius reciprocity: f : X → Y⊗Z  ↦  (1⊗rbar_Z†)(f⊗1) : X⊗Z̄ → Y.
Morphism bend_right(const Morphism& f, const ConjugatePair& Z);
/// Inverse map g : X⊗Z̄ → Y  ↦  (g⊗1)(1⊗r_Z) : X → Y⊗Z.
Morphism unbend_right(const Morphism& g, const ConjugatePair& Z);

} // namespace qbound
