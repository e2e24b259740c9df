#include "qbound/lift.hpp"

namespace qbound {

LiftMap lift_map(const CatPtr& chiral)
{
    if (chiral->is_product()) throw Error("lift: category is already a product");
    return LiftMap{chiral, product_opposite(chiral)};
}

Obj lift_object(const LiftMap& L, const Obj& o)
{
    if (o.rank() != L.source->rank()) throw Error("lift: object does not belong to " + L.source->name());
    Obj out(L.target->rank());
    for (int a : o.support()) out.set(L(a), o.mult(a));
    return out;
}

Morphism lift_morphism(const LiftMap& L, const Morphism& f)
{
    if (f.cat().get() != L.source.get()) throw Error("lift: category mismatch");
    Space src, tgt;
    for (const Obj& o : f.source()) src.push_back(lift_object(L, o));
    for (const Obj& o : f.target()) tgt.push_back(lift_object(L, o));
    // channels over (a,0)-labels are in the same order as over a
    Morphism g(L.target, src, tgt);
    for (int c = 0; c < L.source->rank(); ++c) g.block(L(c)) = f.block(c);
    return g;
}

QSystem lift_qsystem(const QSystem& A, const LiftMap& L)
{
    if (A.cat.get() != L.source.get()) throw Error("lift: Q-system category mismatch");
    QSystem q;
    q.cat = L.target;
    q.theta = lift_object(L, A.theta);
    q.w = lift_morphism(L, A.w);
    q.x = lift_morphism(L, A.x);
    q.name = A.name + "⊗1";
    return q;
}

Eigen::MatrixXi theta_components(const QSystem& Q2d)
{
    if (!Q2d.cat->is_product()) throw Error("coupling matrix needs a Q-system over a product category");
    const int n = Q2d.cat->base()->rank();
    Eigen::MatrixXi Z = Eigen::MatrixXi::Zero(n, n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) Z(s, t) = Q2d.theta.mult(Q2d.cat->pair(s, t));
    return Z;
}

} // namespace qbound
