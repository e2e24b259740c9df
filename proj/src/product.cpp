#include "qbound/product.hpp"

#include "qbound/lift.hpp"

#include <cmath>

namespace qbound {

QSystem braided_product(const QSystem& A1, const QSystem& A2, int sign)
{
    if (A1.cat.get() != A2.cat.get()) throw Error("braided product: Q-systems live over different categories");
    const CatPtr& cat = A1.cat;
    const Space t12{A1.theta, A2.theta};
    const Morphism phi = flatten_iso(cat, t12);
    const Morphism id1 = Morphism::identity(cat, A1.th()), id2 = Morphism::identity(cat, A2.th());
    const Morphism mid = tensor(tensor(id1, braid(cat, A1.th(), A2.th(), sign)), id2);
    QSystem q;
    q.cat = cat;
    q.theta = flatten(*cat, t12);
    q.name = A1.name + (sign > 0 ? " ×+ " : " ×- ") + A2.name;
    q.w = phi * tensor(A1.w, A2.w);
    q.x = tensor(phi, phi) * mid * tensor(A1.x, A2.x) * phi.dagger();
    return q;
}

ProjectionInTheta check_projection(const QSystem& A, Morphism p, double tol)
{
    const CatPtr& cat = A.cat;
    const Morphism id = Morphism::identity(cat, A.th());
    ProjectionInTheta P;
    P.idempotency = distance(p * p, p);
    P.selfAdjoint = distance(p.dagger(), p);
    const Morphism pxp = tensor(p, id) * A.x * p;
    P.intermediate = std::max({distance(p * A.w, A.w), distance(tensor(p, p) * A.x, pxp),
                               distance(pxp, tensor(id, p) * A.x * p)});
    const Morphism lhs = tensor(id, p) * A.x;
    const Morphism px = tensor(p, id) * A.x;
    P.leftCentre = distance(lhs, braid(cat, A.th(), A.th(), +1) * px);
    P.rightCentre = distance(lhs, braid(cat, A.th(), A.th(), -1) * px);
    P.isProjection = P.idempotency <= tol && P.selfAdjoint <= tol;
    P.satisfiesIntermediate = P.intermediate <= tol;
    P.satisfiesLeftCentreRel = P.leftCentre <= tol;
    P.satisfiesRightCentreRel = P.rightCentre <= tol;
    P.p = std::move(p);
    return P;
}

ProjectionInTheta centre_projection(const QSystem& A, int side, double tol)
{
    const CatPtr& cat = A.cat;
    const Space th = A.th();
    const Morphism id = Morphism::identity(cat, th);
    const Morphism r = A.x * A.w;
    const Morphism x2 = tensor(A.x, id) * A.x;
    const Morphism twisted = tensor(id, braid(cat, th, th, side)) * x2;
    Morphism p = (1.0 / A.dim()) * (tensor(r.dagger(), id) * twisted);
    return check_projection(A, std::move(p), tol);
}

double projection_trace(const QSystem& A, const Morphism& p)
{
    const Morphism r = A.x * A.w;
    const cplx t = scalar(r.dagger() * tensor(Morphism::identity(A.cat, A.th()), p) * r);
    return t.real();
}

Reduction reduce(const QSystem& A, const ProjectionInTheta& P, double tol)
{
    if (!P.isProjection) throw Error("reduce: p is not a projection (p² = p = p† fails)");
    if (!P.satisfiesIntermediate) throw Error("reduce: p fails the intermediate relations");
    const CatPtr& cat = A.cat;
    const int n = cat->rank();
    std::vector<Eigen::MatrixXcd> cols(n);
    Obj sub(n);
    for (int c = 0; c < n; ++c) {
        const Eigen::MatrixXcd& B = P.p.block(c);
        const int m = static_cast<int>(B.rows());
        if (!m) continue;
        const int k = static_cast<int>(std::lround(B.trace().real()));
        Eigen::MatrixXcd S(m, k);
        int got = 0;
        for (int j = 0; j < m && got < k; ++j) {
            Eigen::VectorXcd v = B.col(j);
            for (int i = 0; i < got; ++i) v -= S.col(i) * S.col(i).dot(v);
            const double nv = v.norm();
            if (nv < 1e-6) continue;
            S.col(got++) = v / nv;
        }
        if (got != k) throw Error("reduce: could not factor the projection on label " + cat->ring().name(c));
        cols[c] = S;
        sub.set(c, k);
    }
    Reduction red;
    red.s = Morphism(cat, Space{sub}, A.th());
    for (int c = 0; c < n; ++c)
        if (sub.mult(c)) red.s.block(c) = cols[c];
    // phase the unit columns so that s†w is positive
    Eigen::VectorXcd w0 = red.s.block(0).adjoint() * A.w.block(0).col(0);
    for (int i = 0; i < w0.size(); ++i)
        if (std::abs(w0(i)) > 1e-9) red.s.block(0).col(i) *= w0(i) / std::abs(w0(i));
    QSystem& q = red.q;
    q.cat = cat;
    q.theta = sub;
    q.name = A.name + "|p";
    const double d = A.dim(), dp = q.dim();
    const Morphism sd = red.s.dagger();
    q.w = std::sqrt(dp / d) * (sd * A.w);
    q.x = std::sqrt(d / dp) * (tensor(sd, sd) * A.x * red.s);
    require_qsystem(q, tol);
    return red;
}

Reduction full_centre_reduction(const QSystem& A, int side, double tol)
{
    if (A.cat->is_product()) throw Error("full centre takes a chiral Q-system");
    if (!modular_data(*A.cat, tol).isModular)
        throw Error("full centre requires a modular category; " + A.cat->name() + " is not modular");
    const QSystem lifted = lift_qsystem(A);
    const QSystem can = canonical_qsystem(A.cat);
    const QSystem prod = braided_product(lifted, can, side);
    const ProjectionInTheta p = centre_projection(prod, side, tol);
    Reduction red = reduce(prod, p, tol);
    red.q.name = (side > 0 ? "Z+[" : "Z-[") + A.name + "]";
    return red;
}

QSystem full_centre(const QSystem& A, int side, double tol) { return full_centre_reduction(A, side, tol).q; }

double equivalence_residual(const Reduction& reduced, const QSystem& target, const Morphism& sTarget)
{
    const CatPtr& cat = target.cat;
    const Morphism u = reduced.s.dagger() * sTarget;
    const QSystem& q = reduced.q;
    if (u.source() != target.th() || u.target() != q.th()) throw Error("equivalence: isometries do not match the Q-systems");
    return std::max({distance(u.dagger() * u, Morphism::identity(cat, target.th())),
                     distance(u * u.dagger(), Morphism::identity(cat, q.th())),
                     distance(q.x, tensor(u, u) * target.x * u.dagger()), distance(q.w, u * target.w)});
}

Morphism second_factor_embedding(const QSystem& A1, const QSystem& A2)
{
    const CatPtr& cat = A1.cat;
    const Space t12{A1.theta, A2.theta};
    return (1.0 / std::sqrt(A1.dim())) *
           (flatten_iso(cat, t12) * tensor(A1.w, Morphism::identity(cat, A2.th())));
}

Eigen::MatrixXi coupling_matrix(const QSystem& Q2d) { return theta_components(Q2d); }

} // namespace qbound
