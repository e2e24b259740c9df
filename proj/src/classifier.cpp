#include "qbound/classifier.hpp"

#include "qbound/lift.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace qbound {

Eigen::MatrixXcd CentreAlgebra::left_mult(int t) const
{
    const int n = size();
    Eigen::MatrixXcd L(n, n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) L(c, b) = fc(t, b, c);
    return L;
}

Eigen::VectorXcd CentreAlgebra::product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const
{
    const int n = size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (int a = 0; a < n; ++a) {
        if (u(a) == 0.0) continue;
        for (int b = 0; b < n; ++b) {
            if (v(b) == 0.0) continue;
            const cplx ab = u(a) * v(b);
            for (int c = 0; c < n; ++c) out(c) += ab * fc(a, b, c);
        }
    }
    return out;
}

std::string CentreAlgebra::label_name(int t) const
{
    std::string s = cat->ring().name(basis[t].rho);
    if (ZL.size() && (ZL.maxCoeff() > 1 || ZR.maxCoeff() > 1))
        s += "[" + std::to_string(basis[t].i) + "," + std::to_string(basis[t].j) + "]";
    return s;
}

namespace {

Eigen::MatrixXi multiplicities(const QSystem& A)
{
    if (A.cat->is_product()) return theta_components(A);
    Eigen::MatrixXi Z(A.cat->rank(), 1);
    for (int a = 0; a < A.cat->rank(); ++a) Z(a, 0) = A.theta.mult(a);
    return Z;
}

double chiral_global_dim(const CategoryData& cat)
{
    return cat.is_product() ? cat.base()->global_dim() : cat.global_dim();
}

} // namespace

CentreAlgebra centre_algebra(const QSystem& AL, const QSystem& AR, double dA, double dB, double tol)
{
    if (AL.cat.get() != AR.cat.get()) throw Error("centre algebra: Q-systems live over different categories");
    for (const QSystem* A : {&AL, &AR}) {
        require_qsystem(*A, tol);
        if (!is_commutative(*A, tol)) throw Error("centre algebra: '" + A->name + "' is not commutative");
        if (A->theta.mult(0) != 1) throw Error("centre algebra: '" + A->name + "' is not irreducible (dim Hom(1,θ) != 1)");
    }
    const CatPtr& cat = AL.cat;
    CentreAlgebra alg;
    alg.cat = cat;
    alg.dL = AL.dim();
    alg.dR = AR.dim();
    alg.dCat = chiral_global_dim(*cat);
    alg.dA = dA;
    alg.dB = dB;
    alg.ZL = multiplicities(AL);
    alg.ZR = multiplicities(AR);
    alg.leftName = AL.name;
    alg.rightName = AR.name;

    auto WL = charged_fields(AL), WR = charged_fields(AR);
    for (const auto& l : WL)
        for (const auto& r : WR)
            if (l.label == r.label) {
                alg.basis.push_back({l.label, l.copy, r.copy});
                alg.T.push_back(l.W * r.W.dagger());
            }
    std::vector<std::size_t> order(alg.basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const TLabel &x = alg.basis[a], &y = alg.basis[b];
        return std::tie(x.rho, x.i, x.j) < std::tie(y.rho, y.i, y.j);
    });
    {
        std::vector<TLabel> bs;
        std::vector<Morphism> ts;
        for (std::size_t k : order) {
            bs.push_back(alg.basis[k]);
            ts.push_back(alg.T[k]);
        }
        alg.basis = std::move(bs);
        alg.T = std::move(ts);
    }
    const int n = alg.size();
    const double s = std::sqrt(alg.dL * alg.dR);
    auto expand = [&](const Morphism& M) {
        Eigen::VectorXcd v(n);
        for (int t = 0; t < n; ++t) {
            const TLabel& l = alg.basis[t];
            v(t) = M.block(l.rho)(l.i, l.j) * cat->dim(l.rho) / s;
        }
        return v;
    };

    alg.f.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    const Morphism XLd = AL.x.dagger();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Eigen::VectorXcd v = expand(XLd * tensor(alg.T[b], alg.T[a]) * AR.x);
            for (int c = 0; c < n; ++c) alg.f[(static_cast<std::size_t>(a) * n + b) * n + c] = v(c);
        }

    const Morphism RL = AL.x * AL.w, RR = AR.x * AR.w;
    const Morphism idL = Morphism::identity(cat, AL.th()), idR = Morphism::identity(cat, AR.th());
    alg.star.resize(n, n);
    for (int t = 0; t < n; ++t) {
        const Morphism inner = tensor(alg.T[t].dagger(), idL) * RL;
        alg.star.col(t) = expand(tensor(RR.dagger(), idL) * tensor(idR, inner));
    }

    const ConjugatePair pairR = conjugate_solution(cat, AR.theta);
    alg.normSq.resize(n);
    for (int t = 0; t < n; ++t) alg.normSq[t] = trace_pair(alg.T[t], alg.T[t], pairR).real();

    alg.unitIndex = -1;
    for (int t = 0; t < n; ++t)
        if (alg.basis[t].rho == 0 && alg.basis[t].i == 0 && alg.basis[t].j == 0) alg.unitIndex = t;
    if (alg.unitIndex < 0) throw Error("centre algebra: no unit element");
    return alg;
}

CentreAlgebra cardy_algebra(const CatPtr& chiral)
{
    if (chiral->is_product()) throw Error("cardy algebra takes a chiral category");
    const int n = chiral->rank();
    CentreAlgebra alg;
    alg.cat = product_opposite(chiral);
    const double D = chiral->global_dim();
    alg.dL = alg.dR = alg.dCat = D;
    alg.ZL = alg.ZR = Eigen::MatrixXi::Zero(n, n);
    alg.leftName = alg.rightName = chiral->name() + ":canonical";
    for (int r = 0; r < n; ++r) {
        alg.basis.push_back({alg.cat->pair(r, chiral->dual(r)), 0, 0});
        alg.ZL(r, chiral->dual(r)) = alg.ZR(r, chiral->dual(r)) = 1;
    }
    alg.f.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                alg.f[(static_cast<std::size_t>(a) * n + b) * n + c] =
                    chiral->N(a, b, c) * chiral->dim(c) / (chiral->dim(a) * chiral->dim(b));
    alg.star = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < n; ++r) alg.star(chiral->dual(r), r) = 1.0;
    alg.normSq.resize(n);
    for (int r = 0; r < n; ++r) alg.normSq[r] = D * D / (chiral->dim(r) * chiral->dim(r));
    alg.unitIndex = 0;
    return alg;
}

// ---------------------------------------------------------------- classify

namespace {

/// Splits an orthonormal family into clusters of (numerically) equal
/// eigenvalues of V†HV.
std::vector<Eigen::MatrixXcd> split_by(const Eigen::MatrixXcd& V, const Eigen::MatrixXcd& H, double clusterTol)
{
    Eigen::MatrixXcd h = V.adjoint() * H * V;
    h = (h + h.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Eigen::MatrixXcd> out;
    int start = 0;
    for (int k = 1; k <= ev.size(); ++k)
        if (k == ev.size() || ev(k) - ev(k - 1) > clusterTol * scale) {
            out.push_back(V * es.eigenvectors().middleCols(start, k - start));
            start = k;
        }
    return out;
}

long key(double x) { return std::lround(x * 1e7); }

} // namespace

std::vector<BoundaryCondition> classify(const CentreAlgebra& alg, const ClassifyOptions& opt)
{
    const int n = alg.size();
    if (!n) throw Error("classify: empty centre algebra");
    Eigen::VectorXd N(n), Ninv(n);
    for (int t = 0; t < n; ++t) {
        N(t) = std::sqrt(alg.normSq[t]);
        Ninv(t) = 1.0 / N(t);
    }
    // orthonormal coordinates make the left multiplications normal
    std::vector<Eigen::MatrixXcd> L(n), Ls(n);
    for (int t = 0; t < n; ++t) L[t] = N.asDiagonal() * alg.left_mult(t) * Ninv.asDiagonal();
    for (int t = 0; t < n; ++t) {
        Ls[t] = Eigen::MatrixXcd::Zero(n, n);
        for (int s = 0; s < n; ++s)
            if (alg.star(s, t) != 0.0) Ls[t] += alg.star(s, t) * L[s];
    }
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> g;
    auto random_h = [&] {
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
        for (int t = 0; t < n; ++t) {
            const cplx c(g(rng), g(rng));
            H += c * L[t] + std::conj(c) * Ls[t];
        }
        const double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
        if (herm > 1e-8 * std::max(1.0, H.cwiseAbs().maxCoeff())) {
            std::ostringstream os;
            os << "classify: left multiplications are not normal w.r.t. the trace form (hermiticity defect " << herm
               << ")";
            throw Error(os.str());
        }
        return H;
    };

    std::vector<Eigen::MatrixXcd> groups{Eigen::MatrixXcd::Identity(n, n)};
    std::vector<Eigen::VectorXcd> vecs;
    for (int attempt = 0; attempt < 12 && !groups.empty(); ++attempt) {
        const Eigen::MatrixXcd H = random_h();
        std::vector<Eigen::MatrixXcd> next;
        for (const auto& V : groups)
            for (auto& part : split_by(V, H, opt.clusterTol)) {
                if (part.cols() == 1) vecs.push_back(part.col(0));
                else next.push_back(std::move(part));
            }
        groups = std::move(next);
    }
    if (!groups.empty()) {
        std::ostringstream os;
        os << "classify: degenerate joint eigenspace of dimension " << groups.front().cols()
           << " survives refinement (cluster tolerance " << opt.clusterTol << ")";
        throw Error(os.str());
    }

    std::vector<BoundaryCondition> out;
    for (const Eigen::VectorXcd& vp : vecs) {
        BoundaryCondition bc;
        bc.values.resize(n);
        for (int t = 0; t < n; ++t) {
            bc.values(t) = vp.dot(L[t] * vp);
            const double res = (L[t] * vp - bc.values(t) * vp).norm();
            if (res > 1e-7) {
                std::ostringstream os;
                os << "classify: eigenvector is not a joint eigenvector (residual " << res << " on "
                   << alg.label_name(t) << ")";
                throw Error(os.str());
            }
        }
        const Eigen::VectorXcd v = Ninv.asDiagonal() * vp;
        const cplx s = (v.array() * bc.values.array()).sum();
        bc.idempotent = v / s;
        double norm = 0;
        for (int t = 0; t < n; ++t) norm += alg.label_dim(t) * std::norm(bc.values(t));
        bc.dimBeta = alg.dA * alg.dB * alg.dCat / std::sqrt(norm);
        out.push_back(std::move(bc));
    }
    std::sort(out.begin(), out.end(), [](const BoundaryCondition& a, const BoundaryCondition& b) {
        if (std::llround(a.dimBeta * 1e6) != std::llround(b.dimBeta * 1e6)) return a.dimBeta < b.dimBeta;
        for (int t = 0; t < a.values.size(); ++t) {
            const long ar = key(a.values(t).real()), br = key(b.values(t).real());
            if (ar != br) return ar > br;
            const long ai = key(a.values(t).imag()), bi = key(b.values(t).imag());
            if (ai != bi) return ai > bi;
        }
        return false;
    });
    for (std::size_t m = 0; m < out.size(); ++m) out[m].index = static_cast<int>(m);
    return out;
}

IdempotentReport check_idempotents(const CentreAlgebra& alg, const std::vector<BoundaryCondition>& conds)
{
    const int n = alg.size();
    IdempotentReport r;
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(n);
    for (std::size_t a = 0; a < conds.size(); ++a) {
        const Eigen::VectorXcd& I = conds[a].idempotent;
        sum += I;
        for (std::size_t b = 0; b < conds.size(); ++b) {
            Eigen::VectorXcd p = alg.product(I, conds[b].idempotent);
            if (a == b) p -= I;
            r.idempotency = std::max(r.idempotency, p.cwiseAbs().maxCoeff());
        }
        const Eigen::VectorXcd conj = alg.star * I.conjugate();
        r.selfAdjoint = std::max(r.selfAdjoint, (conj - I).cwiseAbs().maxCoeff());
    }
    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(n);
    unit(alg.unitIndex) = 1.0;
    r.completeness = (sum - unit).cwiseAbs().maxCoeff();
    return r;
}

Eigen::MatrixXcd verlinde_table(const CategoryData& chiral)
{
    const ModularData md = modular_data(chiral);
    if (!md.isModular) throw Error("verlinde table requires a modular category");
    const int n = chiral.rank();
    Eigen::MatrixXcd V(n, n);
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r) V(s, r) = md.S(r, s) * md.S(0, 0) / (md.S(r, 0) * md.S(0, s));
    return V;
}

Eigen::MatrixXcd s_matrix(const std::vector<BoundaryCondition>& conds, const CentreAlgebra& alg)
{
    const int m = static_cast<int>(conds.size()), n = alg.size();
    Eigen::MatrixXcd S(m, n);
    for (int a = 0; a < m; ++a)
        for (int t = 0; t < n; ++t)
            S(a, t) = conds[a].dimBeta * std::sqrt(alg.label_dim(t)) * conds[a].values(t) / (alg.dA * alg.dB * alg.dCat);
    if (m != n) throw Error("generalized S-matrix is not square: count differs from algebra dimension");
    const double res = (S * S.adjoint() - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
    if (res > 1e-8) {
        std::ostringstream os;
        os << "generalized S-matrix is not unitary (residual " << res << ")";
        throw Error(os.str());
    }
    return S;
}

std::vector<cplx> recovered_fusion_raw(const Eigen::MatrixXcd& SAB, const Eigen::MatrixXcd& SBC,
                                       const Eigen::MatrixXcd& SAC, const CentreAlgebra& AB,
                                       const CentreAlgebra& BC, const CentreAlgebra& AC)
{
    if (AB.cat.get() != BC.cat.get() || AB.cat.get() != AC.cat.get())
        throw Error("recovered fusion: algebras over different categories");
    const bool haveMorphisms = !AB.T.empty() && !BC.T.empty() && !AC.T.empty();
    struct Triple {
        int t1, t2, t3;
        double weight;
    };
    std::vector<Triple> triples;
    std::optional<ConjugatePair> pairC;
    if (haveMorphisms) pairC = conjugate_solution(AC.cat, Obj(AC.T[0].source().front()));
    const double dR2 = AB.dCat * AB.dCat;
    for (int t1 = 0; t1 < AB.size(); ++t1)
        for (int t2 = 0; t2 < BC.size(); ++t2)
            for (int t3 = 0; t3 < AC.size(); ++t3) {
                const int rho = AB.basis[t1].rho;
                if (BC.basis[t2].rho != rho || AC.basis[t3].rho != rho) continue;
                const double drho = AB.cat->dim(rho);
                double sp = 0;
                if (haveMorphisms) {
                    sp = trace_pair(AC.T[t3], AB.T[t1] * BC.T[t2], *pairC).real();
                } else {
                    const TLabel &a = AB.basis[t1], &b = BC.basis[t2], &c = AC.basis[t3];
                    if (a.j == b.i && a.i == c.i && b.j == c.j) sp = AB.dR * AB.dL * BC.dR / (drho * drho);
                }
                if (std::abs(sp) < 1e-14) continue;
                triples.push_back({t1, t2, t3, std::pow(drho, 1.5) / dR2 * sp});
            }
    const int m1 = SAB.rows(), m2 = SBC.rows(), m3 = SAC.rows();
    std::vector<cplx> N(static_cast<std::size_t>(m1) * m2 * m3, 0.0);
    for (int a = 0; a < m1; ++a)
        for (int b = 0; b < m2; ++b)
            for (int c = 0; c < m3; ++c) {
                cplx s = 0;
                for (const Triple& tr : triples)
                    s += tr.weight * SAB(a, tr.t1) * SBC(b, tr.t2) * std::conj(SAC(c, tr.t3));
                N[(static_cast<std::size_t>(a) * m2 + b) * m3 + c] = s;
            }
    return N;
}

std::vector<long> recovered_fusion(const Eigen::MatrixXcd& SAB, const Eigen::MatrixXcd& SBC,
                                   const Eigen::MatrixXcd& SAC, const CentreAlgebra& AB,
                                   const CentreAlgebra& BC, const CentreAlgebra& AC)
{
    const auto raw = recovered_fusion_raw(SAB, SBC, SAC, AB, BC, AC);
    std::vector<long> out(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const long r = std::lround(raw[k].real());
        const double err = std::abs(raw[k] - static_cast<double>(r));
        if (err > 1e-6 || r < 0) {
            std::ostringstream os;
            os << "recovered fusion coefficient " << raw[k] << " is not a nonnegative integer";
            throw Error(os.str());
        }
        out[k] = r;
    }
    return out;
}

} // namespace qbound
