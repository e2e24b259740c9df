#include "qbound/morphism.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace qbound {

// ---------------------------------------------------------------- Obj

Obj Obj::simple(int rank, int a, int mult)
{
    Obj o(rank);
    o.set(a, mult);
    return o;
}

void Obj::set(int a, int n)
{
    if (a < 0 || a >= rank()) throw Error("label out of range in object");
    if (n < 0) throw Error("negative multiplicity");
    m_[a] = n;
}

std::vector<int> Obj::support() const
{
    std::vector<int> s;
    for (int a = 0; a < rank(); ++a)
        if (m_[a] > 0) s.push_back(a);
    return s;
}

bool Obj::is_zero() const { return total() == 0; }

int Obj::total() const
{
    int t = 0;
    for (int v : m_) t += v;
    return t;
}

double Obj::dim(const CategoryData& cat) const
{
    double d = 0;
    for (int a = 0; a < rank(); ++a) d += m_[a] * cat.dim(a);
    return d;
}

Obj Obj::conj(const CategoryData& cat) const
{
    Obj o(rank());
    for (int a = 0; a < rank(); ++a) o.m_[cat.dual(a)] = m_[a];
    return o;
}

Obj Obj::operator+(const Obj& o) const
{
    if (o.rank() != rank()) throw Error("direct sum of objects over different categories");
    Obj r = *this;
    for (int a = 0; a < rank(); ++a) r.m_[a] += o.m_[a];
    return r;
}

std::string Obj::str(const CategoryData& cat) const
{
    std::ostringstream os;
    bool first = true;
    for (int a = 0; a < rank(); ++a) {
        if (!m_[a]) continue;
        if (!first) os << "⊕";
        first = false;
        if (m_[a] > 1) os << m_[a] << "·";
        os << cat.ring().name(a);
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------- bases

std::vector<int> SpaceBasis::key(const Channel& ch)
{
    std::vector<int> k;
    k.reserve(ch.labels.size() * 3);
    for (std::size_t i = 0; i < ch.labels.size(); ++i) {
        k.push_back(ch.labels[i]);
        k.push_back(ch.copies[i]);
        if (i > 0) k.push_back(ch.edges[i]);
    }
    return k;
}

namespace {

using CacheKey = std::vector<std::int64_t>;

void append_space(CacheKey& k, const Space& s)
{
    for (const Obj& o : s) {
        for (int v : o.mults()) k.push_back(v);
        k.push_back(-1);
    }
}

struct PairBlock {
    int a, b, offset, nx, ny;
};

/// Basis change from the canonical basis of X⊗Y to the pair basis
/// ⊕_{a,b} Hom(a,X)⊗Hom(b,Y)⊗Hom(c,a⊗b), per total label c.
struct SplitData {
    std::vector<std::vector<PairBlock>> blocks;
    std::vector<Eigen::SparseMatrix<cplx>> P;
    const PairBlock* find(int c, int a, int b) const
    {
        for (const auto& pb : blocks[c])
            if (pb.a == a && pb.b == b) return &pb;
        return nullptr;
    }
};

// Read-mostly cache; entries are fully built before insertion.
std::shared_mutex cacheMutex;
std::map<CacheKey, std::shared_ptr<const SpaceBasis>> basisCache;
std::map<CacheKey, std::shared_ptr<const SplitData>> splitCache;

template <class V, class F>
std::shared_ptr<const V> cached(std::map<CacheKey, std::shared_ptr<const V>>& cache, const CacheKey& key, F build)
{
    {
        std::shared_lock lock(cacheMutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::shared_ptr<const V> value = build();
    std::unique_lock lock(cacheMutex);
    return cache.try_emplace(key, value).first->second;
}

std::shared_ptr<const SpaceBasis> build_basis(const CategoryData& cat, const Space& s)
{
    const int n = cat.rank();
    for (const Obj& o : s)
        if (o.rank() != n) throw Error("object rank does not match category " + cat.name());
    auto out = std::make_shared<SpaceBasis>();
    out->channels.resize(n);
    out->index.resize(n);
    if (s.empty()) {
        out->channels[0].push_back(Channel{});
    } else {
        Channel ch;
        std::function<void(std::size_t)> dfs = [&](std::size_t k) {
            if (k == s.size()) {
                out->channels[ch.edges.back()].push_back(ch);
                return;
            }
            for (int l : s[k].support())
                for (int i = 0; i < s[k].mult(l); ++i) {
                    ch.labels.push_back(l);
                    ch.copies.push_back(i);
                    if (k == 0) {
                        ch.edges.push_back(l);
                        dfs(k + 1);
                        ch.edges.pop_back();
                    } else {
                        for (int e : cat.ring().products(ch.edges.back(), l)) {
                            ch.edges.push_back(e);
                            dfs(k + 1);
                            ch.edges.pop_back();
                        }
                    }
                    ch.labels.pop_back();
                    ch.copies.pop_back();
                }
        };
        dfs(0);
    }
    for (int c = 0; c < n; ++c)
        for (std::size_t i = 0; i < out->channels[c].size(); ++i)
            out->index[c].emplace(SpaceBasis::key(out->channels[c][i]), static_cast<int>(i));
    return out;
}

std::shared_ptr<const SplitData> build_split(const CategoryData& cat, const Space& X, const Space& Y)
{
    const int n = cat.rank();
    Space XY = X;
    XY.insert(XY.end(), Y.begin(), Y.end());
    auto bX = basis(cat, X);
    auto bY = basis(cat, Y);
    auto bXY = basis(cat, XY);
    auto out = std::make_shared<SplitData>();
    out->blocks.resize(n);
    out->P.resize(n);
    for (int c = 0; c < n; ++c) {
        int off = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (!cat.N(a, b, c) || !bX->dim(a) || !bY->dim(b)) continue;
                out->blocks[c].push_back({a, b, off, bX->dim(a), bY->dim(b)});
                off += bX->dim(a) * bY->dim(b);
            }
        if (off != bXY->dim(c)) throw Error("internal: pair basis size mismatch");
    }
    const std::size_t kx = X.size(), ky = Y.size();
    for (int c = 0; c < n; ++c) {
        const int dimc = bXY->dim(c);
        std::vector<Eigen::Triplet<cplx>> trip;
        for (int col = 0; col < dimc; ++col) {
            const Channel& ch = bXY->channels[c][col];
            if (kx == 0 || ky == 0) {
                trip.emplace_back(col, col, 1.0);
                continue;
            }
            Channel xs;
            xs.labels.assign(ch.labels.begin(), ch.labels.begin() + kx);
            xs.copies.assign(ch.copies.begin(), ch.copies.begin() + kx);
            xs.edges.assign(ch.edges.begin(), ch.edges.begin() + kx);
            const int a = xs.edges.back();
            const int xi = bX->index[a].at(SpaceBasis::key(xs));
            struct State {
                Channel y;
                cplx amp;
            };
            std::vector<State> states;
            {
                Channel y;
                y.labels = {ch.labels[kx]};
                y.copies = {ch.copies[kx]};
                y.edges = {ch.labels[kx]};
                states.push_back({y, 1.0});
            }
            int f = ch.edges[kx];
            for (std::size_t k = 1; k < ky; ++k) {
                const int yl = ch.labels[kx + k], yc = ch.copies[kx + k], f2 = ch.edges[kx + k];
                std::vector<State> next;
                for (const State& st : states) {
                    const int b = st.y.edges.back();
                    for (int b2 : cat.ring().products(b, yl)) {
                        if (!cat.N(a, b2, f2)) continue;
                        cplx coef = cat.F(a, b, yl, f2, f, b2);
                        if (coef == 0.0) continue;
                        State s2 = st;
                        s2.y.labels.push_back(yl);
                        s2.y.copies.push_back(yc);
                        s2.y.edges.push_back(b2);
                        s2.amp *= coef;
                        next.push_back(std::move(s2));
                    }
                }
                states = std::move(next);
                f = f2;
            }
            for (const State& st : states) {
                const int b = st.y.edges.back();
                const PairBlock* pb = out->find(c, a, b);
                if (!pb) throw Error("internal: missing pair block");
                const int yi = bY->index[b].at(SpaceBasis::key(st.y));
                trip.emplace_back(pb->offset + xi * pb->ny + yi, col, st.amp);
            }
        }
        out->P[c].resize(dimc, dimc);
        out->P[c].setFromTriplets(trip.begin(), trip.end());
    }
    return out;
}

std::shared_ptr<const SplitData> split(const CategoryData& cat, const Space& X, const Space& Y)
{
    CacheKey k{static_cast<std::int64_t>(cat.id())};
    append_space(k, X);
    k.push_back(-2);
    append_space(k, Y);
    return cached(splitCache, k, [&] { return build_split(cat, X, Y); });
}

Space concat(const Space& a, const Space& b)
{
    Space r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

} // namespace

std::shared_ptr<const SpaceBasis> basis(const CategoryData& cat, const Space& s)
{
    CacheKey k{static_cast<std::int64_t>(cat.id())};
    append_space(k, s);
    return cached(basisCache, k, [&] { return build_basis(cat, s); });
}

int space_dim(const CategoryData& cat, const Space& s, int c) { return basis(cat, s)->dim(c); }

Obj flatten(const CategoryData& cat, const Space& s)
{
    auto b = basis(cat, s);
    Obj o(cat.rank());
    for (int c = 0; c < cat.rank(); ++c) o.set(c, b->dim(c));
    return o;
}

double dim(const CategoryData& cat, const Space& s) { return flatten(cat, s).dim(cat); }

std::string space_str(const CategoryData& cat, const Space& s)
{
    if (s.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += " ⊗ ";
        out += "(" + s[i].str(cat) + ")";
    }
    return out;
}

// ---------------------------------------------------------------- Morphism

Morphism::Morphism(CatPtr cat, Space source, Space target)
    : cat_(std::move(cat)), src_(std::move(source)), tgt_(std::move(target))
{
    auto bs = basis(*cat_, src_);
    auto bt = basis(*cat_, tgt_);
    blocks_.resize(cat_->rank());
    for (int c = 0; c < cat_->rank(); ++c) blocks_[c] = Eigen::MatrixXcd::Zero(bt->dim(c), bs->dim(c));
}

Morphism Morphism::identity(CatPtr cat, Space s)
{
    Morphism m(std::move(cat), s, s);
    for (auto& b : m.blocks_) b.setIdentity();
    return m;
}

Morphism Morphism::dagger() const
{
    Morphism m;
    m.cat_ = cat_;
    m.src_ = tgt_;
    m.tgt_ = src_;
    m.blocks_.resize(blocks_.size());
    for (std::size_t c = 0; c < blocks_.size(); ++c) m.blocks_[c] = blocks_[c].adjoint();
    return m;
}

double Morphism::norm() const
{
    double n = 0;
    for (const auto& b : blocks_)
        if (b.size()) n = std::max(n, b.cwiseAbs().maxCoeff());
    return n;
}

namespace {
void require_same_hom(const Morphism& a, const Morphism& b, const char* what)
{
    if (a.cat().get() != b.cat().get() || a.source() != b.source() || a.target() != b.target())
        throw Error(std::string(what) + ": morphisms live in different Hom spaces");
}
} // namespace

Morphism& Morphism::operator+=(const Morphism& o)
{
    require_same_hom(*this, o, "sum");
    for (std::size_t c = 0; c < blocks_.size(); ++c) blocks_[c] += o.blocks_[c];
    return *this;
}

Morphism& Morphism::operator-=(const Morphism& o)
{
    require_same_hom(*this, o, "difference");
    for (std::size_t c = 0; c < blocks_.size(); ++c) blocks_[c] -= o.blocks_[c];
    return *this;
}

Morphism& Morphism::operator*=(cplx s)
{
    for (auto& b : blocks_) b *= s;
    return *this;
}

Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
Morphism operator-(Morphism a) { return a *= -1.0; }
Morphism operator*(cplx s, Morphism a) { return a *= s; }

Morphism compose(const Morphism& f, const Morphism& g)
{
    if (f.cat().get() != g.cat().get()) throw Error("compose: category mismatch");
    if (f.source() != g.target()) {
        const auto& cat = f.category();
        throw Error("compose: source " + space_str(cat, f.source()) + " != target " + space_str(cat, g.target()));
    }
    Morphism m(f.cat(), g.source(), f.target());
    for (int c = 0; c < m.rank(); ++c) m.block(c).noalias() = f.block(c) * g.block(c);
    return m;
}

double distance(const Morphism& a, const Morphism& b)
{
    require_same_hom(a, b, "distance");
    return (a - b).norm();
}

Morphism tensor(const Morphism& f, const Morphism& g)
{
    if (f.cat().get() != g.cat().get()) throw Error("tensor: category mismatch");
    const CategoryData& cat = f.category();
    auto sIn = split(cat, f.source(), g.source());
    auto sOut = split(cat, f.target(), g.target());
    Morphism m(f.cat(), concat(f.source(), g.source()), concat(f.target(), g.target()));
    for (int c = 0; c < cat.rank(); ++c) {
        const int rows = m.block(c).rows(), cols = m.block(c).cols();
        if (!rows || !cols) continue;
        std::vector<Eigen::Triplet<cplx>> trip;
        for (const PairBlock& pin : sIn->blocks[c]) {
            const PairBlock* pout = sOut->find(c, pin.a, pin.b);
            if (!pout) continue;
            const auto& fa = f.block(pin.a);
            const auto& gb = g.block(pin.b);
            for (int i = 0; i < fa.rows(); ++i)
                for (int k = 0; k < fa.cols(); ++k) {
                    const cplx x = fa(i, k);
                    if (x == 0.0) continue;
                    for (int j = 0; j < gb.rows(); ++j)
                        for (int l = 0; l < gb.cols(); ++l) {
                            const cplx y = gb(j, l);
                            if (y == 0.0) continue;
                            trip.emplace_back(pout->offset + i * pout->ny + j, pin.offset + k * pin.ny + l, x * y);
                        }
                }
        }
        Eigen::SparseMatrix<cplx> K(rows, cols);
        K.setFromTriplets(trip.begin(), trip.end());
        Eigen::SparseMatrix<cplx> outAdj = sOut->P[c].adjoint();
        Eigen::SparseMatrix<cplx> prod = outAdj * K * sIn->P[c];
        m.block(c) = Eigen::MatrixXcd(prod);
    }
    return m;
}

Morphism braid(const CatPtr& catp, const Space& X, const Space& Y, int sign)
{
    if (sign < 0) return braid(catp, Y, X, +1).dagger();
    const CategoryData& cat = *catp;
    auto sXY = split(cat, X, Y);
    auto sYX = split(cat, Y, X);
    Morphism m(catp, concat(X, Y), concat(Y, X));
    for (int c = 0; c < cat.rank(); ++c) {
        const int d = m.block(c).rows();
        if (!d) continue;
        std::vector<Eigen::Triplet<cplx>> trip;
        for (const PairBlock& p : sXY->blocks[c]) {
            const PairBlock* q = sYX->find(c, p.b, p.a);
            const cplx R = cat.R(p.a, p.b, c);
            for (int i = 0; i < p.nx; ++i)
                for (int j = 0; j < p.ny; ++j) trip.emplace_back(q->offset + j * q->ny + i, p.offset + i * p.ny + j, R);
        }
        Eigen::SparseMatrix<cplx> B(d, d);
        B.setFromTriplets(trip.begin(), trip.end());
        Eigen::SparseMatrix<cplx> outAdj = sYX->P[c].adjoint();
        Eigen::SparseMatrix<cplx> prod = outAdj * B * sXY->P[c];
        m.block(c) = Eigen::MatrixXcd(prod);
    }
    return m;
}

Morphism flatten_iso(const CatPtr& cat, const Space& s) { return regroup(cat, s, Space{flatten(*cat, s)}); }

Morphism regroup(const CatPtr& cat, const Space& from, const Space& to)
{
    if (flatten(*cat, from) != flatten(*cat, to)) throw Error("regroup: spaces are not isomorphic");
    Morphism m(cat, from, to);
    for (int c = 0; c < m.rank(); ++c) m.block(c).setIdentity();
    return m;
}

// ---------------------------------------------------------------- conjugates, traces

namespace {

int channel_index(const CategoryData& cat, const Space& s, int c, const std::vector<int>& key)
{
    auto b = basis(cat, s);
    auto it = b->index[c].find(key);
    if (it == b->index[c].end()) throw Error("internal: channel not found");
    return it->second;
}

} // namespace

ConjugatePair conjugate_solution(const CatPtr& catp, const Obj& X)
{
    const CategoryData& cat = *catp;
    ConjugatePair p;
    p.object = X;
    p.conj = X.conj(cat);
    p.r = Morphism(catp, Space{}, Space{p.conj, X});
    p.rbar = Morphism(catp, Space{}, Space{X, p.conj});
    for (int a : X.support()) {
        const int ab = cat.dual(a);
        // phase of rbar fixed by the zig-zag on the simple object a
        Obj A = Obj::simple(cat.rank(), a), Ab = Obj::simple(cat.rank(), ab);
        Morphism r1(catp, Space{}, Space{Ab, A}), rb1(catp, Space{}, Space{A, Ab});
        r1.block(0)(channel_index(cat, r1.target(), 0, {ab, 0, a, 0, 0}), 0) = std::sqrt(cat.dim(a));
        rb1.block(0)(channel_index(cat, rb1.target(), 0, {a, 0, ab, 0, 0}), 0) = std::sqrt(cat.dim(a));
        Morphism idA = Morphism::identity(catp, Space{A});
        Morphism z = tensor(rb1.dagger(), idA) * tensor(idA, r1);
        const cplx psi = 1.0 / std::conj(z.block(a)(0, 0));
        for (int i = 0; i < X.mult(a); ++i) {
            p.r.block(0)(channel_index(cat, p.r.target(), 0, {ab, i, a, i, 0}), 0) = std::sqrt(cat.dim(a));
            p.rbar.block(0)(channel_index(cat, p.rbar.target(), 0, {a, i, ab, i, 0}), 0) =
                std::sqrt(cat.dim(a)) * psi;
        }
    }
    return p;
}

cplx scalar(const Morphism& f)
{
    for (int c = 0; c < f.rank(); ++c) {
        const auto& b = f.block(c);
        const bool unitShape = c == 0 ? (b.rows() == 1 && b.cols() == 1) : (b.rows() == 0 && b.cols() == 0);
        if (!unitShape) throw Error("scalar: morphism is not an endomorphism of the tensor unit");
    }
    return f.block(0)(0, 0);
}

cplx trace(const Morphism& f)
{
    if (f.source() != f.target()) throw Error("trace: not an endomorphism");
    cplx t = 0;
    for (int c = 0; c < f.rank(); ++c) t += f.category().dim(c) * f.block(c).trace();
    return t;
}

cplx trace_pair(const Morphism& D1, const Morphism& D2, const ConjugatePair& pair)
{
    if (D1.source() != Space{pair.object}) throw Error("trace_pair: conjugate pair does not match the source");
    const CatPtr& cat = D1.cat();
    Morphism M = D1.dagger() * D2;
    Morphism inner = tensor(M, Morphism::identity(cat, Space{pair.conj}));
    return scalar(pair.rbar.dagger() * inner * pair.rbar);
}

cplx trace_pair_left(const Morphism& D1, const Morphism& D2, const ConjugatePair& pair)
{
    if (D1.target() != Space{pair.object}) throw Error("trace_pair_left: conjugate pair does not match the target");
    const CatPtr& cat = D1.cat();
    Morphism M = D2 * D1.dagger();
    Morphism inner = tensor(M, Morphism::identity(cat, Space{pair.conj}));
    return scalar(pair.rbar.dagger() * inner * pair.rbar);
}

Morphism bend_right(const Morphism& f, const ConjugatePair& Z)
{
    const CatPtr& cat = f.cat();
    if (f.target().empty() || f.target().back() != Z.object) throw Error("bend_right: last target factor is not Z");
    Space Y(f.target().begin(), f.target().end() - 1);
    return tensor(Morphism::identity(cat, Y), Z.rbar.dagger()) *
           tensor(f, Morphism::identity(cat, Space{Z.conj}));
}

Morphism unbend_right(const Morphism& g, const ConjugatePair& Z)
{
    const CatPtr& cat = g.cat();
    if (g.source().empty() || g.source().back() != Z.conj) throw Error("unbend_right: last source factor is not Z̄");
    Space X(g.source().begin(), g.source().end() - 1);
    return tensor(g, Morphism::identity(cat, Space{Z.object})) * tensor(Morphism::identity(cat, X), Z.r);
}

} // namespace qbound
