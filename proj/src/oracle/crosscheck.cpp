#include "qbound/oracle/crosscheck.hpp"

#include "qbound/category.hpp"
#include "qbound/classifier.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace qbound::oracle {

namespace {

std::vector<cplx> numeric(const std::vector<Scalar>& v)
{
    std::vector<cplx> out;
    for (const auto& s : v) out.push_back(s.value());
    return out;
}

void record(SuiteReport& rep, const std::string& what, double residual, double tol)
{
    std::ostringstream os;
    os << what << ": residual " << residual;
    rep.log.push_back(os.str());
    if (residual <= tol) {
        ++rep.passed;
    } else {
        ++rep.failed;
        rep.failures.push_back(os.str());
    }
}

} // namespace

SuiteReport run_classifier_crosscheck(const std::string& text, double tol)
{
    const auto start = std::chrono::steady_clock::now();
    Interpreter in;
    SuiteReport rep = in.run(text, "classifier-crosscheck");
    const QContext& P = in.context("P");
    const int depth = in.depth();

    // oracle basis in Cardy order: id, tau, sigma
    const std::vector<Expr> basis = {P.obs(Expr(1)), in.value("Bt"), in.value("Bs")};
    const auto alg = cardy_algebra(build_builtin("ising"));
    const int n = alg.size();

    auto expand = [&](const Expr& e, const std::string& what) {
        auto c = decompose(e, basis, depth);
        if (!c) throw Error("classifier-crosscheck: " + what + " is not in the span of {1, Bt, Bs}");
        return numeric(*c);
    };

    double fres = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto c = expand(P.mul(basis[a], basis[b]), "a product");
            for (int k = 0; k < n; ++k) fres = std::max(fres, std::abs(c[k] - alg.fc(a, b, k)));
        }
    record(rep, "structure constants of {1, Bt, Bs} against the Cardy algebra", fres, tol);

    double sres = 0;
    for (int t = 0; t < n; ++t) {
        const auto c = expand(P.star(basis[t]), "a conjugate");
        for (int k = 0; k < n; ++k) sres = std::max(sres, std::abs(c[k] - alg.star(k, t)));
    }
    record(rep, "Frobenius conjugation against the Cardy algebra", sres, tol);

    // characters: B E_m = π_m(B) E_m
    const std::vector<Expr> E = {in.value("E1"), in.value("E2"), in.value("E3")};
    std::vector<std::vector<cplx>> pi(E.size());
    std::vector<std::vector<cplx>> idem(E.size());
    for (std::size_t m = 0; m < E.size(); ++m) {
        for (int t = 0; t < n; ++t) {
            auto c = decompose(P.mul(basis[t], E[m]), {E[m]}, depth);
            if (!c) throw Error("classifier-crosscheck: E" + std::to_string(m + 1) + " is not an eigenvector");
            pi[m].push_back((*c)[0].value());
        }
        idem[m] = expand(E[m], "E" + std::to_string(m + 1));
    }

    const auto rows = classify(alg);
    record(rep, "number of boundary conditions", std::abs(static_cast<double>(rows.size()) - static_cast<double>(E.size())), 0);
    std::vector<bool> used(E.size(), false);
    for (const auto& row : rows) {
        std::size_t best = E.size();
        double bestRes = INFINITY;
        for (std::size_t m = 0; m < E.size(); ++m) {
            if (used[m]) continue;
            double res = 0;
            for (int t = 0; t < n; ++t) res = std::max(res, std::abs(row.values(t) - pi[m][t]));
            if (res < bestRes) bestRes = res, best = m;
        }
        const std::string label = "boundary condition " + std::to_string(row.index);
        if (best == E.size()) {
            record(rep, label + " has no exact counterpart", INFINITY, tol);
            continue;
        }
        used[best] = true;
        record(rep, label + " values against E" + std::to_string(best + 1), bestRes, tol);
        double ires = 0;
        for (int t = 0; t < n; ++t) ires = std::max(ires, std::abs(row.idempotent(t) - idem[best][t]));
        record(rep, label + " idempotent against E" + std::to_string(best + 1), ires, tol);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace qbound::oracle
