#pragma once

#include "qbound/oracle/expr.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qbound::oracle {

/// Outcome of one script or suite run.
struct SuiteReport {
    std::string suite;
    int passed = 0;
    int failed = 0;
    /// One line per failed check: the identity as written and its residual.
    std::vector<std::string> failures;
    std::vector<std::string> log;
    double seconds = 0;
    bool ok() const { return failed == 0; }
};

/// Line-oriented verification scripts over O₂ ⊗ O₂.
///
///     suite NAME
///     resolve N                           identity-resolution depth (default 2)
///     let NAME = EXPR
///     endo NAME: r -> EXPR, t -> EXPR     chiral map on the first copy
///     endo NAME = A x B                   A ⊗ B, A and B chiral maps or id
///     endo NAME = A o B o ...             composite, the last factor acts first
///     sector NAME = E @ EXPR, ...         Σ T_i E_i(·) T_i*
///     braid A, B = EXPR                   chiral ε⁺_{A,B}
///     qsystem NAME: theta = E, w = EXPR, x = EXPR
///     check EXPR == EXPR [for v in EXPR, ...]
///     check EXPR != EXPR [for v in EXPR, ...]
///     echo TEXT
///
/// Expressions: juxtaposition multiplies, postfix * is the adjoint, & is the
/// tensor product of two first-copy expressions (a & b = a·prime(b)), / and
/// ^n act on scalars (^n also on operators for n ≥ 0). Generators r, t and
/// r', t'; constants sqrt2, i, zeta (e^{iπ/8}), q (2^{1/4}), sqrti, sqrtmi.
/// Calls: E(e) applies an endomorphism, prime(e), eps(X, Y), epsm(X, Y),
/// and for a Q-system A: A.mul(a, b, ...), A.star(e), A.obs(e), A.E(e), A.unit.
class Interpreter {
public:
    Interpreter();
    /// Runs a whole script; parse errors throw Error("line N: ...").
    SuiteReport run(const std::string& text, const std::string& defaultName = "script");

    const Expr& value(const std::string& name) const;
    const QContext& context(const std::string& name) const;
    EndoPtr endo(const std::string& name) const;
    int depth() const { return depth_; }
    /// Per-statement timings go to `os` when set.
    void set_trace(std::ostream* os) { trace_ = os; }

private:
    friend class Parser;
    void statement(const std::string& line, int lineNo, SuiteReport& rep);

    int depth_ = 2;
    std::ostream* trace_ = nullptr;
    std::map<std::string, Expr> vars_;
    std::map<std::string, ChiralMapPtr> chiral_;
    std::map<std::string, EndoPtr> endos_;
    std::map<std::string, QContext> contexts_;
    BraidTable braid_;
};

/// Suites compiled into the binary from data/suites/*.qs.
struct EmbeddedSuite {
    const char* name;
    const char* text;
};
const std::vector<EmbeddedSuite>& embedded_suites();

std::vector<std::string> suite_names();
/// Runs an embedded suite; classifier-crosscheck additionally compares the
/// exact values with the numeric classifier. Unknown names throw Error.
SuiteReport run_suite(const std::string& name);
/// Runs every embedded suite.
std::vector<SuiteReport> run_all_suites();

} // namespace qbound::oracle
