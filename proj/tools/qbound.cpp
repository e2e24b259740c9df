// qbound: command-line front end for categories, Q-systems, boundary
// classification and the exact Cuntz-algebra oracle.

#include "qbound/io.hpp"
#include "qbound/lift.hpp"
#include "qbound/oracle/script.hpp"
#include "qbound/product.hpp"
#include "qbound/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace qbound;

namespace {

bool verbose = false;

void print_matrix(std::ostream& os, const Eigen::MatrixXcd& M)
{
    for (int i = 0; i < M.rows(); ++i) {
        os << "  ";
        for (int j = 0; j < M.cols(); ++j) os << (j ? "  " : "") << format_complex(M(i, j));
        os << "\n";
    }
}

void print_matrix(std::ostream& os, const Eigen::MatrixXi& M)
{
    for (int i = 0; i < M.rows(); ++i) {
        os << "  ";
        for (int j = 0; j < M.cols(); ++j) os << (j ? " " : "") << M(i, j);
        os << "\n";
    }
}

int cmd_validate(const std::string& ref)
{
    const CatPtr cat = resolve_category(ref);
    const ValidationReport rep = validate(*cat);
    std::cout << cat->name() << ": rank " << cat->rank() << ", tolerance " << default_tolerance() << "\n";
    for (const auto& s : rep.structural) std::cout << "  structural: " << s << "\n";
    for (const auto& f : rep.failures) std::cout << "  " << f.describe(*cat) << "\n";
    std::cout << (rep.ok() ? "valid" : "INVALID") << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_modular(const std::string& ref)
{
    const CatPtr cat = resolve_category(ref);
    const ModularData md = modular_data(*cat);
    std::cout << cat->name() << " (tolerance " << default_tolerance() << ")\n";
    std::cout << "global dimension " << format_number(md.globalDim) << "\n";
    for (int a = 0; a < cat->rank(); ++a)
        std::cout << "  " << cat->ring().name(a) << ": d = " << format_number(md.dims[a])
                  << ", twist = " << format_complex(md.twists[a]) << "\n";
    std::cout << "S:\n";
    print_matrix(std::cout, md.S);
    std::cout << "T:\n";
    print_matrix(std::cout, md.T);
    std::cout << (md.isModular ? "modular" : "NOT modular") << "\n";
    return md.isModular ? 0 : 1;
}

int cmd_qcheck(const std::string& ref)
{
    const QSystem q = resolve_qsystem(ref);
    const QReport rep = verify_qsystem(q);
    const double tol = default_tolerance();
    std::cout << q.name << " over " << q.cat->name() << ", dimension " << format_number(q.dim()) << "\n";
    std::cout << rep.str() << "\n";
    std::cout << "commutativity residual (+) " << commutativity_residual(q, +1) << ", (-) "
              << commutativity_residual(q, -1) << " (tol " << tol << ")\n";
    std::cout << (rep.pass(tol) ? "Q-system" : "NOT a Q-system") << ", "
              << (is_commutative(q, tol) ? "commutative" : "not commutative") << "\n";
    return rep.pass(tol) ? 0 : 1;
}

int cmd_fullcentre(const std::string& ref, bool json)
{
    QSystem a = resolve_qsystem(ref);
    const QSystem z = full_centre(a);
    const QReport rep = verify_qsystem(z);
    const double tol = default_tolerance();
    if (json) {
        std::cout << serialize_qsystem(z) << "\n";
    } else {
        std::cout << "Z[" << a.name << "] over " << z.cat->name() << ", dim theta = " << format_number(z.theta.dim(*z.cat))
                  << ", d = " << format_number(z.dim()) << "\n";
        std::cout << "coupling matrix:\n";
        print_matrix(std::cout, theta_components(z));
        std::cout << rep.str() << "\n";
        std::cout << "commutative: " << (is_commutative(z, tol) ? "yes" : "no") << " (tol " << tol << ")\n";
    }
    return rep.pass(tol) && is_commutative(z, tol) ? 0 : 1;
}

int print_report(const ClassificationReport& r, const std::string& format)
{
    std::cout << render(r, format);
    if (static_cast<int>(r.rows.size()) != r.expectedCount) {
        std::cerr << "error: " << r.rows.size() << " conditions but Tr(Z^Lt Z^R) = " << r.expectedCount << "\n";
        return 1;
    }
    if (r.residuals.max() > r.tol) {
        std::cerr << "error: idempotent residual " << r.residuals.max() << " exceeds " << r.tol << "\n";
        return 1;
    }
    return 0;
}

/// Manifest lines hold "left right" pairs; blank lines and # comments are skipped.
int cmd_manifest(const std::string& path, const std::string& format, const ReportOptions& opt)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest '" + path + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::string line; std::getline(in, line);) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream is(line);
        std::string l, r, extra;
        if (!(is >> l)) continue;
        if (!(is >> r) || (is >> extra)) throw Error(path + ": expected 'left right' in '" + line + "'");
        pairs.emplace_back(l, r);
    }
    // one job per pair; outputs are printed in manifest order
    std::vector<std::future<std::string>> jobs;
    std::vector<int> codes(pairs.size(), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        jobs.push_back(std::async(std::launch::async, [&, k] {
            std::ostringstream os;
            try {
                const auto rep = classify_pair(pairs[k].first, pairs[k].second, opt);
                os << render(rep, format);
                if (static_cast<int>(rep.rows.size()) != rep.expectedCount) codes[k] = 1;
            } catch (const std::exception& e) {
                os << "error: " << pairs[k].first << " / " << pairs[k].second << ": " << e.what() << "\n";
                codes[k] = 1;
            }
            return os.str();
        }));
    int code = 0;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        std::cout << jobs[k].get();
        if (format == "table" && k + 1 < jobs.size()) std::cout << "\n";
        code = std::max(code, codes[k]);
    }
    return code;
}

int cmd_oracle(const std::string& name)
{
    std::vector<oracle::SuiteReport> reps;
    if (name == "all") reps = oracle::run_all_suites();
    else reps.push_back(oracle::run_suite(name));
    int code = 0;
    for (const auto& r : reps) {
        if (verbose)
            for (const auto& l : r.log) std::cout << "  " << l << "\n";
        for (const auto& f : r.failures) std::cout << "  FAIL " << f << "\n";
        std::cout << r.suite << ": " << r.passed << " passed, " << r.failed << " failed (" << r.seconds << " s)\n";
        if (!r.ok()) code = 1;
    }
    return code;
}

int cmd_verlinde(const std::string& ref)
{
    const CatPtr cat = resolve_category(ref);
    const Eigen::MatrixXcd V = verlinde_table(*cat);
    std::cout << "S_rs S_00 / (S_r0 S_0s) for " << cat->name() << ", rows s, columns r (tolerance "
              << default_tolerance() << ")\n";
    for (int s = 0; s < V.rows(); ++s) {
        std::cout << "  " << cat->ring().name(s) << ":";
        for (int r = 0; r < V.cols(); ++r) std::cout << "  " << format_complex(V(s, r));
        std::cout << "\n";
    }
    // the closed form must agree with the classified Cardy algebra row by row
    const auto rows = classify(cardy_algebra(cat));
    double worst = 0;
    for (int s = 0; s < V.rows(); ++s) {
        double best = INFINITY;
        for (const auto& b : rows) best = std::min(best, (b.values - V.row(s).transpose()).cwiseAbs().maxCoeff());
        worst = std::max(worst, best);
    }
    std::cout << "classifier agreement: residual " << worst << "\n";
    return worst <= default_tolerance() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"qbound: boundary conditions from braided products of Q-systems"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", verbose, "verbose output");
    double tol = 0;
    app.add_option("--tol", tol, "absolute tolerance for all residual checks (default QBOUND_TOL or 1e-9)");

    std::string catRef, qRef, suite, left, right, cardy, manifest, format = "table";
    bool json = false;
    int code = 0;
    auto guarded = [&](auto fn) {
        return [&, fn] {
            if (tol > 0) set_default_tolerance(tol);
            try {
                code = fn();
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                code = 1;
            }
        };
    };

    auto* validateCmd = app.add_subcommand("validate", "check pentagon, hexagon and unitarity of a category");
    validateCmd->add_option("category", catRef, "built-in name or category file")->required();
    validateCmd->callback(guarded([&] { return cmd_validate(catRef); }));

    auto* modularCmd = app.add_subcommand("modular", "dimensions, twists, S and T");
    modularCmd->add_option("category", catRef)->required();
    modularCmd->callback(guarded([&] { return cmd_modular(catRef); }));

    auto* qcheckCmd = app.add_subcommand("qcheck", "verify the Q-system relations and commutativity");
    qcheckCmd->add_option("qsystem", qRef, "built-in name or Q-system file")->required();
    qcheckCmd->callback(guarded([&] { return cmd_qcheck(qRef); }));

    auto* fcCmd = app.add_subcommand("fullcentre", "full centre of a chiral Q-system");
    fcCmd->add_option("qsystem", qRef)->required();
    fcCmd->add_flag("--json", json, "print the full centre as a Q-system file");
    fcCmd->callback(guarded([&] { return cmd_fullcentre(qRef, json); }));

    auto* classifyCmd = app.add_subcommand("classify", "boundary conditions between two full-centre Q-systems");
    auto* leftOpt = classifyCmd->add_option("--left", left, "left Q-system");
    auto* rightOpt = classifyCmd->add_option("--right", right, "right Q-system");
    auto* cardyOpt = classifyCmd->add_option("--cardy", cardy, "canonical vs canonical over a chiral category");
    auto* manifestOpt = classifyCmd->add_option("--manifest", manifest, "file of 'left right' pairs, run in parallel");
    leftOpt->needs(rightOpt);
    rightOpt->needs(leftOpt);
    cardyOpt->excludes(leftOpt)->excludes(rightOpt)->excludes(manifestOpt);
    manifestOpt->excludes(leftOpt)->excludes(rightOpt);
    classifyCmd->add_option("--format", format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    classifyCmd->callback(guarded([&] {
        ReportOptions opt;
        opt.classify.tol = default_tolerance();
        if (!manifest.empty()) return cmd_manifest(manifest, format, opt);
        if (!cardy.empty()) return print_report(classify_cardy(resolve_category(cardy), opt), format);
        if (left.empty()) throw Error("classify needs --left/--right, --cardy or --manifest");
        return print_report(classify_pair(left, right, opt), format);
    }));

    auto* oracleCmd = app.add_subcommand("oracle", "run an exact Cuntz-algebra suite (or 'all')");
    oracleCmd->add_option("suite", suite)->required();
    oracleCmd->callback(guarded([&] { return cmd_oracle(suite); }));

    auto* verlindeCmd = app.add_subcommand("verlinde", "closed-form Verlinde table and classifier agreement");
    verlindeCmd->add_option("category", catRef)->required();
    verlindeCmd->callback(guarded([&] { return cmd_verlinde(catRef); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return code;
}
