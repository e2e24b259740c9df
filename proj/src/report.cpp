#include "qbound/report.hpp"

#include "qbound/io.hpp"
#include "qbound/lift.hpp"

#include <cstdio>
#include <sstream>

namespace qbound {

using nlohmann::json;

std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos) return "0";
    // trim trailing zeros, keep at least one digit after the point
    while (s.size() > 2 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    if (s.size() > 2 && s.substr(s.size() - 2) == ".0") s.resize(s.size() - 2);
    return s;
}

std::string format_complex(cplx z)
{
    const std::string re = format_number(z.real()), im = format_number(z.imag());
    if (im == "0") return re;
    if (re == "0") return im + "i";
    return re + (im[0] == '-' ? "" : "+") + im + "i";
}

ClassificationReport build_report(const CentreAlgebra& alg, const std::optional<CentreAlgebra>& rightRight,
                                  const ReportOptions& opt)
{
    ClassificationReport r;
    r.left = alg.leftName;
    r.right = alg.rightName;
    r.category = alg.cat->name();
    r.tol = opt.classify.tol;
    r.ZL = alg.ZL;
    r.ZR = alg.ZR;
    r.dL = alg.dL;
    r.dR = alg.dR;
    r.dA = alg.dA;
    r.dB = alg.dB;
    r.dCat = alg.dCat;
    r.expectedCount = (alg.ZL.transpose() * alg.ZR).trace();
    for (int t = 0; t < alg.size(); ++t) r.columns.push_back(alg.label_name(t));
    r.rows = classify(alg, opt.classify);
    r.residuals = check_idempotents(alg, r.rows);
    r.S = s_matrix(r.rows, alg);
    if (opt.withFusion && rightRight) {
        const auto bb = classify(*rightRight, opt.classify);
        const Eigen::MatrixXcd SBB = s_matrix(bb, *rightRight);
        r.fusion = recovered_fusion(r.S, SBB, r.S, alg, *rightRight, alg);
        r.fusionRightCount = static_cast<int>(bb.size());
    }
    return r;
}

namespace {

/// d_A of the chiral Q-system behind a "Z:" reference, 1 otherwise.
double chiral_dim(const std::string& ref)
{
    if (ref.rfind("Z:", 0) != 0) return 1;
    return builtin_qsystem(ref.substr(2)).dim();
}

QSystem resolve_lifted(const std::string& ref, double tol)
{
    QSystem q = resolve_qsystem(ref, tol);
    if (!q.cat->is_product()) q = lift_qsystem(q);
    return q;
}

} // namespace

CentreAlgebra centre_for(const std::string& left, const std::string& right, double tol)
{
    const QSystem L = resolve_lifted(left, tol), R = resolve_lifted(right, tol);
    CentreAlgebra alg = centre_algebra(L, R, chiral_dim(left), chiral_dim(right), tol);
    alg.leftName = left;
    alg.rightName = right;
    return alg;
}

ClassificationReport classify_pair(const std::string& left, const std::string& right, const ReportOptions& opt)
{
    const CentreAlgebra alg = centre_for(left, right, opt.classify.tol);
    std::optional<CentreAlgebra> rr;
    if (opt.withFusion) rr = left == right ? alg : centre_for(right, right, opt.classify.tol);
    return build_report(alg, rr, opt);
}

ClassificationReport classify_cardy(const CatPtr& chiral, const ReportOptions& opt)
{
    const CentreAlgebra alg = cardy_algebra(chiral);
    return build_report(alg, alg, opt);
}

namespace {

json complex_json(cplx z) { return json::array({format_number(z.real()), format_number(z.imag())}); }

json matrix_json(const Eigen::MatrixXi& M)
{
    json a = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        a.push_back(row);
    }
    return a;
}

} // namespace

json report_json(const ClassificationReport& r)
{
    // numbers are strings in fixed precision so reruns are byte-identical
    json j;
    j["left"] = r.left;
    j["right"] = r.right;
    j["category"] = r.category;
    j["tolerance"] = r.tol;
    j["Z_left"] = matrix_json(r.ZL);
    j["Z_right"] = matrix_json(r.ZR);
    j["dims"] = {{"d_left", format_number(r.dL)},
                 {"d_right", format_number(r.dR)},
                 {"d_A", format_number(r.dA)},
                 {"d_B", format_number(r.dB)},
                 {"d_R", format_number(r.dCat)}};
    j["expected_count"] = r.expectedCount;
    j["count"] = r.rows.size();
    j["columns"] = r.columns;
    json rows = json::array();
    for (const auto& b : r.rows) {
        json vals = json::array(), idem = json::array();
        for (int t = 0; t < b.values.size(); ++t) vals.push_back(complex_json(b.values(t)));
        for (int t = 0; t < b.idempotent.size(); ++t) idem.push_back(complex_json(b.idempotent(t)));
        rows.push_back({{"index", b.index}, {"dim_beta", format_number(b.dimBeta)}, {"values", vals}, {"idempotent", idem}});
    }
    j["rows"] = rows;
    json S = json::array();
    for (int m = 0; m < r.S.rows(); ++m) {
        json row = json::array();
        for (int t = 0; t < r.S.cols(); ++t) row.push_back(complex_json(r.S(m, t)));
        S.push_back(row);
    }
    j["S"] = S;
    j["residuals"] = {{"idempotency", r.residuals.idempotency},
                      {"completeness", r.residuals.completeness},
                      {"self_adjoint", r.residuals.selfAdjoint},
                      {"pass", r.residuals.max() <= r.tol}};
    if (!r.fusion.empty()) {
        const int m = static_cast<int>(r.rows.size()), k = r.fusionRightCount;
        json N = json::array();
        for (int a = 0; a < m; ++a) {
            json pa = json::array();
            for (int b = 0; b < k; ++b) {
                json pb = json::array();
                for (int c = 0; c < m; ++c) pb.push_back(r.fusion[(static_cast<std::size_t>(a) * k + b) * m + c]);
                pa.push_back(pb);
            }
            N.push_back(pa);
        }
        j["fusion"] = N;
    }
    return j;
}

std::string render_json(const ClassificationReport& r) { return report_json(r).dump(2) + "\n"; }

std::string render_table(const ClassificationReport& r)
{
    std::ostringstream os;
    os << "left:  " << r.left << "\nright: " << r.right << "\ncategory: " << r.category << "\n";
    os << "tolerance: " << r.tol << "\n";
    os << "d_L = " << format_number(r.dL) << "  d_R(Q) = " << format_number(r.dR) << "  d_A = " << format_number(r.dA)
       << "  d_B = " << format_number(r.dB) << "  d_R = " << format_number(r.dCat) << "\n";
    os << "conditions: " << r.rows.size() << " (Tr Z^Lt Z^R = " << r.expectedCount << ")\n\n";
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"m", "dimBeta"};
    for (const auto& c : r.columns) head.push_back("B_" + c);
    cells.push_back(head);
    for (const auto& b : r.rows) {
        std::vector<std::string> row{std::to_string(b.index), format_number(b.dimBeta)};
        for (int t = 0; t < b.values.size(); ++t) row.push_back(format_complex(b.values(t)));
        cells.push_back(row);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : cells)
        for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t k = 0; k < cells[i].size(); ++k) {
            os << (k ? "  " : "") << cells[i][k];
            if (k + 1 < cells[i].size()) os << std::string(width[k] - cells[i][k].size(), ' ');
        }
        os << "\n";
        if (i == 0) {
            std::size_t total = 0;
            for (std::size_t k = 0; k < width.size(); ++k) total += width[k] + (k ? 2 : 0);
            os << std::string(total, '-') << "\n";
        }
    }
    os << "\ngeneralized S (rows m, columns T):\n";
    for (int m = 0; m < r.S.rows(); ++m) {
        os << "  ";
        for (int t = 0; t < r.S.cols(); ++t) os << (t ? "  " : "") << format_complex(r.S(m, t));
        os << "\n";
    }
    os << "\nidempotent residuals: idempotency " << r.residuals.idempotency << ", completeness "
       << r.residuals.completeness << ", self-adjoint " << r.residuals.selfAdjoint << " (tol " << r.tol << ")\n";
    if (!r.fusion.empty()) {
        const int m = static_cast<int>(r.rows.size()), k = r.fusionRightCount;
        os << "\nrecovered fusion, (A-B) x (B-B) -> (A-B), nonzero N[m1][m2][m3]:\n";
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < m; ++c)
                    if (long v = r.fusion[(static_cast<std::size_t>(a) * k + b) * m + c])
                        os << "  N[" << a << "][" << b << "][" << c << "] = " << v << "\n";
    }
    return os.str();
}

std::string render_csv(const ClassificationReport& r)
{
    std::ostringstream os;
    os << "m,dim_beta";
    for (const auto& c : r.columns) os << ",re(B_" << c << "),im(B_" << c << ")";
    os << ",tol\n";
    for (const auto& b : r.rows) {
        os << b.index << "," << format_number(b.dimBeta);
        for (int t = 0; t < b.values.size(); ++t)
            os << "," << format_number(b.values(t).real()) << "," << format_number(b.values(t).imag());
        os << "," << r.tol << "\n";
    }
    return os.str();
}

std::string render(const ClassificationReport& r, const std::string& format)
{
    if (format == "table") return render_table(r);
    if (format == "json") return render_json(r);
    if (format == "csv") return render_csv(r);
    throw Error("unknown format '" + format + "' (table, json, csv)");
}

} // namespace qbound
