#pragma once

#include "qbound/classifier.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qbound {

/// Everything `classify` prints for one (A^L, A^R) pair.
struct ClassificationReport {
    std::string left, right, category;
    double tol = 0;
    Eigen::MatrixXi ZL, ZR;
    double dL = 1, dR = 1, dA = 1, dB = 1, dCat = 1;
    int expectedCount = 0; ///< Tr(Z^{Lt} Z^R)
    std::vector<std::string> columns;
    std::vector<BoundaryCondition> rows;
    IdempotentReport residuals;
    Eigen::MatrixXcd S;
    /// N_{m1,m2}^{m3} for (A-B) × (B-B) → (A-B); empty when not requested.
    std::vector<long> fusion;
    int fusionRightCount = 0;
};

struct ReportOptions {
    ClassifyOptions classify;
    bool withFusion = true;
};

ClassificationReport build_report(const CentreAlgebra& alg, const std::optional<CentreAlgebra>& rightRight,
                                  const ReportOptions& opt = {});

/// Centre algebra for a pair of Q-system references (built-in names or
/// files, see resolve_qsystem). Chiral Q-systems are lifted to A⊗1; for a
/// "Z:<A>" reference the chiral dimension d_A is that of A.
CentreAlgebra centre_for(const std::string& left, const std::string& right, double tol = default_tolerance());
/// classify --left/--right: the pair's report with fusion against (right, right).
ClassificationReport classify_pair(const std::string& left, const std::string& right, const ReportOptions& opt = {});
/// classify --cardy: the closed-form canonical-canonical algebra of a chiral category.
ClassificationReport classify_cardy(const CatPtr& chiral, const ReportOptions& opt = {});

nlohmann::json report_json(const ClassificationReport& r);
std::string render_table(const ClassificationReport& r);
std::string render_json(const ClassificationReport& r);
std::string render_csv(const ClassificationReport& r);
/// format ∈ {table, json, csv}.
std::string render(const ClassificationReport& r, const std::string& format);

/// Fixed 12-digit rendering with signed zeros folded; complex values print
/// as "re+imi" only when the imaginary part survives rounding.
std::string format_number(double x);
std::string format_complex(cplx z);

} // namespace qbound
