#pragma once

#include "qbound/oracle/script.hpp"

namespace qbound::oracle {

/// Runs the classifier-crosscheck script, then compares its exact centre
/// {1, Bt, Bs} of the Ising phase-boundary algebra with the numeric Cardy
/// algebra: structure constants, Frobenius conjugation, and for each
/// classified boundary condition its character values and idempotent.
/// Every comparison is recorded as one check at tolerance `tol`.
SuiteReport run_classifier_crosscheck(const std::string& text, double tol = 1e-12);

} // namespace qbound::oracle
