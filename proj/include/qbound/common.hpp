#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qbound {

using cplx = std::complex<double>;

/// Error raised for malformed inputs and failed preconditions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Default absolute tolerance for identity checks. Reads QBOUND_TOL once.
double default_tolerance();

/// Overrides the process-wide default (used by the CLI --tol flag).
void set_default_tolerance(double tol);

} // namespace qbound
