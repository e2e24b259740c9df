#include "qbound/common.hpp"

#include <atomic>
#include <cstdlib>

namespace qbound {

namespace {
double initial_tolerance()
{
    if (const char* env = std::getenv("QBOUND_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 1e-9;
}

std::atomic<double>& tolerance_slot()
{
    static std::atomic<double> slot{initial_tolerance()};
    return slot;
}
} // namespace

double default_tolerance() { return tolerance_slot().load(); }

void set_default_tolerance(double tol)
{
    if (!(tol > 0)) throw Error("tolerance must be positive");
    tolerance_slot().store(tol);
}

} // namespace qbound
