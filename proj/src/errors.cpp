#include "noisemod/errors.hpp"

namespace noisemod {

ConvergenceError::ConvergenceError(const std::string& what, double best_estimate,
                                   double error_estimate)
    : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate)
{
}

} // namespace noisemod
