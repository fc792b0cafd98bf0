#pragma once

#include "noisemod/engine.hpp"

#include <ostream>
#include <string>

namespace noisemod {

/// Shortest decimal string that round-trips to the same double; locale independent.
std::string format_double(double value);

/// delta axis, ber_sim, ber_theory, trials, errors, stderr, theory_ok.
void write_ber_csv(std::ostream& os, const SweepResult& sim, const SweepResult& theory);

/// delta axis, ber_theory, theory_ok.
void write_theory_csv(std::ostream& os, const SweepResult& theory);

/// distance_m followed by one z_DC column per scheme.
void write_eh_csv(std::ostream& os, const SweepResult& eh);

} // namespace noisemod
