#pragma once

#include "noisemod/channel.hpp"

#include <span>
#include <vector>

namespace noisemod {

/// Truncated diode Taylor model: z_DC = k2 R E|y|^2 + k4 R^2 E|y|^4.
/// Defaults are the single-diode rectifier values used throughout the simulations.
struct RectennaParams {
    double k2 = 0.0034;
    double k4 = 0.3829;
    double r_ant = 50.0; ///< antenna impedance, ohms

    void validate() const;
};

enum class SplitMode { TS, PS };

struct SplitConfig {
    SplitMode mode = SplitMode::TS;
    double alpha = 0.4; ///< TS: fraction of each bit interval fed to the harvester
    double rho = 0.5;   ///< PS: fraction of received power fed to the harvester
};

double z_dc_empirical(std::span<const cdouble> y, const RectennaParams& params);

/// z_DC from known moments. Requires fourth >= second^2.
double z_dc_analytic(double second_moment, double fourth_moment, const RectennaParams& params);

struct TsPartition {
    int n_energy = 0;
    int n_info = 0;
};

/// n_energy = round-half-up(alpha * n_total); the first n_energy samples of
/// each bit interval go to the harvester, the rest to the detector.
TsPartition ts_partition(int n_total, double alpha);

struct PsPartition {
    std::vector<cdouble> eh;
    std::vector<cdouble> ih;
};

/// Amplitude split: eh = sqrt(rho) y, ih = sqrt(1 - rho) y.
PsPartition ps_partition(std::span<const cdouble> y, double rho);

} // namespace noisemod
