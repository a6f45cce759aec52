#pragma once

#include <complex>
#include <span>
#include <vector>

#include "svw/combinatorics.hpp"
#include "svw/model.hpp"

namespace svw {

/// Integer phase offsets n(N+1-n) - M(N-M), n = 0..M'.
///
/// These are minus the energies (in units of the coupling) of the total-spin
/// multiplets S = N/2 - n that the initial product state overlaps with.
struct PhaseSpectrum {
    ModelSpec spec;
    std::vector<long long> phases;
};

PhaseSpectrum phase_spectrum(const ModelSpec& spec);

/// Amplitudes C_m(tau) of the closed-form solution at one dimensionless time.
///
/// Entry m is the amplitude of every basis state in which m excitations moved
/// from A to B; the state is normalized with the Schmidt multiplicities:
/// sum_m C(M,m) C(N-M,m) |C_m|^2 = 1.
struct AmplitudeVector {
    ModelSpec spec;
    double tau = 0.0;
    std::vector<std::complex<double>> amplitudes;

    double norm_squared() const;
};

/// C_m(tau) = sum_n b_mn exp(+i phase_n tau). Throws DomainError on spec/table mismatch
/// or a non-finite tau.
AmplitudeVector amplitudes_at(const ModelSpec& spec, const BCoefficientTable& table, double tau);

/// Batch evaluation over a grid, preserving grid order. Throws DomainError on an empty grid.
std::vector<AmplitudeVector> amplitude_series(const ModelSpec& spec, std::span<const double> tau_grid);
std::vector<AmplitudeVector> amplitude_series(const ModelSpec& spec, const BCoefficientTable& table,
                                              std::span<const double> tau_grid);

/// Smallest period of |C_m(tau)|: 2 pi / gcd of the phase gaps (2 pi/N for M = 1).
/// Returns 2 pi when all amplitudes are stationary (M' = 0).
double modulus_period(const ModelSpec& spec);

/// `steps` evenly spaced points covering [start, stop] inclusive. Requires steps >= 2.
std::vector<double> linspace(double start, double stop, int steps);

} // namespace svw
