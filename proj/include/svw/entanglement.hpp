#pragma once

#include <optional>
#include <span>
#include <vector>

#include "svw/evolution.hpp"

namespace svw {

/// Schmidt coefficients P_m = C(M,m) C(N-M,m) |C_m|^2, m = 0..M'.
///
/// Figure convention: the dot-dashed "P_1" curve of the single-excitation plots
/// is m = 1 here and the dashed "P_2" curve (starting at 1) is m = 0.
struct SchmidtSpectrum {
    ModelSpec spec;
    double tau = 0.0;
    std::vector<double> probabilities;

    double total() const;
};

/// Throws IntegrityError if the amplitudes are off normalization by more than 1e-9.
SchmidtSpectrum schmidt_spectrum(const AmplitudeVector& amps);

/// Shannon entropy in bits with 0 log 0 = 0.
double entropy(std::span<const double> probabilities);
double entropy(const SchmidtSpectrum& spectrum);

struct EntropySample {
    double tau = 0.0;
    SchmidtSpectrum spectrum;
    double entropy = 0.0;
};

std::vector<EntropySample> entropy_series(const ModelSpec& spec, std::span<const double> tau_grid);

/// Entanglement at a single time through the full closed-form pipeline.
double entropy_at(const ModelSpec& spec, const BCoefficientTable& table, double tau);
double entropy_at(const ModelSpec& spec, double tau);

/// dE/dtau for a single initial excitation:
///   2 (N-1)/N sin(N tau) log2[ N^2 / (4(N-1)) csc^2(N tau / 2) - 1 ].
/// Throws UnsupportedCaseError unless M = 1 and SingularPointError where sin(N tau / 2) = 0.
double entropy_rate_m1(const ModelSpec& spec, double tau);

/// True iff a single excitation among n dots can reach one ebit, i.e. n^2 <= 8(n - 1).
bool reaches_full_ebit(int n_total) noexcept;

/// Closed-form entanglement at the stationary time tau'' = pi/N (M = 1):
///   (2/N^2) { N^2 log2 N - (N-2)^2 log2 (N-2) - 2(N-1) log2[4(N-1)] }.
/// For N = 2 the formula degenerates to 0 (complete transfer of the excitation) and
/// the flag is set.
struct StationaryEntropy {
    double value = 0.0;
    bool degenerate = false;
};

StationaryEntropy max_entropy_at_t2(const ModelSpec& spec);

struct CriticalTimes {
    ModelSpec spec;
    std::optional<double> t_prime;
    double t_double_prime = 0.0;
    std::optional<double> e_at_t_prime;
    double e_at_t_double_prime = 0.0;
};

/// Roots of the entropy rate for M = 1:
///   tau'  = (2/N) arccsc((2/N) sqrt(2(N-1)))   (only for N <= 6)
///   tau'' = pi/N
CriticalTimes critical_times_m1(const ModelSpec& spec);

struct EntropyMaximum {
    double tau = 0.0;
    double entropy = 0.0;
};

/// Numeric maximum of E(tau) over one modulus period: dense grid followed by
/// golden-section refinement around the best grid point.
EntropyMaximum maximize_entropy(const ModelSpec& spec, int grid_points = 2048,
                                double tau_tolerance = 1e-10);

struct MaximumRow {
    int n_total = 0;
    std::optional<double> tau_prime;
    double tau_double_prime = 0.0;
    double max_entropy = 0.0;
    double argmax_tau = 0.0;
    EntropyMaximum numeric;

    double cross_check_deviation() const;
};

/// Maximal single-excitation entanglement for N = n_min..n_max from the analytic
/// critical times, each row cross-checked by maximize_entropy().
std::vector<MaximumRow> magic_number_scan(int n_max, int n_min = 2);

} // namespace svw
