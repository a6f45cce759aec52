#include "svw/evolution.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace svw {

PhaseSpectrum phase_spectrum(const ModelSpec& spec) {
    const long long big_n = spec.n_total();
    const long long big_m = spec.m_excited();
    PhaseSpectrum out{spec, {}};
    out.phases.reserve(static_cast<std::size_t>(spec.m_prime()) + 1);
    for (long long n = 0; n <= spec.m_prime(); ++n) {
        out.phases.push_back(n * (big_n + 1 - n) - big_m * (big_n - big_m));
    }
    return out;
}

double AmplitudeVector::norm_squared() const {
    double total = 0.0;
    for (std::size_t m = 0; m < amplitudes.size(); ++m) {
        total += schmidt_multiplicity(spec, static_cast<int>(m)) * std::norm(amplitudes[m]);
    }
    return total;
}

namespace {

AmplitudeVector evaluate(const ModelSpec& spec, const BCoefficientTable& table,
                         const std::vector<long long>& phases, double tau) {
    if (!std::isfinite(tau)) {
        throw DomainError("amplitudes_at: non-finite tau");
    }
    const int size = table.size();
    // Phases are exact integers, so each exponent is a single product and a grid
    // accumulates no phase drift.
    std::vector<std::complex<double>> rotors(size);
    for (int n = 0; n < size; ++n) {
        const double angle = static_cast<double>(phases[n]) * tau;
        rotors[n] = {std::cos(angle), std::sin(angle)};
    }
    AmplitudeVector out{spec, tau, std::vector<std::complex<double>>(size)};
    for (int m = 0; m < size; ++m) {
        std::complex<double> c{0.0, 0.0};
        for (int n = 0; n < size; ++n) {
            c += table.value(m, n) * rotors[n];
        }
        out.amplitudes[m] = c;
    }
    return out;
}

void check_table(const ModelSpec& spec, const BCoefficientTable& table) {
    if (!spec.same_system(table.spec())) {
        throw DomainError("amplitudes_at: coefficient table was built for a different (N, M)");
    }
}

} // namespace

AmplitudeVector amplitudes_at(const ModelSpec& spec, const BCoefficientTable& table, double tau) {
    check_table(spec, table);
    return evaluate(spec, table, phase_spectrum(spec).phases, tau);
}

std::vector<AmplitudeVector> amplitude_series(const ModelSpec& spec, const BCoefficientTable& table,
                                              std::span<const double> tau_grid) {
    check_table(spec, table);
    if (tau_grid.empty()) {
        throw DomainError("amplitude_series: empty time grid");
    }
    const auto phases = phase_spectrum(spec).phases;
    std::vector<AmplitudeVector> out;
    out.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        out.push_back(evaluate(spec, table, phases, tau));
    }
    return out;
}

std::vector<AmplitudeVector> amplitude_series(const ModelSpec& spec, std::span<const double> tau_grid) {
    return amplitude_series(spec, b_table(spec), tau_grid);
}

double modulus_period(const ModelSpec& spec) {
    const auto phases = phase_spectrum(spec).phases;
    long long g = 0;
    for (std::size_t n = 1; n < phases.size(); ++n) {
        g = std::gcd(g, phases[n] - phases[0]);
    }
    if (g == 0) {
        return 2.0 * std::numbers::pi;
    }
    return 2.0 * std::numbers::pi / static_cast<double>(g);
}

std::vector<double> linspace(double start, double stop, int steps) {
    if (steps < 2) {
        throw DomainError("linspace: need at least two points");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double step = (stop - start) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        grid[i] = start + step * i;
    }
    grid.back() = stop;
    return grid;
}

} // namespace svw
