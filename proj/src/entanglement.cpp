#include "svw/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace svw {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kZeroProbability = 1e-300;
constexpr double kSingularSine = 1e-12;

void require_single_excitation(const ModelSpec& spec, const char* what) {
    if (spec.m_excited() != 1) {
        throw UnsupportedCaseError(std::string(what) + ": closed form only exists for M = 1, got M=" +
                                   std::to_string(spec.m_excited()));
    }
}

} // namespace

double SchmidtSpectrum::total() const {
    double s = 0.0;
    for (double p : probabilities) {
        s += p;
    }
    return s;
}

SchmidtSpectrum schmidt_spectrum(const AmplitudeVector& amps) {
    SchmidtSpectrum out{amps.spec, amps.tau, {}};
    out.probabilities.reserve(amps.amplitudes.size());
    for (std::size_t m = 0; m < amps.amplitudes.size(); ++m) {
        out.probabilities.push_back(schmidt_multiplicity(amps.spec, static_cast<int>(m)) *
                                    std::norm(amps.amplitudes[m]));
    }
    const double total = out.total();
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw IntegrityError("schmidt_spectrum: amplitudes not normalized (sum " + std::to_string(total) +
                             ")");
    }
    return out;
}

double entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p > kZeroProbability) {
            h -= p * std::log2(p);
        }
    }
    // Rounding can push a pure state a hair below zero.
    return std::max(h, 0.0);
}

double entropy(const SchmidtSpectrum& spectrum) { return entropy(spectrum.probabilities); }

std::vector<EntropySample> entropy_series(const ModelSpec& spec, std::span<const double> tau_grid) {
    const auto amps = amplitude_series(spec, tau_grid);
    std::vector<EntropySample> out;
    out.reserve(amps.size());
    for (const auto& a : amps) {
        auto spectrum = schmidt_spectrum(a);
        const double e = entropy(spectrum);
        out.push_back({a.tau, std::move(spectrum), e});
    }
    return out;
}

double entropy_at(const ModelSpec& spec, const BCoefficientTable& table, double tau) {
    return entropy(schmidt_spectrum(amplitudes_at(spec, table, tau)));
}

double entropy_at(const ModelSpec& spec, double tau) { return entropy_at(spec, b_table(spec), tau); }

double entropy_rate_m1(const ModelSpec& spec, double tau) {
    require_single_excitation(spec, "entropy_rate_m1");
    const double n = spec.n_total();
    const double half = std::sin(0.5 * n * tau);
    if (std::abs(half) <= kSingularSine) {
        throw SingularPointError("entropy_rate_m1: tau is a multiple of 2 pi / N");
    }
    const double bracket = n * n / (4.0 * (n - 1.0)) / (half * half) - 1.0;
    if (bracket <= 0.0) {
        // Only reachable for N = 2 at complete transfer (P_1 = 1); the rate tends to 0 there.
        return 0.0;
    }
    return 2.0 * (n - 1.0) / n * std::sin(n * tau) * std::log2(bracket);
}

bool reaches_full_ebit(int n_total) noexcept {
    const long long n = n_total;
    return n * n <= 8 * (n - 1);
}

StationaryEntropy max_entropy_at_t2(const ModelSpec& spec) {
    require_single_excitation(spec, "max_entropy_at_t2");
    const double n = spec.n_total();
    auto xlog2x = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    // (N-2)^2 log2(N-2) written as (N-2) * [(N-2) log2(N-2)] so N = 2 gives 0 log 0 = 0.
    const double value =
        2.0 / (n * n) *
        (n * n * std::log2(n) - (n - 2.0) * xlog2x(n - 2.0) - 2.0 * (n - 1.0) * std::log2(4.0 * (n - 1.0)));
    return {value, spec.n_total() < 3};
}

CriticalTimes critical_times_m1(const ModelSpec& spec) {
    require_single_excitation(spec, "critical_times_m1");
    const int n = spec.n_total();
    const auto table = b_table(spec);

    CriticalTimes out{spec, std::nullopt, std::numbers::pi / n, std::nullopt, 0.0};
    if (reaches_full_ebit(n)) {
        const double csc_argument = 2.0 / n * std::sqrt(2.0 * (n - 1));
        // arccsc(x) = arcsin(1/x); the integer test above guarantees x >= 1.
        const double t_prime = 2.0 / n * std::asin(1.0 / csc_argument);
        out.t_prime = t_prime;
        out.e_at_t_prime = entropy_at(spec, table, t_prime);
    }
    out.e_at_t_double_prime = max_entropy_at_t2(spec).value;
    return out;
}

EntropyMaximum maximize_entropy(const ModelSpec& spec, int grid_points, double tau_tolerance) {
    if (grid_points < 3) {
        throw DomainError("maximize_entropy: need at least three grid points");
    }
    const auto table = b_table(spec);
    const double period = modulus_period(spec);
    const double step = period / grid_points;

    EntropyMaximum best{0.0, entropy_at(spec, table, 0.0)};
    for (int i = 1; i < grid_points; ++i) {
        const double tau = step * i;
        const double e = entropy_at(spec, table, tau);
        if (e > best.entropy) {
            best = {tau, e};
        }
    }

    auto f = [&](double tau) { return entropy_at(spec, table, tau); };
    constexpr double inv_phi = 0.6180339887498949;
    double lo = best.tau - step;
    double hi = best.tau + step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tau_tolerance) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const double tau = 0.5 * (lo + hi);
    const double e = f(tau);
    if (e > best.entropy) {
        best = {tau, e};
    }
    // Keep the argmax inside [0, period).
    best.tau = std::fmod(best.tau + period, period);
    return best;
}

double MaximumRow::cross_check_deviation() const { return std::abs(max_entropy - numeric.entropy); }

std::vector<MaximumRow> magic_number_scan(int n_max, int n_min) {
    if (n_min < 2 || n_max < n_min) {
        throw DomainError("magic_number_scan: need 2 <= n_min <= n_max");
    }
    std::vector<MaximumRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max - n_min) + 1);
    for (int n = n_min; n <= n_max; ++n) {
        const ModelSpec spec(n, 1);
        const auto table = b_table(spec);
        const auto times = critical_times_m1(spec);

        MaximumRow row;
        row.n_total = n;
        row.tau_prime = times.t_prime;
        row.tau_double_prime = times.t_double_prime;
        row.argmax_tau = times.t_double_prime;
        row.max_entropy = entropy_at(spec, table, times.t_double_prime);
        if (times.t_prime) {
            const double e = entropy_at(spec, table, *times.t_prime);
            if (e >= row.max_entropy) {
                row.max_entropy = e;
                row.argmax_tau = *times.t_prime;
            }
        }
        row.numeric = maximize_entropy(spec);
        rows.push_back(row);
    }
    return rows;
}

} // namespace svw
