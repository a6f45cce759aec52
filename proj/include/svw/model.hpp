#pragma once

#include <algorithm>
#include <string>

#include "svw/errors.hpp"

namespace svw {

/// Configuration of N equivalent-neighbor spin-1/2 dots, M of which start excited.
///
/// The excited dots form subsystem A, the remaining N - M dots form subsystem B.
/// The coupling only matters when converting physical times; everything inside the
/// library works with the dimensionless time tau = coupling * t.
class ModelSpec {
public:
    ModelSpec(int n_total, int m_excited, double coupling = 1.0)
        : n_total_(n_total), m_excited_(m_excited), coupling_(coupling) {
        if (n_total < 2) {
            throw DomainError("ModelSpec: need at least two dots, got N=" + std::to_string(n_total));
        }
        if (m_excited < 0 || m_excited > n_total) {
            throw DomainError("ModelSpec: excited count M=" + std::to_string(m_excited) +
                              " outside [0, " + std::to_string(n_total) + "]");
        }
        if (!(coupling > 0.0)) {
            throw DomainError("ModelSpec: coupling must be positive");
        }
    }

    int n_total() const noexcept { return n_total_; }
    int m_excited() const noexcept { return m_excited_; }
    double coupling() const noexcept { return coupling_; }

    /// Number of independent Schmidt components minus one: min(M, N - M).
    int m_prime() const noexcept { return std::min(m_excited_, n_total_ - m_excited_); }

    double to_tau(double physical_time) const noexcept { return coupling_ * physical_time; }

    /// Same (N, M); the coupling does not change any dimensionless quantity.
    bool same_system(const ModelSpec& other) const noexcept {
        return n_total_ == other.n_total_ && m_excited_ == other.m_excited_;
    }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

private:
    int n_total_;
    int m_excited_;
    double coupling_;
};

} // namespace svw
