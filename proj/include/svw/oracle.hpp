#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "svw/model.hpp"

namespace svw::oracle {

/// Largest N handled by the dense sector solver (C(14,7) = 3432 states).
inline constexpr int kMaxSectorSites = 14;
/// Largest N for the explicit 2^N tensor-product construction.
inline constexpr int kMaxFullSpaceSites = 8;

/// All N-bit patterns with a fixed number of set bits, in increasing numeric order.
/// Bit i is site i; a set bit is an excited dot.
class SectorBasis {
public:
    SectorBasis(int n_total, int excitations);

    int n_total() const noexcept { return n_total_; }
    int excitations() const noexcept { return excitations_; }
    std::size_t dimension() const noexcept { return states_.size(); }
    std::span<const std::uint32_t> states() const noexcept { return states_; }
    std::uint32_t state(std::size_t i) const { return states_.at(i); }
    std::optional<std::size_t> index_of(std::uint32_t pattern) const;

    friend bool operator==(const SectorBasis& a, const SectorBasis& b) {
        return a.n_total_ == b.n_total_ && a.excitations_ == b.excitations_;
    }

private:
    int n_total_;
    int excitations_;
    std::vector<std::uint32_t> states_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

/// XY hopping Hamiltonian restricted to one excitation sector, in units of the coupling.
///
/// Convention: sigma^+- = (sigma^x +- i sigma^y)/2 and one hop term per unordered
/// pair of sites, so two patterns are coupled with weight 1 iff they differ by moving
/// a single excitation.
struct SectorHamiltonian {
    BasisPtr basis;
    Eigen::MatrixXd matrix;
};

/// Throws ResourceError for n_total > kMaxSectorSites.
SectorHamiltonian build_sector_hamiltonian(int n_total, int excitations);

struct SectorState {
    BasisPtr basis;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

/// Basis state with the given pattern set to amplitude 1.
SectorState basis_state(BasisPtr basis, std::uint32_t pattern);

/// Initial product state with the first M sites excited.
SectorState excited_block_state(BasisPtr basis);

/// exp(-i H tau) from one eigendecomposition, reusable across many times.
class SectorPropagator {
public:
    explicit SectorPropagator(const SectorHamiltonian& h);

    const BasisPtr& basis() const noexcept { return basis_; }
    const Eigen::VectorXd& energies() const noexcept { return energies_; }
    SectorState operator()(const SectorState& initial, double tau) const;

private:
    BasisPtr basis_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd vectors_;
};

SectorState propagate(const SectorHamiltonian& h, const SectorState& initial, double tau);

/// rho_A = Tr_B |psi><psi| for A = sites [0, partition_size).
///
/// A fixed-excitation state gives a rho_A that is block diagonal in the number of
/// excitations inside A; blocks are stored separately, indexed by that number.
struct ReducedDensity {
    int partition_size = 0;
    std::vector<Eigen::MatrixXcd> blocks;
    /// All block eigenvalues, sorted descending. Omitted entries are exact zeros.
    std::vector<double> eigenvalues;

    double trace() const;
    /// Full 2^|A| x 2^|A| matrix in pattern order; only sensible for small partitions.
    Eigen::MatrixXcd dense() const;
};

/// Throws DomainError unless 1 <= partition_size <= N - 1.
ReducedDensity reduced_density(const SectorState& state, int partition_size);

/// -sum lambda log2 lambda over the eigenvalues. Eigenvalues in [-1e-9, 0) are treated as
/// zero; anything more negative throws IntegrityError.
double von_neumann_entropy(std::span<const double> eigenvalues);
double von_neumann_entropy(const ReducedDensity& rho);

struct VerificationReport {
    ModelSpec spec;
    std::size_t samples = 0;
    double max_spectrum_deviation = 0.0;
    double max_entropy_deviation = 0.0;
    double tolerance = 1e-9;

    bool passed() const noexcept {
        return max_spectrum_deviation < tolerance && max_entropy_deviation < tolerance;
    }
};

/// Compares the closed-form Schmidt spectrum and entropy with exact diagonalization
/// at every sample time. Throws ResourceError past the sector budget.
VerificationReport verify_closed_form(const ModelSpec& spec, std::span<const double> tau_samples);

/// The same Hamiltonian on the full 2^N space, assembled from explicit Pauli tensor
/// products and diagonalized once. Basis index bit i is site i.
class FullSpaceEvolver {
public:
    /// Throws ResourceError outside 2 <= N <= kMaxFullSpaceSites.
    explicit FullSpaceEvolver(int n_total);

    int n_total() const noexcept { return n_total_; }
    const Eigen::MatrixXcd& hamiltonian() const noexcept { return hamiltonian_; }

    /// Full state after evolving |first M sites excited> for time tau.
    Eigen::VectorXcd operator()(int m_excited, double tau) const;

private:
    int n_total_;
    Eigen::MatrixXcd hamiltonian_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

Eigen::VectorXcd full_space_propagate(int n_total, int m_excited, double tau);

/// Max |full-space amplitude - sector amplitude| over all 2^N basis states.
double full_space_crosscheck(int n_total, int m_excited, double tau);
double full_space_crosscheck(const FullSpaceEvolver& full, int m_excited, double tau);

} // namespace svw::oracle
