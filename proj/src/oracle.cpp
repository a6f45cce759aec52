#include "svw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "svw/combinatorics.hpp"
#include "svw/entanglement.hpp"
#include "svw/evolution.hpp"

namespace svw::oracle {

namespace {

using cplx = std::complex<double>;

constexpr double kNegativeEigenvalueTolerance = 1e-9;

// Next larger integer with the same popcount.
std::uint64_t next_same_weight(std::uint64_t v) {
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

void check_sector_budget(int n_total) {
    if (n_total > kMaxSectorSites) {
        throw ResourceError("sector solver limited to N <= " + std::to_string(kMaxSectorSites) +
                            ", got N=" + std::to_string(n_total));
    }
}

} // namespace

SectorBasis::SectorBasis(int n_total, int excitations) : n_total_(n_total), excitations_(excitations) {
    if (n_total < 1 || n_total > 31) {
        throw DomainError("SectorBasis: site count must be in [1, 31]");
    }
    if (excitations < 0 || excitations > n_total) {
        throw DomainError("SectorBasis: excitation count outside [0, N]");
    }
    states_.reserve(binomial(n_total, excitations).convert_to<std::size_t>());
    if (excitations == 0) {
        states_.push_back(0);
        return;
    }
    const std::uint64_t limit = std::uint64_t{1} << n_total;
    std::uint64_t v = (std::uint64_t{1} << excitations) - 1;
    while (v < limit) {
        states_.push_back(static_cast<std::uint32_t>(v));
        v = next_same_weight(v);
    }
}

std::optional<std::size_t> SectorBasis::index_of(std::uint32_t pattern) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), pattern);
    if (it == states_.end() || *it != pattern) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states_.begin());
}

SectorHamiltonian build_sector_hamiltonian(int n_total, int excitations) {
    check_sector_budget(n_total);
    auto basis = std::make_shared<const SectorBasis>(n_total, excitations);
    const auto dim = static_cast<Eigen::Index>(basis->dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    for (Eigen::Index col = 0; col < dim; ++col) {
        const std::uint32_t s = basis->state(col);
        for (int from = 0; from < n_total; ++from) {
            if (!((s >> from) & 1U)) {
                continue;
            }
            for (int to = 0; to < n_total; ++to) {
                if ((s >> to) & 1U) {
                    continue;
                }
                const std::uint32_t target = s ^ (1U << from) ^ (1U << to);
                h(static_cast<Eigen::Index>(*basis->index_of(target)), col) = 1.0;
            }
        }
    }
    return {std::move(basis), std::move(h)};
}

SectorState basis_state(BasisPtr basis, std::uint32_t pattern) {
    const auto idx = basis->index_of(pattern);
    if (!idx) {
        throw DomainError("basis_state: pattern not in sector");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
    amps(static_cast<Eigen::Index>(*idx)) = 1.0;
    return {std::move(basis), std::move(amps)};
}

SectorState excited_block_state(BasisPtr basis) {
    const int m = basis->excitations();
    const std::uint32_t pattern = m == 0 ? 0U : ((std::uint32_t{1} << m) - 1U);
    return basis_state(std::move(basis), pattern);
}

SectorPropagator::SectorPropagator(const SectorHamiltonian& h) : basis_(h.basis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
    if (solver.info() != Eigen::Success) {
        throw NumericError("SectorPropagator: eigendecomposition failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

SectorState SectorPropagator::operator()(const SectorState& initial, double tau) const {
    if (!initial.basis || !(*initial.basis == *basis_)) {
        throw DomainError("propagate: state and Hamiltonian live in different sectors");
    }
    Eigen::VectorXcd coeffs = vectors_.transpose().cast<cplx>() * initial.amplitudes;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        const double angle = -energies_(k) * tau;
        coeffs(k) *= cplx(std::cos(angle), std::sin(angle));
    }
    return {basis_, vectors_.cast<cplx>() * coeffs};
}

SectorState propagate(const SectorHamiltonian& h, const SectorState& initial, double tau) {
    return SectorPropagator(h)(initial, tau);
}

double ReducedDensity::trace() const {
    double t = 0.0;
    for (const auto& b : blocks) {
        t += b.trace().real();
    }
    return t;
}

Eigen::MatrixXcd ReducedDensity::dense() const {
    const Eigen::Index dim = Eigen::Index{1} << partition_size;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t count = 0; count < blocks.size(); ++count) {
        if (blocks[count].size() == 0) {
            continue;
        }
        const SectorBasis local(partition_size, static_cast<int>(count));
        for (Eigen::Index i = 0; i < blocks[count].rows(); ++i) {
            for (Eigen::Index j = 0; j < blocks[count].cols(); ++j) {
                rho(local.state(i), local.state(j)) = blocks[count](i, j);
            }
        }
    }
    return rho;
}

ReducedDensity reduced_density(const SectorState& state, int partition_size) {
    const auto& basis = *state.basis;
    const int n = basis.n_total();
    if (partition_size < 1 || partition_size > n - 1) {
        throw DomainError("reduced_density: partition size must be in [1, N-1], got " +
                          std::to_string(partition_size));
    }
    const std::uint32_t mask_a = (std::uint32_t{1} << partition_size) - 1U;

    // Local bases for each possible excitation count inside A.
    std::vector<SectorBasis> local;
    local.reserve(static_cast<std::size_t>(partition_size) + 1);
    for (int c = 0; c <= partition_size; ++c) {
        local.emplace_back(partition_size, c);
    }

    ReducedDensity rho;
    rho.partition_size = partition_size;
    rho.blocks.resize(local.size());

    // Group the amplitudes by their B pattern: rho_A[a, a'] = sum_b psi(a, b) psi*(a', b).
    struct Entry {
        std::uint32_t b;
        int count;
        Eigen::Index row;
        cplx amp;
    };
    std::vector<Entry> entries;
    entries.reserve(basis.dimension());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const cplx amp = state.amplitudes(static_cast<Eigen::Index>(i));
        if (amp == cplx{0.0, 0.0}) {
            continue;
        }
        const std::uint32_t s = basis.state(i);
        const std::uint32_t a = s & mask_a;
        const int count = std::popcount(a);
        entries.push_back({s >> partition_size, count,
                           static_cast<Eigen::Index>(*local[count].index_of(a)), amp});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.b < y.b; });

    for (std::size_t c = 0; c < local.size(); ++c) {
        const int excitations_in_b = basis.excitations() - static_cast<int>(c);
        if (excitations_in_b >= 0 && excitations_in_b <= n - partition_size) {
            const auto d = static_cast<Eigen::Index>(local[c].dimension());
            rho.blocks[c] = Eigen::MatrixXcd::Zero(d, d);
        }
    }

    for (std::size_t lo = 0; lo < entries.size();) {
        std::size_t hi = lo;
        while (hi < entries.size() && entries[hi].b == entries[lo].b) {
            ++hi;
        }
        // A fixed B pattern fixes the count inside A, so the group is one block.
        auto& block = rho.blocks[entries[lo].count];
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = lo; j < hi; ++j) {
                block(entries[i].row, entries[j].row) += entries[i].amp * std::conj(entries[j].amp);
            }
        }
        lo = hi;
    }

    for (const auto& block : rho.blocks) {
        if (block.size() == 0) {
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw NumericError("reduced_density: eigendecomposition failed");
        }
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
            rho.eigenvalues.push_back(solver.eigenvalues()(k));
        }
    }
    std::sort(rho.eigenvalues.begin(), rho.eigenvalues.end(), std::greater<>());
    return rho;
}

double von_neumann_entropy(std::span<const double> eigenvalues) {
    std::vector<double> clipped;
    clipped.reserve(eigenvalues.size());
    for (double lambda : eigenvalues) {
        if (lambda < -kNegativeEigenvalueTolerance) {
            throw IntegrityError("von_neumann_entropy: negative eigenvalue " + std::to_string(lambda));
        }
        clipped.push_back(std::max(lambda, 0.0));
    }
    return svw::entropy(clipped);
}

double von_neumann_entropy(const ReducedDensity& rho) { return von_neumann_entropy(rho.eigenvalues); }

VerificationReport verify_closed_form(const ModelSpec& spec, std::span<const double> tau_samples) {
    check_sector_budget(spec.n_total());
    const int n = spec.n_total();
    const int m = spec.m_excited();
    const auto h = build_sector_hamiltonian(n, m);
    const SectorPropagator evolve(h);
    const auto initial = excited_block_state(h.basis);
    const auto table = b_table(spec);
    const bool trivial_cut = (m == 0 || m == n);

    VerificationReport report{spec, tau_samples.size()};
    for (double tau : tau_samples) {
        auto closed = schmidt_spectrum(amplitudes_at(spec, table, tau)).probabilities;
        std::sort(closed.begin(), closed.end(), std::greater<>());
        const double closed_entropy = svw::entropy(closed);

        const auto state = evolve(initial, tau);
        std::vector<double> exact;
        if (trivial_cut) {
            exact = {state.amplitudes.squaredNorm()};
        } else {
            exact = reduced_density(state, m).eigenvalues;
        }
        const double exact_entropy = von_neumann_entropy(exact);

        const std::size_t len = std::max(closed.size(), exact.size());
        closed.resize(len, 0.0);
        exact.resize(len, 0.0);
        for (std::size_t i = 0; i < len; ++i) {
            report.max_spectrum_deviation =
                std::max(report.max_spectrum_deviation, std::abs(closed[i] - exact[i]));
        }
        report.max_entropy_deviation =
            std::max(report.max_entropy_deviation, std::abs(closed_entropy - exact_entropy));
    }
    return report;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// op_a on site a and op_b on site b; the last Kronecker factor is site 0.
Eigen::MatrixXcd two_site(const Eigen::Matrix2cd& op_a, int a, const Eigen::Matrix2cd& op_b, int b, int n_total) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int s = n_total - 1; s >= 0; --s) {
        const Eigen::MatrixXcd factor =
            s == a ? Eigen::MatrixXcd(op_a) : (s == b ? Eigen::MatrixXcd(op_b) : Eigen::MatrixXcd::Identity(2, 2));
        out = kron(out, factor);
    }
    return out;
}

} // namespace

FullSpaceEvolver::FullSpaceEvolver(int n_total) : n_total_(n_total) {
    if (n_total < 2 || n_total > kMaxFullSpaceSites) {
        throw ResourceError("full-space construction limited to 2 <= N <= " +
                            std::to_string(kMaxFullSpaceSites));
    }
    const cplx i{0.0, 1.0};
    Eigen::Matrix2cd sx;
    sx << 0.0, 1.0, 1.0, 0.0;
    Eigen::Matrix2cd sy;
    sy << 0.0, -i, i, 0.0;
    // The hop sum is symmetric in sigma^+ <-> sigma^-, so which local level counts
    // as "excited" does not change H; here it is index 1.
    const Eigen::Matrix2cd sp = 0.5 * (sx + i * sy);
    const Eigen::Matrix2cd sm = 0.5 * (sx - i * sy);

    const Eigen::Index dim = Eigen::Index{1} << n_total;
    hamiltonian_ = Eigen::MatrixXcd::Zero(dim, dim);
    // Operators on different sites commute, so sigma^+_a sigma^-_b is one tensor product.
    for (int a = 0; a < n_total; ++a) {
        for (int b = a + 1; b < n_total; ++b) {
            hamiltonian_ += two_site(sp, a, sm, b, n_total) + two_site(sm, a, sp, b, n_total);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian_);
    if (solver.info() != Eigen::Success) {
        throw NumericError("FullSpaceEvolver: eigendecomposition failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd FullSpaceEvolver::operator()(int m_excited, double tau) const {
    if (m_excited < 0 || m_excited > n_total_) {
        throw DomainError("FullSpaceEvolver: M outside [0, N]");
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(vectors_.rows());
    psi((Eigen::Index{1} << m_excited) - 1) = 1.0;

    Eigen::VectorXcd coeffs = vectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        const double angle = -energies_(k) * tau;
        coeffs(k) *= cplx(std::cos(angle), std::sin(angle));
    }
    return vectors_ * coeffs;
}

Eigen::VectorXcd full_space_propagate(int n_total, int m_excited, double tau) {
    return FullSpaceEvolver(n_total)(m_excited, tau);
}

double full_space_crosscheck(const FullSpaceEvolver& full_space, int m_excited, double tau) {
    const Eigen::VectorXcd full = full_space(m_excited, tau);
    const auto h = build_sector_hamiltonian(full_space.n_total(), m_excited);
    const auto sector = propagate(h, excited_block_state(h.basis), tau);

    Eigen::VectorXcd embedded = Eigen::VectorXcd::Zero(full.size());
    for (std::size_t k = 0; k < h.basis->dimension(); ++k) {
        embedded(h.basis->state(k)) = sector.amplitudes(static_cast<Eigen::Index>(k));
    }
    return (full - embedded).cwiseAbs().maxCoeff();
}

double full_space_crosscheck(int n_total, int m_excited, double tau) {
    return full_space_crosscheck(FullSpaceEvolver(n_total), m_excited, tau);
}

} // namespace svw::oracle
