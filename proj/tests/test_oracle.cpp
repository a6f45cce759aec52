#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "svw/combinatorics.hpp"
#include "svw/evolution.hpp"
#include "svw/oracle.hpp"
#include "test_support.hpp"

namespace oracle = svw::oracle;
using svw::ModelSpec;
using std::numbers::pi;
using cplx = std::complex<double>;

TEST(SectorBasis, DimensionOrderingAndLookup) {
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const oracle::SectorBasis basis(n, k);
            ASSERT_EQ(basis.dimension(), svw::binomial(n, k).convert_to<std::size_t>());
            const auto states = basis.states();
            ASSERT_TRUE(std::is_sorted(states.begin(), states.end()));
            ASSERT_EQ(std::adjacent_find(states.begin(), states.end()), states.end());
            for (std::size_t i = 0; i < states.size(); ++i) {
                ASSERT_EQ(std::popcount(states[i]), k);
                ASSERT_LT(states[i], 1U << n);
                ASSERT_EQ(basis.index_of(states[i]), i);
            }
        }
    }
    EXPECT_FALSE(oracle::SectorBasis(4, 2).index_of(0b0111));
}

TEST(SectorHamiltonian, TwoDotsSingleHop) {
    const auto h = oracle::build_sector_hamiltonian(2, 1);
    Eigen::Matrix2d expected;
    expected << 0, 1, 1, 0;
    EXPECT_EQ(h.matrix, Eigen::MatrixXd(expected));
}

TEST(SectorHamiltonian, ThreeDotsEquivalentNeighbors) {
    const auto h = oracle::build_sector_hamiltonian(3, 1);
    const Eigen::MatrixXd expected = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
    EXPECT_EQ(h.matrix, expected);
}

TEST(SectorHamiltonian, VacuumIsUncoupled) {
    const auto h = oracle::build_sector_hamiltonian(3, 0);
    ASSERT_EQ(h.matrix.rows(), 1);
    EXPECT_EQ(h.matrix(0, 0), 0.0);
}

TEST(SectorHamiltonian, StructuralInvariants) {
    for (int n = 2; n <= 9; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto h = oracle::build_sector_hamiltonian(n, k);
            ASSERT_EQ(h.matrix, h.matrix.transpose());
            ASSERT_EQ(h.matrix.diagonal().cwiseAbs().maxCoeff(), 0.0);
            ASSERT_TRUE((h.matrix.array() == 0.0 || h.matrix.array() == 1.0).all());
            // Each state hops to k (n - k) neighbors.
            for (Eigen::Index c = 0; c < h.matrix.cols(); ++c) {
                ASSERT_EQ(h.matrix.col(c).sum(), static_cast<double>(k * (n - k)));
            }
        }
    }
}

TEST(SectorHamiltonian, SingleExcitationSpectrum) {
    for (int n = 2; n <= 10; ++n) {
        const auto h = oracle::build_sector_hamiltonian(n, 1);
        const oracle::SectorPropagator p(h);
        const auto& e = p.energies();
        for (Eigen::Index i = 0; i + 1 < e.size(); ++i) {
            EXPECT_NEAR(e(i), -1.0, 1e-12);
        }
        EXPECT_NEAR(e(e.size() - 1), n - 1.0, 1e-12);
    }
}

TEST(SectorHamiltonian, OverBudgetIsResourceError) {
    EXPECT_THROW(oracle::build_sector_hamiltonian(15, 1), svw::ResourceError);
}

TEST(Propagate, TwoDotsRabiOscillation) {
    const auto h = oracle::build_sector_hamiltonian(2, 1);
    const auto initial = oracle::excited_block_state(h.basis);
    EXPECT_EQ(h.basis->state(0), 0b01U);

    const auto quarter = oracle::propagate(h, initial, pi / 4);
    EXPECT_NEAR(std::abs(quarter.amplitudes(0) - cplx(std::cos(pi / 4), 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(quarter.amplitudes(1) - cplx(0.0, -std::sin(pi / 4))), 0.0, 1e-15);

    const auto half = oracle::propagate(h, initial, pi / 2);
    EXPECT_NEAR(std::abs(half.amplitudes(1)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(half.amplitudes(0)), 0.0, 1e-15);
}

TEST(Propagate, ZeroTimeIsIdentity) {
    const auto h = oracle::build_sector_hamiltonian(6, 3);
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(h.basis->dimension()));
    v.normalize();
    const oracle::SectorState s{h.basis, v};
    EXPECT_LT((oracle::propagate(h, s, 0.0).amplitudes - v).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Propagate, PreservesNorm) {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> ns(2, 10);
    std::uniform_real_distribution<double> taus(0.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        const int n = ns(rng);
        std::uniform_int_distribution<int> ks(0, n);
        const auto h = oracle::build_sector_hamiltonian(n, ks(rng));
        const auto s = oracle::propagate(h, oracle::excited_block_state(h.basis), taus(rng));
        ASSERT_NEAR(s.norm(), 1.0, 1e-12);
    }
}

TEST(Propagate, RejectsForeignState) {
    const auto h = oracle::build_sector_hamiltonian(4, 1);
    const auto other = oracle::build_sector_hamiltonian(4, 2);
    EXPECT_THROW(oracle::propagate(h, oracle::excited_block_state(other.basis), 0.1), svw::DomainError);
}

TEST(ReducedDensity, TwoDotsBellLikeState) {
    const auto h = oracle::build_sector_hamiltonian(2, 1);
    const auto s = oracle::propagate(h, oracle::excited_block_state(h.basis), pi / 4);
    const auto rho = oracle::reduced_density(s, 1);
    ASSERT_EQ(rho.eigenvalues.size(), 2U);
    EXPECT_NEAR(rho.eigenvalues[0], 0.5, 1e-15);
    EXPECT_NEAR(rho.eigenvalues[1], 0.5, 1e-15);
}

TEST(ReducedDensity, ProductStateIsPure) {
    const auto h = oracle::build_sector_hamiltonian(6, 2);
    const auto s = oracle::excited_block_state(h.basis);
    for (int cut = 1; cut <= 5; ++cut) {
        const auto rho = oracle::reduced_density(s, cut);
        EXPECT_NEAR(rho.eigenvalues.front(), 1.0, 1e-15);
        for (std::size_t i = 1; i < rho.eigenvalues.size(); ++i) {
            EXPECT_NEAR(rho.eigenvalues[i], 0.0, 1e-15);
        }
    }
}

TEST(ReducedDensity, SevenDotsAtStationaryTime) {
    const auto h = oracle::build_sector_hamiltonian(7, 1);
    const auto s = oracle::propagate(h, oracle::excited_block_state(h.basis), pi / 7);
    const auto rho = oracle::reduced_density(s, 1);
    EXPECT_NEAR(rho.eigenvalues[0], 25.0 / 49.0, 1e-9);
    EXPECT_NEAR(rho.eigenvalues[1], 24.0 / 49.0, 1e-9);
}

TEST(ReducedDensity, HermitianPositiveUnitTraceAndRankBound) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> taus(0.0, 4 * pi);
    for (int n = 2; n <= 9; ++n) {
        for (int m = 1; m < n; ++m) {
            const auto h = oracle::build_sector_hamiltonian(n, m);
            const auto s = oracle::propagate(h, oracle::excited_block_state(h.basis), taus(rng));
            const auto rho = oracle::reduced_density(s, m);
            const Eigen::MatrixXcd dense = rho.dense();
            ASSERT_LT((dense - dense.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
            ASSERT_NEAR(dense.trace().real(), 1.0, 1e-10);
            ASSERT_NEAR(rho.trace(), 1.0, 1e-10);
            ASSERT_GE(rho.eigenvalues.back(), -1e-12);

            const int m_prime = std::min(m, n - m);
            const auto rank = std::count_if(rho.eigenvalues.begin(), rho.eigenvalues.end(),
                                            [](double l) { return l > 1e-10; });
            ASSERT_LE(rank, m_prime + 1) << "N=" << n << " M=" << m;
        }
    }
}

TEST(ReducedDensity, InvalidPartitionIsDomainError) {
    const auto h = oracle::build_sector_hamiltonian(4, 2);
    const auto s = oracle::excited_block_state(h.basis);
    EXPECT_THROW(oracle::reduced_density(s, 0), svw::DomainError);
    EXPECT_THROW(oracle::reduced_density(s, 4), svw::DomainError);
}

namespace {

// Relabel sites: bit i of every pattern moves to position perm[i].
oracle::SectorState permute_sites(const oracle::SectorState& s, const std::vector<int>& perm) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.amplitudes.size());
    for (std::size_t i = 0; i < s.basis->dimension(); ++i) {
        const std::uint32_t p = s.basis->state(i);
        std::uint32_t q = 0;
        for (std::size_t bit = 0; bit < perm.size(); ++bit) {
            if ((p >> bit) & 1U) {
                q |= 1U << perm[bit];
            }
        }
        out(static_cast<Eigen::Index>(*s.basis->index_of(q))) = s.amplitudes(static_cast<Eigen::Index>(i));
    }
    return {s.basis, out};
}

} // namespace

TEST(ReducedDensity, AnyChoiceOfExcitedSitesIsEquivalent) {
    const int n = 6;
    const auto h = oracle::build_sector_hamiltonian(n, 2);
    const double tau = 0.83;
    // Excite sites 2 and 4 instead of 0 and 1.
    const auto scattered = oracle::propagate(h, oracle::basis_state(h.basis, 0b010100), tau);
    // Map sites {2, 4} -> {0, 1} and the rest onto {2, 3, 4, 5}.
    const std::vector<int> perm{2, 3, 0, 4, 1, 5};
    const auto relabeled = permute_sites(scattered, perm);
    const auto standard = oracle::propagate(h, oracle::excited_block_state(h.basis), tau);

    const auto a = oracle::reduced_density(relabeled, 2).eigenvalues;
    const auto b = oracle::reduced_density(standard, 2).eigenvalues;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-12);
    }
}

TEST(VonNeumannEntropy, ReferenceValues) {
    EXPECT_DOUBLE_EQ(oracle::von_neumann_entropy(std::vector<double>{0.5, 0.5}), 1.0);
    EXPECT_DOUBLE_EQ(oracle::von_neumann_entropy(std::vector<double>{1.0, 0.0}), 0.0);
    EXPECT_NEAR(oracle::von_neumann_entropy(std::vector<double>{24.0 / 49.0, 25.0 / 49.0}), 0.9997, 5e-5);
}

TEST(VonNeumannEntropy, NegativeEigenvalues) {
    EXPECT_DOUBLE_EQ(oracle::von_neumann_entropy(std::vector<double>{1.0, -5e-10}), 0.0);
    EXPECT_THROW(oracle::von_neumann_entropy(std::vector<double>{1.0, -1e-6}), svw::IntegrityError);
}

TEST(VonNeumannEntropy, SingleExcitationMatchesBinaryEntropy) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> taus(0.0, 4 * pi);
    for (int n = 2; n <= 12; ++n) {
        const auto h = oracle::build_sector_hamiltonian(n, 1);
        const oracle::SectorPropagator evolve(h);
        const auto initial = oracle::excited_block_state(h.basis);
        for (int i = 0; i < 20; ++i) {
            const double tau = taus(rng);
            const double e = oracle::von_neumann_entropy(oracle::reduced_density(evolve(initial, tau), 1));
            ASSERT_NEAR(e, svw::testing::binary_entropy(svw::testing::single_excitation_transfer(n, tau)), 1e-9)
                << n << " " << tau;
        }
    }
}

TEST(VerifyClosedForm, TwoDotsAgreeToRounding) {
    const auto taus = svw::linspace(0.0, 4 * pi, 64);
    const auto r = oracle::verify_closed_form(ModelSpec(2, 1), taus);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.samples, 64U);
    EXPECT_LT(r.max_spectrum_deviation, 1e-12);
    EXPECT_LT(r.max_entropy_deviation, 1e-12);
}

TEST(VerifyClosedForm, HalfFilledTenDots) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(0.0, 4 * pi);
    std::vector<double> taus(64);
    for (auto& t : taus) {
        t = dist(rng);
    }
    EXPECT_TRUE(oracle::verify_closed_form(ModelSpec(10, 5), taus).passed());
}

TEST(VerifyClosedForm, VacuumIsTrivial) {
    const auto r = oracle::verify_closed_form(ModelSpec(3, 0), std::vector<double>{0.0, 1.0, 2.0});
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.max_entropy_deviation, 0.0);
}

TEST(VerifyClosedForm, MoreThanHalfExcited) {
    // M > N/2 uses M' = N - M components; the closed form still has to match.
    for (int m = 4; m <= 7; ++m) {
        EXPECT_TRUE(oracle::verify_closed_form(ModelSpec(7, m), svw::linspace(0.1, 9.0, 16)).passed()) << m;
    }
}

TEST(VerifyClosedForm, OverBudgetIsResourceError) {
    EXPECT_THROW(oracle::verify_closed_form(ModelSpec(15, 1), std::vector<double>{0.1}), svw::ResourceError);
}

TEST(FullSpace, SectorRestrictionMatches) {
    EXPECT_LT(oracle::full_space_crosscheck(2, 1, pi / 4), 1e-14);
    EXPECT_LT(oracle::full_space_crosscheck(4, 2, 1.0), 1e-10);
    EXPECT_LT(oracle::full_space_crosscheck(8, 1, pi / 8), 1e-10);
}

TEST(FullSpace, HamiltonianRestrictsToSectorMatrix) {
    const oracle::FullSpaceEvolver full(6);
    for (int k = 0; k <= 6; ++k) {
        const auto h = oracle::build_sector_hamiltonian(6, k);
        for (std::size_t i = 0; i < h.basis->dimension(); ++i) {
            for (std::size_t j = 0; j < h.basis->dimension(); ++j) {
                const cplx v = full.hamiltonian()(h.basis->state(i), h.basis->state(j));
                ASSERT_NEAR(std::abs(v - h.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))), 0.0,
                            1e-15);
            }
        }
    }
}

TEST(FullSpace, ExcitationNumberConserved) {
    for (int n = 2; n <= 7; ++n) {
        const oracle::FullSpaceEvolver full(n);
        for (int m = 0; m <= n; ++m) {
            const auto psi = full(m, 1.37);
            double leak = 0.0;
            for (Eigen::Index i = 0; i < psi.size(); ++i) {
                if (std::popcount(static_cast<std::uint32_t>(i)) != m) {
                    leak += std::norm(psi(i));
                }
            }
            ASSERT_LT(std::sqrt(leak), 1e-12) << n << " " << m;
        }
    }
    EXPECT_THROW(oracle::full_space_propagate(9, 1, 0.1), svw::ResourceError);
}
