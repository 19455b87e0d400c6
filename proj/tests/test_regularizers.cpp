#include <cmath>

#include <gtest/gtest.h>

#include "helmreg/dense.hpp"
#include "helmreg/helmreg.hpp"
#include "oracles.hpp"

using namespace helmreg;

namespace {

struct Setup {
    Grid grid;
    HelmholtzFilter filter;
};

Setup setup_1d(int n, double delta, double hi = 1.0) {
    Grid g = make_grid_1d(0.0, hi, n);
    return {g, HelmholtzFilter(g, delta)};
}

}  // namespace

TEST(RegConfig, Validation) {
    EXPECT_NO_THROW((RegConfig{Method::MITLAR, 0.5, 2}.validate()));
    EXPECT_THROW((RegConfig{Method::MITLAR, 0.0, 2}.validate()), std::invalid_argument);
    EXPECT_THROW((RegConfig{Method::MITLAR, 1.5, 2}.validate()), std::invalid_argument);
    EXPECT_THROW((RegConfig{Method::ITL, 0.5, -1}.validate()), std::invalid_argument);
    EXPECT_FALSE((RegConfig{Method::MITLAR, 0.5, 0}.outside_descent_range()));
    EXPECT_TRUE((RegConfig{Method::MITLAR, 0.7, 0}.outside_descent_range()));
    EXPECT_EQ(parse_method("mitlar"), Method::MITLAR);
    EXPECT_EQ(to_string(Method::ITL), "ITL");
    EXPECT_THROW(parse_method("LSQR"), std::invalid_argument);
}

// ---------------------------------------------------------------- TL

TEST(DeconvolveTL, EigenmodeSpectralOracle) {
    auto [g, filter] = setup_1d(64, 0.04);
    for (int k : {1, 9, 50}) {
        const Field u = oracle::eigenmode(g, k);
        const double gain = oracle::filter_gain(0.04, oracle::stencil_eigenvalue(g.axis(0), k));
        const double alpha = 0.05;
        const Field u0 = deconvolve_tl(filter, gain * u, alpha);
        EXPECT_LT(oracle::rel_diff(u0, (gain / (gain + alpha)) * u), 1e-11);
    }
}

TEST(DeconvolveTL, SmallAlphaApproachesExactInverse) {
    auto [g, filter] = setup_1d(32, 0.05);
    const Field u = oracle::random_field(g, 7);
    const Field u_bar = filter.apply(u);
    EXPECT_LT(oracle::rel_diff(deconvolve_tl(filter, u_bar, 1e-12), u), 1e-8);
}

TEST(DeconvolveTL, MatchesDenseLavrentievSolve) {
    auto [g, filter] = setup_1d(16, 0.08);
    const Field u_bar = oracle::random_field(g, 3);
    const auto G = dense::dense_matrices(g, 0.08).G;
    const double alpha = 0.02;
    const dense::Matrix M = G + alpha * dense::Matrix::Identity(G.rows(), G.cols());
    const Field ref = dense::to_field(g, M.partialPivLu().solve(dense::to_vector(u_bar)));
    EXPECT_LT(oracle::rel_diff(deconvolve_tl(filter, u_bar, alpha), ref), 1e-10);
}

TEST(DeconvolveTL, RejectsNonPositiveAlpha) {
    auto [g, filter] = setup_1d(8, 0.1);
    EXPECT_THROW(deconvolve_tl(filter, Field(g), 0.0), std::invalid_argument);
    EXPECT_THROW(deconvolve_itl(filter, Field(g), -1.0, 1), std::invalid_argument);
    EXPECT_THROW(deconvolve_itl(filter, Field(g), 0.1, -1), std::invalid_argument);
}

// ---------------------------------------------------------------- ITL

TEST(DeconvolveITL, ZeroUpdatesEqualsTL) {
    auto [g, filter] = setup_1d(32, 0.06);
    const Field u_bar = oracle::random_field(g, 2);
    const IterateTrace t = deconvolve_itl(filter, u_bar, 0.1, 0);
    ASSERT_EQ(t.iterates.size(), 1u);
    EXPECT_TRUE(t.update_norms.empty());
    EXPECT_EQ(oracle::max_abs_diff(t.final(), deconvolve_tl(filter, u_bar, 0.1)), 0.0);
}

TEST(DeconvolveITL, EigenmodeErrorMultiplier) {
    const double delta = 0.05, alpha = 0.1;
    auto [g, filter] = setup_1d(64, delta);
    const int k = 12;
    const Field u = oracle::eigenmode(g, k);
    const double gain = oracle::filter_gain(delta, oracle::stencil_eigenvalue(g.axis(0), k));
    const IterateTrace t = deconvolve_itl(filter, gain * u, alpha, 4);
    ASSERT_EQ(t.iterates.size(), 5u);
    for (int j = 0; j <= 4; ++j) {
        const Field e = u - t.iterates[static_cast<std::size_t>(j)];
        EXPECT_LT(oracle::rel_diff(e, oracle::itl_multiplier(gain, alpha, j) * u), 1e-9) << "j=" << j;
    }
}

TEST(DeconvolveITL, MatchesDenseRecurrence) {
    const double delta = 0.07, alpha = 0.03;
    auto [g, filter] = setup_1d(16, delta);
    const Field u_bar = oracle::random_field(g, 5);
    const auto G = dense::dense_matrices(g, delta).G;
    const auto lu = (G + alpha * dense::Matrix::Identity(G.rows(), G.cols())).partialPivLu();
    const dense::Vector ub = dense::to_vector(u_bar);
    dense::Vector uj = lu.solve(ub);
    const IterateTrace t = deconvolve_itl(filter, u_bar, alpha, 3);
    EXPECT_LT(oracle::rel_diff(t.iterates[0], dense::to_field(g, uj)), 1e-10);
    for (int j = 1; j <= 3; ++j) {
        const dense::Vector d = lu.solve(ub - G * uj);
        uj += d;
        EXPECT_LT(oracle::rel_diff(t.iterates[static_cast<std::size_t>(j)], dense::to_field(g, uj)), 1e-10);
        EXPECT_NEAR(t.update_norms[static_cast<std::size_t>(j - 1)], std::sqrt(g.h()) * d.norm(), 1e-10 * d.norm());
    }
}

// ---------------------------------------------------------------- Mitlar / MTL

TEST(DeconvolveMitlar, AlphaOneReturnsData) {
    auto [g, filter] = setup_1d(32, 0.05);
    const Field u_bar = oracle::random_field(g, 12);
    const IterateTrace t = deconvolve_mitlar(filter, u_bar, 1.0, 0);
    EXPECT_LT(oracle::rel_diff(t.final(), u_bar), 1e-12);
}

TEST(DeconvolveMitlar, EigenmodeErrorMultiplier) {
    const double delta = 0.05, alpha = 0.2;
    auto [g, filter] = setup_1d(64, delta);
    for (int k : {3, 20, 60}) {
        const Field u = oracle::eigenmode(g, k);
        const double lam = oracle::stencil_eigenvalue(g.axis(0), k);
        const IterateTrace t = deconvolve_mitlar(filter, oracle::filter_gain(delta, lam) * u, alpha, 3);
        ASSERT_EQ(t.iterates.size(), 4u);
        for (int j = 0; j <= 3; ++j) {
            const Field e = u - t.iterates[static_cast<std::size_t>(j)];
            // Mixed tolerance: e comes from u − u_j, so it carries O(1e−15) absolute cancellation error.
            const Field expected = oracle::mitlar_multiplier(delta, lam, alpha, j) * u;
            EXPECT_LE(oracle::max_abs_diff(e, expected), 1e-9 * oracle::max_abs(expected) + 1e-13)
                << "k=" << k << " j=" << j;
        }
    }
}

TEST(DeconvolveMitlar, MatchesDenseSeries) {
    const double delta = 0.06, alpha = 0.1;
    auto [g, filter] = setup_1d(16, delta);
    const Field u_bar = oracle::random_field(g, 21);
    const IterateTrace t = deconvolve_mitlar(filter, u_bar, alpha, 2);
    for (int j = 0; j <= 2; ++j) {
        const auto ops = dense::dense_reg_operators(g, delta, alpha, j);
        const Field ref = dense::to_field(g, ops.D_J * dense::to_vector(u_bar));
        EXPECT_LT(oracle::rel_diff(t.iterates[static_cast<std::size_t>(j)], ref), 1e-10) << "j=" << j;
    }
}

TEST(DeconvolveMitlar, RejectsAlphaOutsideUnitInterval) {
    auto [g, filter] = setup_1d(8, 0.1);
    EXPECT_THROW(deconvolve_mitlar(filter, Field(g), 1.5, 1), std::invalid_argument);
    EXPECT_THROW(deconvolve_mitlar(filter, Field(g), -0.1, 1), std::invalid_argument);
    EXPECT_THROW(deconvolve_mitlar(filter, Field(make_grid_1d(0, 1, 4)), 0.1, 1), std::invalid_argument);
}

TEST(DeconvolveMTL, DelegatesToMitlar) {
    const double delta = 0.05, alpha = 0.3;
    auto [g, filter] = setup_1d(40, delta);
    const Field u_bar = oracle::random_field(g, 4);
    EXPECT_EQ(oracle::max_abs_diff(deconvolve_mtl(filter, u_bar, alpha),
                                   deconvolve_mitlar(filter, u_bar, alpha, 0).iterates.front()),
              0.0);

    const int k = 7;
    const Field u = oracle::eigenmode(g, k);
    const double lam = oracle::stencil_eigenvalue(g.axis(0), k);
    const Field u0 = deconvolve_mtl(filter, oracle::filter_gain(delta, lam) * u, alpha);
    EXPECT_LT(oracle::rel_diff(u0, (1.0 / (1.0 + alpha * delta * delta * lam)) * u), 1e-11);

    EXPECT_EQ(oracle::max_abs_diff(deconvolve_mtl(filter, u_bar, 0.0), filter.apply_A(u_bar)), 0.0);
}

TEST(Deconvolve, DispatchMatchesDirectCalls) {
    auto [g, filter] = setup_1d(24, 0.05);
    const Field u_bar = oracle::random_field(g, 30);
    EXPECT_EQ(oracle::max_abs_diff(deconvolve(filter, u_bar, {Method::TL, 0.1, 3}).final(),
                                   deconvolve_tl(filter, u_bar, 0.1)),
              0.0);
    EXPECT_EQ(deconvolve(filter, u_bar, {Method::ITL, 0.1, 3}).updates(), 3);
    EXPECT_EQ(deconvolve(filter, u_bar, {Method::MTL, 0.1, 3}).updates(), 0);
    EXPECT_EQ(deconvolve(filter, u_bar, {Method::MITLAR, 0.1, 2}).updates(), 2);
}

TEST(DeconvolveMitlar, MonotoneImprovementInJ) {
    const double delta = 0.03;
    auto [g, filter] = setup_1d(64, delta);
    for (double alpha : {0.05, 0.5, 1.0})
        for (int k : {2, 30, 63}) {
            const Field u = oracle::eigenmode(g, k);
            const IterateTrace t = deconvolve_mitlar(filter, filter.apply(u), alpha, 5);
            for (std::size_t j = 1; j < t.iterates.size(); ++j)
                EXPECT_LE(l2_norm(u - t.iterates[j]), l2_norm(u - t.iterates[j - 1]) * (1 + 1e-12));
        }
}

TEST(DeconvolveMitlar, TwoDimensionalMatchesDense) {
    const double delta = 0.1, alpha = 0.2;
    const Grid g = make_grid_2d(0, 1, 12);
    const HelmholtzFilter filter(g, delta);
    const Field u_bar = oracle::random_field(g, 17);
    const IterateTrace t = deconvolve_mitlar(filter, u_bar, alpha, 2);
    const auto ops = dense::dense_reg_operators(g, delta, alpha, 2);
    EXPECT_LT(oracle::rel_diff(t.final(), dense::to_field(g, ops.D_J * dense::to_vector(u_bar))), 1e-9);
}

// ---------------------------------------------------------------- bounds

TEST(Bounds, NoiseFreeEigenmode) {
    const double delta = 0.05, alpha = 0.1;
    auto [g, filter] = setup_1d(64, delta);
    const int k = 10;
    const Field u = oracle::eigenmode(g, k);
    const double x = alpha * delta * delta * oracle::stencil_eigenvalue(g.axis(0), k);
    const double bound = mitlar_noise_free_bound(filter, u, alpha, 0);
    EXPECT_NEAR(bound, x * l2_norm(u), 1e-10 * bound);
    const double err = l2_norm(u - deconvolve_mtl(filter, filter.apply(u), alpha));
    EXPECT_NEAR(err, x / (1 + x) * l2_norm(u), 1e-9 * err);
    EXPECT_LE(err, bound);

    EXPECT_EQ(mitlar_noise_free_bound(filter, Field(g), alpha, 2), 0.0);
    EXPECT_EQ(mitlar_noise_free_bound(filter, u, 0.0, 2), 0.0);
}

TEST(Bounds, NoisyBoundArithmetic) {
    auto [g, filter] = setup_1d(32, 0.05);
    const Field u = oracle::eigenmode(g, 3);
    EXPECT_EQ(mitlar_noisy_bound(filter, u, 0.1, 2, 0.0), mitlar_noise_free_bound(filter, u, 0.1, 2));
    EXPECT_NEAR(mitlar_noisy_bound(filter, u, 0.1, 0, 0.01) - mitlar_noise_free_bound(filter, u, 0.1, 0), 0.1, 1e-15);
    EXPECT_THROW(mitlar_noisy_bound(filter, u, 0.0, 0, 0.01), std::invalid_argument);
    EXPECT_THROW(mitlar_noisy_bound(filter, u, 0.1, 0, -0.01), std::invalid_argument);
}

TEST(Bounds, NoisyBoundHoldsWithInjectedNoise) {
    for (int n : {16, 32, 64}) {
        const double delta = 0.05;
        auto [g, filter] = setup_1d(n, delta);
        for (double alpha : {0.05, 0.2, 0.5})
            for (int J : {0, 1, 3})
                for (std::uint64_t seed = 0; seed < 4; ++seed) {
                    const Field u = oracle::eigenmode(g, 1 + static_cast<int>(seed) * 3 % (n - 1));
                    Field eps = oracle::random_field(g, seed + 99);
                    const double eps0 = 1e-3;
                    eps *= eps0 / l2_norm(eps);
                    const Field u_bar = filter.apply(u) - eps;
                    const double err = l2_norm(u - deconvolve_mitlar(filter, u_bar, alpha, J).final());
                    EXPECT_LE(err, mitlar_noisy_bound(filter, u, alpha, J, eps0) * (1 + 1e-8));
                }
    }
}

// ---------------------------------------------------------------- dense regularizer operators

TEST(DenseRegOperators, AlphaOneIsIdentity) {
    const auto ops = dense::dense_reg_operators(make_grid_1d(0, 1, 16), 0.1, 1.0, 0);
    EXPECT_LT((ops.D - dense::Matrix::Identity(15, 15)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_THROW(dense::dense_reg_operators(make_grid_1d(0, 1, 1026), 0.1, 0.5, 0), std::invalid_argument);
}

TEST(DenseRegOperators, SpectralRadii) {
    const Grid g = make_grid_1d(0, 1, 32);
    for (double alpha : {0.01, 0.1, 0.5, 1.0}) {
        const auto ops = dense::dense_reg_operators(g, 0.05, alpha, 0);
        Eigen::EigenSolver<dense::Matrix> a(ops.DG), b(ops.I_minus_DG);
        EXPECT_LE(a.eigenvalues().cwiseAbs().maxCoeff(), 1.0 + 1e-12);
        EXPECT_LE(b.eigenvalues().cwiseAbs().maxCoeff(), 1.0 + 1e-12);
    }
}

TEST(DenseRegOperators, ErrorEquation) {
    const double delta = 0.08;
    const Grid g = make_grid_1d(0, 1, 16);
    const HelmholtzFilter filter(g, delta);
    const Field u = oracle::random_field(g, 44);
    const auto fm = dense::dense_matrices(g, delta);
    for (int J = 0; J <= 3; ++J) {
        const double alpha = 0.1;
        const auto ops = dense::dense_reg_operators(g, delta, alpha, J);
        const Field e = u - deconvolve_mitlar(filter, filter.apply(u), alpha, J).final();
        // (−αδ²)^{J+1}(DG)^{J+1}Δ^{J+1}u = (αδ²)^{J+1}(DG)^{J+1}(−Δʰ)^{J+1}u.
        dense::Vector v = dense::to_vector(u);
        for (int i = 0; i <= J; ++i) v = fm.neg_laplacian * v;
        for (int i = 0; i <= J; ++i) v = ops.DG * v;
        v *= std::pow(alpha * delta * delta, J + 1);
        EXPECT_LT(oracle::rel_diff(e, dense::to_field(g, v)), 1e-9) << "J=" << J;
    }
}
