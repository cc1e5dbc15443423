#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sdwave/linalg2.hpp"
#include "sdwave/semiflow.hpp"
#include "support.hpp"

using namespace sdwave;

namespace {

StateE random_state(int n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    StateE w = StateE::zero(n);
    for (int i = 0; i < n; ++i) {
        w.x[i] = scale * gauss(rng);
        w.y[i] = scale * gauss(rng);
    }
    return w;
}

}  // namespace

TEST_CASE("nemitskii of the zero nonlinearity vanishes") {
    const auto basis = testsup::unit_basis(6);
    const auto f = builtins::zero();
    CHECK(nemitskii(basis, f, Eigen::VectorXd::Ones(6)).norm() == 0.0);
}

TEST_CASE("nemitskii of an odd nonlinearity is odd") {
    const auto basis = testsup::unit_basis(6);
    const auto f = builtins::arctan();
    const Eigen::VectorXd x = random_state(6, 3).x;
    const Eigen::VectorXd fp = nemitskii(basis, f, x);
    const Eigen::VectorXd fm = nemitskii(basis, f, -x);
    CHECK((fp + fm).norm() < 1e-12);
}

TEST_CASE("homotopy field at s = 0 has the product structure") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    const auto f = builtins::arctan();

    const StateE w = random_state(8, 17);
    Eigen::VectorXd x2 = w.x;
    for (int i = 0; i < 8; ++i)
        if (!d.is_kernel(i)) x2[i] += 5.0;  // perturb only the Q part

    const Eigen::VectorXd g1 = homotopy_field(d, basis, f, 0.0, w.x);
    const Eigen::VectorXd g2 = homotopy_field(d, basis, f, 0.0, x2);
    for (int i = 0; i < 8; ++i) {
        if (d.is_kernel(i)) {
            CHECK(std::abs(g1[i] - g2[i]) <= 1e-10);  // kernel sees only Pu
        } else {
            CHECK(g1[i] == 0.0);  // Q components carry the factor s
            CHECK(g2[i] == 0.0);
        }
    }
}

TEST_CASE("homotopy field at s = 1 is the full Nemitskii field") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    const auto f = builtins::arctan();
    const Eigen::VectorXd x = random_state(8, 5).x;
    CHECK((homotopy_field(d, basis, f, 1.0, x) - nemitskii(basis, f, x)).norm() <
          1e-14);
}

TEST_CASE("integrator is exact on the linear flow") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 2, 1.0);
    const auto f = builtins::zero();
    const auto integ = make_homotopy_integrator(d, basis, f, 1.0, 0.05);
    const StateE w0 = random_state(8, 23);
    const auto traj = integ.integrate(w0, 1.0);
    const StateE& wT = traj.states.back();
    for (int i = 0; i < 8; ++i) {
        const Eigen::Vector2d exact =
            testsup::expm_dense(-d.blocks[i].B * 1.0) *
            Eigen::Vector2d(w0.x[i], w0.y[i]);
        CHECK(std::abs(wT.x[i] - exact[0]) < 1e-9 * (1.0 + std::abs(exact[0])));
        CHECK(std::abs(wT.y[i] - exact[1]) < 1e-9 * (1.0 + std::abs(exact[1])));
    }
}

TEST_CASE("second-order convergence against an RK4 reference") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    const auto f = builtins::arctan();
    const StateE w0 = random_state(8, 41, 0.5);

    const FieldFn g = [&](const Eigen::VectorXd& x) {
        return homotopy_field(d, basis, f, 1.0, x);
    };
    const StateE ref = testsup::rk4_reference(d, basis, g, w0, 1.0, 1e-4);

    double prev_err = 0.0;
    for (int lvl = 0; lvl < 4; ++lvl) {
        const double dt = 0.01 / (1 << lvl);
        const auto integ = make_homotopy_integrator(d, basis, f, 1.0, dt);
        const auto traj = integ.integrate(w0, 1.0);
        const double err = testsup::state_dist(traj.states.back(), ref);
        if (lvl > 0) CHECK(prev_err / err >= 3.5);
        prev_err = err;
    }
}

TEST_CASE("trajectory bookkeeping: times, stride, s label") {
    const auto basis = testsup::unit_basis(4);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    const auto f = builtins::arctan();
    const auto integ = make_homotopy_integrator(d, basis, f, 0.5, 0.01);
    const auto traj = integ.integrate(random_state(4, 2), 0.1, 5);
    CHECK(traj.s == 0.5);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(0.1));
    CHECK(traj.times.size() == 3);  // t = 0, 0.05, 0.1
}

TEST_CASE("divergence guard trips on an explosive field") {
    const auto basis = testsup::unit_basis(4);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    const Integrator integ(
        d, [](const Eigen::VectorXd& x) { return Eigen::VectorXd(1e8 * x); },
        1.0);
    StateE w0 = StateE::zero(4);
    w0.x[0] = 1.0;
    CHECK_THROWS_AS(integ.step(w0), std::runtime_error);
}

TEST_CASE("W chart round trip") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 2, 0.7);
    const StateE w = random_state(8, 31);
    const KernelCoords wc = kernel_coordinates(d, w);
    const StateE back = kernel_state(d, wc, 8);
    for (int j = 0; j < d.kernel_dim(); ++j) {
        const int i = d.kernel_modes[j];
        CHECK(std::abs(back.x[i] - w.x[i]) < 1e-12);
        CHECK(std::abs(back.y[i] - w.y[i]) < 1e-12);
    }
    // Chart formula oracle: w1 = a (c lambda x0 + y0), w2 = y0.
    const double a = d.a_constant();
    const int i0 = d.kernel_modes[0];
    CHECK(wc.w1[0] ==
          doctest::Approx(a * (d.c * d.lambda * w.x[i0] + w.y[i0])).epsilon(1e-12));
    CHECK(wc.w2[0] == doctest::Approx(w.y[i0]).epsilon(1e-12));
}

TEST_CASE("divergence probe recovers the slope ||y0||^2") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    for (double amp : {1.0, 2.0}) {
        const Eigen::VectorXd y0 = Eigen::VectorXd::Constant(1, amp);
        for (int seed = 0; seed < 10; ++seed) {
            const StateE w0 = random_state(8, 100 + seed);
            const auto rep = divergence_probe(d, basis, y0, w0, 20.0, 0.01);
            CHECK(rep.expected_slope == doctest::Approx(amp * amp));
            CHECK(rep.relative_error < 1e-3);
        }
    }
}

TEST_CASE("divergence probe rejects a zero kernel element") {
    const auto basis = testsup::unit_basis(4);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    CHECK_THROWS_AS(divergence_probe(d, basis, Eigen::VectorXd::Zero(1),
                                     StateE::zero(4), 1.0, 0.01),
                    std::invalid_argument);
}

TEST_CASE("E norm splits into kernel and Q parts") {
    const auto basis = testsup::unit_basis(8);
    const auto d = testsup::unit_decomp(basis, 1, 1.0);
    StateE w = StateE::zero(8);
    w.x[0] = 2.0;  // kernel mode for k = 1
    CHECK(qnorm(w, d, basis) == 0.0);
    CHECK(enorm(w, basis, d.alpha) ==
          doctest::Approx(2.0 * std::pow(basis.eigenvalues[0], 0.5)));
    w.x[0] = 0.0;
    w.y[3] = 1.5;
    CHECK(qnorm(w, d, basis) == doctest::Approx(1.5));
    CHECK(enorm(w, basis, d.alpha) == doctest::Approx(1.5));
}
