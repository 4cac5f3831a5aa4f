#include "orthopersist/ensemble.hpp"
#include "orthopersist/asym.hpp"
#include "orthopersist/densela.hpp"
#include "orthopersist/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace orthopersist;
using ensemble::EnsembleParams;

TEST_CASE("hankel matrix entries") {
    const auto H = ensemble::hankel_matrix({2, 1});
    CHECK(H(0, 0) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(H(0, 1) == doctest::Approx(2.0 / (3.0 * M_PI)).epsilon(1e-14));
    CHECK(H(1, 0) == doctest::Approx(2.0 / (3.0 * M_PI)).epsilon(1e-14));
    CHECK(H(1, 1) == doctest::Approx(2.0 / (5.0 * M_PI)).epsilon(1e-14));

    const auto H12 = ensemble::hankel_matrix({1, 2});
    CHECK(H12(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // positive, strictly decreasing along the antidiagonal index p+q
    for (int ell = 1; ell <= 5; ++ell) {
        const auto Hn = ensemble::hankel_matrix({6, ell});
        for (int s = 0; s < 10; ++s) CHECK(Hn(0, s > 5 ? 5 : s) > 0.0);
        for (int s = 0; s < 5; ++s) CHECK(Hn(0, s) > Hn(0, s + 1));
    }
}

TEST_CASE("weight diagonal") {
    const auto d1 = ensemble::weight_diag({4, 1});
    for (double v : d1) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    const auto d2 = ensemble::weight_diag({3, 2});
    CHECK(d2[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d2[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(d2[2] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    const auto d3 = ensemble::weight_diag({1, 3});
    CHECK(d3[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("p_no_real reference values") {
    CHECK(ensemble::p_no_real({1, 1}) == doctest::Approx(1.0 - 2.0 / M_PI).epsilon(1e-13));
    const double det22 = (1.0 - 2.0 / M_PI) * (1.0 - 2.0 / (5.0 * M_PI)) -
                         4.0 / (9.0 * M_PI * M_PI);
    CHECK(ensemble::p_no_real({2, 1}) == doctest::Approx(det22).epsilon(1e-12));
    CHECK(ensemble::p_no_real({1, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("p_no_real strictly decreasing in n") {
    for (int ell : {1, 2, 3}) {
        double prev = 1.0;
        for (int n : {1, 2, 4, 8, 16, 32}) {
            const double p = ensemble::p_no_real({n, ell});
            CHECK(p > 0.0);
            CHECK(p < prev);
            prev = p;
        }
    }
}

TEST_CASE("mgf") {
    CHECK(ensemble::mgf({3, 2}, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // s -> -inf limit reduces to p_no_real
    CHECK(ensemble::mgf({3, 2}, -40.0) ==
          doctest::Approx(ensemble::p_no_real({3, 2})).epsilon(1e-10));
    // (1,1) at s = ln sqrt(2): 1 + (2/pi)(e^{2s}-1) = 1 + 2/pi
    CHECK(ensemble::mgf({1, 1}, 0.5 * std::log(2.0)) ==
          doctest::Approx(1.0 + 2.0 / M_PI).epsilon(1e-13));
    // strictly increasing in s
    double prev = 0.0;
    for (double s = -3.0; s <= 1.0; s += 0.25) {
        const double v = ensemble::mgf({4, 2}, s);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("real count distribution") {
    const auto d11 = ensemble::real_count_distribution({1, 1});
    CHECK(d11.probs[0] == doctest::Approx(1.0 - 2.0 / M_PI).epsilon(1e-13));
    CHECK(d11.probs[1] == doctest::Approx(2.0 / M_PI).epsilon(1e-13));

    for (int ell : {1, 2, 3}) {
        for (int n : {1, 2, 4, 8}) {
            const auto d = ensemble::real_count_distribution({n, ell});
            double sum = 0.0;
            for (double p : d.probs) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(d.probs[0] == doctest::Approx(ensemble::p_no_real({n, ell})).epsilon(1e-12));
            // all-real bin against the Barnes-G closed form
            const double pn = std::exp(ensemble::log_p_all_real({n, ell}));
            CHECK(d.probs[n] == doctest::Approx(pn).epsilon(1e-9));
        }
    }
}

TEST_CASE("distribution mean equals mgf derivative at 0") {
    const EnsembleParams params{5, 2};
    const auto d = ensemble::real_count_distribution(params);
    double mean = 0.0;
    for (size_t k = 0; k < d.probs.size(); ++k) mean += 2.0 * k * d.probs[k];
    const double h = 1e-5;
    const double deriv = (ensemble::mgf(params, h) - ensemble::mgf(params, -h)) / (2.0 * h);
    CHECK(mean == doctest::Approx(deriv).epsilon(1e-6));
}

TEST_CASE("log_p_all_real") {
    CHECK(ensemble::log_p_all_real({1, 1}) == doctest::Approx(std::log(2.0 / M_PI)).epsilon(1e-13));
    const auto d21 = ensemble::real_count_distribution({2, 1});
    CHECK(std::exp(ensemble::log_p_all_real({2, 1})) ==
          doctest::Approx(d21.probs[2]).epsilon(1e-10));
    CHECK(ensemble::log_p_all_real({8, 3}) < ensemble::log_p_all_real({4, 3}));
}

TEST_CASE("spectral radius below one (Cholesky positivity of I - DHD)") {
    for (int ell : {1, 2, 3, 4, 5, 6}) {
        for (int n : {1, 4, 16, 64, 256, 512}) {
            CHECK_NOTHROW(ensemble::p_no_real({n, ell}));
        }
    }
}

TEST_CASE("phi asymptotics hook: (1/n^2) log p approaches phi(1) monotonically") {
    const double target = asym::phi(1.0);
    double prev_gap = 1e9;
    for (int n : {8, 16, 32, 64}) {
        const double v = ensemble::log_p_all_real({n, n}) / (static_cast<double>(n) * n);
        const double gap = std::abs(v - target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ensemble::p_no_real({0, 1}), std::domain_error);
    CHECK_THROWS_AS(ensemble::hankel_matrix({1, 0}), std::domain_error);
}
