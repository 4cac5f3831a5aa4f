#include "orthopersist/skewortho.hpp"
#include "orthopersist/ensemble.hpp"
#include "orthopersist/errors.hpp"
#include "orthopersist/pfaffian.hpp"
#include "orthopersist/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace orthopersist;
using std::complex;

TEST_CASE("pi_eval") {
    const complex<double> z{0.3, 0.4};
    CHECK(skewortho::pi_eval(0, 3, z) == complex<double>{1.0, 0.0});
    CHECK(skewortho::pi_eval(1, 2, z) == z);
    // pi_3 at ell=1: z^3 - (2/3) z
    const auto p3 = skewortho::pi_eval(3, 1, z);
    const auto ref = z * z * z - (2.0 / 3.0) * z;
    CHECK(std::abs(p3 - ref) < 1e-15);
    // SkewPoly wrapper agrees
    skewortho::SkewPoly poly{3, 1};
    CHECK(std::abs(poly(z) - ref) < 1e-15);
    CHECK(poly.odd());
}

TEST_CASE("weight_sq") {
    // outside the unit disk
    CHECK(skewortho::weight_sq(2, {1.2, 0.3}) == 0.0);
    // real axis: Gamma(ell+1) / (2^ell Gamma^2(ell/2)) * (1-x^2)^{ell-2}
    for (int ell = 1; ell <= 4; ++ell) {
        for (double x : {0.0, 0.3, 0.8}) {
            const double ref = std::exp(specfun::log_gamma(ell + 1.0) - ell * std::log(2.0) -
                                        2.0 * specfun::log_gamma(ell / 2.0)) *
                               std::pow(1.0 - x * x, ell - 2.0);
            CHECK(skewortho::weight_sq(ell, {x, 0.0}) == doctest::Approx(ref).epsilon(1e-12));
        }
    }
    // ell=3 at z = i/2: (3/pi) * (5/4) * (1/5) = 3/(4 pi)
    CHECK(skewortho::weight_sq(3, {0.0, 0.5}) ==
          doctest::Approx(3.0 / (4.0 * M_PI)).epsilon(1e-12));
    // ell=1 singular marker on the real axis at +-1
    CHECK(std::isinf(skewortho::weight_sq(1, {1.0, 0.0})));
}

TEST_CASE("closed-form skew products") {
    for (int ell : {1, 2, 3, 5}) {
        CHECK(skewortho::skew_product_closed(0, 1, ell) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(skewortho::skew_product_closed(2, 3, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(skewortho::skew_product_closed(0, 2, 4) == 0.0);
    CHECK(skewortho::skew_product_closed(0, 3, 2) == 0.0);
    CHECK(skewortho::skew_product_closed(1, 0, 2) == doctest::Approx(-1.0).epsilon(1e-14));

    CHECK(skewortho::skew_product_real_closed(0, 1, 1) ==
          doctest::Approx(2.0 / M_PI).epsilon(1e-13));
    CHECK(skewortho::skew_product_real_closed(2, 1, 1) ==
          doctest::Approx(2.0 / (3.0 * M_PI)).epsilon(1e-13));
    CHECK(skewortho::skew_product_real_closed(0, 2, 3) == 0.0);
    // ratio identity at n = 1: 1 - real/full = p_no_real(1,ell)
    for (int ell : {1, 2}) {
        const double r = 1.0 - skewortho::skew_product_real_closed(0, 1, ell) /
                                   skewortho::skew_product_closed(0, 1, ell);
        CHECK(r == doctest::Approx(ensemble::p_no_real({1, ell})).epsilon(1e-12));
    }
}

TEST_CASE("quadrature vs closed forms (spot checks)") {
    // full set is exercised by the acceptance suite; representative subset here
    for (int ell : {1, 2, 3}) {
        for (auto [i, j] : {std::pair{0, 1}, {2, 3}, {1, 4}, {0, 5}}) {
            const auto parts = skewortho::skew_product_quadrature(i, j, ell, 200);
            const double total = parts.real_part + parts.complex_part;
            CHECK(std::abs(total - skewortho::skew_product_closed(i, j, ell)) < 1e-5);
            CHECK(std::abs(parts.real_part - skewortho::skew_product_real_closed(i, j, ell)) <
                  1e-6);
        }
    }
}

TEST_CASE("quadrature antisymmetry and same-parity vanishing") {
    const auto ab = skewortho::skew_product_quadrature(1, 2, 2, 200);
    const auto ba = skewortho::skew_product_quadrature(2, 1, 2, 200);
    CHECK(ab.real_part == doctest::Approx(-ba.real_part).epsilon(1e-8));
    CHECK(ab.complex_part == doctest::Approx(-ba.complex_part).epsilon(1e-8));

    const auto same = skewortho::skew_product_quadrature(0, 2, 2, 200);
    CHECK(std::abs(same.real_part) < 1e-8);
    CHECK(std::abs(same.complex_part) < 1e-8);
}

TEST_CASE("complex part identity: delta/binom minus real part") {
    for (int ell : {1, 2}) {
        for (int p = 0; p <= 2; ++p) {
            for (int q = 0; q <= 2; ++q) {
                const auto parts = skewortho::skew_product_quadrature(2 * p, 2 * q + 1, ell, 200);
                const double binom = std::exp(specfun::log_gamma(2.0 * q + ell + 1.0) -
                                              specfun::log_gamma(ell + 1.0) -
                                              specfun::log_gamma(2.0 * q + 1.0));
                const double expect = (p == q ? 1.0 / binom : 0.0) -
                                      skewortho::skew_product_real_closed(2 * p, 2 * q + 1, ell);
                CHECK(parts.complex_part == doctest::Approx(expect).epsilon(5e-6));
            }
        }
    }
}

TEST_CASE("pfaffian ratio oracle vs determinant formula") {
    CHECK(std::abs(skewortho::pfaffian_ratio_p({1, 1}) - ensemble::p_no_real({1, 1})) < 1e-5);
    CHECK(std::abs(skewortho::pfaffian_ratio_p({1, 2}) - ensemble::p_no_real({1, 2})) < 1e-5);
    CHECK_THROWS_AS(skewortho::pfaffian_ratio_p({5, 1}), std::domain_error);
}

TEST_CASE("denominator pfaffian is the product of adjacent products") {
    const int n = 3, ell = 2;
    pfaffian::SkewMatrix den(2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i + 1; j < 2 * n; ++j)
            den.set(i, j, skewortho::skew_product_closed(i, j, ell));
    double prod = 1.0;
    for (int k = 0; k < n; ++k) prod *= skewortho::skew_product_closed(2 * k, 2 * k + 1, ell);
    CHECK(pfaffian::pfaffian(den) == doctest::Approx(prod).epsilon(1e-13));
}

TEST_CASE("accuracy budget triggers at very low density") {
    CHECK_THROWS_AS(skewortho::skew_product_quadrature(6, 7, 1, 24), AccuracyBudget);
}
