// test_models.cpp — Built-in models against their closed forms

#include <doctest.h>

#include <cmath>

#include "gqms/errors.hpp"
#include "gqms/models.hpp"
#include "gqms/williamson.hpp"

using namespace gqms;

TEST_SUITE("models") {

TEST_CASE("bath coefficients")
{
    for (const double beta : {0.1, 1.0, std::log(4.0), 5.0}) {
        const double gm = models::gamma_minus(beta), gp = models::gamma_plus(beta);
        CHECK(std::abs(gm * gm - gp * gp - 1.0) <= 1e-13);
        CHECK(std::abs(gm * gm + gp * gp - 1.0 / std::tanh(beta / 2)) <= 1e-12);
    }
    CHECK_THROWS_AS(models::gamma_minus(0.0), ModelError);
}

TEST_CASE("boson chain constants")
{
    const auto cf = models::boson_chain_closed_form({});
    CHECK(std::abs(cf.lambda - 2.5) <= 1e-14);
    CHECK(std::abs(cf.mu - 0.5) <= 1e-14);
    CHECK(std::abs(cf.r - 0.6) <= 1e-14);
    RVector nu(3);
    nu << 2.8, 2.5, 2.2;
    CHECK(linalg::max_abs(cf.symplectic_eigenvalues - nu) <= 1e-14);
    CHECK(cf.final_betas.size() == 3);
    CHECK(cf.final_betas(0) < cf.final_betas(2));
}

TEST_CASE("boson chain S_delta closed form at omega = 1")
{
    RMatrix expected(6, 6);
    const double h = 0.5;
    // 2/5 [[-1/2 diag(-1, 0, 1), B], [-B, -1/2 diag(-1, 0, 1)]]
    expected << h, 0, 0, 0, -1, 0,
                0, 0, 0, 1, 0, -1,
                0, 0, -h, 0, 1, 0,
                0, 1, 0, h, 0, 0,
                -1, 0, 1, 0, 0, 0,
                0, -1, 0, 0, 0, -h;
    expected *= 0.4;
    CHECK(linalg::max_abs(models::boson_chain_closed_form({}).s_delta - expected) <= 1e-15);
}

TEST_CASE("boson chain parameters")
{
    const GeneratorParams p = models::boson_chain_params({});
    CHECK(p.modes() == 3);
    CHECK(p.kraus() == 4);
    CHECK(std::abs(p.omega()(0, 1) - 1.0) == 0.0);
    CHECK(p.omega()(0, 2) == 0.0);
    CHECK(linalg::max_abs(p.kappa()) == 0.0);
    CHECK_THROWS_AS(models::boson_chain_params({0.0, 1.0, 2.0}), ModelError);
    CHECK_THROWS_AS(models::boson_chain_params({1.0, 1.0, 1.0}), ModelError);
    CHECK_THROWS_AS(models::boson_chain_params({1.0, -1.0, 1.0}), ModelError);
}

TEST_CASE("two-mode example and OU parameters")
{
    const GeneratorParams p = models::two_mode_example_params(1.0, 2.0, 1.0, 0.0, 2.0);
    CHECK(p.modes() == 2);
    CHECK(p.kraus() == 1);
    CHECK(std::abs(p.kappa()(0, 1) - cplx(0.0, 1.2)) <= 1e-15);
    CHECK_THROWS_AS(models::two_mode_example_params(2.0, 1.0, 1.0, 0.0, 2.0), ModelError);
    CHECK_THROWS_AS(models::two_mode_example_params(1.0, 2.0, 1.0, 0.0, 1.0), ModelError);

    const GeneratorParams ou = models::ou_params(1.0, cplx(0.0, 2.0));
    CHECK(ou.modes() == 1);
    CHECK(ou.kraus() == 2);
    CHECK(ou.zeta()(0) == cplx(0.0, 2.0));
}

}
