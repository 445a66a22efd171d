#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "logsle/dual.hpp"

using namespace logsle;

namespace {

Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    return Rational(num(rng), den(rng));
}

DualRational random_dual(std::mt19937_64& rng)
{
    return {random_rational(rng), random_rational(rng)};
}

} // namespace

TEST_CASE("nilpotent unit squares to zero")
{
    const DualRational theta = DualRational::nil();
    CHECK(theta * theta == DualRational(Rational(0)));
    CHECK((theta * theta).is_zero());
}

TEST_CASE("multiplicative identity")
{
    const DualRational one(Rational(1));
    const DualRational x(Rational(7, 3), Rational(-2, 5));
    CHECK(one * x == x);
    CHECK(x * one == x);
}

TEST_CASE("product drops the second-order term")
{
    const DualRational x(Rational(2), Rational(3));
    const DualRational y(Rational(4), Rational(5));
    CHECK(x * y == DualRational(Rational(8), Rational(22)));
}

TEST_CASE("inverse")
{
    const DualRational x(Rational(1), Rational(1));
    CHECK(inverse(x) == DualRational(Rational(1), Rational(-1)));
    CHECK(x * inverse(x) == DualRational(Rational(1)));

    CHECK(inverse(DualRational(Rational(2))) == DualRational(Rational(1, 2)));

    CHECK_THROWS_AS(inverse(DualRational::nil()), std::domain_error);
}

TEST_CASE("inverse is a right inverse on random units")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        DualRational x = random_dual(rng);
        if (x.body == 0) continue;
        CHECK(x * inverse(x) == DualRational(Rational(1)));
    }
}

TEST_CASE("ring axioms hold exactly on random triples")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const DualRational a = random_dual(rng), b = random_dual(rng), c = random_dual(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("dual power with nilpotent exponent shift")
{
    // base (a, 0), exponent (d, 1): a^d with slope a^d log a
    const DualReal base(3.0);
    const DualReal expo(2.0, 1.0);
    const DualReal r = pow(base, expo);
    CHECK(r.body == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(r.slope == doctest::Approx(9.0 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("zeroth power is one")
{
    const DualReal x(1.7, -0.4);
    const DualReal r = pow(x, DualReal(0.0));
    CHECK(r.body == doctest::Approx(1.0));
    CHECK(r.slope == doctest::Approx(0.0));
}

TEST_CASE("dual power chain rule through the base slope")
{
    const DualReal x(4.0, 2.0);
    const DualReal r = pow(x, DualReal(0.5));
    CHECK(r.body == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.slope == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("power laws in float mode")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> positive(0.2, 3.0);
    std::uniform_real_distribution<double> expo(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const DualReal x(positive(rng), positive(rng) - 1.5);
        CHECK(pow(x, DualReal(1.0)).body == doctest::Approx(x.body).epsilon(1e-12));
        CHECK(pow(x, DualReal(1.0)).slope == doctest::Approx(x.slope).epsilon(1e-12));
        const double a = expo(rng), b = expo(rng);
        const DualReal lhs = pow(pow(x, DualReal(a)), DualReal(b));
        const DualReal rhs = pow(x, DualReal(a * b));
        CHECK(lhs.body == doctest::Approx(rhs.body).epsilon(1e-12));
        CHECK(lhs.slope == doctest::Approx(rhs.slope).epsilon(1e-12));
    }
}

TEST_CASE("slope equals the central finite difference of the body map")
{
    const auto f = [](DualReal x) {
        const DualReal one(1.0);
        return pow(x, DualReal(1.5)) * inverse(one + x * x) + logsle::log(x + one);
    };
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> domain(0.3, 2.5);
    const double step = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const double a = domain(rng);
        const double slope = f(DualReal(a, 1.0)).slope;
        const double fd =
            (f(DualReal(a + step)).body - f(DualReal(a - step)).body) / (2.0 * step);
        CHECK(slope == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("branch guards")
{
    CHECK_THROWS_AS(logsle::log(DualReal(-1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(logsle::log(DualReal(0.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(pow(DualReal(-2.0), DualReal(0.5)), std::domain_error);
    CHECK_THROWS_AS(logsle::sqrt(DualReal(-4.0)), std::domain_error);
    CHECK_THROWS_AS(logsle::log(DualComplex(std::complex<double>(0.0, 0.0))),
                    std::domain_error);
}

TEST_CASE("complex principal branch")
{
    const std::complex<double> z(-1.0, 1e-12);
    const DualComplex r = logsle::log(DualComplex(z, std::complex<double>(1.0, 0.0)));
    CHECK(r.body.imag() == doctest::Approx(3.141592653589793).epsilon(1e-9));
    CHECK(std::abs(r.slope - 1.0 / z) < 1e-9);
}

TEST_CASE("integer powers are exact in rational mode")
{
    const DualRational x(Rational(3, 2), Rational(1, 3));
    const DualRational cube = pow_int(x, 3);
    CHECK(cube == x * x * x);
    CHECK(pow_int(x, 0) == DualRational(Rational(1)));
    CHECK(pow_int(x, -2) * x * x == DualRational(Rational(1)));
}

TEST_CASE("exact square roots of dual rationals")
{
    const DualRational k(Rational(4), Rational(-16, 3));
    const auto root = sqrt_exact(k);
    REQUIRE(root.has_value());
    CHECK(*root == DualRational(Rational(2), Rational(-4, 3)));
    CHECK(*root * *root == k);

    CHECK_FALSE(sqrt_exact(DualRational(Rational(3))).has_value());
    CHECK_FALSE(sqrt_exact(DualRational::nil()).has_value());
    CHECK(sqrt_exact(DualRational(Rational(0)))->is_zero());

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        DualRational x = random_dual(rng);
        if (x.body == 0) x.body = Rational(1, 2);
        const DualRational square = x * x;
        const auto back = sqrt_exact(square);
        REQUIRE(back.has_value());
        CHECK(*back * *back == square);
    }
}

TEST_CASE("float sqrt matches the half power")
{
    const DualReal x(2.25, 0.7);
    const DualReal a = logsle::sqrt(x);
    const DualReal b = pow(x, DualReal(0.5));
    CHECK(a.body == doctest::Approx(b.body).epsilon(1e-13));
    CHECK(a.slope == doctest::Approx(b.slope).epsilon(1e-13));
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-5") == Rational(-5));
    CHECK(parse_rational("-10/4") == Rational(-5, 2));
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
