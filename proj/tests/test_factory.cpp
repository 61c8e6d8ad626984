#include <catch2/catch_amalgamated.hpp>

#include <hardy/factory.hpp>

using namespace hardy;

TEST_CASE("blaschke pointwise: basic conventions") {
    BlaschkeSpec half{{BlaschkeZero(cd(0.5))}};
    CHECK(std::abs(blaschke_at(half, cd(0)) - cd(0.5)) < 1e-15);

    BlaschkeSpec zero{{BlaschkeZero(cd(0.0))}};
    cd z(0.3, -0.2);
    CHECK(std::abs(blaschke_at(zero, z) - z) < 1e-15);
}

TEST_CASE("blaschke pointwise: near-boundary family matches the precomputed oracle") {
    // zeros 1 - 4^{-n^2}, n = 1..4; reference values from a 50-digit run
    BlaschkeSpec spec;
    for (int n = 1; n <= 4; ++n)
        spec.zeros.push_back(BlaschkeZero::from_gap(std::pow(4.0, -double(n * n))));

    struct Probe { double gap; double want; };
    const Probe probes[] = {
        {std::pow(4.0, -6.0), 0.85394095649704259551},    // mu_2
        {std::pow(4.0, -20.0), 0.99221742524078400817},   // mu_4
    };
    for (const auto& p : probes) {
        cd got = blaschke_at(spec, cd(1.0 - p.gap), cd(p.gap));
        CHECK(std::abs(got - cd(p.want)) <= 1e-8 * std::abs(p.want));
    }
    cd inner = blaschke_at(spec, cd(0.3));
    CHECK(std::abs(inner - cd(0.57643584771454311385)) < 1e-12);
}

TEST_CASE("blaschke_poly matches pointwise evaluation and is inner") {
    BlaschkeSpec spec{{BlaschkeZero(cd(0.4, 0.3)), BlaschkeZero(cd(-0.2, 0.1))}};
    auto B = blaschke_poly(spec, 128);
    for (double r : {0.0, 0.35, -0.5}) {
        cd z(r, 0.1 * r);
        CHECK(std::abs(evaluate(B, z) - blaschke_at(spec, z)) < 1e-12);
    }
    CHECK(classify(B).verdict == FunctionClass::Inner);
}

TEST_CASE("singular_inner: atom at 1") {
    SingularInnerSpec spec{{{CirclePoint(0.0), 1.0}}};
    CHECK(std::abs(singular_inner_at(spec, cd(0)) - cd(std::exp(-1.0))) < 1e-15);

    for (double r : {0.5, 0.9, 0.99}) {
        cd v = singular_inner_at(spec, cd(-r, 0.0));
        CHECK(std::abs(std::abs(v) - std::exp(-(1 - r) / (1 + r))) < 1e-12);
    }
}

TEST_CASE("singular_inner: exponent additivity over atoms") {
    SingularInnerSpec one{{{CirclePoint(0.0), 0.7}}};
    SingularInnerSpec two{{{CirclePoint(kPi / 2), 1.3}}};
    SingularInnerSpec both{{{CirclePoint(0.0), 0.7}, {CirclePoint(kPi / 2), 1.3}}};
    cd z(0.2, -0.4);
    CHECK(std::abs(singular_inner_at(both, z) -
                   singular_inner_at(one, z) * singular_inner_at(two, z)) < 1e-14);
}

TEST_CASE("singular_inner rejects the atom location and bad weights") {
    SingularInnerSpec spec{{{CirclePoint(0.0), 1.0}}};
    CHECK_THROWS(singular_inner_at(spec, cd(1.0, 0.0)));
    SingularInnerSpec bad{{{CirclePoint(0.0), -1.0}}};
    CHECK_THROWS(singular_inner_at(bad, cd(0)));
}

TEST_CASE("outer_from_modulus: constant modulus") {
    const std::size_t G = 512;
    BoundaryGrid g(std::vector<cd>(G, cd(std::log(2.5))));
    auto f = outer_from_modulus(g, 32);
    CHECK(std::abs(f.coeff(0) - cd(2.5)) < 1e-12);
    for (int k = 1; k <= 32; ++k) CHECK(std::abs(f.coeff(k)) < 1e-12);
}

TEST_CASE("outer_from_modulus recovers 1-z and (1-z)^2 from boundary modulus") {
    const std::size_t G = 1024;
    for (int power : {1, 2}) {
        std::vector<cd> logs(G);
        for (std::size_t j = 0; j < G; ++j) {
            double t = 2 * kPi * double(j) / double(G);
            double m = std::abs(1.0 - cd(std::cos(t), std::sin(t)));
            logs[j] = (j == 0) ? cd(-std::numeric_limits<double>::infinity())
                               : cd(double(power) * std::log(m));
        }
        auto f = outer_from_modulus(BoundaryGrid(std::move(logs)), 64);
        auto want = poly_from_roots(std::vector<cd>(power, cd(1)));
        want = scale(want, std::pow(cd(-1), power));  // value 1 at 0
        for (int k = 0; k <= 64; ++k)
            CHECK(std::abs(f.coeff(k) - want.coeff(k)) < 1e-6);
    }
}

TEST_CASE("outer recovery for a polynomial with roots on and outside the circle") {
    // p = (1-z)(2-z) = 2 - 3z + z^2, p(0) > 0
    const std::size_t G = 1024;
    std::vector<cd> logs(G);
    for (std::size_t j = 0; j < G; ++j) {
        double t = 2 * kPi * double(j) / double(G);
        cd w(std::cos(t), std::sin(t));
        double m = std::abs((cd(1) - w) * (cd(2) - w));
        logs[j] = (j == 0) ? cd(-std::numeric_limits<double>::infinity()) : cd(std::log(m));
    }
    auto f = outer_from_modulus(BoundaryGrid(std::move(logs)), 64);
    CHECK(std::abs(f.coeff(0) - cd(2)) < 1e-6);
    CHECK(std::abs(f.coeff(1) - cd(-3)) < 1e-6);
    CHECK(std::abs(f.coeff(2) - cd(1)) < 1e-6);
    for (int k = 3; k <= 64; ++k) CHECK(std::abs(f.coeff(k)) < 1e-6);
}

TEST_CASE("outer_from_modulus signals non-integrable input") {
    const std::size_t G = 512;
    std::vector<cd> logs(G, cd(0.0));
    // a whole arc at -inf: no integrable modulus does this
    for (std::size_t j = 0; j < 8; ++j)
        logs[j] = cd(-std::numeric_limits<double>::infinity());
    CHECK_THROWS(outer_from_modulus(BoundaryGrid(std::move(logs)), 32));
}

TEST_CASE("pythagorean_mate: constant and the (1-z)/2 pair") {
    AnalyticFunction c{{cd(0.6)}, "c"};
    auto bc = pythagorean_mate(c);
    CHECK(std::abs(bc.coeff(0) - cd(0.8)) < 1e-10);

    AnalyticFunction a{{cd(0.5), cd(-0.5)}, "(1-z)/2"};
    auto b = pythagorean_mate(a);
    CHECK(std::abs(b.coeff(0) - cd(0.5)) < 1e-6);
    CHECK(std::abs(b.coeff(1) - cd(0.5)) < 1e-6);
    for (int k = 2; k <= 8; ++k) CHECK(std::abs(b.coeff(k)) < 1e-6);

    AnalyticFunction a2{{cd(0.5), cd(0), cd(-0.5)}, "(1-z^2)/2"};
    auto b2 = pythagorean_mate(a2);
    CHECK(std::abs(b2.coeff(0) - cd(0.5)) < 1e-6);
    CHECK(std::abs(b2.coeff(2) - cd(0.5)) < 1e-6);
    CHECK(std::abs(b2.coeff(1)) < 1e-6);
}

TEST_CASE("mate outputs satisfy the Pythagorean identity on the grid") {
    AnalyticFunction a{{cd(0.5), cd(-0.5)}, "(1-z)/2"};
    auto b = pythagorean_mate(a);
    std::size_t G = min_grid_size(b.degree());
    auto ta = boundary_trace(truncate(a, int(G / 4) - 1), G);
    auto tb = boundary_trace(b, G);
    double worst = 0;
    for (std::size_t j = 0; j < G; ++j)
        worst = std::max(worst,
                         std::abs(std::norm(ta.samples[j]) + std::norm(tb.samples[j]) - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("pythagorean_mate rejects |a| > 1") {
    AnalyticFunction a{{cd(0.9), cd(0.9)}, "too big"};
    CHECK_THROWS(pythagorean_mate(a));
}

TEST_CASE("classify: inner, outer, neither") {
    AnalyticFunction z2{{cd(0), cd(0), cd(1)}, "z^2"};
    CHECK(classify(z2).verdict == FunctionClass::Inner);

    AnalyticFunction opz{{cd(1), cd(1)}, "1+z"};
    auto c = classify(opz);
    CHECK(c.verdict == FunctionClass::Outer);
    CHECK(c.jensen_residual < 1e-6);

    AnalyticFunction mix{{cd(0), cd(1), cd(1)}, "z(1+z)"};
    CHECK(classify(mix).verdict == FunctionClass::Neither);

    CHECK_THROWS(classify(AnalyticFunction{{cd(0)}, "0"}));
}

TEST_CASE("inner constructions pass the boundary-modulus check") {
    BlaschkeSpec spec{{BlaschkeZero(cd(0.3, 0.4)), BlaschkeZero(cd(0.0)),
                       BlaschkeZero(cd(-0.6))}};
    auto B = blaschke_poly(spec, 256);
    std::size_t G = 2048;
    auto tr = boundary_trace(B, G);
    double worst = 0;
    for (std::size_t j = 0; j < G; ++j)
        worst = std::max(worst, std::abs(std::abs(tr.samples[j]) - 1.0));
    CHECK(worst < 1e-8);
}
