#include <catch2/catch_amalgamated.hpp>

#include <hardy/range.hpp>

#include <random>
#include <hardy/regularity.hpp>

using namespace hardy;

namespace {
AnalyticFunction zm1(int power) {
    return poly_from_roots(std::vector<cd>(power, cd(1)));
}
}

TEST_CASE("ac_check: the (z-1)^m family at zeta0 = 1") {
    auto r0 = ac_check(zm1(1), CirclePoint(0.0), 0);
    CHECK(r0.finite());
    CHECK(std::abs(r0.value - 1.0) < 1e-6);  // integrand is identically 1

    CHECK(ac_check(zm1(2), CirclePoint(0.0), 1).finite());
    CHECK_FALSE(ac_check(zm1(2), CirclePoint(0.0), 2).finite());

    AnalyticFunction opz{{cd(1), cd(1)}, "1+z"};
    CHECK_FALSE(ac_check(opz, CirclePoint(0.0), 0).finite());
}

TEST_CASE("ac_check monotonicity in N") {
    auto a = zm1(3);
    for (int N = 0; N <= 2; ++N) CHECK(ac_check(a, CirclePoint(0.0), N).finite());
    CHECK_FALSE(ac_check(a, CirclePoint(0.0), 3).finite());
}

TEST_CASE("fm_check: zero series, atoms, and the geometric divergence") {
    FmData one;
    one.zeros.push_back(BlaschkeZero(cd(0.5)));
    auto r = fm_check(one, CirclePoint(0.0), 0);
    CHECK(r.finite());
    CHECK(std::abs(r.value - 2.0) < 1e-12);

    FmData geo;
    for (int n = 1; n <= 20; ++n)
        geo.zeros.push_back(BlaschkeZero::from_gap(std::pow(2.0, -n)));
    CHECK_FALSE(fm_check(geo, CirclePoint(0.0), 0).finite());

    for (int N : {0, 2}) {
        FmData atom;
        atom.atoms.push_back({CirclePoint(kPi), 1.0});
        auto ra = fm_check(atom, CirclePoint(0.0), N);
        CHECK(ra.finite());
        CHECK(std::abs(ra.value - std::pow(4.0, -(N + 1))) < 1e-12);
        CHECK(ra.condition_id == ConditionId::ACCont);
    }
}

TEST_CASE("fm_check verdicts agree with ac_check across the mate pair") {
    // a = (1-z)/2, b = (1+z)/2
    AnalyticFunction a{{cd(0.5), cd(-0.5)}, "a"};
    FmData bdata;
    bdata.log_modulus = [](double t) {
        return std::log(std::abs(cd(1) + cd(std::cos(t), std::sin(t))) / 2.0);
    };
    bdata.log_singular_angles = {kPi};
    for (double angle : {0.0, kPi}) {
        for (int N : {0, 1}) {
            const bool ac = ac_check(a, CirclePoint(angle), N).finite();
            const bool fm = fm_check(bdata, CirclePoint(angle), N).finite();
            INFO("angle " << angle << " N " << N);
            CHECK(ac == fm);
        }
    }
}

TEST_CASE("stolz paths: validation and the radial default") {
    auto path = StolzPath::radial(CirclePoint(0.0), 10);
    CHECK(path.points.size() == 10);
    CHECK_THROWS(StolzPath(CirclePoint(0.0), 2.0, {cd(0.0, 0.99)}));
    CHECK_THROWS(StolzPath(CirclePoint(0.0), 0.5, {}));
}

TEST_CASE("stolz_probe on kernel norms mirrors the AC verdict") {
    auto a = zm1(2);
    auto path = StolzPath::radial(CirclePoint(0.0), 14);

    auto bounded = stolz_probe(
        [&](cd z) { return kernel_norm_sq(a, DiskPoint(z), 0); }, path);
    CHECK(bounded.bounded);
    CHECK(std::abs(bounded.values.back() - 2.0) < 1e-3);  // -> ||1-z||^2

    auto growing = stolz_probe(
        [&](cd z) { return kernel_norm_sq(a, DiskPoint(z), 2); }, path);
    CHECK_FALSE(growing.bounded);
    CHECK(growing.tail_ratio > 1.5);
}

TEST_CASE("stolz_probe_values detects limits") {
    auto path = StolzPath::radial(CirclePoint(0.0), 12);
    auto lim = stolz_probe_values([](cd) { return cd(1.0); }, path);
    CHECK(lim.has_limit);
    CHECK(std::abs(lim.limit - cd(1)) < 1e-12);

    // 1/(1-z) blows up radially
    auto nolim = stolz_probe_values([](cd z) { return cd(1) / (cd(1) - z); }, path);
    CHECK_FALSE(nolim.has_limit);
}

namespace {

// f = T_{conj(a)} v for a = (z-1)^m and v = (1-z)^{-0.4} q(z), q a cubic.
// Closed form: conj(a)(e^{it}) = a(1/z) on the circle, so
// f = ((1-z)/z)^m v(z) - (Laurent correction from the projected heads).
// This gives an element of the range space with a genuinely infinite Taylor
// series, so the derivative-limit probe can actually fail when (ACa) does.
struct SlowRangeFunction {
    int m;
    AnalyticFunction q;
    std::vector<cd> laurent;  // correction coefficients for powers z^{-m}..z^{m-1}
    static constexpr double alpha = 0.4;

    SlowRangeFunction(int m_, AnalyticFunction q_) : m(m_), q(std::move(q_)) {
        // Taylor coefficients of v = (1-z)^{-alpha} q(z)
        std::vector<double> u(std::size_t(m) + 1);
        u[0] = 1;
        for (int k = 1; k <= m; ++k) u[k] = u[k - 1] * (alpha + k - 1) / k;
        std::vector<cd> v(std::size_t(m) + 1, cd(0));
        for (int k = 0; k <= m; ++k)
            for (int j = 0; j <= std::min(k, q.degree()); ++j) v[k] += q.coeff(j) * u[k - j];
        // correction sum_{i=1}^{m} a_i z^{-i} sum_{k<i} v_k z^k, a_i = C(m,i)(-1)^{m-i}
        laurent.assign(std::size_t(2 * m), cd(0));  // index p+m for power p in [-m, m-1]
        for (int i = 1; i <= m; ++i) {
            double ai = 1;
            for (int t = 0; t < i; ++t) ai *= double(m - t) / double(t + 1);
            if ((m - i) % 2) ai = -ai;
            for (int k = 0; k < i; ++k) laurent[std::size_t(k - i + m)] += ai * v[k];
        }
    }

    // N-th derivative of f at z, from the closed form
    cd deriv(cd z, int N) const {
        const double beta = double(m) - alpha;
        auto Apart = [&](int s) {  // d^s (1-z)^beta
            double c = 1;
            for (int t = 0; t < s; ++t) c *= (beta - t);
            return (s % 2 ? -c : c) * std::pow(cd(1) - z, cd(beta - s));
        };
        auto Cpart = [&](int u) {  // d^u z^{-m}
            double c = 1;
            for (int t = 0; t < u; ++t) c *= -double(m + t);
            return c * std::pow(z, cd(-m - u));
        };
        auto fact = [](int n) { double f = 1; for (int i = 2; i <= n; ++i) f *= i; return f; };
        cd g(0);
        for (int s = 0; s <= N; ++s)
            for (int t = 0; t <= N - s && t <= q.degree(); ++t) {
                const int u = N - s - t;
                g += fact(N) / (fact(s) * fact(t) * fact(u)) * Apart(s) *
                     evaluate(derivative(q, t), z) * Cpart(u);
            }
        cd corr(0);
        for (int p = -m; p <= m - 1; ++p) {
            double c = 1;
            for (int t = 0; t < N; ++t) c *= double(p - t);
            corr += laurent[std::size_t(p + m)] * c * std::pow(z, cd(p - N));
        }
        return g - corr;
    }
};

}  // namespace

TEST_CASE("equivalence of AC, kernel-norm boundedness, and derivative limits") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int m = 1; m <= 3; ++m) {
        auto a = zm1(m);
        auto path = StolzPath::radial(CirclePoint(0.0), 30);
        for (int N = 0; N <= 3; ++N) {
            const bool ac = ac_check(a, CirclePoint(0.0), N).finite();
            auto np = stolz_probe(
                [&](cd z) { return kernel_norm_sq(a, DiskPoint(z), N); }, path);
            INFO("m=" << m << " N=" << N);
            CHECK(ac == np.bounded);

            // N-th derivatives of sampled range functions along the path
            bool all_limits = true;
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<cd> c(4);
                for (auto& x : c) x = cd(U(rng), U(rng));
                AnalyticFunction q(c);
                if (std::abs(evaluate(q, cd(1.0, 0.0))) < 0.3) {
                    --trial;
                    continue;
                }
                SlowRangeFunction f(m, q);
                auto vp = stolz_probe_values([&](cd z) { return f.deriv(z, N); }, path);
                if (!vp.has_limit) all_limits = false;
            }
            CHECK(ac == all_limits);
        }
    }
}

TEST_CASE("decay_check on exact powers") {
    auto a3 = zm1(3);
    auto r1 = decay_check(a3, CirclePoint(0.0), 2, 0);
    CHECK(r1.passed);
    CHECK(std::abs(r1.slope - 3.0) < 0.05);

    auto r2 = decay_check(a3, CirclePoint(0.0), 2, 2);
    CHECK(r2.passed);
    CHECK(std::abs(r2.slope - 1.0) < 0.05);

    auto r3 = decay_check(zm1(2), CirclePoint(0.0), 1, 1);
    CHECK(r3.passed);
    CHECK(std::abs(r3.slope - 1.0) < 0.05);

    CHECK_THROWS(decay_check(zm1(2), CirclePoint(0.0), 2, 0));
}

TEST_CASE("continuation_obstruction equals the vanishing order") {
    CHECK(continuation_obstruction(zm1(2), CirclePoint(0.0)) == 2);
    CHECK(continuation_obstruction(zm1(2), CirclePoint(kPi)) == 0);

    auto a = multiply(AnalyticFunction{{cd(-1), cd(1)}, ""},
                      poly_from_roots(std::vector<cd>(3, cd(-1))));
    CHECK(continuation_obstruction(a, CirclePoint(kPi)) == 3);
}

TEST_CASE("verdict stability across Stolz openings on a non-radial path") {
    auto a = zm1(2);
    for (double alpha : {2.0, 5.0}) {
        std::vector<cd> pts;
        for (int j = 1; j <= 12; ++j) {
            const double d = std::pow(2.0, -j);
            pts.push_back(cd(1.0 - d, 0.4 * d));  // tilted approach, inside both cones
        }
        StolzPath path(CirclePoint(0.0), alpha, pts);
        auto np = stolz_probe(
            [&](cd z) { return kernel_norm_sq(a, DiskPoint(z), 1); }, path);
        CHECK(np.bounded);
        auto ng = stolz_probe(
            [&](cd z) { return kernel_norm_sq(a, DiskPoint(z), 2); }, path);
        CHECK_FALSE(ng.bounded);
    }
}
