#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jhit/analysis.hpp"

using namespace jhit;

namespace {

FieldGrid sample(int n, double (*fn)(double, double)) {
    const Grid g(n);
    std::vector<double> v;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) v.push_back(fn(g.x(i), g.z(j)));
    return FieldGrid(n, v);
}

double smooth(double x, double z) { return x * x + std::sin(z); }
double shifted(double x, double z) { return smooth(x, z) + (x == 1.0 && z == 1.0 ? 0.5 : 0.0); }

}  // namespace

TEST_CASE("norms over the coarse vertices") {
    const auto a = sample(8, smooth);
    const auto b = sample(16, smooth);
    const auto n0 = analysis::norms(a, b);
    CHECK(n0.l1 == 0.0);
    CHECK(n0.linf == 0.0);
    const auto n1 = analysis::norms(sample(8, shifted), b);
    CHECK(n1.linf == doctest::Approx(0.5));
    CHECK(n1.l1 == doctest::Approx(0.5 / 81));
    CHECK_THROWS_AS((void)analysis::norms(sample(8, smooth), sample(12, smooth)), std::invalid_argument);
}

TEST_CASE("rates and convergence table") {
    const std::vector<double> e{0.4, 0.2, 0.1, 0.025};
    const auto r = analysis::rates(e);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[2] == doctest::Approx(2.0));
    const std::vector<int> ns{10, 20, 40, 80};
    const auto t = analysis::convergence_table(ns, e);
    CHECK(t[1].rate == doctest::Approx(1.0));
    CHECK(std::isnan(t[3].rate));
    const std::vector<int> bad{10, 20, 30, 40};
    CHECK_THROWS_AS((void)analysis::convergence_table(bad, e), std::invalid_argument);
    const std::vector<double> zero{0.1, 0.0};
    CHECK_THROWS_AS((void)analysis::rates(zero), std::invalid_argument);
}

TEST_CASE("probe interpolates bilinearly") {
    const auto v = sample(10, [](double x, double z) { return 1 + 2 * x + 3 * z + x * z; });
    CHECK(analysis::probe(v, 0.3, 0.7) == doctest::Approx(1 + 0.6 + 2.1 + 0.21));
    CHECK(analysis::probe(v, 0.35, 0.75) == doctest::Approx(1 + 0.7 + 2.25 + 0.35 * 0.75));
    CHECK(analysis::probe(v, 1.0, 1.0) == v(10, 10));
    CHECK_THROWS_AS((void)analysis::probe(v, 1.1, 0.5), std::invalid_argument);
}

TEST_CASE("monotonicity report") {
    const auto up = sample(10, [](double x, double z) { return x + z; });
    const auto r = analysis::monotonicity_report(up);
    CHECK(r.min_difx == doctest::Approx(0.1));
    CHECK(r.negative_difx == 0);
    const auto down = sample(10, [](double x, double z) { return x - z; });
    const auto d = analysis::monotonicity_report(down);
    CHECK(d.min_dify == doctest::Approx(-0.1));
    CHECK(d.negative_dify == 110);
}
