#include "egowords/error.hpp"
#include "egowords/synth.hpp"
#include "egowords/tailfit.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace egowords;

namespace {

TailFitConfig serial() {
    TailFitConfig c;
    c.execution = Execution::Serial;
    return c;
}

// Direct KS distance from the definition, checking both sides of every step.
double ks_oracle(std::vector<double> x, double xmin, double alpha) {
    std::sort(x.begin(), x.end());
    x.erase(x.begin(), std::lower_bound(x.begin(), x.end(), xmin));
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double cdf = 1.0 - std::pow(x[i] / xmin, 1.0 - alpha);
        std::size_t below = 0, upto = 0;
        for (double v : x) {
            below += v < x[i];
            upto += v <= x[i];
        }
        d = std::max({d, std::fabs(static_cast<double>(upto) / n - cdf), std::fabs(static_cast<double>(below) / n - cdf)});
    }
    return d;
}

} // namespace

TEST_CASE("closed-form MLE") {
    const double e = std::numbers::e;
    CHECK(powerlaw_alpha_mle(std::vector<double>{1, e, e * e}, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    const auto f = fit_powerlaw_fixed_xmin(std::vector<double>{0.5, 1, e, e * e}, 1.0);
    CHECK(f.n_tail == 3);
    CHECK(f.alpha == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("KS distance against the definition") {
    const auto x = generate_power_law_samples(2.2, 1.0, 300, 4);
    for (double xmin : {1.0, 1.5, 3.0}) {
        const double a = powerlaw_alpha_mle(x, xmin);
        CHECK(powerlaw_ks_distance(x, xmin, a) == doctest::Approx(ks_oracle(x, xmin, a)).epsilon(1e-12));
    }
    std::vector<double> tied{1, 1, 2, 2, 2, 3, 5, 8, 8, 13};
    CHECK(powerlaw_ks_distance(tied, 1.0, 2.0) == doctest::Approx(ks_oracle(tied, 1.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("scan picks the minimal KS cutoff") {
    auto x = generate_power_law_samples(2.5, 1.0, 400, 12);
    const auto fit = fit_powerlaw(x, serial());
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    double best = INFINITY;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double a = powerlaw_alpha_mle(x, s[i]);
        best = std::min(best, powerlaw_ks_distance(x, s[i], a));
    }
    CHECK(fit.ks_distance == doctest::Approx(best).epsilon(1e-12));
    CHECK(fit.ks_distance == doctest::Approx(powerlaw_ks_distance(x, fit.xmin, fit.alpha)).epsilon(1e-12));
}

TEST_CASE("recovers the exponent") {
    const auto x = generate_power_law_samples(2.5, 1.0, 10000, 99);
    const auto fit = fit_powerlaw(x, serial());
    CHECK(fit.alpha >= 2.4);
    CHECK(fit.alpha <= 2.6);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(fit_powerlaw(std::vector<double>(20, 3.0), serial()), DegenerateInputError);
    CHECK_THROWS_AS(fit_powerlaw(std::vector<double>{1, 2, 3}, serial()), InsufficientDataError);
    CHECK_THROWS_AS(fit_powerlaw(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, -1}, serial()), ArgumentError);
}

TEST_CASE("bootstrap resolution and determinism") {
    const auto x = generate_power_law_samples(2.0, 1.0, 200, 3);
    const auto fit = fit_powerlaw(x, serial());
    const double p = bootstrap_pvalue(x, fit, 100, 42, serial());
    CHECK(std::fabs(p * 100 - std::round(p * 100)) < 1e-9);
    CHECK(p == bootstrap_pvalue(x, fit, 100, 42, serial()));
    TailFitConfig par;
    CHECK(p == bootstrap_pvalue(x, fit, 100, 42, par));
    CHECK_THROWS_AS(bootstrap_pvalue(x, fit, 0, 42, serial()), ArgumentError);
}

TEST_CASE("parallel scan equals serial scan") {
    const auto x = generate_power_law_samples(1.9, 2.0, 3000, 8);
    TailFitConfig par;
    const auto a = fit_powerlaw(x, serial());
    const auto b = fit_powerlaw(x, par);
    CHECK(a.alpha == b.alpha);
    CHECK(a.xmin == b.xmin);
    CHECK(a.ks_distance == b.ks_distance);
}

TEST_CASE("rejection table") {
    auto r = rejection_table(std::vector<double>{0.005, 0.5});
    CHECK(r.below_010 == 0.5);
    CHECK(r.below_005 == 0.5);
    CHECK(r.below_001 == 0.5);
    r = rejection_table(std::vector<double>{1, 1, 1});
    CHECK(r.below_010 == 0.0);
    CHECK(r.below_001 == 0.0);
    CHECK(r.n == 3);
}
