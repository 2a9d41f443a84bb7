#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "icc/core.h"
#include "icc/empirics.h"

#include <cmath>

using namespace icc;

static symbol_seq bits(std::vector<int> v) { return symbol_seq(alphabet::finite(2), std::move(v)); }

TEST_CASE("empirical distributions by hand count") {
    auto d = empirical_distribution(bits({0, 1, 0, 1}));
    CHECK(d.freq(0) == doctest::Approx(0.5));
    CHECK(d.freq(1) == doctest::Approx(0.5));

    auto d2 = empirical_distribution(bits({0, 0, 0, 0}));
    CHECK(d2.freq(0) == doctest::Approx(1.0));

    auto d3 = empirical_distribution(bits({0, 1, 1, 0}), bits({0, 0, 1, 1}));
    CHECK(d3.cond_freq(1, 0) == doctest::Approx(0.5));
    CHECK(d3.cond_freq(1, 1) == doctest::Approx(0.5));

    CHECK_THROWS_AS(empirical_distribution(bits({0, 1}), bits({0})), std::invalid_argument);
}

TEST_CASE("sequence probability under its own empirical law") {
    CHECK(empirical_log_probability(bits({0, 0, 0, 0})) == doctest::Approx(0.0));
    CHECK(empirical_log_probability(bits({0, 1})) == doctest::Approx(-2.0));

    // p-hat(x) >= Q^n(x) for every iid Q
    auto x = bits({0, 1, 1, 0, 1, 1, 0, 1});
    double lp = empirical_log_probability(x);
    for (int g = 1; g < 40; ++g) {
        double q0 = g / 40.0;
        auto q = prior::iid_prior(alphabet::finite(2), {q0, 1 - q0});
        CHECK(lp >= prior_log_mass(q, x) - 1e-12);
    }
}

TEST_CASE("empirical entropies") {
    CHECK(empirical_entropy(bits({0, 1, 0, 1})) == doctest::Approx(1.0));
    double hb = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
    CHECK(empirical_entropy(bits({0, 0, 0, 1})) == doctest::Approx(hb).epsilon(1e-12));
    CHECK(hb == doctest::Approx(0.8113).epsilon(1e-4));
    auto x = bits({0, 1, 1, 0, 1});
    CHECK(empirical_entropy(x, x) == doctest::Approx(0.0));
}

TEST_CASE("quazi empirical entropy") {
    auto x = bits({0, 0, 0, 1});
    auto d = empirical_distribution(x);
    CHECK(quazi_empirical_entropy(x, {d.freq(0), d.freq(1)}) ==
          doctest::Approx(empirical_entropy(x)).epsilon(1e-12));
    CHECK(quazi_empirical_entropy(x, {0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(quazi_empirical_entropy(x, {1.0, 0.0}) == pos_inf);

    rng_stream r(4);
    for (int s = 0; s < 50; ++s) {
        double p0 = 0.02 + 0.96 * r.next_u01();
        CHECK(quazi_empirical_entropy(x, {p0, 1 - p0}) >= empirical_entropy(x) - 1e-12);
    }
}

TEST_CASE("empirical mutual information") {
    auto x = bits({0, 1, 1, 0, 1, 0});
    CHECK(empirical_mutual_information(x, x) ==
          doctest::Approx(empirical_entropy(x)).epsilon(1e-12));
    CHECK(empirical_mutual_information(bits({0, 0, 1, 1}), bits({0, 1, 0, 1})) ==
          doctest::Approx(0.0));

    // brute-force MI of the empirical joint law
    rng_stream r(17);
    auto q = prior::uniform(alphabet::finite(2));
    auto xx = sample_prior(q, 16, r.derive("x"));
    auto yy = sample_prior(q, 16, r.derive("y"));
    auto j = empirical_distribution(xx, yy);
    double mi = 0;
    for (int zy = 0; zy < 2; ++zy)
        for (int zx = 0; zx < 2; ++zx) {
            double pj = j.freq(zx, zy);
            if (pj <= 0) continue;
            double px = j.freq(zx, 0) + j.freq(zx, 1);
            double py = (double)j.ctx_count(zy) / j.n;
            mi += pj * std::log2(pj / (px * py));
        }
    CHECK(empirical_mutual_information(xx, yy) == doctest::Approx(mi).epsilon(1e-9));

    // both formulas agree
    double alt = (empirical_log_probability(xx, yy) - empirical_log_probability(xx)) / 16.0;
    CHECK(empirical_mutual_information(xx, yy) == doctest::Approx(alt).epsilon(1e-9));

    // symmetric and nonnegative
    CHECK(empirical_mutual_information(yy, xx) ==
          doctest::Approx(empirical_mutual_information(xx, yy)).epsilon(1e-9));
    CHECK(empirical_mutual_information(xx, yy) >= -1e-12);
}

TEST_CASE("kl divergence") {
    CHECK(kl_divergence({0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(0.0));
    CHECK(kl_divergence({1.0, 0.0}, {0.5, 0.5}) == doctest::Approx(1.0));
    double want = 0.75 * std::log2(1.5) + 0.25 * std::log2(0.5);
    CHECK(kl_divergence({0.75, 0.25}, {0.5, 0.5}) == doctest::Approx(want).epsilon(1e-12));
    CHECK(want == doctest::Approx(0.1887).epsilon(1e-3));
    CHECK(kl_divergence({0.5, 0.5}, {1.0, 0.0}) == pos_inf);
}

TEST_CASE("ml memoryless probability is the empirical one") {
    rng_stream r(23);
    auto q = prior::uniform(alphabet::finite(2));
    for (int s = 0; s < 1000; ++s) {
        auto x = sample_prior(q, 12, r.derive("x/" + std::to_string(s)));
        auto z = sample_prior(q, 12, r.derive("z/" + std::to_string(s)));
        CHECK(ml_log_probability_conditional_memoryless(x, z) ==
              doctest::Approx(empirical_log_probability(x, z)).epsilon(1e-12));
    }
    // dominates every memoryless conditional model
    auto x = sample_prior(q, 20, r.derive("xd"));
    auto z = sample_prior(q, 20, r.derive("zd"));
    double ml = ml_log_probability_conditional_memoryless(x, z);
    for (int s = 0; s < 100; ++s) {
        double t0 = 0.01 + 0.98 * r.next_u01(), t1 = 0.01 + 0.98 * r.next_u01();
        double lp = 0;
        for (int i = 1; i <= 20; ++i) {
            double p1 = z.sym(i) == 0 ? t0 : t1;
            lp += std::log2(x.sym(i) == 1 ? p1 : 1 - p1);
        }
        CHECK(ml >= lp - 1e-12);
    }
    // constant context reduces to the unconditional law
    symbol_seq zc(alphabet::finite(2), std::vector<int>(20, 0));
    CHECK(ml_log_probability_conditional_memoryless(x, zc) ==
          doctest::Approx(empirical_log_probability(x)).epsilon(1e-12));
}

TEST_CASE("type enumeration") {
    auto t = enumerate_types(2, 2, 2);
    CHECK(t.size() == 10);
    for (auto& c : t) {
        long s = 0;
        for (long v : c.counts) s += v;
        CHECK(s == 2);
    }
    CHECK(enumerate_types(1, 1, 5).size() == 1);
    CHECK((double)enumerate_types(2, 2, 4).size() <= std::pow(5.0, 4));
    CHECK_THROWS_AS(enumerate_types(4, 4, 100), resource_limit_error);

    // classes are disjoint and cover: each pair matches exactly one class
    rng_stream r(3);
    auto q = prior::uniform(alphabet::finite(2));
    auto x = sample_prior(q, 2, r.derive("x"));
    auto y = sample_prior(q, 2, r.derive("y"));
    int hits = 0;
    for (auto& c : t) hits += c.contains(x, y);
    CHECK(hits == 1);
}

TEST_CASE("chain identity and information-divergence identity") {
    rng_stream r(29);
    auto q = prior::iid_prior(alphabet::finite(2), {0.6, 0.4});
    for (int s = 0; s < 20; ++s) {
        auto x = sample_prior(q, 24, r.derive("x/" + std::to_string(s)));
        auto y = sample_prior(q, 24, r.derive("y/" + std::to_string(s)));
        auto xy = joint_seq(x, y);
        CHECK(empirical_entropy(x) + empirical_entropy(y, x) ==
              doctest::Approx(empirical_entropy(xy)).epsilon(1e-9));

        // (1/n) log( p-hat(x|y) / Q^n(x) ) = I-hat + D(P-hat_x || Q)
        double lhs = (empirical_log_probability(x, y) - prior_log_mass(q, x)) / 24.0;
        auto d = empirical_distribution(x);
        double rhs = empirical_mutual_information(x, y) +
                     kl_divergence({d.freq(0), d.freq(1)}, q.mass);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("empirical probability is a super-distribution") {
    for (int n = 1; n <= 10; ++n) {
        double total = 0;
        for (int w = 0; w < (1 << n); ++w) {
            std::vector<int> v(n);
            for (int i = 0; i < n; ++i) v[i] = (w >> i) & 1;
            total += std::exp2(empirical_log_probability(bits(v)));
        }
        CHECK(total >= 1.0 - 1e-9);
    }
}
