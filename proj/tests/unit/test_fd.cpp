#include <cmath>
#include <random>

#include "../support.hpp"
#include "d1q2/fd.hpp"
#include "doctest.h"

using namespace d1q2;

TEST_CASE("gamma coefficients") {
    auto g2 = solve_gamma(2);
    REQUIRE(g2.values.size() == 2);
    CHECK(std::abs(g2.values[0]) < 1e-14);
    CHECK(std::abs(g2.values[1] - 2.0) < 1e-14);

    auto g3 = solve_gamma(3);
    REQUIRE(g3.values.size() == 3);
    CHECK(std::abs(g3.values[0] - 1.0) < 1e-14);
    CHECK(std::abs(g3.values[1] - 2.0) < 1e-14);
    CHECK(std::abs(g3.values[2] + 1.0) < 1e-14);

    auto g4 = solve_gamma(4);
    REQUIRE(g4.values.size() == 4);
    Vec want{2.0, 1.0, -2.0, 1.0};
    for (int j = 0; j < 4; ++j) CHECK(std::abs(g4.values[j] - want[j]) < 1e-13);

    for (int s = 2; s <= 9; ++s) {
        Vec g = solve_gamma(s).values, c = extrapolation_weights(s);
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            m0 += g[j];
            m1 += j * g[j];
        }
        CAPTURE(s);
        CHECK(std::abs(m0 - 2.0) < 1e-11);
        CHECK(std::abs(m1 - (s <= 2 ? 2.0 : 0.0)) < 1e-11);
        CHECK(std::abs(c[0] - g[0] - 2.0) < 1e-11);
        CHECK(std::abs(c[0] + g[0] - 2.0 * (s - 1)) < 1e-11);
        double c1 = s > 1 ? c[1] : 0.0;
        CHECK(std::abs(c1 + g[1] - 1.0 + (s - 1.0) * (s - 2.0)) < 1e-11);
        CHECK(std::abs(solve_gamma(s).dropped_residual) < 1e-12);
    }
    CHECK_THROWS(solve_gamma(1));
}

TEST_CASE("bulk and sigma=1 stencils") {
    for (double w : {0.5, 1.0, 1.7, 2.0})
        for (double C : {-0.6, 0.4}) {
            SchemeParams p{w, 1.0, 10, 1.0};
            auto st = build_stencils(p, Flux::linear(C), OutflowCondition::extrapolation(1));
            CHECK(st.a_minus == doctest::Approx(0.5 * (2 - w + w * C)));
            CHECK(st.a_plus == doctest::Approx(0.5 * (2 - w - w * C)));
            CHECK(st.b0 == doctest::Approx(w - 1));
            CHECK(st.a_minus + st.a_plus + st.b0 == doctest::Approx(1.0));
            BoundaryStencil b = st.eventual();
            CHECK(b.alpha[0] == doctest::Approx(w / 2 * (1 + C)));
            CHECK(b.alpha[1] == doctest::Approx(0.5 * (2 - w - w * C)));
            CHECK(st.outflow_generic.weight_sum() == doctest::Approx(1.0));
            CHECK(st.outflow_sources.current == doctest::Approx(1 - w));
        }
    SchemeParams p{2.0, 1.0, 10, 1.0};
    BoundaryStencil b = build_stencils(p, Flux::linear(-0.3), OutflowCondition::extrapolation(1)).eventual();
    CHECK(b.alpha[0] == doctest::Approx(0.7));
    CHECK(b.alpha[1] == doctest::Approx(0.3));
    for (double v : b.beta) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("extrapolation stencils preserve constants") {
    for (int s = 2; s <= 5; ++s)
        for (double w : {0.8, 1.5, 2.0}) {
            SchemeParams p{w, 1.0, 12, 1.0};
            auto st = build_stencils(p, Flux::linear(-0.5), OutflowCondition::extrapolation(s));
            CHECK(st.outflow_generic.weight_sum() == doctest::Approx(1.0));
            CHECK(st.outflow_first.weight_sum() == doctest::Approx(1.0));
            CHECK(st.outflow_sources.current == doctest::Approx(1 - w));
        }
}

TEST_CASE("kinetic stencils") {
    SchemeParams p{2.0, 1.0, 10, 1.0};
    auto st = build_stencils(p, Flux::linear(-0.5), OutflowCondition::kinetic());
    CHECK(st.has_second_step);
    CHECK(st.eventual().alpha[0] == doctest::Approx(-0.125));
    CHECK(st.outflow_sources.previous == doctest::Approx(-1.0));
    SchemeParams q{1.6, 1.0, 10, 1.0};
    auto sq = build_stencils(q, Flux::linear(-0.5), OutflowCondition::kinetic());
    CHECK(sq.outflow_sources.previous == doctest::Approx(-0.36));
    CHECK_THROWS(build_stencils(p, Flux::burgers(), OutflowCondition::kinetic()));
}

TEST_CASE("fd_step") {
    SchemeParams p{1.5, 1.0, 10, 1.0};
    auto st = build_stencils(p, Flux::linear(-0.5), OutflowCondition::extrapolation(2));
    FdState z{Vec(10, 0.0), Vec(10, 0.0)};
    for (double v : fd_step(z, st).u_now) CHECK(v == 0.0);

    std::mt19937 rng(21);
    std::uniform_real_distribution<double> U(-1, 1);
    FdState s{Vec(10), Vec(10)};
    for (int j = 0; j < 10; ++j) {
        s.u_now[j] = U(rng);
        s.u_prev[j] = U(rng);
    }
    const double C = -0.5;
    auto lf = build_stencils(SchemeParams{1.0, 1.0, 10, 1.0}, Flux::linear(C), OutflowCondition::extrapolation(1));
    CHECK(lf.b0 == 0.0);
    FdState a = fd_step(s, lf);
    for (int j = 1; j < 9; ++j) {
        double want = 0.5 * (s.u_now[j - 1] + s.u_now[j + 1]) - 0.5 * C * (s.u_now[j + 1] - s.u_now[j - 1]);
        CHECK(a.u_now[j] == doctest::Approx(want).epsilon(1e-14));
    }
    CHECK(a.u_now[9] == 0.0);
    CHECK(a.u_prev == s.u_now);

    auto lp = build_stencils(SchemeParams{2.0, 1.0, 10, 1.0}, Flux::linear(C), OutflowCondition::extrapolation(1));
    FdState b = fd_step(s, lp);
    for (int j = 1; j < 9; ++j) {
        double want = s.u_prev[j] - C * (s.u_now[j + 1] - s.u_now[j - 1]);
        CHECK(b.u_now[j] == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("LBM and FD engines agree") {
    std::mt19937 rng(31);
    auto datum = InitialData::pointwise(testing::random_smooth(rng));
    BoundarySpec spec;
    spec.inflow = [](double t) { return std::sin(3 * t); };

    spec.outflow = OutflowCondition::extrapolation(1);
    CHECK(check_equivalence(SchemeParams{1.7, 1.0, 16, 1.0}, Flux::linear(-0.4), datum, spec, 25) < 1e-12);

    spec.outflow = OutflowCondition::kinetic();
    CHECK(check_equivalence(SchemeParams{1.6, 1.0, 16, 1.0}, Flux::linear(-0.5), datum, spec, 25) < 1e-10);

    spec.outflow = OutflowCondition::extrapolation(2);
    auto small = InitialData::pointwise([](double x) { return 0.3 + 0.2 * std::sin(2 * x); });
    CHECK(check_equivalence(SchemeParams{2.0, 1.0, 32, 1.0}, Flux::burgers(), small, spec, 10) < 1e-10);

    for (int s = 1; s <= 4; ++s)
        for (double w : {0.6, 1.3, 2.0})
            for (double C : {-0.7, 0.4}) {
                spec.outflow = OutflowCondition::extrapolation(s);
                CAPTURE(s);
                CAPTURE(w);
                CAPTURE(C);
                CHECK(check_equivalence(SchemeParams{w, 1.0, 14, 1.0}, Flux::linear(C), datum, spec, 30) < 1e-10);
            }

    spec.outflow = OutflowCondition::extrapolation(1);
    spec.source = SourceMode::Correct;
    CHECK(check_equivalence(SchemeParams{1.6, 1.0, 16, 1.0}, Flux::linear(-0.5), datum, spec, 25) < 1e-12);
    spec.outflow = OutflowCondition::kinetic();
    CHECK(check_equivalence(SchemeParams{1.6, 1.0, 16, 1.0}, Flux::linear(-0.5), datum, spec, 25) < 1e-10);
}

TEST_CASE("stencil discovery") {
    std::mt19937 rng(41);
    auto runs_for = [&](const SchemeParams& p, const OutflowCondition& oc) {
        BoundarySpec spec;
        spec.outflow = oc;
        std::vector<Trajectory> runs;
        for (int k = 0; k < 6; ++k)
            runs.push_back(run(p, Flux::linear(-0.5), InitialData::pointwise(testing::random_smooth(rng, 6)), spec, 30));
        return runs;
    };

    SchemeParams p{1.7, 1.0, 14, 1.0};
    auto runs = runs_for(p, OutflowCondition::extrapolation(1));
    BoundaryStencil known = build_stencils(p, Flux::linear(-0.5), OutflowCondition::extrapolation(1)).eventual();
    auto fit = discover_stencil(runs, 2, 1, 2);
    CHECK(fit.rms_residual < 1e-10);
    CHECK(fit.alpha[0] == doctest::Approx(known.alpha[0]).epsilon(1e-9));
    CHECK(fit.alpha[1] == doctest::Approx(known.alpha[1]).epsilon(1e-9));

    SchemeParams q{1.5, 1.0, 14, 1.0};
    auto kin = runs_for(q, OutflowCondition::kinetic());
    BoundaryStencil kb = build_stencils(q, Flux::linear(-0.5), OutflowCondition::kinetic()).eventual();
    auto kfit = discover_stencil(kin, static_cast<int>(kb.alpha.size()), static_cast<int>(kb.beta.size()), 4);
    CHECK(kfit.rms_residual < 1e-10);
    for (std::size_t j = 0; j < kb.alpha.size(); ++j) CHECK(std::abs(kfit.alpha[j] - kb.alpha[j]) < 1e-8);
    for (std::size_t j = 0; j < kb.beta.size(); ++j) CHECK(std::abs(kfit.beta[j] - kb.beta[j]) < 1e-8);

    auto bad = discover_stencil(kin, 1, 0, 4);
    CHECK(bad.rms_residual > 1e-6);
    CHECK_THROWS(discover_stencil({kin[0]}, 2, 1));
}
