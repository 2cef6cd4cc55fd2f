#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "banditlab/problem.hpp"
#include "banditlab/repgen.hpp"
#include "banditlab/serialization.hpp"
#include "fixtures.hpp"

using namespace banditlab;

TEST_CASE("finite problem accessors") {
    const ContextualProblem p = fixtures::classification_case(4);
    CHECK(p.is_finite());
    CHECK(p.n_contexts() == 2);
    CHECK(p.n_arms() == 2);
    CHECK(p.n_reps() == 1);
    CHECK(p.rho()[0] == doctest::Approx(0.5));
    CHECK(p.mean_reward()(0, 0) == doctest::Approx(2.0));
    CHECK(p.mean_reward()(0, 1) == doctest::Approx(1.0));
    CHECK(p.noise_std() == 0.0);
}

TEST_CASE("gap profile identifies optima, gaps and ties") {
    SUBCASE("untied case") {
        const ContextualProblem p = fixtures::classification_case(5);
        const GapProfile g = gap_profile(p);
        CHECK(g.optimal_arm[0] == 0);
        CHECK(g.optimal_arm[1] == 0);
        CHECK(g.gaps(0, 0) == 0.0);
        CHECK(g.gaps(0, 1) == doctest::Approx(1.0));
        CHECK(g.min_gap == doctest::Approx(1.0));
        CHECK(g.max_gap == doctest::Approx(1.0));
        CHECK_FALSE(g.has_ties);
    }
    SUBCASE("tied case flags and keeps the lowest index") {
        Eigen::VectorXd theta(2);
        theta << 1.0, 1.0;
        const ContextualProblem p = fixtures::linear_problem(
            {fixtures::arm_block({{1, 0}, {0, 1}, {0, 0}})}, theta);
        const GapProfile g = gap_profile(p);
        CHECK(g.has_ties);
        CHECK(g.optimal_arm[0] == 0);
        CHECK(g.gaps(0, 1) == 0.0);
        CHECK(g.min_gap == doctest::Approx(1.0));
    }
    SUBCASE("zero-probability contexts do not shape the gap range") {
        Eigen::VectorXd rho(2);
        rho << 1.0, 0.0;
        Eigen::MatrixXd mu(2, 2);
        mu << 1.0, 0.0, 5.0, 0.0;
        FiniteRepresentation rep;
        rep.features = {fixtures::arm_block({{1, 0}, {0, 0}}),
                        fixtures::arm_block({{5, 0}, {0, 0}})};
        rep.param = (Eigen::VectorXd(2) << 1.0, 0.0).finished();
        rep.fit_feature_bound();
        const ContextualProblem p = ContextualProblem::finite(rho, mu, 0.1, {rep});
        const GapProfile g = gap_profile(p);
        CHECK(g.min_gap == doctest::Approx(1.0));
        CHECK(g.max_gap == doctest::Approx(1.0));
    }
}

TEST_CASE("representation validation") {
    FiniteRepresentation rep;
    rep.features = {fixtures::arm_block({{1, 0}, {0, 1}})};
    rep.param = (Eigen::VectorXd(2) << 1.0, 0.0).finished();
    rep.feature_bound = 1.0;
    rep.param_bound = 1.0;

    SUBCASE("valid representation passes") { CHECK_NOTHROW(rep.validate()); }
    SUBCASE("feature bound must cover every row") {
        rep.feature_bound = 0.5;
        CHECK_THROWS_AS(rep.validate(), std::invalid_argument);
    }
    SUBCASE("param bound below one is rejected") {
        rep.param_bound = 0.5;
        CHECK_THROWS_AS(rep.validate(), std::invalid_argument);
    }
    SUBCASE("param bound must cover the parameter") {
        rep.param = (Eigen::VectorXd(2) << 3.0, 0.0).finished();
        rep.param_bound = 1.0;
        CHECK_THROWS_AS(rep.validate(), std::invalid_argument);
    }
    SUBCASE("fit helpers recompute covers") {
        rep.param = (Eigen::VectorXd(2) << 3.0, 0.0).finished();
        rep.fit_param_bound();
        CHECK(rep.param_bound == doctest::Approx(3.0));
        rep.fit_feature_bound();
        CHECK(rep.feature_bound == doctest::Approx(1.0));
    }
}

TEST_CASE("attaching a representation that contradicts the rewards fails") {
    Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, 1.0);
    Eigen::MatrixXd mu(1, 2);
    mu << 1.0, 0.0;
    FiniteRepresentation rep;
    rep.features = {fixtures::arm_block({{1, 0}, {0, 1}})};
    rep.param = (Eigen::VectorXd(2) << 1.0, 0.5).finished();
    rep.fit_feature_bound();
    CHECK_THROWS_AS(ContextualProblem::finite(rho, mu, 0.1, {rep}),
                    std::invalid_argument);
}

TEST_CASE("misspecified representations carry their residual") {
    Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, 1.0);
    Eigen::MatrixXd mu(1, 2);
    mu << 1.0, 0.3;
    FiniteRepresentation rep;
    rep.features = {fixtures::arm_block({{1, 0}, {0, 1}})};
    rep.param = (Eigen::VectorXd(2) << 1.0, 0.0).finished();
    rep.fit_feature_bound();
    rep.misspec = Eigen::MatrixXd(1, 2);
    rep.misspec << 0.0, 0.3;
    const ContextualProblem p = ContextualProblem::finite(rho, mu, 0.1, {rep});
    CHECK(p.rep(0).has_misspec());
    CHECK(p.rep(0).misspec_sup() == doctest::Approx(0.3));
    CHECK(p.rep(0).misspec_at(0, 1) == doctest::Approx(0.3));
}

TEST_CASE("noise override") {
    ContextualProblem p = fixtures::classification_case(9);
    p.set_noise_std(0.7);
    CHECK(p.noise_std() == doctest::Approx(0.7));
    CHECK_THROWS_AS(p.set_noise_std(-1.0), std::invalid_argument);
}

TEST_CASE("format_double round-trips exactly") {
    const double values[] = {0.0,   -0.0,  1.0 / 3.0, 1e-300, -2.5e17,
                             0.125, 1e308, 3.141592653589793};
    for (double v : values) CHECK(parse_double(format_double(v)) == v);
    CHECK_THROWS_AS(parse_double("1.2junk"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("problem files round-trip bit for bit") {
    Rng rng(21);
    ContextualProblem p = random_problem(6, 3, 4, rng);
    p.add_rep(build_hls_from_reward(p, 4));

    std::ostringstream first;
    save_problem(p, first);
    std::istringstream in(first.str());
    const ContextualProblem q = load_problem(in);

    CHECK(q.n_contexts() == p.n_contexts());
    CHECK(q.n_arms() == p.n_arms());
    CHECK(q.n_reps() == p.n_reps());
    CHECK(q.noise_std() == p.noise_std());
    CHECK(q.rho() == p.rho());
    CHECK(q.mean_reward() == p.mean_reward());
    for (int i = 0; i < p.n_reps(); ++i) {
        CHECK(q.rep(i).label == p.rep(i).label);
        CHECK(q.rep(i).param == p.rep(i).param);
        CHECK(q.rep(i).feature_bound == p.rep(i).feature_bound);
        CHECK(q.rep(i).param_bound == p.rep(i).param_bound);
        for (int x = 0; x < p.n_contexts(); ++x)
            CHECK(q.rep(i).features[static_cast<size_t>(x)] ==
                  p.rep(i).features[static_cast<size_t>(x)]);
    }

    std::ostringstream second;
    save_problem(q, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("misspecified representations survive the round-trip") {
    Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, 1.0);
    Eigen::MatrixXd mu(1, 2);
    mu << 1.0, 0.3;
    FiniteRepresentation rep;
    rep.features = {fixtures::arm_block({{1, 0}, {0, 1}})};
    rep.param = (Eigen::VectorXd(2) << 1.0, 0.0).finished();
    rep.fit_feature_bound();
    rep.misspec = Eigen::MatrixXd(1, 2);
    rep.misspec << 0.0, 0.3;
    rep.label = "off_model";
    const ContextualProblem p = ContextualProblem::finite(rho, mu, 0.1, {rep});

    std::ostringstream out;
    save_problem(p, out);
    std::istringstream in(out.str());
    const ContextualProblem q = load_problem(in);
    CHECK(q.rep(0).misspec == p.rep(0).misspec);
    CHECK(q.rep(0).label == "off_model");
}

TEST_CASE("loader rejects malformed input with a line number") {
    const std::string good =
        "banditlab problem 1\n"
        "noise_std 0.1\n"
        "contexts 1\n"
        "arms 2\n"
        "reps 1\n"
        "rho\n1\n"
        "mu\n1 0\n"
        "rep 0\n"
        "label fixture\n"
        "dim 2\n"
        "feature_bound 1\n"
        "param_bound 1\n"
        "theta\n1 0\n"
        "features\n1 0\n0 1\n"
        "end rep\n"
        "end problem\n";
    {
        std::istringstream in(good);
        CHECK_NOTHROW((void)load_problem(in));
    }
    SUBCASE("bad magic") {
        std::istringstream in("banditlab puzzle 1\n");
        CHECK_THROWS_AS((void)load_problem(in), std::invalid_argument);
    }
    SUBCASE("truncated file") {
        std::istringstream in(good.substr(0, good.size() - 13));
        CHECK_THROWS_AS((void)load_problem(in), std::invalid_argument);
    }
    SUBCASE("trailing data") {
        std::istringstream in(good + "extra\n");
        CHECK_THROWS_WITH_AS((void)load_problem(in),
                             doctest::Contains("trailing"), std::invalid_argument);
    }
    SUBCASE("wrong matrix width") {
        std::string bad = good;
        bad.replace(bad.find("1 0\n0 1\n"), 8, "1 0 3\n0 1\n");
        std::istringstream in(bad);
        CHECK_THROWS_AS((void)load_problem(in), std::invalid_argument);
    }
    SUBCASE("comments and blank lines are fine") {
        std::istringstream in("# saved problem\n\n" + good);
        CHECK_NOTHROW((void)load_problem(in));
    }
}

TEST_CASE("saving a continuous problem is rejected") {
    const ContextualProblem p = preset_problem("continuous", 1);
    std::ostringstream out;
    CHECK_THROWS_AS(save_problem(p, out), std::invalid_argument);
}

TEST_CASE("empty labels are replaced and bad labels rejected on save") {
    Rng rng(3);
    ContextualProblem p = random_problem(4, 2, 2, rng);
    p.mutable_reps()[0].label.clear();
    std::ostringstream out;
    save_problem(p, out);
    CHECK(out.str().find("label rep_0") != std::string::npos);

    p.mutable_reps()[0].label = "has space";
    std::ostringstream second;
    CHECK_THROWS_AS(save_problem(p, second), std::invalid_argument);
}
