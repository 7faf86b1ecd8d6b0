#include <doctest.h>

#include "somlab/config.hpp"
#include "somlab/errors.hpp"

using namespace somlab;

TEST_CASE("an empty document resolves to the shipped preset") {
    auto cfg = parse_config("");
    CHECK(cfg.rule.rule == LearningRule::som);
    CHECK(cfg.topology.neuron_count() == 200);
    CHECK(cfg.topology.dims() == 1);
    CHECK_FALSE(cfg.topology.periodic(0));
    CHECK(cfg.schedule.total_steps == 200000);
    CHECK(cfg.schedule.eta_start == 0.5);
    CHECK(cfg.schedule.eta_end == 0.02);
    CHECK(cfg.schedule.gamma_start == 10.0);
    CHECK(cfg.schedule.gamma_end == 0.8);
    CHECK(cfg.distribution.kind() == StimulusDistribution::Kind::power_law);
    CHECK(cfg.distribution.param_exponent() == 1.0);
    CHECK(cfg.distribution.param_lo() == 0.1);
    CHECK(cfg.distribution.param_hi() == 1.0);
    CHECK(cfg.replicates == 8);
    CHECK(cfg.init == InitMode::ordered);
    CHECK(cfg.kernel_mode == NeighborhoodKernel::Mode::exact_gaussian);
    CHECK(cfg.resolved_trim() == 20);  // max(2, 200/10)
    CHECK(cfg.probes == 100000);
}

TEST_CASE("trim default follows the lattice size") {
    auto cfg = parse_config("[topology]\nsizes = 12\n");
    CHECK(cfg.resolved_trim() == 2);  // max(2, 12/10)
    auto cfg2 = parse_config("[analysis]\ntrim = 7\n");
    CHECK(cfg2.resolved_trim() == 7);
}

TEST_CASE("lambda outside the window is rejected without the override flag") {
    std::string doc = "[rule]\nrule = gwrk\nlambda = 1.5\n";
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("[-1, 1]"), ConfigError);
    CHECK_NOTHROW(parse_config(doc, true));
    CHECK_NOTHROW(parse_config("[rule]\nrule = gwrk\nlambda = -1\n"));
}

TEST_CASE("zero kernel width is a config error") {
    CHECK_THROWS_AS(parse_config("[schedule]\ngamma_start = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[schedule]\neta_start = 0\n"), ConfigError);
}

TEST_CASE("unknown sections and keys are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_config("[rule]\nrle = som\n"), doctest::Contains("rule.rle"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[rulez]\nrule = som\n"), doctest::Contains("[rulez]"), ConfigError);
}

TEST_CASE("type mismatches name the key") {
    CHECK_THROWS_WITH_AS(parse_config("[schedule]\ntotal_steps = soon\n"),
                         doctest::Contains("schedule.total_steps"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[rule]\nlambda = high\n"), doctest::Contains("rule.lambda"),
                         ConfigError);
}

TEST_CASE("scientific notation works for step counts") {
    auto cfg = parse_config("[schedule]\ntotal_steps = 2e5\n");
    CHECK(cfg.schedule.total_steps == 200000);
}

TEST_CASE("distributions parse from their section") {
    auto uni = parse_config("[distribution]\nkind = uniform\nlo = -1\nhi = 2\n");
    CHECK(uni.distribution.kind() == StimulusDistribution::Kind::uniform);
    CHECK(uni.distribution.param_lo() == -1.0);

    auto pw = parse_config(
        "[distribution]\nkind = piecewise\nbreaks = 0, 0.5, 1\nweights = 1, 3\n");
    CHECK(pw.distribution.kind() == StimulusDistribution::Kind::piecewise_constant);

    auto disc = parse_config(
        "[run]\ninit = random\n[distribution]\nkind = discrete\npoints = 0.1 ; 0.9\nprobs = 1, 3\n");
    CHECK(disc.distribution.is_discrete());
    CHECK(disc.distribution.probability(1) == doctest::Approx(0.75));

    auto disc2d = parse_config(
        "[run]\ninit = random\n[distribution]\nkind = discrete\npoints = 0,0 ; 1,0 ; 0,1\n");
    CHECK(disc2d.distribution.dimension() == 2);
    CHECK(disc2d.distribution.probability(0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("2-D topology parses sizes and periodic flags") {
    auto cfg = parse_config(
        "[topology]\ndims = 2\nsizes = 20x10\nperiodic = true, false\n[distribution]\ndim = 2\n");
    CHECK(cfg.topology.dims() == 2);
    CHECK(cfg.topology.size(0) == 20);
    CHECK(cfg.topology.size(1) == 10);
    CHECK(cfg.topology.periodic(0));
    CHECK_FALSE(cfg.topology.periodic(1));
}

TEST_CASE("ordered init demands matching dimensions") {
    CHECK_THROWS_AS(parse_config("[distribution]\ndim = 2\n"), ConfigError);
    CHECK_NOTHROW(parse_config("[distribution]\ndim = 2\n[run]\ninit = random\n"));
}

TEST_CASE("comments, blank lines, and duplicate keys") {
    auto cfg = parse_config("# top comment\n\n[rule]\nrule = vq  # trailing\n");
    CHECK(cfg.rule.rule == LearningRule::vq);
    CHECK_THROWS_WITH_AS(parse_config("[rule]\nrule = som\nrule = vq\n"), doctest::Contains("duplicate"),
                         ConfigError);
}

TEST_CASE("config echo round-trips through the parser") {
    auto cfg = parse_config(
        "[rule]\nrule = gwrk\nlambda = 0.5\n[schedule]\ntotal_steps = 1000\n"
        "[topology]\nsizes = 64\n[run]\nseed = 42\nreplicates = 3\n");
    auto echoed = parse_config(cfg.echo());
    CHECK(echoed.rule.rule == cfg.rule.rule);
    CHECK(echoed.rule.lambda == cfg.rule.lambda);
    CHECK(echoed.schedule.total_steps == cfg.schedule.total_steps);
    CHECK(echoed.topology.neuron_count() == cfg.topology.neuron_count());
    CHECK(echoed.seed == cfg.seed);
    CHECK(echoed.replicates == cfg.replicates);
    CHECK(echoed.echo() == cfg.echo());
}
