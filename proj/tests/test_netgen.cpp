#include "doctest.h"

#include "spikeforge/model.hpp"
#include "spikeforge/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

using namespace spikeforge;

TEST_CASE("full connectivity yields every ordered pair except self loops") {
    const NetworkDef net = erdos_renyi(100, 1.0, 7);
    CHECK(net.neuron_count() == 100);
    CHECK(net.synapses.size() == 100u * 99u);
    std::set<std::pair<int, int>> seen;
    for (const SynapseDef& s : net.synapses) {
        CHECK(s.pre != s.post);
        CHECK(s.weight == 1.0);
        CHECK(s.delay == 1);
        CHECK(!s.stdp_enabled);
        seen.insert({s.pre, s.post});
    }
    CHECK(seen.size() == net.synapses.size());
}

TEST_CASE("zero probability yields an empty edge set") {
    const NetworkDef net = erdos_renyi(100, 0.0, 7);
    CHECK(net.synapses.empty());
    CHECK(net.neuron_count() == 100);
}

TEST_CASE("generated neurons carry the benchmark parameters") {
    const NetworkDef net = erdos_renyi(20, 0.5, 3);
    for (const NeuronParams& q : net.neurons) {
        CHECK(q.threshold == 1.0);
        CHECK(q.leak == 0.0);
        CHECK(q.reset == 0.0);
        CHECK(q.refractory == 0);
        CHECK(q.axonal_delay == 0);
        CHECK(q.behavior == "lif");
    }
    CHECK(validate_network(net).empty());
}

TEST_CASE("edge list is sorted by (pre, post)") {
    const NetworkDef net = erdos_renyi(60, 0.4, 11);
    CHECK(std::is_sorted(net.synapses.begin(), net.synapses.end(),
                         [](const SynapseDef& a, const SynapseDef& b) {
                             return std::pair{a.pre, a.post} < std::pair{b.pre, b.post};
                         }));
}

TEST_CASE("edge count at n=100 p=0.25 lands near the expectation") {
    // Expectation 2475, sigma = sqrt(9900 * 0.25 * 0.75) ~ 43; allow 4 sigma.
    const double sigma = std::sqrt(9900.0 * 0.25 * 0.75);
    for (std::uint64_t seed : {0u, 1u, 42u}) {
        const NetworkDef net = erdos_renyi(100, 0.25, seed);
        const double count = static_cast<double>(net.synapses.size());
        CHECK(std::abs(count - 2475.0) < 4.0 * sigma);
    }
}

TEST_CASE("edge counts for fixed seeds are stable across releases") {
    CHECK(erdos_renyi(100, 0.25, 0).synapses.size() == 2536);
    CHECK(erdos_renyi(100, 0.25, 1).synapses.size() == 2527);
    CHECK(erdos_renyi(100, 0.25, 42).synapses.size() == 2483);
}

TEST_CASE("mean out-degree converges to p*(n-1)") {
    const int n = 50;
    const double p = 0.3;
    const int trials = 100;
    std::uint64_t total = 0;
    for (int seed = 0; seed < trials; ++seed)
        total += erdos_renyi(n, p, static_cast<std::uint64_t>(seed)).synapses.size();
    const double expected = trials * n * (n - 1) * p;
    const double sigma = std::sqrt(trials * n * (n - 1) * p * (1.0 - p));
    CHECK(std::abs(static_cast<double>(total) - expected) < 4.0 * sigma);
}

TEST_CASE("generation is a pure function of (n, p, seed)") {
    const NetworkDef a = erdos_renyi(40, 0.3, 9);
    const NetworkDef b = erdos_renyi(40, 0.3, 9);
    CHECK(a == b);
    const NetworkDef c = erdos_renyi(40, 0.3, 10);
    CHECK(a.synapses != c.synapses);
}

TEST_CASE("generator rejects bad arguments") {
    CHECK_THROWS_AS(erdos_renyi(0, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(erdos_renyi(10, -0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(erdos_renyi(10, 1.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(erdos_renyi(10, std::nan(""), 0), std::invalid_argument);
}

TEST_CASE("scenario bundle carries periodic drive on distinct input neurons") {
    BenchScenario s;
    s.neuron_count = 100;
    s.connection_probability = 0.25;
    s.seed = 0;
    const ScenarioBundle bundle = build_scenario(s);

    CHECK(bundle.net == erdos_renyi(100, 0.25, 0));
    CHECK(bundle.cfg.steps == 1000);
    CHECK(bundle.cfg.seed == 0);

    REQUIRE(bundle.input_neurons.size() == 3);
    CHECK(std::is_sorted(bundle.input_neurons.begin(), bundle.input_neurons.end()));
    const std::set<int> distinct(bundle.input_neurons.begin(), bundle.input_neurons.end());
    CHECK(distinct.size() == 3);

    // 1000 steps at period 10 gives pulses at t = 0, 10, ..., 990.
    CHECK(bundle.stim.entries.size() == 100u * 3u);
    for (const StimulusEntry& e : bundle.stim.entries) {
        CHECK(e.step % 10 == 0);
        CHECK(e.amplitude == 2.0);
        CHECK(distinct.count(e.neuron) == 1);
    }
    CHECK(validate_stimulus(bundle.stim, bundle.net.neuron_count(), bundle.cfg.steps).empty());
}

TEST_CASE("input picks for seed 0 are stable across releases") {
    BenchScenario s;
    s.neuron_count = 100;
    s.connection_probability = 0.25;
    s.seed = 0;
    const ScenarioBundle bundle = build_scenario(s);
    REQUIRE(bundle.input_neurons.size() == 3);
    CHECK(bundle.input_neurons[0] == 1);
    CHECK(bundle.input_neurons[1] == 26);
    CHECK(bundle.input_neurons[2] == 47);
}

TEST_CASE("scenario builder rejects inconsistent shapes") {
    BenchScenario s;
    s.neuron_count = 2;
    CHECK_THROWS_AS(build_scenario(s), std::invalid_argument);

    s.neuron_count = 100;
    s.steps = 0;
    CHECK_THROWS_AS(build_scenario(s), std::invalid_argument);

    s.steps = 100;
    s.input_period = 0;
    CHECK_THROWS_AS(build_scenario(s), std::invalid_argument);
}
