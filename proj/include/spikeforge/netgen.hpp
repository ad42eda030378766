#pragma once

#include "spikeforge/model.hpp"

#include <cstdint>

namespace spikeforge {

/// One benchmark cell: an Erdos-Renyi network driven by a periodic stimulus
/// on a few randomly chosen input neurons.
struct BenchScenario {
    int neuron_count = 100;
    double connection_probability = 0.25;
    int steps = 1000;
    int input_neuron_count = 3;
    int input_period = 10;
    double amplitude = 2.0;  // threshold + 1; the protocol never states it
    std::uint64_t seed = 0;
};

struct ScenarioBundle {
    NetworkDef net;
    SimulationConfig cfg;
    StimulusSchedule stim;
    std::vector<int> input_neurons;  // ascending
};

/// Directed G(n, p) without self-loops: every ordered pair (i, j), i != j,
/// receives a synapse independently with probability p. Weights and delays
/// 1; thresholds 1, resets 0, leaks 0, refractory and axonal delays 0.
/// A pure function of (n, p, seed).
NetworkDef erdos_renyi(int n, double p, std::uint64_t seed);

/// Network plus the periodic stimulus schedule: `input_neuron_count`
/// distinct neurons, chosen by seed, spiked with `amplitude` at
/// t = 0, input_period, 2*input_period, ... below `steps`.
ScenarioBundle build_scenario(const BenchScenario& s);

} // namespace spikeforge
