#pragma once

// Shared fixtures: tiny literal networks plus seeded random generation of
// integer-regime networks and stimuli. Integer-valued parameters keep every
// backend's arithmetic exact in 64-bit floating point, so cross-backend
// comparisons can demand bit equality.

#include "spikeforge/model.hpp"
#include "spikeforge/rng.hpp"

#include <cstdint>
#include <vector>

namespace spikeforge::testing {

inline NetworkDef two_neuron_chain(double weight = 1.0, int delay = 1,
                                   double threshold = 1.0) {
    NetworkDef net;
    net.neurons.resize(2);
    net.neurons[0].threshold = threshold;
    net.neurons[1].threshold = threshold;
    net.synapses.push_back({0, 1, weight, delay, false});
    return net;
}

inline StimulusSchedule kick(int neuron = 0, int step = 0, double amplitude = 2.0) {
    StimulusSchedule stim;
    stim.entries.push_back({step, neuron, amplitude});
    return stim;
}

inline SimulationConfig steps_cfg(int steps, std::uint64_t seed = 0) {
    SimulationConfig cfg;
    cfg.steps = steps;
    cfg.seed = seed;
    return cfg;
}

struct RandomNetOptions {
    int min_neurons = 2;
    int max_neurons = 20;
    double edge_prob = 0.3;
    int max_delay = 1;       // synaptic delays drawn from {1..max_delay}
    int max_axonal = 0;      // axonal delays drawn from {0..max_axonal}
    int max_refractory = 3;
    bool infinite_leaks = true;  // occasionally use the infinite leak
};

/// Random LIF network with integer-valued parameters; self-loops allowed.
inline NetworkDef random_net(std::uint64_t seed, const RandomNetOptions& opt = {}) {
    SequentialRng rng{RandomStream(seed, 0x746573746e6574ULL)};
    NetworkDef net;
    const int n = opt.min_neurons +
                  static_cast<int>(rng.next_below(
                      static_cast<std::uint64_t>(opt.max_neurons - opt.min_neurons + 1)));
    net.neurons.resize(static_cast<std::size_t>(n));
    for (NeuronParams& p : net.neurons) {
        p.threshold = 1.0 + static_cast<double>(rng.next_below(3));
        p.leak = static_cast<double>(rng.next_below(3));
        if (opt.infinite_leaks && rng.next_below(8) == 0) p.leak = kInfiniteLeak;
        p.reset = static_cast<double>(rng.next_below(3)) - 1.0;
        p.refractory = static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(opt.max_refractory + 1)));
        p.axonal_delay = static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(opt.max_axonal + 1)));
    }
    static constexpr double kWeights[] = {-2.0, -1.0, 1.0, 2.0, 3.0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rng.next_unit() < opt.edge_prob) {
                SynapseDef s;
                s.pre = i;
                s.post = j;
                s.weight = kWeights[rng.next_below(5)];
                s.delay = 1 + static_cast<int>(rng.next_below(
                                  static_cast<std::uint64_t>(opt.max_delay)));
                net.synapses.push_back(s);
            }
    return net;
}

/// Random integer-amplitude stimulus over the given horizon.
inline StimulusSchedule random_stim(std::uint64_t seed, int neurons, int steps,
                                    int entry_count) {
    SequentialRng rng{RandomStream(seed, 0x74657374737469ULL)};
    StimulusSchedule stim;
    for (int k = 0; k < entry_count; ++k) {
        StimulusEntry e;
        e.step = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(steps)));
        e.neuron = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(neurons)));
        e.amplitude = 1.0 + static_cast<double>(rng.next_below(4));
        stim.entries.push_back(e);
    }
    return stim;
}

inline std::vector<std::pair<int, int>> event_pairs(const SpikeRaster& r) {
    std::vector<std::pair<int, int>> out;
    out.reserve(r.events.size());
    for (const SpikeEvent& e : r.events) out.emplace_back(e.step, e.neuron);
    return out;
}

} // namespace spikeforge::testing
