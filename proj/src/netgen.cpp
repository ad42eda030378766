#include "spikeforge/netgen.hpp"

#include "spikeforge/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace spikeforge {

namespace {

// Stream ids; adding a new scenario component must never perturb the draws
// of an existing one.
constexpr std::uint64_t kEdgeStream = 1;
constexpr std::uint64_t kInputStream = 2;

} // namespace

NetworkDef erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("erdos_renyi: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("erdos_renyi: p must be in [0, 1]");

    NetworkDef net;
    net.neurons.resize(static_cast<std::size_t>(n));
    for (NeuronParams& q : net.neurons) {
        q.threshold = 1.0;
        q.leak = 0.0;
        q.reset = 0.0;
        q.refractory = 0;
        q.axonal_delay = 0;
        q.behavior = "lif";
    }

    if (p > 0.0) {
        const RandomStream edges(seed, kEdgeStream);
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        if (p >= 1.0) {
            net.synapses.reserve(static_cast<std::size_t>(n) * (n - 1));
        } else {
            const double expected = p * static_cast<double>(n) * (n - 1);
            net.synapses.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const std::uint64_t pair_index = static_cast<std::uint64_t>(i) * un + j;
                if (edges.unit_at(pair_index) < p)
                    net.synapses.push_back({i, j, 1.0, 1, false});
            }
        }
    }
    return net;
}

ScenarioBundle build_scenario(const BenchScenario& s) {
    if (s.neuron_count < s.input_neuron_count)
        throw std::invalid_argument("build_scenario: need at least " +
                                    std::to_string(s.input_neuron_count) + " neurons, got " +
                                    std::to_string(s.neuron_count));
    if (s.input_neuron_count < 0)
        throw std::invalid_argument("build_scenario: input_neuron_count must be >= 0");
    if (s.steps < 1) throw std::invalid_argument("build_scenario: steps must be >= 1");
    if (s.input_period < 1) throw std::invalid_argument("build_scenario: input_period must be >= 1");

    ScenarioBundle bundle;
    bundle.net = erdos_renyi(s.neuron_count, s.connection_probability, s.seed);
    bundle.cfg.steps = s.steps;
    bundle.cfg.seed = s.seed;

    const RandomStream picks(s.seed, kInputStream);
    std::uint64_t draw = 0;
    while (static_cast<int>(bundle.input_neurons.size()) < s.input_neuron_count) {
        const int candidate =
            static_cast<int>(picks.below_at(draw++, static_cast<std::uint64_t>(s.neuron_count)));
        if (std::find(bundle.input_neurons.begin(), bundle.input_neurons.end(), candidate) ==
            bundle.input_neurons.end())
            bundle.input_neurons.push_back(candidate);
    }
    std::sort(bundle.input_neurons.begin(), bundle.input_neurons.end());

    for (int t = 0; t < s.steps; t += s.input_period)
        for (int id : bundle.input_neurons)
            bundle.stim.entries.push_back({t, id, s.amplitude});
    return bundle;
}

} // namespace spikeforge
