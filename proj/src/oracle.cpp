#include "spikeforge/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikeforge {

namespace {

struct PendingDelivery {
    int post = 0;
    double amount = 0.0;
};

} // namespace

SpikeRaster oracle_run(const NetworkDef& net, const SimulationConfig& cfg,
                       const StimulusSchedule& stim) {
    {
        std::vector<std::string> bad = validate_network(net);
        if (!bad.empty())
            throw std::invalid_argument("oracle_run: invalid network: " + bad.front());
        if (cfg.steps < 1) throw std::invalid_argument("oracle_run: steps must be >= 1");
        bad = validate_stimulus(stim, net.neuron_count(), cfg.steps);
        if (!bad.empty())
            throw std::invalid_argument("oracle_run: invalid stimulus: " + bad.front());
    }
    for (const NeuronParams& p : net.neurons)
        if (p.behavior != "lif")
            throw std::invalid_argument("oracle_run: unsupported behavior \"" + p.behavior +
                                        "\" (the oracle simulates lif only)");

    const int n = net.neuron_count();
    const int steps = cfg.steps;

    // Outgoing adjacency, in synapse-list order.
    std::vector<std::vector<int>> outgoing(n);
    for (int s = 0; s < static_cast<int>(net.synapses.size()); ++s)
        outgoing[net.synapses[s].pre].push_back(s);

    // Deliveries bucketed by arrival step; arrivals past the horizon dropped.
    std::vector<std::vector<PendingDelivery>> queue(steps);

    // Stimulus bucketed by step.
    std::vector<std::vector<StimulusEntry>> stim_at(steps);
    for (const StimulusEntry& e : stim.entries) stim_at[e.step].push_back(e);

    std::vector<double> membrane(n);
    std::vector<int> refractory_left(n, 0);
    for (int i = 0; i < n; ++i) membrane[i] = net.neurons[i].reset;

    SpikeRaster raster;
    raster.neuron_count = n;
    raster.step_count = steps;

    std::vector<double> arriving(n, 0.0);

    for (int t = 0; t < steps; ++t) {
        for (double& a : arriving) a = 0.0;
        for (const PendingDelivery& d : queue[t]) arriving[d.post] += d.amount;
        for (const StimulusEntry& e : stim_at[t]) arriving[e.neuron] += e.amplitude;

        for (int i = 0; i < n; ++i) {
            const NeuronParams& p = net.neurons[i];

            // Constant leak toward the reset state, never crossing it.
            double u = membrane[i];
            if (u > p.reset) {
                u -= p.leak;
                if (u < p.reset) u = p.reset;
            } else if (u < p.reset) {
                u += p.leak;
                if (u > p.reset) u = p.reset;
            }

            u += arriving[i];

            bool spiked = u > p.threshold;
            if (refractory_left[i] > 0) {
                spiked = false;
                refractory_left[i] -= 1;
                u = p.reset;
            }

            if (spiked) {
                raster.events.push_back({t, i});
                membrane[i] = p.reset;
                refractory_left[i] = p.refractory;
                for (int s : outgoing[i]) {
                    const SynapseDef& syn = net.synapses[s];
                    const int arrival = t + syn.delay + p.axonal_delay;
                    if (arrival < steps) queue[arrival].push_back({syn.post, syn.weight});
                }
            } else {
                membrane[i] = u;
            }
        }
    }
    return raster;
}

} // namespace spikeforge
