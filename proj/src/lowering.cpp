#include "spikeforge/lowering.hpp"

#include <stdexcept>

namespace spikeforge {

namespace {

NeuronParams proxy_params() {
    NeuronParams p;
    p.threshold = 0.0;
    p.leak = kInfiniteLeak;
    p.reset = 0.0;
    p.refractory = 0;
    p.axonal_delay = 0;
    p.behavior = "lif";
    return p;
}

} // namespace

LoweredNetwork lower_delays(const NetworkDef& net) {
    {
        const std::vector<std::string> bad = validate_network(net);
        if (!bad.empty())
            throw std::invalid_argument("lower_delays: invalid network: " + bad.front());
    }

    LoweredNetwork out;
    out.original_count = net.neuron_count();
    out.net.metadata = net.metadata;
    out.net.neurons.reserve(net.neurons.size());
    for (const NeuronParams& p : net.neurons) {
        NeuronParams q = p;
        q.axonal_delay = 0;  // folded into the outgoing synaptic delays below
        out.net.neurons.push_back(std::move(q));
    }

    for (const SynapseDef& syn : net.synapses) {
        const int effective_delay = syn.delay + net.neurons[syn.pre].axonal_delay;
        if (effective_delay == 1) {
            out.net.synapses.push_back(syn);
            continue;
        }

        // pre -> p1 -> ... -> p_{d-1} -> post, all hops delay 1; the first
        // d-1 hops carry weight 1, the last hop carries the synapse weight.
        int hop_from = syn.pre;
        for (int k = 1; k < effective_delay; ++k) {
            const int proxy_id = out.net.neuron_count();
            out.net.neurons.push_back(proxy_params());
            out.proxy_map.push_back({syn.pre, syn.post, k});
            out.net.synapses.push_back({hop_from, proxy_id, 1.0, 1, false});
            hop_from = proxy_id;
        }
        out.net.synapses.push_back({hop_from, syn.post, syn.weight, 1, syn.stdp_enabled});
    }
    return out;
}

NetworkDef annotate_proxy_metadata(const LoweredNetwork& lowered) {
    NetworkDef net = lowered.net;
    net.metadata["original_count"] = std::to_string(lowered.original_count);
    std::string map = "[";
    for (std::size_t i = 0; i < lowered.proxy_map.size(); ++i) {
        const ProxyInfo& p = lowered.proxy_map[i];
        if (i) map.push_back(',');
        map += "[" + std::to_string(p.pre) + "," + std::to_string(p.post) + "," +
               std::to_string(p.position) + "]";
    }
    map.push_back(']');
    net.metadata["proxy_map"] = map;
    return net;
}

long long proxy_count(const NetworkDef& net) {
    {
        const std::vector<std::string> bad = validate_network(net);
        if (!bad.empty())
            throw std::invalid_argument("proxy_count: invalid network: " + bad.front());
    }
    long long total = 0;
    for (const SynapseDef& syn : net.synapses)
        total += syn.delay + net.neurons[syn.pre].axonal_delay - 1;
    return total;
}

} // namespace spikeforge
