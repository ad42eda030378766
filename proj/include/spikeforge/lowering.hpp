#pragma once

#include "spikeforge/model.hpp"

namespace spikeforge {

/// A proxy neuron's place in the chain that realizes one delayed synapse.
/// `position` is 1-based along the chain from the pre-neuron.
struct ProxyInfo {
    int pre = 0;
    int post = 0;
    int position = 0;

    bool operator==(const ProxyInfo&) const = default;
};

/// Result of lowering: a network with unit synaptic delays and zero axonal
/// delays. Neurons 0..original_count-1 carry the original parameters
/// unchanged; proxies follow, described by proxy_map (index 0 is neuron id
/// original_count).
struct LoweredNetwork {
    NetworkDef net;
    int original_count = 0;
    std::vector<ProxyInfo> proxy_map;

    int proxy_id_base() const { return original_count; }
};

/// Replace every synapse of effective delay d > 1 with a chain of d-1
/// threshold-zero, infinite-leak proxy neurons joined by unit-weight,
/// unit-delay synapses; the original weight rides on the final hop. Axonal
/// delays are folded into outgoing synaptic delays first.
LoweredNetwork lower_delays(const NetworkDef& net);

/// Number of proxies lower_delays would add, without building the network.
long long proxy_count(const NetworkDef& net);

/// The lowered network with "original_count" and "proxy_map" recorded in its
/// metadata ("[[pre,post,position],...]"), ready for serialization.
NetworkDef annotate_proxy_metadata(const LoweredNetwork& lowered);

} // namespace spikeforge
