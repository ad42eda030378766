#include "spikeforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace spikeforge {

StdpConfig StdpConfig::defaults() {
    StdpConfig cfg;
    cfg.window = 20;
    cfg.a_plus.resize(cfg.window);
    cfg.a_minus.resize(cfg.window);
    for (int k = 1; k <= cfg.window; ++k) {
        cfg.a_plus[k - 1] = 0.01 * std::exp(-k / 5.0);
        cfg.a_minus[k - 1] = 0.012 * std::exp(-k / 5.0);
    }
    cfg.w_min = 0.0;
    cfg.w_max = 1.0;
    return cfg;
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

std::vector<std::string> validate_network(const NetworkDef& net) {
    std::vector<std::string> out;
    const int n = net.neuron_count();

    for (int i = 0; i < n; ++i) {
        const NeuronParams& p = net.neurons[i];
        const std::string who = "neurons[" + std::to_string(i) + "]";
        if (!std::isfinite(p.threshold))
            out.push_back(who + ": threshold must be finite");
        if (std::isnan(p.leak) || p.leak < 0.0)
            out.push_back(who + ": leak must be >= 0 or infinite (got " + fmt_double(p.leak) + ")");
        if (!std::isfinite(p.reset))
            out.push_back(who + ": reset must be finite");
        if (p.refractory < 0)
            out.push_back(who + ": refractory_period must be >= 0 (got " +
                          std::to_string(p.refractory) + ")");
        if (p.axonal_delay < 0)
            out.push_back(who + ": axonal_delay must be >= 0 (got " +
                          std::to_string(p.axonal_delay) + ")");
        if (p.behavior.empty())
            out.push_back(who + ": behavior tag must be non-empty");
    }

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(net.synapses.size());
    for (std::size_t s = 0; s < net.synapses.size(); ++s) {
        const SynapseDef& syn = net.synapses[s];
        const std::string who = "synapses[" + std::to_string(s) + "]";
        const bool pre_ok = syn.pre >= 0 && syn.pre < n;
        const bool post_ok = syn.post >= 0 && syn.post < n;
        if (!pre_ok)
            out.push_back(who + ": pre id " + std::to_string(syn.pre) +
                          " out of range (" + std::to_string(n) + " neurons)");
        if (!post_ok)
            out.push_back(who + ": post id " + std::to_string(syn.post) +
                          " out of range (" + std::to_string(n) + " neurons)");
        if (!std::isfinite(syn.weight))
            out.push_back(who + ": weight must be finite");
        if (syn.delay < 1)
            out.push_back(who + ": delay must be >= 1 (got " + std::to_string(syn.delay) + ")");
        if (pre_ok && post_ok) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(syn.pre)) << 32) |
                static_cast<std::uint32_t>(syn.post);
            if (!seen.insert(key).second)
                out.push_back(who + ": duplicate synapse (" + std::to_string(syn.pre) + ", " +
                              std::to_string(syn.post) + ")");
        }
    }
    return out;
}

std::vector<std::string> validate_stimulus(const StimulusSchedule& stim,
                                           int neuron_count, int steps) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < stim.entries.size(); ++i) {
        const StimulusEntry& e = stim.entries[i];
        const std::string who = "stimulus[" + std::to_string(i) + "]";
        if (e.step < 0 || e.step >= steps)
            out.push_back(who + ": step " + std::to_string(e.step) + " outside [0, " +
                          std::to_string(steps) + ")");
        if (e.neuron < 0 || e.neuron >= neuron_count)
            out.push_back(who + ": neuron id " + std::to_string(e.neuron) +
                          " out of range (" + std::to_string(neuron_count) + " neurons)");
        if (!std::isfinite(e.amplitude))
            out.push_back(who + ": amplitude must be finite");
    }
    return out;
}

std::vector<std::string> validate_stdp(const StdpConfig& cfg) {
    std::vector<std::string> out;
    if (cfg.window < 1) out.push_back("stdp: window must be >= 1");
    if (static_cast<int>(cfg.a_plus.size()) != cfg.window)
        out.push_back("stdp: a_plus must have exactly `window` entries");
    if (static_cast<int>(cfg.a_minus.size()) != cfg.window)
        out.push_back("stdp: a_minus must have exactly `window` entries");
    for (double a : cfg.a_plus)
        if (!(a >= 0.0)) { out.push_back("stdp: a_plus entries must be >= 0"); break; }
    for (double a : cfg.a_minus)
        if (!(a >= 0.0)) { out.push_back("stdp: a_minus entries must be >= 0"); break; }
    if (!(cfg.w_min <= cfg.w_max)) out.push_back("stdp: w_min must be <= w_max");
    return out;
}

bool raster_equal(const SpikeRaster& a, const SpikeRaster& b) {
    return a.events == b.events;
}

bool raster_equal(const SpikeRaster& a, const SpikeRaster& b,
                  const std::unordered_set<int>& restrict_to) {
    auto ai = a.events.begin();
    auto bi = b.events.begin();
    const auto keep = [&restrict_to](const SpikeEvent& e) {
        return restrict_to.count(e.neuron) != 0;
    };
    while (true) {
        while (ai != a.events.end() && !keep(*ai)) ++ai;
        while (bi != b.events.end() && !keep(*bi)) ++bi;
        if (ai == a.events.end() || bi == b.events.end()) break;
        if (*ai != *bi) return false;
        ++ai;
        ++bi;
    }
    while (ai != a.events.end() && !keep(*ai)) ++ai;
    while (bi != b.events.end() && !keep(*bi)) ++bi;
    return ai == a.events.end() && bi == b.events.end();
}

SpikeRaster restrict_raster(const SpikeRaster& r, int neuron_limit) {
    SpikeRaster out;
    out.neuron_count = neuron_limit;
    out.step_count = r.step_count;
    out.events.reserve(r.events.size());
    for (const SpikeEvent& e : r.events)
        if (e.neuron < neuron_limit) out.events.push_back(e);
    return out;
}

} // namespace spikeforge
