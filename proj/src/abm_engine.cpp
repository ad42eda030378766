#include "spikeforge/abm_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace spikeforge {

namespace {

// Stream tag separating per-agent draws from any other use of the run seed.
constexpr std::uint64_t kAgentStream = 0x61626d2d6167656eULL;

void throw_first(const char* where, const std::vector<std::string>& violations) {
    if (violations.empty()) return;
    throw std::invalid_argument(std::string(where) + ": " + violations.front());
}

} // namespace

BehaviorResult LifBehavior::step(const NeuronParams& params, double membrane,
                                 double input, SequentialRng&) const {
    const double u = leak_toward(membrane, params.leak, params.reset) + input;
    return {u, u > params.threshold};
}

StochasticLifBehavior::StochasticLifBehavior(double fire_probability)
    : fire_probability_(fire_probability) {
    if (!(fire_probability >= 0.0 && fire_probability <= 1.0))
        throw std::invalid_argument("stochastic lif: fire probability must be in [0, 1]");
}

BehaviorResult StochasticLifBehavior::step(const NeuronParams& params, double membrane,
                                           double input, SequentialRng& rng) const {
    const double u = leak_toward(membrane, params.leak, params.reset) + input;
    const bool above = u > params.threshold;
    return {u, above && rng.next_unit() < fire_probability_};
}

BehaviorRegistry::BehaviorRegistry() {
    behaviors_["lif"] = std::make_shared<LifBehavior>();
    behaviors_["stochastic_lif"] = std::make_shared<StochasticLifBehavior>(0.5);
}

BehaviorRegistry& BehaviorRegistry::global() {
    static BehaviorRegistry registry;
    return registry;
}

void BehaviorRegistry::register_behavior(const std::string& name,
                                         std::shared_ptr<const SpikingBehavior> behavior) {
    if (!behavior) throw std::invalid_argument("register_behavior: null behavior");
    std::lock_guard<std::mutex> lock(mutex_);
    if (!behaviors_.emplace(name, std::move(behavior)).second)
        throw std::invalid_argument("register_behavior: \"" + name + "\" is already registered");
}

std::shared_ptr<const SpikingBehavior> BehaviorRegistry::find(const std::string& name) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = behaviors_.find(name);
    return it == behaviors_.end() ? nullptr : it->second;
}

std::vector<std::string> BehaviorRegistry::names() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<std::string> out;
    out.reserve(behaviors_.size());
    for (const auto& [name, _] : behaviors_) out.push_back(name);
    return out;
}

AbmWorld::AbmWorld(const NetworkDef& net, const SimulationConfig& cfg) {
    throw_first("abm world", validate_network(net));

    n_ = net.neuron_count();
    seed_ = cfg.seed;
    params_ = net.neurons;
    membrane_.resize(n_);
    refractory_left_.assign(n_, 0);
    pending_input_.assign(n_, 0.0);
    behavior_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        membrane_[i] = params_[i].reset;
        std::shared_ptr<const SpikingBehavior> b =
            BehaviorRegistry::global().find(params_[i].behavior);
        if (!b)
            throw std::invalid_argument("abm world: neuron " + std::to_string(i) +
                                        " uses unregistered behavior \"" +
                                        params_[i].behavior + "\"");
        behavior_[i] = b.get();
        behavior_refs_.push_back(std::move(b));
    }

    // Channels sorted by (pre, post) so deliveries accumulate in the same
    // order as the matrix backend's row propagation.
    std::vector<std::size_t> order(net.synapses.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&net](std::size_t a, std::size_t b) {
        const SynapseDef& x = net.synapses[a];
        const SynapseDef& y = net.synapses[b];
        return x.pre != y.pre ? x.pre < y.pre : x.post < y.post;
    });

    const std::size_t channels = order.size();
    channel_post_.resize(channels);
    channel_weight_.resize(channels);
    channel_reg_.resize(channels);
    channel_len_.resize(channels);
    out_begin_.assign(n_ + 1, 0);
    out_channel_.resize(channels);

    std::size_t arena = 0;
    for (std::size_t c = 0; c < channels; ++c) {
        const SynapseDef& syn = net.synapses[order[c]];
        channel_post_[c] = syn.post;
        channel_weight_[c] = syn.weight;
        channel_len_[c] = syn.delay;
        channel_reg_[c] = arena;
        arena += static_cast<std::size_t>(syn.delay);
        out_begin_[syn.pre + 1] += 1;
    }
    reg_arena_.assign(arena, 0);
    for (int i = 0; i < n_; ++i) out_begin_[i + 1] += out_begin_[i];
    {
        std::vector<std::size_t> cursor(out_begin_.begin(), out_begin_.end() - 1);
        for (std::size_t c = 0; c < channels; ++c)
            out_channel_[cursor[net.synapses[order[c]].pre]++] = static_cast<int>(c);
    }

    axon_reg_.resize(n_);
    axon_len_.resize(n_);
    std::size_t axon_arena = 0;
    for (int i = 0; i < n_; ++i) {
        axon_len_[i] = params_[i].axonal_delay;
        axon_reg_[i] = axon_arena;
        axon_arena += static_cast<std::size_t>(params_[i].axonal_delay);
    }
    axon_arena_.assign(axon_arena, 0);
}

const std::vector<int>& AbmWorld::step(std::span<const double> ext) {
    if (!ext.empty() && static_cast<int>(ext.size()) != n_)
        throw std::invalid_argument("abm step: ext must have one amplitude per neuron");

    // Phase 1: neuron step. Consumes the deliveries scheduled for this step;
    // spikes enter the axon register, or the synapse register heads directly
    // when the axonal delay is zero.
    spiked_.clear();
    for (int i = 0; i < n_; ++i) {
        const double input = pending_input_[i] + (ext.empty() ? 0.0 : ext[i]);
        pending_input_[i] = 0.0;

        SequentialRng rng(RandomStream(seed_, kAgentStream, static_cast<std::uint64_t>(i),
                                       static_cast<std::uint64_t>(step_index_)));
        BehaviorResult r = behavior_[i]->step(params_[i], membrane_[i], input, rng);

        bool spiked = r.spiked;
        if (refractory_left_[i] > 0) {
            spiked = false;
            refractory_left_[i] -= 1;
            r.membrane = params_[i].reset;
        }
        if (spiked) {
            membrane_[i] = params_[i].reset;
            refractory_left_[i] = params_[i].refractory;
            spiked_.push_back(i);
            if (axon_len_[i] == 0) {
                for (std::size_t k = out_begin_[i]; k < out_begin_[i + 1]; ++k)
                    reg_arena_[channel_reg_[out_channel_[k]]] = 1;
            } else {
                axon_arena_[axon_reg_[i]] = 1;
            }
        } else {
            membrane_[i] = r.membrane;
        }
    }

    // Phase 2a: synapse step. The tail of each register delivers into the
    // post-neuron's pending input for the next step, then the register shifts.
    for (std::size_t c = 0; c < channel_post_.size(); ++c) {
        std::uint8_t* reg = reg_arena_.data() + channel_reg_[c];
        const int len = channel_len_[c];
        if (reg[len - 1]) pending_input_[channel_post_[c]] += channel_weight_[c];
        for (int k = len - 1; k > 0; --k) reg[k] = reg[k - 1];
        reg[0] = 0;
    }

    // Phase 2b: axon registers shift; a popped spike enters the (already
    // shifted) synapse register heads, keeping total latency at
    // axonal_delay + synaptic delay.
    for (int i = 0; i < n_; ++i) {
        const int len = axon_len_[i];
        if (len == 0) continue;
        std::uint8_t* reg = axon_arena_.data() + axon_reg_[i];
        const std::uint8_t popped = reg[len - 1];
        for (int k = len - 1; k > 0; --k) reg[k] = reg[k - 1];
        reg[0] = 0;
        if (popped)
            for (std::size_t k = out_begin_[i]; k < out_begin_[i + 1]; ++k)
                reg_arena_[channel_reg_[out_channel_[k]]] = 1;
    }

    step_index_ += 1;
    return spiked_;
}

RunResult abm_run(const NetworkDef& net, const SimulationConfig& cfg,
                  const StimulusSchedule& stim) {
    if (cfg.steps < 1) throw std::invalid_argument("abm_run: steps must be >= 1");
    AbmWorld world(net, cfg);
    throw_first("abm_run", validate_stimulus(stim, world.neuron_count(), cfg.steps));

    std::vector<StimulusEntry> sorted = stim.entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const StimulusEntry& a, const StimulusEntry& b) { return a.step < b.step; });

    RunResult result;
    result.raster.neuron_count = world.neuron_count();
    result.raster.step_count = cfg.steps;

    std::vector<double> ext(world.neuron_count(), 0.0);
    std::size_t cursor = 0;
    for (int t = 0; t < cfg.steps; ++t) {
        const std::size_t first = cursor;
        bool any_ext = false;
        while (cursor < sorted.size() && sorted[cursor].step == t) {
            ext[sorted[cursor].neuron] += sorted[cursor].amplitude;
            any_ext = true;
            ++cursor;
        }

        const std::vector<int>& spiked =
            world.step(any_ext ? std::span<const double>(ext) : std::span<const double>());
        for (int j : spiked) result.raster.events.push_back({t, j});
        if (cfg.record_membrane) {
            std::vector<double> row(world.neuron_count());
            for (int i = 0; i < world.neuron_count(); ++i) row[i] = world.membrane(i);
            result.membrane_trace.push_back(std::move(row));
        }

        for (std::size_t k = first; k < cursor; ++k) ext[sorted[k].neuron] = 0.0;
    }
    return result;
}

} // namespace spikeforge
