#include "spikeforge/mat_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace spikeforge {

namespace {

// Beyond this neuron count a dense N x N matrix is no longer reasonable
// (1.2 GB at the limit); lowering delay-heavy nets can cross it easily.
constexpr int kDenseNeuronLimit = 12000;

void throw_first(const char* where, const std::vector<std::string>& violations) {
    if (violations.empty()) return;
    std::string msg = std::string(where) + ": " + violations.front();
    if (violations.size() > 1)
        msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    throw std::invalid_argument(msg);
}

} // namespace

WeightMatrix WeightMatrix::build(int n, const std::vector<SynapseDef>& synapses,
                                 WeightStorage storage) {
    WeightMatrix m;
    m.n_ = n;
    m.dense_storage_ = storage == WeightStorage::Auto ? n <= kDenseNeuronLimit
                                                      : storage == WeightStorage::Dense;
    m.synapse_slot_.resize(synapses.size());

    if (m.dense_storage_) {
        m.dense_.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (std::size_t s = 0; s < synapses.size(); ++s) {
            const SynapseDef& syn = synapses[s];
            const std::size_t slot = static_cast<std::size_t>(syn.pre) * n + syn.post;
            m.dense_[slot] = syn.weight;
            m.synapse_slot_[s] = slot;
        }
        return m;
    }

    // CSR, rows in pre order and columns ascending within each row.
    std::vector<std::size_t> degree(n, 0);
    for (const SynapseDef& syn : synapses) ++degree[syn.pre];
    m.row_ptr.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) m.row_ptr[i + 1] = m.row_ptr[i] + degree[i];
    m.col.resize(synapses.size());
    m.val.resize(synapses.size());

    std::vector<std::size_t> cursor(m.row_ptr.begin(), m.row_ptr.end() - 1);
    std::vector<std::size_t> order(synapses.size());
    for (std::size_t s = 0; s < synapses.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&synapses](std::size_t a, std::size_t b) {
        const SynapseDef& x = synapses[a];
        const SynapseDef& y = synapses[b];
        return x.pre != y.pre ? x.pre < y.pre : x.post < y.post;
    });
    for (std::size_t s : order) {
        const SynapseDef& syn = synapses[s];
        const std::size_t slot = cursor[syn.pre]++;
        m.col[slot] = syn.post;
        m.val[slot] = syn.weight;
        m.synapse_slot_[s] = slot;
    }
    return m;
}

double WeightMatrix::at(int pre, int post) const {
    if (dense_storage_) return dense_[static_cast<std::size_t>(pre) * n_ + post];
    const auto begin = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[pre]);
    const auto end = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[pre + 1]);
    const auto it = std::lower_bound(begin, end, post);
    if (it == end || *it != post) return 0.0;
    return val[static_cast<std::size_t>(it - col.begin())];
}

void WeightMatrix::propagate(const std::vector<int>& spiked, std::span<double> u) const {
    if (dense_storage_) {
        for (int i : spiked) {
            const double* row = dense_.data() + static_cast<std::size_t>(i) * n_;
            double* out = u.data();
            for (int j = 0; j < n_; ++j) out[j] += row[j];
        }
        return;
    }
    for (int i : spiked) {
        const std::size_t begin = row_ptr[i];
        const std::size_t end = row_ptr[i + 1];
        for (std::size_t k = begin; k < end; ++k) u[col[k]] += val[k];
    }
}

double WeightMatrix::slot_get(std::size_t slot) const {
    return dense_storage_ ? dense_[slot] : val[slot];
}

void WeightMatrix::slot_set(std::size_t slot, double w) {
    (dense_storage_ ? dense_[slot] : val[slot]) = w;
}

void apply_leak(std::span<double> membrane, std::span<const double> leaks,
                std::span<const double> resets) {
    for (std::size_t j = 0; j < membrane.size(); ++j)
        membrane[j] = leak_toward(membrane[j], leaks[j], resets[j]);
}

MatState mat_init(const NetworkDef& net, const SimulationConfig& cfg,
                  WeightStorage storage) {
    throw_first("mat_init", validate_network(net));

    const int n = net.neuron_count();
    for (int i = 0; i < n; ++i) {
        const NeuronParams& p = net.neurons[i];
        if (p.behavior != "lif")
            throw std::invalid_argument("mat_init: homogeneous backend supports \"lif\" only; "
                                        "neuron " + std::to_string(i) + " has behavior \"" +
                                        p.behavior + "\"");
        if (p.axonal_delay != 0)
            throw std::invalid_argument("mat_init: unit delays required; neuron " +
                                        std::to_string(i) + " has axonal_delay " +
                                        std::to_string(p.axonal_delay) +
                                        " (run delay lowering first)");
    }
    for (std::size_t s = 0; s < net.synapses.size(); ++s)
        if (net.synapses[s].delay != 1)
            throw std::invalid_argument("mat_init: unit delays required; synapses[" +
                                        std::to_string(s) + "] has delay " +
                                        std::to_string(net.synapses[s].delay) +
                                        " (run delay lowering first)");
    if (cfg.stdp) throw_first("mat_init", validate_stdp(*cfg.stdp));

    MatState st;
    st.n = n;
    st.membrane.resize(n);
    st.thresholds.resize(n);
    st.leaks.resize(n);
    st.resets.resize(n);
    st.refractory_periods.resize(n);
    for (int i = 0; i < n; ++i) {
        const NeuronParams& p = net.neurons[i];
        st.membrane[i] = p.reset;
        st.thresholds[i] = p.threshold;
        st.leaks[i] = p.leak;
        st.resets[i] = p.reset;
        st.refractory_periods[i] = p.refractory;
    }
    st.refractory_counters.assign(n, 0);
    st.spikes_prev.assign(n, 0);
    st.weights = WeightMatrix::build(n, net.synapses, storage);
    st.scratch_u.resize(n);

    if (cfg.stdp) {
        st.stdp_window = cfg.stdp->window;
        st.history.assign(st.stdp_window + 1, std::vector<std::uint8_t>(n, 0));
        st.scratch_pot.resize(n);
        st.scratch_dep.resize(n);
        for (std::size_t s = 0; s < net.synapses.size(); ++s) {
            const SynapseDef& syn = net.synapses[s];
            if (syn.stdp_enabled)
                st.stdp_synapses.push_back({syn.pre, syn.post, st.weights.slot(s)});
        }
    }
    return st;
}

const std::vector<int>& mat_step(MatState& st, std::span<const double> ext) {
    const int n = st.n;
    if (!ext.empty() && static_cast<int>(ext.size()) != n)
        throw std::invalid_argument("mat_step: ext must have one amplitude per neuron");

    double* u = st.scratch_u.data();
    for (int j = 0; j < n; ++j)
        u[j] = leak_toward(st.membrane[j], st.leaks[j], st.resets[j]);

    st.weights.propagate(st.spiked_list, st.scratch_u);

    if (!ext.empty())
        for (int j = 0; j < n; ++j) u[j] += ext[j];

    st.spiked_list.clear();
    for (int j = 0; j < n; ++j) {
        bool spiked = u[j] > st.thresholds[j];
        if (st.refractory_counters[j] > 0) {
            spiked = false;
            st.refractory_counters[j] -= 1;
            u[j] = st.resets[j];  // state held at reset during refractory
        }
        if (spiked) {
            st.membrane[j] = st.resets[j];
            st.refractory_counters[j] = st.refractory_periods[j];
            st.spiked_list.push_back(j);
        } else {
            st.membrane[j] = u[j];
        }
        st.spikes_prev[j] = spiked ? 1 : 0;
    }

    if (!st.history.empty()) {
        std::vector<std::uint8_t>& slot = st.history[st.history_next];
        std::copy(st.spikes_prev.begin(), st.spikes_prev.end(), slot.begin());
        st.history_next = (st.history_next + 1) % static_cast<int>(st.history.size());
        st.history_pushed += 1;
    }
    st.step_index += 1;
    return st.spiked_list;
}

void apply_stdp(MatState& st, const StdpConfig& cfg) {
    throw_first("apply_stdp", validate_stdp(cfg));
    if (st.history.empty())
        throw std::logic_error("apply_stdp: state was initialized without an stdp config");
    if (cfg.window != st.stdp_window)
        throw std::invalid_argument("apply_stdp: window does not match the one given at init");
    if (st.history_pushed == 0)
        throw std::logic_error("apply_stdp: spike history is empty (call mat_step first)");

    const int n = st.n;
    const int cap = static_cast<int>(st.history.size());
    const int newest = (st.history_next - 1 + cap) % cap;

    // Per-neuron pairing credit over the window:
    //   pot[i] = sum_k a_plus[k]  * s_i[t-k]
    //   dep[i] = sum_k a_minus[k] * s_i[t-k]
    std::fill(st.scratch_pot.begin(), st.scratch_pot.end(), 0.0);
    std::fill(st.scratch_dep.begin(), st.scratch_dep.end(), 0.0);
    const std::int64_t t = st.history_pushed - 1;  // step of the newest vector
    for (int k = 1; k <= cfg.window; ++k) {
        if (k > t) break;  // nothing spiked before step 0
        const std::vector<std::uint8_t>& past = st.history[(newest - k + 2 * cap) % cap];
        const double ap = cfg.a_plus[k - 1];
        const double am = cfg.a_minus[k - 1];
        for (int i = 0; i < n; ++i) {
            if (past[i]) {
                st.scratch_pot[i] += ap;
                st.scratch_dep[i] += am;
            }
        }
    }

    const std::vector<std::uint8_t>& now = st.history[newest];
    for (const StdpSynapse& syn : st.stdp_synapses) {
        double dw = 0.0;
        if (now[syn.post]) dw += st.scratch_pot[syn.pre];
        if (now[syn.pre]) dw -= st.scratch_dep[syn.post];
        const double w = std::clamp(st.weights.slot_get(syn.slot) + dw, cfg.w_min, cfg.w_max);
        st.weights.slot_set(syn.slot, w);
    }
}

RunResult mat_run(const NetworkDef& net, const SimulationConfig& cfg,
                  const StimulusSchedule& stim, WeightStorage storage) {
    if (cfg.steps < 1) throw std::invalid_argument("mat_run: steps must be >= 1");
    MatState st = mat_init(net, cfg, storage);
    throw_first("mat_run", validate_stimulus(stim, st.n, cfg.steps));

    std::vector<StimulusEntry> sorted = stim.entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const StimulusEntry& a, const StimulusEntry& b) { return a.step < b.step; });

    RunResult result;
    result.raster.neuron_count = st.n;
    result.raster.step_count = cfg.steps;

    std::vector<double> ext(st.n, 0.0);
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
            mat_step(st, any_ext ? std::span<const double>(ext) : std::span<const double>());
        if (cfg.stdp) apply_stdp(st, *cfg.stdp);

        for (int j : spiked) result.raster.events.push_back({t, j});
        if (cfg.record_membrane) result.membrane_trace.push_back(st.membrane);

        for (std::size_t k = first; k < cursor; ++k) ext[sorted[k].neuron] = 0.0;
    }
    return result;
}

} // namespace spikeforge
