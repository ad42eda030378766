#include "spikeforge/bench.hpp"

#include "spikeforge/abm_engine.hpp"
#include "spikeforge/mat_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace spikeforge {

namespace {

struct LoopResult {
    std::optional<double> wall;  // empty on timeout
    long long spikes = 0;
};

// The clock brackets exactly this loop; engine construction, scenario
// generation, and stimulus bucketing are done by the caller beforehand.
template <typename StepFn>
LoopResult timed_loop(int steps, int n,
                      const std::vector<std::vector<std::pair<int, double>>>& per_step,
                      std::optional<double> timeout_seconds, StepFn&& do_step) {
    std::vector<double> ext(static_cast<std::size_t>(n), 0.0);
    LoopResult out;
    using clock = std::chrono::steady_clock;
    const clock::time_point start = clock::now();
    std::optional<clock::time_point> deadline;
    if (timeout_seconds)
        deadline = start + std::chrono::duration_cast<clock::duration>(
                               std::chrono::duration<double>(*timeout_seconds));
    for (int t = 0; t < steps; ++t) {
        if (deadline && clock::now() > *deadline) {
            out.spikes = -1;
            return out;
        }
        for (const auto& [neuron, amp] : per_step[t]) ext[neuron] += amp;
        const std::vector<int>& spiked = do_step(ext);
        out.spikes += static_cast<long long>(spiked.size());
        for (const auto& [neuron, amp] : per_step[t]) ext[neuron] = 0.0;
    }
    out.wall = std::chrono::duration<double>(clock::now() - start).count();
    return out;
}

std::string sig4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace

BenchRow run_bench_cell(const std::string& backend, const BenchScenario& scenario,
                        std::optional<double> timeout_seconds) {
    if (backend != "mat" && backend != "abm")
        throw std::invalid_argument("bench supports backends \"mat\" and \"abm\" (got \"" +
                                    backend + "\")");

    const ScenarioBundle bundle = build_scenario(scenario);
    const int n = bundle.net.neuron_count();
    std::vector<std::vector<std::pair<int, double>>> per_step(
        static_cast<std::size_t>(scenario.steps));
    for (const StimulusEntry& e : bundle.stim.entries)
        per_step[e.step].emplace_back(e.neuron, e.amplitude);

    LoopResult loop;
    if (backend == "mat") {
        MatState state = mat_init(bundle.net, bundle.cfg);
        loop = timed_loop(scenario.steps, n, per_step, timeout_seconds,
                          [&state](std::span<const double> ext) -> const std::vector<int>& {
                              return mat_step(state, ext);
                          });
    } else {
        AbmWorld world(bundle.net, bundle.cfg);
        loop = timed_loop(scenario.steps, n, per_step, timeout_seconds,
                          [&world](std::span<const double> ext) -> const std::vector<int>& {
                              return world.step(ext);
                          });
    }

    BenchRow row;
    row.backend = backend;
    row.neurons = scenario.neuron_count;
    row.connection_probability = scenario.connection_probability;
    row.steps = scenario.steps;
    row.wall_time_seconds = loop.wall;
    row.spike_count = loop.spikes;
    row.seed = scenario.seed;
    return row;
}

std::vector<BenchRow> run_bench(const BenchOptions& opts, const BenchRowCallback& on_row) {
    if (opts.steps < 1) throw std::invalid_argument("bench: steps must be >= 1");
    if (opts.backends.empty())
        throw std::invalid_argument("bench: at least one backend required");
    if (opts.sizes.empty() || opts.probs.empty())
        throw std::invalid_argument("bench: sizes and probs must be non-empty");

    std::vector<std::string> cell_backend;
    std::vector<BenchScenario> cell_scenario;
    for (const std::string& backend : opts.backends)
        for (int size : opts.sizes)
            for (double p : opts.probs) {
                BenchScenario s;
                s.neuron_count = size;
                s.connection_probability = p;
                s.steps = opts.steps;
                s.input_neuron_count = opts.input_neuron_count;
                s.input_period = opts.input_period;
                s.amplitude = opts.amplitude;
                s.seed = opts.seed;
                cell_backend.push_back(backend);
                cell_scenario.push_back(s);
            }

    std::vector<BenchRow> rows(cell_backend.size());
    if (!opts.parallel) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i] = run_bench_cell(cell_backend[i], cell_scenario[i], opts.timeout_seconds);
            if (on_row) on_row(rows[i]);
        }
        return rows;
    }

    std::vector<std::exception_ptr> errors(rows.size());
    std::vector<std::thread> workers;
    workers.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        workers.emplace_back([&, i] {
            try {
                rows[i] = run_bench_cell(cell_backend[i], cell_scenario[i],
                                         opts.timeout_seconds);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    for (std::thread& w : workers) w.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    if (on_row)
        for (const BenchRow& row : rows) on_row(row);
    return rows;
}

std::string format_bench_matrix(const std::vector<BenchRow>& rows) {
    if (rows.empty()) return "";

    std::vector<std::string> backends;
    std::vector<int> sizes;
    std::vector<double> probs;
    for (const BenchRow& r : rows) {
        if (std::find(backends.begin(), backends.end(), r.backend) == backends.end())
            backends.push_back(r.backend);
        if (std::find(sizes.begin(), sizes.end(), r.neurons) == sizes.end())
            sizes.push_back(r.neurons);
        if (std::find(probs.begin(), probs.end(), r.connection_probability) == probs.end())
            probs.push_back(r.connection_probability);
    }
    std::sort(sizes.begin(), sizes.end());
    std::sort(probs.begin(), probs.end());

    const auto find_cell = [&rows](const std::string& backend, int size,
                                   double p) -> const BenchRow* {
        for (const BenchRow& r : rows)
            if (r.backend == backend && r.neurons == size && r.connection_probability == p)
                return &r;
        return nullptr;
    };

    constexpr int kCol = 11;
    std::ostringstream out;
    out << "wall seconds over " << rows.front().steps << " steps, seed "
        << rows.front().seed << "\n";
    for (const std::string& backend : backends) {
        out << "\nbackend " << backend << "\n";
        out << std::string(kCol - 7, ' ') << "neurons";
        for (double p : probs) {
            const std::string head = "p=" + sig4(p);
            out << std::string(kCol - head.size(), ' ') << head;
        }
        out << "\n";
        for (int size : sizes) {
            const std::string label = std::to_string(size);
            out << std::string(kCol - label.size(), ' ') << label;
            for (double p : probs) {
                const BenchRow* cell = find_cell(backend, size, p);
                std::string text = "-";
                if (cell)
                    text = cell->wall_time_seconds ? sig4(*cell->wall_time_seconds)
                                                   : "timeout";
                out << std::string(kCol - text.size(), ' ') << text;
            }
            out << "\n";
        }
    }
    return std::move(out).str();
}

} // namespace spikeforge
