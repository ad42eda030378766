// Command line front end: network generation, delay lowering, simulation,
// differential comparison, and benchmarking over the io file formats.

#include "spikeforge/abm_engine.hpp"
#include "spikeforge/bench.hpp"
#include "spikeforge/io.hpp"
#include "spikeforge/lowering.hpp"
#include "spikeforge/mat_engine.hpp"
#include "spikeforge/netgen.hpp"
#include "spikeforge/oracle.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace {

using namespace spikeforge;

constexpr int kExitDiverged = 1;
constexpr int kExitError = 2;

bool needs_lowering(const NetworkDef& net) {
    for (const NeuronParams& p : net.neurons)
        if (p.axonal_delay != 0) return true;
    for (const SynapseDef& s : net.synapses)
        if (s.delay != 1) return true;
    return false;
}

struct BackendRun {
    SpikeRaster raster;
    double wall_seconds = 0.0;
};

/// Runs one backend on (possibly delay-carrying) input. The mat backend
/// lowers delays first, with a notice, and reports only original ids.
BackendRun run_backend(const std::string& backend, const NetworkDef& net,
                       const SimulationConfig& cfg, const StimulusSchedule& stim) {
    using clock = std::chrono::steady_clock;
    BackendRun out;
    if (backend == "mat") {
        const NetworkDef* target = &net;
        LoweredNetwork lowered;
        bool restricted = false;
        if (needs_lowering(net)) {
            lowered = lower_delays(net);
            std::cerr << "note: non-unit delays present; lowered with "
                      << lowered.proxy_map.size()
                      << " proxy neurons for the mat backend\n";
            target = &lowered.net;
            restricted = true;
        }
        const clock::time_point start = clock::now();
        RunResult result = mat_run(*target, cfg, stim);
        out.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
        out.raster = restricted ? restrict_raster(result.raster, net.neuron_count())
                                : std::move(result.raster);
    } else if (backend == "abm") {
        const clock::time_point start = clock::now();
        RunResult result = abm_run(net, cfg, stim);
        out.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
        out.raster = std::move(result.raster);
    } else if (backend == "oracle") {
        const clock::time_point start = clock::now();
        out.raster = oracle_run(net, cfg, stim);
        out.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    } else {
        throw std::invalid_argument("unknown backend \"" + backend + "\"");
    }
    return out;
}

struct RunArgs {
    std::string network_path;
    int steps = 1000;
    std::string backend = "mat";
    std::string stimulus_path;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string stdp_path;
};

int cmd_run(const RunArgs& args) {
    const NetworkDef net = parse_network(read_file(args.network_path));
    StimulusSchedule stim;
    if (!args.stimulus_path.empty()) stim = parse_stimulus(read_file(args.stimulus_path));

    SimulationConfig cfg;
    cfg.steps = args.steps;
    cfg.seed = args.seed;
    if (!args.stdp_path.empty()) {
        if (args.backend != "mat")
            throw std::invalid_argument("--stdp requires --backend mat");
        cfg.stdp = parse_stdp(read_file(args.stdp_path));
    }

    const BackendRun run = run_backend(args.backend, net, cfg, stim);
    const std::string csv = write_raster(run.raster);
    std::ostream& report = args.out_path.empty() ? std::cerr : std::cout;
    if (args.out_path.empty())
        std::cout << csv;
    else
        write_file(args.out_path, csv);
    report << "backend=" << args.backend << " neurons=" << net.neuron_count()
           << " steps=" << cfg.steps << " spikes=" << run.raster.events.size()
           << " wall_seconds=" << run.wall_seconds << "\n";
    return 0;
}

struct GenArgs {
    int neurons = 100;
    double prob = 0.25;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string stimulus_out;
    int steps = 1000;
    int inputs = 3;
    int period = 10;
    double amplitude = 2.0;
};

int cmd_gen(const GenArgs& args) {
    if (args.stimulus_out.empty()) {
        const NetworkDef net = erdos_renyi(args.neurons, args.prob, args.seed);
        write_file(args.out_path, serialize_network(net));
        std::cout << "neurons=" << net.neuron_count() << " synapses=" << net.synapses.size()
                  << " seed=" << args.seed << "\n";
        return 0;
    }
    BenchScenario scenario;
    scenario.neuron_count = args.neurons;
    scenario.connection_probability = args.prob;
    scenario.steps = args.steps;
    scenario.input_neuron_count = args.inputs;
    scenario.input_period = args.period;
    scenario.amplitude = args.amplitude;
    scenario.seed = args.seed;
    const ScenarioBundle bundle = build_scenario(scenario);
    write_file(args.out_path, serialize_network(bundle.net));
    write_file(args.stimulus_out, write_stimulus(bundle.stim));
    std::cout << "neurons=" << bundle.net.neuron_count()
              << " synapses=" << bundle.net.synapses.size()
              << " stimulus_entries=" << bundle.stim.entries.size()
              << " seed=" << args.seed << "\n";
    return 0;
}

int cmd_lower(const std::string& network_path, const std::string& out_path) {
    const NetworkDef net = parse_network(read_file(network_path));
    const LoweredNetwork lowered = lower_delays(net);
    write_file(out_path, serialize_network(annotate_proxy_metadata(lowered)));
    std::cout << "neurons=" << lowered.original_count
              << " proxies=" << lowered.proxy_map.size()
              << " synapses=" << lowered.net.synapses.size() << "\n";
    return 0;
}

struct CompareArgs {
    std::string network_path;
    int steps = 1000;
    std::string stimulus_path;
    std::uint64_t seed = 0;
    std::vector<std::string> backends;
};

int cmd_compare(const CompareArgs& args) {
    const NetworkDef net = parse_network(read_file(args.network_path));
    StimulusSchedule stim;
    if (!args.stimulus_path.empty()) stim = parse_stimulus(read_file(args.stimulus_path));
    SimulationConfig cfg;
    cfg.steps = args.steps;
    cfg.seed = args.seed;

    std::vector<SpikeRaster> rasters;
    for (const std::string& backend : args.backends)
        rasters.push_back(run_backend(backend, net, cfg, stim).raster);

    for (std::size_t i = 1; i < rasters.size(); ++i) {
        const std::vector<SpikeEvent>& a = rasters[0].events;
        const std::vector<SpikeEvent>& b = rasters[i].events;
        std::size_t k = 0;
        while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
        if (k == a.size() && k == b.size()) continue;

        const bool from_a = k < a.size() && (k == b.size() || a[k] < b[k]);
        const SpikeEvent& e = from_a ? a[k] : b[k];
        const std::string& has = from_a ? args.backends[0] : args.backends[i];
        const std::string& lacks = from_a ? args.backends[i] : args.backends[0];
        std::cout << "divergence: step " << e.step << " neuron " << e.neuron
                  << ": spike in " << has << ", none in " << lacks << "\n";
        return kExitDiverged;
    }
    std::cout << "identical\n";
    return 0;
}

struct BenchArgs {
    BenchOptions opts;
    std::string out_path;
};

int cmd_bench(const BenchArgs& args) {
    if (args.opts.parallel)
        std::cerr << "warning: parallel cells contend for cores; "
                     "wall times may interfere\n";
    // Without --out the CSV itself goes to stdout, so rows stream there and
    // the human-readable matrix moves to stderr.
    const bool csv_to_stdout = args.out_path.empty();
    std::ostream& row_sink = csv_to_stdout ? std::cout : std::cerr;
    if (csv_to_stdout) std::cout << kBenchHeader << "\n";

    const std::vector<BenchRow> rows =
        run_bench(args.opts, [&row_sink, csv_to_stdout](const BenchRow& row) {
            if (csv_to_stdout)
                row_sink << format_bench_row(row) << std::flush;
            else
                row_sink << "done: " << row.backend << " n=" << row.neurons
                         << " p=" << row.connection_probability << "\n";
        });

    if (!csv_to_stdout) write_file(args.out_path, write_bench(rows));
    (csv_to_stdout ? std::cerr : std::cout) << format_bench_matrix(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spikeforge: discrete-time spiking network simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "spikeforge 0.1.0");

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Simulate a network and write its spike raster");
    run->add_option("--network", run_args.network_path, "Network JSON file")
        ->required();
    run->add_option("--steps", run_args.steps, "Simulation steps")
        ->capture_default_str();
    run->add_option("--backend", run_args.backend, "Simulation backend")
        ->check(CLI::IsMember({"mat", "abm", "oracle"}))
        ->capture_default_str();
    run->add_option("--stimulus", run_args.stimulus_path, "Stimulus CSV file");
    run->add_option("--seed", run_args.seed, "Random seed")
        ->envname("SPIKEFORGE_SEED");
    run->add_option("--out", run_args.out_path, "Raster CSV output (stdout if omitted)");
    run->add_option("--stdp", run_args.stdp_path, "STDP config JSON (mat backend only)");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a random network (and stimulus)");
    gen->add_option("--neurons", gen_args.neurons, "Neuron count")
        ->capture_default_str();
    gen->add_option("--prob", gen_args.prob, "Connection probability")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "Random seed")
        ->envname("SPIKEFORGE_SEED");
    gen->add_option("--out", gen_args.out_path, "Network JSON output")
        ->required();
    gen->add_option("--stimulus-out", gen_args.stimulus_out,
                    "Also emit the periodic stimulus schedule");
    gen->add_option("--steps", gen_args.steps, "Stimulus horizon")
        ->capture_default_str();
    gen->add_option("--inputs", gen_args.inputs, "Stimulated input neurons")
        ->capture_default_str();
    gen->add_option("--period", gen_args.period, "Stimulation period")
        ->capture_default_str();
    gen->add_option("--amplitude", gen_args.amplitude, "Stimulus amplitude")
        ->capture_default_str();

    std::string lower_network, lower_out;
    CLI::App* lower = app.add_subcommand("lower", "Rewrite delays as proxy-neuron chains");
    lower->add_option("--network", lower_network, "Network JSON file")->required();
    lower->add_option("--out", lower_out, "Lowered network JSON output")->required();

    CompareArgs cmp_args;
    CLI::App* compare = app.add_subcommand("compare", "Differential run across backends");
    compare->add_option("--network", cmp_args.network_path, "Network JSON file")
        ->required();
    compare->add_option("--steps", cmp_args.steps, "Simulation steps")
        ->capture_default_str();
    compare->add_option("--stimulus", cmp_args.stimulus_path, "Stimulus CSV file");
    compare->add_option("--seed", cmp_args.seed, "Random seed")
        ->envname("SPIKEFORGE_SEED");
    compare->add_option("--backends", cmp_args.backends, "Backends to compare")
        ->delimiter(',')
        ->check(CLI::IsMember({"mat", "abm", "oracle"}))
        ->expected(2, 3);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Benchmark sweep over network sizes");
    bench->add_option("--sizes", bench_args.opts.sizes, "Neuron counts")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--probs", bench_args.opts.probs, "Connection probabilities")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--steps", bench_args.opts.steps, "Steps per cell")
        ->capture_default_str();
    bench->add_option("--backends", bench_args.opts.backends, "Backends to time")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--seed", bench_args.opts.seed, "Random seed")
        ->envname("SPIKEFORGE_SEED");
    bench->add_option("--amplitude", bench_args.opts.amplitude, "Stimulus amplitude")
        ->capture_default_str();
    bench->add_option("--timeout", bench_args.opts.timeout_seconds,
                      "Per-cell wall time limit in seconds");
    bench->add_flag("--parallel", bench_args.opts.parallel, "Run cells concurrently");
    bench->add_option("--out", bench_args.out_path, "Results CSV (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (lower->parsed()) return cmd_lower(lower_network, lower_out);
        if (compare->parsed()) return cmd_compare(cmp_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
