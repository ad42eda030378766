#include "doctest.h"

#include "spikeforge/io.hpp"
#include "spikeforge/model.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using namespace spikeforge;

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "spikeforge_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string at(const char* name) { return (work_dir() / name).string(); }

CliResult cli(const std::string& args, const std::string& env = "") {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = env + std::string(SPIKEFORGE_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

// Generated network plus periodic stimulus shared by the run/compare
// cases; gen is deterministic so repeated calls rewrite the same bytes.
void make_run_fixture() {
    const CliResult r = cli("gen --neurons 20 --prob 0.5 --seed 1 --steps 100 --out " +
                            at("run.json") + " --stimulus-out " + at("run_stim.csv"));
    REQUIRE(r.code == 0);
}

// Two-neuron net whose only synapse has delay 3; the drive below makes
// neuron 0 fire at t=0 so neuron 1 must fire at t=3.
void write_delayed_fixture() {
    NetworkDef net;
    net.neurons.resize(2);
    net.synapses.push_back({0, 1, 2.0, 3, false});
    write_file(at("delayed.json"), serialize_network(net));
    StimulusSchedule stim;
    stim.entries.push_back({0, 0, 2.0});
    write_file(at("kick.csv"), write_stimulus(stim));
}

} // namespace

TEST_CASE("help and version exit cleanly") {
    CHECK(cli("--help").code == 0);
    const CliResult v = cli("--version");
    CHECK(v.code == 0);
    CHECK(v.out.find("spikeforge 0.1.0") != std::string::npos);
    CHECK(cli("").code != 0);
}

TEST_CASE("gen writes a parseable network and reports its shape") {
    const CliResult r =
        cli("gen --neurons 30 --prob 0.5 --seed 3 --out " + at("net30.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("neurons=30") != std::string::npos);
    CHECK(r.out.find("seed=3") != std::string::npos);
    const NetworkDef net = parse_network(read_file(at("net30.json")));
    CHECK(net.neuron_count() == 30);
    CHECK(!net.synapses.empty());
}

TEST_CASE("gen is deterministic in the seed") {
    CHECK(cli("gen --neurons 25 --prob 0.4 --seed 8 --out " + at("a.json")).code == 0);
    CHECK(cli("gen --neurons 25 --prob 0.4 --seed 8 --out " + at("b.json")).code == 0);
    CHECK(read_file(at("a.json")) == read_file(at("b.json")));
}

TEST_CASE("gen emits the periodic stimulus when asked") {
    const CliResult r = cli("gen --neurons 20 --prob 0.25 --seed 1 --steps 100 --inputs 2 "
                            "--period 10 --out " +
                            at("net20.json") + " --stimulus-out " + at("stim20.csv"));
    CHECK(r.code == 0);
    CHECK(r.out.find("stimulus_entries=20") != std::string::npos);
    const StimulusSchedule stim = parse_stimulus(read_file(at("stim20.csv")));
    CHECK(stim.entries.size() == 20);
}

TEST_CASE("run streams raster csv to stdout and stats to stderr") {
    make_run_fixture();
    const CliResult r = cli("run --network " + at("run.json") + " --stimulus " +
                            at("run_stim.csv") + " --steps 100 --backend mat");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("step,neuron_id\n", 0) == 0);
    CHECK(r.err.find("backend=mat") != std::string::npos);
    CHECK(r.err.find("spikes=") != std::string::npos);
    CHECK(!parse_raster(r.out).events.empty());
}

TEST_CASE("identical invocations write byte-identical raster files") {
    make_run_fixture();
    const std::string common = "run --network " + at("run.json") + " --stimulus " +
                               at("run_stim.csv") + " --steps 100 --backend ";
    CHECK(cli(common + "mat --out " + at("r1.csv")).code == 0);
    CHECK(cli(common + "mat --out " + at("r2.csv")).code == 0);
    CHECK(cli(common + "abm --out " + at("r3.csv")).code == 0);
    const std::string first = read_file(at("r1.csv"));
    CHECK(first == read_file(at("r2.csv")));
    CHECK(first == read_file(at("r3.csv")));
}

TEST_CASE("compare reports agreement across all three backends") {
    make_run_fixture();
    const CliResult r = cli("compare --network " + at("run.json") + " --stimulus " +
                            at("run_stim.csv") + " --steps 100 --backends mat,abm,oracle");
    CHECK(r.code == 0);
    CHECK(r.out == "identical\n");
}

TEST_CASE("lower writes a proxy-annotated network") {
    write_delayed_fixture();
    const CliResult r =
        cli("lower --network " + at("delayed.json") + " --out " + at("lowered.json"));
    CHECK(r.code == 0);
    CHECK(r.out == "neurons=2 proxies=2 synapses=3\n");
    const NetworkDef lowered = parse_network(read_file(at("lowered.json")));
    CHECK(lowered.neuron_count() == 4);
    CHECK(lowered.metadata.at("original_count") == "2");
    CHECK(lowered.metadata.at("proxy_map") == "[[0,1,1],[0,1,2]]");
}

TEST_CASE("run lowers delays for the mat backend and reports original ids") {
    write_delayed_fixture();
    const CliResult r = cli("run --network " + at("delayed.json") + " --stimulus " +
                            at("kick.csv") + " --steps 8 --backend mat");
    CHECK(r.code == 0);
    CHECK(r.err.find("lowered with 2 proxy neurons") != std::string::npos);
    const SpikeRaster raster = parse_raster(r.out);
    CHECK(raster.events == std::vector<SpikeEvent>{{0, 0}, {3, 1}});
}

TEST_CASE("the seed can come from the environment") {
    const CliResult r =
        cli("gen --neurons 10 --prob 0.5 --out " + at("env.json"), "SPIKEFORGE_SEED=9 ");
    CHECK(r.code == 0);
    CHECK(r.out.find("seed=9") != std::string::npos);
}

TEST_CASE("bench streams csv rows to stdout and the matrix to stderr") {
    const CliResult r =
        cli("bench --sizes 10,20 --probs 0.5 --steps 20 --backends mat,abm --seed 2");
    CHECK(r.code == 0);
    const std::vector<BenchRow> rows = parse_bench(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].backend == "mat");
    CHECK(rows[3].backend == "abm");
    CHECK(r.err.find("backend mat") != std::string::npos);
    CHECK(r.err.find("backend abm") != std::string::npos);
}

TEST_CASE("bench with --out writes the csv file and prints the matrix") {
    const CliResult r = cli("bench --sizes 10 --probs 0.5,1.0 --steps 20 --backends mat "
                            "--seed 2 --out " +
                            at("bench.csv"));
    CHECK(r.code == 0);
    const std::vector<BenchRow> rows = parse_bench(read_file(at("bench.csv")));
    REQUIRE(rows.size() == 2);
    CHECK(r.out.find("backend mat") != std::string::npos);
    CHECK(r.err.find("done: mat") != std::string::npos);
}

TEST_CASE("failures surface as clean errors on stderr") {
    const CliResult missing = cli("run --network " + at("no_such_file.json"));
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error: cannot open file") != std::string::npos);

    write_file(at("broken.json"), "{ not json");
    const CliResult malformed = cli("run --network " + at("broken.json"));
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("malformed JSON") != std::string::npos);

    const CliResult bad_flag = cli("run --network " + at("broken.json") + " --backend warp");
    CHECK(bad_flag.code != 0);
    CHECK(bad_flag.code != 2);

    write_delayed_fixture();
    const CliResult stdp_abm = cli("run --network " + at("delayed.json") +
                                   " --backend abm --stdp " + at("delayed.json"));
    CHECK(stdp_abm.code == 2);
    CHECK(stdp_abm.err.find("--stdp requires --backend mat") != std::string::npos);
}
