// Exercises the installed CLI binary end to end: exit codes, config parsing,
// and byte-identical reruns.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& args) {
    std::string cmd = std::string(BOLAB_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main() {
    if (std::system("rm -rf cli_out_a cli_out_b && mkdir -p cli_out_a cli_out_b") != 0) {
        std::cerr << "FAIL: cannot prepare scratch directories\n";
        return 1;
    }

    expect(run("run --scenario axioms --set fixture=dyadic --set depth=3 --out cli_out_a") == 0,
           "axioms scenario exits 0");
    expect(run("run --scenario unknown --out cli_out_a") == 2, "unknown scenario exits 2");
    expect(run("run --scenario axioms --set bogus=1 --out cli_out_a") == 2,
           "unknown key exits 2");
    expect(run("run --scenario domination --out cli_out_a") == 2,
           "randomized scenario without seed exits 2");
    expect(run("run --out cli_out_a") == 2, "missing scenario exits 2");
    expect(run("run --scenario axioms --set depth=abc --out cli_out_a") == 2,
           "malformed numeric value exits 2");
    expect(run("run --scenario domination --set depth=3 --seed notanumber --out cli_out_a") == 2,
           "malformed seed exits 2");

    // Deterministic reruns produce byte-identical CSV.
    expect(run("run --scenario domination --set depth=3 --set runs=3 --seed 7 --out cli_out_a") == 0,
           "domination run exits 0");
    expect(run("run --scenario domination --set depth=3 --set runs=3 --seed 7 --out cli_out_b") == 0,
           "domination rerun exits 0");
    expect(slurp("cli_out_a/domination.csv") == slurp("cli_out_b/domination.csv"),
           "identical (config, seed) gives identical CSV");
    expect(!slurp("cli_out_a/domination.csv").empty(), "domination CSV not empty");

    // Config file path: same settings through a file.
    {
        std::ofstream cfg("cli_out_a/dom.cfg");
        cfg << "scenario v1\nname domination\ndepth 3\nruns 3\nseed 7\n";
    }
    expect(run("run --config cli_out_a/dom.cfg --out cli_out_b") == 0, "config file run exits 0");
    expect(slurp("cli_out_a/domination.csv") == slurp("cli_out_b/domination.csv"),
           "config file matches --set route");

    {
        std::ofstream cfg("cli_out_a/bad.cfg");
        cfg << "scenario v1\nname domination\nunknown_key 3\nseed 7\n";
    }
    expect(run("run --config cli_out_a/bad.cfg --out cli_out_b") == 2,
           "config with unknown key exits 2");

    expect(run("run --scenario covering --out cli_out_a") == 0, "covering scenario exits 0");
    expect(run("run --scenario modulation --seed 3 --out cli_out_a") == 0,
           "modulation scenario exits 0");
    expect(run("run --scenario bo-constants --set depth=3 --set signs=random --seed 5 "
               "--out cli_out_a") == 0,
           "bo-constants scenario exits 0");
    expect(run("run --scenario weights --set depth=3 --seed 6 --out cli_out_a") == 0,
           "weights scenario exits 0");
    expect(run("run --scenario buckley --set depth=4 --set grid_min=-0.5 --set grid_max=0.5 "
               "--set grid_step=0.25 --seed 2 --out cli_out_a") == 0,
           "buckley scenario exits 0");
    expect(run("run --scenario cz-demo --set n=8 --seed 4 --out cli_out_a") == 0,
           "cz-demo scenario exits 0");
    expect(run("run --scenario axioms --set fixture=arc --set n=8 --out cli_out_a") == 0,
           "arc axioms scenario exits 0");

    if (failures == 0) std::puts("cli tests: all passed");
    return failures == 0 ? 0 : 1;
}
