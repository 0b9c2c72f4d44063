#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wavecore/chain.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/sample_stream.hpp"

using namespace wavecore;
namespace fs = std::filesystem;

namespace {

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wavecore_chain_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int cli(const std::string& args) {
    const std::string cmd = std::string(WAVECORE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("ideal channel loopback through the chain") {
    auto p = default_parameters(Waveform::FbmcOqam);
    p.snr_db = std::numeric_limits<double>::infinity();
    const auto fbmc = run_chain(p, 4);
    CHECK(fbmc.mse_per_subcarrier.size() == 128);
    CHECK(max_of(fbmc.mse_per_subcarrier) <= 1e-6);
    CHECK(fbmc.bit_errors == 0);

    auto q = default_parameters(Waveform::CpOfdm);
    q.snr_db = std::numeric_limits<double>::infinity();
    const auto ofdm = run_chain(q, 4);
    CHECK(max_of(ofdm.mse_per_subcarrier) <= 1e-24);
    CHECK(ofdm.num_bits == 4u * 128u * 16u * 2u);
}

TEST_CASE("results do not depend on thread count") {
    auto p = default_parameters(Waveform::FbmcOqam);
    p.channel_profile = "ITU_PedA";
    p.channel_mode = ChannelMode::Ergodic;
    p.snr_db = 10.0;
    p.seed = 77;
    const auto a = run_chain(p, 12, 1);
    const auto b = run_chain(p, 12, 4);
    CHECK(a == b);
    p.seed = 78;
    CHECK_FALSE(run_chain(p, 12, 4) == a);
}

TEST_CASE("inactive subcarriers carry no bits") {
    auto p = default_parameters(Waveform::CpOfdm);
    p.active_subcarriers = 64;
    p.snr_db = 30.0;
    const auto r = run_chain(p, 2);
    CHECK(r.num_bits == 2u * 64u * 16u * 2u);
}

TEST_CASE("synchronization and preamble estimation inside the chain") {
    for (auto w : {Waveform::FbmcOqam, Waveform::CpOfdm}) {
        auto p = default_parameters(w);
        p.channel_profile = "ITU_PedA";
        p.channel_mode = ChannelMode::Ergodic;
        p.estimation = EstimationMethod::PreambleLs;
        p.snr_db = 30.0;
        p.cfo_normalized = 0.2;
        p.timing_offset = 9;
        const auto r = run_chain(p, 10);
        INFO(std::string(to_string(w)));
        CHECK(r.ber < 1e-2);
        CHECK(10.0 * std::log10(mean_of(r.mse_per_subcarrier)) < -15.0);
    }
}

TEST_CASE("mobility runs through the block-fading channel") {
    auto p = default_parameters(Waveform::FbmcOqam);
    p.channel_profile = "ITU_VehA";
    p.velocity_mps = 30.0;
    p.snr_db = 25.0;
    const auto r = run_chain(p, 4);
    CHECK(r.num_trials == 4);
    CHECK(r.ber < 0.05);
}

TEST_CASE("stage failures are reported by stage") {
    auto p = default_parameters(Waveform::CpOfdm);
    try {
        (void)run_chain(p, 0);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "configuration");
    }
    p.snr_db = -40.0;
    p.cfo_normalized = 0.1;
    try {
        (void)run_chain(p, 2);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "synchronization");
    }
}

TEST_CASE("CLI run writes byte-identical outputs for identical inputs") {
    const auto dir = scratch("cli_run");
    std::ofstream(dir / "c.cfg") << "waveform = FBMC-OQAM\nchannel_profile = ITU_VehA\nsnr_db = 15\n";
    const auto cfg = (dir / "c.cfg").string();
    REQUIRE(cli("run --config " + cfg + " --seed 5 --trials 8 --out " + (dir / "a").string()) == 0);
    REQUIRE(cli("run --config " + cfg + " --seed 5 --trials 8 --threads 1 --out " + (dir / "b").string()) == 0);
    for (const char* f : {"mse.csv", "psd.csv", "summary.csv", "config.echo"}) {
        CHECK(fs::exists(dir / "a" / f));
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    CHECK(read_report(dir / "a").config.seed == 5);
    fs::remove_all(dir);
}

TEST_CASE("CLI exit codes") {
    const auto dir = scratch("cli_codes");
    std::ofstream(dir / "bad.cfg") << "waveform = FBMC-OQAM\nnum_subcarriers = 127\n";
    std::ofstream(dir / "unknown.cfg") << "subcarriers = 128\n";
    std::ofstream(dir / "fail.cfg") << "waveform = CP-OFDM\nsnr_db = -40\ncfo_normalized = 0.1\n";
    std::ofstream(dir / "ok.cfg") << "waveform = CP-OFDM\n";
    CHECK(cli("run --config " + (dir / "bad.cfg").string() + " --out " + (dir / "o").string()) == 2);
    CHECK(cli("run --config " + (dir / "unknown.cfg").string() + " --out " + (dir / "o").string()) == 2);
    CHECK(cli("run --config " + (dir / "missing.cfg").string()) == 2);
    CHECK(cli("run") == 2);
    CHECK(cli("run --config " + (dir / "fail.cfg").string() + " --trials 2 --out " + (dir / "o").string()) == 3);
    CHECK(cli("psd --config " + (dir / "ok.cfg").string() + " --out " + (dir / "p").string()) == 0);
    CHECK(parse_psd_csv(slurp(dir / "p" / "psd.csv")).freq_hz.size() == 1024);
    CHECK(cli("psd --config " + (dir / "ok.cfg").string() + " --segment 100 --out " + (dir / "p").string()) == 2);
    fs::remove_all(dir);
}

TEST_CASE("CLI filter dump") {
    const auto dir = scratch("cli_filter");
    REQUIRE(cli("filter dump --k 4 --subcarriers 16 > " + (dir / "g.csv").string() + " && true") == 0);
    CHECK(cli("filter dump --k 7 --subcarriers 16") == 2);
    fs::remove_all(dir);
}

TEST_CASE("CLI modulate and demodulate share the stream format") {
    const auto dir = scratch("cli_stream");
    std::ofstream(dir / "o.cfg") << "waveform = CP-OFDM\nnum_real_symbols = 4\n";
    const auto cfg = (dir / "o.cfg").string();
    REQUIRE(cli("modulate --config " + cfg + " --seed 3 --out " + (dir / "s.wcbx").string()) == 0);
    const auto s = read_stream(dir / "s.wcbx");
    CHECK(s.size() == 2 * (128 + 16));
    CHECK(s.sample_rate_hz == 1.92e6);
    REQUIRE(cli("demodulate --config " + cfg + " --in " + (dir / "s.wcbx").string() + " --out " +
                (dir / "z.csv").string()) == 0);
    const auto csv = slurp(dir / "z.csv");
    CHECK(csv.rfind("subcarrier,symbol,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 128 * 2);
    fs::remove_all(dir);
}
