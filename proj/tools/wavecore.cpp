#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wavecore/chain.hpp"
#include "wavecore/channel.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/fbmc.hpp"
#include "wavecore/metrics.hpp"
#include "wavecore/ofdm.hpp"
#include "wavecore/prototype_filter.hpp"
#include "wavecore/sample_stream.hpp"

namespace fs = std::filesystem;
using namespace wavecore;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ChainParameters load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigFailure("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        auto params = parse_config(text.str());
        if (params.channel_profile != "none") (void)profile_for(params);
        return params;
    } catch (const ValidationError& e) {
        throw ConfigFailure(path.string() + ": " + e.key() + ": " + e.what());
    } catch (const Error& e) {
        throw ConfigFailure(path.string() + ": " + e.what());
    }
}

void apply_overrides(ChainParameters& p, const std::optional<std::uint64_t>& seed,
                     const std::optional<std::size_t>& segment) {
    if (seed) p.seed = *seed;
    if (segment) p.psd_segment_length = *segment;
    try {
        validate(p);
    } catch (const ValidationError& e) {
        throw ConfigFailure(e.key() + ": " + e.what());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

std::string render_grid_csv(const DemodGrid& z) {
    std::string out = "subcarrier,symbol,re,im\n";
    char line[96];
    for (std::size_t m = 0; m < z.subcarriers(); ++m)
        for (std::size_t l = 0; l < z.symbols(); ++l) {
            std::snprintf(line, sizeof line, "%zu,%zu,%.17g,%.17g\n", m, l, z(m, l).real(), z(m, l).imag());
            out += line;
        }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multicarrier waveform link simulator"};
    app.require_subcommand(1);

    fs::path config_path;
    fs::path out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> segment;
    std::size_t trials = 100;
    std::size_t threads = 0;

    auto* run = app.add_subcommand("run", "Monte-Carlo chain run; writes mse.csv, psd.csv, summary.csv, config.echo");
    run->add_option("--config", config_path, "Configuration file")->required();
    run->add_option("--seed", seed, "Override the configured seed");
    run->add_option("--trials", trials, "Number of independent trials")->check(CLI::PositiveNumber);
    run->add_option("--threads", threads, "Worker threads (0 = hardware count)");
    run->add_option("--segment", segment, "Welch segment length (power of two)");
    run->add_option("--out", out_dir, "Output directory");

    auto* psd = app.add_subcommand("psd", "Transmit PSD of one burst; writes psd.csv and config.echo");
    psd->add_option("--config", config_path, "Configuration file")->required();
    psd->add_option("--seed", seed, "Override the configured seed");
    psd->add_option("--segment", segment, "Welch segment length (power of two)");
    psd->add_option("--out", out_dir, "Output directory")->required();

    std::size_t k = 4, m2 = 128;
    std::string prototype = "phydyas";
    auto* filter = app.add_subcommand("filter", "Prototype filter utilities");
    filter->require_subcommand(1);
    auto* dump = filter->add_subcommand("dump", "Print prototype taps as index,value");
    dump->add_option("--k", k, "Overlap factor")->required();
    dump->add_option("--subcarriers", m2, "Number of subcarriers 2M")->required();
    dump->add_option("--prototype", prototype, "phydyas or rectangular")
        ->check(CLI::IsMember({"phydyas", "rectangular"}));

    fs::path stream_path, grid_path;
    auto* mod = app.add_subcommand("modulate", "Modulate one random data burst into a WCBX stream");
    mod->add_option("--config", config_path, "Configuration file")->required();
    mod->add_option("--seed", seed, "Override the configured seed");
    mod->add_option("--out", stream_path, "Output stream file")->required();
    auto* demod = app.add_subcommand("demodulate", "Demodulate a WCBX stream; writes subcarrier,symbol,re,im");
    demod->add_option("--config", config_path, "Configuration file")->required();
    demod->add_option("--in", stream_path, "Input stream file")->required()->check(CLI::ExistingFile);
    demod->add_option("--out", grid_path, "Output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*dump) {
            const auto g = prototype == "rectangular" ? design_rectangular(m2) : design_phydyas(m2, k);
            std::cout << "index,value\n";
            char line[64];
            for (std::size_t n = 0; n < g.taps.size(); ++n) {
                std::snprintf(line, sizeof line, "%zu,%.17g\n", n, g.taps[n]);
                std::cout << line;
            }
            return 0;
        }

        auto params = load_config(config_path);
        apply_overrides(params, seed, segment);

        if (*run) {
            const auto report = run_chain(params, trials, threads);
            write_report(out_dir, report);
            std::cout << render_summary_csv(report);
        } else if (*psd) {
            fs::create_directories(out_dir);
            write_text(out_dir / "psd.csv", render_psd_csv(transmit_psd(params, params.seed)));
            write_text(out_dir / "config.echo", render_config(params));
        } else if (*mod) {
            auto s = modulate(generate_data(params, params.seed), params);
            s.sample_rate_hz = params.sample_rate_hz;
            write_stream(stream_path, s);
        } else if (*demod) {
            const auto r = read_stream(stream_path);
            const auto z = params.waveform == Waveform::FbmcOqam
                               ? fbmc_demodulate(r, design_prototype(params), params)
                               : ofdm_demodulate(r, params);
            if (grid_path.empty()) std::cout << render_grid_csv(z);
            else write_text(grid_path, render_grid_csv(z));
        }
        return 0;
    } catch (const ConfigFailure& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnsupportedOverlap& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const StageError& e) {
        std::cerr << "stage " << e.stage() << " failed: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
