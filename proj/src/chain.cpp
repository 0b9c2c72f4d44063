#include "wavecore/chain.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>

#include "wavecore/errors.hpp"
#include "wavecore/fbmc.hpp"
#include "wavecore/ofdm.hpp"
#include "wavecore/prototype_filter.hpp"
#include "wavecore/receiver.hpp"
#include "wavecore/rng.hpp"

namespace wavecore {

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::size_t largest_power_of_two_at_most(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

std::size_t psd_segment(const ChainParameters& params, std::size_t stream_length) {
    const std::size_t wanted = params.psd_segment_length ? params.psd_segment_length
                                                         : largest_power_of_two_at_most(8 * params.num_subcarriers);
    return std::min(wanted, largest_power_of_two_at_most(stream_length));
}

struct TrialOutcome {
    MseAccumulator mse;
    std::uint64_t bit_errors = 0;
    std::uint64_t num_bits = 0;
    std::optional<SampleStream> transmitted;
};

class ChainRunner {
public:
    explicit ChainRunner(const ChainParameters& params)
        : params_(params),
          prototype_(params.waveform == Waveform::FbmcOqam ? design_prototype(params) : PrototypeFilter{}),
          preamble_(make_preamble(params, prototype_)),
          use_pilots_(params.estimation == EstimationMethod::PreambleLs),
          use_sync_(params.cfo_normalized != 0.0 || params.timing_offset != 0),
          mask_(active_mask(params)) {
        if (params.channel_profile != "none") {
            profile_ = profile_for(params);
            if (params.channel_mode == ChannelMode::Fixed) fixed_ = fixed_channel(params);
        }
    }

    TrialOutcome run(std::size_t trial, bool keep_transmit) const {
        const auto& p = params_;
        TrialOutcome out;
        out.mse = MseAccumulator(p.num_subcarriers);

        const auto burst = stage("generate_data", [&] {
            return generate_burst(p, derive_seed(p.seed, RngStream::Data, trial));
        });
        const auto tx_grid = use_pilots_ ? prepend_pilots(burst.symbols, preamble_) : burst.symbols;
        const auto s = stage("modulate", [&] { return modulate(tx_grid, p); });
        if (keep_transmit) out.transmitted = s;

        SampleStream frame = s;
        if (use_sync_) {
            frame.samples.clear();
            frame.samples.reserve(preamble_.sync_length() + s.size() + p.num_subcarriers);
            frame.samples.insert(frame.samples.end(), preamble_.sync.begin(), preamble_.sync.end());
            frame.samples.insert(frame.samples.end(), s.samples.begin(), s.samples.end());
            frame.samples.resize(frame.samples.size() + p.num_subcarriers, cd{});
        }

        ChannelRealization csi = ChannelRealization::identity(p.num_subcarriers);
        auto r = stage("channel", [&] {
            if (!profile_) return frame;
            if (p.velocity_mps > 0.0) {
                const auto tv = generate_time_varying_channel(*profile_, p, channel_seed(trial));
                csi = tv.blocks[tv.blocks.size() / 2];
                return apply_time_varying_multipath(frame, tv);
            }
            csi = fixed_ ? *fixed_ : generate_rayleigh_channel(*profile_, p, channel_seed(trial));
            return apply_multipath(frame, csi);
        });
        r = stage("awgn", [&] {
            return apply_awgn(r, p.snr_db, average_power(s), derive_seed(p.seed, RngStream::Noise, trial));
        });
        if (use_sync_) {
            r = stage("synchronization", [&] {
                auto impaired = apply_cfo(apply_timing_offset(r, p.timing_offset), p.cfo_normalized, p);
                const auto sync = estimate_timing_cfo(impaired, preamble_, p);
                impaired = apply_cfo(impaired, -sync.epsilon, p);
                SampleStream aligned;
                aligned.sample_rate_hz = impaired.sample_rate_hz;
                const auto start = sync.tau + preamble_.sync_length();
                aligned.samples.assign(impaired.samples.begin() + static_cast<std::ptrdiff_t>(start),
                                       impaired.samples.end());
                return aligned;
            });
        }

        const std::size_t columns = tx_grid.symbols();
        const auto z = stage("demodulate", [&] {
            return p.waveform == Waveform::FbmcOqam ? fbmc_demodulate(r, prototype_, p, columns)
                                                    : ofdm_demodulate(r, p, columns);
        });
        const auto estimate = stage("channel_estimation", [&] {
            return use_pilots_ ? estimate_channel_preamble(r, preamble_, p, prototype_) : known_channel(csi);
        });
        const auto x = stage("equalize", [&] {
            const auto eq = equalize_onetap(z, estimate);
            const std::size_t skip = use_pilots_ ? preamble_.lattice_columns() : 0;
            return columns_of(eq, skip, columns - skip);
        });

        stage("metrics", [&] {
            HardDecisions decisions;
            if (p.waveform == Waveform::FbmcOqam) {
                const auto d_hat = real_convert(x);
                out.mse.add(burst.symbols.real(), d_hat);
                decisions = hard_decide(oqam_destagger(d_hat), p.constellation_size, mask_);
            } else {
                out.mse.add(burst.symbols.complex(), x);
                decisions = hard_decide(x, p.constellation_size, mask_);
            }
            out.bit_errors = count_bit_errors(burst.bits, decisions.bits);
            out.num_bits = burst.bits.size();
            return 0;
        });
        return out;
    }

private:
    static ComplexGrid columns_of(const ComplexGrid& g, std::size_t first, std::size_t count) {
        return columns(g, first, count);
    }

    std::uint64_t channel_seed(std::size_t trial) const {
        return derive_seed(params_.seed, RngStream::Channel,
                           params_.channel_mode == ChannelMode::Fixed ? 0 : trial);
    }

    ChainParameters params_;
    PrototypeFilter prototype_;
    PreambleSpec preamble_;
    bool use_pilots_;
    bool use_sync_;
    std::vector<bool> mask_;
    std::optional<PowerDelayProfile> profile_;
    std::optional<ChannelRealization> fixed_;
};

}  // namespace

ChannelRealization fixed_channel(const ChainParameters& params) {
    if (params.channel_profile == "none") return ChannelRealization::identity(params.num_subcarriers);
    return generate_rayleigh_channel(profile_for(params), params, derive_seed(params.seed, RngStream::Channel, 0));
}

SampleStream modulate(const SymbolGrid& symbols, const ChainParameters& params) {
    if (params.waveform == Waveform::FbmcOqam)
        return fbmc_modulate(symbols.real(), design_prototype(params), params);
    return ofdm_modulate(symbols.complex(), params);
}

Psd transmit_psd(const ChainParameters& params, std::uint64_t rng_seed) {
    validate(params);
    const auto s = modulate(generate_data(params, rng_seed), params);
    return compute_psd(s, psd_segment(params, s.size()), occupied_band(params));
}

MetricReport run_chain(const ChainParameters& params, std::size_t num_trials, std::size_t num_threads) {
    stage("configuration", [&] {
        validate(params);
        if (num_trials == 0) throw RangeError("num_trials must be positive");
        return 0;
    });
    const ChainRunner runner = stage("setup", [&] { return ChainRunner(params); });

    if (num_threads == 0) num_threads = std::max(1u, std::thread::hardware_concurrency());
    num_threads = std::min(num_threads, num_trials);

    std::vector<std::optional<TrialOutcome>> outcomes(num_trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t t = next++; t < num_trials; t = next++) {
            try {
                outcomes[t] = runner.run(t, t == 0);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = num_trials;
            }
        }
    };
    if (num_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < num_threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    MetricReport report;
    report.config = params;
    report.num_trials = num_trials;
    MseAccumulator mse(params.num_subcarriers);
    for (auto& o : outcomes) {
        mse.merge(o->mse);
        report.bit_errors += o->bit_errors;
        report.num_bits += o->num_bits;
    }
    report.mse_per_subcarrier = mse.mse();
    report.ber = report.num_bits ? static_cast<double>(report.bit_errors) / static_cast<double>(report.num_bits) : 0.0;
    const auto& s = *outcomes.front()->transmitted;
    report.psd = stage("psd", [&] { return compute_psd(s, psd_segment(params, s.size()), occupied_band(params)); });
    return report;
}

}  // namespace wavecore
