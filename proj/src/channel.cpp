#include "wavecore/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kv.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/rng.hpp"

namespace wavecore {

void PowerDelayProfile::check() const {
    if (delays_ns.empty()) throw ProfileError("profile '" + name + "' has no taps");
    if (delays_ns.size() != powers_db.size())
        throw ProfileError("profile '" + name + "': delays and powers differ in length");
    for (std::size_t i = 0; i < delays_ns.size(); ++i) {
        if (!std::isfinite(delays_ns[i]) || delays_ns[i] < 0.0)
            throw ProfileError("profile '" + name + "': delays must be nonnegative");
        if (i > 0 && !(delays_ns[i] > delays_ns[i - 1]))
            throw ProfileError("profile '" + name + "': delays must be strictly increasing");
        if (!std::isfinite(powers_db[i])) throw ProfileError("profile '" + name + "': powers must be finite");
    }
}

std::vector<double> PowerDelayProfile::normalized_powers() const {
    std::vector<double> out(powers_db.size());
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) total += out[i] = std::pow(10.0, powers_db[i] / 10.0);
    for (auto& p : out) p /= total;
    return out;
}

std::optional<PowerDelayProfile> find_profile(std::string_view name) {
    // ITU-R M.1225 channel A profiles.
    if (name == "ITU_VehA")
        return PowerDelayProfile{"ITU_VehA", {0, 310, 710, 1090, 1730, 2510}, {0, -1, -9, -10, -15, -20}};
    if (name == "ITU_PedA")
        return PowerDelayProfile{"ITU_PedA", {0, 110, 190, 410}, {0, -9.7, -19.2, -22.8}};
    if (name == "flat") return PowerDelayProfile{"flat", {0}, {0}};
    return std::nullopt;
}

PowerDelayProfile load_profile(std::string_view text) {
    auto entries = kv::parse_lines(text);
    PowerDelayProfile p;
    p.name = kv::take(entries, "name").value_or("custom");
    if (auto v = kv::take(entries, "delays_ns")) p.delays_ns = kv::parse_reals("delays_ns", *v);
    if (auto v = kv::take(entries, "powers_db")) p.powers_db = kv::parse_reals("powers_db", *v);
    if (!entries.empty()) throw ParseError("unknown key '" + entries.begin()->first + "'");
    p.check();
    return p;
}

PowerDelayProfile profile_for(const ChainParameters& params) {
    if (params.channel_profile == "custom")
        return {"custom", params.channel_delays_ns, params.channel_powers_db};
    if (auto p = find_profile(params.channel_profile)) return *p;
    throw ProfileError("no multipath profile for channel_profile = " + params.channel_profile);
}

std::vector<cd> frequency_response(std::span<const cd> taps, std::size_t n) {
    std::vector<cd> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        cd acc{};
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const auto idx = (m * k) % n;
            acc += taps[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n));
        }
        out[m] = acc;
    }
    return out;
}

ChannelRealization ChannelRealization::identity(std::size_t num_subcarriers) {
    return from_taps({cd{1.0, 0.0}}, "none", num_subcarriers);
}

ChannelRealization ChannelRealization::from_taps(std::vector<cd> taps, std::string name,
                                                 std::size_t num_subcarriers) {
    ChannelRealization h;
    h.freq_response = frequency_response(taps, num_subcarriers);
    h.taps = std::move(taps);
    h.profile_name = std::move(name);
    return h;
}

namespace {

std::vector<std::size_t> tap_indices(const PowerDelayProfile& profile, const ChainParameters& params) {
    profile.check();
    std::vector<std::size_t> idx(profile.delays_ns.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double samples = profile.delays_ns[i] * 1e-9 * params.sample_rate_hz;
        if (samples > static_cast<double>(params.num_subcarriers) + 0.5)
            throw ProfileError("profile '" + profile.name + "': delay " + std::to_string(profile.delays_ns[i]) +
                               " ns exceeds the 2M-sample cap");
        idx[i] = static_cast<std::size_t>(std::llround(samples));
    }
    return idx;
}

}  // namespace

ChannelRealization generate_rayleigh_channel(const PowerDelayProfile& profile, const ChainParameters& params,
                                             std::uint64_t rng_seed) {
    const auto idx = tap_indices(profile, params);
    const auto powers = profile.normalized_powers();
    Engine engine(rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cd> taps(idx.back() + 1);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double sigma = std::sqrt(powers[i] / 2.0);
        const double re = normal(engine);
        const double im = normal(engine);
        taps[idx[i]] += cd(re, im) * sigma;
    }
    return ChannelRealization::from_taps(std::move(taps), profile.name, params.num_subcarriers);
}

SampleStream apply_multipath(const SampleStream& s, const ChannelRealization& h) {
    if (h.taps.empty()) throw Error("channel has no taps");
    SampleStream r;
    r.sample_rate_hz = s.sample_rate_hz;
    r.origin_offset = s.origin_offset;
    if (s.samples.empty()) return r;
    r.samples.assign(s.size() + h.taps.size() - 1, cd{});
    for (std::size_t k = 0; k < h.taps.size(); ++k) {
        const cd tap = h.taps[k];
        if (tap == cd{}) continue;
        for (std::size_t n = 0; n < s.size(); ++n) r.samples[n + k] += tap * s.samples[n];
    }
    return r;
}

SampleStream apply_awgn(const SampleStream& s, double snr_db, double signal_power_ref, std::uint64_t rng_seed) {
    if (snr_db == std::numeric_limits<double>::infinity()) return s;
    if (!(signal_power_ref > 0.0)) throw RangeError("signal_power_ref must be positive");
    const double variance = signal_power_ref / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(variance / 2.0);
    Engine engine(rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SampleStream r = s;
    for (auto& x : r.samples) {
        const double re = normal(engine);
        const double im = normal(engine);
        x += cd(re, im) * sigma;
    }
    return r;
}

SampleStream apply_cfo(const SampleStream& s, double epsilon, const ChainParameters& params) {
    if (epsilon == 0.0) return s;
    SampleStream r = s;
    const double two_m = static_cast<double>(params.num_subcarriers);
    for (std::size_t n = 0; n < r.size(); ++n) {
        // Reduce the cycle count before scaling to keep the phase exact for
        // large n and integer multiples of 2M.
        const double cycles = std::fmod(epsilon * static_cast<double>(n), two_m) / two_m;
        r.samples[n] *= std::polar(1.0, 2.0 * std::numbers::pi * cycles);
    }
    return r;
}

SampleStream apply_timing_offset(const SampleStream& s, std::int64_t tau) {
    const auto len = static_cast<std::int64_t>(s.size());
    if (tau <= -len || tau >= len)
        throw RangeError("timing offset " + std::to_string(tau) + " exceeds stream length " + std::to_string(len));
    SampleStream r;
    r.sample_rate_hz = s.sample_rate_hz;
    r.samples.assign(s.size(), cd{});
    for (std::int64_t n = 0; n < len; ++n) {
        const auto src = n - tau;
        if (src >= 0 && src < len) r.samples[static_cast<std::size_t>(n)] = s.samples[static_cast<std::size_t>(src)];
    }
    const auto origin = static_cast<std::int64_t>(s.origin_offset) + tau;
    r.origin_offset = static_cast<std::size_t>(std::clamp<std::int64_t>(origin, 0, len - 1));
    return r;
}

std::size_t multicarrier_symbol_length(const ChainParameters& params) {
    return params.waveform == Waveform::FbmcOqam ? params.half_subcarriers()
                                                 : params.num_subcarriers + params.cp_length;
}

double max_doppler_hz(const ChainParameters& params) {
    constexpr double kSpeedOfLight = 299'792'458.0;
    return params.velocity_mps * params.carrier_freq_hz / kSpeedOfLight;
}

TimeVaryingChannel generate_time_varying_channel(const PowerDelayProfile& profile, const ChainParameters& params,
                                                 std::uint64_t rng_seed, std::size_t num_blocks) {
    const auto idx = tap_indices(profile, params);
    const auto powers = profile.normalized_powers();
    const std::size_t block_length = multicarrier_symbol_length(params);
    if (num_blocks == 0) {
        const std::size_t frame = params.waveform == Waveform::FbmcOqam
                                      ? (params.num_real_symbols - 1) * params.half_subcarriers() +
                                            params.prototype_length()
                                      : params.num_complex_symbols() * block_length;
        num_blocks = (frame + idx.back() + block_length - 1) / block_length;
    }
    const double fd = max_doppler_hz(params);

    struct Path {
        double doppler;
        double phase;
    };
    Engine engine(rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<Path>> paths(idx.size());
    for (auto& tap_paths : paths) {
        const double rotation = unit(engine);
        tap_paths.resize(kSinusoidsPerTap);
        for (std::size_t i = 0; i < kSinusoidsPerTap; ++i) {
            const double angle = 2.0 * std::numbers::pi * (static_cast<double>(i) + rotation) /
                                 static_cast<double>(kSinusoidsPerTap);
            tap_paths[i] = {fd * std::cos(angle), 2.0 * std::numbers::pi * unit(engine)};
        }
    }

    TimeVaryingChannel out;
    out.block_length = block_length;
    out.max_doppler_hz = fd;
    out.blocks.reserve(num_blocks);
    for (std::size_t b = 0; b < num_blocks; ++b) {
        const double t = static_cast<double>(b * block_length) / params.sample_rate_hz;
        std::vector<cd> taps(idx.back() + 1);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            cd acc{};
            for (const auto& p : paths[i])
                acc += std::polar(1.0, 2.0 * std::numbers::pi * p.doppler * t + p.phase);
            taps[idx[i]] += acc * std::sqrt(powers[i] / static_cast<double>(kSinusoidsPerTap));
        }
        out.blocks.push_back(ChannelRealization::from_taps(std::move(taps), profile.name, params.num_subcarriers));
    }
    return out;
}

SampleStream apply_time_varying_multipath(const SampleStream& s, const TimeVaryingChannel& channel) {
    if (channel.blocks.empty() || channel.block_length == 0) throw Error("time-varying channel has no blocks");
    std::size_t taps = 0;
    for (const auto& b : channel.blocks) taps = std::max(taps, b.taps.size());
    SampleStream r;
    r.sample_rate_hz = s.sample_rate_hz;
    r.origin_offset = s.origin_offset;
    if (s.samples.empty()) return r;
    r.samples.assign(s.size() + taps - 1, cd{});
    for (std::size_t n = 0; n < r.size(); ++n) {
        const auto& h = channel.blocks[std::min(n / channel.block_length, channel.blocks.size() - 1)].taps;
        cd acc{};
        for (std::size_t k = 0; k < h.size() && k <= n; ++k)
            if (n - k < s.size()) acc += h[k] * s.samples[n - k];
        r.samples[n] = acc;
    }
    return r;
}

}  // namespace wavecore
