#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavecore/grid.hpp"
#include "wavecore/params.hpp"
#include "wavecore/sample_stream.hpp"

namespace wavecore {

/// Named set of (delay, mean power) pairs.
struct PowerDelayProfile {
    std::string name;
    std::vector<double> delays_ns;
    std::vector<double> powers_db;

    /// Throws ProfileError unless delays are nonnegative and strictly
    /// increasing and the arrays are nonempty and of equal length.
    void check() const;
    /// Linear tap powers normalised to sum to one.
    std::vector<double> normalized_powers() const;
};

/// Built-in profiles: "ITU_VehA", "ITU_PedA", "flat".
std::optional<PowerDelayProfile> find_profile(std::string_view name);

/// Reads a standalone profile document (`name`, `delays_ns`, `powers_db`
/// keys in the config syntax).
PowerDelayProfile load_profile(std::string_view text);

/// Profile selected by the configuration (built-in or custom).
/// Throws ProfileError for channel_profile = none.
PowerDelayProfile profile_for(const ChainParameters& params);

/// Sample-spaced impulse response with its 2M-point frequency response.
struct ChannelRealization {
    std::vector<cd> taps;
    std::string profile_name;
    std::vector<cd> freq_response;

    static ChannelRealization identity(std::size_t num_subcarriers);
    static ChannelRealization from_taps(std::vector<cd> taps, std::string name, std::size_t num_subcarriers);
};

/// H_m = sum_k h[k] exp(-j 2 pi m k / n), m in [0, n).
std::vector<cd> frequency_response(std::span<const cd> taps, std::size_t n);

/// Independent circular complex Gaussian gain per profile tap, delays
/// rounded to the nearest sample (coinciding taps add). Throws ProfileError
/// when a delay lands beyond 2M samples.
ChannelRealization generate_rayleigh_channel(const PowerDelayProfile& profile, const ChainParameters& params,
                                             std::uint64_t rng_seed);

/// Full linear convolution; output length len(s) + L_h - 1.
SampleStream apply_multipath(const SampleStream& s, const ChannelRealization& h);

/// Adds complex white Gaussian noise of variance signal_power_ref / 10^(snr_db/10).
/// snr_db = +inf returns the input unchanged.
SampleStream apply_awgn(const SampleStream& s, double snr_db, double signal_power_ref, std::uint64_t rng_seed);

/// r[n] = s[n] exp(j 2 pi epsilon n / 2M); epsilon in subcarrier spacings.
SampleStream apply_cfo(const SampleStream& s, double epsilon, const ChainParameters& params);

/// Delays (tau > 0) or advances the stream by |tau| samples with zero fill,
/// keeping its length. Throws RangeError unless |tau| < len(s).
SampleStream apply_timing_offset(const SampleStream& s, std::int64_t tau);

/// Samples per multicarrier symbol: M for FBMC-OQAM, 2M + CP for CP-OFDM.
std::size_t multicarrier_symbol_length(const ChainParameters& params);

/// f_d = v f_c / c.
double max_doppler_hz(const ChainParameters& params);

inline constexpr std::size_t kSinusoidsPerTap = 32;

/// Block-fading channel whose taps follow a Jakes spectrum, one realization
/// per multicarrier symbol.
struct TimeVaryingChannel {
    std::vector<ChannelRealization> blocks;
    std::size_t block_length = 0;
    double max_doppler_hz = 0.0;
};

/// Sum-of-sinusoids model with kSinusoidsPerTap paths per tap, equispaced
/// arrival angles with a random rotation and random phases. With
/// num_blocks = 0 the block count covers one frame of `params` plus the
/// channel tail. velocity_mps = 0 gives identical blocks.
TimeVaryingChannel generate_time_varying_channel(const PowerDelayProfile& profile, const ChainParameters& params,
                                                 std::uint64_t rng_seed, std::size_t num_blocks = 0);

/// r[n] = sum_k h_k^{(b)} s[n - k] with b = n / block_length (clamped to the last block).
SampleStream apply_time_varying_multipath(const SampleStream& s, const TimeVaryingChannel& channel);

}  // namespace wavecore
