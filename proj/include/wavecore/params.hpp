#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace wavecore {

enum class Waveform { FbmcOqam, CpOfdm };
enum class PrototypeKind { Phydyas, Rectangular };
enum class ChannelMode { Fixed, Ergodic };
enum class EstimationMethod { Known, PreambleLs };

std::string_view to_string(Waveform w);
std::string_view to_string(PrototypeKind p);
std::string_view to_string(ChannelMode c);
std::string_view to_string(EstimationMethod e);

/// Everything needed to set up one transmitter/channel/receiver run.
///
/// Construct through `default_parameters` or `parse_config`; both return
/// validated values. Copies are cheap and the struct is never mutated by the
/// library, so one instance can be shared by concurrent trials.
struct ChainParameters {
    Waveform waveform = Waveform::FbmcOqam;
    std::size_t num_subcarriers = 128;     // 2M
    std::size_t num_real_symbols = 32;     // 2N_s
    std::size_t overlap_factor = 4;        // K, L_g = K * 2M
    std::size_t cp_length = 0;
    std::size_t constellation_size = 4;
    double snr_db = 20.0;                  // +inf disables noise
    double sample_rate_hz = 1.92e6;
    double velocity_mps = 0.0;
    double carrier_freq_hz = 2.0e9;
    double cfo_normalized = 0.0;
    std::int64_t timing_offset = 0;
    std::uint64_t seed = 0;
    std::size_t num_streams = 1;
    std::size_t num_tx = 1;
    std::size_t num_rx = 1;

    PrototypeKind prototype = PrototypeKind::Phydyas;
    std::size_t active_subcarriers = 128;  // centred around DC
    std::string channel_profile = "none";  // "none" is the identity channel
    std::vector<double> channel_delays_ns; // only for channel_profile = custom
    std::vector<double> channel_powers_db;
    ChannelMode channel_mode = ChannelMode::Fixed;
    EstimationMethod estimation = EstimationMethod::Known;
    std::size_t psd_segment_length = 0;    // 0 selects 8 * 2M

    std::size_t half_subcarriers() const noexcept { return num_subcarriers / 2; }
    std::size_t prototype_length() const noexcept { return overlap_factor * num_subcarriers; }
    std::size_t num_complex_symbols() const noexcept { return num_real_symbols / 2; }
    bool noise_enabled() const noexcept { return snr_db != std::numeric_limits<double>::infinity(); }

    friend bool operator==(const ChainParameters&, const ChainParameters&) = default;
};

ChainParameters default_parameters(Waveform waveform);

/// Parses `key = value` lines (`#` starts a comment). Omitted keys keep the
/// defaults of the selected waveform. Throws ParseError or ValidationError.
ChainParameters parse_config(std::string_view text);

/// Canonical text form; `parse_config(render_config(p)) == p`.
std::string render_config(const ChainParameters& params);

/// Throws ValidationError naming the first violated invariant.
void validate(const ChainParameters& params);

/// Subcarrier index m in [0, 2M) is active when its signed frequency index
/// lies inside the centred block of `active_subcarriers` carriers.
bool is_active_subcarrier(const ChainParameters& params, std::size_t m);

}  // namespace wavecore
