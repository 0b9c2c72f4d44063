#include "wavecore/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "wavecore/channel.hpp"
#include "wavecore/errors.hpp"
#include "kv.hpp"

namespace wavecore {

std::string_view to_string(Waveform w) {
    return w == Waveform::FbmcOqam ? "FBMC-OQAM" : "CP-OFDM";
}

std::string_view to_string(PrototypeKind p) {
    return p == PrototypeKind::Phydyas ? "phydyas" : "rectangular";
}

std::string_view to_string(ChannelMode c) {
    return c == ChannelMode::Fixed ? "fixed" : "ergodic";
}

std::string_view to_string(EstimationMethod e) {
    return e == EstimationMethod::Known ? "known" : "preamble-LS";
}

ChainParameters default_parameters(Waveform waveform) {
    ChainParameters p;
    p.waveform = waveform;
    p.cp_length = waveform == Waveform::CpOfdm ? p.num_subcarriers / 8 : 0;
    return p;
}

bool is_active_subcarrier(const ChainParameters& params, std::size_t m) {
    const auto two_m = static_cast<std::int64_t>(params.num_subcarriers);
    const auto half_active = static_cast<std::int64_t>(params.active_subcarriers / 2);
    auto k = static_cast<std::int64_t>(m);
    if (k >= two_m / 2) k -= two_m;
    return k >= -half_active && k < half_active;
}

void validate(const ChainParameters& p) {
    if (p.num_subcarriers < 4 || p.num_subcarriers % 2 != 0)
        throw ValidationError("num_subcarriers", "must be even and >= 4");
    if (p.num_real_symbols < 2 || p.num_real_symbols % 2 != 0)
        throw ValidationError("num_real_symbols", "must be even and >= 2");
    if (p.overlap_factor < 1) throw ValidationError("overlap_factor", "must be positive");
    if (p.prototype == PrototypeKind::Phydyas && (p.overlap_factor < 2 || p.overlap_factor > 4))
        throw ValidationError("overlap_factor", "phydyas prototype supports K in {2,3,4}");
    if (p.prototype == PrototypeKind::Rectangular && p.overlap_factor != 1)
        throw ValidationError("overlap_factor", "rectangular prototype requires K = 1");
    if (p.cp_length >= p.num_subcarriers)
        throw ValidationError("cp_length", "must be smaller than num_subcarriers");
    const auto q = p.constellation_size;
    if (q != 4 && q != 16 && q != 64 && q != 256)
        throw ValidationError("constellation_size", "must be one of 4, 16, 64, 256");
    if (std::isnan(p.snr_db) || p.snr_db == -std::numeric_limits<double>::infinity())
        throw ValidationError("snr_db", "must be finite or +inf");
    if (!(p.sample_rate_hz > 0.0) || !std::isfinite(p.sample_rate_hz))
        throw ValidationError("sample_rate_hz", "must be positive");
    if (!(p.velocity_mps >= 0.0) || !std::isfinite(p.velocity_mps))
        throw ValidationError("velocity_mps", "must be nonnegative");
    if (!(p.carrier_freq_hz > 0.0) || !std::isfinite(p.carrier_freq_hz))
        throw ValidationError("carrier_freq_hz", "must be positive");
    if (!(std::abs(p.cfo_normalized) < 0.5))
        throw ValidationError("cfo_normalized", "must lie in (-0.5, 0.5) subcarrier spacings");
    if (p.timing_offset < 0 || p.timing_offset >= static_cast<std::int64_t>(p.num_subcarriers))
        throw ValidationError("timing_offset", "must lie in [0, num_subcarriers)");
    if (p.num_streams != 1) throw ValidationError("num_streams", "only SISO (1) is supported");
    if (p.num_tx != 1) throw ValidationError("num_tx", "only SISO (1) is supported");
    if (p.num_rx != 1) throw ValidationError("num_rx", "only SISO (1) is supported");
    if (p.active_subcarriers < 2 || p.active_subcarriers % 2 != 0 ||
        p.active_subcarriers > p.num_subcarriers)
        throw ValidationError("active_subcarriers", "must be even and in [2, num_subcarriers]");
    if (p.psd_segment_length != 0 && (p.psd_segment_length & (p.psd_segment_length - 1)) != 0)
        throw ValidationError("psd_segment_length", "must be a power of two (or 0 for auto)");

    if (p.channel_profile == "custom") {
        if (p.channel_delays_ns.empty() || p.channel_delays_ns.size() != p.channel_powers_db.size())
            throw ValidationError("channel_delays_ns",
                                  "custom profile needs equally long, nonempty delay/power arrays");
        try {
            PowerDelayProfile{"custom", p.channel_delays_ns, p.channel_powers_db}.check();
        } catch (const ProfileError& e) {
            throw ValidationError("channel_delays_ns", e.what());
        }
    } else {
        if (!p.channel_delays_ns.empty() || !p.channel_powers_db.empty())
            throw ValidationError("channel_delays_ns", "only allowed with channel_profile = custom");
        if (p.channel_profile != "none" && !find_profile(p.channel_profile))
            throw ValidationError("channel_profile", "unknown profile '" + p.channel_profile + "'");
    }
}

namespace {

using kv::format_real;
using kv::format_reals;
using kv::parse_real;
using kv::parse_reals;

template <class Int>
Int parse_int(const std::string& key, std::string_view v) {
    Int out{};
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError(key, "expected an integer, got '" + std::string(v) + "'");
    return out;
}

bool is_off(std::string_view v) {
    return v == "off" || v == "none" || v == "false" || v == "0";
}

}  // namespace

ChainParameters parse_config(std::string_view text) {
    auto entries = kv::parse_lines(text);
    auto take = [&](std::string_view key) { return kv::take(entries, key); };

    Waveform waveform = Waveform::FbmcOqam;
    if (auto v = take("waveform")) {
        if (*v == "FBMC-OQAM") waveform = Waveform::FbmcOqam;
        else if (*v == "CP-OFDM") waveform = Waveform::CpOfdm;
        else throw ValidationError("waveform", "unsupported waveform '" + *v +
                                   "' (out of scope; expected FBMC-OQAM or CP-OFDM)");
    }
    ChainParameters p = default_parameters(waveform);

    for (const char* key : {"phase_tracking", "chromatic_dispersion", "phase_noise", "pre_equalization"}) {
        if (auto v = take(key); v && !is_off(*v))
            throw ValidationError(key, "not implemented");
    }

    if (auto v = take("num_subcarriers")) p.num_subcarriers = parse_int<std::size_t>("num_subcarriers", *v);
    if (auto v = take("num_real_symbols")) p.num_real_symbols = parse_int<std::size_t>("num_real_symbols", *v);
    if (auto v = take("prototype")) {
        if (*v == "phydyas") p.prototype = PrototypeKind::Phydyas;
        else if (*v == "rectangular") p.prototype = PrototypeKind::Rectangular;
        else throw ValidationError("prototype", "expected phydyas or rectangular");
    }
    if (auto v = take("overlap_factor")) p.overlap_factor = parse_int<std::size_t>("overlap_factor", *v);
    else if (p.prototype == PrototypeKind::Rectangular) p.overlap_factor = 1;
    if (auto v = take("cp_length")) p.cp_length = parse_int<std::size_t>("cp_length", *v);
    else p.cp_length = waveform == Waveform::CpOfdm ? p.num_subcarriers / 8 : 0;
    if (auto v = take("constellation_size")) p.constellation_size = parse_int<std::size_t>("constellation_size", *v);
    if (auto v = take("snr_db")) p.snr_db = parse_real("snr_db", *v);
    if (auto v = take("sample_rate_hz")) p.sample_rate_hz = parse_real("sample_rate_hz", *v);
    if (auto v = take("velocity_mps")) p.velocity_mps = parse_real("velocity_mps", *v);
    if (auto v = take("carrier_freq_hz")) p.carrier_freq_hz = parse_real("carrier_freq_hz", *v);
    if (auto v = take("cfo_normalized")) p.cfo_normalized = parse_real("cfo_normalized", *v);
    if (auto v = take("timing_offset")) p.timing_offset = parse_int<std::int64_t>("timing_offset", *v);
    if (auto v = take("seed")) p.seed = parse_int<std::uint64_t>("seed", *v);
    if (auto v = take("num_streams")) p.num_streams = parse_int<std::size_t>("num_streams", *v);
    if (auto v = take("num_tx")) p.num_tx = parse_int<std::size_t>("num_tx", *v);
    if (auto v = take("num_rx")) p.num_rx = parse_int<std::size_t>("num_rx", *v);
    if (auto v = take("active_subcarriers")) p.active_subcarriers = parse_int<std::size_t>("active_subcarriers", *v);
    else p.active_subcarriers = p.num_subcarriers;
    if (auto v = take("channel_profile")) p.channel_profile = *v;
    if (auto v = take("channel_delays_ns")) p.channel_delays_ns = parse_reals("channel_delays_ns", *v);
    if (auto v = take("channel_powers_db")) p.channel_powers_db = parse_reals("channel_powers_db", *v);
    if (auto v = take("channel_mode")) {
        if (*v == "fixed") p.channel_mode = ChannelMode::Fixed;
        else if (*v == "ergodic") p.channel_mode = ChannelMode::Ergodic;
        else throw ValidationError("channel_mode", "expected fixed or ergodic");
    }
    if (auto v = take("channel_estimation")) {
        if (*v == "known") p.estimation = EstimationMethod::Known;
        else if (*v == "preamble-LS") p.estimation = EstimationMethod::PreambleLs;
        else throw ValidationError("channel_estimation", "expected known or preamble-LS");
    }
    if (auto v = take("psd_segment_length")) p.psd_segment_length = parse_int<std::size_t>("psd_segment_length", *v);

    if (!entries.empty()) throw ParseError("unknown key '" + entries.begin()->first + "'");
    validate(p);
    return p;
}

std::string render_config(const ChainParameters& p) {
    std::ostringstream out;
    out << "waveform = " << to_string(p.waveform) << '\n'
        << "num_subcarriers = " << p.num_subcarriers << '\n'
        << "num_real_symbols = " << p.num_real_symbols << '\n'
        << "prototype = " << to_string(p.prototype) << '\n'
        << "overlap_factor = " << p.overlap_factor << '\n'
        << "cp_length = " << p.cp_length << '\n'
        << "constellation_size = " << p.constellation_size << '\n'
        << "snr_db = " << format_real(p.snr_db) << '\n'
        << "sample_rate_hz = " << format_real(p.sample_rate_hz) << '\n'
        << "velocity_mps = " << format_real(p.velocity_mps) << '\n'
        << "carrier_freq_hz = " << format_real(p.carrier_freq_hz) << '\n'
        << "cfo_normalized = " << format_real(p.cfo_normalized) << '\n'
        << "timing_offset = " << p.timing_offset << '\n'
        << "seed = " << p.seed << '\n'
        << "num_streams = " << p.num_streams << '\n'
        << "num_tx = " << p.num_tx << '\n'
        << "num_rx = " << p.num_rx << '\n'
        << "active_subcarriers = " << p.active_subcarriers << '\n'
        << "channel_profile = " << p.channel_profile << '\n';
    if (!p.channel_delays_ns.empty()) out << "channel_delays_ns = " << format_reals(p.channel_delays_ns) << '\n';
    if (!p.channel_powers_db.empty()) out << "channel_powers_db = " << format_reals(p.channel_powers_db) << '\n';
    out << "channel_mode = " << to_string(p.channel_mode) << '\n'
        << "channel_estimation = " << to_string(p.estimation) << '\n'
        << "psd_segment_length = " << p.psd_segment_length << '\n';
    return out.str();
}

}  // namespace wavecore
