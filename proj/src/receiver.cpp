#include "wavecore/receiver.hpp"

#include <cmath>
#include <numbers>

#include "wavecore/dft.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/ofdm.hpp"
#include "wavecore/rng.hpp"

namespace wavecore {

ChannelEstimate known_channel(const ChannelRealization& h) {
    return {h.freq_response, EstimationMethod::Known, 0.0};
}

ComplexGrid equalize_onetap(const DemodGrid& z, const ChannelEstimate& estimate) {
    const auto& h = estimate.freq_response;
    if (h.size() != z.subcarriers())
        throw ShapeError("channel estimate has " + std::to_string(h.size()) + " bins, grid has " +
                         std::to_string(z.subcarriers()) + " subcarriers");
    std::vector<std::size_t> nulls;
    for (std::size_t m = 0; m < h.size(); ++m)
        if (std::abs(h[m]) < kDeepNullGuard) nulls.push_back(m);
    if (!nulls.empty()) throw SingularChannelError(std::move(nulls));

    ComplexGrid x(z.subcarriers(), z.symbols());
    for (std::size_t m = 0; m < z.subcarriers(); ++m) {
        const cd inv = 1.0 / h[m];
        for (std::size_t l = 0; l < z.symbols(); ++l) x(m, l) = z(m, l) * inv;
    }
    return x;
}

RealGrid real_convert(const ComplexGrid& x) {
    RealGrid d(x.subcarriers(), x.symbols());
    for (std::size_t i = 0; i < x.size(); ++i) d.data()[i] = x.data()[i].real();
    return d;
}

namespace {

// Fixed QPSK sequence shared by transmitter and receiver.
std::vector<cd> training_qpsk(std::size_t n, std::uint64_t salt) {
    const QamConstellation qpsk(4);
    std::vector<cd> out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = qpsk.map(static_cast<std::uint32_t>(splitmix64(salt + m) & 3u));
    return out;
}

std::vector<cd> make_sync_block(std::size_t two_m) {
    const auto freq = training_qpsk(two_m, 0x5eed);
    Dft idft(two_m, Dft::Direction::Backward);
    std::vector<cd> half(two_m);
    idft.transform(freq, half);
    const double scale = 1.0 / std::sqrt(static_cast<double>(two_m));
    std::vector<cd> out(2 * two_m);
    for (std::size_t n = 0; n < two_m; ++n) out[n] = out[n + two_m] = half[n] * scale;
    return out;
}

}  // namespace

PreambleSpec make_preamble(const ChainParameters& params, const PrototypeFilter& g) {
    const std::size_t two_m = params.num_subcarriers;
    PreambleSpec p;
    p.waveform = params.waveform;
    p.pilots.assign(two_m, cd{});
    p.max_channel_taps = std::max(params.cp_length, two_m / 8) + 1;
    p.sync = make_sync_block(two_m);

    if (params.waveform == Waveform::CpOfdm) {
        const auto qpsk = training_qpsk(two_m, 0x9170);
        for (std::size_t m = 0; m < two_m; ++m)
            if (is_active_subcarrier(params, m)) p.pilots[m] = qpsk[m];
        p.pseudo_pilots = p.pilots;
        p.guard_columns = 0;
        return p;
    }

    p.guard_columns = 2 * (params.overlap_factor - 1);
    RealGrid column(two_m, 1);
    for (std::size_t m = 0; m < two_m; ++m) {
        if (!is_active_subcarrier(params, m)) continue;
        column(m, 0) = m % 2 == 0 ? 1.0 : -1.0;
        p.pilots[m] = column(m, 0);
    }
    const auto z = fbmc_demodulate(fbmc_modulate(column, g, params), g, params, 1);
    p.pseudo_pilots.resize(two_m);
    for (std::size_t m = 0; m < two_m; ++m) p.pseudo_pilots[m] = z(m, 0);
    return p;
}

SymbolGrid prepend_pilots(const SymbolGrid& data, const PreambleSpec& preamble) {
    const std::size_t two_m = preamble.pilots.size();
    if (data.subcarriers() != two_m) throw ShapeError("data grid does not match the preamble");
    if (preamble.waveform == Waveform::FbmcOqam) {
        RealGrid head(two_m, preamble.lattice_columns());
        for (std::size_t m = 0; m < two_m; ++m) head(m, 0) = preamble.pilots[m].real();
        return SymbolGrid(concat_columns(head, data.real()));
    }
    ComplexGrid head(two_m, preamble.lattice_columns());
    for (std::size_t m = 0; m < two_m; ++m) head(m, 0) = preamble.pilots[m];
    return SymbolGrid(concat_columns(head, data.complex()));
}

ChannelEstimate estimate_channel_preamble(const SampleStream& r, const PreambleSpec& preamble,
                                          const ChainParameters& params, const PrototypeFilter& g) {
    const std::size_t two_m = params.num_subcarriers;
    DemodGrid z;
    try {
        z = params.waveform == Waveform::FbmcOqam ? fbmc_demodulate(r, g, params, 1)
                                                  : ofdm_demodulate(r, params, 1);
    } catch (const ShapeError& e) {
        throw FrameFormatError(std::string("stream does not cover the pilot column: ") + e.what());
    }

    ChannelEstimate est;
    est.method = EstimationMethod::PreambleLs;
    est.freq_response.assign(two_m, cd{1.0, 0.0});
    bool all_active = true;
    double pilot_power = 0.0;
    std::size_t active = 0;
    for (std::size_t m = 0; m < two_m; ++m) {
        const cd p = preamble.pseudo_pilots[m];
        if (preamble.pilots[m] == cd{} || std::abs(p) < kDeepNullGuard) {
            all_active = false;
            continue;
        }
        est.freq_response[m] = z(m, 0) / p;
        pilot_power += std::norm(p);
        ++active;
    }

    const std::size_t window = preamble.max_channel_taps;
    if (all_active && window < two_m) {
        Dft idft(two_m, Dft::Direction::Backward);
        Dft dft(two_m, Dft::Direction::Forward);
        std::vector<cd> taps(two_m);
        idft.transform(est.freq_response, taps);
        double discarded = 0.0;
        for (std::size_t k = 0; k < two_m; ++k) {
            taps[k] /= static_cast<double>(two_m);
            if (k >= window) discarded += std::norm(taps[k]);
        }
        // Taps past the window carry only noise; inside it, keep taps that
        // stand clear of that floor.
        const double tap_noise = discarded / static_cast<double>(two_m - window);
        for (std::size_t k = 0; k < two_m; ++k)
            if (k >= window || std::norm(taps[k]) <= kTapThreshold * tap_noise) taps[k] = {};
        dft.transform(taps, est.freq_response);
        // Each time-domain tap carries var/2M of the per-bin LS noise.
        est.noise_var = tap_noise * static_cast<double>(two_m) * pilot_power / static_cast<double>(active);
    }
    return est;
}

SyncEstimate estimate_timing_cfo(const SampleStream& r, const PreambleSpec& preamble, const ChainParameters& params) {
    const std::size_t two_m = params.num_subcarriers;
    const auto& p = preamble.sync;
    if (p.size() != 2 * two_m) throw FrameFormatError("sync block does not match 2 * 2M samples");
    if (r.size() < p.size() + two_m - 1)
        throw FrameFormatError("stream shorter than the synchronization search span");

    double preamble_energy = 0.0;
    for (const auto& x : p) preamble_energy += std::norm(x);

    SyncEstimate best;
    best.peak = -1.0;
    for (std::size_t tau = 0; tau < two_m; ++tau) {
        cd first{}, second{};
        double energy = 0.0;
        for (std::size_t n = 0; n < two_m; ++n) {
            const cd a = r.samples[tau + n];
            const cd b = r.samples[tau + two_m + n];
            first += a * std::conj(p[n]);
            second += b * std::conj(p[two_m + n]);
            energy += std::norm(a) + std::norm(b);
        }
        if (energy <= 0.0) continue;
        const double metric = (std::abs(first) + std::abs(second)) / std::sqrt(energy * preamble_energy);
        if (metric > best.peak) {
            best.peak = metric;
            best.tau = tau;
        }
    }
    if (best.peak < kSyncThreshold)
        throw SyncFailure("correlation peak " + std::to_string(std::max(best.peak, 0.0)) + " below threshold");

    cd lag{};
    for (std::size_t n = 0; n < two_m; ++n)
        lag += r.samples[best.tau + two_m + n] * std::conj(r.samples[best.tau + n]);
    best.epsilon = std::arg(lag) / (2.0 * std::numbers::pi);
    return best;
}

}  // namespace wavecore
