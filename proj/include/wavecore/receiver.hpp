#pragma once

#include <cstdint>
#include <vector>

#include "wavecore/channel.hpp"
#include "wavecore/fbmc.hpp"
#include "wavecore/grid.hpp"
#include "wavecore/params.hpp"
#include "wavecore/prototype_filter.hpp"
#include "wavecore/sample_stream.hpp"
#include "wavecore/symbols.hpp"

namespace wavecore {

struct ChannelEstimate {
    std::vector<cd> freq_response;  // H_hat_m, length 2M
    EstimationMethod method = EstimationMethod::Known;
    double noise_var = 0.0;         // per demodulated sample
};

/// Perfect CSI: the realization's own frequency response.
ChannelEstimate known_channel(const ChannelRealization& h);

/// |H_m| below this raises SingularChannelError.
inline constexpr double kDeepNullGuard = 1e-12;

/// Zero-forcing x_{m,l} = z_{m,l} / H_m.
ComplexGrid equalize_onetap(const DemodGrid& z, const ChannelEstimate& estimate);

/// Elementwise real part.
RealGrid real_convert(const ComplexGrid& x);

/// Known training material placed at the head of a frame.
///
/// In time, a synchronization block of two identical 2M-sample halves
/// precedes the burst. In the lattice, the burst starts with one pilot
/// column: +-1 alternating for FBMC-OQAM (followed by 2(K-1) zero guard
/// columns so data does not leak into it), a fixed QPSK column for CP-OFDM.
struct PreambleSpec {
    Waveform waveform = Waveform::FbmcOqam;
    std::vector<cd> pilots;         // per subcarrier, zero on inactive ones
    std::vector<cd> pseudo_pilots;  // demodulated pilot over an ideal channel
    std::size_t guard_columns = 0;
    std::size_t max_channel_taps = 0;  // time-domain smoothing window
    std::vector<cd> sync;              // 2 * 2M samples

    /// Lattice columns occupied ahead of the data.
    std::size_t lattice_columns() const noexcept { return 1 + guard_columns; }
    std::size_t sync_length() const noexcept { return sync.size(); }
};

/// The FBMC pseudo-pilots come from modulating the pilot column alone and
/// demodulating it with `g`, so they include the intrinsic interference.
PreambleSpec make_preamble(const ChainParameters& params, const PrototypeFilter& g);

/// Pilot (and guard) columns followed by `data`, in the waveform's domain.
SymbolGrid prepend_pilots(const SymbolGrid& data, const PreambleSpec& preamble);

/// Time-domain taps inside the smoothing window survive only when their power
/// exceeds this multiple of the noise floor measured outside the window.
inline constexpr double kTapThreshold = 4.0;

/// Least-squares estimate H_m = z_m / p~_m on the pilot column, smoothed in
/// the time domain: the impulse response is truncated to max_channel_taps
/// taps and taps below kTapThreshold times the noise floor are zeroed.
/// `r` must start at the first sample of the burst (after sync removal).
/// Throws FrameFormatError if r does not cover the pilot column.
ChannelEstimate estimate_channel_preamble(const SampleStream& r, const PreambleSpec& preamble,
                                          const ChainParameters& params, const PrototypeFilter& g);

struct SyncEstimate {
    std::size_t tau = 0;
    double epsilon = 0.0;  // subcarrier spacings
    double peak = 0.0;     // normalised correlation at tau, in [0, 1]
};

inline constexpr double kSyncThreshold = 0.5;

/// Correlates against the known sync block over tau in [0, 2M) and reads the
/// CFO from the phase between its two halves. Unambiguous for |epsilon| < 0.5.
/// Throws SyncFailure when the normalised peak is below kSyncThreshold and
/// FrameFormatError when r is shorter than the search span.
SyncEstimate estimate_timing_cfo(const SampleStream& r, const PreambleSpec& preamble, const ChainParameters& params);

}  // namespace wavecore
