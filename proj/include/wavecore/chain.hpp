#pragma once

#include <cstdint>

#include "wavecore/channel.hpp"
#include "wavecore/metrics.hpp"
#include "wavecore/params.hpp"
#include "wavecore/sample_stream.hpp"
#include "wavecore/symbols.hpp"

namespace wavecore {

/// Channel used by every trial when channel_mode = fixed (identity when
/// channel_profile = none).
ChannelRealization fixed_channel(const ChainParameters& params);

/// Modulated burst for `symbols` in the configured waveform.
SampleStream modulate(const SymbolGrid& symbols, const ChainParameters& params);

/// Transmit burst of one random data frame and its PSD referenced to the
/// occupied band.
Psd transmit_psd(const ChainParameters& params, std::uint64_t rng_seed);

/// Runs `num_trials` independent passes of
///   data -> modulate -> multipath -> AWGN -> [sync] -> demodulate -> equalize -> decide
/// and aggregates per-subcarrier MSE, BER and the PSD of the first burst.
/// Trial t draws data and noise from seeds derived from (params.seed, t), so
/// results do not depend on `num_threads` (0 picks the hardware count).
/// Stage failures are rethrown as StageError.
MetricReport run_chain(const ChainParameters& params, std::size_t num_trials, std::size_t num_threads = 0);

}  // namespace wavecore
