#pragma once

#include "wavecore/fbmc.hpp"
#include "wavecore/grid.hpp"
#include "wavecore/params.hpp"
#include "wavecore/sample_stream.hpp"

namespace wavecore {

/// CP-OFDM: per column an orthonormal 2M-point inverse DFT with the last
/// cp_length samples prepended. Output length columns * (2M + cp_length).
SampleStream ofdm_modulate(const ComplexGrid& c, const ChainParameters& params);

/// Drops each cyclic prefix and applies the orthonormal forward DFT.
/// Throws ShapeError if r holds fewer than num_symbols full symbols.
DemodGrid ofdm_demodulate(const SampleStream& r, const ChainParameters& params, std::size_t num_symbols);
DemodGrid ofdm_demodulate(const SampleStream& r, const ChainParameters& params);

inline std::size_t ofdm_symbol_length(const ChainParameters& params) noexcept {
    return params.num_subcarriers + params.cp_length;
}

}  // namespace wavecore
