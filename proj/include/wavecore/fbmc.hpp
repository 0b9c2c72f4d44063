#pragma once

#include "wavecore/grid.hpp"
#include "wavecore/params.hpp"
#include "wavecore/prototype_filter.hpp"
#include "wavecore/sample_stream.hpp"

namespace wavecore {

/// Demodulated lattice z_{m,l}, 2M rows.
using DemodGrid = ComplexGrid;

/// FBMC-OQAM synthesis
///   s[n] = sum_{m,l} d_{m,l} j^{m+l} g[n - lM] exp(j 2 pi m (n - lM - (L_g-1)/2) / 2M)
/// evaluated per real symbol with one 2M-point inverse DFT and a periodic
/// extension over the prototype support. The grid may hold any number of
/// columns; the output has (columns - 1) * M + L_g samples.
/// Throws ShapeError when rows, prototype length and params disagree.
SampleStream fbmc_modulate(const RealGrid& d, const PrototypeFilter& g, const ChainParameters& params);

/// Analysis z_{m,l} = sum_n r[n] conj(g_{m,l}[n]) for l in [0, num_symbols).
/// Requires r to cover the support of every requested symbol.
DemodGrid fbmc_demodulate(const SampleStream& r, const PrototypeFilter& g, const ChainParameters& params,
                          std::size_t num_symbols);
DemodGrid fbmc_demodulate(const SampleStream& r, const PrototypeFilter& g, const ChainParameters& params);

/// Number of samples a burst of `num_symbols` real symbols occupies.
std::size_t fbmc_burst_length(const ChainParameters& params, std::size_t num_symbols);

}  // namespace wavecore
