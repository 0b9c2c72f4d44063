#pragma once

#include <cstddef>
#include <vector>

#include "wavecore/params.hpp"

namespace wavecore {

/// Real, linear-phase, unit-energy prototype g[n] of length K * 2M.
struct PrototypeFilter {
    std::vector<double> taps;
    std::size_t overlap_factor = 0;
    std::size_t num_subcarriers = 0;
    PrototypeKind kind = PrototypeKind::Phydyas;

    std::size_t length() const noexcept { return taps.size(); }
};

/// Frequency-sampling design with the PHYDYAS coefficients for K in {2,3,4}.
/// Throws UnsupportedOverlap for other K.
PrototypeFilter design_phydyas(std::size_t num_subcarriers, std::size_t overlap_factor);

/// K = 1 rectangular window, every tap 1/sqrt(2M).
PrototypeFilter design_rectangular(std::size_t num_subcarriers);

/// PHYDYAS frequency samples P_0..P_{K-1}.
std::vector<double> phydyas_coefficients(std::size_t overlap_factor);

/// Prototype selected by `params.prototype`.
PrototypeFilter design_prototype(const ChainParameters& params);

}  // namespace wavecore
