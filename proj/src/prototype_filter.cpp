#include "wavecore/prototype_filter.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "wavecore/errors.hpp"

namespace wavecore {

std::vector<double> phydyas_coefficients(std::size_t overlap_factor) {
    switch (overlap_factor) {
        case 2: return {1.0, std::numbers::sqrt2 / 2.0};
        case 3: return {1.0, 0.91143783, 0.41143783};
        case 4: return {1.0, 0.97195983, std::numbers::sqrt2 / 2.0, 0.23514695};
        default:
            throw UnsupportedOverlap("PHYDYAS prototype supports K in {2,3,4}, got " +
                                     std::to_string(overlap_factor));
    }
}

namespace {

void normalize_energy(std::vector<double>& taps) {
    const double energy = std::inner_product(taps.begin(), taps.end(), taps.begin(), 0.0);
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& t : taps) t *= scale;
}

}  // namespace

PrototypeFilter design_phydyas(std::size_t num_subcarriers, std::size_t overlap_factor) {
    const auto coeffs = phydyas_coefficients(overlap_factor);
    if (num_subcarriers < 2 || num_subcarriers % 2 != 0)
        throw ValidationError("num_subcarriers", "must be even");
    const std::size_t length = overlap_factor * num_subcarriers;

    // Sampled at half-integer offsets so the response is symmetric about
    // (L_g - 1) / 2, the centre used by the modulator phase term.
    std::vector<double> taps(length);
    for (std::size_t n = 0; n < length; ++n) {
        const double t = (static_cast<double>(n) + 0.5) / static_cast<double>(length);
        double acc = coeffs[0];
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            const double sign = k % 2 ? -1.0 : 1.0;
            acc += 2.0 * sign * coeffs[k] * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) * t);
        }
        taps[n] = acc;
    }
    // Enforce bit-exact symmetry; cos() rounding differs on mirrored arguments.
    for (std::size_t n = 0; n < length / 2; ++n) {
        const double avg = 0.5 * (taps[n] + taps[length - 1 - n]);
        taps[n] = taps[length - 1 - n] = avg;
    }
    normalize_energy(taps);
    return {std::move(taps), overlap_factor, num_subcarriers, PrototypeKind::Phydyas};
}

PrototypeFilter design_rectangular(std::size_t num_subcarriers) {
    if (num_subcarriers < 2 || num_subcarriers % 2 != 0)
        throw ValidationError("num_subcarriers", "must be even");
    std::vector<double> taps(num_subcarriers, 1.0 / std::sqrt(static_cast<double>(num_subcarriers)));
    return {std::move(taps), 1, num_subcarriers, PrototypeKind::Rectangular};
}

PrototypeFilter design_prototype(const ChainParameters& params) {
    if (params.prototype == PrototypeKind::Rectangular) return design_rectangular(params.num_subcarriers);
    return design_phydyas(params.num_subcarriers, params.overlap_factor);
}

}  // namespace wavecore
