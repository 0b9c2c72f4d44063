#include "wavecore/fbmc.hpp"

#include <cmath>
#include <numbers>

#include "wavecore/dft.hpp"
#include "wavecore/errors.hpp"

namespace wavecore {

namespace {

void check_shapes(std::size_t rows, const PrototypeFilter& g, const ChainParameters& params) {
    if (rows != params.num_subcarriers)
        throw ShapeError("grid has " + std::to_string(rows) + " subcarriers, expected " +
                         std::to_string(params.num_subcarriers));
    if (g.length() != params.prototype_length() || g.num_subcarriers != params.num_subcarriers)
        throw ShapeError("prototype length " + std::to_string(g.length()) + " does not match K*2M = " +
                         std::to_string(params.prototype_length()));
}

// j^k for integer k.
cd j_power(std::size_t k) noexcept {
    switch (k % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// exp(-j pi m (L_g - 1) / 2M), reduced exactly modulo 2 pi.
std::vector<cd> centering_phases(std::size_t two_m, std::size_t length) {
    std::vector<cd> out(two_m);
    for (std::size_t m = 0; m < two_m; ++m) {
        const auto k = (m * (length - 1)) % (2 * two_m);
        out[m] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / static_cast<double>(two_m));
    }
    return out;
}

}  // namespace

std::size_t fbmc_burst_length(const ChainParameters& params, std::size_t num_symbols) {
    if (num_symbols == 0) return 0;
    return (num_symbols - 1) * params.half_subcarriers() + params.prototype_length();
}

SampleStream fbmc_modulate(const RealGrid& d, const PrototypeFilter& g, const ChainParameters& params) {
    check_shapes(d.subcarriers(), g, params);
    if (d.symbols() == 0) throw ShapeError("grid has no symbols");
    const std::size_t two_m = params.num_subcarriers;
    const std::size_t half = params.half_subcarriers();
    const std::size_t length = g.length();
    const auto centre = centering_phases(two_m, length);

    SampleStream s;
    s.sample_rate_hz = params.sample_rate_hz;
    s.samples.assign(fbmc_burst_length(params, d.symbols()), cd{});

    Dft idft(two_m, Dft::Direction::Backward);
    auto in = idft.input();
    for (std::size_t l = 0; l < d.symbols(); ++l) {
        bool any = false;
        for (std::size_t m = 0; m < two_m; ++m) {
            const double v = d(m, l);
            any = any || v != 0.0;
            in[m] = v * j_power(m + l) * centre[m];
        }
        if (!any) continue;
        idft.execute();
        const auto block = idft.output();
        cd* out = s.samples.data() + l * half;
        for (std::size_t k = 0; k < length; ++k) out[k] += g.taps[k] * block[k % two_m];
    }
    return s;
}

DemodGrid fbmc_demodulate(const SampleStream& r, const PrototypeFilter& g, const ChainParameters& params,
                          std::size_t num_symbols) {
    check_shapes(params.num_subcarriers, g, params);
    const std::size_t needed = fbmc_burst_length(params, num_symbols);
    if (r.size() < needed)
        throw ShapeError("stream has " + std::to_string(r.size()) + " samples, lattice support needs " +
                         std::to_string(needed));
    const std::size_t two_m = params.num_subcarriers;
    const std::size_t half = params.half_subcarriers();
    const std::size_t length = g.length();
    const auto centre = centering_phases(two_m, length);

    DemodGrid z(two_m, num_symbols);
    Dft dft(two_m, Dft::Direction::Forward);
    auto in = dft.input();
    for (std::size_t l = 0; l < num_symbols; ++l) {
        std::fill(in.begin(), in.end(), cd{});
        const cd* src = r.samples.data() + l * half;
        for (std::size_t k = 0; k < length; ++k) in[k % two_m] += src[k] * g.taps[k];
        dft.execute();
        const auto spectrum = dft.output();
        for (std::size_t m = 0; m < two_m; ++m)
            z(m, l) = spectrum[m] * std::conj(j_power(m + l) * centre[m]);
    }
    return z;
}

DemodGrid fbmc_demodulate(const SampleStream& r, const PrototypeFilter& g, const ChainParameters& params) {
    return fbmc_demodulate(r, g, params, params.num_real_symbols);
}

}  // namespace wavecore
