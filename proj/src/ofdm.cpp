#include "wavecore/ofdm.hpp"

#include <cmath>

#include "wavecore/dft.hpp"
#include "wavecore/errors.hpp"

namespace wavecore {

SampleStream ofdm_modulate(const ComplexGrid& c, const ChainParameters& params) {
    const std::size_t n = params.num_subcarriers;
    const std::size_t cp = params.cp_length;
    if (c.subcarriers() != n)
        throw ShapeError("grid has " + std::to_string(c.subcarriers()) + " subcarriers, expected " +
                         std::to_string(n));
    if (cp >= n) throw ShapeError("cp_length must be smaller than the DFT size");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    SampleStream s;
    s.sample_rate_hz = params.sample_rate_hz;
    s.samples.resize(c.symbols() * (n + cp));
    Dft idft(n, Dft::Direction::Backward);
    auto in = idft.input();
    for (std::size_t l = 0; l < c.symbols(); ++l) {
        for (std::size_t m = 0; m < n; ++m) in[m] = c(m, l);
        idft.execute();
        const auto out = idft.output();
        cd* dst = s.samples.data() + l * (n + cp);
        for (std::size_t k = 0; k < cp; ++k) dst[k] = out[n - cp + k] * scale;
        for (std::size_t k = 0; k < n; ++k) dst[cp + k] = out[k] * scale;
    }
    return s;
}

DemodGrid ofdm_demodulate(const SampleStream& r, const ChainParameters& params, std::size_t num_symbols) {
    const std::size_t n = params.num_subcarriers;
    const std::size_t cp = params.cp_length;
    if (r.size() < num_symbols * (n + cp))
        throw ShapeError("stream has " + std::to_string(r.size()) + " samples, need " +
                         std::to_string(num_symbols * (n + cp)));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    DemodGrid z(n, num_symbols);
    Dft dft(n, Dft::Direction::Forward);
    auto in = dft.input();
    for (std::size_t l = 0; l < num_symbols; ++l) {
        const cd* src = r.samples.data() + l * (n + cp) + cp;
        std::copy(src, src + n, in.begin());
        dft.execute();
        const auto out = dft.output();
        for (std::size_t m = 0; m < n; ++m) z(m, l) = out[m] * scale;
    }
    return z;
}

DemodGrid ofdm_demodulate(const SampleStream& r, const ChainParameters& params) {
    return ofdm_demodulate(r, params, params.num_complex_symbols());
}

}  // namespace wavecore
