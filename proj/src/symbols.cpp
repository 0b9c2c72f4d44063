#include "wavecore/symbols.hpp"

#include <bit>
#include <cmath>

#include "wavecore/errors.hpp"
#include "wavecore/rng.hpp"

namespace wavecore {

std::size_t SymbolGrid::subcarriers() const noexcept {
    return std::visit([](const auto& g) { return g.subcarriers(); }, values_);
}

std::size_t SymbolGrid::symbols() const noexcept {
    return std::visit([](const auto& g) { return g.symbols(); }, values_);
}

const RealGrid& SymbolGrid::real() const {
    if (const auto* g = std::get_if<RealGrid>(&values_)) return *g;
    throw DomainError("expected a real-OQAM grid, got complex-QAM");
}

const ComplexGrid& SymbolGrid::complex() const {
    if (const auto* g = std::get_if<ComplexGrid>(&values_)) return *g;
    throw DomainError("expected a complex-QAM grid, got real-OQAM");
}

namespace {

constexpr std::uint32_t gray_encode(std::uint32_t i) noexcept { return i ^ (i >> 1); }

constexpr std::uint32_t gray_decode(std::uint32_t g) noexcept {
    for (std::uint32_t shift = g >> 1; shift; shift >>= 1) g ^= shift;
    return g;
}

}  // namespace

QamConstellation::QamConstellation(std::size_t size)
    : size_(size),
      bits_(static_cast<std::size_t>(std::countr_zero(size))),
      side_(static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(size))))),
      scale_(std::sqrt(3.0 / (2.0 * (static_cast<double>(size) - 1.0)))) {
    if (size != 4 && size != 16 && size != 64 && size != 256)
        throw ValidationError("constellation_size", "must be one of 4, 16, 64, 256");
}

double QamConstellation::level(std::size_t i) const noexcept {
    return scale_ * (2.0 * static_cast<double>(i) - static_cast<double>(side_ - 1));
}

cd QamConstellation::map(std::uint32_t label) const noexcept {
    const auto half = bits_ / 2;
    const std::uint32_t mask = (1u << half) - 1u;
    return {level(gray_decode(label >> half)), level(gray_decode(label & mask))};
}

std::vector<cd> QamConstellation::points() const {
    std::vector<cd> out(size_);
    for (std::uint32_t label = 0; label < size_; ++label) out[label] = map(label);
    return out;
}

std::uint32_t QamConstellation::decide_axis(double x) const noexcept {
    const double t = (x / scale_ + static_cast<double>(side_ - 1)) / 2.0;
    const double max_index = static_cast<double>(side_ - 1);
    if (t <= 0.0) return gray_encode(0);
    if (t >= max_index) return gray_encode(static_cast<std::uint32_t>(side_ - 1));
    const double lo = std::floor(t);
    const double frac = t - lo;
    const auto i = static_cast<std::uint32_t>(lo);
    if (frac < 0.5) return gray_encode(i);
    if (frac > 0.5) return gray_encode(i + 1);
    return std::min(gray_encode(i), gray_encode(i + 1));
}

QamConstellation::Decision QamConstellation::decide(cd x) const noexcept {
    const auto half = bits_ / 2;
    const auto label = (decide_axis(x.real()) << half) | decide_axis(x.imag());
    return {map(label), label};
}

std::vector<bool> active_mask(const ChainParameters& params) {
    std::vector<bool> mask(params.num_subcarriers);
    for (std::size_t m = 0; m < mask.size(); ++m) mask[m] = is_active_subcarrier(params, m);
    return mask;
}

DataBurst generate_burst(const ChainParameters& params, std::uint64_t rng_seed) {
    const QamConstellation qam(params.constellation_size);
    const auto bits_per_symbol = qam.bits_per_symbol();
    Engine engine(rng_seed);

    DataBurst burst;
    burst.qam = ComplexGrid(params.num_subcarriers, params.num_complex_symbols());
    burst.bits.reserve(params.active_subcarriers * params.num_complex_symbols() * bits_per_symbol);
    for (std::size_t m = 0; m < params.num_subcarriers; ++m) {
        if (!is_active_subcarrier(params, m)) continue;
        for (std::size_t l = 0; l < burst.qam.symbols(); ++l) {
            const auto label = static_cast<std::uint32_t>(engine() & (qam.size() - 1));
            for (std::size_t b = bits_per_symbol; b-- > 0;)
                burst.bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
            burst.qam(m, l) = qam.map(label);
        }
    }
    if (params.waveform == Waveform::FbmcOqam)
        burst.symbols = SymbolGrid(oqam_stagger(burst.qam));
    else
        burst.symbols = SymbolGrid(burst.qam);
    return burst;
}

SymbolGrid generate_data(const ChainParameters& params, std::uint64_t rng_seed) {
    return generate_burst(params, rng_seed).symbols;
}

RealGrid oqam_stagger(const ComplexGrid& qam) {
    RealGrid out(qam.subcarriers(), 2 * qam.symbols());
    for (std::size_t m = 0; m < qam.subcarriers(); ++m) {
        const bool real_first = m % 2 == 0;
        for (std::size_t k = 0; k < qam.symbols(); ++k) {
            const cd c = qam(m, k) * std::sqrt(2.0);
            out(m, 2 * k) = real_first ? c.real() : c.imag();
            out(m, 2 * k + 1) = real_first ? c.imag() : c.real();
        }
    }
    return out;
}

SymbolGrid oqam_stagger(const SymbolGrid& qam) {
    if (qam.domain() != SymbolDomain::ComplexQam) throw DomainError("grid is already real-OQAM");
    return SymbolGrid(oqam_stagger(qam.complex()));
}

ComplexGrid oqam_destagger(const RealGrid& oqam) {
    if (oqam.symbols() % 2 != 0) throw ShapeError("real-OQAM grid needs an even symbol count");
    ComplexGrid out(oqam.subcarriers(), oqam.symbols() / 2);
    for (std::size_t m = 0; m < oqam.subcarriers(); ++m) {
        const bool real_first = m % 2 == 0;
        for (std::size_t k = 0; k < out.symbols(); ++k) {
            const double a = oqam(m, 2 * k);
            const double b = oqam(m, 2 * k + 1);
            out(m, k) = (real_first ? cd(a, b) : cd(b, a)) / std::sqrt(2.0);
        }
    }
    return out;
}

SymbolGrid oqam_destagger(const SymbolGrid& oqam) {
    if (oqam.domain() != SymbolDomain::RealOqam) throw DomainError("grid is not real-OQAM");
    return SymbolGrid(oqam_destagger(oqam.real()));
}

HardDecisions hard_decide(const ComplexGrid& symbols, std::size_t constellation_size,
                          const std::vector<bool>& active) {
    if (!active.empty() && active.size() != symbols.subcarriers())
        throw ShapeError("active mask length differs from subcarrier count");
    const QamConstellation qam(constellation_size);
    const auto bits_per_symbol = qam.bits_per_symbol();
    HardDecisions out{ComplexGrid(symbols.subcarriers(), symbols.symbols()), {}};
    for (std::size_t m = 0; m < symbols.subcarriers(); ++m) {
        if (!active.empty() && !active[m]) continue;
        for (std::size_t l = 0; l < symbols.symbols(); ++l) {
            const auto d = qam.decide(symbols(m, l));
            out.symbols(m, l) = d.point;
            for (std::size_t b = bits_per_symbol; b-- > 0;)
                out.bits.push_back(static_cast<std::uint8_t>((d.label >> b) & 1u));
        }
    }
    return out;
}

HardDecisions hard_decide(const SymbolGrid& symbols, std::size_t constellation_size,
                          const std::vector<bool>& active) {
    if (symbols.domain() == SymbolDomain::RealOqam)
        return hard_decide(oqam_destagger(symbols.real()), constellation_size, active);
    return hard_decide(symbols.complex(), constellation_size, active);
}

}  // namespace wavecore
