#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "wavecore/grid.hpp"
#include "wavecore/params.hpp"

namespace wavecore {

enum class SymbolDomain { RealOqam, ComplexQam };

/// Symbol lattice: real OQAM values d_{m,l} (2M x 2N_s) or complex QAM
/// values c_{m,l} (2M x N_s).
class SymbolGrid {
public:
    SymbolGrid() = default;
    SymbolGrid(RealGrid g) : values_(std::move(g)) {}
    SymbolGrid(ComplexGrid g) : values_(std::move(g)) {}

    SymbolDomain domain() const noexcept {
        return std::holds_alternative<RealGrid>(values_) ? SymbolDomain::RealOqam : SymbolDomain::ComplexQam;
    }
    std::size_t subcarriers() const noexcept;
    std::size_t symbols() const noexcept;

    /// Throws DomainError when the grid holds the other domain.
    const RealGrid& real() const;
    const ComplexGrid& complex() const;

    friend bool operator==(const SymbolGrid&, const SymbolGrid&) = default;

private:
    std::variant<RealGrid, ComplexGrid> values_;
};

/// Square Gray-labelled QAM alphabet with unit average power.
class QamConstellation {
public:
    explicit QamConstellation(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    std::size_t bits_per_symbol() const noexcept { return bits_; }
    std::size_t levels_per_axis() const noexcept { return side_; }
    /// Amplitude of PAM level i (0 = most negative).
    double level(std::size_t i) const noexcept;
    /// Point for a bit label; the upper half of the label drives the
    /// in-phase axis, the lower half the quadrature axis.
    cd map(std::uint32_t label) const noexcept;
    std::vector<cd> points() const;

    struct Decision {
        cd point;
        std::uint32_t label;
    };
    /// Nearest point. Ties resolve on each axis toward the smaller label.
    Decision decide(cd x) const noexcept;

private:
    std::uint32_t decide_axis(double x) const noexcept;

    std::size_t size_;
    std::size_t bits_;
    std::size_t side_;
    double scale_;
};

/// Transmitted burst: source bits, the complex QAM lattice they map to, and
/// the grid actually fed to the modulator (staggered for FBMC-OQAM).
struct DataBurst {
    std::vector<std::uint8_t> bits;
    ComplexGrid qam;
    SymbolGrid symbols;
};

/// Random Gray-mapped QAM burst sized for `params`. Inactive subcarriers
/// carry zeros and no bits.
DataBurst generate_burst(const ChainParameters& params, std::uint64_t rng_seed);

SymbolGrid generate_data(const ChainParameters& params, std::uint64_t rng_seed);

/// Even subcarriers emit (Re, Im), odd subcarriers (Im, Re), scaled by sqrt(2)
/// so a unit-power QAM stream yields unit-power real symbols.
RealGrid oqam_stagger(const ComplexGrid& qam);
SymbolGrid oqam_stagger(const SymbolGrid& qam);

/// Exact inverse of oqam_stagger.
ComplexGrid oqam_destagger(const RealGrid& oqam);
SymbolGrid oqam_destagger(const SymbolGrid& oqam);

struct HardDecisions {
    ComplexGrid symbols;
    std::vector<std::uint8_t> bits;
};

/// Nearest-neighbour decisions and Gray-demapped bits, subcarrier-major,
/// skipping subcarriers for which `active` is false (all active if empty).
HardDecisions hard_decide(const ComplexGrid& symbols, std::size_t constellation_size,
                          const std::vector<bool>& active = {});
/// Real-OQAM grids are destaggered first.
HardDecisions hard_decide(const SymbolGrid& symbols, std::size_t constellation_size,
                          const std::vector<bool>& active = {});

std::vector<bool> active_mask(const ChainParameters& params);

}  // namespace wavecore
