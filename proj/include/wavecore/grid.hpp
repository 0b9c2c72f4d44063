#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wavecore/errors.hpp"

namespace wavecore {

using cd = std::complex<double>;

/// Dense subcarrier-by-symbol lattice, stored subcarrier-major.
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t subcarriers, std::size_t symbols, T fill = T{})
        : subcarriers_(subcarriers), symbols_(symbols), data_(subcarriers * symbols, fill) {}

    std::size_t subcarriers() const noexcept { return subcarriers_; }
    std::size_t symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(std::size_t m, std::size_t l) noexcept { return data_[m * symbols_ + l]; }
    const T& operator()(std::size_t m, std::size_t l) const noexcept { return data_[m * symbols_ + l]; }

    std::span<T> row(std::size_t m) noexcept { return {data_.data() + m * symbols_, symbols_}; }
    std::span<const T> row(std::size_t m) const noexcept { return {data_.data() + m * symbols_, symbols_}; }

    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    bool same_shape(const Grid& other) const noexcept {
        return subcarriers_ == other.subcarriers_ && symbols_ == other.symbols_;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t subcarriers_ = 0;
    std::size_t symbols_ = 0;
    std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<cd>;

/// Columns [first, first + count) of `g`.
template <class T>
Grid<T> columns(const Grid<T>& g, std::size_t first, std::size_t count) {
    if (first + count > g.symbols()) throw ShapeError("column range exceeds grid");
    Grid<T> out(g.subcarriers(), count);
    for (std::size_t m = 0; m < g.subcarriers(); ++m)
        for (std::size_t l = 0; l < count; ++l) out(m, l) = g(m, first + l);
    return out;
}

/// Horizontal concatenation.
template <class T>
Grid<T> concat_columns(const Grid<T>& a, const Grid<T>& b) {
    if (a.subcarriers() != b.subcarriers()) throw ShapeError("subcarrier counts differ");
    Grid<T> out(a.subcarriers(), a.symbols() + b.symbols());
    for (std::size_t m = 0; m < a.subcarriers(); ++m) {
        for (std::size_t l = 0; l < a.symbols(); ++l) out(m, l) = a(m, l);
        for (std::size_t l = 0; l < b.symbols(); ++l) out(m, a.symbols() + l) = b(m, l);
    }
    return out;
}

}  // namespace wavecore
