#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "wavecore/grid.hpp"

namespace wavecore {

/// Unnormalised length-N DFT backed by FFTW.
/// Forward: X[k] = sum x[n] e^{-j 2 pi k n / N}; Backward uses e^{+j...}.
/// Each instance owns its buffers, so use one per thread.
class Dft {
public:
    enum class Direction { Forward, Backward };

    Dft(std::size_t size, Direction direction);
    ~Dft();
    Dft(Dft&&) noexcept;
    Dft& operator=(Dft&&) noexcept;
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    std::size_t size() const noexcept { return size_; }
    std::span<cd> input() noexcept;
    std::span<const cd> output() const noexcept;
    void execute() noexcept;

    /// Copies `in` (size N) into the input buffer, executes, copies the
    /// result into `out`.
    void transform(std::span<const cd> in, std::span<cd> out) noexcept;

private:
    struct Impl;
    std::size_t size_ = 0;
    std::unique_ptr<Impl> impl_;
};

}  // namespace wavecore
