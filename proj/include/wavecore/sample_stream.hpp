#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "wavecore/grid.hpp"

namespace wavecore {

/// Complex baseband samples. `origin_offset` is the array index of the
/// transmitter's n = 0; demodulators always read from index 0, so it is
/// bookkeeping for impairments such as timing shifts.
struct SampleStream {
    std::vector<cd> samples;
    double sample_rate_hz = 1.0;
    std::size_t origin_offset = 0;

    std::size_t size() const noexcept { return samples.size(); }
    friend bool operator==(const SampleStream&, const SampleStream&) = default;
};

/// Mean |s[n]|^2 over the whole stream.
double average_power(const SampleStream& s);

/// Binary stream format: "WCBX", u32 version, u64 length, f64 sample rate,
/// then (f64 re, f64 im) pairs, all little-endian.
inline constexpr std::uint32_t kStreamFormatVersion = 1;

void write_stream(std::ostream& out, const SampleStream& s);
SampleStream read_stream(std::istream& in);
void write_stream(const std::filesystem::path& path, const SampleStream& s);
SampleStream read_stream(const std::filesystem::path& path);

}  // namespace wavecore
