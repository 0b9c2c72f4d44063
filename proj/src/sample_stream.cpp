#include "wavecore/sample_stream.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

#include "wavecore/errors.hpp"

namespace wavecore {

double average_power(const SampleStream& s) {
    if (s.samples.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& x : s.samples) acc += std::norm(x);
    return acc / static_cast<double>(s.samples.size());
}

namespace {

constexpr std::array<char, 4> kMagic{'W', 'C', 'B', 'X'};

template <class UInt>
void put_le(std::ostream& out, UInt v) {
    std::array<char, sizeof(UInt)> bytes;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(bytes.data(), bytes.size());
}

template <class UInt>
UInt get_le(std::istream& in) {
    std::array<unsigned char, sizeof(UInt)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw FrameFormatError("truncated sample stream");
    UInt v = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(bytes[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& out, double x) { put_le(out, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace

void write_stream(std::ostream& out, const SampleStream& s) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kStreamFormatVersion);
    put_le<std::uint64_t>(out, s.samples.size());
    put_f64(out, s.sample_rate_hz);
    for (const auto& x : s.samples) {
        put_f64(out, x.real());
        put_f64(out, x.imag());
    }
    if (!out) throw Error("failed writing sample stream");
}

SampleStream read_stream(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw FrameFormatError("not a WCBX sample stream");
    const auto version = get_le<std::uint32_t>(in);
    if (version != kStreamFormatVersion)
        throw FrameFormatError("unsupported stream version " + std::to_string(version));
    const auto length = get_le<std::uint64_t>(in);
    SampleStream s;
    s.sample_rate_hz = get_f64(in);
    s.samples.reserve(length);
    for (std::uint64_t i = 0; i < length; ++i) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        s.samples.emplace_back(re, im);
    }
    return s;
}

void write_stream(const std::filesystem::path& path, const SampleStream& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_stream(out, s);
}

SampleStream read_stream(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_stream(in);
}

}  // namespace wavecore
