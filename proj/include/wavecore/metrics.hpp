#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "wavecore/grid.hpp"
#include "wavecore/params.hpp"
#include "wavecore/sample_stream.hpp"

namespace wavecore {

/// Per-subcarrier mean of |d - d_hat|^2 over the symbol axis.
std::vector<double> compute_mse(const RealGrid& d, const RealGrid& d_hat);
std::vector<double> compute_mse(const ComplexGrid& d, const ComplexGrid& d_hat);

/// Running per-subcarrier squared-error sums for averaging over trials.
class MseAccumulator {
public:
    explicit MseAccumulator(std::size_t subcarriers = 0) : sums_(subcarriers, 0.0) {}

    void add(const RealGrid& d, const RealGrid& d_hat);
    void add(const ComplexGrid& d, const ComplexGrid& d_hat);
    /// Merges another accumulator; merging in a fixed order keeps results
    /// independent of how trials were scheduled.
    void merge(const MseAccumulator& other);

    std::vector<double> mse() const;
    std::size_t count() const noexcept { return count_; }

private:
    template <class T>
    void add_impl(const Grid<T>& d, const Grid<T>& d_hat);

    std::vector<double> sums_;
    std::size_t count_ = 0;  // symbols per subcarrier
};

/// Fraction of differing bits. Throws ShapeError on length mismatch.
double compute_ber(const std::vector<std::uint8_t>& bits_tx, const std::vector<std::uint8_t>& bits_rx);
std::size_t count_bit_errors(const std::vector<std::uint8_t>& bits_tx, const std::vector<std::uint8_t>& bits_rx);

struct Psd {
    std::vector<double> freq_hz;   // ascending, -fs/2 .. fs/2
    std::vector<double> power_db;
    friend bool operator==(const Psd&, const Psd&) = default;
};

struct FrequencyBand {
    double low_hz;
    double high_hz;
};

/// Band covered by the active subcarriers, half a spacing beyond the outer ones.
FrequencyBand occupied_band(const ChainParameters& params);

/// Welch estimate with a Hann window and 50% overlap. Levels are in dB
/// relative to the mean linear power over `reference` (the whole spectrum
/// when absent). segment_length must be a power of two no longer than s.
Psd compute_psd(const SampleStream& s, std::size_t segment_length,
                std::optional<FrequencyBand> reference = std::nullopt);

/// Interpolation-free lookup: level of the bin nearest to `freq_hz`.
double psd_level_at(const Psd& psd, double freq_hz);

/// Figures of merit from one chain run.
struct MetricReport {
    std::vector<double> mse_per_subcarrier;  // linear
    double ber = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t num_bits = 0;
    Psd psd;
    std::size_t num_trials = 0;
    ChainParameters config;

    friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// CSV renderings: mse.csv `subcarrier,mse_linear,mse_db`, psd.csv
/// `freq_hz,power_db`, summary.csv `key,value`. Reals use 17 significant
/// digits so parsing restores them exactly.
std::string render_mse_csv(const std::vector<double>& mse);
std::string render_psd_csv(const Psd& psd);
std::string render_summary_csv(const MetricReport& report);

std::vector<double> parse_mse_csv(std::string_view text);
Psd parse_psd_csv(std::string_view text);

/// Writes mse.csv, psd.csv, summary.csv and config.echo into `dir`.
void write_report(const std::filesystem::path& dir, const MetricReport& report);
MetricReport read_report(const std::filesystem::path& dir);

}  // namespace wavecore
