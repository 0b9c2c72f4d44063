#include "wavecore/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kv.hpp"
#include "wavecore/dft.hpp"
#include "wavecore/errors.hpp"

namespace wavecore {

template <class T>
void MseAccumulator::add_impl(const Grid<T>& d, const Grid<T>& d_hat) {
    if (!d.same_shape(d_hat)) throw ShapeError("symbol grids differ in shape");
    if (sums_.empty() && count_ == 0) sums_.assign(d.subcarriers(), 0.0);
    if (sums_.size() != d.subcarriers()) throw ShapeError("subcarrier count changed between trials");
    for (std::size_t m = 0; m < d.subcarriers(); ++m) {
        double acc = 0.0;
        for (std::size_t l = 0; l < d.symbols(); ++l) acc += std::norm(d(m, l) - d_hat(m, l));
        sums_[m] += acc;
    }
    count_ += d.symbols();
}

void MseAccumulator::add(const RealGrid& d, const RealGrid& d_hat) { add_impl(d, d_hat); }
void MseAccumulator::add(const ComplexGrid& d, const ComplexGrid& d_hat) { add_impl(d, d_hat); }

void MseAccumulator::merge(const MseAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0 && sums_.empty()) sums_.assign(other.sums_.size(), 0.0);
    if (sums_.size() != other.sums_.size()) throw ShapeError("subcarrier counts differ");
    for (std::size_t m = 0; m < sums_.size(); ++m) sums_[m] += other.sums_[m];
    count_ += other.count_;
}

std::vector<double> MseAccumulator::mse() const {
    std::vector<double> out(sums_.size(), 0.0);
    if (count_ == 0) return out;
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = sums_[m] / static_cast<double>(count_);
    return out;
}

std::vector<double> compute_mse(const RealGrid& d, const RealGrid& d_hat) {
    MseAccumulator acc(d.subcarriers());
    acc.add(d, d_hat);
    return acc.mse();
}

std::vector<double> compute_mse(const ComplexGrid& d, const ComplexGrid& d_hat) {
    MseAccumulator acc(d.subcarriers());
    acc.add(d, d_hat);
    return acc.mse();
}

std::size_t count_bit_errors(const std::vector<std::uint8_t>& bits_tx, const std::vector<std::uint8_t>& bits_rx) {
    if (bits_tx.size() != bits_rx.size())
        throw ShapeError("bit arrays differ in length (" + std::to_string(bits_tx.size()) + " vs " +
                         std::to_string(bits_rx.size()) + ")");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < bits_tx.size(); ++i) errors += (bits_tx[i] != 0) != (bits_rx[i] != 0);
    return errors;
}

double compute_ber(const std::vector<std::uint8_t>& bits_tx, const std::vector<std::uint8_t>& bits_rx) {
    const auto errors = count_bit_errors(bits_tx, bits_rx);
    return bits_tx.empty() ? 0.0 : static_cast<double>(errors) / static_cast<double>(bits_tx.size());
}

FrequencyBand occupied_band(const ChainParameters& params) {
    const double spacing = params.sample_rate_hz / static_cast<double>(params.num_subcarriers);
    const double half = static_cast<double>(params.active_subcarriers) / 2.0;
    return {(-half - 0.5) * spacing, (half - 0.5) * spacing};
}

Psd compute_psd(const SampleStream& s, std::size_t segment_length, std::optional<FrequencyBand> reference) {
    const std::size_t n = segment_length;
    if (n < 2 || (n & (n - 1)) != 0) throw ShapeError("segment length must be a power of two >= 2");
    if (n > s.size()) throw ShapeError("segment length exceeds stream length");

    std::vector<double> window(n);
    double window_energy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        window[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        window_energy += window[k] * window[k];
    }

    std::vector<double> accum(n, 0.0);
    Dft dft(n, Dft::Direction::Forward);
    auto in = dft.input();
    const std::size_t hop = n / 2;
    std::size_t segments = 0;
    for (std::size_t start = 0; start + n <= s.size(); start += hop, ++segments) {
        for (std::size_t k = 0; k < n; ++k) in[k] = s.samples[start + k] * window[k];
        dft.execute();
        const auto out = dft.output();
        for (std::size_t k = 0; k < n; ++k) accum[k] += std::norm(out[k]);
    }

    // fftshift so bins run from -fs/2 upward.
    Psd psd;
    psd.freq_hz.resize(n);
    std::vector<double> linear(n);
    const double scale = 1.0 / (static_cast<double>(segments) * window_energy * s.sample_rate_hz);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + n / 2) % n;
        psd.freq_hz[i] = (static_cast<double>(i) - static_cast<double>(n / 2)) * s.sample_rate_hz / static_cast<double>(n);
        linear[i] = accum[k] * scale;
    }

    double ref = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (reference && (psd.freq_hz[i] < reference->low_hz || psd.freq_hz[i] > reference->high_hz)) continue;
        ref += linear[i];
        ++count;
    }
    if (count == 0 || ref <= 0.0) throw ShapeError("reference band contains no power");
    ref /= static_cast<double>(count);
    psd.power_db.resize(n);
    for (std::size_t i = 0; i < n; ++i) psd.power_db[i] = 10.0 * std::log10(linear[i] / ref);
    return psd;
}

double psd_level_at(const Psd& psd, double freq_hz) {
    if (psd.freq_hz.empty()) throw ShapeError("empty PSD");
    std::size_t best = 0;
    for (std::size_t i = 1; i < psd.freq_hz.size(); ++i)
        if (std::abs(psd.freq_hz[i] - freq_hz) < std::abs(psd.freq_hz[best] - freq_hz)) best = i;
    return psd.power_db[best];
}

namespace {

using kv::format_real;

std::vector<std::vector<std::string>> parse_csv(std::string_view text, std::string_view expected_header) {
    std::vector<std::vector<std::string>> rows;
    bool header = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = kv::trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty()) continue;
        if (header) {
            if (line != expected_header)
                throw ParseError("unexpected CSV header '" + std::string(line) + "'");
            header = false;
            continue;
        }
        std::vector<std::string> fields;
        while (true) {
            const auto comma = line.find(',');
            fields.emplace_back(kv::trim(line.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        rows.push_back(std::move(fields));
    }
    if (header) throw ParseError("CSV is missing its header");
    return rows;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) throw ParseError(key + ": expected an integer");
    return out;
}

}  // namespace

std::string render_mse_csv(const std::vector<double>& mse) {
    std::string out = "subcarrier,mse_linear,mse_db\n";
    for (std::size_t m = 0; m < mse.size(); ++m)
        out += std::to_string(m) + "," + format_real(mse[m]) + "," + format_real(10.0 * std::log10(mse[m])) + "\n";
    return out;
}

std::string render_psd_csv(const Psd& psd) {
    std::string out = "freq_hz,power_db\n";
    for (std::size_t i = 0; i < psd.freq_hz.size(); ++i)
        out += format_real(psd.freq_hz[i]) + "," + format_real(psd.power_db[i]) + "\n";
    return out;
}

std::string render_summary_csv(const MetricReport& r) {
    double mean = 0.0;
    for (double v : r.mse_per_subcarrier) mean += v;
    if (!r.mse_per_subcarrier.empty()) mean /= static_cast<double>(r.mse_per_subcarrier.size());
    std::string out = "key,value\n";
    out += "waveform," + std::string(to_string(r.config.waveform)) + "\n";
    out += "num_trials," + std::to_string(r.num_trials) + "\n";
    out += "ber," + format_real(r.ber) + "\n";
    out += "bit_errors," + std::to_string(r.bit_errors) + "\n";
    out += "num_bits," + std::to_string(r.num_bits) + "\n";
    out += "mean_mse_linear," + format_real(mean) + "\n";
    out += "mean_mse_db," + format_real(10.0 * std::log10(mean)) + "\n";
    return out;
}

std::vector<double> parse_mse_csv(std::string_view text) {
    std::vector<double> mse;
    for (const auto& row : parse_csv(text, "subcarrier,mse_linear,mse_db")) {
        if (row.size() != 3) throw ParseError("mse.csv rows need 3 fields");
        if (parse_u64("subcarrier", row[0]) != mse.size()) throw ParseError("mse.csv subcarriers out of order");
        mse.push_back(kv::parse_real("mse_linear", row[1]));
    }
    return mse;
}

Psd parse_psd_csv(std::string_view text) {
    Psd psd;
    for (const auto& row : parse_csv(text, "freq_hz,power_db")) {
        if (row.size() != 2) throw ParseError("psd.csv rows need 2 fields");
        psd.freq_hz.push_back(kv::parse_real("freq_hz", row[0]));
        psd.power_db.push_back(kv::parse_real("power_db", row[1]));
    }
    return psd;
}

void write_report(const std::filesystem::path& dir, const MetricReport& report) {
    std::filesystem::create_directories(dir);
    write_file(dir / "mse.csv", render_mse_csv(report.mse_per_subcarrier));
    write_file(dir / "psd.csv", render_psd_csv(report.psd));
    write_file(dir / "summary.csv", render_summary_csv(report));
    write_file(dir / "config.echo", render_config(report.config));
}

MetricReport read_report(const std::filesystem::path& dir) {
    MetricReport r;
    r.mse_per_subcarrier = parse_mse_csv(read_file(dir / "mse.csv"));
    r.psd = parse_psd_csv(read_file(dir / "psd.csv"));
    r.config = parse_config(read_file(dir / "config.echo"));
    for (const auto& row : parse_csv(read_file(dir / "summary.csv"), "key,value")) {
        if (row.size() != 2) throw ParseError("summary.csv rows need 2 fields");
        if (row[0] == "num_trials") r.num_trials = parse_u64(row[0], row[1]);
        else if (row[0] == "ber") r.ber = kv::parse_real(row[0], row[1]);
        else if (row[0] == "bit_errors") r.bit_errors = parse_u64(row[0], row[1]);
        else if (row[0] == "num_bits") r.num_bits = parse_u64(row[0], row[1]);
    }
    return r;
}

}  // namespace wavecore
