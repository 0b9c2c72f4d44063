#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wavecore/chain.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/metrics.hpp"
#include "wavecore/ofdm.hpp"

using namespace wavecore;

namespace {

double leakage_beyond_edge(const ChainParameters& p, double spacings) {
    const auto psd = transmit_psd(p, 1);
    const auto band = occupied_band(p);
    const double df = p.sample_rate_hz / static_cast<double>(p.num_subcarriers);
    return 0.5 * (psd_level_at(psd, band.high_hz + spacings * df) + psd_level_at(psd, band.low_hz - spacings * df));
}

ChainParameters leakage_params(Waveform w) {
    auto p = default_parameters(w);
    p.active_subcarriers = 64;
    p.num_real_symbols = 400;
    return p;
}

}  // namespace

TEST_CASE("MSE on small grids") {
    RealGrid d(2, 2), d_hat(2, 2);
    d(0, 0) = 1;
    d(0, 1) = -1;
    d_hat(0, 0) = 1;
    d_hat(0, 1) = 1;
    d_hat(1, 0) = 0.5;
    CHECK(compute_mse(d, d_hat) == std::vector<double>{2.0, 0.125});

    ComplexGrid c(1, 2), c_hat(1, 2);
    c(0, 0) = {1, 1};
    c_hat(0, 0) = {0, 0};
    c_hat(0, 1) = {0, 2};
    CHECK(compute_mse(c, c_hat) == std::vector<double>{3.0});
    CHECK_THROWS_AS(compute_mse(RealGrid(2, 2), RealGrid(2, 3)), ShapeError);
}

TEST_CASE("MSE follows a subcarrier permutation") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 1.0);
    RealGrid d(8, 5), d_hat(8, 5);
    for (auto& v : d.data()) v = n(rng);
    for (auto& v : d_hat.data()) v = n(rng);
    std::vector<std::size_t> perm{3, 0, 7, 1, 6, 2, 5, 4};
    RealGrid pd(8, 5), pd_hat(8, 5);
    for (std::size_t m = 0; m < 8; ++m)
        for (std::size_t l = 0; l < 5; ++l) {
            pd(m, l) = d(perm[m], l);
            pd_hat(m, l) = d_hat(perm[m], l);
        }
    const auto a = compute_mse(d, d_hat);
    const auto b = compute_mse(pd, pd_hat);
    for (std::size_t m = 0; m < 8; ++m) CHECK(b[m] == a[perm[m]]);
}

TEST_CASE("accumulator merge equals one pass") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    RealGrid a(4, 3), b(4, 3), z(4, 3);
    for (auto& v : a.data()) v = n(rng);
    for (auto& v : b.data()) v = n(rng);
    MseAccumulator one, left, right;
    one.add(a, z);
    one.add(b, z);
    left.add(a, z);
    right.add(b, z);
    left.merge(right);
    CHECK(left.count() == 6);
    const auto x = one.mse(), y = left.mse();
    for (std::size_t m = 0; m < 4; ++m) CHECK(x[m] == doctest::Approx(y[m]).epsilon(1e-15));
}

TEST_CASE("CP-OFDM MSE over AWGN approaches the noise variance") {
    auto p = default_parameters(Waveform::CpOfdm);
    p.num_real_symbols = 200;
    const double snr_db = 10.0;
    const auto c = generate_data(p, 6).complex();
    const auto s = ofdm_modulate(c, p);
    const auto r = apply_awgn(s, snr_db, average_power(s), 7);
    const auto mse = compute_mse(c, ofdm_demodulate(r, p, c.symbols()));
    double mean = 0.0;
    for (double v : mse) mean += v;
    mean /= static_cast<double>(mse.size());
    const double expected = average_power(s) / std::pow(10.0, snr_db / 10.0);
    CHECK(std::abs(mean / expected - 1.0) < 0.05);
    CHECK(std::abs(average_power(s) - 1.0) < 0.05);
}

TEST_CASE("BER counting") {
    CHECK(compute_ber({0, 1, 1, 0}, {0, 0, 1, 1}) == 0.5);
    CHECK(count_bit_errors({1, 1, 1}, {1, 1, 1}) == 0);
    CHECK(compute_ber({}, {}) == 0.0);
    CHECK_THROWS_AS(compute_ber({0, 1}, {0}), ShapeError);
}

TEST_CASE("QPSK BER through the chain follows Q(sqrt(snr))") {
    auto p = default_parameters(Waveform::CpOfdm);
    p.snr_db = 8.0;
    p.seed = 17;
    const auto report = run_chain(p, 50);
    const double expected = oracle::q_function(std::sqrt(std::pow(10.0, p.snr_db / 10.0)));
    const double sigma = oracle::binomial_sigma(expected, static_cast<double>(report.num_bits));
    CHECK(report.num_bits == 50u * 128u * 16u * 2u);
    CHECK(std::abs(report.ber - expected) <= 3.0 * sigma);
}

TEST_CASE("PSD of a tone") {
    SampleStream s;
    s.sample_rate_hz = 1000.0;
    s.samples.resize(8192);
    for (std::size_t n = 0; n < s.size(); ++n)
        s.samples[n] = std::polar(1.0, 2.0 * std::numbers::pi * 125.0 * static_cast<double>(n) / 1000.0);
    const auto psd = compute_psd(s, 256);
    REQUIRE(psd.freq_hz.size() == 256);
    CHECK(psd.freq_hz.front() == -500.0);
    CHECK(std::is_sorted(psd.freq_hz.begin(), psd.freq_hz.end()));
    auto sorted = psd.power_db;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const auto peak = std::max_element(psd.power_db.begin(), psd.power_db.end());
    CHECK(psd.freq_hz[static_cast<std::size_t>(peak - psd.power_db.begin())] == 125.0);
    CHECK(*peak - median >= 60.0);
}

TEST_CASE("PSD of white noise is flat") {
    SampleStream zero;
    zero.sample_rate_hz = 1.0;
    zero.samples.assign(1'000'000, cd{});
    const auto psd = compute_psd(apply_awgn(zero, 0.0, 1.0, 8), 256);
    for (double v : psd.power_db) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("PSD argument checks") {
    SampleStream s;
    s.samples.assign(100, cd{1.0, 0.0});
    CHECK_THROWS_AS(compute_psd(s, 48), ShapeError);
    CHECK_THROWS_AS(compute_psd(s, 128), ShapeError);
    CHECK_THROWS_AS(compute_psd(s, 64, FrequencyBand{0.301, 0.31}), ShapeError);
}

TEST_CASE("occupied band of a centred allocation") {
    auto p = default_parameters(Waveform::FbmcOqam);
    p.active_subcarriers = 64;
    const auto band = occupied_band(p);
    const double df = p.sample_rate_hz / 128.0;
    CHECK(band.low_hz == doctest::Approx(-32.5 * df));
    CHECK(band.high_hz == doctest::Approx(31.5 * df));
}

TEST_CASE("PHYDYAS FBMC leaks far less than CP-OFDM") {
    const double fbmc = leakage_beyond_edge(leakage_params(Waveform::FbmcOqam), 3.0);
    const double ofdm = leakage_beyond_edge(leakage_params(Waveform::CpOfdm), 3.0);
    CHECK(ofdm - fbmc >= 25.0);
}

TEST_CASE("rectangular prototype leaks far more than PHYDYAS") {
    auto rect = leakage_params(Waveform::FbmcOqam);
    rect.prototype = PrototypeKind::Rectangular;
    rect.overlap_factor = 1;
    const double phydyas = leakage_beyond_edge(leakage_params(Waveform::FbmcOqam), 3.0);
    CHECK(leakage_beyond_edge(rect, 3.0) - phydyas >= 25.0);
}

TEST_CASE("CSV rendering round-trips") {
    const std::vector<double> mse{0.1, 1e-7, 3.14159265358979, 2.5e-300};
    const auto text = render_mse_csv(mse);
    CHECK(text.rfind("subcarrier,mse_linear,mse_db\n", 0) == 0);
    CHECK(parse_mse_csv(text) == mse);

    Psd psd{{-1.5, 0.0, 1.5}, {-3.25, 0.0, -120.125}};
    CHECK(parse_psd_csv(render_psd_csv(psd)) == psd);

    CHECK_THROWS_AS(parse_mse_csv("a,b,c\n0,1,0\n"), ParseError);
    CHECK_THROWS_AS(parse_mse_csv("subcarrier,mse_linear,mse_db\n1,1,0\n"), ParseError);
}

TEST_CASE("report directory round-trips") {
    auto p = default_parameters(Waveform::FbmcOqam);
    p.snr_db = 15.0;
    p.num_real_symbols = 8;
    const auto report = run_chain(p, 3);
    const auto dir = std::filesystem::temp_directory_path() / "wavecore_report_roundtrip";
    std::filesystem::remove_all(dir);
    write_report(dir, report);
    for (const char* f : {"mse.csv", "psd.csv", "summary.csv", "config.echo"})
        CHECK(std::filesystem::exists(dir / f));
    CHECK(read_report(dir) == report);
    std::filesystem::remove_all(dir);
}
