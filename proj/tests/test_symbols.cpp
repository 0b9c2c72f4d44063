#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/metrics.hpp"
#include "wavecore/symbols.hpp"

using namespace wavecore;

TEST_CASE("4-QAM staggers to +-1 with unit real-symbol power") {
    // Oracle: the 4-QAM alphabet (+-1 +- j)/sqrt(2); each component scaled by
    // sqrt(2) is +-1, so the real-symbol power is exactly 1.
    const QamConstellation qam(4);
    for (const auto& pt : qam.points()) {
        CHECK(std::abs(std::abs(pt.real() * std::sqrt(2.0)) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(pt.imag() * std::sqrt(2.0)) - 1.0) < 1e-15);
    }

    auto p = default_parameters(Waveform::FbmcOqam);
    p.num_subcarriers = 1000;
    p.active_subcarriers = 1000;
    p.num_real_symbols = 1000;
    const auto grid = generate_data(p, 3);
    REQUIRE(grid.domain() == SymbolDomain::RealOqam);
    double power = 0.0;
    for (double v : grid.real().data()) {
        REQUIRE(std::abs(std::abs(v) - 1.0) < 1e-12);
        power += v * v;
    }
    power /= static_cast<double>(grid.real().size());
    CHECK(std::abs(power - 1.0) < 0.005);
}

TEST_CASE("generate_data is deterministic per seed") {
    const auto p = default_parameters(Waveform::FbmcOqam);
    CHECK(generate_data(p, 11) == generate_data(p, 11));
    CHECK_FALSE(generate_data(p, 11) == generate_data(p, 12));
}

TEST_CASE("16-QAM OFDM symbols come from the normalised 16-point alphabet") {
    std::set<std::pair<long, long>> alphabet;
    double alphabet_power = 0.0;
    for (int a : {-3, -1, 1, 3})
        for (int b : {-3, -1, 1, 3}) {
            alphabet.insert({a, b});
            alphabet_power += (a * a + b * b) / 10.0;
        }
    CHECK(alphabet_power / 16.0 == doctest::Approx(1.0).epsilon(1e-15));

    auto p = default_parameters(Waveform::CpOfdm);
    p.constellation_size = 16;
    const auto grid = generate_data(p, 5);
    REQUIRE(grid.domain() == SymbolDomain::ComplexQam);
    CHECK(grid.subcarriers() == 128);
    CHECK(grid.symbols() == 16);
    for (const auto& c : grid.complex().data()) {
        const double re = c.real() * std::sqrt(10.0);
        const double im = c.imag() * std::sqrt(10.0);
        REQUIRE(std::abs(re - std::round(re)) < 1e-12);
        REQUIRE(std::abs(im - std::round(im)) < 1e-12);
        CHECK(alphabet.count({std::lround(re), std::lround(im)}) == 1);
    }
}

TEST_CASE("generated streams pass mean/power sanity for every order") {
    for (std::size_t q : {4, 16, 64, 256}) {
        auto p = default_parameters(Waveform::CpOfdm);
        p.constellation_size = q;
        p.num_subcarriers = 512;
        p.active_subcarriers = 512;
        p.num_real_symbols = 400;  // 1.02e5 symbols
        const auto grid = generate_data(p, q);
        cd mean{};
        double power = 0.0;
        for (const auto& c : grid.complex().data()) {
            mean += c;
            power += std::norm(c);
        }
        const double n = static_cast<double>(grid.complex().size());
        CHECK(std::abs(mean / n) < 0.01);
        CHECK(std::abs(power / n - 1.0) < 0.01);
    }
}

TEST_CASE("oqam_stagger places both components of a symbol on adjacent slots") {
    ComplexGrid qam(4, 2);
    qam(0, 0) = {1.0, 1.0};
    qam(1, 0) = {2.0, -3.0};
    const auto d = oqam_stagger(qam);
    CHECK(d.subcarriers() == 4);
    CHECK(d.symbols() == 4);
    CHECK(d(0, 0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(d(0, 1) == doctest::Approx(std::sqrt(2.0)));
    // odd subcarrier leads with the imaginary part
    CHECK(d(1, 0) == doctest::Approx(-3.0 * std::sqrt(2.0)));
    CHECK(d(1, 1) == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(d(0, 2) == 0.0);
}

TEST_CASE("zero grid staggers and destaggers to zero") {
    CHECK(oqam_stagger(ComplexGrid(8, 3)) == RealGrid(8, 6));
    CHECK(oqam_destagger(RealGrid(8, 6)) == ComplexGrid(8, 3));
}

TEST_CASE("stagger/destagger round trip on random grids") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexGrid x(2 * (2 + rng() % 20), 1 + rng() % 20);
        for (auto& v : x.data()) v = {n(rng), n(rng)};
        const auto back = oqam_destagger(oqam_stagger(x));
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back.data()[i] - x.data()[i]) < 1e-14);
        const auto again = oqam_stagger(back);
        CHECK(oqam_destagger(again).same_shape(x));
    }
}

TEST_CASE("destagger recovers a generated 4-QAM burst") {
    auto p = default_parameters(Waveform::FbmcOqam);
    const auto burst = generate_burst(p, 21);
    const auto back = oqam_destagger(burst.symbols.real());
    REQUIRE(back.same_shape(burst.qam));
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(std::abs(back.data()[i] - burst.qam.data()[i]) < 1e-15);
}

TEST_CASE("domain mismatches raise DomainError") {
    const SymbolGrid real_grid(RealGrid(4, 2));
    const SymbolGrid complex_grid(ComplexGrid(4, 2));
    CHECK_THROWS_AS(oqam_stagger(real_grid), DomainError);
    CHECK_THROWS_AS(oqam_destagger(complex_grid), DomainError);
    CHECK_THROWS_AS((void)real_grid.complex(), DomainError);
}

TEST_CASE("hard_decide on noiseless symbols is lossless") {
    for (std::size_t q : {4, 16, 64, 256}) {
        auto p = default_parameters(Waveform::CpOfdm);
        p.constellation_size = q;
        const auto burst = generate_burst(p, 100 + q);
        const auto dec = hard_decide(burst.symbols, q);
        CHECK(dec.symbols == burst.qam);
        CHECK(compute_ber(burst.bits, dec.bits) == 0.0);

        p.waveform = Waveform::FbmcOqam;
        const auto fb = generate_burst(p, 200 + q);
        CHECK(hard_decide(fb.symbols, q).bits == fb.bits);
    }
}

TEST_CASE("Gray labels of neighbouring points differ in one bit") {
    for (std::size_t q : {4, 16, 64, 256}) {
        const QamConstellation qam(q);
        const auto pts = qam.points();
        const double step = qam.level(1) - qam.level(0);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                if (std::abs(std::abs(pts[a] - pts[b]) - step) < 1e-12) CHECK(std::popcount(a ^ b) == 1);
    }
}

TEST_CASE("ties resolve toward the smaller label") {
    const QamConstellation qam(4);
    const double a = 1.0 / std::sqrt(2.0);
    // In-phase component sits exactly between -a (label bit 0) and +a (bit 1).
    const auto d = qam.decide({0.0, a});
    CHECK(d.label == 0b01);
    CHECK(d.point.real() == doctest::Approx(-a));
    CHECK(d.point.imag() == doctest::Approx(a));
    const auto both = qam.decide({0.0, 0.0});
    CHECK(both.label == 0);
}

TEST_CASE("QPSK BER under AWGN matches Q(sqrt(gamma))") {
    const double snr_db = 4.0;
    const double gamma = std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(1.0 / gamma / 2.0);
    auto p = default_parameters(Waveform::CpOfdm);
    p.num_subcarriers = 1000;
    p.active_subcarriers = 1000;
    p.num_real_symbols = 2000;  // 10^6 symbols
    const auto burst = generate_burst(p, 77);
    std::mt19937_64 rng(78);
    std::normal_distribution<double> n(0.0, sigma);
    ComplexGrid noisy = burst.qam;
    for (auto& v : noisy.data()) v += cd(n(rng), n(rng));
    const double ber = compute_ber(burst.bits, hard_decide(noisy, 4).bits);
    const double expected = oracle::q_function(std::sqrt(gamma));
    CHECK(std::abs(ber - expected) <= 3.0 * oracle::binomial_sigma(expected, static_cast<double>(burst.bits.size())));
}
