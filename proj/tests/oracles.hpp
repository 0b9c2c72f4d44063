#pragma once

// Independent reference evaluations used by the tests. Nothing here goes
// through the library's transform paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

/// g_{m,l}[n] = j^{m+l} g[n - lM] exp(j 2 pi m (n - lM - (L-1)/2) / 2M), straight from the formula.
inline cd basis(const std::vector<double>& g, std::size_t two_m, std::size_t m, std::size_t l, long n) {
    const long half = static_cast<long>(two_m / 2);
    const long k = n - static_cast<long>(l) * half;
    if (k < 0 || k >= static_cast<long>(g.size())) return {};
    const double centre = (static_cast<double>(g.size()) - 1.0) / 2.0;
    const double phase = 2.0 * std::numbers::pi / static_cast<double>(two_m) * static_cast<double>(m) *
                         (static_cast<double>(k) - centre);
    return std::pow(cd(0.0, 1.0), static_cast<int>(m + l)) * g[static_cast<std::size_t>(k)] * std::polar(1.0, phase);
}

/// Direct double sum over (m, l) for every output sample.
template <class Grid>
std::vector<cd> fbmc_synthesis(const Grid& d, const std::vector<double>& g, std::size_t two_m) {
    const std::size_t half = two_m / 2;
    const std::size_t len = (d.symbols() - 1) * half + g.size();
    std::vector<cd> s(len);
    for (std::size_t n = 0; n < len; ++n)
        for (std::size_t m = 0; m < two_m; ++m)
            for (std::size_t l = 0; l < d.symbols(); ++l)
                if (d(m, l) != 0.0) s[n] += d(m, l) * basis(g, two_m, m, l, static_cast<long>(n));
    return s;
}

/// z_{m,l} = sum_n r[n] conj(g_{m,l}[n]).
inline cd fbmc_analysis(const std::vector<cd>& r, const std::vector<double>& g, std::size_t two_m, std::size_t m,
                        std::size_t l) {
    cd acc{};
    for (std::size_t n = 0; n < r.size(); ++n) acc += r[n] * std::conj(basis(g, two_m, m, l, static_cast<long>(n)));
    return acc;
}

inline std::vector<cd> linear_convolution(const std::vector<cd>& s, const std::vector<cd>& h) {
    std::vector<cd> out(s.size() + h.size() - 1);
    for (std::size_t n = 0; n < out.size(); ++n)
        for (std::size_t k = 0; k < h.size(); ++k)
            if (n >= k && n - k < s.size()) out[n] += h[k] * s[n - k];
    return out;
}

/// X[k] = sum x[n] exp(-j 2 pi k n / N) by direct summation.
inline std::vector<cd> dft(const std::vector<cd>& x, std::size_t n) {
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < x.size(); ++i)
            out[k] += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * i) / static_cast<double>(n));
    return out;
}

/// Gaussian tail Q(x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// Binomial standard deviation of an error-rate estimate.
inline double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace oracle
