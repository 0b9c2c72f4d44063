#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavecore/chain.hpp"
#include "wavecore/channel.hpp"
#include "wavecore/errors.hpp"
#include "wavecore/fbmc.hpp"
#include "wavecore/metrics.hpp"
#include "wavecore/ofdm.hpp"
#include "wavecore/prototype_filter.hpp"

namespace py = pybind11;
using namespace wavecore;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<cd, py::array::c_style | py::array::forcecast>;

template <class T>
Grid<T> to_grid(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ShapeError("expected a 2-D array (subcarriers x symbols)");
    Grid<T> g(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), g.data().begin());
    return g;
}

template <class T>
py::array_t<T> from_grid(const Grid<T>& g) {
    py::array_t<T> a({g.subcarriers(), g.symbols()});
    std::copy(g.data().begin(), g.data().end(), a.mutable_data());
    return a;
}

template <class T>
py::array_t<T> from_vector(const std::vector<T>& v) {
    py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

SampleStream to_stream(const ComplexArray& a, double sample_rate_hz) {
    if (a.ndim() != 1) throw ShapeError("expected a 1-D sample array");
    SampleStream s;
    s.sample_rate_hz = sample_rate_hz;
    s.samples.assign(a.data(), a.data() + a.size());
    return s;
}

py::object symbols_to_numpy(const SymbolGrid& g) {
    if (g.domain() == SymbolDomain::RealOqam) return from_grid(g.real());
    return from_grid(g.complex());
}

}  // namespace

PYBIND11_MODULE(_wavecore, m) {
    m.doc() = "FBMC-OQAM / CP-OFDM link simulation core";

    static py::exception<Error> base(m, "WavecoreError", PyExc_RuntimeError);
    static py::exception<ParseError> config(m, "ConfigError", PyExc_ValueError);
    static py::exception<StageError> stage_error(m, "StageError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(config, (e.key() + ": " + e.what()).c_str());
        } catch (const ParseError& e) {
            py::set_error(config, e.what());
        } catch (const StageError& e) {
            py::set_error(stage_error, (e.stage() + ": " + e.what()).c_str());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::enum_<Waveform>(m, "Waveform")
        .value("FBMC_OQAM", Waveform::FbmcOqam)
        .value("CP_OFDM", Waveform::CpOfdm);
    py::enum_<PrototypeKind>(m, "PrototypeKind")
        .value("PHYDYAS", PrototypeKind::Phydyas)
        .value("RECTANGULAR", PrototypeKind::Rectangular);
    py::enum_<ChannelMode>(m, "ChannelMode").value("FIXED", ChannelMode::Fixed).value("ERGODIC", ChannelMode::Ergodic);
    py::enum_<EstimationMethod>(m, "EstimationMethod")
        .value("KNOWN", EstimationMethod::Known)
        .value("PREAMBLE_LS", EstimationMethod::PreambleLs);

    py::class_<ChainParameters>(m, "ChainParameters")
        .def(py::init([] { return default_parameters(Waveform::FbmcOqam); }))
        .def_readwrite("waveform", &ChainParameters::waveform)
        .def_readwrite("num_subcarriers", &ChainParameters::num_subcarriers)
        .def_readwrite("num_real_symbols", &ChainParameters::num_real_symbols)
        .def_readwrite("overlap_factor", &ChainParameters::overlap_factor)
        .def_readwrite("cp_length", &ChainParameters::cp_length)
        .def_readwrite("constellation_size", &ChainParameters::constellation_size)
        .def_readwrite("snr_db", &ChainParameters::snr_db)
        .def_readwrite("sample_rate_hz", &ChainParameters::sample_rate_hz)
        .def_readwrite("velocity_mps", &ChainParameters::velocity_mps)
        .def_readwrite("carrier_freq_hz", &ChainParameters::carrier_freq_hz)
        .def_readwrite("cfo_normalized", &ChainParameters::cfo_normalized)
        .def_readwrite("timing_offset", &ChainParameters::timing_offset)
        .def_readwrite("seed", &ChainParameters::seed)
        .def_readwrite("prototype", &ChainParameters::prototype)
        .def_readwrite("active_subcarriers", &ChainParameters::active_subcarriers)
        .def_readwrite("channel_profile", &ChainParameters::channel_profile)
        .def_readwrite("channel_delays_ns", &ChainParameters::channel_delays_ns)
        .def_readwrite("channel_powers_db", &ChainParameters::channel_powers_db)
        .def_readwrite("channel_mode", &ChainParameters::channel_mode)
        .def_readwrite("estimation", &ChainParameters::estimation)
        .def_readwrite("psd_segment_length", &ChainParameters::psd_segment_length)
        .def("validate", [](const ChainParameters& p) { validate(p); })
        .def("__eq__", [](const ChainParameters& a, const ChainParameters& b) { return a == b; })
        .def("__repr__", [](const ChainParameters& p) { return render_config(p); });

    m.def("default_parameters", &default_parameters, py::arg("waveform"));
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("render_config", &render_config, py::arg("params"));

    m.def("design_phydyas", [](std::size_t two_m, std::size_t k) { return from_vector(design_phydyas(two_m, k).taps); },
          py::arg("num_subcarriers"), py::arg("overlap_factor"));
    m.def("design_rectangular", [](std::size_t two_m) { return from_vector(design_rectangular(two_m).taps); },
          py::arg("num_subcarriers"));
    m.def("design_prototype", [](const ChainParameters& p) { return from_vector(design_prototype(p).taps); },
          py::arg("params"));

    m.def("generate_data", [](const ChainParameters& p, std::uint64_t seed) { return symbols_to_numpy(generate_data(p, seed)); },
          py::arg("params"), py::arg("seed"),
          "Random unit-power symbols: real staggered OQAM for FBMC-OQAM, complex QAM for CP-OFDM.");
    m.def("oqam_stagger", [](const ComplexArray& c) { return from_grid(oqam_stagger(to_grid<cd>(c))); }, py::arg("qam"));
    m.def("oqam_destagger", [](const RealArray& d) { return from_grid(oqam_destagger(to_grid<double>(d))); },
          py::arg("oqam"));

    m.def("fbmc_modulate",
          [](const RealArray& d, const ChainParameters& p) {
              return from_vector(fbmc_modulate(to_grid<double>(d), design_prototype(p), p).samples);
          },
          py::arg("symbols"), py::arg("params"));
    m.def("fbmc_demodulate",
          [](const ComplexArray& r, const ChainParameters& p, std::optional<std::size_t> num_symbols) {
              const auto s = to_stream(r, p.sample_rate_hz);
              return from_grid(fbmc_demodulate(s, design_prototype(p), p, num_symbols.value_or(p.num_real_symbols)));
          },
          py::arg("samples"), py::arg("params"), py::arg("num_symbols") = py::none());
    m.def("ofdm_modulate",
          [](const ComplexArray& c, const ChainParameters& p) { return from_vector(ofdm_modulate(to_grid<cd>(c), p).samples); },
          py::arg("symbols"), py::arg("params"));
    m.def("ofdm_demodulate",
          [](const ComplexArray& r, const ChainParameters& p, std::optional<std::size_t> num_symbols) {
              const auto s = to_stream(r, p.sample_rate_hz);
              return from_grid(ofdm_demodulate(s, p, num_symbols.value_or(p.num_complex_symbols())));
          },
          py::arg("samples"), py::arg("params"), py::arg("num_symbols") = py::none());

    m.def("generate_rayleigh_channel",
          [](const ChainParameters& p, std::uint64_t seed) {
              return from_vector(generate_rayleigh_channel(profile_for(p), p, seed).taps);
          },
          py::arg("params"), py::arg("seed"), "Sample-spaced taps of one realization of the configured profile.");
    m.def("apply_multipath",
          [](const ComplexArray& s, const ComplexArray& taps, const ChainParameters& p) {
              const auto h = ChannelRealization::from_taps(to_stream(taps, 1.0).samples, "custom", p.num_subcarriers);
              return from_vector(apply_multipath(to_stream(s, p.sample_rate_hz), h).samples);
          },
          py::arg("samples"), py::arg("taps"), py::arg("params"));
    m.def("apply_awgn",
          [](const ComplexArray& s, double snr_db, double signal_power, std::uint64_t seed) {
              return from_vector(apply_awgn(to_stream(s, 1.0), snr_db, signal_power, seed).samples);
          },
          py::arg("samples"), py::arg("snr_db"), py::arg("signal_power"), py::arg("seed"));

    m.def("compute_psd",
          [](const ComplexArray& s, std::size_t segment, double sample_rate_hz) {
              const auto psd = compute_psd(to_stream(s, sample_rate_hz), segment);
              return py::make_tuple(from_vector(psd.freq_hz), from_vector(psd.power_db));
          },
          py::arg("samples"), py::arg("segment_length"), py::arg("sample_rate_hz") = 1.0);

    m.def("run_chain",
          [](const ChainParameters& p, std::size_t trials, std::size_t threads) {
              MetricReport r;
              {
                  py::gil_scoped_release release;
                  r = run_chain(p, trials, threads);
              }
              py::dict out;
              out["mse_per_subcarrier"] = from_vector(r.mse_per_subcarrier);
              out["ber"] = r.ber;
              out["bit_errors"] = r.bit_errors;
              out["num_bits"] = r.num_bits;
              out["num_trials"] = r.num_trials;
              out["psd_freq_hz"] = from_vector(r.psd.freq_hz);
              out["psd_power_db"] = from_vector(r.psd.power_db);
              return out;
          },
          py::arg("params"), py::arg("num_trials"), py::arg("num_threads") = 0);
}
