import numpy as np
import pytest

import wavecore as wc


def test_defaults_and_config_round_trip():
    p = wc.default_parameters(wc.Waveform.CP_OFDM)
    assert p.num_subcarriers == 128
    assert p.cp_length == 16
    assert wc.parse_config(wc.render_config(p)) == p
    with pytest.raises(wc.ConfigError):
        wc.parse_config("num_subcarriers = 127\n")
    with pytest.raises(ValueError):
        wc.parse_config("no_such_key = 1\n")


def test_prototype_is_symmetric_unit_energy():
    g = wc.design_phydyas(128, 4)
    assert g.shape == (512,)
    assert np.allclose(g, g[::-1], atol=1e-15)
    assert np.sum(g**2) == pytest.approx(1.0, abs=1e-12)


def test_fbmc_loopback():
    p = wc.default_parameters(wc.Waveform.FBMC_OQAM)
    d = wc.generate_data(p, 3)
    assert d.shape == (128, 32) and d.dtype == np.float64
    s = wc.fbmc_modulate(d, p)
    assert s.shape == (31 * 64 + 512,)
    z = wc.fbmc_demodulate(s, p)
    assert 10 * np.log10(np.mean((z.real - d) ** 2)) <= -55.0


def test_ofdm_loopback_and_stagger():
    p = wc.default_parameters(wc.Waveform.CP_OFDM)
    c = wc.generate_data(p, 4)
    assert np.iscomplexobj(c)
    z = wc.ofdm_demodulate(wc.ofdm_modulate(c, p), p)
    assert np.max(np.abs(z - c)) <= 1e-12
    assert np.allclose(wc.oqam_destagger(wc.oqam_stagger(c)), c, atol=1e-15)


def test_channel_and_noise():
    p = wc.default_parameters(wc.Waveform.CP_OFDM)
    p.channel_profile = "ITU_VehA"
    taps = wc.generate_rayleigh_channel(p, 1)
    assert taps.shape == (6,)
    s = np.ones(100, dtype=complex)
    r = wc.apply_multipath(s, taps, p)
    assert np.allclose(r, np.convolve(s, taps))
    noise = wc.apply_awgn(np.zeros(200000, dtype=complex), 0.0, 1.0, 5)
    assert np.mean(np.abs(noise) ** 2) == pytest.approx(1.0, rel=0.02)


def test_psd_and_run_chain():
    freq, level = wc.compute_psd(np.exp(2j * np.pi * 0.25 * np.arange(4096)), 256)
    assert freq[np.argmax(level)] == pytest.approx(0.25)

    p = wc.default_parameters(wc.Waveform.FBMC_OQAM)
    p.snr_db = 15.0
    report = wc.run_chain(p, 4, 2)
    assert report["mse_per_subcarrier"].shape == (128,)
    assert report["num_bits"] == 4 * 128 * 16 * 2
    again = wc.run_chain(p, 4, 1)
    assert np.array_equal(report["mse_per_subcarrier"], again["mse_per_subcarrier"])
    assert report["bit_errors"] == again["bit_errors"]

    p.cfo_normalized = 0.1
    p.snr_db = -40.0
    with pytest.raises(wc.StageError):
        wc.run_chain(p, 1)
