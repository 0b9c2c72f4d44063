"""Multicarrier waveform simulation: FBMC-OQAM and CP-OFDM modems, channels and metrics."""

from ._wavecore import (
    ChainParameters,
    ChannelMode,
    ConfigError,
    EstimationMethod,
    PrototypeKind,
    StageError,
    Waveform,
    WavecoreError,
    apply_awgn,
    apply_multipath,
    compute_psd,
    default_parameters,
    design_phydyas,
    design_prototype,
    design_rectangular,
    fbmc_demodulate,
    fbmc_modulate,
    generate_data,
    generate_rayleigh_channel,
    ofdm_demodulate,
    ofdm_modulate,
    oqam_destagger,
    oqam_stagger,
    parse_config,
    render_config,
    run_chain,
)

__all__ = [
    "ChainParameters",
    "ChannelMode",
    "ConfigError",
    "EstimationMethod",
    "PrototypeKind",
    "StageError",
    "Waveform",
    "WavecoreError",
    "apply_awgn",
    "apply_multipath",
    "compute_psd",
    "default_parameters",
    "design_phydyas",
    "design_prototype",
    "design_rectangular",
    "fbmc_demodulate",
    "fbmc_modulate",
    "generate_data",
    "generate_rayleigh_channel",
    "ofdm_demodulate",
    "ofdm_modulate",
    "oqam_destagger",
    "oqam_stagger",
    "parse_config",
    "render_config",
    "run_chain",
]
