#![allow(dead_code)]

use psf_harness::config::{
    FilterConfig, GridConfig, InitialConfig, ModelConfig, OutputConfig, ReferenceConfig, Setting, TimeConfig,
};
use psf_harness::RunConfig;

/// A small Euler run that finishes in well under a second.
pub fn small_euler() -> RunConfig {
    RunConfig {
        run_id: "small".into(),
        model: ModelConfig::Euler { mach: 0.5 },
        grid: GridConfig {
            points: 64,
            dx: 0.25,
            buffer: Setting::Fixed(4.0),
        },
        filter: FilterConfig {
            delta: 1e-6,
            k_b: 1.0,
            sigma: Setting::Fixed(0.5),
            t_step: Setting::AUTO,
            enabled: true,
        },
        initial: InitialConfig::RingPulse2d {
            k: 4.0,
            center: [0.0, 0.0],
            width: 1.0,
            component: None,
        },
        time: TimeConfig {
            t_final: 4.0,
            observe_every: 0.5,
        },
        output: OutputConfig::default(),
        reference: ReferenceConfig {
            enabled: true,
            enlargement_factor: 4,
        },
    }
}

/// A small Schrödinger run with an automatic buffer.
pub fn small_schrodinger() -> RunConfig {
    RunConfig {
        run_id: "small_schro".into(),
        model: ModelConfig::Schrodinger,
        grid: GridConfig {
            points: 512,
            dx: 0.1,
            buffer: Setting::AUTO,
        },
        filter: FilterConfig {
            delta: 1e-2,
            k_b: 0.0,
            sigma: Setting::Fixed(1.0),
            t_step: Setting::AUTO,
            enabled: true,
        },
        initial: InitialConfig::Gaussian1d {
            k: 3.0,
            center: 0.0,
            width: 1.0,
        },
        time: TimeConfig {
            t_final: 1.0,
            observe_every: 0.25,
        },
        output: OutputConfig::default(),
        reference: ReferenceConfig {
            enabled: true,
            enlargement_factor: 8,
        },
    }
}
