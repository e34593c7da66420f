//! Flat `key = value` run configuration with SI units in the key names.
//!
//! ```text
//! # 5 eV electron on a 10 eV step, kicked at t0
//! potential.kind = step
//! potential.v0_j = 1.602176634e-18
//! kick.0.q_per_m = 1e8
//! kick.0.time_s = 4.53e-15
//! ```
//!
//! Keys that are absent take the reference electron barrier values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::domain::{Grid1D, PacketSpec, ParticleSpec, PotentialShape, PotentialSpec};
use crate::error::{Error, Result};
use crate::experiments::scenarios::{electron_config, transmission_boundary, Geometry};
use crate::propagator::{KickEvent, SimConfig};

/// Scalar keys with their unit suffix split off.
const SCALAR_KEYS: &[(&str, &str)] = &[
    ("particle.mass", "_kg"),
    ("particle.hbar", "_js"),
    ("grid.x_min", "_m"),
    ("grid.x_max", "_m"),
    ("grid.n_points", ""),
    ("potential.kind", ""),
    ("potential.v0", "_j"),
    ("potential.x0", "_m"),
    ("potential.x1", "_m"),
    ("potential.edge", "_m"),
    ("potential.ramp_width", "_m"),
    ("potential.velocity", "_mps"),
    ("potential.motion_start", "_s"),
    ("packet.x_i", "_m"),
    ("packet.sigma", "_m"),
    ("packet.k_bar", "_per_m"),
    ("time.dt", "_s"),
    ("time.t_end", "_s"),
    ("measure.x_transmission", "_m"),
    ("output.snapshot_times", "_s"),
    ("output.record_every", ""),
];

const KICK_KEYS: &[(&str, &str)] = &[("q", "_per_m"), ("time", "_s"), ("duration", "_s"), ("substeps", "")];

/// Parses `key = value` lines. `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut pairs = BTreeMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigSyntax {
            line: index + 1,
            reason: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::ConfigSyntax {
                line: index + 1,
                reason: "empty key".into(),
            });
        }
        if pairs.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(Error::ConfigSyntax {
                line: index + 1,
                reason: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(pairs)
}

fn check_key(key: &str) -> Result<()> {
    let known = |table: &[(&str, &str)], name: &str| -> Result<bool> {
        for (base, suffix) in table {
            if name == format!("{base}{suffix}") {
                return Ok(true);
            }
            if name.starts_with(&format!("{base}_")) || *name == **base {
                return Err(Error::UnitMismatch {
                    key: key.to_string(),
                    expected: format!("{base}{suffix}"),
                });
            }
        }
        Ok(false)
    };
    if let Some(rest) = key.strip_prefix("kick.") {
        if let Some((index, field)) = rest.split_once('.') {
            if index.parse::<usize>().is_ok() && known(KICK_KEYS, field).map_err(|e| match e {
                Error::UnitMismatch { expected, .. } => Error::UnitMismatch {
                    key: key.to_string(),
                    expected: format!("kick.{index}.{expected}"),
                },
                other => other,
            })? {
                return Ok(());
            }
        }
        return Err(Error::UnknownKey(key.to_string()));
    }
    if known(SCALAR_KEYS, key)? {
        Ok(())
    } else {
        Err(Error::UnknownKey(key.to_string()))
    }
}

struct Values {
    pairs: BTreeMap<String, String>,
}

impl Values {
    fn float(&self, key: &str) -> Result<Option<f64>> {
        self.pairs
            .get(key)
            .map(|v| {
                v.parse::<f64>().map_err(|_| Error::BadValue {
                    key: key.to_string(),
                    value: v.clone(),
                })
            })
            .transpose()
    }

    fn float_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.float(key)?.unwrap_or(default))
    }

    fn count_or(&self, key: &str, default: usize) -> Result<usize> {
        self.pairs
            .get(key)
            .map(|v| {
                v.parse::<usize>().map_err(|_| Error::BadValue {
                    key: key.to_string(),
                    value: v.clone(),
                })
            })
            .transpose()
            .map(|v| v.unwrap_or(default))
    }
}

/// Builds a validated [`SimConfig`] from parsed pairs.
pub fn config_from_pairs(pairs: BTreeMap<String, String>) -> Result<SimConfig> {
    for key in pairs.keys() {
        check_key(key)?;
    }
    let v = Values { pairs };
    let reference = electron_config(Geometry::Barrier);
    let particle = ParticleSpec::with_hbar(
        v.float_or("particle.mass_kg", reference.particle.mass)?,
        v.float_or("particle.hbar_js", reference.particle.hbar)?,
    )?;
    let grid = Grid1D::new(
        v.float_or("grid.x_min_m", reference.grid.x_min())?,
        v.float_or("grid.x_max_m", reference.grid.x_max())?,
        v.count_or("grid.n_points", reference.grid.len())?,
    )?;

    let (ref_x0, ref_x1) = match reference.potential.shape {
        PotentialShape::Barrier { x0, x1, .. } => (x0, x1),
        _ => unreachable!("the reference is a barrier"),
    };
    let v0 = v.float_or("potential.v0_j", reference.potential.height())?;
    let kind = v.pairs.get("potential.kind").map(String::as_str).unwrap_or("barrier");
    let shape_keys: &[&str] = match kind {
        "barrier" => &["potential.x0_m", "potential.x1_m"],
        "step" => &["potential.edge_m"],
        "smoothed_step" => &["potential.edge_m", "potential.ramp_width_m"],
        other => {
            return Err(Error::BadValue {
                key: "potential.kind".into(),
                value: other.into(),
            })
        }
    };
    for key in ["potential.x0_m", "potential.x1_m", "potential.edge_m", "potential.ramp_width_m"] {
        if v.pairs.contains_key(key) && !shape_keys.contains(&key) {
            return Err(Error::invalid("potential.kind", format!("`{key}` does not apply to kind `{kind}`")));
        }
    }
    let shape = match kind {
        "barrier" => PotentialShape::Barrier {
            v0,
            x0: v.float_or("potential.x0_m", ref_x0)?,
            x1: v.float_or("potential.x1_m", ref_x1)?,
        },
        "step" => PotentialShape::Step {
            v0,
            edge: v.float_or("potential.edge_m", 0.0)?,
        },
        _ => PotentialShape::SmoothedStep {
            v0,
            edge: v.float_or("potential.edge_m", 0.0)?,
            ramp_width: v.float_or("potential.ramp_width_m", 0.0)?,
        },
    };
    let potential = PotentialSpec::new(shape)?.moving(
        v.float_or("potential.velocity_mps", 0.0)?,
        v.float_or("potential.motion_start_s", 0.0)?,
    );
    potential.validate()?;
    let packet = PacketSpec::new(
        v.float_or("packet.x_i_m", reference.packet.x_i)?,
        v.float_or("packet.sigma_m", reference.packet.sigma)?,
        v.float_or("packet.k_bar_per_m", reference.packet.k_bar)?,
    )?;

    let mut indices: Vec<usize> = v
        .pairs
        .keys()
        .filter_map(|k| k.strip_prefix("kick.")?.split_once('.')?.0.parse().ok())
        .collect();
    indices.sort_unstable();
    indices.dedup();
    if indices.iter().enumerate().any(|(i, &n)| i != n) {
        return Err(Error::invalid("kick", "kick indices must be 0, 1, 2, ... without gaps"));
    }
    let mut kicks = Vec::with_capacity(indices.len());
    for i in indices {
        let q_key = format!("kick.{i}.q_per_m");
        let time_key = format!("kick.{i}.time_s");
        let q = v.float(&q_key)?.ok_or(Error::MissingKey(q_key))?;
        let time = v.float(&time_key)?.ok_or(Error::MissingKey(time_key))?;
        let duration = v.float_or(&format!("kick.{i}.duration_s"), 0.0)?;
        let substeps = v.count_or(&format!("kick.{i}.substeps"), 1)?;
        kicks.push(KickEvent::gradual(q, time, duration, substeps));
    }

    let snapshot_times = match v.pairs.get("output.snapshot_times_s") {
        None => Vec::new(),
        Some(list) if list.trim().is_empty() => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| Error::BadValue {
                    key: "output.snapshot_times_s".into(),
                    value: list.clone(),
                })
            })
            .collect::<Result<_>>()?,
    };
    let x_transmission = match v.float("measure.x_transmission_m")? {
        Some(x) => x,
        None => transmission_boundary(&particle, &potential, packet.k_bar),
    };
    let config = SimConfig {
        particle,
        grid,
        potential,
        packet,
        dt: v.float_or("time.dt_s", reference.dt)?,
        t_end: v.float_or("time.t_end_s", reference.t_end)?,
        kicks,
        x_transmission,
        snapshot_times,
        record_every: v.count_or("output.record_every", reference.record_every)?,
    };
    config.validate()?;
    Ok(config)
}

pub fn parse_config(text: &str) -> Result<SimConfig> {
    config_from_pairs(parse_pairs(text)?)
}

pub fn read_config(path: &Path) -> Result<SimConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

/// Every key of `config`, values in shortest round-trip notation.
pub fn config_pairs(config: &SimConfig) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        out.insert(k.to_string(), v);
    };
    put("particle.mass_kg", format!("{:e}", config.particle.mass));
    put("particle.hbar_js", format!("{:e}", config.particle.hbar));
    put("grid.x_min_m", format!("{:e}", config.grid.x_min()));
    put("grid.x_max_m", format!("{:e}", config.grid.x_max()));
    put("grid.n_points", config.grid.len().to_string());
    put("potential.v0_j", format!("{:e}", config.potential.height()));
    match config.potential.shape {
        PotentialShape::Barrier { x0, x1, .. } => {
            put("potential.kind", "barrier".into());
            put("potential.x0_m", format!("{x0:e}"));
            put("potential.x1_m", format!("{x1:e}"));
        }
        PotentialShape::Step { edge, .. } => {
            put("potential.kind", "step".into());
            put("potential.edge_m", format!("{edge:e}"));
        }
        PotentialShape::SmoothedStep { edge, ramp_width, .. } => {
            put("potential.kind", "smoothed_step".into());
            put("potential.edge_m", format!("{edge:e}"));
            put("potential.ramp_width_m", format!("{ramp_width:e}"));
        }
    }
    put("potential.velocity_mps", format!("{:e}", config.potential.velocity));
    put("potential.motion_start_s", format!("{:e}", config.potential.motion_start));
    put("packet.x_i_m", format!("{:e}", config.packet.x_i));
    put("packet.sigma_m", format!("{:e}", config.packet.sigma));
    put("packet.k_bar_per_m", format!("{:e}", config.packet.k_bar));
    put("time.dt_s", format!("{:e}", config.dt));
    put("time.t_end_s", format!("{:e}", config.t_end));
    for (i, kick) in config.kicks.iter().enumerate() {
        put(&format!("kick.{i}.q_per_m"), format!("{:e}", kick.q));
        put(&format!("kick.{i}.time_s"), format!("{:e}", kick.time));
        put(&format!("kick.{i}.duration_s"), format!("{:e}", kick.duration));
        put(&format!("kick.{i}.substeps"), kick.substeps.to_string());
    }
    put("measure.x_transmission_m", format!("{:e}", config.x_transmission));
    put(
        "output.snapshot_times_s",
        config.snapshot_times.iter().map(|t| format!("{t:e}")).collect::<Vec<_>>().join(", "),
    );
    put("output.record_every", config.record_every.to_string());
    out
}

/// Config file text with every default materialized.
pub fn write_config(config: &SimConfig) -> String {
    let mut text = String::new();
    for (k, v) in config_pairs(config) {
        let _ = writeln!(text, "{k} = {v}");
    }
    text
}
