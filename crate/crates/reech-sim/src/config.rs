//! Experiment configuration: defaults, the flat key-value file format, and
//! validation.
//!
//! The file format is deliberately plain — one `key = value` per line, `#`
//! comments — so configs diff cleanly and parse trivially from any
//! language. Every simulation parameter is a key; command-line flags
//! override file values. The effective config is echoed into the output
//! directory, and re-running from the echo reproduces the experiment.

use std::path::{Path, PathBuf};

use crate::channel::DropModel;
use crate::energy::RadioParams;
use crate::protocols::LeachParams;
use crate::rng::RNG_ALGORITHM;
use crate::topology::{FieldSpec, Point};
use crate::SimError;

/// Which protocol(s) an experiment runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolSelection {
    Reech,
    Leach,
    Both,
}

impl ProtocolSelection {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProtocolSelection::Reech => "reech",
            ProtocolSelection::Leach => "leach",
            ProtocolSelection::Both => "both",
        }
    }

    pub fn parse(value: &str) -> Result<Self, SimError> {
        match value {
            "reech" => Ok(ProtocolSelection::Reech),
            "leach" => Ok(ProtocolSelection::Leach),
            "both" => Ok(ProtocolSelection::Both),
            other => Err(SimError::config(
                "protocol",
                format!("expected reech, leach, or both, got '{other}'"),
            )),
        }
    }
}

/// Everything a run or an experiment batch needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub field: FieldSpec,
    pub region_quotas: [u32; 9],
    pub radio: RadioParams,
    pub drop: DropModel,
    pub leach: LeachParams,
    pub protocol: ProtocolSelection,
    pub seeds: Vec<u64>,
    pub max_rounds: u32,
    pub confidence: f64,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    /// The reference parameter set: 100 m × 100 m field, sink at the
    /// center, 100 nodes (20 + 8×10), 0.5 J each, 50 nJ/bit electronics,
    /// 5 nJ/bit aggregation, 4000-bit packets, drop probability 0.3, five
    /// seeds.
    fn default() -> Self {
        ExperimentConfig {
            field: FieldSpec::default(),
            region_quotas: crate::topology::DEFAULT_QUOTAS,
            radio: RadioParams::default(),
            drop: DropModel {
                drop_probability: 0.3,
            },
            leach: LeachParams::default(),
            protocol: ProtocolSelection::Both,
            seeds: vec![1, 2, 3, 4, 5],
            max_rounds: 5000,
            confidence: 0.95,
            out_dir: PathBuf::from("sim-output"),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.field.validate()?;
        self.radio.validate()?;
        self.drop.validate()?;
        self.leach.validate()?;
        if self.region_quotas.iter().sum::<u32>() == 0 {
            return Err(SimError::config(
                "region_quotas",
                "total node count must be positive",
            ));
        }
        if self.seeds.is_empty() {
            return Err(SimError::config("seeds", "at least one seed is required"));
        }
        if self.max_rounds == 0 {
            return Err(SimError::config("max_rounds", "must be at least 1"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(SimError::config(
                "confidence",
                "must be strictly between 0 and 1",
            ));
        }
        Ok(())
    }

    /// Total node count implied by the region quotas.
    pub fn node_count(&self) -> u32 {
        self.region_quotas.iter().sum()
    }

    /// Load a config file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_contents(&text)
    }

    /// Parse config file contents on top of the defaults.
    pub fn from_str_contents(text: &str) -> Result<Self, SimError> {
        let mut config = ExperimentConfig::default();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(SimError::config(
                    "config",
                    format!("line {}: expected 'key = value', got '{line}'", line_no + 1),
                ));
            };
            config.set(key.trim(), value.trim())?;
        }
        Ok(config)
    }

    /// Apply one key-value pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SimError> {
        match key {
            "field_width_m" => self.field.width_m = parse_f64(key, value)?,
            "field_height_m" => self.field.height_m = parse_f64(key, value)?,
            "sink_x_m" => self.field.sink = Point::new(parse_f64(key, value)?, self.field.sink.y),
            "sink_y_m" => self.field.sink = Point::new(self.field.sink.x, parse_f64(key, value)?),
            "region_quotas" => {
                let quotas = parse_u32_list(key, value)?;
                self.region_quotas = quotas.try_into().map_err(|v: Vec<u32>| {
                    SimError::config(
                        key,
                        format!("expected 9 comma-separated counts, got {}", v.len()),
                    )
                })?;
            }
            "initial_energy_j" => self.radio.initial_energy_j = parse_f64(key, value)?,
            "electronics_j_per_bit" => self.radio.electronics_j_per_bit = parse_f64(key, value)?,
            "free_space_amp_j_per_bit_m2" => {
                self.radio.free_space_amp_j_per_bit_m2 = parse_f64(key, value)?;
            }
            "multipath_amp_j_per_bit_m4" => {
                self.radio.multipath_amp_j_per_bit_m4 = parse_f64(key, value)?;
            }
            "aggregation_j_per_bit" => self.radio.aggregation_j_per_bit = parse_f64(key, value)?,
            "packet_bits" => self.radio.packet_bits = parse_u64(key, value)?,
            "drop_probability" => self.drop.drop_probability = parse_f64(key, value)?,
            "leach_ch_probability" => self.leach.ch_probability = parse_f64(key, value)?,
            "protocol" => self.protocol = ProtocolSelection::parse(value)?,
            "seeds" => self.seeds = parse_seed_list(value)?,
            "max_rounds" => self.max_rounds = parse_u64(key, value)? as u32,
            "confidence" => self.confidence = parse_f64(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "rng_algorithm" => {
                if value != RNG_ALGORITHM {
                    return Err(SimError::config(
                        key,
                        format!("only '{RNG_ALGORITHM}' is supported, got '{value}'"),
                    ));
                }
            }
            other => {
                return Err(SimError::config(other, "unknown configuration key"));
            }
        }
        Ok(())
    }

    /// Render the effective config as a file that reproduces this
    /// experiment when passed back through `--config`.
    pub fn echo(&self) -> String {
        let quotas: Vec<String> = self.region_quotas.iter().map(u32::to_string).collect();
        let seeds: Vec<String> = self.seeds.iter().map(u64::to_string).collect();
        format!(
            "field_width_m = {}\n\
             field_height_m = {}\n\
             sink_x_m = {}\n\
             sink_y_m = {}\n\
             region_quotas = {}\n\
             initial_energy_j = {}\n\
             electronics_j_per_bit = {}\n\
             free_space_amp_j_per_bit_m2 = {}\n\
             multipath_amp_j_per_bit_m4 = {}\n\
             aggregation_j_per_bit = {}\n\
             packet_bits = {}\n\
             drop_probability = {}\n\
             leach_ch_probability = {}\n\
             protocol = {}\n\
             seeds = {}\n\
             max_rounds = {}\n\
             confidence = {}\n\
             out_dir = {}\n\
             rng_algorithm = {}\n",
            self.field.width_m,
            self.field.height_m,
            self.field.sink.x,
            self.field.sink.y,
            quotas.join(","),
            self.radio.initial_energy_j,
            self.radio.electronics_j_per_bit,
            self.radio.free_space_amp_j_per_bit_m2,
            self.radio.multipath_amp_j_per_bit_m4,
            self.radio.aggregation_j_per_bit,
            self.radio.packet_bits,
            self.drop.drop_probability,
            self.leach.ch_probability,
            self.protocol.as_str(),
            seeds.join(","),
            self.max_rounds,
            self.confidence,
            self.out_dir.display(),
            RNG_ALGORITHM,
        )
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, SimError> {
    value
        .parse::<f64>()
        .map_err(|_| SimError::config(key, format!("expected a number, got '{value}'")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64, SimError> {
    value.parse::<u64>().map_err(|_| {
        SimError::config(
            key,
            format!("expected a non-negative integer, got '{value}'"),
        )
    })
}

fn parse_u32_list(key: &str, value: &str) -> Result<Vec<u32>, SimError> {
    value
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| SimError::config(key, format!("expected an integer, got '{part}'")))
        })
        .collect()
}

/// Parse a comma-separated seed list (shared by the config file and the
/// `--seeds` flag).
pub fn parse_seed_list(value: &str) -> Result<Vec<u64>, SimError> {
    let seeds: Result<Vec<u64>, SimError> = value
        .split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| {
                SimError::config("seeds", format!("expected an integer seed, got '{part}'"))
            })
        })
        .collect();
    let seeds = seeds?;
    if seeds.is_empty() {
        return Err(SimError::config("seeds", "at least one seed is required"));
    }
    Ok(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_reference_parameters() {
        let config = ExperimentConfig::default();
        assert_eq!(config.field.width_m, 100.0);
        assert_eq!(config.field.height_m, 100.0);
        assert_eq!(config.field.sink, Point::new(50.0, 50.0));
        assert_eq!(config.node_count(), 100);
        assert_eq!(config.radio.initial_energy_j, 0.5);
        assert_eq!(config.radio.electronics_j_per_bit, 50e-9);
        assert_eq!(config.radio.aggregation_j_per_bit, 5e-9);
        assert_eq!(config.radio.packet_bits, 4000);
        assert_eq!(config.drop.drop_probability, 0.3);
        assert_eq!(config.leach.ch_probability, 0.1);
        assert_eq!(config.seeds, vec![1, 2, 3, 4, 5]);
        assert_eq!(config.max_rounds, 5000);
        assert_eq!(config.confidence, 0.95);
        config.validate().unwrap();
    }

    #[test]
    fn parses_keys_comments_and_whitespace() {
        let text = "\
            # comment\n\
            drop_probability = 0.25\n\
            \n\
            seeds = 7, 8, 9\n\
            protocol = leach\n\
            max_rounds = 1200\n\
            packet_bits = 2000\n";
        let config = ExperimentConfig::from_str_contents(text).unwrap();
        assert_eq!(config.drop.drop_probability, 0.25);
        assert_eq!(config.seeds, vec![7, 8, 9]);
        assert_eq!(config.protocol, ProtocolSelection::Leach);
        assert_eq!(config.max_rounds, 1200);
        assert_eq!(config.radio.packet_bits, 2000);
        // untouched keys keep their defaults
        assert_eq!(config.radio.initial_energy_j, 0.5);
    }

    #[test]
    fn errors_name_the_offending_field() {
        let mut config = ExperimentConfig::default();
        config.drop.drop_probability = -0.1;
        assert!(config
            .validate()
            .unwrap_err()
            .to_string()
            .contains("drop_probability"));

        let err = ExperimentConfig::from_str_contents("drop_probability = abc").unwrap_err();
        assert!(err.to_string().contains("drop_probability"));

        let err = ExperimentConfig::from_str_contents("no_such_key = 1").unwrap_err();
        assert!(err.to_string().contains("no_such_key"));

        let err = ExperimentConfig::from_str_contents("region_quotas = 1,2,3").unwrap_err();
        assert!(err.to_string().contains("region_quotas"));
    }

    #[test]
    fn echo_round_trips() {
        let mut config = ExperimentConfig::default();
        config.drop.drop_probability = 0.15;
        config.seeds = vec![11, 22];
        config.protocol = ProtocolSelection::Reech;
        config.out_dir = PathBuf::from("some/dir");
        let reparsed = ExperimentConfig::from_str_contents(&config.echo()).unwrap();
        assert_eq!(config, reparsed);
    }

    #[test]
    fn echo_records_the_rng_algorithm() {
        let echo = ExperimentConfig::default().echo();
        assert!(echo.contains("rng_algorithm = chacha8"));
    }

    #[test]
    fn rejects_unsupported_rng() {
        let err = ExperimentConfig::from_str_contents("rng_algorithm = mt19937").unwrap_err();
        assert!(err.to_string().contains("rng_algorithm"));
    }

    #[test]
    fn seed_list_parsing() {
        assert_eq!(parse_seed_list("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seed_list(" 4 , 5 ").unwrap(), vec![4, 5]);
        assert!(parse_seed_list("1,x").is_err());
    }

    #[test]
    fn confidence_bounds_validated() {
        let mut config = ExperimentConfig {
            confidence: 1.0,
            ..ExperimentConfig::default()
        };
        assert!(config
            .validate()
            .unwrap_err()
            .to_string()
            .contains("confidence"));
        config.confidence = 0.0;
        assert!(config.validate().is_err());
    }
}
