//! Flat key = value configuration files.
//!
//! The format is one `key = value` pair per line, `#` starts a comment,
//! blank lines are ignored. Keys are dotted paths; the two families the
//! tools understand are material overrides
//! (`material.<name>.<field> = <number>`) and chip geometry
//! (`geometry.<field> = <number>`). Later lines win over earlier ones.

use crate::event::ChipGeometry;
use crate::materials::MaterialParams;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line_no}: expected `key = value`, got {line:?}")]
    Syntax { line_no: usize, line: String },
    #[error("key {key:?}: {value:?} is not a number")]
    BadNumber { key: String, value: String },
    #[error("unknown key {key:?}")]
    UnknownKey { key: String },
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line_no: i + 1,
                line: raw.to_string(),
            })?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Syntax {
                    line_no: i + 1,
                    line: raw.to_string(),
                });
            }
            map.insert(key.to_string(), value.to_string());
        }
        Ok(Config { map })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(|k| k.as_str())
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|v| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v.parse::<f64>().map(Some).map_err(|_| ConfigError::BadNumber {
                key: key.to_string(),
                value: v.clone(),
            }),
        }
    }

    pub fn get_u64(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v.parse::<u64>().map(Some).map_err(|_| ConfigError::BadNumber {
                key: key.to_string(),
                value: v.clone(),
            }),
        }
    }

    /// Apply `material.<name>.<field>` overrides for this material's name.
    /// Keys addressing other materials are left alone; an unknown field
    /// under this material's name is an error. Returns the number of
    /// fields changed.
    pub fn apply_material_overrides(&self, mat: &mut MaterialParams) -> Result<usize, ConfigError> {
        let prefix = format!("material.{}.", mat.name);
        let mut applied = 0;
        for key in self.map.keys() {
            let Some(field) = key.strip_prefix(&prefix) else {
                continue;
            };
            let value = self.get_f64(key)?.unwrap();
            let slot = match field {
                "gap_k" => &mut mat.gap_k,
                "tc_k" => &mut mat.tc_k,
                "tau0_ns" => &mut mat.tau0_ns,
                "tau0ph_ns" => &mut mat.tau0ph_ns,
                "n_cp_per_um3" => &mut mat.n_cp_per_um3,
                "v_e_mm_per_ns" => &mut mat.v_e_mm_per_ns,
                "v_p_um_per_ns" => &mut mat.v_p_um_per_ns,
                "sigma_ep" => &mut mat.sigma_ep,
                "c_p" => &mut mat.c_p,
                "c_e" => &mut mat.c_e,
                _ => {
                    return Err(ConfigError::UnknownKey {
                        key: key.clone(),
                    })
                }
            };
            *slot = value;
            applied += 1;
        }
        Ok(applied)
    }

    /// Apply `geometry.*` keys. Every geometry key must be known.
    pub fn apply_geometry(&self, geom: &mut ChipGeometry) -> Result<usize, ConfigError> {
        let mut applied = 0;
        for key in self.map.keys() {
            let Some(field) = key.strip_prefix("geometry.") else {
                continue;
            };
            match field {
                "chip_area_mm2" => geom.chip_area_mm2 = self.get_f64(key)?.unwrap(),
                "substrate_thickness_mm" => {
                    geom.substrate_thickness_mm = self.get_f64(key)?.unwrap()
                }
                "film_thickness_um" => geom.film_thickness_um = self.get_f64(key)?.unwrap(),
                "normal_thickness_um" => geom.normal_thickness_um = self.get_f64(key)?.unwrap(),
                "hotspot_area_mm2" => geom.hotspot_area_mm2 = self.get_f64(key)?.unwrap(),
                "wirebond.count" => geom.wirebonds.count = self.get_u64(key)?.unwrap() as u32,
                "wirebond.radius_um" => geom.wirebonds.wire_radius_um = self.get_f64(key)?.unwrap(),
                "wirebond.length_mm" => geom.wirebonds.wire_length_mm = self.get_f64(key)?.unwrap(),
                "wirebond.mean_free_path_um" => {
                    geom.wirebonds.mean_free_path_um = self.get_f64(key)?.unwrap()
                }
                _ => {
                    return Err(ConfigError::UnknownKey {
                        key: key.clone(),
                    })
                }
            }
            applied += 1;
        }
        Ok(applied)
    }
}
