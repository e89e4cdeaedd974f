//! Commercial-off-the-shelf component inventory.
//!
//! The optimizer's integer ID variables index into this inventory. The file
//! format is delimiter-separated text with a header row; category-specific
//! spec columns are left empty where they do not apply. Lines starting with
//! `#` are comments. A synthetic CubeSat-class inventory ships embedded as
//! the default.

use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;
use thiserror::Error;

pub const INVENTORY_HEADER: &str = "category,id,name,mass_kg,volume_m3,power_w,clock_mhz,storage_gb,capacity_wh,freq_low_mhz,freq_high_mhz,bandwidth_mhz";

/// Embedded synthetic default inventory.
pub const DEFAULT_INVENTORY: &str = include_str!("../data/inventory.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Computer,
    PowerBoard,
    Battery,
    Transceiver,
    AttitudeBoard,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Computer,
        Category::PowerBoard,
        Category::Battery,
        Category::Transceiver,
        Category::AttitudeBoard,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Category::Computer => "computer",
            Category::PowerBoard => "power_board",
            Category::Battery => "battery",
            Category::Transceiver => "transceiver",
            Category::AttitudeBoard => "attitude_board",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Category-specific specification block.
#[derive(Debug, Clone, PartialEq)]
pub enum CategorySpecs {
    Computer { clock_mhz: f64, storage_gb: f64 },
    PowerBoard,
    Battery { capacity_wh: f64 },
    Transceiver {
        freq_low_mhz: f64,
        freq_high_mhz: f64,
        bandwidth_mhz: f64,
    },
    AttitudeBoard,
}

/// One inventory component.
#[derive(Debug, Clone, PartialEq)]
pub struct CotsRecord {
    pub category: Category,
    pub id: u32,
    pub name: String,
    pub mass_kg: f64,
    pub volume_m3: f64,
    pub power_w: f64,
    pub specs: CategorySpecs,
}

/// Validated, immutable component catalog. Safe to share across threads.
#[derive(Debug, Clone)]
pub struct Inventory {
    records: Vec<Vec<CotsRecord>>,
    /// SHA-256 digest of the source text.
    pub provenance: String,
}

#[derive(Debug, Error)]
pub enum InventoryError {
    #[error("cannot read inventory file: {0}")]
    Io(#[from] std::io::Error),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("row {row}, column {column}: {message}")]
    Field {
        row: usize,
        column: &'static str,
        message: String,
    },
    #[error("category {category} is empty")]
    EmptyCategory { category: Category },
    #[error("category {category}: ids must be contiguous from 1, found {found:?}")]
    NonContiguousIds { category: Category, found: Vec<u32> },
    #[error("unknown id {id} in category {category} (1..={len})")]
    UnknownId {
        category: Category,
        id: u32,
        len: usize,
    },
}

fn parse_f64(
    field: &str,
    row: usize,
    column: &'static str,
    required: bool,
) -> Result<Option<f64>, InventoryError> {
    let trimmed = field.trim();
    if trimmed.is_empty() {
        if required {
            return Err(InventoryError::Field {
                row,
                column,
                message: "required value missing".into(),
            });
        }
        return Ok(None);
    }
    trimmed
        .parse::<f64>()
        .map(Some)
        .map_err(|e| InventoryError::Field {
            row,
            column,
            message: e.to_string(),
        })
}

impl Inventory {
    /// Loads and validates an inventory file.
    pub fn load(path: &Path) -> Result<Inventory, InventoryError> {
        let text = std::fs::read_to_string(path)?;
        Inventory::parse(&text)
    }

    /// The embedded synthetic default.
    pub fn embedded_default() -> Inventory {
        Inventory::parse(DEFAULT_INVENTORY).expect("embedded inventory must validate")
    }

    /// Parses inventory text; every invariant is checked here so later
    /// queries can trust the data.
    pub fn parse(text: &str) -> Result<Inventory, InventoryError> {
        let mut per_category: Vec<Vec<CotsRecord>> = vec![Vec::new(); Category::ALL.len()];
        let mut header_seen = false;

        for (line_index, line) in text.lines().enumerate() {
            let row = line_index + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if !header_seen {
                if trimmed != INVENTORY_HEADER {
                    return Err(InventoryError::Row {
                        row,
                        message: format!("expected header '{INVENTORY_HEADER}'"),
                    });
                }
                header_seen = true;
                continue;
            }

            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != 12 {
                return Err(InventoryError::Row {
                    row,
                    message: format!("expected 12 columns, found {}", fields.len()),
                });
            }

            let category = Category::parse(fields[0].trim()).ok_or(InventoryError::Field {
                row,
                column: "category",
                message: format!("unknown category '{}'", fields[0].trim()),
            })?;
            let id: u32 = fields[1]
                .trim()
                .parse()
                .map_err(|e: std::num::ParseIntError| InventoryError::Field {
                    row,
                    column: "id",
                    message: e.to_string(),
                })?;
            let name = fields[2].trim().to_string();
            let mass_kg = parse_f64(fields[3], row, "mass_kg", true)?.unwrap();
            let volume_m3 = parse_f64(fields[4], row, "volume_m3", true)?.unwrap();
            let power_w = parse_f64(fields[5], row, "power_w", true)?.unwrap();
            if mass_kg < 0.0 || volume_m3 < 0.0 || power_w < 0.0 {
                return Err(InventoryError::Row {
                    row,
                    message: "mass, volume and power must be nonnegative".into(),
                });
            }

            let specs = match category {
                Category::Computer => CategorySpecs::Computer {
                    clock_mhz: parse_f64(fields[6], row, "clock_mhz", true)?.unwrap(),
                    storage_gb: parse_f64(fields[7], row, "storage_gb", true)?.unwrap(),
                },
                Category::PowerBoard => CategorySpecs::PowerBoard,
                Category::Battery => CategorySpecs::Battery {
                    capacity_wh: parse_f64(fields[8], row, "capacity_wh", true)?.unwrap(),
                },
                Category::Transceiver => {
                    let freq_low_mhz = parse_f64(fields[9], row, "freq_low_mhz", true)?.unwrap();
                    let freq_high_mhz = parse_f64(fields[10], row, "freq_high_mhz", true)?.unwrap();
                    let bandwidth_mhz = parse_f64(fields[11], row, "bandwidth_mhz", true)?.unwrap();
                    if freq_low_mhz >= freq_high_mhz {
                        return Err(InventoryError::Field {
                            row,
                            column: "freq_low_mhz",
                            message: "freq_low must be below freq_high".into(),
                        });
                    }
                    if bandwidth_mhz >= freq_high_mhz - freq_low_mhz {
                        return Err(InventoryError::Field {
                            row,
                            column: "bandwidth_mhz",
                            message: "bandwidth must be narrower than the tuning range".into(),
                        });
                    }
                    CategorySpecs::Transceiver {
                        freq_low_mhz,
                        freq_high_mhz,
                        bandwidth_mhz,
                    }
                }
                Category::AttitudeBoard => CategorySpecs::AttitudeBoard,
            };

            let bucket = &mut per_category[category_index(category)];
            if bucket.iter().any(|r| r.id == id) {
                return Err(InventoryError::Row {
                    row,
                    message: format!("duplicate id {id} in category {category}"),
                });
            }
            bucket.push(CotsRecord {
                category,
                id,
                name,
                mass_kg,
                volume_m3,
                power_w,
                specs,
            });
        }

        for (idx, bucket) in per_category.iter_mut().enumerate() {
            let category = Category::ALL[idx];
            if bucket.is_empty() {
                return Err(InventoryError::EmptyCategory { category });
            }
            bucket.sort_by_key(|r| r.id);
            let ids: Vec<u32> = bucket.iter().map(|r| r.id).collect();
            if ids.iter().enumerate().any(|(i, &id)| id != i as u32 + 1) {
                return Err(InventoryError::NonContiguousIds {
                    category,
                    found: ids,
                });
            }
        }

        let provenance = hex_digest(text.as_bytes());
        Ok(Inventory {
            records: per_category,
            provenance,
        })
    }

    pub fn category(&self, category: Category) -> &[CotsRecord] {
        &self.records[category_index(category)]
    }

    pub fn len(&self, category: Category) -> usize {
        self.category(category).len()
    }

    /// Record lookup by 1-based id. The optimizer clamps ids into range
    /// before evaluation, so an out-of-range id here signals an internal bug
    /// in the caller rather than bad user input.
    pub fn get(&self, category: Category, id: u32) -> Result<&CotsRecord, InventoryError> {
        let bucket = self.category(category);
        if id == 0 || id as usize > bucket.len() {
            return Err(InventoryError::UnknownId {
                category,
                id,
                len: bucket.len(),
            });
        }
        Ok(&bucket[(id - 1) as usize])
    }

    /// Serializes back to the file format (header plus one row per record).
    pub fn serialize(&self) -> String {
        let mut out = String::from(INVENTORY_HEADER);
        out.push('\n');
        for category in Category::ALL {
            for r in self.category(category) {
                let (clock, storage, capacity, flo, fhi, bw) = match &r.specs {
                    CategorySpecs::Computer {
                        clock_mhz,
                        storage_gb,
                    } => (
                        clock_mhz.to_string(),
                        storage_gb.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ),
                    CategorySpecs::PowerBoard | CategorySpecs::AttitudeBoard => Default::default(),
                    CategorySpecs::Battery { capacity_wh } => (
                        String::new(),
                        String::new(),
                        capacity_wh.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ),
                    CategorySpecs::Transceiver {
                        freq_low_mhz,
                        freq_high_mhz,
                        bandwidth_mhz,
                    } => (
                        String::new(),
                        String::new(),
                        String::new(),
                        freq_low_mhz.to_string(),
                        freq_high_mhz.to_string(),
                        bandwidth_mhz.to_string(),
                    ),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.category, r.id, r.name, r.mass_kg, r.volume_m3, r.power_w, clock, storage,
                    capacity, flo, fhi, bw
                ));
            }
        }
        out
    }
}

/// Lowercase hex SHA-256 of a byte string.
pub fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(digest.len() * 2);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn category_index(category: Category) -> usize {
    Category::ALL
        .iter()
        .position(|&c| c == category)
        .expect("category listed in ALL")
}

/// Transceiver/antenna compatibility: the antenna's resonant frequency must
/// sit inside the transceiver band with half the bandwidth of margin on each
/// side. Boundaries are inclusive.
pub fn bandwidth_check(transceiver: &CotsRecord, f_antenna_mhz: f64) -> bool {
    match &transceiver.specs {
        CategorySpecs::Transceiver {
            freq_low_mhz,
            freq_high_mhz,
            bandwidth_mhz,
        } => {
            f_antenna_mhz >= freq_low_mhz + bandwidth_mhz / 2.0
                && f_antenna_mhz <= freq_high_mhz - bandwidth_mhz / 2.0
        }
        _ => panic!("bandwidth_check called on a non-transceiver record"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn default_inventory_has_five_populated_categories() {
        let inv = Inventory::embedded_default();
        for category in Category::ALL {
            assert!(
                inv.len(category) >= 8,
                "category {category} has only {} entries",
                inv.len(category)
            );
        }
    }

    #[test]
    fn duplicate_id_is_rejected_with_row_location() {
        let text = format!(
            "{INVENTORY_HEADER}\nbattery,1,a,0.1,0.0001,0,,,10,,,\nbattery,1,b,0.1,0.0001,0,,,10,,,\n"
        );
        let err = Inventory::parse(&text).unwrap_err();
        match err {
            InventoryError::Row { row, message } => {
                assert_eq!(row, 3);
                assert!(message.contains("duplicate id 1"));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn round_trip_preserves_inventory() {
        let inv = Inventory::embedded_default();
        let text = inv.serialize();
        let again = Inventory::parse(&text).unwrap();
        for category in Category::ALL {
            assert_eq!(inv.category(category), again.category(category));
        }
    }

    #[test]
    fn get_returns_matching_record_and_flags_bad_ids() {
        let inv = Inventory::embedded_default();
        let first = inv.get(Category::Battery, 1).unwrap();
        assert_eq!(first.id, 1);
        assert_eq!(first.category, Category::Battery);
        // repeated call returns the identical record
        assert_eq!(inv.get(Category::Battery, 1).unwrap(), first);

        let err = inv
            .get(Category::Battery, inv.len(Category::Battery) as u32 + 1)
            .unwrap_err();
        assert!(matches!(err, InventoryError::UnknownId { .. }));
    }

    #[test]
    fn bandwidth_check_boundaries_are_inclusive() {
        let t = CotsRecord {
            category: Category::Transceiver,
            id: 1,
            name: "test".into(),
            mass_kg: 0.1,
            volume_m3: 1e-4,
            power_w: 1.0,
            specs: CategorySpecs::Transceiver {
                freq_low_mhz: 400.0,
                freq_high_mhz: 450.0,
                bandwidth_mhz: 2.0,
            },
        };
        assert!(bandwidth_check(&t, 401.0));
        assert!(bandwidth_check(&t, 449.0));
        assert!(!bandwidth_check(&t, 400.5));
        assert!(!bandwidth_check(&t, 449.5));
    }

    #[test]
    fn uniform_sampling_covers_every_id() {
        let inv = Inventory::embedded_default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for category in Category::ALL {
            let n = inv.len(category) as u32;
            let mut seen = vec![0usize; n as usize];
            for _ in 0..10_000 {
                let id = rng.random_range(1..=n);
                seen[(id - 1) as usize] += 1;
            }
            assert!(
                seen.iter().all(|&c| c > 0),
                "category {category} coverage {seen:?}"
            );
        }
    }

    #[test]
    fn missing_category_is_rejected() {
        let text = format!("{INVENTORY_HEADER}\ncomputer,1,c,0.05,0.0001,0.5,100,8,,,,\n");
        let err = Inventory::parse(&text).unwrap_err();
        assert!(matches!(err, InventoryError::EmptyCategory { .. }));
    }
}
