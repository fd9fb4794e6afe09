//! JSON file formats for structures and links. All entries are 1-based to
//! match the operation-table conventions; conversion to the 0-based core
//! types happens behind the verified constructors.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::ShadowModuleStructure;
use crate::birack::{Birack, Shadow, StructureError};
use crate::diagram::PdCode;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: expected kind \"{expected}\", found \"{found}\"")]
    Kind {
        path: String,
        expected: &'static str,
        found: String,
    },
}

/// `{"kind":"birack","n":2,"U":[[1,1],[2,2]],"L":[[2,2],[1,1]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BirackFile {
    pub kind: String,
    pub n: usize,
    #[serde(rename = "U")]
    pub up: Vec<Vec<usize>>,
    #[serde(rename = "L")]
    pub low: Vec<Vec<usize>>,
}

/// `{"kind":"shadow","m":3,"action":[[2,2],[3,3],[1,1]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShadowFile {
    pub kind: String,
    pub m: usize,
    pub action: Vec<Vec<usize>>,
}

/// `{"kind":"module","ring":3,"blocks":[{"A":1,"T":..,"S":..,"R":..},..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    pub kind: String,
    pub ring: i64,
    pub blocks: Vec<ModuleBlock>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleBlock {
    #[serde(rename = "A")]
    pub region: usize,
    #[serde(rename = "T")]
    pub t: Vec<Vec<i64>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<i64>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<i64>>,
}

/// `{"name":"3_1","components":1,"pd":[[1,4,2,5],..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkFile {
    pub name: String,
    pub components: usize,
    pub pd: Vec<[usize; 4]>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn expect_kind(path: &Path, expected: &'static str, found: &str) -> Result<(), IoError> {
    if found == expected {
        Ok(())
    } else {
        Err(IoError::Kind {
            path: path.display().to_string(),
            expected,
            found: found.to_string(),
        })
    }
}

pub fn load_birack_file(path: &Path) -> Result<BirackFile, IoError> {
    let f: BirackFile = read_json(path)?;
    expect_kind(path, "birack", &f.kind)?;
    Ok(f)
}

pub fn load_shadow_file(path: &Path) -> Result<ShadowFile, IoError> {
    let f: ShadowFile = read_json(path)?;
    expect_kind(path, "shadow", &f.kind)?;
    Ok(f)
}

pub fn load_module_file(path: &Path) -> Result<ModuleFile, IoError> {
    let f: ModuleFile = read_json(path)?;
    expect_kind(path, "module", &f.kind)?;
    Ok(f)
}

pub fn load_link_file(path: &Path) -> Result<LinkFile, IoError> {
    read_json(path)
}

impl BirackFile {
    pub fn build(&self) -> Result<Birack, StructureError> {
        if self.n != self.up.len() {
            return Err(StructureError::Shape {
                expected: format!("n = {} to match the table size", self.up.len()),
            });
        }
        Birack::from_tables(&self.up, &self.low)
    }

    pub fn of(b: &Birack) -> BirackFile {
        BirackFile {
            kind: "birack".into(),
            n: b.size(),
            up: b.up_table(),
            low: b.low_table(),
        }
    }
}

impl ShadowFile {
    pub fn build(&self, b: &Birack) -> Result<Shadow, StructureError> {
        if self.m != self.action.len() {
            return Err(StructureError::Shape {
                expected: format!("m = {} to match the table size", self.action.len()),
            });
        }
        Shadow::from_table(b, &self.action)
    }
}

impl ModuleFile {
    pub fn build(&self) -> Result<ShadowModuleStructure, crate::algebra::ModuleError> {
        // blocks are keyed by their 1-based region label; require 1..m
        let m = self.blocks.len();
        let mut ordered: Vec<Option<&ModuleBlock>> = vec![None; m];
        for blk in &self.blocks {
            if blk.region == 0 || blk.region > m || ordered[blk.region - 1].is_some() {
                return Err(crate::algebra::ModuleError::Shape(format!(
                    "block labels must be exactly 1..{m}"
                )));
            }
            ordered[blk.region - 1] = Some(blk);
        }
        let blocks = ordered
            .into_iter()
            .map(|b| {
                let b = b.expect("all filled");
                (b.t.clone(), b.s.clone(), b.r.clone())
            })
            .collect();
        ShadowModuleStructure::new(self.ring, blocks)
    }

    pub fn of(ms: &ShadowModuleStructure) -> ModuleFile {
        ModuleFile {
            kind: "module".into(),
            ring: ms.modulus(),
            blocks: ms
                .blocks()
                .into_iter()
                .enumerate()
                .map(|(a, (t, s, r))| ModuleBlock {
                    region: a + 1,
                    t,
                    s,
                    r,
                })
                .collect(),
        }
    }
}

impl LinkFile {
    pub fn pd_code(&self) -> PdCode {
        PdCode(self.pd.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn birack_round_trip() {
        let text = r#"{"kind":"birack","n":2,"U":[[1,1],[2,2]],"L":[[2,2],[1,1]]}"#;
        let f: BirackFile = serde_json::from_str(text).unwrap();
        let b = f.build().unwrap();
        assert_eq!(b.rank(), 2);
        let back = BirackFile::of(&b);
        assert_eq!(back.up, f.up);
        assert_eq!(back.low, f.low);
    }

    #[test]
    fn module_round_trip() {
        let text = r#"{"kind":"module","ring":3,"blocks":[
            {"A":1,"T":[[1]],"S":[[0]],"R":[[1]]}
        ]}"#;
        let f: ModuleFile = serde_json::from_str(text).unwrap();
        let ms = f.build().unwrap();
        assert_eq!(ms.modulus(), 3);
        let back = ModuleFile::of(&ms);
        let re = serde_json::to_string(&back).unwrap();
        let f2: ModuleFile = serde_json::from_str(&re).unwrap();
        assert_eq!(f2.build().unwrap(), ms);
    }

    #[test]
    fn module_block_labels_validated() {
        let text = r#"{"kind":"module","ring":3,"blocks":[
            {"A":2,"T":[[1]],"S":[[0]],"R":[[1]]}
        ]}"#;
        let f: ModuleFile = serde_json::from_str(text).unwrap();
        assert!(f.build().is_err());
    }

    #[test]
    fn link_file_parses() {
        let text = r#"{"name":"3_1","components":1,"pd":[[1,4,2,5],[3,6,4,1],[5,2,6,3]]}"#;
        let f: LinkFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.name, "3_1");
        assert_eq!(f.pd.len(), 3);
    }
}
