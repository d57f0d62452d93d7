//! JSON file formats for matrices, presentations, endomatrices, quivers and
//! Coxeter systems.
//!
//! All serialization goes through [`to_canonical_json`], which sorts object
//! keys lexicographically and pretty-prints with two-space indentation, so a
//! file emitted by the CLI (and every checked-in fixture) round-trips through
//! its loader byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use decat_core::endodecomp::EndoMatrix;
use decat_core::projfun::Quiver;
use decat_core::twocat::{CompEntry, OneMor};
use decat_core::{MorId, NniMatrix, ObjectId, Presentation};
use serde::{Deserialize, Serialize};

/// Serializes any serde value with lexicographically sorted keys and a
/// trailing newline. Sorting happens by converting to a generic JSON value
/// first: `serde_json` maps are ordered, so emission order no longer depends
/// on struct field order.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let generic = serde_json::to_value(value).expect("in-memory serialization cannot fail");
    let mut text = serde_json::to_string_pretty(&generic)
        .expect("serializing a serde_json::Value cannot fail");
    text.push('\n');
    text
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("IoError: cannot read {}", path.display()))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text)
        .with_context(|| format!("ParseError: malformed JSON in {}", path.display()))
}

/// A plain matrix file: a JSON array of rows of non-negative integers.
pub fn load_matrix(path: &Path) -> Result<NniMatrix> {
    let rows: Vec<Vec<u64>> = parse_json(path, &read_file(path)?)?;
    NniMatrix::from_rows(rows)
        .map_err(|e| anyhow::anyhow!("{e}"))
        .with_context(|| format!("ParseError: bad matrix in {}", path.display()))
}

/// A block form as emitted by the `flor` subcommand.
#[derive(Debug, Serialize)]
pub struct FlorFormFile {
    #[serde(rename = "A")]
    pub block_a: Vec<Vec<u64>>,
    #[serde(rename = "B")]
    pub block_b: Vec<Vec<u64>>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub perm: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OneMorFile {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CompEntryFile {
    pub left: String,
    pub result: BTreeMap<String, u64>,
    pub right: String,
}

/// A presentation file. `identities` maps object names to the identity
/// 1-morphism id and may be omitted for degenerate inputs; identity-law
/// composition rows may likewise be omitted.
#[derive(Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub composition: Vec<CompEntryFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    pub objects: Vec<String>,
    pub onemorphisms: Vec<OneMorFile>,
}

impl PresentationFile {
    pub fn from_presentation(pres: &Presentation) -> Self {
        let mut identities = BTreeMap::new();
        for obj in pres.objects() {
            if let Some(one) = pres.identity_of(obj.as_str()) {
                identities.insert(obj.as_str().to_owned(), one.id.as_str().to_owned());
            }
        }
        PresentationFile {
            composition: pres
                .raw_composition()
                .iter()
                .map(|entry| CompEntryFile {
                    left: entry.left.as_str().to_owned(),
                    result: entry
                        .result
                        .iter()
                        .map(|(id, mult)| (id.as_str().to_owned(), *mult))
                        .collect(),
                    right: entry.right.as_str().to_owned(),
                })
                .collect(),
            identities,
            objects: pres.objects().iter().map(|o| o.as_str().to_owned()).collect(),
            onemorphisms: pres
                .raw_morphisms()
                .iter()
                .map(|m| OneMorFile {
                    id: m.id.as_str().to_owned(),
                    src: m.src.as_str().to_owned(),
                    tgt: m.tgt.as_str().to_owned(),
                })
                .collect(),
        }
    }

    pub fn into_presentation(self) -> Result<Presentation> {
        let objects: Vec<ObjectId> = self.objects.iter().map(ObjectId::new).collect();
        let onemors: Vec<OneMor> = self
            .onemorphisms
            .iter()
            .map(|m| OneMor {
                id: MorId::new(&m.id),
                src: ObjectId::new(&m.src),
                tgt: ObjectId::new(&m.tgt),
                is_identity: self.identities.get(&m.src) == Some(&m.id) && m.src == m.tgt,
            })
            .collect();
        let mut composition = Vec::new();
        for entry in &self.composition {
            for (id, mult) in &entry.result {
                if *mult == 0 {
                    bail!(
                        "ParseError: zero multiplicity for {id} in the row ({}, {}); \
                         omit the term instead",
                        entry.left,
                        entry.right
                    );
                }
            }
            composition.push(CompEntry {
                left: MorId::new(&entry.left),
                right: MorId::new(&entry.right),
                result: entry
                    .result
                    .iter()
                    .map(|(id, mult)| (MorId::new(id), *mult))
                    .collect(),
            });
        }
        Ok(Presentation::new(objects, onemors, composition))
    }
}

pub fn load_presentation(path: &Path) -> Result<Presentation> {
    let file: PresentationFile = parse_json(path, &read_file(path)?)?;
    file.into_presentation()
}

/// An endomatrix file: summand objects plus a square grid of term maps.
/// An empty map is the zero sum.
#[derive(Debug, Serialize, Deserialize)]
pub struct EndoMatrixFile {
    pub entries: Vec<Vec<BTreeMap<String, u64>>>,
    pub summands: Vec<String>,
}

impl EndoMatrixFile {
    pub fn from_matrix(matrix: &EndoMatrix) -> Self {
        let n = matrix.size();
        EndoMatrixFile {
            entries: (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            matrix
                                .entry(r, c)
                                .terms()
                                .map(|(id, mult)| (id.as_str().to_owned(), mult))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            summands: matrix.objects().iter().map(|o| o.as_str().to_owned()).collect(),
        }
    }

    pub fn into_matrix(self, pres: &Presentation) -> Result<EndoMatrix> {
        let n = self.summands.len();
        if self.entries.len() != n || self.entries.iter().any(|row| row.len() != n) {
            bail!(
                "ParseError: entries must form a {n}x{n} grid matching the summand list"
            );
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (c, cell) in row.iter().enumerate() {
                let src = &self.summands[c];
                let tgt = &self.summands[r];
                for mult in cell.values() {
                    if *mult == 0 {
                        bail!(
                            "ParseError: zero multiplicity in entry ({r}, {c}); \
                             omit the term instead"
                        );
                    }
                }
                let terms: Vec<(&str, u64)> =
                    cell.iter().map(|(id, mult)| (id.as_str(), *mult)).collect();
                let sum = pres
                    .sum(src, tgt, &terms)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                out.push(sum);
            }
            rows.push(out);
        }
        let objects = self.summands.iter().map(ObjectId::new).collect();
        EndoMatrix::new(objects, rows).map_err(|e| anyhow::anyhow!("{e}"))
    }
}

pub fn load_endomatrix(path: &Path, pres: &Presentation) -> Result<EndoMatrix> {
    let file: EndoMatrixFile = parse_json(path, &read_file(path)?)?;
    file.into_matrix(pres)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// A quiver-with-relations file; relations are arrow-name sequences read
/// left to right in path order (the first arrow is traversed first).
#[derive(Debug, Serialize, Deserialize)]
pub struct QuiverFile {
    pub arrows: Vec<ArrowFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<String>>,
    pub vertices: Vec<String>,
}

impl QuiverFile {
    pub fn into_quiver(self) -> Result<Quiver> {
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.src.as_str(), a.tgt.as_str()))
            .collect();
        let relations: Vec<Vec<&str>> = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(String::as_str).collect())
            .collect();
        let relation_slices: Vec<&[&str]> = relations.iter().map(Vec::as_slice).collect();
        Quiver::new(&vertices, &arrows, &relation_slices).map_err(|e| anyhow::anyhow!("{e}"))
    }
}

pub fn load_quiver(path: &Path) -> Result<Quiver> {
    let file: QuiverFile = parse_json(path, &read_file(path)?)?;
    file.into_quiver()
}

/// A Coxeter system file: generator names plus the symmetric Coxeter matrix.
#[derive(Debug, Serialize, Deserialize)]
pub struct CoxeterFile {
    pub generators: Vec<String>,
    pub m: Vec<Vec<u32>>,
}

impl CoxeterFile {
    pub fn check_shape(&self) -> Result<()> {
        if self.generators.len() != self.m.len() {
            bail!(
                "ParseError: {} generator names for a {}-row Coxeter matrix",
                self.generators.len(),
                self.m.len()
            );
        }
        Ok(())
    }
}

pub fn load_coxeter(path: &Path) -> Result<CoxeterFile> {
    let file: CoxeterFile = parse_json(path, &read_file(path)?)?;
    file.check_shape()?;
    Ok(file)
}
