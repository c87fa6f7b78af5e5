//! JSON documents for POVMs, extensions and verification reports.
//!
//! Doubles are written in shortest round-trip form and parsed exactly, so a
//! write followed by a read reproduces every bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::NaimarkExtension;
use crate::linalg::ToleranceConfig;
use crate::povm::{LabeledMatrix, Povm};

/// `{"dim": D, "elements": [{"label": ..., "matrix": [[[re, im], ...], ...]}, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmDocument {
    pub dim: usize,
    pub elements: Vec<LabeledMatrix>,
}

impl From<&Povm> for PovmDocument {
    fn from(povm: &Povm) -> Self {
        Self {
            dim: povm.dim(),
            elements: povm.elements().to_vec(),
        }
    }
}

impl PovmDocument {
    pub fn into_povm(self, cfg: &ToleranceConfig) -> Result<Povm> {
        if let Some(bad) = self.elements.iter().find(|e| e.matrix.shape() != (self.dim, self.dim)) {
            return Err(Error::DimensionMismatch(format!(
                "element `{}` is {}x{} but dim is {}",
                bad.label,
                bad.matrix.rows(),
                bad.matrix.cols(),
                self.dim
            )));
        }
        Povm::new(self.elements, cfg)
    }
}

pub fn povm_to_json(povm: &Povm) -> String {
    serde_json::to_string(&PovmDocument::from(povm)).expect("POVM documents always serialize")
}

/// Parses a POVM document without validating it as a POVM.
pub fn povm_document_from_json(text: &str) -> Result<PovmDocument> {
    Ok(serde_json::from_str(text)?)
}

pub fn povm_from_json(text: &str, cfg: &ToleranceConfig) -> Result<Povm> {
    povm_document_from_json(text)?.into_povm(cfg)
}

pub fn extension_to_json(ext: &NaimarkExtension) -> String {
    serde_json::to_string(ext).expect("extensions always serialize")
}

pub fn extension_from_json(text: &str) -> Result<NaimarkExtension> {
    let ext: NaimarkExtension = serde_json::from_str(text)?;
    ext.check_shape()?;
    Ok(ext)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types always serialize")
}

pub fn read_povm(path: impl AsRef<Path>, cfg: &ToleranceConfig) -> Result<Povm> {
    povm_from_json(&fs::read_to_string(path)?, cfg)
}

pub fn read_extension(path: impl AsRef<Path>) -> Result<NaimarkExtension> {
    extension_from_json(&fs::read_to_string(path)?)
}
