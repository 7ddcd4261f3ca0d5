//! JSON interchange format for codes.
//!
//! Output is canonical: keys sorted, no whitespace, one trailing newline.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::constructions::{CodeBundle, Predicted};
use crate::error::{Error, Result};
use crate::galois::{Field, FieldElement};
use crate::locality::{check_certificate, LocalityCertificate};
use crate::matrix::Matrix;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: u32,
    /// Coefficients of the defining polynomial, constant term first.
    pub modulus: Vec<u32>,
}

impl FieldDescriptor {
    pub fn of(field: &Field) -> Self {
        FieldDescriptor {
            p: field.characteristic() as u64,
            m: field.degree(),
            modulus: field.modulus().to_vec(),
        }
    }

    pub fn field(&self) -> Result<Field> {
        let f = Field::with_modulus(self.p, &self.modulus)?;
        if f.degree() != self.m {
            return Err(Error::Format(format!(
                "modulus has degree {} but m = {}",
                f.degree(),
                self.m
            )));
        }
        Ok(f)
    }
}

/// Locality block with 1-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityBlock {
    pub r: usize,
    pub delta: usize,
    pub groups: Vec<Vec<usize>>,
}

impl From<&LocalityCertificate> for LocalityBlock {
    fn from(c: &LocalityCertificate) -> Self {
        LocalityBlock {
            r: c.r,
            delta: c.delta,
            groups: c
                .groups
                .iter()
                .map(|g| g.iter().map(|&i| i + 1).collect())
                .collect(),
        }
    }
}

impl LocalityBlock {
    pub fn certificate(&self) -> Result<LocalityCertificate> {
        let groups = self
            .groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&i| {
                        i.checked_sub(1)
                            .ok_or_else(|| Error::Format("coordinates are 1-based".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalityCertificate::new(self.r, self.delta, groups))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionBlock {
    pub family: String,
    pub inputs: BTreeMap<String, u64>,
    pub predicted: Predicted,
    pub optimal_claim: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub format_version: u32,
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_check: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locality: Option<LocalityBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionBlock>,
}

/// A decoded file.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub code: LinearCode,
    pub cert: Option<LocalityCertificate>,
    pub construction: Option<ConstructionBlock>,
}

impl CodeFile {
    pub fn from_code(code: &LinearCode, cert: Option<&LocalityCertificate>) -> Self {
        CodeFile {
            format_version: FORMAT_VERSION,
            field: FieldDescriptor::of(code.field()),
            n: code.len(),
            k: code.dimension(),
            generator: code.generator().to_u32_rows(),
            parity_check: Some(code.parity_check().to_u32_rows()),
            locality: cert.map(LocalityBlock::from),
            construction: None,
        }
    }

    pub fn from_bundle(b: &CodeBundle) -> Self {
        CodeFile {
            construction: Some(ConstructionBlock {
                family: b.family.to_string(),
                inputs: b.inputs.clone(),
                predicted: b.predicted,
                optimal_claim: b.optimal_claim,
            }),
            ..CodeFile::from_code(&b.code, Some(&b.cert))
        }
    }

    pub fn to_json(&self) -> String {
        // serde_json::Value keeps object keys in a BTreeMap
        let value = serde_json::to_value(self).expect("code file serializes");
        let mut s = serde_json::to_string(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CodeFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {}",
                f.format_version
            )));
        }
        Ok(f)
    }

    fn matrix(field: &Field, rows: &[Vec<u32>], cols: usize, what: &str) -> Result<Matrix> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Format(format!("{what} rows must have length {cols}")));
        }
        if rows.is_empty() {
            return Ok(Matrix::zeros(field, 0, cols));
        }
        Matrix::from_rows(field, rows).map_err(|e| Error::Format(format!("{what}: {e}")))
    }

    /// Decodes the matrices and checks n, k, the parity-check relation and
    /// the locality block.
    pub fn decode(&self) -> Result<Decoded> {
        let field = self.field.field()?;
        let g = Self::matrix(&field, &self.generator, self.n, "generator")?;
        let code = match &self.parity_check {
            Some(rows) => {
                let h = Self::matrix(&field, rows, self.n, "parity_check")?;
                LinearCode::with_parity_check(g, h).map_err(|e| Error::Format(e.to_string()))?
            }
            None => LinearCode::from_generator(g).map_err(|e| Error::Format(e.to_string()))?,
        };
        if code.dimension() != self.k {
            return Err(Error::Format(format!(
                "k = {} but the generator has rank {}",
                self.k,
                code.dimension()
            )));
        }
        let cert = self.locality.as_ref().map(|l| l.certificate()).transpose()?;
        if let Some(c) = &cert {
            let check = check_certificate(&code, c)?;
            if let Some(reason) = check.failure() {
                return Err(Error::InvalidCertificate(reason));
            }
        }
        Ok(Decoded {
            code,
            cert,
            construction: self.construction.clone(),
        })
    }

    pub fn read(path: &Path) -> std::io::Result<String> {
        std::fs::read_to_string(path)
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json())
    }
}

/// Parses a comma-separated word; `?` marks an erasure.
pub fn parse_word(field: &Field, s: &str) -> Result<Vec<Option<FieldElement>>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t == "?" {
                return Ok(None);
            }
            let v: u64 = t
                .parse()
                .map_err(|_| Error::Format(format!("bad symbol {t:?}")))?;
            field.element(v).map(Some)
        })
        .collect()
}

pub fn format_word(word: &[FieldElement]) -> String {
    word.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
