//! On-disk input documents. A document is JSON describing either a bare
//! involutive lattice or a root datum plus a real form; matrices are
//! row-major arrays of integer arrays, mod-2 vectors are arrays of 0/1.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use realh1::mat::{IntMatrix, IntVec};
use realh1::realform::RealFormSpec;
use realh1::rootdata::{RootDatum, WeylElement};
use realh1::torus::RealTorus;
use realh1::zc2lat::InvolutiveLattice;

/// Parse or validation failure, tagged with the document section it
/// came from.
#[derive(Debug)]
pub struct DocError {
    pub section: String,
    pub message: String,
}

impl DocError {
    fn new(section: impl Into<String>, message: impl fmt::Display) -> DocError {
        DocError {
            section: section.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.section, self.message)
    }
}

impl std::error::Error for DocError {}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_datum: Option<RootDatumSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_form: Option<RealFormSection>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSection {
    pub rank: usize,
    pub sigma: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumSection {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFormSection {
    pub sigma_star: Vec<Vec<i64>>,
    pub w0_generators: GeneratorsSection,
    /// One 0/1 vector of ambient length per generator; omitted means
    /// all zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<Vec<u8>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorsSection {
    Named(String),
    Explicit(Vec<Vec<Vec<i64>>>),
}

/// A document realized as validated in-memory objects.
#[derive(Debug)]
pub enum ParsedSpec {
    Torus { label: String, torus: RealTorus },
    Group(RealFormSpec),
}

impl ParsedSpec {
    pub fn label(&self) -> &str {
        match self {
            ParsedSpec::Torus { label, .. } => label,
            ParsedSpec::Group(form) => form.label(),
        }
    }
}

pub fn parse_str(text: &str) -> Result<SpecDocument, DocError> {
    serde_json::from_str(text).map_err(|e| {
        DocError::new(
            "document",
            format!("line {}, column {}: {}", e.line(), e.column(), e),
        )
    })
}

pub fn load(path: &Path) -> Result<ParsedSpec, DocError> {
    let text = fs::read_to_string(path)
        .map_err(|e| DocError::new("document", format!("{}: {}", path.display(), e)))?;
    realize(&parse_str(&text)?)
}

/// Validates the section structure and builds the library objects,
/// surfacing every underlying validation error with its section name.
pub fn realize(doc: &SpecDocument) -> Result<ParsedSpec, DocError> {
    let label = doc.label.clone().unwrap_or_else(|| "unnamed".to_string());
    match (&doc.lattice, &doc.root_datum, &doc.real_form) {
        (Some(lat), None, None) => {
            let sigma = matrix_of("lattice.sigma", &lat.sigma)?;
            if sigma.rows() != lat.rank || sigma.cols() != lat.rank {
                return Err(DocError::new(
                    "lattice.sigma",
                    format!(
                        "matrix is {}x{} but rank is {}",
                        sigma.rows(),
                        sigma.cols(),
                        lat.rank
                    ),
                ));
            }
            let lattice =
                InvolutiveLattice::new(sigma).map_err(|e| DocError::new("lattice.sigma", e))?;
            Ok(ParsedSpec::Torus {
                label,
                torus: RealTorus::new(lattice),
            })
        }
        (None, Some(rd), Some(rf)) => {
            let datum = RootDatum::new(
                rd.rank,
                rd.roots.iter().map(|v| int_vec(v)).collect(),
                rd.coroots.iter().map(|v| int_vec(v)).collect(),
                rd.simple_indices.clone(),
            )
            .map_err(|e| DocError::new("root_datum", e))?;
            let sigma_star = matrix_of("real_form.sigma_star", &rf.sigma_star)?;
            let generators = generators_of(&datum, &rf.w0_generators)?;
            let shifts = shifts_of(rd.rank, generators.len(), rf.shift.as_deref())?;
            RealFormSpec::new(datum, sigma_star, generators, shifts, label)
                .map(ParsedSpec::Group)
                .map_err(|e| DocError::new("real_form", e))
        }
        (None, Some(_), None) => Err(DocError::new(
            "document",
            "a `root_datum` section needs a `real_form` section",
        )),
        (None, None, Some(_)) => Err(DocError::new(
            "document",
            "a `real_form` section needs a `root_datum` section",
        )),
        _ => Err(DocError::new(
            "document",
            "provide either a `lattice` section or a `root_datum` with a `real_form`",
        )),
    }
}

fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| x.into()).collect()
}

fn matrix_of(section: &str, rows: &[Vec<i64>]) -> Result<IntMatrix, DocError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(DocError::new(section, "rows have unequal lengths"));
    }
    Ok(IntMatrix::from_rows(rows))
}

fn generators_of(
    datum: &RootDatum,
    section: &GeneratorsSection,
) -> Result<Vec<WeylElement>, DocError> {
    match section {
        GeneratorsSection::Named(name) if name == "all_simple_reflections" => {
            Ok(datum.simple_reflections())
        }
        GeneratorsSection::Named(name) => Err(DocError::new(
            "real_form.w0_generators",
            format!("unknown name {name:?}; expected \"all_simple_reflections\" or a list of matrices"),
        )),
        GeneratorsSection::Explicit(mats) => mats
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let section = format!("real_form.w0_generators[{i}]");
                let matrix = matrix_of(&section, m)?;
                WeylElement::new(datum, matrix).map_err(|e| DocError::new(section, e))
            })
            .collect(),
    }
}

fn shifts_of(
    rank: usize,
    generators: usize,
    shift: Option<&[Vec<u8>]>,
) -> Result<Vec<Vec<u8>>, DocError> {
    let Some(rows) = shift else {
        return Ok(vec![vec![0; rank]; generators]);
    };
    if rows.len() != generators {
        return Err(DocError::new(
            "real_form.shift",
            format!("{} vectors for {} generators", rows.len(), generators),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.iter().any(|&b| b > 1) {
            return Err(DocError::new(
                format!("real_form.shift[{i}]"),
                "entries must be 0 or 1",
            ));
        }
    }
    Ok(rows.to_vec())
}
