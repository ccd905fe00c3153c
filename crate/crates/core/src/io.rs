//! JSON file formats.
//!
//! A complex is `{"name": "optional", "facets": [[0,1,2], ...]}`; a pair is
//! `{"complex": <complex>, "subcomplex": <complex>}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Vertex;
use crate::pair::ComplexPair;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub facets: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub complex: ComplexFile,
    pub subcomplex: ComplexFile,
}

impl ComplexFile {
    pub fn from_complex(x: &SimplicialComplex, name: Option<String>) -> Self {
        ComplexFile {
            name,
            facets: x
                .sorted_facets()
                .into_iter()
                .filter(|f| !f.is_empty())
                .map(|f| f.vertices().to_vec())
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.facets.iter().cloned())
    }
}

impl PairFile {
    pub fn from_pair(pair: &ComplexPair) -> Self {
        PairFile {
            complex: ComplexFile::from_complex(pair.complex(), None),
            subcomplex: ComplexFile::from_complex(pair.subcomplex(), None),
        }
    }

    pub fn to_pair(&self) -> Result<ComplexPair> {
        ComplexPair::new(self.complex.to_complex()?, self.subcomplex.to_complex()?)
    }
}

/// Parses either a pair document or a bare complex document; the latter is
/// read as (X, {∅}).
pub fn parse_pair(text: &str) -> Result<ComplexPair> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("complex").is_some() {
        let file: PairFile = serde_json::from_value(value)?;
        file.to_pair()
    } else if value.get("facets").is_some() {
        let file: ComplexFile = serde_json::from_value(value)?;
        Ok(ComplexPair::absolute(file.to_complex()?))
    } else {
        Err(Error::Validation(
            "expected an object with \"facets\" or \"complex\"".into(),
        ))
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(text)?;
    file.to_complex()
}

pub fn load_pair(path: impl AsRef<Path>) -> Result<ComplexPair> {
    parse_pair(&std::fs::read_to_string(path)?)
}

pub fn load_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

pub fn complex_to_json(x: &SimplicialComplex, name: Option<&str>) -> String {
    let file = ComplexFile::from_complex(x, name.map(str::to_owned));
    serde_json::to_string_pretty(&file).expect("serializable") + "\n"
}

pub fn pair_to_json(pair: &ComplexPair) -> String {
    serde_json::to_string_pretty(&PairFile::from_pair(pair)).expect("serializable") + "\n"
}
