use serde::{Deserialize, Serialize};

use super::{JordanBlock, ModulePresentation};
use crate::error::{Error, Result};
use crate::lmatrix::LaurentMatrix;
use crate::scalars::Scalar;

/// The JSON form of a module, e.g. `{"kind":"line","c":"3","m":2}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleDescriptor {
    Line { c: Scalar, m: i64 },
    Torsion { blocks: Vec<JordanBlock> },
    Good { p: String },
    Matrix { entries: Vec<Vec<String>> },
}

impl ModuleDescriptor {
    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("descriptors always serialize")
    }

    pub fn to_module(&self) -> Result<ModulePresentation> {
        match self {
            ModuleDescriptor::Line { c, m } => ModulePresentation::line(c.clone(), *m),
            ModuleDescriptor::Torsion { blocks } => ModulePresentation::torsion(blocks.clone()),
            ModuleDescriptor::Good { p } => ModulePresentation::good(crate::aq::parse(p)?),
            ModuleDescriptor::Matrix { entries } => {
                ModulePresentation::matrix(LaurentMatrix::from_strings(entries)?)
            }
        }
    }

    pub fn from_module(m: &ModulePresentation) -> Self {
        match m {
            ModulePresentation::Line { c, m } => ModuleDescriptor::Line {
                c: c.clone(),
                m: *m,
            },
            ModulePresentation::Torsion { blocks } => ModuleDescriptor::Torsion {
                blocks: blocks.clone(),
            },
            ModulePresentation::Good { p } => ModuleDescriptor::Good { p: p.to_string() },
            ModulePresentation::Matrix { t } => ModuleDescriptor::Matrix {
                entries: t.matrix().to_strings(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_parse_and_round_trip() {
        for text in [
            r#"{"kind":"line","c":"3","m":2}"#,
            r#"{"kind":"torsion","blocks":[{"lambda":"1","size":2}]}"#,
            r#"{"kind":"good","p":"s^2-(q+1)*s+q"}"#,
            r#"{"kind":"matrix","entries":[["z","1"],["0","1"]]}"#,
        ] {
            let d = ModuleDescriptor::parse_json(text).unwrap();
            let m = d.to_module().unwrap();
            let back = ModuleDescriptor::from_module(&m);
            assert_eq!(back.to_module().unwrap(), m);
        }
        let d = ModuleDescriptor::from_module(
            &ModulePresentation::line(Scalar::new(-3, 2), 1).unwrap(),
        );
        assert_eq!(
            d.to_json().to_string(),
            r#"{"c":"-3/2","kind":"line","m":1}"#
        );
    }

    #[test]
    fn malformed_descriptors() {
        for bad in [
            r#"{"kind":"line","c":"0","m":2}"#,
            r#"{"kind":"line","c":"x","m":2}"#,
            r#"{"kind":"good","p":"(z+1)*s + 1"}"#,
            r#"{"kind":"matrix","entries":[["z+1"]]}"#,
            r#"{"kind":"cube"}"#,
        ] {
            assert!(
                ModuleDescriptor::parse_json(bad)
                    .and_then(|d| d.to_module())
                    .is_err(),
                "{bad}"
            );
        }
    }
}
