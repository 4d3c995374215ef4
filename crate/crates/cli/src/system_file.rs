//! JSON system files. Rationals are always strings (`"p/q"` or `"p"`).
//!
//! ```json
//! {"kind": "bilinear", "n": 1, "m": 1,
//!  "equations": [{"coeffs": [["1", "0"], ["0", "1"]]},
//!                {"coeffs": [["0", "1"], ["1", "0"]]}]}
//!
//! {"kind": "three-player",
//!  "a": {"a0": "1", "a1": "0", "a2": "0", "a4": "1"},
//!  "b": {"b0": "1", "b1": "0", "b3": "0", "b4": "1"},
//!  "c": {"c0": "1", "c2": "0", "c3": "0", "c4": "1"}}
//! ```

use std::fmt;
use std::path::Path;

use multidisc::bilinear::BilinearSystem;
use multidisc::rational::{format_rational, parse_rational};
use multidisc::sparse3::ThreePlayerSystem;
use multidisc::{Error, Rational};
use serde::{Deserialize, Serialize};

/// An exact rational that (de)serializes as a string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalString(pub Rational);

impl TryFrom<String> for RationalString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        parse_rational(&s).map(Self)
    }
}

impl From<RationalString> for String {
    fn from(r: RationalString) -> String {
        format_rational(&r.0)
    }
}

impl From<Rational> for RationalString {
    fn from(r: Rational) -> Self {
        Self(r)
    }
}

impl fmt::Display for RationalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationFile {
    /// `coeffs[i][j]` is the coefficient of `x_i y_j`.
    pub coeffs: Vec<Vec<RationalString>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerA {
    pub a0: RationalString,
    pub a1: RationalString,
    pub a2: RationalString,
    pub a4: RationalString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerB {
    pub b0: RationalString,
    pub b1: RationalString,
    pub b3: RationalString,
    pub b4: RationalString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerC {
    pub c0: RationalString,
    pub c2: RationalString,
    pub c3: RationalString,
    pub c4: RationalString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
#[allow(clippy::large_enum_variant)]
pub enum SystemFile {
    Bilinear { n: usize, m: usize, equations: Vec<EquationFile> },
    ThreePlayer { a: PlayerA, b: PlayerB, c: PlayerC },
}

/// A validated system.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum System {
    Bilinear(BilinearSystem),
    ThreePlayer(ThreePlayerSystem),
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed system file: {e}"))
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system files always serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SystemFile::Bilinear { .. } => "bilinear",
            SystemFile::ThreePlayer { .. } => "three-player",
        }
    }

    pub fn to_system(&self) -> Result<System, String> {
        match self {
            SystemFile::Bilinear { n, m, equations } => {
                let coeffs = equations
                    .iter()
                    .map(|eq| eq.coeffs.iter().map(|row| row.iter().map(|r| r.0.clone()).collect()).collect())
                    .collect();
                BilinearSystem::from_rationals(*n, *m, coeffs)
                    .map(System::Bilinear)
                    .map_err(|e| e.to_string())
            }
            SystemFile::ThreePlayer { a, b, c } => {
                let coeffs =
                    [&a.a0, &a.a1, &a.a2, &a.a4, &b.b0, &b.b1, &b.b3, &b.b4, &c.c0, &c.c2, &c.c3, &c.c4]
                        .map(|r| r.0.clone());
                Ok(System::ThreePlayer(ThreePlayerSystem::from_rationals(coeffs)))
            }
        }
    }

    pub fn from_bilinear(sys: &BilinearSystem) -> Result<Self, String> {
        let coeffs = sys.rational_coeffs().map_err(|e| e.to_string())?;
        Ok(SystemFile::Bilinear {
            n: sys.n(),
            m: sys.m(),
            equations: coeffs
                .into_iter()
                .map(|eq| EquationFile {
                    coeffs: eq.into_iter().map(|row| row.into_iter().map(RationalString).collect()).collect(),
                })
                .collect(),
        })
    }

    pub fn from_three_player(sys: &ThreePlayerSystem) -> Result<Self, String> {
        let [a0, a1, a2, a4, b0, b1, b3, b4, c0, c2, c3, c4] =
            sys.rational_coeffs().map_err(|e| e.to_string())?.map(RationalString);
        Ok(SystemFile::ThreePlayer {
            a: PlayerA { a0, a1, a2, a4 },
            b: PlayerB { b0, b1, b3, b4 },
            c: PlayerC { c0, c2, c3, c4 },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_kinds() {
        let bilinear = r#"{"kind": "bilinear", "n": 1, "m": 1, "equations": [
            {"coeffs": [["1", "0"], ["0", "1"]]}, {"coeffs": [["0", "1/2"], ["-3", "0"]]}]}"#;
        let f = SystemFile::parse(bilinear).unwrap();
        assert_eq!(f.kind(), "bilinear");
        assert!(matches!(f.to_system().unwrap(), System::Bilinear(_)));

        let three = r#"{"kind": "three-player",
            "a": {"a0": "1", "a1": "0", "a2": "0", "a4": "1"},
            "b": {"b0": "1", "b1": "0", "b3": "0", "b4": "1"},
            "c": {"c0": "1", "c2": "0", "c3": "0", "c4": "1"}}"#;
        let f = SystemFile::parse(three).unwrap();
        assert!(matches!(f.to_system().unwrap(), System::ThreePlayer(_)));
    }

    #[test]
    fn rejects_floats_and_bad_shapes() {
        let float = r#"{"kind": "bilinear", "n": 1, "m": 1, "equations": [
            {"coeffs": [[1.5, "0"], ["0", "1"]]}, {"coeffs": [["0", "1"], ["1", "0"]]}]}"#;
        assert!(SystemFile::parse(float).is_err());
        let decimal = float.replace("1.5", "\"1.5\"");
        assert!(SystemFile::parse(&decimal).is_err());
        let short = r#"{"kind": "bilinear", "n": 1, "m": 1, "equations": [
            {"coeffs": [["1", "0"], ["0", "1"]]}]}"#;
        assert!(SystemFile::parse(short).unwrap().to_system().is_err());
        let wrong_label = r#"{"kind": "three-player",
            "a": {"a0": "1", "a1": "0", "a3": "0", "a4": "1"},
            "b": {"b0": "1", "b1": "0", "b3": "0", "b4": "1"},
            "c": {"c0": "1", "c2": "0", "c3": "0", "c4": "1"}}"#;
        assert!(SystemFile::parse(wrong_label).is_err());
    }
}
