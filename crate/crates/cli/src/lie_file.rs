//! Lie algebras from JSON.
//!
//! ```json
//! {
//!   "names": ["e", "h", "f"],
//!   "brackets": [["h", "e", 2, "e"], ["e", "f", 1, "h"], ["h", "f", -2, "f"]],
//!   "form": [["0", "0", "1"], ["0", "2", "0"], ["1", "0", "0"]],
//!   "dual_coxeter": 2
//! }
//! ```
//!
//! A bracket entry `[a, b, c, d]` means `[a, b]` has coefficient `c` on `d`.
//! The antisymmetric partner is filled in unless it is listed too.

use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;
use toroidal_core::{LieAlgebra, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational, String> {
        match self {
            Number::Int(n) => Ok(Rational::from_integer((*n).into())),
            Number::Text(s) => s.trim().parse().map_err(|_| format!("`{s}` is not a rational number")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    names: Vec<String>,
    #[serde(default)]
    brackets: Vec<(String, String, Number, String)>,
    form: Vec<Vec<Number>>,
    #[serde(default)]
    dual_coxeter: Option<Number>,
}

pub fn from_json(text: &str) -> Result<LieAlgebra, String> {
    let file: LieFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let n = file.names.len();
    let index =
        |name: &str| file.names.iter().position(|x| x == name).ok_or_else(|| format!("unknown basis element `{name}`"));
    let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
    let mut given = vec![vec![false; n]; n];
    for (a, b, _, _) in &file.brackets {
        given[index(a)?][index(b)?] = true;
    }
    for (a, b, c, d) in &file.brackets {
        let (i, j, k) = (index(a)?, index(b)?, index(d)?);
        let c = c.value()?;
        if !given[j][i] {
            table[j][i][k] -= &c;
        }
        table[i][j][k] += c;
    }
    let form = file
        .form
        .iter()
        .map(|row| row.iter().map(Number::value).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let hcox = file.dual_coxeter.as_ref().map(Number::value).transpose()?;
    LieAlgebra::new(file.names, table, form, hcox).map_err(|e| e.to_string())
}

/// A preset name (`sl2`, `sl3`, `abelian:N`) or a path to a JSON file.
pub fn load(spec: &str) -> Result<LieAlgebra, String> {
    if let Some(l) = LieAlgebra::preset(spec) {
        return Ok(l);
    }
    if let Some(d) = spec.strip_prefix("abelian:") {
        let d: usize = d.parse().map_err(|_| format!("bad dimension in `{spec}`"))?;
        if d == 0 {
            return Err("abelian algebra needs positive dimension".into());
        }
        return Ok(LieAlgebra::abelian(d));
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        return from_json(&text).map_err(|e| format!("{spec}: {e}"));
    }
    Err(format!("`{spec}` is neither a preset (sl2, sl3, abelian:N) nor a readable file"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_from_json_matches_preset() {
        let text = r#"{
            "names": ["e", "h", "f"],
            "brackets": [["h", "e", 2, "e"], ["e", "f", 1, "h"], ["h", "f", -2, "f"]],
            "form": [["0", "0", "1"], ["0", "2", "0"], ["1", "0", "0"]],
            "dual_coxeter": 2
        }"#;
        assert_eq!(from_json(text).unwrap(), LieAlgebra::sl2());
    }

    #[test]
    fn bad_files() {
        assert!(from_json(r#"{"names": ["a"], "form": [["x"]]}"#).is_err());
        assert!(from_json(r#"{"names": ["a"], "brackets": [["a", "b", 1, "a"]], "form": [[1]]}"#).is_err());
        assert!(load("no-such-algebra").is_err());
    }
}
