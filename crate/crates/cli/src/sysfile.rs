//! JSON system files:
//! `{"field": "Q" | p, "d": [d1, d2], "polys": [[[coef, es, et, eu, ev], ...] x 3]}`
//! with coefficients as strings ("3", "-2/5") or integers.

use bigres::{bd, BiDegree, BiPoly, Field, FieldSpec, SystemF};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime(u32),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoef {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
struct RawTerm(RawCoef, u32, u32, u32, u32);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    field: RawField,
    d: [i64; 2],
    polys: Vec<Vec<RawTerm>>,
}

pub struct SystemFile {
    pub field: FieldSpec,
    pub d: BiDegree,
    raw: RawFile,
    path: String,
}

fn usage(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{path}: {msg}"))
}

impl SystemFile {
    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| usage(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &str) -> Result<Self, CliError> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
            CliError::Usage(format!("{path}:{}:{}: {msg}", e.line(), e.column()))
        })?;
        let field = match &raw.field {
            RawField::Prime(p) => FieldSpec::prime(*p).map_err(|e| usage(path, e))?,
            RawField::Name(s) if s == "Q" => FieldSpec::Rationals,
            RawField::Name(s) => {
                let p: u32 = s
                    .parse()
                    .map_err(|_| usage(path, format!("field must be \"Q\" or a prime, got {s:?}")))?;
                FieldSpec::prime(p).map_err(|e| usage(path, e))?
            }
        };
        let d = bd(raw.d[0], raw.d[1]);
        if d.a1 < 0 || d.a2 < 0 {
            return Err(usage(path, format!("negative bidegree {d}")));
        }
        if raw.polys.len() != 3 {
            return Err(usage(path, format!("expected 3 polys, got {}", raw.polys.len())));
        }
        Ok(SystemFile {
            field,
            d,
            raw,
            path: path.to_string(),
        })
    }

    pub fn system<F: Field>(&self) -> Result<SystemF<F>, CliError> {
        let mut f = Vec::with_capacity(3);
        for (i, poly) in self.raw.polys.iter().enumerate() {
            let mut terms = Vec::with_capacity(poly.len());
            for (j, RawTerm(c, es, et, eu, ev)) in poly.iter().enumerate() {
                let at = |msg: String| usage(&self.path, format!("polys[{i}][{j}]: {msg}"));
                if (es + et) as i64 != self.d.a1 || (eu + ev) as i64 != self.d.a2 {
                    return Err(at(format!(
                        "exponents ({es},{et};{eu},{ev}) are not of bidegree {}",
                        self.d
                    )));
                }
                let coef = match c {
                    RawCoef::Int(k) => F::from_i64(*k),
                    RawCoef::Text(s) => F::parse_scalar(s).map_err(|e| at(e.to_string()))?,
                };
                terms.push((coef, [*es, *et, *eu, *ev]));
            }
            let p = BiPoly::from_terms(self.d, &terms).map_err(|e| usage(&self.path, format!("polys[{i}]: {e}")))?;
            f.push(p);
        }
        SystemF::from_vec(f).map_err(|e| usage(&self.path, e))
    }
}
