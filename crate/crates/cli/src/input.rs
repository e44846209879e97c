//! Reading fields, maps, forms and points from the command line.

use std::path::Path;

use projdyn::dynamics::{Endomorphism, HypersurfaceForm, MapSpec, ProjectivePoint};
use projdyn::mpoly::{parse_poly, parse_poly_list};
use projdyn::{Error, FieldSpec, Result, Scalar};

/// A map as given: an inline list, an inline JSON object, or a file holding either.
#[derive(Debug, Clone)]
pub enum MapSource {
    List(String),
    Spec(MapSpec),
}

impl MapSource {
    pub fn read(arg: &str) -> Result<Self> {
        let text = if Path::new(arg).is_file() {
            std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("cannot read {arg}: {e}")))?
        } else {
            arg.to_string()
        };
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let spec: MapSpec =
                serde_json::from_str(trimmed).map_err(|e| Error::InvalidInput(format!("bad map JSON: {e}")))?;
            Ok(MapSource::Spec(spec))
        } else {
            Ok(MapSource::List(trimmed.to_string()))
        }
    }

    pub fn field(&self) -> Option<FieldSpec> {
        match self {
            MapSource::List(_) => None,
            MapSource::Spec(s) => Some(s.field),
        }
    }

    pub fn forms<K: Scalar>(&self, field: &K::Field) -> Result<Vec<projdyn::Polynomial<K>>> {
        match self {
            MapSource::List(s) => parse_poly_list(s, field),
            MapSource::Spec(spec) => spec.to_endomorphism(field).map(|f| f.forms().to_vec()),
        }
    }

    pub fn endomorphism<K: Scalar>(&self, field: &K::Field) -> Result<Endomorphism<K>> {
        Endomorphism::new(self.forms(field)?)
    }
}

/// `--field` if given, else the field recorded in a JSON map, else QQ.
pub fn resolve_field(flag: Option<&str>, map: Option<&MapSource>) -> Result<FieldSpec> {
    let from_map = map.and_then(|m| m.field());
    match (flag, from_map) {
        (Some(f), Some(m)) => {
            let f: FieldSpec = f.parse()?;
            if f != m {
                return Err(Error::InvalidInput(format!("--field {f} conflicts with the map's field {m}")));
            }
            Ok(f)
        }
        (Some(f), None) => f.parse(),
        (None, Some(m)) => Ok(m),
        (None, None) => Ok(FieldSpec::Rationals),
    }
}

pub fn form<K: Scalar>(src: &str, nvars: usize, field: &K::Field) -> Result<HypersurfaceForm<K>> {
    HypersurfaceForm::new(parse_poly(src, nvars, field)?)
}

/// Coordinates separated by `:` or `,`, optionally in parentheses.
pub fn point<K: Scalar>(src: &str, dim: usize, field: &K::Field) -> Result<ProjectivePoint<K>> {
    let inner = src.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = inner
        .split([':', ','])
        .map(|t| Ok(parse_poly::<K>(t, 0, field)?.constant_value().unwrap_or_else(|| K::zero_in(field))))
        .collect::<Result<Vec<K>>>()?;
    if coords.len() != dim + 1 {
        return Err(Error::Arity { expected: dim + 1, got: coords.len() });
    }
    ProjectivePoint::new(coords)
}
