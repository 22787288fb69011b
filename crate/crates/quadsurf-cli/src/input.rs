//! Input documents: one ring, a list of affine generators, options.
//!
//! ```json
//! {
//!   "ring": {"d": 1, "f": 1},
//!   "generators": [
//!     {"linear": [[[0, 1], 0], [0, [0, 1]]], "translation": ["1/2", 0, 0, 0]}
//!   ],
//!   "options": {"cap": 10000}
//! }
//! ```
//!
//! A matrix entry is an integer, a rational string, or a pair `[a, b]`
//! meaning a + bθ.

use std::fmt;

use quadsurf::quad_order::{make_ring, parse_rational};
use quadsurf::torus::{AffineAut, TorusPoint};
use quadsurf::{Error, Mat2, QuadElem, Rational, RingSpec};
use serde_json::Value;

/// A parse failure with the JSON path where it happened.
#[derive(Debug)]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

fn fail(path: &str, message: impl Into<String>) -> ParseError {
    ParseError { path: path.to_string(), message: message.into() }
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(fail(path, message))
}

/// Either malformed input or a well-formed input the library rejects.
#[derive(Debug)]
pub enum InputError {
    Parse(ParseError),
    Domain(Error),
}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError::Parse(e)
    }
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub ring: RingSpec,
    pub generators: Vec<AffineAut>,
    pub cap: Option<usize>,
}

fn parse_ring(v: &Value, path: &str) -> Result<RingSpec, ParseError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return err(path, "expected an object {\"d\": .., \"f\": ..}"),
    };
    let field = |k: &str, default: Option<u64>| -> Result<u64, ParseError> {
        match obj.get(k) {
            Some(x) => x.as_u64().map_or_else(|| err(&format!("{}.{}", path, k), "expected a non-negative integer"), Ok),
            None => default.map_or_else(|| err(path, format!("missing field \"{}\"", k)), Ok),
        }
    };
    let d = field("d", None)?;
    let f = field("f", Some(1))?;
    make_ring(d, f).or_else(|e| err(path, e.to_string()))
}

fn parse_rat(v: &Value, path: &str) -> Result<Rational, ParseError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(quadsurf::quad_order::rat(i)),
            None => err(path, "expected an integer or a rational string"),
        },
        Value::String(s) => parse_rational(s).map_or_else(|| err(path, format!("bad rational {:?}", s)), Ok),
        _ => err(path, "expected an integer or a rational string"),
    }
}

pub fn parse_elem(ring: RingSpec, v: &Value, path: &str) -> Result<QuadElem, ParseError> {
    let (a, b) = match v {
        Value::Array(xs) if xs.len() == 2 => {
            (parse_rat(&xs[0], &format!("{}[0]", path))?, parse_rat(&xs[1], &format!("{}[1]", path))?)
        }
        Value::Array(_) => return err(path, "a ring element pair must have two entries"),
        _ => (parse_rat(v, path)?, quadsurf::quad_order::rat(0)),
    };
    let x = QuadElem::new(ring, a, b).or_else(|e| err(path, e.to_string()))?;
    if !x.is_integral() {
        return err(path, format!("{} is not in R", x));
    }
    Ok(x)
}

fn parse_matrix(ring: RingSpec, v: &Value, path: &str) -> Result<Mat2, ParseError> {
    let rows = match v.as_array() {
        Some(r) if r.len() == 2 => r,
        _ => return err(path, "expected a 2×2 array"),
    };
    let mut e = Vec::with_capacity(4);
    for (i, row) in rows.iter().enumerate() {
        let row = match row.as_array() {
            Some(r) if r.len() == 2 => r,
            _ => return err(&format!("{}[{}]", path, i), "expected a row of two entries"),
        };
        for (j, x) in row.iter().enumerate() {
            e.push(parse_elem(ring, x, &format!("{}[{}][{}]", path, i, j))?);
        }
    }
    let [a, b, c, d]: [QuadElem; 4] = e.try_into().expect("four entries");
    Mat2::new(a, b, c, d).or_else(|x| err(path, x.to_string()))
}

fn parse_translation(v: &Value, path: &str) -> Result<TorusPoint, ParseError> {
    let xs = match v.as_array() {
        Some(x) if x.len() == 4 => x,
        _ => return err(path, "expected four rational coordinates"),
    };
    let mut c = Vec::with_capacity(4);
    for (i, x) in xs.iter().enumerate() {
        c.push(parse_rat(x, &format!("{}[{}]", path, i))?);
    }
    Ok(TorusPoint::new(c.try_into().expect("four coordinates")))
}

pub fn parse_document(text: &str) -> Result<InputDocument, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let obj = match v.as_object() {
        Some(o) => o,
        None => return Err(fail("", "expected a JSON object").into()),
    };
    let ring = match obj.get("ring") {
        Some(r) => parse_ring(r, "ring")?,
        None => return Err(fail("", "missing field \"ring\"").into()),
    };
    let gens = match obj.get("generators").and_then(Value::as_array) {
        Some(g) => g,
        None => return Err(fail("generators", "expected an array").into()),
    };
    let mut generators = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let path = format!("generators[{}]", i);
        let g = match g.as_object() {
            Some(o) => o,
            None => return Err(fail(&path, "expected an object").into()),
        };
        if let Some(r) = g.get("ring") {
            if parse_ring(r, &format!("{}.ring", path))? != ring {
                return Err(fail(&format!("{}.ring", path), "a document uses a single ring").into());
            }
        }
        let linear = match g.get("linear") {
            Some(l) => parse_matrix(ring, l, &format!("{}.linear", path))?,
            None => Mat2::identity(ring),
        };
        let translation = match g.get("translation") {
            Some(t) => parse_translation(t, &format!("{}.translation", path))?,
            None => TorusPoint::zero(),
        };
        generators.push(AffineAut::new(translation, linear).map_err(InputError::Domain)?);
    }
    let cap = match obj.get("options").and_then(|o| o.get("cap")) {
        None | Some(Value::Null) => None,
        Some(c) => match c.as_u64() {
            Some(c) => Some(c as usize),
            None => return Err(fail("options.cap", "expected a positive integer").into()),
        },
    };
    Ok(InputDocument { ring, generators, cap })
}

/// `b1=a` or `b1=a,b` for a + bθ.
pub fn parse_param(ring: RingSpec, s: &str) -> Result<(String, QuadElem), ParseError> {
    let (k, v) = match s.split_once('=') {
        Some(x) => x,
        None => return err("--param", format!("expected name=value, got {:?}", s)),
    };
    let parts: Vec<&str> = v.split(',').collect();
    let val = match parts.as_slice() {
        [a] => Value::String(a.trim().to_string()),
        [a, b] => Value::Array(vec![Value::String(a.trim().into()), Value::String(b.trim().into())]),
        _ => return err("--param", format!("bad value {:?}", v)),
    };
    Ok((k.trim().to_string(), parse_elem(ring, &val, "--param")?))
}
