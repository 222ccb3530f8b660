//! PAMap JSON:
//!
//! ```json
//! {"ambient": 1,
//!  "domain": [{"carrier": [], "holes": []}],
//!  "pieces": [{"carrier": [[1, 0]], "holes": [], "matrix": [[1]], "offset": [1]},
//!             {"carrier": [], "holes": [[[1, 0]]], "matrix": [[1]], "offset": [0]}]}
//! ```
//!
//! A coset is a list of rows `[a_1, .., a_n, b]` meaning `a.x = b`; `[]` is
//! the whole space. Rationals are integers or `"p/q"` strings. `domain` is
//! optional and defaults to the union of the piece carriers minus holes.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::PAMap;
use crate::affine::AffineMap;
use crate::definable::{AffineCoset, Block, CalcError, DefinableSet};
use crate::rational::{fmt_rat, Rat};

fn rat_to_json(x: &Rat) -> Value {
    match (x.is_integer(), i64::try_from(x.numer())) {
        (true, Ok(k)) => json!(k),
        _ => json!(fmt_rat(x)),
    }
}

fn rat_from_json(v: &Value) -> Result<Rat, CalcError> {
    let bad = || CalcError::Shape(format!("not a rational: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(|k| Rat::from_integer(k.into())).ok_or_else(bad),
        Value::String(s) => {
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        _ => Err(bad()),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CalcError> {
    v.as_array().ok_or_else(|| CalcError::Shape(format!("{what} must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CalcError> {
    v.get(key).ok_or_else(|| CalcError::Shape(format!("missing `{key}`")))
}

fn vec_from_json(v: &Value, what: &str) -> Result<Vec<Rat>, CalcError> {
    array(v, what)?.iter().map(rat_from_json).collect()
}

fn matrix_from_json(v: &Value, what: &str) -> Result<Vec<Vec<Rat>>, CalcError> {
    array(v, what)?.iter().map(|r| vec_from_json(r, what)).collect()
}

fn coset_to_json(c: &AffineCoset) -> Value {
    if c.is_empty() {
        let mut row = vec![json!(0); c.ambient()];
        row.push(json!(1));
        return json!([row]);
    }
    Value::Array(c.rows().iter().map(|r| Value::Array(r.iter().map(rat_to_json).collect())).collect())
}

fn coset_from_json(n: usize, v: &Value) -> Result<AffineCoset, CalcError> {
    AffineCoset::from_rows(n, matrix_from_json(v, "coset")?)
}

fn block_to_json(b: &Block) -> Value {
    json!({
        "carrier": coset_to_json(b.carrier()),
        "holes": b.holes().iter().map(coset_to_json).collect::<Vec<_>>(),
    })
}

fn block_from_json(n: usize, v: &Value) -> Result<Block, CalcError> {
    let carrier = coset_from_json(n, field(v, "carrier")?)?;
    let holes = match v.get("holes") {
        Some(h) => array(h, "holes")?.iter().map(|c| coset_from_json(n, c)).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    Block::new(carrier, holes)
}

/// `{"matrix": [[..]], "offset": [..]}`.
pub fn affine_to_json(a: &AffineMap) -> Value {
    json!({
        "matrix": a.matrix().iter().map(|r| Value::Array(r.iter().map(rat_to_json).collect())).collect::<Vec<_>>(),
        "offset": a.offset().iter().map(rat_to_json).collect::<Vec<_>>(),
    })
}

pub fn pamap_to_json(f: &PAMap) -> Value {
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|(b, a)| {
            let mut v = block_to_json(b);
            let m = affine_to_json(a);
            v["matrix"] = m["matrix"].clone();
            v["offset"] = m["offset"].clone();
            v
        })
        .collect();
    json!({
        "ambient": f.ambient(),
        "domain": f.domain().blocks().iter().map(block_to_json).collect::<Vec<_>>(),
        "pieces": pieces,
    })
}

/// Reads a map without validating it; see [`PAMap::validate`].
pub fn pamap_from_json(v: &Value) -> Result<PAMap, CalcError> {
    let n = field(v, "ambient")?.as_u64().ok_or_else(|| CalcError::Shape("`ambient` must be a count".into()))? as usize;
    let domain = match v.get("domain") {
        Some(d) => {
            let mut set = DefinableSet::empty(n);
            for b in array(d, "domain")? {
                set = set.union(&DefinableSet::from_block(block_from_json(n, b)?))?;
            }
            Some(set)
        }
        None => None,
    };
    let mut pieces = Vec::new();
    for p in array(field(v, "pieces")?, "pieces")? {
        let block = block_from_json(n, p)?;
        let matrix = match p.get("matrix") {
            Some(m) => matrix_from_json(m, "matrix")?,
            None => AffineMap::identity(n).matrix().to_vec(),
        };
        let offset = match p.get("offset") {
            Some(o) => vec_from_json(o, "offset")?,
            None => vec![Rat::from_integer(0.into()); n],
        };
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) || offset.len() != n {
            return Err(CalcError::Shape(format!("piece map must be {n}x{n} with an offset of length {n}")));
        }
        pieces.push((block, AffineMap::new(matrix, offset)?));
    }
    PAMap::new(n, domain, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=2 {
            for _ in 0..5 {
                let f = super::super::random_pamap(&mut rng, n);
                let g = pamap_from_json(&pamap_to_json(&f)).unwrap();
                assert_eq!(g.pieces(), f.pieces());
                assert!(g.domain().same_points(f.domain()).unwrap());
            }
        }
    }

    #[test]
    fn documented_example() {
        let text = r#"{"ambient": 1,
            "pieces": [{"carrier": [[1, 0]], "holes": [], "matrix": [[1]], "offset": [1]},
                       {"carrier": [[1, 1]], "holes": [], "matrix": [[1]], "offset": ["-1"]},
                       {"carrier": [], "holes": [[[1, 0]], [[1, 1]]], "matrix": [[1]], "offset": [0]}]}"#;
        let f = pamap_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert!(f.validate().passed);
        assert_eq!(f.dim_aut(), Some(0));
        assert!(rat_from_json(&json!("1/0")).is_err());
        assert_eq!(rat_from_json(&json!("-3/6")).unwrap(), Rat::new((-1).into(), 2.into()));
    }
}
