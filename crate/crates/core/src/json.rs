//! JSON encodings of matrices, vectors, maps, canonical forms and reports.
//!
//! Floats are written with 17 significant digits so every `f64` round-trips
//! exactly. Parse errors name the offending field as a path such as
//! `unitary.data[3][1]`.

use std::io;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::analysis::{CheckReport, Counterexample, DecompositionResult};
use crate::error::{Error, Result};
use crate::hermitian::Spectrum;
use crate::matrix::ComplexMatrix;
use crate::schmidt::{OperatorNormEstimate, SchmidtDecomposition};
use crate::superop::{CanonicalForm, Flag, PreserverMap, Sign, BASIS_ID};
use crate::tensor::DimProfile;

/// `serde_json` formatter that prints every `f64` as `{:.16e}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RoundTripFormatter;

impl serde_json::ser::Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with round-trip floats and a trailing newline.
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, RoundTripFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing a Value into memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Parses text into a [`Value`], reporting syntax errors against `field`.
pub fn parse(text: &str, field: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::format(field, e.to_string()))
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn real_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn matrix_to_value(a: &ComplexMatrix) -> Value {
    json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "data": a.data().iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
    })
}

pub fn vector_to_value(v: &[Complex64]) -> Value {
    json!({
        "len": v.len(),
        "data": v.iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
    })
}

pub fn profile_to_value(p: &DimProfile) -> Value {
    json!({ "dims": p.dims() })
}

pub fn spectrum_to_value(s: &Spectrum) -> Value {
    json!(s.values())
}

pub fn map_to_value(phi: &PreserverMap) -> Value {
    let d = phi.dim() * phi.dim();
    let rows: Vec<&[f64]> = phi.matrix().chunks(d).collect();
    json!({ "N": phi.dim(), "basis": BASIS_ID, "matrix": rows })
}

pub fn canonical_to_value(c: &CanonicalForm) -> Value {
    json!({
        "sign": c.sign().as_int(),
        "dims": c.profile().dims(),
        "flags": c.flags().iter().map(|f| f.as_str()).collect::<Vec<_>>(),
        "unitary": matrix_to_value(c.unitary()),
    })
}

fn counterexample_to_value(c: &Counterexample) -> Value {
    json!({
        "source": c.source,
        "factors": c.factors.iter().map(matrix_to_value).collect::<Vec<_>>(),
        "input_spectrum": c.input_spectrum,
        "output_spectrum": c.output_spectrum,
        "deviation": real_or_null(c.deviation),
    })
}

/// `mode` is the label the caller ran under (`"spectrum"`, `"radius"` or `"global"`).
pub fn check_report_to_value(r: &CheckReport, mode: &str) -> Value {
    json!({
        "mode": mode,
        "criterion": r.criterion.as_str(),
        "verdict": r.verdict.as_str(),
        "samples": r.samples,
        "worst_spectrum_deviation": real_or_null(r.worst_spectrum_deviation),
        "first_counterexample": r.first_counterexample.as_ref().map(counterexample_to_value),
    })
}

pub fn decomposition_to_value(r: &DecompositionResult) -> Value {
    match r {
        DecompositionResult::Success { form, residual } => json!({
            "outcome": "success",
            "residual": real_or_null(*residual),
            "form": canonical_to_value(form),
        }),
        DecompositionResult::Failure {
            best_residual,
            best_candidate,
        } => json!({
            "outcome": "failure",
            "best_residual": real_or_null(*best_residual),
            "best_candidate": canonical_to_value(best_candidate),
        }),
    }
}

pub fn schmidt_to_value(s: &SchmidtDecomposition, m: usize, n: usize) -> Value {
    json!({
        "m": m,
        "n": n,
        "rank": s.rank,
        "coefficients": s.coefficients,
        "left": matrix_to_value(&s.left_vectors),
        "right": matrix_to_value(&s.right_vectors),
    })
}

pub fn operator_norm_to_value(e: &OperatorNormEstimate, m: usize, n: usize, k: usize) -> Value {
    json!({
        "kind": "operator",
        "m": m,
        "n": n,
        "k": k,
        "value": e.value,
        "iterations": e.history.len(),
        "left": vector_to_value(&e.left),
        "right": vector_to_value(&e.right),
    })
}

pub fn vector_norm_to_value(value: f64, m: usize, n: usize, k: usize) -> Value {
    json!({ "kind": "vector", "m": m, "n": n, "k": k, "value": value })
}

// ---- decoding ----

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::format(display(path), "expected an object"))
}

fn display(path: &str) -> String {
    if path.is_empty() {
        "<root>".to_string()
    } else {
        path.to_string()
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::format(join(path, key), "missing field"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::format(display(path), "expected an array"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::format(display(path), "expected a non-negative integer"))
}

fn f64_of(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::format(display(path), "expected a finite number"))
}

fn complex_list(v: &Value, path: &str, expected: usize) -> Result<Vec<Complex64>> {
    let items = array(v, path)?;
    if items.len() != expected {
        return Err(Error::format(
            display(path),
            format!("expected {expected} entries, found {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let p = format!("{path}[{i}]");
            let pair = array(item, &p)?;
            if pair.len() != 2 {
                return Err(Error::format(p, "expected [re, im]"));
            }
            Ok(Complex64::new(
                f64_of(&pair[0], &format!("{p}[0]"))?,
                f64_of(&pair[1], &format!("{p}[1]"))?,
            ))
        })
        .collect()
}

pub fn matrix_from_value(v: &Value, path: &str) -> Result<ComplexMatrix> {
    let obj = object(v, path)?;
    let rows = usize_of(field(obj, "rows", path)?, &join(path, "rows"))?;
    let cols = usize_of(field(obj, "cols", path)?, &join(path, "cols"))?;
    if rows == 0 || cols == 0 {
        return Err(Error::format(join(path, "rows"), "matrix must be non-empty"));
    }
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::format(join(path, "rows"), "size overflows"))?;
    let data = complex_list(field(obj, "data", path)?, &join(path, "data"), count)?;
    ComplexMatrix::new(rows, cols, data)
}

pub fn vector_from_value(v: &Value, path: &str) -> Result<Vec<Complex64>> {
    let obj = object(v, path)?;
    let len = usize_of(field(obj, "len", path)?, &join(path, "len"))?;
    complex_list(field(obj, "data", path)?, &join(path, "data"), len)
}

pub fn profile_from_value(v: &Value, path: &str) -> Result<DimProfile> {
    let obj = object(v, path)?;
    dims_from_value(field(obj, "dims", path)?, &join(path, "dims"))
}

fn dims_from_value(v: &Value, path: &str) -> Result<DimProfile> {
    let dims = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, d)| usize_of(d, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    DimProfile::new(dims).map_err(|e| Error::format(path, e.to_string()))
}

pub fn map_from_value(v: &Value, path: &str) -> Result<PreserverMap> {
    let obj = object(v, path)?;
    let n = usize_of(field(obj, "N", path)?, &join(path, "N"))?;
    let basis = field(obj, "basis", path)?;
    if basis.as_str() != Some(BASIS_ID) {
        return Err(Error::format(join(path, "basis"), format!("expected \"{BASIS_ID}\"")));
    }
    if n == 0 {
        return Err(Error::format(join(path, "N"), "must be positive"));
    }
    let d = n * n;
    let mpath = join(path, "matrix");
    let rows = array(field(obj, "matrix", path)?, &mpath)?;
    if rows.len() != d {
        return Err(Error::format(mpath, format!("expected {d} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(d * d);
    for (i, row) in rows.iter().enumerate() {
        let rpath = format!("{mpath}[{i}]");
        let row = array(row, &rpath)?;
        if row.len() != d {
            return Err(Error::format(
                rpath,
                format!("expected {d} entries, found {}", row.len()),
            ));
        }
        for (j, x) in row.iter().enumerate() {
            entries.push(f64_of(x, &format!("{rpath}[{j}]"))?);
        }
    }
    PreserverMap::from_matrix(n, entries)
}

pub fn canonical_from_value(v: &Value, path: &str) -> Result<CanonicalForm> {
    let obj = object(v, path)?;
    let sign_path = join(path, "sign");
    let sign = field(obj, "sign", path)?
        .as_i64()
        .and_then(Sign::from_int)
        .ok_or_else(|| Error::format(sign_path, "expected 1 or -1"))?;
    let profile = dims_from_value(field(obj, "dims", path)?, &join(path, "dims"))?;
    let fpath = join(path, "flags");
    let flags = array(field(obj, "flags", path)?, &fpath)?
        .iter()
        .enumerate()
        .map(|(i, f)| {
            f.as_str()
                .and_then(Flag::parse)
                .ok_or_else(|| Error::format(format!("{fpath}[{i}]"), "expected \"id\" or \"t\""))
        })
        .collect::<Result<Vec<_>>>()?;
    let upath = join(path, "unitary");
    let unitary = matrix_from_value(field(obj, "unitary", path)?, &upath)?;
    CanonicalForm::new(sign, unitary, flags, profile).map_err(|e| match e {
        Error::DimensionMismatch(_) | Error::NotUnitary { .. } => Error::format(upath, e.to_string()),
        other => other,
    })
}

/// Either a `PreserverMap` object or a `CanonicalForm` object, told apart
/// by the presence of `"basis"`.
pub enum MapDocument {
    Map(PreserverMap),
    Canonical(CanonicalForm),
}

pub fn map_document_from_value(v: &Value) -> Result<MapDocument> {
    let obj = object(v, "")?;
    if obj.contains_key("basis") {
        map_from_value(v, "").map(MapDocument::Map)
    } else if obj.contains_key("unitary") {
        canonical_from_value(v, "").map(MapDocument::Canonical)
    } else {
        Err(Error::format(
            "basis",
            "missing field (expected a preserver map or a canonical form)",
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ONE;
    use crate::superop::{haar_unitary, transpose_map};

    #[test]
    fn floats_round_trip_exactly() {
        let u = haar_unitary(3, 5);
        let text = to_json_string(&matrix_to_value(&u));
        let back = matrix_from_value(&parse(&text, "<input>").unwrap(), "").unwrap();
        assert_eq!(back, u);
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 1e300, f64::MIN_POSITIVE, 0.0] {
            let s = to_json_string(&json!(x));
            assert_eq!(s.trim().parse::<f64>().unwrap(), x);
            assert_eq!(serde_json::from_str::<f64>(&s).unwrap(), x);
        }
    }

    #[test]
    fn float_format() {
        assert_eq!(
            to_json_string(&json!([1.0, -0.5])),
            "[1.0000000000000000e0,-5.0000000000000000e-1]\n"
        );
        assert_eq!(to_json_string(&json!({"n": 3})), "{\"n\":3}\n");
    }

    #[test]
    fn map_and_form_round_trip() {
        let phi = transpose_map(2).unwrap();
        let text = to_json_string(&map_to_value(&phi));
        match map_document_from_value(&parse(&text, "").unwrap()).unwrap() {
            MapDocument::Map(back) => assert_eq!(back, phi),
            MapDocument::Canonical(_) => panic!("wrong kind"),
        }
        let p = DimProfile::new(vec![2, 3]).unwrap();
        let c = CanonicalForm::random(&p, Sign::Minus, vec![Flag::Transpose, Flag::Identity], 4).unwrap();
        let back = canonical_from_value(&canonical_to_value(&c), "").unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = json!({"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, "x"], [1, 0]]});
        match matrix_from_value(&bad, "") {
            Err(Error::Format { field, .. }) => assert_eq!(field, "data[2][1]"),
            other => panic!("{other:?}"),
        }
        let short = json!({"rows": 2, "cols": 2, "data": [[1, 0]]});
        assert!(matches!(matrix_from_value(&short, "u"), Err(Error::Format { field, .. }) if field == "u.data"));
        let form = json!({"sign": 2, "dims": [2], "flags": ["id"], "unitary": {}});
        assert!(matches!(canonical_from_value(&form, ""), Err(Error::Format { field, .. }) if field == "sign"));
        let form = json!({"sign": 1, "dims": [2], "flags": ["x"], "unitary": {}});
        assert!(matches!(canonical_from_value(&form, ""), Err(Error::Format { field, .. }) if field == "flags[0]"));
        let map = json!({"N": 2, "basis": "other", "matrix": []});
        assert!(matches!(map_from_value(&map, ""), Err(Error::Format { field, .. }) if field == "basis"));
        assert!(matches!(map_document_from_value(&json!({})), Err(Error::Format { .. })));
        assert!(matches!(parse("{", "map.json"), Err(Error::Format { field, .. }) if field == "map.json"));
    }

    #[test]
    fn non_unitary_form_is_a_format_error() {
        let p = DimProfile::new(vec![2]).unwrap();
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = ONE;
        let form = json!({"sign": 1, "dims": p.dims(), "flags": ["id"], "unitary": matrix_to_value(&m)});
        assert!(matches!(canonical_from_value(&form, ""), Err(Error::Format { field, .. }) if field == "unitary"));
    }

    #[test]
    fn vectors_and_profiles() {
        let v = vec![ONE, Complex64::new(0.0, -1.0)];
        assert_eq!(vector_from_value(&vector_to_value(&v), "").unwrap(), v);
        let p = DimProfile::new(vec![2, 2, 3]).unwrap();
        assert_eq!(profile_from_value(&profile_to_value(&p), "").unwrap(), p);
        assert!(profile_from_value(&json!({"dims": [1, 2]}), "").is_err());
    }
}
