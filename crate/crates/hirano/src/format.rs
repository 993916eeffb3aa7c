//! JSON file formats and report rendering.
//!
//! Matrices travel as `{"rows": [["p/q", ...], ...]}` with every entry a
//! rational string — never a float — so render/parse round trips are
//! bit-exact. Block files carry the keys the theorem's arity needs
//! (`P`/`Q` or `A`/`B` for pairs, `A`/`B`/`C` for triples, all four
//! otherwise); each block may be either a bare row array or a nested
//! `{"rows": ...}` object.

use serde_json::{json, Map, Value};

use crate::blockthm::{
    BlockInstance, ConclusionCert, GMatrix, Hypothesis, HypothesisKind, Instance, TheoremId,
    TheoremReport, Verdict, WitnessSplit,
};
use crate::error::{Error, Result};
use crate::gendrazin::{HiranoCert, StrongDrazinCert};
use crate::genfuzz::{Counterexample, ProbeResult, SweepSummary};
use crate::ratmat::{parse_rational, render_rational, Matrix, Rational};

// ---------------------------------------------------------------------------
// matrices

pub fn matrix_rows(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            Value::Array(
                (0..m.cols())
                    .map(|c| Value::String(render_rational(m.at(r, c))))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!({ "rows": matrix_rows(m) })
}

pub fn render_matrix_file(m: &Matrix) -> String {
    serde_json::to_string_pretty(&matrix_to_json(m)).expect("serialization cannot fail")
}

fn entry_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => {
            let Some(i) = n.as_i64() else {
                return Err(Error::Parse(format!(
                    "numeric entry {n} is not an integer; floats are not accepted"
                )));
            };
            Ok(crate::ratmat::rat_int(i))
        }
        other => Err(Error::Parse(format!("matrix entry must be a rational string, got {other}"))),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows_val = match v {
        Value::Object(map) => map
            .get("rows")
            .ok_or_else(|| Error::Parse("matrix object lacks a \"rows\" field".into()))?,
        Value::Array(_) => v,
        other => return Err(Error::Parse(format!("expected a matrix, got {other}"))),
    };
    let Value::Array(rows) = rows_val else {
        return Err(Error::Parse("\"rows\" must be an array of arrays".into()));
    };
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    let mut entries = Vec::new();
    let mut width: Option<usize> = None;
    for row in rows {
        let Value::Array(cells) = row else {
            return Err(Error::Parse("each matrix row must be an array".into()));
        };
        match width {
            None => width = Some(cells.len()),
            Some(w) if w != cells.len() => {
                return Err(Error::Matrix(crate::ratmat::MatrixError::Dimension(format!(
                    "ragged rows: expected width {w}, found {}",
                    cells.len()
                ))));
            }
            _ => {}
        }
        for cell in cells {
            entries.push(entry_from_json(cell)?);
        }
    }
    Ok(Matrix::new(rows.len(), width.unwrap_or(0), entries)?)
}

pub fn parse_matrix_file(text: &str) -> Result<Matrix> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    matrix_from_json(&v)
}

// ---------------------------------------------------------------------------
// block files

fn get_block(map: &Map<String, Value>, keys: &[&str]) -> Result<Matrix> {
    for k in keys {
        if let Some(v) = map.get(*k) {
            return matrix_from_json(v);
        }
    }
    Err(Error::Parse(format!("block file lacks a {:?} entry", keys[0])))
}

pub fn instance_from_json(id: TheoremId, v: &Value) -> Result<Instance> {
    let Value::Object(map) = v else {
        return Err(Error::Parse("block file must be a JSON object".into()));
    };
    Ok(match id.arity() {
        2 => Instance::Two(get_block(map, &["A", "P"])?, get_block(map, &["B", "Q"])?),
        3 => Instance::Three(
            get_block(map, &["A"])?,
            get_block(map, &["B"])?,
            get_block(map, &["C"])?,
        ),
        _ => Instance::Four(BlockInstance::new(
            get_block(map, &["A"])?,
            get_block(map, &["B"])?,
            get_block(map, &["C"])?,
            get_block(map, &["D"])?,
        )?),
    })
}

pub fn parse_block_file(id: TheoremId, text: &str) -> Result<Instance> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    instance_from_json(id, &v)
}

pub fn instance_to_json(inst: &Instance) -> Value {
    let mut map = Map::new();
    let names: &[&str] = match inst.arity() {
        2 => &["A", "B"],
        3 => &["A", "B", "C"],
        _ => &["A", "B", "C", "D"],
    };
    for (name, m) in names.iter().zip(inst.matrices()) {
        map.insert(name.to_string(), matrix_rows(m));
    }
    Value::Object(map)
}

/// Counterexample artifact: the blocks plus enough metadata to replay the
/// exact generator draw.
pub fn counterexample_to_json(id: TheoremId, seed: u64, ce: &Counterexample) -> Value {
    let mut v = instance_to_json(&ce.instance);
    if let Value::Object(map) = &mut v {
        map.insert("theorem".into(), json!(id.name()));
        map.insert("seed".into(), json!(seed));
        map.insert("trial".into(), json!(ce.trial));
        map.insert("verdict".into(), json!(verdict_str(ce.report.verdict)));
    }
    v
}

// ---------------------------------------------------------------------------
// report rendering

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "Verified",
        Verdict::HypothesesFail => "HypothesesFail",
        Verdict::ConclusionFail => "ConclusionFail",
    }
}

fn hypothesis_to_json(h: &Hypothesis) -> Value {
    json!({
        "name": h.name,
        "formula": h.formula,
        "kind": match h.kind {
            HypothesisKind::Annihilation => "annihilation",
            HypothesisKind::Nilpotency => "nilpotency",
        },
        "holds": h.holds,
        "residual": matrix_rows(&h.residual),
    })
}

fn hirano_cert_to_json(c: &HiranoCert) -> Value {
    json!({
        "kind": "hirano",
        "inverse": matrix_rows(&c.z),
        "tripotent": matrix_rows(&c.tripotent),
        "nilpart": matrix_rows(&c.nilpart),
        "nil_exponent": c.nil_exponent,
    })
}

fn strong_cert_to_json(c: &StrongDrazinCert) -> Value {
    json!({
        "kind": "strongly-drazin",
        "inverse": matrix_rows(&c.z),
        "idempotent": matrix_rows(&c.idem),
        "nilpart": matrix_rows(&c.nilpart),
        "nil_exponent": c.nil_exponent,
    })
}

fn witness_to_json(w: &WitnessSplit) -> Value {
    json!({
        "target": matrix_rows(&w.target),
        "summands": w.summands.iter().map(matrix_rows).collect::<Vec<_>>(),
        "side_conditions": w
            .side_conditions
            .iter()
            .map(|s| json!({
                "name": s.name,
                "holds": s.holds,
                "residual": matrix_rows(&s.residual),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn report_to_json(r: &TheoremReport) -> Value {
    json!({
        "theorem": r.id.name(),
        "verdict": verdict_str(r.verdict),
        "hypotheses": r
            .hypothesis_report
            .hypotheses
            .iter()
            .map(hypothesis_to_json)
            .collect::<Vec<_>>(),
        "target": matrix_rows(&r.target),
        "conclusion_residual": matrix_rows(&r.conclusion_residual),
        "conclusion": r.conclusion.as_ref().map(|c| match c {
            ConclusionCert::Hirano(h) => hirano_cert_to_json(h),
            ConclusionCert::StrongDrazin(s) => strong_cert_to_json(s),
        }),
        "witness": r.witness.as_ref().map(witness_to_json),
    })
}

pub fn g_matrix_to_json(g: &GMatrix) -> Value {
    json!({
        "G": matrix_rows(&g.g),
        "Q": matrix_rows(&g.q),
        "Q_hirano": matrix_rows(&g.q_hirano),
        "Q_pi": matrix_rows(&g.q_pi),
    })
}

pub fn sweep_to_json(s: &SweepSummary, seed: u64) -> Value {
    json!({
        "theorem": s.id.name(),
        "seed": seed,
        "trials": s.trials_run,
        "verified": s.verified,
        "hypotheses_fail": s.hypotheses_fail,
        "conclusion_fail": s.conclusion_fail,
        "generation_failures": s.generation_failures,
    })
}

pub fn probe_to_json(p: &ProbeResult, seed: u64) -> Value {
    json!({
        "theorem": p.id.name(),
        "seed": seed,
        "dropped": p.dropped_hypothesis,
        "trials": p.trials_run,
        "violations_achieved": p.violations_achieved,
        "counterexample_found": p.counterexample.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat;

    #[test]
    fn round_trip_bit_exact() {
        let mut m = Matrix::from_i64(&[&[1, -2], &[0, 7]]);
        m.set(0, 1, rat(-22, 7));
        m.set(1, 0, rat(1, 3));
        let text = render_matrix_file(&m);
        let back = parse_matrix_file(&text).unwrap();
        assert_eq!(back, m);
        // and the rendered text is stable under re-render
        assert_eq!(render_matrix_file(&back), text);
    }

    #[test]
    fn accepts_integer_entries_and_bare_arrays() {
        let m = parse_matrix_file(r#"{"rows": [["1", 2], ["-3", "1/2"]]}"#).unwrap();
        assert_eq!(*m.at(0, 1), rat(2, 1));
        assert_eq!(*m.at(1, 1), rat(1, 2));
        let inst = parse_block_file(
            TheoremId::L2_1,
            r#"{"P": [["1","0"],["0","0"]], "Q": [["0","0"],["0","1"]]}"#,
        )
        .unwrap();
        assert_eq!(inst.arity(), 2);
    }

    #[test]
    fn rejects_floats_ragged_and_bad_strings() {
        assert!(matches!(
            parse_matrix_file(r#"{"rows": [["1.5"]]}"#),
            Err(Error::Matrix(crate::ratmat::MatrixError::BadRational(_)))
        ));
        assert!(matches!(
            parse_matrix_file(r#"{"rows": [[0.5]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_matrix_file(r#"{"rows": [["1","2"],["3"]]}"#),
            Err(Error::Matrix(crate::ratmat::MatrixError::Dimension(_)))
        ));
        assert!(matches!(parse_matrix_file("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn block_file_missing_key() {
        assert!(matches!(
            parse_block_file(TheoremId::T2_7, r#"{"A": [["0"]]}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn instance_round_trip() {
        let a = Matrix::from_i64(&[&[1, 0], &[2, 1]]);
        let b = Matrix::from_i64(&[&[1, -1], &[-1, 1]]);
        let c = Matrix::from_i64(&[&[0, 1], &[0, 1]]);
        let d = Matrix::from_i64(&[&[1, 0], &[1, 0]]);
        let inst =
            Instance::Four(BlockInstance::new(a, b, c, d).unwrap());
        let v = instance_to_json(&inst);
        let back = instance_from_json(TheoremId::C3_5, &v).unwrap();
        assert_eq!(back, inst);
    }
}
