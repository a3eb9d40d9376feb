use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use super::run::Trajectory;
use super::CircuitProgram;
use crate::tableau::StabilizerTableau;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JsonOptions {
    pub emit_tableau: bool,
}

/// `{n, d, D, phase_row, weyl_block, xi?}` with the Weyl block row-major.
pub fn tableau_json(t: &StabilizerTableau) -> Value {
    let block = t.weyl_block();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(t.n()));
    obj.insert("d".into(), json!(t.ring().d()));
    obj.insert("D".into(), json!(t.ring().modulus()));
    obj.insert("phase_row".into(), json!(t.phases()));
    obj.insert("weyl_block".into(), json!(block.to_rows()));
    if let Some(xi) = t.xi() {
        obj.insert("xi".into(), json!(xi));
    }
    Value::Object(obj)
}

fn trajectory_json(tr: &Trajectory, options: JsonOptions) -> Value {
    let outcomes: Map<String, Value> = tr
        .outcomes
        .iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    let cosets: Map<String, Value> = tr
        .cosets
        .iter()
        .map(|(k, c)| (k.clone(), json!({"kappa": c.kappa(), "eta": c.eta()})))
        .collect();
    let p = &tr.probability;
    let float = p.numer().to_f64().unwrap_or(f64::NAN) / p.denom().to_f64().unwrap_or(f64::NAN);
    let mut obj = Map::new();
    obj.insert("outcomes".into(), Value::Object(outcomes));
    obj.insert(
        "probability".into(),
        json!({"num": p.numer().to_string(), "den": p.denom().to_string(), "exact": format!("{}/{}", p.numer(), p.denom()), "float": float}),
    );
    obj.insert("cosets".into(), Value::Object(cosets));
    if let Some(shot) = tr.shot {
        obj.insert("shot".into(), json!(shot));
    }
    if options.emit_tableau {
        obj.insert("tableau".into(), tableau_json(&tr.tableau));
    }
    if let Some(x) = tr.oracle_overlap {
        obj.insert("oracle_overlap".into(), json!(x));
    }
    Value::Object(obj)
}

/// Pretty-printed JSON with sorted keys. `dim` and `qudits` appear only
/// when a program is given.
pub fn emit_json(
    program: Option<&CircuitProgram>,
    results: &[Trajectory],
    options: JsonOptions,
) -> String {
    let mut root = Map::new();
    if let Some(p) = program {
        root.insert("dim".into(), json!(p.d()));
        root.insert("qudits".into(), json!(p.n()));
    }
    root.insert(
        "trajectories".into(),
        Value::Array(
            results
                .iter()
                .map(|t| trajectory_json(t, options))
                .collect(),
        ),
    );
    serde_json::to_string_pretty(&Value::Object(root)).expect("values serialize")
}
