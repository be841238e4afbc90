//! The worked examples behind `ringlab reproduce`.

use serde_json::{json, Value};

use ringlab_core::constructions::{cyclotomic_sl_construction, pad_construction};
use ringlab_core::poly::{cyclotomic, factor};
use ringlab_core::{FiniteRing, RingError};

use crate::checks::units_and_embeddings;
use crate::dsl::{parse_ring, DslError};

pub const EXAMPLES: [&str; 3] = ["7.4", "7.5", "7.6"];

/// Text lines for the terminal plus the same data as JSON. `ok` is false
/// when the computed data contradicts the expected outcome.
#[derive(Debug, Clone)]
pub struct Reproduction {
    pub lines: Vec<String>,
    pub json: Value,
    pub ok: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ReproduceError {
    #[error("unknown example '{0}'; expected one of 7.4, 7.5, 7.6")]
    UnknownExample(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Dsl(#[from] DslError),
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

pub fn units_example() -> Result<Reproduction, ReproduceError> {
    let rep = units_and_embeddings()?;
    let mut lines = vec![
        format!("S = {}", rep.ambient),
        format!("U(S) = {}", set(&rep.ambient_units)),
        format!("R = {}", rep.sub),
        format!("U(R) = {}", set(&rep.sub_units)),
        format!("injective SL morphisms R -> S: {}", rep.embeddings.len()),
    ];
    lines.extend(rep.embeddings.iter().map(|w| format!("  y -> {w}")));
    let ok = rep.embeddings.len() == 2 && rep.ambient_units.len() == 3 && rep.sub_units.len() == 3;
    Ok(Reproduction {
        lines,
        json: serde_json::to_value(&rep).unwrap(),
        ok,
    })
}

pub fn cyclotomic_example(p: u64) -> Result<Reproduction, ReproduceError> {
    match cyclotomic_sl_construction(p as usize) {
        Ok(c) => {
            let r = &c.report;
            let lines = vec![
                format!("p = {p}"),
                format!("R = {} ({} elements)", c.sub.describe(), c.sub.size()),
                format!("S = {} ({} elements)", c.ambient.describe(), c.ambient.size()),
                format!("y -> {}", c.ambient.format(c.image)),
                format!("injective: {}", c.morphism.is_injective()),
                format!("|U(R)| = {}, |U(S)| = {}", r.sub_units, r.ambient_units),
                format!("SL: {}", r.sl),
                format!("local: {}", r.local),
            ];
            let json = json!({
                "p": p,
                "sub": c.sub.describe(),
                "ambient": c.ambient.describe(),
                "image": c.ambient.format(c.image),
                "injective": c.morphism.is_injective(),
                "report": serde_json::to_value(r).unwrap(),
            });
            Ok(Reproduction {
                lines,
                json,
                ok: r.sl && c.morphism.is_injective(),
            })
        }
        Err(RingError::NotPrimitive(_)) => {
            let f2 = FiniteRing::zmod(2)?;
            let f = cyclotomic(&f2, p as usize);
            let parts: Vec<String> = factor(&f2, &f)?.iter().map(|g| g.format(&f2, "X")).collect();
            let product: String = parts.iter().map(|g| format!("({g})")).collect();
            let lines = vec![
                format!("p = {p}: 2 is not a primitive root"),
                format!("{} is reducible over Z/2", f.format(&f2, "X")),
                format!("{} = {product}", f.format(&f2, "X")),
            ];
            Ok(Reproduction {
                lines,
                json: json!({ "p": p, "reducible": true, "factors": parts }),
                ok: parts.len() > 1,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn pad_example(ring: &str, n: usize, m: usize) -> Result<Reproduction, ReproduceError> {
    let r = parse_ring(ring, ringlab_core::DEFAULT_SIZE_CAP)?;
    let pad = pad_construction(&r, n, m)?;
    let rep = &pad.report;
    let lines = vec![
        format!("T = {}", pad.sub.describe()),
        format!("S = {}", pad.ambient.describe()),
        format!("injective: {}", pad.morphism.is_injective()),
        format!("|U(T)| = {}, |U(S)| = {}", rep.sub_units, rep.ambient_units),
        format!("SL: {}", rep.sl),
    ];
    let json = json!({
        "sub": pad.sub.describe(),
        "ambient": pad.ambient.describe(),
        "injective": pad.morphism.is_injective(),
        "report": serde_json::to_value(rep).unwrap(),
    });
    Ok(Reproduction {
        lines,
        json,
        ok: rep.sl && pad.morphism.is_injective(),
    })
}

pub fn reproduce(example: &str, p: u64, ring: &str, n: usize, m: usize) -> Result<Reproduction, ReproduceError> {
    match example {
        "7.4" => cyclotomic_example(p),
        "7.5" => units_example(),
        "7.6" => pad_example(ring, n, m),
        other => Err(ReproduceError::UnknownExample(other.to_string())),
    }
}
