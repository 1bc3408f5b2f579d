//! The query grammar, on input vertex ids.

use slim_core::graph::Vertex;
use slim_core::query::{QueryEngine, BACKWARD, FORWARD};

use crate::{Fail, Res};

fn arg<T: std::str::FromStr>(words: &[&str], i: usize, what: &str) -> Res<T> {
    let w = words.get(i).ok_or_else(|| Fail(format!("missing {what}")))?;
    w.parse().map_err(|_| Fail(format!("bad {what} '{w}'")))
}

fn label(q: &QueryEngine<'_>, id: Vertex) -> Res<u32> {
    q.label_of(id).map_err(|_| Fail(format!("unknown vertex {id}")))
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Answers one query line.
pub fn answer(q: &QueryEngine<'_>, line: &str) -> Res<String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let (&op, _) = words.split_first().ok_or_else(|| Fail("empty query".into()))?;
    let arity = match op {
        "deg" | "color" | "nbrs" => 2,
        "adj" => 3,
        "near" => 4,
        _ => return Err(Fail(format!("unknown query '{op}'"))),
    };
    if words.len() != arity {
        return Err(Fail(format!("'{op}' takes {} arguments", arity - 1)));
    }
    let u = label(q, arg(&words, 1, "vertex")?)?;
    Ok(match op {
        "deg" => {
            let (d, o, i) = q.degree(u)?;
            if q.is_symmetric() {
                d.to_string()
            } else {
                format!("{d} {o} {i}")
            }
        }
        "color" => q.color(u)?.to_string(),
        "adj" => {
            let v = label(q, arg(&words, 2, "vertex")?)?;
            let (f, b) = q.adjacent(u, v)?;
            if q.is_symmetric() {
                bit(f).to_string()
            } else {
                format!("{} {}", bit(f), bit(b))
            }
        }
        "nbrs" => {
            let mut ids: Vec<(Vertex, u8)> =
                q.neighbors(u)?.into_iter().map(|(l, d)| q.id_of(l).map(|v| (v, d))).collect::<Result<_, _>>()?;
            ids.sort_unstable();
            let words: Vec<String> = ids
                .into_iter()
                .map(|(v, d)| match (q.is_symmetric(), d & FORWARD != 0, d & BACKWARD != 0) {
                    (true, ..) => v.to_string(),
                    (false, true, true) => format!("{v}:both"),
                    (false, true, false) => format!("{v}:out"),
                    (false, false, _) => format!("{v}:in"),
                })
                .collect();
            words.join(" ")
        }
        _ => {
            let v = label(q, arg(&words, 2, "vertex")?)?;
            let t: u32 = arg(&words, 3, "radius")?;
            match q.near(u, v, t)? {
                None => "none".into(),
                Some(p) => {
                    let ids: Vec<String> = p.into_iter().map(|l| q.id_of(l).map(|v| v.to_string())).collect::<Result<_, _>>()?;
                    ids.join(" ")
                }
            }
        }
    })
}
