use serde_json::{json, Value};
use wittlab_core::brauer::{index_strategy, is_division_tensor, trace_form_tensor};
use wittlab_core::expr::{parse_algebra, parse_expression, parse_form};
use wittlab_core::quadform::{isotropy_witness_search, SearchConfig};
use wittlab_core::{BrauerClass, Error, Expr, FieldTower, QuadForm, Result};

/// Verbs that take one expression over a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Verb {
    Eval,
    Aniso,
    Iw,
    Hyp,
    Sig,
    Torsion,
    Index,
    Division,
    Trace,
    Norm,
}

impl Verb {
    pub fn from_name(name: &str) -> Option<Verb> {
        <Verb as clap::ValueEnum>::from_str(name, false).ok()
    }
}

pub struct QueryOptions {
    pub algo: String,
    pub witness: bool,
    pub search: SearchConfig,
}

/// Text and JSON renderings of one query.
pub struct Answer {
    pub text: String,
    pub json: Value,
}

/// Either a source string or an already parsed value (a REPL binding).
pub enum Input<'a> {
    Source(&'a str),
    Parsed(&'a Expr),
}

fn form_of(field: &FieldTower, input: &Input) -> Result<QuadForm> {
    match input {
        Input::Source(src) => parse_form(field, src),
        Input::Parsed(Expr::Form(f)) => Ok(f.clone()),
        Input::Parsed(Expr::Algebra(_)) => Err(Error::Parse { pos: 0, msg: "expected a form, got an algebra".into() }),
    }
}

fn algebra_of(field: &FieldTower, input: &Input) -> Result<BrauerClass> {
    match input {
        Input::Source(src) => parse_algebra(field, src),
        Input::Parsed(Expr::Algebra(a)) => Ok(a.clone()),
        Input::Parsed(Expr::Form(_)) => Err(Error::Parse { pos: 0, msg: "expected an algebra, got a form".into() }),
    }
}

pub fn answer(verb: Verb, field: &FieldTower, input: &Input, opts: &QueryOptions) -> Result<Answer> {
    let base = json!({ "field": field.to_string() });
    let with = |mut v: Value, extra: Value| {
        if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
            a.extend(b);
        }
        v
    };
    Ok(match verb {
        Verb::Eval => {
            let e = match input {
                Input::Source(src) => parse_expression(field, src)?,
                Input::Parsed(e) => (*e).clone(),
            };
            let kind = if matches!(e, Expr::Form(_)) { "form" } else { "algebra" };
            Answer { text: e.render(), json: with(base, json!({ "kind": kind, "value": e.render() })) }
        }
        Verb::Aniso => {
            let f = form_of(field, input)?;
            let d = f.witt_decompose();
            let word = if d.witt_index == 0 { "anisotropic" } else { "isotropic" };
            let mut text = format!("{word}, dim {}, witt_index {}", f.dim(), d.witt_index);
            let mut json = with(
                base,
                json!({ "form": f.render(), "anisotropic": d.witt_index == 0, "dim": f.dim(), "witt_index": d.witt_index }),
            );
            if opts.witness && d.witt_index > 0 {
                let w = isotropy_witness_search(&f, &opts.search)?;
                let rendered = w.as_ref().map(|w| w.render(field));
                text.push_str(&format!("\nwitness: {}", rendered.as_deref().unwrap_or("none within budget")));
                json["witness"] = json!(rendered);
            }
            Answer { text, json }
        }
        Verb::Iw => {
            let f = form_of(field, input)?;
            let d = f.witt_decompose();
            Answer {
                text: format!("witt_index {}, anisotropic part {}", d.witt_index, d.anisotropic_part),
                json: with(
                    base,
                    json!({ "form": f.render(), "witt_index": d.witt_index, "anisotropic_part": d.anisotropic_part.render() }),
                ),
            }
        }
        Verb::Hyp => {
            let f = form_of(field, input)?;
            let h = f.is_hyperbolic();
            Answer {
                text: if h { "hyperbolic" } else { "not hyperbolic" }.to_string(),
                json: with(base, json!({ "form": f.render(), "hyperbolic": h })),
            }
        }
        Verb::Sig => {
            let f = form_of(field, input)?;
            let sigs = f.total_signature()?;
            let lines: Vec<String> = sigs.iter().map(|(o, s)| format!("{}: {s}", o.render(field))).collect();
            let entries: Vec<Value> =
                sigs.iter().map(|(o, s)| json!({ "ordering": o.render(field), "signature": s })).collect();
            Answer { text: lines.join("\n"), json: with(base, json!({ "form": f.render(), "signatures": entries })) }
        }
        Verb::Torsion => {
            let f = form_of(field, input)?;
            let t = f.is_torsion();
            Answer {
                text: if t { "torsion" } else { "not torsion" }.to_string(),
                json: with(base, json!({ "form": f.render(), "torsion": t })),
            }
        }
        Verb::Index => {
            let a = algebra_of(field, input)?;
            let strategy = index_strategy(&opts.algo)?;
            let index = 1u64 << strategy.index_log2(&a)?;
            Answer {
                text: index.to_string(),
                json: with(base, json!({ "algebra": a.render(), "index": index, "algo": strategy.name() })),
            }
        }
        Verb::Division => {
            let a = algebra_of(field, input)?;
            let d = is_division_tensor(field, &a.factors())?;
            Answer {
                text: if d { "division" } else { "not division" }.to_string(),
                json: with(base, json!({ "algebra": a.render(), "division": d, "index": a.index() })),
            }
        }
        Verb::Trace => {
            let a = algebra_of(field, input)?;
            let t = trace_form_tensor(field, &a.factors())?;
            Answer { text: t.render(), json: with(base, json!({ "algebra": a.render(), "trace_form": t.render() })) }
        }
        Verb::Norm => {
            let a = algebra_of(field, input)?;
            let factors = a.factors();
            if factors.len() != 1 {
                return Err(Error::Parse { pos: 0, msg: "norm takes a single quaternion symbol".into() });
            }
            let n = factors[0].norm_form();
            Answer { text: n.render(), json: with(base, json!({ "algebra": a.render(), "norm_form": n.render() })) }
        }
    })
}
