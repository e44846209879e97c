//! Subcommand execution. Each command yields a text rendering, a JSON
//! value and an exit status; nothing here prints.

use serde_json::{json, Value};

use projdyn::dynamics::{
    dim_end, dim_forms, generic_cert_degree, has_periodic_critical_point, improper_certificate, pushforward_chain,
    search_improper_witness, IndexTuple,
};
use projdyn::resultant::{macaulay_resultant, MacaulaySystem, ResultantStrategy, Strategy};
use projdyn::sympow::{find_pcf_parameter, period_polynomial, symmetric_power};
use projdyn::{Error, FieldSpec, Fp, PrimeField, Rational, Rationals, Result, Scalar};

use crate::input::{self, MapSource};
use crate::{status, Command, Global};

struct Output {
    code: u8,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { code: status::SUCCESS, text: text.into(), json }
    }

    fn negative(text: impl Into<String>, json: Value) -> Self {
        Output { code: status::NEGATIVE, text: text.into(), json }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Iterate { .. } => "iterate",
        Command::Orbit { .. } => "orbit",
        Command::Jacobian { .. } => "jacobian",
        Command::Resultant { .. } => "resultant",
        Command::Pushforward { .. } => "pushforward",
        Command::ImproperCert { .. } => "improper-cert",
        Command::ImproperSearch { .. } => "improper-search",
        Command::YsTest { .. } => "ys-test",
        Command::Sympow { .. } => "sympow",
        Command::PeriodPoly { .. } => "period-poly",
        Command::FindPcf { .. } => "find-pcf",
        Command::Dims { .. } => "dims",
    }
}

fn map_arg(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Iterate { map, .. }
        | Command::Orbit { map, .. }
        | Command::Jacobian { map }
        | Command::Resultant { map }
        | Command::Pushforward { map, .. }
        | Command::ImproperCert { map, .. }
        | Command::ImproperSearch { map, .. }
        | Command::YsTest { map, .. }
        | Command::Sympow { map, .. } => Some(map),
        _ => None,
    }
}

/// Runs one command; returns the exit status and everything for stdout.
pub fn run(cmd: &Command, global: &Global) -> (u8, String) {
    let name = command_name(cmd);
    match dispatch(cmd, global) {
        Ok((field, out)) => {
            let body = if global.json {
                let mut obj = json!({ "command": name, "field": field.map(|f| f.to_string()), "seed": global.seed });
                if let (Value::Object(o), Value::Object(extra)) = (&mut obj, out.json) {
                    o.extend(extra);
                }
                format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable"))
            } else {
                format!("{}\n", out.text)
            };
            (out.code, body)
        }
        Err(e) => {
            let code = if e.is_degeneracy() { status::DEGENERATE } else { status::USAGE };
            eprintln!("error[{}]: {e}", e.code());
            let body = if global.json {
                let obj = json!({ "command": name, "error": e.code(), "message": e.to_string() });
                format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable"))
            } else {
                String::new()
            };
            (code, body)
        }
    }
}

fn strategy(global: &Global) -> Result<ResultantStrategy> {
    let strategy: Strategy = global.strategy.parse()?;
    Ok(ResultantStrategy { strategy, ..ResultantStrategy::with_seed(global.seed) })
}

fn dispatch(cmd: &Command, global: &Global) -> Result<(Option<FieldSpec>, Output)> {
    match cmd {
        Command::PeriodPoly { d, s } => {
            let g = period_polynomial(*d, *s)?;
            let coeffs: Vec<String> = g.coeffs.iter().map(|c| c.to_string()).collect();
            let text = format!("[{}]", coeffs.join(", "));
            let json = json!({ "d": d, "s": s, "coeffs": coeffs.iter().map(|c| Value::String(c.clone())).collect::<Vec<_>>() });
            return Ok((None, Output::ok(text, json)));
        }
        Command::Dims { n, d, m, indices } => return Ok((None, dims(*n, *d, *m, indices.as_deref())?)),
        _ => {}
    }
    let map = map_arg(cmd).map(MapSource::read).transpose()?;
    let field = input::resolve_field(global.field.as_deref(), map.as_ref())?;
    let out = match field {
        FieldSpec::Rationals => run_in::<Rational>(cmd, global, map.as_ref(), &Rationals)?,
        FieldSpec::Prime(p) => run_in::<Fp>(cmd, global, map.as_ref(), &PrimeField::new(p))?,
    };
    Ok((Some(field), out))
}

fn dims(n: u64, d: u64, m: u64, indices: Option<&str>) -> Result<Output> {
    let forms = dim_forms(n, m)?;
    let ends = dim_end(n, d)?;
    let mut text = format!("dim_forms {forms}\ndim_end {ends}");
    let mut json = json!({ "n": n, "d": d, "m": m, "dim_forms": forms.to_string(), "dim_end": ends.to_string() });
    if let Some(src) = indices {
        let idx: IndexTuple = src.parse()?;
        let deg = generic_cert_degree(n, m, d, &idx)?;
        text.push_str(&format!("\ncert_degree {deg}"));
        json["indices"] = json!(idx.indices());
        json["cert_degree"] = json!(deg.to_string());
    }
    Ok(Output::ok(text, json))
}

fn run_in<K: Scalar>(cmd: &Command, global: &Global, map: Option<&MapSource>, field: &K::Field) -> Result<Output> {
    let map = || map.expect("command takes a map");
    match cmd {
        Command::Iterate { s, .. } => {
            let g = map().endomorphism::<K>(field)?.iterate(*s)?;
            Ok(Output::ok(g.to_string(), json!({ "s": s, "map": g.to_spec()? })))
        }
        Command::Orbit { point, bound, .. } => {
            let f = map().endomorphism::<K>(field)?;
            let p = input::point::<K>(point, f.n(), field)?;
            let orbit = f.orbit(&p, *bound)?;
            let pts: Vec<String> = orbit.points.iter().map(|q| q.to_string()).collect();
            let tail = orbit.tail.map_or("none".to_string(), |t| t.to_string());
            let period = orbit.period.map_or("none".to_string(), |t| t.to_string());
            let text = format!("{}\ntail {tail} period {period}", pts.join(" -> "));
            let json = json!({ "points": pts, "tail": orbit.tail, "period": orbit.period, "max_steps": orbit.max_steps });
            Ok(if orbit.period.is_some() { Output::ok(text, json) } else { Output::negative(text, json) })
        }
        Command::Jacobian { .. } => {
            let j = map().endomorphism::<K>(field)?.jacobian()?;
            Ok(Output::ok(j.to_string(), json!({ "form": j.to_string(), "degree": j.degree() })))
        }
        Command::Resultant { .. } => {
            let forms = map().forms::<K>(field)?;
            let out = macaulay_resultant(&MacaulaySystem::new(forms)?, strategy(global)?)?;
            let value = out.value.to_string();
            Ok(Output::ok(value.clone(), json!({ "value": value, "mode": out.mode.to_string() })))
        }
        Command::Pushforward { form, s, .. } => {
            let f = map().endomorphism::<K>(field)?;
            let phi = input::form::<K>(form, f.n() + 1, field)?;
            let chain = pushforward_chain(&f, &phi, *s, strategy(global)?)?;
            let img = chain.last().unwrap();
            Ok(Output::ok(img.to_string(), json!({ "s": s, "form": img.to_string(), "degree": img.degree() })))
        }
        Command::ImproperCert { form, indices, .. } => {
            let f = map().endomorphism::<K>(field)?;
            let phi = input::form::<K>(form, f.n() + 1, field)?;
            let idx: IndexTuple = indices.parse()?;
            let out = improper_certificate(&f, &phi, &idx, strategy(global)?)?;
            let value = out.value.to_string();
            let json = json!({
                "indices": idx.indices(),
                "value": value,
                "vanishes": out.value.is_zero(),
                "mode": out.mode.to_string(),
            });
            Ok(Output::ok(value, json))
        }
        Command::ImproperSearch { form, bound, .. } => {
            let f = map().endomorphism::<K>(field)?;
            let phi = input::form::<K>(form, f.n() + 1, field)?;
            let found = search_improper_witness(&f, &phi, *bound, strategy(global)?)?;
            let json = json!({
                "witness": found.witness.as_ref().map(|w| w.indices().to_vec()),
                "bound": found.bound,
                "checked": found.checked,
            });
            Ok(match &found.witness {
                Some(w) => Output::ok(w.to_string(), json),
                None => Output::negative(format!("absent (bound {bound})"), json),
            })
        }
        Command::YsTest { s, .. } => {
            let f = map().endomorphism::<K>(field)?;
            let v = has_periodic_critical_point(&f, *s)?;
            let witness = v.witness.as_ref().map(|p| p.to_string());
            let mut text = format!("{} ({})", v.value, v.scope);
            if let Some(w) = &witness {
                text.push_str(&format!("\nwitness {w}"));
            }
            let json = json!({ "s": s, "value": v.value, "scope": v.scope.to_string(), "witness": witness });
            Ok(if v.value { Output::ok(text, json) } else { Output::negative(text, json) })
        }
        Command::Sympow { n, .. } => {
            let big = symmetric_power(&map().endomorphism::<K>(field)?, *n)?;
            Ok(Output::ok(big.to_string(), json!({ "n": n, "map": big.to_spec()? })))
        }
        Command::FindPcf { d, s } => {
            let found = find_pcf_parameter::<K>(*d, *s, field)?;
            let json = json!({
                "d": d,
                "s": s,
                "c": found.as_ref().map(|p| p.c.to_string()),
                "orbit": found.as_ref().map(|p| p.orbit.points.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
                "period": found.as_ref().and_then(|p| p.orbit.period),
            });
            Ok(match found {
                Some(p) => {
                    let pts: Vec<String> = p.orbit.points.iter().map(|q| q.to_string()).collect();
                    Output::ok(format!("{}\n{}", p.c, pts.join(" -> ")), json)
                }
                None => Output::negative("absent", json),
            })
        }
        Command::PeriodPoly { .. } | Command::Dims { .. } => {
            Err(Error::InvalidInput("command does not take a field".into()))
        }
    }
}
