use std::io::Write;
use std::path::Path;

use lucid_core::algebra::{format_rational, parse_rational, Rational, RationalFunction};
use lucid_core::discover::{
    discover, interpolation_identity, power_representation, DiscoverOptions, Generated, InterpVariant, NodeIndex, Sample,
};
use lucid_core::identity::{catalog, entries, parse_identity, parse_ratfunc, to_json, Bindings, IdentityTemplate};
use lucid_core::lucas::{lucas_numeric, v_from_u, HoradamParams, LucasKind, Method, SequenceParams};
use lucid_core::verify::{verify_with, VerifyOptions};

use crate::bench::bench;
use crate::output::*;
use crate::{CatalogAction, Cli, CliError, CliResult, Command, KindArg, MethodArg, VariantArg, EXIT_NEGATIVE, EXIT_OK};

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    let newline = if text.ends_with('\n') { "" } else { "\n" };
    match out.write_all(text.as_bytes()).and_then(|_| out.write_all(newline.as_bytes())) {
        Ok(()) => Ok(()),
        // The reader went away, e.g. `lucid catalog list | head`.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Internal(e.to_string())),
    }
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn read_source(expr: &Option<String>, file: &Option<impl AsRef<Path>>) -> Result<IdentityTemplate, CliError> {
    let text = match (expr, file) {
        (Some(e), _) => e.clone(),
        (None, Some(f)) => {
            let f = f.as_ref();
            std::fs::read_to_string(f).map_err(|e| usage(format!("{}: {e}", f.display())))?
        }
        (None, None) => return Err(usage("one of --expr or --file is required")),
    };
    let mut t = parse_identity(&text).map_err(usage)?;
    if let (None, Some(f)) = (&t.name, file) {
        t.name = f.as_ref().file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(t)
}

fn rational(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| usage(format!("{what}: expected a rational number, got {text:?}")))
}

fn parse_pq(text: &str) -> Result<SequenceParams<Rational>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let [p, q] = parts[..] else {
        return Err(usage(format!("--params: expected P,Q, got {text:?}")));
    };
    Ok(SequenceParams::new(rational(p, "P")?, rational(q, "Q")?))
}

fn parse_ints(text: &str, what: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| usage(format!("{what}: expected integers, got {s:?}"))))
        .collect()
}

/// `-1,0,1` binds the primary index; `k=0,m=1;k=1,m=1` binds several.
fn parse_samples(text: &str, t: &IdentityTemplate) -> Result<Vec<Sample>, CliError> {
    if !text.contains('=') {
        let k = t.primary_index().ok_or_else(|| usage("template has no index variable"))?.to_string();
        return Ok(parse_ints(text, "--samples")?.into_iter().map(|v| Sample::from([(k.clone(), v)])).collect());
    }
    let mut out = Vec::new();
    for group in text.split(';').filter(|g| !g.trim().is_empty()) {
        let mut s = Sample::new();
        for pair in group.split(',') {
            let (name, value) = pair.split_once('=').ok_or_else(|| usage(format!("--samples: bad binding {pair:?}")))?;
            let v = value.trim().parse::<i64>().map_err(|_| usage(format!("--samples: bad value {value:?}")))?;
            s.insert(name.trim().to_string(), v);
        }
        out.push(s);
    }
    Ok(out)
}

fn lucas_kind(k: KindArg) -> LucasKind {
    match k {
        KindArg::U => LucasKind::U,
        KindArg::V => LucasKind::V,
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Doubling => Method::Doubling,
        MethodArg::Iterative => Method::Iterative,
        MethodArg::Matrix => Method::Matrix,
    }
}

fn print_generated(cli: &Cli, out: &mut dyn Write, g: &Generated) -> CliResult {
    if cli.json {
        emit(out, &to_json_text(&VerificationJson::new(&g.template, &g.verdict)))?;
    } else {
        emit(out, &verification_text(&g.template, &g.verdict))?;
    }
    Ok(exit_for(g.verdict.is_verified()))
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Verify { name, expr, file, params, trials } => {
            let mut t = match name {
                Some(n) => catalog(n).map_err(usage)?,
                None => read_source(expr, file)?,
            };
            if let Some(pq) = params {
                let sp = parse_pq(pq)?;
                let name = t.name.clone();
                t = t.substitute(&Bindings::new().number("P", sp.p).number("Q", sp.q)).map_err(usage)?;
                t.name = name;
            }
            let v = verify_with(&t, &VerifyOptions { trials: *trials, seed: cli.seed }).map_err(usage)?;
            log::info!("{}: {:?}", t.name.as_deref().unwrap_or("identity"), v.status);
            if cli.json {
                emit(out, &to_json_text(&VerificationJson::new(&t, &v)))?;
            } else {
                emit(out, &verification_text(&t, &v))?;
            }
            Ok(exit_for(v.is_verified()))
        }
        Command::Discover { source, samples, extra, normalize, trials } => {
            let t = read_source(&source.expr, &source.file)?;
            let mut opts = DiscoverOptions {
                extra_rows: *extra,
                verify: VerifyOptions { trials: *trials, seed: cli.seed },
                ..Default::default()
            };
            if let Some(s) = samples {
                opts.samples = Some(parse_samples(s, &t)?);
            }
            if let Some(n) = normalize {
                let (name, value) = n.split_once('=').ok_or_else(|| usage("--normalize: expected NAME=VALUE"))?;
                opts.normalize = Some((name.trim().to_string(), parse_ratfunc(value).map_err(usage)?));
            }
            let d = discover(&t, &opts).map_err(usage)?;
            log::info!("rank {}, {} candidates", d.report.rank, d.candidates.len());
            if cli.json {
                emit(out, &to_json_text(&d.to_json()))?;
            } else {
                emit(out, &discovery_text(&d))?;
            }
            let found = d.verified().next().is_some();
            Ok(exit_for(found))
        }
        Command::Powrep { m, kind } => {
            let g = power_representation(*m, lucas_kind(*kind)).map_err(usage)?;
            print_generated(cli, out, &g)
        }
        Command::Interp { n, nodes, x, variant, params, s, horadam } => {
            let nodes = parse_ints(nodes, "--nodes")?;
            let x = match x.trim().parse::<i64>() {
                Ok(v) => NodeIndex::Value(v),
                Err(_) if x.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && x.starts_with(|c: char| c.is_ascii_alphabetic()) => {
                    NodeIndex::Symbolic(x.clone())
                }
                Err(_) => return Err(usage(format!("--x: expected an integer or a name, got {x:?}"))),
            };
            let variant = match variant {
                VariantArg::Lagrange => InterpVariant::Lagrange,
                VariantArg::Qscaled => InterpVariant::QScaled,
                VariantArg::Horadam => {
                    let parts = horadam.split(',').map(parse_ratfunc).collect::<Result<Vec<RationalFunction>, _>>().map_err(usage)?;
                    let [a0, a1, p0, p1] = <[RationalFunction; 4]>::try_from(parts)
                        .map_err(|_| usage("--horadam: expected a0,a1,p0,p1"))?;
                    InterpVariant::Horadam { s: *s, params: HoradamParams { a0, a1, p0, p1 } }
                }
            };
            let params = params.as_deref().map(parse_pq).transpose()?;
            let g = interpolation_identity(*n, &nodes, &x, &variant, params).map_err(usage)?;
            print_generated(cli, out, &g)
        }
        Command::Eval { kind, k, p, q, method: m } => {
            let sp = SequenceParams::new(rational(p, "--P")?, rational(q, "--Q")?);
            let pair = lucas_numeric(&sp, *k, method(*m)).map_err(usage)?;
            let value = match kind {
                KindArg::U => pair.u_k.clone(),
                KindArg::V => v_from_u(&pair, &sp),
            };
            let letter = if matches!(kind, KindArg::U) { "U" } else { "V" };
            if cli.json {
                let j = EvalJson {
                    kind: letter,
                    k: *k,
                    p: format_rational(&sp.p),
                    q: format_rational(&sp.q),
                    method: method(*m).name(),
                    value: format_rational(&value),
                };
                emit(out, &to_json_text(&j))?;
            } else {
                emit(out, &format!("{letter}[{k}] = {}", format_rational(&value)))?;
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { action } => catalog_command(cli, action, out),
        Command::Bench { p, q, k, methods } => {
            let sp = SequenceParams::new(rational(p, "--P")?, rational(q, "--Q")?);
            let methods = methods
                .split(',')
                .map(|m| Method::parse(m.trim()).ok_or_else(|| usage(format!("--methods: unknown method {m:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = bench(&sp, *k, &methods).map_err(CliError::Internal)?;
            if cli.json {
                let j = BenchJson {
                    p: format_rational(&sp.p),
                    q: format_rational(&sp.q),
                    k: *k,
                    rows: rows
                        .iter()
                        .map(|r| BenchRowJson { method: r.method.name(), seconds: r.elapsed.as_secs_f64(), digits: r.digits })
                        .collect(),
                };
                emit(out, &to_json_text(&j))?;
            } else {
                let mut text = format!("U[{k}] at P={}, Q={}\n", format_rational(&sp.p), format_rational(&sp.q));
                text.push_str(&format!("{:<10} {:>12} {:>10}\n", "method", "time (ms)", "digits"));
                for r in &rows {
                    text.push_str(&format!("{:<10} {:>12.3} {:>10}\n", r.method.name(), r.elapsed.as_secs_f64() * 1e3, r.digits));
                }
                if let Some(r) = rows.first().filter(|r| r.digits <= 60) {
                    text.push_str(&format!("value: {}\n", format_rational(&r.value)));
                }
                emit(out, &text)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn catalog_command(cli: &Cli, action: &CatalogAction, out: &mut dyn Write) -> CliResult {
    match action {
        CatalogAction::List => {
            if cli.json {
                let list: Vec<CatalogEntryJson> =
                    entries().iter().map(|e| CatalogEntryJson { name: e.name, summary: e.summary, text: e.text }).collect();
                emit(out, &to_json_text(&list))?;
            } else {
                let width = entries().iter().map(|e| e.name.len()).max().unwrap_or(0);
                let lines: Vec<String> = entries().iter().map(|e| format!("{:<width$}  {}", e.name, e.summary)).collect();
                emit(out, &lines.join("\n"))?;
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Show { name } => {
            let t = catalog(name).map_err(usage)?;
            if cli.json {
                emit(out, &to_json_text(&to_json(&t)))?;
            } else {
                emit(out, &lucid_core::identity::render_text(&t))?;
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Verify => {
            let opts = VerifyOptions { trials: 100, seed: cli.seed };
            let mut all = true;
            let mut results = Vec::new();
            for e in entries() {
                let t = catalog(e.name).map_err(|err| CliError::Internal(err.to_string()))?;
                let v = verify_with(&t, &opts).map_err(|err| CliError::Internal(format!("{}: {err}", e.name)))?;
                all &= v.is_verified();
                results.push((t, v));
            }
            if cli.json {
                let list: Vec<VerificationJson> = results.iter().map(|(t, v)| VerificationJson::new(t, v)).collect();
                emit(out, &to_json_text(&list))?;
            } else {
                let width = entries().iter().map(|e| e.name.len()).max().unwrap_or(0);
                let lines: Vec<String> = results
                    .iter()
                    .map(|(t, v)| format!("{:<width$}  {:?}", t.name.as_deref().unwrap_or(""), v.status))
                    .collect();
                emit(out, &lines.join("\n"))?;
            }
            Ok(exit_for(all))
        }
    }
}
