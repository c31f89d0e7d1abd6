use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use bcoh::cochain::{
    aut_orbits, bicat_equiv, cohomology, comparison_from_abelian, differential, functor_check, functor_solve,
    gauge_transform, is_abelian_3_cocycle, is_coboundary, is_cocycle, s4_coherence_check, transformation_check,
    Cochain,
};
use bcoh::magma::{
    automorphisms, check_associative, check_b_axiom, check_commutative, enumerate_b_magmas, idempotents, right_units,
    BMagma, MagmaMap, MagmaTable,
};
use bcoh::search::{search_lze, search_matrix_ybe, search_preunital, search_settheoretic_ybe, SearchResult};
use bcoh::tensorops::{
    braid_word_eval, cl_2morphism_equation, compose_l, coxeter_equations, hexagon_equation, id_bfunctor_equation,
    l_to_m, lze_equation, m_relation_equation, m_to_l, pentagon_equation, preunital_equations, s_relation_equation,
    s_to_z, tetrahedron_equation, z_to_s, AnyOperator, CheckMode, CheckOptions, Equation, Field, FieldSpec,
    LegOperator, OperatorJson, PrimeField, Rationals, RANDOM_SAMPLES,
};
use bcoh::zlinalg::AbelianGroup;

use crate::args::*;
use crate::io::{conventions, read_json, to_value, CliError, CliResult, Config, Sink};

/// Settings resolved from flags over config.
pub struct Context {
    pub seed: u64,
    pub mode: Option<ModeArg>,
    pub samples: Option<usize>,
    pub prime: Option<u64>,
}

impl Context {
    pub fn new(cli: &Cli, cfg: &Config) -> Self {
        Context { seed: cli.seed.or(cfg.seed).unwrap_or(0), mode: cfg.mode, samples: cfg.samples, prime: cfg.prime }
    }

    fn check_options(&self, args: &CheckArgs) -> CliResult<CheckOptions> {
        let samples = args.samples.or(self.samples).unwrap_or(RANDOM_SAMPLES);
        let mode = match args.mode.or(self.mode).unwrap_or(ModeArg::Auto) {
            ModeArg::Auto => CheckMode::Auto,
            ModeArg::Exhaustive => CheckMode::Exhaustive,
            ModeArg::Random if samples == 0 => {
                return Err(CliError::Validation("random mode needs at least one sample".into()))
            }
            ModeArg::Random => CheckMode::Randomized(samples),
        };
        Ok(CheckOptions { mode, seed: self.seed })
    }
}

fn verdict(holds: bool, extra: Value) -> Value {
    let mut v = json!({ "holds": holds, "conventions": conventions() });
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        map.extend(more);
    }
    v
}

fn result(res: Value, extra: Value) -> Value {
    let mut v = json!({ "result": res, "conventions": conventions() });
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        map.extend(more);
    }
    v
}

fn load_magma(path: &Path) -> CliResult<MagmaTable> {
    read_json(path)
}

fn load_cochain(path: &Path) -> CliResult<Cochain> {
    read_json(path)
}

fn load_b_magma(path: &Path) -> CliResult<Arc<BMagma>> {
    Ok(Arc::new(BMagma::new(load_magma(path)?)?))
}

/// Operators read from several files, all over one field.
enum Ops {
    Prime(Vec<LegOperator<PrimeField>>),
    Rational(Vec<LegOperator<Rationals>>),
}

fn load_ops(paths: &[&PathBuf]) -> CliResult<Ops> {
    let mut prime = Vec::new();
    let mut rational = Vec::new();
    let mut spec: Option<FieldSpec> = None;
    for p in paths {
        let j: OperatorJson = read_json(p)?;
        if let Some(s) = spec {
            if s != j.field {
                return Err(CliError::Validation(format!(
                    "{}: operator over {:?}, but earlier operators are over {s:?}",
                    p.display(),
                    j.field
                )));
            }
        }
        spec = Some(j.field);
        match AnyOperator::from_json(&j).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))? {
            AnyOperator::Prime(op) => prime.push(op),
            AnyOperator::Rational(op) => rational.push(op),
        }
    }
    Ok(if rational.is_empty() { Ops::Prime(prime) } else { Ops::Rational(rational) })
}

macro_rules! over_field {
    ($ops:expr, $f:ident $(, $arg:expr)*) => {
        match $ops {
            Ops::Prime(v) => $f(&v $(, $arg)*),
            Ops::Rational(v) => $f(&v $(, $arg)*),
        }
    };
}

pub fn run(cli: &Cli, ctx: &Context, sink: &mut Sink) -> CliResult<()> {
    match &cli.command {
        Command::Magma(c) => magma(c, sink),
        Command::Cohomology(c) => cohomology_cmd(c, sink),
        Command::Pointed(c) => pointed(c, sink),
        Command::Eq(c) => eq(c, ctx, sink),
        Command::Braid(c) => braid(c, sink),
        Command::Search(c) => search(c, ctx, sink),
        Command::Convert(c) => convert(c, sink),
    }
}

fn magma(cmd: &MagmaCmd, sink: &mut Sink) -> CliResult<()> {
    match cmd {
        MagmaCmd::Check { magma } => {
            let t = load_magma(magma)?;
            let b = check_b_axiom(&t);
            sink.document(&verdict(
                b,
                json!({ "result": {
                    "size": t.size(),
                    "b_axiom": b,
                    "commutative": check_commutative(&t),
                    "associative": check_associative(&t),
                    "right_units": right_units(&t),
                    "idempotents": idempotents(&t),
                }}),
            ))
        }
        MagmaCmd::Enumerate { n, up_to_iso, count_only } => {
            if *n == 0 || *n > 4 {
                return Err(CliError::Validation("enumeration supports 1 <= n <= 4".into()));
            }
            let tables = enumerate_b_magmas(*n, *up_to_iso);
            let res = if *count_only { Value::Null } else { to_value(&tables)? };
            sink.document(&result(res, json!({ "n": n, "up_to_iso": up_to_iso, "count": tables.len() })))
        }
        MagmaCmd::Auts { magma } => {
            let t = load_magma(magma)?;
            let auts = automorphisms(&t)?;
            sink.document(&result(to_value(&auts)?, json!({ "count": auts.len() })))
        }
    }
}

fn group(args: &GroupArgs) -> CliResult<(Arc<BMagma>, AbelianGroup)> {
    Ok((load_b_magma(&args.magma)?, AbelianGroup::new(args.coeff.clone())))
}

fn cohomology_cmd(cmd: &CohomologyCmd, sink: &mut Sink) -> CliResult<()> {
    match cmd {
        CohomologyCmd::Compute(args) => {
            let (m, b) = group(args)?;
            let h = cohomology(&m, &b, args.degree)?;
            sink.document(&result(to_value(&h)?, json!({ "order": h.order(), "trivial": h.is_trivial() })))
        }
        CohomologyCmd::D { cochain } => {
            let c = load_cochain(cochain)?;
            sink.document(&result(to_value(&differential(&c))?, json!({})))
        }
        CohomologyCmd::IsCocycle { cochain } => {
            let c = load_cochain(cochain)?;
            sink.document(&verdict(is_cocycle(&c), json!({})))
        }
        CohomologyCmd::IsCoboundary { cochain } => {
            let c = load_cochain(cochain)?;
            let w = is_coboundary(&c)?;
            sink.document(&verdict(w.is_some(), json!({ "witness": to_value(&w)? })))
        }
        CohomologyCmd::Orbits(args) => {
            let (m, b) = group(args)?;
            let h = cohomology(&m, &b, args.degree)?;
            let o = aut_orbits(&h)?;
            sink.document(&result(
                to_value(&o)?,
                json!({ "invariant_factors": h.invariant_factors, "orbit_count": o.orbits.len() }),
            ))
        }
    }
}

fn pointed(cmd: &PointedCmd, sink: &mut Sink) -> CliResult<()> {
    match cmd {
        PointedCmd::Gauge { r, q } => {
            let out = gauge_transform(&load_cochain(r)?, &load_cochain(q)?)?;
            sink.document(&result(to_value(&out)?, json!({})))
        }
        PointedCmd::FunctorCheck { map, r, r2, q } => {
            let f: MagmaMap = read_json(map)?;
            let ok = functor_check(&f, &load_cochain(r)?, &load_cochain(r2)?, &load_cochain(q)?)?;
            sink.document(&verdict(ok, json!({})))
        }
        PointedCmd::FunctorSolve { map, r, r2 } => {
            let f: MagmaMap = read_json(map)?;
            let w = functor_solve(&f, &load_cochain(r)?, &load_cochain(r2)?)?;
            sink.document(&verdict(w.is_some(), json!({ "witness": to_value(&w)? })))
        }
        PointedCmd::TransformCheck { p, q, q2 } => {
            let ok = transformation_check(&load_cochain(p)?, &load_cochain(q)?, &load_cochain(q2)?)?;
            sink.document(&verdict(ok, json!({})))
        }
        PointedCmd::CompareAbelian { a, c } => {
            let (a, c) = (load_cochain(a)?, load_cochain(c)?);
            let input_ok = is_abelian_3_cocycle(&a, &c)?;
            let b = comparison_from_abelian(&a, &c)?;
            sink.document(&result(
                to_value(&b)?,
                json!({ "input_is_abelian_3_cocycle": input_ok, "output_is_cocycle": is_cocycle(&b) }),
            ))
        }
        PointedCmd::S4Check { s } => {
            let ok = s4_coherence_check(&load_cochain(s)?)?;
            sink.document(&verdict(ok, json!({})))
        }
        PointedCmd::BicatEquiv { s, s2 } => {
            let w = bicat_equiv(&load_cochain(s)?, &load_cochain(s2)?)?;
            sink.document(&verdict(w.is_some(), json!({ "witness": to_value(&w)? })))
        }
    }
}

fn equations_verdict<F: Field>(name: &str, eqs: &[Equation<F>], opts: &CheckOptions) -> Value {
    let per: Vec<bool> = eqs.iter().map(|e| e.holds(opts)).collect();
    verdict(
        per.iter().all(|&b| b),
        json!({
            "equation": name,
            "per_equation": per,
            "exhaustive": eqs.iter().all(|e| e.is_exhaustive(opts)),
            "ambient_dims": eqs.iter().map(|e| e.ambient_dim()).collect::<Vec<_>>(),
            "seed": opts.seed,
        }),
    )
}

fn build_equations<F: Field>(kind: &str, ops: &[LegOperator<F>]) -> bcoh::Result<Vec<Equation<F>>> {
    Ok(match kind {
        "pentagon" => vec![pentagon_equation(&ops[0])?],
        "hexagon" => vec![hexagon_equation(&ops[0])?],
        "preunital" => preunital_equations(&ops[0], &ops[1])?,
        "tetrahedron" => vec![tetrahedron_equation(&ops[0])?],
        "s-relation" => vec![s_relation_equation(&ops[0])?],
        "lze" => vec![lze_equation(&ops[0], &ops[1])?],
        "m-relation" => vec![m_relation_equation(&ops[0], &ops[1])?],
        "cl2morphism" => vec![cl_2morphism_equation(&ops[0], &ops[1], &ops[2])?],
        "id-functor" => vec![id_bfunctor_equation(&ops[0], &ops[1])?],
        _ => unreachable!("equation kinds are fixed by the argument parser"),
    })
}

fn check_kind<F: Field>(ops: &[LegOperator<F>], kind: &str, opts: &CheckOptions) -> CliResult<Value> {
    let eqs = build_equations(kind, ops)?;
    Ok(equations_verdict(kind, &eqs, opts))
}

fn eq(cmd: &EqCmd, ctx: &Context, sink: &mut Sink) -> CliResult<()> {
    let (kind, paths, check): (&str, Vec<&PathBuf>, &CheckArgs) = match cmd {
        EqCmd::Pentagon { op, check } => ("pentagon", vec![op], check),
        EqCmd::Hexagon { op, check } => ("hexagon", vec![op], check),
        EqCmd::Preunital { b, c, check } => ("preunital", vec![b, c], check),
        EqCmd::Tetrahedron { op, check } => ("tetrahedron", vec![op], check),
        EqCmd::SRelation { op, check } => ("s-relation", vec![op], check),
        EqCmd::Lze { l, z, check } => ("lze", vec![l, z], check),
        EqCmd::MRelation { m, s, check } => ("m-relation", vec![m, s], check),
        EqCmd::Cl2morphism { f, d, d2, check } => ("cl2morphism", vec![f, d, d2], check),
        EqCmd::IdFunctor { g, b, check } => ("id-functor", vec![g, b], check),
    };
    let opts = ctx.check_options(check)?;
    let ops = load_ops(&paths)?;
    let v = over_field!(ops, check_kind, kind, &opts)?;
    sink.document(&v)
}

fn braid_eval<F: Field>(ops: &[LegOperator<F>], strands: usize, gens: &[i64], tail: usize) -> CliResult<Value> {
    let out = braid_word_eval(&ops[0], strands, gens, tail)?;
    Ok(result(to_value(&out)?, json!({ "strands": strands, "gens": gens, "tail": tail })))
}

fn braid_coxeter<F: Field>(ops: &[LegOperator<F>], strands: usize) -> CliResult<Value> {
    let eqs = coxeter_equations(&ops[0], strands)?;
    Ok(equations_verdict("coxeter", &eqs, &CheckOptions::default()))
}

fn braid(cmd: &BraidCmd, sink: &mut Sink) -> CliResult<()> {
    let v = match cmd {
        BraidCmd::Eval { op, strands, gens, tail } => {
            over_field!(load_ops(&[op])?, braid_eval, *strands, gens, *tail)?
        }
        BraidCmd::Coxeter { op, strands } => over_field!(load_ops(&[op])?, braid_coxeter, *strands)?,
    };
    sink.document(&v)
}

fn emit_search<T: Serialize>(r: &SearchResult<T>, jsonl: bool, sink: &mut Sink) -> CliResult<()> {
    if !jsonl {
        return sink.document(&result(to_value(r)?, json!({ "count": r.solutions.len() })));
    }
    for (i, s) in r.solutions.iter().enumerate() {
        sink.line(&json!({ "kind": r.kind, "parameters": r.parameters, "index": i, "solution": to_value(s)? }))?;
    }
    sink.line(&json!({
        "summary": {
            "kind": r.kind,
            "parameters": r.parameters,
            "count": r.solutions.len(),
            "candidates_scanned": r.candidates_scanned,
            "exhaustive": r.exhaustive,
            "restriction": r.restriction,
        },
        "conventions": conventions(),
    }))
}

fn search(cmd: &SearchCmd, ctx: &Context, sink: &mut Sink) -> CliResult<()> {
    match cmd {
        SearchCmd::YbeSet { n, jsonl } => emit_search(&search_settheoretic_ybe(*n)?, *jsonl, sink),
        SearchCmd::YbeMatrix { jsonl } => emit_search(&search_matrix_ybe()?, *jsonl, sink),
        SearchCmd::Preunital { prime, jsonl } => {
            let p = prime.or(ctx.prime).ok_or_else(|| CliError::Validation("--prime is required".into()))?;
            emit_search(&search_preunital(p)?, *jsonl, sink)
        }
        SearchCmd::Lze { c, b, jsonl } => emit_search(&search_lze(*c, *b)?, *jsonl, sink),
    }
}

fn convert_one<F: Field>(ops: &[LegOperator<F>], kind: &str) -> CliResult<Value> {
    let out = match kind {
        "s-to-z" => s_to_z(&ops[0])?,
        "z-to-s" => z_to_s(&ops[0])?,
        "m-to-l" => m_to_l(&ops[0])?,
        "l-to-m" => l_to_m(&ops[0])?,
        "compose-l" => compose_l(&ops[0], &ops[1])?,
        _ => unreachable!("conversion kinds are fixed by the argument parser"),
    };
    Ok(result(to_value(&out)?, json!({ "conversion": kind })))
}

fn convert(cmd: &ConvertCmd, sink: &mut Sink) -> CliResult<()> {
    let (kind, paths): (&str, Vec<&PathBuf>) = match cmd {
        ConvertCmd::SToZ { op } => ("s-to-z", vec![op]),
        ConvertCmd::ZToS { op } => ("z-to-s", vec![op]),
        ConvertCmd::MToL { op } => ("m-to-l", vec![op]),
        ConvertCmd::LToM { op } => ("l-to-m", vec![op]),
        ConvertCmd::ComposeL { l, l2 } => ("compose-l", vec![l, l2]),
    };
    let v = over_field!(load_ops(&paths)?, convert_one, kind)?;
    sink.document(&v)
}
