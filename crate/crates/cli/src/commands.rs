use std::fmt::Write;

use anyhow::{bail, Result};
use cobord_core::checks::{run_checks, CheckConfig, CHECK_DEPTH};
use cobord_core::classifying::{
    compare_with_gl, ring_bgl, ring_bsl, ring_bt, slice_window, weyl_invariants, PermutationGroup,
};
use cobord_core::{
    make_specialization, CoeffRing, FglTable, GradedSeries, LazardRing, RingPresentation, SpecializationMap,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::TableSource;
use crate::{CheckArgs, FglArgs, Group, InvariantArgs, LawChoice, LazardArgs, Output, RingArgs, Theory};

fn query(command: &str, args: &impl Serialize) -> Value {
    let mut q = serde_json::to_value(args).expect("arguments serialize");
    q["command"] = json!(command);
    q
}

fn series_json<R: CoeffRing>(x: &GradedSeries<R>) -> Value {
    json!({"text": x.to_string(), "terms": x.terms_json()})
}

pub fn lazard(args: &LazardArgs, source: &TableSource) -> Result<Output> {
    let table = source.table(args.max_codegree)?;
    let mut text = format!("{:>8}  {:>4}  basis\n", "codegree", "rank");
    let mut basis = Vec::new();
    for d in 0..=table.max_codegree() {
        let elements: Vec<String> = (0..table.rank(d))
            .map(|k| table.format(&table.basis_element(d, k)))
            .collect();
        writeln!(text, "{d:>8}  {:>4}  {}", table.rank(d), elements.join(", ")).unwrap();
        basis.push(json!({"codegree": d, "rank": table.rank(d), "elements": elements}));
    }
    Ok(Output {
        query: query("lazard", args),
        result: json!({
            "max_codegree": table.max_codegree(),
            "ranks": table.ranks(),
            "basis": basis,
        }),
        text,
        success: true,
    })
}

pub fn fgl(args: &FglArgs, source: &TableSource) -> Result<Output> {
    if args.order == 0 {
        bail!(cobord_core::Error::InvalidInput("law order must be at least 1".into()));
    }
    let (result, text) = match args.law {
        LawChoice::Universal => {
            let table = source.table(args.order as usize - 1)?;
            describe_law(&FglTable::universal(args.order, table)?, args)?
        }
        LawChoice::Additive => describe_law(&FglTable::additive(args.order), args)?,
        LawChoice::Multiplicative => describe_law(&FglTable::multiplicative(args.order), args)?,
    };
    Ok(Output {
        query: query("fgl", args),
        result,
        text,
        success: true,
    })
}

fn describe_law<R: CoeffRing>(law: &FglTable<R>, args: &FglArgs) -> Result<(Value, String)> {
    let mut text = format!("{law}\n");
    let mut result = json!({
        "law": law.kind().name(),
        "coefficients": law.ring().describe(),
        "order": law.order(),
        "series": series_json(&law.series()),
    });
    if args.inverse {
        let chi = law.formal_inverse(law.order())?;
        writeln!(text, "χ(u) = {}", chi.series()).unwrap();
        result["inverse"] = series_json(chi.series());
    }
    if let Some(k) = args.n_series {
        let s = law.n_series(k, law.order())?;
        writeln!(text, "[{k}](u) = {}", s.series()).unwrap();
        result["n_series"] = json!({"n": k, "series": series_json(s.series())});
    }
    Ok((result, text))
}

/// The degrees to list and the Lazard depth they need.
fn ring_plan(args: &RingArgs) -> (Vec<i64>, usize) {
    let degrees = if args.degree.is_empty() {
        (0..=args.t_degree as i64).collect()
    } else {
        args.degree.clone()
    };
    let lowest = degrees.iter().copied().min().unwrap_or(0);
    let depth = (args.t_degree as i64 - lowest).max(args.t_degree as i64).max(0) as usize;
    (degrees, depth)
}

struct Built {
    presentation: RingPresentation<LazardRing>,
    /// For `SL_n`: the relation and the solution for `γ1`.
    eliminated: Option<(GradedSeries<LazardRing>, GradedSeries<LazardRing>)>,
}

pub fn ring(args: &RingArgs, source: &TableSource) -> Result<Output> {
    if args.rank == 0 {
        bail!(cobord_core::Error::InvalidInput("rank must be at least 1".into()));
    }
    let (degrees, depth) = ring_plan(args);
    let table = source.table(depth)?;
    let l = LazardRing::new(table.clone());
    let (n, d) = (args.rank, args.t_degree);
    let built = match args.group {
        Group::Torus => Built {
            presentation: ring_bt(l, n, d, &degrees)?,
            eliminated: None,
        },
        Group::Gl => Built {
            presentation: ring_bgl(l, n, d, &degrees)?.presentation().clone(),
            eliminated: None,
        },
        Group::Sl => {
            let law = FglTable::universal(d.max(1), table.clone())?;
            let sl = ring_bsl(&law, n, d, &degrees)?;
            Built {
                presentation: sl.presentation().clone(),
                eliminated: Some((sl.relation().clone(), sl.elimination().solution().clone())),
            }
        }
    };
    let order = depth as u32 + 1;
    let (result, text) = match args.specialize {
        Theory::Cobordism => render(&built, None::<&SpecializationMap<LazardRing>>)?,
        Theory::Chow => render(&built, Some(&make_specialization(&FglTable::additive(order), table)?))?,
        Theory::Ktheory => render(&built, Some(&make_specialization(&FglTable::multiplicative(order), table)?))?,
    };
    let mut q = query("ring", args);
    q["degree"] = json!(degrees);
    Ok(Output {
        query: q,
        result,
        text,
        success: true,
    })
}

fn render<S: CoeffRing>(built: &Built, map: Option<&SpecializationMap<S>>) -> Result<(Value, String)> {
    fn emit<T: CoeffRing>(
        p: &RingPresentation<T>,
        eliminated: Option<(GradedSeries<T>, GradedSeries<T>)>,
    ) -> (Value, String) {
        let mut result = p.to_json();
        let mut text = p.to_string();
        if let Some((relation, solution)) = eliminated {
            writeln!(text, "eliminated γ1 from {relation} = 0:\n  γ1 = {solution}").unwrap();
            result["eliminated"] = json!({
                "generator": "γ1",
                "relation": series_json(&relation),
                "solution": series_json(&solution),
            });
        }
        (result, text)
    }
    Ok(match map {
        None => emit(&built.presentation, built.eliminated.clone()),
        Some(m) => {
            let p = m.apply_presentation(&built.presentation)?;
            let e = match &built.eliminated {
                Some((r, s)) => Some((m.apply_series(r)?, m.apply_series(s)?)),
                None => None,
            };
            emit(&p, e)
        }
    })
}

pub fn invariants(args: &InvariantArgs, source: &TableSource) -> Result<Output> {
    if args.rank == 0 {
        bail!(cobord_core::Error::InvalidInput("rank must be at least 1".into()));
    }
    let d = args.t_degree;
    let l = LazardRing::new(source.table(d as usize)?);
    let gl = ring_bgl(l.clone(), args.rank, d, &[])?;
    let window = slice_window(d, d as i64);
    let inv = weyl_invariants(&PermutationGroup::symmetric(args.rank), &l, gl.roots(), &window)?;
    let comparison = if args.compare_gl {
        Some(compare_with_gl(&gl, &inv)?)
    } else {
        None
    };

    let mut slices = Vec::new();
    let mut text = format!("{:>8}  {:>8}  {:>7}  {:>9}", "t-degree", "codegree", "ambient", "invariant");
    if comparison.is_some() {
        text.push_str("  image  rational  integral");
    }
    text.push('\n');
    for (k, s) in inv.iter().enumerate() {
        let basis = s.basis_series(&l, gl.roots(), d)?;
        let mut entry = json!({
            "t_degree": s.t_degree,
            "codegree": s.codegree,
            "ambient_rank": s.ambient_rank,
            "rank": s.rank(),
            "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        });
        write!(text, "{:>8}  {:>8}  {:>7}  {:>9}", s.t_degree, s.codegree, s.ambient_rank, s.rank()).unwrap();
        if let Some(cmp) = &comparison {
            let c = &cmp[k];
            entry["image_rank"] = json!(c.image_rank);
            entry["rational_equal"] = json!(c.rational_equal);
            entry["integral_equal"] = json!(c.integral_equal);
            write!(text, "  {:>5}  {:>8}  {:>8}", c.image_rank, c.rational_equal, c.integral_equal).unwrap();
        }
        text.push('\n');
        slices.push(entry);
    }
    let mut result = json!({"rank": args.rank, "t_degree": d, "slices": slices});
    if let Some(cmp) = &comparison {
        result["rational_equal"] = json!(cmp.iter().all(|c| c.rational_equal));
        result["integral_equal"] = json!(cmp.iter().all(|c| c.integral_equal));
    }
    Ok(Output {
        query: query("invariants", args),
        result,
        text,
        success: true,
    })
}

pub fn check(args: &CheckArgs, source: &TableSource) -> Result<Output> {
    let mut config = CheckConfig {
        seed: args.seed,
        samples: args.samples,
        ..CheckConfig::default()
    };
    if !args.only.is_empty() {
        config.criteria = args.only.clone();
    }
    let report = run_checks(&config, Some(source.table(CHECK_DEPTH)?))?;
    let mut text = String::new();
    for c in &report.criteria {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(text, "[{status}] {} {} ({} cases, {} failed)", c.id, c.name, c.cases, c.failed).unwrap();
        for f in &c.failures {
            writeln!(text, "    {f}").unwrap();
        }
        for n in &c.notes {
            writeln!(text, "    note: {n}").unwrap();
        }
    }
    Ok(Output {
        query: query("check", args),
        result: serde_json::to_value(&report)?,
        text,
        success: report.passed,
    })
}
