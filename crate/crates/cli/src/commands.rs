use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};
use superorbit_core::algebra::{parse_rational, AlgebraSpec, Family};
use superorbit_core::characters::check_dim_identity;
use superorbit_core::invariants::{
    self, epsilon, f4_table, g3_table, gamma_table, invariant_report_with, k_formula, verify_label,
    InvariantReport, Oracle, VerificationRow,
};
use superorbit_core::parabolic::{
    find_good_parabolic, find_good_parabolic_q, goodness_checks, induced_numerics, parabolic_from_degrees,
    richardson_orbit, GradedParabolic,
};
use superorbit_core::{Error, OrbitLabel, Partition};

use crate::args::{InducedArgs, OrbitsArgs, ParabolicArgs, TableArgs, TableName, VerifyArgs};
use crate::output::{Report, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    value.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

fn parse_sigma(s: &str) -> Result<AlgebraSpec> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b, c] = parts[..] else {
        return usage(format!("--sigma takes three rationals, got `{s}`"));
    };
    Ok(AlgebraSpec::Gamma { sigma: [parse_rational(a)?, parse_rational(b)?, parse_rational(c)?] })
}

pub fn build_spec(family: Family, m: Option<usize>, n: Option<usize>, sigma: Option<&str>) -> Result<AlgebraSpec> {
    let spec = match family {
        Family::Gl => AlgebraSpec::Gl { m: need(m, "m", family)?, n: need(n, "n", family)? },
        Family::Sl => AlgebraSpec::Sl { m: need(m, "m", family)?, n: need(n, "n", family)? },
        Family::Osp => AlgebraSpec::Osp { m: need(m, "m", family)?, n: need(n, "n", family)? },
        Family::Q => AlgebraSpec::Q { n: need(n, "n", family)? },
        Family::Sq => AlgebraSpec::Sq { n: need(n, "n", family)? },
        Family::P => AlgebraSpec::P { n: need(n, "n", family)? },
        Family::Gamma => match sigma {
            Some(s) => parse_sigma(s)?,
            None => return usage("gamma needs --sigma"),
        },
        Family::G3 => AlgebraSpec::G3,
        Family::F4 => AlgebraSpec::F4,
    };
    spec.validate()?;
    Ok(spec)
}

fn parts(p: &Partition) -> Value {
    json!(p.parts())
}

fn tag_of(label: &OrbitLabel) -> Option<String> {
    match label {
        OrbitLabel::Pair { tag: Some(t), .. } => Some(t.to_string()),
        _ => None,
    }
}

fn oracle_for(spec: &AlgebraSpec) -> Result<Option<Oracle>> {
    Ok(if spec.family().is_realizable() { Some(Oracle::new(spec)?) } else { None })
}

pub fn orbits(a: &OrbitsArgs) -> Result<Report> {
    let spec = build_spec(a.family, a.m, a.n, a.sigma.as_deref())?;
    let mut labels = invariants::labels(&spec)?;
    let mut orderings: Option<Vec<usize>> = None;
    match spec {
        AlgebraSpec::G3 | AlgebraSpec::F4 if a.nu != "all" => {
            let nu: Partition = a.nu.parse()?;
            if nu.weight() != 2 {
                return usage(format!("--nu must be a partition of 2 or `all`, got `{}`", a.nu));
            }
            labels.retain(|l| matches!(l, OrbitLabel::Pair { nu: x, .. } if *x == nu));
        }
        AlgebraSpec::Gamma { .. } => {
            // one row per unordered triple, in table order
            let mut counts: BTreeMap<_, (OrbitLabel, usize)> = BTreeMap::new();
            for l in labels {
                let key = l.gamma_key().expect("gamma labels are triples");
                counts.entry(key).or_insert((l, 0)).1 += 1;
            }
            let mut rows = Vec::new();
            let mut mult = Vec::new();
            for (key, _, _) in gamma_table() {
                let (l, c) = counts.remove(&key).expect("every key occurs");
                rows.push(l);
                mult.push(c);
            }
            labels = rows;
            orderings = Some(mult);
        }
        _ => {}
    }
    let oracle = oracle_for(&spec)?;
    let reports: Vec<InvariantReport> = labels
        .par_iter()
        .map(|l| invariant_report_with(&spec, oracle.as_ref(), l, a.oracle))
        .collect::<std::result::Result<_, _>>()?;

    let mut headers = vec!["label", "k", "ell", "even orbit dim", "superdim", "hypothesis"];
    if a.oracle {
        headers.push("oracle k");
    }
    if orderings.is_some() {
        headers.push("orderings");
    }
    let mut table = Table::new(headers).titled(format!("orbits of {spec}"));
    let mut rows = Vec::new();
    for (i, (label, r)) in labels.iter().zip(&reports).enumerate() {
        let shown = match label.gamma_key() {
            Some([x, y, z]) => OrbitLabel::triple(x, y, z).to_string(),
            None => label.to_string(),
        };
        let mut cells = vec![
            shown.clone(),
            r.k.to_string(),
            r.ell.to_string(),
            r.even_orbit_dim.to_string(),
            format!("({}, {})", r.superdim.0, r.superdim.1),
            if r.outside_hypothesis { "outside" } else { "within" }.to_string(),
        ];
        if a.oracle {
            cells.push(r.oracle_k.map_or("-".into(), |k| k.to_string()));
        }
        let mut row = json!({
            "label": shown,
            "partitions": label.partitions().into_iter().map(parts).collect::<Vec<_>>(),
            "tag": tag_of(label),
            "k": r.k,
            "ell": r.ell,
            "even_orbit_dim": r.even_orbit_dim,
            "superdim": {"even": r.superdim.0, "odd": r.superdim.1, "outside_hypothesis": r.outside_hypothesis},
            "oracle_k": r.oracle_k,
            "agreement": r.agreement,
        });
        if let Some(counts) = &orderings {
            cells.push(counts[i].to_string());
            row["orderings"] = json!(counts[i]);
        }
        table.push(cells);
        rows.push(row);
    }
    let failed = reports.iter().any(|r| !r.agreement);
    Ok(Report {
        json: json!({"command": "orbits", "algebra": spec.to_string(), "family": spec.family(), "rows": rows}),
        tables: vec![table],
        failed,
    })
}

fn sweep_specs(a: &VerifyArgs) -> Result<Vec<AlgebraSpec>> {
    let f = a.family;
    let max_m = || need(a.max_m, "max-m", f);
    let max_n = || need(a.max_n, "max-n", f);
    let specs: Vec<AlgebraSpec> = match f {
        Family::Gl | Family::Sl => {
            let (mm, nn) = (max_m()?, max_n()?);
            (1..=mm)
                .flat_map(|m| {
                    (1..=nn).map(move |n| if f == Family::Gl { AlgebraSpec::Gl { m, n } } else { AlgebraSpec::Sl { m, n } })
                })
                .collect()
        }
        Family::Osp => {
            let (mm, nn) = (max_m()?, max_n()?);
            (1..=mm).flat_map(|m| (2..=nn).step_by(2).map(move |n| AlgebraSpec::Osp { m, n })).collect()
        }
        Family::Q => (3..=max_n()?).map(|n| AlgebraSpec::Q { n }).collect(),
        Family::Sq => (3..=max_n()?).map(|n| AlgebraSpec::Sq { n }).collect(),
        Family::P => (1..=max_n()?).map(|n| AlgebraSpec::P { n }).collect(),
        Family::Gamma => {
            if a.sigma.is_empty() {
                return usage("gamma needs at least one --sigma");
            }
            a.sigma.iter().map(|s| parse_sigma(s)).collect::<Result<_>>()?
        }
        Family::G3 | Family::F4 => {
            return usage(format!("{f} has no matrix realization to verify against"));
        }
    };
    if specs.is_empty() {
        return usage("the requested range contains no algebras");
    }
    for s in &specs {
        s.validate()?;
    }
    Ok(specs)
}

pub fn verify(a: &VerifyArgs) -> Result<Report> {
    if a.resolve_interpretation && a.family != Family::P {
        return usage("--resolve-interpretation applies to p only");
    }
    let specs = sweep_specs(a)?;
    let oracles: Vec<Oracle> = specs.par_iter().map(Oracle::new).collect::<std::result::Result<_, _>>()?;
    let mut items = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        for label in invariants::labels(spec)? {
            items.push((i, label));
        }
    }
    let rows: Vec<VerificationRow> = items
        .par_iter()
        .map(|(i, l)| verify_label(&oracles[*i], l))
        .collect::<std::result::Result<_, _>>()?;

    let disagreements = rows.iter().filter(|r| !r.agree).count();
    let mut failed = disagreements > 0;
    let mut main = Table::new(["family", "params", "label", "k formula", "k oracle", "agree"])
        .titled(format!("verify {}: {} labels, {} disagreements", a.family, rows.len(), disagreements));
    for r in &rows {
        main.push([
            r.family.to_string(),
            r.params.clone(),
            r.label.clone(),
            r.k_formula.to_string(),
            r.k_oracle.to_string(),
            r.agree.to_string(),
        ]);
    }
    let mut doc = json!({
        "command": "verify",
        "family": a.family,
        "rows": rows,
        "total": rows.len(),
        "disagreements": disagreements,
        "all_agree": disagreements == 0,
    });
    let mut tables = vec![main];

    if a.family == Family::Sq {
        let (json_rows, table, ok) = sq_relation(&specs, &items, &rows)?;
        failed |= !ok;
        doc["relation"] = json!(json_rows);
        tables.push(table);
    }
    if a.resolve_interpretation {
        let (convention, table) = p_convention(&specs, &items, &rows);
        failed |= convention["resolved"].is_null();
        doc["convention"] = convention;
        tables.push(table);
    }
    Ok(Report { json: doc, tables, failed })
}

/// Checks the oracle value on `sq(n)` against the oracle on `q(n)` minus `2ε(μ)`.
fn sq_relation(
    specs: &[AlgebraSpec],
    items: &[(usize, OrbitLabel)],
    rows: &[VerificationRow],
) -> Result<(Vec<Value>, Table, bool)> {
    let q: Vec<Oracle> = specs
        .par_iter()
        .map(|s| match s {
            AlgebraSpec::Sq { n } => Oracle::new(&AlgebraSpec::Q { n: *n }),
            _ => unreachable!("sq sweep"),
        })
        .collect::<std::result::Result<_, _>>()?;
    let k_q: Vec<usize> =
        items.par_iter().map(|(i, l)| q[*i].k(l)).collect::<std::result::Result<_, _>>()?;
    let mut table =
        Table::new(["params", "label", "k in q", "epsilon", "k in sq", "holds"]).titled("k' = k - 2 epsilon(mu)");
    let mut out = Vec::new();
    let mut ok = true;
    for (((_, label), row), kq) in items.iter().zip(rows).zip(k_q) {
        let OrbitLabel::Single { mu } = label else { unreachable!("q labels are single") };
        let eps = epsilon(mu);
        let holds = row.k_oracle + 2 * eps == kq;
        ok &= holds;
        table.push([row.params.clone(), row.label.clone(), kq.to_string(), eps.to_string(), row.k_oracle.to_string(), holds.to_string()]);
        out.push(json!({"params": row.params, "label": row.label, "k_q": kq, "epsilon": eps, "k_sq": row.k_oracle, "holds": holds}));
    }
    Ok((out, table, ok))
}

const P_CANDIDATES: [&str; 2] = ["n^2 - sum mu'_i^2", "(n+1)^2 - sum mu'_i^2"];

/// Scores each candidate reading of the `p(n)` formula against the oracle,
/// over labels `μ ⊢ n+1`.
fn p_convention(specs: &[AlgebraSpec], items: &[(usize, OrbitLabel)], rows: &[VerificationRow]) -> (Value, Table) {
    let mut matches = [0usize; 2];
    for ((i, label), row) in items.iter().zip(rows) {
        let (AlgebraSpec::P { n }, OrbitLabel::Single { mu }) = (&specs[*i], label) else {
            unreachable!("p sweep")
        };
        let sq = mu.sum_of_squared_duals() as i64;
        let n = *n as i64;
        for (c, value) in [n * n - sq, (n + 1) * (n + 1) - sq].into_iter().enumerate() {
            if value == row.k_oracle as i64 {
                matches[c] += 1;
            }
        }
    }
    let total = rows.len();
    let resolved = P_CANDIDATES.iter().zip(matches).find(|(_, m)| *m == total).map(|(c, _)| *c);
    let mut table = Table::new(["candidate", "matches", "total"])
        .titled(format!("p(n) convention: labels are partitions of n+1; resolved: {}", resolved.unwrap_or("none")));
    for (c, m) in P_CANDIDATES.iter().zip(matches) {
        table.push([c.to_string(), m.to_string(), total.to_string()]);
    }
    let doc = json!({
        "label_weight": "n+1",
        "candidates": P_CANDIDATES.iter().zip(matches).map(|(c, m)| json!({"formula": c, "matches": m, "total": total})).collect::<Vec<_>>(),
        "resolved": resolved,
    });
    (doc, table)
}

fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad degree `{t}`"))))
        .collect()
}

/// Splits `(3,1),(2,1)` or `3,1;2,1` into its two partitions.
fn parse_target_pair(s: &str) -> Result<(Partition, Partition)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (a, b) = match s.split_once(';') {
        Some(ab) => ab,
        None => match s.split_once("),(") {
            Some((a, b)) => (a, b),
            None => return usage(format!("--find expects `(mu),(nu)`, got `{s}`")),
        },
    };
    Ok((a.parse()?, b.parse()?))
}

pub fn build_parabolic(a: &ParabolicArgs) -> Result<GradedParabolic> {
    match (a.family, &a.degrees, &a.find) {
        (Family::Gl | Family::Q | Family::Sq, Some(d), _) => {
            let spec = build_spec(a.family, a.m, a.n, None)?;
            Ok(parabolic_from_degrees(&spec, &parse_degrees(d)?)?)
        }
        (Family::Gl, None, Some(target)) => {
            let (mu, nu) = parse_target_pair(target)?;
            if a.m.is_some_and(|m| m != mu.weight()) || a.n.is_some_and(|n| n != nu.weight()) {
                return usage(format!("target ({mu}),({nu}) does not fit the given --m/--n"));
            }
            Ok(find_good_parabolic(&mu, &nu)?)
        }
        (Family::Q | Family::Sq, None, Some(target)) => {
            let mu: Partition = target.parse()?;
            if a.n.is_some_and(|n| n != mu.weight()) {
                return usage(format!("target ({mu}) does not fit --n"));
            }
            let spec = build_spec(a.family, None, Some(mu.weight()), None)?;
            Ok(find_good_parabolic_q(&spec, &mu)?)
        }
        (Family::Gl | Family::Q | Family::Sq, None, None) => usage("give --degrees or --find"),
        (f, _, _) => usage(format!("graded parabolics are available for gl, q and sq, not {f}")),
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parabolic_doc(p: &GradedParabolic) -> Result<(Value, Table)> {
    let orbit = richardson_orbit(p);
    let k = k_formula(p.spec(), &orbit)?;
    let ell = invariants::ell(k);
    let checks = goodness_checks(p);
    let levi: Vec<String> = p.levi().iter().map(|(r, s)| format!("gl({r},{s})")).collect();
    let doc = json!({
        "algebra": p.spec().to_string(),
        "degrees": p.degrees,
        "r": p.r,
        "s": p.s,
        "levi": p.levi(),
        "richardson": orbit.to_string(),
        "richardson_partitions": orbit.partitions().into_iter().map(parts).collect::<Vec<_>>(),
        "goodness": {"permutation": checks.permutation, "sum": checks.sum, "definition": checks.definition},
        "good": checks.permutation,
        "c0": p.c0,
        "c1": p.c1,
        "k": k,
        "ell": ell,
    });
    let mut t = Table::new(["field", "value"]).titled(format!("graded parabolic of {}", p.spec()));
    let verdict = if checks.permutation { "good" } else { "not good" };
    for (f, v) in [
        ("degrees", list(&p.degrees)),
        ("r", list(&p.r)),
        ("s", list(&p.s)),
        ("levi", levi.join(" + ")),
        ("richardson orbit", orbit.to_string()),
        ("verdict", verdict.to_string()),
        ("permutation criterion", checks.permutation.to_string()),
        ("sum criterion", checks.sum.to_string()),
        ("c1 = ell", checks.definition.to_string()),
        ("c0", p.c0.to_string()),
        ("c1", p.c1.to_string()),
        ("k", k.to_string()),
        ("ell", ell.to_string()),
    ] {
        t.push([f.to_string(), v]);
    }
    Ok((doc, t))
}

pub fn parabolic(a: &ParabolicArgs) -> Result<Report> {
    let p = build_parabolic(a)?;
    let (mut doc, table) = parabolic_doc(&p)?;
    doc["command"] = json!("parabolic");
    let failed = !goodness_checks(&p).consistent();
    Ok(Report { json: doc, tables: vec![table], failed })
}

pub fn induced(a: &InducedArgs) -> Result<Report> {
    let p = build_parabolic(&a.parabolic)?;
    let (mut doc, mut head) = parabolic_doc(&p)?;
    let num = induced_numerics(&p, a.dim_lt)?;
    doc["command"] = json!("induced");
    doc["dim_lt"] = json!(a.dim_lt);
    doc["numerics"] = json!(num);
    doc["exceeds_bound"] = json!(num.e > num.bound);
    for (f, v) in [
        ("dim L_T", a.dim_lt.to_string()),
        ("d", num.d.to_string()),
        ("e", num.e.to_string()),
        ("goldie rank", num.goldie.to_string()),
        ("bound 2^ell dim L_T", num.bound.to_string()),
        ("exceeds bound", (num.e > num.bound).to_string()),
    ] {
        head.push([f.to_string(), v]);
    }
    let mut failed = num.good && num.e != num.bound;
    let mut tables = vec![head];
    if matches!(p.spec(), AlgebraSpec::Gl { .. }) && a.dim_lt == 1 {
        let dim = check_dim_identity(&p)?;
        failed |= !dim.holds;
        let mut t = Table::new(["lambda", "dim", "multiplicity"])
            .titled(format!("dimension identity: {} = 2^{} is {}", dim.total, p.c1, dim.holds));
        for s in &dim.summands {
            t.push([s.lambda.to_string(), s.dim.to_string(), s.multiplicity.to_string()]);
        }
        doc["dim_identity"] = json!(dim);
        tables.push(t);
    } else {
        doc["dim_identity"] = Value::Null;
    }
    Ok(Report { json: doc, tables, failed })
}

const G3_BALA_CARTER: [&str; 5] = ["0", "A1", "~A1", "G2(a1)", "G2"];

pub fn table(a: &TableArgs) -> Result<Report> {
    let (one, two) = (Partition::ones(2), Partition::single(2));
    let k_of = |spec: &AlgebraSpec, mu: &Partition, nu: &Partition| {
        k_formula(spec, &OrbitLabel::pair(mu.clone(), nu.clone())).map_err(CliError::from)
    };
    let (t, rows) = match a.name {
        TableName::G3 => {
            let rows = g3_table();
            let spec = AlgebraSpec::G3;
            let mut t = Table::new(std::iter::once("O = O_mu").chain(G3_BALA_CARTER));
            t.push(std::iter::once("mu".to_string()).chain(rows.iter().map(|r| r.mu.to_string())));
            t.push(std::iter::once("dim O".to_string()).chain(rows.iter().map(|r| r.dim.to_string())));
            let mut json_rows = Vec::new();
            for nu in [&one, &two] {
                let ks = rows.iter().map(|r| k_of(&spec, &r.mu, nu)).collect::<Result<Vec<_>>>()?;
                t.push(std::iter::once(format!("k, nu = {nu}")).chain(ks.iter().map(ToString::to_string)));
            }
            for (r, bc) in rows.iter().zip(G3_BALA_CARTER) {
                json_rows.push(json!({
                    "bala_carter": bc,
                    "mu": r.mu.to_string(),
                    "dim": r.dim,
                    "k": {"1^2": k_of(&spec, &r.mu, &one)?, "2": k_of(&spec, &r.mu, &two)?},
                }));
            }
            (t, json_rows)
        }
        TableName::F4 => {
            let rows = f4_table();
            let spec = AlgebraSpec::F4;
            let eta = |r: &invariants::ExceptionalRow| r.eta.as_ref().expect("f4 rows carry eta").to_string();
            let mut t = Table::new(std::iter::once("eta".to_string()).chain(rows.iter().map(eta)));
            t.push(std::iter::once("mu = sigma(eta)".to_string()).chain(rows.iter().map(|r| r.mu.to_string())));
            t.push(std::iter::once("dim O_mu".to_string()).chain(rows.iter().map(|r| r.dim.to_string())));
            for nu in [&one, &two] {
                let ks = rows.iter().map(|r| k_of(&spec, &r.mu, nu)).collect::<Result<Vec<_>>>()?;
                t.push(std::iter::once(format!("k, nu = {nu}")).chain(ks.iter().map(ToString::to_string)));
            }
            let mut json_rows = Vec::new();
            for r in &rows {
                json_rows.push(json!({
                    "eta": eta(r),
                    "mu": r.mu.to_string(),
                    "dim": r.dim,
                    "k": {"1^2": k_of(&spec, &r.mu, &one)?, "2": k_of(&spec, &r.mu, &two)?},
                }));
            }
            (t, json_rows)
        }
        TableName::Gamma => {
            let rows = gamma_table();
            let key = |k: &[Partition; 3]| format!("{{{},{},{}}}", k[0], k[1], k[2]);
            let mut t = Table::new(std::iter::once("{mu,nu,eta}".to_string()).chain(rows.iter().map(|r| key(&r.0))));
            t.push(std::iter::once("dim O".to_string()).chain(rows.iter().map(|r| r.1.to_string())));
            t.push(std::iter::once("k(O)".to_string()).chain(rows.iter().map(|r| r.2.to_string())));
            let json_rows = rows.iter().map(|r| json!({"key": key(&r.0), "dim": r.1, "k": r.2})).collect();
            (t, json_rows)
        }
    };
    let name = match a.name {
        TableName::G3 => "g3",
        TableName::F4 => "f4",
        TableName::Gamma => "gamma",
    };
    Ok(Report { json: json!({"command": "table", "name": name, "rows": rows}), tables: vec![t], failed: false })
}

