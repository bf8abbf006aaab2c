use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::output::{bilinear_str, grid, linearized_str, to_csv, to_json, AuditRow, TableRow};
use super::{parse_m_list, Command, Context, Family, Format, KPolicy, SpectrumSource, TaniguchiArgs};
use super::{EXIT_FAILURE, EXIT_NEGATIVE, EXIT_OK};
use crate::counting::{
    b_orbits, capital_m, capital_n, oracle_b_in, oracle_capital_n_in, reports_to_csv, CountReport, MAX_COUNT_DEGREE,
    MAX_ORACLE_DEGREE,
};
use crate::diffanalysis::{differential_spectrum, DifferentialSpectrum, VectorialFunction};
use crate::equivalence::{
    aut_orders, canonicalize, count_monomial_el_automorphisms, enumerate_classes, equivalence_witness,
    pott_zhou_bridge_witness, verify_witness, CanonicalTriple, ClassEntry, LinearWitness, MAX_VERIFY_DIMENSION,
};
use crate::error::{Error, Result};
use crate::families::{
    gold, pott_zhou, read_manifest, read_truth_table, taniguchi, write_truth_table, BivariateFunction,
    GeneratingParams, GoldFunction, PottZhouParams, TaniguchiParams,
};
use crate::gf2m::{gcd, FieldCtx, FieldElement};
use crate::poly_roots::{frobenius_orbits, phi_set, Orbit};

pub(super) fn dispatch(cmd: Command, cx: &mut Context) -> Result<i32> {
    match cmd {
        Command::Table { m, full } => table(cx, &m, full),
        Command::Audit { m_max, k_policy } => audit(cx, m_max, k_policy),
        Command::CheckApn { family, exhaustive } => check_apn(cx, family, exhaustive),
        Command::EnumerateBeta { m, k } => enumerate_beta(cx, m, k),
        Command::Spectrum { source, save_table } => spectrum(cx, source, save_table),
        Command::Classes { m, k } => classes(cx, m, k),
        Command::Witness {
            from,
            to,
            pott_zhou,
            no_verify,
        } => witness(cx, &from, to.as_deref(), pott_zhou, !no_verify),
        Command::Aut { params, oracle } => aut(cx, &params, oracle),
    }
}

fn emit(cx: &mut Context, text: &str) -> Result<()> {
    cx.out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        cx.out.write_all(b"\n")?;
    }
    Ok(())
}

fn taniguchi_params(a: &TaniguchiArgs) -> Result<TaniguchiParams> {
    TaniguchiParams::new(a.m, a.k, a.alpha, a.beta)
}

fn coprime_ks(m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|&k| gcd(u64::from(k), u64::from(m)) == 1).collect()
}

fn table(cx: &mut Context, list: &str, full: bool) -> Result<i32> {
    let ms = parse_m_list(list)?;
    if let Some(&m) = ms.iter().find(|&&m| !(2..=MAX_COUNT_DEGREE).contains(&m)) {
        return Err(Error::InvalidParams(format!(
            "table needs 2 <= m <= {MAX_COUNT_DEGREE}, got {m}"
        )));
    }
    let reports: Vec<CountReport> = ms.into_iter().map(CountReport::compute).collect::<Result<_>>()?;
    let text = match (cx.format, full) {
        (Format::Json, true) => to_json(&reports),
        (Format::Json, false) => to_json(&reports.iter().map(TableRow::from).collect::<Vec<_>>()),
        (Format::Csv, true) => reports_to_csv(&reports)?,
        (Format::Csv, false) => to_csv(&reports.iter().map(TableRow::from).collect::<Vec<_>>())?,
        (Format::Pretty, _) => {
            let mut labels = vec!["m", "#", "bound"];
            if full {
                labels.extend(["M", "N", "b", "eps"]);
            }
            let columns: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let mut c = vec![r.m.to_string(), r.n_taniguchi.to_string(), r.lower_bound.to_string()];
                    if full {
                        c.extend([
                            r.capital_m.to_string(),
                            r.capital_n.to_string(),
                            r.b.to_string(),
                            r.epsilon.to_string(),
                        ]);
                    }
                    c
                })
                .collect();
            grid(&labels, &columns, 15)
        }
    };
    emit(cx, &text)?;
    Ok(EXIT_OK)
}

fn audit_ks(m: u32, policy: KPolicy, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let all = coprime_ks(m);
    match policy {
        KPolicy::All => all,
        KPolicy::Default => {
            let mut ks = vec![1];
            if let Some(&k) = all.iter().filter(|&&k| k > 1 && 2 * k < m).max() {
                ks.push(k);
            }
            ks
        }
        KPolicy::Random => {
            let mut ks: Vec<u32> = all.choose_multiple(rng, 2).copied().collect();
            ks.sort_unstable();
            ks
        }
    }
}

/// Formula-versus-oracle comparison for one m.
pub fn audit_row(m: u32, ks: &[u32], ctx: &FieldCtx) -> Result<AuditRow> {
    let (cm, cn, b) = (capital_m(m)?, capital_n(m)?, b_orbits(m)?);
    let mut mismatches = Vec::new();
    for &k in ks {
        let k64 = i64::from(k);
        let size = phi_set(k64, ctx)?.len() as u128;
        if size != cm {
            mismatches.push(format!("k={k} M: formula {cm}, |Phi| {size}"));
        }
        let on = oracle_capital_n_in(k64, ctx)?;
        if on != cn {
            mismatches.push(format!("k={k} N: formula {cn}, oracle {on}"));
        }
        let ob = oracle_b_in(k64, ctx)?;
        if ob != b {
            mismatches.push(format!("k={k} b: formula {b}, oracle {ob}"));
        }
    }
    Ok(AuditRow {
        m,
        ks: ks.to_vec(),
        capital_m: cm,
        capital_n: cn,
        b,
        pass: mismatches.is_empty(),
        mismatches,
    })
}

fn audit(cx: &mut Context, m_max: u32, policy: KPolicy) -> Result<i32> {
    if !(1..=MAX_ORACLE_DEGREE).contains(&m_max) {
        return Err(Error::InvalidParams(format!(
            "audit needs 1 <= m-max <= {MAX_ORACLE_DEGREE}, got {m_max}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cx.seed);
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let ks = audit_ks(m, policy, &mut rng);
        let ctx = cx.moduli.field(m)?;
        let row = audit_row(m, &ks, &ctx)?;
        if cx.format == Format::Pretty {
            emit(cx, &row.line())?;
        }
        rows.push(row);
    }
    match cx.format {
        Format::Json => emit(cx, &to_json(&rows))?,
        Format::Csv => emit(cx, &AuditRow::to_csv(&rows)?)?,
        Format::Pretty => {}
    }
    Ok(if rows.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

enum Built {
    Bivariate(BivariateFunction),
    Gold(GoldFunction),
}

impl Built {
    fn describe(&self) -> String {
        match self {
            Built::Bivariate(f) => {
                let m = f.ctx().degree();
                match f.kind() {
                    crate::families::FunctionKind::Taniguchi(p) => {
                        format!("taniguchi m={m} k={} alpha={} beta={}", p.k, p.alpha, p.beta)
                    }
                    crate::families::FunctionKind::PottZhou(p) => {
                        format!("pott-zhou m={m} k={} s={} alpha={}", p.k, p.s, p.alpha)
                    }
                    crate::families::FunctionKind::TruthTable(_) => format!("table m={m}"),
                }
            }
            Built::Gold(g) => format!("gold n={} i={}", g.ctx().degree(), g.i()),
        }
    }

    fn dimension(&self) -> u32 {
        match self {
            Built::Bivariate(f) => f.dimension(),
            Built::Gold(g) => g.ctx().degree(),
        }
    }

    fn criterion(&self) -> Result<Option<bool>> {
        match self {
            Built::Bivariate(f) => f.criterion_apn().transpose(),
            // constructed only with gcd(i, n) = 1
            Built::Gold(_) => Ok(Some(true)),
        }
    }

    fn spectrum(&self) -> Result<DifferentialSpectrum> {
        match self {
            Built::Bivariate(f) => differential_spectrum(f),
            Built::Gold(g) => differential_spectrum(g),
        }
    }

    fn lookup(&self) -> &dyn VectorialFunction {
        match self {
            Built::Bivariate(f) => f,
            Built::Gold(g) => g,
        }
    }
}

fn build(cx: &Context, family: &Family) -> Result<Built> {
    Ok(match family {
        Family::Taniguchi(a) => {
            let ctx = cx.moduli.field(a.m)?;
            Built::Bivariate(taniguchi(taniguchi_params(a)?, &ctx)?)
        }
        Family::PottZhou(a) => {
            let ctx = cx.moduli.field(a.m)?;
            Built::Bivariate(pott_zhou(PottZhouParams::new(a.m, a.k, a.s, a.alpha)?, &ctx)?)
        }
        Family::Gold(a) => {
            let ctx = cx.moduli.field(a.n)?;
            Built::Gold(gold(a.n, a.i, &ctx)?)
        }
    })
}

#[derive(Serialize)]
struct ApnReport {
    function: String,
    dimension: u32,
    criterion_apn: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    scan_apn: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum: Option<DifferentialSpectrum>,
}

#[derive(Serialize)]
struct ApnCsvRow {
    function: String,
    dimension: u32,
    criterion_apn: bool,
    scan_apn: Option<bool>,
    uniformity: Option<u64>,
}

fn verdict(apn: bool) -> &'static str {
    if apn {
        "APN"
    } else {
        "NOT APN"
    }
}

fn histogram_str(s: &DifferentialSpectrum) -> String {
    s.histogram
        .iter()
        .map(|(c, f)| format!("{c}:{f}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_apn(cx: &mut Context, family: Family, exhaustive: bool) -> Result<i32> {
    let f = build(cx, &family)?;
    let criterion = f.criterion()?.expect("family members always have a criterion");
    let spectrum = if exhaustive { Some(f.spectrum()?) } else { None };
    let scan = spectrum.as_ref().map(DifferentialSpectrum::is_apn);
    let report = ApnReport {
        function: f.describe(),
        dimension: f.dimension(),
        criterion_apn: criterion,
        scan_apn: scan,
        spectrum,
    };
    let text = match cx.format {
        Format::Json => to_json(&report),
        Format::Csv => to_csv(&[ApnCsvRow {
            function: report.function.clone(),
            dimension: report.dimension,
            criterion_apn: criterion,
            scan_apn: scan,
            uniformity: report.spectrum.as_ref().map(|s| s.uniformity),
        }])?,
        Format::Pretty => {
            let mut t = format!("{}\ncriterion: {}\n", report.function, verdict(criterion));
            if let Some(s) = &report.spectrum {
                t.push_str(&format!(
                    "scan: {} (uniformity {})\nspectrum: {}\n",
                    verdict(s.is_apn()),
                    s.uniformity,
                    histogram_str(s)
                ));
                if s.is_apn() != criterion {
                    t.push_str("MISMATCH between criterion and scan\n");
                }
            }
            t
        }
    };
    emit(cx, &text)?;
    Ok(match scan {
        Some(s) if s != criterion => EXIT_FAILURE,
        Some(true) => EXIT_OK,
        Some(false) => EXIT_NEGATIVE,
        None if criterion => EXIT_OK,
        None => EXIT_NEGATIVE,
    })
}

#[derive(Serialize)]
struct BetaReport {
    m: u32,
    k: u32,
    modulus: String,
    size: usize,
    betas: Vec<FieldElement>,
    orbits: Vec<Orbit>,
}

#[derive(Serialize)]
struct BetaCsvRow {
    beta: FieldElement,
    representative: FieldElement,
    length: u32,
}

fn enumerate_beta(cx: &mut Context, m: u32, k: u32) -> Result<i32> {
    let ctx = cx.moduli.field(m)?;
    let set = phi_set(i64::from(k), &ctx)?;
    let orbits = frobenius_orbits(set.elements(), &ctx)?;
    let report = BetaReport {
        m,
        k,
        modulus: format!("{:#x}", ctx.modulus()),
        size: set.len(),
        betas: set.elements().to_vec(),
        orbits: orbits.orbits.clone(),
    };
    let text = match cx.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut rows: Vec<BetaCsvRow> = Vec::new();
            for o in &report.orbits {
                for b in ctx.frobenius_orbit(o.representative) {
                    rows.push(BetaCsvRow {
                        beta: b,
                        representative: o.representative,
                        length: o.length,
                    });
                }
            }
            rows.sort_by_key(|r| r.beta);
            to_csv(&rows)?
        }
        Format::Pretty => {
            let mut t = format!(
                "m={m} k={k} modulus {}\n{} admissible beta in {} Frobenius orbits\n",
                report.modulus,
                report.size,
                report.orbits.len()
            );
            for o in &report.orbits {
                let members: Vec<String> = ctx
                    .frobenius_orbit(o.representative)
                    .iter()
                    .map(|b| b.to_string())
                    .collect();
                t.push_str(&format!("length {:>2}: {}\n", o.length, members.join(" ")));
            }
            t
        }
    };
    emit(cx, &text)?;
    Ok(EXIT_OK)
}

fn manifest_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn spectrum(cx: &mut Context, source: SpectrumSource, save: Option<PathBuf>) -> Result<i32> {
    let f = match source {
        SpectrumSource::Taniguchi(a) => build(cx, &Family::Taniguchi(a))?,
        SpectrumSource::PottZhou(a) => build(cx, &Family::PottZhou(a))?,
        SpectrumSource::Gold(a) => build(cx, &Family::Gold(a))?,
        SpectrumSource::Table { path, manifest } => {
            let mpath = manifest.unwrap_or_else(|| manifest_path(&path));
            let manifest = read_manifest(BufReader::new(File::open(&mpath)?))?;
            let ctx = manifest.field()?;
            let (_, table) = read_truth_table(&mut BufReader::new(File::open(&path)?), &ctx)?;
            Built::Bivariate(table)
        }
    };
    if let Some(path) = save {
        let Built::Bivariate(bf) = &f else {
            return Err(Error::InvalidParams("--save-table needs a bivariate function".into()));
        };
        let mut w = BufWriter::new(File::create(&path)?);
        let manifest = write_truth_table(bf, &mut w)?;
        w.flush()?;
        std::fs::write(manifest_path(&path), to_json(&manifest))?;
    }
    // validates the table size before the scan
    f.lookup().lookup_table()?;
    let s = f.spectrum()?;
    let text = match cx.format {
        Format::Json => s.to_json(),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                count: u64,
                pairs: u64,
            }
            let rows: Vec<Row> = s
                .histogram
                .iter()
                .map(|(&count, &pairs)| Row { count, pairs })
                .collect();
            to_csv(&rows)?
        }
        Format::Pretty => format!(
            "{}\nn={} uniformity={} ({})\nspectrum: {}\n",
            f.describe(),
            s.n,
            s.uniformity,
            verdict(s.is_apn()),
            histogram_str(&s)
        ),
    };
    emit(cx, &text)?;
    Ok(EXIT_OK)
}

fn classes(cx: &mut Context, m: u32, k: Option<u32>) -> Result<i32> {
    let ctx = cx.moduli.field(m)?;
    let list: Vec<ClassEntry> = enumerate_classes(&ctx, k)?;
    let text = match cx.format {
        Format::Json => to_json(&list),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                k_star: u32,
                alpha_star: FieldElement,
                beta_star: FieldElement,
                members: u64,
            }
            let rows: Vec<Row> = list
                .iter()
                .map(|c| Row {
                    k_star: c.triple.k_star,
                    alpha_star: c.triple.alpha_star,
                    beta_star: c.triple.beta_star,
                    members: c.members,
                })
                .collect();
            to_csv(&rows)?
        }
        Format::Pretty => {
            let mut t = String::from("k*  alpha*  beta*  members\n");
            for c in &list {
                let beta = if c.triple.alpha_star.is_zero() {
                    "-".to_string()
                } else {
                    c.triple.beta_star.to_string()
                };
                t.push_str(&format!(
                    "{:>2}  {:>6}  {:>5}  {:>7}\n",
                    c.triple.k_star, c.triple.alpha_star, beta, c.members
                ));
            }
            t.push_str(&format!("{} classes\n", list.len()));
            t
        }
    };
    emit(cx, &text)?;
    Ok(EXIT_OK)
}

fn parse_params(s: &str) -> Result<TaniguchiParams> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [m, k, a, b] = parts[..] else {
        return Err(Error::Parse(format!("expected m,k,alpha,beta, got {s:?}")));
    };
    let num = |x: &str| {
        x.parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad integer {x:?} in {s:?}")))
    };
    TaniguchiParams::new(
        num(m)?,
        num(k)?,
        FieldElement::parse_hex(a)?,
        FieldElement::parse_hex(b)?,
    )
}

#[derive(Serialize)]
struct WitnessReport {
    from: TaniguchiParams,
    to: GeneratingParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    from_class: Option<CanonicalTriple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    to_class: Option<CanonicalTriple>,
    equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<LinearWitness>,
    verified: Option<bool>,
}

fn witness(cx: &mut Context, from: &str, to: Option<&str>, bridge: bool, verify: bool) -> Result<i32> {
    let p1 = parse_params(from)?;
    let ctx = cx.moduli.field(p1.m)?;
    let f = taniguchi(p1, &ctx)?;
    let (target, g, w, classes) = if bridge {
        let (gp, w) = pott_zhou_bridge_witness(&p1, &ctx)?;
        (GeneratingParams::PottZhou(gp), pott_zhou(gp, &ctx)?, Some(w), None)
    } else {
        let p2 = parse_params(to.expect("clap requires --to without --pott-zhou"))?;
        if p2.m != p1.m {
            return Err(Error::DegreeMismatch(p1.m, p2.m));
        }
        let w = equivalence_witness(&p1, &p2, &ctx)?;
        let classes = (canonicalize(&p1, &ctx)?, canonicalize(&p2, &ctx)?);
        (GeneratingParams::Taniguchi(p2), taniguchi(p2, &ctx)?, w, Some(classes))
    };
    let verified = match &w {
        Some(w) if verify => {
            if 2 * p1.m <= MAX_VERIFY_DIMENSION {
                Some(verify_witness(w, &f, &g)?)
            } else {
                writeln!(
                    cx.err,
                    "note: exhaustive verification skipped (2m = {} > {MAX_VERIFY_DIMENSION})",
                    2 * p1.m
                )?;
                None
            }
        }
        _ => None,
    };
    let report = WitnessReport {
        from: p1,
        to: target,
        from_class: classes.map(|c| c.0),
        to_class: classes.map(|c| c.1),
        equivalent: w.is_some(),
        witness: w,
        verified,
    };
    let text = match cx.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                equivalent: bool,
                verified: Option<bool>,
                witness: String,
            }
            to_csv(&[Row {
                equivalent: report.equivalent,
                verified,
                witness: report.witness.as_ref().map(LinearWitness::to_json).unwrap_or_default(),
            }])?
        }
        Format::Pretty => {
            let mut t = String::new();
            if let GeneratingParams::PottZhou(g) = &report.to {
                t.push_str(&format!(
                    "to pott-zhou m={} k={} s={} alpha={}\n",
                    g.m, g.k, g.s, g.alpha
                ));
            }
            if let Some((c1, c2)) = classes {
                t.push_str(&format!(
                    "from class (k*={}, alpha*={}, beta*={})\nto class   (k*={}, alpha*={}, beta*={})\n",
                    c1.k_star, c1.alpha_star, c1.beta_star, c2.k_star, c2.alpha_star, c2.beta_star
                ));
            }
            match &report.witness {
                None => t.push_str("not equivalent\n"),
                Some(w) => {
                    t.push_str(&format!("L_A = {}\n", bilinear_str(&w.l_a.x, &w.l_a.y)));
                    t.push_str(&format!("L_B = {}\n", bilinear_str(&w.l_b.x, &w.l_b.y)));
                    for (name, p) in [("N1", &w.n1), ("N2", &w.n2), ("N3", &w.n3), ("N4", &w.n4)] {
                        t.push_str(&format!("{name}  = {}\n", linearized_str(p, "X")));
                    }
                    t.push_str(&format!("M_A = {}\n", bilinear_str(&w.m_a.x, &w.m_a.y)));
                    t.push_str(&format!("M_B = {}\n", bilinear_str(&w.m_b.x, &w.m_b.y)));
                    t.push_str(match verified {
                        Some(true) => "verified: yes\n",
                        Some(false) => "verified: NO\n",
                        None => "verified: not checked\n",
                    });
                }
            }
            t
        }
    };
    emit(cx, &text)?;
    Ok(match (report.equivalent, verified) {
        (false, _) => EXIT_NEGATIVE,
        (true, Some(false)) => EXIT_FAILURE,
        _ => EXIT_OK,
    })
}

#[derive(Serialize)]
struct AutReport {
    params: TaniguchiParams,
    aut_el: u128,
    aut_ea: u128,
    aut: u128,
    hard_coded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_aut_el: Option<u128>,
}

fn aut(cx: &mut Context, args: &TaniguchiArgs, oracle: bool) -> Result<i32> {
    let p = taniguchi_params(args)?;
    let ctx = cx.moduli.field(p.m)?;
    let orders = aut_orders(&p, &ctx)?;
    let oracle_aut_el = if oracle {
        Some(count_monomial_el_automorphisms(&p, &ctx)?)
    } else {
        None
    };
    let report = AutReport {
        params: p,
        aut_el: orders.aut_el,
        aut_ea: orders.aut_ea,
        aut: orders.aut,
        hard_coded: orders.hard_coded,
        oracle_aut_el,
    };
    let text = match cx.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                m: u32,
                k: u32,
                alpha: FieldElement,
                beta: FieldElement,
                aut_el: u128,
                aut_ea: u128,
                aut: u128,
                hard_coded: bool,
                oracle_aut_el: Option<u128>,
            }
            to_csv(&[Row {
                m: p.m,
                k: p.k,
                alpha: p.alpha,
                beta: p.beta,
                aut_el: orders.aut_el,
                aut_ea: orders.aut_ea,
                aut: orders.aut,
                hard_coded: orders.hard_coded,
                oracle_aut_el,
            }])?
        }
        Format::Pretty => {
            let mut t = format!(
                "aut_el {}\naut_ea {}\naut    {}\n",
                orders.aut_el, orders.aut_ea, orders.aut
            );
            if orders.hard_coded {
                t.push_str(&format!("(known constant for m = {})\n", p.m));
            }
            if let Some(o) = oracle_aut_el {
                let agree = if o == orders.aut_el { "agrees" } else { "DISAGREES" };
                t.push_str(&format!("monomial oracle {o} ({agree})\n"));
            }
            t
        }
    };
    emit(cx, &text)?;
    Ok(match oracle_aut_el {
        Some(o) if o != orders.aut_el => EXIT_FAILURE,
        _ => EXIT_OK,
    })
}
