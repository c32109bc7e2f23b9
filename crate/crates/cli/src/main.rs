//! `adlv`: admissible sets, straight classes, `B(G, mu)`, `pi_0`
//! predictions, Picard certificates and the property suites, as JSON.

mod job;

use std::io::Write;
use std::process::ExitCode;

use adlv::admissible::{adm, adm_parahoric};
use adlv::levi::{basic_tag, is_fundamental, pi0_predict};
use adlv::newton_bg::{b_g_mu, obstruction_class};
use adlv::picard::descent_certificate;
use adlv::suites::{run_suites, SuiteConfig};
use adlv::{
    build_root_datum, catalog, preset, AffineWeyl, Elt, Error, FrobeniusDatum, StraightClassTag,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use job::{
    ElementSpec, Emit, GroupSpec, JobSpec, Overrides, SchemaError, SigmaSpec, TagSelector,
    SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "adlv", version, about = "Affine Deligne-Lusztig combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible set of `mu`, or its parahoric version with `--level`
    Adm(JobArgs),
    /// One element's Newton point and reduction (`--w`), or the straight
    /// classes of `Adm(mu)` or of a length ball
    Straight(JobArgs),
    /// The classes of `B(G, mu)`
    Bgmu(JobArgs),
    /// The `pi_0` prediction for one class of `B(G, mu)`
    Pi0(JobArgs),
    /// Descent certificate on the Picard lattice for `--w` and `--x`
    PicCert(JobArgs),
    /// Run the property suites
    Verify(JobArgs),
    /// List the preset catalog
    Presets(JobArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Adm(_) => "adm",
            Command::Straight(_) => "straight",
            Command::Bgmu(_) => "bgmu",
            Command::Pi0(_) => "pi0",
            Command::PicCert(_) => "pic-cert",
            Command::Verify(_) => "verify",
            Command::Presets(_) => "presets",
        }
    }
}

#[derive(Args, Debug, Default)]
struct JobArgs {
    /// JSON job file; flags override its fields
    #[arg(long)]
    job: Option<String>,
    /// inline JSON job specification
    #[arg(long)]
    spec: Option<String>,
    /// preset name or inline datum JSON
    #[arg(long)]
    group: Option<String>,
    /// sigma option of the preset, or inline JSON
    #[arg(long)]
    sigma: Option<String>,
    /// coweight, comma separated
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// class of B(G, mu): basic, maximal, an index, or a tag JSON
    #[arg(long)]
    b: Option<String>,
    /// parahoric level K, comma separated indices into S-breve
    #[arg(long)]
    level: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    /// summary or elements
    #[arg(long)]
    emit: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    /// element: `word:i,j,..`, `lambda[@w0_word]` or JSON
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// length bound for `straight` without `--mu`
    #[arg(long)]
    length: Option<u32>,
    /// suite ids for `verify`, comma separated
    #[arg(long)]
    suites: Option<String>,
}

enum CliError {
    Schema(SchemaError),
    Core(Error),
    Usage(String),
    Io(String),
    /// a report was produced, but it records failures; carries the exit code
    Findings(Value, u8),
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Schema(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisViolated(_) => 2,
        Error::BudgetExceeded { .. } | Error::BallExhausted(_) => 3,
        Error::SingularOperator(_) => 4,
        _ => 1,
    }
}

struct Ctx {
    group_name: String,
    sigma_name: String,
    sigma: FrobeniusDatum,
}

impl Ctx {
    fn g(&self) -> &AffineWeyl {
        self.sigma.group()
    }

    fn elt_json(&self, x: &Elt) -> Value {
        json!(self.g().datum().elt_to_json(x))
    }

    fn elts_json(&self, xs: &[Elt]) -> Value {
        Value::Array(xs.iter().map(|x| self.elt_json(x)).collect())
    }

    fn element(&self, e: &ElementSpec) -> CliResult<Elt> {
        let g = self.g();
        let d = g.datum();
        match e {
            ElementSpec::Json(j) => Ok(d.elt_from_json(j)?),
            ElementSpec::Word(w) => {
                if let Some(&s) = w.iter().find(|&&s| s >= g.num_simple()) {
                    return Err(
                        Error::DatumMismatch(format!("{s} is not an index into S-breve")).into(),
                    );
                }
                Ok(g.from_word(w, &d.identity()))
            }
        }
    }

    fn header(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), command.into());
        m.insert("group".into(), self.group_name.clone().into());
        m.insert("sigma".into(), self.sigma_name.clone().into());
        m
    }
}

fn context(job: &JobSpec) -> CliResult<Ctx> {
    let Some(group) = &job.group else {
        return Err(CliError::Schema(SchemaError {
            pointer: "/group".into(),
            message: "missing field".into(),
        }));
    };
    let (group_name, datum, options) = match group {
        GroupSpec::Preset(name) => {
            let p = preset(name)?;
            (p.name.clone(), p.datum, p.sigmas)
        }
        GroupSpec::Inline(spec) => ("inline".to_string(), build_root_datum(spec)?, vec![]),
    };
    let g = AffineWeyl::new(datum);
    let r = g.datum().rank();
    let identity: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let (sigma_name, lattice, twist) = match &job.sigma {
        SigmaSpec::Named(n) if n == "trivial" && options.is_empty() => (n.clone(), identity, None),
        SigmaSpec::Named(n) => match options.iter().find(|o| &o.name == n) {
            Some(o) => (n.clone(), o.lattice.clone(), o.twist.clone()),
            None => {
                let names: Vec<&str> = options.iter().map(|o| o.name.as_str()).collect();
                return Err(CliError::Schema(SchemaError {
                    pointer: "/sigma".into(),
                    message: format!(
                        "unknown sigma option `{n}` (available: trivial{})",
                        if names.is_empty() {
                            String::new()
                        } else {
                            format!(", {}", names.join(", "))
                        }
                    ),
                }));
            }
        },
        SigmaSpec::Inline { lattice, twist } => {
            let tmp = Ctx {
                group_name: String::new(),
                sigma_name: String::new(),
                sigma: FrobeniusDatum::trivial(&g, 2),
            };
            let t = twist.as_ref().map(|t| tmp.element(t)).transpose()?;
            ("inline".into(), lattice.clone(), t)
        }
    };
    let sigma = FrobeniusDatum::new(&g, lattice, twist, job.q)?;
    Ok(Ctx {
        group_name,
        sigma_name,
        sigma,
    })
}

fn need_mu(job: &JobSpec) -> CliResult<&[i64]> {
    job.mu.as_deref().ok_or_else(|| {
        CliError::Schema(SchemaError {
            pointer: "/mu".into(),
            message: "missing field".into(),
        })
    })
}

fn tag_json(t: &StraightClassTag) -> Value {
    json!(t.to_json())
}

fn group_json(g: &adlv::GroupPresentation) -> Value {
    json!({"invariant_factors": g.invariant_factors, "generators": g.generators})
}

fn cmd_adm(job: &JobSpec) -> CliResult<Value> {
    let c = context(job)?;
    let mu = need_mu(job)?;
    let a = adm(c.g(), mu, job.budget)?;
    let mut m = c.header("adm");
    m.insert("mu".into(), json!(mu));
    m.insert("tau".into(), c.elt_json(&a.tau));
    m.insert("size".into(), a.len().into());
    m.insert("maximal".into(), c.elts_json(&a.maximal));
    if job.emit == Emit::Elements {
        m.insert("elements".into(), c.elts_json(&a.elements));
    }
    if !job.level.is_empty() {
        let p = adm_parahoric(c.g(), mu, &job.level, job.budget)?;
        let mut pm = serde_json::Map::new();
        pm.insert("level".into(), json!(p.k));
        pm.insert("size".into(), p.elements.len().into());
        pm.insert("double_cosets".into(), p.double_reps.len().into());
        if job.emit == Emit::Elements {
            pm.insert("double_reps".into(), c.elts_json(&p.double_reps));
        }
        m.insert("parahoric".into(), Value::Object(pm));
    }
    Ok(Value::Object(m))
}

fn classes_json(c: &Ctx, groups: &[(StraightClassTag, Vec<Elt>)], emit: Emit) -> Value {
    let g = c.g();
    Value::Array(
        groups
            .iter()
            .map(|(t, xs)| {
                let mut m = serde_json::Map::new();
                m.insert("tag".into(), tag_json(t));
                m.insert("length".into(), g.length(&xs[0]).into());
                m.insert("count".into(), xs.len().into());
                if emit == Emit::Elements {
                    m.insert("elements".into(), c.elts_json(xs));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

fn cmd_straight(job: &JobSpec) -> CliResult<Value> {
    let c = context(job)?;
    let s = &c.sigma;
    let g = c.g();
    let mut m = c.header("straight");
    if let Some(w) = &job.w {
        let w = c.element(w)?;
        let (nu, period) = s.newton_vector(&w)?;
        let (min, path) = s.reduce_to_minimal(&w, job.budget)?;
        let (word, omega) = g.reduced_word(&w);
        m.insert("element".into(), c.elt_json(&w));
        m.insert("word".into(), json!(word));
        m.insert("omega".into(), c.elt_json(&omega));
        m.insert("length".into(), g.length(&w).into());
        m.insert("newton_vector".into(), json!(nu.to_strings()));
        m.insert("period".into(), period.into());
        m.insert("tag".into(), tag_json(&s.class_tag(&w)?));
        m.insert("straight".into(), s.is_straight(&w)?.into());
        m.insert("fundamental".into(), is_fundamental(s, &w, &nu).into());
        let steps: Vec<Value> = path
            .steps
            .iter()
            .map(|(t, x)| json!({"s": t, "element": c.elt_json(x)}))
            .collect();
        m.insert(
            "reduction".into(),
            json!({"minimal": c.elt_json(&min), "length": g.length(&min), "steps": steps}),
        );
        return Ok(Value::Object(m));
    }
    let groups = match &job.mu {
        Some(mu) => {
            let a = adm(g, mu, job.budget)?;
            m.insert("source".into(), "adm".into());
            m.insert("mu".into(), json!(mu));
            s.straight_class_tags(a.elements.iter())?
        }
        None => {
            let ball = g.ball(job.length, &g.omega_window(1), job.budget)?;
            m.insert("source".into(), "ball".into());
            m.insert("max_length".into(), job.length.into());
            s.straight_class_tags(ball.iter())?
        }
    };
    m.insert("classes".into(), classes_json(&c, &groups, job.emit));
    Ok(Value::Object(m))
}

fn cmd_bgmu(job: &JobSpec) -> CliResult<Value> {
    let c = context(job)?;
    let mu = need_mu(job)?;
    let b = b_g_mu(&c.sigma, mu, job.budget)?;
    let mut m = c.header("bgmu");
    m.insert("mu".into(), json!(mu));
    m.insert("mu_natural".into(), json!(b.mu_natural));
    m.insert("mu_diamond".into(), json!(b.mu_diamond.to_strings()));
    m.insert("adm_size".into(), b.adm.len().into());
    let elements: Vec<Value> = b
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let obstruction = match obstruction_class(&c.sigma, mu, &e.representative) {
                Ok(o) => json!(o),
                Err(_) => Value::Null,
            };
            let mut em = serde_json::Map::new();
            em.insert("index".into(), i.into());
            em.insert("tag".into(), tag_json(&e.tag));
            em.insert("representative".into(), c.elt_json(&e.representative));
            em.insert("word".into(), json!(e.word));
            em.insert("omega".into(), c.elt_json(&e.omega));
            em.insert("basic".into(), e.basic.into());
            em.insert("minimal".into(), e.minimal.into());
            em.insert("maximal".into(), e.maximal.into());
            em.insert("straight_in_adm".into(), e.straight_in_adm.len().into());
            if job.emit == Emit::Elements {
                em.insert("straight_elements".into(), c.elts_json(&e.straight_in_adm));
            }
            em.insert("obstruction".into(), obstruction);
            Value::Object(em)
        })
        .collect();
    m.insert("elements".into(), Value::Array(elements));
    Ok(Value::Object(m))
}

fn select_tag(
    c: &Ctx,
    mu: &[i64],
    sel: &TagSelector,
    budget: usize,
) -> CliResult<StraightClassTag> {
    if *sel == TagSelector::Basic {
        return Ok(basic_tag(&c.sigma, mu)?);
    }
    let b = b_g_mu(&c.sigma, mu, budget)?;
    let found = match sel {
        TagSelector::Basic => unreachable!(),
        TagSelector::Maximal => b.elements.last(),
        TagSelector::Index(i) => b.elements.get(*i),
        TagSelector::Tag { nu, kappa } => b
            .elements
            .iter()
            .find(|e| &e.tag.nu.to_strings() == nu && &e.tag.kappa == kappa),
    };
    match found {
        Some(e) => Ok(e.tag.clone()),
        None => {
            Err(Error::TagNotInBGMu(format!("{sel:?} among {} classes", b.elements.len())).into())
        }
    }
}

fn cmd_pi0(job: &JobSpec) -> CliResult<Value> {
    let c = context(job)?;
    let mu = need_mu(job)?;
    let tag = select_tag(
        &c,
        mu,
        job.b.as_ref().unwrap_or(&TagSelector::Basic),
        job.budget,
    )?;
    let p = pi0_predict(&c.sigma, mu, &tag, &job.level, job.budget)?;
    let strata: Vec<Value> = p
        .strata
        .iter()
        .map(|s| {
            json!({
                "w": c.elt_json(&s.w),
                "word": s.word,
                "levi_rank": s.levi.rank(),
                "lambda": s.lambda,
                "lambda_in_adm": s.lambda_in_adm,
                "pi1M": group_json(&s.pi1m),
                "essentially_nontrivial": s.essentially_nontrivial,
            })
        })
        .collect();
    let mut m = c.header("pi0");
    m.insert("mu".into(), json!(mu));
    m.insert("level".into(), json!(p.k));
    m.insert("case".into(), p.case.as_str().into());
    m.insert("tag".into(), tag_json(&p.tag));
    m.insert(
        "group".into(),
        p.group.as_ref().map(group_json).unwrap_or(Value::Null),
    );
    m.insert("strata".into(), Value::Array(strata));
    m.insert("marker".into(), p.marker.into());
    Ok(Value::Object(m))
}

fn cmd_pic_cert(job: &JobSpec) -> CliResult<Value> {
    let c = context(job)?;
    let Some(w) = &job.w else {
        return Err(CliError::Schema(SchemaError {
            pointer: "/w".into(),
            message: "missing field".into(),
        }));
    };
    let w = c.element(w)?;
    let x = match &job.x {
        Some(x) => c.element(x)?,
        None => w.clone(),
    };
    let cert = descent_certificate(&c.sigma, &w, &x, None)?;
    let mut m = c.header("pic-cert");
    m.insert("q".into(), c.sigma.q().into());
    m.insert("w".into(), c.elt_json(&w));
    m.insert("x".into(), c.elt_json(&x));
    let j = cert.to_json();
    m.insert("operator".into(), json!(j.operator));
    m.insert("certificate".into(), json!(j.certificate));
    m.insert("difference".into(), json!(j.difference));
    m.insert("invertible".into(), j.invertible.into());
    Ok(Value::Object(m))
}

fn cmd_verify(job: &JobSpec) -> CliResult<Value> {
    let cfg = SuiteConfig {
        budget: job.budget,
        ..SuiteConfig::default()
    };
    if let Some(&i) = job.suites.iter().find(|&&i| !(1..=9).contains(&i)) {
        return Err(CliError::Usage(format!(
            "no suite with id {i}; ids run from 1 to 9"
        )));
    }
    let reports = run_suites(&cfg, &job.suites);
    let passed = reports.iter().all(|r| r.passed);
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "config": cfg,
        "passed": passed,
        "suites": reports,
    });
    if passed {
        Ok(v)
    } else {
        Err(CliError::Findings(v, verify_exit_code(&reports)))
    }
}

/// 4 when an oracle disagreed; otherwise the code of the worst error.
fn verify_exit_code(reports: &[adlv::suites::SuiteReport]) -> u8 {
    if reports.iter().any(|r| r.has_violations()) {
        return 4;
    }
    let kinds: Vec<&str> = reports
        .iter()
        .flat_map(|r| r.error_kinds.iter().copied())
        .collect();
    if kinds
        .iter()
        .any(|k| *k == "BudgetExceeded" || *k == "BallExhausted")
    {
        3
    } else if kinds.contains(&"HypothesisViolated") {
        2
    } else {
        1
    }
}

fn cmd_presets() -> CliResult<Value> {
    let list: Vec<Value> = catalog()
        .iter()
        .map(|p| {
            let d = &p.datum;
            json!({
                "name": p.name,
                "rank": d.rank(),
                "lattice": p.lattice_doc,
                "w0_order": d.weyl().order(),
                "pi1": d.pi1().invariant_factors(),
                "sigmas": p.sigmas.iter().map(|o| o.name.clone()).collect::<Vec<_>>(),
                "test_mus": p.test_mus(),
            })
        })
        .collect();
    Ok(json!({"schema_version": SCHEMA_VERSION, "command": "presets", "presets": list}))
}

fn load_job(a: &JobArgs) -> CliResult<JobSpec> {
    let base: Value = match (&a.job, &a.spec) {
        (Some(_), Some(_)) => return Err(CliError::Usage("--job and --spec are exclusive".into())),
        (Some(path), None) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| SchemaError {
                pointer: String::new(),
                message: format!("{path}: {e}"),
            })?
        }
        (None, Some(s)) => serde_json::from_str(s).map_err(|e| SchemaError {
            pointer: String::new(),
            message: e.to_string(),
        })?,
        (None, None) => Value::Null,
    };
    let o = Overrides {
        group: a.group.clone(),
        sigma: a.sigma.clone(),
        mu: a.mu.clone(),
        b: a.b.clone(),
        level: a.level.clone(),
        budget: a.budget,
        emit: a.emit.clone(),
        q: a.q,
        w: a.w.clone(),
        x: a.x.clone(),
        length: a.length,
        suites: a.suites.clone(),
        out: a.out.clone(),
    };
    Ok(job::validate(&job::merge(base, &o)?)?)
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("ADLV_THREADS") else {
        return Ok(());
    };
    let n: usize =
        v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!("ADLV_THREADS={v} is not a positive integer"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write_report(v: &Value, out: Option<&str>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}"))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn report_error(kind: &str, message: String, pointer: Option<&str>) {
    let mut e = serde_json::Map::new();
    e.insert("kind".into(), kind.into());
    e.insert("message".into(), message.into());
    if let Some(p) = pointer {
        e.insert("pointer".into(), p.into());
    }
    let v = json!({"schema_version": SCHEMA_VERSION, "error": e});
    eprintln!("{}", serde_json::to_string(&v).expect("errors serialize"));
}

fn run(cli: Cli) -> CliResult<Option<String>> {
    configure_threads()?;
    let (args, f): (&JobArgs, fn(&JobSpec) -> CliResult<Value>) = match &cli.command {
        Command::Adm(a) => (a, cmd_adm),
        Command::Straight(a) => (a, cmd_straight),
        Command::Bgmu(a) => (a, cmd_bgmu),
        Command::Pi0(a) => (a, cmd_pi0),
        Command::PicCert(a) => (a, cmd_pic_cert),
        Command::Verify(a) => (a, cmd_verify),
        Command::Presets(a) => (a, |_| cmd_presets()),
    };
    let job = load_job(args)?;
    let name = cli.command.name();
    if job.command.as_deref().is_some_and(|c| c != name) {
        return Err(CliError::Schema(SchemaError {
            pointer: "/command".into(),
            message: format!(
                "job is for `{}` but `{name}` was run",
                job.command.as_deref().unwrap_or_default()
            ),
        }));
    }
    let out = job.out.clone();
    match f(&job) {
        Ok(v) => write_report(&v, out.as_deref()).map(|_| out),
        Err(CliError::Findings(v, code)) => {
            write_report(&v, out.as_deref())?;
            Err(CliError::Findings(Value::Null, code))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(CliError::Findings(_, code)) => ExitCode::from(code),
        Err(CliError::Schema(e)) => {
            report_error("SchemaError", e.message, Some(&e.pointer));
            ExitCode::from(1)
        }
        Err(CliError::Core(e)) => {
            report_error(e.kind(), e.to_string(), None);
            ExitCode::from(exit_code(&e))
        }
        Err(CliError::Usage(m)) => {
            report_error("UsageError", m, None);
            ExitCode::from(1)
        }
        Err(CliError::Io(m)) => {
            report_error("IoError", m, None);
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use adlv::suites::SuiteReport;
    use std::collections::{BTreeMap, BTreeSet};

    fn report(violations: u64, kinds: &[&'static str]) -> SuiteReport {
        let mut counts = BTreeMap::new();
        if violations > 0 {
            counts.insert("violations".to_string(), violations);
        }
        SuiteReport {
            id: 0,
            name: "synthetic",
            passed: violations == 0 && kinds.is_empty(),
            counts,
            violations: vec![],
            errors: vec![],
            error_kinds: kinds.iter().copied().collect::<BTreeSet<_>>(),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::SingularOperator("".into())), 4);
        assert_eq!(exit_code(&Error::HypothesisViolated("".into())), 2);
        assert_eq!(exit_code(&Error::BallExhausted(3)), 3);
        assert_eq!(exit_code(&Error::UnknownPreset("".into())), 1);
        assert_eq!(
            verify_exit_code(&[report(0, &["BudgetExceeded"]), report(2, &[])]),
            4
        );
        assert_eq!(verify_exit_code(&[report(0, &["BudgetExceeded"])]), 3);
        assert_eq!(verify_exit_code(&[report(0, &["HypothesisViolated"])]), 2);
        assert_eq!(verify_exit_code(&[report(0, &["NoSolution"])]), 1);
    }
}
