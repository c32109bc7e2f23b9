//! Job specifications: a JSON object, optionally read from a file, with
//! command-line flags layered on top.  Validation reports JSON-pointer
//! paths.

use std::fmt;

use adlv::admissible::DEFAULT_BUDGET;
use adlv::{DatumSpec, EltJson, SmallRational};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "{p}: {}", self.message)
    }
}

fn err<T>(pointer: &str, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError {
        pointer: pointer.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone)]
pub enum GroupSpec {
    Preset(String),
    Inline(DatumSpec),
}

#[derive(Debug, Clone)]
pub enum SigmaSpec {
    Named(String),
    Inline {
        lattice: Vec<Vec<i64>>,
        twist: Option<ElementSpec>,
    },
}

/// An element as canonical JSON, as a word in `S-breve`, or as
/// `lambda[@w0_word]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    Json(EltJson),
    Word(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TagSelector {
    Basic,
    Maximal,
    Index(usize),
    Tag { nu: Vec<String>, kappa: Vec<i64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Summary,
    Elements,
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Option<String>,
    pub group: Option<GroupSpec>,
    pub sigma: SigmaSpec,
    pub mu: Option<Vec<i64>>,
    pub b: Option<TagSelector>,
    pub level: Vec<usize>,
    pub budget: usize,
    pub emit: Emit,
    pub q: u64,
    pub w: Option<ElementSpec>,
    pub x: Option<ElementSpec>,
    pub length: u32,
    pub suites: Vec<u32>,
    pub out: Option<String>,
}

const FIELDS: [&str; 14] = [
    "command", "group", "sigma", "mu", "b", "level", "budget", "emit", "q", "w", "x", "length",
    "suites", "out",
];

fn int(v: &Value, p: &str) -> Result<i64, SchemaError> {
    match v.as_i64() {
        Some(x) => Ok(x),
        None => err(p, "expected an integer"),
    }
}

fn nonneg(v: &Value, p: &str) -> Result<u64, SchemaError> {
    match v.as_u64() {
        Some(x) => Ok(x),
        None => err(p, "expected a non-negative integer"),
    }
}

fn array<'a>(v: &'a Value, p: &str) -> Result<&'a Vec<Value>, SchemaError> {
    match v.as_array() {
        Some(a) => Ok(a),
        None => err(p, "expected an array"),
    }
}

fn int_list(v: &Value, p: &str) -> Result<Vec<i64>, SchemaError> {
    array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, x)| int(x, &format!("{p}/{i}")))
        .collect()
}

fn index_list(v: &Value, p: &str) -> Result<Vec<usize>, SchemaError> {
    array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, x)| nonneg(x, &format!("{p}/{i}")).map(|n| n as usize))
        .collect()
}

fn matrix(v: &Value, p: &str) -> Result<Vec<Vec<i64>>, SchemaError> {
    array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, row)| int_list(row, &format!("{p}/{i}")))
        .collect()
}

fn rational(v: &Value, p: &str) -> Result<SmallRational, SchemaError> {
    if let Some(x) = v.as_i64() {
        return Ok(SmallRational::from_integer(x));
    }
    let Some(s) = v.as_str() else {
        return err(p, "expected an integer or a string \"a/b\"");
    };
    let parsed = match s.split_once('/') {
        Some((a, b)) => a
            .trim()
            .parse::<i64>()
            .ok()
            .zip(b.trim().parse::<i64>().ok())
            .filter(|(_, b)| *b != 0),
        None => s.trim().parse::<i64>().ok().map(|a| (a, 1)),
    };
    match parsed {
        Some((a, b)) => Ok(SmallRational::new(a, b)),
        None => err(p, format!("`{s}` is not a rational number")),
    }
}

fn rational_matrix(v: &Value, p: &str) -> Result<Vec<Vec<SmallRational>>, SchemaError> {
    array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let q = format!("{p}/{i}");
            array(row, &q)?
                .iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("{q}/{j}")))
                .collect()
        })
        .collect()
}

fn object<'a>(
    v: &'a Value,
    p: &str,
    allowed: &[&str],
) -> Result<&'a Map<String, Value>, SchemaError> {
    let Some(m) = v.as_object() else {
        return err(p, "expected an object");
    };
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return err(&format!("{p}/{k}"), "unknown field");
        }
    }
    Ok(m)
}

fn required<'a>(m: &'a Map<String, Value>, p: &str, key: &str) -> Result<&'a Value, SchemaError> {
    match m.get(key) {
        Some(v) => Ok(v),
        None => err(&format!("{p}/{key}"), "missing field"),
    }
}

fn comma_ints<T: std::str::FromStr>(s: &str, p: &str) -> Result<Vec<T>, SchemaError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .enumerate()
        .map(|(i, t)| match t.trim().parse() {
            Ok(x) => Ok(x),
            Err(_) => err(
                &format!("{p}/{i}"),
                format!("`{}` is not an integer", t.trim()),
            ),
        })
        .collect()
}

pub fn parse_element(v: &Value, p: &str) -> Result<ElementSpec, SchemaError> {
    if let Some(s) = v.as_str() {
        let s = s.trim();
        if let Some(w) = s.strip_prefix("word:") {
            return Ok(ElementSpec::Word(comma_ints(w, p)?));
        }
        let (l, u) = s.split_once('@').unwrap_or((s, ""));
        return Ok(ElementSpec::Json(EltJson {
            lambda: comma_ints(l, p)?,
            w0_word: comma_ints(u, p)?,
        }));
    }
    let m = object(v, p, &["lambda", "w0_word"])?;
    let lambda = int_list(required(m, p, "lambda")?, &format!("{p}/lambda"))?;
    let w0_word = match m.get("w0_word") {
        Some(w) => index_list(w, &format!("{p}/w0_word"))?,
        None => vec![],
    };
    Ok(ElementSpec::Json(EltJson { lambda, w0_word }))
}

fn parse_tag(v: &Value, p: &str) -> Result<TagSelector, SchemaError> {
    if let Some(n) = v.as_u64() {
        return Ok(TagSelector::Index(n as usize));
    }
    if let Some(s) = v.as_str() {
        return match s {
            "basic" => Ok(TagSelector::Basic),
            "maximal" => Ok(TagSelector::Maximal),
            _ => match s.parse() {
                Ok(n) => Ok(TagSelector::Index(n)),
                Err(_) => err(
                    p,
                    format!("`{s}` is not basic, maximal, an index or a tag object"),
                ),
            },
        };
    }
    let m = object(v, p, &["nu", "kappa", "kappa0"])?;
    let nu_v = required(m, p, "nu")?;
    let nu = array(nu_v, &format!("{p}/nu"))?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{p}/nu/{i}")).map(|r| r.to_string()))
        .collect::<Result<_, _>>()?;
    let kappa = int_list(required(m, p, "kappa")?, &format!("{p}/kappa"))?;
    Ok(TagSelector::Tag { nu, kappa })
}

fn parse_group(v: &Value) -> Result<GroupSpec, SchemaError> {
    if let Some(s) = v.as_str() {
        return Ok(GroupSpec::Preset(s.to_string()));
    }
    let p = "/group";
    let m = object(v, p, &["rank", "simple_roots", "simple_coroots"])?;
    let rank = nonneg(required(m, p, "rank")?, "/group/rank")? as usize;
    let simple_roots = rational_matrix(required(m, p, "simple_roots")?, "/group/simple_roots")?;
    let simple_coroots =
        rational_matrix(required(m, p, "simple_coroots")?, "/group/simple_coroots")?;
    Ok(GroupSpec::Inline(DatumSpec::Explicit {
        rank,
        simple_roots,
        simple_coroots,
    }))
}

fn parse_sigma(v: &Value) -> Result<SigmaSpec, SchemaError> {
    if let Some(s) = v.as_str() {
        return Ok(SigmaSpec::Named(s.to_string()));
    }
    let p = "/sigma";
    let m = object(v, p, &["lattice", "twist"])?;
    let lattice = matrix(required(m, p, "lattice")?, "/sigma/lattice")?;
    let twist = match m.get("twist") {
        None | Some(Value::Null) => None,
        Some(t) => Some(parse_element(t, "/sigma/twist")?),
    };
    Ok(SigmaSpec::Inline { lattice, twist })
}

pub fn validate(v: &Value) -> Result<JobSpec, SchemaError> {
    let m = object(v, "", &FIELDS)?;
    let command = match m.get("command") {
        None => None,
        Some(Value::String(c)) => Some(c.clone()),
        Some(_) => return err("/command", "expected a string"),
    };
    let group = m.get("group").map(parse_group).transpose()?;
    let sigma = match m.get("sigma") {
        Some(s) => parse_sigma(s)?,
        None => SigmaSpec::Named("trivial".into()),
    };
    let mu = m.get("mu").map(|x| int_list(x, "/mu")).transpose()?;
    let b = m.get("b").map(|x| parse_tag(x, "/b")).transpose()?;
    let level = m
        .get("level")
        .map(|x| index_list(x, "/level"))
        .transpose()?
        .unwrap_or_default();
    let budget = match m.get("budget") {
        Some(x) => match nonneg(x, "/budget")? {
            0 => return err("/budget", "must be positive"),
            n => n as usize,
        },
        None => DEFAULT_BUDGET,
    };
    let emit = match m.get("emit").map(|e| (e, e.as_str())) {
        None => Emit::Summary,
        Some((_, Some("summary"))) => Emit::Summary,
        Some((_, Some("elements"))) => Emit::Elements,
        Some(_) => return err("/emit", "expected \"summary\" or \"elements\""),
    };
    let q = match m.get("q") {
        Some(x) => nonneg(x, "/q")?,
        None => 2,
    };
    let w = m.get("w").map(|x| parse_element(x, "/w")).transpose()?;
    let x = m.get("x").map(|x| parse_element(x, "/x")).transpose()?;
    let length = match m.get("length") {
        Some(x) => u32::try_from(nonneg(x, "/length")?).or_else(|_| err("/length", "too large"))?,
        None => 8,
    };
    let suites = m
        .get("suites")
        .map(|x| index_list(x, "/suites"))
        .transpose()?
        .unwrap_or_default()
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let out = match m.get("out") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return err("/out", "expected a string"),
    };
    Ok(JobSpec {
        command,
        group,
        sigma,
        mu,
        b,
        level,
        budget,
        emit,
        q,
        w,
        x,
        length,
        suites,
        out,
    })
}

/// Flags given on the command line, as raw strings.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub group: Option<String>,
    pub sigma: Option<String>,
    pub mu: Option<String>,
    pub b: Option<String>,
    pub level: Option<String>,
    pub budget: Option<u64>,
    pub emit: Option<String>,
    pub q: Option<u64>,
    pub w: Option<String>,
    pub x: Option<String>,
    pub length: Option<u32>,
    pub suites: Option<String>,
    pub out: Option<String>,
}

/// Lay the flags over `base`.  String flags holding JSON (a leading `{`
/// or `[`) are parsed as JSON.
pub fn merge(base: Value, o: &Overrides) -> Result<Value, SchemaError> {
    let mut m = match base {
        Value::Object(m) => m,
        Value::Null => Map::new(),
        _ => return err("", "job specification must be an object"),
    };
    let json_or = |key: &str,
                   s: &str,
                   f: &dyn Fn(&str) -> Result<Value, SchemaError>|
     -> Result<Value, SchemaError> {
        let t = s.trim_start();
        if t.starts_with('{') || t.starts_with('[') {
            serde_json::from_str(s)
                .or_else(|e| err(&format!("/{key}"), format!("invalid JSON: {e}")))
        } else {
            f(s)
        }
    };
    let string = |s: &str| Ok(Value::String(s.to_string()));
    let ints = |key: &'static str| {
        move |s: &str| comma_ints::<i64>(s, &format!("/{key}")).map(Value::from)
    };
    if let Some(s) = &o.group {
        m.insert("group".into(), json_or("group", s, &string)?);
    }
    if let Some(s) = &o.sigma {
        m.insert("sigma".into(), json_or("sigma", s, &string)?);
    }
    if let Some(s) = &o.mu {
        m.insert("mu".into(), json_or("mu", s, &ints("mu"))?);
    }
    if let Some(s) = &o.b {
        m.insert("b".into(), json_or("b", s, &string)?);
    }
    if let Some(s) = &o.level {
        m.insert("level".into(), json_or("level", s, &ints("level"))?);
    }
    if let Some(s) = &o.suites {
        m.insert("suites".into(), json_or("suites", s, &ints("suites"))?);
    }
    if let Some(s) = &o.w {
        m.insert("w".into(), json_or("w", s, &string)?);
    }
    if let Some(s) = &o.x {
        m.insert("x".into(), json_or("x", s, &string)?);
    }
    if let Some(s) = &o.emit {
        m.insert("emit".into(), Value::String(s.clone()));
    }
    if let Some(s) = &o.out {
        m.insert("out".into(), Value::String(s.clone()));
    }
    if let Some(n) = o.budget {
        m.insert("budget".into(), n.into());
    }
    if let Some(n) = o.q {
        m.insert("q".into(), n.into());
    }
    if let Some(n) = o.length {
        m.insert("length".into(), n.into());
    }
    Ok(Value::Object(m))
}
