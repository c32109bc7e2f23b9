//! `B(G, mu)` through straight elements of `Adm(mu)`, the invariants
//! `mu^natural` and `mu^diamond`, and the obstruction class `c_{b, mu}`.

use serde::Serialize;

use crate::admissible::{adm, AdmissibleSet};
use crate::affine::Elt;
use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusDatum, StraightClassTag};
use crate::linalg::{fixed_subgroup, solve_integer, GroupPresentation};
use crate::root_datum::{RationalCoweight, RootDatum};

/// Image of `[mu]` in the sigma-coinvariants of `pi_1`.
pub fn mu_natural(sigma: &FrobeniusDatum, mu: &[i64]) -> Vec<i64> {
    sigma.coinvariants().project(mu)
}

/// Average of the orbit of `mu_dom` under `x -> dominant(varsigma x)`.
pub fn mu_diamond(sigma: &FrobeniusDatum, mu: &[i64]) -> RationalCoweight {
    let d = sigma.group().datum();
    let start = d.dominant_rep(&RationalCoweight::integral(mu)).0;
    let mut orbit = vec![start.clone()];
    loop {
        let next = d.dominant_rep(&sigma.linear(orbit.last().unwrap())).0;
        if next == start {
            break;
        }
        orbit.push(next);
    }
    let n = orbit.len();
    let mut sum = vec![0i64; d.rank()];
    for v in &orbit {
        for (s, x) in sum.iter_mut().zip(v.num()) {
            *s += x;
        }
    }
    RationalCoweight::new(sum, n as i64)
}

/// Newton point central on every component.
pub fn is_basic(d: &RootDatum, nu: &RationalCoweight) -> bool {
    d.is_central(nu.num())
}

#[derive(Clone, Debug)]
pub struct BGMuElement {
    pub tag: StraightClassTag,
    /// straight representative in `Adm(mu)`, least by `(length, element)`
    pub representative: Elt,
    pub word: Vec<usize>,
    pub omega: Elt,
    /// straight elements of the class inside `Adm(mu)`
    pub straight_in_adm: Vec<Elt>,
    pub basic: bool,
    pub minimal: bool,
    pub maximal: bool,
}

#[derive(Clone, Debug)]
pub struct BGMu {
    pub mu: Vec<i64>,
    pub mu_natural: Vec<i64>,
    pub mu_diamond: RationalCoweight,
    pub adm: AdmissibleSet,
    /// ordered by `(<nu, 2 rho>, nu)`
    pub elements: Vec<BGMuElement>,
}

impl BGMu {
    pub fn find(&self, tag: &StraightClassTag) -> Option<&BGMuElement> {
        self.elements.iter().find(|e| e.tag.same_class(tag))
    }
}

pub fn b_g_mu(sigma: &FrobeniusDatum, mu: &[i64], budget: usize) -> Result<BGMu> {
    let g = sigma.group();
    let d = g.datum();
    let a = adm(g, mu, budget)?;
    let natural = mu_natural(sigma, mu);
    let diamond = mu_diamond(sigma, mu);
    let mut elements = Vec::new();
    for (tag, members) in sigma.straight_class_tags(a.elements.iter())? {
        if tag.kappa != natural || !d.dominance_leq(&tag.nu, &diamond)? {
            continue;
        }
        let mut members = members;
        crate::admissible::sort_by_length(g, &mut members);
        let rep = members[0].clone();
        let (word, omega) = g.reduced_word(&rep);
        elements.push(BGMuElement {
            basic: is_basic(d, &tag.nu),
            tag,
            representative: rep,
            word,
            omega,
            straight_in_adm: members,
            minimal: false,
            maximal: false,
        });
    }
    if elements.is_empty() {
        return Err(Error::ExtremalityViolation(
            "no straight element of Adm(mu) satisfies the B(G, mu) conditions".into(),
        ));
    }
    let tau_tag = sigma.class_tag(&a.tau)?;
    if !elements[0].tag.same_class(&tau_tag) {
        return Err(Error::ExtremalityViolation(format!(
            "least class is not the class of tau_mu = {:?}",
            a.tau
        )));
    }
    for e in &elements {
        if !d.dominance_leq(&elements[0].tag.nu, &e.tag.nu)? {
            return Err(Error::ExtremalityViolation(format!(
                "basic class is not below nu = {}",
                e.tag.nu
            )));
        }
    }
    let top = elements.len() - 1;
    for e in &elements {
        if !d.dominance_leq(&e.tag.nu, &elements[top].tag.nu)? {
            return Err(Error::ExtremalityViolation(format!(
                "nu = {} is incomparable with the candidate maximum {}",
                e.tag.nu, elements[top].tag.nu
            )));
        }
    }
    if elements
        .iter()
        .filter(|e| e.tag.nu == elements[top].tag.nu)
        .count()
        > 1
    {
        return Err(Error::ExtremalityViolation(
            "several classes share the maximal Newton point".into(),
        ));
    }
    elements[0].minimal = true;
    elements[top].maximal = true;
    Ok(BGMu {
        mu: mu.to_vec(),
        mu_natural: natural,
        mu_diamond: diamond,
        adm: a,
        elements,
    })
}

/// `c` with `c - sigma(c) = [mu] - kappa(b)` in `pi_1`, up to the
/// sigma-fixed subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionClass {
    /// coordinates in `pi_1`
    pub representative: Vec<i64>,
    /// a lattice lift of the representative
    pub lift: Vec<i64>,
    pub fixed: GroupPresentation,
}

pub fn obstruction_class(sigma: &FrobeniusDatum, mu: &[i64], b: &Elt) -> Result<ObstructionClass> {
    let d = sigma.group().datum();
    let r = d.rank();
    let l = sigma.lattice();
    let pi1 = d.pi1();
    let coroots = d.simple_coroots();
    let fixed = fixed_subgroup(l, coroots);
    let rhs: Vec<i64> = mu.iter().zip(&b.lambda).map(|(m, x)| m - x).collect();
    if pi1.contains(&rhs) {
        return Ok(ObstructionClass {
            representative: pi1.project(&vec![0; r]),
            lift: vec![0; r],
            fixed,
        });
    }
    // (1 - L) x + A y = mu - lambda_b
    let m: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row: Vec<i64> = (0..r).map(|j| i64::from(i == j) - l[i][j]).collect();
            row.extend(coroots.iter().map(|c| c[i]));
            row
        })
        .collect();
    let z = solve_integer(&m, r + coroots.len(), &rhs).ok_or_else(|| {
        Error::NoSolution(format!(
            "[mu] - kappa(b) = {:?} is not of the form c - sigma(c)",
            pi1.project(&rhs)
        ))
    })?;
    let x = z[..r].to_vec();
    Ok(ObstructionClass {
        representative: pi1.project(&x),
        lift: x,
        fixed,
    })
}
