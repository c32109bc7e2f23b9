//! Reduced root data on a torsion-free lattice, the finite Weyl group, and
//! the fundamental group `Lambda / Q^vee`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{LatticeQuotient, Matrix};

pub type Cocharacter = Vec<i64>;

/// Largest finite Weyl group we tabulate.
pub const MAX_W0_ORDER: usize = 4096;
const MAX_POSITIVE_ROOTS: usize = 512;

/// An exact rational vector `num / den` with `den > 0` and `gcd = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalCoweight {
    num: Vec<i64>,
    den: i64,
}

impl RationalCoweight {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut g = den.abs();
        for x in &num {
            g = g.gcd(x);
        }
        let s = if den < 0 { -1 } else { 1 };
        let g = g.max(1);
        RationalCoweight {
            num: num.iter().map(|x| s * x / g).collect(),
            den: den.abs() / g,
        }
    }

    pub fn integral(v: &[i64]) -> Self {
        Self::new(v.to_vec(), 1)
    }

    pub fn zero(rank: usize) -> Self {
        RationalCoweight {
            num: vec![0; rank],
            den: 1,
        }
    }

    pub fn num(&self) -> &[i64] {
        &self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn entry(&self, i: usize) -> Ratio<i64> {
        Ratio::new(self.num[i], self.den)
    }

    pub fn entries(&self) -> Vec<Ratio<i64>> {
        (0..self.num.len()).map(|i| self.entry(i)).collect()
    }

    pub fn to_big(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|&x| BigRational::new(x.into(), self.den.into()))
            .collect()
    }

    /// `<a, self>` for an integer covector `a`.
    pub fn pair(&self, a: &[i64]) -> Ratio<i64> {
        Ratio::new(dot(a, &self.num), self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * other.den + b * self.den)
            .collect();
        Self::new(num, self.den * other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * other.den - b * self.den)
            .collect();
        Self::new(num, self.den * other.den)
    }

    pub fn scale(&self, c: Ratio<i64>) -> Self {
        Self::new(
            self.num.iter().map(|x| x * c.numer()).collect(),
            self.den * c.denom(),
        )
    }

    /// Coordinatewise comparison as rationals.
    pub fn cmp_lex(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let o = (a * other.den).cmp(&(b * self.den));
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries().iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for RationalCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// covector on the lattice
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    /// coordinates in the simple roots
    pub coeffs: Vec<i64>,
    pub component: usize,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// The finite Weyl group, fully tabulated.  Elements are `u16` indices;
/// index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteWeyl {
    rank: usize,
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u16>,
    mult: Vec<u16>,
    inv: Vec<u16>,
    words: Vec<Vec<usize>>,
    lengths: Vec<u32>,
    simple: Vec<u16>,
    /// `root_act[u * nroots + j]` is the index of `a_j o u`
    root_act: Vec<u32>,
    nroots: usize,
}

impl FiniteWeyl {
    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> u16 {
        0
    }

    pub fn simple(&self, i: usize) -> u16 {
        self.simple[i]
    }

    /// Row-major `r x r` matrix of the action on the lattice.
    pub fn matrix(&self, u: u16) -> &[i64] {
        &self.mats[u as usize]
    }

    pub fn mul(&self, u: u16, v: u16) -> u16 {
        self.mult[u as usize * self.order() + v as usize]
    }

    pub fn inv(&self, u: u16) -> u16 {
        self.inv[u as usize]
    }

    pub fn word(&self, u: u16) -> &[usize] {
        &self.words[u as usize]
    }

    pub fn length(&self, u: u16) -> u32 {
        self.lengths[u as usize]
    }

    pub fn lookup(&self, mat: &[i64]) -> Option<u16> {
        self.index.get(mat).copied()
    }

    pub fn from_word(&self, word: &[usize]) -> u16 {
        word.iter().fold(0, |acc, &i| self.mul(acc, self.simple[i]))
    }

    pub fn act(&self, u: u16, x: &[i64]) -> Vec<i64> {
        let m = self.matrix(u);
        (0..self.rank)
            .map(|i| dot(&m[i * self.rank..(i + 1) * self.rank], x))
            .collect()
    }

    /// Index of the root `a_j o u`.
    pub fn root_pullback(&self, u: u16, j: usize) -> usize {
        self.root_act[u as usize * self.nroots + j] as usize
    }

    /// Index of the root `a_j o u^{-1}`, i.e. `u . a_j`.
    pub fn root_push(&self, u: u16, j: usize) -> usize {
        self.root_pullback(self.inv(u), j)
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.order() as u16
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    npos: usize,
    root_index: HashMap<Vec<i64>, usize>,
    components: Vec<Vec<usize>>,
    highest: Vec<usize>,
    two_rho: Vec<i64>,
    weyl: FiniteWeyl,
    pi1: LatticeQuotient,
}

#[derive(Clone, Debug)]
pub enum DatumSpec {
    Preset(String),
    Explicit {
        rank: usize,
        simple_roots: Vec<Vec<Ratio<i64>>>,
        simple_coroots: Vec<Vec<Ratio<i64>>>,
    },
}

pub fn build_root_datum(spec: &DatumSpec) -> Result<RootDatum> {
    match spec {
        DatumSpec::Preset(name) => crate::presets::preset(name).map(|p| p.datum),
        DatumSpec::Explicit {
            rank,
            simple_roots,
            simple_coroots,
        } => RootDatum::from_rational("explicit", *rank, simple_roots, simple_coroots),
    }
}

impl RootDatum {
    /// Validates and builds from possibly rational input.  The Cartan matrix
    /// must be integral, and the vectors themselves integral on the lattice.
    pub fn from_rational(
        name: &str,
        rank: usize,
        roots: &[Vec<Ratio<i64>>],
        coroots: &[Vec<Ratio<i64>>],
    ) -> Result<Self> {
        check_shapes(
            rank,
            roots.len(),
            coroots.len(),
            roots.iter().chain(coroots).map(|v| v.len()),
        )?;
        for (i, c) in coroots.iter().enumerate() {
            for (j, a) in roots.iter().enumerate() {
                let p: Ratio<i64> = c.iter().zip(a).map(|(x, y)| x * y).sum();
                if !p.is_integer() {
                    return Err(Error::NonIntegralCartan(format!(
                        "<alpha_{j}, alpha_{i}^vee> = {p}"
                    )));
                }
            }
        }
        let to_int = |v: &Vec<Ratio<i64>>| -> Result<Vec<i64>> {
            v.iter()
                .map(|x| {
                    x.is_integer().then(|| x.to_integer()).ok_or_else(|| {
                        Error::InvalidDatum(format!("entry {x} is not integral on the lattice"))
                    })
                })
                .collect()
        };
        let r: Vec<Vec<i64>> = roots.iter().map(to_int).collect::<Result<_>>()?;
        let c: Vec<Vec<i64>> = coroots.iter().map(to_int).collect::<Result<_>>()?;
        Self::new(name, rank, r, c)
    }

    pub fn new(
        name: &str,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = simple_roots.len();
        check_shapes(
            rank,
            n,
            simple_coroots.len(),
            simple_roots.iter().chain(&simple_coroots).map(|v| v.len()),
        )?;
        if rank == 0 {
            return Err(Error::InvalidDatum("lattice rank must be positive".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && proportional(&simple_roots[i], &simple_roots[j]) {
                    return Err(Error::NonReducedSystem(format!(
                        "simple roots {i} and {j} are proportional"
                    )));
                }
            }
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| dot(&simple_roots[j], &simple_coroots[i]))
                    .collect()
            })
            .collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidDatum(format!(
                    "<alpha_{i}, alpha_{i}^vee> = {} != 2",
                    cartan[i][i]
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (cartan[i][j], cartan[j][i]);
                if a > 0 || (a == 0) != (b == 0) {
                    return Err(Error::InvalidDatum(format!(
                        "Cartan entries ({i},{j}) = {a}, ({j},{i}) = {b}"
                    )));
                }
                if a * b > 3 {
                    return Err(Error::InvalidDatum(format!(
                        "bond ({i},{j}) with A_ij A_ji = {} is not of finite type",
                        a * b
                    )));
                }
            }
        }

        let components = dynkin_components(&cartan);
        let pos = positive_roots(&cartan, &simple_roots, &simple_coroots, &components)?;
        let npos = pos.len();
        for a in &pos {
            if dot(&a.root, &a.coroot) != 2 {
                return Err(Error::InvalidDatum("coroot closure is inconsistent".into()));
            }
        }
        for a in &pos {
            for b in &pos {
                if a.root.iter().zip(&b.root).all(|(x, y)| *x == 2 * y) {
                    return Err(Error::NonReducedSystem(format!(
                        "root {:?} is twice {:?}",
                        a.root, b.root
                    )));
                }
            }
        }
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|a| Root {
            root: a.root.iter().map(|x| -x).collect(),
            coroot: a.coroot.iter().map(|x| -x).collect(),
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
            component: a.component,
        }));
        let root_index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, a)| (a.root.clone(), i))
            .collect();
        let highest = components
            .iter()
            .enumerate()
            .map(|(c, _)| {
                let mut best = None;
                for (i, a) in pos.iter().enumerate() {
                    if a.component == c && best.is_none_or(|b: usize| a.height() > pos[b].height())
                    {
                        best = Some(i);
                    }
                }
                best.expect("nonempty component")
            })
            .collect();
        let mut two_rho = vec![0i64; rank];
        for a in &pos {
            for (t, x) in two_rho.iter_mut().zip(&a.root) {
                *t += x;
            }
        }
        let weyl = tabulate_weyl(rank, &simple_roots, &simple_coroots, &roots, &root_index)?;
        let pi1 = LatticeQuotient::new(rank, &simple_coroots);
        Ok(RootDatum {
            name: name.to_string(),
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            roots,
            npos,
            root_index,
            components,
            highest,
            two_rho,
            weyl,
            pi1,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i]
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots; the first `num_positive()` are positive, and root
    /// `num_positive() + j` is the negative of root `j`.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, j: usize) -> &Root {
        &self.roots[j]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.npos]
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn is_positive(&self, j: usize) -> bool {
        j < self.npos
    }

    pub fn negate(&self, j: usize) -> usize {
        if j < self.npos {
            j + self.npos
        } else {
            j - self.npos
        }
    }

    pub fn root_index(&self, a: &[i64]) -> Option<usize> {
        self.root_index.get(a).copied()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Component of a simple root index.
    pub fn component_of(&self, i: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&i))
            .expect("simple index")
    }

    /// Index of the highest root of component `c`.
    pub fn highest_root(&self, c: usize) -> usize {
        self.highest[c]
    }

    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn weyl(&self) -> &FiniteWeyl {
        &self.weyl
    }

    pub fn pi1(&self) -> &LatticeQuotient {
        &self.pi1
    }

    pub fn is_dominant(&self, v: &RationalCoweight) -> bool {
        self.simple_roots.iter().all(|a| dot(a, v.num()) >= 0)
    }

    pub fn is_dominant_int(&self, v: &[i64]) -> bool {
        self.simple_roots.iter().all(|a| dot(a, v) >= 0)
    }

    /// Central means orthogonal to every root.
    pub fn is_central(&self, v: &[i64]) -> bool {
        self.simple_roots.iter().all(|a| dot(a, v) == 0)
    }

    /// Dominant element of the W0-orbit of `v` and `u` with `u v = dominant`.
    pub fn dominant_rep(&self, v: &RationalCoweight) -> (RationalCoweight, u16) {
        let (num, u) = self.dominant_rep_int(v.num());
        (RationalCoweight::new(num, v.den()), u)
    }

    pub fn dominant_rep_int(&self, v: &[i64]) -> (Vec<i64>, u16) {
        let mut x = v.to_vec();
        let mut u = 0u16;
        while let Some(i) =
            (0..self.simple_roots.len()).find(|&i| dot(&self.simple_roots[i], &x) < 0)
        {
            let p = dot(&self.simple_roots[i], &x);
            for (t, c) in x.iter_mut().zip(&self.simple_coroots[i]) {
                *t -= p * c;
            }
            u = self.weyl.mul(self.weyl.simple(i), u);
        }
        (x, u)
    }

    /// `lambda <= lambda'` in the dominance order on dominant rationals.
    pub fn dominance_leq(&self, lo: &RationalCoweight, hi: &RationalCoweight) -> Result<bool> {
        for (tag, v) in [("lambda", lo), ("lambda'", hi)] {
            if !self.is_dominant(v) {
                return Err(Error::NotDominantInput(format!("{tag} = {v}")));
            }
        }
        let d = hi.sub(lo);
        Ok(self
            .coroot_coefficients(&d)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative())))
    }

    /// Coefficients `c` with `sum c_i alpha_i^vee = d`, if `d` lies in the
    /// rational span of the coroots.  Solved component by component.
    pub fn coroot_coefficients(&self, d: &RationalCoweight) -> Option<Vec<BigRational>> {
        let n = self.simple_roots.len();
        let q = |x: i64| BigRational::from_integer(x.into());
        let mut c = vec![BigRational::zero(); n];
        let target = d.to_big();
        for comp in &self.components {
            // A_comp^T c = (<alpha_j, d>)_j
            let m = Matrix::from_fn(comp.len(), comp.len(), |a, b| {
                q(self.cartan[comp[b]][comp[a]])
            });
            let rhs: Vec<BigRational> = comp
                .iter()
                .map(|&j| {
                    BigRational::new(dot(&self.simple_roots[j], d.num()).into(), d.den().into())
                })
                .collect();
            let sol = m.solve(&rhs)?;
            for (k, &j) in comp.iter().enumerate() {
                c[j] = sol[k].clone();
            }
        }
        // the central part of d must vanish
        for (i, t) in target.iter().enumerate() {
            let mut s = BigRational::zero();
            for j in 0..n {
                s += c[j].clone() * q(self.simple_coroots[j][i]);
            }
            if &s != t {
                return None;
            }
        }
        Some(c)
    }

    /// `<v, 2 rho>` as an exact rational.
    pub fn pair_two_rho(&self, v: &RationalCoweight) -> Ratio<i64> {
        v.pair(&self.two_rho)
    }

    /// `sum over positive a of <lambda, a>`; equals `<lambda, 2 rho>`.
    pub fn pair_positive_sum(&self, v: &[i64]) -> i64 {
        self.positive_roots().iter().map(|a| dot(&a.root, v)).sum()
    }

    /// Reflection of `x` in root `j`.
    pub fn reflect(&self, j: usize, x: &[i64]) -> Vec<i64> {
        let a = &self.roots[j];
        let p = dot(&a.root, x);
        x.iter().zip(&a.coroot).map(|(t, c)| t - p * c).collect()
    }

    /// W0-index of the reflection in root `j`.
    pub fn reflection_index(&self, j: usize) -> u16 {
        let a = &self.roots[j];
        let r = self.rank;
        let mut m = vec![0i64; r * r];
        for i in 0..r {
            for k in 0..r {
                m[i * r + k] = i64::from(i == k) - a.coroot[i] * a.root[k];
            }
        }
        self.weyl.lookup(&m).expect("root reflection lies in W0")
    }

    /// Minuscule dominant coweights in the box `[-1, 1]^r`, nonzero.
    pub fn minuscule_box(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![-1i64; self.rank];
        loop {
            if cur.iter().any(|&x| x != 0)
                && self.is_dominant_int(&cur)
                && self
                    .positive_roots()
                    .iter()
                    .all(|a| dot(&a.root, &cur) <= 1)
            {
                out.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == self.rank {
                    return out;
                }
                cur[k] += 1;
                if cur[k] <= 1 {
                    break;
                }
                cur[k] = -1;
                k += 1;
            }
        }
    }
}

fn check_shapes(
    rank: usize,
    n: usize,
    m: usize,
    mut lens: impl Iterator<Item = usize>,
) -> Result<()> {
    if n != m {
        return Err(Error::InvalidDatum(format!(
            "{n} simple roots but {m} simple coroots"
        )));
    }
    if let Some(l) = lens.find(|&l| l != rank) {
        return Err(Error::InvalidDatum(format!(
            "vector of length {l} on a lattice of rank {rank}"
        )));
    }
    Ok(())
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    // a and b nonzero and a x b = 0
    let nz = |v: &[i64]| v.iter().any(|&x| x != 0);
    if !nz(a) || !nz(b) {
        return a == b;
    }
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

fn dynkin_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if comp[j] == usize::MAX && cartan[i][j] != 0 {
                    comp[j] = c;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn positive_roots(
    cartan: &[Vec<i64>],
    roots: &[Vec<i64>],
    coroots: &[Vec<i64>],
    components: &[Vec<usize>],
) -> Result<Vec<Root>> {
    let n = cartan.len();
    let r = roots.first().map_or(0, |v| v.len());
    let comp_of: Vec<usize> = (0..n)
        .map(|i| components.iter().position(|c| c.contains(&i)).unwrap())
        .collect();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut list: Vec<Root> = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        seen.insert(coeffs.clone(), list.len());
        list.push(Root {
            root: roots[i].clone(),
            coroot: coroots[i].clone(),
            coeffs,
            component: comp_of[i],
        });
    }
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(k) = queue.pop_front() {
        for i in 0..n {
            let b = list[k].clone();
            if b.coeffs
                .iter()
                .enumerate()
                .all(|(j, &c)| c == i64::from(j == i))
            {
                continue;
            }
            let p: i64 = (0..n).map(|j| b.coeffs[j] * cartan[i][j]).sum();
            let mut coeffs = b.coeffs.clone();
            coeffs[i] -= p;
            if coeffs.iter().any(|&c| c < 0) || seen.contains_key(&coeffs) {
                continue;
            }
            let q = dot(&roots[i], &b.coroot);
            let root: Vec<i64> = (0..r).map(|x| b.root[x] - p * roots[i][x]).collect();
            let coroot: Vec<i64> = (0..r).map(|x| b.coroot[x] - q * coroots[i][x]).collect();
            seen.insert(coeffs.clone(), list.len());
            list.push(Root {
                root,
                coroot,
                coeffs,
                component: b.component,
            });
            if list.len() > MAX_POSITIVE_ROOTS {
                return Err(Error::InvalidDatum(
                    "reflection closure does not terminate".into(),
                ));
            }
            queue.push_back(list.len() - 1);
        }
    }
    // by height, simple roots first in index order
    list.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| b.coeffs.cmp(&a.coeffs))
    });
    Ok(list)
}

fn tabulate_weyl(
    rank: usize,
    roots: &[Vec<i64>],
    coroots: &[Vec<i64>],
    all_roots: &[Root],
    root_index: &HashMap<Vec<i64>, usize>,
) -> Result<FiniteWeyl> {
    let n = roots.len();
    let r = rank;
    let matmul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut c = vec![0i64; r * r];
        for i in 0..r {
            for k in 0..r {
                let x = a[i * r + k];
                if x != 0 {
                    for j in 0..r {
                        c[i * r + j] += x * b[k * r + j];
                    }
                }
            }
        }
        c
    };
    let gens: Vec<Vec<i64>> = (0..n)
        .map(|s| {
            let mut m = vec![0i64; r * r];
            for i in 0..r {
                for k in 0..r {
                    m[i * r + k] = i64::from(i == k) - coroots[s][i] * roots[s][k];
                }
            }
            m
        })
        .collect();
    let mut id = vec![0i64; r * r];
    for i in 0..r {
        id[i * r + i] = 1;
    }
    let mut mats = vec![id.clone()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut index: HashMap<Vec<i64>, u16> = HashMap::from([(id, 0)]);
    let mut k = 0;
    while k < mats.len() {
        for s in 0..n {
            let m = matmul(&mats[k], &gens[s]);
            if !index.contains_key(&m) {
                if mats.len() >= MAX_W0_ORDER {
                    return Err(Error::InvalidDatum(format!(
                        "finite Weyl group exceeds {MAX_W0_ORDER} elements"
                    )));
                }
                index.insert(m.clone(), mats.len() as u16);
                let mut w = words[k].clone();
                w.push(s);
                words.push(w);
                mats.push(m);
            }
        }
        k += 1;
    }
    let order = mats.len();
    let mut mult = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            mult[a * order + b] = index[&matmul(&mats[a], &mats[b])];
        }
    }
    let inv: Vec<u16> = (0..order)
        .map(|a| (0..order).find(|&b| mult[a * order + b] == 0).unwrap() as u16)
        .collect();
    let lengths = words.iter().map(|w| w.len() as u32).collect();
    let simple = (0..n).map(|s| index[&gens[s]]).collect();
    let nroots = all_roots.len();
    let mut root_act = vec![0u32; order * nroots];
    for u in 0..order {
        for (j, a) in all_roots.iter().enumerate() {
            let img: Vec<i64> = (0..r)
                .map(|c| (0..r).map(|i| a.root[i] * mats[u][i * r + c]).sum())
                .collect();
            root_act[u * nroots + j] = root_index[&img] as u32;
        }
    }
    Ok(FiniteWeyl {
        rank,
        mats,
        index,
        mult,
        inv,
        words,
        lengths,
        simple,
        root_act,
        nroots,
    })
}
