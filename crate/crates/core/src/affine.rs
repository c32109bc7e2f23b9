//! The extended affine Weyl group `Lambda x| W0`, its alcove geometry, and a
//! Coxeter frame (length, descents, words, Bruhat order) that works both for
//! `G` and for a semistandard Levi `M_v`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::LatticeQuotient;
use crate::root_datum::{dot, RationalCoweight, RootDatum};

/// `t^lambda u`, acting on `V` by `x -> lambda + u x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineWeylElt {
    pub lambda: Vec<i64>,
    pub u: u16,
}

pub type Elt = ExtAffineWeylElt;

/// The affine function `x -> <a, x> + k` for the root with index `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub a: usize,
    pub k: i64,
}

/// Canonical JSON form of an element: the finite part is a word in the
/// finite simple reflections, written with their S-breve indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EltJson {
    pub lambda: Vec<i64>,
    pub w0_word: Vec<usize>,
}

impl RootDatum {
    pub fn identity(&self) -> Elt {
        Elt {
            lambda: vec![0; self.rank()],
            u: 0,
        }
    }

    pub fn translation(&self, lambda: &[i64]) -> Elt {
        assert_eq!(lambda.len(), self.rank());
        Elt {
            lambda: lambda.to_vec(),
            u: 0,
        }
    }

    pub fn finite(&self, u: u16) -> Elt {
        Elt {
            lambda: vec![0; self.rank()],
            u,
        }
    }

    pub fn mul(&self, x: &Elt, y: &Elt) -> Elt {
        let ul = self.weyl().act(x.u, &y.lambda);
        Elt {
            lambda: x.lambda.iter().zip(&ul).map(|(a, b)| a + b).collect(),
            u: self.weyl().mul(x.u, y.u),
        }
    }

    pub fn try_mul(&self, x: &Elt, y: &Elt) -> Result<Elt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn check(&self, x: &Elt) -> Result<()> {
        if x.lambda.len() != self.rank() || x.u as usize >= self.weyl().order() {
            return Err(Error::DatumMismatch(format!(
                "element with |lambda| = {} and finite index {} on a datum of rank {} with |W0| = {}",
                x.lambda.len(),
                x.u,
                self.rank(),
                self.weyl().order()
            )));
        }
        Ok(())
    }

    pub fn inv(&self, x: &Elt) -> Elt {
        let ui = self.weyl().inv(x.u);
        let l = self.weyl().act(ui, &x.lambda);
        Elt {
            lambda: l.iter().map(|a| -a).collect(),
            u: ui,
        }
    }

    pub fn conj(&self, x: &Elt, y: &Elt) -> Elt {
        self.mul(&self.mul(x, y), &self.inv(x))
    }

    pub fn pow(&self, x: &Elt, n: usize) -> Elt {
        (0..n).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    /// Action on a point of `V` (rational, as a coweight).
    pub fn act_point(&self, x: &Elt, p: &RationalCoweight) -> RationalCoweight {
        let up = self.weyl().act(x.u, p.num());
        let num = up
            .iter()
            .zip(&x.lambda)
            .map(|(a, l)| a + l * p.den())
            .collect();
        RationalCoweight::new(num, p.den())
    }

    pub fn is_positive_affine(&self, f: AffineRoot) -> bool {
        if self.is_positive(f.a) {
            f.k >= 0
        } else {
            f.k >= 1
        }
    }

    /// `x . f = f o x^{-1}`.
    pub fn push_root(&self, x: &Elt, f: AffineRoot) -> AffineRoot {
        let b = self.weyl().root_push(x.u, f.a);
        AffineRoot {
            a: b,
            k: f.k - dot(&self.root(b).root, &x.lambda),
        }
    }

    /// `x^{-1} . f = f o x`.
    pub fn pull_root(&self, x: &Elt, f: AffineRoot) -> AffineRoot {
        AffineRoot {
            a: self.weyl().root_pullback(x.u, f.a),
            k: f.k + dot(&self.root(f.a).root, &x.lambda),
        }
    }

    /// The reflection through the zero set of `f`: `(-k a^vee, s_a)`.
    pub fn affine_reflection(&self, f: AffineRoot) -> Elt {
        let c = &self.root(f.a).coroot;
        Elt {
            lambda: c.iter().map(|x| -f.k * x).collect(),
            u: self.reflection_index(f.a),
        }
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, x: &Elt) -> u32 {
        let w = self.weyl();
        let mut l = 0i64;
        for (j, a) in self.positive_roots().iter().enumerate() {
            let neg = !self.is_positive(w.root_pullback(x.u, j));
            l += (dot(&a.root, &x.lambda) - i64::from(neg)).abs();
        }
        l as u32
    }

    pub fn elt_to_json(&self, x: &Elt) -> EltJson {
        let c = self.components().len();
        EltJson {
            lambda: x.lambda.clone(),
            w0_word: self.weyl().word(x.u).iter().map(|i| i + c).collect(),
        }
    }

    pub fn elt_from_json(&self, j: &EltJson) -> Result<Elt> {
        if j.lambda.len() != self.rank() {
            return Err(Error::DatumMismatch(format!(
                "lambda has length {} on rank {}",
                j.lambda.len(),
                self.rank()
            )));
        }
        let c = self.components().len();
        let n = self.semisimple_rank();
        let mut word = Vec::with_capacity(j.w0_word.len());
        for &i in &j.w0_word {
            if i < c || i >= c + n {
                return Err(Error::DatumMismatch(format!(
                    "{i} is not the index of a finite simple reflection"
                )));
            }
            word.push(i - c);
        }
        Ok(Elt {
            lambda: j.lambda.clone(),
            u: self.weyl().from_word(&word),
        })
    }
}

/// One simple affine reflection of a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleAffine {
    pub root: AffineRoot,
    pub reflection: Elt,
    /// index of the Dynkin component of the frame
    pub component: usize,
    pub affine_node: bool,
}

/// Upper bound on cached Bruhat comparisons per frame.
const BRUHAT_CACHE_LIMIT: usize = 1 << 20;

/// A Coxeter frame `W_a x| Omega` determined by a closed set of positive
/// roots: the whole group, or `W_v = Lambda x| Stab_{W0}(v)` for a Levi.
#[derive(Debug)]
pub struct AlcoveFrame {
    datum: Arc<RootDatum>,
    /// indices of the positive roots of the frame
    positive: Vec<usize>,
    /// root indices (both signs) of the frame
    in_frame: Vec<bool>,
    simple: Vec<SimpleAffine>,
    components: Vec<Vec<usize>>,
    weyl_member: Vec<bool>,
    quotient: LatticeQuotient,
    bruhat_cache: RwLock<HashMap<(Elt, Elt), bool>>,
}

impl AlcoveFrame {
    pub fn full(datum: Arc<RootDatum>) -> Self {
        let positive = (0..datum.num_positive()).collect();
        let members = vec![true; datum.weyl().order()];
        Self::build(datum, positive, members)
    }

    /// The frame of `M_v`.
    pub fn levi(datum: Arc<RootDatum>, v: &RationalCoweight) -> Self {
        let positive = (0..datum.num_positive())
            .filter(|&j| v.pair(&datum.root(j).root) == 0.into())
            .collect();
        let w = datum.weyl();
        let members = w.elements().map(|u| w.act(u, v.num()) == v.num()).collect();
        Self::build(datum, positive, members)
    }

    fn build(datum: Arc<RootDatum>, positive: Vec<usize>, weyl_member: Vec<bool>) -> Self {
        let d = &datum;
        let mut in_frame = vec![false; d.roots().len()];
        for &j in &positive {
            in_frame[j] = true;
            in_frame[d.negate(j)] = true;
        }
        let pos_set: HashSet<usize> = positive.iter().copied().collect();
        // indecomposable positive roots, in root-index order
        let simple_fin: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&j| {
                !positive.iter().any(|&b| {
                    let diff: Vec<i64> = d
                        .root(j)
                        .root
                        .iter()
                        .zip(&d.root(b).root)
                        .map(|(x, y)| x - y)
                        .collect();
                    d.root_index(&diff).is_some_and(|c| pos_set.contains(&c))
                })
            })
            .collect();
        // Dynkin components of the frame
        let m = simple_fin.len();
        let pairs = |i: usize, j: usize| {
            dot(&d.root(simple_fin[j]).root, &d.root(simple_fin[i]).coroot) != 0
        };
        let mut comp_of = vec![usize::MAX; m];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for s in 0..m {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let c = components.len();
            comp_of[s] = c;
            let mut members = vec![s];
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                for j in 0..m {
                    if comp_of[j] == usize::MAX && pairs(i, j) {
                        comp_of[j] = c;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            components.push(members);
        }
        let ncomp = components.len();
        let mut simple = Vec::with_capacity(ncomp + m);
        for (c, members) in components.iter().enumerate() {
            // highest root: no simple root of the component can be added
            let in_comp = |j: usize| {
                members
                    .iter()
                    .any(|&i| dot(&d.root(j).root, &d.root(simple_fin[i]).coroot) != 0)
            };
            let theta = positive
                .iter()
                .copied()
                .find(|&j| {
                    in_comp(j)
                        && members.iter().all(|&i| {
                            let sum: Vec<i64> = d
                                .root(j)
                                .root
                                .iter()
                                .zip(&d.root(simple_fin[i]).root)
                                .map(|(x, y)| x + y)
                                .collect();
                            d.root_index(&sum).is_none()
                        })
                })
                .expect("component has a highest root");
            let f = AffineRoot {
                a: d.negate(theta),
                k: 1,
            };
            simple.push(SimpleAffine {
                root: f,
                reflection: d.affine_reflection(f),
                component: c,
                affine_node: true,
            });
        }
        for (i, &j) in simple_fin.iter().enumerate() {
            let f = AffineRoot { a: j, k: 0 };
            simple.push(SimpleAffine {
                root: f,
                reflection: d.affine_reflection(f),
                component: comp_of[i],
                affine_node: false,
            });
        }
        // components as lists of S-breve indices
        let mut comps: Vec<Vec<usize>> = (0..ncomp).map(|c| vec![c]).collect();
        for i in 0..m {
            comps[comp_of[i]].push(ncomp + i);
        }
        let coroots: Vec<Vec<i64>> = simple_fin
            .iter()
            .map(|&j| d.root(j).coroot.clone())
            .collect();
        let quotient = LatticeQuotient::new(d.rank(), &coroots);
        AlcoveFrame {
            datum,
            positive,
            in_frame,
            simple,
            components: comps,
            weyl_member,
            quotient,
            bruhat_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    pub fn contains_root(&self, j: usize) -> bool {
        self.in_frame[j]
    }

    pub fn simple(&self) -> &[SimpleAffine] {
        &self.simple
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    /// S-breve indices of each Dynkin component of the frame.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Rank of the root system of the frame.
    pub fn semisimple_rank(&self) -> usize {
        self.simple.len() - self.components.len()
    }

    /// `Lambda / Q^vee` of the frame.
    pub fn quotient(&self) -> &LatticeQuotient {
        &self.quotient
    }

    pub fn contains(&self, x: &Elt) -> bool {
        self.weyl_member[x.u as usize]
    }

    pub fn kappa(&self, x: &Elt) -> Vec<i64> {
        self.quotient.project(&x.lambda)
    }

    pub fn two_rho(&self) -> Vec<i64> {
        let mut t = vec![0i64; self.datum.rank()];
        for &j in &self.positive {
            for (s, x) in t.iter_mut().zip(&self.datum.root(j).root) {
                *s += x;
            }
        }
        t
    }

    pub fn length(&self, x: &Elt) -> u32 {
        let d = &self.datum;
        let w = d.weyl();
        let mut l = 0i64;
        for &j in &self.positive {
            let neg = !d.is_positive(w.root_pullback(x.u, j));
            l += (dot(&d.root(j).root, &x.lambda) - i64::from(neg)).abs();
        }
        l as u32
    }

    pub fn reflection(&self, s: usize) -> &Elt {
        &self.simple[s].reflection
    }

    pub fn is_left_descent(&self, x: &Elt, s: usize) -> bool {
        !self
            .datum
            .is_positive_affine(self.datum.pull_root(x, self.simple[s].root))
    }

    pub fn is_right_descent(&self, x: &Elt, s: usize) -> bool {
        !self
            .datum
            .is_positive_affine(self.datum.push_root(x, self.simple[s].root))
    }

    pub fn left_descents(&self, x: &Elt) -> Vec<usize> {
        (0..self.simple.len())
            .filter(|&s| self.is_left_descent(x, s))
            .collect()
    }

    pub fn right_descents(&self, x: &Elt) -> Vec<usize> {
        (0..self.simple.len())
            .filter(|&s| self.is_right_descent(x, s))
            .collect()
    }

    pub fn lmul(&self, s: usize, x: &Elt) -> Elt {
        self.datum.mul(&self.simple[s].reflection, x)
    }

    pub fn rmul(&self, x: &Elt, s: usize) -> Elt {
        self.datum.mul(x, &self.simple[s].reflection)
    }

    /// `x = s_{i_1} ... s_{i_l} omega` with `l = length(x)`, stripping the
    /// lowest left descent first.
    pub fn reduced_word(&self, x: &Elt) -> (Vec<usize>, Elt) {
        let mut word = Vec::new();
        let mut y = x.clone();
        while let Some(s) = (0..self.simple.len()).find(|&s| self.is_left_descent(&y, s)) {
            word.push(s);
            y = self.lmul(s, &y);
        }
        (word, y)
    }

    pub fn from_word(&self, word: &[usize], omega: &Elt) -> Elt {
        word.iter()
            .rev()
            .fold(omega.clone(), |acc, &s| self.lmul(s, &acc))
    }

    /// The length-zero part of `x`.
    pub fn omega_part(&self, x: &Elt) -> Elt {
        self.reduced_word(x).1
    }

    /// The length-zero element lying over the given class of the quotient.
    pub fn omega_for_class(&self, class: &[i64]) -> Elt {
        let lambda = self.quotient.lift(class);
        self.omega_part(&self.datum.translation(&lambda))
    }

    /// Length-zero elements for every class with free coordinates bounded
    /// by `radius`.
    pub fn omega_window(&self, radius: i64) -> Vec<Elt> {
        self.quotient
            .window(radius)
            .iter()
            .map(|c| self.omega_for_class(c))
            .collect()
    }

    /// One length-zero element per torsion class plus one per free generator.
    pub fn omega_elements(&self) -> Vec<OmegaElt> {
        let t = self.quotient.torsion_rank();
        let f = self.quotient.free_rank();
        let mut classes = self.quotient.window(0);
        for k in 0..f {
            let mut c = vec![0i64; t + f];
            c[t + k] = 1;
            classes.push(c);
        }
        classes
            .into_iter()
            .map(|class| {
                let elt = self.omega_for_class(&class);
                let perm = self
                    .omega_permutation(&elt)
                    .expect("length-zero element permutes S-breve");
                OmegaElt { elt, perm, class }
            })
            .collect()
    }

    /// The permutation `pi` of S-breve with `x s x^{-1} = s_{pi(s)}`, if `x`
    /// maps the simple affine roots onto themselves.
    pub fn omega_permutation(&self, x: &Elt) -> Option<Vec<usize>> {
        self.simple
            .iter()
            .map(|s| self.simple_index(self.datum.push_root(x, s.root)))
            .collect()
    }

    pub fn simple_index(&self, f: AffineRoot) -> Option<usize> {
        self.simple.iter().position(|s| s.root == f)
    }

    /// All elements of length at most `n` in the cosets `W_a omega`.
    pub fn ball(&self, n: u32, omegas: &[Elt], budget: usize) -> Result<Vec<Elt>> {
        let mut seen: HashSet<Elt> = HashSet::new();
        let mut out = Vec::new();
        for om in omegas {
            debug_assert_eq!(self.length(om), 0);
            if !seen.insert(om.clone()) {
                continue;
            }
            let mut level = vec![om.clone()];
            out.push(om.clone());
            for _ in 0..n {
                let mut next = Vec::new();
                for x in &level {
                    for s in 0..self.simple.len() {
                        if self.is_left_descent(x, s) {
                            continue;
                        }
                        let y = self.lmul(s, x);
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
                out.extend(next.iter().cloned());
                if out.len() > budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        what: format!("length-{n} ball"),
                    });
                }
                level = next;
            }
        }
        Ok(out)
    }

    /// Bruhat order, by the descent recursion on `y`.
    pub fn bruhat_leq(&self, x: &Elt, y: &Elt) -> bool {
        if x == y {
            return true;
        }
        let key = (x.clone(), y.clone());
        if let Some(&b) = self.bruhat_cache.read().unwrap().get(&key) {
            return b;
        }
        let b = self.bruhat_uncached(x, y);
        let mut cache = self.bruhat_cache.write().unwrap();
        if cache.len() >= BRUHAT_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, b);
        b
    }

    fn bruhat_uncached(&self, x: &Elt, y: &Elt) -> bool {
        if self.kappa(x) != self.kappa(y) {
            return false;
        }
        let (mut x, mut y) = (x.clone(), y.clone());
        loop {
            let (lx, ly) = (self.length(&x), self.length(&y));
            if lx > ly {
                return false;
            }
            if ly == 0 || lx == ly {
                return x == y;
            }
            let s = (0..self.simple.len())
                .find(|&s| self.is_left_descent(&y, s))
                .unwrap();
            if self.is_left_descent(&x, s) {
                x = self.lmul(s, &x);
            }
            y = self.lmul(s, &y);
        }
    }

    /// `{x : x <= y}`, generated from the subwords of a reduced word of `y`.
    pub fn lower_interval(&self, y: &Elt, budget: usize) -> Result<HashSet<Elt>> {
        let (word, om) = self.reduced_word(y);
        let mut set: HashSet<Elt> = HashSet::from([om]);
        for &s in word.iter().rev() {
            let new: Vec<Elt> = set.iter().map(|x| self.lmul(s, x)).collect();
            set.extend(new);
            if set.len() > budget {
                return Err(Error::BudgetExceeded {
                    budget,
                    what: "lower Bruhat interval".into(),
                });
            }
        }
        Ok(set)
    }

    /// Elements covered by `y`: delete one letter of a reduced word and keep
    /// the results of length `l(y) - 1`.
    pub fn covers_below(&self, y: &Elt) -> Vec<Elt> {
        let (word, om) = self.reduced_word(y);
        let l = word.len() as u32;
        let mut out: Vec<Elt> = Vec::new();
        for k in 0..word.len() {
            let mut w = word.clone();
            w.remove(k);
            let x = self.from_word(&w, &om);
            if self.length(&x) + 1 == l && !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    /// Is `W_K` finite?  True iff `K` misses a node of every component.
    pub fn parabolic_is_finite(&self, k: &[usize]) -> bool {
        self.components
            .iter()
            .all(|c| !c.iter().all(|s| k.contains(s)))
    }

    pub fn check_parabolic(&self, k: &[usize]) -> Result<()> {
        if k.iter().any(|&s| s >= self.simple.len()) || !self.parabolic_is_finite(k) {
            return Err(Error::InfiniteParabolic(k.to_vec()));
        }
        Ok(())
    }

    /// Elements of the finite group `W_K`.
    pub fn parabolic_elements(&self, k: &[usize]) -> Result<Vec<Elt>> {
        self.check_parabolic(k)?;
        let e = self.datum.identity();
        let mut seen: HashSet<Elt> = HashSet::from([e.clone()]);
        let mut out = vec![e];
        let mut i = 0;
        while i < out.len() {
            for &s in k {
                let y = self.lmul(s, &out[i]);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// Minimal element of `W_K x`.
    pub fn min_left(&self, k: &[usize], x: &Elt) -> Elt {
        let mut y = x.clone();
        while let Some(&s) = k.iter().find(|&&s| self.is_left_descent(&y, s)) {
            y = self.lmul(s, &y);
        }
        y
    }

    /// Minimal element of `x W_K`.
    pub fn min_right(&self, k: &[usize], x: &Elt) -> Elt {
        let mut y = x.clone();
        while let Some(&s) = k.iter().find(|&&s| self.is_right_descent(&y, s)) {
            y = self.rmul(&y, s);
        }
        y
    }

    /// Minimal element of `W_K x W_K`.
    pub fn min_double(&self, k: &[usize], x: &Elt) -> Elt {
        let mut y = x.clone();
        loop {
            if let Some(&s) = k.iter().find(|&&s| self.is_left_descent(&y, s)) {
                y = self.lmul(s, &y);
            } else if let Some(&s) = k.iter().find(|&&s| self.is_right_descent(&y, s)) {
                y = self.rmul(&y, s);
            } else {
                return y;
            }
        }
    }

    pub fn is_min_left(&self, k: &[usize], x: &Elt) -> bool {
        !k.iter().any(|&s| self.is_left_descent(x, s))
    }

    pub fn is_min_right(&self, k: &[usize], x: &Elt) -> bool {
        !k.iter().any(|&s| self.is_right_descent(x, s))
    }

    /// Minimal representatives of `W_K \ W` of length at most `n`.
    pub fn left_reps_in_ball(
        &self,
        k: &[usize],
        n: u32,
        omegas: &[Elt],
        budget: usize,
    ) -> Result<Vec<Elt>> {
        self.check_parabolic(k)?;
        Ok(self
            .ball(n, omegas, budget)?
            .into_iter()
            .filter(|x| self.is_min_left(k, x))
            .collect())
    }

    pub fn right_reps_in_ball(
        &self,
        k: &[usize],
        n: u32,
        omegas: &[Elt],
        budget: usize,
    ) -> Result<Vec<Elt>> {
        self.check_parabolic(k)?;
        Ok(self
            .ball(n, omegas, budget)?
            .into_iter()
            .filter(|x| self.is_min_right(k, x))
            .collect())
    }

    pub fn double_reps_in_ball(
        &self,
        k: &[usize],
        n: u32,
        omegas: &[Elt],
        budget: usize,
    ) -> Result<Vec<Elt>> {
        self.check_parabolic(k)?;
        Ok(self
            .ball(n, omegas, budget)?
            .into_iter()
            .filter(|x| self.is_min_left(k, x) && self.is_min_right(k, x))
            .collect())
    }

    /// Affine Cartan matrix over S-breve: `A_ij = <a_j, a_i^vee>` on linear parts.
    pub fn affine_cartan(&self) -> Vec<Vec<i64>> {
        let d = &self.datum;
        self.simple
            .iter()
            .map(|si| {
                self.simple
                    .iter()
                    .map(|sj| dot(&d.root(sj.root.a).root, &d.root(si.root.a).coroot))
                    .collect()
            })
            .collect()
    }
}

/// A length-zero element with its permutation of S-breve and its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElt {
    pub elt: Elt,
    pub perm: Vec<usize>,
    pub class: Vec<i64>,
}

/// The affine Weyl group of a root datum: owns the datum and its full frame.
#[derive(Debug, Clone)]
pub struct AffineWeyl {
    frame: Arc<AlcoveFrame>,
}

impl AffineWeyl {
    pub fn new(datum: RootDatum) -> Self {
        AffineWeyl {
            frame: Arc::new(AlcoveFrame::full(Arc::new(datum))),
        }
    }

    pub fn from_arc(datum: Arc<RootDatum>) -> Self {
        AffineWeyl {
            frame: Arc::new(AlcoveFrame::full(datum)),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        self.frame.datum()
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        self.frame.datum()
    }

    pub fn frame(&self) -> &AlcoveFrame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<AlcoveFrame> {
        &self.frame
    }

    /// S-breve index of the finite simple reflection `i`.
    pub fn finite_node(&self, i: usize) -> usize {
        self.datum().components().len() + i
    }

    /// S-breve index of the affine node of component `c`.
    pub fn affine_node(&self, c: usize) -> usize {
        c
    }
}

impl std::ops::Deref for AffineWeyl {
    type Target = AlcoveFrame;
    fn deref(&self) -> &AlcoveFrame {
        &self.frame
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn group(name: &str) -> AffineWeyl {
        AffineWeyl::new(presets::preset(name).unwrap().datum)
    }

    /// Every element of `W_a omega` spelled by words of length `<= n` over S-breve.
    fn words_up_to(g: &AffineWeyl, n: usize) -> Vec<(Vec<usize>, Elt)> {
        let mut out = vec![(vec![], g.datum().identity())];
        let mut level = out.clone();
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, x) in &level {
                for s in 0..g.num_simple() {
                    let mut w2 = w.clone();
                    w2.push(s);
                    next.push((w2, g.rmul(x, s)));
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    #[test]
    fn a1_examples() {
        let g = group("A1_sc");
        let d = g.datum();
        let s0 = g.reflection(0).clone();
        let s1 = g.reflection(1).clone();
        let t = d.translation(&[1]);
        assert_eq!(d.mul(&s0, &s1), t);
        assert_eq!(
            d.mul(&d.translation(&[2]), &d.translation(&[-5])),
            d.translation(&[-3])
        );
        assert_eq!(g.length(&d.identity()), 0);
        assert_eq!(g.length(&t), 2);
        assert_eq!(
            g.length(&Elt {
                lambda: vec![1],
                u: 1
            }),
            1
        );
        assert_eq!(g.reduced_word(&t), (vec![0, 1], d.identity()));
        assert_eq!(g.reduced_word(&d.identity()), (vec![], d.identity()));
        assert!(g.bruhat_leq(&s0, &t));
        assert!(g.bruhat_leq(&s1, &t));
        assert!(!g.bruhat_leq(&t, &s1));
        // exhaustive search over words of length two reaches t only via [0, 1]
        let hits: Vec<Vec<usize>> = words_up_to(&g, 2)
            .into_iter()
            .filter(|(w, x)| w.len() == 2 && *x == t)
            .map(|(w, _)| w)
            .collect();
        assert_eq!(hits, vec![vec![0, 1]]);
    }

    #[test]
    fn a1_adjoint_omega() {
        let g = group("A1_ad");
        let d = g.datum();
        let om = Elt {
            lambda: vec![1],
            u: 1,
        };
        assert_eq!(g.length(&om), 0);
        assert_eq!(g.reduced_word(&om), (vec![], om.clone()));
        let oms: Vec<Elt> = g.omega_elements().into_iter().map(|o| o.elt).collect();
        assert_eq!(oms, vec![d.identity(), om.clone()]);
        assert_eq!(g.omega_permutation(&om), Some(vec![1, 0]));
        // different Omega cosets are incomparable
        assert!(!g.bruhat_leq(&d.identity(), &om));
        // oracle: enumerate (lambda, u) in a box with length zero
        let mut zero = Vec::new();
        for l in -3..=3 {
            for u in 0..2u16 {
                let x = Elt { lambda: vec![l], u };
                if g.length(&x) == 0 {
                    zero.push(x);
                }
            }
        }
        assert_eq!(zero, vec![d.identity(), om]);
    }

    #[test]
    fn gl2_omega_generator() {
        let g = group("GL2");
        let oms = g.omega_elements();
        assert_eq!(oms.len(), 2);
        let gen = &oms[1];
        assert_eq!(g.length(&gen.elt), 0);
        assert_eq!(gen.elt.u, 1);
        assert_eq!(g.kappa(&gen.elt), gen.class);
        assert_eq!(gen.perm, vec![1, 0]);
    }

    #[test]
    fn sbreve_shape() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum);
            let d = g.datum();
            assert_eq!(g.num_simple(), d.semisimple_rank() + d.components().len());
            for s in 0..g.num_simple() {
                assert_eq!(g.length(g.reflection(s)), 1, "{}", d.name());
                let r = g.reflection(s);
                assert_eq!(d.mul(r, r), d.identity());
            }
            for om in g.omega_elements() {
                assert_eq!(g.kappa(&om.elt), om.class);
                let mut p = om.perm.clone();
                p.sort_unstable();
                assert_eq!(p, (0..g.num_simple()).collect::<Vec<_>>());
                for s in 0..g.num_simple() {
                    assert_eq!(d.conj(&om.elt, g.reflection(s)), *g.reflection(om.perm[s]));
                }
            }
        }
    }

    #[test]
    fn coset_representatives_a1() {
        let g = group("A1_sc");
        let d = g.datum();
        let e = [d.identity()];
        let reps = g.left_reps_in_ball(&[1], 2, &e, 1000).unwrap();
        let want = vec![
            d.identity(),
            g.reflection(0).clone(),
            g.from_word(&[0, 1], &d.identity()),
        ];
        let mut got = reps.clone();
        got.sort();
        let mut want_sorted = want.clone();
        want_sorted.sort();
        assert_eq!(got, want_sorted);
        let t = d.translation(&[1]);
        let m = g.min_double(&[1], &t);
        assert_eq!(m, *g.reflection(0));
        // exhaustive over W_K x W_K
        let wk = g.parabolic_elements(&[1]).unwrap();
        let min = wk
            .iter()
            .flat_map(|a| wk.iter().map(move |b| (a, b)))
            .map(|(a, b)| d.mul(&d.mul(a, &t), b))
            .min_by_key(|x| g.length(x))
            .unwrap();
        assert_eq!(min, m);
        assert!(matches!(
            g.parabolic_elements(&[0, 1]),
            Err(Error::InfiniteParabolic(_))
        ));
        assert_eq!(
            g.left_reps_in_ball(&[], 2, &e, 1000).unwrap().len(),
            g.ball(2, &e, 1000).unwrap().len()
        );
    }

    #[test]
    fn length_descents_and_words_on_balls() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum);
            let d = g.datum();
            let oms = g.omega_window(1);
            let ball = g.ball(4, &oms, 1 << 20).unwrap();
            for x in &ball {
                let l = g.length(x);
                for s in 0..g.num_simple() {
                    let sx = g.lmul(s, x);
                    let ls = g.length(&sx);
                    assert_eq!(ls.abs_diff(l), 1);
                    assert_eq!(ls < l, g.is_left_descent(x, s));
                    let xs = g.rmul(x, s);
                    assert_eq!(g.length(&xs) < l, g.is_right_descent(x, s));
                }
                let (w, om) = g.reduced_word(x);
                assert_eq!(w.len() as u32, l);
                assert_eq!(g.length(&om), 0);
                assert_eq!(g.from_word(&w, &om), *x);
                assert_eq!(d.mul(x, &d.inv(x)), d.identity());
                assert_eq!(d.elt_from_json(&d.elt_to_json(x)).unwrap(), *x);
            }
            for x in ball.iter().take(60) {
                for y in ball.iter().take(60) {
                    assert!(g.length(&d.mul(x, y)) <= g.length(x) + g.length(y));
                }
            }
        }
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum);
            let oms = g.omega_window(1);
            let ball = g.ball(4, &oms, 1 << 20).unwrap();
            for y in ball.iter().step_by(7) {
                let (w, om) = g.reduced_word(y);
                // all subwords of one reduced word
                let mut sub: HashSet<Elt> = HashSet::new();
                for mask in 0u32..(1 << w.len()) {
                    let word: Vec<usize> = (0..w.len())
                        .filter(|k| mask >> k & 1 == 1)
                        .map(|k| w[k])
                        .collect();
                    sub.insert(g.from_word(&word, &om));
                }
                for x in &ball {
                    assert_eq!(
                        g.bruhat_leq(x, y),
                        sub.contains(x),
                        "{} {:?} {:?}",
                        g.datum().name(),
                        x,
                        y
                    );
                }
                assert_eq!(g.lower_interval(y, 1 << 20).unwrap(), sub);
            }
        }
    }

    #[test]
    fn datum_mismatch() {
        let g = group("A1_sc");
        let bad = Elt {
            lambda: vec![1, 2],
            u: 0,
        };
        assert!(matches!(
            g.datum().try_mul(&bad, &g.datum().identity()),
            Err(Error::DatumMismatch(_))
        ));
        assert!(g
            .datum()
            .elt_from_json(&EltJson {
                lambda: vec![0],
                w0_word: vec![0]
            })
            .is_err());
    }

    proptest::proptest! {
        #[test]
        fn random_inverse_and_multiplication(idx in 0usize..13, l in proptest::collection::vec(-4i64..5, 5), u in 0u16..192, v in 0u16..192) {
            let cat = presets::catalog();
            let d = &cat[idx % cat.len()].datum;
            let r = d.rank();
            let o = d.weyl().order() as u16;
            let x = Elt { lambda: l[..r].to_vec(), u: u % o };
            let y = Elt { lambda: l[5 - r..].to_vec(), u: v % o };
            proptest::prop_assert_eq!(d.mul(&x, &d.inv(&x)), d.identity());
            proptest::prop_assert_eq!(d.mul(&d.inv(&x), &x), d.identity());
            let z = d.mul(&x, &y);
            proptest::prop_assert_eq!(d.mul(&z, &d.inv(&y)), x.clone());
            proptest::prop_assert_eq!(d.length(&x), AffineWeyl::new(d.clone()).length(&x));
        }
    }
}
