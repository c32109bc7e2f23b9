//! Frobenius actions on the Iwahori-Weyl group, sigma-conjugacy, Newton
//! points, the Kottwitz map and straightness.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::{BigRational, Ratio};
use serde::Serialize;

use crate::affine::{AffineWeyl, Elt};
use crate::error::{Error, Result};
use crate::linalg::{LatticeQuotient, Matrix};
use crate::root_datum::{dot, RationalCoweight};

/// Cap on the order of sigma as an automorphism of the group.
pub const MAX_SIGMA_ORDER: usize = 64;

/// `sigma(t^lambda u) = omega . t^{L lambda} (L u L^{-1}) . omega^{-1}`.
#[derive(Clone, Debug)]
pub struct FrobeniusDatum {
    group: AffineWeyl,
    lattice: Vec<Vec<i64>>,
    lattice_inv: Vec<Vec<i64>>,
    w0_map: Vec<u16>,
    twist: Option<(Elt, Elt)>,
    perm: Vec<usize>,
    q: u64,
    order: usize,
    coinvariants: LatticeQuotient,
}

fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, x)).collect()
}

impl FrobeniusDatum {
    pub fn trivial(group: &AffineWeyl, q: u64) -> Self {
        let r = group.datum().rank();
        let id = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(group, id, None, q).expect("identity is a Frobenius datum")
    }

    pub fn new(
        group: &AffineWeyl,
        lattice: Vec<Vec<i64>>,
        twist: Option<Elt>,
        q: u64,
    ) -> Result<Self> {
        let d = group.datum();
        let r = d.rank();
        if q < 2 {
            return Err(Error::InvalidFrobenius(format!(
                "q = {q} must be at least 2"
            )));
        }
        if lattice.len() != r || lattice.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidFrobenius(format!(
                "lattice matrix must be {r} x {r}"
            )));
        }
        let big = |x: i64| BigRational::from_integer(x.into());
        let m = Matrix::from_fn(r, r, |i, j| big(lattice[i][j]));
        let inv = m
            .inverse()
            .filter(|inv| inv.to_rows().iter().flatten().all(|x| x.is_integer()))
            .ok_or_else(|| {
                Error::InvalidFrobenius("lattice matrix is not invertible over Z".into())
            })?;
        let lattice_inv: Vec<Vec<i64>> = inv
            .to_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| i64::try_from(x.to_integer()).expect("small entries"))
                    .collect()
            })
            .collect();
        // L must permute simple coroots and simple roots compatibly
        let n = d.semisimple_rank();
        let mut fin_perm = vec![0usize; n];
        for i in 0..n {
            let img = mat_vec(&lattice, d.simple_coroot(i));
            let j = (0..n)
                .find(|&j| d.simple_coroot(j) == img.as_slice())
                .ok_or_else(|| {
                    Error::InvalidFrobenius(format!("L does not map coroot {i} to a simple coroot"))
                })?;
            // alpha_j o L = alpha_i
            let pulled: Vec<i64> = (0..r)
                .map(|c| (0..r).map(|k| d.simple_root(j)[k] * lattice[k][c]).sum())
                .collect();
            if pulled != d.simple_root(i) {
                return Err(Error::InvalidFrobenius(format!(
                    "L maps coroot {i} to {j} but not root {i} to root {j}"
                )));
            }
            fin_perm[i] = j;
        }
        let w = d.weyl();
        let mut w0_map = Vec::with_capacity(w.order());
        for u in w.elements() {
            let word = w.word(u);
            let img: Vec<usize> = word.iter().map(|&i| fin_perm[i]).collect();
            w0_map.push(w.from_word(&img));
        }
        let twist = match twist {
            None => None,
            Some(om) => {
                d.check(&om)?;
                if group.length(&om) != 0 {
                    return Err(Error::InvalidFrobenius(
                        "twist must have length zero".into(),
                    ));
                }
                let oi = d.inv(&om);
                Some((om, oi))
            }
        };
        let mut sigma = FrobeniusDatum {
            group: group.clone(),
            lattice,
            lattice_inv,
            w0_map,
            twist,
            perm: vec![],
            q,
            order: 0,
            coinvariants: LatticeQuotient::new(r, &[]),
        };
        let perm: Option<Vec<usize>> = (0..group.num_simple())
            .map(|s| {
                let img = sigma.apply(group.reflection(s));
                (0..group.num_simple()).find(|&t| *group.reflection(t) == img)
            })
            .collect();
        sigma.perm =
            perm.ok_or_else(|| Error::InvalidFrobenius("sigma does not preserve S-breve".into()))?;
        // order on the generators t^{e_j} and the finite simple reflections
        let mut gens: Vec<Elt> = (0..r)
            .map(|j| d.translation(&(0..r).map(|k| i64::from(k == j)).collect::<Vec<_>>()))
            .collect();
        gens.extend((0..n).map(|i| d.finite(w.simple(i))));
        let mut cur = gens.clone();
        let mut order = 0;
        for k in 1..=MAX_SIGMA_ORDER {
            cur = cur.iter().map(|x| sigma.apply(x)).collect();
            if cur == gens {
                order = k;
                break;
            }
        }
        if order == 0 {
            return Err(Error::InvalidFrobenius(format!(
                "order of sigma exceeds {MAX_SIGMA_ORDER}"
            )));
        }
        sigma.order = order;
        // Lambda / (Q^vee + (1 - L) Lambda)
        let mut gens: Vec<Vec<i64>> = d.simple_coroots().to_vec();
        for j in 0..r {
            gens.push(
                (0..r)
                    .map(|i| i64::from(i == j) - sigma.lattice[i][j])
                    .collect(),
            );
        }
        sigma.coinvariants = LatticeQuotient::new(r, &gens);
        Ok(sigma)
    }

    pub fn group(&self) -> &AffineWeyl {
        &self.group
    }

    pub fn lattice(&self) -> &[Vec<i64>] {
        &self.lattice
    }

    pub fn twist(&self) -> Option<&Elt> {
        self.twist.as_ref().map(|(t, _)| t)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn with_q(&self, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidFrobenius(format!(
                "q = {q} must be at least 2"
            )));
        }
        Ok(FrobeniusDatum { q, ..self.clone() })
    }

    /// Order of sigma as an automorphism of the group.
    pub fn order(&self) -> usize {
        self.order
    }

    /// sigma acts trivially on the whole group.
    pub fn residually_split(&self) -> bool {
        self.order == 1
    }

    /// `sigma(s) = s_{perm[s]}` on S-breve.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Order of the permutation of S-breve.
    pub fn perm_order(&self) -> usize {
        let mut k = 1;
        let mut p: Vec<usize> = self.perm.clone();
        while p.iter().enumerate().any(|(i, &j)| i != j) {
            p = p.iter().map(|&j| self.perm[j]).collect();
            k += 1;
        }
        k
    }

    pub fn apply_lattice(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.lattice, v)
    }

    pub fn apply_lattice_inv(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.lattice_inv, v)
    }

    pub fn apply(&self, x: &Elt) -> Elt {
        let d = self.group.datum();
        let y = Elt {
            lambda: self.apply_lattice(&x.lambda),
            u: self.w0_map[x.u as usize],
        };
        match &self.twist {
            None => y,
            Some((t, ti)) => d.mul(&d.mul(t, &y), ti),
        }
    }

    pub fn apply_pow(&self, x: &Elt, k: usize) -> Elt {
        (0..k).fold(x.clone(), |acc, _| self.apply(&acc))
    }

    /// Linear part `varsigma` of sigma on `V`.
    pub fn linear(&self, v: &RationalCoweight) -> RationalCoweight {
        let lv = self.apply_lattice(v.num());
        let num = match &self.twist {
            None => lv,
            Some((t, _)) => self.group.datum().weyl().act(t.u, &lv),
        };
        RationalCoweight::new(num, v.den())
    }

    /// sigma on affine functions: `f -> f o sigma^{-1}` (including the twist).
    pub fn apply_root(&self, f: crate::affine::AffineRoot) -> crate::affine::AffineRoot {
        let d = self.group.datum();
        // a o L^{-1}
        let a = &d.root(f.a).root;
        let r = d.rank();
        let img: Vec<i64> = (0..r)
            .map(|c| (0..r).map(|k| a[k] * self.lattice_inv[k][c]).sum())
            .collect();
        let g = crate::affine::AffineRoot {
            a: d.root_index(&img).expect("L permutes roots"),
            k: f.k,
        };
        match &self.twist {
            None => g,
            Some((t, _)) => d.push_root(t, g),
        }
    }

    /// `s w sigma(s)`.
    pub fn sigma_conj(&self, s: usize, w: &Elt) -> Elt {
        let g = &self.group;
        g.rmul(&g.lmul(s, w), self.perm[s])
    }

    /// `x w sigma(x)^{-1}`.
    pub fn conj_by(&self, x: &Elt, w: &Elt) -> Elt {
        let d = self.group.datum();
        d.mul(&d.mul(x, w), &d.inv(&self.apply(x)))
    }

    /// `w sigma(w) ... sigma^{k-1}(w)`.
    pub fn twisted_power(&self, w: &Elt, k: usize) -> Elt {
        let d = self.group.datum();
        let mut acc = d.identity();
        let mut cur = w.clone();
        for _ in 0..k {
            acc = d.mul(&acc, &cur);
            cur = self.apply(&cur);
        }
        acc
    }

    /// The Newton vector `nu_w` (not made dominant) and the period used.
    pub fn newton_vector(&self, w: &Elt) -> Result<(RationalCoweight, usize)> {
        let d = self.group.datum();
        let u = self.twisted_power(w, self.order);
        let cap = d.weyl().order();
        let mut p = u.clone();
        let mut m = 1;
        while p.u != 0 {
            m += 1;
            if m > cap {
                return Err(Error::PeriodOverflow(format!(
                    "finite part has order > |W0| = {cap}"
                )));
            }
            p = d.mul(&p, &u);
        }
        let n = self.order * m;
        Ok((RationalCoweight::new(p.lambda, n as i64), n))
    }

    pub fn newton_point(&self, w: &Elt) -> Result<NewtonPoint> {
        let (nu, period) = self.newton_vector(w)?;
        Ok(NewtonPoint {
            nu: self.group.datum().dominant_rep(&nu).0,
            period,
        })
    }

    /// `(kappa_0, kappa)`: class in `pi_1` and in the sigma-coinvariants.
    pub fn kottwitz(&self, w: &Elt) -> (Vec<i64>, Vec<i64>) {
        let d = self.group.datum();
        (
            d.pi1().project(&w.lambda),
            self.coinvariants.project(&w.lambda),
        )
    }

    pub fn coinvariants(&self) -> &LatticeQuotient {
        &self.coinvariants
    }

    pub fn class_tag(&self, w: &Elt) -> Result<StraightClassTag> {
        let np = self.newton_point(w)?;
        let (k0, k) = self.kottwitz(w);
        Ok(StraightClassTag {
            nu: np.nu,
            period: np.period,
            kappa: k,
            kappa0: k0,
        })
    }

    pub fn is_straight(&self, w: &Elt) -> Result<bool> {
        let np = self.newton_point(w)?;
        let rhs = self.group.datum().pair_two_rho(&np.nu);
        Ok(Ratio::from_integer(i64::from(self.group.length(w))) == rhs)
    }

    /// Repeatedly explores the equal-length part of the sigma-conjugation
    /// graph and takes the first length-decreasing step found.
    pub fn reduce_to_minimal(&self, w: &Elt, budget: usize) -> Result<(Elt, ReductionPath)> {
        let g = &self.group;
        let mut cur = w.clone();
        let mut steps = Vec::new();
        loop {
            let l = g.length(&cur);
            let mut parent: HashMap<Elt, (usize, Elt)> = HashMap::new();
            let mut seen: HashSet<Elt> = HashSet::from([cur.clone()]);
            let mut queue = VecDeque::from([cur.clone()]);
            let mut found = None;
            'bfs: while let Some(x) = queue.pop_front() {
                for s in 0..g.num_simple() {
                    let y = self.sigma_conj(s, &x);
                    let ly = g.length(&y);
                    if ly < l {
                        found = Some((x.clone(), s, y));
                        break 'bfs;
                    }
                    if ly == l && seen.insert(y.clone()) {
                        if seen.len() > budget {
                            return Err(Error::BallExhausted(budget));
                        }
                        parent.insert(y.clone(), (s, x.clone()));
                        queue.push_back(y);
                    }
                }
            }
            let Some((x, s, y)) = found else {
                return Ok((
                    cur,
                    ReductionPath {
                        start: w.clone(),
                        steps,
                    },
                ));
            };
            let mut chain = Vec::new();
            let mut z = x;
            while z != cur {
                let (t, p) = parent[&z].clone();
                chain.push((t, z));
                z = p;
            }
            chain.reverse();
            steps.extend(chain);
            steps.push((s, y.clone()));
            cur = y;
        }
    }

    /// Straight elements of the same length reachable from `w` by
    /// length-preserving `s`-moves and conjugation by `Omega` generators.
    pub fn straight_closure(&self, w: &Elt, budget: usize) -> Result<Vec<Elt>> {
        let g = &self.group;
        let d = g.datum();
        let l = g.length(w);
        let mut movers: Vec<Elt> = Vec::new();
        for om in g.omega_elements() {
            if om.elt != d.identity() {
                movers.push(d.inv(&om.elt));
                movers.push(om.elt);
            }
        }
        let mut seen: HashSet<Elt> = HashSet::from([w.clone()]);
        let mut out = vec![w.clone()];
        let mut i = 0;
        while i < out.len() {
            let x = out[i].clone();
            let mut next: Vec<Elt> = (0..g.num_simple())
                .map(|s| self.sigma_conj(s, &x))
                .collect();
            next.extend(movers.iter().map(|m| self.conj_by(m, &x)));
            for y in next {
                if g.length(&y) == l && seen.insert(y.clone()) {
                    out.push(y);
                    if out.len() > budget {
                        return Err(Error::BudgetExceeded {
                            budget,
                            what: "straight class closure".into(),
                        });
                    }
                }
            }
            i += 1;
        }
        Ok(out)
    }

    pub fn straight_elements_in<'a>(
        &self,
        set: impl IntoIterator<Item = &'a Elt>,
    ) -> Result<Vec<Elt>> {
        let mut out = Vec::new();
        for x in set {
            if self.is_straight(x)? {
                out.push(x.clone());
            }
        }
        Ok(out)
    }

    /// Straight elements grouped by tag; tags ordered by
    /// `(<nu, 2 rho>, nu, kappa)`, elements by `(length, element)`.
    pub fn straight_class_tags<'a>(
        &self,
        set: impl IntoIterator<Item = &'a Elt>,
    ) -> Result<Vec<(StraightClassTag, Vec<Elt>)>> {
        let mut groups: Vec<(StraightClassTag, Vec<Elt>)> = Vec::new();
        for x in self.straight_elements_in(set)? {
            let tag = self.class_tag(&x)?;
            match groups.iter_mut().find(|(t, _)| t.same_class(&tag)) {
                Some((_, v)) => v.push(x),
                None => groups.push((tag, vec![x])),
            }
        }
        let d = self.group.datum();
        groups.sort_by_cached_key(|(t, _)| t.order_key(d));
        for (_, v) in groups.iter_mut() {
            v.sort();
        }
        Ok(groups)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoint {
    pub nu: RationalCoweight,
    pub period: usize,
}

/// `(nu_bar, kappa)`.  `kappa0` (the class in `pi_1` itself) rides along
/// but is not part of the identity of the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightClassTag {
    pub nu: RationalCoweight,
    pub period: usize,
    pub kappa: Vec<i64>,
    pub kappa0: Vec<i64>,
}

impl StraightClassTag {
    pub fn same_class(&self, other: &Self) -> bool {
        self.nu == other.nu && self.kappa == other.kappa
    }

    pub fn order_key(
        &self,
        d: &crate::root_datum::RootDatum,
    ) -> (Ratio<i64>, Vec<Ratio<i64>>, Vec<i64>) {
        (
            d.pair_two_rho(&self.nu),
            self.nu.entries(),
            self.kappa.clone(),
        )
    }

    pub fn to_json(&self) -> TagJson {
        TagJson {
            nu: self.nu.to_strings(),
            kappa: self.kappa.clone(),
            kappa0: self.kappa0.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TagJson {
    pub nu: Vec<String>,
    pub kappa: Vec<i64>,
    pub kappa0: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPath {
    pub start: Elt,
    /// `(s, w_k)` with `w_k = s w_{k-1} sigma(s)`
    pub steps: Vec<(usize, Elt)>,
}
