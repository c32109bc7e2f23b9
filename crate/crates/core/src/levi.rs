//! Semistandard Levi data `M_v`, `(v, sigma)`-alcoves and fundamental
//! elements, tau-orbits on `S_v`, the Weyl-group shadow of `J_b`, and the
//! predictions for `pi_0` of `X(mu, b)`.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::admissible::{sort_by_length, tau_mu};
use crate::affine::{AffineRoot, AffineWeyl, AlcoveFrame, Elt};
use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusDatum, StraightClassTag};
use crate::linalg::{fixed_subgroup, GroupPresentation, Matrix};
use crate::newton_bg::{b_g_mu, BGMuElement};
use crate::root_datum::{dot, RationalCoweight, RootDatum};

#[derive(Clone, Debug)]
pub struct LeviDatum {
    pub v: RationalCoweight,
    /// root indices `a` with `<a, v> = 0`
    pub phi0: Vec<usize>,
    /// root indices `a` with `<a, v> > 0`
    pub phi_plus: Vec<usize>,
    /// the Coxeter frame of `W_v`
    pub frame: Arc<AlcoveFrame>,
}

impl LeviDatum {
    pub fn pi1(&self) -> &crate::linalg::LatticeQuotient {
        self.frame.quotient()
    }

    pub fn rank(&self) -> usize {
        self.frame.semisimple_rank()
    }

    /// `v` is regular.
    pub fn is_torus(&self) -> bool {
        self.phi0.is_empty()
    }
}

pub fn levi_of(g: &AffineWeyl, v: &RationalCoweight) -> LeviDatum {
    let d = g.datum();
    let mut phi0 = Vec::new();
    let mut phi_plus = Vec::new();
    for j in 0..d.roots().len() {
        let p = v.pair(&d.root(j).root);
        if p.is_zero() {
            phi0.push(j);
        } else if p.is_positive() {
            phi_plus.push(j);
        }
    }
    let frame = if v.is_zero() {
        g.frame_arc().clone()
    } else {
        Arc::new(AlcoveFrame::levi(g.datum_arc().clone(), v))
    };
    LeviDatum {
        v: v.clone(),
        phi0,
        phi_plus,
        frame,
    }
}

/// Linear part of `w o sigma` applied to `v`.
pub fn linear_part_of(sigma: &FrobeniusDatum, w: &Elt, v: &RationalCoweight) -> RationalCoweight {
    let d = sigma.group().datum();
    let sv = sigma.linear(v);
    RationalCoweight::new(d.weyl().act(w.u, sv.num()), sv.den())
}

/// (1) the linear part of `w sigma` fixes `v`; (2) for every `a` with
/// `<a, v> > 0`, each affine root `(a, k)` positive on the base alcove stays
/// positive when pulled back by `w`.
pub fn is_v_alcove(sigma: &FrobeniusDatum, w: &Elt, v: &RationalCoweight) -> bool {
    if linear_part_of(sigma, w, v) != *v {
        return false;
    }
    let d = sigma.group().datum();
    let wz = d.weyl();
    (0..d.roots().len()).all(|j| {
        if !v.pair(&d.root(j).root).is_positive() {
            return true;
        }
        // (a, k) positive iff k >= [a < 0]; its pullback (a u, k + <a, lambda>)
        // is positive iff k + <a, lambda> >= [a u < 0]
        let neg_a = i64::from(!d.is_positive(j));
        let neg_au = i64::from(!d.is_positive(wz.root_pullback(w.u, j)));
        dot(&d.root(j).root, &w.lambda) - neg_au >= -neg_a
    })
}

/// Window scan of condition (2), kept as an oracle.
pub fn is_v_alcove_by_window(sigma: &FrobeniusDatum, w: &Elt, v: &RationalCoweight) -> bool {
    if linear_part_of(sigma, w, v) != *v {
        return false;
    }
    let d = sigma.group().datum();
    let bound = i64::from(d.length(w)) + 1;
    (0..d.roots().len())
        .filter(|&j| v.pair(&d.root(j).root).is_positive())
        .all(|j| {
            (-bound..=bound).all(|k| {
                let f = AffineRoot { a: j, k };
                !d.is_positive_affine(f) || d.is_positive_affine(d.pull_root(w, f))
            })
        })
}

/// The permutation of `S_v` induced by `Ad(w) o sigma`, if it maps every
/// simple affine root of `M_v` to a simple one.
pub fn tau_permutation(sigma: &FrobeniusDatum, w: &Elt, levi: &LeviDatum) -> Option<Vec<usize>> {
    let d = sigma.group().datum();
    let f = &levi.frame;
    f.simple()
        .iter()
        .map(|s| f.simple_index(d.push_root(w, sigma.apply_root(s.root))))
        .collect()
}

pub fn is_fundamental(sigma: &FrobeniusDatum, w: &Elt, v: &RationalCoweight) -> bool {
    if !is_v_alcove(sigma, w, v) {
        return false;
    }
    let levi = levi_of(sigma.group(), v);
    tau_permutation(sigma, w, &levi).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauOrbit {
    /// `S_v` indices, sorted
    pub members: Vec<usize>,
    pub finite: bool,
    pub longest: Option<Elt>,
    pub longest_word: Option<Vec<usize>>,
    /// some pair of members has linear parts summing to a root
    pub type_b: bool,
    pub summing_pairs: Vec<(usize, usize)>,
}

/// `(a, b) = sum over positive c of <a, c^vee> <b, c^vee>`.
fn invariant_form(d: &RootDatum, a: &[i64], b: &[i64]) -> i64 {
    d.positive_roots()
        .iter()
        .map(|c| dot(a, &c.coroot) * dot(b, &c.coroot))
        .sum()
}

/// Finite iff the Gram matrix of the linear parts is positive definite.
pub fn parabolic_is_finite_by_gram(frame: &AlcoveFrame, j: &[usize]) -> bool {
    let d = frame.datum();
    let n = j.len();
    let q = |x: i64| BigRational::from_integer(x.into());
    let lin: Vec<&Vec<i64>> = j
        .iter()
        .map(|&s| &d.root(frame.simple()[s].root.a).root)
        .collect();
    let gram = Matrix::from_fn(n, n, |a, b| q(invariant_form(d, lin[a], lin[b])));
    (1..=n).all(|k| {
        Matrix::from_fn(k, k, |a, b| gram[(a, b)].clone())
            .det()
            .is_positive()
    })
}

/// Longest element of a finite `W_J` by right ascents.
pub fn longest_element(frame: &AlcoveFrame, j: &[usize]) -> Elt {
    let mut x = frame.datum().identity();
    while let Some(&s) = j.iter().find(|&&s| !frame.is_right_descent(&x, s)) {
        x = frame.rmul(&x, s);
    }
    x
}

pub fn tau_orbits(levi: &LeviDatum, perm: &[usize]) -> Vec<TauOrbit> {
    let f = &levi.frame;
    let d = f.datum();
    let n = f.num_simple();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut members = vec![s];
        seen[s] = true;
        let mut t = perm[s];
        while t != s {
            seen[t] = true;
            members.push(t);
            t = perm[t];
        }
        members.sort_unstable();
        let finite = parabolic_is_finite_by_gram(f, &members);
        let (longest, longest_word) = if finite {
            let x = longest_element(f, &members);
            let w = f.reduced_word(&x).0;
            (Some(x), Some(w))
        } else {
            (None, None)
        };
        let mut summing_pairs = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let sum: Vec<i64> = d
                    .root(f.simple()[a].root.a)
                    .root
                    .iter()
                    .zip(&d.root(f.simple()[b].root.a).root)
                    .map(|(x, y)| x + y)
                    .collect();
                if d.root_index(&sum).is_some() {
                    summing_pairs.push((a, b));
                }
            }
        }
        out.push(TauOrbit {
            members,
            finite,
            longest,
            longest_word,
            type_b: !summing_pairs.is_empty(),
            summing_pairs,
        });
    }
    out
}

/// Integer matrix (rows) of the linear part of `Ad(w) o sigma` on `Lambda`.
pub fn linear_matrix(sigma: &FrobeniusDatum, w: &Elt) -> Vec<Vec<i64>> {
    let d = sigma.group().datum();
    let r = d.rank();
    let cols: Vec<Vec<i64>> = (0..r)
        .map(|j| {
            let e: Vec<i64> = (0..r).map(|i| i64::from(i == j)).collect();
            linear_part_of(sigma, w, &RationalCoweight::integral(&e))
                .num()
                .to_vec()
        })
        .collect();
    (0..r)
        .map(|i| (0..r).map(|j| cols[j][i]).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct JbShadow {
    pub levi: LeviDatum,
    pub tau_perm: Vec<usize>,
    pub orbits: Vec<TauOrbit>,
    /// `pi_1(M_v)^tau`
    pub fixed_group: GroupPresentation,
    /// length-zero elements of `W_v` over the generators of `fixed_group`
    pub omega_generators: Vec<Elt>,
    /// the tau-fixed Iwahori of `M_v` is part of the generating datum
    pub fixed_iwahori: bool,
}

pub fn jb_shadow(sigma: &FrobeniusDatum, w: &Elt) -> Result<JbShadow> {
    if !sigma.is_straight(w)? {
        return Err(Error::NotStraight(format!("{w:?}")));
    }
    let g = sigma.group();
    let (nu, _) = sigma.newton_vector(w)?;
    let levi = levi_of(g, &nu);
    let tau_perm = tau_permutation(sigma, w, &levi).ok_or_else(|| {
        Error::HypothesisViolated(format!(
            "Ad(w) sigma does not permute S_v for straight {w:?}"
        ))
    })?;
    let orbits = tau_orbits(&levi, &tau_perm);
    let coroots: Vec<Vec<i64>> = levi
        .frame
        .simple()
        .iter()
        .filter(|s| !s.affine_node)
        .map(|s| g.datum().root(s.root.a).coroot.clone())
        .collect();
    let fixed_group = fixed_subgroup(&linear_matrix(sigma, w), &coroots);
    let omega_generators = fixed_group
        .generators
        .iter()
        .map(|x| levi.frame.omega_for_class(&levi.pi1().project(x)))
        .collect();
    Ok(JbShadow {
        levi,
        tau_perm,
        orbits,
        fixed_group,
        omega_generators,
        fixed_iwahori: true,
    })
}

/// Group the Dynkin components into sigma-orbits; every orbit must contain
/// a root pairing nontrivially with `mu`.  A torus passes vacuously.
pub fn essentially_noncentral(sigma: &FrobeniusDatum, mu: &[i64]) -> bool {
    let g = sigma.group();
    let comps = g.components();
    let comp_of = |s: usize| comps.iter().position(|c| c.contains(&s)).unwrap();
    let n = comps.len();
    let mut seen = vec![false; n];
    let d = g.datum();
    for c in 0..n {
        if seen[c] {
            continue;
        }
        let mut orbit = vec![c];
        seen[c] = true;
        let mut next = comp_of(sigma.perm()[comps[c][0]]);
        while next != c {
            seen[next] = true;
            orbit.push(next);
            next = comp_of(sigma.perm()[comps[next][0]]);
        }
        let noncentral = orbit
            .iter()
            .flat_map(|&k| comps[k].iter())
            .any(|&s| dot(&d.root(g.simple()[s].root.a).root, mu) != 0);
        if !noncentral {
            return false;
        }
    }
    true
}

/// Every component of `M_v` has a root pairing nontrivially with `lambda`.
pub fn essentially_noncentral_in(levi: &LeviDatum, lambda: &[i64]) -> bool {
    let f = &levi.frame;
    let d = f.datum();
    f.components().iter().all(|c| {
        c.iter()
            .any(|&s| dot(&d.root(f.simple()[s].root.a).root, lambda) != 0)
    })
}

/// `Adm^M(lambda)`: lower intervals in `W_v` of `t^{y lambda}` for `y` in
/// the Weyl group of `M_v`.
pub fn adm_in_levi(levi: &LeviDatum, lambda: &[i64], budget: usize) -> Result<Vec<Elt>> {
    let f = &levi.frame;
    let d = f.datum();
    let w = d.weyl();
    let mut all: HashSet<Elt> = HashSet::new();
    let mut tops: Vec<Vec<i64>> = w
        .elements()
        .filter(|&u| f.contains(&d.finite(u)))
        .map(|u| w.act(u, lambda))
        .collect();
    tops.sort();
    tops.dedup();
    for t in tops {
        all.extend(f.lower_interval(&d.translation(&t), budget)?);
        if all.len() > budget {
            return Err(Error::BudgetExceeded {
                budget,
                what: "Levi admissible set".into(),
            });
        }
    }
    let mut out: Vec<Elt> = all.into_iter().collect();
    sort_by_length(f, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi0Case {
    Basic,
    NonbasicResiduallySplit,
    Unsupported,
}

impl Pi0Case {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pi0Case::Basic => "basic",
            Pi0Case::NonbasicResiduallySplit => "nonbasic-residually-split",
            Pi0Case::Unsupported => "unsupported",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Stratum {
    pub w: Elt,
    pub word: Vec<usize>,
    pub levi: LeviDatum,
    pub lambda: Vec<i64>,
    pub lambda_in_adm: bool,
    pub essentially_nontrivial: bool,
    pub pi1m: GroupPresentation,
}

#[derive(Clone, Debug)]
pub struct Pi0Prediction {
    pub case: Pi0Case,
    pub k: Vec<usize>,
    pub tag: StraightClassTag,
    /// `pi_1(G)^sigma` in the basic case
    pub group: Option<GroupPresentation>,
    pub strata: Vec<Stratum>,
    /// `"exact"` or `"upper_bound (surjection domain)"`
    pub marker: &'static str,
}

pub const UPPER_BOUND_MARKER: &str = "upper_bound (surjection domain)";

/// Select the class of `B(G, mu)` matching `tag` (comparing `nu` and the
/// coinvariant `kappa`) and predict `pi_0`.
pub fn pi0_predict(
    sigma: &FrobeniusDatum,
    mu: &[i64],
    tag: &StraightClassTag,
    k: &[usize],
    budget: usize,
) -> Result<Pi0Prediction> {
    let g = sigma.group();
    g.check_parabolic(k)?;
    if k.iter().any(|&s| !k.contains(&sigma.perm()[s])) {
        return Err(Error::HypothesisViolated(format!(
            "K = {k:?} is not sigma-stable"
        )));
    }
    let b = b_g_mu(sigma, mu, budget)?;
    let elt = b
        .find(tag)
        .ok_or_else(|| Error::TagNotInBGMu(format!("nu = {}, kappa = {:?}", tag.nu, tag.kappa)))?;
    predict_for(sigma, mu, elt, &b.adm, k)
}

fn predict_for(
    sigma: &FrobeniusDatum,
    mu: &[i64],
    elt: &BGMuElement,
    adm: &crate::admissible::AdmissibleSet,
    k: &[usize],
) -> Result<Pi0Prediction> {
    let g = sigma.group();
    let d = g.datum();
    if elt.basic {
        if !essentially_noncentral(sigma, mu) {
            return Err(Error::HypothesisViolated(format!(
                "mu = {mu:?} is not essentially noncentral"
            )));
        }
        let group = fixed_subgroup(sigma.lattice(), d.simple_coroots());
        return Ok(Pi0Prediction {
            case: Pi0Case::Basic,
            k: k.to_vec(),
            tag: elt.tag.clone(),
            group: Some(group),
            strata: vec![],
            marker: "exact",
        });
    }
    if !sigma.residually_split() {
        return Ok(Pi0Prediction {
            case: Pi0Case::Unsupported,
            k: k.to_vec(),
            tag: elt.tag.clone(),
            group: None,
            strata: vec![],
            marker: UPPER_BOUND_MARKER,
        });
    }
    let mut strata = Vec::new();
    for w in elt.straight_in_adm.iter().filter(|w| g.is_min_left(k, w)) {
        let (nu, _) = sigma.newton_vector(w)?;
        let levi = levi_of(g, &nu);
        let coroots: Vec<Vec<i64>> = levi
            .frame
            .simple()
            .iter()
            .filter(|s| !s.affine_node)
            .map(|s| d.root(s.root.a).coroot.clone())
            .collect();
        let pi1m = fixed_subgroup(sigma.lattice(), &coroots);
        strata.push(Stratum {
            w: w.clone(),
            word: g.reduced_word(w).0,
            lambda_in_adm: adm.contains(&d.translation(&w.lambda)),
            essentially_nontrivial: essentially_noncentral_in(&levi, &w.lambda),
            lambda: w.lambda.clone(),
            levi,
            pi1m,
        });
    }
    strata.sort_by(|a, b| (g.length(&a.w), &a.word, &a.w).cmp(&(g.length(&b.w), &b.word, &b.w)));
    Ok(Pi0Prediction {
        case: Pi0Case::NonbasicResiduallySplit,
        k: k.to_vec(),
        tag: elt.tag.clone(),
        group: None,
        strata,
        marker: UPPER_BOUND_MARKER,
    })
}

/// Tag of the basic class `[tau_mu]`.
pub fn basic_tag(sigma: &FrobeniusDatum, mu: &[i64]) -> Result<StraightClassTag> {
    sigma.class_tag(&tau_mu(sigma.group(), mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::DEFAULT_BUDGET;
    use crate::presets;

    fn setup(name: &str, sigma: &str) -> FrobeniusDatum {
        let p = presets::preset(name).unwrap();
        let g = AffineWeyl::new(p.datum.clone());
        let o = p.sigma(sigma).unwrap();
        FrobeniusDatum::new(&g, o.lattice.clone(), o.twist.clone(), 2).unwrap()
    }

    #[test]
    fn levi_examples() {
        let s = setup("A1_sc", "trivial");
        let g = s.group();
        let l0 = levi_of(g, &RationalCoweight::zero(1));
        assert_eq!(l0.frame.num_simple(), g.num_simple());
        let lt = levi_of(g, &RationalCoweight::integral(&[1]));
        assert!(lt.is_torus());
        assert_eq!(lt.frame.num_simple(), 0);
        assert_eq!(lt.pi1().invariant_factors(), vec![0]);
        // C2 with v on the wall of alpha_1: a rank-one Levi
        let c2 = setup("C2_sc", "trivial");
        let d = c2.group().datum();
        let v = RationalCoweight::integral(&[1, 1]);
        let onwall: Vec<usize> = (0..d.num_positive())
            .filter(|&j| v.pair(&d.root(j).root).is_zero())
            .collect();
        let lv = levi_of(c2.group(), &v);
        assert_eq!(onwall.len(), 1);
        assert_eq!(lv.rank(), 1);
        assert_eq!(lv.frame.num_simple(), 2);
        for sa in lv.frame.simple() {
            assert_eq!(d.weyl().act(sa.reflection.u, v.num()), v.num());
            assert_eq!(lv.frame.length(&sa.reflection), 1);
        }
    }

    #[test]
    fn alcove_examples() {
        let s = setup("A1_sc", "trivial");
        let g = s.group();
        let d = g.datum();
        let v = RationalCoweight::integral(&[1]);
        assert!(is_v_alcove(&s, &d.identity(), &v));
        assert!(is_v_alcove(&s, &d.translation(&[1]), &v));
        let neg = d.translation(&[-1]);
        assert_eq!(
            is_v_alcove(&s, &neg, &v),
            is_v_alcove_by_window(&s, &neg, &v)
        );
        assert!(!is_fundamental(
            &s,
            g.reflection(0),
            &RationalCoweight::zero(1)
        ));
        let ad = setup("A1_ad", "trivial");
        for om in ad.group().omega_elements() {
            assert!(is_fundamental(&ad, &om.elt, &RationalCoweight::zero(1)));
        }
    }

    #[test]
    fn alcove_formula_matches_window() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum.clone());
            for o in &p.sigmas {
                let s = FrobeniusDatum::new(&g, o.lattice.clone(), o.twist.clone(), 2).unwrap();
                for w in g
                    .ball(5, &g.omega_window(1), DEFAULT_BUDGET)
                    .unwrap()
                    .iter()
                    .step_by(7)
                {
                    let (nu, _) = s.newton_vector(w).unwrap();
                    assert_eq!(
                        is_v_alcove(&s, w, &nu),
                        is_v_alcove_by_window(&s, w, &nu),
                        "{} {w:?}",
                        p.name
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let s = setup("A1_sc", "trivial");
        let g = s.group();
        let l0 = levi_of(g, &RationalCoweight::zero(1));
        let id = tau_orbits(&l0, &[0, 1]);
        assert_eq!(id.len(), 2);
        assert!(id
            .iter()
            .all(|o| o.finite && !o.type_b && o.longest_word.as_ref().unwrap().len() == 1));
        let sw = tau_orbits(&l0, &[1, 0]);
        assert_eq!(sw.len(), 1);
        assert!(!sw[0].finite);
        // two commuting A1 factors swapped
        let p = setup("A1xA1_sc", "swap");
        let lp = levi_of(p.group(), &RationalCoweight::zero(2));
        let perm = p.perm().to_vec();
        let orbits = tau_orbits(&lp, &perm);
        let fin: Vec<&TauOrbit> = orbits
            .iter()
            .filter(|o| o.members.len() == 2 && o.finite)
            .collect();
        assert!(!fin.is_empty());
        for o in fin {
            assert!(!o.type_b);
            assert_eq!(o.longest_word.as_ref().unwrap().len(), 2);
        }
        // adjacent A2 pair flipped
        let f = setup("A2_sc", "flip");
        let la = levi_of(f.group(), &RationalCoweight::zero(2));
        let orb = tau_orbits(&la, f.perm());
        let pair = orb.iter().find(|o| o.members == vec![1, 2]).unwrap();
        assert!(pair.finite && pair.type_b);
        assert_eq!(pair.longest_word.as_ref().unwrap().len(), 3);
    }

    #[test]
    fn gram_finiteness_matches_diagram_rule() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum.clone());
            let n = g.num_simple();
            for mask in 1u32..(1 << n) {
                let j: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                assert_eq!(
                    parabolic_is_finite_by_gram(&g, &j),
                    g.parabolic_is_finite(&j),
                    "{} {j:?}",
                    p.name
                );
                if g.parabolic_is_finite(&j) && j.len() <= 3 {
                    let w0 = longest_element(&g, &j);
                    let d = g.datum();
                    assert_eq!(d.mul(&w0, &w0), d.identity());
                    let elems = g.parabolic_elements(&j).unwrap();
                    let max = elems.iter().map(|x| g.length(x)).max().unwrap();
                    assert_eq!(g.length(&w0), max);
                }
            }
        }
    }

    #[test]
    fn jb_examples() {
        let s = setup("A1_sc", "trivial");
        let g = s.group();
        let d = g.datum();
        let j = jb_shadow(&s, &d.identity()).unwrap();
        assert_eq!(j.orbits.len(), 2);
        assert!(j.fixed_group.is_trivial());
        let t = jb_shadow(&s, &d.translation(&[1])).unwrap();
        assert!(t.orbits.is_empty());
        assert_eq!(t.fixed_group.invariant_factors, vec![0]);
        assert!(matches!(
            jb_shadow(&s, g.reflection(0)),
            Err(Error::NotStraight(_))
        ));
        let ad = setup("A1_ad", "trivial");
        let om = Elt {
            lambda: vec![1],
            u: 1,
        };
        let jo = jb_shadow(&ad, &om).unwrap();
        assert_eq!(jo.orbits.len(), 1);
        assert!(!jo.orbits[0].finite);
    }

    #[test]
    fn noncentral_examples() {
        let s = setup("A1_sc", "trivial");
        assert!(!essentially_noncentral(&s, &[0]));
        assert!(essentially_noncentral(&s, &[1]));
        let sw = setup("A1xA1_sc", "swap");
        assert!(essentially_noncentral(&sw, &[1, 0]));
        let tr = setup("A1xA1_sc", "trivial");
        assert!(!essentially_noncentral(&tr, &[1, 0]));
    }

    #[test]
    fn pi0_examples() {
        let s = setup("A1_sc", "trivial");
        let basic = basic_tag(&s, &[1]).unwrap();
        let p = pi0_predict(&s, &[1], &basic, &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(p.case, Pi0Case::Basic);
        assert!(p.group.unwrap().is_trivial());
        let top = s.class_tag(&s.group().datum().translation(&[1])).unwrap();
        let n = pi0_predict(&s, &[1], &top, &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(n.case, Pi0Case::NonbasicResiduallySplit);
        assert_eq!(n.marker, UPPER_BOUND_MARKER);
        assert_eq!(n.strata.len(), 2);
        for st in &n.strata {
            assert!(st.levi.is_torus());
            assert_eq!(st.pi1m.invariant_factors, vec![0]);
            assert!(st.lambda_in_adm);
        }
        let ad = setup("A1_ad", "trivial");
        let b = basic_tag(&ad, &[1]).unwrap();
        let pa = pi0_predict(&ad, &[1], &b, &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(pa.group.unwrap().invariant_factors, vec![2]);
        let far = s.class_tag(&s.group().datum().translation(&[3])).unwrap();
        assert!(matches!(
            pi0_predict(&s, &[1], &far, &[], DEFAULT_BUDGET),
            Err(Error::TagNotInBGMu(_))
        ));
        let p0 = basic_tag(&s, &[0]).unwrap();
        assert!(matches!(
            pi0_predict(&s, &[0], &p0, &[], DEFAULT_BUDGET),
            Err(Error::HypothesisViolated(_))
        ));
        let f = setup("A2_sc", "flip");
        let theta = f
            .group()
            .datum()
            .root(f.group().datum().highest_root(0))
            .coroot
            .clone();
        let tt = f.class_tag(&f.group().datum().translation(&theta)).unwrap();
        let u = pi0_predict(&f, &theta, &tt, &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(u.case, Pi0Case::Unsupported);
    }
}
