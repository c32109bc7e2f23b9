//! Admissible sets `Adm(mu)`, their parahoric versions, and checks of the
//! two admissible-set facts used for connectedness.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::affine::{AffineWeyl, AlcoveFrame, Elt};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusDatum;
use crate::root_datum::Cocharacter;

/// Default element budget for enumerations.
pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct AdmissibleSet {
    pub mu: Cocharacter,
    /// `t^{x(mu)}`, sorted
    pub maximal: Vec<Elt>,
    pub tau: Elt,
    /// sorted by `(length, element)`
    pub elements: Vec<Elt>,
    members: HashSet<Elt>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Elt) -> bool {
        self.members.contains(w)
    }
}

/// Sort by `(length, element)` in the given frame.
pub fn sort_by_length(frame: &AlcoveFrame, v: &mut [Elt]) {
    v.sort_by_cached_key(|x| (frame.length(x), x.clone()));
}

/// `{t^{x(mu)} : x in W0}`, deduplicated and sorted.
pub fn maximal_translations(g: &AffineWeyl, mu: &[i64]) -> Vec<Elt> {
    let d = g.datum();
    let w = d.weyl();
    let set: BTreeSet<Vec<i64>> = w.elements().map(|u| w.act(u, mu)).collect();
    set.into_iter().map(|l| d.translation(&l)).collect()
}

/// The length-zero element in the class of `t^mu`.
pub fn tau_mu(g: &AffineWeyl, mu: &[i64]) -> Elt {
    g.omega_part(&g.datum().translation(mu))
}

fn check_mu(g: &AffineWeyl, mu: &[i64]) -> Result<()> {
    if mu.len() != g.datum().rank() {
        return Err(Error::DatumMismatch(format!(
            "mu has length {} on rank {}",
            mu.len(),
            g.datum().rank()
        )));
    }
    Ok(())
}

/// The union of the lower Bruhat intervals of the translations `t^{x(mu)}`.
pub fn adm(g: &AffineWeyl, mu: &[i64], budget: usize) -> Result<AdmissibleSet> {
    check_mu(g, mu)?;
    let maximal = maximal_translations(g, mu);
    let mut all: HashSet<Elt> = HashSet::new();
    for t in &maximal {
        let rest = budget.saturating_sub(all.len()).max(1);
        all.extend(g.lower_interval(t, rest)?);
        if all.len() > budget {
            return Err(Error::BudgetExceeded {
                budget,
                what: "admissible set".into(),
            });
        }
    }
    let mut elements: Vec<Elt> = all.iter().cloned().collect();
    sort_by_length(g, &mut elements);
    Ok(AdmissibleSet {
        mu: mu.to_vec(),
        maximal,
        tau: tau_mu(g, mu),
        elements,
        members: all,
    })
}

/// `w <= t^{x(mu)}` for some `x`, pruned by the Kottwitz class and length.
pub fn in_adm(g: &AffineWeyl, mu: &[i64], w: &Elt) -> bool {
    let t = g.datum().translation(mu);
    if g.kappa(w) != g.kappa(&t) || g.length(w) > g.length(&t) {
        return false;
    }
    maximal_translations(g, mu)
        .iter()
        .any(|m| g.bruhat_leq(w, m))
}

/// The same test without pruning.
pub fn in_adm_naive(g: &AffineWeyl, mu: &[i64], w: &Elt) -> bool {
    let d = g.datum();
    let wz = d.weyl();
    wz.elements()
        .any(|u| g.bruhat_leq(w, &d.translation(&wz.act(u, mu))))
}

/// `Adm(mu)` as the members of the ball of radius `<mu_dom, 2 rho>` around
/// `tau_mu`; an independent route to the same set.
pub fn adm_by_ball_filter(g: &AffineWeyl, mu: &[i64], budget: usize) -> Result<Vec<Elt>> {
    check_mu(g, mu)?;
    let tau = tau_mu(g, mu);
    let n = g.length(&g.datum().translation(mu));
    let ball = g.ball(n, &[tau], budget)?;
    let mut out: Vec<Elt> = ball.into_par_iter().filter(|w| in_adm(g, mu, w)).collect();
    sort_by_length(g, &mut out);
    Ok(out)
}

/// Elements `w` of the set with a cover `w' < w` outside it.
pub fn downward_closure_violations(frame: &AlcoveFrame, set: &[Elt]) -> Vec<(Elt, Elt)> {
    let members: HashSet<&Elt> = set.iter().collect();
    let mut bad = Vec::new();
    for w in set {
        for c in frame.covers_below(w) {
            if !members.contains(&c) {
                bad.push((w.clone(), c));
            }
        }
    }
    bad
}

#[derive(Clone, Debug)]
pub struct ParahoricAdm {
    pub k: Vec<usize>,
    /// `W_K Adm W_K`, sorted by `(length, element)`
    pub elements: Vec<Elt>,
    /// minimal double coset representatives
    pub double_reps: Vec<Elt>,
}

pub fn adm_parahoric(
    g: &AffineWeyl,
    mu: &[i64],
    k: &[usize],
    budget: usize,
) -> Result<ParahoricAdm> {
    g.check_parabolic(k)?;
    let base = adm(g, mu, budget)?;
    let wk = g.parabolic_elements(k)?;
    let d = g.datum();
    let mut all: HashSet<Elt> = HashSet::new();
    for w in &base.elements {
        for a in &wk {
            let aw = d.mul(a, w);
            for b in &wk {
                all.insert(d.mul(&aw, b));
            }
        }
        if all.len() > budget {
            return Err(Error::BudgetExceeded {
                budget,
                what: "parahoric admissible set".into(),
            });
        }
    }
    let mut elements: Vec<Elt> = all.into_iter().collect();
    sort_by_length(g, &mut elements);
    let mut reps: Vec<Elt> = elements
        .iter()
        .map(|x| g.min_double(k, x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    sort_by_length(g, &mut reps);
    Ok(ParahoricAdm {
        k: k.to_vec(),
        elements,
        double_reps: reps,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdmCheckReport {
    /// classes (or reflections) examined
    pub classes: usize,
    /// elements tested for membership
    pub checked: usize,
    pub violations: Vec<Elt>,
}

impl AdmCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every straight element of a straight class meeting `Adm(mu)` lies in
/// `Adm(mu)`.  The straight elements of a class are found as the
/// length-preserving closure of one of them.
pub fn verify_lemma_tom(
    sigma: &FrobeniusDatum,
    mu: &[i64],
    budget: usize,
) -> Result<AdmCheckReport> {
    let g = sigma.group();
    let a = adm(g, mu, budget)?;
    let groups = sigma.straight_class_tags(a.elements.iter())?;
    let mut report = AdmCheckReport {
        classes: groups.len(),
        ..Default::default()
    };
    for (tag, members) in &groups {
        let closure = sigma.straight_closure(&members[0], budget)?;
        for x in closure {
            report.checked += 1;
            debug_assert!(sigma
                .class_tag(&x)
                .map(|t| t.same_class(tag))
                .unwrap_or(false));
            if !a.contains(&x) {
                report.violations.push(x);
            }
        }
    }
    Ok(report)
}

/// `s_j tau_mu in Adm(mu)` for every `j`; needs a connected affine diagram
/// and noncentral `mu`.
pub fn verify_s_tau(g: &AffineWeyl, mu: &[i64]) -> Result<AdmCheckReport> {
    check_mu(g, mu)?;
    if g.num_components() != 1 {
        return Err(Error::HypothesisViolated(format!(
            "affine Dynkin diagram has {} components, need exactly one",
            g.num_components()
        )));
    }
    if g.datum().is_central(mu) {
        return Err(Error::HypothesisViolated(format!("mu = {mu:?} is central")));
    }
    let tau = tau_mu(g, mu);
    let mut report = AdmCheckReport {
        classes: g.num_simple(),
        ..Default::default()
    };
    for j in 0..g.num_simple() {
        let w = g.lmul(j, &tau);
        report.checked += 1;
        if !in_adm(g, mu, &w) {
            report.violations.push(w);
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn group(name: &str) -> AffineWeyl {
        AffineWeyl::new(presets::preset(name).unwrap().datum)
    }

    /// Subword oracle: all products of subwords of reduced words of the
    /// maximal translations.
    fn subword_oracle(g: &AffineWeyl, mu: &[i64]) -> BTreeSet<Elt> {
        let mut out = BTreeSet::new();
        for t in maximal_translations(g, mu) {
            let (word, om) = g.reduced_word(&t);
            for mask in 0u64..(1 << word.len()) {
                let sub: Vec<usize> = (0..word.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| word[i])
                    .collect();
                out.insert(g.from_word(&sub, &om));
            }
        }
        out
    }

    #[test]
    fn sl2_examples() {
        let g = group("A1_sc");
        let a = adm(&g, &[1], DEFAULT_BUDGET).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a.tau, g.datum().identity());
        let words: BTreeSet<Vec<usize>> = a.elements.iter().map(|x| g.reduced_word(x).0).collect();
        assert_eq!(
            words.into_iter().collect::<Vec<_>>(),
            vec![vec![], vec![0], vec![0, 1], vec![1], vec![1, 0]]
        );
        assert_eq!(
            adm(&g, &[0], DEFAULT_BUDGET).unwrap().elements,
            vec![g.datum().identity()]
        );
        assert!(!in_adm(&g, &[1], &g.datum().translation(&[2])));
        assert!(in_adm(&g, &[1], &a.tau));
        assert!(matches!(
            adm(&g, &[3], 10),
            Err(Error::BudgetExceeded { .. })
        ));
        let ad = group("A1_ad");
        let t = tau_mu(&ad, &[1]);
        assert_eq!(
            t,
            Elt {
                lambda: vec![1],
                u: 1
            }
        );
        assert_eq!(ad.length(&t), 0);
    }

    #[test]
    fn gu_tau_is_central_class() {
        let p = presets::preset("GU_odd(2)").unwrap();
        let g = AffineWeyl::new(p.datum.clone());
        for mu in &p.extra_mus {
            let t = tau_mu(&g, mu);
            assert_eq!(g.length(&t), 0);
            assert_eq!(g.kappa(&t), g.kappa(&g.datum().translation(mu)));
        }
    }

    #[test]
    fn matches_oracles_on_all_presets() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum.clone());
            for mu in p.test_mus() {
                let a = adm(&g, &mu, DEFAULT_BUDGET).unwrap();
                let oracle = subword_oracle(&g, &mu);
                let got: BTreeSet<Elt> = a.elements.iter().cloned().collect();
                assert_eq!(got, oracle, "{} {:?}", p.name, mu);
                assert_eq!(
                    adm_by_ball_filter(&g, &mu, DEFAULT_BUDGET).unwrap(),
                    a.elements
                );
                assert!(downward_closure_violations(&g, &a.elements).is_empty());
                let top = g.length(&g.datum().translation(&mu));
                for m in &a.maximal {
                    assert_eq!(g.length(m), top);
                }
                for w in &a.elements {
                    assert!(g.bruhat_leq(&a.tau, w));
                }
                let neg: Vec<i64> = mu.iter().map(|x| -x).collect();
                assert_eq!(adm(&g, &neg, DEFAULT_BUDGET).unwrap().len(), a.len());
            }
        }
    }

    #[test]
    fn pruned_membership_agrees_with_naive() {
        for name in ["A1_ad", "A2_sc", "C2_sc", "GL2", "GU_odd(2)"] {
            let p = presets::preset(name).unwrap();
            let g = AffineWeyl::new(p.datum.clone());
            let ball = g.ball(6, &g.omega_window(1), DEFAULT_BUDGET).unwrap();
            for mu in p.test_mus() {
                for w in ball.iter().step_by(5) {
                    assert_eq!(
                        in_adm(&g, &mu, w),
                        in_adm_naive(&g, &mu, w),
                        "{name} {mu:?} {w:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn parahoric_version() {
        let g = group("A1_sc");
        let p0 = adm_parahoric(&g, &[1], &[], DEFAULT_BUDGET).unwrap();
        let a = adm(&g, &[1], DEFAULT_BUDGET).unwrap();
        assert_eq!(p0.elements, a.elements);
        assert_eq!(p0.double_reps, a.elements);
        let p1 = adm_parahoric(&g, &[1], &[1], DEFAULT_BUDGET).unwrap();
        // brute force W_K x Adm x W_K
        let d = g.datum();
        let wk = [d.identity(), g.reflection(1).clone()];
        let mut brute = BTreeSet::new();
        for x in &a.elements {
            for l in &wk {
                for r in &wk {
                    brute.insert(d.mul(&d.mul(l, x), r));
                }
            }
        }
        assert_eq!(p1.elements.iter().cloned().collect::<BTreeSet<_>>(), brute);
        assert!(downward_closure_violations(&g, &p1.elements).is_empty());
        for r in &p1.double_reps {
            assert!(g.is_min_left(&[1], r) && g.is_min_right(&[1], r));
        }
        let rep = g.min_double(&[1], &d.translation(&[1]));
        assert!(p1.double_reps.contains(&rep));
        assert!(matches!(
            adm_parahoric(&g, &[1], &[0, 1], DEFAULT_BUDGET),
            Err(Error::InfiniteParabolic(_))
        ));
    }

    #[test]
    fn lemmas_on_small_cases() {
        let g = group("A1_sc");
        let s = FrobeniusDatum::trivial(&g, 2);
        let r = verify_lemma_tom(&s, &[1], DEFAULT_BUDGET).unwrap();
        assert!(r.passed());
        assert_eq!(r.classes, 2);
        assert_eq!(r.checked, 3);
        let r0 = verify_lemma_tom(&s, &[0], DEFAULT_BUDGET).unwrap();
        assert!(r0.passed());
        assert!(verify_s_tau(&g, &[1]).unwrap().passed());
        assert!(matches!(
            verify_s_tau(&g, &[0]),
            Err(Error::HypothesisViolated(_))
        ));
        let c2 = group("C2_sc");
        let theta = c2.datum().root(c2.datum().highest_root(0)).coroot.clone();
        assert!(verify_s_tau(&c2, &theta).unwrap().passed());
        let prod = group("A1xA1_sc");
        assert!(matches!(
            verify_s_tau(&prod, &[1, 1]),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
