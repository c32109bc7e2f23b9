//! The lattice `sum over S-breve of Z[1/p] eps_i` with its Weyl, `Omega`
//! and Frobenius actions, ampleness, and descent certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::affine::{AlcoveFrame, Elt};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusDatum;
use crate::linalg::Matrix;

pub type QMatrix = Matrix<BigRational>;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Smallest prime factor of `n >= 2`.
pub fn smallest_prime_factor(n: u64) -> u64 {
    (2..)
        .find(|d| d * d > n || n.is_multiple_of(*d))
        .map(|d| if d * d > n { n } else { d })
        .unwrap()
}

/// Coefficients `m_i / p^{e_i}`, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PicClass {
    p: u64,
    coeffs: Vec<(BigInt, u32)>,
}

impl PicClass {
    pub fn new(p: u64, coeffs: Vec<(BigInt, u32)>) -> Self {
        assert!(p >= 2);
        let pb = BigInt::from(p);
        let coeffs = coeffs
            .into_iter()
            .map(|(mut m, mut e)| {
                while e > 0 && (&m % &pb).is_zero() {
                    m /= &pb;
                    e -= 1;
                }
                if m.is_zero() {
                    e = 0;
                }
                (m, e)
            })
            .collect();
        PicClass { p, coeffs }
    }

    pub fn from_integers(p: u64, v: &[i64]) -> Self {
        Self::new(p, v.iter().map(|&x| (BigInt::from(x), 0)).collect())
    }

    /// `None` unless every denominator is a power of `p`.
    pub fn from_rationals(p: u64, v: &[BigRational]) -> Option<Self> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(v.len());
        for x in v {
            let mut den = x.denom().clone();
            let mut e = 0u32;
            while (&den % &pb).is_zero() {
                den /= &pb;
                e += 1;
            }
            if !den.is_one() {
                return None;
            }
            out.push((x.numer().clone(), e));
        }
        Some(Self::new(p, out))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[(BigInt, u32)] {
        &self.coeffs
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        let pb = BigInt::from(self.p);
        self.coeffs
            .iter()
            .map(|(m, e)| BigRational::new(m.clone(), num_traits::pow(pb.clone(), *e as usize)))
            .collect()
    }

    /// Each coefficient as `"m"` or `"m/p^e"` written out.
    pub fn to_strings(&self) -> Vec<String> {
        self.to_rationals().iter().map(|x| x.to_string()).collect()
    }
}

/// Strict positivity outside `K`; coefficients inside `K` must vanish.
pub fn is_ample(l: &PicClass, k: &[usize]) -> Result<bool> {
    for &i in k {
        if l.coeffs.get(i).is_some_and(|(m, _)| !m.is_zero()) {
            return Err(Error::SupportViolation(i));
        }
    }
    Ok(l.coeffs
        .iter()
        .enumerate()
        .filter(|(i, _)| !k.contains(i))
        .all(|(_, (m, _))| m.is_positive()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Reflection(usize),
    Omega(Vec<usize>),
    Sigma(u64),
    Composite,
}

/// A matrix acting on coefficient columns in the `S-breve` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicOperator {
    pub matrix: QMatrix,
    pub provenance: Provenance,
}

impl PicOperator {
    pub fn identity(n: usize) -> Self {
        PicOperator {
            matrix: QMatrix::identity(n),
            provenance: Provenance::Composite,
        }
    }

    pub fn then(&self, other: &PicOperator) -> PicOperator {
        PicOperator {
            matrix: self.matrix.mul(&other.matrix),
            provenance: Provenance::Composite,
        }
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.matrix.mul_vec(v)
    }
}

/// `s_i eps_i = eps_i - sum_j A_ij eps_j`, `s_i eps_j = eps_j` for `j != i`.
pub fn reflection_action(cartan: &[Vec<i64>], i: usize) -> PicOperator {
    let n = cartan.len();
    let m = QMatrix::from_fn(n, n, |r, c| {
        if c == i {
            q(i64::from(r == i) - cartan[i][r])
        } else {
            q(i64::from(r == c))
        }
    });
    PicOperator {
        matrix: m,
        provenance: Provenance::Reflection(i),
    }
}

/// `eps_i -> eps_{perm(i)}`.
pub fn permutation_action(perm: &[usize]) -> PicOperator {
    let n = perm.len();
    PicOperator {
        matrix: QMatrix::from_fn(n, n, |r, c| q(i64::from(perm[c] == r))),
        provenance: Provenance::Omega(perm.to_vec()),
    }
}

/// `q` times the permutation of `S-breve` induced by sigma.
pub fn sigma_action(sigma: &FrobeniusDatum) -> PicOperator {
    let p = permutation_action(sigma.perm());
    PicOperator {
        matrix: p.matrix.scale(&q(sigma.q() as i64)),
        provenance: Provenance::Sigma(sigma.q()),
    }
}

/// The operator of `s_{i_1} ... s_{i_l} omega`.
pub fn word_action(frame: &AlcoveFrame, word: &[usize], omega: &Elt) -> PicOperator {
    let a = frame.affine_cartan();
    let n = a.len();
    let perm = frame.omega_permutation(omega).expect("length-zero element");
    let mut op = PicOperator::identity(n);
    for &s in word {
        op = op.then(&reflection_action(&a, s));
    }
    op.then(&permutation_action(&perm))
}

pub fn element_action(frame: &AlcoveFrame, x: &Elt) -> PicOperator {
    let (word, om) = frame.reduced_word(x);
    word_action(frame, &word, &om)
}

/// Order of `s_i s_j` read off the affine Cartan matrix; `None` for an
/// infinite bond.
pub fn coxeter_m(cartan: &[Vec<i64>], i: usize, j: usize) -> Option<u32> {
    if i == j {
        return Some(1);
    }
    match cartan[i][j] * cartan[j][i] {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// Pairs `(i, j, m_ij)` whose Coxeter relation fails on the lattice.
pub fn coxeter_violations(frame: &AlcoveFrame) -> Vec<(usize, usize, u32)> {
    let a = frame.affine_cartan();
    let n = a.len();
    let id = QMatrix::identity(n);
    let mut bad = Vec::new();
    for i in 0..n {
        let si = reflection_action(&a, i).matrix;
        if si.mul(&si) != id {
            bad.push((i, i, 1));
        }
        for j in i + 1..n {
            if let Some(m) = coxeter_m(&a, i, j) {
                let sj = reflection_action(&a, j).matrix;
                if si.mul(&sj).pow(m) != id {
                    bad.push((i, j, m));
                }
            }
        }
    }
    bad
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentCertificate {
    /// the operator of `x sigma w^{-1}`
    pub operator: QMatrix,
    pub certificate: PicClass,
    /// `operator * certificate - certificate`
    pub difference: Vec<BigRational>,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub operator: Vec<Vec<String>>,
    pub certificate: Vec<String>,
    pub difference: Vec<String>,
    pub invertible: bool,
}

impl DescentCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            operator: self
                .operator
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            certificate: self.certificate.to_strings(),
            difference: self.difference.iter().map(|x| x.to_string()).collect(),
            invertible: self.invertible,
        }
    }
}

/// Solve `(M - 1) L = target` for `M = x sigma w^{-1}` and clear the
/// prime-to-`p` part of the denominators.  `target` defaults to all ones.
pub fn descent_certificate(
    sigma: &FrobeniusDatum,
    w: &Elt,
    x: &Elt,
    target: Option<&[BigRational]>,
) -> Result<DescentCertificate> {
    if !sigma.is_straight(w)? {
        return Err(Error::NotStraight(format!("{w:?}")));
    }
    let g = sigma.group();
    let d = g.datum();
    let n = g.num_simple();
    let ones: Vec<BigRational> = vec![BigRational::one(); n];
    let target = target.unwrap_or(&ones);
    if target.len() != n || target.iter().any(|t| !t.is_positive()) {
        return Err(Error::InvalidDatum(
            "target must have one positive entry per simple affine reflection".into(),
        ));
    }
    let m = element_action(g, x)
        .then(&sigma_action(sigma))
        .then(&element_action(g, &d.inv(w)))
        .matrix;
    let shifted = m.sub(&QMatrix::identity(n));
    let sol = shifted.solve(target).ok_or_else(|| {
        Error::SingularOperator(format!(
            "x sigma w^-1 has eigenvalue 1 for w = {w:?}, x = {x:?}"
        ))
    })?;
    let p = BigInt::from(smallest_prime_factor(sigma.q()));
    let mut scale = BigInt::one();
    for s in &sol {
        let mut den = s.denom().clone();
        while (&den % &p).is_zero() {
            den /= &p;
        }
        scale = scale.lcm(&den);
    }
    let c = BigRational::from_integer(scale);
    let l: Vec<BigRational> = sol.iter().map(|s| s * &c).collect();
    let lm = m.mul_vec(&l);
    let difference: Vec<BigRational> = lm.iter().zip(&l).map(|(a, b)| a - b).collect();
    let certificate =
        PicClass::from_rationals(p.to_u64().unwrap(), &l).expect("denominators are powers of p");
    Ok(DescentCertificate {
        operator: m,
        certificate,
        difference,
        invertible: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineWeyl;
    use crate::presets;
    use proptest::prelude::*;

    fn affine_a1() -> Vec<Vec<i64>> {
        vec![vec![2, -2], vec![-2, 2]]
    }

    #[test]
    fn reflection_examples() {
        let s1 = reflection_action(&affine_a1(), 1);
        assert_eq!(s1.apply(&[q(0), q(1)]), vec![q(2), q(-1)]);
        let sq = s1.then(&s1);
        assert_eq!(sq.matrix, QMatrix::identity(2));
        // A2 finite bond: (s1 s2)^3 = 1
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        let m = reflection_action(&a2, 0)
            .then(&reflection_action(&a2, 1))
            .matrix;
        assert_eq!(m.pow(3), QMatrix::identity(2));
        assert_ne!(m, QMatrix::identity(2));
    }

    #[test]
    fn coxeter_relations_hold_everywhere() {
        for p in presets::catalog() {
            let g = AffineWeyl::new(p.datum.clone());
            assert!(coxeter_violations(&g).is_empty(), "{}", p.name);
        }
    }

    #[test]
    fn words_and_sigma() {
        let g = AffineWeyl::new(presets::preset("A1_sc").unwrap().datum);
        let e = g.datum().identity();
        assert_eq!(word_action(&g, &[], &e).matrix, QMatrix::identity(2));
        let s = FrobeniusDatum::trivial(&g, 2);
        assert_eq!(sigma_action(&s).matrix, QMatrix::identity(2).scale(&q(2)));
        let t = g.datum().translation(&[1]);
        assert_eq!(g.reduced_word(&t).0, vec![0, 1]);
        let a = affine_a1();
        let oracle = reflection_action(&a, 0)
            .matrix
            .mul(&reflection_action(&a, 1).matrix);
        assert_eq!(element_action(&g, &t).matrix, oracle);
    }

    #[test]
    fn certificate_examples() {
        let g = AffineWeyl::new(presets::preset("A1_sc").unwrap().datum);
        let t = g.datum().translation(&[1]);
        for (qq, diff) in [(2u64, 1i64), (3, 2)] {
            let s = FrobeniusDatum::trivial(&g, qq);
            let c = descent_certificate(&s, &t, &t, None).unwrap();
            let l = c.certificate.to_rationals();
            assert!(l.iter().all(|x| x.is_positive()));
            // operator is q I, so L is a multiple of (1, 1)
            assert_eq!(c.operator, QMatrix::identity(2).scale(&q(qq as i64)));
            assert_eq!(l[0], l[1]);
            assert_eq!(c.difference[0].clone() / l[0].clone(), q(diff));
        }
        let s = FrobeniusDatum::trivial(&g, 2);
        assert!(matches!(
            descent_certificate(&s, g.reflection(0), &t, None),
            Err(Error::NotStraight(_))
        ));
        // basic tau with sigma rotating the diagram: M = 2 P
        let p = presets::preset("A1_ad").unwrap();
        let ad = AffineWeyl::new(p.datum.clone());
        let o = p.sigma("inner").unwrap();
        let s = FrobeniusDatum::new(&ad, o.lattice.clone(), o.twist.clone(), 2).unwrap();
        let tau = Elt {
            lambda: vec![1],
            u: 1,
        };
        let c = descent_certificate(&s, &tau, &tau, None).unwrap();
        assert_eq!(c.operator, permutation_action(&[1, 0]).matrix.scale(&q(2)));
        assert!(c.difference.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn ampleness() {
        let one = PicClass::from_integers(2, &[1, 1]);
        assert!(is_ample(&one, &[]).unwrap());
        assert!(!is_ample(&PicClass::from_integers(2, &[1, 0]), &[]).unwrap());
        let half = PicClass::new(2, vec![(BigInt::from(1), 1), (BigInt::from(2), 0)]);
        assert!(is_ample(&half, &[]).unwrap());
        assert_eq!(half.to_strings(), vec!["1/2", "2"]);
        assert!(matches!(
            is_ample(&one, &[1]),
            Err(Error::SupportViolation(1))
        ));
        assert!(is_ample(&PicClass::from_integers(3, &[0, 4]), &[0]).unwrap());
        assert!(PicClass::from_rationals(2, &[BigRational::new(1.into(), 3.into())]).is_none());
        assert_eq!(
            PicClass::new(3, vec![(BigInt::from(9), 2)]),
            PicClass::from_integers(3, &[1])
        );
    }

    proptest! {
        #[test]
        fn ample_matches_sign_oracle(v in proptest::collection::vec((-5i64..6, 0u32..3), 1..6)) {
            let l = PicClass::new(5, v.iter().map(|&(m, e)| (BigInt::from(m), e)).collect());
            let oracle = l.to_rationals().iter().all(|x| x > &BigRational::zero());
            prop_assert_eq!(is_ample(&l, &[]).unwrap(), oracle);
        }
    }
}
