//! The preset catalog.  Roots are integer covectors and coroots integer
//! vectors on `Lambda = Z^r`; for the simply connected types `Lambda` is the
//! coroot lattice with the simple coroots as basis.

use crate::affine::Elt;
use crate::error::{Error, Result};
use crate::root_datum::{dot, Cocharacter, RootDatum};

/// A Frobenius option: lattice automorphism plus an optional twist by a
/// length-zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaOption {
    pub name: String,
    pub lattice: Vec<Vec<i64>>,
    pub twist: Option<Elt>,
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub lattice_doc: &'static str,
    pub datum: RootDatum,
    pub sigmas: Vec<SigmaOption>,
    /// extra coweights added to the test grid
    pub extra_mus: Vec<Cocharacter>,
}

impl Preset {
    pub fn sigma(&self, name: &str) -> Option<&SigmaOption> {
        self.sigmas.iter().find(|s| s.name == name)
    }

    /// Dominant minuscule coweights of the unit box, the highest coroot of
    /// each component, and the preset's extras; deduplicated, in this order.
    pub fn test_mus(&self) -> Vec<Cocharacter> {
        let d = &self.datum;
        let mut out = d.minuscule_box();
        for c in 0..d.components().len() {
            out.push(d.root(d.highest_root(c)).coroot.clone());
        }
        out.extend(self.extra_mus.iter().cloned());
        let mut seen = Vec::new();
        out.retain(|m| {
            if seen.contains(m) {
                false
            } else {
                seen.push(m.clone());
                true
            }
        });
        out
    }
}

pub const PRESET_NAMES: [&str; 13] = [
    "A1_sc",
    "A1_ad",
    "A2_sc",
    "B2_sc",
    "C2_sc",
    "D4_sc",
    "G2_sc",
    "GL2",
    "A1xA1_sc",
    "A1xA1_ad",
    "GU_odd(1)",
    "GU_odd(2)",
    "GU_odd(3)",
];

fn ident(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn trivial(r: usize) -> SigmaOption {
    SigmaOption {
        name: "trivial".into(),
        lattice: ident(r),
        twist: None,
    }
}

fn swap2() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

/// Simply connected datum for a Cartan matrix: `alpha_j[i] = A_ij`.
fn simply_connected(name: &str, cartan: &[Vec<i64>]) -> Result<RootDatum> {
    let n = cartan.len();
    let roots = (0..n)
        .map(|j| (0..n).map(|i| cartan[i][j]).collect())
        .collect();
    RootDatum::new(name, n, roots, ident(n))
}

pub fn preset(name: &str) -> Result<Preset> {
    let p = |lattice_doc, datum, sigmas, extra_mus| Preset {
        name: name.to_string(),
        lattice_doc,
        datum,
        sigmas,
        extra_mus,
    };
    let preset = match name {
        "A1_sc" => p(
            "SL2: Lambda = Z alpha^vee",
            RootDatum::new(name, 1, vec![vec![2]], vec![vec![1]])?,
            vec![trivial(1)],
            vec![],
        ),
        "A1_ad" => p(
            "PGL2: Lambda = Z varpi, alpha^vee = 2 varpi; `inner` twists by t^varpi s_alpha",
            RootDatum::new(name, 1, vec![vec![1]], vec![vec![2]])?,
            vec![
                trivial(1),
                SigmaOption {
                    name: "inner".into(),
                    lattice: ident(1),
                    twist: Some(Elt {
                        lambda: vec![1],
                        u: 1,
                    }),
                },
            ],
            vec![],
        ),
        "A2_sc" => p(
            "SL3 on the coroot basis; `flip` swaps the two simple coroots",
            simply_connected(name, &[vec![2, -1], vec![-1, 2]])?,
            vec![
                trivial(2),
                SigmaOption {
                    name: "flip".into(),
                    lattice: swap2(),
                    twist: None,
                },
            ],
            vec![],
        ),
        "B2_sc" => p(
            "Spin5 on the coroot basis; alpha_1 long",
            simply_connected(name, &[vec![2, -1], vec![-2, 2]])?,
            vec![trivial(2)],
            vec![],
        ),
        "C2_sc" => p(
            "Sp4 on the coroot basis; alpha_2 long",
            simply_connected(name, &[vec![2, -2], vec![-1, 2]])?,
            vec![trivial(2)],
            vec![],
        ),
        "D4_sc" => {
            let c = vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ];
            // permutes the outer coroots 0 -> 2 -> 3 -> 0
            let mut l = vec![vec![0i64; 4]; 4];
            for (from, to) in [(0usize, 2usize), (1, 1), (2, 3), (3, 0)] {
                l[to][from] = 1;
            }
            p(
                "Spin8 on the coroot basis, node 1 central; `triality` rotates the outer nodes",
                simply_connected(name, &c)?,
                vec![
                    trivial(4),
                    SigmaOption {
                        name: "triality".into(),
                        lattice: l,
                        twist: None,
                    },
                ],
                vec![],
            )
        }
        "G2_sc" => p(
            "G2 on the coroot basis; alpha_1 long",
            simply_connected(name, &[vec![2, -1], vec![-3, 2]])?,
            vec![trivial(2)],
            vec![],
        ),
        "GL2" => p(
            "GL2: Lambda = Z^2, alpha = e1 - e2 = alpha^vee",
            RootDatum::new(name, 2, vec![vec![1, -1]], vec![vec![1, -1]])?,
            vec![trivial(2)],
            vec![],
        ),
        "A1xA1_sc" => p(
            "SL2 x SL2 on the coroot basis; `swap` exchanges the factors",
            RootDatum::new(
                name,
                2,
                vec![vec![2, 0], vec![0, 2]],
                vec![vec![1, 0], vec![0, 1]],
            )?,
            vec![
                trivial(2),
                SigmaOption {
                    name: "swap".into(),
                    lattice: swap2(),
                    twist: None,
                },
            ],
            vec![vec![1, 1]],
        ),
        "A1xA1_ad" => p(
            "PGL2 x PGL2: Lambda = Z^2 of fundamental coweights; `swap` exchanges the factors",
            RootDatum::new(
                name,
                2,
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![2, 0], vec![0, 2]],
            )?,
            vec![
                trivial(2),
                SigmaOption {
                    name: "swap".into(),
                    lattice: swap2(),
                    twist: None,
                },
            ],
            vec![],
        ),
        _ => {
            let m = name
                .strip_prefix("GU_odd(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|m| (1..=3).contains(m))
                .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
            return gu_odd(name, m);
        }
    };
    Ok(preset)
}

/// `Lambda = Z^{m+1}`: type C_m on the first `m` coordinates
/// (`alpha_i = e_i - e_{i+1}`, `alpha_m = 2 e_m`, coroots `e_i - e_{i+1}`,
/// `e_m`) and a central coordinate, so that `pi_1 = Z`.
fn gu_odd(name: &str, m: usize) -> Result<Preset> {
    let r = m + 1;
    let e = |i: usize| (0..r).map(|k| i64::from(k == i)).collect::<Vec<i64>>();
    let diff = |i: usize| {
        e(i).iter()
            .zip(e(i + 1))
            .map(|(a, b)| a - b)
            .collect::<Vec<i64>>()
    };
    let mut roots: Vec<Vec<i64>> = (0..m - 1).map(diff).collect();
    let mut coroots = roots.clone();
    roots.push(e(m - 1).iter().map(|x| 2 * x).collect());
    coroots.push(e(m - 1));
    let datum = RootDatum::new(name, r, roots, coroots)?;
    // the highest coroot shifted by the central generator, and the central generator
    let mut shifted = e(0);
    shifted[m] = 1;
    debug_assert!(dot(&datum.simple_roots()[0], &e(m)) == 0);
    Ok(Preset {
        name: name.to_string(),
        lattice_doc: "C_m on the first m coordinates of Z^{m+1}, last coordinate central",
        datum,
        sigmas: vec![trivial(r)],
        extra_mus: vec![shifted, e(m)],
    })
}

pub fn catalog() -> Vec<Preset> {
    PRESET_NAMES
        .iter()
        .map(|n| preset(n).expect("catalog presets are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_stable_and_valid() {
        let cat = catalog();
        let names: Vec<&str> = cat.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, PRESET_NAMES.to_vec());
        let gu2 = preset("GU_odd(2)").unwrap();
        assert_eq!(gu2.datum.weyl().order(), 8);
        assert!(matches!(preset("GU_odd(4)"), Err(Error::UnknownPreset(_))));
        assert!(matches!(preset("nope"), Err(Error::UnknownPreset(_))));
        for p in &cat {
            assert!(p.sigma("trivial").is_some());
            for mu in p.test_mus() {
                assert!(p.datum.is_dominant_int(&mu), "{} {:?}", p.name, mu);
            }
        }
    }

    #[test]
    fn sc_types_have_expected_cartan() {
        let b2 = preset("B2_sc").unwrap().datum;
        assert_eq!(b2.cartan(), &[vec![2, -1], vec![-2, 2]]);
        let c2 = preset("C2_sc").unwrap().datum;
        assert_eq!(c2.cartan(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(b2.num_positive(), 4);
        assert_eq!(preset("G2_sc").unwrap().datum.num_positive(), 6);
        assert_eq!(preset("D4_sc").unwrap().datum.num_positive(), 12);
    }
}
