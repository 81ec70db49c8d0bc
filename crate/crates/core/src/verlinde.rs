//! The Verlinde fusion ring `Ver_p`: simple labels `L_1..L_{p-1}` with the
//! truncated Clebsch–Gordan rule
//! `L_m ⊗ L_n = ⊕_{i=1}^{min(m,n,p-m,p-n)} L_{|m-n|+2i-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::scalars::{q_int, Fp, Prime, Real};
use crate::{Error, Result};

/// An element of the Grothendieck ring of `Ver_p`, as multiplicities of
/// `L_1..L_{p-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FusionJson", into = "FusionJson")]
pub struct FusionElement {
    p: Prime,
    m: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FusionJson {
    p: u64,
    m: Vec<u64>,
}

impl TryFrom<FusionJson> for FusionElement {
    type Error = Error;
    fn try_from(raw: FusionJson) -> Result<Self> {
        FusionElement::new(Prime::new(raw.p)?, raw.m)
    }
}

impl From<FusionElement> for FusionJson {
    fn from(x: FusionElement) -> Self {
        FusionJson {
            p: x.p.get(),
            m: x.m,
        }
    }
}

fn check_label(p: Prime, k: u64) -> Result<()> {
    if k == 0 || k >= p.get() {
        return Err(Error::LabelOutOfRange {
            label: k,
            max: p.get() - 1,
        });
    }
    Ok(())
}

impl FusionElement {
    pub fn new(p: Prime, m: Vec<u64>) -> Result<Self> {
        if m.len() as u64 != p.get() - 1 {
            return Err(Error::InvalidArgument(format!(
                "Ver_{p} elements carry {} multiplicities, got {}",
                p.get() - 1,
                m.len()
            )));
        }
        checked_length(&m)?;
        Ok(FusionElement { p, m })
    }

    pub fn zero(p: Prime) -> Self {
        FusionElement {
            p,
            m: vec![0; p.get() as usize - 1],
        }
    }

    pub fn unit(p: Prime) -> Self {
        Self::simple(p, 1).expect("L_1 exists for every prime")
    }

    /// The simple object `L_k`.
    pub fn simple(p: Prime, k: u64) -> Result<Self> {
        check_label(p, k)?;
        let mut x = Self::zero(p);
        x.m[k as usize - 1] = 1;
        Ok(x)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// `m[k-1]` is the multiplicity of `L_k`.
    pub fn multiplicities(&self) -> &[u64] {
        &self.m
    }

    pub fn multiplicity(&self, k: u64) -> u64 {
        self.m
            .get((k as usize).wrapping_sub(1))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|&c| c == 0)
    }

    /// Number of simple summands.
    pub fn length(&self) -> u64 {
        self.m.iter().sum()
    }

    /// `Some(k)` when the element is exactly `L_k`.
    pub fn as_simple(&self) -> Option<u64> {
        (self.length() == 1).then(|| self.m.iter().position(|&c| c == 1).unwrap() as u64 + 1)
    }

    pub fn add(&self, other: &FusionElement) -> Result<FusionElement> {
        same_p(self, other)?;
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>();
        FusionElement::new(self.p, m.ok_or(Error::Overflow("sum"))?)
    }

    pub fn scale(&self, c: u64) -> Result<FusionElement> {
        let m = self
            .m
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Option<Vec<_>>>();
        FusionElement::new(self.p, m.ok_or(Error::Overflow("scalar multiple"))?)
    }

    /// Every simple object is self-dual.
    pub fn dual(&self) -> FusionElement {
        self.clone()
    }

    /// Membership in `Ver_p^+`, the subring spanned by odd labels.
    pub fn in_ver_plus(&self) -> bool {
        self.m
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % 2 == 0)
    }
}

impl fmt::Display for FusionElement {
    /// `2·L2 ⊕ L3`, `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .m
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("L{}", i + 1)
                } else {
                    format!("{c}·L{}", i + 1)
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" ⊕ "))
        }
    }
}

fn same_p(x: &FusionElement, y: &FusionElement) -> Result<()> {
    if x.p != y.p {
        return Err(Error::ModulusMismatch(x.p.get(), y.p.get()));
    }
    Ok(())
}

/// Labels occurring in `L_i ⊗ L_j`, each with multiplicity one.
fn verlinde_labels(p: u64, i: u64, j: u64) -> Vec<u64> {
    let terms = i.min(j).min(p - i).min(p - j);
    let base = i.abs_diff(j);
    (1..=terms).map(|k| base + 2 * k - 1).collect()
}

/// Fusion table of `Ver_p`; `entry(i, j)` lists the labels of `L_i ⊗ L_j`.
#[derive(Debug)]
pub struct FusionTable {
    p: Prime,
    labels: Vec<Vec<Vec<u64>>>,
}

impl FusionTable {
    fn build(p: Prime) -> Self {
        let n = p.get() - 1;
        let labels = (1..=n)
            .map(|i| (1..=n).map(|j| verlinde_labels(p.get(), i, j)).collect())
            .collect();
        FusionTable { p, labels }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn entry(&self, i: u64, j: u64) -> &[u64] {
        &self.labels[i as usize - 1][j as usize - 1]
    }
}

static TABLES: LazyLock<RwLock<HashMap<Prime, Arc<FusionTable>>>> = LazyLock::new(Default::default);

/// Shared, immutable fusion table for `p`.
pub fn table(p: Prime) -> Arc<FusionTable> {
    if let Some(t) = TABLES.read().unwrap().get(&p) {
        return Arc::clone(t);
    }
    let built = Arc::new(FusionTable::build(p));
    Arc::clone(TABLES.write().unwrap().entry(p).or_insert(built))
}

pub fn fusion(p: Prime, i: u64, j: u64) -> Result<FusionElement> {
    check_label(p, i)?;
    check_label(p, j)?;
    let mut out = FusionElement::zero(p);
    for &k in table(p).entry(i, j) {
        out.m[k as usize - 1] += 1;
    }
    Ok(out)
}

/// Lengths are kept within `u64` so that [`FusionElement::length`] is exact.
fn checked_length(m: &[u64]) -> Result<u64> {
    m.iter()
        .try_fold(0u64, |acc, &c| acc.checked_add(c))
        .ok_or(Error::Overflow("length"))
}

pub fn product(x: &FusionElement, y: &FusionElement) -> Result<FusionElement> {
    same_p(x, y)?;
    let t = table(x.p);
    let mut out = FusionElement::zero(x.p);
    for (i, &a) in x.m.iter().enumerate().filter(|(_, &a)| a > 0) {
        for (j, &b) in y.m.iter().enumerate().filter(|(_, &b)| b > 0) {
            for &k in t.entry(i as u64 + 1, j as u64 + 1) {
                let slot = &mut out.m[k as usize - 1];
                *slot = a
                    .checked_mul(b)
                    .and_then(|ab| slot.checked_add(ab))
                    .ok_or(Error::Overflow("product"))?;
            }
        }
    }
    checked_length(&out.m)?;
    Ok(out)
}

pub fn power(x: &FusionElement, n: u32) -> Result<FusionElement> {
    let mut acc = FusionElement::unit(x.p);
    for _ in 0..n {
        acc = product(&acc, x)?;
    }
    Ok(acc)
}

/// Categorical dimension `Σ k·m_k` in `F_p`.
pub fn cat_dim(x: &FusionElement) -> Fp {
    x.m.iter().enumerate().fold(Fp::zero(x.p), |acc, (i, &c)| {
        acc + Fp::from_u64(i as u64 + 1, x.p) * Fp::from_u64(c, x.p)
    })
}

/// Frobenius–Perron dimension `Σ m_k [k]_q`.
pub fn fp_dim(x: &FusionElement) -> Real {
    x.m.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| {
            &Real::from_int(c as i64) * &q_int(x.p, i as u64 + 1, 1).expect("label in range")
        })
        .sum()
}

/// Matrix of left multiplication by `x` on the basis `L_1..L_{p-1}`;
/// `entry[i][j]` is the multiplicity of `L_{i+1}` in `x ⊗ L_{j+1}`.
pub fn multiplication_matrix(x: &FusionElement) -> Vec<Vec<u64>> {
    let n = x.m.len();
    let mut out = vec![vec![0; n]; n];
    for j in 0..n {
        let col = product(x, &FusionElement::simple(x.p, j as u64 + 1).unwrap()).unwrap();
        for i in 0..n {
            out[i][j] = col.m[i];
        }
    }
    out
}

/// Perron–Frobenius eigenvalue of [`multiplication_matrix`] by power
/// iteration on `M + I` (the shift separates `λ` from `-λ`).
pub fn perron_frobenius_numeric(x: &FusionElement, tol: f64) -> f64 {
    let m = multiplication_matrix(x);
    let n = m.len();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0;
    for _ in 0..200_000 {
        let mut w: Vec<f64> = (0..n)
            .map(|i| v[i] + (0..n).map(|j| m[i][j] as f64 * v[j]).sum::<f64>())
            .collect();
        let rayleigh: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let norm = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        w.iter_mut().for_each(|a| *a /= norm);
        let done = (rayleigh - lambda).abs() < tol * 1e-3
            && w.iter().zip(&v).all(|(a, b)| (a - b).abs() < tol);
        lambda = rayleigh;
        v = w;
        if done {
            break;
        }
    }
    lambda - 1.0
}

/// `x ⊗ x* = 1`.
pub fn is_invertible(x: &FusionElement) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(product(x, &x.dual())? == FusionElement::unit(x.p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn el(pr: u64, m: &[u64]) -> FusionElement {
        FusionElement::new(p(pr), m.to_vec()).unwrap()
    }

    #[test]
    fn fusion_examples() {
        assert_eq!(fusion(p(5), 3, 3).unwrap(), el(5, &[1, 0, 1, 0]));
        for pr in [2, 3, 5, 7, 11] {
            for k in 1..pr {
                assert_eq!(
                    fusion(p(pr), 1, k).unwrap(),
                    FusionElement::simple(p(pr), k).unwrap()
                );
            }
        }
        assert_eq!(fusion(p(7), 4, 5).unwrap(), el(7, &[0, 1, 0, 1, 0, 0]));
        assert!(fusion(p(5), 0, 1).is_err());
        assert!(fusion(p(5), 1, 5).is_err());
    }

    #[test]
    fn product_examples() {
        let x = el(5, &[1, 2, 0, 3]);
        assert_eq!(product(&x, &FusionElement::unit(p(5))).unwrap(), x);
        let l2 = FusionElement::simple(p(3), 2).unwrap();
        assert_eq!(product(&l2, &l2).unwrap(), FusionElement::unit(p(3)));
        let two_l2 = el(5, &[0, 2, 0, 0]);
        let l2 = FusionElement::simple(p(5), 2).unwrap();
        assert_eq!(product(&two_l2, &l2).unwrap(), el(5, &[2, 0, 2, 0]));
        assert_eq!(
            product(&two_l2, &FusionElement::unit(p(7))),
            Err(Error::ModulusMismatch(5, 7))
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(cat_dim(&FusionElement::unit(p(5))).value(), 1);
        for pr in [3u64, 5, 7, 13] {
            let top = FusionElement::simple(p(pr), pr - 1).unwrap();
            assert_eq!(cat_dim(&top), Fp::new(-1, p(pr)));
        }
        assert_eq!(cat_dim(&el(5, &[0, 1, 0, 1])).value(), 1);
        assert!(fp_dim(&FusionElement::unit(p(5))).approx_eq(&Real::one(), &Real::epsilon(60)));
        assert_eq!(
            fp_dim(&FusionElement::simple(p(5), 2).unwrap()).to_sig_string(11),
            "1.6180339887"
        );
        assert_eq!(
            fp_dim(&FusionElement::simple(p(7), 3).unwrap()).to_sig_string(8),
            "2.2469796"
        );
    }

    #[test]
    fn invertibles() {
        assert!(is_invertible(&FusionElement::unit(p(7))).unwrap());
        for pr in [3u64, 5, 7, 11] {
            assert!(is_invertible(&FusionElement::simple(p(pr), pr - 1).unwrap()).unwrap());
        }
        assert!(!is_invertible(&FusionElement::simple(p(5), 3).unwrap()).unwrap());
        assert!(!is_invertible(&el(5, &[2, 0, 0, 0])).unwrap());
        assert_eq!(
            is_invertible(&FusionElement::zero(p(5))),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn ver2_has_one_label() {
        let unit = FusionElement::unit(p(2));
        assert_eq!(unit.multiplicities(), &[1]);
        assert_eq!(product(&unit, &unit).unwrap(), unit);
        assert!(FusionElement::simple(p(2), 2).is_err());
    }

    #[test]
    fn ver_plus_predicate() {
        assert!(el(7, &[1, 0, 2, 0, 1, 0]).in_ver_plus());
        assert!(!el(7, &[1, 1, 0, 0, 0, 0]).in_ver_plus());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let x = el(5, &[0, 2, 1, 0]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":5,"m":[0,2,1,0]}"#);
        assert_eq!(serde_json::from_str::<FusionElement>(&s).unwrap(), x);
        assert!(serde_json::from_str::<FusionElement>(r#"{"p":6,"m":[0,0,0,0,0]}"#).is_err());
        assert!(serde_json::from_str::<FusionElement>(r#"{"p":5,"m":[0,0,0]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(el(5, &[1, 0, 2, 0]).to_string(), "L1 ⊕ 2·L3");
        assert_eq!(FusionElement::zero(p(5)).to_string(), "0");
    }
}
