//! Growth of tensor powers: lengths `c_n`, the growth rate `β = FPdim`, the
//! invariants `m_k` and `b(V)` of a `Z/p`-module, `p`-adic dimensions, and the
//! partition-counting lower bounds on `β` in terms of `dim mod p`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::modrep::{ext2, non_negligible_part, sym2, to_verlinde, JordanModule};
use crate::partitions::{dim_schur, dim_sym_irrep, enumerate_in_box, Partition};
use crate::scalars::{q_int, solve_rational, Fp, Prime, Real};
use crate::verlinde::{cat_dim, fp_dim, is_invertible, power, FusionElement};
use crate::{Error, Result};

/// Default cap on `p` for the partition-enumerating bounds.
pub const DEFAULT_BOUNDS_CAP: u64 = 47;

/// `Σ m_k [k]_q` together with the multiplicity vector it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GrowthJson", into = "GrowthJson")]
pub struct GrowthRate {
    p: Prime,
    m: Vec<u64>,
    numeric: Real,
}

#[derive(Serialize, Deserialize)]
struct GrowthJson {
    p: u64,
    m: Vec<u64>,
    numeric: String,
}

impl From<GrowthRate> for GrowthJson {
    fn from(g: GrowthRate) -> Self {
        GrowthJson {
            p: g.p.get(),
            m: g.m,
            numeric: g.numeric.to_sig_string(30),
        }
    }
}

impl TryFrom<GrowthJson> for GrowthRate {
    type Error = Error;
    /// The numeric field is recomputed from `m`; it is only checked against
    /// the printed digits.
    fn try_from(raw: GrowthJson) -> Result<Self> {
        let g = GrowthRate::from_element(&FusionElement::new(Prime::new(raw.p)?, raw.m)?);
        if g.numeric.to_sig_string(30) != raw.numeric {
            return Err(Error::Inconsistent(format!(
                "numeric {} does not match m",
                raw.numeric
            )));
        }
        Ok(g)
    }
}

impl GrowthRate {
    pub fn from_element(x: &FusionElement) -> Self {
        GrowthRate {
            p: x.p(),
            m: x.multiplicities().to_vec(),
            numeric: fp_dim(x),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn numeric(&self) -> &Real {
        &self.numeric
    }

    pub fn element(&self) -> FusionElement {
        FusionElement::new(self.p, self.m.clone()).expect("validated at construction")
    }

    /// Symbolic rendering such as `[3]_q` or `1 + 2[2]_q`.
    pub fn symbolic(&self) -> String {
        let terms: Vec<String> = self
            .m
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (i, 1) => format!("[{}]_q", i + 1),
                (i, c) => format!("{c}[{}]_q", i + 1),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for GrowthRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.symbolic(), self.numeric)
    }
}

/// `c_n(x)`: the number of simple summands of `x^{⊗n}`.
pub fn tensor_power_length(x: &FusionElement, n: u32) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(power(x, n)?.length())
}

/// `c_n^{1/n}` for `n = 1..=n_max`; by Fekete these increase to `β` along
/// divisibility chains and never exceed it.
pub fn fekete_sequence(x: &FusionElement, n_max: u32) -> Result<Vec<Real>> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut acc = FusionElement::unit(x.p());
    (1..=n_max)
        .map(|n| {
            acc = crate::verlinde::product(&acc, x)?;
            Real::nth_root_of_int(&BigUint::from(acc.length()), n)
        })
        .collect()
}

/// Growth rate `β(x) = lim c_n^{1/n}`, returned as `FPdim(x)` with its
/// multiplicity vector.
pub fn beta(x: &FusionElement) -> Result<GrowthRate> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(GrowthRate::from_element(x))
}

/// `b(V) = β(V̄)`; negligible modules have no growth rate.
pub fn b_invariant(v: &JordanModule) -> Result<GrowthRate> {
    beta(&to_verlinde(v)?)
}

/// An element `Σ c_j ζ^j` of the cyclotomic field `Q(ζ)`, `ζ = e^{2πi/p}`,
/// `p` odd. Coefficients are kept on `ζ^0..ζ^{p-1}` and compared after
/// eliminating `ζ^{p-1}` through `1 + ζ + … + ζ^{p-1} = 0`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    p: Prime,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.normalized() == other.normalized()
    }
}

impl Cyclotomic {
    fn check_odd(p: Prime) -> Result<()> {
        if p.get() == 2 {
            return Err(Error::InvalidArgument(
                "cyclotomic bookkeeping needs an odd prime".into(),
            ));
        }
        Ok(())
    }

    pub fn zero(p: Prime) -> Result<Self> {
        Self::check_odd(p)?;
        Ok(Cyclotomic {
            p,
            coeffs: vec![BigRational::zero(); p.get() as usize],
        })
    }

    /// `q = e^{πi/p} = -ζ^{(p+1)/2}`, so `q^m = (-1)^m ζ^{m(p+1)/2}`.
    fn add_q_power(&mut self, m: i64, weight: &BigRational) {
        let p = self.p.get() as i64;
        let h = (p + 1) / 2;
        let idx = (m * h).rem_euclid(p) as usize;
        if m.rem_euclid(2) == 0 {
            self.coeffs[idx] += weight;
        } else {
            self.coeffs[idx] -= weight;
        }
    }

    /// `[k]_q = q^{k-1} + q^{k-3} + … + q^{1-k}`.
    pub fn q_integer(p: Prime, k: u64) -> Result<Self> {
        let mut out = Self::zero(p)?;
        let one = BigRational::one();
        for j in 0..k as i64 {
            out.add_q_power(k as i64 - 1 - 2 * j, &one);
        }
        Ok(out)
    }

    /// `[k]_{q²}`, the same sum in powers of `q² = ζ`.
    pub fn q2_integer(p: Prime, k: u64) -> Result<Self> {
        let mut out = Self::zero(p)?;
        let one = BigRational::one();
        for j in 0..k as i64 {
            out.add_q_power(2 * (k as i64 - 1 - 2 * j), &one);
        }
        Ok(out)
    }

    /// `Σ_k c_k [k]_q` for `c = (c_1, …, c_{p-1})`.
    pub fn from_q_combination(p: Prime, c: &[i64]) -> Result<Self> {
        let mut out = Self::zero(p)?;
        for (i, &ck) in c.iter().enumerate().filter(|(_, &ck)| ck != 0) {
            out = out.add(
                &Self::q_integer(p, i as u64 + 1)?.scale(&BigRational::from_integer(ck.into())),
            );
        }
        Ok(out)
    }

    pub fn from_q2_combination(p: Prime, c: &[i64]) -> Result<Self> {
        let mut out = Self::zero(p)?;
        for (i, &ck) in c.iter().enumerate().filter(|(_, &ck)| ck != 0) {
            out = out.add(
                &Self::q2_integer(p, i as u64 + 1)?.scale(&BigRational::from_integer(ck.into())),
            );
        }
        Ok(out)
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.p, other.p);
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Cyclotomic {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The automorphism `ζ ↦ ζ^a`, `p ∤ a`.
    pub fn galois(&self, a: u64) -> Cyclotomic {
        let p = self.p.get() as usize;
        assert!(!(a as usize).is_multiple_of(p));
        let mut coeffs = vec![BigRational::zero(); p];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * a as usize % p] += c;
        }
        Cyclotomic { p: self.p, coeffs }
    }

    /// The automorphism sending `q²` to `-q`.
    pub fn galois_q2_to_minus_q(&self) -> Cyclotomic {
        self.galois(self.p.get().div_ceil(2))
    }

    /// Coordinates on the basis `ζ^0..ζ^{p-2}` of `Q(ζ)`.
    fn normalized(&self) -> Vec<BigRational> {
        let last = self.coeffs.last().unwrap().clone();
        self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c - &last)
            .collect()
    }

    /// Coordinates on `[1]_q, …, [(p-1)/2]_q`, a basis of the real subfield
    /// `Q(q + q^{-1})`; `None` if the element is not real.
    pub fn real_coordinates(&self) -> Result<Option<Vec<BigRational>>> {
        let half = (self.p.get() - 1) / 2;
        let columns: Vec<Vec<BigRational>> = (1..=half)
            .map(|k| Ok(Self::q_integer(self.p, k)?.normalized()))
            .collect::<Result<_>>()?;
        let rows = self.p.get() as usize - 1;
        let a: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(solve_rational(&a, &self.normalized()))
    }

    /// Numeric value through `Re ζ^j = cos(2πj/p)`; imaginary parts cancel
    /// for real elements.
    pub fn to_real(&self) -> Real {
        let p = self.p.get() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                &Real::from_ratio(c) * &crate::scalars::Real::cos_pi_ratio(2 * j as i64, p)
            })
            .sum()
    }
}

/// Recovers `m_1..m_{p-1}` from `b = Σ m_k [k]_q` and
/// `b_diff = b(S²V) - b(∧²V) = Σ m_k [k]_{q²}`, both given exactly.
///
/// `b` fixes `m_k + m_{p-k}` on the basis `[k]_q`, `k ≤ (p-1)/2`. Applying the
/// automorphism with `q² ↦ -q` turns `b_diff` into `Σ (-1)^{k-1} m_k [k]_q`,
/// which fixes `m_k - m_{p-k}`.
pub fn recover_mk(p: Prime, b: &Cyclotomic, b_diff: &Cyclotomic) -> Result<Vec<u64>> {
    Cyclotomic::check_odd(p)?;
    if b.p != p || b_diff.p != p {
        return Err(Error::ModulusMismatch(
            p.get(),
            if b.p != p { b.p.get() } else { b_diff.p.get() },
        ));
    }
    let sums = b
        .real_coordinates()?
        .ok_or_else(|| Error::Inconsistent("b(V) is not in Q(q + 1/q)".into()))?;
    let twisted = b_diff
        .galois_q2_to_minus_q()
        .real_coordinates()?
        .ok_or_else(|| {
            Error::Inconsistent("b(S²V) - b(∧²V) is not in the expected field".into())
        })?;
    let pv = p.get() as usize;
    let mut m = vec![0u64; pv - 1];
    let two = BigRational::from_integer(2.into());
    for k in 1..=(pv - 1) / 2 {
        let sign = if k % 2 == 1 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let diff = &twisted[k - 1] * &sign;
        let sum = &sums[k - 1];
        for (slot, val) in [(k, (sum + &diff) / &two), (pv - k, (sum - &diff) / &two)] {
            if !val.is_integer() || val.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "no nonnegative integer m_{slot} (got {val})"
                )));
            }
            m[slot - 1] = val.to_integer().to_u64().expect("fits u64");
        }
    }
    Ok(m)
}

fn signed_difference(a: &FusionElement, b: &FusionElement) -> Vec<i64> {
    a.multiplicities()
        .iter()
        .zip(b.multiplicities())
        .map(|(&x, &y)| x as i64 - y as i64)
        .collect()
}

/// The exact inputs of [`recover_mk`] for a module `V`: `b(V)` and
/// `b(S²V) - b(∧²V)` as cyclotomic numbers, each computed from the
/// decompositions of `V`, `S²V` and `∧²V`.
pub fn b_data(v: &JordanModule) -> Result<(Cyclotomic, Cyclotomic)> {
    let img = to_verlinde(v)?;
    let ones: Vec<i64> = img.multiplicities().iter().map(|&c| c as i64).collect();
    let b = Cyclotomic::from_q_combination(v.p(), &ones)?;
    let diff = signed_difference(&to_verlinde(&sym2(v)?)?, &to_verlinde(&ext2(v)?)?);
    Ok((b, Cyclotomic::from_q_combination(v.p(), &diff)?))
}

/// Verdicts of the divisibility, small-dimension and faithfulness checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleChecks {
    /// `p | dim V - Σ k m_k`.
    pub ii: bool,
    /// For `dim V ≤ p-1`: `dim V = Σ k m_k`, and either `m_{p-1} = 0` or
    /// `V̄ = L_{p-1}`.
    pub iii: Option<bool>,
    /// For faithful `V` (some block of size ≥ 2): `b(V) < dim V`.
    pub iv: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub p: u64,
    pub dim: usize,
    pub m: Vec<u64>,
    pub b: String,
    pub b_numeric: String,
    pub checks: ModuleChecks,
}

pub fn module_checks(v: &JordanModule) -> Result<ModuleReport> {
    let img = to_verlinde(v)?;
    let p = v.p().get() as usize;
    let m = img.multiplicities().to_vec();
    let weighted: u64 = m.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c).sum();
    let dim = v.dim();
    let ii = (dim as i64 - weighted as i64).rem_euclid(p as i64) == 0;
    let iii = (dim < p).then(|| {
        let top = m[p - 2];
        let rest_zero = m[..p - 2].iter().all(|&c| c == 0);
        dim as u64 == weighted && (top == 0 || (top == 1 && rest_zero && dim == p - 1))
    });
    let b_val = fp_dim(&img);
    let faithful = v.blocks().iter().any(|&k| k >= 2);
    let iv = faithful.then(|| b_val < Real::from_int(dim as i64));
    let g = GrowthRate {
        p: v.p(),
        m: m.clone(),
        numeric: b_val,
    };
    Ok(ModuleReport {
        p: p as u64,
        dim,
        m,
        b: g.symbolic(),
        b_numeric: g.numeric.to_sig_string(30),
        checks: ModuleChecks { ii, iii, iv },
    })
}

/// Lower bounds for the residue `d = dim V mod p`; absent when `d = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueBounds {
    pub plancherel: Option<PlancherelBound>,
    pub improved: Option<ImprovedBound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    #[serde(flatten)]
    pub summary: ModuleReport,
    /// `m` as recovered from `b(V)` and `b(S²V) - b(∧²V)` alone.
    pub recovered_m: Vec<u64>,
    pub bounds: ResidueBounds,
}

/// Checks, Galois recovery and residue bounds for `V` in one report.
pub fn invariants_report(v: &JordanModule, bounds_cap: u64) -> Result<InvariantsReport> {
    let summary = module_checks(v)?;
    let recovered_m = if v.p().get() == 2 {
        summary.m.clone()
    } else {
        let (b, diff) = b_data(v)?;
        recover_mk(v.p(), &b, &diff)?
    };
    let d = v.dim() as u64 % v.p().get();
    let bounds = if d == 0 || v.p().get() > bounds_cap {
        ResidueBounds {
            plancherel: None,
            improved: None,
        }
    } else {
        ResidueBounds {
            plancherel: Some(plancherel_bound(v.p(), d, bounds_cap)?),
            improved: Some(improved_bound(v.p(), d, bounds_cap)?),
        }
    };
    Ok(InvariantsReport {
        summary,
        recovered_m,
        bounds,
    })
}

/// Digits `t_0, t_1, …` of a `p`-adic integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicDigits {
    pub p: u64,
    pub digits: Vec<u64>,
}

impl PadicDigits {
    /// `Σ t_i p^i` over the known digits.
    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * self.p + d)
    }
}

fn binomial_mod(t: u64, k: u64, p: Prime) -> Fp {
    if k > t {
        return Fp::zero(p);
    }
    (0..k).fold(Fp::one(p), |acc, i| {
        acc * Fp::from_u64(t - i, p) * Fp::from_u64(i + 1, p).inv().expect("i + 1 < p")
    })
}

/// Reads the digits of `t` off `Σ dim(∧ⁿX) zⁿ = Π_i (1 + z^{p^i})^{t_i}`.
///
/// `dims[n]` is the categorical dimension of `∧ⁿX`. With `N = dims.len()`
/// the digits `t_0..t_m`, `p^m ≤ N-1`, are determined; any coefficient that
/// contradicts the product form is an error.
pub fn padic_digits(p: Prime, dims: &[Fp]) -> Result<PadicDigits> {
    if dims.is_empty() || dims[0] != Fp::one(p) {
        return Err(Error::Inconsistent("dims[0] must be 1".into()));
    }
    if let Some(bad) = dims.iter().find(|x| x.prime() != p) {
        return Err(Error::ModulusMismatch(p.get(), bad.modulus()));
    }
    let pv = p.get() as usize;
    let mut series = dims.to_vec();
    let mut digits = Vec::new();
    while series.len() >= 2 {
        let t = series[1].value();
        let factor: Vec<Fp> = (0..=t).map(|k| binomial_mod(t, k, p)).collect();
        // series / (1+z)^t as a power series truncated to the same length
        let mut quot = vec![Fp::zero(p); series.len()];
        for n in 0..series.len() {
            let mut acc = series[n];
            for k in 1..factor.len().min(n + 1) {
                acc = acc - factor[k] * quot[n - k];
            }
            quot[n] = acc;
        }
        if let Some((n, _)) = quot
            .iter()
            .enumerate()
            .find(|&(n, c)| n % pv != 0 && !c.is_zero())
        {
            return Err(Error::Inconsistent(format!(
                "coefficient of z^{n} contradicts (1+z)^t after digit {}",
                digits.len()
            )));
        }
        digits.push(t);
        series = quot.into_iter().step_by(pv).collect();
    }
    Ok(PadicDigits { p: p.get(), digits })
}

/// `dim ∧ⁿ(K^D) = C(D, n)` reduced mod `p`, `n = 0..len`.
pub fn binomial_dims(p: Prime, d: &BigUint, len: usize) -> Vec<Fp> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigInt::one();
    let d = BigInt::from(d.clone());
    let m = BigInt::from(p.get());
    for n in 0..len {
        let r: u64 = ((&c % &m + &m) % &m).to_u64().unwrap();
        out.push(Fp::from_u64(r, p));
        c = c * (&d - n) / (n + 1);
    }
    out
}

/// Categorical dimensions of `∧ⁿ V`, `n = 0..=dim V`, each computed from the
/// Jordan decomposition of the exterior power.
pub fn exterior_cat_dims(v: &JordanModule) -> Result<Vec<Fp>> {
    (0..=v.dim())
        .map(|n| {
            let w = crate::modrep::exterior_power(v, n)?;
            let nn = non_negligible_part(&w);
            Ok(if v.e() == 1 {
                cat_dim(&to_verlinde(&nn)?)
            } else {
                nn.cat_dim()
            })
        })
        .collect()
}

fn check_bounds_args(p: Prime, d: u64, cap: u64) -> Result<()> {
    if p.get() > cap {
        return Err(Error::CapExceeded {
            what: "p for bound enumeration",
            value: p.get(),
            cap,
        });
    }
    if d == 0 || d >= p.get() {
        return Err(Error::LabelOutOfRange {
            label: d,
            max: p.get() - 1,
        });
    }
    Ok(())
}

/// `(Σ_{λ ⊢ p-1 in a d × (p-d) box} (dim π_λ)²)^{1/(2(p-1))}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlancherelBound {
    pub p: u64,
    pub d: u64,
    /// `P(d, p-d) · (p-1)!`, exact.
    #[serde(with = "crate::scalars::as_string")]
    pub box_sum: BigUint,
    pub bound: Real,
}

pub fn plancherel_bound(p: Prime, d: u64, cap: u64) -> Result<PlancherelBound> {
    check_bounds_args(p, d, cap)?;
    let n = p.get() as usize - 1;
    let box_sum: BigUint = enumerate_in_box(n, d as usize, n + 1 - d as usize)
        .iter()
        .map(|l| dim_sym_irrep(l).pow(2))
        .sum();
    let bound = Real::nth_root_of_int(&box_sum, 2 * n as u32)?;
    Ok(PlancherelBound {
        p: p.get(),
        d,
        box_sum,
        bound,
    })
}

/// Finite-`p` quantities behind the refined lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovedBound {
    pub p: u64,
    pub d: u64,
    /// `M(p,d) = max_{λ ⊢ p-1, ℓ(λ) ≤ d} dim S^λ K^d`.
    #[serde(with = "crate::scalars::as_string")]
    pub m_max: BigUint,
    pub argmax: Partition,
    /// `d^{p-1} / M(p,d)`.
    #[serde(with = "crate::scalars::as_string")]
    pub ratio: BigRational,
    /// `Σ dim π_λ` over the `d × (p-d)` box.
    #[serde(with = "crate::scalars::as_string")]
    pub box_dim_sum: BigUint,
    /// Whether `box_dim_sum ≥ ratio`.
    pub inequality_holds: bool,
    /// `box_dim_sum^{1/(p-1)}`, a lower bound on `β` since the box sum
    /// bounds the length of `Y^{⊗(p-1)}` from below.
    pub bound: Real,
    /// `d / p^{(d²-d)/(2p)}`, the leading term of the asymptotic bound.
    pub asymptotic: Real,
}

pub fn improved_bound(p: Prime, d: u64, cap: u64) -> Result<ImprovedBound> {
    check_bounds_args(p, d, cap)?;
    let n = p.get() as usize - 1;
    let du = d as usize;
    let (argmax, m_max) = enumerate_in_box(n, du, n)
        .into_iter()
        .map(|l| {
            let dim = dim_schur(&l, du);
            (l, dim)
        })
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("the one-row partition always fits");
    let top = BigUint::from(d).pow(n as u32);
    let ratio = BigRational::new(BigInt::from(top.clone()), BigInt::from(m_max.clone()));
    let box_dim_sum: BigUint = enumerate_in_box(n, du, n + 1 - du)
        .iter()
        .map(dim_sym_irrep)
        .sum();
    let inequality_holds = &box_dim_sum * &m_max >= top;
    let bound = Real::nth_root_of_int(&box_dim_sum, n as u32)?;
    let denom = Real::nth_root_of_int(
        &BigUint::from(p.get()).pow((d * d - d) as u32),
        2 * p.get() as u32,
    )?;
    let asymptotic = &Real::from_int(d as i64) / &denom;
    Ok(ImprovedBound {
        p: p.get(),
        d,
        m_max,
        argmax,
        ratio,
        box_dim_sum,
        inequality_holds,
        bound,
        asymptotic,
    })
}

/// One simple object in the sweep over non-invertible labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub p: u64,
    pub k: u64,
    pub beta: Real,
}

/// `β(L_k)` for every non-invertible simple `L_k` of `Ver_p`, `p ≤ max_p`.
pub fn non_invertible_sweep(max_p: u64) -> Result<Vec<SweepEntry>> {
    let mut out = Vec::new();
    for p in (2..=max_p).filter(|&n| crate::scalars::is_prime(n)) {
        let pr = Prime::new(p)?;
        for k in 1..p {
            let x = FusionElement::simple(pr, k)?;
            if !is_invertible(&x)? {
                out.push(SweepEntry {
                    p,
                    k,
                    beta: beta(&x)?.numeric,
                });
            }
        }
    }
    Ok(out)
}

/// Numeric `[k]_q`, exposed for reports.
pub fn q_value(p: Prime, k: u64) -> Result<Real> {
    q_int(p, k, 1)
}
