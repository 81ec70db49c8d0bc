//! Representations of the cyclic group `Z/p^e` over `F_p`, recorded by the
//! Jordan type of the generator.
//!
//! Every decomposition is recomputed from linear algebra: build the unipotent
//! operator on the new space, take `N = U - I`, and read block multiplicities
//! off the rank profile `rank(N^k)`. No closed-form tensor product rule is
//! used here.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::scalars::{Fp, FpMatrix, Prime};
use crate::verlinde::FusionElement;
use crate::{Error, Result};

/// Default cap on the group order `p^e` for matrix computations.
pub const DEFAULT_ORDER_CAP: u64 = 64;

/// A direct sum of Jordan blocks `J_k`, `1 ≤ k ≤ p^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModuleJson", into = "ModuleJson")]
pub struct JordanModule {
    p: Prime,
    e: u32,
    /// Sorted ascending.
    blocks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    p: u64,
    e: u32,
    blocks: Vec<usize>,
}

impl TryFrom<ModuleJson> for JordanModule {
    type Error = Error;
    fn try_from(raw: ModuleJson) -> Result<Self> {
        JordanModule::new(Prime::new(raw.p)?, raw.e, raw.blocks)
    }
}

impl From<JordanModule> for ModuleJson {
    fn from(v: JordanModule) -> Self {
        ModuleJson {
            p: v.p.get(),
            e: v.e,
            blocks: v.blocks,
        }
    }
}

impl JordanModule {
    pub fn new(p: Prime, e: u32, mut blocks: Vec<usize>) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument(
                "group order exponent must be at least 1".into(),
            ));
        }
        let order = p
            .get()
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} overflows")))?;
        if let Some(&bad) = blocks.iter().find(|&&b| b == 0 || b as u64 > order) {
            return Err(Error::InvalidArgument(format!(
                "block size {bad} outside 1..={order}"
            )));
        }
        blocks.sort_unstable();
        Ok(JordanModule { p, e, blocks })
    }

    /// The single block `J_n` for `Z/p`.
    pub fn block(p: Prime, n: usize) -> Result<Self> {
        Self::new(p, 1, vec![n])
    }

    pub fn unit(p: Prime, e: u32) -> Result<Self> {
        Self::new(p, e, vec![1])
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.p.get().pow(self.e)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `dim_K V` reduced into `F_p`, the categorical dimension.
    pub fn cat_dim(&self) -> Fp {
        Fp::from_u64(self.dim() as u64, self.p)
    }

    /// Multiplicity of `J_k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.blocks.iter().filter(|&&b| b == k).count()
    }

    pub fn direct_sum(&self, other: &JordanModule) -> Result<JordanModule> {
        same_group(self, other)?;
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        JordanModule::new(self.p, self.e, blocks)
    }

    /// `J_k* ≅ J_k`: the inverse transpose of a unipotent Jordan block is
    /// again a single unipotent Jordan block of the same size.
    pub fn dual(&self) -> JordanModule {
        self.clone()
    }

    /// Block-diagonal unipotent matrix of the generator.
    pub fn unipotent(&self) -> FpMatrix {
        let blocks: Vec<FpMatrix> = self
            .blocks
            .iter()
            .map(|&n| jordan_block(self.p, n))
            .collect();
        FpMatrix::block_diag(self.p, &blocks)
    }

    /// Rejects modules whose group order exceeds `cap`.
    pub fn check_order_cap(&self, cap: u64) -> Result<()> {
        if self.order() > cap {
            return Err(Error::CapExceeded {
                what: "group order p^e",
                value: self.order(),
                cap,
            });
        }
        Ok(())
    }
}

impl fmt::Display for JordanModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("J{b}")).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

fn same_group(a: &JordanModule, b: &JordanModule) -> Result<()> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch(a.p.get(), b.p.get()));
    }
    if a.e != b.e {
        return Err(Error::InvalidArgument(format!(
            "group orders {}^{} and {}^{} differ",
            a.p, a.e, b.p, b.e
        )));
    }
    Ok(())
}

fn jordan_block(p: Prime, n: usize) -> FpMatrix {
    let mut m = FpMatrix::identity(p, n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, 1);
    }
    m
}

/// Jordan type of a unipotent operator whose order divides `order`:
/// the number of blocks of size `k` is `r(k-1) - 2 r(k) + r(k+1)` with
/// `r(k) = rank (U - I)^k`.
pub fn jordan_type(unipotent: &FpMatrix, order: u64) -> Result<Vec<usize>> {
    let n = unipotent.rows();
    let nil = unipotent.sub_identity();
    let profile = nil
        .nilpotent_rank_profile(n + 1)
        .ok_or_else(|| Error::Inconsistent("operator is not unipotent".into()))?;
    let r = |k: usize| profile.get(k).copied().unwrap_or(0) as i64;
    let mut blocks = Vec::new();
    for k in 1..profile.len() {
        let count = r(k - 1) - 2 * r(k) + r(k + 1);
        debug_assert!(count >= 0);
        blocks.extend(std::iter::repeat_n(k, count as usize));
    }
    if blocks.iter().any(|&b| b as u64 > order) {
        return Err(Error::Inconsistent(format!(
            "block larger than the group order {order}"
        )));
    }
    Ok(blocks)
}

type CacheKey = (usize, usize, u64, u32);
static TENSOR_CACHE: LazyLock<RwLock<HashMap<CacheKey, Arc<Vec<usize>>>>> =
    LazyLock::new(Default::default);

/// Jordan type of `J_m ⊗ J_n` for `Z/p^e`, memoised.
pub fn block_tensor(p: Prime, e: u32, m: usize, n: usize) -> Result<Arc<Vec<usize>>> {
    let (m, n) = (m.min(n), m.max(n));
    let key = (m, n, p.get(), e);
    if let Some(hit) = TENSOR_CACHE.read().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let u = jordan_block(p, m).kron(&jordan_block(p, n));
    let blocks = Arc::new(jordan_type(&u, p.get().pow(e))?);
    Ok(Arc::clone(
        TENSOR_CACHE.write().unwrap().entry(key).or_insert(blocks),
    ))
}

/// Tensor product, distributed over the block decompositions of both sides.
pub fn jordan_tensor(a: &JordanModule, b: &JordanModule) -> Result<JordanModule> {
    same_group(a, b)?;
    let mut blocks = Vec::with_capacity(a.dim() * b.dim());
    for &m in &a.blocks {
        for &n in &b.blocks {
            blocks.extend_from_slice(&block_tensor(a.p, a.e, m, n)?);
        }
    }
    JordanModule::new(a.p, a.e, blocks)
}

type Squares = Arc<(Vec<usize>, Vec<usize>)>;
static SQUARE_CACHE: LazyLock<RwLock<HashMap<CacheKey, Squares>>> = LazyLock::new(Default::default);

/// Jordan types of `(S²J_k, ∧²J_k)`, memoised.
fn block_squares(p: Prime, e: u32, k: usize) -> Result<Squares> {
    let key = (k, k, p.get(), e);
    if let Some(hit) = SQUARE_CACHE.read().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let block = JordanModule::new(p, e, vec![k])?;
    let pair = Arc::new((sym2_direct(&block)?.blocks, ext2_direct(&block)?.blocks));
    Ok(Arc::clone(
        SQUARE_CACHE.write().unwrap().entry(key).or_insert(pair),
    ))
}

/// `S²V` or `∧²V` via `Q(A ⊕ B) = Q(A) ⊕ Q(B) ⊕ A ⊗ B`.
fn square_by_blocks(v: &JordanModule, symmetric: bool) -> Result<JordanModule> {
    let mut blocks = Vec::new();
    for (i, &m) in v.blocks.iter().enumerate() {
        let sq = block_squares(v.p, v.e, m)?;
        blocks.extend_from_slice(if symmetric { &sq.0 } else { &sq.1 });
        for &n in &v.blocks[i + 1..] {
            blocks.extend_from_slice(&block_tensor(v.p, v.e, m, n)?);
        }
    }
    JordanModule::new(v.p, v.e, blocks)
}

/// Symmetric square. Refused in characteristic 2, where it does not split
/// the tensor square.
pub fn sym2(v: &JordanModule) -> Result<JordanModule> {
    if v.p.get() == 2 {
        return Err(Error::InvalidArgument(
            "sym2 is not offered in characteristic 2".into(),
        ));
    }
    square_by_blocks(v, true)
}

/// Exterior square.
pub fn ext2(v: &JordanModule) -> Result<JordanModule> {
    square_by_blocks(v, false)
}

/// Symmetric square built as the quotient of `V ⊗ V` by `v ⊗ w - w ⊗ v`,
/// without splitting `V` into blocks first.
pub fn sym2_direct(v: &JordanModule) -> Result<JordanModule> {
    if v.p.get() == 2 {
        return Err(Error::InvalidArgument(
            "sym2 is not offered in characteristic 2".into(),
        ));
    }
    if v.p.get() == 2 {
        return Err(Error::InvalidArgument(
            "sym2 is not offered in characteristic 2".into(),
        ));
    }
    let u = v.unipotent();
    let n = v.dim();
    let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index: HashMap<(usize, usize), usize> =
        basis.iter().enumerate().map(|(k, &ij)| (ij, k)).collect();
    let pm = v.p.get();
    let mut out = FpMatrix::zeros(v.p, basis.len(), basis.len());
    for (col, &(i, j)) in basis.iter().enumerate() {
        for a in 0..n {
            let uai = u.get(a, i);
            if uai == 0 {
                continue;
            }
            for b in 0..n {
                let ubj = u.get(b, j);
                if ubj == 0 {
                    continue;
                }
                // e_a e_b = e_b e_a in the quotient
                let row = index[&(a.min(b), a.max(b))];
                let prev = out.get(row, col);
                out.set(row, col, prev + uai * ubj % pm);
            }
        }
    }
    JordanModule::new(v.p, v.e, jordan_type(&out, v.order())?)
}

/// Exterior square built as the quotient of `V ⊗ V` by the span of `v ⊗ v`.
pub fn ext2_direct(v: &JordanModule) -> Result<JordanModule> {
    exterior_power(v, 2)
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        let inv = Fp::from_u64(m[c][c], Prime::new(p).unwrap())
            .inv()
            .unwrap()
            .value();
        for i in c + 1..n {
            let f = m[i][c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..n {
                m[i][j] = (m[i][j] + p - f * m[c][j] % p) % p;
            }
        }
    }
    det
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `∧^k V`: the generator acts on `e_S` (`|S| = k`) through the `k × k`
/// minors of `U`.
pub fn exterior_power(v: &JordanModule, k: usize) -> Result<JordanModule> {
    let n = v.dim();
    if k > n {
        return JordanModule::new(v.p, v.e, Vec::new());
    }
    if k == 0 {
        return JordanModule::unit(v.p, v.e);
    }
    let u = v.unipotent();
    let p = v.p.get();
    let subsets = k_subsets(n, k);
    let mut out = FpMatrix::zeros(v.p, subsets.len(), subsets.len());
    for (col, s) in subsets.iter().enumerate() {
        for (row, t) in subsets.iter().enumerate() {
            // U is upper triangular, so the minor vanishes unless t ≤ s entrywise
            if t.iter().zip(s).any(|(a, b)| a > b) {
                continue;
            }
            let minor: Vec<Vec<u64>> = t
                .iter()
                .map(|&a| s.iter().map(|&b| u.get(a, b)).collect())
                .collect();
            out.set(row, col, det_mod(minor, p));
        }
    }
    JordanModule::new(v.p, v.e, jordan_type(&out, v.order())?)
}

/// Drops the negligible summands: `J_k` with `p | k`.
pub fn non_negligible_part(v: &JordanModule) -> JordanModule {
    let p = v.p.get() as usize;
    JordanModule {
        p: v.p,
        e: v.e,
        blocks: v.blocks.iter().copied().filter(|b| b % p != 0).collect(),
    }
}

/// Image in `Ver_p`: `m_k` is the number of blocks `J_k`, `k < p`.
pub fn to_verlinde(v: &JordanModule) -> Result<FusionElement> {
    if v.e != 1 {
        return Err(Error::InvalidArgument(format!(
            "Ver_p is the semisimplification of Z/p only, got order {}^{}",
            v.p, v.e
        )));
    }
    let p = v.p.get() as usize;
    let mut m = vec![0u64; p - 1];
    for &b in &v.blocks {
        if b < p {
            m[b - 1] += 1;
        }
    }
    FusionElement::new(v.p, m)
}
