//! The diagrammatic category `Rep GL_t`.
//!
//! Objects are pairs `[r,s]` standing for `V^{⊗r} ⊗ V^{*⊗s}`; morphisms are
//! `Z[t]`-combinations of walled Brauer diagrams. Composition stacks diagrams
//! and replaces every closed loop by a factor of `t`.
//!
//! Endpoints of a diagram `[r,s] → [u,v]` are numbered `0..r+s+u+v`: the
//! bottom row first (its `r` up-arrows, then its `s` down-arrows), then the
//! top row (`u` up-arrows, then `v` down-arrows).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::{dim_sym_irrep, partitions_of};
use crate::scalars::{bareiss_det, rank_fp, rank_rational, ExactScalar, Fp, TPoly};
use crate::{Error, Result};

/// Default cap on the degree `d = r + v` of a hom space (`d!` diagrams).
pub const DEFAULT_DEGREE_CAP: usize = 6;

/// The object `[r,s] = V^{⊗r} ⊗ V^{*⊗s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiObject {
    pub r: usize,
    pub s: usize,
}

impl BiObject {
    pub const UNIT: BiObject = BiObject { r: 0, s: 0 };

    pub fn new(r: usize, s: usize) -> Self {
        BiObject { r, s }
    }

    /// `[r,s]* = [s,r]`.
    pub fn dual(self) -> Self {
        BiObject {
            r: self.s,
            s: self.r,
        }
    }

    pub fn tensor(self, other: BiObject) -> Self {
        BiObject {
            r: self.r + other.r,
            s: self.s + other.s,
        }
    }

    /// Number of endpoints contributed to a diagram row.
    pub fn width(self) -> usize {
        self.r + self.s
    }
}

impl fmt::Display for BiObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.r, self.s)
    }
}

/// Degree of `Hom(source, target)`: `Some(d)` with `d = r+v = s+u`, `None`
/// when the space is zero.
pub fn hom_degree(source: BiObject, target: BiObject) -> Option<usize> {
    let a = source.r + target.s;
    (a == source.s + target.r).then_some(a)
}

fn check_degree(d: usize, cap: usize) -> Result<()> {
    if d > cap {
        return Err(Error::CapExceeded {
            what: "hom-space degree",
            value: d as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Row {
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Endpoint {
    row: Row,
    up: bool,
}

/// A wall-respecting perfect matching, stored as a partner table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalledDiagram {
    source: BiObject,
    target: BiObject,
    partner: Vec<usize>,
}

impl WalledDiagram {
    fn endpoint(source: BiObject, target: BiObject, i: usize) -> Endpoint {
        if i < source.width() {
            Endpoint {
                row: Row::Bottom,
                up: i < source.r,
            }
        } else {
            Endpoint {
                row: Row::Top,
                up: i - source.width() < target.r,
            }
        }
    }

    fn pair_allowed(source: BiObject, target: BiObject, a: usize, b: usize) -> bool {
        let (x, y) = (
            Self::endpoint(source, target, a),
            Self::endpoint(source, target, b),
        );
        if x.row == y.row {
            x.up != y.up
        } else {
            x.up == y.up
        }
    }

    /// Builds a diagram from unordered endpoint pairs, checking that they form
    /// a perfect matching that respects the wall.
    pub fn from_pairs(
        source: BiObject,
        target: BiObject,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = source.width() + target.width();
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidArgument(format!(
                    "bad endpoint pair ({a},{b})"
                )));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "endpoint reused in ({a},{b})"
                )));
            }
            if !Self::pair_allowed(source, target, a, b) {
                return Err(Error::InvalidArgument(format!(
                    "pair ({a},{b}) crosses the wall"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("matching is not perfect".into()));
        }
        Ok(WalledDiagram {
            source,
            target,
            partner,
        })
    }

    pub fn source(&self) -> BiObject {
        self.source
    }

    pub fn target(&self) -> BiObject {
        self.target
    }

    /// Sorted `(a, b)` pairs with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (a, b))
            .collect()
    }

    pub fn identity(obj: BiObject) -> Self {
        let n = obj.width();
        let partner = (0..2 * n)
            .map(|i| if i < n { i + n } else { i - n })
            .collect();
        WalledDiagram {
            source: obj,
            target: obj,
            partner,
        }
    }

    /// Reflection top-to-bottom, `Hom(X,Y) → Hom(Y,X)`.
    pub fn flip(&self) -> Self {
        let ws = self.source.width();
        let wt = self.target.width();
        let relabel = |i: usize| if i < ws { wt + i } else { i - ws };
        let mut partner = vec![0; ws + wt];
        for (a, &b) in self.partner.iter().enumerate() {
            partner[relabel(a)] = relabel(b);
        }
        WalledDiagram {
            source: self.target,
            target: self.source,
            partner,
        }
    }

    /// Stacks `self` on top of `lower`; returns the diagram and the number of
    /// closed loops removed.
    pub fn compose(&self, lower: &WalledDiagram) -> Result<(WalledDiagram, usize)> {
        if lower.target != self.source {
            return Err(Error::ObjectMismatch {
                expected: self.source.to_string(),
                found: lower.target.to_string(),
            });
        }
        let a = lower.source.width();
        let b = self.source.width();
        let c = self.target.width();
        let mut partner = vec![usize::MAX; a + c];
        let mut seen_mid = vec![false; b];

        // Follows a strand entering the middle row at `m`, first through the
        // diagram on the side given by `into_upper`; returns the outer exit in
        // result numbering.
        let walk = |mut m: usize, mut into_upper: bool, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[m] = true;
                if into_upper {
                    let y = self.partner[m];
                    if y >= b {
                        return a + (y - b);
                    }
                    m = y;
                } else {
                    let y = lower.partner[a + m];
                    if y < a {
                        return y;
                    }
                    m = y - a;
                }
                into_upper = !into_upper;
            }
        };

        for i in 0..a {
            if partner[i] != usize::MAX {
                continue;
            }
            let x = lower.partner[i];
            let end = if x < a {
                x
            } else {
                walk(x - a, true, &mut seen_mid)
            };
            partner[i] = end;
            partner[end] = i;
        }
        for k in 0..c {
            let i = a + k;
            if partner[i] != usize::MAX {
                continue;
            }
            let y = self.partner[b + k];
            let end = if y >= b {
                a + (y - b)
            } else {
                walk(y, false, &mut seen_mid)
            };
            partner[i] = end;
            partner[end] = i;
        }

        let mut loops = 0;
        for start in 0..b {
            if seen_mid[start] {
                continue;
            }
            loops += 1;
            let mut m = start;
            let mut upper = true;
            loop {
                seen_mid[m] = true;
                m = if upper {
                    self.partner[m]
                } else {
                    lower.partner[a + m] - a
                };
                upper = !upper;
                if m == start && upper {
                    break;
                }
            }
        }
        Ok((
            WalledDiagram {
                source: lower.source,
                target: self.target,
                partner,
            },
            loops,
        ))
    }

    /// Juxtaposition, regrouping endpoints so covariant strands precede
    /// contravariant ones in every row.
    pub fn tensor(&self, other: &WalledDiagram) -> WalledDiagram {
        let (s1, t1, s2, t2) = (self.source, self.target, other.source, other.target);
        let source = s1.tensor(s2);
        let target = t1.tensor(t2);
        let ws = source.width();
        let map1 = |i: usize| {
            if i < s1.width() {
                if i < s1.r {
                    i
                } else {
                    source.r + (i - s1.r)
                }
            } else {
                let j = i - s1.width();
                if j < t1.r {
                    ws + j
                } else {
                    ws + target.r + (j - t1.r)
                }
            }
        };
        let map2 = |i: usize| {
            if i < s2.width() {
                if i < s2.r {
                    s1.r + i
                } else {
                    source.r + s1.s + (i - s2.r)
                }
            } else {
                let j = i - s2.width();
                if j < t2.r {
                    ws + t1.r + j
                } else {
                    ws + target.r + t1.s + (j - t2.r)
                }
            }
        };
        let mut partner = vec![0; ws + target.width()];
        for (i, &j) in self.partner.iter().enumerate() {
            partner[map1(i)] = map1(j);
        }
        for (i, &j) in other.partner.iter().enumerate() {
            partner[map2(i)] = map2(j);
        }
        WalledDiagram {
            source,
            target,
            partner,
        }
    }

    /// The symmetry `A ⊗ B → B ⊗ A`.
    pub fn braiding(a: BiObject, b: BiObject) -> WalledDiagram {
        let source = a.tensor(b);
        let target = b.tensor(a);
        let ws = source.width();
        let mut pairs = Vec::with_capacity(ws);
        for i in 0..a.r {
            pairs.push((i, ws + b.r + i));
        }
        for i in 0..b.r {
            pairs.push((a.r + i, ws + i));
        }
        for j in 0..a.s {
            pairs.push((source.r + j, ws + target.r + b.s + j));
        }
        for j in 0..b.s {
            pairs.push((source.r + a.s + j, ws + target.r + j));
        }
        WalledDiagram::from_pairs(source, target, &pairs).expect("braiding respects the wall")
    }

    /// Number of loops after closing every top endpoint onto the matching
    /// bottom endpoint.
    pub fn closure_loops(&self) -> Result<usize> {
        if self.source != self.target {
            return Err(Error::NotEndomorphism);
        }
        let n = self.source.width();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = self.partner[x];
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
                if x == start {
                    break;
                }
            }
        }
        Ok(loops)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    r: usize,
    s: usize,
    u: usize,
    v: usize,
    pairs: Vec<(usize, usize)>,
}

impl Serialize for WalledDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            r: self.source.r,
            s: self.source.s,
            u: self.target.r,
            v: self.target.s,
            pairs: self.pairs(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WalledDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(de)?;
        WalledDiagram::from_pairs(
            BiObject::new(raw.r, raw.s),
            BiObject::new(raw.u, raw.v),
            &raw.pairs,
        )
        .map_err(serde::de::Error::custom)
    }
}

/// Basis of `Hom(source, target)`: one diagram per bijection between the
/// `r+v` endpoints {bottom up, top down} and the `s+u` endpoints {top up,
/// bottom down}, in lexicographic order of the bijection. The identity of an
/// endomorphism space comes first.
pub fn hom_basis(source: BiObject, target: BiObject) -> Vec<WalledDiagram> {
    let Some(d) = hom_degree(source, target) else {
        return Vec::new();
    };
    let ws = source.width();
    let class_a: Vec<usize> = (0..source.r)
        .chain((0..target.s).map(|j| ws + target.r + j))
        .collect();
    let class_b: Vec<usize> = (0..target.r)
        .map(|j| ws + j)
        .chain((0..source.s).map(|j| source.r + j))
        .collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(d);
    let mut used = vec![false; d];
    fn rec(d: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, emit: &mut dyn FnMut(&[usize])) {
        if perm.len() == d {
            emit(perm);
            return;
        }
        for k in 0..d {
            if !used[k] {
                used[k] = true;
                perm.push(k);
                rec(d, perm, used, emit);
                perm.pop();
                used[k] = false;
            }
        }
    }
    rec(d, &mut perm, &mut used, &mut |sigma| {
        let mut partner = vec![0; ws + target.width()];
        for (i, &k) in sigma.iter().enumerate() {
            partner[class_a[i]] = class_b[k];
            partner[class_b[k]] = class_a[i];
        }
        out.push(WalledDiagram {
            source,
            target,
            partner,
        });
    });
    out
}

/// A `Z[t]`-linear combination of diagrams sharing source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramMorphism {
    source: BiObject,
    target: BiObject,
    terms: BTreeMap<WalledDiagram, TPoly>,
}

impl DiagramMorphism {
    pub fn zero(source: BiObject, target: BiObject) -> Self {
        DiagramMorphism {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: WalledDiagram) -> Self {
        Self::from_term(d, TPoly::one())
    }

    pub fn from_term(d: WalledDiagram, coeff: TPoly) -> Self {
        let mut m = Self::zero(d.source, d.target);
        m.add_term(d, coeff);
        m
    }

    pub fn identity(obj: BiObject) -> Self {
        Self::from_diagram(WalledDiagram::identity(obj))
    }

    pub fn braiding(a: BiObject, b: BiObject) -> Self {
        Self::from_diagram(WalledDiagram::braiding(a, b))
    }

    pub fn source(&self) -> BiObject {
        self.source
    }

    pub fn target(&self) -> BiObject {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WalledDiagram, &TPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &WalledDiagram) -> TPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, d: WalledDiagram, coeff: TPoly) {
        assert!(d.source == self.source && d.target == self.target);
        let entry = self.terms.entry(d).or_default();
        *entry = &*entry + &coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &DiagramMorphism) -> Result<DiagramMorphism> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::ObjectMismatch {
                expected: format!("{} -> {}", self.source, self.target),
                found: format!("{} -> {}", other.source, other.target),
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &TPoly) -> DiagramMorphism {
        let mut out = Self::zero(self.source, self.target);
        for (d, k) in &self.terms {
            out.add_term(d.clone(), k * c);
        }
        out
    }

    /// `self ∘ lower`.
    pub fn compose(&self, lower: &DiagramMorphism) -> Result<DiagramMorphism> {
        if lower.target != self.source {
            return Err(Error::ObjectMismatch {
                expected: self.source.to_string(),
                found: lower.target.to_string(),
            });
        }
        let mut out = Self::zero(lower.source, self.target);
        for (df, cf) in &self.terms {
            for (dg, cg) in &lower.terms {
                let (d, loops) = df.compose(dg)?;
                out.add_term(d, &(cf * cg) * &TPoly::t_pow(loops));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &DiagramMorphism) -> DiagramMorphism {
        let mut out = Self::zero(
            self.source.tensor(other.source),
            self.target.tensor(other.target),
        );
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(d1.tensor(d2), c1 * c2);
            }
        }
        out
    }

    pub fn trace(&self) -> Result<TPoly> {
        if self.source != self.target {
            return Err(Error::NotEndomorphism);
        }
        let mut acc = TPoly::zero();
        for (d, c) in &self.terms {
            acc = &acc + &(c * &TPoly::t_pow(d.closure_loops()?));
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    diagram: WalledDiagram,
    coeff: TPoly,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    source: BiObject,
    target: BiObject,
    terms: Vec<TermJson>,
}

impl Serialize for DiagramMorphism {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismJson {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson {
                    diagram: d.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DiagramMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MorphismJson::deserialize(de)?;
        let mut out = DiagramMorphism::zero(raw.source, raw.target);
        for term in raw.terms {
            if term.diagram.source != raw.source || term.diagram.target != raw.target {
                return Err(serde::de::Error::custom(
                    "term diagram does not match morphism objects",
                ));
            }
            out.add_term(term.diagram, term.coeff);
        }
        Ok(out)
    }
}

/// Loop exponents of the trace pairing: entry `(i,j)` is the number of loops
/// in the closure of `d_i ∘ flip(d_j)`.
pub fn gram_exponents(source: BiObject, target: BiObject, cap: usize) -> Result<Vec<Vec<usize>>> {
    let Some(d) = hom_degree(source, target) else {
        return Ok(Vec::new());
    };
    check_degree(d, cap)?;
    let basis = hom_basis(source, target);
    let flipped: Vec<WalledDiagram> = basis.iter().map(WalledDiagram::flip).collect();
    basis
        .iter()
        .map(|di| {
            flipped
                .iter()
                .map(|dj| {
                    let (c, loops) = di.compose(dj)?;
                    Ok(loops + c.closure_loops()?)
                })
                .collect()
        })
        .collect()
}

pub fn gram_matrix_symbolic(
    source: BiObject,
    target: BiObject,
    cap: usize,
) -> Result<Vec<Vec<TPoly>>> {
    Ok(gram_exponents(source, target, cap)?
        .into_iter()
        .map(|row| row.into_iter().map(TPoly::t_pow).collect())
        .collect())
}

/// Gram matrix specialised at an exact value of `t`.
pub fn gram_matrix_at(
    source: BiObject,
    target: BiObject,
    t: &ExactScalar,
    cap: usize,
) -> Result<Vec<Vec<ExactScalar>>> {
    let exps = gram_exponents(source, target, cap)?;
    let max = exps.iter().flatten().copied().max().unwrap_or(0);
    let powers: Vec<ExactScalar> = match t {
        ExactScalar::Rational(q) => {
            let mut acc = BigRational::one();
            (0..=max)
                .map(|_| {
                    let cur = acc.clone();
                    acc = &acc * q;
                    ExactScalar::Rational(cur)
                })
                .collect()
        }
        ExactScalar::Fp(x) => (0..=max)
            .map(|e| ExactScalar::Fp(x.pow(e as u64)))
            .collect(),
    };
    Ok(exps
        .into_iter()
        .map(|row| row.into_iter().map(|e| powers[e].clone()).collect())
        .collect())
}

fn exact_rank(m: &[Vec<ExactScalar>]) -> usize {
    let Some(first) = m.iter().flatten().next() else {
        return 0;
    };
    match first {
        ExactScalar::Rational(_) => {
            let rows: Vec<Vec<BigRational>> = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| match x {
                            ExactScalar::Rational(q) => q.clone(),
                            ExactScalar::Fp(_) => unreachable!("mixed scalar kinds"),
                        })
                        .collect()
                })
                .collect();
            rank_rational(&rows)
        }
        ExactScalar::Fp(_) => {
            let rows: Vec<Vec<Fp>> = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| match x {
                            ExactScalar::Fp(a) => *a,
                            ExactScalar::Rational(_) => unreachable!("mixed scalar kinds"),
                        })
                        .collect()
                })
                .collect();
            rank_fp(&rows)
        }
    }
}

/// Rank of the trace pairing on `Hom(source, target)` at `t` and the size
/// of the diagram basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegligibleRank {
    pub hom_dim: usize,
    pub rank: usize,
    /// Dimension of the hom space modulo negligible morphisms (equal to `rank`).
    pub quotient_dim: usize,
}

pub fn negligible_rank(
    source: BiObject,
    target: BiObject,
    t: &ExactScalar,
    cap: usize,
) -> Result<NegligibleRank> {
    let g = gram_matrix_at(source, target, t, cap)?;
    let rank = exact_rank(&g);
    Ok(NegligibleRank {
        hom_dim: g.len(),
        rank,
        quotient_dim: rank,
    })
}

pub fn gram_determinant(source: BiObject, target: BiObject, cap: usize) -> Result<TPoly> {
    Ok(bareiss_det(&gram_matrix_symbolic(source, target, cap)?))
}

/// `dim Hom_{GL_n}([r,s],[u,v]) = Σ_{λ ⊢ d, ℓ(λ) ≤ n} (dim π_λ)²`, computed
/// from partitions alone.
pub fn schur_weyl_homdim(n: usize, source: BiObject, target: BiObject) -> BigUint {
    let Some(d) = hom_degree(source, target) else {
        return BigUint::zero();
    };
    partitions_of(d)
        .iter()
        .filter(|l| l.len() <= n)
        .map(|l| dim_sym_irrep(l).pow(2))
        .sum()
}

/// Trace form of the regular representation of `End([r,s])`:
/// entry `(i,j) = tr(L_{d_i ∘ d_j})`. Over a field of characteristic zero
/// its radical is the Jacobson radical of the algebra.
pub fn algebra_trace_form(obj: BiObject, cap: usize) -> Result<Vec<Vec<TPoly>>> {
    let d = hom_degree(obj, obj).expect("endomorphism spaces are balanced");
    check_degree(d, cap)?;
    let basis = hom_basis(obj, obj);
    let index: BTreeMap<&WalledDiagram, usize> =
        basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let n = basis.len();
    // products[i][j] = (k, loops) with d_i ∘ d_j = t^loops d_k
    let mut products = vec![vec![(0usize, 0usize); n]; n];
    for (i, di) in basis.iter().enumerate() {
        for (j, dj) in basis.iter().enumerate() {
            let (c, loops) = di.compose(dj)?;
            products[i][j] = (index[&c], loops);
        }
    }
    let left_trace: Vec<TPoly> = (0..n)
        .map(|k| {
            (0..n).fold(TPoly::zero(), |acc, j| {
                let (out, loops) = products[k][j];
                if out == j {
                    &acc + &TPoly::t_pow(loops)
                } else {
                    acc
                }
            })
        })
        .collect();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (k, loops) = products[i][j];
                    &left_trace[k] * &TPoly::t_pow(loops)
                })
                .collect()
        })
        .collect())
}

/// Dimension of the Jacobson radical of `End(obj)` at a rational `t`.
pub fn algebra_radical_dim(obj: BiObject, t: &BigRational, cap: usize) -> Result<usize> {
    let form = algebra_trace_form(obj, cap)?;
    let rows: Vec<Vec<BigRational>> = form
        .iter()
        .map(|r| r.iter().map(|p| p.eval_rational(t)).collect())
        .collect();
    Ok(rows.len() - rank_rational(&rows))
}

/// Integer roots of a polynomial, by the rational root bound on the
/// constant term of the part coprime to `t`.
pub fn integer_roots(f: &TPoly) -> Vec<i64> {
    if f.is_zero() {
        return Vec::new();
    }
    let coeffs = f.coeffs();
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(0);
    }
    let c0 = coeffs[low].clone();
    let bound = c0.magnitude().to_i64().unwrap_or(i64::MAX).min(1 << 20);
    for cand in 1..=bound {
        if c0.magnitude() % BigUint::from(cand as u64) != BigUint::zero() {
            continue;
        }
        for x in [cand, -cand] {
            if f.eval_int(&BigInt::from(x)).is_zero() {
                roots.push(x);
            }
        }
    }
    roots.sort_unstable();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(r: usize, s: usize) -> BiObject {
        BiObject::new(r, s)
    }

    fn cup_cap() -> DiagramMorphism {
        // [1,1] -> [1,1]: bottom 0 (up) to 1 (down), top 2 (up) to 3 (down)
        DiagramMorphism::from_diagram(
            WalledDiagram::from_pairs(obj(1, 1), obj(1, 1), &[(0, 1), (2, 3)]).unwrap(),
        )
    }

    fn q(n: i64) -> ExactScalar {
        ExactScalar::integer(n)
    }

    #[test]
    fn basis_examples() {
        let w11 = hom_basis(obj(1, 1), obj(1, 1));
        assert_eq!(w11.len(), 2);
        assert_eq!(w11[0], WalledDiagram::identity(obj(1, 1)));
        assert_eq!(DiagramMorphism::from_diagram(w11[1].clone()), cup_cap());
        assert!(hom_basis(obj(1, 0), obj(0, 1)).is_empty());
        let w20 = hom_basis(obj(2, 0), obj(2, 0));
        assert_eq!(w20.len(), 2);
    }

    #[test]
    fn cup_cap_squares_to_t() {
        let a = cup_cap();
        assert_eq!(a.compose(&a).unwrap(), a.scale(&TPoly::t()));
    }

    #[test]
    fn swap_is_an_involution_without_loops() {
        let swap = DiagramMorphism::braiding(obj(1, 0), obj(1, 0));
        assert_eq!(
            swap.compose(&swap).unwrap(),
            DiagramMorphism::identity(obj(2, 0))
        );
        let (_, loops) = WalledDiagram::braiding(obj(1, 0), obj(1, 0))
            .compose(&WalledDiagram::braiding(obj(1, 0), obj(1, 0)))
            .unwrap();
        assert_eq!(loops, 0);
    }

    #[test]
    fn tensor_examples() {
        let id10 = DiagramMorphism::identity(obj(1, 0));
        let id01 = DiagramMorphism::identity(obj(0, 1));
        assert_eq!(id10.tensor(&id01), DiagramMorphism::identity(obj(1, 1)));
        let a = cup_cap();
        let ax = a.tensor(&id10);
        assert_eq!(ax.terms().count(), 1);
        assert_eq!(ax.terms().next().unwrap().1, &TPoly::one());
        let aa = a.tensor(&a);
        assert_eq!(aa.compose(&aa).unwrap(), aa.scale(&TPoly::t_pow(2)));
    }

    #[test]
    fn braiding_with_unit_is_identity() {
        for b in [obj(0, 0), obj(1, 0), obj(1, 2), obj(2, 1)] {
            assert_eq!(
                DiagramMorphism::braiding(BiObject::UNIT, b),
                DiagramMorphism::identity(b)
            );
            assert_eq!(
                DiagramMorphism::braiding(b, BiObject::UNIT),
                DiagramMorphism::identity(b)
            );
        }
    }

    #[test]
    fn hexagon() {
        let (x, y, z) = (obj(1, 0), obj(1, 0), obj(0, 1));
        let lhs = DiagramMorphism::braiding(x, y.tensor(z));
        let step1 = DiagramMorphism::braiding(x, y).tensor(&DiagramMorphism::identity(z));
        let step2 = DiagramMorphism::identity(y).tensor(&DiagramMorphism::braiding(x, z));
        assert_eq!(step2.compose(&step1).unwrap(), lhs);
        let lhs2 = DiagramMorphism::braiding(x.tensor(y), z);
        let s1 = DiagramMorphism::identity(x).tensor(&DiagramMorphism::braiding(y, z));
        let s2 = DiagramMorphism::braiding(x, z).tensor(&DiagramMorphism::identity(y));
        assert_eq!(s2.compose(&s1).unwrap(), lhs2);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(
            DiagramMorphism::identity(obj(1, 1)).trace().unwrap(),
            TPoly::t_pow(2)
        );
        assert_eq!(cup_cap().trace().unwrap(), TPoly::t());
        assert_eq!(
            DiagramMorphism::identity(BiObject::UNIT).trace().unwrap(),
            TPoly::one()
        );
        let f = DiagramMorphism::from_diagram(hom_basis(obj(1, 0), obj(1, 0))[0].clone());
        assert_eq!(f.trace().unwrap(), TPoly::t());
        let ev = DiagramMorphism::from_diagram(hom_basis(obj(1, 1), BiObject::UNIT)[0].clone());
        assert_eq!(ev.trace(), Err(Error::NotEndomorphism));
    }

    #[test]
    fn gram_examples() {
        let t = TPoly::t();
        let t2 = TPoly::t_pow(2);
        assert_eq!(
            gram_matrix_symbolic(obj(1, 1), obj(1, 1), DEFAULT_DEGREE_CAP).unwrap(),
            vec![vec![t2.clone(), t.clone()], vec![t, t2]]
        );
        let r0 = negligible_rank(obj(1, 1), obj(1, 1), &q(0), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(r0.rank, 0);
        let r1 = negligible_rank(obj(1, 1), obj(1, 1), &q(1), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(r1.rank, 1);
        let generic = ExactScalar::Rational(BigRational::new(7.into(), 2.into()));
        assert_eq!(
            negligible_rank(obj(1, 1), obj(1, 1), &generic, DEFAULT_DEGREE_CAP)
                .unwrap()
                .rank,
            2
        );
        assert_eq!(
            negligible_rank(obj(2, 0), obj(2, 0), &q(1), DEFAULT_DEGREE_CAP)
                .unwrap()
                .rank,
            1
        );
    }

    #[test]
    fn gram_over_finite_field() {
        let p = crate::scalars::Prime::new(3).unwrap();
        // t = 4 ≡ 1 mod 3 behaves like t = 1 on W_{1,1}
        let t = ExactScalar::Fp(Fp::new(4, p));
        assert_eq!(
            negligible_rank(obj(1, 1), obj(1, 1), &t, DEFAULT_DEGREE_CAP)
                .unwrap()
                .rank,
            1
        );
    }

    #[test]
    fn degree_cap_enforced() {
        let err = gram_exponents(obj(4, 0), obj(4, 0), 3).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn schur_weyl_examples() {
        assert_eq!(
            schur_weyl_homdim(1, obj(1, 1), obj(1, 1)),
            BigUint::from(1u32)
        );
        for n in 2..6 {
            assert_eq!(
                schur_weyl_homdim(n, obj(1, 1), obj(1, 1)),
                BigUint::from(2u32)
            );
        }
        assert_eq!(
            schur_weyl_homdim(2, obj(3, 0), obj(3, 0)),
            BigUint::from(5u32)
        );
        assert_eq!(schur_weyl_homdim(3, obj(1, 0), obj(0, 1)), BigUint::zero());
    }

    #[test]
    fn w11_determinants() {
        let det = gram_determinant(obj(1, 1), obj(1, 1), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(det, TPoly::from_i64s(&[0, 0, -1, 0, 1]));
        assert_eq!(integer_roots(&det), vec![-1, 0, 1]);
        let form = algebra_trace_form(obj(1, 1), DEFAULT_DEGREE_CAP).unwrap();
        let adet = bareiss_det(&form);
        assert_eq!(adet, TPoly::t_pow(2));
        assert_eq!(integer_roots(&adet), vec![0]);
        let zero = BigRational::zero();
        assert_eq!(
            algebra_radical_dim(obj(1, 1), &zero, DEFAULT_DEGREE_CAP).unwrap(),
            1
        );
        for t in [-1i64, 1, 2] {
            let tq = BigRational::from_integer(t.into());
            assert_eq!(
                algebra_radical_dim(obj(1, 1), &tq, DEFAULT_DEGREE_CAP).unwrap(),
                0
            );
        }
    }

    #[test]
    fn diagram_validation() {
        // two up-arrows on the bottom row cannot be joined
        assert!(WalledDiagram::from_pairs(obj(2, 0), obj(0, 2), &[(0, 1), (2, 3)]).is_err());
        assert!(WalledDiagram::from_pairs(obj(1, 1), obj(1, 1), &[(0, 1)]).is_err());
        assert!(WalledDiagram::from_pairs(obj(1, 1), obj(1, 1), &[(0, 3), (1, 2)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = cup_cap().scale(&TPoly::from_i64s(&[1, -2]));
        let s = serde_json::to_string(&m).unwrap();
        let back: DiagramMorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let d: WalledDiagram =
            serde_json::from_str(r#"{"r":1,"s":1,"u":1,"v":1,"pairs":[[0,2],[1,3]]}"#).unwrap();
        assert_eq!(d, WalledDiagram::identity(obj(1, 1)));
        assert!(serde_json::from_str::<WalledDiagram>(
            r#"{"r":1,"s":1,"u":1,"v":1,"pairs":[[0,3],[1,2]]}"#
        )
        .is_err());
    }
}
