//! The `tensorcat` command line: argument grammar, report documents and
//! their JSON/CSV rendering. [`run`] is pure apart from the work it does, so
//! tests drive it directly.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::brauer::{
    gram_determinant, gram_matrix_at, gram_matrix_symbolic, hom_basis, hom_degree, negligible_rank,
    schur_weyl_homdim, BiObject, DiagramMorphism, NegligibleRank, WalledDiagram,
    DEFAULT_DEGREE_CAP,
};
use crate::growth::{
    self, b_data, binomial_dims, exterior_cat_dims, invariants_report, padic_digits, recover_mk,
    Cyclotomic, ImprovedBound, InvariantsReport, PadicDigits, PlancherelBound, DEFAULT_BOUNDS_CAP,
};
use crate::modrep::{
    self, jordan_tensor, non_negligible_part, to_verlinde, JordanModule, DEFAULT_ORDER_CAP,
};
use crate::partitions::{dim_schur, dim_sym_irrep, partitions_of};
use crate::scalars::{ExactScalar, Fp, Prime, Real};
use crate::verlinde::{self, cat_dim, fp_dim, FusionElement};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "tensorcat",
    version,
    about = "Exact computations in Rep GL_t, Rep Z/p^e and Ver_p"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum Brauer degree d (hom spaces have d! diagrams).
    #[arg(long, global = true)]
    cap_brauer: Option<usize>,
    /// Maximum p for partition-enumerating bounds.
    #[arg(long, global = true)]
    cap_bounds: Option<u64>,
    /// Maximum group order p^e for Jordan module computations.
    #[arg(long, global = true)]
    cap_modrep: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fusion rules of Ver_p.
    Fusion(FusionArgs),
    /// Decompose tensor products and powers of Jordan modules.
    Decompose {
        #[command(subcommand)]
        op: DecomposeOp,
    },
    /// m_k, b(V), the divisibility checks and residue bounds of a Z/p-module.
    Invariants(InvariantsArgs),
    /// p-adic dimension digits from exterior-power dimensions.
    Padic(PadicArgs),
    /// Walled Brauer diagrams and the trace form.
    Brauer {
        #[command(subcommand)]
        op: BrauerOp,
    },
    /// Lower bounds on growth rates in terms of dim mod p.
    Bounds {
        #[command(subcommand)]
        op: BoundsOp,
    },
    /// Run the oracle-equivalence checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct FusionArgs {
    #[arg(long)]
    p: u64,
    /// Print the full multiplication table of simples.
    #[arg(long, conflicts_with_all = ["i", "m"])]
    table: bool,
    #[arg(long, requires = "j")]
    i: Option<u64>,
    #[arg(long, requires = "i")]
    j: Option<u64>,
    /// Multiplicity vector m_1..m_{p-1} of an element.
    #[arg(long, value_delimiter = ',', conflicts_with = "i")]
    m: Option<Vec<u64>>,
    /// Tensor power applied to --m.
    #[arg(long, default_value_t = 1, requires = "m")]
    power: u32,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Jordan block sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum DecomposeOp {
    /// V ⊗ W.
    Tensor {
        #[command(flatten)]
        left: ModuleArgs,
        /// Block sizes of the second factor.
        #[arg(long, value_delimiter = ',', required = true)]
        with: Vec<usize>,
    },
    /// S²V.
    #[command(alias = "sym2")]
    Sym {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// ∧²V.
    #[command(alias = "ext2")]
    Ext {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// ∧^k V.
    Wedge {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PadicSource {
    /// Jordan blocks of X; dimensions come from its exterior powers.
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
    /// dim ∧ⁿX mod p for n = 0, 1, 2, …
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<u64>>,
    /// A nonnegative integer D, with dim ∧ⁿ = C(D, n).
    #[arg(long)]
    integer: Option<BigUint>,
}

#[derive(Args, Debug)]
struct PadicArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[command(flatten)]
    source: PadicSource,
    /// Number of coefficients used with --integer (default p^2 + 1).
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Args, Debug)]
struct HomArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    /// Target covariant count; defaults to r.
    #[arg(long)]
    u: Option<usize>,
    /// Target contravariant count; defaults to s.
    #[arg(long)]
    v: Option<usize>,
}

impl HomArgs {
    fn objects(&self) -> (BiObject, BiObject) {
        (
            BiObject::new(self.r, self.s),
            BiObject::new(self.u.unwrap_or(self.r), self.v.unwrap_or(self.s)),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TArg {
    Symbolic,
    Value(BigRational),
}

fn parse_t(s: &str) -> std::result::Result<TArg, String> {
    if s == "symbolic" {
        return Ok(TArg::Symbolic);
    }
    s.parse::<BigRational>()
        .map(TArg::Value)
        .map_err(|_| format!("expected `symbolic`, an integer or a fraction a/b, got {s:?}"))
}

#[derive(Subcommand, Debug)]
enum BrauerOp {
    /// dim Hom([r,s],[u,v]); with --n also dim Hom_{GL_n}.
    Homdim {
        #[command(flatten)]
        hom: HomArgs,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The diagram basis of Hom([r,s],[u,v]).
    Basis {
        #[command(flatten)]
        hom: HomArgs,
    },
    /// The trace pairing Tr(flip(b_i) ∘ b_j).
    Gram {
        #[command(flatten)]
        hom: HomArgs,
        #[arg(long, value_parser = parse_t, default_value = "symbolic")]
        t: TArg,
        /// Reduce the specialization into F_p.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Rank of the trace pairing and the dimension modulo negligibles.
    Rank {
        #[command(flatten)]
        hom: HomArgs,
        #[arg(long, value_parser = parse_t)]
        t: TArg,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Compose two morphisms given as JSON (`upper ∘ lower`).
    Compose {
        #[arg(long)]
        upper: String,
        #[arg(long)]
        lower: String,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u64,
}

#[derive(Subcommand, Debug)]
enum BoundsOp {
    Plancherel(BoundArgs),
    Improved(BoundArgs),
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FusionTableDoc {
    pub p: u64,
    /// `table[i-1][j-1] = L_i ⊗ L_j`.
    pub table: Vec<Vec<FusionElement>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FusionProductDoc {
    pub i: u64,
    pub j: u64,
    pub product: FusionElement,
    pub rendered: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FusionPowerDoc {
    pub element: FusionElement,
    pub power: u32,
    pub result: FusionElement,
    pub rendered: String,
    pub length: u64,
    pub cat_dim: u64,
    pub fp_dim: Real,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DecomposeDoc {
    pub op: String,
    pub inputs: Vec<JordanModule>,
    pub result: JordanModule,
    pub non_negligible: JordanModule,
    /// The image in `Ver_p`, for `e = 1`.
    pub verlinde: Option<FusionElement>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PadicDoc {
    pub dims: Vec<u64>,
    #[serde(flatten)]
    pub digits: PadicDigits,
    #[serde(with = "crate::scalars::as_string")]
    pub value: BigUint,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct HomdimDoc {
    pub source: BiObject,
    pub target: BiObject,
    pub degree: Option<usize>,
    pub hom_dim: usize,
    pub n: Option<usize>,
    #[serde(with = "opt_string", default)]
    pub schur_weyl: Option<BigUint>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BasisDoc {
    pub source: BiObject,
    pub target: BiObject,
    pub basis: Vec<WalledDiagram>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GramDoc {
    pub source: BiObject,
    pub target: BiObject,
    pub t: String,
    pub matrix: Vec<Vec<String>>,
    /// The symbolic determinant, only for `--t symbolic`.
    pub determinant: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RankDoc {
    pub source: BiObject,
    pub target: BiObject,
    pub t: String,
    #[serde(flatten)]
    pub rank: NegligibleRank,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComposeDoc {
    pub upper: DiagramMorphism,
    pub lower: DiagramMorphism,
    pub result: DiagramMorphism,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SelftestCheck {
    pub name: String,
    pub cases: usize,
    pub mismatches: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SelftestDoc {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<SelftestCheck>,
}

mod opt_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A rendered document: JSON from the typed report, CSV as a flat table.
struct Emit {
    json: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn emit<T: Serialize>(doc: &T, header: &[&str], rows: Vec<Vec<String>>) -> Emit {
    Emit {
        json: serde_json::to_string_pretty(doc).expect("reports serialize"),
        header: header.iter().map(|s| s.to_string()).collect(),
        rows,
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn render_csv(e: &Emit) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&e.header).expect("in-memory write");
    for r in &e.rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

struct Caps {
    brauer: usize,
    bounds: u64,
    modrep: u64,
}

fn module(p: u64, e: u32, blocks: &[usize], caps: &Caps) -> Result<JordanModule> {
    let v = JordanModule::new(Prime::new(p)?, e, blocks.to_vec())?;
    v.check_order_cap(caps.modrep)?;
    Ok(v)
}

fn check_degree(src: BiObject, tgt: BiObject, cap: usize) -> Result<Option<usize>> {
    let d = hom_degree(src, tgt);
    if let Some(d) = d.filter(|&d| d > cap) {
        return Err(Error::CapExceeded {
            what: "Brauer degree",
            value: d as u64,
            cap: cap as u64,
        });
    }
    Ok(d)
}

fn specialize(t: &TArg, modulus: Option<u64>) -> Result<Option<ExactScalar>> {
    let TArg::Value(q) = t else { return Ok(None) };
    Ok(Some(match modulus {
        None => ExactScalar::Rational(q.clone()),
        Some(m) => {
            let p = Prime::new(m)?;
            let reduce = |n: &num_bigint::BigInt| {
                let r = ((n % m as i64) + m as i64) % m as i64;
                Fp::from_u64(
                    num_traits::ToPrimitive::to_u64(&r).expect("reduced below p"),
                    p,
                )
            };
            let inv = reduce(q.denom()).inv().ok_or_else(|| {
                Error::InvalidArgument(format!("denominator of t vanishes mod {m}"))
            })?;
            ExactScalar::Fp(reduce(q.numer()) * inv)
        }
    }))
}

fn t_label(t: &TArg, modulus: Option<u64>) -> String {
    match (t, modulus) {
        (TArg::Symbolic, _) => "symbolic".into(),
        (TArg::Value(q), None) => q.to_string(),
        (TArg::Value(q), Some(m)) => format!("{q} mod {m}"),
    }
}

fn parse_morphism(s: &str) -> Result<DiagramMorphism> {
    if let Ok(m) = serde_json::from_str::<DiagramMorphism>(s) {
        return Ok(m);
    }
    serde_json::from_str::<WalledDiagram>(s)
        .map(DiagramMorphism::from_diagram)
        .map_err(|e| Error::InvalidArgument(format!("not a diagram or morphism: {e}")))
}

fn cmd_fusion(a: &FusionArgs) -> Result<Emit> {
    let p = Prime::new(a.p)?;
    if let (Some(i), Some(j)) = (a.i, a.j) {
        let product = verlinde::fusion(p, i, j)?;
        let doc = FusionProductDoc {
            i,
            j,
            rendered: product.to_string(),
            product,
        };
        let rows = vec![vec![
            i.to_string(),
            j.to_string(),
            join(doc.product.multiplicities()),
            doc.rendered.clone(),
        ]];
        return Ok(emit(&doc, &["i", "j", "m", "rendered"], rows));
    }
    if let Some(m) = &a.m {
        let element = FusionElement::new(p, m.clone())?;
        let result = verlinde::power(&element, a.power)?;
        let doc = FusionPowerDoc {
            power: a.power,
            rendered: result.to_string(),
            length: result.length(),
            cat_dim: cat_dim(&result).value(),
            fp_dim: fp_dim(&result),
            element,
            result,
        };
        let rows = vec![vec![
            join(doc.element.multiplicities()),
            doc.power.to_string(),
            join(doc.result.multiplicities()),
            doc.length.to_string(),
            doc.cat_dim.to_string(),
            doc.fp_dim.to_sig_string(30),
        ]];
        return Ok(emit(
            &doc,
            &["m", "power", "result", "length", "cat_dim", "fp_dim"],
            rows,
        ));
    }
    if !a.table {
        return Err(Error::InvalidArgument(
            "fusion needs --table, --i/--j or --m".into(),
        ));
    }
    let n = a.p - 1;
    let table: Vec<Vec<FusionElement>> = (1..=n)
        .map(|i| (1..=n).map(|j| verlinde::fusion(p, i, j)).collect())
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            rows.push(vec![
                (i + 1).to_string(),
                (j + 1).to_string(),
                join(x.multiplicities()),
                x.to_string(),
            ]);
        }
    }
    Ok(emit(
        &FusionTableDoc { p: a.p, table },
        &["i", "j", "m", "rendered"],
        rows,
    ))
}

fn decompose_doc(op: &str, inputs: Vec<JordanModule>, result: JordanModule) -> Result<Emit> {
    let non_negligible = non_negligible_part(&result);
    let verlinde = if result.e() == 1 {
        Some(to_verlinde(&result)?)
    } else {
        None
    };
    let row = vec![
        op.to_string(),
        join(result.blocks()),
        join(non_negligible.blocks()),
        verlinde
            .as_ref()
            .map(|x| join(x.multiplicities()))
            .unwrap_or_default(),
    ];
    let doc = DecomposeDoc {
        op: op.into(),
        inputs,
        result,
        non_negligible,
        verlinde,
    };
    Ok(emit(
        &doc,
        &["op", "blocks", "non_negligible", "verlinde_m"],
        vec![row],
    ))
}

fn cmd_decompose(op: &DecomposeOp, caps: &Caps) -> Result<Emit> {
    match op {
        DecomposeOp::Tensor { left, with } => {
            let a = module(left.p, left.e, &left.blocks, caps)?;
            let b = module(left.p, left.e, with, caps)?;
            let r = jordan_tensor(&a, &b)?;
            decompose_doc("tensor", vec![a, b], r)
        }
        DecomposeOp::Sym { module: m } => {
            let v = module(m.p, m.e, &m.blocks, caps)?;
            let r = modrep::sym2(&v)?;
            decompose_doc("sym", vec![v], r)
        }
        DecomposeOp::Ext { module: m } => {
            let v = module(m.p, m.e, &m.blocks, caps)?;
            let r = modrep::ext2(&v)?;
            decompose_doc("ext", vec![v], r)
        }
        DecomposeOp::Wedge { module: m, k } => {
            let v = module(m.p, m.e, &m.blocks, caps)?;
            let r = modrep::exterior_power(&v, *k)?;
            decompose_doc(&format!("wedge{k}"), vec![v], r)
        }
    }
}

fn cmd_invariants(a: &InvariantsArgs, caps: &Caps) -> Result<Emit> {
    let v = module(a.p, 1, &a.blocks, caps)?;
    let doc: InvariantsReport = invariants_report(&v, caps.bounds)?;
    let f = &doc.summary;
    let opt = |b: Option<bool>| b.map(|x| x.to_string()).unwrap_or_default();
    let row = vec![
        f.p.to_string(),
        f.dim.to_string(),
        join(&f.m),
        f.b.clone(),
        f.b_numeric.clone(),
        f.checks.ii.to_string(),
        opt(f.checks.iii),
        opt(f.checks.iv),
        doc.bounds
            .plancherel
            .as_ref()
            .map(|b| b.bound.to_sig_string(30))
            .unwrap_or_default(),
        doc.bounds
            .improved
            .as_ref()
            .map(|b| b.bound.to_sig_string(30))
            .unwrap_or_default(),
    ];
    let header = [
        "p",
        "dim",
        "m",
        "b",
        "b_numeric",
        "ii",
        "iii",
        "iv",
        "plancherel",
        "improved",
    ];
    Ok(emit(&doc, &header, vec![row]))
}

fn cmd_padic(a: &PadicArgs, caps: &Caps) -> Result<Emit> {
    let p = Prime::new(a.p)?;
    let dims: Vec<Fp> = match (&a.source.blocks, &a.source.dims, &a.source.integer) {
        (Some(blocks), _, _) => exterior_cat_dims(&module(a.p, a.e, blocks, caps)?)?,
        (_, Some(dims), _) => dims.iter().map(|&d| Fp::from_u64(d, p)).collect(),
        (_, _, Some(d)) => binomial_dims(p, d, a.terms.unwrap_or((a.p * a.p + 1) as usize)),
        _ => unreachable!("clap enforces one source"),
    };
    let digits = padic_digits(p, &dims)?;
    let doc = PadicDoc {
        dims: dims.iter().map(|x| x.value()).collect(),
        value: digits.value(),
        digits,
    };
    let row = vec![
        doc.digits.p.to_string(),
        join(&doc.dims),
        join(&doc.digits.digits),
        doc.value.to_string(),
    ];
    Ok(emit(&doc, &["p", "dims", "digits", "value"], vec![row]))
}

fn matrix_rows(m: &[Vec<String>]) -> Vec<Vec<String>> {
    m.iter()
        .enumerate()
        .map(|(i, r)| {
            std::iter::once(i.to_string())
                .chain(r.iter().cloned())
                .collect()
        })
        .collect()
}

fn matrix_header(n: usize) -> Vec<String> {
    std::iter::once("row".to_string())
        .chain((0..n).map(|j| format!("c{j}")))
        .collect()
}

fn cmd_brauer(op: &BrauerOp, caps: &Caps) -> Result<Emit> {
    match op {
        BrauerOp::Homdim { hom, n } => {
            let (source, target) = hom.objects();
            let degree = check_degree(source, target, caps.brauer)?;
            let hom_dim = hom_basis(source, target).len();
            let schur_weyl = n.map(|n| schur_weyl_homdim(n, source, target));
            let row = vec![
                source.to_string(),
                target.to_string(),
                hom_dim.to_string(),
                schur_weyl
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            ];
            let doc = HomdimDoc {
                source,
                target,
                degree,
                hom_dim,
                n: *n,
                schur_weyl,
            };
            Ok(emit(
                &doc,
                &["source", "target", "hom_dim", "schur_weyl"],
                vec![row],
            ))
        }
        BrauerOp::Basis { hom } => {
            let (source, target) = hom.objects();
            check_degree(source, target, caps.brauer)?;
            let basis = hom_basis(source, target);
            let rows = basis
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let pairs: Vec<String> =
                        d.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                    vec![i.to_string(), pairs.join(";")]
                })
                .collect();
            Ok(emit(
                &BasisDoc {
                    source,
                    target,
                    basis,
                },
                &["index", "pairs"],
                rows,
            ))
        }
        BrauerOp::Gram { hom, t, modulus } => {
            let (source, target) = hom.objects();
            let (matrix, determinant) = match specialize(t, *modulus)? {
                None => {
                    let g = gram_matrix_symbolic(source, target, caps.brauer)?;
                    let det = gram_determinant(source, target, caps.brauer)?;
                    (
                        g.iter()
                            .map(|r| r.iter().map(ToString::to_string).collect())
                            .collect(),
                        Some(det.to_string()),
                    )
                }
                Some(x) => {
                    let g = gram_matrix_at(source, target, &x, caps.brauer)?;
                    (
                        g.iter()
                            .map(|r| r.iter().map(ToString::to_string).collect())
                            .collect::<Vec<Vec<_>>>(),
                        None,
                    )
                }
            };
            let header = matrix_header(matrix.len());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows = matrix_rows(&matrix);
            let doc = GramDoc {
                source,
                target,
                t: t_label(t, *modulus),
                matrix,
                determinant,
            };
            Ok(emit(&doc, &header, rows))
        }
        BrauerOp::Rank { hom, t, modulus } => {
            let (source, target) = hom.objects();
            let x = specialize(t, *modulus)?
                .ok_or_else(|| Error::InvalidArgument("rank needs a numeric --t".into()))?;
            let rank = negligible_rank(source, target, &x, caps.brauer)?;
            let doc = RankDoc {
                source,
                target,
                t: t_label(t, *modulus),
                rank,
            };
            let row = vec![
                source.to_string(),
                target.to_string(),
                doc.t.clone(),
                rank.hom_dim.to_string(),
                rank.rank.to_string(),
                rank.quotient_dim.to_string(),
            ];
            Ok(emit(
                &doc,
                &["source", "target", "t", "hom_dim", "rank", "quotient_dim"],
                vec![row],
            ))
        }
        BrauerOp::Compose { upper, lower } => {
            let upper = parse_morphism(upper)?;
            let lower = parse_morphism(lower)?;
            let result = upper.compose(&lower)?;
            let rows = result
                .terms()
                .map(|(d, c)| {
                    let pairs: Vec<String> =
                        d.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                    vec![pairs.join(";"), c.to_string()]
                })
                .collect();
            Ok(emit(
                &ComposeDoc {
                    upper,
                    lower,
                    result,
                },
                &["pairs", "coeff"],
                rows,
            ))
        }
    }
}

fn cmd_bounds(op: &BoundsOp, caps: &Caps) -> Result<Emit> {
    match op {
        BoundsOp::Plancherel(a) => {
            let b: PlancherelBound = growth::plancherel_bound(Prime::new(a.p)?, a.d, caps.bounds)?;
            let row = vec![
                b.p.to_string(),
                b.d.to_string(),
                b.box_sum.to_string(),
                b.bound.to_sig_string(30),
            ];
            Ok(emit(&b, &["p", "d", "box_sum", "bound"], vec![row]))
        }
        BoundsOp::Improved(a) => {
            let b: ImprovedBound = growth::improved_bound(Prime::new(a.p)?, a.d, caps.bounds)?;
            let row = vec![
                b.p.to_string(),
                b.d.to_string(),
                b.m_max.to_string(),
                join(b.argmax.parts()),
                b.ratio.to_string(),
                b.box_dim_sum.to_string(),
                b.inequality_holds.to_string(),
                b.bound.to_sig_string(30),
                b.asymptotic.to_sig_string(30),
            ];
            let header = [
                "p",
                "d",
                "m_max",
                "argmax",
                "ratio",
                "box_dim_sum",
                "inequality_holds",
                "bound",
                "asymptotic",
            ];
            Ok(emit(&b, &header, vec![row]))
        }
    }
}

/// A random `Z/p`-module of dimension at most `max_dim` with blocks `≤ p`.
pub fn random_module(rng: &mut impl Rng, p: Prime, max_dim: usize) -> JordanModule {
    let target = rng.random_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut left = target;
    while left > 0 {
        let b = rng.random_range(1..=left.min(p.get() as usize));
        blocks.push(b);
        left -= b;
    }
    JordanModule::new(p, 1, blocks).expect("blocks fit")
}

fn selftest(seed: u64) -> Result<SelftestDoc> {
    let mut checks = Vec::new();

    let mut c = SelftestCheck {
        name: "verlinde_vs_jordan".into(),
        cases: 0,
        mismatches: vec![],
    };
    for p in [2u64, 3, 5, 7, 11, 13] {
        let pr = Prime::new(p)?;
        for m in 1..=p {
            for n in 1..=p {
                c.cases += 1;
                let direct = if m < p && n < p {
                    verlinde::fusion(pr, m, n)?
                } else {
                    FusionElement::zero(pr)
                };
                let via = to_verlinde(&jordan_tensor(
                    &JordanModule::block(pr, m as usize)?,
                    &JordanModule::block(pr, n as usize)?,
                )?)?;
                if direct != via {
                    c.mismatches
                        .push(format!("p={p} m={m} n={n}: {direct} vs {via}"));
                }
            }
        }
    }
    checks.push(c);

    let mut c = SelftestCheck {
        name: "gram_vs_schur_weyl".into(),
        cases: 0,
        mismatches: vec![],
    };
    for r in 0..=3usize {
        for s in 0..=3 - r {
            let obj = BiObject::new(r, s);
            for n in 1..=5usize {
                c.cases += 1;
                let t = ExactScalar::integer(n as i64);
                let rank = negligible_rank(obj, obj, &t, DEFAULT_DEGREE_CAP)?.rank;
                let sw = schur_weyl_homdim(n, obj, obj);
                if BigUint::from(rank) != sw {
                    c.mismatches
                        .push(format!("{obj} n={n}: rank {rank} vs {sw}"));
                }
            }
        }
    }
    checks.push(c);

    let mut c = SelftestCheck {
        name: "hook_content_identity".into(),
        cases: 0,
        mismatches: vec![],
    };
    for d in 1..=4usize {
        for n in 0..=10usize {
            c.cases += 1;
            let lhs: BigUint = partitions_of(n)
                .iter()
                .filter(|l| l.len() <= d)
                .map(|l| dim_sym_irrep(l) * dim_schur(l, d))
                .sum();
            if lhs != BigUint::from(d).pow(n as u32) {
                c.mismatches.push(format!("d={d} N={n}: {lhs}"));
            }
        }
    }
    checks.push(c);

    let mut rng = StdRng::seed_from_u64(seed);
    let mut rec = SelftestCheck {
        name: "recover_mk".into(),
        cases: 0,
        mismatches: vec![],
    };
    let mut ident = SelftestCheck {
        name: "sym_ext_identity".into(),
        cases: 0,
        mismatches: vec![],
    };
    for p in [5u64, 7, 11, 13] {
        let pr = Prime::new(p)?;
        for _ in 0..50 {
            let v = random_module(&mut rng, pr, 2 * p as usize);
            let direct = to_verlinde(&v)?;
            let m: Vec<i64> = direct.multiplicities().iter().map(|&x| x as i64).collect();
            let (b, diff) = b_data(&v)?;
            rec.cases += 1;
            match recover_mk(pr, &b, &diff) {
                Ok(found) if found == direct.multiplicities() => {}
                other => rec.mismatches.push(format!("{v} at p={p}: {other:?}")),
            }
            ident.cases += 1;
            if diff != Cyclotomic::from_q2_combination(pr, &m)? {
                ident.mismatches.push(format!("{v} at p={p}"));
            }
        }
    }
    checks.push(rec);
    checks.push(ident);

    let mut c = SelftestCheck {
        name: "fp_dim_power_iteration".into(),
        cases: 0,
        mismatches: vec![],
    };
    for p in [5u64, 7, 11, 13] {
        let pr = Prime::new(p)?;
        for k in 1..p {
            c.cases += 1;
            let x = FusionElement::simple(pr, k)?;
            let exact = fp_dim(&x).to_f64();
            let numeric = verlinde::perron_frobenius_numeric(&x, 1e-14);
            if (exact - numeric).abs() > 1e-12 {
                c.mismatches
                    .push(format!("p={p} k={k}: {exact} vs {numeric}"));
            }
        }
    }
    checks.push(c);

    let passed = checks.iter().all(|c| c.mismatches.is_empty());
    Ok(SelftestDoc {
        seed,
        passed,
        checks,
    })
}

fn error_code(e: &Error) -> i32 {
    if e.is_cap() {
        EXIT_CAP
    } else {
        EXIT_DOMAIN
    }
}

fn warn_cap(stderr: &mut String, flag: &str, value: u64, default: u64) {
    if value != default {
        stderr.push_str(&format!(
            "warning: {flag} set to {value} (default {default})\n"
        ));
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut stderr = String::new();
    let caps = Caps {
        brauer: cli.cap_brauer.unwrap_or(DEFAULT_DEGREE_CAP),
        bounds: cli.cap_bounds.unwrap_or(DEFAULT_BOUNDS_CAP),
        modrep: cli.cap_modrep.unwrap_or(DEFAULT_ORDER_CAP),
    };
    warn_cap(
        &mut stderr,
        "--cap-brauer",
        caps.brauer as u64,
        DEFAULT_DEGREE_CAP as u64,
    );
    warn_cap(&mut stderr, "--cap-bounds", caps.bounds, DEFAULT_BOUNDS_CAP);
    warn_cap(&mut stderr, "--cap-modrep", caps.modrep, DEFAULT_ORDER_CAP);

    let mut code = EXIT_OK;
    let result = match &cli.command {
        Command::Fusion(a) => cmd_fusion(a),
        Command::Decompose { op } => cmd_decompose(op, &caps),
        Command::Invariants(a) => cmd_invariants(a, &caps),
        Command::Padic(a) => cmd_padic(a, &caps),
        Command::Brauer { op } => cmd_brauer(op, &caps),
        Command::Bounds { op } => cmd_bounds(op, &caps),
        Command::Selftest(a) => selftest(a.seed).map(|doc| {
            if !doc.passed {
                code = EXIT_MISMATCH;
            }
            let rows = doc
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.cases.to_string(),
                        c.mismatches.len().to_string(),
                    ]
                })
                .collect();
            emit(&doc, &["check", "cases", "mismatches"], rows)
        }),
    };
    match result {
        Ok(e) => {
            let mut stdout = match cli.format {
                Format::Json => e.json,
                Format::Csv => render_csv(&e),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                code: error_code(&e),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let out = run(std::iter::once("tensorcat").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        out.stdout
    }

    fn code(args: &[&str]) -> i32 {
        run(std::iter::once("tensorcat").chain(args.iter().copied())).code
    }

    #[test]
    fn fusion_table_document() {
        let doc: FusionTableDoc =
            serde_json::from_str(&ok(&["fusion", "--p", "5", "--table"])).unwrap();
        assert_eq!(doc.table.len(), 4);
        assert_eq!(doc.table[2][2].multiplicities(), &[1, 0, 1, 0]);
    }

    #[test]
    fn gram_symbolic_document() {
        let doc: GramDoc = serde_json::from_str(&ok(&[
            "brauer", "gram", "--r", "1", "--s", "1", "--t", "symbolic",
        ]))
        .unwrap();
        assert_eq!(doc.matrix, vec![vec!["t^2", "t"], vec!["t", "t^2"]]);
        assert_eq!(doc.determinant.as_deref(), Some("t^4 - t^2"));
    }

    #[test]
    fn invariants_document() {
        let doc: InvariantsReport =
            serde_json::from_str(&ok(&["invariants", "--p", "5", "--blocks", "3"])).unwrap();
        assert_eq!(doc.summary.m, vec![0, 0, 1, 0]);
        assert_eq!(doc.summary.b, "[3]_q");
        assert_eq!(doc.recovered_m, doc.summary.m);
        assert!(
            doc.summary.checks.ii
                && doc.summary.checks.iii == Some(true)
                && doc.summary.checks.iv == Some(true)
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["fusion", "--p", "6", "--table"]), EXIT_DOMAIN);
        assert_eq!(code(&["fusion", "--p"]), EXIT_USAGE);
        assert_eq!(code(&["frobnicate"]), EXIT_USAGE);
        assert_eq!(
            code(&["bounds", "plancherel", "--p", "53", "--d", "2"]),
            EXIT_CAP
        );
        assert_eq!(
            code(&[
                "--cap-bounds",
                "60",
                "bounds",
                "plancherel",
                "--p",
                "53",
                "--d",
                "1"
            ]),
            EXIT_OK
        );
        assert_eq!(
            code(&["brauer", "homdim", "--r", "4", "--s", "3"]),
            EXIT_CAP
        );
        assert_eq!(
            code(&["decompose", "sym", "--p", "67", "--blocks", "2"]),
            EXIT_CAP
        );
        assert_eq!(code(&["--help"]), EXIT_OK);
    }

    #[test]
    fn cap_override_warns() {
        let out = run([
            "tensorcat",
            "--cap-brauer",
            "7",
            "brauer",
            "homdim",
            "--r",
            "1",
            "--s",
            "0",
        ]);
        assert_eq!(out.code, 0);
        assert!(out.stderr.contains("--cap-brauer"));
    }

    #[test]
    fn csv_output() {
        let out = ok(&["--format", "csv", "fusion", "--p", "3", "--table"]);
        assert_eq!(out.lines().next(), Some("i,j,m,rendered"));
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn compose_from_json() {
        let basis: BasisDoc =
            serde_json::from_str(&ok(&["brauer", "basis", "--r", "1", "--s", "1"])).unwrap();
        let a = serde_json::to_string(&basis.basis[1]).unwrap();
        let doc: ComposeDoc =
            serde_json::from_str(&ok(&["brauer", "compose", "--upper", &a, "--lower", &a]))
                .unwrap();
        assert_eq!(
            doc.result,
            DiagramMorphism::from_diagram(basis.basis[1].clone())
                .scale(&crate::scalars::TPoly::t())
        );
    }

    #[test]
    fn rank_specializations() {
        let doc: RankDoc =
            serde_json::from_str(&ok(&["brauer", "rank", "--r", "1", "--s", "1", "--t", "1"]))
                .unwrap();
        assert_eq!(doc.rank.rank, 1);
        let doc: RankDoc = serde_json::from_str(&ok(&[
            "brauer",
            "rank",
            "--r",
            "1",
            "--s",
            "1",
            "--t",
            "6",
            "--modulus",
            "5",
        ]))
        .unwrap();
        assert_eq!(doc.rank.rank, 1);
        assert_eq!(
            code(&["brauer", "rank", "--r", "1", "--s", "1", "--t", "symbolic"]),
            EXIT_DOMAIN
        );
    }

    #[test]
    fn padic_sources_agree() {
        let a: PadicDoc =
            serde_json::from_str(&ok(&["padic", "--p", "5", "--blocks", "5,2"])).unwrap();
        let b: PadicDoc = serde_json::from_str(&ok(&[
            "padic",
            "--p",
            "5",
            "--integer",
            "7",
            "--terms",
            "8",
        ]))
        .unwrap();
        assert_eq!(a.digits.digits, vec![2, 1]);
        assert_eq!(a, b);
    }

    #[test]
    fn selftest_passes() {
        let doc: SelftestDoc = serde_json::from_str(&ok(&["selftest", "--seed", "3"])).unwrap();
        assert!(doc.passed, "{doc:?}");
    }

    #[test]
    fn deterministic_output() {
        let args = ["bounds", "improved", "--p", "11", "--d", "3"];
        assert_eq!(ok(&args), ok(&args));
    }
}
