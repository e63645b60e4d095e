//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::weil::DEFAULT_DEGREE_CAP;

#[derive(Debug, Parser)]
#[command(name = "nilpotent", version, about = "Exact Weil algebras, jets, microlinearity certificates and orbifold group algebra")]
pub struct Cli {
    /// Scalar carrier for jet evaluation.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Degree cap for normal-form computations.
    #[arg(long = "degree-cap", global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
    #[command(subcommand)]
    pub command: Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Presentations of Weil algebras.
    #[command(subcommand)]
    Weil(WeilVerb),
    /// Points of Spec W.
    #[command(subcommand)]
    Spec(SpecVerb),
    /// Jets of smooth programs.
    #[command(subcommand)]
    Jet(JetVerb),
    /// Infinitesimal pushout squares and lifting batteries.
    #[command(subcommand)]
    Micro(MicroVerb),
    /// SL2(Z), finite actions, tori and cycles.
    #[command(subcommand)]
    Orbifold(OrbifoldVerb),
    /// Finite-set calculus.
    #[command(subcommand)]
    Fin(FinVerb),
}

/// Inline text or a file holding it.
#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Inline input.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Read the input from a file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WeilVerb {
    /// Normal form, basis and filtration of `Q[x,..]/(..); aug x->a,..`.
    Normalize(Source),
    /// Shift generators so that the augmentation sends each to 0.
    Standardize(Source),
    /// Tensor product of two or more presentations.
    Tensor(TensorArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TensorArgs {
    /// A factor; repeat for each factor.
    #[arg(long = "expr", required = true)]
    pub exprs: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum SpecVerb {
    /// Check a candidate point (JSON) against the relations.
    Validate(Source),
    /// Evaluate an element of W at a point.
    Eval(SpecEvalArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecEvalArgs {
    #[command(flatten)]
    pub point: Source,
    /// Polynomial in the generators of W.
    #[arg(long, allow_hyphen_values = true)]
    pub element: String,
}

#[derive(Debug, Subcommand)]
pub enum JetVerb {
    /// First derivative of a one-input program.
    Derive(PointArgs),
    /// Taylor coefficients `c_0..c_order`.
    Taylor(TaylorArgs),
    /// Mixed partial derivative with multi-index `--orders`.
    Partial(PartialArgs),
    /// Tangent space of a zero locus at a point.
    Tangent(LocusPointArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    /// Input variable name (inferred when omitted).
    #[arg(long)]
    pub var: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TaylorArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PartialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    /// Comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    /// Comma-separated derivative orders, one per input.
    #[arg(long)]
    pub orders: String,
    /// Comma-separated input names (order of first appearance when omitted).
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LocusArgs {
    /// A defining equation `f = 0`; repeat for each.
    #[arg(long = "constraint", required = true, allow_hyphen_values = true)]
    pub constraints: Vec<String>,
    /// Comma-separated coordinate names (order of first appearance when omitted).
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LocusPointArgs {
    #[command(flatten)]
    pub locus: LocusArgs,
    /// Comma-separated base point.
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
}

#[derive(Debug, Subcommand)]
pub enum MicroVerb {
    /// Certify (or refute) that a square is an infinitesimal R-pushout.
    Check(SquareArgs),
    /// Run the lifting battery on a zero locus.
    Battery(BatteryArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct SquareArgs {
    /// `axis:n,m`, `second-order`, `wedge:k`, `mismatch` or `tensor-cross`.
    #[arg(long)]
    pub square: Option<String>,
    /// JSON square description.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BatteryArgs {
    #[command(flatten)]
    pub locus: LocusArgs,
    /// Comma-separated base point; repeat for each.
    #[arg(long = "base", required = true, allow_hyphen_values = true)]
    pub bases: Vec<String>,
    /// Square name; repeat for each (default battery when omitted).
    #[arg(long = "square")]
    pub squares: Vec<String>,
    /// Boundary samples per square and base point.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum OrbifoldVerb {
    /// Möbius action, fiber action and lattice basis changes.
    Sl2z(Sl2zArgs),
    /// Stabilizer and transporter in a finite action scene.
    Scene(SceneArgs),
    /// Torus fixed points and the crystallographic extension.
    Torus(TorusArgs),
    /// Cycles of n elements among n-th roots of unity.
    Cycle(CycleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sl2Op {
    Mobius,
    Fiber,
    LatticeIdentity,
    LatticeEqual,
    BasisChange,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Sl2zArgs {
    #[arg(long, value_enum)]
    pub op: Sl2Op,
    /// `a,b,c,d`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Point of the upper half plane, e.g. `1/2+3i`.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// Fiber coordinate.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// First basis `w1,w2`.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<String>,
    /// Second basis `w1,w2`.
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SceneArgs {
    /// `c4` or `config:<arity>:<label>,<label>,..`.
    #[arg(long, conflicts_with_all = ["expr", "input"])]
    pub builtin: Option<String>,
    /// Inline JSON scene.
    #[arg(long)]
    pub expr: Option<String>,
    /// JSON scene file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Carrier point: JSON array or comma-separated entries.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Target point of the transporter (defaults to `x`).
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorusOp {
    FixedPoints,
    Multiply,
    Invert,
    ExtensionCheck,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TorusArgs {
    #[arg(long, value_enum, default_value_t = TorusOp::FixedPoints)]
    pub op: TorusOp,
    /// Integer matrix as JSON rows, e.g. `[[-1,0],[0,-1]]`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Denominator bound for fixed points.
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    /// The finite group as a JSON list of matrices (defaults to the group
    /// generated by `--matrix`).
    #[arg(long, allow_hyphen_values = true)]
    pub group: Option<String>,
    /// Translation box radius for the extension check.
    #[arg(long, default_value_t = 1)]
    pub radius: i64,
    /// Element `{"v": [..], "m": [[..]]}`.
    #[arg(long, allow_hyphen_values = true)]
    pub left: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub right: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CycleArgs {
    #[arg(long)]
    pub n: u64,
    /// Comma-separated exponents (may be empty).
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub set: String,
}

#[derive(Debug, Subcommand)]
pub enum FinVerb {
    /// Compose, multiply, unite or verify associations.
    Assoc(AssocArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssocOp {
    Verify,
    Compose,
    Product,
    Union,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AssocArgs {
    #[arg(long, value_enum)]
    pub op: AssocOp,
    /// JSON array of associations.
    #[command(flatten)]
    pub source: Source,
}
