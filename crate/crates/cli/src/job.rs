//! Job files: the strict TOML schema describing a Hopf action on a
//! superpotential-presented algebra, and its resolution into engine inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use hopfquiver::hopf::{
    build_dual_group_algebra, build_group_algebra, build_kac_palyutkin, build_trivial,
    FiniteGroup, HopfAlgebra, Irrep,
};
use hopfquiver::linalg::Matrix;
use hopfquiver::potential::TensorElement;
use hopfquiver::quiverpot::abelian_group_reduction;
use hopfquiver::rep::Rep;
use hopfquiver::scalar::{Ctx, CycContext, Scalar};

#[derive(Debug)]
pub enum JobError {
    /// malformed input: syntax, unknown keys, bad dimensions (exit code 1)
    Input(String),
    /// well-formed input that violates the engine's hypotheses (exit code 2)
    Hypothesis(String),
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JobError::Input(m) => write!(f, "input error: {m}"),
            JobError::Hypothesis(m) => write!(f, "hypothesis violation: {m}"),
        }
    }
}

impl std::error::Error for JobError {}

fn input_err<E: std::fmt::Display>(e: E) -> JobError {
    JobError::Input(e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// cyclotomic order N of the scalar context (1 = rationals)
    #[serde(default = "default_order")]
    pub order: u64,
    pub ell: usize,
    pub m: usize,
    pub gkdim: usize,
    pub hopf: HopfSection,
    pub action: ActionSection,
    pub superpotential: SuperpotentialSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSection>,
}

fn default_order() -> u64 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HopfSection {
    /// "trivial" | "kac_palyutkin" | "group" | "dual_group" | "tables"
    pub builtin: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    /// Artin–Wedderburn certificate for builtin = "group"
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub irreps: Vec<IrrepSection>,
    /// explicit structure-constant tables for builtin = "tables"
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<TablesSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    /// "trivial" | "cyclic" | "dihedral" | "table"
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IrrepSection {
    pub dim: usize,
    #[serde(default)]
    pub trivial: bool,
    /// matrices on generator (or all basis) element names
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TablesSection {
    pub basis: Vec<String>,
    /// mult[i][j] = list of "k:coeff" entries for b_i·b_j
    pub mult: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    /// coproduct[i] = list of "j,k:coeff"
    pub coproduct: Vec<Vec<String>>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
    pub generators: Vec<String>,
    /// Artin–Wedderburn certificate with full-basis matrices
    pub irreps: Vec<IrrepSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ActionSection {
    pub vars: Vec<String>,
    /// dual-group grading: variable name → group element name
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<BTreeMap<String, String>>,
    /// matrices per Hopf basis/generator name
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, Vec<Vec<String>>>>,
    /// abelian matrix-group route: generator matrices of G ⊂ GL(V)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_matrices: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuperpotentialSection {
    pub w: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dmax: Option<usize>,
}

/// Per-arrow intertwiner overrides (the --intertwiners file).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntertwinerFile {
    #[serde(default)]
    pub xi: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub phi: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let job: JobSpec = toml::from_str(text).map_err(input_err)?;
    if job.version != 1 {
        return Err(JobError::Input(format!(
            "unsupported job version {} (expected 1)",
            job.version
        )));
    }
    if job.order == 0 {
        return Err(JobError::Input("order must be a positive integer".into()));
    }
    if job.ell == 0 || job.m == 0 {
        return Err(JobError::Input("ell and m must be at least 1".into()));
    }
    if job.m > job.ell {
        return Err(JobError::Input(format!(
            "relation degree m = {} exceeds ell = {}",
            job.m, job.ell
        )));
    }
    Ok(job)
}

pub fn print_job(job: &JobSpec) -> String {
    toml::to_string_pretty(job).expect("job serialization")
}

pub fn parse_intertwiners(text: &str, ctx: &Ctx) -> Result<(BTreeMap<String, Matrix>, BTreeMap<String, Matrix>), JobError> {
    let file: IntertwinerFile = toml::from_str(text).map_err(input_err)?;
    let conv = |m: &BTreeMap<String, Vec<Vec<String>>>| -> Result<BTreeMap<String, Matrix>, JobError> {
        m.iter()
            .map(|(k, rows)| Ok((k.clone(), parse_matrix(ctx, rows, &format!("intertwiner {k}"))?)))
            .collect()
    };
    Ok((conv(&file.phi)?, conv(&file.xi)?))
}

pub fn parse_matrix(ctx: &Ctx, rows: &[Vec<String>], what: &str) -> Result<Matrix, JobError> {
    if rows.is_empty() {
        return Err(JobError::Input(format!("{what}: empty matrix")));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(JobError::Input(format!("{what}: ragged rows")));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(cols);
        for entry in row {
            out.push(Scalar::parse(entry, ctx).map_err(|e| {
                JobError::Input(format!("{what}: {e}"))
            })?);
        }
        parsed.push(out);
    }
    Ok(Matrix::from_rows(ctx, parsed))
}

/// A job resolved into live engine objects.
pub struct ResolvedJob {
    pub ctx: Ctx,
    pub hopf: HopfAlgebra,
    pub v: Rep,
    pub var_names: Vec<String>,
    pub w: TensorElement,
    pub sigma: Option<Matrix>,
    pub ell: usize,
    pub m: usize,
    pub gkdim: usize,
    pub dmax: usize,
    /// fast-path data when the action is a group grading
    pub dual: Option<(FiniteGroup, Vec<usize>)>,
    /// base change applied by the abelian reduction, if any
    pub base_change: Option<Matrix>,
}

pub const DEFAULT_DMAX: usize = 40;

fn build_group(section: &GroupSection) -> Result<FiniteGroup, JobError> {
    match section.kind.as_str() {
        "trivial" => Ok(FiniteGroup::trivial()),
        "cyclic" => {
            let n = section.n.ok_or_else(|| JobError::Input("cyclic group needs n".into()))?;
            Ok(FiniteGroup::cyclic(n))
        }
        "dihedral" => {
            let n = section.n.ok_or_else(|| JobError::Input("dihedral group needs n".into()))?;
            Ok(FiniteGroup::dihedral(n))
        }
        "table" => FiniteGroup::from_table(section.names.clone(), section.table.clone())
            .map_err(|e| JobError::Input(e.to_string())),
        other => Err(JobError::Input(format!("unknown group kind {other:?}"))),
    }
}

fn build_irreps(
    ctx: &Ctx,
    group: &FiniteGroup,
    sections: &[IrrepSection],
) -> Result<Vec<Irrep>, JobError> {
    sections
        .iter()
        .enumerate()
        .map(|(idx, sec)| {
            let mut gen_matrices: BTreeMap<usize, Matrix> = BTreeMap::new();
            for (name, rows) in &sec.matrices {
                let el = group.by_name(name).ok_or_else(|| {
                    JobError::Input(format!("irrep {idx}: unknown group element {name:?}"))
                })?;
                let m = parse_matrix(ctx, rows, &format!("irrep {idx} matrix for {name}"))?;
                if m.rows() != sec.dim || m.cols() != sec.dim {
                    return Err(JobError::Input(format!(
                        "irrep {idx}: matrix for {name} is {}x{}, declared dim is {}",
                        m.rows(),
                        m.cols(),
                        sec.dim
                    )));
                }
                gen_matrices.insert(el, m);
            }
            let action: Result<Vec<Matrix>, JobError> = (0..group.order())
                .map(|e| {
                    let mut acc = Matrix::identity(ctx, sec.dim);
                    for g in group.word(e) {
                        let gm = gen_matrices.get(g).ok_or_else(|| {
                            JobError::Input(format!(
                                "irrep {idx}: no matrix for generator {}",
                                group.name(*g)
                            ))
                        })?;
                        acc = acc.matmul(gm);
                    }
                    Ok(acc)
                })
                .collect();
            Ok(Irrep { dim: sec.dim, action: action?, is_trivial: sec.trivial })
        })
        .collect()
}

fn build_tables_hopf(ctx: &Ctx, t: &TablesSection) -> Result<HopfAlgebra, JobError> {
    let dim = t.basis.len();
    let parse_s = |s: &str, what: &str| {
        Scalar::parse(s, ctx).map_err(|e| JobError::Input(format!("{what}: {e}")))
    };
    let parse_vec = |v: &[String], what: &str| -> Result<Vec<Scalar>, JobError> {
        if v.len() != dim {
            return Err(JobError::Input(format!("{what}: expected {dim} entries")));
        }
        v.iter().map(|s| parse_s(s, what)).collect()
    };
    if t.mult.len() != dim || t.mult.iter().any(|r| r.len() != dim) {
        return Err(JobError::Input("mult table must be dim×dim".into()));
    }
    let mut mult: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for entry in &t.mult[i][j] {
                let (k, c) = entry
                    .split_once(':')
                    .ok_or_else(|| JobError::Input(format!("mult entry {entry:?} needs k:coeff")))?;
                let k: usize = k.trim().parse().map_err(input_err)?;
                if k >= dim {
                    return Err(JobError::Input(format!("mult target {k} out of range")));
                }
                mult[i][j].push((k, parse_s(c, "mult coefficient")?));
            }
        }
    }
    if t.coproduct.len() != dim {
        return Err(JobError::Input("coproduct needs one list per basis element".into()));
    }
    let mut coproduct = Vec::with_capacity(dim);
    for list in &t.coproduct {
        let mut terms = Vec::new();
        for entry in list {
            let (jk, c) = entry
                .split_once(':')
                .ok_or_else(|| JobError::Input(format!("coproduct entry {entry:?} needs j,k:coeff")))?;
            let (j, k) = jk
                .split_once(',')
                .ok_or_else(|| JobError::Input(format!("coproduct entry {entry:?} needs j,k:coeff")))?;
            let j: usize = j.trim().parse().map_err(input_err)?;
            let k: usize = k.trim().parse().map_err(input_err)?;
            if j >= dim || k >= dim {
                return Err(JobError::Input("coproduct index out of range".into()));
            }
            terms.push((j, k, parse_s(c, "coproduct coefficient")?));
        }
        coproduct.push(terms);
    }
    let generators: Result<Vec<usize>, JobError> = t
        .generators
        .iter()
        .map(|g| {
            t.basis
                .iter()
                .position(|b| b == g)
                .ok_or_else(|| JobError::Input(format!("unknown generator {g:?}")))
        })
        .collect();
    // explicit tables carry full-basis irrep matrices, no word completion
    let irreps: Result<Vec<Irrep>, JobError> = t
        .irreps
        .iter()
        .enumerate()
        .map(|(idx, sec)| {
            let action: Result<Vec<Matrix>, JobError> = t
                .basis
                .iter()
                .map(|b| {
                    let rows = sec.matrices.get(b).ok_or_else(|| {
                        JobError::Input(format!("irrep {idx}: missing matrix for basis element {b:?}"))
                    })?;
                    let m = parse_matrix(ctx, rows, &format!("irrep {idx} matrix for {b}"))?;
                    if m.rows() != sec.dim || m.cols() != sec.dim {
                        return Err(JobError::Input(format!(
                            "irrep {idx}: matrix for {b} is {}x{}, declared dim is {}",
                            m.rows(),
                            m.cols(),
                            sec.dim
                        )));
                    }
                    Ok(m)
                })
                .collect();
            Ok(Irrep { dim: sec.dim, action: action?, is_trivial: sec.trivial })
        })
        .collect();
    let h = HopfAlgebra::from_tables(
        Ctx::clone(ctx),
        t.basis.clone(),
        mult,
        parse_vec(&t.unit, "unit")?,
        coproduct,
        parse_vec(&t.counit, "counit")?,
        parse_matrix(ctx, &t.antipode, "antipode")?,
        irreps?,
        generators?,
    );
    let report = h.validate();
    if !report.passed() {
        return Err(JobError::Input(format!(
            "explicit tables fail validation: {}",
            report.failures.join("; ")
        )));
    }
    Ok(h)
}

/// Resolves a job into engine objects, running the abelian reduction when the
/// action is given by matrices generating a group.
pub fn resolve(job: &JobSpec) -> Result<ResolvedJob, JobError> {
    let ctx = CycContext::new(job.order);
    let var_names = job.action.vars.clone();
    if var_names.is_empty() {
        return Err(JobError::Input("action.vars must not be empty".into()));
    }
    let dmax = job
        .options
        .as_ref()
        .and_then(|o| o.dmax)
        .unwrap_or(DEFAULT_DMAX);

    let route_count = [
        job.action.degrees.is_some(),
        job.action.matrices.is_some(),
        job.action.group_matrices.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if route_count != 1 {
        return Err(JobError::Input(
            "action must specify exactly one of degrees, matrices, group_matrices".into(),
        ));
    }

    // the abelian matrix route rewrites the job into a dual-group grading
    if let Some(gens) = &job.action.group_matrices {
        if job.hopf.builtin != "group" {
            return Err(JobError::Input(
                "group_matrices requires hopf.builtin = \"group\"".into(),
            ));
        }
        let r = var_names.len();
        let mut parsed = Vec::new();
        for (k, rows) in gens.iter().enumerate() {
            let m = parse_matrix(&ctx, rows, &format!("group generator {k}"))?;
            if m.rows() != r || m.cols() != r {
                return Err(JobError::Input(format!(
                    "action.group_matrices[{k}] is {}x{}, expected {r}x{r} to act on vars {:?}",
                    m.rows(),
                    m.cols(),
                    var_names
                )));
            }
            parsed.push(m);
        }
        let w = TensorElement::parse(&job.superpotential.w, &var_names, &ctx)
            .map_err(|e| JobError::Input(e.to_string()))?;
        if w.degree() != job.ell {
            return Err(JobError::Input(format!(
                "superpotential has degree {}, job declares ell = {}",
                w.degree(),
                job.ell
            )));
        }
        let red = abelian_group_reduction(&ctx, &parsed, &w)
            .map_err(|e| JobError::Hypothesis(e.to_string()))?;
        let hopf = build_dual_group_algebra(&ctx, &red.char_group)
            .map_err(|e| JobError::Input(e.to_string()))?;
        let v = dual_grading_rep(&hopf, &ctx, &red.degrees);
        let base_change =
            (!red.base_change.is_identity()).then(|| red.base_change.clone());
        // a user twist refers to the original basis; conjugate it into the
        // eigenbasis the reduced superpotential lives in
        let sigma = parse_twist(&ctx, job)?
            .map(|s| -> Result<Matrix, JobError> {
                match &base_change {
                    Some(p) => {
                        let pinv = p.inverse().ok_or_else(|| {
                            JobError::Input("base change is singular".into())
                        })?;
                        Ok(pinv.matmul(&s).matmul(p))
                    }
                    None => Ok(s),
                }
            })
            .transpose()?;
        return Ok(ResolvedJob {
            ctx: Ctx::clone(&ctx),
            hopf,
            v,
            var_names,
            w: red.w.clone(),
            sigma,
            ell: job.ell,
            m: job.m,
            gkdim: job.gkdim,
            dmax,
            dual: Some((red.char_group, red.degrees)),
            base_change,
        });
    }

    // builtins
    let (hopf, group) = match job.hopf.builtin.as_str() {
        "trivial" => (build_trivial(&ctx), None),
        "kac_palyutkin" => (
            build_kac_palyutkin(&ctx).map_err(|e| JobError::Input(e.to_string()))?,
            None,
        ),
        "group" => {
            let gs = job
                .hopf
                .group
                .as_ref()
                .ok_or_else(|| JobError::Input("builtin \"group\" needs [hopf.group]".into()))?;
            let group = build_group(gs)?;
            if job.hopf.irreps.is_empty() {
                return Err(JobError::Input(
                    "builtin \"group\" needs [[hopf.irreps]] (the Artin-Wedderburn certificate)"
                        .into(),
                ));
            }
            let irreps = build_irreps(&ctx, &group, &job.hopf.irreps)?;
            let h = build_group_algebra(&ctx, &group, irreps)
                .map_err(|e| JobError::Input(e.to_string()))?;
            (h, Some(group))
        }
        "dual_group" => {
            let gs = job.hopf.group.as_ref().ok_or_else(|| {
                JobError::Input("builtin \"dual_group\" needs [hopf.group]".into())
            })?;
            let group = build_group(gs)?;
            let h = build_dual_group_algebra(&ctx, &group)
                .map_err(|e| JobError::Input(e.to_string()))?;
            (h, Some(group))
        }
        "tables" => {
            let t = job
                .hopf
                .tables
                .as_ref()
                .ok_or_else(|| JobError::Input("builtin \"tables\" needs [hopf.tables]".into()))?;
            (build_tables_hopf(&ctx, t)?, None)
        }
        other => return Err(JobError::Input(format!("unknown hopf builtin {other:?}"))),
    };

    let w = TensorElement::parse(&job.superpotential.w, &var_names, &ctx)
        .map_err(|e| JobError::Input(e.to_string()))?;
    if w.degree() != job.ell {
        return Err(JobError::Input(format!(
            "superpotential has degree {}, job declares ell = {}",
            w.degree(),
            job.ell
        )));
    }

    let (v, dual) = if let Some(degrees) = &job.action.degrees {
        if job.hopf.builtin != "dual_group" {
            return Err(JobError::Input(
                "action.degrees requires hopf.builtin = \"dual_group\"".into(),
            ));
        }
        let group = group.clone().unwrap();
        let mut deg_indices = Vec::with_capacity(var_names.len());
        for var in &var_names {
            let name = degrees.get(var).ok_or_else(|| {
                JobError::Input(format!("action.degrees is missing variable {var:?}"))
            })?;
            let el = group.by_name(name).ok_or_else(|| {
                JobError::Input(format!("unknown group element {name:?} in degrees"))
            })?;
            deg_indices.push(el);
        }
        for key in degrees.keys() {
            if !var_names.contains(key) {
                return Err(JobError::Input(format!(
                    "action.degrees mentions undeclared variable {key:?}"
                )));
            }
        }
        let v = dual_grading_rep(&hopf, &ctx, &deg_indices);
        (v, Some((group, deg_indices)))
    } else {
        let matrices = job.action.matrices.as_ref().unwrap();
        let mut by_basis: BTreeMap<usize, Matrix> = BTreeMap::new();
        for (name, rows) in matrices {
            let idx = hopf.basis_by_name(name).ok_or_else(|| {
                JobError::Input(format!("unknown Hopf basis element {name:?} in action.matrices"))
            })?;
            let m = parse_matrix(&ctx, rows, &format!("action matrix for {name}"))?;
            if m.rows() != var_names.len() || m.cols() != var_names.len() {
                return Err(JobError::Input(format!(
                    "action matrix for {name} is {}x{}, expected {len}x{len} (field action.matrices.{name})",
                    m.rows(),
                    m.cols(),
                    len = var_names.len()
                )));
            }
            by_basis.insert(idx, m);
        }
        let v = if by_basis.len() == hopf.dim() {
            // matrices for the whole basis: no generator completion needed
            let action: Vec<Matrix> = (0..hopf.dim()).map(|i| by_basis[&i].clone()).collect();
            let rep = Rep { dim: var_names.len(), action };
            rep.check_morphism(&hopf).map_err(|e| JobError::Hypothesis(e.to_string()))?;
            rep
        } else {
            Rep::from_generator_matrices(&hopf, &by_basis, var_names.len())
                .map_err(|e| JobError::Hypothesis(e.to_string()))?
        };
        (v, None)
    };

    Ok(ResolvedJob {
        ctx: Ctx::clone(hopf.ctx()),
        hopf,
        v,
        var_names,
        w,
        sigma: parse_twist(&ctx, job)?,
        ell: job.ell,
        m: job.m,
        gkdim: job.gkdim,
        dmax,
        dual,
        base_change: None,
    })
}

fn parse_twist(ctx: &Ctx, job: &JobSpec) -> Result<Option<Matrix>, JobError> {
    job.superpotential
        .twist
        .as_ref()
        .map(|rows| parse_matrix(ctx, rows, "superpotential.twist"))
        .transpose()
}

/// The grading representation of (𝕜G)*: f_g · v_j = δ_{g, deg v_j} v_j.
pub fn dual_grading_rep(h: &HopfAlgebra, ctx: &Ctx, degrees: &[usize]) -> Rep {
    let r = degrees.len();
    let action = (0..h.dim())
        .map(|fg| {
            Matrix::from_fn(ctx, r, r, |i, j| {
                if i == j && degrees[i] == fg {
                    Scalar::one(ctx)
                } else {
                    Scalar::zero(ctx)
                }
            })
        })
        .collect();
    Rep { dim: r, action }
}
