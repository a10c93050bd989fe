//! Stage orchestration: every command resolves the job, builds the needed
//! objects (through the dual-group fast path when the action is a grading,
//! through the general intertwiner route otherwise), and renders the result
//! as text, DOT, or versioned JSON records.

use std::collections::BTreeMap;

use serde::Serialize;

use hopfquiver::growth::{auslander_check, graded_dims, growth_verdict, quotient_by_vertex};
use hopfquiver::hopf::Character;
use hopfquiver::linalg::Matrix;
use hopfquiver::potential::{
    hdet, hdet_dual_shortcut, hdet_is_trivial, verify_twisted_weak_potential_smash,
    SuperpotentialPresentation,
};
use hopfquiver::quiverpot::{
    build_quiver_potential, derive_quiver_relations, dual_group_fast_path, mcm_dimension_vectors,
    recognize_preprojective, QuiverAlgebra, QuiverPotential,
};
use hopfquiver::rep::{is_strongly_connected, mckay_quiver, Quiver};

use crate::job::{JobError, ResolvedJob};

pub const RECORD_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stage {
    Validate,
    Hdet,
    Mckay,
    Lambda,
    Hilbert,
    Auslander,
    Mcm,
}

impl Stage {
    pub fn parse(s: &str) -> Option<Stage> {
        Some(match s {
            "validate" => Stage::Validate,
            "hdet" => Stage::Hdet,
            "mckay" => Stage::Mckay,
            "lambda" => Stage::Lambda,
            "hilbert" => Stage::Hilbert,
            "auslander" => Stage::Auslander,
            "mcm" => Stage::Mcm,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Hdet => "hdet",
            Stage::Mckay => "mckay",
            Stage::Lambda => "lambda",
            Stage::Hilbert => "hilbert",
            Stage::Auslander => "auslander",
            Stage::Mcm => "mcm",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Dot,
    Records,
}

#[derive(Default)]
pub struct Overrides {
    pub phi: BTreeMap<String, Matrix>,
    pub xi: BTreeMap<String, Matrix>,
    pub dmax: Option<usize>,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    version: u32,
    stage: &'static str,
    result: T,
}

fn records<T: Serialize>(stage: Stage, result: T) -> String {
    let env = Envelope { version: RECORD_VERSION, stage: stage.name(), result };
    serde_json::to_string_pretty(&env).expect("record serialization")
}

// ---------------------------------------------------------------------------

struct Built {
    quiver: Quiver,
    potential: QuiverPotential,
    algebra: QuiverAlgebra,
    chi: Character,
}

fn presentation<'a>(job: &'a ResolvedJob) -> Result<SuperpotentialPresentation<'a>, JobError> {
    SuperpotentialPresentation::new(
        &job.hopf,
        job.v.clone(),
        job.var_names.clone(),
        job.w.clone(),
        job.sigma.clone(),
        job.m,
        job.gkdim,
    )
    .map_err(|e| JobError::Hypothesis(e.to_string()))
}

fn build(job: &ResolvedJob, ov: &Overrides) -> Result<Built, JobError> {
    let pres = presentation(job)?;
    let chi = hdet(&pres).map_err(|e| JobError::Hypothesis(e.to_string()))?;
    let use_fast = job.dual.is_some() && ov.phi.is_empty() && ov.xi.is_empty();
    if use_fast {
        let (group, degrees) = job.dual.as_ref().unwrap();
        let out = dual_group_fast_path(&job.ctx, group, degrees, &job.var_names, &job.w, job.m)
            .map_err(|e| JobError::Hypothesis(e.to_string()))?;
        return Ok(Built { quiver: out.quiver, potential: out.potential, algebra: out.algebra, chi });
    }
    let (chi, qp) = build_quiver_potential(&pres, &ov.phi, &ov.xi)
        .map_err(|e| JobError::Hypothesis(e.to_string()))?;
    let qa = derive_quiver_relations(&qp);
    Ok(Built {
        quiver: hopfquiver::quiverpot::clone_quiver(&qp.quiver),
        potential: qp,
        algebra: qa,
        chi,
    })
}

// ---------------------------------------------------------------------------
// stages
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckRecord {
    check: String,
    passed: bool,
    detail: String,
}

pub struct StageOutput {
    pub text: String,
    /// a failed hypothesis was detected (exit code 2 for validate)
    pub hypothesis_failed: bool,
}

pub fn run_stage(job: &ResolvedJob, stage: Stage, ov: &Overrides, format: Format) -> Result<StageOutput, JobError> {
    match stage {
        Stage::Validate => run_validate(job, format),
        Stage::Hdet => run_hdet(job, format),
        Stage::Mckay => run_mckay(job, ov, format),
        Stage::Lambda => run_lambda(job, ov, format),
        Stage::Hilbert => run_hilbert(job, ov, format),
        Stage::Auslander => run_auslander(job, ov, format),
        Stage::Mcm => run_mcm(job, ov, format),
    }
}

fn run_validate(job: &ResolvedJob, format: Format) -> Result<StageOutput, JobError> {
    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut push = |check: &str, passed: bool, detail: String| {
        checks.push(CheckRecord { check: check.to_string(), passed, detail });
    };
    let report = job.hopf.validate();
    push(
        "hopf_axioms",
        report.passed(),
        if report.passed() { "all axioms and the AW certificate hold".into() } else { report.failures.join("; ") },
    );
    match job.v.check_morphism(&job.hopf) {
        Ok(()) => push("action_morphism", true, "ρ is a unital algebra morphism".into()),
        Err(e) => push("action_morphism", false, e.to_string()),
    }
    match presentation(job) {
        Err(e) => {
            push("twisted_superpotential", false, e.to_string());
            push("relations_h_stable", false, "skipped (no presentation)".into());
            push("hdet_line", false, "skipped (no presentation)".into());
            push("smash_twisted_weak_potential", false, "skipped".into());
        }
        Ok(pres) => {
            push(
                "twisted_superpotential",
                true,
                "w is a σ-twisted superpotential".into(),
            );
            match pres.relations_h_stable() {
                Ok(()) => push("relations_h_stable", true, format!("{} relations", pres.relations().len())),
                Err(e) => push("relations_h_stable", false, e),
            }
            match hdet(&pres) {
                Ok(chi) => {
                    push(
                        "hdet_line",
                        true,
                        format!(
                            "hdet exists and is {}",
                            if hdet_is_trivial(&job.hopf, &chi) { "trivial" } else { "nontrivial" }
                        ),
                    );
                    match verify_twisted_weak_potential_smash(&pres, &chi) {
                        Ok(()) => push(
                            "smash_twisted_weak_potential",
                            true,
                            "(h₍₁₎·w)⊗h₍₂₎ = w⊗Ξ(h) on the basis".into(),
                        ),
                        Err(e) => push("smash_twisted_weak_potential", false, e),
                    }
                }
                Err(e) => {
                    push("hdet_line", false, e.to_string());
                    push("smash_twisted_weak_potential", false, "skipped (no hdet)".into());
                }
            }
        }
    }
    let quiver = match &job.dual {
        Some((group, degrees)) => {
            match dual_group_fast_path(&job.ctx, group, degrees, &job.var_names, &job.w, job.m) {
                Ok(out) => Some(out.quiver),
                Err(_) => None,
            }
        }
        None => Some(mckay_quiver(&job.hopf, &job.v)),
    };
    match quiver {
        Some(q) => {
            let ok = is_strongly_connected(&q);
            push(
                "inner_faithful",
                ok,
                if ok {
                    "McKay quiver is strongly connected".into()
                } else {
                    "McKay quiver is not strongly connected: the action factors through a proper quotient".into()
                },
            );
        }
        None => push("inner_faithful", false, "McKay quiver unavailable".into()),
    }

    let failed = checks.iter().any(|c| !c.passed);
    let text = match format {
        Format::Records => records(Stage::Validate, &checks),
        _ => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "[{}] {}: {}\n",
                    if c.passed { "pass" } else { "FAIL" },
                    c.check,
                    c.detail
                ));
            }
            s.push_str(if failed { "verdict: hypothesis violations found\n" } else { "verdict: all checks passed\n" });
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: failed })
}

#[derive(Serialize)]
struct HdetRecord {
    values: Vec<(String, String)>,
    trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_degree: Option<String>,
}

fn run_hdet(job: &ResolvedJob, format: Format) -> Result<StageOutput, JobError> {
    let pres = presentation(job)?;
    let chi = hdet(&pres).map_err(|e| JobError::Hypothesis(e.to_string()))?;
    let trivial = hdet_is_trivial(&job.hopf, &chi);
    let dual_degree = match &job.dual {
        Some((group, degrees)) => {
            let el = hdet_dual_shortcut(group, degrees, &job.w)
                .map_err(|e| JobError::Hypothesis(e.to_string()))?;
            // cross-check against the eigenvalue route: χ_{deg w}(f_g) = δ
            for g in 0..group.order() {
                let expect = g == el;
                if chi.values[g].is_one() != expect {
                    return Err(JobError::Hypothesis(
                        "dual-group shortcut disagrees with the eigenvalue route".into(),
                    ));
                }
            }
            Some(group.name(el).to_string())
        }
        None => None,
    };
    let values: Vec<(String, String)> = (0..job.hopf.dim())
        .map(|i| (job.hopf.basis_name(i).to_string(), chi.values[i].to_string()))
        .collect();
    let text = match format {
        Format::Records => records(Stage::Hdet, &HdetRecord { values, trivial, dual_degree }),
        _ => {
            let mut s = String::from("homological determinant:\n");
            for (name, val) in &values {
                s.push_str(&format!("  hdet({name}) = {val}\n"));
            }
            s.push_str(&format!("trivial: {trivial}\n"));
            if let Some(d) = dual_degree {
                s.push_str(&format!("deg_G(w) = {d} (dual-group shortcut agrees)\n"));
            }
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: false })
}

#[derive(Serialize)]
struct ArrowRecord {
    name: String,
    tail: usize,
    head: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    adorn: Option<String>,
}

#[derive(Serialize)]
struct MckayRecord {
    vertices: Vec<String>,
    arrows: Vec<ArrowRecord>,
    inner_faithful: bool,
}

fn run_mckay(job: &ResolvedJob, ov: &Overrides, format: Format) -> Result<StageOutput, JobError> {
    let built = build(job, ov)?;
    let q = &built.quiver;
    let faithful = is_strongly_connected(q);
    let text = match format {
        Format::Dot => {
            let prov: Vec<String> = built
                .potential
                .arrows
                .iter()
                .map(|a| if a.user_supplied { "user".to_string() } else { "auto".to_string() })
                .collect();
            q.to_dot(Some(&prov))
        }
        Format::Records => records(
            Stage::Mckay,
            &MckayRecord {
                vertices: q.vertex_labels.clone(),
                arrows: q
                    .arrows
                    .iter()
                    .map(|a| ArrowRecord {
                        name: a.name.clone(),
                        tail: a.tail,
                        head: a.head,
                        adorn: a.adorn.clone(),
                    })
                    .collect(),
                inner_faithful: faithful,
            },
        ),
        Format::Text => {
            let mut s = format!("McKay quiver: {} vertices, {} arrows\n", q.n_vertices(), q.arrows.len());
            for (i, l) in q.vertex_labels.iter().enumerate() {
                s.push_str(&format!("  vertex {i}: {l}\n"));
            }
            for a in &q.arrows {
                s.push_str(&format!(
                    "  {}: {} -> {}{}\n",
                    a.name,
                    a.tail,
                    a.head,
                    a.adorn.as_ref().map(|x| format!(" [{x}]")).unwrap_or_default()
                ));
            }
            s.push_str(&format!("inner-faithful: {faithful}\n"));
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: !faithful })
}

#[derive(Serialize)]
struct LambdaRecord {
    tau: Vec<usize>,
    hdet_trivial: bool,
    phi: String,
    relations: Vec<String>,
    recognition: String,
}

fn run_lambda(job: &ResolvedJob, ov: &Overrides, format: Format) -> Result<StageOutput, JobError> {
    let built = build(job, ov)?;
    let trivial = hdet_is_trivial(&job.hopf, &built.chi);
    let phi = built.potential.render_phi();
    let relations: Vec<String> = built
        .algebra
        .relations
        .iter()
        .map(|r| r.render(&built.algebra.quiver))
        .collect();
    let recognition = recognize_preprojective(&built.algebra, &built.potential.tau).describe();
    let text = match format {
        Format::Records => records(
            Stage::Lambda,
            &LambdaRecord {
                tau: built.potential.tau.clone(),
                hdet_trivial: trivial,
                phi: phi.clone(),
                relations: relations.clone(),
                recognition: recognition.clone(),
            },
        ),
        _ => {
            let mut s = String::new();
            s.push_str(&format!("hdet trivial: {trivial}\n"));
            s.push_str(&format!("tau: {:?}\n", built.potential.tau));
            s.push_str(&format!("Phi = {phi}\n"));
            s.push_str(&format!("relations ({}):\n", relations.len()));
            for r in &relations {
                s.push_str(&format!("  {r}\n"));
            }
            s.push_str(&format!("recognition: {recognition}\n"));
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: false })
}

#[derive(Serialize)]
struct ProfileRecord {
    dims: Vec<usize>,
    zero_degree: Option<usize>,
    growth: String,
}

#[derive(Serialize)]
struct HilbertRecord {
    lambda: ProfileRecord,
    quotient: ProfileRecord,
}

fn run_hilbert(job: &ResolvedJob, ov: &Overrides, format: Format) -> Result<StageOutput, JobError> {
    let built = build(job, ov)?;
    let dmax = ov.dmax.unwrap_or(job.dmax);
    let lambda = graded_dims(&built.algebra, dmax, false);
    let quotient_alg = quotient_by_vertex(&built.algebra, 0);
    let quotient = graded_dims(&quotient_alg, dmax, false);
    let lr = ProfileRecord {
        dims: lambda.dims.clone(),
        zero_degree: lambda.zero_degree,
        growth: growth_verdict(&lambda).describe(),
    };
    let qr = ProfileRecord {
        dims: quotient.dims.clone(),
        zero_degree: quotient.zero_degree,
        growth: growth_verdict(&quotient).describe(),
    };
    let text = match format {
        Format::Records => records(Stage::Hilbert, &HilbertRecord { lambda: lr, quotient: qr }),
        _ => {
            let mut s = String::new();
            s.push_str("Hilbert profile of Lambda (degree: dim):\n");
            for (d, h) in lambda.dims.iter().enumerate() {
                s.push_str(&format!("  {d}: {h}\n"));
            }
            s.push_str(&format!("  growth: {}\n", growth_verdict(&lambda).describe()));
            s.push_str("Hilbert profile of Lambda/<e0>:\n");
            for (d, h) in quotient.dims.iter().enumerate() {
                s.push_str(&format!("  {d}: {h}\n"));
            }
            s.push_str(&format!("  growth: {}\n", growth_verdict(&quotient).describe()));
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: false })
}

#[derive(Serialize)]
struct AuslanderRecord {
    verdict: String,
    certified: bool,
    gkdim_a: usize,
    quotient_dims: Vec<usize>,
    quotient_zero_degree: Option<usize>,
    quotient_total_dim: Option<usize>,
    growth: String,
}

fn run_auslander(job: &ResolvedJob, ov: &Overrides, format: Format) -> Result<StageOutput, JobError> {
    let built = build(job, ov)?;
    let dmax = ov.dmax.unwrap_or(job.dmax);
    let verdict = auslander_check(&built.algebra, job.gkdim, dmax);
    let certified = matches!(
        verdict.kind,
        hopfquiver::growth::AuslanderKind::Isomorphism { certified: true }
            | hopfquiver::growth::AuslanderKind::NotIsomorphism { heuristic: false }
    );
    let rec = AuslanderRecord {
        verdict: verdict.describe(),
        certified,
        gkdim_a: job.gkdim,
        quotient_dims: verdict.quotient_profile.dims.clone(),
        quotient_zero_degree: verdict.quotient_profile.zero_degree,
        quotient_total_dim: verdict.quotient_profile.total_dim(),
        growth: verdict.growth.describe(),
    };
    let text = match format {
        Format::Records => records(Stage::Auslander, &rec),
        _ => {
            let mut s = String::new();
            s.push_str(&format!("Auslander map: {}\n", rec.verdict));
            s.push_str(&format!("GKdim A (declared): {}\n", rec.gkdim_a));
            s.push_str(&format!("Lambda/<e0> dims: {:?}\n", rec.quotient_dims));
            if let Some(t) = rec.quotient_total_dim {
                s.push_str(&format!("Lambda/<e0> total dim: {t}\n"));
            }
            s.push_str(&format!("growth: {}\n", rec.growth));
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: false })
}

#[derive(Serialize)]
struct McmRecord {
    vertices: Vec<String>,
    /// table[i][d] = dim of the degree-d part of e₀Λe_i
    table: Vec<Vec<usize>>,
}

fn run_mcm(job: &ResolvedJob, ov: &Overrides, format: Format) -> Result<StageOutput, JobError> {
    let built = build(job, ov)?;
    let dmax = ov.dmax.unwrap_or(job.dmax);
    let table = mcm_dimension_vectors(&built.algebra, dmax);
    let rec = McmRecord { vertices: built.quiver.vertex_labels.clone(), table };
    let text = match format {
        Format::Records => records(Stage::Mcm, &rec),
        _ => {
            let mut s = String::from("MCM dimension vectors (rows: e0·Lambda·e_i by degree):\n");
            for (i, row) in rec.table.iter().enumerate() {
                s.push_str(&format!("  M_{i} ({}): {:?}\n", rec.vertices[i], row));
            }
            s
        }
    };
    Ok(StageOutput { text, hypothesis_failed: false })
}
