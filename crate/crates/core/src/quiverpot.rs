//! The quiver superpotential construction: the vertex permutation τ induced
//! by 𝕜w ⊗ −, arrow intertwiners φ_α with duals ξ_α, the superpotential Φ
//! on the McKay quiver with coefficients λ_p, and the relations of the
//! quiver algebra Λ Morita equivalent to the smash product. Includes the
//! dual-group fast path, the abelian-group reduction, preprojective
//! recognition, and MCM dimension vectors.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::hopf::{Character, FiniteGroup, HopfAlgebra};
use crate::linalg::Matrix;
use crate::potential::{hdet_dual_shortcut, SuperpotentialPresentation, TensorElement};
use crate::rep::{dual_rep, intertwiners, mckay_quiver, Arrow, Quiver, Rep};
use crate::scalar::{Ctx, Scalar};

#[derive(Debug, Error)]
pub enum QuiverPotError {
    #[error("corrupt Artin-Wedderburn certificate: {0}")]
    BadCertificate(String),
    #[error("duality system singular for arrows between vertices {i} and {j}")]
    DualitySingular { i: usize, j: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
}

/// One arrow of the McKay quiver with its chosen intertwiner
/// φ: V_i → V⊗V_j and the dual map ξ: V_j → V*⊗V_i.
#[derive(Clone)]
pub struct ArrowData {
    pub arrow: usize,
    pub phi: Matrix,
    pub xi: Matrix,
    pub user_supplied: bool,
}

/// The quiver superpotential Φ: a map from length-ℓ paths (arrow id
/// sequences) to scalars, supported on paths from τ(j) to j.
pub struct QuiverPotential {
    pub quiver: Quiver,
    pub arrows: Vec<ArrowData>,
    pub tau: Vec<usize>,
    /// `theta_maps[j]`: the component V_{τ(j)} → V_j of the normalization
    /// isomorphism V_{τ(j)} ≅ 𝕜w ⊗ V_j, first nonzero coordinate 1
    pub theta_maps: Vec<Matrix>,
    pub phi_terms: BTreeMap<Vec<usize>, Scalar>,
    pub ell: usize,
    pub m: usize,
}

/// A homogeneous linear combination of parallel paths.
#[derive(Clone, Debug)]
pub struct PathPoly {
    pub tail: usize,
    pub head: usize,
    pub terms: Vec<(Vec<usize>, Scalar)>,
}

impl PathPoly {
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(p, _)| p.len())
    }

    pub fn render(&self, quiver: &Quiver) -> String {
        use num_traits::Signed;
        let mut s = String::new();
        for (i, (path, c)) in self.terms.iter().enumerate() {
            let word: String = path.iter().map(|&a| quiver.arrows[a].name.as_str()).collect();
            let neg = c.as_rational().map_or(false, |r| r.is_negative());
            let mag = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                if mag.as_rational().is_some() {
                    let _ = write!(s, "{mag}");
                } else {
                    let _ = write!(s, "({mag})");
                }
            }
            s.push_str(&word);
        }
        s.push_str(" = 0");
        s
    }
}

/// A quiver with homogeneous relations, graded by path length.
#[derive(Debug)]
pub struct QuiverAlgebra {
    pub quiver: Quiver,
    pub relations: Vec<PathPoly>,
}

// ---------------------------------------------------------------------------
// τ and θ
// ---------------------------------------------------------------------------

/// The representation 𝕜w ⊗ V_j: the hdet-winding twist of V_j.
pub fn hdet_twisted_irrep(h: &HopfAlgebra, chi: &Character, j: usize) -> Rep {
    let rep = &h.irreps()[j];
    let action = (0..h.dim())
        .map(|b| {
            let mut m = Matrix::zeros(h.ctx(), rep.dim, rep.dim);
            for (a, b2, c) in h.coproduct_of_basis(b) {
                m = m.add(&rep.action[*b2].scale(&c.mul(&chi.values[*a])));
            }
            m
        })
        .collect();
    Rep { dim: rep.dim, action }
}

/// τ(i) = the unique irrep index with V_{τ(i)} ≅ 𝕜w ⊗ V_i.
pub fn tau_permutation(h: &HopfAlgebra, chi: &Character) -> Result<Vec<usize>, QuiverPotError> {
    let n = h.n_irreps();
    let mut tau = Vec::with_capacity(n);
    for i in 0..n {
        let twisted = hdet_twisted_irrep(h, chi, i);
        let matches: Vec<usize> = (0..n)
            .filter(|&t| !intertwiners(h, &Rep::from_irrep(h, t), &twisted).is_empty())
            .collect();
        match matches.as_slice() {
            [t] => tau.push(*t),
            _ => {
                return Err(QuiverPotError::BadCertificate(format!(
                    "𝕜w ⊗ V_{i} matches {} irreps",
                    matches.len()
                )))
            }
        }
    }
    let mut seen = vec![false; n];
    for &t in &tau {
        seen[t] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Err(QuiverPotError::BadCertificate("τ is not a permutation".into()));
    }
    Ok(tau)
}

/// The normalization components M_j: V_{τ(j)} → V_j of V_{τ(j)} ≅ 𝕜w⊗V_j.
pub fn theta_maps(
    h: &HopfAlgebra,
    chi: &Character,
    tau: &[usize],
) -> Result<Vec<Matrix>, QuiverPotError> {
    (0..h.n_irreps())
        .map(|j| {
            let twisted = hdet_twisted_irrep(h, chi, j);
            let basis = intertwiners(h, &Rep::from_irrep(h, tau[j]), &twisted);
            if basis.len() != 1 {
                return Err(QuiverPotError::BadCertificate(format!(
                    "Hom(V_{}, 𝕜w⊗V_{j}) has dimension {}",
                    tau[j],
                    basis.len()
                )));
            }
            Ok(basis.into_iter().next().unwrap())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// arrow maps and duality
// ---------------------------------------------------------------------------

/// Scalar of V_i → V⊗V_j → V⊗V*⊗V_i → V_i (φ then id⊗ξ then eval⊗id).
pub fn duality_pairing(
    ctx: &Ctx,
    r: usize,
    d_i: usize,
    d_j: usize,
    phi: &Matrix,
    xi: &Matrix,
) -> Result<Scalar, QuiverPotError> {
    let comp = Matrix::from_fn(ctx, d_i, d_i, |d, e| {
        let mut acc = Scalar::zero(ctx);
        for a in 0..r {
            for b in 0..d_j {
                let f = &phi[(a * d_j + b, e)];
                if !f.is_zero() {
                    acc = acc.add(&f.mul(&xi[(a * d_i + d, b)]));
                }
            }
        }
        acc
    });
    comp.as_scalar_multiple_of_identity().ok_or_else(|| {
        QuiverPotError::Inconsistent("duality composition is not a scalar multiple of id".into())
    })
}

/// Chooses φ_α and ξ_α per arrow: canonical intertwiner bases with ξ solved
/// from the duality system, honoring per-arrow overrides (keyed by arrow
/// name) that are validated and completed to a dual pair.
pub fn choose_arrow_maps(
    h: &HopfAlgebra,
    v: &Rep,
    quiver: &Quiver,
    phi_overrides: &BTreeMap<String, Matrix>,
    xi_overrides: &BTreeMap<String, Matrix>,
) -> Result<Vec<ArrowData>, QuiverPotError> {
    let ctx = h.ctx();
    let vstar = dual_rep(h, v);
    let mut out: Vec<Option<ArrowData>> = vec![None; quiver.arrows.len()];
    let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (id, a) in quiver.arrows.iter().enumerate() {
        blocks.entry((a.tail, a.head)).or_default().push(id);
    }
    for ((i, j), arrow_ids) in blocks {
        let vi = Rep::from_irrep(h, i);
        let vj = Rep::from_irrep(h, j);
        let d_i = vi.dim;
        let d_j = vj.dim;
        let target = crate::rep::tensor_rep(h, v, &vj);
        let phi_basis = intertwiners(h, &vi, &target);
        let xi_target = crate::rep::tensor_rep(h, &vstar, &vi);
        let xi_basis = intertwiners(h, &vj, &xi_target);
        let m = arrow_ids.len();
        if phi_basis.len() != m || xi_basis.len() != m {
            return Err(QuiverPotError::BadCertificate(format!(
                "intertwiner space dimensions ({}, {}) disagree with arrow count {m} for block ({i},{j})",
                phi_basis.len(),
                xi_basis.len()
            )));
        }
        let in_space = |cand: &Matrix, basis: &[Matrix], rows: usize, cols: usize| -> bool {
            let flat = |mt: &Matrix| {
                let mut vfl = Vec::with_capacity(rows * cols);
                for rr in 0..rows {
                    for cc in 0..cols {
                        vfl.push(mt[(rr, cc)].clone());
                    }
                }
                vfl
            };
            let basis_rows: Vec<Vec<Scalar>> = basis.iter().map(&flat).collect();
            crate::linalg::in_span(ctx, &basis_rows, &flat(cand))
        };

        // resolve the φ list for this block
        let mut phis: Vec<Matrix> = Vec::with_capacity(m);
        let mut any_user = false;
        let mut any_user_phi = false;
        for (slot, &aid) in arrow_ids.iter().enumerate() {
            let name = &quiver.arrows[aid].name;
            if let Some(user) = phi_overrides.get(name) {
                if user.rows() != v.dim * d_j || user.cols() != d_i {
                    return Err(QuiverPotError::Hypothesis(format!(
                        "override φ for arrow {name} has shape {}x{}, expected {}x{}",
                        user.rows(),
                        user.cols(),
                        v.dim * d_j,
                        d_i
                    )));
                }
                if !in_space(user, &phi_basis, v.dim * d_j, d_i) {
                    return Err(QuiverPotError::Hypothesis(format!(
                        "override φ for arrow {name} is not an intertwiner"
                    )));
                }
                any_user = true;
                any_user_phi = true;
                phis.push(user.clone());
            } else {
                phis.push(phi_basis[slot].clone());
            }
        }
        // resolve ξ list: user overrides or the canonical space, then the
        // duality system against the φ list
        let user_xis: Vec<Option<&Matrix>> = arrow_ids
            .iter()
            .map(|&aid| xi_overrides.get(&quiver.arrows[aid].name))
            .collect();
        let have_user_xi = user_xis.iter().any(|x| x.is_some());
        if have_user_xi && user_xis.iter().any(|x| x.is_none()) {
            return Err(QuiverPotError::Hypothesis(format!(
                "ξ overrides for block ({i},{j}) must cover all {m} arrows"
            )));
        }
        let xis: Vec<Matrix> = if have_user_xi {
            // validate the user's ξ's, then re-derive φ's dual to them
            let user: Vec<Matrix> =
                user_xis.iter().map(|x| (*x.as_ref().unwrap()).clone()).collect();
            for (k, xi) in user.iter().enumerate() {
                if xi.rows() != v.dim * d_i || xi.cols() != d_j {
                    return Err(QuiverPotError::Hypothesis(format!(
                        "override ξ for arrow {} has shape {}x{}, expected {}x{}",
                        quiver.arrows[arrow_ids[k]].name,
                        xi.rows(),
                        xi.cols(),
                        v.dim * d_i,
                        d_j
                    )));
                }
                if !in_space(xi, &xi_basis, v.dim * d_i, d_j) {
                    return Err(QuiverPotError::Hypothesis(format!(
                        "override ξ for arrow {} is not an intertwiner",
                        quiver.arrows[arrow_ids[k]].name
                    )));
                }
            }
            if !any_user_phi {
                // φ_α := Σ_s (P⁻¹)[s][α] φ-basis_s, P[α][s] = ⟨φ-basis_s, ξ_α⟩
                let p = Matrix::from_fn(ctx, m, m, |alpha, s| {
                    duality_pairing(ctx, v.dim, d_i, d_j, &phi_basis[s], &user[alpha])
                        .unwrap_or_else(|_| Scalar::zero(ctx))
                });
                let pinv = p.inverse().ok_or(QuiverPotError::DualitySingular { i, j })?;
                let mut new_phis = Vec::with_capacity(m);
                for alpha in 0..m {
                    let mut acc = Matrix::zeros(ctx, v.dim * d_j, d_i);
                    for s in 0..m {
                        acc = acc.add(&phi_basis[s].scale(&pinv[(s, alpha)]));
                    }
                    new_phis.push(acc);
                }
                phis = new_phis;
            }
            // with both sides supplied, the δ_{αβ} audit below arbitrates
            any_user = true;
            user
        } else {
            // ξ_β := Σ_s X[s][β] ξ-basis_s with B·X = I, B[α][s] = ⟨φ_α, ξ-basis_s⟩
            let b = Matrix::from_fn(ctx, m, m, |alpha, s| {
                duality_pairing(ctx, v.dim, d_i, d_j, &phis[alpha], &xi_basis[s])
                    .unwrap_or_else(|_| Scalar::zero(ctx))
            });
            let x = b.inverse().ok_or(QuiverPotError::DualitySingular { i, j })?;
            (0..m)
                .map(|beta| {
                    let mut acc = Matrix::zeros(ctx, v.dim * d_i, d_j);
                    for s in 0..m {
                        acc = acc.add(&xi_basis[s].scale(&x[(s, beta)]));
                    }
                    acc
                })
                .collect()
        };
        // exact duality audit: ⟨φ_α, ξ_β⟩ = δ_{αβ}
        for a_slot in 0..m {
            for b_slot in 0..m {
                let s = duality_pairing(ctx, v.dim, d_i, d_j, &phis[a_slot], &xis[b_slot])?;
                let ok = if a_slot == b_slot { s.is_one() } else { s.is_zero() };
                if !ok {
                    return Err(QuiverPotError::DualitySingular { i, j });
                }
            }
        }
        for (slot, &aid) in arrow_ids.iter().enumerate() {
            out[aid] = Some(ArrowData {
                arrow: aid,
                phi: phis[slot].clone(),
                xi: xis[slot].clone(),
                user_supplied: any_user,
            });
        }
    }
    Ok(out.into_iter().map(|o| o.expect("every arrow assigned")).collect())
}

// ---------------------------------------------------------------------------
// Φ coefficients
// ---------------------------------------------------------------------------

/// All arrow-id paths of the given length, lexicographic in arrow ids.
pub fn enumerate_paths(quiver: &Quiver, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
    for (id, a) in quiver.arrows.iter().enumerate().rev() {
        stack.push((vec![id], a.head));
    }
    while let Some((path, head)) = stack.pop() {
        if path.len() == len {
            out.push(path);
            continue;
        }
        for (id, a) in quiver.arrows.iter().enumerate().rev() {
            if a.tail == head {
                let mut p = path.clone();
                p.push(id);
                stack.push((p, a.head));
            }
        }
    }
    out
}

fn irrep_dims(h: &HopfAlgebra) -> Vec<usize> {
    h.irreps().iter().map(|r| r.dim).collect()
}

/// The map V_{τ(j)} → V_{t(p)} of the ξ-route composition
/// V_{τ(j)} → 𝕜w⊗V_j ↪ V^⊗ℓ⊗V_j → V^⊗ℓ⊗(V*)^⊗ℓ⊗V_{t(p)} → V_{t(p)},
/// with the evaluation ordered f_1(v_ℓ)⋯f_ℓ(v_1). By Schur it is λ_p·id
/// when t(p) = τ(j) and zero otherwise.
pub fn phi_coefficient_xi_route(
    h: &HopfAlgebra,
    v: &Rep,
    quiver: &Quiver,
    arrows: &[ArrowData],
    tau: &[usize],
    thetas: &[Matrix],
    w: &TensorElement,
    path: &[usize],
) -> Matrix {
    let ctx = h.ctx();
    let r = v.dim;
    let ell = path.len();
    let dims = irrep_dims(h);
    let j = quiver.arrows[*path.last().unwrap()].head;
    let i0 = quiver.arrows[path[0]].tail;
    // X: V_j → (V*)^⊗ℓ ⊗ V_{i0}
    let mut x = arrows[path[ell - 1]].xi.clone();
    for t in (0..ell - 1).rev() {
        let ident = Matrix::identity(ctx, r.pow((ell - 1 - t) as u32));
        x = ident.kron(&arrows[path[t]].xi).matmul(&x);
    }
    // Y = X ∘ M_j : V_{τ(j)} → (V*)^⊗ℓ ⊗ V_{i0}
    let y = x.matmul(&thetas[j]);
    let d_i0 = dims[i0];
    let d_tj = dims[tau[j]];
    Matrix::from_fn(ctx, d_i0, d_tj, |d, e| {
        let mut acc = Scalar::zero(ctx);
        for (word, c) in w.terms() {
            // the dual word pairs nonzero only against reverse(word)
            let mut flat = 0usize;
            for &q in word.iter().rev() {
                flat = flat * r + q as usize;
            }
            let yv = &y[(flat * d_i0 + d, e)];
            if !yv.is_zero() {
                acc = acc.add(&c.mul(yv));
            }
        }
        acc
    })
}

/// The same map computed along the ψ-route (ψ_α = η(ξ_α) collapsing tensor
/// factors directly); must agree with the ξ-route on every path.
pub fn phi_coefficient_psi_route(
    h: &HopfAlgebra,
    v: &Rep,
    quiver: &Quiver,
    arrows: &[ArrowData],
    tau: &[usize],
    thetas: &[Matrix],
    w: &TensorElement,
    path: &[usize],
) -> Matrix {
    let ctx = h.ctx();
    let r = v.dim;
    let ell = path.len();
    let dims = irrep_dims(h);
    let j = quiver.arrows[*path.last().unwrap()].head;
    let i0 = quiver.arrows[path[0]].tail;
    let psi_of = |aid: usize| -> Matrix {
        let a = &quiver.arrows[aid];
        let (d_i, d_j) = (dims[a.tail], dims[a.head]);
        let xi = &arrows[aid].xi;
        Matrix::from_fn(ctx, d_i, r * d_j, |d, col| {
            let (a_idx, b) = (col / d_j, col % d_j);
            xi[(a_idx * d_i + d, b)].clone()
        })
    };
    let wvec = w.to_vec(ctx);
    let d_tj = dims[tau[j]];
    let d_j_dim = dims[j];
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(d_tj);
    for e in 0..d_tj {
        // w ⊗ M_j(e) ∈ V^⊗ℓ ⊗ V_j
        let mut vec = vec![Scalar::zero(ctx); wvec.len() * d_j_dim];
        for (t, wv) in wvec.iter().enumerate() {
            if !wv.is_zero() {
                for b in 0..d_j_dim {
                    let mj = &thetas[j][(b, e)];
                    if !mj.is_zero() {
                        vec[t * d_j_dim + b] = wv.mul(mj);
                    }
                }
            }
        }
        for t in (0..ell).rev() {
            let ident = Matrix::identity(ctx, r.pow(t as u32));
            vec = ident.kron(&psi_of(path[t])).mul_vec(&vec);
        }
        columns.push(vec);
    }
    Matrix::from_fn(ctx, dims[i0], d_tj, |d, e| columns[e][d].clone())
}

/// Builds Φ: every length-ℓ path coefficient is computed, the support
/// condition (nonzero only on τ(j) → j) is asserted, nonzero terms kept.
#[allow(clippy::too_many_arguments)]
pub fn build_phi_from_parts(
    h: &HopfAlgebra,
    v: &Rep,
    quiver: Quiver,
    arrows: Vec<ArrowData>,
    tau: Vec<usize>,
    thetas: Vec<Matrix>,
    w: &TensorElement,
    m: usize,
) -> Result<QuiverPotential, QuiverPotError> {
    let ell = w.degree();
    let mut phi_terms = BTreeMap::new();
    for path in enumerate_paths(&quiver, ell) {
        let j = quiver.arrows[*path.last().unwrap()].head;
        let i0 = quiver.arrows[path[0]].tail;
        let comp = phi_coefficient_xi_route(h, v, &quiver, &arrows, &tau, &thetas, w, &path);
        if i0 != tau[j] {
            if !comp.is_zero() {
                return Err(QuiverPotError::Inconsistent(format!(
                    "Φ coefficient off the τ-support at path {path:?}"
                )));
            }
            continue;
        }
        let lambda = comp.as_scalar_multiple_of_identity().ok_or_else(|| {
            QuiverPotError::Inconsistent(format!(
                "coefficient map for path {path:?} is not scalar (Schur violation)"
            ))
        })?;
        if !lambda.is_zero() {
            phi_terms.insert(path, lambda);
        }
    }
    Ok(QuiverPotential { quiver, arrows, tau, theta_maps: thetas, phi_terms, ell, m })
}

/// The general route: hdet → McKay quiver → τ → θ → arrow maps → Φ.
pub fn build_quiver_potential(
    pres: &SuperpotentialPresentation,
    phi_overrides: &BTreeMap<String, Matrix>,
    xi_overrides: &BTreeMap<String, Matrix>,
) -> Result<(Character, QuiverPotential), QuiverPotError> {
    let h = pres.hopf;
    let chi =
        crate::potential::hdet(pres).map_err(|e| QuiverPotError::Hypothesis(e.to_string()))?;
    let quiver = mckay_quiver(h, &pres.v);
    let tau = tau_permutation(h, &chi)?;
    let thetas = theta_maps(h, &chi, &tau)?;
    let arrows = choose_arrow_maps(h, &pres.v, &quiver, phi_overrides, xi_overrides)?;
    let qp = build_phi_from_parts(h, &pres.v, quiver, arrows, tau, thetas, &pres.w, pres.m)?;
    Ok((chi, qp))
}

impl QuiverPotential {
    /// Φ rendered with terms sorted by (tail vertex, arrow ids).
    pub fn render_phi(&self) -> String {
        use num_traits::Signed;
        let mut terms: Vec<(&Vec<usize>, &Scalar)> = self.phi_terms.iter().collect();
        terms.sort_by_key(|(p, _)| (self.quiver.arrows[p[0]].tail, (*p).clone()));
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in terms.iter().enumerate() {
            let word: String = p.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect();
            let neg = c.as_rational().map_or(false, |r| r.is_negative());
            let mag = if neg { c.neg() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                if mag.as_rational().is_some() {
                    let _ = write!(s, "{mag}");
                } else {
                    let _ = write!(s, "({mag})");
                }
            }
            s.push_str(&word);
        }
        s
    }
}

// ---------------------------------------------------------------------------
// relations of Λ
// ---------------------------------------------------------------------------

/// Formal left differentiation of Φ by all length-(ℓ−m) path prefixes,
/// canonicalized by rref per (tail, head) block.
pub fn derive_quiver_relations(qp: &QuiverPotential) -> QuiverAlgebra {
    let s = qp.ell - qp.m;
    let ctx = qp
        .phi_terms
        .values()
        .next()
        .map(|c| c.ctx().clone())
        .unwrap_or_else(|| crate::scalar::CycContext::new(1));
    let mut raw: Vec<PathPoly> = Vec::new();
    if s == 0 {
        let mut blocks: BTreeMap<(usize, usize), Vec<(Vec<usize>, Scalar)>> = BTreeMap::new();
        for (p, c) in &qp.phi_terms {
            let tail = qp.quiver.arrows[p[0]].tail;
            let head = qp.quiver.arrows[*p.last().unwrap()].head;
            blocks.entry((tail, head)).or_default().push((p.clone(), c.clone()));
        }
        for ((tail, head), terms) in blocks {
            raw.push(PathPoly { tail, head, terms });
        }
    } else {
        let mut by_prefix: BTreeMap<Vec<usize>, Vec<(Vec<usize>, Scalar)>> = BTreeMap::new();
        for (p, c) in &qp.phi_terms {
            let prefix = p[..s].to_vec();
            by_prefix.entry(prefix).or_default().push((p[s..].to_vec(), c.clone()));
        }
        for (prefix, terms) in by_prefix {
            let tail = qp.quiver.arrows[*prefix.last().unwrap()].head;
            let head = qp.quiver.arrows[*terms[0].0.last().unwrap()].head;
            debug_assert!(terms
                .iter()
                .all(|(p, _)| qp.quiver.arrows[*p.last().unwrap()].head == head));
            raw.push(PathPoly { tail, head, terms });
        }
    }
    let relations = canonicalize_relations(&ctx, raw);
    QuiverAlgebra { quiver: clone_quiver(&qp.quiver), relations }
}

pub fn clone_quiver(q: &Quiver) -> Quiver {
    Quiver { vertex_labels: q.vertex_labels.clone(), arrows: q.arrows.clone() }
}

/// rref canonical form per (tail, head) block, monomials in lex path order.
pub fn canonicalize_relations(ctx: &Ctx, rels: Vec<PathPoly>) -> Vec<PathPoly> {
    let mut blocks: BTreeMap<(usize, usize), Vec<PathPoly>> = BTreeMap::new();
    for r in rels {
        blocks.entry((r.tail, r.head)).or_default().push(r);
    }
    let mut out = Vec::new();
    for ((tail, head), group) in blocks {
        let mut monomials: Vec<Vec<usize>> = group
            .iter()
            .flat_map(|r| r.terms.iter().map(|(p, _)| p.clone()))
            .collect();
        monomials.sort();
        monomials.dedup();
        let index: HashMap<&Vec<usize>, usize> =
            monomials.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let rows: Vec<Vec<Scalar>> = group
            .iter()
            .map(|r| {
                let mut row = vec![Scalar::zero(ctx); monomials.len()];
                for (p, c) in &r.terms {
                    row[index[p]] = row[index[p]].add(c);
                }
                row
            })
            .collect();
        for row in crate::linalg::row_space_basis(ctx, &rows) {
            let terms: Vec<(Vec<usize>, Scalar)> = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (monomials[k].clone(), c.clone()))
                .collect();
            if !terms.is_empty() {
                out.push(PathPoly { tail, head, terms });
            }
        }
    }
    out
}

/// Row-space equality of two relation lists, per (tail, head) block.
pub fn relations_row_space_equal(ctx: &Ctx, a: &[PathPoly], b: &[PathPoly]) -> bool {
    let ca = canonicalize_relations(ctx, a.to_vec());
    let cb = canonicalize_relations(ctx, b.to_vec());
    if ca.len() != cb.len() {
        return false;
    }
    for (ra, rb) in ca.iter().zip(&cb) {
        if ra.tail != rb.tail || ra.head != rb.head || ra.terms.len() != rb.terms.len() {
            return false;
        }
        for ((pa, sa), (pb, sb)) in ra.terms.iter().zip(&rb.terms) {
            if pa != pb || sa != sb {
                return false;
            }
        }
    }
    true
}

/// Exact-presentation comparison under a caller-supplied relabeling:
/// `vertex_map[v]` and `arrow_map[a]` carry the left algebra onto the right
/// one; the relation row spaces must then agree per block. Supports
/// arguments that identify the quiver algebras of two different actions.
pub fn presentations_match_under_relabeling(
    ctx: &Ctx,
    left: &QuiverAlgebra,
    right: &QuiverAlgebra,
    vertex_map: &[usize],
    arrow_map: &[usize],
) -> bool {
    let (ql, qr) = (&left.quiver, &right.quiver);
    if ql.n_vertices() != qr.n_vertices() || ql.arrows.len() != qr.arrows.len() {
        return false;
    }
    // the relabeling must be a quiver isomorphism
    let mut seen_v = vec![false; qr.n_vertices()];
    for &v in vertex_map {
        if v >= seen_v.len() || std::mem::replace(&mut seen_v[v], true) {
            return false;
        }
    }
    let mut seen_a = vec![false; qr.arrows.len()];
    for (a, &img) in arrow_map.iter().enumerate() {
        if img >= seen_a.len() || std::mem::replace(&mut seen_a[img], true) {
            return false;
        }
        let (src, dst) = (&ql.arrows[a], &qr.arrows[img]);
        if vertex_map[src.tail] != dst.tail || vertex_map[src.head] != dst.head {
            return false;
        }
    }
    let mapped: Vec<PathPoly> = left
        .relations
        .iter()
        .map(|r| PathPoly {
            tail: vertex_map[r.tail],
            head: vertex_map[r.head],
            terms: r
                .terms
                .iter()
                .map(|(p, c)| (p.iter().map(|&a| arrow_map[a]).collect(), c.clone()))
                .collect(),
        })
        .collect();
    relations_row_space_equal(ctx, &mapped, &right.relations)
}

// ---------------------------------------------------------------------------
// dual-group fast path
// ---------------------------------------------------------------------------

pub struct DualGroupOutput {
    pub quiver: Quiver,
    pub potential: QuiverPotential,
    pub algebra: QuiverAlgebra,
    /// deg_G(w): the group element indexing the hdet character
    pub hdet_element: usize,
}

/// The recipe for H = (𝕜G)*: vertices are group elements, each variable v_i
/// of G-degree g_i contributes arrows g_i·h → h adorned v_i, and Φ collects
/// each monomial of w along the unique adorned path into each vertex.
pub fn dual_group_fast_path(
    ctx: &Ctx,
    group: &FiniteGroup,
    degrees: &[usize],
    var_names: &[String],
    w: &TensorElement,
    m: usize,
) -> Result<DualGroupOutput, QuiverPotError> {
    let n = group.order();
    let r = degrees.len();
    let deg_w = hdet_dual_shortcut(group, degrees, w)
        .map_err(|e| QuiverPotError::Hypothesis(e.to_string()))?;
    // arrows ordered the way the general route enumerates blocks
    let mut arrow_specs: Vec<(usize, usize, usize)> = Vec::new(); // (tail, head, var)
    for var in 0..r {
        for head in 0..n {
            arrow_specs.push((group.mul(degrees[var], head), head, var));
        }
    }
    arrow_specs.sort();
    let mut arrows = Vec::new();
    let mut local_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut lookup: HashMap<(usize, usize), usize> = HashMap::new(); // (var, head) -> arrow id
    for (tail, head, var) in arrow_specs {
        let local = {
            let c = local_count.entry((tail, head)).or_insert(0);
            let l = *c;
            *c += 1;
            l
        };
        lookup.insert((var, head), arrows.len());
        arrows.push(Arrow {
            tail,
            head,
            local,
            name: String::new(),
            adorn: Some(var_names[var].clone()),
        });
    }
    let mut quiver = Quiver { vertex_labels: group.names().to_vec(), arrows };
    quiver.assign_names();

    let one = Scalar::one(ctx);
    let arrow_data: Vec<ArrowData> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(id, a)| {
            let var = var_names
                .iter()
                .position(|v| Some(v) == a.adorn.as_ref())
                .unwrap();
            let mut phi = Matrix::zeros(ctx, r, 1);
            phi[(var, 0)] = one.clone();
            let mut xi = Matrix::zeros(ctx, r, 1);
            xi[(var, 0)] = one.clone();
            ArrowData { arrow: id, phi, xi, user_supplied: false }
        })
        .collect();

    let tau: Vec<usize> = (0..n).map(|x| group.mul(deg_w, x)).collect();
    let thetas: Vec<Matrix> = (0..n).map(|_| Matrix::identity(ctx, 1)).collect();

    let mut phi_terms: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    let ell = w.degree();
    for (word, c) in w.terms() {
        for h in 0..n {
            let mut path = vec![0usize; ell];
            let mut cur_head = h;
            for t in (0..ell).rev() {
                let var = word[t] as usize;
                let aid = lookup[&(var, cur_head)];
                path[t] = aid;
                cur_head = quiver.arrows[aid].tail;
            }
            debug_assert_eq!(cur_head, group.mul(deg_w, h));
            let entry = phi_terms.entry(path).or_insert_with(|| Scalar::zero(ctx));
            *entry = entry.add(c);
        }
    }
    phi_terms.retain(|_, c| !c.is_zero());

    let potential = QuiverPotential {
        quiver: clone_quiver(&quiver),
        arrows: arrow_data,
        tau,
        theta_maps: thetas,
        phi_terms,
        ell,
        m,
    };
    let algebra = derive_quiver_relations(&potential);
    Ok(DualGroupOutput { quiver, potential, algebra, hdet_element: deg_w })
}

// ---------------------------------------------------------------------------
// abelian matrix groups: simultaneous diagonalization and Ĝ-grading
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct AbelianReduction {
    /// the character group Ĝ (vertices of the quiver), trivial character first
    pub char_group: FiniteGroup,
    /// Ĝ-degree of each variable
    pub degrees: Vec<usize>,
    /// transformed superpotential (monic-rescaled when a base change happened)
    pub w: TensorElement,
    /// eigenbasis columns; the identity when the input was already diagonal
    pub base_change: Matrix,
    pub diagonal_gens: Vec<Matrix>,
    /// exponent of the group: every eigenvalue is a root of unity of this order
    pub exponent: u64,
}

fn matrix_key(m: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let _ = write!(s, "{};", m[(i, j)]);
        }
    }
    s
}

/// Diagonalizes a finite abelian matrix group over the scalar context and
/// grades the variables by the character group.
pub fn abelian_group_reduction(
    ctx: &Ctx,
    gens: &[Matrix],
    w: &TensorElement,
) -> Result<AbelianReduction, QuiverPotError> {
    let r = w.nvars();
    for g in gens {
        if g.rows() != r || g.cols() != r {
            return Err(QuiverPotError::Hypothesis(format!(
                "generator is {}x{}, expected {r}x{r}",
                g.rows(),
                g.cols()
            )));
        }
        if g.inverse().is_none() {
            return Err(QuiverPotError::Hypothesis("generator is singular".into()));
        }
    }
    // closure
    let mut elems: Vec<Matrix> = vec![Matrix::identity(ctx, r)];
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(matrix_key(&elems[0]), 0);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        for g in gens {
            let next = cur.matmul(g);
            let key = matrix_key(&next);
            if !index.contains_key(&key) {
                if elems.len() > 4096 {
                    return Err(QuiverPotError::Hypothesis(
                        "matrix group closure exceeded 4096 elements".into(),
                    ));
                }
                index.insert(key, elems.len());
                elems.push(next);
            }
        }
        head += 1;
    }
    let n = elems.len();
    for a in gens {
        for b in gens {
            if a.matmul(b) != b.matmul(a) {
                return Err(QuiverPotError::Hypothesis("matrix group is not abelian".into()));
            }
        }
    }
    let exponent: u64 = {
        let mut e: u64 = 1;
        for g in &elems {
            let mut p = g.clone();
            let mut ord: u64 = 1;
            while !p.is_identity() {
                p = p.matmul(g);
                ord += 1;
                if ord > n as u64 {
                    return Err(QuiverPotError::Hypothesis(
                        "element order exceeds group order".into(),
                    ));
                }
            }
            e = num_integer::lcm(e, ord);
        }
        e
    };

    let already_diagonal = elems
        .iter()
        .all(|m| (0..r).all(|i| (0..r).all(|j| i == j || m[(i, j)].is_zero())));

    let (p, pinv) = if already_diagonal {
        (Matrix::identity(ctx, r), Matrix::identity(ctx, r))
    } else {
        if ctx.order() % exponent != 0 {
            return Err(QuiverPotError::Hypothesis(format!(
                "eigenvalues need roots of unity of order {exponent}; scalar order is {} — use an order divisible by {}",
                ctx.order(),
                num_integer::lcm(ctx.order(), exponent)
            )));
        }
        // iterative eigenspace refinement over the generators
        let mut spaces: Vec<Vec<Vec<Scalar>>> = vec![(0..r)
            .map(|i| {
                let mut v = vec![Scalar::zero(ctx); r];
                v[i] = Scalar::one(ctx);
                v
            })
            .collect()];
        for g in gens {
            let mut next_spaces = Vec::new();
            for basis in &spaces {
                let k = basis.len();
                let bmat = Matrix::from_fn(ctx, r, k, |i, c| basis[c][i].clone());
                // restriction C of g to the (invariant) subspace: B·C = g·B
                let gb = g.matmul(&bmat);
                let mut c = Matrix::zeros(ctx, k, k);
                for col in 0..k {
                    let target: Vec<Scalar> = (0..r).map(|i| gb[(i, col)].clone()).collect();
                    let x = bmat.solve(&target).ok_or_else(|| {
                        QuiverPotError::Inconsistent("subspace not invariant".into())
                    })?;
                    for row in 0..k {
                        c[(row, col)] = x[row].clone();
                    }
                }
                let mut found = 0usize;
                for t in 0..ctx.order() {
                    if found == k {
                        break;
                    }
                    let lambda = Scalar::root_of_unity(ctx, t as i64);
                    let mut shifted = c.clone();
                    for dd in 0..k {
                        shifted[(dd, dd)] = shifted[(dd, dd)].sub(&lambda);
                    }
                    let ns = shifted.nullspace();
                    if ns.is_empty() {
                        continue;
                    }
                    found += ns.len();
                    let sub: Vec<Vec<Scalar>> = ns
                        .iter()
                        .map(|y| {
                            (0..r)
                                .map(|i| {
                                    let mut acc = Scalar::zero(ctx);
                                    for (col, yc) in y.iter().enumerate() {
                                        if !yc.is_zero() {
                                            acc = acc.add(&bmat[(i, col)].mul(yc));
                                        }
                                    }
                                    acc
                                })
                                .collect()
                        })
                        .collect();
                    next_spaces.push(sub);
                }
                if found != k {
                    return Err(QuiverPotError::Hypothesis(format!(
                        "eigenvalues lie outside ℚ(ζ_{}); use an order divisible by {}",
                        ctx.order(),
                        num_integer::lcm(ctx.order(), exponent)
                    )));
                }
            }
            spaces = next_spaces;
        }
        let columns: Vec<Vec<Scalar>> = spaces.into_iter().flatten().collect();
        let p = Matrix::from_fn(ctx, r, r, |i, c| columns[c][i].clone());
        let pinv = p
            .inverse()
            .ok_or_else(|| QuiverPotError::Inconsistent("eigenbasis is singular".into()))?;
        (p, pinv)
    };

    let diagonal_gens: Vec<Matrix> = gens.iter().map(|g| pinv.matmul(g).matmul(&p)).collect();
    for d in &diagonal_gens {
        for i in 0..r {
            for j in 0..r {
                if i != j && !d[(i, j)].is_zero() {
                    return Err(QuiverPotError::Inconsistent(
                        "conjugated generator is not diagonal".into(),
                    ));
                }
            }
        }
    }
    let mut new_w = w.apply_all_factors(&pinv);
    if !p.is_identity() {
        new_w = new_w.monic();
    }

    // characters as value tuples on the element list; Ĝ = closure of the
    // variable characters (they separate the diagonalized elements)
    let diag_elems: Vec<Matrix> = elems.iter().map(|g| pinv.matmul(g).matmul(&p)).collect();
    let var_chars: Vec<Vec<Scalar>> = (0..r)
        .map(|j| diag_elems.iter().map(|d| d[(j, j)].clone()).collect())
        .collect();
    let char_key = |c: &Vec<Scalar>| {
        let mut s = String::new();
        for v in c {
            let _ = write!(s, "{v};");
        }
        s
    };
    let identity_char: Vec<Scalar> = vec![Scalar::one(ctx); n];
    let mut chars: Vec<Vec<Scalar>> = vec![identity_char.clone()];
    let mut cindex: HashMap<String, usize> = HashMap::new();
    cindex.insert(char_key(&identity_char), 0);
    let mut head = 0;
    while head < chars.len() {
        let cur = chars[head].clone();
        for gc in &var_chars {
            let next: Vec<Scalar> = cur.iter().zip(gc).map(|(a, b)| a.mul(b)).collect();
            let key = char_key(&next);
            if !cindex.contains_key(&key) {
                cindex.insert(key, chars.len());
                chars.push(next);
            }
        }
        head += 1;
    }
    if chars.len() != n {
        return Err(QuiverPotError::Inconsistent(format!(
            "character closure has {} elements, group has {n}",
            chars.len()
        )));
    }
    let mut mult = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<Scalar> =
                chars[a].iter().zip(&chars[b]).map(|(x, y)| x.mul(y)).collect();
            mult[a][b] = cindex[&char_key(&prod)];
        }
    }
    let names: Vec<String> = (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { format!("chi{i}") })
        .collect();
    let char_group = FiniteGroup::from_table(names, mult)
        .map_err(|e| QuiverPotError::Inconsistent(e.to_string()))?;
    let degrees: Vec<usize> = var_chars.iter().map(|c| cindex[&char_key(c)]).collect();

    Ok(AbelianReduction { char_group, degrees, w: new_w, base_change: p, diagonal_gens, exponent })
}

// ---------------------------------------------------------------------------
// preprojective recognition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreprojectiveVerdict {
    /// A rescaling of arrows brings the relations to Σ αᾱ − ᾱα form;
    /// `graph` names the underlying graph of the recognized orientation.
    Preprojective { graph: String, orientation: Vec<usize> },
    /// Mesh relations, but no preprojective normal form applies
    /// (loops, parallel arrows, nontrivial τ, or cycle inconsistency).
    MeshOnly { reason: String },
    NotMesh { reason: String },
}

impl PreprojectiveVerdict {
    pub fn describe(&self) -> String {
        match self {
            PreprojectiveVerdict::Preprojective { graph, .. } => format!("preprojective({graph})"),
            PreprojectiveVerdict::MeshOnly { reason } => format!("mesh-only ({reason})"),
            PreprojectiveVerdict::NotMesh { reason } => format!("not-mesh ({reason})"),
        }
    }
}

/// Classifies a simple connected graph by Dynkin/Euclidean shape.
pub fn classify_graph(n: usize, edges: &[(usize, usize)]) -> String {
    let mut deg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return "disconnected".into();
    }
    if edges.len() == n && deg.iter().all(|&d| d == 2) {
        return format!("A~{}", n - 1);
    }
    if edges.len() + 1 != n {
        return "graph".into();
    }
    let branch_vertices: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match branch_vertices.len() {
        0 => format!("A{n}"),
        1 => {
            let c = branch_vertices[0];
            if deg[c] == 4 && n == 5 {
                return "D~4".into();
            }
            if deg[c] != 3 {
                return "tree".into();
            }
            let mut lens: Vec<usize> = adj[c]
                .iter()
                .map(|&start| {
                    let mut len = 1;
                    let mut prev = c;
                    let mut cur = start;
                    while deg[cur] == 2 {
                        let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            lens.sort();
            match lens.as_slice() {
                [1, 1, k] => format!("D{}", k + 3),
                [1, 2, 2] => "E6".into(),
                [1, 2, 3] => "E7".into(),
                [1, 2, 4] => "E8".into(),
                [2, 2, 2] => "E~6".into(),
                [1, 3, 3] => "E~7".into(),
                [1, 2, 5] => "E~8".into(),
                _ => "tree".into(),
            }
        }
        2 => {
            let ends_ok = branch_vertices
                .iter()
                .all(|&v| deg[v] == 3 && adj[v].iter().filter(|&&u| deg[u] == 1).count() == 2);
            if ends_ok {
                format!("D~{}", n - 1)
            } else {
                "tree".into()
            }
        }
        _ => "tree".into(),
    }
}

/// Decides whether Λ (with m = 2 mesh-shaped relations) can be rescaled to
/// a preprojective algebra: trees always succeed, cycles need the product
/// of −A_β/B_β around each cycle to be 1.
pub fn recognize_preprojective(qa: &QuiverAlgebra, tau: &[usize]) -> PreprojectiveVerdict {
    let q = &qa.quiver;
    let ctx = match qa.relations.first().and_then(|r| r.terms.first()) {
        Some((_, c)) => c.ctx().clone(),
        None => return PreprojectiveVerdict::NotMesh { reason: "no relations".into() },
    };
    if qa.relations.iter().any(|r| r.degree() != 2) {
        return PreprojectiveVerdict::NotMesh { reason: "relations are not degree 2".into() };
    }
    if tau.iter().enumerate().any(|(i, &t)| i != t) {
        return PreprojectiveVerdict::MeshOnly {
            reason: "twist permutation is not the identity".into(),
        };
    }
    if q.arrows.iter().any(|a| a.tail == a.head) {
        return PreprojectiveVerdict::MeshOnly { reason: "quiver has loops".into() };
    }
    for i in 0..q.n_vertices() {
        for j in 0..q.n_vertices() {
            let f = q.multiplicity(i, j);
            let b = q.multiplicity(j, i);
            if f != b {
                return PreprojectiveVerdict::NotMesh { reason: "quiver is not a double".into() };
            }
            if i < j && f > 1 {
                return PreprojectiveVerdict::MeshOnly {
                    reason: "parallel arrows prevent canonical pairing".into(),
                };
            }
        }
    }
    let reverse = |aid: usize| -> usize {
        let a = &q.arrows[aid];
        q.arrows
            .iter()
            .position(|b| b.tail == a.head && b.head == a.tail)
            .unwrap()
    };
    let mut per_vertex: Vec<Option<&PathPoly>> = vec![None; q.n_vertices()];
    for r in &qa.relations {
        if r.tail != r.head {
            return PreprojectiveVerdict::MeshOnly {
                reason: "relation with distinct endpoints".into(),
            };
        }
        if per_vertex[r.tail].is_some() {
            return PreprojectiveVerdict::NotMesh {
                reason: format!("several relations at vertex {}", r.tail),
            };
        }
        per_vertex[r.tail] = Some(r);
    }
    // exact mesh support
    for (v, rel) in per_vertex.iter().enumerate() {
        if let Some(rel) = rel {
            for (pth, _) in &rel.terms {
                let ok = pth.len() == 2 && pth[1] == reverse(pth[0]) && q.arrows[pth[0]].tail == v;
                if !ok {
                    return PreprojectiveVerdict::NotMesh {
                        reason: format!("non-mesh term in the relation at vertex {v}"),
                    };
                }
            }
        }
    }
    let coeff_of = |aid: usize| -> Option<(Scalar, Scalar)> {
        // (A_β, B_β): coefficients of ββ̄ at t(β) and β̄β at h(β)
        let b = reverse(aid);
        let at_tail = per_vertex[q.arrows[aid].tail]?;
        let at_head = per_vertex[q.arrows[aid].head]?;
        let fwd = at_tail
            .terms
            .iter()
            .find(|(pp, _)| pp.as_slice() == [aid, b])
            .map(|(_, c)| c.clone())?;
        let bwd = at_head
            .terms
            .iter()
            .find(|(pp, _)| pp.as_slice() == [b, aid])
            .map(|(_, c)| c.clone())?;
        Some((fwd, bwd))
    };
    let orientation: Vec<usize> = (0..q.arrows.len())
        .filter(|&a| q.arrows[a].tail < q.arrows[a].head)
        .collect();
    let mut ratios: HashMap<usize, Scalar> = HashMap::new(); // β ↦ −A_β/B_β
    for &beta in &orientation {
        match coeff_of(beta) {
            Some((a, b)) if !a.is_zero() && !b.is_zero() => {
                ratios.insert(beta, a.div(&b).neg());
            }
            _ => {
                return PreprojectiveVerdict::NotMesh {
                    reason: "a mesh term is missing from the vertex relations".into(),
                }
            }
        }
    }
    // vertex scalars over a spanning forest; non-tree edges give cycle checks
    let nv = q.n_vertices();
    let mut d: Vec<Option<Scalar>> = vec![None; nv];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for &beta in &orientation {
        let (t, hd) = (q.arrows[beta].tail, q.arrows[beta].head);
        adj[t].push((hd, beta));
        adj[hd].push((t, beta));
    }
    for root in 0..nv {
        if d[root].is_some() || adj[root].is_empty() {
            continue;
        }
        d[root] = Some(Scalar::one(&ctx));
        let mut stack = vec![root];
        while let Some(vtx) = stack.pop() {
            let dv = d[vtx].clone().unwrap();
            for &(other, beta) in &adj[vtx] {
                let ratio = &ratios[&beta];
                // d_{h(β)} = d_{t(β)} · ratio
                let expected_other = if q.arrows[beta].tail == vtx {
                    dv.mul(ratio)
                } else {
                    dv.div(ratio)
                };
                match &d[other] {
                    None => {
                        d[other] = Some(expected_other);
                        stack.push(other);
                    }
                    Some(existing) => {
                        if *existing != expected_other {
                            return PreprojectiveVerdict::MeshOnly {
                                reason: "rescaling inconsistent around a cycle".into(),
                            };
                        }
                    }
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = orientation
        .iter()
        .map(|&b| (q.arrows[b].tail, q.arrows[b].head))
        .collect();
    let graph = classify_graph(nv, &edges);
    PreprojectiveVerdict::Preprojective { graph, orientation }
}

/// Graded dimensions of the MCM modules e₀Λe_i for d ≤ d_max:
/// entry `[i][d]` is dim of the degree-d component.
pub fn mcm_dimension_vectors(qa: &QuiverAlgebra, d_max: usize) -> Vec<Vec<usize>> {
    let profile = crate::growth::graded_dims(qa, d_max, true);
    let n = qa.quiver.n_vertices();
    let table = profile.per_pair.as_ref().expect("per-pair table requested");
    (0..n)
        .map(|i| (0..table.len()).map(|dd| table[dd][0][i]).collect())
        .collect()
}
