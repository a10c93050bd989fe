//! Brute-force reference computations used by the test suites.
//!
//! These work directly in the tensor algebra: the degree-d component of
//! A = T(V)/⟨R⟩ is V^⊗d modulo Σ V^⊗a·R·V^⊗b, computed densely, and graded
//! dimensions of the quiver algebra are predicted as dim Hom_H(V_i, A_d⊗V_j).
//! Nothing here touches the path-algebra machinery it is used to check.

use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::potential::{tensor_power_action, TensorElement};
use crate::rep::{intertwiners, tensor_rep, Rep};
use crate::scalar::Scalar;

/// A_d = V^⊗d / Σ_{a+m+b=d} V^⊗a ⊗ R ⊗ V^⊗b as an H-module.
pub fn algebra_component_rep(
    h: &HopfAlgebra,
    v: &Rep,
    relations: &[TensorElement],
    d: usize,
) -> Rep {
    let ctx = h.ctx();
    let r = v.dim;
    if d == 0 {
        return Rep {
            dim: 1,
            action: (0..h.dim())
                .map(|b| {
                    let mut m = Matrix::zeros(ctx, 1, 1);
                    m[(0, 0)] = h.counit()[b].clone();
                    m
                })
                .collect(),
        };
    }
    let ambient = r.pow(d as u32);
    // span of the shifted relations
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for rel in relations {
        let m = rel.degree();
        if m > d {
            continue;
        }
        for a in 0..=(d - m) {
            let b = d - m - a;
            for left in 0..r.pow(a as u32) {
                for right in 0..r.pow(b as u32) {
                    let mut row = vec![Scalar::zero(ctx); ambient];
                    for (word, c) in rel.terms() {
                        let mut idx = left;
                        for &x in word {
                            idx = idx * r + x as usize;
                        }
                        idx = idx * r.pow(b as u32) + right;
                        row[idx] = row[idx].add(c);
                    }
                    rows.push(row);
                }
            }
        }
    }
    let (pivots, rref_rows) = if rows.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let m = Matrix::from_rows(ctx, rows);
        let (rr, piv) = m.rref();
        let rows_out: Vec<Vec<Scalar>> = (0..piv.len()).map(|k| rr.row(k).to_vec()).collect();
        (piv, rows_out)
    };
    let is_pivot = {
        let mut v = vec![false; ambient];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
    let qdim = free.len();
    // projection Π: ambient → quotient coordinates
    let mut proj = Matrix::zeros(ctx, qdim, ambient);
    for (fi, &f) in free.iter().enumerate() {
        proj[(fi, f)] = Scalar::one(ctx);
    }
    for (row, &p) in pivots.iter().enumerate() {
        for (fi, &f) in free.iter().enumerate() {
            if !rref_rows[row][f].is_zero() {
                proj[(fi, p)] = rref_rows[row][f].neg();
            }
        }
    }
    let mut inject = Matrix::zeros(ctx, ambient, qdim);
    for (fi, &f) in free.iter().enumerate() {
        inject[(f, fi)] = Scalar::one(ctx);
    }
    let actions = tensor_power_action(h, v, d);
    let action: Vec<Matrix> = (0..h.dim())
        .map(|b| proj.matmul(&actions[d - 1][b]).matmul(&inject))
        .collect();
    Rep { dim: qdim, action }
}

/// dim Hom_H(V_i, A_d ⊗ V_j): the Morita-side prediction for the dimension
/// of e_i Λ_d e_j.
pub fn predicted_pair_dim(
    h: &HopfAlgebra,
    v: &Rep,
    relations: &[TensorElement],
    i: usize,
    j: usize,
    d: usize,
) -> usize {
    let a_d = algebra_component_rep(h, v, relations, d);
    let target = tensor_rep(h, &a_d, &Rep::from_irrep(h, j));
    intertwiners(h, &Rep::from_irrep(h, i), &target).len()
}

/// The full predicted table `[i][j]` for one degree (computing A_d once).
pub fn predicted_pair_table(
    h: &HopfAlgebra,
    v: &Rep,
    relations: &[TensorElement],
    d: usize,
) -> Vec<Vec<usize>> {
    let a_d = algebra_component_rep(h, v, relations, d);
    let n = h.n_irreps();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let target = tensor_rep(h, &a_d, &Rep::from_irrep(h, j));
                    intertwiners(h, &Rep::from_irrep(h, i), &target).len()
                })
                .collect()
        })
        .collect()
}
