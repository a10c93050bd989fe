//! H-module calculus: tensor and dual representations, intertwiner spaces,
//! decomposition into irreducibles, McKay quivers, inner-faithfulness.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("matrices missing for basis element {0} and no generator decomposition available")]
    MissingMatrix(String),
    #[error("action is not an algebra morphism: {0}")]
    NotMorphism(String),
    #[error("decomposition dimension count {got} does not match dim V = {want} (bad certificate)")]
    DimensionCount { got: usize, want: usize },
}

/// A finite-dimensional left H-module given by one matrix per basis element.
#[derive(Clone)]
pub struct Rep {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl Rep {
    pub fn from_irrep(h: &HopfAlgebra, k: usize) -> Rep {
        let ir = &h.irreps()[k];
        Rep { dim: ir.dim, action: ir.action.clone() }
    }

    /// Builds a representation from matrices on the generator basis elements,
    /// completing along the generator words of the built-in algebras.
    pub fn from_generator_matrices(
        h: &HopfAlgebra,
        gens: &BTreeMap<usize, Matrix>,
        dim: usize,
    ) -> Result<Rep, RepError> {
        if let Some(m) = gens.values().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(RepError::NotMorphism(format!(
                "generator matrix is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        let words = h
            .basis_words()
            .ok_or_else(|| RepError::MissingMatrix("<no word table>".into()))?;
        let mut action = Vec::with_capacity(h.dim());
        for (i, word) in words.iter().enumerate() {
            let mut m = Matrix::identity(h.ctx(), dim);
            for g in word {
                let gm = gens
                    .get(g)
                    .ok_or_else(|| RepError::MissingMatrix(h.basis_name(*g).to_string()))?;
                m = m.matmul(gm);
            }
            let _ = i;
            action.push(m);
        }
        let rep = Rep { dim, action };
        rep.check_morphism(h)?;
        Ok(rep)
    }

    /// Verifies ρ(b_i)ρ(b_j) = Σ m_ij^k ρ(b_k) and ρ(1) = I.
    pub fn check_morphism(&self, h: &HopfAlgebra) -> Result<(), RepError> {
        let ctx = h.ctx();
        let mut one = Matrix::zeros(ctx, self.dim, self.dim);
        for (b, c) in h.unit().iter().enumerate() {
            one = one.add(&self.action[b].scale(c));
        }
        if !one.is_identity() {
            return Err(RepError::NotMorphism("ρ(1) is not the identity".into()));
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let lhs = self.action[i].matmul(&self.action[j]);
                let prod = h.mul_el(&h.basis_el(i), &h.basis_el(j));
                let mut rhs = Matrix::zeros(ctx, self.dim, self.dim);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&self.action[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(RepError::NotMorphism(format!(
                        "ρ({})ρ({}) ≠ ρ({}·{})",
                        h.basis_name(i),
                        h.basis_name(j),
                        h.basis_name(i),
                        h.basis_name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action matrix of an arbitrary element (coordinate vector).
    pub fn act_el(&self, h: &HopfAlgebra, el: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(h.ctx(), self.dim, self.dim);
        for (b, c) in el.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[b].scale(c));
            }
        }
        m
    }
}

/// (ρ_V ⊗ ρ_W)(b) = Σ_{(j,k,c) ∈ Δ(b)} c · ρ_V(b_j) ⊗ ρ_W(b_k).
pub fn tensor_rep(h: &HopfAlgebra, v: &Rep, w: &Rep) -> Rep {
    let ctx = h.ctx();
    let dim = v.dim * w.dim;
    let action = (0..h.dim())
        .map(|i| {
            let mut m = Matrix::zeros(ctx, dim, dim);
            for (j, k, c) in h.coproduct_of_basis(i) {
                m = m.add(&v.action[*j].kron(&w.action[*k]).scale(c));
            }
            m
        })
        .collect();
    Rep { dim, action }
}

/// Dual module: ρ*(b) = ρ(S(b))ᵀ, i.e. (h·f)(v) = f(S(h)·v).
pub fn dual_rep(h: &HopfAlgebra, v: &Rep) -> Rep {
    let action = (0..h.dim())
        .map(|i| {
            let sb = h.antipode_of(&h.basis_el(i));
            v.act_el(h, &sb).transpose()
        })
        .collect();
    Rep { dim: v.dim, action }
}

/// Canonical basis of Hom_H(V, W): solutions M of M·ρ_V(b) = ρ_W(b)·M over
/// the given constraint set of basis elements, canonicalized by rref.
pub fn intertwiners_constrained(
    h: &HopfAlgebra,
    v: &Rep,
    w: &Rep,
    constrain: &[usize],
) -> Vec<Matrix> {
    let ctx = h.ctx();
    let unknowns = w.dim * v.dim; // M is w.dim × v.dim, flattened row-major
    let mut rows = Vec::new();
    for &b in constrain {
        let rv = &v.action[b];
        let rw = &w.action[b];
        for a in 0..w.dim {
            for c in 0..v.dim {
                // Σ_x ρ_W[a,x] M[x,c] − Σ_x M[a,x] ρ_V[x,c] = 0
                let mut row = vec![Scalar::zero(ctx); unknowns];
                for x in 0..w.dim {
                    row[x * v.dim + c] = row[x * v.dim + c].add(&rw[(a, x)]);
                }
                for x in 0..v.dim {
                    row[a * v.dim + x] = row[a * v.dim + x].sub(&rv[(x, c)]);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Scalar::zero(ctx); unknowns]);
    }
    let mat = Matrix::from_rows(ctx, rows);
    mat.nullspace()
        .into_iter()
        .map(|vflat| Matrix::from_fn(ctx, w.dim, v.dim, |i, j| vflat[i * v.dim + j].clone()))
        .collect()
}

/// Hom_H(V, W), constrained over the full basis of H.
pub fn intertwiners(h: &HopfAlgebra, v: &Rep, w: &Rep) -> Vec<Matrix> {
    let all: Vec<usize> = (0..h.dim()).collect();
    intertwiners_constrained(h, v, w, &all)
}

/// Multiplicity vector: m_i = dim Hom_H(V_i, V), verified against dim V.
pub fn decompose(h: &HopfAlgebra, v: &Rep) -> Result<Vec<usize>, RepError> {
    let mults: Vec<usize> = (0..h.n_irreps())
        .map(|i| intertwiners(h, &Rep::from_irrep(h, i), v).len())
        .collect();
    let got: usize = mults
        .iter()
        .zip(h.irreps())
        .map(|(m, ir)| m * ir.dim)
        .sum();
    if got != v.dim {
        return Err(RepError::DimensionCount { got, want: v.dim });
    }
    Ok(mults)
}

// ---------------------------------------------------------------------------
// quivers
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    /// index among the arrows sharing (tail, head)
    pub local: usize,
    pub name: String,
    /// basis-vector label for dual-group quivers
    pub adorn: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertex_labels: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn n_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == i && a.head == j).count()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.tail == v)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Assigns the letter scheme: unordered vertex pairs in lex order get
    /// consecutive letters; lowercase for min→max, uppercase for max→min,
    /// numeric suffixes when a direction has several arrows; loops consume
    /// one letter each.
    pub fn assign_names(&mut self) {
        fn letter(idx: usize) -> String {
            let base = (b'a' + (idx % 26) as u8) as char;
            if idx < 26 {
                base.to_string()
            } else {
                format!("{base}{}", idx / 26)
            }
        }
        let mut pairs: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|a| (a.tail.min(a.head), a.tail.max(a.head)))
            .collect();
        pairs.sort();
        pairs.dedup();
        let mut next = 0usize;
        let mut assigned: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for p in pairs {
            if p.0 == p.1 {
                // loops: one letter per arrow
                let count = self
                    .arrows
                    .iter()
                    .filter(|a| a.tail == p.0 && a.head == p.0)
                    .count();
                assigned.insert(p, next);
                next += count;
            } else {
                assigned.insert(p, next);
                next += 1;
            }
        }
        for k in 0..self.arrows.len() {
            let a = self.arrows[k].clone();
            let key = (a.tail.min(a.head), a.tail.max(a.head));
            let base = assigned[&key];
            let name = if a.tail == a.head {
                letter(base + a.local)
            } else {
                let mult = self.multiplicity(a.tail, a.head);
                let mut s = letter(base);
                if a.tail > a.head {
                    s = s.to_uppercase();
                }
                if mult > 1 {
                    let _ = write!(s, "{}", a.local);
                }
                s
            };
            self.arrows[k].name = name;
        }
    }

    /// Deterministic DOT rendering; arrow annotations carry the adornment or
    /// intertwiner provenance when given.
    pub fn to_dot(&self, annotations: Option<&[String]>) -> String {
        let mut s = String::from("digraph mckay {\n");
        for (i, l) in self.vertex_labels.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{l}\"];");
        }
        for (k, a) in self.arrows.iter().enumerate() {
            let mut label = a.name.clone();
            if let Some(ad) = &a.adorn {
                let _ = write!(label, " ({ad})");
            }
            if let Some(ann) = annotations {
                let _ = write!(label, " [{}]", ann[k]);
            }
            let _ = writeln!(s, "  v{} -> v{} [label=\"{label}\"];", a.tail, a.head);
        }
        s.push_str("}\n");
        s
    }
}

/// The left McKay quiver of V: m_ij arrows i → j with
/// m_ij = dim Hom_H(V_i, V ⊗ V_j). Vertex 0 is the trivial irrep.
pub fn mckay_quiver(h: &HopfAlgebra, v: &Rep) -> Quiver {
    let n = h.n_irreps();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let target = tensor_rep(h, v, &Rep::from_irrep(h, j));
            let m = intertwiners(h, &Rep::from_irrep(h, i), &target).len();
            for local in 0..m {
                arrows.push(Arrow {
                    tail: i,
                    head: j,
                    local,
                    name: String::new(),
                    adorn: None,
                });
            }
        }
    }
    let mut q = Quiver {
        vertex_labels: (0..n).map(|i| format!("V{i}")).collect(),
        arrows,
    };
    q.assign_names();
    q
}

/// Strong connectivity of the McKay quiver (reachability through vertex 0
/// in both directions suffices since paths concatenate).
pub fn is_strongly_connected(q: &Quiver) -> bool {
    let n = q.n_vertices();
    if n == 0 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for a in &q.arrows {
                let (from, to) = if forward { (a.tail, a.head) } else { (a.head, a.tail) };
                if from == v && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    reach(true) && reach(false)
}

pub fn is_inner_faithful(h: &HopfAlgebra, v: &Rep) -> bool {
    is_strongly_connected(&mckay_quiver(h, v))
}
