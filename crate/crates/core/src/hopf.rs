//! Finite-dimensional semisimple Hopf algebras as validated structure-constant
//! data, together with the built-ins used throughout: group algebras 𝕜G, dual
//! group algebras (𝕜G)*, and the 8-dimensional Kac–Palyutkin algebra.
//!
//! An algebra here is a basis b_0..b_{n-1} with sparse product rows
//! b_i·b_j = Σ_k c·b_k, a coproduct given per basis element as triples
//! (j, k, c) meaning Δ(b_i) = Σ c·b_j⊗b_k, a counit vector, an antipode
//! matrix, and an Artin–Wedderburn certificate: the full list of irreducible
//! matrix representations, trivial one first. The certificate is part of the
//! input contract; `validate` checks every axiom and the certificate rather
//! than computing a Wedderburn decomposition from scratch.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{Ctx, Scalar};

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("not a group: {0}")]
    NotGroup(String),
    #[error("bad Artin-Wedderburn certificate: {0}")]
    BadCertificate(String),
    #[error("scalar context of order {have} lacks a primitive root of order {required}; use an order divisible by {required}")]
    NeedsRoot { required: u64, have: u64 },
    #[error("not a character: {0}")]
    NotCharacter(String),
    #[error("integral space has dimension {0}, expected 1 (input not semisimple or corrupt)")]
    BadIntegral(usize),
    #[error("{0}")]
    Invalid(String),
}

// ---------------------------------------------------------------------------
// finite groups
// ---------------------------------------------------------------------------

/// A finite group as a multiplication table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    names: Vec<String>,
    generators: Vec<usize>,
    /// each element expressed as a product of generators (empty = identity)
    words: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, mult: Vec<Vec<usize>>) -> Result<FiniteGroup, HopfError> {
        let n = names.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(HopfError::NotGroup("multiplication table is not square".into()));
        }
        if mult.iter().flatten().any(|&x| x >= n) {
            return Err(HopfError::NotGroup("table entry out of range".into()));
        }
        // identity must be element 0
        for i in 0..n {
            if mult[0][i] != i || mult[i][0] != i {
                return Err(HopfError::NotGroup(format!(
                    "element 0 ({}) is not an identity",
                    names[0]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(HopfError::NotGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a][b] == 0 && mult[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(HopfError::NotGroup(format!("element {} has no inverse", names[a])))
                }
            }
        }
        // generator set: greedy closure from scratch (all elements by default)
        let generators: Vec<usize> = (1..n).collect();
        let mut g = FiniteGroup { mult, inv, names, generators, words: Vec::new() };
        g.recompute_words();
        Ok(g)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_table(vec!["1".into()], vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let mult = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mut g = FiniteGroup::from_table(names, mult).unwrap();
        if n > 1 {
            g.set_generators(vec![1]);
        }
        g
    }

    /// Dihedral group of order 2n: ⟨r, s | r^n = s² = 1, s r s = r⁻¹⟩.
    /// Element i + n·j is r^i s^j.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let idx = |i: usize, j: usize| (i % n) + n * (j % 2);
        let name = |i: usize, j: usize| -> String {
            let r = match i {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{i}"),
            };
            match (r.is_empty(), j) {
                (true, 0) => "1".to_string(),
                (true, 1) => "s".to_string(),
                (false, 0) => r,
                (false, 1) => format!("{r}*s"),
                _ => unreachable!(),
            }
        };
        let names: Vec<String> = (0..2 * n).map(|k| name(k % n, k / n)).collect();
        let mut mult = vec![vec![0; 2 * n]; 2 * n];
        for i1 in 0..n {
            for j1 in 0..2 {
                for i2 in 0..n {
                    for j2 in 0..2 {
                        // r^{i1} s^{j1} r^{i2} s^{j2} = r^{i1 ± i2} s^{j1+j2}
                        let i = if j1 == 1 { (i1 + n - i2) % n } else { (i1 + i2) % n };
                        mult[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2);
                    }
                }
            }
        }
        let mut g = FiniteGroup::from_table(names, mult).unwrap();
        let mut gens = vec![n]; // s
        if n > 1 {
            gens.insert(0, 1); // r
        }
        g.set_generators(gens);
        g
    }

    pub fn set_generators(&mut self, gens: Vec<usize>) {
        self.generators = gens;
        self.recompute_words();
    }

    fn recompute_words(&mut self) {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head];
            head += 1;
            for &g in &self.generators {
                let next = self.mult[cur][g];
                if words[next].is_none() {
                    let mut w = words[cur].clone().unwrap();
                    w.push(g);
                    words[next] = Some(w);
                    queue.push(next);
                }
            }
        }
        if words.iter().all(|w| w.is_some()) {
            self.words = words.into_iter().map(|w| w.unwrap()).collect();
        } else {
            // not a generating set; fall back to every element being atomic
            self.generators = (1..n).collect();
            self.words = (0..n).map(|i| if i == 0 { vec![] } else { vec![i] }).collect();
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mult[a][b] == self.mult[b][a]))
    }
}

// ---------------------------------------------------------------------------
// Hopf algebra data
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct Irrep {
    pub dim: usize,
    /// one matrix per basis element of H
    pub action: Vec<Matrix>,
    pub is_trivial: bool,
}

/// An algebra homomorphism H → 𝕜 as its value vector on the basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "Character[{}]", vals.join(", "))
    }
}

pub struct HopfAlgebra {
    ctx: Ctx,
    dim: usize,
    basis_names: Vec<String>,
    /// sparse product rows: mult[i][j] = Σ (k, c) with b_i b_j = Σ c b_k
    mult: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Vec<Scalar>,
    /// Δ(b_i) = Σ (j, k, c) of c·b_j⊗b_k
    coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode: Matrix,
    irreps: Vec<Irrep>,
    generators: Vec<usize>,
    /// for built-ins: each basis element as a product of generator basis elements
    basis_words: Option<Vec<Vec<usize>>>,
}

pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl HopfAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        ctx: Ctx,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<(usize, Scalar)>>>,
        unit: Vec<Scalar>,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        antipode: Matrix,
        irreps: Vec<Irrep>,
        generators: Vec<usize>,
    ) -> HopfAlgebra {
        let dim = basis_names.len();
        HopfAlgebra {
            ctx,
            dim,
            basis_names,
            mult,
            unit,
            coproduct,
            counit,
            antipode,
            irreps,
            generators,
            basis_words: None,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_by_name(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn basis_words(&self) -> Option<&Vec<Vec<usize>>> {
        self.basis_words.as_ref()
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn n_irreps(&self) -> usize {
        self.irreps.len()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn counit_character(&self) -> Character {
        Character { values: self.counit.clone() }
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn coproduct_of_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.coproduct[i]
    }

    /// Product of two coordinate vectors.
    pub fn mul_el(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(&self.ctx); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let f = ai.mul(bj);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = out[*k].add(&f.mul(c));
                }
            }
        }
        out
    }

    pub fn basis_el(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(&self.ctx); self.dim];
        v[i] = Scalar::one(&self.ctx);
        v
    }

    pub fn antipode_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(a)
    }

    pub fn counit_of(&self, a: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero(&self.ctx);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&self.counit[i]));
            }
        }
        acc
    }

    /// Δ of a coordinate vector, as a dense dim×dim coefficient matrix
    /// (entry (j,k) multiplies b_j ⊗ b_k).
    pub fn coproduct_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(&self.ctx, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, k, d) in &self.coproduct[i] {
                m[(*j, *k)] = m[(*j, *k)].add(&c.mul(d));
            }
        }
        m
    }

    /// Evaluates a character on a coordinate vector.
    pub fn char_eval(&self, f: &Character, a: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero(&self.ctx);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&f.values[i]));
            }
        }
        acc
    }

    /// Checks that a value vector is an algebra homomorphism to the field.
    pub fn is_character(&self, f: &Character) -> bool {
        if f.values.len() != self.dim {
            return false;
        }
        let one = self.char_eval(f, &self.unit);
        if !one.is_one() {
            return false;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = f.values[i].mul(&f.values[j]);
                let mut rhs = Scalar::zero(&self.ctx);
                for (k, c) in &self.mult[i][j] {
                    rhs = rhs.add(&c.mul(&f.values[*k]));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Convolution product of two characters: (f*g)(h) = f(h_{(1)})g(h_{(2)}).
    pub fn convolve(&self, f: &Character, g: &Character) -> Character {
        let values = (0..self.dim)
            .map(|i| {
                let mut acc = Scalar::zero(&self.ctx);
                for (j, k, c) in &self.coproduct[i] {
                    acc = acc.add(&c.mul(&f.values[*j]).mul(&g.values[*k]));
                }
                acc
            })
            .collect();
        Character { values }
    }

    /// f ∘ S, the convolution inverse of a character.
    pub fn char_compose_antipode(&self, f: &Character) -> Character {
        let values = (0..self.dim)
            .map(|i| self.char_eval(f, &self.antipode_of(&self.basis_el(i))))
            .collect();
        Character { values }
    }

    /// Matrix of the left winding automorphism h ↦ f(h_{(1)}) h_{(2)}.
    pub fn winding_left(&self, f: &Character) -> Result<Matrix, HopfError> {
        if !self.is_character(f) {
            return Err(HopfError::NotCharacter(
                "winding automorphism requires an algebra homomorphism".into(),
            ));
        }
        let mut m = Matrix::zeros(&self.ctx, self.dim, self.dim);
        for i in 0..self.dim {
            for (j, k, c) in &self.coproduct[i] {
                m[(*k, i)] = m[(*k, i)].add(&c.mul(&f.values[*j]));
            }
        }
        Ok(m)
    }

    /// The two-sided integral t with h·t = t·h = ε(h)·t, normalized ε(t) = 1.
    pub fn integral(&self) -> Result<Vec<Scalar>, HopfError> {
        // rows: for each basis h and each coordinate k, (L_h - ε(h))t = 0 and
        // (R_h - ε(h))t = 0
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for h in 0..self.dim {
            let mut left = Matrix::zeros(&self.ctx, self.dim, self.dim);
            let mut right = Matrix::zeros(&self.ctx, self.dim, self.dim);
            for j in 0..self.dim {
                for (k, c) in &self.mult[h][j] {
                    left[(*k, j)] = left[(*k, j)].add(c);
                }
                for (k, c) in &self.mult[j][h] {
                    right[(*k, j)] = right[(*k, j)].add(c);
                }
            }
            for m in [left, right] {
                for r in 0..self.dim {
                    let mut row: Vec<Scalar> = (0..self.dim).map(|cidx| m[(r, cidx)].clone()).collect();
                    // subtract ε(h)·δ
                    row[r] = row[r].sub(&self.counit[h]);
                    rows.push(row);
                }
            }
        }
        let a = Matrix::from_rows(&self.ctx, rows);
        let ns = a.nullspace();
        if ns.len() != 1 {
            return Err(HopfError::BadIntegral(ns.len()));
        }
        let t = ns.into_iter().next().unwrap();
        let e = self.counit_of(&t);
        if e.is_zero() {
            return Err(HopfError::Invalid("integral has ε(t) = 0".into()));
        }
        let inv = e.inv();
        Ok(t.iter().map(|c| c.mul(&inv)).collect())
    }

    /// The unique integral Tr of H* with Tr(1_H) = 1: the canonical trace.
    /// Returned as its value vector on the basis.
    pub fn trace_functional(&self) -> Result<Vec<Scalar>, HopfError> {
        // φ * T = φ(1) T and T * φ = φ(1) T for all φ in the dual basis:
        //   Σ_{(a,b,c) ∈ Δ(b_i), a=j} c T_b = [1]_j T_i   (left)
        //   Σ_{(a,b,c) ∈ Δ(b_i), b=j} c T_a = [1]_j T_i   (right)
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut lrow = vec![Scalar::zero(&self.ctx); self.dim];
                let mut rrow = vec![Scalar::zero(&self.ctx); self.dim];
                for (a, b, c) in &self.coproduct[i] {
                    if *a == j {
                        lrow[*b] = lrow[*b].add(c);
                    }
                    if *b == j {
                        rrow[*a] = rrow[*a].add(c);
                    }
                }
                lrow[i] = lrow[i].sub(&self.unit[j]);
                rrow[i] = rrow[i].sub(&self.unit[j]);
                rows.push(lrow);
                rows.push(rrow);
            }
        }
        let a = Matrix::from_rows(&self.ctx, rows);
        let ns = a.nullspace();
        if ns.len() != 1 {
            return Err(HopfError::BadIntegral(ns.len()));
        }
        let t = ns.into_iter().next().unwrap();
        let at_one = {
            let mut acc = Scalar::zero(&self.ctx);
            for (i, c) in self.unit.iter().enumerate() {
                acc = acc.add(&c.mul(&t[i]));
            }
            acc
        };
        if at_one.is_zero() {
            return Err(HopfError::Invalid("trace with Tr(1) = 0".into()));
        }
        let inv = at_one.inv();
        Ok(t.iter().map(|c| c.mul(&inv)).collect())
    }

    /// The element of H mapping to the matrix unit E_ij of the k-th
    /// Wedderburn block under the certified irreps.
    pub fn matrix_unit_element(&self, k: usize, i: usize, j: usize) -> Result<Vec<Scalar>, HopfError> {
        let total: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != self.dim {
            return Err(HopfError::BadCertificate(format!(
                "sum of squared irrep dimensions is {total}, dim H is {}",
                self.dim
            )));
        }
        // columns: basis elements; rows: stacked irrep matrix entries
        let mut m = Matrix::zeros(&self.ctx, total, self.dim);
        for b in 0..self.dim {
            let mut row = 0;
            for rep in &self.irreps {
                for r in 0..rep.dim {
                    for c in 0..rep.dim {
                        m[(row, b)] = rep.action[b][(r, c)].clone();
                        row += 1;
                    }
                }
            }
        }
        let mut target = vec![Scalar::zero(&self.ctx); total];
        let mut row = 0;
        for (k2, rep) in self.irreps.iter().enumerate() {
            for r in 0..rep.dim {
                for c in 0..rep.dim {
                    if k2 == k && r == i && c == j {
                        target[row] = Scalar::one(&self.ctx);
                    }
                    row += 1;
                }
            }
        }
        m.solve(&target)
            .ok_or_else(|| HopfError::BadCertificate("irreps do not span the dual of H".into()))
    }

    /// Full axiom and certificate check. Failures are data, not errors.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let ctx = &self.ctx;
        let dim = self.dim;

        // associativity and unit law
        'assoc: for i in 0..dim {
            for j in 0..dim {
                let ij = self.mul_el(&self.basis_el(i), &self.basis_el(j));
                for k in 0..dim {
                    let l = self.mul_el(&ij, &self.basis_el(k));
                    let jk = self.mul_el(&self.basis_el(j), &self.basis_el(k));
                    let r = self.mul_el(&self.basis_el(i), &jk);
                    if l != r {
                        failures.push(format!("associativity fails at basis ({i},{j},{k})"));
                        break 'assoc;
                    }
                }
            }
        }
        for i in 0..dim {
            let b = self.basis_el(i);
            if self.mul_el(&self.unit, &b) != b || self.mul_el(&b, &self.unit) != b {
                failures.push(format!("unit law fails at basis {i}"));
            }
        }

        // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ on basis, as dense 3-tensors
        for i in 0..dim {
            let mut lhs: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
            let mut rhs: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
            for (j, k, c) in &self.coproduct[i] {
                for (a, b, d) in &self.coproduct[*j] {
                    let e = lhs.entry((*a, *b, *k)).or_insert_with(|| Scalar::zero(ctx));
                    *e = e.add(&c.mul(d));
                }
                for (a, b, d) in &self.coproduct[*k] {
                    let e = rhs.entry((*j, *a, *b)).or_insert_with(|| Scalar::zero(ctx));
                    *e = e.add(&c.mul(d));
                }
            }
            let keys: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).cloned().collect();
            for key in keys {
                let zero = Scalar::zero(ctx);
                let l = lhs.get(&key).unwrap_or(&zero);
                let r = rhs.get(&key).unwrap_or(&zero);
                if l != r {
                    failures.push(format!("coassociativity fails at basis {i}, component {key:?}"));
                    break;
                }
            }
        }

        // counit law: (ε⊗id)Δ = id = (id⊗ε)Δ
        for i in 0..dim {
            let mut left = vec![Scalar::zero(ctx); dim];
            let mut right = vec![Scalar::zero(ctx); dim];
            for (j, k, c) in &self.coproduct[i] {
                left[*k] = left[*k].add(&c.mul(&self.counit[*j]));
                right[*j] = right[*j].add(&c.mul(&self.counit[*k]));
            }
            if left != self.basis_el(i) || right != self.basis_el(i) {
                failures.push(format!("counit law fails at basis {i}"));
            }
        }

        // antipode axiom: m(S⊗id)Δ(h) = ε(h)1 = m(id⊗S)Δ(h)
        for i in 0..dim {
            let mut l = vec![Scalar::zero(ctx); dim];
            let mut r = vec![Scalar::zero(ctx); dim];
            for (j, k, c) in &self.coproduct[i] {
                let sj = self.antipode_of(&self.basis_el(*j));
                let sk = self.antipode_of(&self.basis_el(*k));
                let lt = self.mul_el(&sj, &self.basis_el(*k));
                let rt = self.mul_el(&self.basis_el(*j), &sk);
                for (x, lx) in l.iter_mut().enumerate() {
                    *lx = lx.add(&c.mul(&lt[x]));
                }
                for (x, rx) in r.iter_mut().enumerate() {
                    *rx = rx.add(&c.mul(&rt[x]));
                }
            }
            let want: Vec<Scalar> = self.unit.iter().map(|u| u.mul(&self.counit[i])).collect();
            if l != want {
                failures.push(format!("antipode axiom m(S⊗id)Δ fails at basis {i}"));
            }
            if r != want {
                failures.push(format!("antipode axiom m(id⊗S)Δ fails at basis {i}"));
            }
        }

        // S² = id (semisimple case)
        if !self.antipode.matmul(&self.antipode).is_identity() {
            failures.push("S∘S is not the identity".into());
        }

        // bialgebra compatibility: Δ(b_i b_j) = Δ(b_i)Δ(b_j); ε multiplicative
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.mul_el(&self.basis_el(i), &self.basis_el(j));
                let lhs = self.coproduct_matrix(&prod);
                let mut rhs = Matrix::zeros(ctx, dim, dim);
                for (a1, b1, c1) in &self.coproduct[i] {
                    for (a2, b2, c2) in &self.coproduct[j] {
                        let c = c1.mul(c2);
                        for (ka, ca) in &self.mult[*a1][*a2] {
                            for (kb, cb) in &self.mult[*b1][*b2] {
                                rhs[(*ka, *kb)] = rhs[(*ka, *kb)].add(&c.mul(ca).mul(cb));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    failures.push(format!("Δ is not multiplicative at basis ({i},{j})"));
                }
                let le = self.counit_of(&prod);
                let re = self.counit[i].mul(&self.counit[j]);
                if le != re {
                    failures.push(format!("ε is not multiplicative at basis ({i},{j})"));
                }
            }
        }
        if !self.counit_of(&self.unit).is_one() {
            failures.push("ε(1) ≠ 1".into());
        }
        {
            let du = self.coproduct_matrix(&self.unit);
            let mut expect = Matrix::zeros(ctx, dim, dim);
            for (a, ua) in self.unit.iter().enumerate() {
                for (b, ub) in self.unit.iter().enumerate() {
                    expect[(a, b)] = ua.mul(ub);
                }
            }
            if du != expect {
                failures.push("Δ(1) ≠ 1⊗1".into());
            }
        }

        // Artin–Wedderburn certificate
        let total: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != dim {
            failures.push(format!(
                "sum of squared irrep dimensions {total} differs from dim {dim}"
            ));
        }
        let n_trivial = self.irreps.iter().filter(|r| r.is_trivial).count();
        if n_trivial != 1 || self.irreps.first().map_or(true, |r| !r.is_trivial) {
            failures.push("exactly one trivial irrep, stored first, is required".into());
        }
        for (idx, rep) in self.irreps.iter().enumerate() {
            if rep.action.len() != dim {
                failures.push(format!("irrep {idx} lacks matrices for the full basis"));
                continue;
            }
            // unital algebra morphism
            let mut one = Matrix::zeros(ctx, rep.dim, rep.dim);
            for (b, ub) in self.unit.iter().enumerate() {
                one = one.add(&rep.action[b].scale(ub));
            }
            if !one.is_identity() {
                failures.push(format!("irrep {idx}: ρ(1) is not the identity"));
            }
            for i in 0..dim {
                for j in 0..dim {
                    let lhs = rep.action[i].matmul(&rep.action[j]);
                    let mut rhs = Matrix::zeros(ctx, rep.dim, rep.dim);
                    for (k, c) in &self.mult[i][j] {
                        rhs = rhs.add(&rep.action[*k].scale(c));
                    }
                    if lhs != rhs {
                        failures.push(format!("irrep {idx}: ρ(b_{i})ρ(b_{j}) ≠ ρ(b_{i}b_{j})"));
                    }
                }
            }
            if rep.is_trivial {
                for i in 0..dim {
                    if rep.dim != 1 || rep.action[i][(0, 0)] != self.counit[i] {
                        failures.push(format!("irrep {idx} marked trivial but ρ ≠ ε"));
                        break;
                    }
                }
            }
        }
        // completeness + pairwise non-isomorphy: the combined map
        // H → ⊕ Mat(d_k) must be a linear isomorphism
        if total == dim {
            let mut m = Matrix::zeros(ctx, dim, dim);
            for b in 0..dim {
                let mut row = 0;
                for rep in &self.irreps {
                    for r in 0..rep.dim {
                        for c in 0..rep.dim {
                            m[(row, b)] = rep.action[b][(r, c)].clone();
                            row += 1;
                        }
                    }
                }
            }
            if m.rank() != dim {
                failures.push(
                    "irrep certificate is degenerate (repeated or dependent irreps)".into(),
                );
            }
        }

        ValidationReport { failures }
    }
}

// ---------------------------------------------------------------------------
// built-ins
// ---------------------------------------------------------------------------

/// 𝕜G with Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹. The caller supplies the
/// Artin–Wedderburn certificate (full-basis matrices per irrep).
pub fn build_group_algebra(
    ctx: &Ctx,
    group: &FiniteGroup,
    irreps: Vec<Irrep>,
) -> Result<HopfAlgebra, HopfError> {
    let n = group.order();
    let one = Scalar::one(ctx);
    let mult: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
        .map(|i| (0..n).map(|j| vec![(group.mul(i, j), one.clone())]).collect())
        .collect();
    let mut unit = vec![Scalar::zero(ctx); n];
    unit[0] = one.clone();
    let coproduct = (0..n).map(|i| vec![(i, i, one.clone())]).collect();
    let counit = vec![one.clone(); n];
    let mut antipode = Matrix::zeros(ctx, n, n);
    for i in 0..n {
        antipode[(group.inv(i), i)] = one.clone();
    }
    let sum: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
    if sum != n {
        return Err(HopfError::BadCertificate(format!(
            "irrep dimension squares sum to {sum}, group order is {n}"
        )));
    }
    let mut h = HopfAlgebra::from_tables(
        Ctx::clone(ctx),
        group.names().to_vec(),
        mult,
        unit,
        coproduct,
        counit,
        antipode,
        irreps,
        group.generators().to_vec(),
    );
    h.basis_words = Some((0..n).map(|i| group.word(i).to_vec()).collect());
    let report = h.validate();
    if !report.passed() {
        return Err(HopfError::Invalid(report.failures.join("; ")));
    }
    Ok(h)
}

/// (𝕜G)*: basis of orthogonal idempotents f_g, Δ(f_g) = Σ_{xy=g} f_x⊗f_y,
/// irreps the |G| characters χ_h(f_g) = δ_{gh}, with χ_{1_G} first.
pub fn build_dual_group_algebra(ctx: &Ctx, group: &FiniteGroup) -> Result<HopfAlgebra, HopfError> {
    let n = group.order();
    let one = Scalar::one(ctx);
    let zero = Scalar::zero(ctx);
    let mult: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { vec![(i, one.clone())] } else { vec![] })
                .collect()
        })
        .collect();
    let unit = vec![one.clone(); n];
    let coproduct: Vec<Vec<(usize, usize, Scalar)>> = (0..n)
        .map(|g| {
            let mut terms = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if group.mul(x, y) == g {
                        terms.push((x, y, one.clone()));
                    }
                }
            }
            terms
        })
        .collect();
    let counit: Vec<Scalar> = (0..n).map(|g| if g == 0 { one.clone() } else { zero.clone() }).collect();
    let mut antipode = Matrix::zeros(ctx, n, n);
    for g in 0..n {
        antipode[(group.inv(g), g)] = one.clone();
    }
    let irreps: Vec<Irrep> = (0..n)
        .map(|h| {
            let action = (0..n)
                .map(|g| {
                    let mut m = Matrix::zeros(ctx, 1, 1);
                    if g == h {
                        m[(0, 0)] = one.clone();
                    }
                    m
                })
                .collect();
            Irrep { dim: 1, action, is_trivial: h == 0 }
        })
        .collect();
    let names = group.names().iter().map(|n| format!("f[{n}]")).collect();
    let h = HopfAlgebra::from_tables(
        Ctx::clone(ctx),
        names,
        mult,
        unit,
        coproduct,
        counit,
        antipode,
        irreps,
        (0..n).collect(),
    );
    let report = h.validate();
    if !report.passed() {
        return Err(HopfError::Invalid(report.failures.join("; ")));
    }
    Ok(h)
}

/// The 8-dimensional Kac–Palyutkin Hopf algebra on the basis
/// {1, x, y, xy, z, xz, yz, xyz}. Needs ζ₄ in the scalar context.
pub fn build_kac_palyutkin(ctx: &Ctx) -> Result<HopfAlgebra, HopfError> {
    if ctx.order() % 4 != 0 {
        return Err(HopfError::NeedsRoot { required: 4, have: ctx.order() });
    }
    let one = Scalar::one(ctx);
    let half = Scalar::from_frac(ctx, 1, 2);
    let omega = Scalar::root_of_unity(ctx, (ctx.order() / 4) as i64);

    // basis index for x^a y^b z^c
    let idx = |a: usize, b: usize, c: usize| a + 2 * b + 4 * c;
    let names: Vec<String> = (0..8)
        .map(|i| {
            let (a, b, c) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
            let mut s = String::new();
            if a == 1 {
                s.push('x');
            }
            if b == 1 {
                s.push('y');
            }
            if c == 1 {
                s.push('z');
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();

    // x^a y^b z · x^{a'} y^{b'} = x^{a+b'} y^{b+a'} z  (z swaps x and y)
    let mut mult: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); 8]; 8];
    for i in 0..8usize {
        let (a1, b1, c1) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
        for j in 0..8usize {
            let (a2, b2, c2) = (j & 1, (j >> 1) & 1, (j >> 2) & 1);
            let (a, b) = if c1 == 1 { ((a1 + b2) & 1, (b1 + a2) & 1) } else { ((a1 + a2) & 1, (b1 + b2) & 1) };
            let terms = if c1 + c2 <= 1 {
                vec![(idx(a, b, c1 + c2), one.clone())]
            } else {
                // z² = (1 + x + y - xy)/2
                vec![
                    (idx(a, b, 0), half.clone()),
                    (idx((a + 1) & 1, b, 0), half.clone()),
                    (idx(a, (b + 1) & 1, 0), half.clone()),
                    (idx((a + 1) & 1, (b + 1) & 1, 0), half.neg()),
                ]
            };
            mult[i][j] = terms;
        }
    }

    let mut unit = vec![Scalar::zero(ctx); 8];
    unit[0] = one.clone();
    let counit = vec![one.clone(); 8];

    // Δ is an algebra map; build it from the generators' coproducts.
    // Δ(z) = ½(z⊗z + z⊗xz + yz⊗z − yz⊗xz): the form consistent with the
    // standard ξ intertwiner tables for this algebra.
    let x = idx(1, 0, 0);
    let y = idx(0, 1, 0);
    let z = idx(0, 0, 1);
    let xz = idx(1, 0, 1);
    let yz = idx(0, 1, 1);
    let delta_gen: HashMap<usize, Vec<(usize, usize, Scalar)>> = HashMap::from([
        (x, vec![(x, x, one.clone())]),
        (y, vec![(y, y, one.clone())]),
        (
            z,
            vec![
                (z, z, half.clone()),
                (z, xz, half.clone()),
                (yz, z, half.clone()),
                (yz, xz, half.neg()),
            ],
        ),
    ]);
    let mul_tensor = |l: &Vec<(usize, usize, Scalar)>, r: &Vec<(usize, usize, Scalar)>| {
        let mut acc: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (a1, b1, c1) in l {
            for (a2, b2, c2) in r {
                let c = c1.mul(c2);
                for (ka, ca) in &mult[*a1][*a2] {
                    for (kb, cb) in &mult[*b1][*b2] {
                        let e = acc.entry((*ka, *kb)).or_insert_with(|| Scalar::zero(ctx));
                        *e = e.add(&c.mul(ca).mul(cb));
                    }
                }
            }
        }
        let mut out: Vec<(usize, usize, Scalar)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b), c)| (a, b, c))
            .collect();
        out.sort_by_key(|(a, b, _)| (*a, *b));
        out
    };
    let mut coproduct: Vec<Vec<(usize, usize, Scalar)>> = Vec::with_capacity(8);
    for i in 0..8usize {
        let (a, b, c) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
        let mut acc = vec![(0usize, 0usize, one.clone())];
        if a == 1 {
            acc = mul_tensor(&acc, &delta_gen[&x]);
        }
        if b == 1 {
            acc = mul_tensor(&acc, &delta_gen[&y]);
        }
        if c == 1 {
            acc = mul_tensor(&acc, &delta_gen[&z]);
        }
        coproduct.push(acc);
    }

    // S fixes the generators; as an anti-automorphism on the normal-form
    // basis it therefore swaps xz and yz and fixes everything else.
    let mut antipode = Matrix::identity(ctx, 8);
    antipode[(xz, xz)] = Scalar::zero(ctx);
    antipode[(yz, yz)] = Scalar::zero(ctx);
    antipode[(xz, yz)] = one.clone();
    antipode[(yz, xz)] = one.clone();

    // irreps: four characters (α,β,γ) and the two-dimensional ρ
    let char_irrep = |alpha: &Scalar, beta: &Scalar, gamma: &Scalar, trivial: bool| {
        let action = (0..8)
            .map(|i| {
                let (a, b, c) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
                let mut v = one.clone();
                if a == 1 {
                    v = v.mul(alpha);
                }
                if b == 1 {
                    v = v.mul(beta);
                }
                if c == 1 {
                    v = v.mul(gamma);
                }
                let mut m = Matrix::zeros(ctx, 1, 1);
                m[(0, 0)] = v;
                m
            })
            .collect();
        Irrep { dim: 1, action, is_trivial: trivial }
    };
    let neg_one = Scalar::from_int(ctx, -1);
    let mut irreps = vec![
        char_irrep(&one, &one, &one, true),
        char_irrep(&one, &one, &neg_one, false),
        char_irrep(&neg_one, &neg_one, &omega, false),
        char_irrep(&neg_one, &neg_one, &omega.neg(), false),
    ];
    let rho_x = Matrix::from_i64(ctx, &[&[-1, 0], &[0, 1]]);
    let rho_y = Matrix::from_i64(ctx, &[&[1, 0], &[0, -1]]);
    let rho_z = Matrix::from_i64(ctx, &[&[0, 1], &[1, 0]]);
    let rho_action: Vec<Matrix> = (0..8)
        .map(|i| {
            let (a, b, c) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
            let mut m = Matrix::identity(ctx, 2);
            if a == 1 {
                m = m.matmul(&rho_x);
            }
            if b == 1 {
                m = m.matmul(&rho_y);
            }
            if c == 1 {
                m = m.matmul(&rho_z);
            }
            m
        })
        .collect();
    irreps.push(Irrep { dim: 2, action: rho_action, is_trivial: false });

    let mut h = HopfAlgebra::from_tables(
        Ctx::clone(ctx),
        names,
        mult,
        unit,
        coproduct,
        counit,
        antipode,
        irreps,
        vec![x, y, z],
    );
    h.basis_words = Some(
        (0..8)
            .map(|i| {
                let (a, b, c) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
                let mut w = Vec::new();
                if a == 1 {
                    w.push(x);
                }
                if b == 1 {
                    w.push(y);
                }
                if c == 1 {
                    w.push(z);
                }
                w
            })
            .collect(),
    );
    let report = h.validate();
    if !report.passed() {
        return Err(HopfError::Invalid(report.failures.join("; ")));
    }
    Ok(h)
}

/// The trivial Hopf algebra 𝕜 (group algebra of the trivial group).
pub fn build_trivial(ctx: &Ctx) -> HopfAlgebra {
    let group = FiniteGroup::trivial();
    let irreps = vec![Irrep {
        dim: 1,
        action: vec![Matrix::identity(ctx, 1)],
        is_trivial: true,
    }];
    build_group_algebra(ctx, &group, irreps).unwrap()
}

/// Characters χ_i(g) = ω^i of the cyclic group C_n; needs n | N.
pub fn cyclic_irreps(ctx: &Ctx, n: usize) -> Result<Vec<Irrep>, HopfError> {
    if ctx.order() % n as u64 != 0 {
        return Err(HopfError::NeedsRoot { required: n as u64, have: ctx.order() });
    }
    let step = (ctx.order() / n as u64) as i64;
    Ok((0..n)
        .map(|i| {
            let action = (0..n)
                .map(|j| {
                    let mut m = Matrix::zeros(ctx, 1, 1);
                    m[(0, 0)] = Scalar::root_of_unity(ctx, step * (i * j) as i64);
                    m
                })
                .collect();
            Irrep { dim: 1, action, is_trivial: i == 0 }
        })
        .collect())
}

/// The full irrep list of the dihedral group from [`FiniteGroup::dihedral`]
/// (element i + n·j is r^i s^j), for even n: four characters and the
/// two-dimensional ρ_k, k = 1..n/2. Needs n | N.
pub fn dihedral_irreps(ctx: &Ctx, n: usize) -> Result<Vec<Irrep>, HopfError> {
    if n % 2 != 0 || n < 2 {
        return Err(HopfError::BadCertificate(
            "dihedral_irreps is provided for even n only".into(),
        ));
    }
    if ctx.order() % n as u64 != 0 {
        return Err(HopfError::NeedsRoot { required: n as u64, have: ctx.order() });
    }
    let step = (ctx.order() / n as u64) as i64;
    let chr = |rv: i64, sv: i64, trivial: bool| {
        let action = (0..2 * n)
            .map(|e| {
                let (i, j) = (e % n, e / n);
                let mut m = Matrix::zeros(ctx, 1, 1);
                m[(0, 0)] = Scalar::from_int(ctx, rv.pow(i as u32 % 2) * sv.pow(j as u32));
                m
            })
            .collect();
        Irrep { dim: 1, action, is_trivial: trivial }
    };
    let mut irreps = vec![chr(1, 1, true), chr(1, -1, false), chr(-1, 1, false), chr(-1, -1, false)];
    for k in 1..n / 2 {
        let action = (0..2 * n)
            .map(|e| {
                let (i, j) = (e % n, e / n);
                let zk = Scalar::root_of_unity(ctx, step * (k * i) as i64);
                let zmk = Scalar::root_of_unity(ctx, -step * (k * i) as i64);
                let mut m = Matrix::zeros(ctx, 2, 2);
                if j == 0 {
                    m[(0, 0)] = zk;
                    m[(1, 1)] = zmk;
                } else {
                    m[(0, 1)] = zk;
                    m[(1, 0)] = zmk;
                }
                m
            })
            .collect();
        irreps.push(Irrep { dim: 2, action, is_trivial: false });
    }
    Ok(irreps)
}
