//! Superpotential calculus on the tensor algebra of V: cyclic shifts, twist
//! verification, derivation-quotient relation spaces, the diagonal H-action
//! on V^⊗ℓ, and the homological determinant read off the line 𝕜w.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hopf::{Character, HopfAlgebra};
use crate::linalg::{row_space_basis, in_span, Matrix};
use crate::rep::Rep;
use crate::scalar::{Ctx, Scalar};

#[derive(Debug, Error)]
pub enum PotentialError {
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("cannot parse tensor element {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
}

/// A homogeneous element of V^⊗ℓ as a sparse map from length-ℓ words over
/// the variable indices to scalars. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    degree: usize,
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl TensorElement {
    pub fn zero(nvars: usize, degree: usize) -> TensorElement {
        TensorElement { degree, nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u8>, Scalar)>,
    ) -> TensorElement {
        let mut t = TensorElement::zero(nvars, degree);
        for (w, c) in terms {
            t.add_term(&w, &c);
        }
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[u8]) -> Option<&Scalar> {
        self.terms.get(word)
    }

    pub fn add_term(&mut self, word: &[u8], c: &Scalar) {
        assert_eq!(word.len(), self.degree, "word length must match degree");
        assert!(word.iter().all(|&v| (v as usize) < self.nvars));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(word) {
            Some(existing) => {
                *existing = existing.add(c);
                if existing.is_zero() {
                    self.terms.remove(word);
                }
            }
            None => {
                self.terms.insert(word.to_vec(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.nvars, self.degree);
        for (w, c) in &self.terms {
            out.add_term(w, &c.mul(s));
        }
        out
    }

    /// Rescales so the first term in word order has coefficient 1.
    pub fn monic(&self) -> TensorElement {
        match self.terms.iter().next() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// θ: v_1⊗v_2⊗…⊗v_ℓ ↦ v_2⊗…⊗v_ℓ⊗v_1 on each word.
    pub fn cyclic_shift(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.nvars, self.degree);
        for (w, c) in &self.terms {
            if w.is_empty() {
                out.add_term(w, c);
            } else {
                let mut rotated = w[1..].to_vec();
                rotated.push(w[0]);
                out.add_term(&rotated, c);
            }
        }
        out
    }

    /// Applies a matrix to the coordinates of one tensor factor.
    pub fn apply_at_factor(&self, m: &Matrix, factor: usize) -> TensorElement {
        assert!(factor < self.degree);
        assert_eq!(m.rows(), self.nvars);
        let mut out = TensorElement::zero(self.nvars, self.degree);
        for (w, c) in &self.terms {
            let old = w[factor] as usize;
            for new in 0..self.nvars {
                let entry = &m[(new, old)];
                if !entry.is_zero() {
                    let mut word = w.clone();
                    word[factor] = new as u8;
                    out.add_term(&word, &c.mul(entry));
                }
            }
        }
        out
    }

    /// Applies the same matrix to every tensor factor (degree-wise base change).
    pub fn apply_all_factors(&self, m: &Matrix) -> TensorElement {
        let mut out = self.clone();
        for f in 0..self.degree {
            out = out.apply_at_factor(m, f);
        }
        out
    }

    fn word_to_index(word: &[u8], nvars: usize) -> usize {
        word.iter().fold(0usize, |acc, &v| acc * nvars + v as usize)
    }

    fn index_to_word(mut idx: usize, nvars: usize, degree: usize) -> Vec<u8> {
        let mut w = vec![0u8; degree];
        for pos in (0..degree).rev() {
            w[pos] = (idx % nvars) as u8;
            idx /= nvars;
        }
        w
    }

    /// Dense coordinate vector in V^⊗ℓ, first factor most significant
    /// (consistent with iterated Kronecker products).
    pub fn to_vec(&self, ctx: &Ctx) -> Vec<Scalar> {
        let len = self.nvars.pow(self.degree as u32);
        let mut v = vec![Scalar::zero(ctx); len];
        for (w, c) in &self.terms {
            v[Self::word_to_index(w, self.nvars)] = c.clone();
        }
        v
    }

    pub fn from_vec(nvars: usize, degree: usize, v: &[Scalar]) -> TensorElement {
        let mut t = TensorElement::zero(nvars, degree);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                t.add_term(&Self::index_to_word(i, nvars, degree), c);
            }
        }
        t
    }

    /// Renders with the given variable names, e.g. `u*v*v*u - u*u*v*v`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word: Vec<&str> = w.iter().map(|&v| names[v as usize].as_str()).collect();
            let (sign, mag) = if c.as_rational().map_or(false, |r| {
                use num_traits::Signed;
                r.is_negative()
            }) {
                ("-", c.neg())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    s.push_str("- ");
                }
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
            }
            if !mag.is_one() || w.is_empty() {
                let needs_parens = mag.as_rational().is_none();
                if needs_parens {
                    s.push('(');
                }
                s.push_str(&mag.to_string());
                if needs_parens {
                    s.push(')');
                }
                if !w.is_empty() {
                    s.push('*');
                }
            }
            s.push_str(&word.join("*"));
        }
        s
    }

    /// Parses the sum-of-words syntax: terms like `u*v*v*u`, `2*u*v`,
    /// `(1/2*z)*v*u`, joined by `+`/`-`.
    pub fn parse(input: &str, names: &[String], ctx: &Ctx) -> Result<TensorElement, PotentialError> {
        let err = |reason: &str| PotentialError::Parse {
            literal: input.to_string(),
            reason: reason.to_string(),
        };
        let var = |tok: &str| names.iter().position(|n| n == tok.trim());
        // split top-level on +/- outside parentheses
        let mut terms: Vec<(String, bool)> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        let mut neg = false;
        for ch in input.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| err("unbalanced parentheses"))?;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        terms.push((cur.trim().to_string(), neg));
                    } else if ch == '-' && cur.trim().is_empty() && !terms.is_empty() {
                        return Err(err("dangling sign"));
                    }
                    cur = String::new();
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if depth != 0 {
            return Err(err("unbalanced parentheses"));
        }
        if !cur.trim().is_empty() {
            terms.push((cur.trim().to_string(), neg));
        }
        if terms.is_empty() {
            return Err(err("no terms"));
        }
        let mut degree: Option<usize> = None;
        let mut parsed: Vec<(Vec<u8>, Scalar)> = Vec::new();
        for (t, is_neg) in terms {
            // factor list split on '*' outside parens
            let mut factors: Vec<String> = Vec::new();
            let mut depth = 0usize;
            let mut cur = String::new();
            for ch in t.chars() {
                match ch {
                    '(' => {
                        depth += 1;
                        cur.push(ch);
                    }
                    ')' => {
                        depth -= 1;
                        cur.push(ch);
                    }
                    '*' if depth == 0 => {
                        factors.push(cur.trim().to_string());
                        cur = String::new();
                    }
                    _ => cur.push(ch),
                }
            }
            factors.push(cur.trim().to_string());
            let mut coeff = Scalar::one(ctx);
            let mut word: Vec<u8> = Vec::new();
            for f in factors {
                if f.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(v) = var(&f) {
                    word.push(v as u8);
                } else {
                    let inner = f
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .unwrap_or(&f);
                    let s = Scalar::parse(inner, ctx).map_err(|e| {
                        err(&format!("factor {f:?} is neither a variable nor a scalar: {e}"))
                    })?;
                    coeff = coeff.mul(&s);
                }
            }
            if is_neg {
                coeff = coeff.neg();
            }
            match degree {
                None => degree = Some(word.len()),
                Some(d) if d != word.len() => {
                    return Err(err(&format!(
                        "mixed degrees {d} and {} (element must be homogeneous)",
                        word.len()
                    )))
                }
                _ => {}
            }
            parsed.push((word, coeff));
        }
        Ok(TensorElement::from_terms(names.len(), degree.unwrap(), parsed))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

// ---------------------------------------------------------------------------
// H-action on tensor powers
// ---------------------------------------------------------------------------

/// Matrices of the iterated-coproduct action of every basis element on
/// V^⊗ℓ; entry `[d-1][i]` acts on V^⊗d.
pub fn tensor_power_action(h: &HopfAlgebra, v: &Rep, ell: usize) -> Vec<Vec<Matrix>> {
    let mut levels: Vec<Vec<Matrix>> = Vec::new();
    if ell == 0 {
        return levels;
    }
    levels.push(v.action.clone());
    for d in 2..=ell {
        let prev = &levels[d - 2];
        let dim = v.dim.pow(d as u32);
        let level: Vec<Matrix> = (0..h.dim())
            .map(|i| {
                let mut m = Matrix::zeros(h.ctx(), dim, dim);
                for (j, k, c) in h.coproduct_of_basis(i) {
                    m = m.add(&v.action[*j].kron(&prev[*k]).scale(c));
                }
                m
            })
            .collect();
        levels.push(level);
    }
    levels
}

/// h · x for an element h of H (coordinates) acting diagonally on V^⊗ℓ.
pub fn act(h: &HopfAlgebra, v: &Rep, el: &[Scalar], x: &TensorElement) -> TensorElement {
    let ell = x.degree();
    if ell == 0 {
        let e = h.counit_of(el);
        let mut out = TensorElement::zero(x.nvars(), 0);
        out.add_term(&[], &e);
        return out;
    }
    let actions = tensor_power_action(h, v, ell);
    let mut m = Matrix::zeros(h.ctx(), v.dim.pow(ell as u32), v.dim.pow(ell as u32));
    for (b, c) in el.iter().enumerate() {
        if !c.is_zero() {
            m = m.add(&actions[ell - 1][b].scale(c));
        }
    }
    let vec = m.mul_vec(&x.to_vec(h.ctx()));
    TensorElement::from_vec(x.nvars(), ell, &vec)
}

// ---------------------------------------------------------------------------
// twists and derivations
// ---------------------------------------------------------------------------

/// Whether (id^(⊗ℓ−1) ⊗ σ)·θ(w) = w.
pub fn check_twisted(w: &TensorElement, sigma: &Matrix) -> bool {
    if w.degree() == 0 {
        return true;
    }
    let shifted = w.cyclic_shift().apply_at_factor(sigma, w.degree() - 1);
    shifted == *w
}

/// Solves the linear system for σ and returns the rref-canonical solution,
/// provided it is invertible and verifies.
pub fn find_twist(w: &TensorElement, ctx: &Ctx) -> Option<Matrix> {
    let r = w.nvars();
    if w.degree() == 0 || w.is_zero() {
        return Some(Matrix::identity(ctx, r));
    }
    let theta = w.cyclic_shift();
    // Row k of σ solves Σ_j [θw]_{p·j} σ_{kj} = [w]_{p·k} over all prefixes p.
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    for (word, _) in theta.terms() {
        let p = word[..word.len() - 1].to_vec();
        if !prefixes.contains(&p) {
            prefixes.push(p);
        }
    }
    for (word, _) in w.terms() {
        let p = word[..word.len() - 1].to_vec();
        if !prefixes.contains(&p) {
            prefixes.push(p);
        }
    }
    prefixes.sort();
    let zero = Scalar::zero(ctx);
    let a = Matrix::from_fn(ctx, prefixes.len(), r, |row, j| {
        let mut word = prefixes[row].clone();
        word.push(j as u8);
        theta.coeff(&word).unwrap_or(&zero).clone()
    });
    let mut sigma = Matrix::zeros(ctx, r, r);
    for k in 0..r {
        let b: Vec<Scalar> = prefixes
            .iter()
            .map(|p| {
                let mut word = p.clone();
                word.push(k as u8);
                w.coeff(&word).unwrap_or(&zero).clone()
            })
            .collect();
        let x = a.solve(&b)?;
        for j in 0..r {
            sigma[(k, j)] = x[j].clone();
        }
    }
    if sigma.inverse().is_none() || !check_twisted(w, &sigma) {
        return None;
    }
    Some(sigma)
}

/// ∂^i w: the relation space spanned by deleting every length-i prefix,
/// canonicalized by rref over the word basis and returned without zeros.
pub fn derive(w: &TensorElement, i: usize, ctx: &Ctx) -> Vec<TensorElement> {
    assert!(i <= w.degree());
    let r = w.nvars();
    let out_deg = w.degree() - i;
    let mut by_prefix: BTreeMap<Vec<u8>, TensorElement> = BTreeMap::new();
    for (word, c) in w.terms() {
        let prefix = word[..i].to_vec();
        let suffix = &word[i..];
        by_prefix
            .entry(prefix)
            .or_insert_with(|| TensorElement::zero(r, out_deg))
            .add_term(suffix, c);
    }
    let rows: Vec<Vec<Scalar>> = by_prefix.values().map(|t| t.to_vec(ctx)).collect();
    row_space_basis(ctx, &rows)
        .into_iter()
        .map(|v| TensorElement::from_vec(r, out_deg, &v))
        .filter(|t| !t.is_zero())
        .collect()
}

// ---------------------------------------------------------------------------
// presentations and the homological determinant
// ---------------------------------------------------------------------------

/// A superpotential presentation of A = 𝒟(w, ℓ−m) together with the acting
/// Hopf algebra. ℓ, m, and the GK dimension of A are trusted declarations.
pub struct SuperpotentialPresentation<'a> {
    pub hopf: &'a HopfAlgebra,
    pub v: Rep,
    pub var_names: Vec<String>,
    pub w: TensorElement,
    pub sigma: Matrix,
    pub ell: usize,
    pub m: usize,
    pub gkdim_a: usize,
}

impl<'a> SuperpotentialPresentation<'a> {
    pub fn new(
        hopf: &'a HopfAlgebra,
        v: Rep,
        var_names: Vec<String>,
        w: TensorElement,
        sigma: Option<Matrix>,
        m: usize,
        gkdim_a: usize,
    ) -> Result<Self, PotentialError> {
        let ell = w.degree();
        if m > ell {
            return Err(PotentialError::Hypothesis(format!(
                "relation degree {m} exceeds the superpotential degree {ell}"
            )));
        }
        let sigma = match sigma {
            Some(s) => {
                if !check_twisted(&w, &s) {
                    return Err(PotentialError::Hypothesis(
                        "w is not a σ-twisted superpotential for the supplied σ".into(),
                    ));
                }
                s
            }
            None => find_twist(&w, hopf.ctx()).ok_or_else(|| {
                PotentialError::Hypothesis("no invertible twist σ exists for w".into())
            })?,
        };
        Ok(SuperpotentialPresentation { hopf, v, var_names, w, sigma, ell, m, gkdim_a })
    }

    pub fn relations(&self) -> Vec<TensorElement> {
        derive(&self.w, self.ell - self.m, self.hopf.ctx())
    }

    /// Checks that the relation space ∂^{ℓ−m}w is H-stable (module-algebra
    /// necessary condition). Returns the offending basis element on failure.
    pub fn relations_h_stable(&self) -> Result<(), String> {
        let ctx = self.hopf.ctx();
        let rels = self.relations();
        let span: Vec<Vec<Scalar>> = rels.iter().map(|t| t.to_vec(ctx)).collect();
        for b in 0..self.hopf.dim() {
            for r in &rels {
                let moved = act(self.hopf, &self.v, &self.hopf.basis_el(b), r);
                if !in_span(ctx, &span, &moved.to_vec(ctx)) {
                    return Err(format!(
                        "relation space is not stable under basis element {}",
                        self.hopf.basis_name(b)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The homological determinant: the character λ with h·w = λ(h)·w.
pub fn hdet(p: &SuperpotentialPresentation) -> Result<Character, PotentialError> {
    let h = p.hopf;
    let ctx = h.ctx();
    if p.w.is_zero() {
        return Err(PotentialError::Hypothesis("superpotential is zero".into()));
    }
    let (probe_word, probe_coeff) = p.w.terms().next().unwrap();
    let probe_word = probe_word.clone();
    let probe_inv = probe_coeff.inv();
    let mut values = Vec::with_capacity(h.dim());
    for b in 0..h.dim() {
        let moved = act(h, &p.v, &h.basis_el(b), &p.w);
        let zero = Scalar::zero(ctx);
        let lambda = moved.coeff(&probe_word).unwrap_or(&zero).mul(&probe_inv);
        if moved != p.w.scale(&lambda) {
            return Err(PotentialError::Hypothesis(format!(
                "𝕜w is not an H-stable line: witness basis element {}",
                h.basis_name(b)
            )));
        }
        values.push(lambda);
    }
    let chi = Character { values };
    if !h.is_character(&chi) {
        return Err(PotentialError::Hypothesis(
            "eigenvalues of the w-line do not form an algebra homomorphism".into(),
        ));
    }
    Ok(chi)
}

pub fn hdet_is_trivial(h: &HopfAlgebra, chi: &Character) -> bool {
    chi.values == h.counit()
}

/// Dual-group shortcut: w must be G-homogeneous; its degree is the hdet.
/// `degrees[j]` is the group element deg_G(v_j).
pub fn hdet_dual_shortcut(
    group: &crate::hopf::FiniteGroup,
    degrees: &[usize],
    w: &TensorElement,
) -> Result<usize, PotentialError> {
    let mut deg: Option<usize> = None;
    for (word, _) in w.terms() {
        let d = word
            .iter()
            .fold(0usize, |acc, &v| group.mul(acc, degrees[v as usize]));
        match deg {
            None => deg = Some(d),
            Some(existing) if existing != d => {
                return Err(PotentialError::Hypothesis(format!(
                    "w is not G-homogeneous: degrees {} and {}",
                    group.name(existing),
                    group.name(d)
                )))
            }
            _ => {}
        }
    }
    deg.ok_or_else(|| PotentialError::Hypothesis("superpotential is zero".into()))
}

/// Verifies, in smash coordinates, that (h_{(1)}·w) ⊗ h_{(2)} = w ⊗ Ξ(h)
/// for every basis h, where Ξ is the left winding automorphism of hdet.
pub fn verify_twisted_weak_potential_smash(
    p: &SuperpotentialPresentation,
    chi: &Character,
) -> Result<(), String> {
    let h = p.hopf;
    let ctx = h.ctx();
    let xi = h.winding_left(chi).map_err(|e| e.to_string())?;
    let wvec = p.w.to_vec(ctx);
    let tdim = wvec.len();
    for b in 0..h.dim() {
        // lhs: Σ_{(j,k,c)} c · (b_j · w) ⊗ b_k   in V^⊗ℓ ⊗ H
        let mut lhs = vec![Scalar::zero(ctx); tdim * h.dim()];
        for (j, k, c) in h.coproduct_of_basis(b) {
            let moved = act(h, &p.v, &h.basis_el(*j), &p.w).to_vec(ctx);
            for (t, mv) in moved.iter().enumerate() {
                if !mv.is_zero() {
                    lhs[t * h.dim() + k] = lhs[t * h.dim() + k].add(&c.mul(mv));
                }
            }
        }
        // rhs: w ⊗ Ξ(b)
        let xib = xi.mul_vec(&h.basis_el(b));
        let mut rhs = vec![Scalar::zero(ctx); tdim * h.dim()];
        for (t, wv) in wvec.iter().enumerate() {
            if !wv.is_zero() {
                for (k, xv) in xib.iter().enumerate() {
                    if !xv.is_zero() {
                        rhs[t * h.dim() + k] = wv.mul(xv);
                    }
                }
            }
        }
        if lhs != rhs {
            return Err(format!(
                "twisted weak potential identity fails at basis element {}",
                h.basis_name(b)
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_kac_palyutkin, build_trivial, FiniteGroup};
    use crate::scalar::CycContext;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn te(s: &str, vars: &[&str], ctx: &Ctx) -> TensorElement {
        TensorElement::parse(s, &names(vars), ctx).unwrap()
    }

    #[test]
    fn cyclic_shift_examples() {
        let ctx = CycContext::new(1);
        let uv = te("u*v", &["u", "v"], &ctx);
        assert_eq!(uv.cyclic_shift(), te("v*u", &["u", "v"], &ctx));
        let w = te("u*v*v*u", &["u", "v"], &ctx);
        assert_eq!(w.cyclic_shift(), te("v*v*u*u", &["u", "v"], &ctx));
    }

    #[test]
    fn parse_and_render() {
        let ctx = CycContext::new(4);
        let w = te("u*v*v*u - 1*u*u*v*v", &["u", "v"], &ctx);
        // words render in canonical (lexicographic) order
        assert_eq!(w.render(&names(&["u", "v"])), "- u*u*v*v + u*v*v*u");
        let with_scalar = te("(z)*u*v + 2*v*u", &["u", "v"], &ctx);
        assert_eq!(
            with_scalar.coeff(&[0, 1]).unwrap(),
            &Scalar::root_of_unity(&ctx, 1)
        );
        assert!(TensorElement::parse("u*w", &names(&["u", "v"]), &ctx).is_err());
        assert!(TensorElement::parse("u + u*v", &names(&["u", "v"]), &ctx).is_err());
    }

    #[test]
    fn twist_checks() {
        let ctx = CycContext::new(1);
        // superpotential (σ = id)
        let w = te("u*v + v*u", &["u", "v"], &ctx);
        assert!(check_twisted(&w, &Matrix::identity(&ctx, 2)));

        // down-up superpotential with α = 1, β = 2 (generic nonzero values)
        let a = Scalar::from_int(&ctx, 1);
        let b = Scalar::from_int(&ctx, 2);
        let du = down_up_w(&ctx, &a, &b);
        let mut sigma = Matrix::zeros(&ctx, 2, 2);
        sigma[(0, 0)] = b.inv().neg();
        sigma[(1, 1)] = b.neg();
        assert!(check_twisted(&du, &sigma));
        assert!(!check_twisted(&du, &Matrix::identity(&ctx, 2)));
    }

    fn down_up_w(ctx: &Ctx, alpha: &Scalar, beta: &Scalar) -> TensorElement {
        // u v² u − α uvuv − β u²v² − β⁻¹ v²u² + αβ⁻¹ vuvu + v u² v
        let n = names(&["u", "v"]);
        let mut w = TensorElement::parse("u*v*v*u + v*u*u*v", &n, ctx).unwrap();
        w.add_term(&[0, 1, 0, 1], &alpha.neg());
        w.add_term(&[0, 0, 1, 1], &beta.neg());
        w.add_term(&[1, 1, 0, 0], &beta.inv().neg());
        w.add_term(&[1, 0, 1, 0], &alpha.mul(&beta.inv()));
        w
    }

    #[test]
    fn find_twist_quantum_plane() {
        // w = vu − q·uv has the unique diagonal twist σ = diag(−q⁻¹, −q),
        // verified by substituting back (oracle: check_twisted).
        let ctx = CycContext::new(1);
        let q = Scalar::from_int(&ctx, 3);
        let mut w = TensorElement::zero(2, 2);
        w.add_term(&[1, 0], &Scalar::one(&ctx));
        w.add_term(&[0, 1], &q.neg());
        let sigma = find_twist(&w, &ctx).unwrap();
        assert_eq!(sigma[(0, 0)], q.inv().neg());
        assert_eq!(sigma[(1, 1)], q.neg());
        assert!(sigma[(0, 1)].is_zero() && sigma[(1, 0)].is_zero());
        assert!(check_twisted(&w, &sigma));
    }

    #[test]
    fn derive_examples() {
        let ctx = CycContext::new(1);
        let w = te("v*u - 2*u*v", &["u", "v"], &ctx);
        let d0 = derive(&w, 0, &ctx);
        assert_eq!(d0.len(), 1);
        assert_eq!(d0[0], w.scale(&w.terms().next().unwrap().1.inv()));

        // down-up: ∂¹w spans the two down-up relations
        let alpha = Scalar::from_int(&ctx, 5);
        let beta = Scalar::from_int(&ctx, 2);
        let du = down_up_w(&ctx, &alpha, &beta);
        let rels = derive(&du, 1, &ctx);
        assert_eq!(rels.len(), 2);
        // v²u − αvuv − βuv² and vu² − αuvu − βu²v must span the same space
        let mut r1 = TensorElement::zero(2, 3);
        r1.add_term(&[1, 1, 0], &Scalar::one(&ctx));
        r1.add_term(&[1, 0, 1], &alpha.neg());
        r1.add_term(&[0, 1, 1], &beta.neg());
        let mut r2 = TensorElement::zero(2, 3);
        r2.add_term(&[1, 0, 0], &Scalar::one(&ctx));
        r2.add_term(&[0, 1, 0], &alpha.neg());
        r2.add_term(&[0, 0, 1], &beta.neg());
        let span: Vec<Vec<Scalar>> = rels.iter().map(|t| t.to_vec(&ctx)).collect();
        assert!(in_span(&ctx, &span, &r1.to_vec(&ctx)));
        assert!(in_span(&ctx, &span, &r2.to_vec(&ctx)));

        assert_eq!(derive(&w, 2, &ctx).len(), 1); // scalars spanning 𝕜
    }

    #[test]
    fn kac_palyutkin_z_action() {
        let ctx = CycContext::new(4);
        let h = build_kac_palyutkin(&ctx).unwrap();
        let v = Rep::from_irrep(&h, 4);
        let z = h.basis_by_name("z").unwrap();
        let u2 = te("u*u", &["u", "v"], &ctx);
        let v2 = te("v*v", &["u", "v"], &ctx);
        assert_eq!(act(&h, &v, &h.basis_el(z), &u2), v2);
        assert_eq!(act(&h, &v, &h.basis_el(z), &v2), u2);
    }

    #[test]
    fn act_is_module_action() {
        let ctx = CycContext::new(4);
        let h = build_kac_palyutkin(&ctx).unwrap();
        let v = Rep::from_irrep(&h, 4);
        let x = te("u*v*v - 2*v*u*u + u*u*u", &["u", "v"], &ctx);
        for a in [1usize, 4, 6] {
            for b in [2usize, 4, 7] {
                let ab = h.mul_el(&h.basis_el(a), &h.basis_el(b));
                let lhs = act(&h, &v, &h.basis_el(a), &act(&h, &v, &h.basis_el(b), &x));
                let rhs = act(&h, &v, &ab, &x);
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(act(&h, &v, &h.unit().to_vec(), &x), x);
    }

    fn kp_presentation<'a>(
        h: &'a HopfAlgebra,
        w: TensorElement,
    ) -> SuperpotentialPresentation<'a> {
        SuperpotentialPresentation::new(
            h,
            Rep::from_irrep(h, 4),
            names(&["u", "v"]),
            w,
            None,
            2,
            2,
        )
        .unwrap()
    }

    #[test]
    fn hdet_kac_palyutkin() {
        let ctx = CycContext::new(4);
        let h = build_kac_palyutkin(&ctx).unwrap();
        let wa = te("u*u + v*v", &["u", "v"], &ctx);
        let pa = kp_presentation(&h, wa);
        let chi_a = hdet(&pa).unwrap();
        assert!(hdet_is_trivial(&h, &chi_a));

        let wb = te("u*u - v*v", &["u", "v"], &ctx);
        let pb = kp_presentation(&h, wb);
        let chi_b = hdet(&pb).unwrap();
        assert!(!hdet_is_trivial(&h, &chi_b));
        // equals the character of V₁
        let v1: Vec<Scalar> = (0..8).map(|i| h.irreps()[1].action[i][(0, 0)].clone()).collect();
        assert_eq!(chi_b.values, v1);

        // relation spaces are H-stable for both
        pa.relations_h_stable().unwrap();
        pb.relations_h_stable().unwrap();

        // smash twisted-weak-potential identity holds for both
        verify_twisted_weak_potential_smash(&pa, &chi_a).unwrap();
        verify_twisted_weak_potential_smash(&pb, &chi_b).unwrap();
    }

    #[test]
    fn integral_acts_as_weighted_average() {
        let ctx = CycContext::new(4);
        let h = build_kac_palyutkin(&ctx).unwrap();
        let v = Rep::from_irrep(&h, 4);
        let t = h.integral().unwrap();
        let w = te("u*u - v*v", &["u", "v"], &ctx);
        let direct = act(&h, &v, &t, &w);
        let mut summed = TensorElement::zero(2, 2);
        for (b, c) in t.iter().enumerate() {
            summed = summed.add(&act(&h, &v, &h.basis_el(b), &w).scale(c));
        }
        assert_eq!(direct, summed);
        // the eigenvalues are the hdet values, so the average is Σ t_b·λ_b · w
        let pres = kp_presentation(&h, w.clone());
        let chi = hdet(&pres).unwrap();
        let mut weight = Scalar::zero(&ctx);
        for (b, c) in t.iter().enumerate() {
            weight = weight.add(&c.mul(&chi.values[b]));
        }
        assert_eq!(direct, w.scale(&weight));
    }

    #[test]
    fn hdet_trivial_hopf() {
        let ctx = CycContext::new(1);
        let h = build_trivial(&ctx);
        let v = Rep { dim: 2, action: vec![Matrix::identity(&ctx, 2)] };
        let w = te("u*v + v*u", &["u", "v"], &ctx);
        let p = SuperpotentialPresentation::new(&h, v, names(&["u", "v"]), w, None, 2, 2).unwrap();
        let chi = hdet(&p).unwrap();
        assert_eq!(chi.values, h.counit());
        verify_twisted_weak_potential_smash(&p, &chi).unwrap();
    }

    #[test]
    fn hdet_failure_witness() {
        let ctx = CycContext::new(4);
        let h = build_kac_palyutkin(&ctx).unwrap();
        let w = te("u*u + u*v", &["u", "v"], &ctx);
        let p = SuperpotentialPresentation::new(
            &h,
            Rep::from_irrep(&h, 4),
            names(&["u", "v"]),
            w,
            Some(Matrix::identity(&ctx, 2)),
            2,
            2,
        );
        // u² + uv is not θ-σ-twisted for σ = id, so constructor itself rejects;
        // bypass the twist by supplying a twist that works is impossible here,
        // so construct with find_twist and expect the hdet check to fail.
        assert!(p.is_err() || hdet(&p.unwrap()).is_err());
    }

    #[test]
    fn dual_shortcut_matches() {
        let ctx = CycContext::new(1);
        // D_n with g = s, h = r·s (both reflections)
        let g = FiniteGroup::dihedral(3);
        let s = g.by_name("s").unwrap();
        let rs = g.by_name("r*s").unwrap();
        let w = te("u*u - v*v", &["u", "v"], &ctx);
        let deg = hdet_dual_shortcut(&g, &[s, rs], &w).unwrap();
        assert_eq!(deg, 0, "deg_G w = 1_G");

        // down-up over D₄ (rotation presentation): deg u = r, deg v = s
        let d4 = FiniteGroup::dihedral(4);
        let r = d4.by_name("r").unwrap();
        let s4 = d4.by_name("s").unwrap();
        let one = Scalar::one(&ctx);
        let du = {
            let mut w = TensorElement::zero(2, 4);
            w.add_term(&[0, 1, 1, 0], &one);
            w.add_term(&[0, 0, 1, 1], &one.neg());
            w.add_term(&[1, 0, 0, 1], &one);
            w.add_term(&[1, 1, 0, 0], &one.neg());
            w
        };
        let deg = hdet_dual_shortcut(&d4, &[r, s4], &du).unwrap();
        assert_eq!(deg, d4.by_name("r^2").unwrap(), "deg_G w = g²");

        // quantum plane under C_n grading: degrees cancel
        let cn = FiniteGroup::cyclic(5);
        let mut qp = TensorElement::zero(2, 2);
        qp.add_term(&[1, 0], &one);
        qp.add_term(&[0, 1], &Scalar::from_int(&ctx, -7));
        let deg = hdet_dual_shortcut(&cn, &[1, cn.inv(1)], &qp).unwrap();
        assert_eq!(deg, 0);

        // non-homogeneous input is rejected
        let bad = te("u*u + u*v", &["u", "v"], &ctx);
        assert!(hdet_dual_shortcut(&g, &[s, rs], &bad).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn element_parse_never_panics(s in "[-+*/uvz^@ ()0-9]{0,24}") {
            let ctx = CycContext::new(4);
            let _ = TensorElement::parse(&s, &names(&["u", "v"]), &ctx);
        }

        #[test]
        fn cyclic_shift_has_order_ell(words in proptest::collection::vec(
            (proptest::collection::vec(0u8..2, 4), -5i64..6), 1..5)) {
            let ctx = CycContext::new(1);
            let mut t = TensorElement::zero(2, 4);
            for (w, c) in &words {
                t.add_term(w, &Scalar::from_int(&ctx, *c));
            }
            let mut s = t.clone();
            for _ in 0..4 {
                s = s.cyclic_shift();
            }
            prop_assert_eq!(s, t);
        }
    }
}
