//! Exact arithmetic in ℚ and in the cyclotomic fields ℚ(ζ_N).
//!
//! Every quantity in the engine is a [`Scalar`]: a polynomial in ζ_N with
//! rational coefficients, fully reduced modulo the N-th cyclotomic polynomial
//! Φ_N. A computation session fixes a single [`CycContext`] (N is chosen as
//! the lcm of all root orders the input mentions), so arithmetic never needs
//! to coerce between contexts; `embed` is provided for explicit lifting.
//! N = 1 degenerates to plain rationals.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic contexts: order {0} does not divide {1}")]
    IncompatibleContexts(u64, u64),
    #[error("cannot parse scalar literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("literal declares order {declared} but context has order {expected}")]
    OrderMismatch { declared: u64, expected: u64 },
}

/// The field ℚ(ζ_N), carried around as the order N together with Φ_N.
#[derive(Debug, PartialEq, Eq)]
pub struct CycContext {
    order: u64,
    /// Monic coefficients of Φ_N, ascending, length φ(N) + 1.
    modulus: Vec<Rat>,
}

pub type Ctx = Arc<CycContext>;

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn rat_i(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

// -- dense polynomial helpers over ℚ, ascending coefficients --

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![Rat::zero()];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder by a nonzero divisor.
fn poly_divrem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero(), "polynomial division by zero");
    if rem.len() - 1 < dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let mut quo = vec![Rat::zero(); rem.len() - dd];
    while rem.len() > 1 || !rem[0].is_zero() {
        let rd = rem.len() - 1;
        if rd < dd {
            break;
        }
        let c = &rem[rd] / &lead;
        quo[rd - dd] = c.clone();
        for k in 0..=dd {
            let t = &den[k] * &c;
            rem[rd - dd + k] -= t;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quo);
    (quo, rem)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic (or zero).
fn poly_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1 = vec![Rat::zero()];
    let mut t0 = vec![Rat::zero()];
    let mut t1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let qt = poly_mul(&q, &t1);
        let mut ns = poly_sub(&s0, &qs);
        let mut nt = poly_sub(&t0, &qt);
        poly_trim(&mut ns);
        poly_trim(&mut nt);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    // normalize monic
    let lead = r0.last().unwrap().clone();
    if !lead.is_zero() && !lead.is_one() {
        for c in r0.iter_mut() {
            *c = &*c / &lead;
        }
        for c in s0.iter_mut() {
            *c = &*c / &lead;
        }
        for c in t0.iter_mut() {
            *c = &*c / &lead;
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// Φ_n, computed exactly as (x^n − 1) / ∏_{d|n, d<n} Φ_d.
fn cyclotomic_polynomial(n: u64) -> Vec<Rat> {
    let mut memo: Vec<Option<Vec<Rat>>> = vec![None; (n + 1) as usize];
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        let mut num = vec![Rat::zero(); (m + 1) as usize];
        num[0] = -Rat::one();
        num[m as usize] = Rat::one();
        let mut den = vec![Rat::one()];
        for d in 1..m {
            if m % d == 0 {
                den = poly_mul(&den, memo[d as usize].as_ref().unwrap());
            }
        }
        let (quo, rem) = poly_divrem(&num, &den);
        debug_assert!(rem.len() == 1 && rem[0].is_zero());
        memo[m as usize] = Some(quo);
    }
    memo[n as usize].take().unwrap()
}

impl CycContext {
    pub fn new(n: u64) -> Ctx {
        assert!(n >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(n);
        debug_assert_eq!(modulus.len() as u64, euler_phi(n) + 1);
        Arc::new(CycContext { order: n, modulus })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(N): the degree of the field over ℚ and the fixed coefficient length.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }
}

/// An element of ℚ(ζ_N): `coeffs[i]` is the coefficient of ζ_N^i, i < φ(N).
#[derive(Clone)]
pub struct Scalar {
    ctx: Ctx,
    coeffs: Vec<Rat>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}
impl Eq for Scalar {}

impl Scalar {
    fn from_poly(ctx: &Ctx, mut poly: Vec<Rat>) -> Scalar {
        let deg = ctx.degree();
        poly_trim(&mut poly);
        if poly.len() > deg {
            let (_, rem) = poly_divrem(&poly, &ctx.modulus);
            poly = rem;
        }
        poly.resize(deg, Rat::zero());
        Scalar { ctx: Arc::clone(ctx), coeffs: poly }
    }

    pub fn zero(ctx: &Ctx) -> Scalar {
        Scalar { ctx: Arc::clone(ctx), coeffs: vec![Rat::zero(); ctx.degree()] }
    }

    pub fn one(ctx: &Ctx) -> Scalar {
        Scalar::from_rat(ctx, Rat::one())
    }

    pub fn from_rat(ctx: &Ctx, r: Rat) -> Scalar {
        let mut coeffs = vec![Rat::zero(); ctx.degree()];
        if ctx.degree() > 0 {
            coeffs[0] = r;
        }
        Scalar { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn from_int(ctx: &Ctx, k: i64) -> Scalar {
        Scalar::from_rat(ctx, rat_i(k))
    }

    pub fn from_frac(ctx: &Ctx, num: i64, den: i64) -> Scalar {
        assert!(den != 0);
        Scalar::from_rat(ctx, Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_N^k, reduced. Negative k allowed (k is taken mod N).
    pub fn root_of_unity(ctx: &Ctx, k: i64) -> Scalar {
        let n = ctx.order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Scalar::from_poly(ctx, poly)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part if the element lies in ℚ, else None.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn assert_ctx(&self, other: &Scalar) {
        assert_eq!(
            self.ctx.order, other.ctx.order,
            "scalar context mismatch (orders {} vs {}); use embed first",
            self.ctx.order, other.ctx.order
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Scalar { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.assert_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Scalar { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_ctx(other);
        Scalar::from_poly(&self.ctx, poly_mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        Scalar {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via extended gcd with Φ_N.
    pub fn try_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (g, s, _) = poly_xgcd(&self.coeffs, &self.ctx.modulus);
        // Φ_N is irreducible over ℚ, so any nonzero residue is a unit.
        assert!(g.len() == 1 && g[0].is_one(), "modulus not coprime to element");
        Ok(Scalar::from_poly(&self.ctx, s))
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("scalar division by zero")
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image in a larger context under ζ_m ↦ ζ_N^{N/m}.
    pub fn embed(&self, target: &Ctx) -> Result<Scalar, ScalarError> {
        let m = self.ctx.order;
        let n = target.order;
        if n % m != 0 {
            return Err(ScalarError::IncompatibleContexts(m, n));
        }
        if m == n {
            return Ok(Scalar { ctx: Arc::clone(target), coeffs: self.coeffs.clone() });
        }
        let step = (n / m) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Ok(Scalar::from_poly(target, poly))
    }

    /// Parses the textual syntax used in job files and structured output.
    ///
    /// Grammar: `rational` | `sum-of-terms [@ N]` where a term is
    /// `rational`, `z`, `z^k`, or `rational*z^k`; `z` denotes ζ_N.
    /// A declared order must divide the context order (the value is embedded).
    pub fn parse(input: &str, ctx: &Ctx) -> Result<Scalar, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            literal: input.to_string(),
            reason: reason.to_string(),
        };
        let (body, declared) = match input.split_once('@') {
            Some((b, n)) => {
                let n: u64 = n
                    .trim()
                    .parse()
                    .map_err(|_| err("order after '@' is not a positive integer"))?;
                (b.trim(), Some(n))
            }
            None => (input.trim(), None),
        };
        if body.is_empty() {
            return Err(err("empty literal"));
        }
        let parse_rat = |s: &str| -> Result<Rat, ScalarError> {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), Some(d.trim())),
                None => (s, None),
            };
            let n: BigInt = num
                .parse()
                .map_err(|_| err(&format!("bad integer {num:?}")))?;
            let d: BigInt = match den {
                Some(d) => d.parse().map_err(|_| err(&format!("bad integer {d:?}")))?,
                None => BigInt::one(),
            };
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        };
        // split into signed terms
        let mut terms: Vec<(Rat, usize)> = Vec::new();
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        let mut sign = Rat::one();
        let mut max_pow = 0usize;
        while i < chars.len() {
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i >= chars.len() {
                break;
            }
            if chars[i] == '+' {
                sign = Rat::one();
                i += 1;
                continue;
            }
            if chars[i] == '-' {
                sign = -Rat::one();
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                i += 1;
            }
            let term: String = chars[start..i].iter().collect();
            let term = term.trim().to_string();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coef_str, z_str) = match term.split_once('*') {
                Some((c, z)) => (Some(c.trim().to_string()), Some(z.trim().to_string())),
                None => {
                    if term.starts_with('z') {
                        (None, Some(term.clone()))
                    } else {
                        (Some(term.clone()), None)
                    }
                }
            };
            let coef = match &coef_str {
                Some(c) => parse_rat(c)?,
                None => Rat::one(),
            };
            let pow = match &z_str {
                None => 0usize,
                Some(z) => {
                    if z == "z" {
                        1
                    } else if let Some(e) = z.strip_prefix("z^") {
                        e.trim()
                            .parse()
                            .map_err(|_| err(&format!("bad exponent {e:?}")))?
                    } else {
                        return Err(err(&format!("bad term {term:?}")));
                    }
                }
            };
            max_pow = max_pow.max(pow);
            terms.push((&sign * coef, pow));
            sign = Rat::one();
        }
        let small = match declared {
            Some(n) => {
                if ctx.order % n != 0 {
                    return Err(ScalarError::OrderMismatch { declared: n, expected: ctx.order });
                }
                CycContext::new(n)
            }
            None => {
                if max_pow > 0 {
                    Arc::clone(ctx)
                } else {
                    CycContext::new(1)
                }
            }
        };
        let mut poly = vec![Rat::zero(); max_pow + 1];
        for (c, p) in terms {
            poly[p] += c;
        }
        Scalar::from_poly(&small, poly).embed(ctx)
    }
}

impl fmt::Display for Scalar {
    /// `a/b` for rationals, otherwise `Σ (a_i/b_i)*z^i @ N` with ascending i
    /// and zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_rat(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
            if r.denom().is_one() {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            }
        }
        if let Some(r) = self.as_rational() {
            return write_rat(f, r);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write_rat(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_rat(f, &mag)?;
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            }
        }
        write!(f, " @ {}", self.ctx.order)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
