//! Real-root isolation for the polynomials `P_{n,a,b}` by walking the
//! interlacing ladder `P_0, P_1, …, P_n`: the roots of `P_{m−1}` bracket
//! those of `P_m`. Every sign is decided exactly on the dyadic rational
//! represented by an `f64`, so a reported bracket always holds a root.

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::eulerian::{RowStream, ScaledRow};
use crate::rational::{ratio_to_f64, Rational};
use crate::{Error, Result};

/// Relative width at which a bracket counts as converged.
pub const ROOT_REL_TOL: f64 = 1e-12;

/// A polynomial with integer coefficients, positive on `[0, ∞)`.
#[derive(Debug, Clone)]
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Sign of `p(−t)` for finite `t ≥ 0`, computed exactly.
    fn sign_at_neg(&self, t: f64) -> Sign {
        debug_assert!(t >= 0.0 && t.is_finite());
        if t == 0.0 {
            return self.coeffs[0].sign();
        }
        let (mant, exp) = decompose(t);
        let m = -BigInt::from(mant);
        let d = self.degree();
        let mut acc = self.coeffs[d].clone();
        if exp >= 0 {
            let x = m << (exp as usize);
            for k in (0..d).rev() {
                acc = acc * &x + &self.coeffs[k];
            }
        } else {
            let s = (-exp) as usize;
            for k in (0..d).rev() {
                acc = acc * &m + (&self.coeffs[k] << (s * (d - k)));
            }
        }
        acc.sign()
    }

    /// A power of two beyond every root's modulus.
    fn root_bound(&self) -> f64 {
        let lead = &self.coeffs[self.degree()];
        let mut bound = 1.0f64;
        for c in &self.coeffs[..self.degree()] {
            let r = ratio_to_f64(&c.abs(), &lead.abs());
            if r > bound {
                bound = r;
            }
        }
        let mut p = 2.0f64;
        while p <= bound + 1.0 {
            p *= 2.0;
        }
        p
    }
}

/// `t = mant · 2^exp` with `mant` odd.
fn decompose(t: f64) -> (u64, i32) {
    let bits = t.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut exp) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
    let tz = mant.trailing_zeros();
    mant >>= tz;
    exp += tz as i32;
    (mant, exp)
}

#[derive(Debug, Clone, Copy)]
struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    fn mid(&self) -> f64 {
        let lo = self.lo.to_bits();
        let hi = self.hi.to_bits();
        f64::from_bits(lo + (hi - lo) / 2)
    }
}

/// Bisects `p(−t)` on `[lo, hi]` (in `t`), given opposite exact signs at the
/// ends. With `tight`, stops only when the ends are adjacent doubles.
fn refine(p: &IntPoly, mut br: Bracket, tight: bool) -> Bracket {
    let mut s_lo = p.sign_at_neg(br.lo);
    loop {
        if br.hi.to_bits() - br.lo.to_bits() <= 1 {
            return br;
        }
        if !tight && br.hi - br.lo <= ROOT_REL_TOL * br.hi {
            return br;
        }
        let mid = br.mid();
        let s = p.sign_at_neg(mid);
        if s == Sign::NoSign {
            return Bracket { lo: mid, hi: mid };
        }
        if s == s_lo {
            br.lo = mid;
            s_lo = s;
        } else {
            br.hi = mid;
        }
    }
}

/// Isolates the `deg p` roots of `p`, given points strictly separating them
/// (ascending in `t`, starting at 0 and ending beyond the last root).
fn isolate(p: &IntPoly, points: &[f64], tight: bool) -> Option<Vec<Bracket>> {
    let signs: Vec<Sign> = points.iter().map(|&t| p.sign_at_neg(t)).collect();
    let mut out = Vec::with_capacity(points.len() - 1);
    for w in 0..points.len() - 1 {
        let (a, b) = (signs[w], signs[w + 1]);
        if a == Sign::NoSign || b == Sign::NoSign || a == b {
            return None;
        }
        out.push(refine(p, Bracket { lo: points[w], hi: points[w + 1] }, tight));
    }
    Some(out)
}

fn strip(row: &ScaledRow) -> (usize, IntPoly) {
    let zeros = row.numer.iter().take_while(|c| c.is_zero()).count();
    let top = row.numer.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let coeffs = row.numer[zeros.min(top)..=top].to_vec();
    (zeros.min(top), IntPoly { coeffs })
}

/// Locates the roots `−ξ_i` of `P_{n,a,b}` and returns the `ξ_i ≥ 0` in
/// increasing order, zero roots included. Requires `(a, b) ≠ (0, 0)`.
pub fn negated_roots(n: usize, a: &Rational, b: &Rational) -> Result<Vec<f64>> {
    if a.is_zero() && b.is_zero() && n >= 1 {
        return Err(Error::Domain("root ladder needs (a, b) ≠ (0, 0)".into()));
    }
    let mut prev: Option<(IntPoly, Vec<Bracket>)> = None;
    let mut zero_roots = 0;
    for row in RowStream::new(a, b)?.take(n + 1) {
        let (zeros, poly) = strip(&row);
        zero_roots = zeros;
        let d = poly.degree();
        let brackets = match prev.take() {
            _ if d == 0 => Vec::new(),
            Some((pp, pb)) if pb.len() + 1 == d => ladder_step(&poly, &pp, pb)?,
            Some((_, pb)) if pb.len() == d => {
                return Err(Error::Numerical(alloc::format!(
                    "degree did not grow along the ladder at row {}",
                    row.n
                )))
            }
            _ => {
                return Err(Error::Numerical(alloc::format!(
                    "unexpected degree {d} at row {} of the ladder",
                    row.n
                )))
            }
        };
        prev = Some((poly, brackets));
    }
    let (_, brackets) = prev.expect("the ladder has at least one row");
    let mut xi: Vec<f64> = alloc::vec![0.0; zero_roots];
    xi.extend(brackets.iter().map(Bracket::mid));
    Ok(xi)
}

fn ladder_step(p: &IntPoly, prev_poly: &IntPoly, prev: Vec<Bracket>) -> Result<Vec<Bracket>> {
    let bound = p.root_bound();
    let build = |br: &[Bracket]| {
        let mut pts = Vec::with_capacity(br.len() + 2);
        pts.push(0.0);
        pts.extend(br.iter().map(Bracket::mid));
        pts.push(bound);
        pts
    };
    if let Some(found) = isolate(p, &build(&prev), false) {
        return Ok(found);
    }
    let tight: Vec<Bracket> = prev.iter().map(|&br| refine(prev_poly, br, true)).collect();
    isolate(p, &build(&tight), false).ok_or_else(|| {
        Error::Numerical(alloc::format!(
            "interlacing brackets lost a sign change at degree {}",
            p.degree()
        ))
    })
}
