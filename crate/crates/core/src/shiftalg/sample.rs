//! Pointwise evaluation of degree operators at exact rational points and the
//! bookkeeping that makes a finite number of agreeing samples conclusive.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DegreeOp, Shift};
use crate::error::{Error, Result};
use crate::exact::{int, var, Assignment, Poly, Rat, Var};

/// Audits above this degree are reported as exceeding the budget.
pub const MAX_AUDIT_DEGREE: u32 = 64;

/// An operator with all coefficients evaluated at one point.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointOp {
    terms: BTreeMap<Shift, Rat>,
}

impl PointOp {
    pub fn zero() -> PointOp {
        PointOp::default()
    }

    pub fn scalar(c: Rat) -> PointOp {
        let mut out = PointOp::zero();
        out.add((0, 0), c);
        out
    }

    pub fn add(&mut self, s: Shift, c: Rat) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&s) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(s, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &PointOp, sign: i64) -> PointOp {
        let mut out = self.clone();
        let s = Rat::from_int(sign);
        for (k, c) in &other.terms {
            out.add(*k, c * &s);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PointOp {
        let mut out = PointOp::zero();
        for (k, v) in &self.terms {
            out.add(*k, v * c);
        }
        out
    }

    pub fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .next()
            .map(|(s, c)| format!("{}: {c}", super::text::shift_name(*s)))
    }
}

/// An exact point of `(a, b, c, n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub vals: [Rat; 5],
}

const SAMPLE_VARS: [Var; 5] = [Var::A, Var::B, Var::C, Var::N, Var::K];

impl SamplePoint {
    pub fn assignment(&self) -> Assignment {
        let mut at = Assignment::new();
        for (v, x) in SAMPLE_VARS.iter().zip(&self.vals) {
            at.set(*v, x.clone());
        }
        at
    }

    /// The same parameters at `(n, k) + s`.
    pub fn offset(&self, s: Shift) -> SamplePoint {
        let mut vals = self.vals.clone();
        vals[3] = &vals[3] + &Rat::from_int(s.0 as i64);
        vals[4] = &vals[4] + &Rat::from_int(s.1 as i64);
        SamplePoint { vals }
    }
}

fn seed_bytes(seed: u64, label: &str) -> [u8; 32] {
    let mut out = [0u8; 32];
    out[..8].copy_from_slice(&seed.to_le_bytes());
    for (i, b) in label.bytes().enumerate() {
        let slot = 8 + i % 24;
        out[slot] = out[slot].rotate_left(3) ^ b;
    }
    out
}

fn small_rat(rng: &mut ChaCha8Rng, nonzero: bool) -> Rat {
    loop {
        let num: i64 = rng.gen_range(-23..=23);
        let den: i64 = rng.gen_range(1..=11);
        if !nonzero || num != 0 {
            return Rat::ratio(num, den);
        }
    }
}

/// Points `p0 + t v` on a pseudo-random rational line, with `t = 1, 2, ...`.
///
/// The line depends only on `seed` and `label`, so every run with the same
/// configuration visits the same points.
pub struct LineSampler {
    p0: [Rat; 5],
    v: [Rat; 5],
    t: i64,
}

impl LineSampler {
    pub fn new(seed: u64, label: &str) -> LineSampler {
        let mut rng = ChaCha8Rng::from_seed(seed_bytes(seed, label));
        let p0 = std::array::from_fn(|_| small_rat(&mut rng, false));
        let v = std::array::from_fn(|_| small_rat(&mut rng, true));
        LineSampler { p0, v, t: 0 }
    }

    /// The line as polynomials in `tau`, for degree audits.
    pub fn parametrization(&self) -> Vec<(Var, Poly)> {
        SAMPLE_VARS
            .iter()
            .zip(self.p0.iter().zip(&self.v))
            .map(|(x, (p, d))| {
                (*x, &Poly::constant(p.clone()) + &var(Var::Tau).scale(d))
            })
            .collect()
    }
}

impl Iterator for LineSampler {
    type Item = SamplePoint;
    fn next(&mut self) -> Option<SamplePoint> {
        self.t += 1;
        let t = Rat::from_int(self.t);
        let vals = std::array::from_fn(|i| &self.p0[i] + &(&self.v[i] * &t));
        Some(SamplePoint { vals })
    }
}

/// Iterate over accepted points until `target` of them pass `check`.
///
/// Points where `check` reports a vanishing denominator are rejected. The
/// run is abandoned with [`Error::DegenerateSampleBudgetExceeded`] once
/// rejections exceed nine times the target. Returns the first failing point
/// and its message, if any.
pub fn sample_points(
    seed: u64,
    label: &str,
    target: usize,
    mut check: impl FnMut(&SamplePoint) -> Result<Option<String>>,
) -> Result<Option<String>> {
    let mut accepted = 0;
    let mut rejected = 0;
    for p in LineSampler::new(seed, label) {
        if accepted >= target {
            break;
        }
        match check(&p) {
            Ok(None) => accepted += 1,
            Ok(Some(msg)) => {
                let at: Vec<String> = p.vals.iter().map(|v| v.to_string()).collect();
                return Ok(Some(format!(
                    "at (a,b,c,n,k)=({}): {msg}",
                    at.join(", ")
                )));
            }
            Err(Error::DenominatorVanishes) => {
                rejected += 1;
                if rejected > 9 * target.max(1) {
                    return Err(Error::DegenerateSampleBudgetExceeded(
                        rejected,
                        accepted + rejected,
                    ));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// A bound on the degree of the numerators of an operator over a shared
/// denominator.
///
/// `den` is a common multiple of every coefficient's denominator, as a list
/// of factors, and `num` bounds the degree of each coefficient's numerator
/// once it is written over `den`. A residual whose bound is `num = D`
/// restricts to a line as a rational function whose numerator has degree at
/// most `D`, so agreement at `D + 1` points of the line where `den` does not
/// vanish proves the residual vanishes on the line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DegreeBound {
    pub num: u32,
    pub den: u32,
}

impl DegreeBound {
    pub fn max(self, other: DegreeBound) -> DegreeBound {
        DegreeBound {
            num: self.num.max(other.num),
            den: self.den.max(other.den),
        }
    }
}

/// Factor-aware degree audit of an operator expression.
#[derive(Clone, Debug, Default)]
pub struct Audit {
    den: Vec<(Poly, u32)>,
    num: u32,
}

fn den_degree(den: &[(Poly, u32)]) -> u32 {
    den.iter().map(|(f, e)| f.degree().unwrap_or(0) * e).sum()
}

fn lcm(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    let mut out = a.to_vec();
    for (f, e) in b {
        match out.iter_mut().find(|(g, _)| g == f) {
            Some((_, k)) => *k = (*k).max(*e),
            None => out.push((f.clone(), *e)),
        }
    }
    out
}

fn product(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    let mut out = a.to_vec();
    for (f, e) in b {
        match out.iter_mut().find(|(g, _)| g == f) {
            Some((_, k)) => *k += *e,
            None => out.push((f.clone(), *e)),
        }
    }
    out
}

impl Audit {
    /// Audit of a polynomial scalar.
    pub fn scalar(p: &Poly) -> Audit {
        Audit {
            den: Vec::new(),
            num: p.degree().unwrap_or(0),
        }
    }

    pub fn of(op: &DegreeOp) -> Audit {
        let mut den: Vec<(Poly, u32)> = Vec::new();
        for (_, c) in op.terms() {
            den = lcm(&den, c.den_factors());
        }
        let total = den_degree(&den);
        let num = op
            .terms()
            .map(|(_, c)| {
                let (n, d) = c.degrees();
                n + total - d
            })
            .max()
            .unwrap_or(0);
        Audit { den, num }
    }

    fn shifted(&self, s: Shift) -> Audit {
        if s == (0, 0) {
            return self.clone();
        }
        let map = [
            (Var::N, &var(Var::N) + &int(s.0 as i64)),
            (Var::K, &var(Var::K) + &int(s.1 as i64)),
        ];
        let den = self
            .den
            .iter()
            .map(|(f, e)| (f.subst(&map).primitive_part().1, *e))
            .collect();
        Audit {
            den,
            num: self.num,
        }
    }

    pub fn sum(&self, other: &Audit) -> Audit {
        let den = lcm(&self.den, &other.den);
        let total = den_degree(&den);
        let lift = |a: &Audit| a.num + total - den_degree(&a.den);
        Audit {
            num: lift(self).max(lift(other)),
            den,
        }
    }

    /// Audit of `A o B`, where `b_shifts` is the support of `B`.
    pub fn compose(&self, other: &Audit, b_shifts: &[Shift]) -> Audit {
        let mut out: Option<Audit> = None;
        for s in b_shifts {
            let a = self.shifted(*s);
            let term = Audit {
                den: product(&a.den, &other.den),
                num: a.num + other.num,
            };
            out = Some(match out {
                Some(acc) => acc.sum(&term),
                None => term,
            });
        }
        out.unwrap_or_default()
    }

    pub fn bound(&self) -> DegreeBound {
        DegreeBound {
            num: self.num,
            den: den_degree(&self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shiftalg::dbuiltin;

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<_> = LineSampler::new(7, "rel").take(3).collect();
        let b: Vec<_> = LineSampler::new(7, "rel").take(3).collect();
        let c: Vec<_> = LineSampler::new(8, "rel").take(3).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejection_budget() {
        let r = sample_points(1, "x", 5, |_| Err(Error::DenominatorVanishes));
        assert!(matches!(r, Err(Error::DegenerateSampleBudgetExceeded(46, 46))));
        let mut seen = 0;
        let ok = sample_points(1, "x", 5, |_| {
            seen += 1;
            Ok(None)
        });
        assert_eq!(ok, Ok(None));
        assert_eq!(seen, 5);
    }

    #[test]
    fn audit_bounds_actual_degrees() {
        let x = dbuiltin("X1h").unwrap();
        let l = dbuiltin("Lh").unwrap();
        let xs: Vec<Shift> = x.terms().map(|(s, _)| *s).collect();
        let ls: Vec<Shift> = l.terms().map(|(s, _)| *s).collect();
        let ax = Audit::of(&x);
        let al = Audit::of(&l);
        let br = al.compose(&ax, &xs).sum(&ax.compose(&al, &ls));
        let b = br.bound();
        for (_, c) in l.bracket(&x).terms() {
            let (n, d) = c.degrees();
            assert!(n as i64 - d as i64 <= b.num as i64 - b.den as i64);
        }
        assert!(b.num <= MAX_AUDIT_DEGREE);
    }
}
