//! Two-variable Jacobi polynomials on the triangle `x, y >= 0, x + y <= 1`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::{factorial, int, parse_frac, pochhammer, var, Frac, Mono, Poly, Rat, Var};
use crate::jacobi1::jacobi_poly;
use crate::report::{Mode, Representation, VerificationReport};
use crate::shiftalg::{dbuiltin, in_cone, Jacobi2Provider};
use crate::weyl::{builtin, DiffOp};

/// `J_{n,k}^(a,b,c)(x, y)` with symbolic parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BiJacobi {
    pub n: i64,
    pub k: i64,
    pub poly: Poly,
}

/// Product form `J_{n-k}^(a, b+c+2k+1)(x) (1-x)^k J_k^(b,c)(y / (1-x))`,
/// expanded. Indices outside `0 <= k <= n` give zero.
pub fn bi_jacobi(n: i64, k: i64) -> BiJacobi {
    BiJacobi {
        n,
        k,
        poly: expand(n, k),
    }
}

fn expand(n: i64, k: i64) -> Poly {
    if !in_cone(n, k) {
        return Poly::zero();
    }
    let (a, b, c) = (var(Var::A), var(Var::B), var(Var::C));
    let beta = &(&b + &c) + &int(2 * k + 1);
    let outer = jacobi_poly(n - k, &a, &beta);
    let inner = jacobi_poly(k, &b, &c).coefficients_in(Var::X);
    let one_minus_x = &int(1) - &var(Var::X);
    let mut tail = Poly::zero();
    for (j, q) in inner {
        let yj = q.mul_mono(Mono::pow_var(Var::Y, j), &Rat::one());
        tail += &(&yj * &one_minus_x.pow(k as u32 - j));
    }
    &outer * &tail
}

/// All `J_{n,k}` with `n <= n_max`, built once and shared read-only.
#[derive(Clone, Debug)]
pub struct Family {
    rows: Vec<Vec<Poly>>,
}

impl Family {
    pub fn new(n_max: i64) -> Family {
        let rows = (0..=n_max.max(0))
            .map(|n| (0..=n).map(|k| expand(n, k)).collect())
            .collect();
        Family { rows }
    }

    pub fn n_max(&self) -> i64 {
        self.rows.len() as i64 - 1
    }
}

impl Jacobi2Provider for Family {
    fn poly(&self, n: i64, k: i64) -> Poly {
        if !in_cone(n, k) {
            return Poly::zero();
        }
        match self.rows.get(n as usize) {
            Some(row) => row[k as usize].clone(),
            None => expand(n, k),
        }
    }
}

/// The normalized Dirichlet moment of `x^m1 y^m2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleMoment {
    pub m1: u32,
    pub m2: u32,
    pub value: Frac,
}

fn s_param() -> Poly {
    &(&(&var(Var::A) + &var(Var::B)) + &var(Var::C)) + &int(3)
}

/// `(a+1)_m1 (b+1)_m2 / (a+b+c+3)_(m1+m2)`.
pub fn triangle_moment(m1: u32, m2: u32) -> TriangleMoment {
    let num = &pochhammer(&(&var(Var::A) + &int(1)), m1)
        * &pochhammer(&(&var(Var::B) + &int(1)), m2);
    let s = s_param();
    let factors = (0..m1 + m2).map(|i| (&s + &int(i as i64), 1)).collect();
    TriangleMoment {
        m1,
        m2,
        value: Frac::with_factors(num, factors).expect("nonzero factors"),
    }
}

/// Normalized triangle inner product, `inner(1, 1) = 1`.
///
/// The product `p q` is expanded and every monomial is weighted by its
/// moment over the common denominator `(a+b+c+3)_N`.
pub fn inner(p: &Poly, q: &Poly) -> Frac {
    let pq = p * q;
    let parts = pq.split_by(&[Var::X, Var::Y]);
    let top = parts.keys().map(|m| m.degree()).max().unwrap_or(0);
    let s = s_param();
    let a1 = &var(Var::A) + &int(1);
    let b1 = &var(Var::B) + &int(1);
    let mut num = Poly::zero();
    for (m, c) in parts {
        let (u, v) = (m.exp(Var::X), m.exp(Var::Y));
        let w = &(&pochhammer(&a1, u) * &pochhammer(&b1, v))
            * &pochhammer(&(&s + &int((u + v) as i64)), top - u - v);
        num += &(&c * &w);
    }
    let factors = (0..top).map(|i| (&s + &int(i as i64), 1)).collect();
    Frac::with_factors(num, factors).expect("nonzero factors")
}

/// `h_{n,k}` divided by the weight integral, with every Gamma ratio written
/// as a Pochhammer symbol:
///
/// `(b+c+2k+2)_(n-k) (b+c+k+1)_k (a+1)_(n-k) (b+1)_k (c+1)_k (a+b+c+2)`
/// over `(a+b+c+2n+2) (n-k)! k! (a+b+c+2)_(n+k)`.
pub fn norm_h(n: i64, k: i64) -> Frac {
    assert!(in_cone(n, k), "norm_h needs 0 <= k <= n");
    let (n, k) = (n as u32, k as u32);
    let (a, b, c) = (var(Var::A), var(Var::B), var(Var::C));
    let bc = &b + &c;
    let abc2 = &(&a + &bc) + &int(2);
    let num = [
        pochhammer(&(&bc + &int(2 * k as i64 + 2)), n - k),
        pochhammer(&(&bc + &int(k as i64 + 1)), k),
        pochhammer(&(&a + &int(1)), n - k),
        pochhammer(&(&b + &int(1)), k),
        pochhammer(&(&c + &int(1)), k),
        abc2.clone(),
    ]
    .iter()
    .fold(Poly::one(), |acc, f| &acc * f);
    let scale = (&factorial(n - k) * &factorial(k)).recip().expect("nonzero");
    let mut factors = vec![(&abc2 + &int(2 * n as i64), 1)];
    factors.extend((0..n + k).map(|i| (&abc2 + &int(i as i64), 1)));
    Frac::with_factors(num.scale(&scale), factors).expect("nonzero factors")
}

/// Gram matrices through the product structure of the family.
///
/// Internally the parameter `c` is replaced by `sigma = b + c` (stored in
/// the slot of `c`). In these coordinates the outer univariate factor only
/// involves `a, sigma` and the inner one only `b, sigma`, so every moment
/// sum splits into products of two bivariate polynomials.
mod gram {
    use super::*;

    #[cfg(test)]
    pub(super) fn to_sigma(p: &Poly) -> Poly {
        p.subst(&[(Var::C, &var(Var::C) - &var(Var::B))])
    }

    pub(super) fn from_sigma(f: &Frac) -> Frac {
        f.subst(&[(Var::C, &var(Var::B) + &var(Var::C))])
            .expect("a linear change of coordinates keeps factors nonzero")
    }

    /// `a + sigma + 3 + r`.
    fn s_plus(r: u32) -> Poly {
        &(&var(Var::A) + &var(Var::C)) + &int(3 + r as i64)
    }

    /// `J_{n,k} = sum_j q_j(b, sigma) y^j C_j(x; a, sigma)`.
    pub(super) struct Factored {
        pub n: u32,
        pub q: Vec<Poly>,
        pub cx: Vec<Vec<Poly>>,
    }

    impl Factored {
        pub fn new(n: u32, k: u32) -> Factored {
            let (a, b, sigma) = (var(Var::A), var(Var::B), var(Var::C));
            let outer = jacobi_poly(
                (n - k) as i64,
                &a,
                &(&sigma + &int(2 * k as i64 + 1)),
            );
            let inner = jacobi_poly(k as i64, &b, &(&sigma - &b)).coefficients_in(Var::X);
            let one_minus_x = &int(1) - &var(Var::X);
            let mut q = Vec::new();
            let mut cx = Vec::new();
            for j in 0..=k {
                q.push(inner.get(&j).cloned().unwrap_or_default());
                let c = (&outer * &one_minus_x.pow(k - j)).coefficients_in(Var::X);
                cx.push((0..=n - j).map(|u| c.get(&u).cloned().unwrap_or_default()).collect());
            }
            Factored { n, q, cx }
        }

        /// The polynomial itself, in sigma coordinates.
        #[cfg(test)]
        pub fn expand(&self) -> Poly {
            let mut out = Poly::zero();
            for (j, (qj, cj)) in self.q.iter().zip(&self.cx).enumerate() {
                for (u, c) in cj.iter().enumerate() {
                    let m = Mono::from_exponents(&[(Var::X, u as u32), (Var::Y, j as u32)]);
                    out += &(qj * c).mul_mono(m, &Rat::one());
                }
            }
            out
        }
    }

    /// The moment `<J, x^i y^l>` as separable pieces over `(s)_T`,
    /// `T = n + i + l`: numerator `sum_j left_j(b, sigma) right_j(a, sigma)`.
    pub(super) struct Moment {
        pub t: u32,
        pub pieces: Vec<(Poly, Poly)>,
    }

    impl Moment {
        pub fn numerator(&self) -> Poly {
            self.pieces.iter().map(|(l, r)| l * r).sum()
        }
    }

    pub(super) fn moment(p: &Factored, i: u32, l: u32) -> Moment {
        let a1 = &var(Var::A) + &int(1);
        let b1 = &var(Var::B) + &int(1);
        let t = p.n + i + l;
        let mut pieces = Vec::new();
        for (j, (qj, cj)) in p.q.iter().zip(&p.cx).enumerate() {
            if qj.is_zero() {
                continue;
            }
            let j = j as u32;
            let t0 = i + j + l;
            // Horner over u for sum_u C_u (a+1)_(u+i) prod_{r=u+t0}^{T-1} (s+r).
            let mut acc = Poly::zero();
            for (u, c) in cj.iter().enumerate() {
                let u = u as u32;
                if u > 0 {
                    acc = &acc * &s_plus(t0 + u - 1);
                }
                if !c.is_zero() {
                    acc += &(c * &pochhammer(&a1, u + i));
                }
            }
            if !acc.is_zero() {
                pieces.push((qj * &pochhammer(&b1, j + l), acc));
            }
        }
        Moment { t, pieces }
    }

    pub(super) fn den(t: u32) -> Vec<(Poly, u32)> {
        (0..t).map(|r| (s_plus(r), 1)).collect()
    }
}

/// Gram matrix over the basis `(0,0), (1,0), (1,1), (2,0), ...`, or the
/// first failing moment check.
///
/// Each entry `<J_p, J_q>` with `deg q <= deg p` is summed as
/// `sum_m q_m <J_p, x^m>` over the monomials of `J_q`. The moments of `J_p`
/// against every monomial of lower degree are computed and checked to
/// vanish first; they then contribute nothing to any entry.
pub fn gram_matrix(n_max: i64) -> std::result::Result<Vec<Vec<Frac>>, String> {
    use gram::*;
    let idx: Vec<(u32, u32)> = (0..=n_max.max(0) as u32)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .collect();
    let fams: Vec<Factored> = idx.iter().map(|&(n, k)| Factored::new(n, k)).collect();
    let size = idx.len();
    let mut g = vec![vec![Frac::zero(); size]; size];
    for (pi, p) in fams.iter().enumerate() {
        let n = p.n;
        for d in 0..n {
            for i in 0..=d {
                let m = moment(p, i, d - i);
                let num = m.numerator();
                if !num.is_zero() {
                    let (pn, pk) = idx[pi];
                    return Err(format!(
                        "<J_({pn},{pk}), x^{i} y^{}> = {}",
                        d - i,
                        from_sigma(&Frac::with_factors(num, den(m.t)).expect("nonzero"))
                    ));
                }
            }
        }
        let top: Vec<Moment> = (0..=n).map(|l| moment(p, n - l, l)).collect();
        for (qi, q) in fams.iter().enumerate().take(pi + 1) {
            if q.n != n {
                continue;
            }
            // Only the degree-n part of J_q meets a non-zero moment:
            // the x^(n-l) y^l coefficient is q_l times the top x-coefficient.
            let mut num = Poly::zero();
            for (l, (ql, cl)) in q.q.iter().zip(&q.cx).enumerate() {
                let lead = &cl[n as usize - l];
                if ql.is_zero() || lead.is_zero() {
                    continue;
                }
                for (left, right) in &top[l].pieces {
                    num += &(&(ql * left) * &(lead * right));
                }
            }
            let entry = from_sigma(&Frac::with_factors(num, den(2 * n)).expect("nonzero"));
            g[pi][qi] = entry.clone();
            g[qi][pi] = entry;
        }
    }
    Ok(g)
}

/// Gram matrix orthogonality and the diagonal against [`norm_h`].
pub fn verify_gram(n_max: i64) -> VerificationReport {
    let witness = match gram_matrix(n_max) {
        Err(w) => Some(w),
        Ok(g) => {
            let idx: Vec<(i64, i64)> = (0..=n_max)
                .flat_map(|n| (0..=n).map(move |k| (n, k)))
                .collect();
            let mut w = None;
            'outer: for (i, row) in g.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let ok = if i == j {
                        e.frac_eq(&norm_h(idx[i].0, idx[i].1))
                    } else {
                        e.is_zero()
                    };
                    if !ok {
                        w = Some(format!(
                            "entry {:?},{:?} = {}",
                            idx[i],
                            idx[j],
                            e.reduce()
                        ));
                        break 'outer;
                    }
                }
            }
            w
        }
    };
    VerificationReport::new("jacobi2/gram", Representation::Variable, Mode::Symbolic, witness)
}

fn report(name: &str, witness: Option<String>) -> VerificationReport {
    VerificationReport::new(
        format!("jacobi2/{name}"),
        Representation::Variable,
        Mode::Symbolic,
        witness,
    )
}

fn cone(n_max: i64) -> impl Iterator<Item = (i64, i64)> {
    (0..=n_max).flat_map(|n| (0..=n).map(move |k| (n, k)))
}

/// `L J = -n(n+a+b+c+2) J` and `L1 J = -k(k+b+c+1) J`.
pub fn verify_eigen(n_max: i64) -> VerificationReport {
    let l = builtin("L").expect("builtin");
    let l1 = builtin("L1").expect("builtin");
    let fam = Family::new(n_max);
    let mut witness = None;
    for (n, k) in cone(n_max) {
        let j = fam.poly(n, k);
        let ev = |src: String| &parse_frac(&src).expect("well formed").as_poly().cloned().expect("polynomial") * &j;
        let r1 = &l.apply(&j) - &ev(format!("-{n}*({n}+a+b+c+2)"));
        let r2 = &l1.apply(&j) - &ev(format!("-{k}*({k}+b+c+1)"));
        if let Some((which, r)) = [("L", r1), ("L1", r2)].into_iter().find(|(_, r)| !r.is_zero()) {
            witness = Some(format!("{which} at (n,k)=({n},{k}): residual {r}"));
            break;
        }
    }
    report("eigen", witness)
}

/// Which three-term or nine-term recurrence to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// `x J_{n,k} = X1h J_{n,k}`.
    Rr1,
    /// `(1-x-y) J_{n,k} = X3h J_{n,k}`.
    Rr2,
}

/// Check a recurrence on the whole cone up to `n_max`, boundary included.
pub fn verify_recurrence(which: Recurrence, n_max: i64) -> Result<VerificationReport> {
    let (name, op, mult) = match which {
        Recurrence::Rr1 => ("rr1", dbuiltin("X1h")?, var(Var::X)),
        Recurrence::Rr2 => (
            "rr2",
            dbuiltin("X3h")?,
            &(&int(1) - &var(Var::X)) - &var(Var::Y),
        ),
    };
    let fam = Family::new(n_max + 1);
    let mut witness = None;
    for (n, k) in cone(n_max) {
        let lhs = Frac::from_poly(&mult * &fam.poly(n, k));
        let r = &lhs - &op.dapply(n, k, &fam)?;
        if !r.is_zero() {
            witness = Some(format!("boundary or interior failure at (n,k)=({n},{k}): residual {}", r.reduce()));
            break;
        }
    }
    Ok(report(name, witness))
}

/// `(coefficient, dk, (da, db, dc))`: a term `coef J_{n,k+dk}^(a+da,b+db,c+dc)`.
type ActionRow = (&'static str, i64, (i64, i64, i64));

/// The action of `s_i` and `s_i^*` on the family as combinations of
/// neighbouring members of parameter-shifted families.
pub const S_ACTIONS: &[(&str, &[ActionRow])] = &[
    ("s1", &[("c+k", 0, (0, 1, -1))]),
    ("s1s", &[("-(b+k)", 0, (0, -1, 1))]),
    (
        "s2",
        &[
            ("(n-k+1)*(b+k)/(b+c+2*k+1)", -1, (-1, 0, 1)),
            ("(a+n-k)*(b+c+k+1)/(b+c+2*k+1)", 0, (-1, 0, 1)),
        ],
    ),
    (
        "s2s",
        &[
            ("-(k+1)*(a+b+c+n+k+2)/(b+c+2*k+1)", 1, (1, 0, -1)),
            ("-(c+k)*(b+c+k+n+1)/(b+c+2*k+1)", 0, (1, 0, -1)),
        ],
    ),
    (
        "s3",
        &[
            ("-(k+1)*(a+b+c+n+k+2)/(b+c+2*k+1)", 1, (1, -1, 0)),
            ("(b+k)*(b+c+k+n+1)/(b+c+2*k+1)", 0, (1, -1, 0)),
        ],
    ),
    (
        "s3s",
        &[
            ("(n-k+1)*(c+k)/(b+c+2*k+1)", -1, (-1, 1, 0)),
            ("-(a+n-k)*(b+c+k+1)/(b+c+2*k+1)", 0, (-1, 1, 0)),
        ],
    ),
];

type Shifted = (i64, (i64, i64, i64));

fn param_map(d: (i64, i64, i64)) -> [(Var, Poly); 3] {
    [
        (Var::A, &var(Var::A) + &int(d.0)),
        (Var::B, &var(Var::B) + &int(d.1)),
        (Var::C, &var(Var::C) + &int(d.2)),
    ]
}

/// Constant part of each first-order operator.
const S_CONSTANTS: &[(&str, &str)] = &[
    ("s1", "c"),
    ("s1s", "-b"),
    ("s2", "a"),
    ("s2s", "-c"),
    ("s3", "b"),
    ("s3s", "-a"),
];

/// Apply `s_i` or `s_i^*`, with the parameters `a, b, c` of the starting
/// family, to a combination of shifted-family members.
///
/// The tabulated formula for a member with parameters `(a,b,c) + d` belongs
/// to the operator with those parameters, which differs from ours by a
/// multiple of the identity.
fn act(name: &str, n: i64, terms: &BTreeMap<Shifted, Frac>) -> Result<BTreeMap<Shifted, Frac>> {
    let rows = rows_of(name);
    let base = S_CONSTANTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| parse_frac(c))
        .expect("known action")?;
    let mut out: BTreeMap<Shifted, Frac> = BTreeMap::new();
    let mut push = |key: Shifted, c: Frac| {
        let e = out.entry(key).or_default();
        *e = &*e + &c;
    };
    for (&(k, d), coef) in terms {
        let mut map = param_map(d).to_vec();
        push((k, d), coef * &(&base - &base.subst(&map)?));
        map.push((Var::N, int(n)));
        map.push((Var::K, int(k)));
        for (src, dk, dd) in rows {
            let k2 = k + dk;
            if !in_cone(n, k2) {
                continue;
            }
            let c = parse_frac(src)?.subst(&map)?;
            push((k2, (d.0 + dd.0, d.1 + dd.1, d.2 + dd.2)), coef * &c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn add_into(acc: &mut BTreeMap<Shifted, Frac>, terms: &BTreeMap<Shifted, Frac>, sign: i64) {
    for (key, c) in terms {
        let e = acc.entry(*key).or_default();
        *e = &*e + &c.scale(&Rat::from_int(sign));
    }
}

fn realize(fam: &Family, n: i64, terms: &BTreeMap<Shifted, Frac>) -> Frac {
    let mut out = Frac::zero();
    for (&(k, d), coef) in terms {
        let j = fam.poly(n, k).subst(&param_map(d));
        out = &out + &coef.mul_poly(&j);
    }
    out
}

fn rows_of(name: &str) -> &'static [ActionRow] {
    S_ACTIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, r)| *r)
        .expect("known action")
}

fn unit(k: i64) -> BTreeMap<Shifted, Frac> {
    BTreeMap::from([((k, (0, 0, 0)), Frac::one())])
}

/// Each action formula against the differential operator applied directly.
pub fn verify_sactions(n_max: i64) -> Result<VerificationReport> {
    let fam = Family::new(n_max);
    for (name, _) in S_ACTIONS {
        let op = builtin(name)?;
        for (n, k) in cone(n_max) {
            let lhs = Frac::from_poly(op.apply(&fam.poly(n, k)));
            let rhs = realize(&fam, n, &act(name, n, &unit(k))?);
            let r = &lhs - &rhs;
            if !r.is_zero() {
                return Ok(report(
                    "s-actions",
                    Some(format!("{name} at (n,k)=({n},{k}): residual {}", r.reduce())),
                ));
            }
        }
    }
    Ok(report("s-actions", None))
}

/// Both factorizations of `L` through the six operators, evaluated on the
/// family with the action formulas alone:
/// `sum s_i^* s_i - sum s_i` and `sum s_i s_i^* + sum s_i^*`, plus
/// `a+b+c+ab+ac+bc`, give `-n(n+a+b+c+2) J_{n,k}`.
pub fn verify_factorized_laplacian(n_max: i64) -> Result<VerificationReport> {
    let fam = Family::new(n_max);
    let constant = parse_frac("a+b+c+a*b+a*c+b*c")?;
    for (n, k) in cone(n_max) {
        let start = unit(k);
        for (form, sign) in [("first", -1), ("second", 1)] {
            let mut acc = BTreeMap::new();
            for (s, t) in [("s1", "s1s"), ("s2", "s2s"), ("s3", "s3s")] {
                let (inner, outer) = if sign < 0 { (s, t) } else { (t, s) };
                let once = act(inner, n, &start)?;
                add_into(&mut acc, &act(outer, n, &once)?, 1);
                add_into(&mut acc, &once, sign);
            }
            let lambda = &parse_frac(&format!("-{n}*({n}+a+b+c+2)"))? - &constant;
            let r = &realize(&fam, n, &acc) - &lambda.mul_poly(&fam.poly(n, k));
            if !r.is_zero() {
                return Ok(report(
                    "factorized-laplacian",
                    Some(format!("{form} form at (n,k)=({n},{k}): residual {}", r.reduce())),
                ));
            }
        }
    }
    Ok(report("factorized-laplacian", None))
}

/// `(s2* s2 + s3* s3 - s2 - s3) J_{n,k}` through the action formulas equals
/// `(-n(n+a+b+c+2) + k(k+b+c+1) + c(b+1) - (a+b+c+ab+ac+bc)) J_{n,k}`.
pub fn verify_scalar_combination(n_max: i64) -> Result<VerificationReport> {
    let fam = Family::new(n_max);
    for (n, k) in cone(n_max) {
        let start = unit(k);
        let mut acc = BTreeMap::new();
        for (s, t) in [("s2", "s2s"), ("s3", "s3s")] {
            let once = act(s, n, &start)?;
            add_into(&mut acc, &act(t, n, &once)?, 1);
            add_into(&mut acc, &once, -1);
        }
        let lambda = parse_frac(&format!(
            "-{n}*({n}+a+b+c+2) + {k}*({k}+b+c+1) + c*(b+1) - (a+b+c+a*b+a*c+b*c)"
        ))?;
        let r = &realize(&fam, n, &acc) - &lambda.mul_poly(&fam.poly(n, k));
        if !r.is_zero() {
            return Ok(report(
                "scalar-combination",
                Some(format!("(n,k)=({n},{k}): residual {}", r.reduce())),
            ));
        }
    }
    Ok(report("scalar-combination", None))
}

/// Operator identities among the first-order operators: each `L_i` as
/// `(s_i^* - 1) s_i + const` and `(s_i + 1) s_i^* + const`, and `L` through
/// all six in both orders.
pub fn verify_operator_factorizations() -> Result<VerificationReport> {
    let op = |name: &str| builtin(name);
    let scalar = |src: &str| -> Result<DiffOp> { Ok(DiffOp::mult(crate::exact::parse_poly(src)?)) };
    let one = DiffOp::identity();
    let cases = [
        ("L1", "s1", "s1s", "c*(b+1)", "b*(c+1)"),
        ("L2", "s2", "s2s", "a*(c+1)", "c*(a+1)"),
        ("L3", "s3", "s3s", "b*(a+1)", "a*(b+1)"),
    ];
    for (l, s, t, k1, k2) in cases {
        let first = &(&op(t)? - &one).compose(&op(s)?) + &scalar(k1)?;
        let second = &(&op(s)? + &one).compose(&op(t)?) + &scalar(k2)?;
        for (form, value) in [("first", first), ("second", second)] {
            if let Some(w) = (&value - &op(l)?).first_term() {
                return Ok(report("factorizations", Some(format!("{l}, {form} form: {w}"))));
            }
        }
    }
    let constant = scalar("a+b+c+a*b+a*c+b*c")?;
    let mut first = constant.clone();
    let mut second = constant;
    for (s, t) in [("s1", "s1s"), ("s2", "s2s"), ("s3", "s3s")] {
        first = &(&first + &op(t)?.compose(&op(s)?)) - &op(s)?;
        second = &(&second + &op(s)?.compose(&op(t)?)) + &op(t)?;
    }
    for (form, value) in [("first", first), ("second", second)] {
        if let Some(w) = (&value - &op("L")?).first_term() {
            return Ok(report("factorizations", Some(format!("L, {form} form: {w}"))));
        }
    }
    Ok(report("factorizations", None))
}

/// The conjugation identities for `i = 1, 2, 3` on monomials up to
/// `max_degree`.
pub fn verify_conjugations(max_degree: u32) -> Result<VerificationReport> {
    for i in 1..=3 {
        if !crate::weyl::conjugate_check(i, max_degree)? {
            return Ok(report("conjugations", Some(format!("s{i}"))));
        }
    }
    Ok(report("conjugations", None))
}

/// Distinct indices have distinct joint eigenvalue pairs as polynomials.
pub fn verify_separation(n_max: i64) -> VerificationReport {
    let pair = |n: i64, k: i64| {
        (
            parse_frac(&format!("-{n}*({n}+a+b+c+2)")).expect("well formed"),
            parse_frac(&format!("-{k}*({k}+b+c+1)")).expect("well formed"),
        )
    };
    let idx: Vec<(i64, i64)> = cone(n_max).collect();
    let mut witness = None;
    for (i, p) in idx.iter().enumerate() {
        for q in &idx[..i] {
            let (x, y) = (pair(p.0, p.1), pair(q.0, q.1));
            if x.0.frac_eq(&y.0) && x.1.frac_eq(&y.1) {
                witness = Some(format!("{p:?} and {q:?} share eigenvalues"));
            }
        }
    }
    report("separation", witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    #[test]
    fn low_indices() {
        assert_eq!(bi_jacobi(0, 0).poly, Poly::one());
        assert_eq!(bi_jacobi(1, 0).poly, parse_poly("(a+1) - (a+b+c+3)*x").unwrap());
        assert_eq!(
            bi_jacobi(1, 1).poly,
            parse_poly("(b+1)*(1-x) - (b+c+2)*y").unwrap()
        );
        assert!(bi_jacobi(1, 2).poly.is_zero());
        assert!(bi_jacobi(-1, 0).poly.is_zero());
    }

    #[test]
    fn total_degree_is_n() {
        for (n, k) in cone(5) {
            let p = bi_jacobi(n, k).poly;
            assert_eq!(p.degree_in(&[Var::X, Var::Y]), Some(n as u32), "({n},{k})");
        }
    }

    #[test]
    fn factored_form_matches_expansion() {
        for (n, k) in cone(4) {
            let f = gram::Factored::new(n as u32, k as u32);
            assert_eq!(f.expand(), gram::to_sigma(&bi_jacobi(n, k).poly), "({n},{k})");
        }
    }

    #[test]
    fn inner_product_examples() {
        let one = Poly::one();
        assert_eq!(inner(&one, &one), Frac::one());
        assert!(inner(&bi_jacobi(1, 0).poly, &one).is_zero());
        assert_eq!(
            inner(&var(Var::X), &one),
            parse_frac("(a+1)/(a+b+c+3)").unwrap()
        );
        assert_eq!(triangle_moment(1, 0).value, parse_frac("(a+1)/(a+b+c+3)").unwrap());
    }

    #[test]
    fn norms_against_direct_inner_products() {
        assert_eq!(norm_h(0, 0), Frac::one());
        for (n, k) in [(1, 0), (1, 1), (2, 1)] {
            let j = bi_jacobi(n, k).poly;
            assert!(inner(&j, &j).frac_eq(&norm_h(n, k)), "({n},{k})");
        }
    }

    #[test]
    fn fast_gram_agrees_with_direct_sums() {
        let g = gram_matrix(2).unwrap();
        let idx: Vec<_> = cone(2).collect();
        for (i, p) in idx.iter().enumerate() {
            for (j, q) in idx.iter().enumerate() {
                let direct = inner(&bi_jacobi(p.0, p.1).poly, &bi_jacobi(q.0, q.1).poly);
                assert!(g[i][j].frac_eq(&direct), "{p:?} {q:?}");
            }
        }
    }

    #[test]
    fn gram_up_to_four() {
        let r = verify_gram(4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn eigen_equations() {
        assert!(verify_eigen(0).passed());
        let r = verify_eigen(4);
        assert!(r.passed(), "{r}");
        let l1 = builtin("L1").unwrap();
        let j = bi_jacobi(1, 1).poly;
        assert_eq!(l1.apply(&j), &j * &parse_poly("-(b+c+2)").unwrap());
    }

    #[test]
    fn recurrences() {
        let fam = Family::new(1);
        let x1 = dbuiltin("X1h").unwrap();
        assert!(x1.dapply(0, 0, &fam).unwrap().frac_eq(&Frac::from_poly(var(Var::X))));
        let x3 = dbuiltin("X3h").unwrap();
        let z = parse_poly("1-x-y").unwrap();
        assert!(x3.dapply(0, 0, &fam).unwrap().frac_eq(&Frac::from_poly(z)));
        for w in [Recurrence::Rr1, Recurrence::Rr2] {
            let r = verify_recurrence(w, 3).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn s_actions_and_factorized_laplacian() {
        let r = verify_sactions(3).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_factorized_laplacian(3).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_scalar_combination(4).unwrap();
        assert!(r.passed(), "{r}");
        assert!(verify_separation(6).passed());
    }

    #[test]
    fn s1_on_constant() {
        let fam = Family::new(0);
        let t = act("s1", 0, &unit(0)).unwrap();
        assert!(realize(&fam, 0, &t).frac_eq(&Frac::from_poly(var(Var::C))));
    }
}
