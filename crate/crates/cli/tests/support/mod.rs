//! Oracles for the acceptance run. They share no code paths with the
//! library beyond `Poly`/`Rat` as data carriers.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rug::Integer;
use splitrolle::{Poly, Rat};

/// Dense integer polynomial, ascending, trimmed.
type IPoly = Vec<Integer>;

fn to_integer(n: &BigInt) -> Integer {
    Integer::from_str_radix(&n.to_str_radix(16), 16).unwrap()
}

fn trim(mut p: IPoly) -> IPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn isquare(a: &IPoly) -> IPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); 2 * a.len() - 1];
    for (i, x) in a.iter().enumerate() {
        out[2 * i] += x.square_ref();
        for (j, y) in a.iter().enumerate().skip(i + 1) {
            let t = Integer::from(x * y) << 1u32;
            out[i + j] += t;
        }
    }
    trim(out)
}

fn iadd(mut a: IPoly, b: IPoly) -> IPoly {
    if a.len() < b.len() {
        a.resize(b.len(), Integer::new());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    trim(a)
}

/// Remainder modulo a monic integer polynomial; stays in Z[y].
fn irem(mut a: IPoly, m: &IPoly) -> IPoly {
    let d = m.len() - 1;
    while a.len() > d {
        let top = a.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for (i, c) in m[..d].iter().enumerate() {
            a[shift + i] -= &top * c;
        }
    }
    trim(a)
}

fn ipow_mod(base: &IPoly, e: &BigUint, m: &IPoly) -> IPoly {
    let mut result = irem(vec![Integer::from(1)], m);
    for i in (0..e.bits()).rev() {
        result = irem(isquare(&result), m);
        if e.bit(i) {
            result = irem(imul(&result, base), m);
        }
    }
    result
}

/// Synthetic division by `x - q`, over the rationals.
fn deflate(p: &[Rat], q: &Rat) -> (Vec<Rat>, Rat) {
    let mut quot = vec![Rat::zero(); p.len() - 1];
    let mut acc = Rat::zero();
    for i in (0..p.len()).rev() {
        acc = &acc * q + &p[i];
        if i > 0 {
            quot[i - 1] = acc.clone();
        }
    }
    (quot, acc)
}

/// Largest `deg F` for which the cofactor is also reduced in `Z[y]/(g̃)`.
pub const RING_LIMIT: u64 = 6_000_000;

/// Outcome of [`derivative_divisible`].
pub struct Divisibility {
    pub divides: bool,
    /// The residue-ring remainder ran and agreed.
    pub ring_checked: bool,
}

/// Whether `f` divides `F'` for `F = ∏ (x - q_i)^{E_i}` with distinct `q_i`
/// and every `E_i >= 1`.
///
/// Write `f = c · ∏ (x - q_i)^{μ_i} · g` with `g` coprime to every `q_i`.
/// The factor at `q_i` is checked on the Taylor expansion of `F` at `q_i`,
/// truncated after `t^{μ_i}`.
///
/// The cofactor `g` is checked in `Q[y]/(g)` through `F'/F = Σ E_i/(y - q_i)`,
/// which is exact because `F` is a unit there when `g` is squarefree. Up to
/// [`RING_LIMIT`] it is also checked by computing `F' mod g` outright in
/// `Z[y]/(g̃)`, after the substitution `x = y / L` that makes `g` monic over
/// the integers; each factor `(b y - a)^E` is carried together with its
/// derivative as a dual pair. The two must agree.
pub fn derivative_divisible(f: &Poly, factors: &[(Rat, BigUint)]) -> Result<Divisibility, String> {
    let mut rest: Vec<Rat> = f.coeffs().to_vec();
    let mut divides = true;
    for (q, _) in factors {
        let mut mu = 0u64;
        loop {
            let (quot, r) = deflate(&rest, q);
            if !r.is_zero() {
                break;
            }
            rest = quot;
            mu += 1;
        }
        if mu > 0 && !taylor_vanishes(factors, q, mu) {
            divides = false;
        }
    }
    if rest.len() == 1 {
        return Ok(Divisibility {
            divides,
            ring_checked: false,
        });
    }
    let g = Poly::from_coeffs(rest);
    let via_log = log_derivative_vanishes(&g, factors)?;
    let degree: BigUint = factors.iter().map(|(_, e)| e).sum();
    let ring_checked = degree <= BigUint::from(RING_LIMIT);
    if ring_checked && derivative_remainder(&g, factors).is_empty() != via_log {
        return Err("residue-ring and logarithmic-derivative checks disagree".into());
    }
    Ok(Divisibility {
        divides: divides && via_log,
        ring_checked,
    })
}

/// `Σ E_i / (y - q_i) = 0` in `Q[y]/(g)`, for squarefree `g` with `g(q_i) != 0`.
fn log_derivative_vanishes(g: &Poly, factors: &[(Rat, BigUint)]) -> Result<bool, String> {
    let gc = g.coeffs();
    if !g
        .gcd(&g.derivative())
        .map_err(|e| e.to_string())?
        .is_constant()
    {
        return Err("cofactor is not squarefree".into());
    }
    let mut sum = vec![Rat::zero(); gc.len() - 1];
    for (q, e) in factors {
        // (g(y) - g(q)) / (y - q) = -g(q) / (y - q) in the quotient ring.
        let (h, gq) = deflate(gc, q);
        if gq.is_zero() {
            return Err("cofactor vanishes at a node".into());
        }
        let w = -(Rat::from(BigInt::from(e.clone())) / gq);
        for (s, c) in sum.iter_mut().zip(&h) {
            *s += &w * c;
        }
    }
    Ok(sum.iter().all(|c| c.is_zero()))
}

/// Coefficients of `t^1 .. t^μ` in `F(q + t)` all vanish, so `t^μ | F'`.
fn taylor_vanishes(factors: &[(Rat, BigUint)], q: &Rat, mu: u64) -> bool {
    let len = mu as usize + 1;
    let mut series = vec![Rat::zero(); len];
    series[0] = Rat::one();
    for (qi, e) in factors {
        let term: Vec<Rat> = if qi == q {
            // t^E, with E >= 1.
            let mut t = vec![Rat::zero(); len];
            if let Some(k) = e.to_usize().filter(|&k| k < len) {
                t[k] = Rat::one();
            }
            t
        } else {
            // (c + t)^E up to the nonzero constant c^E.
            let inv = Rat::one() / (q - qi);
            let e = BigInt::from(e.clone());
            let mut t = Vec::with_capacity(len);
            let mut coef = Rat::one();
            for j in 0..len {
                t.push(coef.clone());
                let j = BigInt::from(j);
                coef = &(&coef * &Rat::from(&e - &j)) * &inv / Rat::from(j + 1);
            }
            t
        };
        let mut next = vec![Rat::zero(); len];
        for (i, a) in series.iter().enumerate() {
            for (j, b) in term.iter().enumerate().take(len - i) {
                next[i + j] += a * b;
            }
        }
        series = next;
    }
    series[1..].iter().all(|c| c.is_zero())
}

/// `F' mod f` up to a nonzero constant, in `Z[y]/(f̃)`.
fn derivative_remainder(f: &Poly, factors: &[(Rat, BigUint)]) -> IPoly {
    let (_, prim) = f.primitive_part();
    let ints: Vec<BigInt> = prim.coeffs().iter().map(|c| c.numer().clone()).collect();
    let n = ints.len() - 1;
    let lc = ints[n].clone();
    let mut monic = vec![Integer::new(); n + 1];
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        monic[i] = to_integer(&(&ints[i] * &pw));
        pw *= &lc;
    }
    monic[n] = Integer::from(1);

    let mut h = irem(vec![Integer::from(1)], &monic);
    let mut dh: IPoly = Vec::new();
    for (q, e) in factors {
        let s = q * &Rat::from(lc.clone());
        let lin = vec![to_integer(&-s.numer().clone()), to_integer(s.denom())];
        let p = ipow_mod(&lin, &(e - 1u32), &monic);
        let v = irem(imul(&p, &lin), &monic);
        let scale = to_integer(&(BigInt::from(e.clone()) * s.denom()));
        let dv = trim(p.iter().map(|c| Integer::from(c * &scale)).collect());
        let next = iadd(irem(imul(&dh, &v), &monic), irem(imul(&h, &dv), &monic));
        h = irem(imul(&h, &v), &monic);
        dh = next;
    }
    dh
}

/// Characteristic polynomial `det(x I - A)` by Faddeev–LeVerrier.
pub fn charpoly(a: &[Vec<i64>]) -> Poly {
    let n = a.len();
    let am: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| r.iter().map(|&v| Rat::from(v)).collect())
        .collect();
    let mut m = vec![vec![Rat::zero(); n]; n];
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    for k in 1..=n {
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for l in 0..n {
                    s += &am[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Rat::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &am[i][l] * &m[l][i];
            }
        }
        c[n - k] = -(tr / Rat::from(k as i64));
    }
    Poly::from_coeffs(c)
}

/// Cofactor expansion along the first row; independent check on `charpoly`.
pub fn det_at(a: &[Vec<i64>], x: i64) -> BigInt {
    let n = a.len();
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(if i == j { x - a[i][j] } else { -a[i][j] }))
                .collect()
        })
        .collect();
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut total = BigInt::zero();
        for col in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][col] * det(&minor);
            if col % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    det(&m)
}

#[allow(clippy::needless_range_loop)]
pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-3..=3);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
}

pub fn random_rat(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rat {
    Rat::new(
        rng.gen_range(-max_num..=max_num),
        rng.gen_range(1..=max_den),
    )
    .unwrap()
}

/// Distinct rationals, ascending.
pub fn random_points(rng: &mut impl Rng, count: usize, max_num: i64, max_den: i64) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    while out.len() < count {
        let q = random_rat(rng, max_num, max_den);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Distinct real roots on the grid `lo + k·step` up to `hi`, counted as
/// zeros on the grid plus sign changes between nonzero samples. Exact when
/// no two roots share a grid cell and all multiplicities are odd.
pub fn grid_root_count(p: &Poly, lo: &Rat, hi: &Rat, step: &Rat) -> usize {
    let d = lo.denom() * step.denom();
    let a = lo.numer() * step.denom();
    let u = step.numer() * lo.denom();
    let (_, ip) = p.primitive_part();
    let coeffs: Vec<BigInt> = ip.coeffs().iter().map(|c| c.numer().clone()).collect();
    let n = coeffs.len() - 1;
    let mut dpow = vec![BigInt::one()];
    for _ in 0..n {
        let next = dpow.last().unwrap() * &d;
        dpow.push(next);
    }
    let steps = ((hi - lo) / step.clone()).floor();
    let mut count = 0;
    let mut last = Sign::NoSign;
    let mut k = BigInt::zero();
    while k <= steps {
        let x = &a + &k * &u;
        let mut acc = BigInt::zero();
        for (i, c) in coeffs.iter().enumerate().rev() {
            acc = acc * &x + c * &dpow[n - i];
        }
        let s = acc.sign();
        if s == Sign::NoSign || (last != Sign::NoSign && s != last) {
            count += 1;
        }
        last = s;
        k += 1;
    }
    count
}

/// Dense `∏ (x - q)^e`.
pub fn expand_split(factors: &[(Rat, u64)]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, (q, e)| {
        &acc * &Poly::linear(q).pow(*e as u32)
    })
}
