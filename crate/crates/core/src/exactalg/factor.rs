use super::{AlgebraError, Poly, Rat};
use crate::realroots::{isolate_real_roots, refine_interval};

/// One entry of a squarefree decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    /// Monic and squarefree.
    pub factor: Poly,
    pub multiplicity: usize,
}

/// Yun's algorithm. The input equals its leading coefficient times
/// `∏ factor^multiplicity`; factors are monic, squarefree and pairwise
/// coprime, listed by increasing multiplicity.
pub fn squarefree_decomposition(a: &Poly) -> Result<Vec<SquarefreeFactor>, AlgebraError> {
    if a.is_constant() {
        return Err(AlgebraError::ConstantInput);
    }
    let a = a.monic();
    let da = a.derivative();
    let g = a.gcd(&da)?;
    let mut b = exact(&a, &g);
    let mut c = exact(&da, &g);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut multiplicity = 1;
    while !b.is_constant() {
        let factor = b.gcd(&d)?;
        b = exact(&b, &factor);
        c = exact(&d, &factor);
        d = &c - &b.derivative();
        if !factor.is_constant() {
            out.push(SquarefreeFactor {
                factor,
                multiplicity,
            });
        }
        multiplicity += 1;
    }
    Ok(out)
}

/// Monic product of the distinct irreducible factors of `a`.
pub fn squarefree_part(a: &Poly) -> Result<Poly, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if a.is_constant() {
        return Ok(Poly::one());
    }
    let g = a.gcd(&a.derivative())?;
    Ok(exact(a, &g).monic())
}

fn exact(a: &Poly, b: &Poly) -> Poly {
    a.exact_div(b)
        .expect("nonzero divisor")
        .expect("divisor known to divide")
}

/// Result of [`rational_roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct rational roots, ascending, with multiplicity.
    pub roots: Vec<(Rat, usize)>,
    /// `a / ∏ (x - root)^mult`; has no rational roots.
    pub cofactor: Poly,
}

/// Extracts every rational root with its full multiplicity.
///
/// Works on the primitive integer form `s` of the squarefree part. A root
/// `p/q` in lowest terms has `q | lc(s)`, so `lc(s) * root` is an integer;
/// each real root is isolated and its interval shrunk below width
/// `1 / lc(s)`, leaving a single candidate that is checked exactly.
pub fn rational_roots(a: &Poly) -> Result<RationalRoots, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if a.is_constant() {
        return Ok(RationalRoots {
            roots: Vec::new(),
            cofactor: a.clone(),
        });
    }
    let (_, s) = squarefree_part(a)?.primitive_part();
    let lc = s.leading_coeff().expect("nonconstant").clone();
    let width = lc.recip().expect("nonzero");
    let intervals = isolate_real_roots(&s).expect("squarefree input of positive degree");

    let mut roots = Vec::new();
    let mut cofactor = a.clone();
    for iv in intervals {
        let iv = refine_interval(&s, &iv, &width);
        let t = Rat::from((&lc * iv.lo()).floor() + 1);
        if t >= &lc * iv.hi() {
            continue;
        }
        let candidate = t / &lc;
        if s.eval(&candidate).is_zero() {
            let mult = cofactor.root_multiplicity(&candidate);
            let divisor = Poly::linear(&candidate).pow(mult as u32);
            cofactor = exact(&cofactor, &divisor);
            roots.push((candidate, mult));
        }
    }
    Ok(RationalRoots { roots, cofactor })
}
