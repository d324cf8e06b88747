//! Irreducibility testing in the style of the MeatAxe, and chopping a module
//! into composition factors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{Mat, Subspace};
use crate::module::{hom_dim, spin, spin_with, sub_quotient, Module};
use crate::poly::{factor, Poly};

/// Random algebra elements tried before giving up.
pub const MAX_ATTEMPTS: usize = 64;
const TERMS: usize = 4;

/// Evidence for irreducibility: a random element `θ`, an irreducible factor
/// `p` of its characteristic polynomial with `dim ker p(θ) = deg p`, and the
/// fact that a nonzero vector of that kernel (and one of the transposed
/// kernel, under the transposed action) spins to everything.
#[derive(Clone, Debug)]
pub struct IrreducibleCert {
    pub theta: Vec<(usize, FieldElem)>,
    pub factor: Poly,
    pub attempts: usize,
}

#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible(IrreducibleCert),
    /// A proper nonzero submodule.
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

fn random_theta(m: &Module, rng: &mut ChaCha8Rng) -> (Vec<(usize, FieldElem)>, Mat) {
    let f = m.field();
    let n = m.group().order();
    let mut terms = Vec::with_capacity(TERMS);
    let mut theta = Mat::zero(f, m.dim(), m.dim());
    for _ in 0..TERMS {
        let g = rng.gen_range(0..n);
        let c = FieldElem(rng.gen_range(1..f.order()));
        theta.add_scaled(c, m.element_matrix(g));
        terms.push((g, c));
    }
    (terms, theta)
}

pub fn is_irreducible(m: &Module, seed: u64) -> Result<Irreducibility> {
    let f = m.field();
    let n = m.dim();
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    if n == 1 {
        return Ok(Irreducibility::Irreducible(IrreducibleCert {
            theta: vec![],
            factor: Poly::x(f),
            attempts: 0,
        }));
    }
    let transposed: Vec<Mat> = m.generators().iter().map(Mat::transpose).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let (terms, theta) = random_theta(m, &mut rng);
        let cp = Poly::new(f, theta.charpoly());
        let mut factors = factor(&cp)?;
        factors.sort_by_key(|(p, _)| p.degree());
        for (p, _) in factors {
            let pm = p.eval_mat(&theta);
            let ker = pm.nullspace();
            let s = spin(m, &[ker.row(0).to_vec()])?;
            if !s.is_full() {
                return Ok(Irreducibility::Reducible(s));
            }
            if ker.rows() == p.degree().unwrap_or(0) {
                let kt = pm.transpose().nullspace();
                let s2 = spin_with(&transposed, f, n, &[kt.row(0).to_vec()]);
                if !s2.is_full() {
                    return Ok(Irreducibility::Reducible(s2.annihilator()));
                }
                return Ok(Irreducibility::Irreducible(IrreducibleCert {
                    theta: terms,
                    factor: p,
                    attempts: attempt,
                }));
            }
        }
    }
    Err(Error::ChopInstability(format!(
        "no decision for a module of dimension {n} after {MAX_ATTEMPTS} random elements"
    )))
}

/// Irreducible subquotients of a composition series, collected up to
/// isomorphism with multiplicities, in order of first appearance (bottom of
/// the series first).
pub fn composition_factors(m: &Module, seed: u64) -> Result<Vec<(Module, usize)>> {
    let mut found: Vec<(Module, usize)> = Vec::new();
    let mut stack = vec![m.clone()];
    let mut counter = 0u64;
    while let Some(piece) = stack.pop() {
        if piece.dim() == 0 {
            continue;
        }
        counter += 1;
        match is_irreducible(&piece, seed.wrapping_add(counter.wrapping_mul(0x9e37_79b9)))? {
            Irreducibility::Reducible(s) => {
                let (sub, quot) = sub_quotient(&piece, &s)?;
                stack.push(quot);
                stack.push(sub);
            }
            Irreducibility::Irreducible(_) => {
                let mut hit = false;
                for (rep, count) in found.iter_mut() {
                    if rep.dim() == piece.dim() && hom_dim(rep, &piece)? > 0 {
                        *count += 1;
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    found.push((piece, 1));
                }
            }
        }
    }
    Ok(found)
}

/// Multiplicity of each of `simples` as a composition factor of `m`.
pub fn composition_multiplicities(m: &Module, simples: &[Module], seed: u64) -> Result<Vec<usize>> {
    let mut out = vec![0; simples.len()];
    for (piece, count) in composition_factors(m, seed)? {
        let mut placed = false;
        for (i, s) in simples.iter().enumerate() {
            if s.dim() == piece.dim() && hom_dim(s, &piece)? > 0 {
                out[i] += count;
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::IncompleteSimpleSet(format!(
                "composition factor of dimension {} matches no known simple",
                piece.dim()
            )));
        }
    }
    Ok(out)
}
